//! Dirichlet characters with exact values in Q(rho), and their Gauss sums
//! g(chi) = sum_j chi(j) zeta^j kept exact in the cyclotomic ring.
//!
//! Two families cover every twist used here: the quadratic character mod an
//! odd prime (Legendre symbol), and the cubic character mod 7 sending the
//! primitive root 3 to rho (so psi(1) = 1, psi(2) = rho^2, psi(3) = rho).
//! Conjugation, primitivity, |g|^2 = m, and g(conj chi) = chi(-1) conj(g)
//! are all checked exactly.

use num_complex::Complex64;

use crate::cyclotomic::{Cyclotomic, QRho};
use crate::error::{Error, Result};
use crate::ring::{rat_int, Ring, ToComplex};

/// A character mod m, stored as its full value table on 0..m (zero off the
/// units), values exact in Q(rho).
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<QRho>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl DirichletCharacter {
    pub(crate) fn new(modulus: u64, values: Vec<QRho>) -> Result<Self> {
        let chi = Self { modulus, values };
        chi.validate()?;
        Ok(chi)
    }

    /// The trivial character mod 1 (everything maps to 1).
    pub fn trivial() -> Self {
        Self {
            modulus: 1,
            values: vec![QRho::one()],
        }
    }

    /// Legendre symbol mod an odd prime p, by Euler's criterion.
    pub fn quadratic(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || (3..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::BadTwist(format!(
                "quadratic character needs an odd prime modulus, got {p}"
            )));
        }
        let mut values = vec![QRho::zero(); p as usize];
        for j in 1..p {
            let mut pow = 1u64;
            let mut base = j % p;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    pow = pow * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            values[j as usize] = if pow == 1 {
                QRho::one()
            } else {
                QRho::one().neg()
            };
        }
        Self::new(p, values)
    }

    /// The cubic character mod 7 with psi(3) = rho (3 is a primitive root).
    pub fn cubic_mod_7() -> Self {
        let mut values = vec![QRho::zero(); 7];
        let rho = QRho::rho();
        let mut j = 1u64;
        let mut v = QRho::one();
        for _ in 0..6 {
            values[j as usize] = v.clone();
            j = j * 3 % 7;
            v = Ring::mul(&v, &rho);
        }
        Self::new(7, values).expect("fixed table is multiplicative")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, n: i64) -> QRho {
        let j = n.rem_euclid(self.modulus as i64) as usize;
        self.values[j].clone()
    }

    pub fn eval_c64(&self, n: i64) -> Complex64 {
        self.eval(n).to_c64()
    }

    /// All values rational (so in {0, 1, -1}): quadratic or trivial.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(QRho::is_rational)
    }

    pub fn conj(&self) -> Self {
        Self {
            modulus: self.modulus,
            values: self.values.iter().map(QRho::conj).collect(),
        }
    }

    /// chi(1) = 1, complete multiplicativity on units, zero off units.
    pub fn validate(&self) -> Result<()> {
        let m = self.modulus;
        if m == 0 || self.values.len() != m as usize {
            return Err(Error::BadTwist(format!("bad value table length mod {m}")));
        }
        if m == 1 {
            return if self.values[0].is_one() {
                Ok(())
            } else {
                Err(Error::BadTwist("trivial character must map to 1".into()))
            };
        }
        if !self.values[1].is_one() {
            return Err(Error::BadTwist("chi(1) != 1".into()));
        }
        for j in 0..m {
            let unit = gcd(j, m) == 1;
            if unit != !self.values[j as usize].is_zero() {
                return Err(Error::BadTwist(format!(
                    "chi({j}) must be {} mod {m}",
                    if unit { "nonzero" } else { "zero" }
                )));
            }
            for k in j..m {
                let prod = Ring::mul(&self.values[j as usize], &self.values[k as usize]);
                if prod != self.values[(j * k % m) as usize] {
                    return Err(Error::BadTwist(format!(
                        "chi({j})chi({k}) != chi({})",
                        j * k % m
                    )));
                }
            }
        }
        Ok(())
    }

    /// No proper divisor d of m induces the character: there is a unit
    /// a = 1 mod d with chi(a) != 1 for every proper d | m.
    pub fn is_primitive(&self) -> bool {
        let m = self.modulus;
        if m == 1 {
            return true;
        }
        'divisors: for d in 1..m {
            if m % d != 0 {
                continue;
            }
            let mut a = 1 + d;
            while a < m {
                if gcd(a, m) == 1 && !self.values[a as usize].is_one() {
                    continue 'divisors;
                }
                a += d;
            }
            // chi is trivial on everything = 1 mod d: induced from mod d.
            return false;
        }
        true
    }
}

/// A Gauss sum, exact in Q(rho)[z]/Phi_m alongside its float value.
#[derive(Debug, Clone)]
pub struct GaussSum {
    pub exact: Cyclotomic,
    pub value: Complex64,
}

/// g(chi) = sum_{j mod m} chi(j) zeta_m^j, for primitive chi; the exact
/// norm identity g * conj(g) = m is re-verified on the result.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<GaussSum> {
    let m = chi.modulus();
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(m as u32));
    }
    let exact = if m == 1 {
        Cyclotomic::from_rat(1, rat_int(1))
    } else {
        let mut acc = Cyclotomic::zero(m);
        for j in 1..m {
            acc = acc.add(&Cyclotomic::zeta_pow(m, j as i64).scale(&chi.eval(j as i64)));
        }
        acc
    };
    let norm = exact.mul(&exact.conj());
    assert_eq!(
        norm.as_rat(),
        Some(rat_int(m as i64)),
        "|g|^2 = m must hold exactly for a primitive character"
    );
    let value = exact.to_c64();
    Ok(GaussSum { exact, value })
}
