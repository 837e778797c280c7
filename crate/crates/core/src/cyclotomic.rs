//! Exact arithmetic in Q(rho), rho = e^(2 pi i/3) with rho^2 = -1 - rho,
//! and in the extensions Q(rho)[z]/Phi_m(z), z = e^(2 pi i/m).
//!
//! Character values of order dividing 3 live in Q(rho) as a + b*rho;
//! complex conjugation sends rho to rho^2 = -1 - rho and z^j to z^(m-j).
//! The only division ever needed is by elements whose product with their
//! conjugate is a rational constant (Gauss sums: g * conj(g) = m), which
//! the conjugation trick handles exactly; sqrt(-3) = 1 + 2*rho.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Poly, UPoly};
use crate::ring::{rat_int, Field, Rat, Ring, ToComplex};

/// a + b*rho with rational a, b; a quadratic field containing sqrt(-3).
#[derive(Clone, PartialEq, Eq)]
pub struct QRho {
    pub a: Rat,
    pub b: Rat,
}

impl QRho {
    pub fn new(a: Rat, b: Rat) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(rat_int(a), rat_int(b))
    }

    pub fn from_rat(a: Rat) -> Self {
        Self::new(a, Rat::zero())
    }

    pub fn rho() -> Self {
        Self::from_ints(0, 1)
    }

    /// sqrt(-3) = rho - rho^2 = 1 + 2*rho (positive imaginary part).
    pub fn sqrt_minus_three() -> Self {
        Self::from_ints(1, 2)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugate: rho -> rho^2 = -1 - rho.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -self.b.clone())
    }

    /// self * conj(self) = a^2 - a*b + b^2, a nonnegative rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl fmt::Debug for QRho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QRho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*rho", self.b);
        }
        write!(f, "{} + {}*rho", self.a, self.b)
    }
}

impl Ring for QRho {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
    fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone())
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + b rho)(c + d rho) = ac + (ad + bc) rho + bd rho^2,
        // rho^2 = -1 - rho.
        let bd = &self.b * &rhs.b;
        Self::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        )
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        // 1/x = conj(x)/norm(x).
        let c = Ring::mul(self, &rhs.conj());
        Some(Self::new(c.a / &n, c.b / &n))
    }
}

impl Field for QRho {}

impl ToComplex for QRho {
    fn to_c64(&self) -> Complex64 {
        let rho = Complex64::new(-0.5, 0.75f64.sqrt());
        Complex64::new(self.a.to_c64().re, 0.0) + rho * self.b.to_c64().re
    }
}

/// The m-th cyclotomic polynomial over Q, by exact division of z^m - 1 by
/// the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(m: u64) -> UPoly {
    assert!(m >= 1);
    let mut num = vec![rat_int(0); m as usize + 1];
    num[0] = rat_int(-1);
    num[m as usize] = rat_int(1);
    let mut rem = UPoly::new(num);
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = rem
                .div_rem_by(&cyclotomic_polynomial(d))
                .expect("divisor polynomial is nonzero");
            assert!(r.is_zero(), "z^m - 1 divisible by each Phi_d, d | m");
            rem = q;
        }
    }
    rem
}

/// Element of Q(rho)[z]/Phi_m(z); z evaluates to e^(2 pi i/m).
#[derive(Clone, PartialEq)]
pub struct Cyclotomic {
    m: u64,
    rep: Poly<QRho>,
}

fn lift(p: &UPoly) -> Poly<QRho> {
    p.map(|r| QRho::from_rat(r.clone()))
}

impl Cyclotomic {
    pub fn new(m: u64, rep: Poly<QRho>) -> Self {
        let modulus = lift(&cyclotomic_polynomial(m));
        let (_, rep) = rep.div_rem_by(&modulus).expect("modulus is nonzero");
        Self { m, rep }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn rep(&self) -> &Poly<QRho> {
        &self.rep
    }

    pub fn zero(m: u64) -> Self {
        Self {
            m,
            rep: Poly::new(vec![]),
        }
    }

    pub fn from_qrho(m: u64, c: QRho) -> Self {
        Self::new(m, Poly::constant(c))
    }

    pub fn from_rat(m: u64, c: Rat) -> Self {
        Self::from_qrho(m, QRho::from_rat(c))
    }

    /// z^k (k taken mod m).
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        Self::new(m, Poly::monomial(QRho::one(), k))
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// The element as a + b*rho if it is free of z.
    pub fn as_qrho(&self) -> Option<QRho> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }

    /// The element as a rational if it is free of both z and rho.
    pub fn as_rat(&self) -> Option<Rat> {
        self.as_qrho().filter(QRho::is_rational).map(|q| q.a)
    }

    fn assert_same(&self, rhs: &Self) {
        assert_eq!(self.m, rhs.m, "mixed cyclotomic moduli");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        Self {
            m: self.m,
            rep: Ring::add(&self.rep, &rhs.rep),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        Self {
            m: self.m,
            rep: Ring::sub(&self.rep, &rhs.rep),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: self.m,
            rep: Ring::neg(&self.rep),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        Self::new(self.m, Ring::mul(&self.rep, &rhs.rep))
    }

    pub fn scale(&self, c: &QRho) -> Self {
        Self {
            m: self.m,
            rep: self.rep.scale(c),
        }
    }

    /// Complex conjugation: coefficients conjugated, z^j -> z^(m-j).
    pub fn conj(&self) -> Self {
        let mut out = Poly::new(vec![]);
        for (j, c) in self.rep.coeffs().iter().enumerate() {
            let k = if j == 0 { 0 } else { self.m as usize - j };
            out = Ring::add(&out, &Poly::monomial(c.conj(), k));
        }
        Self::new(self.m, out)
    }

    /// Inverse by the conjugation trick: requires self * conj(self) to be a
    /// rational constant (true for Gauss sums and roots of unity).
    pub fn inv(&self) -> Result<Self> {
        let conj = self.conj();
        let n = self.mul(&conj);
        match n.as_rat() {
            Some(r) if !r.is_zero() => Ok(conj.scale(&QRho::from_rat(Rat::one() / r))),
            _ => Err(Error::NonConstantNorm(self.to_string())),
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.rep.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{j}")?,
            }
        }
        Ok(())
    }
}

impl ToComplex for Cyclotomic {
    fn to_c64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.rep.coeffs().iter().enumerate() {
            let zj = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / self.m as f64);
            acc += c.to_c64() * zj;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn qrho_is_a_field_with_the_right_relations() {
        let rho = QRho::rho();
        let rho2 = Ring::mul(&rho, &rho);
        assert_eq!(rho2, QRho::from_ints(-1, -1));
        // rho^3 = 1, 1 + rho + rho^2 = 0.
        assert_eq!(Ring::mul(&rho2, &rho), QRho::one());
        assert!(Ring::add(&QRho::one(), &Ring::add(&rho, &rho2)).is_zero());

        let s = QRho::sqrt_minus_three();
        assert_eq!(Ring::mul(&s, &s), QRho::from_ints(-3, 0));
        assert_eq!(s.conj(), Ring::neg(&s));

        let x = QRho::new(rat(3, 2), rat(-5, 7));
        let y = x.try_div(&x).unwrap();
        assert!(y.is_one());
        let inv = QRho::one().try_div(&x).unwrap();
        assert!(Ring::mul(&x, &inv).is_one());
        assert!(x.try_div(&QRho::zero()).is_none());
        assert_eq!(x.norm(), Ring::mul(&x, &x.conj()).a);
    }

    #[test]
    fn qrho_embeds_as_the_principal_cube_root() {
        let r = QRho::rho().to_c64();
        assert!((r.re + 0.5).abs() < 1e-15);
        assert!((r.im - 0.75f64.sqrt()).abs() < 1e-15);
        let s = QRho::sqrt_minus_three().to_c64();
        assert!(s.re.abs() < 1e-15 && (s.im - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cyclotomic_polynomials_are_the_classical_ones() {
        let as_ints = |p: UPoly| -> Vec<i64> {
            p.coeffs()
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer().try_into().unwrap()
                })
                .collect()
        };
        assert_eq!(as_ints(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_ints(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_ints(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_ints(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_ints(cyclotomic_polynomial(7)), vec![1; 7]);
        assert_eq!(
            as_ints(cyclotomic_polynomial(21)),
            vec![1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1]
        );
    }

    #[test]
    fn zeta_powers_cycle_and_sum_to_zero() {
        let m = 7u64;
        // z^7 = 1 and 1 + z + ... + z^6 = 0 in the quotient.
        assert_eq!(Cyclotomic::zeta_pow(m, 7), Cyclotomic::from_rat(m, rat_int(1)));
        assert_eq!(Cyclotomic::zeta_pow(m, -2), Cyclotomic::zeta_pow(m, 5));
        let mut s = Cyclotomic::zero(m);
        for k in 0..7 {
            s = s.add(&Cyclotomic::zeta_pow(m, k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_matches_the_numeric_conjugate() {
        let m = 7u64;
        let x = Cyclotomic::zeta_pow(m, 3)
            .scale(&QRho::new(rat(1, 2), rat_int(2)))
            .add(&Cyclotomic::from_qrho(m, QRho::rho()));
        let c = x.conj();
        let xv = x.to_c64();
        let cv = c.to_c64();
        assert!((xv.conj() - cv).norm() < 1e-12);
        // An element times its conjugate has real nonnegative value.
        let n = x.mul(&c).to_c64();
        assert!(n.im.abs() < 1e-12 && n.re >= 0.0);
    }

    #[test]
    fn inversion_works_exactly_for_unit_norm_shapes() {
        let m = 7u64;
        let z3 = Cyclotomic::zeta_pow(m, 3);
        let i = z3.inv().unwrap();
        assert_eq!(z3.mul(&i), Cyclotomic::from_rat(m, rat_int(1)));
        // 1 + z has non-constant product with its conjugate: rejected.
        let x = Cyclotomic::zeta_pow(m, 0).add(&Cyclotomic::zeta_pow(m, 1));
        assert!(matches!(x.inv(), Err(Error::NonConstantNorm(_))));
        let numeric = Cyclotomic::zeta_pow(m, 2)
            .scale(&QRho::sqrt_minus_three())
            .inv()
            .unwrap()
            .to_c64();
        let direct = (Cyclotomic::zeta_pow(m, 2).to_c64() * QRho::sqrt_minus_three().to_c64())
            .finv();
        assert!((numeric - direct).norm() < 1e-12);
    }
}
