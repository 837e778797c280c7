//! Dense polynomials over a generic ring, and the fraction field Q(u).
//!
//! [`Poly<R>`] is the coefficient type for series whose coefficients are
//! themselves polynomials (identities over Q[u]); [`RatFunc`] is the reduced
//! fraction num/den with monic denominator (identities over Q(u)).

use crate::ring::{Field, Rat, Ring, ToComplex};
use num_complex::Complex64;
use std::fmt;

/// Dense polynomial; `coeffs[k]` is the coefficient of u^k, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

pub type UPoly = Poly<Rat>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * u^k.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// u itself.
    pub fn gen() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Small integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::constant(R::one());
        for _ in 0..n {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        Poly::new(out)
    }

    fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    /// Exact long division: `Some(q)` iff rhs * q == self with zero remainder.
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem_by(rhs)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

impl<R: Ring> Poly<R> {
    /// Long division when every leading-coefficient division is exact in R.
    pub fn div_rem_by(&self, rhs: &Self) -> Option<(Self, Self)> {
        let d = rhs.degree()?;
        let lead = rhs.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quo = vec![R::zero(); rem.len() - d];
        while rem.len() >= d + 1 {
            let k = rem.len() - 1 - d;
            let c = rem.last().unwrap().try_div(lead)?;
            if !c.is_zero() {
                for (i, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub(&c.mul(b));
                }
            }
            quo[k] = c;
            // The top coefficient is now exactly zero; strip it and any
            // further zeros so the loop terminates.
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        Some((Poly::new(quo), Poly::new(rem)))
    }
}

impl<F: Field> Poly<F> {
    /// Leading coefficient made 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&Field::inv(l).expect("nonzero leading")),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_by(&b).expect("field division");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (sign, mag) = match s.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", s),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if mag != "1" {
                        write!(f, "{}*", mag)?;
                    }
                    if k == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Element of Q(u): reduced fraction with monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(u)");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > Some(0) {
            self.num = self.num.try_div(&g).expect("gcd divides");
            self.den = self.den.try_div(&g).expect("gcd divides");
        }
        // Monic denominator: absorb its leading coefficient into the numerator.
        let l = self.den.leading().expect("nonzero den").clone();
        if !l.is_one() {
            let linv = Field::inv(&l).unwrap();
            self.num = self.num.scale(&linv);
            self.den = self.den.scale(&linv);
        }
    }

    /// Evaluate at a rational point; None on a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x).div(&d))
        }
    }
}

impl PartialEq for RatFunc {
    /// Valid structurally because both sides are kept reduced with monic
    /// denominators (canonical form).
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(UPoly::one())
    }
    fn from_int(n: i64) -> Self {
        RatFunc::from_poly(UPoly::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            Ring::mul(&self.num, &rhs.den).add(&Ring::mul(&rhs.num, &self.den)),
            Ring::mul(&self.den, &rhs.den),
        )
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(
            Ring::mul(&self.num, &rhs.num),
            Ring::mul(&self.den, &rhs.den),
        )
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(RatFunc::new(
            Ring::mul(&self.num, &rhs.den),
            Ring::mul(&self.den, &rhs.num),
        ))
    }
}

impl Field for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Lift a rational constant into Q(u).
pub fn ratfunc_const(c: &Rat) -> RatFunc {
    RatFunc::from_poly(UPoly::constant(c.clone()))
}

impl ToComplex for UPoly {
    /// Evaluation only makes sense for constants; used when a series over
    /// Q[u] has already been specialized.
    fn to_c64(&self) -> Complex64 {
        assert!(self.is_constant(), "cannot embed non-constant polynomial");
        self.coeff(0).to_c64()
    }
}
