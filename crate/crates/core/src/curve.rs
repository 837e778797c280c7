//! Weierstrass models and chord-tangent arithmetic.
//!
//! A long model y² + e₁xy + e₃y = x³ + e₂x² + e₄x + e₆ is converted to the
//! short model y² = x³ − (g₂/4)x − (g₃/4) via b₂ = e₁² + 4e₂,
//! b₄ = 2e₄ + e₁e₃, b₆ = e₃² + 4e₆, c₄ = b₂² − 24b₄,
//! c₆ = −b₂³ + 36b₂b₄ − 216b₆ and g₂ = c₄/12, g₃ = c₆/216. Note the marked
//! point for lattice work is (℘(z), ℘′(z)/2), which is what puts the factor
//! 4 into A = −g₂/4, B = −g₃/4 relative to y² = 4x³ − g₂x − g₃.
//!
//! Point arithmetic is generic over the coordinate field so the same
//! chord-tangent formulas serve exact rationals, rational functions of u,
//! complex floats, and truncated series coordinates.

use crate::error::{Error, Result};
use crate::poly::{ratfunc_const, RatFunc};
use crate::ring::{Field, Rat, Ring};
use crate::series::TruncatedSeries;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// A curve given by long Weierstrass coefficients together with its derived
/// invariants and short model. The conductor is supplied, not computed.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel {
    pub e1: i64,
    pub e2: i64,
    pub e3: i64,
    pub e4: i64,
    pub e6: i64,
    pub b2: Rat,
    pub b4: Rat,
    pub b6: Rat,
    pub c4: Rat,
    pub c6: Rat,
    pub disc: Rat,
    pub g2: Rat,
    pub g3: Rat,
    pub conductor: u64,
}

/// Built-in long model y^2 + y = x^3 - x^2 - 10x - 20 of the optimal curve
/// of conductor 11; ships in-binary so the examples run with zero setup.
pub fn conductor_11_curve() -> CurveModel {
    derive_invariants([0, -1, 1, -10, -20], 11).expect("builtin model is nonsingular")
}

/// Compute the invariants and short model from long coefficients.
pub fn derive_invariants(e: [i64; 5], conductor: u64) -> Result<CurveModel> {
    let [e1, e2, e3, e4, e6] = e;
    let r = crate::ring::rat_int;
    let b2 = r(e1 * e1 + 4 * e2);
    let b4 = r(2 * e4 + e1 * e3);
    let b6 = r(e3 * e3 + 4 * e6);
    let c4 = b2.clone() * b2.clone() - r(24) * b4.clone();
    let c6 = -(b2.clone() * b2.clone() * b2.clone()) + r(36) * b2.clone() * b4.clone()
        - r(216) * b6.clone();
    let disc = (c4.clone() * c4.clone() * c4.clone() - c6.clone() * c6.clone()) / r(1728);
    if disc == Rat::zero() {
        return Err(Error::SingularCurve(format!("{:?}", e)));
    }
    Ok(CurveModel {
        e1,
        e2,
        e3,
        e4,
        e6,
        g2: c4.clone() / r(12),
        g3: c6.clone() / r(216),
        b2,
        b4,
        b6,
        c4,
        c6,
        disc,
        conductor,
    })
}

impl CurveModel {
    /// A of the short model y² = x³ + Ax + B.
    pub fn a(&self) -> Rat {
        -self.g2.clone() / crate::ring::rat_int(4)
    }

    /// B of the short model.
    pub fn b(&self) -> Rat {
        -self.g3.clone() / crate::ring::rat_int(4)
    }
}

/// Coordinate fields for chord-tangent arithmetic: fields containing Q, with
/// a notion of "negligible" that is exact zero for exact fields and a
/// tolerance test for floats.
pub trait CurveField: Field {
    fn from_rat(r: &Rat) -> Self;
    fn is_negligible(&self, tol: f64) -> bool;
}

impl CurveField for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        Ring::is_zero(self)
    }
}

impl CurveField for RatFunc {
    fn from_rat(r: &Rat) -> Self {
        ratfunc_const(r)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        Ring::is_zero(self)
    }
}

impl CurveField for Complex64 {
    fn from_rat(r: &Rat) -> Self {
        Complex64::new(r.to_f64().expect("rational fits f64"), 0.0)
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() < tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AffinePoint<F> {
    Infinity,
    Xy { x: F, y: F },
}

impl<F> AffinePoint<F> {
    pub fn xy(x: F, y: F) -> Self {
        AffinePoint::Xy { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, AffinePoint::Infinity)
    }
}

/// Short model y² = x³ + Ax + B over a coordinate field, with the tolerance
/// used for degeneracy and on-curve decisions (ignored by exact fields).
#[derive(Clone, Debug)]
pub struct ShortCurve<F: CurveField> {
    pub a: F,
    pub b: F,
    tol: f64,
}

impl<F: CurveField> ShortCurve<F> {
    pub fn new(a: F, b: F) -> Self {
        ShortCurve { a, b, tol: 1e-9 }
    }

    pub fn from_model(c: &CurveModel) -> Self {
        ShortCurve {
            a: F::from_rat(&c.a()),
            b: F::from_rat(&c.b()),
            tol: 1e-9,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// y² − x³ − Ax − B.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let x3 = x.mul(x).mul(x);
        y.mul(y).sub(&x3).sub(&self.a.mul(x)).sub(&self.b)
    }

    pub fn contains(&self, p: &AffinePoint<F>) -> bool {
        match p {
            AffinePoint::Infinity => true,
            AffinePoint::Xy { x, y } => self.residual(x, y).is_negligible(self.tol),
        }
    }

    pub fn check_on_curve(&self, p: &AffinePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else if let AffinePoint::Xy { x, y } = p {
            Err(Error::NotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
            })
        } else {
            unreachable!()
        }
    }

    pub fn neg(&self, p: &AffinePoint<F>) -> AffinePoint<F> {
        match p {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Xy { x, y } => AffinePoint::xy(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent addition. A vertical chord (equal x, opposite y, up to
    /// tolerance) yields Infinity.
    pub fn add(&self, p: &AffinePoint<F>, q: &AffinePoint<F>) -> AffinePoint<F> {
        let (x1, y1) = match p {
            AffinePoint::Infinity => return q.clone(),
            AffinePoint::Xy { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            AffinePoint::Infinity => return p.clone(),
            AffinePoint::Xy { x, y } => (x, y),
        };
        let lambda = if x2.sub(x1).is_negligible(self.tol) {
            if y1.add(y2).is_negligible(self.tol) {
                return AffinePoint::Infinity;
            }
            // Tangent: (3x² + A) / 2y.
            let num = x1.mul(x1).mul(&F::from_int(3)).add(&self.a);
            num.div(&y1.add(y1))
        } else {
            y2.sub(y1).div(&x2.sub(x1))
        };
        let x3 = lambda.mul(&lambda).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        AffinePoint::xy(x3, y3)
    }

    pub fn double(&self, p: &AffinePoint<F>) -> AffinePoint<F> {
        self.add(p, p)
    }

    /// Scalar multiple by double-and-add (negative m via negation).
    pub fn mul(&self, m: i64, p: &AffinePoint<F>) -> AffinePoint<F> {
        if m < 0 {
            return self.mul(-m, &self.neg(p));
        }
        let mut acc = AffinePoint::Infinity;
        let mut base = p.clone();
        let mut e = m as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base);
            }
        }
        acc
    }
}

/// A point whose coordinates are truncated series over a coefficient field
/// (elements of K((t))), with its own chord-tangent arithmetic since series
/// are not themselves a `Ring` (precision is carried per value).
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesPoint<K: Field> {
    Infinity,
    Xy {
        x: TruncatedSeries<K>,
        y: TruncatedSeries<K>,
    },
}

impl<K: CurveField> SeriesPoint<K> {
    pub fn xy(x: TruncatedSeries<K>, y: TruncatedSeries<K>) -> Self {
        SeriesPoint::Xy { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SeriesPoint::Infinity)
    }

    /// y² − x³ − Ax − B as a series (zero to precision iff on curve).
    pub fn residual(&self, c: &CurveModel) -> Option<TruncatedSeries<K>> {
        match self {
            SeriesPoint::Infinity => None,
            SeriesPoint::Xy { x, y } => {
                let a = TruncatedSeries::constant(x.var(), K::from_rat(&c.a()));
                let b = TruncatedSeries::constant(x.var(), K::from_rat(&c.b()));
                let x3 = x.mul(x).mul(x);
                Some(y.mul(y).sub(&x3).sub(&a.mul(x)).sub(&b))
            }
        }
    }

    pub fn check_on_curve(&self, c: &CurveModel) -> Result<()> {
        match self.residual(c) {
            None => Ok(()),
            Some(r) if r.is_zero() => Ok(()),
            Some(_) => {
                let (x, y) = match self {
                    SeriesPoint::Xy { x, y } => (x.to_string(), y.to_string()),
                    SeriesPoint::Infinity => unreachable!(),
                };
                Err(Error::NotOnCurve { x, y })
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            SeriesPoint::Infinity => SeriesPoint::Infinity,
            SeriesPoint::Xy { x, y } => SeriesPoint::xy(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent addition over K((t)). Equality decisions are made to
    /// the joint precision of the inputs.
    pub fn add(&self, rhs: &Self, c: &CurveModel) -> Result<Self> {
        let (x1, y1) = match self {
            SeriesPoint::Infinity => return Ok(rhs.clone()),
            SeriesPoint::Xy { x, y } => (x, y),
        };
        let (x2, y2) = match rhs {
            SeriesPoint::Infinity => return Ok(self.clone()),
            SeriesPoint::Xy { x, y } => (x, y),
        };
        let dx = x2.sub(x1);
        let lambda = if dx.is_zero() {
            if y1.add(y2).is_zero() {
                return Ok(SeriesPoint::Infinity);
            }
            let a = TruncatedSeries::constant(x1.var(), K::from_rat(&c.a()));
            let three = TruncatedSeries::constant(x1.var(), K::from_int(3));
            let num = x1.mul(x1).mul(&three).add(&a);
            num.mul(&y1.add(y1).inv()?)
        } else {
            y2.sub(y1).mul(&dx.inv()?)
        };
        let x3 = lambda.mul(&lambda).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Ok(SeriesPoint::xy(x3, y3))
    }

    pub fn mul(&self, m: i64, c: &CurveModel) -> Result<Self> {
        if m < 0 {
            return self.neg().mul(-m, c);
        }
        let mut acc = SeriesPoint::Infinity;
        let mut base = self.clone();
        let mut e = m as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add(&base, c)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.add(&base, c)?;
            }
        }
        Ok(acc)
    }

    /// The x-coordinate; the degenerate (Infinity) case has none.
    pub fn x(&self) -> Result<&TruncatedSeries<K>> {
        match self {
            SeriesPoint::Infinity => Err(Error::DegenerateSum),
            SeriesPoint::Xy { x, .. } => Ok(x),
        }
    }
}
