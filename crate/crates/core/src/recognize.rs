//! Exact recognition of numeric results: continued-fraction rational
//! reconstruction of coordinates (with exact on-curve re-verification), and
//! locating a value on a discrete line inside the period lattice.

use num_complex::Complex64;

use crate::curve::{AffinePoint, CurveModel, ShortCurve};
use crate::error::{Error, Result};
use crate::periods::PeriodLattice;
use crate::ring::{rat_int, Rat, Ring, ToComplex};

/// Best rational p/q with q <= denom_bound and |x - p/q| < tol, from the
/// continued-fraction convergents of x.
pub fn rational_reconstruct(x: f64, denom_bound: u64, tol: f64) -> Option<Rat> {
    let (mut p0, mut q0) = (1i128, 0i128);
    let (mut p1, mut q1) = (x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    while q1 as u64 <= denom_bound {
        if (x - p1 as f64 / q1 as f64).abs() < tol {
            return Some(rat_int(p1 as i64) / rat_int(q1 as i64));
        }
        if frac < 1e-15 {
            break;
        }
        let r = 1.0 / frac;
        if r > 1e15 {
            break;
        }
        let a = r.floor();
        frac = r - a;
        let (p2, q2) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if q1 > i64::MAX as i128 || p1.abs() > i64::MAX as i128 {
            break;
        }
    }
    None
}

/// Reconstruct a rational point from numeric coordinates and re-verify it on
/// the exact short model. A reconstruction that lands off the curve is
/// SpuriousMatch; anything unreconstructible (including genuinely complex
/// coordinates) is NoMatch.
pub fn recognize_point(
    c: &CurveModel,
    p: &AffinePoint<Complex64>,
    denom_bound: u64,
    tol: f64,
) -> Result<AffinePoint<Rat>> {
    let (x, y) = match p {
        AffinePoint::Infinity => return Ok(AffinePoint::Infinity),
        AffinePoint::Xy { x, y } => (x, y),
    };
    if x.im.abs() >= tol || y.im.abs() >= tol {
        return Err(Error::NoMatch(denom_bound));
    }
    let (Some(xq), Some(yq)) = (
        rational_reconstruct(x.re, denom_bound, tol),
        rational_reconstruct(y.re, denom_bound, tol),
    ) else {
        return Err(Error::NoMatch(denom_bound));
    };
    let curve: ShortCurve<Rat> = ShortCurve::from_model(c);
    if !curve.residual(&xq, &yq).is_zero() {
        return Err(Error::SpuriousMatch {
            x: xq.to_string(),
            y: yq.to_string(),
        });
    }
    Ok(AffinePoint::xy(xq, yq))
}

/// The discrete lines on which the special values land.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorLine {
    /// Rational multiples of Omega with bounded denominator.
    OmegaRational,
    /// Integer multiples of (Omega - 2 OmegaPrime)/2.
    HalfOmegaMinusTwoOmegaPrimeIntegers,
    /// Integer multiples of Omega.
    OmegaIntegers,
}

impl GeneratorLine {
    pub fn base(&self, l: &PeriodLattice) -> Complex64 {
        let omega = Complex64::new(l.omega, 0.0);
        match self {
            GeneratorLine::OmegaRational | GeneratorLine::OmegaIntegers => omega,
            GeneratorLine::HalfOmegaMinusTwoOmegaPrimeIntegers => {
                (omega - l.omega_prime * 2.0) / 2.0
            }
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            GeneratorLine::OmegaRational | GeneratorLine::OmegaIntegers => "Omega",
            GeneratorLine::HalfOmegaMinusTwoOmegaPrimeIntegers => "(Omega - 2*OmegaPrime)/2",
        }
    }
}

/// The exact multiple found on a generator line, with the float residual
/// that certifies it.
#[derive(Debug, Clone)]
pub struct LatticeMultiple {
    pub multiple: Rat,
    pub generator: String,
    pub residual: f64,
    pub tol: f64,
}

pub const DEFAULT_DENOM_BOUND: u64 = 60;

/// Locate v as an exact multiple of the line's generator: rational with
/// denominator <= denom_bound on the Omega line, integer otherwise. `tol`
/// defaults to 1e-6 * |generator|; residuals at or above it are NotOnLine.
pub fn lattice_multiple(
    v: Complex64,
    l: &PeriodLattice,
    line: GeneratorLine,
    denom_bound: u64,
    tol: Option<f64>,
) -> Result<LatticeMultiple> {
    let base = line.base(l);
    let tol = tol.unwrap_or(1e-6 * base.norm());
    let ratio = v / base;
    if (ratio.im * base.norm()).abs() >= tol {
        return Err(Error::NotOnLine((ratio.im * base.norm()).abs()));
    }
    let multiple = match line {
        // Nearest p/q with q <= denom_bound, by direct scan over q.
        GeneratorLine::OmegaRational => {
            let mut best = rat_int(ratio.re.round() as i64);
            let mut err = (ratio.re - ratio.re.round()).abs();
            for q in 2..=denom_bound.min(10_000) as i64 {
                let p = (ratio.re * q as f64).round();
                let e = (ratio.re - p / q as f64).abs();
                if e < err {
                    err = e;
                    best = rat_int(p as i64) / rat_int(q);
                }
            }
            best
        }
        GeneratorLine::OmegaIntegers | GeneratorLine::HalfOmegaMinusTwoOmegaPrimeIntegers => {
            rat_int(ratio.re.round() as i64)
        }
    };
    let residual = (v - base * multiple.to_c64()).norm();
    if residual >= tol {
        return Err(Error::NotOnLine(residual));
    }
    Ok(LatticeMultiple {
        multiple,
        generator: line.describe().to_string(),
        residual,
        tol,
    })
}
