//! Formal group of an elliptic curve at its origin.
//!
//! On the short model y^2 = x^3 + Ax + B (A = -g2/4, B = -g3/4) the local
//! parameter at the origin is t = -x/y, and w = -1/y satisfies the fixed
//! point equation w = t^3 + A*t*w^2 + B*w^3. Everything unwinds from there:
//!
//!   x(t) = t/w  = t^-2 + (g2/4) t^2 + (g3/4) t^4 - (g2^2/16) t^6 + ...
//!   y(t) = -1/w = -t^-3 - (g2/4) t - (g3/4) t^3 + (g2^2/16) t^5 + ...
//!   omega(t) = x'(t)/(2 y(t)) = 1 - (g2/2) t^4 - (3 g3/4) t^6 + ...
//!   log(t) = integral of omega,  exp = reversion of log,
//!   F(t1,t2) = exp(log t1 + log t2),  [m](t) = exp(m log t),
//!   wp(z) = z^-2 + (g2/20) z^2 + (g3/28) z^4 + ...  (Laurent recursion),
//!
//! and the bridge x(exp z) = wp(z), y(exp z) = wp'(z)/2 identifies the two
//! parametrizations of the same point.

use crate::bivar::BiSeries;
use crate::curve::CurveModel;
use crate::error::Result;
use crate::ring::{rat_int, Field, Rat, Ring};
use crate::series::{TruncatedSeries, Var};

type Series = TruncatedSeries<Rat>;

/// Laurent expansions of the coordinates in the local parameter t = -x/y,
/// known modulo t^prec. x has valuation -2, y has valuation -3.
pub fn formal_xy(c: &CurveModel, prec: i64) -> (Series, Series) {
    let a = c.a();
    let b = c.b();
    // w = -1/y solved as a fixed point; each pass gains at least four orders.
    let wp = prec + 6;
    let t = Series::identity(Var::T);
    let t3 = Series::monomial(Var::T, Rat::one(), 3).truncated(wp);
    let mut w = t3.clone();
    let mut converged = false;
    for _ in 0..wp {
        let next = t3
            .add(&t.mul(&w.mul(&w)).scale(&a))
            .add(&w.mul(&w).mul(&w).scale(&b))
            .truncated(wp);
        if next == w {
            converged = true;
            break;
        }
        w = next;
    }
    assert!(converged, "coordinate fixed point failed to stabilize");
    let winv = w.inv().expect("w has unit leading coefficient");
    let x = t.mul(&winv).truncated(prec);
    let y = winv.neg().truncated(prec);
    (x, y)
}

/// The invariant differential omega = x'(t) / (2 y(t)), normalized to
/// leading coefficient 1.
pub fn invariant_differential(x: &Series, y: &Series) -> Series {
    let prec = x.prec().min(y.prec());
    x.derive()
        .mul(&y.scale(&rat_int(2)).inv().expect("y is a Laurent unit"))
        .truncated(prec)
}

/// Formal logarithm (integral of omega, variable t) and exponential (its
/// reversion, variable z). Mutually inverse: log(exp z) = z.
pub fn formal_log_exp(omega: &Series) -> Result<(Series, Series)> {
    let log = omega.integrate()?;
    let exp = log.reverse()?.with_var(Var::Z);
    Ok((log, exp))
}

/// Weierstrass wp as a Laurent series in z: wp = z^-2 + sum c_k z^(2k) with
/// c_1 = g2/20, c_2 = g3/28 and
/// c_k = 3/((2k+3)(k-2)) * sum_{j=1}^{k-2} c_j c_{k-1-j} for k >= 3.
pub fn wp_series<R: Field>(g2: &R, g3: &R, prec: i64) -> TruncatedSeries<R> {
    assert!(prec > -2, "wp needs room for its double pole");
    let kmax = ((prec - 1).max(0) / 2) as usize;
    let mut c = vec![R::zero(); kmax + 1];
    for k in 1..=kmax {
        c[k] = match k {
            1 => g2.try_div(&R::from_int(20)).unwrap(),
            2 => g3.try_div(&R::from_int(28)).unwrap(),
            _ => {
                let mut s = R::zero();
                for j in 1..=k - 2 {
                    s = s.add(&c[j].mul(&c[k - 1 - j]));
                }
                s.mul(
                    &R::from_int(3)
                        .try_div(&R::from_int(((2 * k + 3) * (k - 2)) as i64))
                        .unwrap(),
                )
            }
        };
    }
    let mut coeffs = vec![R::zero(); (prec + 2) as usize];
    coeffs[0] = R::one();
    for k in 1..=kmax {
        coeffs[2 * k + 2] = c[k].clone();
    }
    TruncatedSeries::new(Var::Z, -2, coeffs, prec)
}

/// The group law F(t1,t2) = exp(log t1 + log t2) to total degree deg.
pub fn group_law(log: &Series, exp: &Series, deg: usize) -> Result<BiSeries<Rat>> {
    let s = BiSeries::from_univariate(log, 0, deg)?.add(&BiSeries::from_univariate(log, 1, deg)?);
    s.compose_outer(exp)
}

/// Multiplication-by-m series [m](t) = exp(m log t).
pub fn mult_by_m(log: &Series, exp: &Series, m: i64) -> Result<Series> {
    exp.compose(&log.scale(&rat_int(m)))
}

/// Everything the later modules need about one curve's formal group.
#[derive(Debug, Clone)]
pub struct FormalGroupData {
    pub curve: CurveModel,
    pub x_series: Series,
    pub y_series: Series,
    pub omega: Series,
    pub log_series: Series,
    pub exp_series: Series,
    pub group_law: BiSeries<Rat>,
}

impl FormalGroupData {
    /// Expand every series modulo t^prec (the group law to total degree prec).
    pub fn for_curve(c: &CurveModel, prec: i64) -> Result<Self> {
        assert!(prec >= 4, "need room past the pole parts");
        let (x_series, y_series) = formal_xy(c, prec);
        let omega = invariant_differential(&x_series, &y_series);
        let (log_series, exp_series) = formal_log_exp(&omega)?;
        let f = group_law(&log_series, &exp_series, prec as usize)?;
        Ok(Self {
            curve: c.clone(),
            x_series,
            y_series,
            omega,
            log_series,
            exp_series,
            group_law: f,
        })
    }

    /// [m](t) at this data's working precision.
    pub fn mult_by_m(&self, m: i64) -> Result<Series> {
        mult_by_m(&self.log_series, &self.exp_series, m)
    }
}
