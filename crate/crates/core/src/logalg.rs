//! Log-algebraic identity verifiers for a modular parametrization.
//!
//! For an integer twist polynomial beta(u) = sum_k m_k u^k the twisted
//! harmonic series of the eigenform is
//!
//!   lambda_beta(t) = sum_{n>=1} (a_n/n) beta(u^n) t^n   in Q[u][[t]],
//!
//! which is the rearrangement of sum_k m_k lambda(u^k t). With exp/log the
//! formal group pair of the curve, F its group law, [m] its multiplication
//! series, wp the Weierstrass function, and (X, Y, Phi) the parametrization
//! series, the identities checked here are
//!
//!   logalg1a:  exp(lambda(t)) = Phi(t),
//!   wp:        wp(lambda(t)) = X(t)  and  wp'(lambda(t))/2 = Y(t),
//!   main-a:    exp(lambda_beta(t)) = F-sum over k of [m_k](Phi(u^k t)),
//!   main-b:    wp(lambda_beta(t))  = x( sum_k m_k (X, Y)(u^k t) ),
//!
//! the main-b sum taken by chord and tangent over the field Q(u) (or over Q
//! after specializing u). Every comparison is exact coefficientwise equality
//! up to the truncation order; a failure reports the first bad power with
//! both values, and a comparison that cannot be formed (zero twist, or a
//! point sum collapsing to infinity) is reported as degenerate rather than
//! as an error.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::curve::{CurveModel, SeriesPoint};
use crate::error::{Error, Result};
use crate::formal::{formal_log_exp, formal_xy, invariant_differential, wp_series, FormalGroupData};
use crate::modform::{modular_xy, NewformCoeffs, ParametrizationSeries};
use crate::poly::{ratfunc_const, RatFunc, UPoly};
use crate::ring::{rat, rat_int, Rat, Ring};
use crate::series::{TruncatedSeries, Var};

type Series = TruncatedSeries<Rat>;
type USeries = TruncatedSeries<UPoly>;

/// Integer twist polynomial beta(u) = sum_k m_k u^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaPoly {
    m: Vec<i64>,
}

impl BetaPoly {
    pub fn new(mut m: Vec<i64>) -> Self {
        while m.last() == Some(&0) {
            m.pop();
        }
        Self { m }
    }

    /// Parse "m_j,m_{j+1},...,m_d@j": comma-separated integer coefficients
    /// starting at degree j ("@j" omitted means degree 0). So "1,-1@1" is
    /// u - u^2 and "2,2,-4,-4,2,2@1" starts with 2u.
    pub fn parse(text: &str) -> Result<Self> {
        let (list, offset) = match text.split_once('@') {
            Some((l, o)) => (
                l,
                o.trim().parse::<usize>().map_err(|_| {
                    Error::ParseError(format!("bad degree offset {o:?} in twist polynomial"))
                })?,
            ),
            None => (text, 0),
        };
        let mut m = vec![0i64; offset];
        for part in list.split(',') {
            m.push(part.trim().parse::<i64>().map_err(|_| {
                Error::ParseError(format!("bad coefficient {part:?} in twist polynomial"))
            })?);
        }
        Ok(Self::new(m))
    }

    pub fn degree(&self) -> usize {
        self.m.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.m.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_empty()
    }

    /// Nonzero terms (k, m_k) in ascending degree order.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect()
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::new(self.m.iter().map(|&c| rat_int(c)).collect())
    }

    /// beta(u^n) as a polynomial in u.
    pub fn of_u_pow(&self, n: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::new(vec![]);
        }
        let mut c = vec![Rat::zero(); self.degree() * n + 1];
        for (k, mk) in self.terms() {
            c[k * n] = &c[k * n] + rat_int(mk);
        }
        UPoly::new(c)
    }

    pub fn eval_rat(&self, u: &Rat) -> Rat {
        self.to_upoly().eval(u)
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (k, mk)) in self.terms().into_iter().enumerate() {
            let mag = mk.abs();
            match (pos, mk < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if k == 0 || mag != 1 {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        Ok(())
    }
}

/// lambda_beta(t) = sum_{n=1}^{prec-1} (a_n/n) beta(u^n) t^n.
pub fn twisted_harmonic(beta: &BetaPoly, nf: &NewformCoeffs, prec: i64) -> Result<USeries> {
    let lam = nf.lambda_series(prec)?;
    let coeffs = (1..prec)
        .map(|n| beta.of_u_pow(n as usize).scale(&lam.coeff(n)))
        .collect();
    Ok(TruncatedSeries::new(Var::T, 1, coeffs, prec))
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every compared coefficient matched exactly.
    Holds,
    /// First mismatching power, with both exact values.
    Fails {
        index: String,
        lhs: String,
        rhs: String,
    },
    /// The comparison could not be formed (zero twist polynomial, or a
    /// formal point sum that collapses to the point at infinity).
    Degenerate { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails { index, lhs, rhs } => {
                write!(f, "fails at {index}: lhs = {lhs}, rhs = {rhs}")
            }
            Verdict::Degenerate { reason } => write!(f, "degenerate: {reason}"),
        }
    }
}

/// One verified identity with its truncation order and wall-clock cost.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub order: i64,
    pub verdict: Verdict,
    pub millis: u64,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} to order {}: {} [{} ms]",
            self.id, self.order, self.verdict, self.millis
        )
    }
}

/// Compare two series through the requested order (clamped to what both
/// sides actually know) and package the outcome.
fn finish<R: Ring>(
    id: String,
    order: i64,
    lhs: &TruncatedSeries<R>,
    rhs: &TruncatedSeries<R>,
    started: Instant,
) -> IdentityReport {
    let order = order.min(lhs.prec()).min(rhs.prec());
    let verdict = match lhs.truncated(order).first_mismatch(&rhs.truncated(order)) {
        None => Verdict::Holds,
        Some((n, a, b)) => Verdict::Fails {
            index: format!("t^{n}"),
            lhs: a.to_string(),
            rhs: b.to_string(),
        },
    };
    IdentityReport {
        id,
        order,
        verdict,
        millis: started.elapsed().as_millis() as u64,
    }
}

fn degenerate(id: String, order: i64, reason: &str, started: Instant) -> IdentityReport {
    IdentityReport {
        id,
        order,
        verdict: Verdict::Degenerate {
            reason: reason.into(),
        },
        millis: started.elapsed().as_millis() as u64,
    }
}

/// Compare exp(lambda) with Phi; the seam lets callers pair series from
/// different sources (the mutation harness checks a corrupted harmonic
/// side against a pristine parametrization).
pub fn logalg1a_report(exp: &Series, lambda: &Series, phi: &Series, prec: i64) -> Result<IdentityReport> {
    let started = Instant::now();
    let lhs = exp.compose(lambda)?;
    Ok(finish("logalg1a".into(), prec, &lhs, phi, started))
}

/// exp(lambda(t)) = Phi(t): the formal exponential carries the logarithm of
/// the eigenform onto the local parameter of the parametrization.
pub fn verify_logalg1a(nf: &NewformCoeffs, c: &CurveModel, prec: i64) -> Result<IdentityReport> {
    let started = Instant::now();
    let (x, y) = formal_xy(c, prec);
    let (_, exp) = formal_log_exp(&invariant_differential(&x, &y))?;
    let ps = modular_xy(nf, c, prec)?;
    let mut rep = logalg1a_report(&exp, &ps.lambda, &ps.phi, prec)?;
    rep.millis = started.elapsed().as_millis() as u64;
    Ok(rep)
}

/// Compare wp(lambda) with X and wp'(lambda)/2 with Y through t^prec.
pub fn wp_report(
    c: &CurveModel,
    lambda: &Series,
    x: &Series,
    y: &Series,
    prec: i64,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let wp = wp_series(&c.g2, &c.g3, lambda.prec() + 2);
    let x_rep = finish(
        "wp".into(),
        prec,
        &wp.compose(lambda)?,
        &x.clone().with_var(Var::T),
        started,
    );
    let y_rep = finish(
        "wp".into(),
        prec,
        &wp.derive().scale(&rat(1, 2)).compose(lambda)?,
        &y.clone().with_var(Var::T),
        started,
    );
    let verdict = if !x_rep.holds() {
        x_rep.verdict
    } else {
        match y_rep.verdict {
            Verdict::Fails { index, lhs, rhs } => Verdict::Fails {
                index: format!("{index} (derivative side)"),
                lhs,
                rhs,
            },
            v => v,
        }
    };
    Ok(IdentityReport {
        id: "wp".into(),
        order: x_rep.order.min(y_rep.order),
        verdict,
        millis: started.elapsed().as_millis() as u64,
    })
}

/// wp(lambda(t)) = X(t) and wp'(lambda(t))/2 = Y(t): the coordinates of the
/// parametrization are the Weierstrass functions of its logarithm.
pub fn verify_wp_identities(nf: &NewformCoeffs, c: &CurveModel, prec: i64) -> Result<IdentityReport> {
    let started = Instant::now();
    // The derivative side loses four orders to the poles; pad the inputs.
    let ps = modular_xy(nf, c, prec + 4)?;
    let mut rep = wp_report(c, &ps.lambda, &ps.x, &ps.y, prec)?;
    rep.millis = started.elapsed().as_millis() as u64;
    Ok(rep)
}

/// Drop u-degrees above the cap (None keeps everything exact).
fn clip_u(s: &USeries, cap: Option<usize>) -> USeries {
    match cap {
        None => s.clone(),
        Some(c) => s.map_coeffs(|p| UPoly::new(p.coeffs().iter().take(c + 1).cloned().collect())),
    }
}

fn lift_const(r: &Rat) -> UPoly {
    UPoly::constant(r.clone())
}

/// F-sum over the given terms of [m_k](Phi(u^k t)), folded left to right
/// through the two-variable group law. The partial sums always have a
/// nonzero t-coefficient (distinct powers of u cannot cancel), so the
/// substitutions stay inside the composition domain.
fn formal_sum_a(
    fg: &FormalGroupData,
    ps: &ParametrizationSeries,
    terms: &[(usize, i64)],
    prec: i64,
    cap: Option<usize>,
) -> Result<USeries> {
    let law_u = fg.group_law.map_coeffs(lift_const);
    let phi_u = ps.phi.map_coeffs(lift_const);
    let mut acc: Option<USeries> = None;
    for &(k, mk) in terms {
        let arg = phi_u.scale_arg(&UPoly::monomial(Rat::one(), k))?;
        let term = fg.mult_by_m(mk)?.map_coeffs(lift_const).compose(&arg)?;
        let term = clip_u(&term, cap);
        acc = Some(match acc {
            None => term,
            Some(s) => clip_u(&law_u.eval_at(&s, &term)?, cap),
        });
    }
    Ok(acc.unwrap_or_else(|| TruncatedSeries::zero(Var::T, prec)))
}

/// Compare exp(lambda_beta) with the F-sum of [m_k](Phi(u^k t)) in Q[u][[t]].
pub fn main_a_report(
    fg: &FormalGroupData,
    ps: &ParametrizationSeries,
    twisted: &USeries,
    beta: &BetaPoly,
    prec: i64,
    u_degree_cap: Option<usize>,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let id = format!("main-a[{beta}]");
    let exp_u = fg.exp_series.map_coeffs(lift_const);
    let lhs = clip_u(&exp_u.compose(&clip_u(twisted, u_degree_cap))?, u_degree_cap);
    let rhs = formal_sum_a(fg, ps, &beta.terms(), prec, u_degree_cap)?;
    Ok(finish(id, prec, &lhs, &rhs, started))
}

/// exp(lambda_beta(t)) = F-sum over k of [m_k](Phi(u^k t)), exactly in
/// Q[u][[t]] (or modulo u^(cap+1) when a u-degree cap is given).
pub fn verify_main_a(
    beta: &BetaPoly,
    nf: &NewformCoeffs,
    c: &CurveModel,
    prec: i64,
    u_degree_cap: Option<usize>,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let fg = FormalGroupData::for_curve(c, prec)?;
    let ps = modular_xy(nf, c, prec)?;
    let tw = twisted_harmonic(beta, nf, prec)?;
    let mut rep = main_a_report(&fg, &ps, &tw, beta, prec, u_degree_cap)?;
    rep.millis = started.elapsed().as_millis() as u64;
    Ok(rep)
}

/// Compare wp(lambda_beta) with the x-coordinate of the chord-tangent sum
/// of m_k copies of (X, Y)(u^k t), over the coefficient field Q(u).
pub fn main_b_report(
    c: &CurveModel,
    ps: &ParametrizationSeries,
    twisted: &USeries,
    beta: &BetaPoly,
    prec: i64,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let id = format!("main-b[{beta}]");
    if beta.is_zero() {
        return Ok(degenerate(id, prec, "twist polynomial is zero", started));
    }
    // Point side first: it decides degeneracy before the wp side can hit
    // an (impossible unless degenerate) zero logarithm.
    let x_rf = ps.x.map_coeffs(|r| ratfunc_const(r));
    let y_rf = ps.y.map_coeffs(|r| ratfunc_const(r));
    let mut sum: SeriesPoint<RatFunc> = SeriesPoint::Infinity;
    for (k, mk) in beta.terms() {
        let uk = RatFunc::from_poly(UPoly::monomial(Rat::one(), k));
        let p = SeriesPoint::xy(x_rf.scale_arg(&uk)?, y_rf.scale_arg(&uk)?);
        sum = sum.add(&p.mul(mk, c)?, c)?;
    }
    let rhs = match sum.x() {
        Err(_) => {
            return Ok(degenerate(
                id,
                prec,
                "formal point sum is the point at infinity",
                started,
            ))
        }
        Ok(x) => x.clone().with_var(Var::T),
    };
    let wp = wp_series(&ratfunc_const(&c.g2), &ratfunc_const(&c.g3), twisted.prec() + 2);
    let lhs = wp.compose(&twisted.map_coeffs(|p| RatFunc::from_poly(p.clone())))?;
    Ok(finish(id, prec, &lhs, &rhs, started))
}

/// wp(lambda_beta(t)) = x(sum_k m_k (X, Y)(u^k t)) exactly over Q(u).
pub fn verify_main_b(
    beta: &BetaPoly,
    nf: &NewformCoeffs,
    c: &CurveModel,
    prec: i64,
) -> Result<IdentityReport> {
    let started = Instant::now();
    if beta.is_zero() {
        return Ok(degenerate(
            format!("main-b[{beta}]"),
            prec,
            "twist polynomial is zero",
            started,
        ));
    }
    // Chord-tangent slopes and the wp pole cost a few orders; pad.
    let ps = modular_xy(nf, c, prec + 4)?;
    let tw = twisted_harmonic(beta, nf, prec + 4)?;
    let mut rep = main_b_report(c, &ps, &tw, beta, prec)?;
    rep.millis = started.elapsed().as_millis() as u64;
    Ok(rep)
}

/// main-b with u specialized to a nonzero rational. The point sum may now
/// genuinely collapse (for instance at u = 1 when beta(1) = 0), which is
/// reported as degenerate; everywhere else the verdict must agree with the
/// exact Q(u) run.
pub fn verify_main_b_at(
    beta: &BetaPoly,
    nf: &NewformCoeffs,
    c: &CurveModel,
    prec: i64,
    u: &Rat,
) -> Result<IdentityReport> {
    let started = Instant::now();
    let id = format!("main-b[{beta}] at u = {u}");
    if beta.is_zero() {
        return Ok(degenerate(id, prec, "twist polynomial is zero", started));
    }
    let ps = modular_xy(nf, c, prec + 4)?;
    let mut sum: SeriesPoint<Rat> = SeriesPoint::Infinity;
    for (k, mk) in beta.terms() {
        let mut uk = Rat::one();
        for _ in 0..k {
            uk = &uk * u;
        }
        let p = SeriesPoint::xy(ps.x.scale_arg(&uk)?, ps.y.scale_arg(&uk)?);
        sum = sum.add(&p.mul(mk, c)?, c)?;
    }
    let rhs = match sum.x() {
        Err(_) => {
            return Ok(degenerate(
                id,
                prec,
                "formal point sum is the point at infinity",
                started,
            ))
        }
        Ok(x) => x.clone().with_var(Var::T),
    };
    let tw = twisted_harmonic(beta, nf, prec + 4)?.map_coeffs(|p| p.eval(u));
    let wp = wp_series(&c.g2, &c.g3, prec + 6);
    let lhs = wp.compose(&tw)?;
    let mut rep = finish(id, prec, &lhs, &rhs, started);
    rep.millis = started.elapsed().as_millis() as u64;
    Ok(rep)
}
