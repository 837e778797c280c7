//! The acceptance matrix: one function per criterion, shared by the
//! integration-test target and the command-line selftest so both run the
//! same checks. Each criterion returns a one-line detail string on success
//! and the first failing quantity as an error otherwise.

use crate::character::{gauss_sum, DirichletCharacter};
use crate::curve::{conductor_11_curve, CurveModel};
use crate::error::{Error, Result};
use crate::examples::{example_driver, ExampleId};
use crate::formal::{
    formal_log_exp, formal_xy, invariant_differential, wp_series, FormalGroupData,
};
use crate::logalg::{
    logalg1a_report, main_a_report, main_b_report, twisted_harmonic, verify_logalg1a,
    verify_main_a, verify_main_b, verify_wp_identities, BetaPoly, IdentityReport, Verdict,
};
use crate::modform::{
    eta_product_coeffs, honda_group_law, modular_xy, CoeffSource, NewformCoeffs,
};
use crate::periods::{periods, WpEvaluator};
use crate::ring::{rat, rat_int, Rat};
use crate::series::{TruncatedSeries, Var};

type Series = TruncatedSeries<Rat>;

/// Precision profile: the full acceptance run and the fast smoke run use
/// the same criterion code at different truncation orders.
#[derive(Debug, Clone, Copy)]
pub struct Profile {
    pub golden_prec: i64,
    pub identity_prec: i64,
    pub main_a_prec: i64,
    pub main_b_prec: i64,
    pub honda_degree: usize,
    /// Run the floating-point L-value drivers (slow side of the matrix).
    pub numerics: bool,
    pub property_reps: u64,
    pub wp_ode_prec: i64,
}

impl Profile {
    pub fn full() -> Self {
        Profile {
            golden_prec: 30,
            identity_prec: 30,
            main_a_prec: 20,
            main_b_prec: 12,
            honda_degree: 30,
            numerics: true,
            property_reps: 20,
            wp_ode_prec: 20,
        }
    }

    /// Smoke profile clamped around the requested order; drops the
    /// floating-point drivers to stay inside a seconds-scale budget.
    pub fn fast(prec: i64) -> Self {
        let p = prec.clamp(6, 16);
        Profile {
            golden_prec: p,
            identity_prec: p,
            main_a_prec: p.min(12),
            main_b_prec: p.min(10),
            honda_degree: p as usize,
            numerics: false,
            property_reps: 4,
            wp_ode_prec: p,
        }
    }
}

/// Criterion names in matrix order.
pub const CRITERIA: [&str; 7] = [
    "golden-series",
    "identity-suite",
    "honda-integrality",
    "rational-multiple",
    "quadratic-twist-multiple",
    "cubic-twist-multiple",
    "property-suite",
];

pub fn run(name: &str, p: &Profile) -> Result<String> {
    match name {
        "golden-series" => golden_series(p),
        "identity-suite" => identity_suite(p),
        "honda-integrality" => honda_integrality(p),
        "rational-multiple" => numeric_driver(p, ExampleId::One),
        "quadratic-twist-multiple" => numeric_driver(p, ExampleId::Two),
        "cubic-twist-multiple" => numeric_driver(p, ExampleId::Three),
        "property-suite" => property_suite(p),
        other => Err(Error::ParseError(format!("unknown criterion {other:?}"))),
    }
}

pub fn run_all(p: &Profile) -> Vec<(&'static str, Result<String>)> {
    CRITERIA.iter().map(|&n| (n, run(n, p))).collect()
}

fn mismatch(quantity: String, got: impl ToString, want: impl ToString) -> Error {
    Error::ExampleCheckFailed {
        quantity,
        got: got.to_string(),
        want: want.to_string(),
    }
}

fn require_holds(rep: IdentityReport) -> Result<()> {
    if rep.holds() {
        Ok(())
    } else {
        Err(mismatch(rep.id.clone(), rep.verdict.to_string(), "holds"))
    }
}

fn require_fails(rep: IdentityReport, at: Option<&str>) -> Result<()> {
    match (&rep.verdict, at) {
        (Verdict::Fails { .. }, None) => Ok(()),
        (Verdict::Fails { index, .. }, Some(want)) if index.starts_with(want) => Ok(()),
        _ => Err(mismatch(
            format!("mutation sensitivity of {}", rep.id),
            rep.verdict.to_string(),
            match at {
                Some(w) => format!("failure at {w}"),
                None => "a reported failure".to_string(),
            },
        )),
    }
}

/// Criterion 1: every hand-printed coefficient of the formal-group series
/// and the level-11 parametrization is reproduced exactly.
fn golden_series(p: &Profile) -> Result<String> {
    // The printed table reaches order nine, so clamp the smoke profile up.
    let prec = p.golden_prec.max(12);
    let c = conductor_11_curve();
    let fg = FormalGroupData::for_curve(&c, prec)?;
    let mut count = 0usize;
    let mut check = |label: &str, s: &Series, k: i64, want: Rat| -> Result<()> {
        count += 1;
        let got = s.coeff(k);
        if got == want {
            Ok(())
        } else {
            Err(mismatch(format!("{label} coefficient at {k}"), got, want))
        }
    };
    check("x(t)", &fg.x_series, 2, rat(31, 3))?;
    check("x(t)", &fg.x_series, 4, rat(2501, 108))?;
    check("x(t)", &fg.x_series, 6, rat(-961, 9))?;
    check("y(t)", &fg.y_series, 1, rat(-31, 3))?;
    check("omega(t)", &fg.omega, 4, rat(-62, 3))?;
    check("omega(t)", &fg.omega, 6, rat(-2501, 36))?;
    check("omega(t)", &fg.omega, 8, rat(1922, 3))?;
    check("log(t)", &fg.log_series, 5, rat(-62, 15))?;
    check("log(t)", &fg.log_series, 7, rat(-2501, 252))?;
    check("exp(z)", &fg.exp_series, 5, rat(62, 15))?;
    check("exp(z)", &fg.exp_series, 7, rat(2501, 252))?;
    let wp = wp_series(&c.g2, &c.g3, prec);
    check("wp(z)", &wp, 2, rat(31, 15))?;
    check("wp(z)", &wp, 4, rat(2501, 756))?;
    check("wp(z)", &wp, 6, rat(961, 675))?;

    let nf = eta_product_coeffs(11, prec as usize + 8)?;
    let ps = modular_xy(&nf, &c, prec)?;
    for (k, w) in [
        (-2, rat_int(1)),
        (-1, rat_int(2)),
        (0, rat(11, 3)),
        (1, rat_int(5)),
        (2, rat_int(8)),
        (3, rat_int(1)),
        (4, rat_int(7)),
        (5, rat_int(-11)),
    ] {
        check("X(q)", &ps.x, k, w)?;
    }
    for (k, w) in [
        (-3, rat_int(-1)),
        (-2, rat_int(-3)),
        (-1, rat_int(-7)),
        (0, rat(-25, 2)),
        (1, rat_int(-17)),
        (2, rat_int(-26)),
        (3, rat_int(-19)),
    ] {
        check("Y(q)", &ps.y, k, w)?;
    }
    for (k, w) in [
        (1, rat_int(1)),
        (2, rat_int(-1)),
        (3, rat(-1, 3)),
        (4, rat(1, 2)),
        (5, rat(13, 3)),
        (6, rat(-61, 3)),
        (7, rat(529, 12)),
    ] {
        check("Phi(q)", &ps.phi, k, w)?;
    }
    Ok(format!(
        "{count} printed coefficients reproduced exactly at order {prec}"
    ))
}

/// Criterion 2: the four identity verifiers hold at their contract orders.
fn identity_suite(p: &Profile) -> Result<String> {
    let c = conductor_11_curve();
    let top = p.identity_prec.max(p.main_a_prec).max(p.main_b_prec);
    let nf = eta_product_coeffs(11, top as usize + 12)?;
    require_holds(verify_logalg1a(&nf, &c, p.identity_prec)?)?;
    require_holds(verify_wp_identities(&nf, &c, p.identity_prec)?)?;
    for b in ["1@1", "1,-1@1", "2,2,-4,-4,2,2@1"] {
        require_holds(verify_main_a(
            &BetaPoly::parse(b)?,
            &nf,
            &c,
            p.main_a_prec,
            None,
        )?)?;
    }
    for b in ["1@1", "1,-1@1"] {
        require_holds(verify_main_b(&BetaPoly::parse(b)?, &nf, &c, p.main_b_prec)?)?;
    }
    Ok(format!(
        "logalg1a and wp hold at t^{}; main-a at t^{} for 3 twists; main-b at t^{} over Q(u) for 2 twists",
        p.identity_prec, p.main_a_prec, p.main_b_prec
    ))
}

/// Criterion 3: the two-variable group law has integer coefficients.
fn honda_integrality(p: &Profile) -> Result<String> {
    let deg = p.honda_degree.max(6);
    let nf = eta_product_coeffs(11, 2 * deg + 4)?;
    // honda_group_law aborts with NonIntegralCoefficient if any entry
    // fails, so success is the certificate.
    let law = honda_group_law(&nf, deg)?;
    let _ = law;
    Ok(format!("group law integral through total degree {deg}"))
}

/// Criteria 4-6: the floating-point drivers reproduce every published
/// value and the exact period multiple.
fn numeric_driver(p: &Profile, which: ExampleId) -> Result<String> {
    if !p.numerics {
        return Ok("skipped: fast profile omits the floating-point drivers".into());
    }
    let rep = example_driver(which)?;
    Ok(format!(
        "{} checks passed; exact result {}",
        rep.intermediates.len(),
        rep.exact_result
    ))
}

/// Small deterministic generator so the property spot checks are
/// reproducible run to run.
struct Xs(u64);

impl Xs {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn small_rat(&mut self) -> Rat {
        let num = (self.next() % 13) as i64 - 6;
        let den = 1 + (self.next() % 7) as i64;
        rat(num, den)
    }

    fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.small_rat();
            if r != rat_int(0) {
                return r;
            }
        }
    }

    fn series(&mut self, prec: i64) -> Series {
        let val = (self.next() % 3) as i64;
        let coeffs = (0..(prec - val)).map(|_| self.small_rat()).collect();
        TruncatedSeries::new(Var::T, val, coeffs, prec)
    }
}

/// Criterion 7: live property spot checks standing in for the claims that
/// cannot be verified at all orders.
fn property_suite(p: &Profile) -> Result<String> {
    let mut g = Xs(0x9E37_79B9_7F4A_7C15);
    let prec = 12i64;

    // Ring axioms and reversion round-trips on random series.
    for rep in 0..p.property_reps {
        let a = g.series(prec);
        let b = g.series(prec);
        let c = g.series(prec);
        let lhs = a.add(&b).mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c));
        if !lhs.agrees_with(&rhs) {
            return Err(mismatch(format!("distributivity, sample {rep}"), lhs, rhs));
        }
        let assoc_l = a.mul(&b).mul(&c);
        let assoc_r = a.mul(&b.mul(&c));
        if !assoc_l.agrees_with(&assoc_r) {
            return Err(mismatch(
                format!("associativity, sample {rep}"),
                assoc_l,
                assoc_r,
            ));
        }
        if !a.mul(&b).agrees_with(&b.mul(&a)) {
            return Err(mismatch(
                format!("commutativity, sample {rep}"),
                a.mul(&b),
                b.mul(&a),
            ));
        }
        let mut coeffs = vec![g.nonzero_rat()];
        coeffs.extend((2..prec).map(|_| g.small_rat()));
        let r = TruncatedSeries::new(Var::T, 1, coeffs, prec);
        let round = r.reverse()?.compose(&r)?;
        if !round.agrees_with(&TruncatedSeries::identity(Var::T).truncated(prec)) {
            return Err(mismatch(
                format!("reversion round-trip, sample {rep}"),
                round,
                "t",
            ));
        }
    }

    // Formal-group axioms at order 15: symmetry, neutral element, and the
    // exp/log round-trip that generates the law.
    let c11 = conductor_11_curve();
    let nf = eta_product_coeffs(11, 40)?;
    let law = honda_group_law(&nf, 16)?;
    for i in 0..16usize {
        for j in 0..=i.min(15 - i) {
            if law.coeff(i, j) != law.coeff(j, i) {
                return Err(mismatch(
                    format!("group-law symmetry at ({i}, {j})"),
                    law.coeff(i, j),
                    law.coeff(j, i),
                ));
            }
        }
        let want = if i == 1 { rat_int(1) } else { rat_int(0) };
        if law.coeff(i, 0) != want {
            return Err(mismatch(format!("neutral element at degree {i}"), law.coeff(i, 0), want));
        }
    }
    let fg = FormalGroupData::for_curve(&c11, 16)?;
    let round = fg.exp_series.compose(&fg.log_series)?;
    if !round.agrees_with(&TruncatedSeries::identity(Var::T).truncated(16)) {
        return Err(mismatch("exp(log) round-trip".into(), round, "t"));
    }

    // The wp differential equation at random (g2, g3).
    let ode_prec = p.wp_ode_prec.max(10);
    for rep in 0..p.property_reps {
        let g2 = g.small_rat();
        let g3 = g.small_rat();
        let wp = wp_series(&g2, &g3, ode_prec + 8);
        let residual = wp
            .derive()
            .pow(2)?
            .sub(&wp.pow(3)?.scale(&rat_int(4)))
            .add(&wp.scale(&g2))
            .add(&TruncatedSeries::constant(Var::Z, g3.clone()).truncated(ode_prec));
        if !residual.truncated(ode_prec).is_zero() {
            return Err(mismatch(
                format!("wp ODE residual for g2 = {g2}, g3 = {g3}, sample {rep}"),
                residual,
                "0",
            ));
        }
    }

    // Gauss-sum norms |g|^2 = m (the exact identity is asserted inside).
    for m in [3u64, 5, 7, 11, 13] {
        let gs = gauss_sum(&DirichletCharacter::quadratic(m)?)?;
        if (gs.value.norm_sqr() - m as f64).abs() > 1e-9 {
            return Err(mismatch(
                format!("quadratic Gauss-sum norm mod {m}"),
                gs.value.norm_sqr(),
                m,
            ));
        }
    }
    let gs = gauss_sum(&DirichletCharacter::cubic_mod_7())?;
    if (gs.value.norm_sqr() - 7.0).abs() > 1e-9 {
        return Err(mismatch("cubic Gauss-sum norm".into(), gs.value.norm_sqr(), 7));
    }

    // Numeric wp periodicity on the built-in lattice.
    let lat = periods(&c11, 10);
    let wp_eval = WpEvaluator::new(&lat, &c11.g2, &c11.g3);
    for (re, im) in [(0.31, 0.22), (0.57, -0.41), (-0.13, 0.65)] {
        let z = num_complex::Complex64::new(re, im);
        let (v0, d0) = wp_eval.eval(z)?;
        for shift in [
            num_complex::Complex64::new(lat.omega, 0.0),
            lat.omega_prime,
        ] {
            let (v1, d1) = wp_eval.eval(z + shift)?;
            let delta = (v1 - v0).norm().max((d1 - d0).norm());
            if delta > 1e-9 {
                return Err(mismatch(
                    format!("wp periodicity at {z} + {shift}"),
                    delta,
                    "below 1e-9",
                ));
            }
        }
    }

    // Mutation sensitivity: a corrupted harmonic side against the pristine
    // parametrization must fail every verifier, at exactly the corrupted
    // index where the report is that precise.
    let mprec = 10i64;
    let bad = corrupted(&nf, 5);
    let ps = modular_xy(&nf, &c11, mprec)?;
    let (x, y) = formal_xy(&c11, mprec);
    let (_, exp) = formal_log_exp(&invariant_differential(&x, &y))?;
    require_fails(
        logalg1a_report(&exp, &bad.lambda_series(mprec)?, &ps.phi, mprec)?,
        Some("t^5"),
    )?;
    require_fails(
        crate::logalg::wp_report(&c11, &bad.lambda_series(mprec)?, &ps.x, &ps.y, mprec)?,
        None,
    )?;
    let beta = BetaPoly::parse("1@1")?;
    let fg10 = FormalGroupData::for_curve(&c11, mprec)?;
    require_fails(
        main_a_report(
            &fg10,
            &ps,
            &twisted_harmonic(&beta, &bad, mprec)?,
            &beta,
            mprec,
            None,
        )?,
        Some("t^5"),
    )?;
    let ps4 = modular_xy(&nf, &c11, mprec + 4)?;
    require_fails(
        main_b_report(
            &c11,
            &ps4,
            &twisted_harmonic(&beta, &bad, mprec + 4)?,
            &beta,
            mprec,
        )?,
        None,
    )?;

    Ok(format!(
        "ring axioms and reversion ({} samples), group-law symmetry/neutral to degree 15, \
         wp ODE residuals ({} curves at t^{}), Gauss-sum norms, wp periodicity, \
         verifier mutation sensitivity",
        p.property_reps, p.property_reps, ode_prec
    ))
}

/// The built-in sequence with a_n bumped by one: still a_1 = 1, no longer
/// the eigenform.
pub fn corrupted(nf: &NewformCoeffs, n: usize) -> NewformCoeffs {
    let mut a: Vec<i64> = (1..=nf.max_index()).map(|i| nf.a(i)).collect();
    a[n - 1] += 1;
    NewformCoeffs::from_integers(nf.level(), a, CoeffSource::File)
}

/// Used by the numeric drivers but not named in this module's checks; the
/// signature keeps the curve handy for future criteria.
#[allow(dead_code)]
fn builtin() -> CurveModel {
    conductor_11_curve()
}
