//! End-to-end drivers for the three special-value computations on the
//! conductor-11 curve, producing a structured report of every intermediate.
//!
//! one:   L(E,1), the image point P = (X,Y)(e^(-2 pi/sqrt 11)) of elliptic
//!        logarithm L/2, the rational point 2P = (47/3, -121/2) of order 5,
//!        and the lattice multiple L = Omega/5.
//! two:   the quadratic twist by the character of Q(sqrt -3): L(chi),
//!        Q - conj(Q) of order 2, wp((sqrt(-3)/2) L(chi)) = x(Q - conj(Q)),
//!        and L(chi) = (Omega - 2 OmegaPrime)/sqrt(-3).
//! three: the cubic twist mod 7: L(psi), the real Gauss-sum combinations T1
//!        and T2, the lattice point T = T1 - 3 T2 = 10 Omega, the vanishing
//!        combination 2P1 + 2P2 - 4P3 - 4P4 + 2P5 + 2P6 = O checked by
//!        direct chord-tangent arithmetic over C, and the closed form
//!        L(psi) = (5/14)(1 + sqrt(-3)) g(psi) Omega.
//!
//! Point coordinates are always taken from X and Y directly; Phi is only
//! evaluated for bridge checks (it runs hot near zeros of Y), and a
//! heuristic tail flag on Phi downgrades that check to a note.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::character::{gauss_sum, DirichletCharacter};
use crate::curve::{conductor_11_curve, AffinePoint, ShortCurve};
use crate::cyclotomic::QRho;
use crate::error::{Error, Result};
use crate::lvalue::{character_sum, eval_series, l1_rapid, l1_twisted, TwistMode};
use crate::modform::{eta_product_coeffs, modular_xy, NewformCoeffs, ParametrizationSeries};
use crate::periods::{periods, short_cubic_roots, wp_numeric};
use crate::recognize::{lattice_multiple, recognize_point, GeneratorLine, DEFAULT_DENOM_BOUND};
use crate::ring::{rat, rat_int, Rat, Ring, ToComplex};

/// One reported quantity: its computed value, the published reference value
/// when one exists, and the residual of the associated check.
#[derive(Debug, Clone, Serialize)]
pub struct Intermediate {
    pub name: String,
    pub value: String,
    #[serde(rename = "paper_value", skip_serializing_if = "Option::is_none")]
    pub published: Option<String>,
    pub residual: f64,
}

/// Structured driver output: {inputs, intermediates, exact_result}.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub inputs: BTreeMap<String, String>,
    pub intermediates: Vec<Intermediate>,
    pub exact_result: String,
}

impl fmt::Display for ExampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.inputs {
            writeln!(f, "input {k} = {v}")?;
        }
        for it in &self.intermediates {
            write!(f, "{} = {}", it.name, it.value)?;
            if let Some(p) = &it.published {
                write!(f, "  [reference {p}]")?;
            }
            writeln!(f, "  (residual {:.3e})", it.residual)?;
        }
        writeln!(f, "exact result: {}", self.exact_result)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    One,
    Two,
    Three,
}

impl FromStr for ExampleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(ExampleId::One),
            "two" | "2" => Ok(ExampleId::Two),
            "three" | "3" => Ok(ExampleId::Three),
            other => Err(Error::ParseError(format!(
                "unknown example {other:?} (expected one, two, or three)"
            ))),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleId::One => "one",
            ExampleId::Two => "two",
            ExampleId::Three => "three",
        })
    }
}

struct Reporter {
    inputs: BTreeMap<String, String>,
    items: Vec<Intermediate>,
}

fn fail(name: &str, got: impl Into<String>, want: impl Into<String>) -> Error {
    Error::ExampleCheckFailed {
        quantity: name.to_string(),
        got: got.into(),
        want: want.into(),
    }
}

impl Reporter {
    fn new() -> Self {
        Reporter {
            inputs: BTreeMap::new(),
            items: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    fn note(&mut self, name: &str, value: impl ToString, published: Option<&str>, residual: f64) {
        self.items.push(Intermediate {
            name: name.to_string(),
            value: value.to_string(),
            published: published.map(str::to_string),
            residual,
        });
    }

    /// Record and enforce a residual bound; the first failure aborts the
    /// driver naming this quantity.
    fn check(
        &mut self,
        name: &str,
        value: impl ToString,
        published: Option<&str>,
        residual: f64,
        tol: f64,
    ) -> Result<()> {
        let value = value.to_string();
        self.note(name, &value, published, residual);
        if !(residual < tol) {
            return Err(fail(
                name,
                format!("{value} (residual {residual:e})"),
                published
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("residual below {tol:e}")),
            ));
        }
        Ok(())
    }

    fn finish(self, exact_result: &str) -> ExampleReport {
        ExampleReport {
            inputs: self.inputs,
            intermediates: self.items,
            exact_result: exact_result.to_string(),
        }
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{} - {}i", z.re, -z.im)
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}

fn fmt_pt(p: &AffinePoint<Complex64>) -> String {
    match p {
        AffinePoint::Infinity => "O".to_string(),
        AffinePoint::Xy { x, y } => format!("({}, {})", fmt_c(*x), fmt_c(*y)),
    }
}

fn fmt_pt_exact(p: &AffinePoint<Rat>) -> String {
    match p {
        AffinePoint::Infinity => "O".to_string(),
        AffinePoint::Xy { x, y } => format!("({x}, {y})"),
    }
}

fn coords(name: &str, p: &AffinePoint<Complex64>) -> Result<(Complex64, Complex64)> {
    match p {
        AffinePoint::Xy { x, y } => Ok((*x, *y)),
        AffinePoint::Infinity => Err(fail(name, "O", "an affine point")),
    }
}

/// Evaluate the parametrization at a point of the q-disc.
fn point_at(
    ps: &ParametrizationSeries,
    q: Complex64,
) -> Result<(AffinePoint<Complex64>, f64)> {
    let xv = eval_series(&ps.x, q, 8)?;
    let yv = eval_series(&ps.y, q, 8)?;
    let tail = xv.tail_estimate.max(yv.tail_estimate);
    Ok((AffinePoint::xy(xv.value, yv.value), tail))
}

/// Run one of the three drivers against the built-in level-11 data.
pub fn example_driver(which: ExampleId) -> Result<ExampleReport> {
    match which {
        ExampleId::One => example_one(),
        ExampleId::Two => example_two(),
        ExampleId::Three => example_three(),
    }
}

fn level_11_inputs(r: &mut Reporter, terms: usize, order: i64) -> Result<NewformCoeffs> {
    r.input("curve", "builtin:11 = [0, -1, 1, -10, -20]");
    r.input("terms", terms);
    r.input("series_order", order);
    eta_product_coeffs(11, terms)
}

fn example_one() -> Result<ExampleReport> {
    let mut r = Reporter::new();
    let m = conductor_11_curve();
    let nf = level_11_inputs(&mut r, 400, 40)?;
    r.input("eps", "+1");

    let l = l1_rapid(&nf, 11, 1, 400)?;
    let lv = l.value.re;
    r.check(
        "L(E,1)",
        lv,
        Some("0.2538418608"),
        (lv - 0.2538418608).abs(),
        1e-9,
    )?;

    let lat = periods(&m, 10);
    r.check(
        "Omega",
        lat.omega,
        Some("1.2692093042"),
        (lat.omega - 1.2692093042).abs(),
        1e-9,
    )?;

    let ps = modular_xy(&nf, &m, 40)?;
    let q0 = Complex64::new((-2.0 * std::f64::consts::PI / 11f64.sqrt()).exp(), 0.0);
    r.note("q0 = exp(-2 pi / sqrt 11)", q0.re, None, 0.0);

    let (p_num, tail) = point_at(&ps, q0)?;
    let (px, py) = coords("P", &p_num)?;
    let phi = eval_series(&ps.phi, q0, 8)?;
    if phi.heuristic {
        r.note(
            "Phi(q0)",
            "heuristic tail: using -X/Y directly",
            None,
            phi.tail_estimate,
        );
    } else {
        r.check(
            "Phi(q0)",
            fmt_c(phi.value),
            Some("0.1270624598"),
            (phi.value.re - 0.1270624598).abs(),
            1e-9,
        )?;
        r.check(
            "Phi(q0) + X(q0)/Y(q0)",
            fmt_c(phi.value + px / py),
            None,
            (phi.value + px / py).norm(),
            1e-9,
        )?;
    }
    r.check(
        "P = (X, Y)(q0)",
        fmt_pt(&p_num),
        Some("(62.111554, -488.826947)"),
        (px.re - 62.111554).abs().max((py.re - -488.826947).abs()) + tail,
        1e-5,
    )?;

    // The elliptic logarithm of P is L/2: wp there reproduces X(q0).
    let (wp_half, wp_half_d) = wp_numeric(Complex64::new(lv / 2.0, 0.0), &lat, &m.g2, &m.g3)?;
    r.check(
        "wp(L/2) - X(q0)",
        fmt_c(wp_half - px),
        None,
        (wp_half - px).norm(),
        1e-7,
    )?;
    r.check(
        "wp'(L/2)/2 - Y(q0)",
        fmt_c(wp_half_d * 0.5 - py),
        None,
        (wp_half_d * 0.5 - py).norm(),
        1e-6,
    )?;

    let ec: ShortCurve<Complex64> = ShortCurve::from_model(&m);
    let two_p = ec.double(&p_num);
    r.note("2P (numeric)", fmt_pt(&two_p), None, 0.0);
    let rec = recognize_point(&m, &two_p, 10, 1e-6)?;
    let (tx, ty) = coords("2P (numeric)", &two_p)?;
    let rec_residual = match &rec {
        AffinePoint::Xy { x, y } => (tx - x.to_c64()).norm().max((ty - y.to_c64()).norm()),
        AffinePoint::Infinity => f64::INFINITY,
    };
    r.check(
        "2P recognized",
        fmt_pt_exact(&rec),
        Some("(47/3, -121/2)"),
        rec_residual,
        1e-6,
    )?;
    if rec != AffinePoint::xy(rat(47, 3), rat(-121, 2)) {
        return Err(fail("2P recognized", fmt_pt_exact(&rec), "(47/3, -121/2)"));
    }

    // P itself approximates no rational point.
    match recognize_point(&m, &p_num, 100, 1e-6) {
        Err(Error::NoMatch(100)) => {
            r.note("P in E(Q)?", "NoMatch with denominators up to 100", None, 0.0)
        }
        other => return Err(fail("P in E(Q)?", format!("{other:?}"), "NoMatch(100)")),
    }

    // Exact chord-tangent: 2P generates the five rational torsion points.
    let eq: ShortCurve<Rat> = ShortCurve::from_model(&m);
    let gen = rec.clone();
    let mut multiples = Vec::new();
    let mut acc = gen.clone();
    for _ in 1..=4 {
        multiples.push(acc.clone());
        acc = eq.add(&acc, &gen);
    }
    if acc != AffinePoint::Infinity || multiples.iter().any(|p| p.is_infinity()) {
        return Err(fail(
            "order of 2P",
            format!("[5](2P) = {}", fmt_pt_exact(&acc)),
            "O at multiple 5 and nowhere earlier",
        ));
    }
    r.check("order of 2P", 5, Some("5"), 0.0, 1.0)?;
    let mut names: Vec<String> = multiples.iter().map(fmt_pt_exact).collect();
    names.sort();
    let mut expected = vec![
        fmt_pt_exact(&AffinePoint::xy(rat(47, 3), rat(-121, 2))),
        fmt_pt_exact(&AffinePoint::xy(rat(14, 3), rat(-11, 2))),
        fmt_pt_exact(&AffinePoint::xy(rat(14, 3), rat(11, 2))),
        fmt_pt_exact(&AffinePoint::xy(rat(47, 3), rat(121, 2))),
    ];
    expected.sort();
    if names != expected {
        return Err(fail(
            "torsion points",
            names.join(", "),
            expected.join(", "),
        ));
    }
    r.note(
        "E(Q)_tor",
        "{O, (14/3, 11/2), (14/3, -11/2), (47/3, 121/2), (47/3, -121/2)} cyclic of order 5",
        None,
        0.0,
    );

    let lm = lattice_multiple(
        Complex64::new(lv, 0.0),
        &lat,
        GeneratorLine::OmegaRational,
        DEFAULT_DENOM_BOUND,
        None,
    )?;
    if lm.multiple != rat(1, 5) {
        return Err(fail("L / Omega", lm.multiple.to_string(), "1/5"));
    }
    r.check("L / Omega", &lm.multiple, Some("1/5"), lm.residual, lm.tol)?;

    Ok(r.finish("Omega/5"))
}

fn example_two() -> Result<ExampleReport> {
    let mut r = Reporter::new();
    let m = conductor_11_curve();
    let nf = level_11_inputs(&mut r, 2000, 60)?;
    r.input("char", "quad:-3 (quadratic character mod 3)");

    let chi = DirichletCharacter::quadratic(3)?;
    let l = l1_twisted(&nf, 11, &chi, TwistMode::Quadratic, 2000)?;
    let lv = l.value.re;
    r.check(
        "L(E,chi,1)",
        lv,
        Some("1.6844963329"),
        (lv - 1.6844963329).abs(),
        1e-9,
    )?;

    let lat = periods(&m, 10);
    r.check(
        "Im(OmegaPrime)",
        lat.omega_prime.im,
        Some("-1.4588166169"),
        (lat.omega_prime.im - -1.4588166169).abs(),
        1e-9,
    )?;
    r.check(
        "Re(OmegaPrime) - Omega/2",
        lat.omega_prime.re - lat.omega / 2.0,
        None,
        (lat.omega_prime.re - lat.omega / 2.0).abs(),
        1e-12,
    )?;
    r.note("components of E(R)", lat.components, None, 0.0);

    let ps = modular_xy(&nf, &m, 60)?;
    let q1 = (-2.0 * std::f64::consts::PI / (3.0 * 11f64.sqrt())).exp();
    let zq = Complex64::from_polar(q1, 2.0 * std::f64::consts::PI / 3.0);
    r.note("rho q1, q1 = exp(-2 pi/(3 sqrt 11))", fmt_c(zq), None, 0.0);

    let ec: ShortCurve<Complex64> = ShortCurve::from_model(&m);
    let (q_pt, tail) = point_at(&ps, zq)?;
    let (qx, qy) = coords("Q", &q_pt)?;
    r.note("Q = (X, Y)(rho q1)", fmt_pt(&q_pt), None, tail);
    r.check(
        "Q on curve",
        fmt_c(ec.residual(&qx, &qy)),
        None,
        ec.residual(&qx, &qy).norm(),
        1e-8,
    )?;

    let q_bar = AffinePoint::xy(qx.conj(), qy.conj());
    let d = ec.add(&q_pt, &ec.neg(&q_bar));
    let (dx, dy) = coords("Q - conj(Q)", &d)?;
    r.note("Q - conj(Q)", fmt_pt(&d), None, 0.0);
    r.check("y(Q - conj(Q))", fmt_c(dy), None, dy.norm(), 1e-6)?;

    let e1 = short_cubic_roots(m.a().to_c64().re, m.b().to_c64().re).largest_real();
    r.check(
        "x(Q - conj(Q)) - e1",
        fmt_c(dx - e1),
        None,
        (dx - e1).norm(),
        1e-6,
    )?;

    // Doubling with bookkeeping tolerance 1e-6 lands at infinity: order 2.
    let loose = ec.clone().with_tolerance(1e-6);
    if !loose.double(&d).is_infinity() {
        return Err(fail(
            "order of Q - conj(Q)",
            fmt_pt(&loose.double(&d)),
            "O",
        ));
    }
    r.check("order of Q - conj(Q)", 2, Some("2"), 0.0, 1.0)?;

    // wp((sqrt(-3)/2) L(chi)) recovers the same 2-torsion x-coordinate.
    let z = Complex64::new(0.0, 3f64.sqrt() / 2.0 * lv);
    let (wp_z, _) = wp_numeric(z, &lat, &m.g2, &m.g3)?;
    r.check(
        "wp((sqrt(-3)/2) L(chi)) - x(Q - conj(Q))",
        fmt_c(wp_z - dx),
        None,
        (wp_z - dx).norm(),
        1e-6,
    )?;

    let lm = lattice_multiple(
        z,
        &lat,
        GeneratorLine::HalfOmegaMinusTwoOmegaPrimeIntegers,
        DEFAULT_DENOM_BOUND,
        None,
    )?;
    if lm.multiple != rat_int(1) {
        return Err(fail(
            "(sqrt(-3)/2) L(chi) / ((Omega - 2 OmegaPrime)/2)",
            lm.multiple.to_string(),
            "1",
        ));
    }
    r.check(
        "(sqrt(-3)/2) L(chi) / ((Omega - 2 OmegaPrime)/2)",
        &lm.multiple,
        Some("1"),
        lm.residual,
        lm.tol,
    )?;

    Ok(r.finish("(Omega - 2*OmegaPrime)/sqrt(-3)"))
}

fn example_three() -> Result<ExampleReport> {
    let mut r = Reporter::new();
    let m = conductor_11_curve();
    let nf = level_11_inputs(&mut r, 2000, 160)?;
    r.input("char", "cubic:7 (cubic character mod 7, psi(3) = rho)");
    r.input("tolerance", "1e-6");

    let psi = DirichletCharacter::cubic_mod_7();
    let psi_bar = psi.conj();
    let l = l1_twisted(&nf, 11, &psi, TwistMode::General, 2000)?;
    let want_l = Complex64::new(1.997106, 1.328439);
    r.check(
        "L(E,psi,1)",
        fmt_c(l.value),
        Some("1.997106 + 1.328439i"),
        (l.value - want_l).norm(),
        1e-5,
    )?;

    let g = gauss_sum(&psi)?;
    let g_bar = gauss_sum(&psi_bar)?;
    r.note("g(psi)", fmt_c(g.value), None, 0.0);
    let norm_product = g.exact.mul(&g_bar.exact);
    if norm_product.as_rat() != Some(rat_int(7)) {
        return Err(fail("g(psi) g(conj psi)", norm_product.to_string(), "7"));
    }
    r.check("g(psi) g(conj psi)", 7, Some("7"), 0.0, 1.0)?;

    let x3 = (-2.0 * std::f64::consts::PI / (7.0 * 11f64.sqrt())).exp();
    let s = character_sum(&nf, &psi, x3, 2000)?;
    let s_bar = character_sum(&nf, &psi_bar, x3, 2000)?;
    let t1 = g.value * s_bar + g_bar.value * s;
    let t2 = (g.value * s_bar - g_bar.value * s) / QRho::sqrt_minus_three().to_c64();
    r.check("Im(T1)", t1.im, None, t1.im.abs(), 1e-9)?;
    r.note("T1", fmt_c(t1), None, t1.im.abs());
    r.check("Im(T2)", t2.im, None, t2.im.abs(), 1e-9)?;
    r.note("T2", fmt_c(t2), None, t2.im.abs());

    let t = t1 - t2 * 3.0;
    r.check("Im(T), T = T1 - 3 T2", t.im, None, t.im.abs(), 1e-9)?;
    // The same combination through the L-value and the root number.
    let direct = (Complex64::new(1.0, 0.0) - QRho::sqrt_minus_three().to_c64())
        * g_bar.value
        * l.value;
    r.check(
        "T - (1 - sqrt(-3)) g(conj psi) L(psi)",
        fmt_c(t - direct),
        None,
        (t - direct).norm(),
        1e-9,
    )?;

    let lat = periods(&m, 10);
    match wp_numeric(t, &lat, &m.g2, &m.g3) {
        Err(Error::PoleAt(_, dist)) => {
            r.check("wp(T)", "pole: T is a lattice point", None, dist, 1e-9)?;
        }
        other => {
            return Err(fail(
                "wp(T)",
                format!("{other:?}"),
                "a pole of wp (T in the lattice)",
            ))
        }
    }
    let lm = lattice_multiple(
        t,
        &lat,
        GeneratorLine::OmegaIntegers,
        DEFAULT_DENOM_BOUND,
        None,
    )?;
    if lm.multiple != rat_int(10) {
        return Err(fail("T / Omega", lm.multiple.to_string(), "10"));
    }
    r.check("T / Omega", &lm.multiple, Some("10"), lm.residual, lm.tol)?;

    // The six points P_i = (X, Y)(zeta^i q3) and the vanishing combination.
    let ps = modular_xy(&nf, &m, 160)?;
    let ec = ShortCurve::<Complex64>::from_model(&m).with_tolerance(1e-6);
    let mut points = Vec::new();
    let mut worst_residual = 0.0f64;
    for i in 1..=6i64 {
        let q = Complex64::from_polar(x3, 2.0 * std::f64::consts::PI * i as f64 / 7.0);
        let (p, tail) = point_at(&ps, q)?;
        let (x, y) = coords("P_i", &p)?;
        worst_residual = worst_residual.max(ec.residual(&x, &y).norm() + tail);
        r.note(&format!("P_{i}"), fmt_pt(&p), None, tail);
        points.push(p);
    }
    r.check(
        "max |on-curve residual of P_i|",
        worst_residual,
        None,
        worst_residual,
        1e-6,
    )?;

    let mults = [2i64, 2, -4, -4, 2, 2];
    let mut acc = AffinePoint::Infinity;
    for (i, p) in points.iter().enumerate().take(5) {
        acc = ec.add(&acc, &ec.mul(mults[i], p));
    }
    let last = ec.mul(mults[5], &points[5]);
    let (ax, ay) = coords("partial sum 2P1 + 2P2 - 4P3 - 4P4 + 2P5", &acc)?;
    let (bx, by) = coords("2 P_6", &last)?;
    r.check(
        "final addition |x collision|",
        (ax - bx).norm(),
        None,
        (ax - bx).norm(),
        1e-6,
    )?;
    r.check(
        "final addition |y cancellation|",
        (ay + by).norm(),
        None,
        (ay + by).norm(),
        1e-6,
    )?;
    let total = ec.add(&acc, &last);
    if !total.is_infinity() {
        return Err(fail(
            "2P1 + 2P2 - 4P3 - 4P4 + 2P5 + 2P6",
            fmt_pt(&total),
            "O",
        ));
    }
    r.check("2P1 + 2P2 - 4P3 - 4P4 + 2P5 + 2P6", "O", Some("O"), 0.0, 1.0)?;

    // Exact closed form: (5/14)(1+sqrt(-3)) g(psi) (1-sqrt(-3)) g(conj psi) = 10.
    let s3 = QRho::sqrt_minus_three();
    let one_plus = Ring::add(&QRho::one(), &s3);
    let one_minus = Ring::sub(&QRho::one(), &s3);
    let product = g
        .exact
        .scale(&one_plus)
        .mul(&g_bar.exact.scale(&one_minus))
        .scale(&QRho::from_rat(rat(5, 14)));
    if product.as_rat() != Some(rat_int(10)) {
        return Err(fail(
            "(5/14)(1+sqrt(-3)) g(psi) (1-sqrt(-3)) g(conj psi)",
            product.to_string(),
            "10",
        ));
    }
    r.check(
        "(5/14)(1+sqrt(-3)) g(psi) (1-sqrt(-3)) g(conj psi)",
        10,
        Some("10"),
        0.0,
        1.0,
    )?;

    // And numerically: L(psi) equals (5/14)(1+sqrt(-3)) g(psi) Omega.
    let closed = Complex64::new(5.0 / 14.0, 0.0)
        * (Complex64::new(1.0, 0.0) + s3.to_c64())
        * g.value
        * lat.omega;
    r.check(
        "L(psi) - (5/14)(1+sqrt(-3)) g(psi) Omega",
        fmt_c(l.value - closed),
        None,
        (l.value - closed).norm(),
        1e-8,
    )?;

    Ok(r.finish("(5/14)*(1+sqrt(-3))*g(psi)*Omega"))
}
