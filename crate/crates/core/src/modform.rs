//! Fourier coefficients of rational newforms and the modular side of the
//! parametrization: eta-product and Hecke-recursion expansions of f = sum
//! a_n q^n, the Eichler-integral series lambda(t) = sum (a_n/n) t^n, Honda's
//! two-variable law L(t1,t2) = lambda^{-1}(lambda t1 + lambda t2), the
//! Laurent solutions X(q), Y(q) of
//!
//!   q dX/dq = 2 Y f,      Y^2 = X^3 + A X + B,
//!
//! normalized X = q^-2 - a_2 q^-1 + ..., and the local parameter
//! Phi(t) = -X(t)/Y(t) = t + (a_2/2) t^2 + ... of the parametrized origin.
//!
//! The X solve works degree by degree on the single residual
//! G := (q X')^2 - 4 f^2 (X^3 + A X + B): with x_{-2},...,x_{m-1} known, the
//! q^{m-2} coefficient of G is linear in x_m with factor -4(m+3) (nonzero for
//! every m >= -1), coming from 2*(m x_m)*(-2) in (qX')^2 and -12 x_m in
//! -4 f^2 X^3. Every lower-order G coefficient must already vanish, which is
//! asserted at each step; the curve equation and the differential relation
//! are re-checked on the finished series.

use std::collections::BTreeMap;

use crate::bivar::BiSeries;
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::formal;
use crate::ring::{rat_int, Rat, Ring};
use crate::series::{TruncatedSeries, Var};

type Series = TruncatedSeries<Rat>;

/// Where a coefficient sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffSource {
    EtaProduct,
    HeckeFromPrimes,
    File,
}

/// Integer Fourier coefficients a_1, a_2, ... of a normalized newform.
#[derive(Debug, Clone)]
pub struct NewformCoeffs {
    level: u64,
    /// 1-indexed; `a[0]` is unused padding.
    a: Vec<i64>,
    source: CoeffSource,
}

impl NewformCoeffs {
    /// Wrap a raw 1-indexed sequence without validation (see [`Self::validate`]).
    pub fn from_integers(level: u64, coeffs: Vec<i64>, source: CoeffSource) -> Self {
        let mut a = vec![0];
        a.extend(coeffs);
        Self { level, a, source }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn source(&self) -> CoeffSource {
        self.source
    }

    /// Largest index n with a_n available.
    pub fn max_index(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, n: usize) -> i64 {
        self.a[n]
    }

    fn require(&self, need: usize) -> Result<()> {
        if self.max_index() < need {
            return Err(Error::InsufficientCoefficients {
                have: self.max_index(),
                need,
            });
        }
        Ok(())
    }

    /// f = sum a_n q^n modulo q^prec.
    pub fn f_series(&self, prec: i64) -> Result<Series> {
        self.require((prec - 1).max(0) as usize)?;
        let coeffs = (1..prec).map(|n| rat_int(self.a[n as usize])).collect();
        Ok(Series::new(Var::Q, 1, coeffs, prec))
    }

    /// lambda = sum (a_n/n) t^n modulo t^prec, the termwise integral of f/q.
    pub fn lambda_series(&self, prec: i64) -> Result<Series> {
        Ok(self
            .f_series(prec)?
            .shift(-1)
            .integrate()
            .expect("no exponent -1 term")
            .with_var(Var::T))
    }

    /// Check a_1 = 1, multiplicativity on coprime factors, and the Hecke
    /// recursion at prime powers (a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}}
    /// away from the level, a_{p^k} = a_p^k at primes dividing it).
    pub fn validate(&self) -> Result<()> {
        let m = self.max_index();
        if m < 1 || self.a[1] != 1 {
            return Err(Error::InvalidEigenform(format!(
                "a_1 = {}, need 1",
                if m < 1 { 0 } else { self.a[1] }
            )));
        }
        let spf = smallest_prime_factors(m);
        for n in 2..=m {
            let p = spf[n];
            let mut q = p;
            let mut rest = n / p;
            while rest % p == 0 {
                q *= p;
                rest /= p;
            }
            if rest > 1 && self.a[n] != self.a[q] * self.a[rest] {
                return Err(Error::InvalidEigenform(format!(
                    "a_{n} = {} but a_{q} * a_{rest} = {}",
                    self.a[n],
                    self.a[q] * self.a[rest]
                )));
            }
            if rest == 1 && q > p {
                // n = p^k with k >= 2: check the recursion against lower powers.
                let want = if self.level % p as u64 == 0 {
                    self.a[q / p] * self.a[p]
                } else {
                    self.a[q / p] * self.a[p] - p as i64 * self.a[q / (p * p)]
                };
                if self.a[n] != want {
                    return Err(Error::InvalidEigenform(format!(
                        "a_{n} = {}, Hecke recursion gives {want}",
                        self.a[n]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf: Vec<usize> = (0..=n).collect();
    let mut p = 2;
    while p * p <= n {
        if spf[p] == p {
            let mut k = p * p;
            while k <= n {
                if spf[k] == k {
                    spf[k] = p;
                }
                k += p;
            }
        }
        p += 1;
    }
    spf
}

/// Parse an eta-product description: one `d r_d` pair per line,
/// `#` starts a comment.
pub fn parse_eta_config(text: &str) -> Result<Vec<(u64, i64)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (d, r) = (it.next(), it.next());
        let bad = || Error::ParseError(format!("line {}: expected `d r_d`, got `{raw}`", idx + 1));
        let d: u64 = d.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let r: i64 = r.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if it.next().is_some() || d == 0 {
            return Err(bad());
        }
        out.push((d, r));
    }
    if out.is_empty() {
        return Err(Error::ParseError("no eta factors given".into()));
    }
    Ok(out)
}

/// Expand prod_d prod_{m>=1} (1 - q^{dm})^{r_d}, shifted by the leading
/// power q^{sum d r_d / 24}, to `count` coefficients a_1..a_count.
pub fn eta_expand(factors: &[(u64, i64)], count: usize) -> Result<NewformCoeffs> {
    let s: i64 = factors.iter().map(|&(d, r)| d as i64 * r).sum();
    if s <= 0 || s % 24 != 0 {
        return Err(Error::BadEtaExponent(s));
    }
    let shift = (s / 24) as usize;
    let len = count + 1; // coefficients of the product up to q^count
    let mut c = vec![0i64; len];
    c[0] = 1;
    for &(d, r) in factors {
        let reps = r.unsigned_abs();
        let mut k = d as usize;
        while k < len {
            for _ in 0..reps {
                if r > 0 {
                    for i in (k..len).rev() {
                        c[i] -= c[i - k];
                    }
                } else {
                    for i in k..len {
                        c[i] += c[i - k];
                    }
                }
            }
            k += d as usize;
        }
    }
    // a_n = coefficient of q^{n - shift} in the product; indices below the
    // shift vanish (the form is a cusp form).
    let coeffs = (1..=count)
        .map(|n| if n >= shift { c[n - shift] } else { 0 })
        .collect();
    Ok(NewformCoeffs {
        level: 0,
        a: {
            let mut a = vec![0];
            let v: Vec<i64> = coeffs;
            a.extend(v);
            a
        },
        source: CoeffSource::EtaProduct,
    })
}

/// Built-in eta-product table; currently the level-11 form
/// f = q prod (1 - q^m)^2 (1 - q^{11m})^2.
pub fn eta_product_coeffs(level: u64, count: usize) -> Result<NewformCoeffs> {
    let factors: &[(u64, i64)] = match level {
        11 => &[(1, 2), (11, 2)],
        _ => return Err(Error::NoEtaProduct(level)),
    };
    let mut nf = eta_expand(factors, count)?;
    nf.level = level;
    Ok(nf)
}

/// Fill a_1..a_count from prime eigenvalues via Hecke recursions and
/// multiplicativity. `ap` must contain every prime <= count.
pub fn hecke_expand(ap: &BTreeMap<u64, i64>, level: u64, count: usize) -> Result<NewformCoeffs> {
    let spf = smallest_prime_factors(count.max(1));
    let mut a = vec![0i64; count + 1];
    if count >= 1 {
        a[1] = 1;
    }
    for n in 2..=count {
        let p = spf[n];
        let ap_p = *ap
            .get(&(p as u64))
            .ok_or(Error::InsufficientPrimeData(p as u64))?;
        let mut q = p;
        let mut rest = n / p;
        while rest % p == 0 {
            q *= p;
            rest /= p;
        }
        a[n] = if rest > 1 {
            a[q] * a[rest]
        } else if q == p {
            ap_p
        } else if level % p as u64 == 0 {
            a[q / p] * ap_p
        } else {
            a[q / p] * ap_p - p as i64 * a[q / (p * p)]
        };
    }
    Ok(NewformCoeffs {
        level,
        a,
        source: CoeffSource::HeckeFromPrimes,
    })
}

/// Parse a coefficient file: lines `n a_n`, ascending n from 1 with no gaps,
/// `#` comments. The sequence is validated eagerly.
pub fn parse_coeffs(text: &str, level: u64) -> Result<NewformCoeffs> {
    let mut coeffs: Vec<i64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let bad = |what: &str| Error::ParseError(format!("line {}: {what}", idx + 1));
        let n: usize = it
            .next()
            .ok_or_else(|| bad("missing index"))?
            .parse()
            .map_err(|_| bad("bad index"))?;
        let v: i64 = it
            .next()
            .ok_or_else(|| bad("missing coefficient"))?
            .parse()
            .map_err(|_| bad("bad coefficient"))?;
        if it.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        if n != coeffs.len() + 1 {
            return Err(bad(&format!("expected index {}, got {n}", coeffs.len() + 1)));
        }
        coeffs.push(v);
    }
    if coeffs.is_empty() {
        return Err(Error::ParseError("no coefficient lines".into()));
    }
    let nf = NewformCoeffs::from_integers(level, coeffs, CoeffSource::File);
    nf.validate()?;
    Ok(nf)
}

/// Load and validate a coefficient file (format: see [`parse_coeffs`]).
pub fn load_coeffs(path: &std::path::Path, level: u64) -> Result<NewformCoeffs> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    parse_coeffs(&text, level)
}

/// Honda's formal group law L(t1,t2) = lambda^{-1}(lambda(t1) + lambda(t2))
/// to total degree `deg`, with every coefficient checked to be an integer.
pub fn honda_group_law(nf: &NewformCoeffs, deg: usize) -> Result<BiSeries<Rat>> {
    let lambda = nf.lambda_series(deg as i64 + 1)?;
    let inverse = lambda.reverse()?;
    let law = formal::group_law(&lambda, &inverse, deg)?;
    for j in 0..law.deg() {
        for i in 0..law.deg() - j {
            let c = law.coeff(i, j);
            if !c.is_integer() {
                return Err(Error::NonIntegralCoefficient {
                    i,
                    j,
                    value: c.to_string(),
                });
            }
        }
    }
    Ok(law)
}

/// The Laurent series of the parametrization and its local parameter.
#[derive(Debug, Clone)]
pub struct ParametrizationSeries {
    /// X(q) = q^-2 - a_2 q^-1 + ..., on the short model.
    pub x: Series,
    /// Y(q) = -q^-3 + (3 a_2/2) q^-2 + ..., with q dX/dq = 2 Y f.
    pub y: Series,
    /// Phi(t) = -X/Y = t + (a_2/2) t^2 + ...
    pub phi: Series,
    /// lambda(t) = sum (a_n/n) t^n.
    pub lambda: Series,
}

/// Phi = -X/Y as a series in the parametrization variable.
pub fn phi_from_xy(x: &Series, y: &Series) -> Series {
    x.neg()
        .mul(&y.inv().expect("Y is a Laurent unit"))
        .with_var(Var::T)
}

/// Solve for X(q), Y(q) from the newform and curve, degree by degree
/// (see the module header for which equation pins which coefficient),
/// and package Phi and lambda alongside.
pub fn modular_xy(nf: &NewformCoeffs, c: &CurveModel, prec: i64) -> Result<ParametrizationSeries> {
    assert!(prec >= 5, "need at least the printed leading terms");
    if nf.max_index() < 1 || nf.a(1) != 1 {
        return Err(Error::NotParametrization("a_1 != 1".into()));
    }
    let f = nf.f_series(prec + 4)?;
    let f2 = f.mul(&f);
    let a = c.a();
    let b = TruncatedSeries::constant(Var::Q, c.b());

    // Coefficients x_{-2}, x_{-1}, ..., starting from the normalization.
    let mut xs: Vec<Rat> = vec![Rat::one()];
    for m in -1..prec {
        // X with the unknown x_m as a placeholder zero, so the q^{m-2}
        // coefficient of G is its value under x_m = 0.
        let mut padded = xs.clone();
        padded.push(Rat::zero());
        let xcur = Series::new(Var::Q, -2, padded, m + 1);
        let qxp = xcur.derive().shift(1);
        let cubic = xcur
            .pow(3)
            .expect("positive power")
            .add(&xcur.scale(&a))
            .add(&b);
        let g = qxp.mul(&qxp).sub(&f2.mul(&cubic).scale(&rat_int(4)));
        if !g.truncated(m - 2).is_zero() {
            return Err(Error::NotParametrization(format!(
                "residual below q^{} should vanish but does not",
                m - 2
            )));
        }
        xs.push(g.coeff(m - 2) / rat_int(4 * m + 12));
    }
    let x = Series::new(Var::Q, -2, xs, prec);

    // Y is defined by the differential relation, then both relations are
    // re-verified on the finished series.
    let y = x
        .derive()
        .shift(1)
        .mul(&f.scale(&rat_int(2)).inv().expect("f = q + ..."));
    let residual = y
        .mul(&y)
        .sub(&x.pow(3).expect("positive power"))
        .sub(&x.scale(&a))
        .sub(&b);
    if !residual.is_zero() {
        return Err(Error::NotParametrization(format!(
            "curve-equation residual {residual}"
        )));
    }
    let diff = x.derive().shift(1).sub(&y.scale(&rat_int(2)).mul(&f));
    if !diff.is_zero() {
        return Err(Error::NotParametrization(format!(
            "differential residual {diff}"
        )));
    }

    let phi = phi_from_xy(&x, &y);
    let lambda = nf.lambda_series(prec)?;
    Ok(ParametrizationSeries { x, y, phi, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{conductor_11_curve, derive_invariants};
    use crate::formal::FormalGroupData;
    use crate::ring::rat;

    fn level_11(count: usize) -> NewformCoeffs {
        eta_product_coeffs(11, count).unwrap()
    }

    #[test]
    fn eta_level_11_leading_terms() {
        let nf = level_11(12);
        let want = [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(nf.a(i + 1), *w, "a_{}", i + 1);
        }
        assert_eq!(nf.source(), CoeffSource::EtaProduct);
    }

    #[test]
    fn eta_sequence_is_a_valid_eigenform_to_200() {
        let nf = level_11(200);
        nf.validate().unwrap();
        assert_eq!(nf.a(6), nf.a(2) * nf.a(3));
        assert_eq!(nf.a(6), 2);
    }

    #[test]
    fn unknown_level_has_no_eta_product() {
        match eta_product_coeffs(37, 10) {
            Err(Error::NoEtaProduct(37)) => {}
            other => panic!("want NoEtaProduct, got {other:?}"),
        }
    }

    #[test]
    fn eta_exponent_sum_must_be_a_positive_multiple_of_24() {
        match eta_expand(&[(1, 2), (5, 2)], 10) {
            Err(Error::BadEtaExponent(12)) => {}
            other => panic!("want BadEtaExponent(12), got {other:?}"),
        }
    }

    #[test]
    fn eta_config_parses_and_rejects() {
        assert_eq!(
            parse_eta_config("1 2\n11 2 # the level-11 product").unwrap(),
            vec![(1, 2), (11, 2)]
        );
        assert!(matches!(
            parse_eta_config("1 2 3"),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(parse_eta_config(""), Err(Error::ParseError(_))));
    }

    #[test]
    fn hecke_expansion_matches_eta_product_to_500() {
        let nf = level_11(500);
        let mut ap = BTreeMap::new();
        let spf = smallest_prime_factors(500);
        for p in 2..=500usize {
            if spf[p] == p {
                ap.insert(p as u64, nf.a(p));
            }
        }
        let hk = hecke_expand(&ap, 11, 500).unwrap();
        assert_eq!(hk.source(), CoeffSource::HeckeFromPrimes);
        for n in 1..=500 {
            assert_eq!(hk.a(n), nf.a(n), "a_{n}");
        }
    }

    #[test]
    fn hecke_prime_power_rule() {
        let mut ap = BTreeMap::new();
        ap.insert(2u64, -2i64);
        ap.insert(3, -1);
        let hk = hecke_expand(&ap, 11, 4).unwrap();
        assert_eq!(hk.a(1), 1);
        assert_eq!(hk.a(4), (-2i64) * (-2) - 2, "a_4 = a_2^2 - 2");
        match hecke_expand(&ap, 11, 10) {
            Err(Error::InsufficientPrimeData(5)) => {}
            other => panic!("want InsufficientPrimeData(5), got {other:?}"),
        }
    }

    #[test]
    fn coefficient_file_round_trip_and_rejection() {
        let nf = level_11(40);
        let mut text = String::from("# conductor 11\n");
        for n in 1..=40 {
            text.push_str(&format!("{n} {}\n", nf.a(n)));
        }
        let loaded = parse_coeffs(&text, 11).unwrap();
        assert_eq!(loaded.source(), CoeffSource::File);
        for n in 1..=40 {
            assert_eq!(loaded.a(n), nf.a(n));
        }

        let bad = "1 1\n2 -2\n3 -1\n4 2\n5 1\n6 3\n";
        match parse_coeffs(bad, 11) {
            Err(Error::InvalidEigenform(msg)) => assert!(msg.contains("a_6"), "{msg}"),
            other => panic!("want InvalidEigenform, got {other:?}"),
        }

        assert!(matches!(parse_coeffs("", 11), Err(Error::ParseError(_))));
        match parse_coeffs("1 1\n3 -1\n", 11) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("want ParseError, got {other:?}"),
        }
        match parse_coeffs("1 one\n", 11) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("line 1"), "{msg}"),
            other => panic!("want ParseError, got {other:?}"),
        }
    }

    #[test]
    fn lambda_series_leading_terms_and_derivative() {
        let nf = level_11(30);
        let lambda = nf.lambda_series(8).unwrap();
        assert_eq!(
            lambda.to_string(),
            "t - t^2 - 1/3*t^3 + 1/2*t^4 + 1/5*t^5 + 1/3*t^6 - 2/7*t^7 + O(t^8)"
        );
        // t * lambda'(t) = f(t).
        let f = nf.f_series(8).unwrap();
        assert!(lambda.derive().shift(1).agrees_with(&f));
    }

    #[test]
    fn honda_law_is_integral_and_starts_with_minus_a2() {
        let nf = level_11(40);
        let law = honda_group_law(&nf, 12).unwrap();
        // L(t,0) = t.
        for i in 0..law.deg() {
            let want = if i == 1 { rat_int(1) } else { rat_int(0) };
            assert_eq!(law.coeff(i, 0), want);
        }
        // Degree-2 part is -a_2 t1 t2 = +2 t1 t2.
        assert_eq!(law.coeff(1, 1), rat_int(-nf.a(2)));
        assert_eq!(law.coeff(2, 0), rat_int(0));

        // Same law through the independent reversion algorithm.
        let lambda = nf.lambda_series(13).unwrap();
        let alt = formal::group_law(&lambda, &lambda.lagrange_reverse().unwrap(), 12).unwrap();
        assert!(law.agrees_with(&alt));
    }

    #[test]
    fn honda_rejects_non_integral_input() {
        // a_2 = 1 for level 11 breaks integrality quickly (the true a_2 is
        // -2); the Honda theorem needs eigenform input, and the checker
        // reports the first fractional cell.
        let mut coeffs: Vec<i64> = (1..=20).map(|n| level_11(20).a(n)).collect();
        coeffs[1] = 1;
        let nf = NewformCoeffs::from_integers(11, coeffs, CoeffSource::File);
        match honda_group_law(&nf, 10) {
            Err(Error::NonIntegralCoefficient { .. }) => {}
            other => panic!("want NonIntegralCoefficient, got {other:?}"),
        }
    }

    #[test]
    fn parametrization_golden_series_level_11() {
        let nf = level_11(40);
        let c = conductor_11_curve();
        let ps = modular_xy(&nf, &c, 12).unwrap();
        let x_want: [(i64, Rat); 8] = [
            (-2, rat_int(1)),
            (-1, rat_int(2)),
            (0, rat(11, 3)),
            (1, rat_int(5)),
            (2, rat_int(8)),
            (3, rat_int(1)),
            (4, rat_int(7)),
            (5, rat_int(-11)),
        ];
        for (k, w) in x_want {
            assert_eq!(ps.x.coeff(k), w, "X coeff q^{k}");
        }
        let y_want: [(i64, Rat); 7] = [
            (-3, rat_int(-1)),
            (-2, rat_int(-3)),
            (-1, rat_int(-7)),
            (0, rat(-25, 2)),
            (1, rat_int(-17)),
            (2, rat_int(-26)),
            (3, rat_int(-19)),
        ];
        for (k, w) in y_want {
            assert_eq!(ps.y.coeff(k), w, "Y coeff q^{k}");
        }
        let phi_want: [(i64, Rat); 7] = [
            (1, rat_int(1)),
            (2, rat_int(-1)),
            (3, rat(-1, 3)),
            (4, rat(1, 2)),
            (5, rat(13, 3)),
            (6, rat(-61, 3)),
            (7, rat(529, 12)),
        ];
        for (k, w) in phi_want {
            assert_eq!(ps.phi.coeff(k), w, "Phi coeff t^{k}");
        }
        // The t^5 coefficient both ways: c4/120 + a5/5 = 496/120 + 1/5 = 13/3.
        assert_eq!(
            c.c4.clone() / rat_int(120) + rat(nf.a(5), 5),
            rat(13, 3)
        );
    }

    #[test]
    fn generic_leading_coefficients_of_x_and_y() {
        // The leading X, Y coefficients are formal consequences of the solve
        // for any input sequence: x_{-1} = -a_2, x_0 = 3 a_2^2/4 - 2 a_3/3,
        // y_{-2} = 3 a_2/2, y_{-1} = -(3 a_2^2 - 2 a_3)/2.
        let mut ap = BTreeMap::new();
        ap.insert(2u64, 3i64);
        ap.insert(3, 5);
        ap.insert(5, -1);
        ap.insert(7, 2);
        ap.insert(11, 1);
        ap.insert(13, 0);
        let nf = hecke_expand(&ap, 6, 14).unwrap();
        let c = derive_invariants([0, 0, 0, -2, 3], 1).unwrap();
        let ps = modular_xy(&nf, &c, 10).unwrap();
        let (a2, a3) = (rat_int(nf.a(2)), rat_int(nf.a(3)));
        assert_eq!(ps.x.coeff(-1), -a2.clone());
        assert_eq!(
            ps.x.coeff(0),
            rat(3, 4) * &a2 * &a2 - rat(2, 3) * &a3
        );
        assert_eq!(ps.y.coeff(-2), rat(3, 2) * &a2);
        assert_eq!(
            ps.y.coeff(-1),
            -(rat(3, 2) * &a2 * &a2 - a3.clone())
        );
        // Phi = t + (a2/2) t^2 + (a3/3) t^3 + (a4/4) t^4 + (c4/120 + a5/5) t^5.
        assert_eq!(ps.phi.coeff(2), rat(nf.a(2), 2));
        assert_eq!(ps.phi.coeff(3), rat(nf.a(3), 3));
        assert_eq!(ps.phi.coeff(4), rat(nf.a(4), 4));
        assert_eq!(
            ps.phi.coeff(5),
            c.c4.clone() / rat_int(120) + rat(nf.a(5), 5)
        );
    }

    #[test]
    fn mismatched_input_is_rejected() {
        let nf = NewformCoeffs::from_integers(11, vec![2, 1, 1], CoeffSource::File);
        match modular_xy(&nf, &conductor_11_curve(), 6) {
            Err(Error::NotParametrization(msg)) => assert!(msg.contains("a_1"), "{msg}"),
            other => panic!("want NotParametrization, got {other:?}"),
        }
    }

    #[test]
    fn phi_is_a_formal_group_morphism() {
        let nf = level_11(40);
        let c = conductor_11_curve();
        let deg = 15usize;
        let ps = modular_xy(&nf, &c, deg as i64 + 1).unwrap();
        let law = honda_group_law(&nf, deg).unwrap();
        let fg = FormalGroupData::for_curve(&c, deg as i64).unwrap();
        let lhs = law.compose_outer(&ps.phi).unwrap();
        let rhs = fg
            .group_law
            .eval_bi(
                &BiSeries::from_univariate(&ps.phi, 0, deg).unwrap(),
                &BiSeries::from_univariate(&ps.phi, 1, deg).unwrap(),
            )
            .unwrap();
        assert!(
            lhs.agrees_with(&rhs),
            "Phi(L(t1,t2)) = F(Phi(t1), Phi(t2))"
        );
    }

    #[test]
    fn phi_pulls_the_invariant_differential_back_to_the_eigenform() {
        let nf = level_11(40);
        let c = conductor_11_curve();
        let ps = modular_xy(&nf, &c, 20).unwrap();
        let fg = FormalGroupData::for_curve(&c, 20).unwrap();
        // omega(Phi(t)) Phi'(t) = sum a_n t^{n-1} = f(t)/t.
        let pulled = fg.omega.compose(&ps.phi).unwrap().mul(&ps.phi.derive());
        let fq = nf.f_series(16).unwrap().shift(-1).with_var(Var::T);
        assert!(pulled.agrees_with(&fq));
    }

    #[test]
    fn x_and_y_factor_through_phi() {
        let nf = level_11(40);
        let c = conductor_11_curve();
        let ps = modular_xy(&nf, &c, 16).unwrap();
        let fg = FormalGroupData::for_curve(&c, 16).unwrap();
        let x_of_phi = fg.x_series.compose(&ps.phi).unwrap();
        let y_of_phi = fg.y_series.compose(&ps.phi).unwrap();
        assert!(x_of_phi.agrees_with(&ps.x.clone().with_var(Var::T)), "X = x(Phi)");
        assert!(y_of_phi.agrees_with(&ps.y.clone().with_var(Var::T)), "Y = y(Phi)");
    }

    #[test]
    fn lambda_reverses_phi_through_the_formal_logarithm() {
        // log(Phi(t)) = lambda(t): both sides integrate the same pullback.
        let nf = level_11(40);
        let c = conductor_11_curve();
        let ps = modular_xy(&nf, &c, 18).unwrap();
        let fg = FormalGroupData::for_curve(&c, 18).unwrap();
        let log_phi = fg.log_series.compose(&ps.phi).unwrap();
        assert!(log_phi.agrees_with(&ps.lambda));
    }
}
