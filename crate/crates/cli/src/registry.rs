//! Plain-text curve registry.
//!
//! A curve is named either `builtin:11` (ships in the binary so the worked
//! computations need zero setup), a path to a `.curve` file, or a bare name
//! resolved as `<registry dir>/<name>.curve`. The file format is one
//! `key = value` pair per line with `#` comments:
//!
//! ```text
//! coeffs    = 0, -1, 1, -10, -20   # long Weierstrass a1, a2, a3, a4, a6
//! conductor = 11
//! eps       = +1                   # functional-equation sign
//! source    = eta                  # or file:<path> or primes:2=-2,3=-1,...
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ellog_core::{
    derive_invariants, eta_product_coeffs, hecke_expand, load_coeffs, CurveModel, Error,
    NewformCoeffs, Result,
};

/// Where a named curve gets its newform coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffSourceSpec {
    /// Built-in eta-product table for the conductor.
    Eta,
    /// Integer list a_1, a_2, ... in a file (resolved when the curve file loads).
    File(PathBuf),
    /// Inline prime eigenvalues, expanded through the Hecke recursion.
    Primes(BTreeMap<u64, i64>),
}

impl fmt::Display for CoeffSourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSourceSpec::Eta => f.write_str("eta"),
            CoeffSourceSpec::File(p) => write!(f, "file:{}", p.display()),
            CoeffSourceSpec::Primes(m) => {
                f.write_str("primes:")?;
                for (i, (p, a)) in m.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}={a}")?;
                }
                Ok(())
            }
        }
    }
}

/// A registered curve: long coefficients, conductor, coefficient source,
/// and the functional-equation sign.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub name: String,
    pub coeffs: [i64; 5],
    pub conductor: u64,
    pub source: CoeffSourceSpec,
    pub eps: i64,
}

impl CurveSpec {
    pub fn builtin_11() -> Self {
        CurveSpec {
            name: "builtin:11".into(),
            coeffs: [0, -1, 1, -10, -20],
            conductor: 11,
            source: CoeffSourceSpec::Eta,
            eps: 1,
        }
    }

    /// Parse the registry file format. Relative coefficient-file paths are
    /// resolved against `base` and must exist.
    pub fn parse(name: &str, text: &str, base: &Path) -> Result<Self> {
        let mut coeffs: Option<[i64; 5]> = None;
        let mut conductor: Option<u64> = None;
        let mut eps: Option<i64> = None;
        let mut source = CoeffSourceSpec::Eta;
        let mut spec_name = name.to_string();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad =
                |what: &str| Error::ParseError(format!("line {}: {what}: `{raw}`", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => spec_name = value.to_string(),
                "coeffs" => {
                    let parts: Vec<i64> = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad("expected five integers"))?;
                    let five: [i64; 5] = parts
                        .try_into()
                        .map_err(|_| bad("expected exactly five integers"))?;
                    coeffs = Some(five);
                }
                "conductor" => {
                    conductor =
                        Some(value.parse().map_err(|_| bad("expected a positive integer"))?)
                }
                "eps" => {
                    eps = Some(match value {
                        "+1" | "1" => 1,
                        "-1" => -1,
                        _ => return Err(bad("expected +1 or -1")),
                    })
                }
                "source" => source = parse_source(value, base, &bad)?,
                _ => return Err(bad("unknown key")),
            }
        }
        let missing = |what: &str| Error::ParseError(format!("missing `{what} = ...` line"));
        Ok(CurveSpec {
            name: spec_name,
            coeffs: coeffs.ok_or_else(|| missing("coeffs"))?,
            conductor: conductor.ok_or_else(|| missing("conductor"))?,
            source,
            eps: eps.ok_or_else(|| missing("eps"))?,
        })
    }

    /// Inverse of `parse`: a file body that round-trips.
    pub fn to_text(&self) -> String {
        format!(
            "name = {}\ncoeffs = {}\nconductor = {}\neps = {}\nsource = {}\n",
            self.name,
            self.coeffs
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            self.conductor,
            if self.eps >= 0 { "+1" } else { "-1" },
            self.source,
        )
    }

    /// Derived invariants of the long model (checks nonsingularity).
    pub fn model(&self) -> Result<CurveModel> {
        derive_invariants(self.coeffs, self.conductor)
    }

    /// Newform coefficients a_1..a_count from the declared source.
    pub fn coefficients(&self, count: usize) -> Result<NewformCoeffs> {
        match &self.source {
            CoeffSourceSpec::Eta => eta_product_coeffs(self.conductor, count),
            CoeffSourceSpec::File(path) => load_coeffs(path, self.conductor),
            CoeffSourceSpec::Primes(ap) => hecke_expand(ap, self.conductor, count),
        }
    }
}

fn parse_source(
    value: &str,
    base: &Path,
    bad: &dyn Fn(&str) -> Error,
) -> Result<CoeffSourceSpec> {
    if value == "eta" {
        return Ok(CoeffSourceSpec::Eta);
    }
    if let Some(rel) = value.strip_prefix("file:") {
        let mut path = PathBuf::from(rel.trim());
        if path.is_relative() {
            path = base.join(path);
        }
        if !path.is_file() {
            return Err(Error::ParseError(format!(
                "referenced coefficient file {} does not exist",
                path.display()
            )));
        }
        return Ok(CoeffSourceSpec::File(path));
    }
    if let Some(list) = value.strip_prefix("primes:") {
        let mut ap = BTreeMap::new();
        for pair in list.split(',') {
            let (p, a) = pair
                .split_once('=')
                .ok_or_else(|| bad("expected p=a_p pairs"))?;
            let p: u64 = p.trim().parse().map_err(|_| bad("bad prime"))?;
            let a: i64 = a.trim().parse().map_err(|_| bad("bad eigenvalue"))?;
            ap.insert(p, a);
        }
        if ap.is_empty() {
            return Err(bad("empty prime list"));
        }
        return Ok(CoeffSourceSpec::Primes(ap));
    }
    Err(bad("expected eta, file:<path>, or primes:<p=a_p,...>"))
}

/// Resolve a curve argument: the built-in name, a file path, or a name in
/// the registry directory.
pub fn load_curve(name: &str, dir: &Path) -> Result<CurveSpec> {
    if name == "builtin:11" {
        return Ok(CurveSpec::builtin_11());
    }
    let direct = Path::new(name);
    let path = if direct.is_file() {
        direct.to_path_buf()
    } else {
        dir.join(format!("{name}.curve"))
    };
    if !path.is_file() {
        return Err(Error::UnknownCurve(name.into()));
    }
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name.to_string());
    CurveSpec::parse(&stem, &text, path.parent().unwrap_or_else(|| Path::new(".")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trips_through_the_text_format() {
        let spec = CurveSpec::builtin_11();
        let back = CurveSpec::parse("ignored", &spec.to_text(), Path::new(".")).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.model().unwrap().c4.to_string(), "496");
    }

    #[test]
    fn primes_source_round_trips_and_expands() {
        let text = "coeffs = 0, -1, 1, -10, -20\nconductor = 11\neps = +1\n\
                    source = primes:2=-2,3=-1,5=1,7=-2,11=1,13=4\n";
        let spec = CurveSpec::parse("x11", text, Path::new(".")).unwrap();
        let back = CurveSpec::parse("x11", &spec.to_text(), Path::new(".")).unwrap();
        assert_eq!(back, spec);
        let nf = spec.coefficients(13).unwrap();
        // Multiplicativity out of the recursion: a_6 = a_2 a_3.
        assert_eq!(nf.a(6), 2);
    }

    #[test]
    fn missing_fields_and_bad_eps_are_parse_errors() {
        let no_eps = "coeffs = 0, -1, 1, -10, -20\nconductor = 11\n";
        assert!(matches!(
            CurveSpec::parse("x", no_eps, Path::new(".")),
            Err(Error::ParseError(_))
        ));
        let bad_eps = format!("{no_eps}eps = 2\n");
        assert!(matches!(
            CurveSpec::parse("x", &bad_eps, Path::new(".")),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn missing_coefficient_file_is_rejected_at_load() {
        let text = "coeffs = 0, -1, 1, -10, -20\nconductor = 11\neps = +1\n\
                    source = file:does-not-exist.txt\n";
        match CurveSpec::parse("x", text, Path::new("/tmp")) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("does not exist"), "{msg}"),
            other => panic!("want ParseError, got {other:?}"),
        }
    }

    #[test]
    fn unknown_names_are_unknown_curves() {
        match load_curve("builtin:37", Path::new("/nonexistent")) {
            Err(Error::UnknownCurve(n)) => assert_eq!(n, "builtin:37"),
            other => panic!("want UnknownCurve, got {other:?}"),
        }
    }
}
