//! Truncated Laurent series with explicit precision bookkeeping.
//!
//! A series is a window of known coefficients: exponents below the valuation
//! are known zeros, exponents in `[val, prec)` are stored (with trailing known
//! zeros compressed away), and exponents `>= prec` are *unknown* — never
//! silently treated as zero. Products propagate precision by
//! `prec = min(p1 + v2, p2 + v1)`; composition and reversion follow from that
//! rule. Exactly-known data (polynomials) carries the sentinel precision
//! [`INF_PREC`] and degrades to honest finite precision the first time it
//! meets truncated data.

use crate::error::{Error, Result};
use crate::ring::{Rat, Ring};
use std::fmt;
use std::str::FromStr;

/// Sentinel precision for exactly-known series. Kept far from i64::MAX so
/// saturating arithmetic never wraps.
pub const INF_PREC: i64 = i64::MAX / 4;

/// Saturating precision addition, capped at the sentinel.
fn padd(a: i64, b: i64) -> i64 {
    a.saturating_add(b).min(INF_PREC)
}

/// Saturating precision product (used for `outer_prec * inner_valuation`).
fn pmul(a: i64, b: i64) -> i64 {
    a.saturating_mul(b).min(INF_PREC)
}

/// Variable tag. Metadata only — `t` and `q` name the same uniformizer and
/// are interchangeable in arithmetic; `z` (the logarithm side) and `u` (the
/// coefficient variable) are kept distinct for display and sanity checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    T,
    Z,
    Q,
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Z => "z",
            Var::Q => "q",
            Var::U => "u",
        }
    }

    pub fn compatible(a: Var, b: Var) -> bool {
        a == b || matches!((a, b), (Var::T, Var::Q) | (Var::Q, Var::T))
    }
}

/// Laurent series known on the exponent window `[val, prec)`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<R: Ring> {
    var: Var,
    /// Lowest exponent with a (possibly) nonzero coefficient. For the zero
    /// series this equals `prec`.
    val: i64,
    /// `coeffs[i]` is the coefficient of `var^(val + i)`. Leading and trailing
    /// zeros are stripped; exponents in `[val + len, prec)` are known zeros.
    coeffs: Vec<R>,
    /// First unknown exponent.
    prec: i64,
}

impl<R: Ring> TruncatedSeries<R> {
    /// The zero series, known up to O(var^prec).
    pub fn zero(var: Var, prec: i64) -> Self {
        TruncatedSeries {
            var,
            val: prec,
            coeffs: vec![],
            prec,
        }
    }

    /// Series from a coefficient window starting at exponent `val`, known up
    /// to `prec` (which must be >= val + coeffs.len(); the gap is known zeros).
    pub fn new(var: Var, val: i64, coeffs: Vec<R>, prec: i64) -> Self {
        assert!(
            prec >= val + coeffs.len() as i64,
            "prec {} below coefficient window end {}",
            prec,
            val + coeffs.len() as i64
        );
        let mut s = TruncatedSeries {
            var,
            val,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// Honest-precision series: known exactly on the given window and unknown
    /// beyond it.
    pub fn from_coeffs(var: Var, val: i64, coeffs: Vec<R>) -> Self {
        let prec = val + coeffs.len() as i64;
        Self::new(var, val, coeffs, prec)
    }

    /// Exactly-known polynomial data (sentinel precision).
    pub fn exact_poly(var: Var, val: i64, coeffs: Vec<R>) -> Self {
        Self::new(var, val, coeffs, INF_PREC)
    }

    /// The monomial c * var^k, exactly known.
    pub fn monomial(var: Var, c: R, k: i64) -> Self {
        Self::exact_poly(var, k, vec![c])
    }

    /// The identity series var^1, exactly known.
    pub fn identity(var: Var) -> Self {
        Self::monomial(var, R::one(), 1)
    }

    /// A constant, exactly known.
    pub fn constant(var: Var, c: R) -> Self {
        Self::monomial(var, c, 0)
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.val += 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
        let window_end = self.val + self.coeffs.len() as i64;
        debug_assert!(self.prec >= window_end);
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Lowest known-nonzero exponent; equals `prec` for the zero series.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec == INF_PREC
    }

    /// Coefficient of var^n; panics on an unknown exponent (n >= prec).
    pub fn coeff(&self, n: i64) -> R {
        self.known_coeff(n)
            .unwrap_or_else(|| panic!("coefficient of exponent {} is beyond O({})", n, self.prec))
    }

    /// Coefficient of var^n, or None when the exponent is unknown.
    pub fn known_coeff(&self, n: i64) -> Option<R> {
        if n >= self.prec {
            return None;
        }
        let i = n - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Some(R::zero())
        } else {
            Some(self.coeffs[i as usize].clone())
        }
    }

    /// Stored coefficient window (starts at `val()`).
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Re-tag the variable (metadata only).
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Forget knowledge beyond `new_prec`.
    pub fn truncated(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        let keep = (new_prec - self.val).max(0) as usize;
        let mut s = TruncatedSeries {
            var: self.var,
            val: self.val.min(new_prec),
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
            prec: new_prec,
        };
        s.normalize();
        s
    }

    fn merged_var(&self, rhs: &Self) -> Result<Var> {
        if Var::compatible(self.var, rhs.var) {
            Ok(self.var)
        } else {
            Err(Error::RingMismatch(self.var.name(), rhs.var.name()))
        }
    }

    /// Sum; errors on incompatible variable tags.
    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let var = self.merged_var(rhs)?;
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() && rhs.is_zero() {
            return Ok(Self::zero(var, prec));
        }
        // Union of the nonempty stored windows, clipped to the joint prec.
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for s in [self, rhs] {
            if !s.is_zero() {
                lo = lo.min(s.val);
                hi = hi.max(s.val + s.coeffs.len() as i64);
            }
        }
        let lo = lo.min(prec);
        let hi = hi.min(prec).max(lo);
        let mut out = Vec::with_capacity((hi - lo) as usize);
        for n in lo..hi {
            let a = self.known_coeff(n).unwrap_or_else(R::zero);
            let b = rhs.known_coeff(n).unwrap_or_else(R::zero);
            out.push(a.add(&b));
        }
        Ok(Self::new(var, lo, out, prec))
    }

    /// Product; errors on incompatible variable tags. Precision follows
    /// `min(p1 + v2, p2 + v1)`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let var = self.merged_var(rhs)?;
        let prec = padd(self.prec, rhs.val).min(padd(rhs.prec, self.val));
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(var, prec));
        }
        let val = self.val + rhs.val;
        let len = ((prec - val).max(0) as usize).min(self.coeffs.len() + rhs.coeffs.len() - 1);
        let mut out = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::new(var, val, out, prec))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("series addition")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("series multiplication")
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            var: self.var,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            prec: self.prec,
        }
    }

    /// Multiply every coefficient by a ring scalar.
    pub fn scale(&self, c: &R) -> Self {
        let mut s = TruncatedSeries {
            var: self.var,
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            prec: self.prec,
        };
        s.normalize();
        s
    }

    /// Multiply by var^k (shift every exponent).
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            var: self.var,
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: padd(self.prec, k),
        }
    }

    /// Multiplicative inverse. The leading coefficient must be invertible in
    /// R; the result has valuation `-val` and precision `prec - 2*val`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        let a0 = &self.coeffs[0];
        let b0 = R::one()
            .try_div(a0)
            .ok_or_else(|| Error::NotAUnit(a0.to_string()))?;
        // Relative length: number of known coefficients from the leading one.
        let rel = (self.prec - self.val).min(INF_PREC) as usize;
        let rel = rel.min(1 << 22); // exact data: cap the window we actually compute
        let n_known = self.coeffs.len();
        let out_len = if self.is_exact() { n_known } else { rel };
        let mut b = Vec::with_capacity(out_len);
        b.push(b0.clone());
        for n in 1..out_len {
            let mut acc = R::zero();
            for k in 1..=n.min(n_known - 1) {
                acc = acc.add(&self.coeffs[k].mul(&b[n - k]));
            }
            b.push(acc.mul(&b0).neg());
        }
        let prec = if self.is_exact() && n_known == 1 {
            // A monomial inverts exactly.
            INF_PREC
        } else if self.is_exact() {
            -self.val + out_len as i64
        } else {
            self.prec - 2 * self.val
        };
        Ok(Self::new(self.var, -self.val, b, prec))
    }

    /// Substitute `inner` for the variable. `inner` must have valuation >= 1
    /// (or be the zero series); Laurent outer parts need an invertible inner
    /// leading coefficient. The result is known to
    /// `min(outer_prec * w, (outer_val - 1) * w + inner_prec)` with `w` the
    /// inner valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.is_zero() {
            // Evaluation at 0: defined for non-Laurent outers; the unknown
            // inner tail enters through every positive power of inner.
            if self.val < 0 {
                return Err(Error::CompositionDomain(inner.prec));
            }
            if inner.prec <= 0 {
                return Ok(Self::zero(inner.var, inner.prec));
            }
            let c0 = self.known_coeff(0).unwrap_or_else(R::zero);
            return Ok(if c0.is_zero() {
                Self::zero(inner.var, inner.prec)
            } else {
                Self::new(inner.var, 0, vec![c0], inner.prec)
            });
        }
        if inner.val < 1 {
            return Err(Error::CompositionDomain(inner.val));
        }
        let w = inner.val;
        let target = pmul(self.prec, w).min(padd(pmul(self.val - 1, w), inner.prec));
        if self.is_zero() {
            return Ok(Self::zero(inner.var, target));
        }
        let mut acc = Self::zero(inner.var, INF_PREC);
        // Non-negative powers, over the stored window only (coefficients
        // beyond it up to prec are known zeros and contribute nothing).
        let window_end = self.val + self.coeffs.len() as i64;
        let mut pw = Self::constant(inner.var, R::one());
        for k in 0..window_end.max(0) {
            if pw.is_zero() {
                break;
            }
            if k >= self.val {
                let c = self.coeff(k);
                if !c.is_zero() {
                    acc = acc.add(&pw.scale(&c));
                }
            }
            pw = pw.mul(inner).truncated(target);
        }
        // Negative (Laurent) powers.
        if self.val < 0 {
            let ii = inner.inv()?;
            let mut pw = ii.clone();
            let mut k = -1i64;
            while k >= self.val {
                let c = self.coeff(k);
                if !c.is_zero() {
                    acc = acc.add(&pw.scale(&c));
                }
                if k - 1 >= self.val {
                    pw = pw.mul(&ii);
                }
                k -= 1;
            }
        }
        Ok(acc.truncated(target))
    }

    /// Compositional inverse by Newton iteration on composition: finds g with
    /// self(g(t)) = t. Needs valuation exactly 1 and an invertible linear
    /// coefficient. Cross-checked against [`Self::lagrange_reverse`] in tests.
    pub fn reverse(&self) -> Result<Self> {
        self.reversion_guard()?;
        let a1 = self.coeff(1);
        let b1 = R::one().try_div(&a1).unwrap();
        let t = Self::identity(self.var);
        let ds = self.derive();
        let mut g = Self::monomial(self.var, b1, 1);
        let mut converged = false;
        for _ in 0..64 {
            let e = self.compose(&g)?.sub(&t);
            if e.is_zero() || e.val >= self.prec {
                converged = true;
                break;
            }
            let d = ds.compose(&g)?;
            let upd = e.mul(&d.inv()?);
            g = g.sub(&upd);
        }
        assert!(converged, "reversion failed to converge");
        Ok(g.truncated(self.prec))
    }

    /// Compositional inverse by the classic coefficient extraction
    /// b_n = [t^(n-1)] (t/s)^n / n. Independent of the Newton path; intended
    /// as a cross-check oracle at small precision.
    pub fn lagrange_reverse(&self) -> Result<Self> {
        self.reversion_guard()?;
        let p = self.prec;
        let r = Self::identity(self.var).mul(&self.inv()?); // t/s, valuation 0
        let mut out = Vec::new();
        let mut rn = Self::constant(self.var, R::one());
        for n in 1..p {
            rn = rn.mul(&r).truncated(p);
            let c = rn.coeff(n - 1);
            out.push(
                c.try_div(&R::from_int(n))
                    .expect("characteristic-zero division"),
            );
        }
        Ok(Self::new(self.var, 1, out, p))
    }

    fn reversion_guard(&self) -> Result<()> {
        assert!(
            self.prec < INF_PREC,
            "reversion needs finite precision; truncate first"
        );
        let linear_ok = self.val == 1
            && self
                .coeffs
                .first()
                .is_some_and(|a| R::one().try_div(a).is_some());
        if !linear_ok {
            return Err(Error::NotReversible {
                val: self.val,
                linear: self
                    .known_coeff(1)
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "?".into()),
            });
        }
        if self.prec < 2 {
            return Err(Error::NotReversible {
                val: self.val,
                linear: "unknown".into(),
            });
        }
        Ok(())
    }

    /// Termwise derivative d/dvar.
    pub fn derive(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = self.val + i as i64;
            out.push(c.mul(&R::from_int(n)));
        }
        let prec = if self.is_exact() { INF_PREC } else { self.prec - 1 };
        Self::new(self.var, self.val - 1, out, prec)
    }

    /// Termwise antiderivative with constant 0. Errors on a nonzero
    /// coefficient at exponent -1; exponent divisions must be exact
    /// (automatic over Q-algebras).
    pub fn integrate(&self) -> Result<Self> {
        if let Some(c) = self.known_coeff(-1) {
            if !c.is_zero() {
                return Err(Error::LogarithmicTerm(c.to_string()));
            }
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = self.val + i as i64;
            out.push(
                c.try_div(&R::from_int(n + 1))
                    .expect("characteristic-zero division"),
            );
        }
        let prec = if self.is_exact() { INF_PREC } else { self.prec + 1 };
        Ok(Self::new(self.var, self.val + 1, out, prec))
    }

    /// Integer power (negative exponents via inversion).
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = Self::constant(self.var, R::one());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitute var -> c * var (coefficient of var^n picks up c^n).
    /// Negative exponents need c invertible.
    pub fn scale_arg(&self, c: &R) -> Result<Self> {
        let cv = if self.val >= 0 {
            let mut p = R::one();
            for _ in 0..self.val {
                p = p.mul(c);
            }
            p
        } else {
            let cinv = R::one()
                .try_div(c)
                .ok_or_else(|| Error::NotAUnit(c.to_string()))?;
            let mut p = R::one();
            for _ in 0..(-self.val) {
                p = p.mul(&cinv);
            }
            p
        };
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut cn = cv;
        for a in &self.coeffs {
            out.push(a.mul(&cn));
            cn = cn.mul(c);
        }
        Ok(Self::new(self.var, self.val, out, self.prec))
    }

    /// Map coefficients into another ring (lifting Q -> Q[u], specializing
    /// Q[u] -> Q, and so on).
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries::new(
            self.var,
            self.val,
            self.coeffs.iter().map(&f).collect(),
            self.prec,
        )
    }

    /// First exponent (within the jointly-known window) where the two series
    /// disagree, with both coefficients.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<(i64, R, R)> {
        let lo = self.val.min(rhs.val);
        let hi = self.prec.min(rhs.prec);
        for n in lo..hi {
            let a = self.known_coeff(n).unwrap_or_else(R::zero);
            let b = rhs.known_coeff(n).unwrap_or_else(R::zero);
            if a != b {
                return Some((n, a, b));
            }
        }
        None
    }

    /// Equality of every coefficient both sides know.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_mismatch(rhs).is_none()
    }
}

impl<R: Ring> PartialEq for TruncatedSeries<R> {
    /// Same knowledge: equal windows, equal precision, compatible variables.
    fn eq(&self, other: &Self) -> bool {
        Var::compatible(self.var, other.var)
            && self.val == other.val
            && self.prec == other.prec
            && self.coeffs == other.coeffs
    }
}

impl<R: Ring> std::ops::Add for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn add(self, rhs: Self) -> TruncatedSeries<R> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<R: Ring> std::ops::Sub for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn sub(self, rhs: Self) -> TruncatedSeries<R> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<R: Ring> std::ops::Mul for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn mul(self, rhs: Self) -> TruncatedSeries<R> {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<R: Ring> std::ops::Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries::neg(self)
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    /// Paper-style rendering: `t - t^2 - 1/3*t^3 + O(t^8)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.val + i as i64;
            let s = c.to_string();
            // Compound coefficients (polynomials etc.) print parenthesized.
            let (sign, mag) = if s.contains(' ') {
                ("+", format!("({})", s))
            } else {
                match s.strip_prefix('-') {
                    Some(rest) => ("-", rest.to_string()),
                    None => ("+", s),
                }
            };
            if wrote {
                write!(f, " {} ", sign)?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            wrote = true;
            let unit_mag = mag == "1";
            match n {
                0 => write!(f, "{}", mag)?,
                1 => {
                    if unit_mag {
                        write!(f, "{}", v)?
                    } else {
                        write!(f, "{}*{}", mag, v)?
                    }
                }
                _ => {
                    if unit_mag {
                        write!(f, "{}^{}", v, n)?
                    } else {
                        write!(f, "{}*{}^{}", mag, v, n)?
                    }
                }
            }
        }
        if self.prec < INF_PREC {
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "O({}^{})", v, self.prec)?;
        } else if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl TruncatedSeries<Rat> {
    /// Lossless line format `valuation;prec;c0,c1,...` with rationals as
    /// `p/q` (or bare integers). Finite precision only.
    pub fn to_line(&self) -> String {
        assert!(
            self.prec < INF_PREC,
            "line format needs finite precision; truncate first"
        );
        let cs: Vec<String> = (self.val..self.prec)
            .map(|n| {
                let c = self.coeff(n);
                if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        format!("{};{};{}", self.val, self.prec, cs.join(","))
    }

    /// Parse the [`Self::to_line`] format.
    pub fn from_line(var: Var, line: &str) -> Result<Self> {
        let mut parts = line.trim().splitn(3, ';');
        let bad = |what: &str| Error::ParseError(format!("series line: {}", what));
        let val: i64 = parts
            .next()
            .ok_or_else(|| bad("missing valuation"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad valuation"))?;
        let prec: i64 = parts
            .next()
            .ok_or_else(|| bad("missing prec"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad prec"))?;
        let body = parts.next().ok_or_else(|| bad("missing coefficients"))?;
        let mut coeffs = Vec::new();
        if !body.trim().is_empty() {
            for tok in body.split(',') {
                let tok = tok.trim();
                let c = match tok.split_once('/') {
                    Some((n, d)) => {
                        let n = num_bigint::BigInt::from_str(n).map_err(|_| bad(tok))?;
                        let d = num_bigint::BigInt::from_str(d).map_err(|_| bad(tok))?;
                        if d == 0.into() {
                            return Err(bad("zero denominator"));
                        }
                        Rat::new(n, d)
                    }
                    None => Rat::from_integer(
                        num_bigint::BigInt::from_str(tok).map_err(|_| bad(tok))?,
                    ),
                };
                coeffs.push(c);
            }
        }
        if coeffs.len() as i64 != prec - val {
            return Err(bad("coefficient count does not match prec - valuation"));
        }
        Ok(Self::new(var, val, coeffs, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};
    use proptest::prelude::*;

    pub fn qs(val: i64, coeffs: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::from_coeffs(Var::T, val, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn geometric(prec: i64) -> TruncatedSeries<Rat> {
        // 1/(1-t) = 1 + t + t^2 + ...
        TruncatedSeries::exact_poly(Var::T, 0, vec![rat_int(1), rat_int(-1)])
            .truncated(prec)
            .inv()
            .unwrap()
    }

    #[test]
    fn mul_precision_rule() {
        // t * t with both prec 5 -> t^2 with prec 6 (min(p1+v2, p2+v1)).
        let t = TruncatedSeries::new(Var::T, 1, vec![rat_int(1)], 5);
        let sq = t.mul(&t);
        assert_eq!(sq.val(), 2);
        assert_eq!(sq.prec(), 6);
        assert_eq!(sq.coeff(2), rat_int(1));
    }

    #[test]
    fn add_takes_min_prec() {
        let a = qs(0, &[(1, 1), (2, 1)]).truncated(2);
        let b = qs(1, &[(3, 1), (4, 1), (5, 1)]);
        let s = a.add(&b);
        assert_eq!(s.prec(), 2);
        assert_eq!(s.coeff(0), rat_int(1));
        assert_eq!(s.coeff(1), rat_int(5));
    }

    #[test]
    fn geometric_inverse() {
        let g = geometric(8);
        assert_eq!(g.val(), 0);
        assert_eq!(g.prec(), 8);
        for n in 0..8 {
            assert_eq!(g.coeff(n), rat_int(1));
        }
    }

    #[test]
    fn laurent_inverse_round_trip() {
        // s = t^-2 + 3 + 5t with prec 4; s * s^-1 = 1 to available precision.
        let s = TruncatedSeries::new(Var::T, -2, vec![rat_int(1), rat_int(0), rat_int(3), rat_int(5)], 4);
        let si = s.inv().unwrap();
        assert_eq!(si.val(), 2);
        assert_eq!(si.prec(), 8);
        let prod = s.mul(&si);
        assert_eq!(prod.coeff(0), rat_int(1));
        assert!(prod
            .first_mismatch(&TruncatedSeries::constant(Var::T, rat_int(1)))
            .is_none());
    }

    #[test]
    fn inv_rejects_non_unit_leading() {
        let z: TruncatedSeries<Rat> = TruncatedSeries::zero(Var::T, 5);
        assert!(matches!(z.inv(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn var_mismatch_is_ring_mismatch() {
        let t = TruncatedSeries::<Rat>::identity(Var::T);
        let z = TruncatedSeries::<Rat>::identity(Var::Z);
        assert!(matches!(
            t.checked_add(&z),
            Err(Error::RingMismatch("t", "z"))
        ));
        // q and t are the same uniformizer.
        let q = TruncatedSeries::<Rat>::identity(Var::Q);
        assert!(t.checked_add(&q).is_ok());
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let outer = qs(0, &[(1, 1), (1, 1)]);
        let inner = qs(0, &[(1, 1), (1, 1)]);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::CompositionDomain(0))
        ));
    }

    #[test]
    fn compose_log_exp_doc_example() {
        // expm1(z) = z + z^2/2! + z^3/3! + ... composed with
        // L(t) = -sum t^n/n gives exp(L) - 1 = (1 - t) - 1 = -t.
        let p = 12i64;
        let mut fact = rat_int(1);
        let mut em1 = Vec::new();
        for n in 1..p {
            fact = fact * rat_int(n);
            em1.push(rat_int(1) / fact.clone());
        }
        let expm1 = TruncatedSeries::new(Var::Z, 1, em1, p);
        let l = TruncatedSeries::new(
            Var::T,
            1,
            (1..p).map(|n| -rat(1, n)).collect(),
            p,
        );
        let c = expm1.compose(&l).unwrap();
        let minus_t = TruncatedSeries::new(Var::T, 1, vec![rat_int(-1)], p);
        assert_eq!(c, minus_t);
    }

    #[test]
    fn compose_precision_rule() {
        // outer = t^2 exactly, inner known to O(t^3): result t^2 + ... to O(t^4).
        let outer = TruncatedSeries::<Rat>::identity(Var::T).pow(2).unwrap();
        let inner = TruncatedSeries::new(Var::T, 1, vec![rat_int(1), rat_int(1)], 3);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.prec(), 4);
        assert_eq!(c.coeff(2), rat_int(1));
        assert_eq!(c.coeff(3), rat_int(2));
    }

    #[test]
    fn laurent_compose() {
        // outer = t^-1, inner = t + t^2: 1/(t+t^2) = t^-1 - 1 + t - t^2 + ...
        let outer = TruncatedSeries::<Rat>::monomial(Var::T, rat_int(1), -1);
        let inner =
            TruncatedSeries::exact_poly(Var::T, 1, vec![rat_int(1), rat_int(1)]).truncated(6);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.val(), -1);
        assert_eq!(c.coeff(-1), rat_int(1));
        assert_eq!(c.coeff(0), rat_int(-1));
        assert_eq!(c.coeff(1), rat_int(1));
        assert_eq!(c.coeff(2), rat_int(-1));
    }

    #[test]
    fn reverse_round_trips() {
        let s = qs(1, &[(1, 1), (-1, 1), (1, 3), (7, 2), (0, 1), (-2, 5), (1, 7)]);
        let g = s.reverse().unwrap();
        let back = s.compose(&g).unwrap();
        let t = TruncatedSeries::<Rat>::identity(Var::T).truncated(s.prec());
        assert!(back.agrees_with(&t));
        assert_eq!(g.prec(), s.prec());
    }

    #[test]
    fn reverse_matches_lagrange_oracle() {
        let s = qs(
            1,
            &[(2, 1), (1, 2), (-1, 3), (5, 1), (0, 1), (7, 4), (-3, 2), (1, 6)],
        );
        let newton = s.reverse().unwrap();
        let lagrange = s.lagrange_reverse().unwrap();
        assert_eq!(newton, lagrange);
    }

    #[test]
    fn reverse_rejects_bad_valuation() {
        let s = qs(2, &[(1, 1)]);
        assert!(matches!(s.reverse(), Err(Error::NotReversible { .. })));
    }

    #[test]
    fn derive_integrate_round_trip() {
        let s = qs(1, &[(3, 1), (0, 1), (-7, 2), (1, 5)]);
        let back = s.derive().integrate().unwrap();
        assert!(back.agrees_with(&s));
        // integrate errors on a 1/t term
        let l = TruncatedSeries::new(Var::T, -1, vec![rat_int(2)], 4);
        assert!(matches!(l.integrate(), Err(Error::LogarithmicTerm(_))));
    }

    #[test]
    fn display_matches_contract() {
        let s = TruncatedSeries::new(
            Var::T,
            1,
            vec![rat_int(1), rat_int(-1), rat(-1, 3), rat(1, 2), rat_int(0), rat_int(0), rat_int(0)],
            8,
        );
        assert_eq!(s.to_string(), "t - t^2 - 1/3*t^3 + 1/2*t^4 + O(t^8)");
        let l = TruncatedSeries::new(Var::Q, -2, vec![rat_int(1), rat_int(2), rat(11, 3)], 1);
        assert_eq!(l.to_string(), "q^-2 + 2*q^-1 + 11/3 + O(q^1)");
    }

    #[test]
    fn line_format_round_trip() {
        let s = TruncatedSeries::new(
            Var::T,
            -1,
            vec![rat(1, 2), rat_int(0), rat_int(-3), rat(22, 7)],
            5,
        );
        let line = s.to_line();
        assert_eq!(line, "-1;5;1/2,0,-3,22/7,0,0");
        let back = TruncatedSeries::from_line(Var::T, &line).unwrap();
        assert_eq!(back, s);
        assert!(TruncatedSeries::from_line(Var::T, "0;3;1,oops,3").is_err());
        assert!(TruncatedSeries::from_line(Var::T, "0;3;1,2").is_err());
    }

    #[test]
    fn scale_arg_multiplies_exponent_weights() {
        let s = qs(-1, &[(1, 1), (0, 1), (3, 1)]);
        let scaled = s.scale_arg(&rat_int(2)).unwrap();
        assert_eq!(scaled.coeff(-1), rat(1, 2));
        assert_eq!(scaled.coeff(1), rat_int(6));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn series_strat() -> impl Strategy<Value = TruncatedSeries<Rat>> {
        (
            -3i64..4,
            prop::collection::vec(small_rat(), 1..8),
            0i64..4,
        )
            .prop_map(|(val, coeffs, extra)| {
                let prec = val + coeffs.len() as i64 + extra;
                TruncatedSeries::new(Var::T, val, coeffs, prec)
            })
    }

    proptest! {
        #[test]
        fn prop_add_commutes(a in series_strat(), b in series_strat()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn prop_mul_commutes(a in series_strat(), b in series_strat()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn prop_mul_associates(a in series_strat(), b in series_strat(), c in series_strat()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn prop_distributive(a in series_strat(), b in series_strat(), c in series_strat()) {
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            // Distribution can only be compared on the jointly-known window.
            prop_assert!(lhs.agrees_with(&rhs));
        }

        #[test]
        fn prop_inv_round_trip(a in series_strat()) {
            prop_assume!(!a.is_zero());
            if let Ok(ai) = a.inv() {
                let p = a.mul(&ai);
                prop_assert!(p.agrees_with(&TruncatedSeries::constant(Var::T, rat_int(1))));
            }
        }

        #[test]
        fn prop_reverse_round_trip(coeffs in prop::collection::vec(small_rat(), 2..7)) {
            let mut c = coeffs;
            if c[0].is_zero() {
                c[0] = rat_int(1);
            }
            let s = TruncatedSeries::from_coeffs(Var::T, 1, c);
            let g = s.reverse().unwrap();
            let t = TruncatedSeries::<Rat>::identity(Var::T).truncated(s.prec());
            prop_assert!(s.compose(&g).unwrap().agrees_with(&t));
            prop_assert!(g.compose(&s).unwrap().agrees_with(&t));
        }
    }
}
