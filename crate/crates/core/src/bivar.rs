//! Two-variable power series truncated by total degree.
//!
//! `BiSeries` stores the dense triangle of coefficients of x^i y^j with
//! i + j < deg; everything of total degree >= deg is unknown. The truncation
//! rule under multiplication mirrors the univariate one with the bivariate
//! valuation (lowest total degree) in place of the valuation:
//! `deg_out = min(d1 + v2, d2 + v1)`. This is the carrier for formal group
//! laws F(t1, t2) and their Honda-style models.

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::{TruncatedSeries, Var};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<R: Ring> {
    vars: (Var, Var),
    /// rows[j][i] = coefficient of x^i y^j; row j has length deg - j.
    rows: Vec<Vec<R>>,
    /// Total-degree truncation: coefficients with i + j >= deg are unknown.
    deg: usize,
}

impl<R: Ring> BiSeries<R> {
    pub fn zero(vars: (Var, Var), deg: usize) -> Self {
        let rows = (0..deg).map(|j| vec![R::zero(); deg - j]).collect();
        BiSeries { vars, rows, deg }
    }

    pub fn from_fn(vars: (Var, Var), deg: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let rows = (0..deg)
            .map(|j| (0..deg - j).map(|i| f(i, j)).collect())
            .collect();
        BiSeries { vars, rows, deg }
    }

    /// x^1 (axis 0) or y^1 (axis 1).
    pub fn gen(vars: (Var, Var), axis: usize, deg: usize) -> Self {
        let mut s = Self::zero(vars, deg);
        let (i, j) = if axis == 0 { (1, 0) } else { (0, 1) };
        if i + j < deg {
            s.rows[j][i] = R::one();
        }
        s
    }

    /// Embed a one-variable series (valuation >= 0) along the given axis.
    pub fn from_univariate(s: &TruncatedSeries<R>, axis: usize, deg: usize) -> Result<Self> {
        if s.val() < 0 {
            return Err(Error::CompositionDomain(s.val()));
        }
        let deg = deg.min(s.prec().max(0) as usize);
        Ok(Self::from_fn((s.var(), s.var()), deg, |i, j| {
            let (a, b) = if axis == 0 { (i, j) } else { (j, i) };
            if b == 0 {
                s.known_coeff(a as i64).unwrap_or_else(R::zero)
            } else {
                R::zero()
            }
        }))
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    /// Coefficient of x^i y^j; panics when i + j >= deg (unknown).
    pub fn coeff(&self, i: usize, j: usize) -> R {
        assert!(
            i + j < self.deg,
            "coefficient ({}, {}) beyond total degree {}",
            i,
            j,
            self.deg
        );
        self.rows[j][i].clone()
    }

    /// Lowest total degree carrying a nonzero coefficient; `deg` when zero.
    pub fn bival(&self) -> usize {
        for n in 0..self.deg {
            for j in 0..=n {
                if !self.rows[j][n - j].is_zero() {
                    return n;
                }
            }
        }
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.bival() == self.deg
    }

    /// Forget all coefficients of total degree >= new_deg.
    pub fn truncate_deg(&self, new_deg: usize) -> Self {
        if new_deg >= self.deg {
            return self.clone();
        }
        Self::from_fn(self.vars, new_deg, |i, j| self.rows[j][i].clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let deg = self.deg.min(rhs.deg);
        Self::from_fn(self.vars, deg, |i, j| {
            self.rows[j][i].add(&rhs.rows[j][i])
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.vars, self.deg, |i, j| self.rows[j][i].neg())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(self.vars, self.deg, |i, j| self.rows[j][i].mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let deg = (self.deg + rhs.bival()).min(rhs.deg + self.bival());
        let mut out = Self::zero(self.vars, deg);
        for j1 in 0..self.deg {
            for i1 in 0..self.deg - j1 {
                let a = &self.rows[j1][i1];
                if a.is_zero() {
                    continue;
                }
                for j2 in 0..rhs.deg {
                    if i1 + j1 + j2 >= deg {
                        break;
                    }
                    for i2 in 0..rhs.deg - j2 {
                        if i1 + j1 + i2 + j2 >= deg {
                            break;
                        }
                        let b = &rhs.rows[j2][i2];
                        if b.is_zero() {
                            continue;
                        }
                        let cell = &mut out.rows[j1 + j2][i1 + i2];
                        *cell = cell.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Substitute this series into a one-variable one: outer(self). The outer
    /// series must not be Laurent and self must have bivariate valuation >= 1.
    pub fn compose_outer(&self, outer: &TruncatedSeries<R>) -> Result<Self> {
        if outer.val() < 0 {
            return Err(Error::CompositionDomain(outer.val()));
        }
        let w = self.bival();
        if w < 1 {
            return Err(Error::CompositionDomain(0));
        }
        let deg = self
            .deg
            .min((outer.prec().max(0) as usize).saturating_mul(w));
        let mut acc = Self::zero(self.vars, deg);
        let mut pw = Self::zero(self.vars, deg);
        if deg > 0 {
            pw.rows[0][0] = R::one();
        }
        let window_end = outer.val() + outer.coeffs().len() as i64;
        for k in 0..window_end.max(0) {
            if pw.is_zero() {
                break;
            }
            let c = outer.known_coeff(k).unwrap_or_else(R::zero);
            if !c.is_zero() {
                acc = acc.add(&pw.scale(&c));
            }
            pw = pw.mul(self).truncate_deg(deg);
        }
        Ok(acc)
    }

    /// Substitute one-variable series (valuation >= 1) for x and y.
    pub fn eval_at(
        &self,
        a: &TruncatedSeries<R>,
        b: &TruncatedSeries<R>,
    ) -> Result<TruncatedSeries<R>> {
        if a.is_zero() || a.val() < 1 {
            return Err(Error::CompositionDomain(a.val()));
        }
        if b.is_zero() || b.val() < 1 {
            return Err(Error::CompositionDomain(b.val()));
        }
        let cap = (self.deg as i64).saturating_mul(a.val().min(b.val()));
        let var = a.var();
        let one = TruncatedSeries::constant(var, R::one());
        let mut pa = Vec::with_capacity(self.deg);
        let mut pb = Vec::with_capacity(self.deg);
        pa.push(one.clone());
        pb.push(one);
        for i in 1..self.deg {
            pa.push(pa[i - 1].mul(a).truncated(cap));
            pb.push(pb[i - 1].mul(b).truncated(cap));
        }
        let mut acc = TruncatedSeries::zero(var, crate::series::INF_PREC);
        for j in 0..self.deg {
            for i in 0..self.deg - j {
                let c = &self.rows[j][i];
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&pa[i].mul(&pb[j]).scale(c));
            }
        }
        Ok(acc.truncated(cap))
    }

    /// Substitute two-variable series (bivariate valuation >= 1) for x and y.
    pub fn eval_bi(&self, a: &BiSeries<R>, b: &BiSeries<R>) -> Result<BiSeries<R>> {
        for s in [a, b] {
            if s.bival() < 1 {
                return Err(Error::CompositionDomain(0));
            }
        }
        let cap = self
            .deg
            .saturating_mul(a.bival().min(b.bival()))
            .min(a.deg)
            .min(b.deg);
        let mut pa = Vec::with_capacity(self.deg);
        let mut pb = Vec::with_capacity(self.deg);
        let mut one = Self::zero(a.vars, cap);
        if cap > 0 {
            one.rows[0][0] = R::one();
        }
        pa.push(one.clone());
        pb.push(one.clone());
        for i in 1..self.deg {
            pa.push(pa[i - 1].mul(a).truncate_deg(cap));
            pb.push(pb[i - 1].mul(b).truncate_deg(cap));
        }
        let mut acc = Self::zero(a.vars, cap);
        for j in 0..self.deg {
            for i in 0..self.deg - j {
                let c = &self.rows[j][i];
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&pa[i].mul(&pb[j]).truncate_deg(cap).scale(c));
            }
        }
        Ok(acc)
    }

    /// Swap the two variables.
    pub fn swapped(&self) -> Self {
        Self::from_fn((self.vars.1, self.vars.0), self.deg, |i, j| {
            self.rows[i][j].clone()
        })
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> BiSeries<S> {
        BiSeries {
            vars: self.vars,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
            deg: self.deg,
        }
    }

    /// First (total degree, i, j) where the two triangles disagree, scanning
    /// the jointly-known degrees in graded order.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<(usize, usize, R, R)> {
        let deg = self.deg.min(rhs.deg);
        for n in 0..deg {
            for j in 0..=n {
                let i = n - j;
                if self.rows[j][i] != rhs.rows[j][i] {
                    return Some((i, j, self.rows[j][i].clone(), rhs.rows[j][i].clone()));
                }
            }
        }
        None
    }

    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_mismatch(rhs).is_none()
    }
}

impl<R: Ring> fmt::Display for BiSeries<R> {
    /// Graded rendering: `t1 + t2 - 2*t1*t2 + ... + O(total degree d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = (
            format!("{}1", self.vars.0.name()),
            format!("{}2", self.vars.1.name()),
        );
        let mut wrote = false;
        for n in 0..self.deg {
            for j in 0..=n {
                let i = n - j;
                let c = &self.rows[j][i];
                if c.is_zero() {
                    continue;
                }
                let s = c.to_string();
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
                let mut parts = Vec::new();
                if mag != "1" || (i == 0 && j == 0) {
                    parts.push(mag);
                }
                for (v, e) in [(&x, i), (&y, j)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.clone()),
                        _ => parts.push(format!("{}^{}", v, e)),
                    }
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        if wrote {
            write!(f, " + ")?;
        }
        write!(f, "O(deg {})", self.deg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, Rat};

    fn tt() -> (Var, Var) {
        (Var::T, Var::T)
    }

    fn x(deg: usize) -> BiSeries<Rat> {
        BiSeries::gen(tt(), 0, deg)
    }

    fn y(deg: usize) -> BiSeries<Rat> {
        BiSeries::gen(tt(), 1, deg)
    }

    #[test]
    fn square_of_sum() {
        let s = x(6).add(&y(6));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(2, 0), rat_int(1));
        assert_eq!(sq.coeff(1, 1), rat_int(2));
        assert_eq!(sq.coeff(0, 2), rat_int(1));
        assert_eq!(sq.coeff(1, 0), rat_int(0));
        // deg rule: min(6+1, 6+1) = 7
        assert_eq!(sq.deg(), 7);
    }

    #[test]
    fn geometric_outer_gives_binomials() {
        // 1/(1-s) at s = x + y: coefficient of x^i y^j is binomial(i+j, i).
        let d = 8;
        let outer = TruncatedSeries::exact_poly(Var::T, 0, vec![rat_int(1), rat_int(-1)])
            .truncated(d as i64)
            .inv()
            .unwrap();
        let s = x(d).add(&y(d));
        let g = s.compose_outer(&outer).unwrap();
        let binom = |n: i64, k: i64| -> Rat {
            let mut b = rat_int(1);
            for r in 0..k {
                b = b * rat_int(n - r) / rat_int(r + 1);
            }
            b
        };
        for n in 0..d {
            for j in 0..=n {
                let i = n - j;
                assert_eq!(g.coeff(i, j), binom(n as i64, j as i64), "({}, {})", i, j);
            }
        }
    }

    #[test]
    fn eval_at_substitutes_univariate_series() {
        // F = x + y + x*y at (t, t^2): t + t^2 + t^3.
        let mut f = BiSeries::zero(tt(), 5);
        f.rows[0][1] = rat_int(1);
        f.rows[1][0] = rat_int(1);
        f.rows[1][1] = rat_int(1);
        let t = TruncatedSeries::<Rat>::identity(Var::T).truncated(9);
        let t2 = t.mul(&t);
        let got = f.eval_at(&t, &t2).unwrap();
        assert_eq!(got.coeff(1), rat_int(1));
        assert_eq!(got.coeff(2), rat_int(1));
        assert_eq!(got.coeff(3), rat_int(1));
        assert_eq!(got.prec(), 5); // deg * min valuation
    }

    #[test]
    fn eval_bi_matches_eval_at_on_diagonal() {
        // Substituting (x, x) bivariately agrees with substituting (t, t).
        let d = 7;
        let f = x(d).add(&y(d)).mul(&x(d).add(&y(d).scale(&rat_int(3))));
        let uni = f
            .eval_at(
                &TruncatedSeries::identity(Var::T).truncated(d as i64),
                &TruncatedSeries::identity(Var::T).truncated(d as i64),
            )
            .unwrap();
        let bi = f.eval_bi(&x(d), &x(d)).unwrap();
        for n in 0..uni.prec().min(bi.deg() as i64) {
            assert_eq!(uni.coeff(n), bi.coeff(n as usize, 0), "degree {}", n);
        }
    }

    #[test]
    fn swap_and_symmetry() {
        let f = x(5).add(&y(5).scale(&rat_int(2)));
        let g = f.swapped();
        assert_eq!(g.coeff(0, 1), rat_int(1));
        assert_eq!(g.coeff(1, 0), rat_int(2));
        let sym = x(5).add(&y(5));
        assert!(sym.agrees_with(&sym.swapped()));
    }

    #[test]
    fn from_univariate_round_trip() {
        let s = TruncatedSeries::from_coeffs(
            Var::T,
            1,
            vec![rat_int(1), rat_int(-2), rat_int(5)],
        );
        let b = BiSeries::from_univariate(&s, 1, 10).unwrap();
        // deg capped by the series precision
        assert_eq!(b.deg(), 4);
        assert_eq!(b.coeff(0, 1), rat_int(1));
        assert_eq!(b.coeff(0, 3), rat_int(5));
        assert_eq!(b.coeff(1, 0), rat_int(0));
    }

    #[test]
    fn display_is_graded() {
        let f = x(3).add(&y(3)).sub(&x(3).mul(&y(3)).truncate_deg(3));
        assert_eq!(f.to_string(), "t1 + t2 - t1*t2 + O(deg 3)");
    }
}
