//! Symbolic matrices for torus conjugation and generic determinants.
//!
//! Entries of a [`MonomialMatrix`] are `(linear form in a_1..a_m) · t^e`. That is
//! enough for `λ(t) A λ(t)^T` with `A` a generic member of a linear family.
//! Determinants of generic members need genuine products, which [`MultiPoly`]
//! supplies.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// `Σ c_m a_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(vars: usize) -> Self {
        LinearForm { coeffs: vec![Rational::zero(); vars] }
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.coeffs.len() {
            return Err(Error::Dimension(format!(
                "{} parameter values for a form in {} variables",
                values.len(),
                self.coeffs.len()
            )));
        }
        Ok(self.coeffs.iter().zip(values).map(|(c, v)| c * v).sum())
    }

    /// Indices of the parameters that appear.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }
}

/// `coeff · t^exponent`; a zero coefficient always carries exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialEntry {
    coeff: LinearForm,
    exponent: i64,
}

impl MonomialEntry {
    pub fn new(coeff: LinearForm, exponent: i64) -> Self {
        let exponent = if coeff.is_zero() { 0 } else { exponent };
        MonomialEntry { coeff, exponent }
    }

    pub fn coeff(&self) -> &LinearForm {
        &self.coeff
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    n: usize,
    vars: usize,
    entries: Vec<MonomialEntry>,
}

impl MonomialMatrix {
    /// `Σ a_m G_m` with every exponent 0.
    pub fn generic(generators: &[RationalMatrix]) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Domain("a family needs at least one generator".into()))?;
        let n = first.rows();
        if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension("generators of different shapes".into()));
        }
        let vars = generators.len();
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let form = LinearForm::new(generators.iter().map(|g| g.get(i, j).clone()).collect());
                MonomialEntry::new(form, 0)
            })
            .collect();
        Ok(MonomialMatrix { n, vars, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn get(&self, i: usize, j: usize) -> &MonomialEntry {
        &self.entries[i * self.n + j]
    }

    /// `λ(t) M λ(t)^T` for `λ(t) = diag(t^{e_1}, …, t^{e_n})`.
    pub fn conjugate_by_diagonal(&self, exponents: &[i64]) -> Result<Self> {
        if exponents.len() != self.n {
            return Err(Error::Dimension(format!(
                "{} torus exponents for a {}x{} matrix",
                exponents.len(),
                self.n,
                self.n
            )));
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let (i, j) = (idx / self.n, idx % self.n);
                MonomialEntry::new(e.coeff.clone(), e.exponent + exponents[i] + exponents[j])
            })
            .collect();
        Ok(MonomialMatrix { n: self.n, vars: self.vars, entries })
    }

    /// Positions `(i, j)` of nonzero entries whose exponent is negative.
    pub fn negative_exponents(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero() && e.exponent < 0)
            .map(|(idx, _)| (idx / self.n, idx % self.n))
            .collect()
    }

    /// For each parameter, the single exponent of `t` it carries, or `None`
    /// if it appears with different exponents (or not at all).
    pub fn parameter_exponents(&self) -> Vec<Option<i64>> {
        let mut seen: Vec<Option<Option<i64>>> = vec![None; self.vars];
        for e in &self.entries {
            for m in e.coeff.support() {
                seen[m] = match seen[m] {
                    None => Some(Some(e.exponent)),
                    Some(Some(x)) if x == e.exponent => Some(Some(x)),
                    _ => Some(None),
                };
            }
        }
        seen.into_iter().map(Option::flatten).collect()
    }

    /// Substitute parameter values at a concrete `t`.
    pub fn evaluate(&self, values: &[Rational], t: &Rational) -> Result<RationalMatrix> {
        if t.is_zero() {
            return Err(Error::Domain("t = 0 is not in the torus".into()));
        }
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (idx, e) in self.entries.iter().enumerate() {
            let v = e.coeff.eval(values)? * pow_signed(t, e.exponent);
            out.set(idx / self.n, idx % self.n, v);
        }
        Ok(out)
    }

    /// Entrywise `t → 0`. Fails if any nonzero entry has a negative exponent.
    pub fn limit_at_zero(&self, values: &[Rational]) -> Result<RationalMatrix> {
        if let Some(&(i, j)) = self.negative_exponents().first() {
            return Err(Error::Inconsistency(format!(
                "entry ({}, {}) has t-exponent {}; no limit at t = 0",
                i + 1,
                j + 1,
                self.get(i, j).exponent
            )));
        }
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (idx, e) in self.entries.iter().enumerate() {
            if e.exponent == 0 {
                out.set(idx / self.n, idx % self.n, e.coeff.eval(values)?);
            } else {
                // still validate arity
                e.coeff.eval(values)?;
            }
        }
        Ok(out)
    }
}

/// `t^e` for any integer `e`; `t` must be nonzero when `e < 0`.
pub fn pow_signed(t: &Rational, e: i64) -> Rational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Sparse polynomial in a fixed number of variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let vars = form.coeffs().len();
        let mut p = Self::zero(vars);
        for m in form.support() {
            let mut exps = vec![0; vars];
            exps[m] = 1;
            p.terms.insert(exps, form.coeffs()[m].clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .sum()
    }
}

/// Determinant of a square matrix of polynomials, by Laplace expansion with
/// memoisation over column subsets (`2^n` minors).
pub fn symbolic_det(m: &[Vec<MultiPoly>], vars: usize) -> Result<MultiPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("symbolic determinant of a non-square matrix".into()));
    }
    if n > 16 {
        return Err(Error::Budget(format!("symbolic determinant of size {n} is too large")));
    }
    // minors[S] = det of rows 0..|S| restricted to the columns in S
    let mut minors: Vec<MultiPoly> = vec![MultiPoly::zero(vars); 1 << n];
    minors[0] = MultiPoly::constant(vars, Rational::one());
    for set in 1usize..(1 << n) {
        let row = set.count_ones() as usize - 1;
        let mut acc = MultiPoly::zero(vars);
        let mut pos = 0;
        for col in 0..n {
            if set & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            let rest = &minors[set & !(1 << col)];
            if !entry.is_zero() && !rest.is_zero() {
                let term = entry.mul(rest);
                // column `col` is the pos-th of the set; expansion along the last row
                acc = if (row + pos).is_multiple_of(2) { acc.add(&term) } else { acc.add(&term.neg()) };
            }
            pos += 1;
        }
        minors[set] = acc;
    }
    Ok(minors.pop().expect("full set"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::matrix::{rat, ratio};

    #[test]
    fn zero_entries_are_normalized() {
        let e = MonomialEntry::new(LinearForm::zero(2), -5);
        assert_eq!(e.exponent(), 0);
    }

    #[test]
    fn symbolic_det_matches_numeric() {
        // [[x, 1, 0], [2, y, x], [0, 3, 1]]
        let x = MultiPoly::from_linear(&LinearForm::new(vec![rat(1), rat(0)]));
        let y = MultiPoly::from_linear(&LinearForm::new(vec![rat(0), rat(1)]));
        let k = |v: i64| MultiPoly::constant(2, rat(v));
        let m = vec![
            vec![x.clone(), k(1), k(0)],
            vec![k(2), y.clone(), x.clone()],
            vec![k(0), k(3), k(1)],
        ];
        let det = symbolic_det(&m, 2).unwrap();
        for (xv, yv) in [(rat(2), rat(5)), (ratio(1, 3), rat(-1)), (rat(0), rat(7))] {
            let numeric = RationalMatrix::from_rows(vec![
                vec![xv.clone(), rat(1), rat(0)],
                vec![rat(2), yv.clone(), xv.clone()],
                vec![rat(0), rat(3), rat(1)],
            ])
            .unwrap()
            .det()
            .unwrap();
            assert_eq!(det.eval(&[xv, yv]), numeric);
        }
    }

    #[test]
    fn cancellation_gives_zero_polynomial() {
        let x = MultiPoly::from_linear(&LinearForm::new(vec![rat(1)]));
        let m = vec![vec![x.clone(), x.clone()], vec![x.clone(), x]];
        assert!(symbolic_det(&m, 1).unwrap().is_zero());
    }

    #[test]
    fn pow_signed_handles_negative_exponents() {
        assert_eq!(pow_signed(&rat(2), -2), ratio(1, 4));
        assert_eq!(pow_signed(&rat(2), 3), rat(8));
        assert_eq!(pow_signed(&rat(5), 0), rat(1));
    }
}
