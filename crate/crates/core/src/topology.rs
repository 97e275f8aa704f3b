//! Cell dimensions, Poincaré polynomials and irreducible-component counts.
//!
//! `P_{Y_n}(q)` is computed three ways (sum over cells, closed binomial form,
//! and the `φ/ψ` recurrence) and the component count four ways (maximal
//! elements, recurrence, generating function, and `{1,2}`-compositions).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::composition::{self, OddComposition};
use crate::error::{Error, Result};
use crate::poset;

/// Polynomial in `q` with non-negative integer coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigUint>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPolynomial::from_u64s(&[1])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiply by `q`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigUint::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    /// Value at `q = 1`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// `"c0,c1,..."` as used in the CSV table.
    pub fn csv_field(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// `{"n": n, "coeffs": [...]}`.
    pub fn to_json(&self, n: u32) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{{\"n\":{n},\"coeffs\":[{}]}}", coeffs.join(","))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let coef = if c.is_one() && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => coef,
                    1 => format!("{coef}q"),
                    _ => format!("{coef}q^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Integer sequence on a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: String,
    pub start: u32,
    pub values: Vec<BigUint>,
}

impl SequenceTable {
    pub fn get(&self, n: u32) -> Option<&BigUint> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i as usize))
    }

    /// Last index covered.
    pub fn end(&self) -> u32 {
        self.start + self.values.len() as u32 - 1
    }
}

fn check_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

/// `Σ (γ_i − 1)/2`, which always equals `(n − k)/2`.
pub fn cell_dimension(gamma: &OddComposition) -> u32 {
    let dim: u32 = gamma.parts().iter().map(|p| (p - 1) / 2).sum();
    assert_eq!(dim, poset::rank(gamma), "cell dimension disagrees with (n - k)/2");
    dim
}

/// `Σ_{γ ∈ F_n} q^{dim Y_{n,γ}}`.
pub fn poincare_from_cells(n: u32) -> Result<IntPolynomial> {
    let mut coeffs: Vec<BigUint> = Vec::new();
    for gamma in composition::enumerate(n)? {
        let d = cell_dimension(&gamma) as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, BigUint::zero());
        }
        coeffs[d] += 1u32;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Row `m` of Pascal's triangle.
pub fn pascal_row(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row
}

/// `binomial(m, r)`, zero when `r > m`.
pub fn binomial(m: usize, r: usize) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    pascal_row(m).swap_remove(r)
}

/// `Σ_i binomial(n − 1 − i, i) q^i`.
pub fn poincare_closed_form(n: u32) -> Result<IntPolynomial> {
    check_positive(n)?;
    let n = n as usize;
    let rows: Vec<Vec<BigUint>> = (0..n).map(pascal_row).collect();
    let coeffs = (0..n)
        .map(|i| {
            let top = n - 1 - i;
            rows[top].get(i).cloned().unwrap_or_default()
        })
        .collect();
    Ok(IntPolynomial::new(coeffs))
}

/// `P_n = P_{n−1} + q P_{n−2}` from `P_1 = P_2 = 1`.
pub fn poincare_by_recurrence(n: u32) -> Result<IntPolynomial> {
    check_positive(n)?;
    let (mut prev, mut cur) = (IntPolynomial::one(), IntPolynomial::one());
    for _ in 2..n {
        let next = cur.add(&prev.shift());
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Checks `P_n = P_{n−1} + q P_{n−2}` on the cell-sum polynomials.
pub fn check_recurrence(n: u32) -> Result<bool> {
    if n < 3 {
        return Err(Error::Domain(format!("recurrence check needs n >= 3, got {n}")));
    }
    let lhs = poincare_from_cells(n)?;
    let rhs = poincare_from_cells(n - 1)?.add(&poincare_from_cells(n - 2)?.shift());
    Ok(lhs == rhs)
}

/// Coefficients weakly rise, then weakly fall.
pub fn is_unimodal(p: &IntPolynomial) -> bool {
    let c = p.coeffs();
    let mut i = 0;
    while i + 1 < c.len() && c[i] <= c[i + 1] {
        i += 1;
    }
    while i + 1 < c.len() && c[i] >= c[i + 1] {
        i += 1;
    }
    i + 1 >= c.len()
}

/// Number of maximal elements of `(F_n, ≤)`.
pub fn component_count_direct(n: u32) -> Result<u64> {
    Ok(poset::maximal_elements(n)?.len() as u64)
}

/// `a_n = a_{n−1} + a_{n−3}` with `a_1 = a_2 = a_3 = 1`.
pub fn component_count_recurrence(n: u32) -> Result<BigUint> {
    check_positive(n)?;
    let mut a: Vec<BigUint> = vec![BigUint::zero(), BigUint::one(), BigUint::one(), BigUint::one()];
    for m in 4..=n as usize {
        let next = &a[m - 1] + &a[m - 3];
        a.push(next);
    }
    Ok(a.swap_remove(n as usize))
}

/// Power series `num / den` to `terms` coefficients; `den[0]` must be ±1.
pub fn series_divide(num: &[BigInt], den: &[BigInt], terms: usize) -> Result<Vec<BigInt>> {
    let lead = den
        .first()
        .filter(|d| d.abs().is_one())
        .ok_or_else(|| Error::Domain("series division needs a unit constant term".into()))?;
    let mut out: Vec<BigInt> = Vec::with_capacity(terms);
    for m in 0..terms {
        let mut acc = num.get(m).cloned().unwrap_or_default();
        for (j, d) in den.iter().enumerate().skip(1).take(m) {
            acc -= d * &out[m - j];
        }
        out.push(acc * lead);
    }
    Ok(out)
}

fn to_naturals(name: &str, start: u32, values: Vec<BigInt>) -> Result<SequenceTable> {
    let values = values
        .into_iter()
        .map(|v| {
            v.to_biguint()
                .ok_or_else(|| Error::Inconsistency(format!("negative coefficient in {name}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceTable { name: name.into(), start, values })
}

/// `a_0, …, a_N` from `Σ a_n x^n = (1 − x³)/(1 − x − x³) = 1 + x/(1 − x − x³)`,
/// i.e. the component counts with the convention `a_0 = 1`.
pub fn component_gf_coeffs(upto: u32) -> Result<SequenceTable> {
    check_positive(upto)?;
    let num = [BigInt::one(), BigInt::zero(), BigInt::zero(), -BigInt::one()];
    let den = [BigInt::one(), -BigInt::one(), BigInt::zero(), -BigInt::one()];
    to_naturals("a_gf", 0, series_divide(&num, &den, upto as usize + 1)?)
}

/// Plain `1/(1 − x − x³)`, whose `x^m` coefficient is `a_{m+1}`.
pub fn reciprocal_series_coeffs(upto: u32) -> Result<SequenceTable> {
    let den = [BigInt::one(), -BigInt::one(), BigInt::zero(), -BigInt::one()];
    to_naturals("1/(1-x-x^3)", 0, series_divide(&[BigInt::one()], &den, upto as usize + 1)?)
}

/// Number of compositions of `n − 2` into parts 1 and 2 with no two adjacent 2's,
/// by explicit enumeration.
pub fn alt_component_count(n: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!("alternative count needs n >= 3, got {n}")));
    }
    fn walk(remaining: u32, last_was_two: bool) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = walk(remaining - 1, false);
        if remaining >= 2 && !last_was_two {
            total += walk(remaining - 2, true);
        }
        total
    }
    Ok(walk(n - 2, false))
}

/// Cell dimensions of the maximal elements, i.e. the dimensions of the
/// irreducible components, in canonical order of the maximal elements.
pub fn component_dimensions(n: u32) -> Result<Vec<u32>> {
    Ok(poset::maximal_elements(n)?.iter().map(cell_dimension).collect())
}

/// One row of the cross-check table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRow {
    pub n: u32,
    pub fib: u64,
    pub a_direct: u64,
    pub a_recur: BigUint,
    pub a_gf: BigUint,
    pub a_alt: Option<u64>,
    pub poincare: IntPolynomial,
}

impl SequenceRow {
    /// Every identity the row is supposed to satisfy.
    pub fn consistent(&self) -> bool {
        let direct = BigUint::from(self.a_direct);
        direct == self.a_recur
            && direct == self.a_gf
            && self.a_alt.is_none_or(|alt| alt == self.a_direct)
            && self.poincare.total() == BigUint::from(self.fib)
    }
}

pub fn sequence_rows(from: u32, to: u32) -> Result<Vec<SequenceRow>> {
    check_positive(from)?;
    if to < from {
        return Err(Error::Domain(format!("empty range {from}..={to}")));
    }
    let gf = component_gf_coeffs(to)?;
    (from..=to)
        .map(|n| {
            Ok(SequenceRow {
                n,
                fib: composition::count(n)?,
                a_direct: component_count_direct(n)?,
                a_recur: component_count_recurrence(n)?,
                a_gf: gf.get(n).cloned().expect("table covers range"),
                a_alt: if n >= 3 { Some(alt_component_count(n)?) } else { None },
                poincare: poincare_from_cells(n)?,
            })
        })
        .collect()
}

/// CSV with header `n,fib,a_direct,a_recur,a_gf,a_alt,poincare`.
pub fn write_sequences_csv<W: std::io::Write>(rows: &[SequenceRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "fib", "a_direct", "a_recur", "a_gf", "a_alt", "poincare"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.fib.to_string(),
            r.a_direct.to_string(),
            r.a_recur.to_string(),
            r.a_gf.to_string(),
            r.a_alt.map(|a| a.to_string()).unwrap_or_default(),
            r.poincare.csv_field(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv flush failed: {e}")))?;
    Ok(())
}

/// Small helper for reports: `BigUint` to `u64` when it fits.
pub fn as_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
