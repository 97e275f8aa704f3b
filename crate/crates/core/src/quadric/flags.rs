//! Exhaustive search for `N`-invariant subspaces of `F_p^n`.
//!
//! Each `d`-dimensional subspace is visited once, through its reduced row
//! echelon basis: pick `d` pivot columns, then fill every free slot to the
//! right of a pivot with an arbitrary field element.

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default cap on the number of subspaces visited per call.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if p > 251 {
            return Err(Error::Domain(format!("prime {p} is larger than supported")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let (mut base, mut acc) = (a % self.p, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.p
    }
}

/// Number of `d`-dimensional subspaces of `F_p^n` (Gaussian binomial).
pub fn gaussian_binomial(n: u32, d: u32, p: u32) -> u128 {
    if d > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= p.pow(n - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

/// A subspace stored by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    pivots: Vec<usize>,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// `span(e_1, …, e_d)`.
    pub fn standard(n: usize, d: usize) -> Self {
        let basis = (0..d)
            .map(|r| (0..n).map(|c| u32::from(c == r)).collect())
            .collect();
        Subspace { n, pivots: (0..d).collect(), basis }
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, field: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (x, &b) in w.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(f, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Invariant under the nilpotent shift `e_j ↦ e_{j−1}`, `e_1 ↦ 0`.
    pub fn is_shift_invariant(&self, field: &PrimeField) -> bool {
        self.basis.iter().all(|v| {
            let shifted: Vec<u32> = (0..self.n).map(|i| v.get(i + 1).copied().unwrap_or(0)).collect();
            self.contains(field, &shifted)
        })
    }
}

/// Every `d`-dimensional subspace of `F_p^n`, each exactly once.
pub fn subspaces(field: &PrimeField, n: usize, d: usize) -> Vec<Subspace> {
    let p = field.p();
    let mut out = Vec::new();
    for pivots in (0..n).combinations(d) {
        // free slots: (row, col) with col > pivot of row and col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut basis = vec![vec![0u32; n]; d];
            for (r, &pc) in pivots.iter().enumerate() {
                basis[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                basis[r][c] = v;
            }
            out.push(Subspace { n, pivots: pivots.clone(), basis });
            // next assignment of free slots, base p
            let mut i = 0;
            while i < digits.len() && digits[i] == p - 1 {
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
            digits[i] += 1;
        }
    }
    out
}

/// Outcome at one level `d = γ_1 + … + γ_i` of the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagLevel {
    pub dim: usize,
    pub subspaces_checked: usize,
    pub invariant: usize,
    pub invariant_is_standard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagReport {
    pub n: usize,
    pub p: u32,
    pub levels: Vec<FlagLevel>,
}

impl FlagReport {
    /// Exactly one invariant subspace at every level, and it is the standard one.
    pub fn unique(&self) -> bool {
        self.levels.iter().all(|l| l.invariant == 1 && l.invariant_is_standard)
    }
}

/// Enumerates the subspaces of each partial-sum dimension of `gamma` and
/// collects the shift-invariant ones. `gamma` may have even parts.
pub fn invariant_flags(gamma: &[u32], p: u32, budget: u128) -> Result<FlagReport> {
    let field = PrimeField::new(p)?;
    if gamma.is_empty() || gamma.contains(&0) {
        return Err(Error::Domain("flag type must be a composition with positive parts".into()));
    }
    let n: u32 = gamma.iter().sum();
    let mut dims = Vec::new();
    let mut acc = 0;
    for &g in gamma {
        acc += g;
        dims.push(acc);
    }
    let cost: u128 = dims.iter().map(|&d| gaussian_binomial(n, d, p)).sum();
    if cost > budget {
        return Err(Error::Budget(format!(
            "n = {n}, p = {p} needs {cost} subspaces, budget is {budget}"
        )));
    }
    let levels = dims
        .iter()
        .map(|&d| {
            let all = subspaces(&field, n as usize, d as usize);
            let invariant: Vec<&Subspace> = all.iter().filter(|s| s.is_shift_invariant(&field)).collect();
            let standard = Subspace::standard(n as usize, d as usize);
            FlagLevel {
                dim: d as usize,
                subspaces_checked: all.len(),
                invariant: invariant.len(),
                invariant_is_standard: invariant.iter().all(|s| **s == standard),
            }
        })
        .collect();
    Ok(FlagReport { n: n as usize, p, levels })
}

/// `true` iff the standard flag is the only shift-invariant flag of type `gamma` over `F_p`.
pub fn invariant_flag_unique(gamma: &[u32], p: u32) -> Result<bool> {
    Ok(invariant_flags(gamma, p, DEFAULT_SUBSPACE_BUDGET)?.unique())
}
