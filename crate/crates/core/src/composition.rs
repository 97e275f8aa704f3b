//! Compositions of `n` whose parts are all odd.
//!
//! The set of such compositions, `F_n`, has Fibonacci cardinality and splits as
//! `F_n = F'_n ⊔ F''_n` according to whether the first part is 1. The maps
//! [`phi`] (drop a leading 1) and [`psi`] (shrink the leading part by 2) are
//! bijections `F'_n → F_{n-1}` and `F''_n → F_{n-2}`; every recurrence in the
//! crate is built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered sequence of odd positive parts.
///
/// Ordering is lexicographic on the parts, which is the canonical order used
/// for enumeration, diagrams and reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct OddComposition {
    parts: Vec<u32>,
    n: u32,
}

/// Which half of `F_n = F'_n ⊔ F''_n` a composition lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstPart {
    /// `γ_1 = 1`
    One,
    /// `γ_1 > 1`
    GreaterThanOne,
}

impl OddComposition {
    /// Validates the parts. An empty list is rejected; use [`OddComposition::empty`]
    /// when the `n = 0` convention is wanted explicitly.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a composition of n >= 1 has at least one part".into()));
        }
        let mut n: u32 = 0;
        for &p in &parts {
            if p % 2 == 0 {
                return Err(Error::Domain(format!("part {p} is not a positive odd integer")));
            }
            n = n
                .checked_add(p)
                .ok_or_else(|| Error::Domain("sum of parts overflows".into()))?;
        }
        Ok(OddComposition { parts, n })
    }

    /// The single composition of 0.
    pub fn empty() -> Self {
        OddComposition { parts: Vec::new(), n: 0 }
    }

    /// `(1, 1, …, 1)`, the unique minimum of `F_n`.
    pub fn all_ones(n: u32) -> Self {
        OddComposition { parts: vec![1; n as usize], n }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>, n: u32) -> Self {
        debug_assert_eq!(parts.iter().sum::<u32>(), n);
        debug_assert!(parts.iter().all(|p| p % 2 == 1));
        OddComposition { parts, n }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of parts, `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Digit-string label such as `"3111"`; `None` when some part exceeds 9.
    pub fn compact(&self) -> Option<String> {
        if self.parts.iter().any(|&p| p > 9) {
            return None;
        }
        Some(self.parts.iter().map(|p| char::from(b'0' + *p as u8)).collect())
    }

    /// Compact label when available, comma-separated otherwise.
    pub fn label(&self) -> String {
        self.compact().unwrap_or_else(|| self.to_string())
    }
}

impl fmt::Display for OddComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the comma-separated literal form, e.g. `"5,1"`.
impl FromStr for OddComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty composition literal".into()));
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("malformed part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        OddComposition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for OddComposition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Ok(OddComposition::empty());
        }
        OddComposition::new(parts)
    }
}

impl From<OddComposition> for Vec<u32> {
    fn from(c: OddComposition) -> Self {
        c.parts
    }
}

fn check_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

/// All of `F_n` in lexicographic order.
pub fn enumerate(n: u32) -> Result<Vec<OddComposition>> {
    check_positive(n)?;
    Ok(enumerate_unchecked(n))
}

/// Like [`enumerate`], but `n = 0` yields the single empty composition.
pub fn enumerate_allow_empty(n: u32) -> Vec<OddComposition> {
    if n == 0 {
        return vec![OddComposition::empty()];
    }
    enumerate_unchecked(n)
}

fn enumerate_unchecked(n: u32) -> Vec<OddComposition> {
    fn go(remaining: u32, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<OddComposition>) {
        if remaining == 0 {
            out.push(OddComposition::from_parts_unchecked(prefix.clone(), n));
            return;
        }
        let mut part = 1;
        while part <= remaining {
            prefix.push(part);
            go(remaining - part, n, prefix, out);
            prefix.pop();
            part += 2;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn classify(gamma: &OddComposition) -> FirstPart {
    match gamma.first() {
        Some(1) => FirstPart::One,
        _ => FirstPart::GreaterThanOne,
    }
}

/// `(1, γ_2, …, γ_k) ↦ (γ_2, …, γ_k)`.
pub fn phi(gamma: &OddComposition) -> Result<OddComposition> {
    if gamma.first() != Some(1) {
        return Err(Error::Precondition(format!("phi needs a leading 1, got ({gamma})")));
    }
    Ok(OddComposition::from_parts_unchecked(gamma.parts[1..].to_vec(), gamma.n - 1))
}

/// Inverse of [`phi`]: prepend a 1.
pub fn phi_inverse(gamma: &OddComposition) -> OddComposition {
    let mut parts = Vec::with_capacity(gamma.len() + 1);
    parts.push(1);
    parts.extend_from_slice(&gamma.parts);
    OddComposition::from_parts_unchecked(parts, gamma.n + 1)
}

/// `(γ_1, γ_2, …) ↦ (γ_1 − 2, γ_2, …)` for `γ_1 > 1`.
pub fn psi(gamma: &OddComposition) -> Result<OddComposition> {
    match gamma.first() {
        Some(first) if first > 1 => {
            let mut parts = gamma.parts.clone();
            parts[0] = first - 2;
            Ok(OddComposition::from_parts_unchecked(parts, gamma.n - 2))
        }
        _ => Err(Error::Precondition(format!(
            "psi needs a leading part > 1, got ({gamma})"
        ))),
    }
}

/// Inverse of [`psi`]: add 2 to the first part.
pub fn psi_inverse(gamma: &OddComposition) -> Result<OddComposition> {
    let Some(first) = gamma.first() else {
        return Err(Error::Precondition("psi inverse of the empty composition".into()));
    };
    let mut parts = gamma.parts.clone();
    parts[0] = first + 2;
    Ok(OddComposition::from_parts_unchecked(parts, gamma.n + 2))
}

/// `|F_n|` by the recurrence `|F_n| = |F_{n-1}| + |F_{n-2}|` with `|F_1| = |F_2| = 1`.
pub fn count(n: u32) -> Result<u64> {
    check_positive(n)?;
    let (mut prev, mut cur) = (1u64, 1u64);
    for _ in 2..n {
        let next = prev
            .checked_add(cur)
            .ok_or_else(|| Error::Domain(format!("|F_{n}| overflows u64")))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> OddComposition {
        OddComposition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_three() {
        assert_eq!(enumerate(3).unwrap(), vec![c(&[1, 1, 1]), c(&[3])]);
    }

    #[test]
    fn enumerate_sizes() {
        assert_eq!(enumerate(6).unwrap().len(), 8);
        assert_eq!(enumerate(10).unwrap().len(), 55);
    }

    #[test]
    fn enumerate_rejects_zero_unless_flagged() {
        assert!(matches!(enumerate(0), Err(Error::Domain(_))));
        assert_eq!(enumerate_allow_empty(0), vec![OddComposition::empty()]);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let all = enumerate(9).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for g in &all {
            assert_eq!(g.parts().iter().sum::<u32>(), 9);
            assert!(g.parts().iter().all(|p| p % 2 == 1));
        }
    }

    #[test]
    fn new_rejects_bad_parts() {
        assert!(OddComposition::new(vec![2, 1]).is_err());
        assert!(OddComposition::new(vec![0]).is_err());
        assert!(OddComposition::new(vec![]).is_err());
        assert!(OddComposition::new(vec![u32::MAX, u32::MAX]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&c(&[1, 3, 1])), FirstPart::One);
        assert_eq!(classify(&c(&[3, 3])), FirstPart::GreaterThanOne);
        assert_eq!(classify(&c(&[5, 1])), FirstPart::GreaterThanOne);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&c(&[1, 3, 1])).unwrap(), c(&[3, 1]));
        assert_eq!(phi(&c(&[1, 1, 1])).unwrap(), c(&[1, 1]));
        assert_eq!(phi(&c(&[1, 5])).unwrap(), c(&[5]));
        assert!(matches!(phi(&c(&[3, 1])), Err(Error::Precondition(_))));
        assert_eq!(phi(&c(&[1])).unwrap(), OddComposition::empty());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&c(&[3, 3])).unwrap(), c(&[1, 3]));
        assert_eq!(psi(&c(&[5, 1])).unwrap(), c(&[3, 1]));
        assert_eq!(psi(&c(&[3])).unwrap(), c(&[1]));
        assert!(matches!(psi(&c(&[1, 3])), Err(Error::Precondition(_))));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(1).unwrap(), 1);
        assert_eq!(count(6).unwrap(), 8);
        assert_eq!(count(12).unwrap(), 144);
        assert!(count(0).is_err());
        assert!(count(200).is_err());
    }

    #[test]
    fn literal_and_labels() {
        let g: OddComposition = "3, 1,1,1".parse().unwrap();
        assert_eq!(g, c(&[3, 1, 1, 1]));
        assert_eq!(g.to_string(), "3,1,1,1");
        assert_eq!(g.compact().as_deref(), Some("3111"));
        assert_eq!(c(&[11, 1]).compact(), None);
        assert_eq!(c(&[11, 1]).label(), "11,1");
        assert!("3,,1".parse::<OddComposition>().is_err());
        assert!("3,2".parse::<OddComposition>().is_err());
        assert!("".parse::<OddComposition>().is_err());
    }

    #[test]
    fn json_is_a_plain_array() {
        let g = c(&[3, 1, 1, 1]);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[3,1,1,1]");
        let back: OddComposition = serde_json::from_str("[3,1,1,1]").unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<OddComposition>("[2,2]").is_err());
    }
}
