//! End-to-end cross-check report.
//!
//! Every structural claim is re-derived by at least two independent routes
//! and compared. Lines are produced in a fixed order; timing is opt-in so the
//! default output is byte-identical across runs.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::composition::{self, FirstPart, OddComposition};
use crate::error::Result;
use crate::poset;
use crate::quadric::{self, flags, matrix::RationalMatrix, NondegeneracyCertificate};
use crate::topology;

/// Size caps for each family of checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budgets {
    /// All-pairs poset checks.
    pub poset: u32,
    /// Polynomial and count checks.
    pub poly: u32,
    /// Exact matrix checks.
    pub quadric: u32,
    /// All-triples associativity of meet.
    pub triples: u32,
    /// Finite-field flag enumeration.
    pub flags: u32,
    /// Subspaces visited per flag check.
    pub subspaces: u128,
    /// Random samples per size in the sampled matrix checks.
    pub samples: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            poset: 12,
            poly: 25,
            quadric: 9,
            triples: 9,
            flags: 4,
            subspaces: flags::DEFAULT_SUBSPACE_BUDGET,
            samples: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub n_max: u32,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    /// TAP-like text: a plan line, then `ok`/`not ok` per check.
    pub fn render(&self, timing: bool) -> String {
        let mut s = String::new();
        writeln!(s, "TAP version 13").unwrap();
        writeln!(s, "1..{}", self.lines.len()).unwrap();
        for (i, l) in self.lines.iter().enumerate() {
            let status = if l.passed { "ok" } else { "not ok" };
            let verdict = if l.passed { "PASS" } else { "FAIL" };
            write!(s, "{status} {} - {}: {verdict}", i + 1, l.name).unwrap();
            if !l.detail.is_empty() {
                write!(s, " ({})", l.detail).unwrap();
            }
            if timing {
                write!(s, " [{} ms]", l.elapsed.as_millis()).unwrap();
            }
            s.push('\n');
        }
        if self.passed() {
            writeln!(s, "# n_max = {}: all {} checks passed", self.n_max, self.lines.len()).unwrap();
        } else {
            writeln!(s, "# n_max = {}: {} of {} checks failed", self.n_max, self.failures(), self.lines.len())
                .unwrap();
        }
        s
    }
}

type Outcome = Result<(bool, String)>;

struct Runner {
    lines: Vec<CheckLine>,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.lines.push(CheckLine { name: name.into(), passed, detail, elapsed: start.elapsed() });
    }
}

fn fib(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn range_note(lo: u32, hi: u32) -> String {
    if hi < lo {
        "no n in range".into()
    } else {
        String::new()
    }
}

/// Runs every check with the given caps.
pub fn verify_all(n_max: u32, budgets: &Budgets) -> Report {
    let poly = n_max.min(budgets.poly);
    let pos = n_max.min(budgets.poset);
    let tri = n_max.min(budgets.triples);
    let quad = n_max.min(budgets.quadric) as usize;
    let flag_n = n_max.min(budgets.flags);
    let mut r = Runner { lines: Vec::new() };

    r.check(format!("Fibonacci cardinality |F_n| = Fib(n), n <= {poly}"), || {
        for n in 1..=poly {
            let listed = composition::enumerate(n)?.len() as u64;
            if listed != fib(n) || composition::count(n)? != fib(n) {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, poly)))
    });

    r.check(format!("phi: F'_n -> F_(n-1) is a bijection, 2 <= n <= {pos}"), || {
        for n in 2..=pos {
            let image: BTreeSet<_> = composition::enumerate(n)?
                .iter()
                .filter(|g| composition::classify(g) == FirstPart::One)
                .map(composition::phi)
                .collect::<Result<_>>()?;
            let target: BTreeSet<_> = composition::enumerate(n - 1)?.into_iter().collect();
            if image != target {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(2, pos)))
    });

    r.check(format!("psi: F''_n -> F_(n-2) is a bijection, 3 <= n <= {pos}"), || {
        for n in 3..=pos {
            let source: Vec<_> = composition::enumerate(n)?
                .into_iter()
                .filter(|g| composition::classify(g) == FirstPart::GreaterThanOne)
                .collect();
            let image: BTreeSet<_> = source.iter().map(composition::psi).collect::<Result<_>>()?;
            let target: BTreeSet<_> = composition::enumerate(n - 2)?.into_iter().collect();
            if image.len() != source.len() || image != target {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(3, pos)))
    });

    r.check(format!("Poincare polynomial: cell sum = binomial closed form = recurrence, n <= {poly}"), || {
        for n in 1..=poly {
            let cells = topology::poincare_from_cells(n)?;
            if cells != topology::poincare_closed_form(n)?
                || cells != topology::poincare_by_recurrence(n)?
                || (n >= 3 && !topology::check_recurrence(n)?)
                || cells.total() != BigUint::from(fib(n))
            {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, poly)))
    });

    r.check(format!("Poincare polynomial is unimodal, n <= {poly}"), || {
        for n in 1..=poly {
            if !topology::is_unimodal(&topology::poincare_from_cells(n)?) {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, poly)))
    });

    r.check("F_6 Hasse diagram node set and ranks", || {
        let d = poset::hasse(6)?;
        let labels: Vec<String> = d.nodes.iter().map(OddComposition::label).collect();
        let expected = ["111111", "1113", "1131", "1311", "15", "3111", "33", "51"];
        let ranks_ok = topology::poincare_from_cells(6)? == topology::IntPolynomial::from_u64s(&[1, 4, 3]);
        Ok((labels == expected && ranks_ok, String::new()))
    });

    r.check("F_6 Hasse diagram edge set", || {
        let d = poset::hasse(6)?;
        let got: BTreeSet<(String, String)> =
            d.edges.iter().map(|e| (e.lower.label(), e.upper.label())).collect();
        let expected: BTreeSet<(String, String)> = [
            ("111111", "3111"),
            ("111111", "1131"),
            ("111111", "1311"),
            ("111111", "1113"),
            ("3111", "51"),
            ("3111", "33"),
            ("1113", "33"),
            ("1311", "15"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        Ok((d.edges.len() == 8 && got == expected, format!("{} edges", d.edges.len())))
    });

    r.check("F_6 component dimensions {2,2,2,1}", || {
        let mut dims = topology::component_dimensions(6)?;
        dims.sort_unstable();
        Ok((dims == [1, 2, 2, 2], String::new()))
    });

    r.check(format!("Covers raise rank by exactly 1 and strict order raises rank, n <= {pos}"), || {
        for n in 1..=pos {
            let all = composition::enumerate(n)?;
            for g in &all {
                for e in poset::cover_edges(g) {
                    if poset::rank(&e.upper) != poset::rank(&e.lower) + 1 {
                        return Ok((false, format!("({}) over ({})", e.upper, e.lower)));
                    }
                }
                for rho in poset::down_set(g) {
                    if &rho != g && poset::rank(&rho) >= poset::rank(g) {
                        return Ok((false, format!("({rho}) < ({g})")));
                    }
                }
            }
        }
        Ok((true, range_note(1, pos)))
    });

    r.check(format!("Product-of-chains order equals cover reachability, n <= {pos}"), || {
        let mut pairs = 0usize;
        for n in 1..=pos {
            let all = composition::enumerate(n)?;
            for a in &all {
                for b in &all {
                    pairs += 1;
                    if poset::leq(a, b)? != poset::leq_oracle(a, b)? {
                        return Ok((false, format!("({a}) vs ({b})")));
                    }
                }
            }
        }
        Ok((true, format!("{pairs} pairs")))
    });

    r.check(format!("Leading parts of tau <= gamma are 1 when gamma_1 > 1 = tau_1, n <= {pos}"), || {
        for n in 1..=pos {
            for g in composition::enumerate(n)? {
                let g1 = g.parts()[0] as usize;
                if g1 == 1 {
                    continue;
                }
                for tau in poset::down_set(&g) {
                    if tau.parts()[0] == 1 && tau.parts().iter().take(g1).any(|&p| p != 1) {
                        return Ok((false, format!("({tau}) <= ({g})")));
                    }
                }
            }
        }
        Ok((true, range_note(1, pos)))
    });

    r.check(format!("Unique minimum and down-set sizes prod((g_i + 1)/2), n <= {pos}"), || {
        for n in 1..=pos {
            let bottom = OddComposition::all_ones(n);
            for g in composition::enumerate(n)? {
                if !poset::leq(&bottom, &g)? {
                    return Ok((false, format!("minimum not below ({g})")));
                }
                let by_covers = descendants_by_covers(&g);
                if by_covers.len() as u64 != poset::down_set_size(&g) || by_covers != poset::down_set(&g) {
                    return Ok((false, format!("down-set of ({g})")));
                }
            }
        }
        Ok((true, range_note(1, pos)))
    });

    r.check(format!("Meet exists and is the unique maximal common lower bound, n <= {pos}"), || {
        let mut pairs = 0usize;
        for n in 1..=pos {
            let all = composition::enumerate(n)?;
            for a in &all {
                for b in &all {
                    let m = poset::meet(a, b)?;
                    pairs += 1;
                    if !poset::leq(&m, a)? || !poset::leq(&m, b)? {
                        return Ok((false, format!("meet of ({a}), ({b})")));
                    }
                    for lb in poset::down_set(a).intersection(&poset::down_set(b)) {
                        if !poset::leq(lb, &m)? {
                            return Ok((false, format!("({lb}) not below meet of ({a}), ({b})")));
                        }
                    }
                }
            }
        }
        Ok((true, format!("{pairs} pairs")))
    });

    r.check(format!("Meet is idempotent, commutative and associative, n <= {tri}"), || {
        for n in 1..=tri {
            let all = composition::enumerate(n)?;
            let idx = |g: &OddComposition| all.binary_search(g).expect("meet stays in F_n");
            let k = all.len();
            let mut table = vec![0usize; k * k];
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    table[i * k + j] = idx(&poset::meet(a, b)?);
                }
            }
            for i in 0..k {
                if table[i * k + i] != i {
                    return Ok((false, format!("idempotence at ({})", all[i])));
                }
                for j in 0..k {
                    if table[i * k + j] != table[j * k + i] {
                        return Ok((false, "commutativity".into()));
                    }
                    for l in 0..k {
                        let left = table[table[i * k + j] * k + l];
                        let right = table[i * k + table[j * k + l]];
                        if left != right {
                            return Ok((false, format!("associativity at n = {n}")));
                        }
                    }
                }
            }
        }
        Ok((true, range_note(1, tri)))
    });

    r.check(format!("Maximal elements match the no-consecutive-ones pattern, n <= {poly}"), || {
        for n in 1..=poly {
            let by_covers = poset::maximal_elements(n)?;
            let by_pattern: Vec<_> = composition::enumerate(n)?
                .into_iter()
                .filter(poset::is_maximal_by_pattern)
                .collect();
            if by_covers != by_pattern {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, poly)))
    });

    r.check(
        format!("Component counts: maximal = recurrence = series = {{1,2}}-compositions, 3 <= n <= {poly}"),
        || {
            if poly < 3 {
                return Ok((true, "no n in range".into()));
            }
            let gf = topology::component_gf_coeffs(poly)?;
            for n in 3..=poly {
                let direct = BigUint::from(topology::component_count_direct(n)?);
                let alt = BigUint::from(topology::alt_component_count(n)?);
                if direct != topology::component_count_recurrence(n)?
                    || Some(&direct) != gf.get(n)
                    || direct != alt
                {
                    return Ok((false, format!("n = {n}")));
                }
            }
            Ok((true, String::new()))
        },
    );

    r.check(format!("Components are not equidimensional, 5 <= n <= {}", poly.min(20)), || {
        for n in 5..=poly.min(20) {
            let dims: BTreeSet<u32> = topology::component_dimensions(n)?.into_iter().collect();
            if dims.len() < 2 {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(5, poly.min(20))))
    });

    let samples = budgets.samples;
    r.check(format!("Fixed-quadric basis: N A + A N^T = 0 and u A u^T = A agree, n <= {quad}"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=quad {
            let nil = quadric::jordan_nilpotent(n)?;
            let u = quadric::unipotent_exp(&nil)?;
            let basis = quadric::fixed_symmetric_space(n)?;
            for a in &basis {
                if !quadric::is_u_fixed(a, &nil)? || !quadric::is_fixed_by_action(a, &u)? {
                    return Ok((false, format!("basis element at n = {n}")));
                }
            }
            for _ in 0..samples {
                let a = random_symmetric(&mut rng, n);
                let linear = quadric::is_u_fixed(&a, &nil)?;
                if quadric::action_scalar(&a, &u)?.is_some() && !a.is_zero() && !linear {
                    return Ok((false, format!("random sample at n = {n}")));
                }
                let mixed = random_combination(&mut rng, &basis);
                if !quadric::is_fixed_by_action(&mixed, &u)? {
                    return Ok((false, format!("combination at n = {n}")));
                }
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    r.check(format!("Fixed-quadric space: dim (n+1)/2 and equals the pattern span, odd n <= {quad}"), || {
        for n in (1..=quad).step_by(2) {
            let basis = quadric::fixed_symmetric_space(n)?;
            let family = quadric::pattern_family(n)?;
            if basis.len() != n.div_ceil(2) || !quadric::same_span(&basis, &family.generators) {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    r.check(format!("Nondegenerate fixed quadrics exist iff n is odd, n <= {quad}"), || {
        let mut sampled = Vec::new();
        for n in 1..=quad {
            let rep = quadric::nondegenerate_exists(n)?;
            if rep.exists != (n % 2 == 1) {
                return Ok((false, format!("n = {n}")));
            }
            if let NondegeneracyCertificate::Sampled { .. } = rep.certificate {
                sampled.push(n.to_string());
            }
        }
        let detail = if sampled.is_empty() {
            "even n certified by symbolic determinant".to_string()
        } else {
            format!("probabilistic for n = {}", sampled.join(","))
        };
        Ok((true, detail))
    });

    r.check(format!("Torus lambda(t) preserves the family, odd n <= {quad}; diagonal converse over F_5, F_7, F_11 up to n = {}", quad.min(quadric::TORUS_CONVERSE_MAX_N)), || {
        for n in (1..=quad).step_by(2) {
            if !quadric::torus_fixes_family(n)?.holds() {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    r.check(format!("Torus limit equals a_(k+1) A_(n) with non-negative exponents, odd n <= {quad}"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in (1..=quad).step_by(2) {
            let k = (n - 1) / 2;
            let conj = quadric::conjugated_family(n)?;
            if !conj.negative_exponents().is_empty() {
                return Ok((false, format!("negative exponent at n = {n}")));
            }
            let a_n = quadric::t_fixed_point(n)?;
            for _ in 0..samples {
                let mut params: Vec<_> =
                    (0..k).map(|_| quadric::random_rational(&mut rng, quadric::SAMPLE_HEIGHT)).collect();
                params.push(quadric::random_nonzero_rational(&mut rng, quadric::SAMPLE_HEIGHT));
                let limit = quadric::torus_limit(n, &params)?;
                if limit != a_n.scale(&params[k]) {
                    return Ok((false, format!("n = {n}")));
                }
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    r.check(format!("A_(n) is the unique torus-fixed nondegenerate point, odd n <= {quad}"), || {
        for n in (1..=quad).step_by(2) {
            let a = quadric::t_fixed_point(n)?;
            let nil = quadric::jordan_nilpotent(n)?;
            if !a.is_symmetric()
                || !a.is_invertible()
                || !quadric::is_u_fixed(&a, &nil)?
                || !quadric::t_fixed_point_uniqueness(n)?.unique_is_top((n - 1) / 2)
            {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    r.check(format!("Closure of the top cell drops to the size m-2 pattern, odd 3 <= m <= {quad}"), || {
        for m in (3..=quad).step_by(2) {
            if !quadric::closure_stratum_check(m)? {
                return Ok((false, format!("m = {m}")));
            }
        }
        Ok((true, range_note(3, quad as u32)))
    });

    r.check(format!("log(exp(N)) = N exactly, n <= {}", quad.min(8)), || {
        for n in 1..=quad.min(8) {
            let nil = quadric::jordan_nilpotent(n)?;
            if quadric::unipotent_log(&quadric::unipotent_exp(&nil)?)? != nil {
                return Ok((false, format!("n = {n}")));
            }
        }
        Ok((true, range_note(1, quad.min(8) as u32)))
    });

    let subspace_budget = budgets.subspaces;
    r.check(format!("Unique N-invariant flag of every type over F_2 and F_3, n <= {flag_n}"), || {
        let mut types = 0usize;
        for n in 1..=flag_n {
            for gamma in all_compositions(n) {
                for p in [2, 3] {
                    types += 1;
                    if !flags::invariant_flags(&gamma, p, subspace_budget)?.unique() {
                        return Ok((false, format!("type {gamma:?} over F_{p}")));
                    }
                }
            }
        }
        Ok((true, format!("{types} (type, field) pairs")))
    });

    r.check(format!("Cells: A_gamma is fixed blockwise and torus-fixed, cell dimension = rank, n <= {quad}"), || {
        for n in 1..=quad as u32 {
            for g in composition::enumerate(n)? {
                let fams = quadric::block_family(&g)?;
                let dim: usize = fams.iter().map(|f| f.projective_dim()).sum();
                if dim as u32 != topology::cell_dimension(&g) {
                    return Ok((false, format!("dimension of ({g})")));
                }
                let point = quadric::block_fixed_point(&g)?;
                if !point.is_invertible() {
                    return Ok((false, format!("A_gamma singular for ({g})")));
                }
                for (u, &p) in quadric::induced_unipotents(&g)?.iter().zip(g.parts()) {
                    if !quadric::is_fixed_by_action(&quadric::t_fixed_point(p as usize)?, u)? {
                        return Ok((false, format!("block of ({g})")));
                    }
                }
                let exps = quadric::block_torus_exponents(&g)?;
                let torus_fixed = (0..point.rows())
                    .all(|i| (0..point.cols()).all(|j| point.get(i, j).is_zero() || exps[i] + exps[j] == 0));
                if !torus_fixed {
                    return Ok((false, format!("torus weight of A_gamma for ({g})")));
                }
            }
        }
        Ok((true, range_note(1, quad as u32)))
    });

    Report { n_max, lines: r.lines }
}

fn descendants_by_covers(g: &OddComposition) -> BTreeSet<OddComposition> {
    let mut seen = BTreeSet::from([g.clone()]);
    let mut stack = vec![g.clone()];
    while let Some(cur) = stack.pop() {
        for next in poset::covers_of(&cur) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen
}

/// Every composition of `n` (any parts), as plain vectors.
pub fn all_compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in all_compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = quadric::random_rational(rng, quadric::SAMPLE_HEIGHT);
            a.set(i, j, x.clone());
            a.set(j, i, x);
        }
    }
    a
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[RationalMatrix]) -> RationalMatrix {
    let n = basis.first().map_or(0, RationalMatrix::rows);
    let mut acc = RationalMatrix::zeros(n, n);
    for b in basis {
        let x = quadric::random_rational(rng, quadric::SAMPLE_HEIGHT);
        if !x.is_zero() {
            acc = &acc + &b.scale(&x);
        }
    }
    acc
}
