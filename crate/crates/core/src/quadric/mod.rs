//! Exact verification of the matrix-level facts about `u`-fixed quadrics.
//!
//! Conventions: `N` is the `n × n` nilpotent Jordan block with ones on the
//! superdiagonal, `u = exp(N)`, and a group element `g` acts on a symmetric
//! matrix by `A ↦ g A g^T`. Under that action `u` fixes `A` exactly when
//! `N A + A N^T = 0`; for odd `n = 2k + 1` the solutions are the matrices
//!
//! ```text
//!   a_1   0    a_2  ...  a_{k+1}
//!   0    -a_2  0    ...  0
//!   a_2   0    a_3  ...  0
//!   ...
//!   a_{k+1} 0  0    ...  0
//! ```
//!
//! i.e. entry `(i, j)` (1-based) is `(-1)^{i+1} a_m` when `i + j = 2m` and
//! `i + j ≤ n + 1`, zero otherwise. The torus `λ(t) = diag(t^k, …, t^{-k})`
//! scales `a_m` by `t^{2(k+1-m)}`, so every point flows to the antidiagonal
//! matrix `A_(n)` as `t → 0`.

pub mod flags;
pub mod matrix;
pub mod symbolic;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::composition::OddComposition;
use crate::error::{Error, Result};
use flags::PrimeField;
use matrix::{rat, Rational, RationalMatrix};
use symbolic::{LinearForm, MonomialMatrix, MultiPoly};

/// Largest even `n` whose generic determinant is expanded symbolically.
pub const SYMBOLIC_DET_LIMIT: usize = 8;
pub const DEFAULT_RANK_SAMPLES: usize = 200;
pub const SAMPLE_HEIGHT: i64 = 100;

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("matrix size must be at least 1".into()));
    }
    Ok(())
}

fn check_odd(n: usize) -> Result<usize> {
    check_size(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::Domain(format!("n = {n} is even; the pattern family needs odd n")));
    }
    Ok((n - 1) / 2)
}

/// Ones on the superdiagonal.
pub fn jordan_nilpotent(n: usize) -> Result<RationalMatrix> {
    check_size(n)?;
    Ok(RationalMatrix::from_fn(n, n, |i, j| if j == i + 1 { Rational::one() } else { Rational::zero() }))
}

fn check_nilpotent(m: &RationalMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension("nilpotency of a non-square matrix".into()));
    }
    if !m.pow(m.rows() as u32)?.is_zero() {
        return Err(Error::Domain("matrix is not nilpotent".into()));
    }
    Ok(())
}

/// `Σ_{j<n} N^j / j!`, exact.
pub fn unipotent_exp(nil: &RationalMatrix) -> Result<RationalMatrix> {
    check_nilpotent(nil)?;
    let n = nil.rows();
    let mut term = RationalMatrix::identity(n);
    let mut sum = term.clone();
    for j in 1..n {
        term = (&term * nil).scale(&Rational::new(BigInt::one(), BigInt::from(j)));
        sum = &sum + &term;
    }
    Ok(sum)
}

/// `Σ_{j≥1} (−1)^{j+1} (u − I)^j / j` for unipotent `u`.
pub fn unipotent_log(u: &RationalMatrix) -> Result<RationalMatrix> {
    if !u.is_square() {
        return Err(Error::Dimension("log of a non-square matrix".into()));
    }
    let n = u.rows();
    let m = u - &RationalMatrix::identity(n);
    check_nilpotent(&m)?;
    let mut power = m.clone();
    let mut sum = RationalMatrix::zeros(n, n);
    for j in 1..n.max(2) {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        sum = &sum + &power.scale(&Rational::new(BigInt::from(sign), BigInt::from(j)));
        power = &power * &m;
    }
    Ok(sum)
}

/// `g A g^T`.
pub fn act(g: &RationalMatrix, a: &RationalMatrix) -> Result<RationalMatrix> {
    g.checked_mul(a)?.checked_mul(&g.transpose())
}

/// `N A + A N^T`: zero exactly when `exp(N)` fixes `A` under `A ↦ g A g^T`.
pub fn fixedness_residual(a: &RationalMatrix, nil: &RationalMatrix) -> Result<RationalMatrix> {
    nil.checked_mul(a)?.checked_add(&a.checked_mul(&nil.transpose())?)
}

/// Linear fixedness criterion for a symmetric `A`.
pub fn is_u_fixed(a: &RationalMatrix, nil: &RationalMatrix) -> Result<bool> {
    if !a.is_symmetric() {
        return Err(Error::Domain("quadric matrix must be symmetric".into()));
    }
    if a.rows() != nil.rows() {
        return Err(Error::Dimension(format!("{}x{} form vs {}x{} nilpotent", a.rows(), a.cols(), nil.rows(), nil.cols())));
    }
    Ok(fixedness_residual(a, nil)?.is_zero())
}

/// Group-action criterion `u A u^T = A`.
pub fn is_fixed_by_action(a: &RationalMatrix, u: &RationalMatrix) -> Result<bool> {
    Ok(act(u, a)? == *a)
}

/// `Some(c)` when `u A u^T = c·A`; the projective form of the action criterion.
pub fn action_scalar(a: &RationalMatrix, u: &RationalMatrix) -> Result<Option<Rational>> {
    Ok(act(u, a)?.scalar_multiple_of(a))
}

/// `E_ij + E_ji` (or `E_ii`).
pub fn symmetric_unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    m.set(i, j, Rational::one());
    m.set(j, i, Rational::one());
    m
}

/// Basis of `{A symmetric : N A + A N^T = 0}` from an exact nullspace.
pub fn fixed_symmetric_space(n: usize) -> Result<Vec<RationalMatrix>> {
    let nil = jordan_nilpotent(n)?;
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let images: Vec<RationalMatrix> = units
        .iter()
        .map(|&(i, j)| fixedness_residual(&symmetric_unit(n, i, j), &nil))
        .collect::<Result<_>>()?;
    // column c of the system is the flattened image of the c-th unit
    let system = RationalMatrix::from_fn(n * n, units.len(), |r, c| images[c].entries()[r].clone());
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut a = RationalMatrix::zeros(n, n);
            for (coef, &(i, j)) in v.iter().zip(&units) {
                a.set(i, j, coef.clone());
                a.set(j, i, coef.clone());
            }
            a
        })
        .collect())
}

/// Dimension of the span of a list of same-shape matrices.
pub fn span_dimension(mats: &[RationalMatrix]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let len = first.rows() * first.cols();
    RationalMatrix::from_fn(mats.len(), len, |r, c| mats[r].entries()[c].clone()).rank()
}

pub fn same_span(a: &[RationalMatrix], b: &[RationalMatrix]) -> bool {
    let joint: Vec<RationalMatrix> = a.iter().chain(b).cloned().collect();
    let d = span_dimension(&joint);
    d == span_dimension(a) && d == span_dimension(b)
}

/// Linear family `{Σ a_m G_m}` of `u`-fixed quadrics for odd `n = 2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedQuadricFamily {
    pub n: usize,
    pub k: usize,
    /// `generators[m - 1]` multiplies `a_m`.
    pub generators: Vec<RationalMatrix>,
}

impl FixedQuadricFamily {
    /// Dimension of the nondegenerate locus after projectivizing, `k`.
    pub fn projective_dim(&self) -> usize {
        self.k
    }

    pub fn generic(&self) -> MonomialMatrix {
        MonomialMatrix::generic(&self.generators).expect("family has generators")
    }

    /// `Σ a_m G_m`.
    pub fn element(&self, params: &[Rational]) -> Result<RationalMatrix> {
        if params.len() != self.generators.len() {
            return Err(Error::Dimension(format!(
                "{} parameters for a family of {} generators",
                params.len(),
                self.generators.len()
            )));
        }
        let mut acc = RationalMatrix::zeros(self.n, self.n);
        for (g, a) in self.generators.iter().zip(params) {
            acc = &acc + &g.scale(a);
        }
        Ok(acc)
    }

    /// The generator of the top parameter `a_{k+1}`.
    pub fn top_generator(&self) -> &RationalMatrix {
        self.generators.last().expect("family has generators")
    }
}

/// Generator of `a_m` (1-based) in size `n`.
pub fn pattern_generator(n: usize, m: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |i, j| {
        let (i1, j1) = (i + 1, j + 1);
        if i1 + j1 == 2 * m && i1 + j1 <= n + 1 {
            if i1 % 2 == 1 { rat(1) } else { rat(-1) }
        } else {
            Rational::zero()
        }
    })
}

pub fn pattern_family(n: usize) -> Result<FixedQuadricFamily> {
    let k = check_odd(n)?;
    Ok(FixedQuadricFamily { n, k, generators: (1..=k + 1).map(|m| pattern_generator(n, m)).collect() })
}

/// `A_(n)`: antidiagonal `1, −1, 1, …` starting at the top-right corner.
pub fn t_fixed_point(n: usize) -> Result<RationalMatrix> {
    let k = check_odd(n)?;
    Ok(pattern_generator(n, k + 1))
}

/// `k, k−1, …, −k`, the exponents of `λ(t)`.
pub fn torus_exponents(n: usize) -> Result<Vec<i64>> {
    let k = check_odd(n)? as i64;
    Ok((0..n as i64).map(|i| k - i).collect())
}

/// `λ(t)` at a concrete nonzero rational `t`.
pub fn torus_element(n: usize, t: &Rational) -> Result<RationalMatrix> {
    if t.is_zero() {
        return Err(Error::Domain("t = 0 is not in the torus".into()));
    }
    let exps = torus_exponents(n)?;
    Ok(RationalMatrix::diagonal(exps.iter().map(|&e| symbolic::pow_signed(t, e)).collect()))
}

/// `λ(t) A λ(t)^T` for the generic family member, symbolic in `t` and the `a_m`.
pub fn conjugated_family(n: usize) -> Result<MonomialMatrix> {
    pattern_family(n)?.generic().conjugate_by_diagonal(&torus_exponents(n)?)
}

/// How a diagonal matrix `diag(s_i x^{e_i})` (signs `s_i = ±1`) acts on each
/// generator: `Some((sign, exponent))` if the generator is sent to
/// `sign · x^exponent` times itself, `None` if it leaves the family.
pub fn diagonal_action_on_generators(
    family: &FixedQuadricFamily,
    signs: &[i64],
    exponents: &[i64],
) -> Vec<Option<(i64, i64)>> {
    family
        .generators
        .iter()
        .map(|g| {
            let mut scale: Option<(i64, i64)> = None;
            for i in 0..family.n {
                for j in 0..family.n {
                    if g.get(i, j).is_zero() {
                        continue;
                    }
                    let here = (signs[i] * signs[j], exponents[i] + exponents[j]);
                    match scale {
                        None => scale = Some(here),
                        Some(s) if s == here => {}
                        Some(_) => return None,
                    }
                }
            }
            scale
        })
        .collect()
}

/// Converse check over one prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusConverse {
    pub p: u32,
    /// Projective classes of diagonal matrices preserving the family.
    pub preserving: usize,
    /// Projective classes of the form `diag(μ^j α^{k−j})`, `μ = ±1`.
    pub of_stated_form: usize,
    pub sets_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusFixReport {
    pub n: usize,
    /// `t`-exponent picked up by each parameter `a_1..a_{k+1}` under `λ(t)`.
    pub parameter_exponents: Vec<i64>,
    pub lambda_preserves: bool,
    pub all_exponents_even: bool,
    pub sign_variant_preserves: bool,
    pub converse: Vec<TorusConverse>,
}

impl TorusFixReport {
    pub fn holds(&self) -> bool {
        self.lambda_preserves
            && self.all_exponents_even
            && self.sign_variant_preserves
            && self.converse.iter().all(|c| c.sets_equal)
    }
}

/// Largest `n` for which the finite-field converse is searched.
pub const TORUS_CONVERSE_MAX_N: usize = 5;
pub const TORUS_CONVERSE_PRIMES: [u32; 3] = [5, 7, 11];

/// Symbolic check that `λ(t)` (and its `μ = −1` twist) maps the family to
/// itself, plus an exhaustive finite-field search showing no other diagonal
/// matrices do (projectively) for `n ≤ 5`.
pub fn torus_fixes_family(n: usize) -> Result<TorusFixReport> {
    let family = pattern_family(n)?;
    let k = family.k as i64;
    let exps = torus_exponents(n)?;
    let plus = vec![1; n];
    let lambda = diagonal_action_on_generators(&family, &plus, &exps);
    let lambda_preserves = lambda.iter().all(|s| matches!(s, Some((1, _))));
    let conj = family.generic().conjugate_by_diagonal(&exps)?;
    let parameter_exponents: Vec<i64> =
        conj.parameter_exponents().into_iter().map(|e| e.unwrap_or(i64::MIN)).collect();
    let all_exponents_even = parameter_exponents.iter().all(|e| *e != i64::MIN && e % 2 == 0);

    let twist_signs: Vec<i64> = (0..n).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    let twist_exps: Vec<i64> = (0..n as i64).map(|j| k - j).collect();
    let sign_variant_preserves = diagonal_action_on_generators(&family, &twist_signs, &twist_exps)
        .iter()
        .all(Option::is_some);

    let converse = if n <= TORUS_CONVERSE_MAX_N {
        TORUS_CONVERSE_PRIMES
            .iter()
            .map(|&p| torus_converse(&family, p))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(TorusFixReport {
        n,
        parameter_exponents,
        lambda_preserves,
        all_exponents_even,
        sign_variant_preserves,
        converse,
    })
}

fn torus_converse(family: &FixedQuadricFamily, p: u32) -> Result<TorusConverse> {
    let f = PrimeField::new(p)?;
    let n = family.n;
    let k = family.k as u32;
    let supports: Vec<Vec<(usize, usize)>> = family
        .generators
        .iter()
        .map(|g| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !g.get(i, j).is_zero())
                .collect()
        })
        .collect();
    // representatives with d_1 = 1
    let mut preserving = BTreeSet::new();
    let units = (p - 1) as usize;
    let total = units.pow(n as u32 - 1);
    for code in 0..total {
        let mut d = vec![1u32; n];
        let mut c = code;
        for slot in d.iter_mut().skip(1) {
            *slot = (c % units) as u32 + 1;
            c /= units;
        }
        let ok = supports.iter().all(|supp| {
            let vals: BTreeSet<u32> = supp.iter().map(|&(i, j)| f.mul(d[i], d[j])).collect();
            vals.len() <= 1
        });
        if ok {
            preserving.insert(d);
        }
    }
    let mut stated = BTreeSet::new();
    for alpha in f.units() {
        for mu in [1, p - 1] {
            let raw: Vec<u32> = (0..n as u32)
                .map(|j| {
                    let sign = f.pow(mu, j);
                    let a = if j <= k { f.pow(alpha, k - j) } else { f.inv(f.pow(alpha, j - k)) };
                    f.mul(sign, a)
                })
                .collect();
            let lead = f.inv(raw[0]);
            stated.insert(raw.iter().map(|&x| f.mul(x, lead)).collect::<Vec<u32>>());
        }
    }
    Ok(TorusConverse {
        p,
        preserving: preserving.len(),
        of_stated_form: stated.len(),
        sets_equal: preserving == stated,
    })
}

/// `lim_{t→0} λ(t) A λ(t)^T` for `A = Σ a_m G_m` with `a_{k+1} ≠ 0`.
pub fn torus_limit(n: usize, params: &[Rational]) -> Result<RationalMatrix> {
    let family = pattern_family(n)?;
    if params.len() != family.k + 1 {
        return Err(Error::Dimension(format!("{} parameters for n = {n}", params.len())));
    }
    if params[family.k].is_zero() {
        return Err(Error::Domain("a_{k+1} = 0: the point is not a nondegenerate quadric".into()));
    }
    family.generic().conjugate_by_diagonal(&torus_exponents(n)?)?.limit_at_zero(params)
}

/// Result of the symbolic uniqueness argument for the `λ`-fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointUniqueness {
    /// Exponents of `a_1..a_{k+1}` are pairwise distinct, so a projectively
    /// fixed member has exactly one nonzero parameter.
    pub exponents_distinct: bool,
    /// Which single-parameter members are nondegenerate (1-based parameter indices).
    pub nondegenerate_coordinates: Vec<usize>,
}

impl FixedPointUniqueness {
    pub fn unique_is_top(&self, k: usize) -> bool {
        self.exponents_distinct && self.nondegenerate_coordinates == vec![k + 1]
    }
}

pub fn t_fixed_point_uniqueness(n: usize) -> Result<FixedPointUniqueness> {
    let family = pattern_family(n)?;
    let exps = conjugated_family(n)?.parameter_exponents();
    let distinct: BTreeSet<Option<i64>> = exps.iter().copied().collect();
    let exponents_distinct = exps.iter().all(Option::is_some) && distinct.len() == exps.len();
    let nondegenerate_coordinates = family
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_invertible())
        .map(|(m, _)| m + 1)
        .collect();
    Ok(FixedPointUniqueness { exponents_distinct, nondegenerate_coordinates })
}

/// How the (non)existence of a nondegenerate fixed quadric was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NondegeneracyCertificate {
    /// An invertible `u`-fixed matrix and its determinant.
    Witness { matrix: RationalMatrix, det: Rational },
    /// The determinant of the generic fixed matrix expands to the zero polynomial.
    SymbolicZero { basis_dim: usize },
    /// Probabilistic: every sampled member was singular.
    Sampled { samples: usize, basis_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondegenerateReport {
    pub n: usize,
    pub exists: bool,
    pub certificate: NondegeneracyCertificate,
}

impl NondegenerateReport {
    pub fn is_probabilistic(&self) -> bool {
        matches!(self.certificate, NondegeneracyCertificate::Sampled { .. })
    }
}

pub fn nondegenerate_exists(n: usize) -> Result<NondegenerateReport> {
    nondegenerate_exists_with(n, DEFAULT_RANK_SAMPLES, 0x5eed)
}

pub fn nondegenerate_exists_with(n: usize, samples: usize, seed: u64) -> Result<NondegenerateReport> {
    check_size(n)?;
    if n % 2 == 1 {
        let a = t_fixed_point(n)?;
        if !is_u_fixed(&a, &jordan_nilpotent(n)?)? {
            return Err(Error::Inconsistency("A_(n) is not u-fixed".into()));
        }
        let det = a.det()?;
        return Ok(NondegenerateReport {
            n,
            exists: !det.is_zero(),
            certificate: NondegeneracyCertificate::Witness { matrix: a, det },
        });
    }
    let basis = fixed_symmetric_space(n)?;
    let basis_dim = basis.len();
    if n <= SYMBOLIC_DET_LIMIT {
        let det = generic_determinant(&basis)?;
        return Ok(NondegenerateReport {
            n,
            exists: !det.is_zero(),
            certificate: NondegeneracyCertificate::SymbolicZero { basis_dim },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exists = false;
    for _ in 0..samples {
        let coeffs: Vec<Rational> = (0..basis_dim).map(|_| random_rational(&mut rng, SAMPLE_HEIGHT)).collect();
        let mut a = RationalMatrix::zeros(n, n);
        for (b, c) in basis.iter().zip(&coeffs) {
            a = &a + &b.scale(c);
        }
        if a.is_invertible() {
            exists = true;
            break;
        }
    }
    Ok(NondegenerateReport { n, exists, certificate: NondegeneracyCertificate::Sampled { samples, basis_dim } })
}

/// `det(Σ c_m B_m)` as a polynomial in the `c_m`.
pub fn generic_determinant(basis: &[RationalMatrix]) -> Result<MultiPoly> {
    let generic = MonomialMatrix::generic(basis)?;
    let n = generic.size();
    let vars = generic.vars();
    let entries: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| (0..n).map(|j| MultiPoly::from_linear(generic.get(i, j).coeff())).collect())
        .collect();
    symbolic::symbolic_det(&entries, vars)
}

/// Rational with numerator in `[-h, h]` and denominator in `[1, h]`.
pub fn random_rational<R: Rng>(rng: &mut R, h: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-h..=h)), BigInt::from(rng.gen_range(1..=h)))
}

/// Nonzero variant of [`random_rational`].
pub fn random_nonzero_rational<R: Rng>(rng: &mut R, h: i64) -> Rational {
    loop {
        let x = random_rational(rng, h);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Setting `a_{k+1} = 0` in size `m` leaves exactly the size `m − 2` pattern
/// in the top-left corner, with the last two rows and columns zero.
pub fn closure_stratum_check(m: usize) -> Result<bool> {
    let k = check_odd(m)?;
    if m < 3 {
        return Err(Error::Domain("closure stratification needs m >= 3".into()));
    }
    let big = pattern_family(m)?;
    let small = pattern_family(m - 2)?;
    for (idx, g) in big.generators[..k].iter().enumerate() {
        if g.top_left(m - 2, m - 2) != small.generators[idx] {
            return Ok(false);
        }
        let outside = (0..m).any(|i| (m - 2..m).any(|j| !g.get(i, j).is_zero() || !g.get(j, i).is_zero()));
        if outside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One fixed-quadric family per part of `gamma`.
pub fn block_family(gamma: &OddComposition) -> Result<Vec<FixedQuadricFamily>> {
    gamma.parts().iter().map(|&p| pattern_family(p as usize)).collect()
}

/// `A_γ = blockdiag(A_(γ_1), …, A_(γ_k))`.
pub fn block_fixed_point(gamma: &OddComposition) -> Result<RationalMatrix> {
    let blocks = gamma
        .parts()
        .iter()
        .map(|&p| t_fixed_point(p as usize))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::block_diag(&blocks))
}

/// `blockdiag(λ_{γ_1}(t), …)`: the torus acting on each quotient of the flag.
pub fn block_torus_exponents(gamma: &OddComposition) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for &p in gamma.parts() {
        out.extend(torus_exponents(p as usize)?);
    }
    Ok(out)
}

/// Diagonal blocks of `u = exp(N)` along `gamma`: the maps induced on `V_i / V_{i−1}`.
pub fn induced_unipotents(gamma: &OddComposition) -> Result<Vec<RationalMatrix>> {
    let u = unipotent_exp(&jordan_nilpotent(gamma.n() as usize)?)?;
    let mut out = Vec::new();
    let mut start = 0;
    for &p in gamma.parts() {
        let p = p as usize;
        out.push(RationalMatrix::from_fn(p, p, |i, j| u.get(start + i, start + j).clone()));
        start += p;
    }
    Ok(out)
}

/// Coefficient vector `(a_1, …, a_{k+1})` of `a` in the pattern basis, if it lies in the family.
pub fn family_coordinates(family: &FixedQuadricFamily, a: &RationalMatrix) -> Option<Vec<Rational>> {
    let coords: Vec<Rational> = (1..=family.k + 1).map(|m| a.get(0, 2 * m - 2).clone()).collect();
    (family.element(&coords).ok()? == *a).then_some(coords)
}

/// Forms `Σ_m G_m[i][j] a_m` for every entry, as a convenience for reports.
pub fn family_forms(family: &FixedQuadricFamily) -> Vec<Vec<LinearForm>> {
    let g = family.generic();
    (0..family.n)
        .map(|i| (0..family.n).map(|j| g.get(i, j).coeff().clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::matrix::ratio;
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_nilpotent(2).unwrap(), m(&[&[0, 1], &[0, 0]]));
        assert_eq!(jordan_nilpotent(1).unwrap(), m(&[&[0]]));
        let n4 = jordan_nilpotent(4).unwrap();
        assert_eq!(n4.rank(), 3);
        assert!(n4.pow(4).unwrap().is_zero());
        assert!(!n4.pow(3).unwrap().is_zero());
        assert!(jordan_nilpotent(0).is_err());
    }

    #[test]
    fn exp_examples() {
        let u3 = unipotent_exp(&jordan_nilpotent(3).unwrap()).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(1), ratio(1, 2)],
            vec![rat(0), rat(1), rat(1)],
            vec![rat(0), rat(0), rat(1)],
        ])
        .unwrap();
        assert_eq!(u3, expected);
        assert_eq!(unipotent_exp(&jordan_nilpotent(1).unwrap()).unwrap(), m(&[&[1]]));
        let u5 = unipotent_exp(&jordan_nilpotent(5).unwrap()).unwrap();
        assert_eq!(u5.get(0, 4), &ratio(1, 24));
        assert_eq!(u5.det().unwrap(), rat(1));
        assert!(unipotent_exp(&m(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn log_inverts_exp() {
        for n in 1..=6 {
            let nil = jordan_nilpotent(n).unwrap();
            assert_eq!(unipotent_log(&unipotent_exp(&nil).unwrap()).unwrap(), nil);
        }
    }

    #[test]
    fn fixedness_examples() {
        let nil = jordan_nilpotent(3).unwrap();
        let a3 = m(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        assert!(is_u_fixed(&a3, &nil).unwrap());
        assert!(!is_u_fixed(&RationalMatrix::identity(3), &nil).unwrap());
        assert!(is_u_fixed(&RationalMatrix::zeros(3, 3), &nil).unwrap());
        assert!(is_u_fixed(&m(&[&[0, 1], &[0, 0]]), &jordan_nilpotent(2).unwrap()).is_err());
        assert!(is_u_fixed(&a3, &jordan_nilpotent(2).unwrap()).is_err());
        let u = unipotent_exp(&nil).unwrap();
        assert!(is_fixed_by_action(&a3, &u).unwrap());
        assert_eq!(action_scalar(&a3, &u).unwrap(), Some(rat(1)));
    }

    #[test]
    fn fixed_space_examples() {
        let b3 = fixed_symmetric_space(3).unwrap();
        assert_eq!(b3.len(), 2);
        assert!(same_span(&b3, &pattern_family(3).unwrap().generators));
        assert_eq!(fixed_symmetric_space(1).unwrap().len(), 1);
        assert_eq!(fixed_symmetric_space(4).unwrap().len(), 2);
    }

    #[test]
    fn pattern_examples() {
        let f3 = pattern_family(3).unwrap();
        assert_eq!(f3.generators[0], m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(f3.generators[1], m(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]));
        assert_eq!(pattern_family(1).unwrap().generators, vec![m(&[&[1]])]);
        let f7 = pattern_family(7).unwrap();
        assert_eq!(f7.generators.len(), 4);
        assert_eq!(span_dimension(&f7.generators), 4);
        assert!(pattern_family(4).is_err());
        let generic = f3.element(&[rat(5), rat(7)]).unwrap();
        assert_eq!(generic, m(&[&[5, 0, 7], &[0, -7, 0], &[7, 0, 0]]));
        assert_eq!(family_coordinates(&f3, &generic), Some(vec![rat(5), rat(7)]));
        assert_eq!(family_coordinates(&f3, &RationalMatrix::identity(3)), None);
    }

    #[test]
    fn nondegenerate_examples() {
        let r3 = nondegenerate_exists(3).unwrap();
        assert!(r3.exists);
        match r3.certificate {
            NondegeneracyCertificate::Witness { det, .. } => assert_eq!(det, rat(1)),
            other => panic!("unexpected certificate {other:?}"),
        }
        let r2 = nondegenerate_exists(2).unwrap();
        assert!(!r2.exists);
        assert!(!r2.is_probabilistic());
        assert!(nondegenerate_exists(5).unwrap().exists);
    }

    #[test]
    fn sampled_even_case() {
        let r = nondegenerate_exists_with(10, 20, 1).unwrap();
        assert!(!r.exists);
        assert!(r.is_probabilistic());
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_exponents(3).unwrap(), vec![1, 0, -1]);
        assert_eq!(torus_element(1, &rat(9)).unwrap(), m(&[&[1]]));
        let t5 = torus_element(5, &rat(2)).unwrap();
        assert_eq!(
            t5,
            RationalMatrix::diagonal(vec![rat(4), rat(2), rat(1), ratio(1, 2), ratio(1, 4)])
        );
        assert_eq!(t5.det().unwrap(), rat(1));
        assert!(torus_element(3, &rat(0)).is_err());
    }

    #[test]
    fn torus_fixes_examples() {
        let r3 = torus_fixes_family(3).unwrap();
        assert!(r3.holds());
        assert_eq!(r3.parameter_exponents, vec![2, 0]);
        assert!(torus_fixes_family(1).unwrap().holds());
        let r5 = torus_fixes_family(5).unwrap();
        assert!(r5.holds());
        assert_eq!(r5.parameter_exponents, vec![4, 2, 0]);
        assert_eq!(r5.converse.len(), 3);
    }

    #[test]
    fn torus_limit_examples() {
        let a3 = t_fixed_point(3).unwrap();
        assert_eq!(torus_limit(3, &[rat(1), rat(1)]).unwrap(), a3);
        assert_eq!(torus_limit(3, &[rat(0), rat(1)]).unwrap(), a3);
        assert_eq!(
            torus_limit(5, &[rat(1), rat(2), rat(3)]).unwrap(),
            t_fixed_point(5).unwrap().scale(&rat(3))
        );
        assert!(matches!(torus_limit(3, &[rat(1), rat(0)]), Err(Error::Domain(_))));
        assert!(torus_limit(3, &[rat(1)]).is_err());
    }

    #[test]
    fn wrong_direction_has_no_limit() {
        // λ(t)^{-1} pushes a_1 to t^{-2}
        let f = pattern_family(3).unwrap();
        let exps: Vec<i64> = torus_exponents(3).unwrap().iter().map(|e| -e).collect();
        let conj = f.generic().conjugate_by_diagonal(&exps).unwrap();
        assert!(matches!(conj.limit_at_zero(&[rat(1), rat(1)]), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(t_fixed_point(3).unwrap(), m(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]));
        assert_eq!(t_fixed_point(1).unwrap(), m(&[&[1]]));
        let a5 = t_fixed_point(5).unwrap();
        for i in 0..5 {
            let expected = if i % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(a5.get(i, 4 - i), &expected);
        }
        assert!(a5.is_symmetric() && a5.is_invertible());
        for n in [1, 3, 5, 7] {
            assert!(t_fixed_point_uniqueness(n).unwrap().unique_is_top((n - 1) / 2));
        }
    }

    #[test]
    fn closure_strata() {
        for mm in [3, 5, 7, 9] {
            assert!(closure_stratum_check(mm).unwrap());
        }
        assert!(closure_stratum_check(1).is_err());
    }

    #[test]
    fn block_examples() {
        let g33 = OddComposition::new(vec![3, 3]).unwrap();
        let fams = block_family(&g33).unwrap();
        assert_eq!(fams.len(), 2);
        let a3 = t_fixed_point(3).unwrap();
        assert_eq!(block_fixed_point(&g33).unwrap(), RationalMatrix::block_diag(&[a3.clone(), a3]));
        let g11 = OddComposition::new(vec![1, 1]).unwrap();
        assert_eq!(block_family(&g11).unwrap().iter().map(|f| f.projective_dim()).sum::<usize>(), 0);
        let g51 = OddComposition::new(vec![5, 1]).unwrap();
        let dims: Vec<usize> = block_family(&g51).unwrap().iter().map(|f| f.projective_dim()).collect();
        assert_eq!(dims, vec![2, 0]);
    }

    #[test]
    fn induced_blocks_fix_block_points() {
        let g = OddComposition::new(vec![3, 1, 5]).unwrap();
        let blocks = induced_unipotents(&g).unwrap();
        for (u, &p) in blocks.iter().zip(g.parts()) {
            assert_eq!(*u, unipotent_exp(&jordan_nilpotent(p as usize).unwrap()).unwrap());
            assert!(is_fixed_by_action(&t_fixed_point(p as usize).unwrap(), u).unwrap());
        }
    }
}
