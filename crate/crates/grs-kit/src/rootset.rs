//! The generalized root system data model: axiom checking, primitive roots
//! and multipliers, bases and chambers, parabolic subsystems, integrality and
//! equivalence. Everything here is a pure function on immutable values.

use crate::algebra::{fmt_rat, Mat, Rat, RootVec, SymForm};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSetError {
    #[error("empty root set")]
    EmptyRootSet,
    #[error("form is not positive definite")]
    FormNotPositiveDefinite,
    #[error("form rank {form} does not match root dimension {roots}")]
    DimMismatch { form: usize, roots: usize },
    #[error("interior point lies on the hyperplane of root {0}")]
    PointOnHyperplane(RootVec),
    #[error("{0} is not a root of the set")]
    NotARoot(RootVec),
    #[error("{0} is not primitive")]
    NotPrimitive(RootVec),
    #[error("ambient rank {0} is too small")]
    RankTooSmall(usize),
    #[error("generators are not a subset of the root set")]
    GeneratorsNotSubset,
    #[error("no base found: {0}")]
    NoBase(String),
}

/// A finite set of vectors containing zero, with value-equality membership.
/// `dim` is the dimension of the ambient coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub dim: usize,
    pub roots: BTreeSet<RootVec>,
}

impl RootSet {
    /// Build from arbitrary vectors, as given (plus nothing). The axioms
    /// detect missing zero or negations.
    pub fn new(dim: usize, roots: impl IntoIterator<Item = RootVec>) -> Self {
        RootSet {
            dim,
            roots: roots.into_iter().collect(),
        }
    }

    /// Build from positive roots: stores `{0} ∪ P ∪ -P`.
    pub fn from_positive(dim: usize, positive: impl IntoIterator<Item = RootVec>) -> Self {
        let mut roots: BTreeSet<RootVec> = BTreeSet::new();
        roots.insert(RootVec::zero(dim));
        for p in positive {
            roots.insert(p.neg());
            roots.insert(p);
        }
        RootSet { dim, roots }
    }

    pub fn contains(&self, v: &RootVec) -> bool {
        self.roots.contains(v)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &RootVec> {
        self.roots.iter().filter(|r| !r.is_zero())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `(|R| - 1) / 2`, the number of positive roots of a validated set.
    pub fn half_root_count(&self) -> usize {
        (self.len() - 1) / 2
    }

    /// `|W(R)| / 2`, the number of positive primitive roots.
    pub fn half_primitive_count(&self) -> usize {
        primitive_roots(self).len() / 2
    }

    /// Rank of the span of the roots.
    pub fn span_rank(&self) -> usize {
        Mat::new(self.nonzero().map(|r| r.0.clone()).collect()).rank()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RootVec> {
        self.roots.iter()
    }
}

/// A root set paired with a compatible positive-definite form.
#[derive(Debug, Clone)]
pub struct Grs {
    pub roots: RootSet,
    pub form: SymForm,
}

impl Grs {
    pub fn new(roots: RootSet, form: SymForm) -> Self {
        Grs { roots, form }
    }

    pub fn rank(&self) -> usize {
        self.roots.dim
    }

    pub fn is_valid(&self) -> bool {
        matches!(check_grs_axioms(&self.roots, &self.form), Ok(v) if v.is_valid())
    }
}

/// Which clause of the defining axioms a pair violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The roots do not span the ambient space (axiom i).
    SpanDeficient { found_rank: usize },
    /// `(α,β) < 0` but `α+β ∉ R`.
    SumMissing { alpha: RootVec, beta: RootVec },
    /// `(α,β) > 0` but `α-β ∉ R`.
    DiffMissing { alpha: RootVec, beta: RootVec },
    /// `(α,β) = 0` but exactly one of `α±β` lies in `R`.
    ZeroAsymmetric { alpha: RootVec, beta: RootVec },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SpanDeficient { found_rank } => {
                write!(f, "roots span only rank {found_rank}")
            }
            Violation::SumMissing { alpha, beta } => {
                write!(f, "({alpha},{beta}) < 0 but sum is missing")
            }
            Violation::DiffMissing { alpha, beta } => {
                write!(f, "({alpha},{beta}) > 0 but difference is missing")
            }
            Violation::ZeroAsymmetric { alpha, beta } => {
                write!(f, "({alpha},{beta}) = 0 but only one of sum/difference present")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Valid => &[],
            Verdict::Invalid(v) => v,
        }
    }
}

/// Check the defining axioms of a generalized root system for every ordered
/// pair of roots, plus the span condition.
pub fn check_grs_axioms(roots: &RootSet, form: &SymForm) -> Result<Verdict, RootSetError> {
    if roots.is_empty() {
        return Err(RootSetError::EmptyRootSet);
    }
    if form.rank_dim() != roots.dim {
        return Err(RootSetError::DimMismatch {
            form: form.rank_dim(),
            roots: roots.dim,
        });
    }
    if !form.is_positive_definite() {
        return Err(RootSetError::FormNotPositiveDefinite);
    }
    let mut violations = Vec::new();
    let span = roots.span_rank();
    if span != roots.dim {
        violations.push(Violation::SpanDeficient { found_rank: span });
    }
    let all: Vec<&RootVec> = roots.iter().collect();
    let membership: HashSet<&RootVec> = all.iter().copied().collect();
    // Precompute G·β once per root.
    let paired: Vec<RootVec> = all.iter().map(|b| form.matrix().apply(b)).collect();
    for (ai, &alpha) in all.iter().enumerate() {
        for (bi, &beta) in all.iter().enumerate() {
            if ai == bi {
                continue;
            }
            let inner = alpha
                .0
                .iter()
                .zip(&paired[bi].0)
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
            let sum_in = membership.contains(&alpha.add(beta));
            let diff_in = membership.contains(&alpha.sub(beta));
            if inner.is_negative() && !sum_in {
                violations.push(Violation::SumMissing {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            } else if inner.is_positive() && !diff_in {
                violations.push(Violation::DiffMissing {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            } else if inner.is_zero() && sum_in != diff_in {
                violations.push(Violation::ZeroAsymmetric {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(Verdict::Valid)
    } else {
        Ok(Verdict::Invalid(violations))
    }
}

/// The reduced root set `W(R)`: nonzero roots that are not proper integer
/// multiples of another root.
pub fn primitive_roots(roots: &RootSet) -> BTreeSet<RootVec> {
    roots
        .nonzero()
        .filter(|alpha| {
            !roots.nonzero().any(|beta| {
                if let Some(k) = alpha.ratio_to(beta) {
                    k.denom().is_one() && k.numer().abs() >= BigInt::from(2)
                } else {
                    false
                }
            })
        })
        .cloned()
        .collect()
}

/// The multiplier of a primitive root: the largest `k` with `kα ∈ R`.
pub fn multiplier(roots: &RootSet, alpha: &RootVec) -> Result<u32, RootSetError> {
    if !roots.contains(alpha) || alpha.is_zero() {
        return Err(RootSetError::NotARoot(alpha.clone()));
    }
    if !primitive_roots(roots).contains(alpha) {
        return Err(RootSetError::NotPrimitive(alpha.clone()));
    }
    let mut k = 1u32;
    loop {
        let next = alpha.scale(&Rat::from_integer(BigInt::from(k + 1)));
        if roots.contains(&next) {
            k += 1;
        } else {
            return Ok(k);
        }
    }
}

/// A base (simple system) together with its positive system and an interior
/// point of the corresponding chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub simple_roots: Vec<RootVec>,
    pub positive_roots: Vec<RootVec>,
    pub interior_point: RootVec,
}

impl Chamber {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Exact coordinates of `v` with respect to the ordered base.
    pub fn coordinates(&self, v: &RootVec) -> Vec<Rat> {
        let dim = v.dim();
        let mut cols = Mat::zero(dim, self.simple_roots.len());
        for (j, s) in self.simple_roots.iter().enumerate() {
            for i in 0..dim {
                cols.rows[i][j] = s.0[i].clone();
            }
        }
        let sol = crate::algebra::solve_linear(&cols, &v.0)
            .expect("shape")
            .expect("v must lie in the span of the base");
        sol.particular
            .map(|p| p.0)
            .unwrap_or_else(|| vec![Rat::zero(); self.simple_roots.len()])
    }

    /// Matrix whose columns are the simple roots.
    pub fn base_matrix(&self) -> Mat {
        let dim = self.simple_roots[0].dim();
        let mut m = Mat::zero(dim, self.simple_roots.len());
        for (j, s) in self.simple_roots.iter().enumerate() {
            for i in 0..dim {
                m.rows[i][j] = s.0[i].clone();
            }
        }
        m
    }
}

fn max_abs_coord(roots: &RootSet) -> BigInt {
    let mut m = BigInt::one();
    for r in roots.nonzero() {
        for c in &r.0 {
            let ceil = c.abs().ceil().to_integer();
            if ceil > m {
                m = ceil;
            }
        }
    }
    m
}

/// Deterministic generic interior point: tries `(1, t, t², …)` for
/// `t = M, M+1, …` with `M = 1 + max |coordinate|` until the candidate is
/// orthogonal to no nonzero root under `form`.
fn deterministic_interior_point(roots: &RootSet, form: &SymForm) -> RootVec {
    let dim = roots.dim;
    let mut t = max_abs_coord(roots) + BigInt::one();
    loop {
        let mut coords = Vec::with_capacity(dim);
        let mut power = Rat::one();
        for _ in 0..dim {
            coords.push(power.clone());
            power *= Rat::from_integer(t.clone());
        }
        let zeta = RootVec(coords);
        if roots.nonzero().all(|r| !form.pair(r, &zeta).is_zero()) {
            return zeta;
        }
        t += BigInt::one();
    }
}

fn positive_system(roots: &RootSet, form: &SymForm, zeta: &RootVec) -> Vec<RootVec> {
    roots
        .nonzero()
        .filter(|r| form.pair(r, zeta).is_positive())
        .cloned()
        .collect()
}

/// Indecomposable elements of a positive system: those not a sum of two
/// members.
fn indecomposables(positive: &[RootVec]) -> Vec<RootVec> {
    let members: HashSet<&RootVec> = positive.iter().collect();
    let mut base: Vec<RootVec> = positive
        .iter()
        .filter(|&pi| {
            !positive.iter().any(|a| {
                if a == pi {
                    return false;
                }
                let rest = pi.sub(a);
                !rest.is_zero() && members.contains(&rest)
            })
        })
        .cloned()
        .collect();
    base.sort();
    base
}

fn chamber_from_positive(positive: Vec<RootVec>, form: &SymForm) -> Result<Chamber, RootSetError> {
    let mut positive = positive;
    positive.sort();
    let base = indecomposables(&positive);
    let dim = positive
        .first()
        .map(|r| r.dim())
        .ok_or(RootSetError::EmptyRootSet)?;
    if base.len() != dim {
        return Err(RootSetError::NoBase(format!(
            "{} indecomposables in rank {}",
            base.len(),
            dim
        )));
    }
    // Interior point: solve (s_i, ζ) = 1 for every simple root.
    let mut bt_g = Mat::zero(dim, dim);
    for (i, s) in base.iter().enumerate() {
        let gs = form.matrix().apply(s);
        bt_g.rows[i] = gs.0;
    }
    let ones = vec![Rat::one(); dim];
    let zeta = crate::algebra::solve_linear(&bt_g, &ones)
        .expect("shape")
        .ok_or_else(|| RootSetError::NoBase("degenerate base".into()))?
        .particular
        .expect("inhomogeneous");
    Ok(Chamber {
        simple_roots: base,
        positive_roots: positive,
        interior_point: zeta,
    })
}

/// Base and positive system for the chamber containing `interior_point`
/// (or a deterministic generic point when absent).
pub fn find_base(grs: &Grs, interior_point: Option<&RootVec>) -> Result<Chamber, RootSetError> {
    let zeta = match interior_point {
        Some(z) => {
            if let Some(bad) = grs
                .roots
                .nonzero()
                .find(|r| grs.form.pair(r, z).is_zero())
            {
                return Err(RootSetError::PointOnHyperplane(bad.clone()));
            }
            z.clone()
        }
        None => deterministic_interior_point(&grs.roots, &grs.form),
    };
    let positive = positive_system(&grs.roots, &grs.form, &zeta);
    chamber_from_positive(positive, &grs.form)
}

fn flip_wall(positive: &[RootVec], simple: &RootVec) -> Vec<RootVec> {
    positive
        .iter()
        .map(|r| match r.ratio_to(simple) {
            Some(k) if k.is_positive() => r.neg(),
            _ => r.clone(),
        })
        .collect()
}

fn enumerate_chambers_inner(
    roots: &RootSet,
    form: &SymForm,
) -> Result<Vec<Chamber>, RootSetError> {
    let start = find_base(&Grs::new(roots.clone(), form.clone()), None)?;
    let mut seen: BTreeSet<Vec<RootVec>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(start.positive_roots.clone());
    queue.push_back(start);
    while let Some(chamber) = queue.pop_front() {
        for s in &chamber.simple_roots {
            let flipped = flip_wall(&chamber.positive_roots, s);
            let next = chamber_from_positive(flipped, form)?;
            if seen.insert(next.positive_roots.clone()) {
                queue.push_back(next);
            }
        }
        out.push(chamber);
    }
    out.sort_by(|a, b| a.positive_roots.cmp(&b.positive_roots));
    Ok(out)
}

/// Breadth-first wall-flip walk over all chambers. Output is sorted by the
/// positive system, independent of walk order.
pub fn enumerate_chambers(grs: &Grs) -> Result<Vec<Chamber>, RootSetError> {
    enumerate_chambers_inner(&grs.roots, &grs.form)
}

/// Chamber walk using the standard dot product as auxiliary pairing. The
/// family of positive systems of a root set does not depend on the choice of
/// positive-definite form, so this serves form-free searches.
pub fn chambers_of_root_set(roots: &RootSet) -> Result<Vec<Chamber>, RootSetError> {
    enumerate_chambers_inner(roots, &SymForm::identity(roots.dim))
}

/// True iff every primitive root has integral coordinates in every chamber.
pub fn is_crystallographic(grs: &Grs) -> Result<bool, RootSetError> {
    let primitives = primitive_roots(&grs.roots);
    let chambers = enumerate_chambers(grs)?;
    for chamber in &chambers {
        for p in &primitives {
            let coords = chamber.coordinates(p);
            if !coords.iter().all(|c| c.denom().is_one()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `R ∩ span(generators)`, which inherits the GRS structure.
pub fn parabolic_closure(
    roots: &RootSet,
    generators: &[RootVec],
) -> Result<RootSet, RootSetError> {
    if !generators.iter().all(|g| roots.contains(g)) {
        return Err(RootSetError::GeneratorsNotSubset);
    }
    let (span, _) = Mat::new(generators.iter().map(|g| g.0.clone()).collect()).rref();
    let inside: BTreeSet<RootVec> = roots
        .iter()
        .filter(|r| r.is_zero() || span.rref_contains(r))
        .cloned()
        .collect();
    Ok(RootSet {
        dim: roots.dim,
        roots: inside,
    })
}

/// Express a parabolic closure as a standalone GRS of its own rank: roots in
/// coordinates of a canonical basis of the span, with the restricted form.
pub fn parabolic_as_grs(grs: &Grs, generators: &[RootVec]) -> Result<Grs, RootSetError> {
    let closure = parabolic_closure(&grs.roots, generators)?;
    let (span, _) = Mat::new(generators.iter().map(|g| g.0.clone()).collect()).rref();
    let basis: Vec<RootVec> = span
        .rows
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| RootVec(row.clone()))
        .collect();
    let k = basis.len();
    let dim = grs.rank();
    let mut cols = Mat::zero(dim, k);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..dim {
            cols.rows[i][j] = b.0[i].clone();
        }
    }
    let mut new_roots = BTreeSet::new();
    for r in closure.iter() {
        let sol = crate::algebra::solve_linear(&cols, &r.0)
            .expect("shape")
            .expect("closure roots lie in span");
        new_roots.insert(
            sol.particular
                .unwrap_or_else(|| RootVec::zero(k)),
        );
    }
    let mut gram = Mat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.rows[i][j] = grs.form.pair(&basis[i], &basis[j]);
        }
    }
    Ok(Grs::new(
        RootSet {
            dim: k,
            roots: new_roots,
        },
        SymForm::new(gram).expect("gram symmetric"),
    ))
}

/// All rank-2 parabolic subsystems containing `alpha`, one per 2-dimensional
/// span, in canonical order.
pub fn rank2_parabolics_containing(
    roots: &RootSet,
    alpha: &RootVec,
) -> Result<Vec<RootSet>, RootSetError> {
    if roots.dim < 2 {
        return Err(RootSetError::RankTooSmall(roots.dim));
    }
    if !roots.contains(alpha) || alpha.is_zero() {
        return Err(RootSetError::NotARoot(alpha.clone()));
    }
    let mut seen: BTreeSet<Mat> = BTreeSet::new();
    let mut out = Vec::new();
    for beta in roots.nonzero() {
        if beta.ratio_to(alpha).is_some() {
            continue;
        }
        let (span, _) = Mat::new(vec![alpha.0.clone(), beta.0.clone()]).rref();
        if seen.insert(span.clone()) {
            let members: BTreeSet<RootVec> = roots
                .iter()
                .filter(|r| r.is_zero() || span.rref_contains(r))
                .cloned()
                .collect();
            out.push(RootSet {
                dim: roots.dim,
                roots: members,
            });
        }
    }
    out.sort_by_key(|p| {
        (
            primitive_roots(p).len(),
            p.len(),
            p.roots.iter().cloned().collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rows.cmp(&other.rows)
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// True iff the graph on primitive roots with edges `(α,β) ≠ 0` is connected.
pub fn is_irreducible(roots: &RootSet, form: &SymForm) -> bool {
    let primitives: Vec<RootVec> = primitive_roots(roots).into_iter().collect();
    if primitives.is_empty() {
        return false;
    }
    let n = primitives.len();
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !visited[j] && !form.pair(&primitives[i], &primitives[j]).is_zero() {
                visited[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// Invariants preserved by any equivalence, used to prune the search and to
/// bucket scan results.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub root_count: usize,
    pub primitive_count: usize,
    pub multiplier_multiset: Vec<u32>,
    pub parabolic_profiles: Vec<Vec<usize>>,
}

/// Per-root invariant: multiplier plus the sorted sizes (primitive counts) of
/// the rank-2 parabolics through the root.
fn root_profile(roots: &RootSet, alpha: &RootVec) -> (u32, Vec<usize>) {
    let mult = multiplier(roots, alpha).unwrap_or(0);
    let mut sizes: Vec<usize> = rank2_parabolics_containing(roots, alpha)
        .map(|ps| ps.iter().map(|p| primitive_roots(p).len()).collect())
        .unwrap_or_default();
    sizes.sort();
    (mult, sizes)
}

pub fn fingerprint(roots: &RootSet) -> Fingerprint {
    let primitives = primitive_roots(roots);
    let mut multiplier_multiset: Vec<u32> = primitives
        .iter()
        .map(|p| multiplier(roots, p).unwrap_or(0))
        .collect();
    multiplier_multiset.sort();
    let mut parabolic_profiles: Vec<Vec<usize>> = primitives
        .iter()
        .map(|p| root_profile(roots, p).1)
        .collect();
    parabolic_profiles.sort();
    Fingerprint {
        dim: roots.dim,
        root_count: roots.len(),
        primitive_count: primitives.len(),
        multiplier_multiset,
        parabolic_profiles,
    }
}

/// An invertible linear map carrying one root set exactly onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceMap {
    pub matrix: Mat,
}

impl EquivalenceMap {
    pub fn apply(&self, v: &RootVec) -> RootVec {
        self.matrix.apply(v)
    }

    pub fn inverse(&self) -> Option<EquivalenceMap> {
        self.matrix.inverse().map(|m| EquivalenceMap { matrix: m })
    }
}

fn maps_onto(map: &Mat, source: &RootSet, target: &RootSet) -> bool {
    source.len() == target.len() && source.iter().all(|r| target.contains(&map.apply(r)))
}

/// Search for a vector-space isomorphism mapping `source` onto `target`.
/// Strategy: fix one base of the source, try every chamber base of the target
/// under every compatible ordered bijection, pruned by invariant
/// fingerprints. Returns the first witness in deterministic order.
pub fn equivalence(source: &RootSet, target: &RootSet) -> Option<EquivalenceMap> {
    if source.dim != target.dim {
        return None;
    }
    if fingerprint(source) != fingerprint(target) {
        return None;
    }
    let source_chamber = chambers_of_root_set(source).ok()?.into_iter().next()?;
    let source_base = &source_chamber.simple_roots;
    let r = source_base.len();
    let source_profiles: Vec<(u32, Vec<usize>)> = source_base
        .iter()
        .map(|s| root_profile(source, s))
        .collect();
    let mut target_profiles: BTreeMap<RootVec, (u32, Vec<usize>)> = BTreeMap::new();
    for p in primitive_roots(target) {
        let profile = root_profile(target, &p);
        target_profiles.insert(p, profile);
    }
    let source_cols = source_chamber.base_matrix();
    let source_inv = source_cols.inverse()?;
    let target_chambers = chambers_of_root_set(target).ok()?;
    let mut perm = vec![0usize; r];
    for chamber in &target_chambers {
        let base = &chamber.simple_roots;
        let mut used = vec![false; r];
        if assign_recursive(
            0,
            r,
            base,
            &source_profiles,
            &target_profiles,
            &mut used,
            &mut perm,
            &source_inv,
            source,
            target,
        ) {
            let mut cols = Mat::zero(source.dim, r);
            for (i, &j) in perm.iter().enumerate() {
                for k in 0..source.dim {
                    cols.rows[k][i] = base[j].0[k].clone();
                }
            }
            let map = cols.mul(&source_inv);
            debug_assert!(maps_onto(&map, source, target));
            return Some(EquivalenceMap { matrix: map });
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn assign_recursive(
    i: usize,
    r: usize,
    base: &[RootVec],
    source_profiles: &[(u32, Vec<usize>)],
    target_profiles: &BTreeMap<RootVec, (u32, Vec<usize>)>,
    used: &mut Vec<bool>,
    perm: &mut Vec<usize>,
    source_inv: &Mat,
    source: &RootSet,
    target: &RootSet,
) -> bool {
    if i == r {
        let mut cols = Mat::zero(source.dim, r);
        for (k, &j) in perm.iter().enumerate() {
            for d in 0..source.dim {
                cols.rows[d][k] = base[j].0[d].clone();
            }
        }
        let map = cols.mul(source_inv);
        return maps_onto(&map, source, target);
    }
    for j in 0..r {
        if used[j] {
            continue;
        }
        if let Some(tp) = target_profiles.get(&base[j]) {
            if *tp != source_profiles[i] {
                continue;
            }
        }
        used[j] = true;
        perm[i] = j;
        if assign_recursive(
            i + 1,
            r,
            base,
            source_profiles,
            target_profiles,
            used,
            perm,
            source_inv,
            source,
            target,
        ) {
            return true;
        }
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rint};

    fn a2() -> Grs {
        // A_2 in base coordinates with the Gram matrix of its simple roots.
        let roots = RootSet::from_positive(
            2,
            vec![
                RootVec::from_ints(&[1, 0]),
                RootVec::from_ints(&[0, 1]),
                RootVec::from_ints(&[1, 1]),
            ],
        );
        let form = SymForm::from_ints(&[&[2, -1], &[-1, 2]]);
        Grs::new(roots, form)
    }

    fn rank1_mult2() -> Grs {
        let roots = RootSet::from_positive(
            1,
            vec![RootVec::from_ints(&[1]), RootVec::from_ints(&[2])],
        );
        Grs::new(roots, SymForm::identity(1))
    }

    #[test]
    fn a2_is_valid() {
        let g = a2();
        assert!(check_grs_axioms(&g.roots, &g.form).unwrap().is_valid());
    }

    #[test]
    fn third_clause_asymmetry_detected() {
        // {0, ±b1, ±b2, ±(b1+b2)} with the dot product: (b1,b2)=0 but only
        // the sum is a root.
        let roots = RootSet::from_positive(
            2,
            vec![
                RootVec::from_ints(&[1, 0]),
                RootVec::from_ints(&[0, 1]),
                RootVec::from_ints(&[1, 1]),
            ],
        );
        let verdict = check_grs_axioms(&roots, &SymForm::identity(2)).unwrap();
        assert!(!verdict.is_valid());
        assert!(verdict.violations().iter().any(|v| matches!(
            v,
            Violation::ZeroAsymmetric { alpha, beta }
                if (*alpha == RootVec::from_ints(&[1, 0]) && *beta == RootVec::from_ints(&[0, 1]))
                    || (*alpha == RootVec::from_ints(&[0, 1]) && *beta == RootVec::from_ints(&[1, 0]))
        )));
    }

    #[test]
    fn rank1_with_multiplier_two_is_valid() {
        let g = rank1_mult2();
        assert!(check_grs_axioms(&g.roots, &g.form).unwrap().is_valid());
    }

    #[test]
    fn missing_negation_caught() {
        let mut roots = BTreeSet::new();
        roots.insert(RootVec::zero(1));
        roots.insert(RootVec::from_ints(&[1]));
        let rs = RootSet { dim: 1, roots };
        let verdict = check_grs_axioms(&rs, &SymForm::identity(1)).unwrap();
        assert!(!verdict.is_valid());
    }

    #[test]
    fn span_deficiency_is_a_violation_not_an_error() {
        let roots = RootSet::from_positive(2, vec![RootVec::from_ints(&[1, 0])]);
        let verdict = check_grs_axioms(&roots, &SymForm::identity(2)).unwrap();
        assert!(verdict
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::SpanDeficient { found_rank: 1 })));
    }

    #[test]
    fn empty_set_is_an_error() {
        let rs = RootSet::new(1, vec![]);
        assert_eq!(
            check_grs_axioms(&rs, &SymForm::identity(1)).unwrap_err(),
            RootSetError::EmptyRootSet
        );
    }

    #[test]
    fn non_integral_negative_fixture_fails_axioms() {
        // {0, ±b1, ±b2, ±(b1 + b2/2)} under the dot product.
        let roots = RootSet::from_positive(
            2,
            vec![
                RootVec::from_ints(&[1, 0]),
                RootVec::from_ints(&[0, 1]),
                RootVec(vec![rint(1), rat(1, 2)]),
            ],
        );
        let verdict = check_grs_axioms(&roots, &SymForm::identity(2)).unwrap();
        assert!(!verdict.is_valid());
    }

    #[test]
    fn primitives_of_multiplier_chain() {
        let g = rank1_mult2();
        let prim = primitive_roots(&g.roots);
        assert_eq!(prim.len(), 2);
        assert!(prim.contains(&RootVec::from_ints(&[1])));
        assert!(prim.contains(&RootVec::from_ints(&[-1])));
    }

    #[test]
    fn primitives_of_a2_are_all_roots() {
        let g = a2();
        assert_eq!(primitive_roots(&g.roots).len(), 6);
    }

    #[test]
    fn multiplier_values() {
        let g = rank1_mult2();
        assert_eq!(multiplier(&g.roots, &RootVec::from_ints(&[1])).unwrap(), 2);
        assert_eq!(multiplier(&g.roots, &RootVec::from_ints(&[-1])).unwrap(), 2);
        let a = a2();
        assert_eq!(multiplier(&a.roots, &RootVec::from_ints(&[1, 1])).unwrap(), 1);
        assert!(matches!(
            multiplier(&g.roots, &RootVec::from_ints(&[2])),
            Err(RootSetError::NotPrimitive(_))
        ));
        assert!(matches!(
            multiplier(&g.roots, &RootVec::from_ints(&[3])),
            Err(RootSetError::NotARoot(_))
        ));
    }

    #[test]
    fn base_of_a2() {
        let chamber = find_base(&a2(), None).unwrap();
        assert_eq!(chamber.rank(), 2);
        assert_eq!(chamber.positive_roots.len(), 3);
        // The two simple roots generate the third positive root.
        let highest: Vec<Rat> = chamber.coordinates(
            &chamber.positive_roots.iter().find(|r| !chamber.simple_roots.contains(r)).unwrap().clone(),
        );
        assert_eq!(highest, vec![rint(1), rint(1)]);
    }

    #[test]
    fn base_of_rank1_depends_on_side() {
        let g = rank1_mult2();
        let plus = find_base(&g, Some(&RootVec::from_ints(&[1]))).unwrap();
        assert_eq!(plus.simple_roots, vec![RootVec::from_ints(&[1])]);
        let minus = find_base(&g, Some(&RootVec::from_ints(&[-1]))).unwrap();
        assert_eq!(minus.simple_roots, vec![RootVec::from_ints(&[-1])]);
    }

    #[test]
    fn supplied_point_on_hyperplane_rejected() {
        let g = a2();
        let err = find_base(&g, Some(&RootVec::from_ints(&[1, -1]))).unwrap_err();
        assert!(matches!(err, RootSetError::PointOnHyperplane(_)));
    }

    #[test]
    fn simple_root_coordinates_are_unit_vectors() {
        let chamber = find_base(&a2(), None).unwrap();
        for (i, s) in chamber.simple_roots.iter().enumerate() {
            let coords = chamber.coordinates(s);
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(*c, if i == j { rint(1) } else { rint(0) });
            }
        }
    }

    #[test]
    fn doubled_root_coordinates_scale() {
        let g = rank1_mult2();
        let chamber = find_base(&g, Some(&RootVec::from_ints(&[1]))).unwrap();
        assert_eq!(chamber.coordinates(&RootVec::from_ints(&[2])), vec![rint(2)]);
    }

    #[test]
    fn a2_has_six_chambers() {
        let chambers = enumerate_chambers(&a2()).unwrap();
        assert_eq!(chambers.len(), 6);
        for c in &chambers {
            assert_eq!(c.rank(), 2);
        }
    }

    #[test]
    fn rank1_has_two_chambers() {
        let roots = RootSet::from_positive(1, vec![RootVec::from_ints(&[1])]);
        let g = Grs::new(roots, SymForm::identity(1));
        assert_eq!(enumerate_chambers(&g).unwrap().len(), 2);
    }

    #[test]
    fn a2_is_crystallographic_and_irreducible() {
        let g = a2();
        assert!(is_crystallographic(&g).unwrap());
        assert!(is_irreducible(&g.roots, &g.form));
    }

    #[test]
    fn orthogonal_split_is_reducible() {
        let roots = RootSet::from_positive(
            2,
            vec![RootVec::from_ints(&[1, 0]), RootVec::from_ints(&[0, 1])],
        );
        assert!(!is_irreducible(&roots, &SymForm::identity(2)));
    }

    #[test]
    fn parabolic_of_line_keeps_multiples() {
        // {0, ±α, ±2α, ±β}, generators {α}.
        let roots = RootSet::from_positive(
            2,
            vec![
                RootVec::from_ints(&[1, 0]),
                RootVec::from_ints(&[2, 0]),
                RootVec::from_ints(&[0, 1]),
            ],
        );
        let closure = parabolic_closure(&roots, &[RootVec::from_ints(&[1, 0])]).unwrap();
        assert_eq!(closure.len(), 5); // 0, ±α, ±2α
        assert!(closure.contains(&RootVec::from_ints(&[2, 0])));
        assert!(!closure.contains(&RootVec::from_ints(&[0, 1])));
    }

    #[test]
    fn a3_parabolics_through_a_root() {
        // A_3 in base coordinates.
        let roots = RootSet::from_positive(
            3,
            vec![
                RootVec::from_ints(&[1, 0, 0]),
                RootVec::from_ints(&[0, 1, 0]),
                RootVec::from_ints(&[0, 0, 1]),
                RootVec::from_ints(&[1, 1, 0]),
                RootVec::from_ints(&[0, 1, 1]),
                RootVec::from_ints(&[1, 1, 1]),
            ],
        );
        let parabolics =
            rank2_parabolics_containing(&roots, &RootVec::from_ints(&[1, 0, 0])).unwrap();
        let mut sizes: Vec<usize> = parabolics
            .iter()
            .map(|p| primitive_roots(p).len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![4, 6, 6]);
    }

    #[test]
    fn a2_single_parabolic() {
        let g = a2();
        let parabolics =
            rank2_parabolics_containing(&g.roots, &RootVec::from_ints(&[1, 0])).unwrap();
        assert_eq!(parabolics.len(), 1);
        assert_eq!(primitive_roots(&parabolics[0]).len(), 6);
    }

    #[test]
    fn scaled_copy_is_equivalent() {
        let g = a2();
        let scaled = RootSet::new(2, g.roots.iter().map(|r| r.scale(&rint(3))));
        let map = equivalence(&g.roots, &scaled).expect("scaling is an equivalence");
        assert!(maps_onto(&map.matrix, &g.roots, &scaled));
        let inv = map.inverse().unwrap();
        assert!(maps_onto(&inv.matrix, &scaled, &g.roots));
    }

    #[test]
    fn different_sizes_not_equivalent() {
        let g = a2();
        let other = rank1_mult2();
        let padded = RootSet::from_positive(
            2,
            vec![RootVec::from_ints(&[1, 0]), RootVec::from_ints(&[0, 1])],
        );
        assert!(equivalence(&g.roots, &padded).is_none());
        assert_ne!(fingerprint(&g.roots).dim, fingerprint(&other.roots).dim);
    }

    #[test]
    fn parabolic_as_grs_restricts_form() {
        let g = a2();
        let sub = parabolic_as_grs(&g, &[RootVec::from_ints(&[1, 0])]).unwrap();
        assert_eq!(sub.rank(), 1);
        assert!(check_grs_axioms(&sub.roots, &sub.form).unwrap().is_valid());
    }
}
