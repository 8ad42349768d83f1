//! Rational polyhedral fans.
//!
//! A fan is stored as a ray list plus the set of all its cones, each cone
//! identified by its sorted ray-index set.  Ray generators are primitive
//! integer vectors (coprime entries, positive scaling only), so two rays are
//! equal exactly when their generators are.  Faces of non-simplicial cones
//! are found geometrically by supporting-hyperplane enumeration; simplicial
//! cones shortcut to ray subsets.
//!
//! Validation decides the fan axioms exactly: strong convexity and extremal
//! generators by linear programming, face closure by facet enumeration, and
//! the pairwise intersection axiom by searching for a separating functional
//! that vanishes on the shared rays (it exists iff the two cones meet in the
//! face those rays span).

mod builders;
mod polytope;

pub use builders::{coxeter_fan, cross_polytope_fan};
pub use polytope::{central_fan, normal_fan, Facet, Polytope};

use crate::error::Error;
use crate::exact::{
    det, feasible_nonneg, kernel, maximize, primitive, rank, rat, vec_add, vec_is_zero, LpOutcome,
    QMatrix, QVector, Rat,
};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

/// Rational vector space with a fixed symmetric positive definite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    dim: usize,
    gram: QMatrix,
}

impl AmbientSpace {
    /// Standard space with the identity form.
    pub fn standard(dim: usize) -> Self {
        AmbientSpace {
            dim,
            gram: QMatrix::identity(dim),
        }
    }

    /// Space with an explicit gram matrix; rejects anything that is not
    /// symmetric positive definite (leading principal minors).
    pub fn new(dim: usize, gram: QMatrix) -> Result<Self, Error> {
        if gram.rows() != dim || gram.cols() != dim {
            return Err(Error::BadGram);
        }
        for i in 0..dim {
            for j in 0..i {
                if gram.at(i, j) != gram.at(j, i) {
                    return Err(Error::BadGram);
                }
            }
        }
        for k in 1..=dim {
            let mut minor = QMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    *minor.at_mut(i, j) = gram.at(i, j).clone();
                }
            }
            if !det(&minor)?.is_positive() {
                return Err(Error::BadGram);
            }
        }
        Ok(AmbientSpace { dim, gram })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// The bilinear form `u^T G v`.
    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }
}

/// A ray, held by its primitive generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub generator: QVector,
}

/// A cone, identified by its sorted ray-index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<usize>,
    pub dim: usize,
}

impl Cone {
    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }
}

/// Everything `validate` can complain about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The cone contains a line.
    NotPointed { cone: Vec<usize> },
    /// A listed ray is a nonnegative combination of the cone's other rays.
    RedundantRay { cone: Vec<usize>, ray: usize },
    /// A ray that no cone uses.
    UnusedRay { ray: usize },
    /// A facet of a cone is missing from the fan.
    MissingFace { cone: Vec<usize>, face: Vec<usize> },
    /// Two cones do not meet in a common face.
    BadPair { a: Vec<usize>, b: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPointed { cone } => write!(f, "cone {cone:?} contains a line"),
            Violation::RedundantRay { cone, ray } => {
                write!(f, "ray {ray} of cone {cone:?} is not extreme")
            }
            Violation::UnusedRay { ray } => write!(f, "ray {ray} occurs in no cone"),
            Violation::MissingFace { cone, face } => {
                write!(f, "face {face:?} of cone {cone:?} is not in the fan")
            }
            Violation::BadPair { a, b } => {
                write!(f, "cones {a:?} and {b:?} do not meet in a common face")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Why a fan failed the completeness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessWitness {
    /// A maximal cone of dimension `< d`.
    NotPure { cone: Vec<usize> },
    /// A ridge on `count != 2` top-dimensional cones.
    RidgeCount { ridge: Vec<usize>, count: usize },
    /// The adjacency graph of top-dimensional cones is disconnected.
    Disconnected,
    /// A sampled point no cone's relative interior contains.
    UnlocatedPoint { point: QVector },
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub complete: bool,
    pub witness: Option<CompletenessWitness>,
}

#[derive(Clone)]
pub struct Fan {
    space: AmbientSpace,
    rays: Vec<Ray>,
    cones_by_dim: Vec<Vec<Cone>>,
    cone_dims: HashMap<Vec<usize>, usize>,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Fan(dim {}, {} rays, f-vector {:?})",
            self.space.dim(),
            self.rays.len(),
            self.f_vector()
        )
    }
}

impl Fan {
    /// Assembles a fan from ray generators and cones given as index sets.
    ///
    /// Generators are scaled primitive and deduplicated by direction, cone
    /// indices are remapped accordingly, and the face closure of every cone
    /// is computed and stored.  No fan axioms are checked here; `validate`
    /// does that.
    pub fn build(
        space: AmbientSpace,
        generators: Vec<QVector>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, Error> {
        let d = space.dim();
        let mut rays: Vec<Ray> = Vec::new();
        let mut index_of: HashMap<QVector, usize> = HashMap::new();
        let mut remap = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "ray length {} in a {d}-dimensional space",
                    g.len()
                )));
            }
            let p = primitive(g);
            if vec_is_zero(&p) {
                return Err(Error::ZeroRay);
            }
            let idx = *index_of.entry(p.clone()).or_insert_with(|| {
                rays.push(Ray { generator: p });
                rays.len() - 1
            });
            remap.push(idx);
        }

        let gens: Vec<QVector> = rays.iter().map(|r| r.generator.clone()).collect();
        let mut cone_dims: HashMap<Vec<usize>, usize> = HashMap::new();
        cone_dims.insert(vec![], 0);
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        for c in &cones {
            let mut set: Vec<usize> = c
                .iter()
                .map(|&i| {
                    remap
                        .get(i)
                        .copied()
                        .ok_or_else(|| Error::InvalidFan(format!("cone ray index {i} out of range")))
                })
                .collect::<Result<BTreeSet<usize>, Error>>()?
                .into_iter()
                .collect();
            set.sort_unstable();
            if !cone_dims.contains_key(&set) {
                cone_dims.insert(set.clone(), subcone_dim(&gens, &set));
                queue.push_back(set);
            }
        }
        // close under faces
        while let Some(set) = queue.pop_front() {
            for facet in subcone_facets(&gens, &set) {
                if !cone_dims.contains_key(&facet) {
                    cone_dims.insert(facet.clone(), subcone_dim(&gens, &facet));
                    queue.push_back(facet);
                }
            }
        }

        let max_dim = cone_dims.values().copied().max().unwrap_or(0);
        let mut cones_by_dim: Vec<Vec<Cone>> = vec![Vec::new(); max_dim + 1];
        let mut sorted: Vec<(&Vec<usize>, &usize)> = cone_dims.iter().collect();
        sorted.sort_unstable_by(|a, b| a.0.cmp(b.0));
        for (set, &dim) in sorted {
            cones_by_dim[dim].push(Cone {
                rays: set.clone(),
                dim,
            });
        }
        Ok(Fan {
            space,
            rays,
            cones_by_dim,
            cone_dims,
        })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn generator(&self, ray: usize) -> &QVector {
        &self.rays[ray].generator
    }

    pub(crate) fn generators(&self) -> Vec<QVector> {
        self.rays.iter().map(|r| r.generator.clone()).collect()
    }

    /// Largest dimension carrying a cone.
    pub fn max_cone_dim(&self) -> usize {
        self.cones_by_dim.len() - 1
    }

    /// Cones of one dimension, ordered by ray set.
    pub fn cones(&self, dim: usize) -> &[Cone] {
        self.cones_by_dim.get(dim).map_or(&[], |v| &v[..])
    }

    pub fn all_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones_by_dim.iter().flatten()
    }

    pub fn cone_count(&self) -> usize {
        self.cones_by_dim.iter().map(|v| v.len()).sum()
    }

    pub fn has_cone(&self, rays: &[usize]) -> bool {
        self.cone_dims.contains_key(rays)
    }

    pub fn cone(&self, rays: &[usize]) -> Option<&Cone> {
        let dim = *self.cone_dims.get(rays)?;
        self.cones_by_dim[dim]
            .iter()
            .find(|c| c.rays == rays)
    }

    /// Cones not properly contained in another cone.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        let mut out = Vec::new();
        for c in self.all_cones() {
            let contained = self.all_cones().any(|other| {
                other.rays.len() > c.rays.len()
                    && c.rays.iter().all(|r| other.rays.binary_search(r).is_ok())
            });
            if !contained {
                out.push(c);
            }
        }
        out
    }

    /// Cone counts per dimension, length `dim + 1`, entry 0 always 1.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.space.dim() + 1];
        for (k, cones) in self.cones_by_dim.iter().enumerate() {
            f[k] = cones.len();
        }
        f
    }

    /// Facets (codimension-1 faces) of a cone of this fan.
    pub fn cone_facets(&self, c: &Cone) -> Vec<Vec<usize>> {
        subcone_facets(&self.generators(), &c.rays)
    }

    /// All faces of a cone, including itself and the zero cone.
    pub fn cone_faces(&self, c: &Cone) -> BTreeSet<Vec<usize>> {
        subcone_faces(&self.generators(), &c.rays)
    }

    /// Exact membership of `v` in the closed cone `c`.
    pub fn cone_contains(&self, c: &Cone, v: &[Rat]) -> bool {
        if c.rays.is_empty() {
            return vec_is_zero(v);
        }
        let cols: Vec<QVector> = c.rays.iter().map(|&i| self.rays[i].generator.clone()).collect();
        if c.is_simplicial() {
            match crate::exact::solve(&QMatrix::from_cols(cols), v) {
                Ok(Some(coeffs)) => coeffs.iter().all(|x| !x.is_negative()),
                _ => false,
            }
        } else {
            feasible_nonneg(&QMatrix::from_cols(cols), v).is_some()
        }
    }

    /// Exact membership of `v` in the relative interior of `c`.
    pub fn cone_relint_contains(&self, c: &Cone, v: &[Rat]) -> bool {
        if c.rays.is_empty() {
            return vec_is_zero(v);
        }
        let cols: Vec<QVector> = c.rays.iter().map(|&i| self.rays[i].generator.clone()).collect();
        if c.is_simplicial() {
            match crate::exact::solve(&QMatrix::from_cols(cols), v) {
                Ok(Some(coeffs)) => coeffs.iter().all(|x| x.is_positive()),
                _ => false,
            }
        } else {
            // max t  s.t.  sum (u_i + t) v_i = v, u >= 0, t >= 0
            let n = cols.len();
            let sum: QVector = cols
                .iter()
                .fold(vec![rat(0); v.len()], |acc, col| vec_add(&acc, col));
            let mut lp_cols = cols;
            lp_cols.push(sum);
            let a = QMatrix::from_cols(lp_cols);
            let mut obj = vec![rat(0); n + 1];
            obj[n] = rat(1);
            match maximize(&a, v, &obj) {
                LpOutcome::Optimal { value, .. } => value.is_positive(),
                LpOutcome::Unbounded => true,
                LpOutcome::Infeasible => false,
            }
        }
    }

    /// The unique cone whose relative interior contains `v`, if any.
    pub fn point_locate(&self, v: &[Rat]) -> Option<&Cone> {
        for dim in (0..self.cones_by_dim.len()).rev() {
            for c in &self.cones_by_dim[dim] {
                if self.cone_relint_contains(c, v) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Whether every cone is simplicial; returns the first offender.
    pub fn is_simplicial(&self) -> Result<(), Vec<usize>> {
        for c in self.all_cones() {
            if !c.is_simplicial() {
                return Err(c.rays.clone());
            }
        }
        Ok(())
    }

    /// Checks the fan axioms exactly; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let gens = self.generators();
        let d = self.space.dim();

        // rays must occur in cones
        let mut used = vec![false; self.rays.len()];
        for c in self.all_cones() {
            for &r in &c.rays {
                used[r] = true;
            }
        }
        for (i, u) in used.iter().enumerate() {
            if !u {
                violations.push(Violation::UnusedRay { ray: i });
            }
        }

        // strong convexity and extremality of listed rays
        for c in self.all_cones() {
            if c.rays.is_empty() {
                continue;
            }
            let cols: Vec<QVector> = c.rays.iter().map(|&i| gens[i].clone()).collect();
            // a line exists iff 0 is a nonneg combination with coefficient sum 1
            let mut rows = QMatrix::from_cols(cols.clone()).row_vecs();
            rows.push(vec![rat(1); cols.len()]);
            let mut rhs = vec![rat(0); d];
            rhs.push(rat(1));
            if feasible_nonneg(&QMatrix::from_rows(rows), &rhs).is_some() {
                violations.push(Violation::NotPointed {
                    cone: c.rays.clone(),
                });
                continue;
            }
            for (k, &ray) in c.rays.iter().enumerate() {
                if cols.len() == 1 {
                    break;
                }
                let others: Vec<QVector> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, v)| v.clone())
                    .collect();
                if feasible_nonneg(&QMatrix::from_cols(others), &gens[ray]).is_some() {
                    violations.push(Violation::RedundantRay {
                        cone: c.rays.clone(),
                        ray,
                    });
                }
            }
        }

        // face closure: facets of every cone are cones
        for c in self.all_cones() {
            if c.dim == 0 {
                continue;
            }
            for facet in self.cone_facets(c) {
                if !self.has_cone(&facet) {
                    violations.push(Violation::MissingFace {
                        cone: c.rays.clone(),
                        face: facet,
                    });
                }
            }
        }

        // pairwise intersections are common faces
        let all: Vec<&Cone> = self.all_cones().collect();
        let faces: Vec<BTreeSet<Vec<usize>>> = all
            .iter()
            .map(|c| subcone_faces(&gens, &c.rays))
            .collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let shared: Vec<usize> = all[i]
                    .rays
                    .iter()
                    .copied()
                    .filter(|r| all[j].rays.binary_search(r).is_ok())
                    .collect();
                // quick path: one is a face of the other
                if shared == all[i].rays && faces[j].contains(&shared) {
                    continue;
                }
                if shared == all[j].rays && faces[i].contains(&shared) {
                    continue;
                }
                if !self.pair_separates(&gens, &all[i].rays, &all[j].rays, &shared) {
                    violations.push(Violation::BadPair {
                        a: all[i].rays.clone(),
                        b: all[j].rays.clone(),
                    });
                }
            }
        }

        ValidationReport { violations }
    }

    /// Searches for a functional that vanishes on `shared`, is `>= 1` on the
    /// other rays of `a`, and `<= -1` on the other rays of `b`.  Such a
    /// functional exists iff the two cones intersect exactly in the face
    /// spanned by their shared rays.
    fn pair_separates(
        &self,
        gens: &[QVector],
        a: &[usize],
        b: &[usize],
        shared: &[usize],
    ) -> bool {
        let d = self.space.dim();
        // variables: p, q (phi = p - q), one surplus per strict constraint
        let strict_a: Vec<usize> = a.iter().copied().filter(|r| !shared.contains(r)).collect();
        let strict_b: Vec<usize> = b.iter().copied().filter(|r| !shared.contains(r)).collect();
        let n = 2 * d + strict_a.len() + strict_b.len();
        let mut rows: Vec<QVector> = Vec::new();
        let mut rhs: QVector = Vec::new();
        let mut constraint = |v: &QVector, surplus: Option<(usize, i64)>, target: i64| {
            let mut row = vec![rat(0); n];
            for (k, x) in v.iter().enumerate() {
                row[k] = x.clone();
                row[d + k] = -x.clone();
            }
            if let Some((idx, sgn)) = surplus {
                row[2 * d + idx] = rat(sgn);
            }
            rows.push(row);
            rhs.push(rat(target));
        };
        for &r in shared {
            constraint(&gens[r], None, 0);
        }
        for (k, &r) in strict_a.iter().enumerate() {
            constraint(&gens[r], Some((k, -1)), 1);
        }
        for (k, &r) in strict_b.iter().enumerate() {
            constraint(&gens[r], Some((strict_a.len() + k, 1)), -1);
        }
        feasible_nonneg(&QMatrix::from_rows(rows), &rhs).is_some()
    }

    /// Completeness: pure of top dimension, every ridge on exactly two
    /// maximal cones, connected adjacency, plus random point location.
    pub fn is_complete(&self) -> CompletenessReport {
        self.is_complete_with(64, 0x5eed)
    }

    pub fn is_complete_with(&self, sample_points: usize, seed: u64) -> CompletenessReport {
        let d = self.space.dim();
        let fail = |witness| CompletenessReport {
            complete: false,
            witness: Some(witness),
        };
        if d == 0 {
            return CompletenessReport {
                complete: true,
                witness: None,
            };
        }
        // pure: every maximal cone has dimension d
        for c in self.maximal_cones() {
            if c.dim != d {
                return fail(CompletenessWitness::NotPure {
                    cone: c.rays.clone(),
                });
            }
        }
        let top = self.cones(d);
        if top.is_empty() {
            return fail(CompletenessWitness::NotPure { cone: vec![] });
        }
        // every ridge is a facet of exactly two top cones
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); top.len()];
        for ridge in self.cones(d.saturating_sub(1)) {
            let mut on: Vec<usize> = Vec::new();
            for (ti, t) in top.iter().enumerate() {
                if ridge.rays.iter().all(|r| t.rays.binary_search(r).is_ok()) {
                    on.push(ti);
                }
            }
            if on.len() != 2 {
                return fail(CompletenessWitness::RidgeCount {
                    ridge: ridge.rays.clone(),
                    count: on.len(),
                });
            }
            adjacency[on[0]].push(on[1]);
            adjacency[on[1]].push(on[0]);
        }
        // connected dual graph
        let mut seen = vec![false; top.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return fail(CompletenessWitness::Disconnected);
        }
        // cross-check: sampled rational points must locate
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_points {
            let v = random_rational_point(&mut rng, d);
            if self.point_locate(&v).is_none() {
                return fail(CompletenessWitness::UnlocatedPoint { point: v });
            }
        }
        CompletenessReport {
            complete: true,
            witness: None,
        }
    }
}

/// A deterministic pseudo-random rational point with small numerators and
/// denominators.
pub fn random_rational_point(rng: &mut ChaCha8Rng, dim: usize) -> QVector {
    (0..dim)
        .map(|_| {
            let n = rng.gen_range(-24i64..=24);
            let d = rng.gen_range(1i64..=6);
            crate::exact::rat_from(n, d)
        })
        .collect()
}

/// Rank of the generators indexed by `set`.
pub(crate) fn subcone_dim(gens: &[QVector], set: &[usize]) -> usize {
    if set.is_empty() {
        return 0;
    }
    let cols: Vec<QVector> = set.iter().map(|&i| gens[i].clone()).collect();
    rank(&QMatrix::from_cols(cols))
}

/// Facets (faces of codimension 1) of the cone spanned by `set`, as sorted
/// ray-index sets.
pub(crate) fn subcone_facets(gens: &[QVector], set: &[usize]) -> Vec<Vec<usize>> {
    let k = subcone_dim(gens, set);
    if k == 0 {
        return vec![];
    }
    if set.len() == k {
        // simplicial: drop one ray at a time
        return (0..set.len())
            .map(|skip| {
                set.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &r)| r)
                    .collect()
            })
            .collect();
    }
    // coordinates of the rays inside a basis of the span
    let basis = independent_subset(gens, set, k);
    let basis_cols: Vec<QVector> = basis.iter().map(|&i| gens[i].clone()).collect();
    let bmat = QMatrix::from_cols(basis_cols);
    let coords: Vec<QVector> = set
        .iter()
        .map(|&i| {
            crate::exact::solve(&bmat, &gens[i])
                .ok()
                .flatten()
                .expect("ray lies in the span of the cone")
        })
        .collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let subsets = k_subsets(set.len(), k - 1);
    'subset: for sub in subsets {
        let rows: Vec<QVector> = sub.iter().map(|&i| coords[i].clone()).collect();
        let ker = kernel(&QMatrix::from_rows(rows));
        if ker.len() != 1 {
            continue;
        }
        let phi = &ker[0];
        let mut sign = 0i32;
        let mut face: Vec<usize> = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            let val: Rat = phi.iter().zip(c).map(|(a, b)| a * b).sum();
            if val.is_zero() {
                face.push(set[i]);
            } else {
                let s = if val.is_positive() { 1 } else { -1 };
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    continue 'subset;
                }
            }
        }
        if sign != 0 {
            face.sort_unstable();
            facets.insert(face);
        }
    }
    facets.into_iter().collect()
}

/// All faces of the cone spanned by `set`, including itself and the zero
/// cone.
pub(crate) fn subcone_faces(gens: &[QVector], set: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    faces.insert(set.to_vec());
    faces.insert(vec![]);
    queue.push_back(set.to_vec());
    while let Some(cur) = queue.pop_front() {
        for f in subcone_facets(gens, &cur) {
            if faces.insert(f.clone()) {
                queue.push_back(f);
            }
        }
    }
    faces
}

/// First `k` indices of `set` whose generators are independent.
fn independent_subset(gens: &[QVector], set: &[usize], k: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut r = 0;
    for &i in set {
        chosen.push(i);
        let cols: Vec<QVector> = chosen.iter().map(|&j| gens[j].clone()).collect();
        let r2 = rank(&QMatrix::from_cols(cols));
        if r2 > r {
            r = r2;
            if r == k {
                return chosen;
            }
        } else {
            chosen.pop();
        }
    }
    chosen
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Exact combinatorial equality: same ray directions and the same cones
/// under the induced relabeling.
pub fn fans_equal(a: &Fan, b: &Fan) -> bool {
    if a.space != b.space || a.rays.len() != b.rays.len() {
        return false;
    }
    let mut map: HashMap<&QVector, usize> = HashMap::new();
    for (j, r) in b.rays.iter().enumerate() {
        map.insert(&r.generator, j);
    }
    let mut translate = Vec::with_capacity(a.rays.len());
    for r in &a.rays {
        match map.get(&r.generator) {
            Some(&j) => translate.push(j),
            None => return false,
        }
    }
    let a_cones: HashSet<Vec<usize>> = a
        .all_cones()
        .map(|c| {
            let mut t: Vec<usize> = c.rays.iter().map(|&r| translate[r]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let b_cones: HashSet<Vec<usize>> = b.all_cones().map(|c| c.rays.clone()).collect();
    a_cones == b_cones
}
