//! Folding an invariant fan across the chamber geometry of a reflection
//! group.
//!
//! Given a fan that a finite reflection group maps to itself, the folded
//! ("hybrid") fan keeps the rays whose generators lie in the dominant
//! chamber and adds one ray per negated simple root.  A chamber-ray subset
//! `I` and a simple-root subset `J` span a cone of the folded fan exactly
//! when the orbit of the `I`-generators under the parabolic subgroup of `J`
//! generates a cone of the source fan.  The module builds the folded fan by
//! two independent routes (direct enumeration of pairs, and a per-orbit
//! shortcut driven by parabolic stabilizer data), locates points in it
//! constructively, checks its structure, compares its h-polynomial against
//! the invariant-series routes, and intersects an invariant polytope with
//! the chamber to obtain the polytope whose normal fan the fold reproduces.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_traits::Zero;

use crate::charformula::{
    h_polynomial, invariant_poincare_avg, invariant_poincare_contrib, invariant_poincare_orbit,
    require_complete_simplicial,
};
use crate::error::Error;
use crate::exact::{
    dot, feasible_nonneg, primitive, rank, rat, solve, vec_neg, QMatrix, QPoly, QVector, Rat,
};
use crate::fan::{fans_equal, k_subsets, normal_fan, Cone, Fan, Polytope};
use crate::srring::ArtinianTable;
use crate::symmetry::{
    bind_action, moreau, orbit_representatives_in_chamber, parabolic, parabolic_data, FanAction,
    MatrixGroup, RootSystem,
};

/// Tag attached to each ray of a folded fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayLabel {
    /// A ray of the source fan whose generator lies in the dominant
    /// chamber; carries the source ray index.
    Source(usize),
    /// The direction of a negated simple root; carries the root index.
    Wall(usize),
}

/// How one cone of a folded fan arose: the chamber-ray subset `I`, the
/// simple-root subset `J`, and the source cone generated by the orbit of
/// the `I`-generators under the parabolic subgroup of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeOrigin {
    /// Sorted ray indices of the cone inside the folded fan.
    pub rays: Vec<usize>,
    /// Source-fan ray indices forming `I`; each generator lies in the
    /// dominant chamber.
    pub source_rays: Vec<usize>,
    /// Simple-root indices forming `J`.
    pub roots: Vec<usize>,
    /// Sorted ray set of the source cone matched by the orbit test.
    pub matched: Vec<usize>,
}

/// A fan folded across a chamber decomposition, together with the bound
/// action on its source fan, per-ray labels, and per-cone origin records.
pub struct HybridFan {
    fan: Fan,
    labels: Vec<RayLabel>,
    origins: Vec<ConeOrigin>,
    action: FanAction,
}

impl HybridFan {
    /// The folded fan itself.
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// The fan the fold was built from.
    pub fn source(&self) -> &Fan {
        self.action.fan()
    }

    /// The group acting on the source fan.
    pub fn group(&self) -> &MatrixGroup {
        self.action.group()
    }

    /// One label per ray of the folded fan, in ray order.
    pub fn labels(&self) -> &[RayLabel] {
        &self.labels
    }

    /// Origin records for every cone, sorted by ray set.
    pub fn origins(&self) -> &[ConeOrigin] {
        &self.origins
    }

    /// The origin record of the cone with exactly these sorted rays.
    pub fn origin_of(&self, rays: &[usize]) -> Option<&ConeOrigin> {
        self.origins
            .binary_search_by(|o| o.rays.as_slice().cmp(rays))
            .ok()
            .map(|i| &self.origins[i])
    }

    fn index_of_source(&self, r: usize) -> Option<usize> {
        self.labels.iter().position(|l| *l == RayLabel::Source(r))
    }

    fn index_of_wall(&self, j: usize) -> Option<usize> {
        self.labels.iter().position(|l| *l == RayLabel::Wall(j))
    }
}

/// Source rays whose generators lie in the dominant chamber, in ray order.
fn chamber_ray_indices(f: &Fan, rs: &RootSystem) -> Vec<usize> {
    (0..f.rays().len())
        .filter(|&r| rs.in_chamber(f.generator(r)))
        .collect()
}

/// Primitive generator lookup for the source fan's rays.
fn source_ray_index(f: &Fan) -> HashMap<QVector, usize> {
    (0..f.rays().len())
        .map(|r| (f.generator(r).clone(), r))
        .collect()
}

/// Drops generators that are nonnegative combinations of the rest.  For a
/// pointed cone the result is its extreme-ray set; in general it is a
/// minimal generating subset, which can match a stored cone only if the
/// generated cones are literally equal.
fn minimal_generators(mut gens: Vec<QVector>) -> Vec<QVector> {
    let mut i = 0;
    while gens.len() > 1 && i < gens.len() {
        let others: Vec<QVector> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, v)| v.clone())
            .collect();
        if feasible_nonneg(&QMatrix::from_cols(others), &gens[i]).is_some() {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// The sorted ray set of the source cone generated by the `wj`-orbit of
/// the chosen chamber generators, or `None` if that cone is not in the
/// source fan.
fn orbit_cone_in_source(
    f: &Fan,
    wj: &MatrixGroup,
    i_set: &[usize],
    ray_index: &HashMap<QVector, usize>,
) -> Result<Option<Vec<usize>>, Error> {
    if i_set.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let mut orbit: BTreeSet<QVector> = BTreeSet::new();
    for w in 0..wj.order() {
        let m = wj.element(w);
        for &r in i_set {
            orbit.insert(primitive(&m.mul_vec(f.generator(r))));
        }
    }
    let mut idx = Vec::new();
    for g in minimal_generators(orbit.into_iter().collect()) {
        match ray_index.get(&g) {
            Some(&r) => idx.push(r),
            None => return Ok(None),
        }
    }
    idx.sort_unstable();
    Ok(if f.has_cone(&idx) { Some(idx) } else { None })
}

type PairMap = BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>>;

/// Assembles the folded fan from accepted `(I, J)` pairs.  Rays are laid
/// out chamber rays first (source order) then wall rays (root order),
/// keeping only rays that occur in at least one cone.  The face closure
/// computed by `Fan::build` must not introduce cones beyond the given
/// pairs, and the result must satisfy the fan axioms; either failure is a
/// finding, not an input error.
fn assemble(f: &Fan, rs: &RootSystem, action: FanAction, pairs: PairMap) -> Result<HybridFan, Error> {
    let mut used_src: BTreeSet<usize> = BTreeSet::new();
    let mut used_wall: BTreeSet<usize> = BTreeSet::new();
    for (i_set, j_set) in pairs.keys() {
        used_src.extend(i_set.iter().copied());
        used_wall.extend(j_set.iter().copied());
    }

    let chamber = chamber_ray_indices(f, rs);
    let mut labels = Vec::new();
    let mut gens: Vec<QVector> = Vec::new();
    let mut src_pos: HashMap<usize, usize> = HashMap::new();
    let mut wall_pos: HashMap<usize, usize> = HashMap::new();
    for &r in chamber.iter().filter(|r| used_src.contains(r)) {
        src_pos.insert(r, labels.len());
        labels.push(RayLabel::Source(r));
        gens.push(f.generator(r).clone());
    }
    for &j in &used_wall {
        wall_pos.insert(j, labels.len());
        labels.push(RayLabel::Wall(j));
        gens.push(primitive(&vec_neg(&rs.simple_roots()[j])));
    }

    let mut cone_sets = Vec::with_capacity(pairs.len());
    let mut origin_map: BTreeMap<Vec<usize>, ConeOrigin> = BTreeMap::new();
    for ((i_set, j_set), matched) in pairs {
        let mut rays: Vec<usize> = i_set
            .iter()
            .map(|r| src_pos[r])
            .chain(j_set.iter().map(|j| wall_pos[j]))
            .collect();
        rays.sort_unstable();
        cone_sets.push(rays.clone());
        let origin = ConeOrigin {
            rays: rays.clone(),
            source_rays: i_set,
            roots: j_set,
            matched,
        };
        if origin_map.insert(rays, origin).is_some() {
            return Err(Error::Internal(
                "two accepted pairs produced the same folded cone".into(),
            ));
        }
    }

    let fan = Fan::build(f.space().clone(), gens.clone(), cone_sets)?;
    if fan.rays().len() != labels.len() {
        return Err(Error::Internal(
            "folded-fan ray count drifted during assembly".into(),
        ));
    }
    for (idx, g) in gens.iter().enumerate() {
        if fan.generator(idx) != g {
            return Err(Error::Internal(
                "folded-fan ray order drifted during assembly".into(),
            ));
        }
    }

    for c in fan.all_cones() {
        if !origin_map.contains_key(&c.rays) {
            return Err(Error::TheoremViolation(format!(
                "face closure of the folded fan produced cone {:?}, which no accepted (I, J) pair generates",
                c.rays
            )));
        }
    }
    let report = fan.validate();
    if !report.is_valid() {
        let detail: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::TheoremViolation(format!(
            "folded fan fails validation: {}",
            detail.join("; ")
        )));
    }

    Ok(HybridFan {
        fan,
        labels,
        origins: origin_map.into_values().collect(),
        action,
    })
}

/// Builds the folded fan by direct enumeration: every candidate pair
/// `(I, J)` with `I` a subset of a single cone's chamber rays (any valid
/// `I` spans a face of some cone, so the restriction loses nothing) and
/// `J` any subset of the simple roots, kept when the orbit of the
/// `I`-generators under the parabolic subgroup of `J` generates a cone of
/// the source fan.
pub fn build_hybrid_naive(f: &Fan, rs: &RootSystem) -> Result<HybridFan, Error> {
    let action = bind_action(rs.group(), f)?;
    let in_chamber: HashSet<usize> = chamber_ray_indices(f, rs).into_iter().collect();
    let ray_index = source_ray_index(f);

    let mut i_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    i_sets.insert(Vec::new());
    for c in f.all_cones() {
        let dc: Vec<usize> = c
            .rays
            .iter()
            .copied()
            .filter(|r| in_chamber.contains(r))
            .collect();
        for mask in 1..1u64 << dc.len() {
            let sub: Vec<usize> = (0..dc.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| dc[b])
                .collect();
            i_sets.insert(sub);
        }
    }

    let r = rs.rank();
    let mut pairs: PairMap = BTreeMap::new();
    for mask in 0..1u64 << r {
        let j_set: Vec<usize> = (0..r).filter(|b| mask >> b & 1 == 1).collect();
        let wj = parabolic(rs, &j_set)?;
        for i_set in &i_sets {
            if let Some(matched) = orbit_cone_in_source(f, &wj, i_set, &ray_index)? {
                pairs.insert((i_set.clone(), j_set.clone()), matched);
            }
        }
    }
    assemble(f, rs, action, pairs)
}

/// Builds the folded fan from parabolic stabilizer data: for each cone
/// orbit's representative meeting the chamber, with stabilizer roots `K`,
/// swap roots `J0`, and chamber rays `I`, emit the pair `(I, J)` for
/// exactly the `J` with `J0 ⊆ J ⊆ K`.  Requires a complete simplicial
/// source.  The cone set must agree with [`build_hybrid_naive`]; use
/// [`hybrid_agreement_check`] to assert that.
pub fn build_hybrid_fast(f: &Fan, rs: &RootSystem) -> Result<HybridFan, Error> {
    require_complete_simplicial(f)?;
    let action = bind_action(rs.group(), f)?;
    let ray_index = source_ray_index(f);
    let reps = orbit_representatives_in_chamber(&action, rs)?;

    let mut parabolics: BTreeMap<Vec<usize>, MatrixGroup> = BTreeMap::new();
    let mut pairs: PairMap = BTreeMap::new();
    for rep in &reps {
        let data = parabolic_data(&action, rs, &rep.rays)?;
        let mut i_set = data.chamber_rays.clone();
        i_set.sort_unstable();
        let extra: Vec<usize> = data
            .stabilizer_roots
            .iter()
            .copied()
            .filter(|j| !data.swap_roots.contains(j))
            .collect();
        for mask in 0..1u64 << extra.len() {
            let mut j_set = data.swap_roots.clone();
            j_set.extend((0..extra.len()).filter(|b| mask >> b & 1 == 1).map(|b| extra[b]));
            j_set.sort_unstable();
            let wj = match parabolics.get(&j_set) {
                Some(g) => g,
                None => {
                    let g = parabolic(rs, &j_set)?;
                    parabolics.entry(j_set.clone()).or_insert(g)
                }
            };
            let matched = orbit_cone_in_source(f, wj, &i_set, &ray_index)?.ok_or_else(|| {
                Error::HybridMismatch(format!(
                    "pair (I = {i_set:?}, J = {j_set:?}) derived from representative {:?} fails the membership test",
                    rep.rays
                ))
            })?;
            if pairs.insert((i_set.clone(), j_set.clone()), matched).is_some() {
                return Err(Error::HybridMismatch(format!(
                    "two orbit representatives emitted the same pair (I = {i_set:?}, J = {j_set:?})"
                )));
            }
        }
    }
    assemble(f, rs, action, pairs)
}

/// Runs both construction routes and verifies they assemble the same
/// folded fan with the same labels and origin records; returns the
/// enumerated one.
pub fn hybrid_agreement_check(f: &Fan, rs: &RootSystem) -> Result<HybridFan, Error> {
    let naive = build_hybrid_naive(f, rs)?;
    let fast = build_hybrid_fast(f, rs)?;
    if !fans_equal(naive.fan(), fast.fan()) {
        return Err(Error::HybridMismatch(
            "the enumeration and orbit routes assemble different fans".into(),
        ));
    }
    if naive.labels() != fast.labels() {
        return Err(Error::HybridMismatch(
            "the enumeration and orbit routes label rays differently".into(),
        ));
    }
    if naive.origins() != fast.origins() {
        return Err(Error::HybridMismatch(
            "the enumeration and orbit routes record different cone origins".into(),
        ));
    }
    Ok(naive)
}

/// Locates `v` in the folded fan constructively: split `v` into its
/// nearest chamber point plus a nonpositive combination of simple roots,
/// locate the chamber part in the source fan, and combine that cone's
/// swap roots with the roots supporting the split.  The returned cone is
/// verified to contain `v`.
pub fn locate_in_hybrid(h: &HybridFan, rs: &RootSystem, v: &[Rat]) -> Result<Cone, Error> {
    if !h.group().same_elements(rs.group()) {
        return Err(Error::GroupMismatch);
    }
    if v.len() != h.fan.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point length {} in a {}-dimensional fan",
            v.len(),
            h.fan.dim()
        )));
    }
    let (v_d, v_n) = moreau(v, rs)?;
    let support: Vec<usize> = if rs.rank() == 0 {
        Vec::new()
    } else {
        let coeffs = solve(&QMatrix::from_cols(rs.simple_roots().to_vec()), &v_n)?
            .ok_or_else(|| Error::Internal("wall part escapes the span of the simple roots".into()))?;
        (0..rs.rank()).filter(|&j| !coeffs[j].is_zero()).collect()
    };

    let source = h.source();
    let sigma = source.point_locate(&v_d).ok_or_else(|| {
        Error::LocateFailed(format!("chamber part {v_d:?} lies in no cone of the source fan"))
    })?;
    let data = parabolic_data(&h.action, rs, &sigma.rays)?;

    let mut j_set = data.swap_roots.clone();
    for &j in &support {
        if !j_set.contains(&j) {
            j_set.push(j);
        }
    }
    j_set.sort_unstable();
    if !j_set.iter().all(|j| data.stabilizer_roots.contains(j)) {
        return Err(Error::Internal(
            "combined root subset escapes the stabilizer of the located cone".into(),
        ));
    }

    let mut rays = Vec::with_capacity(data.chamber_rays.len() + j_set.len());
    for &r in &data.chamber_rays {
        rays.push(h.index_of_source(r).ok_or_else(|| {
            Error::LocateFailed(format!("source ray {r} has no counterpart in the folded fan"))
        })?);
    }
    for &j in &j_set {
        rays.push(h.index_of_wall(j).ok_or_else(|| {
            Error::LocateFailed(format!("simple root {j} has no wall ray in the folded fan"))
        })?);
    }
    rays.sort_unstable();
    let cone = h
        .fan
        .cone(&rays)
        .ok_or_else(|| Error::LocateFailed(format!("derived ray set {rays:?} is not a folded cone")))?;
    if !h.fan.cone_contains(cone, v) {
        return Err(Error::TheoremViolation(format!(
            "located cone {:?} does not contain the point {v:?}",
            cone.rays
        )));
    }
    Ok(cone.clone())
}

/// Structural summary of a folded fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// The fan axioms hold.
    pub valid: bool,
    /// The fan covers the whole space (sampled witness search).
    pub complete: bool,
    /// Every cone is simplicial.
    pub simplicial: bool,
}

/// Checks the folded fan's axioms, completeness, and simpliciality.
/// Completeness is only meaningful when the source fan is complete;
/// simpliciality must hold whenever the source is simplicial and may hold
/// even when it is not.
pub fn check_structure(h: &HybridFan) -> StructureReport {
    StructureReport {
        valid: h.fan.validate().is_valid(),
        complete: h.fan.is_complete().complete,
        simplicial: h.fan.is_simplicial().is_ok(),
    }
}

/// Every route to the invariant series, side by side.  All entries are
/// equal whenever the construction is sound; [`theorem_check`] asserts
/// that before returning the report.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    /// h-polynomial of the folded fan.
    pub hybrid_h: QPoly,
    /// Group-averaged fixed-cone character.
    pub invariant_avg: QPoly,
    /// Orbit-representative sum.
    pub invariant_orbit: QPoly,
    /// Closed-form contribution sum from parabolic data.
    pub contribution_sum: QPoly,
    /// Group-averaged quotient-ring trace, when requested.
    pub oracle_avg: Option<QPoly>,
}

/// Computes the h-polynomial of the folded fan and the invariant series by
/// every available route, asserting they agree.  Requires a complete
/// simplicial source fan.  `with_oracle` additionally averages the
/// quotient-ring character over the group.
pub fn theorem_check(f: &Fan, rs: &RootSystem, with_oracle: bool) -> Result<TheoremReport, Error> {
    require_complete_simplicial(f)?;
    let action = bind_action(rs.group(), f)?;
    let hybrid = build_hybrid_fast(f, rs)?;
    let hybrid_h = h_polynomial(hybrid.fan());
    let invariant_avg = invariant_poincare_avg(&action)?;
    let invariant_orbit = invariant_poincare_orbit(&action, rs)?;
    let contribution_sum = invariant_poincare_contrib(&action, rs)?;
    let oracle_avg = if with_oracle {
        let table = ArtinianTable::with_generators(f, action.generators().to_vec())?;
        let chars = table.characters(&action)?;
        let mut total = QPoly::zero();
        for e in 0..chars.elements() {
            total = total + chars.oracle_character(e);
        }
        Some(total.scale(&(rat(1) / rat(action.group().order() as i64))))
    } else {
        None
    };

    let mut disagreement = Vec::new();
    if hybrid_h != invariant_avg {
        disagreement.push("folded-fan h-polynomial vs averaged character");
    }
    if invariant_orbit != invariant_avg {
        disagreement.push("orbit sum vs averaged character");
    }
    if contribution_sum != invariant_avg {
        disagreement.push("contribution sum vs averaged character");
    }
    if let Some(oracle) = &oracle_avg {
        if *oracle != invariant_avg {
            disagreement.push("quotient-ring average vs averaged character");
        }
    }
    if !disagreement.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "invariant-series routes disagree ({}): fold h = {hybrid_h}, average = {invariant_avg}, orbit = {invariant_orbit}, contributions = {contribution_sum}, oracle = {}",
            disagreement.join(", "),
            oracle_avg
                .as_ref()
                .map_or("skipped".to_string(), |p| p.to_string()),
        )));
    }
    Ok(TheoremReport {
        hybrid_h,
        invariant_avg,
        invariant_orbit,
        contribution_sum,
        oracle_avg,
    })
}

/// Intersects a full-dimensional invariant polytope with the dominant
/// chamber, by exact vertex enumeration over the combined inequality
/// system (the polytope's facets plus one wall inequality per simple
/// root).  The group must permute the polytope's vertex set.
pub fn quotient_polytope(p: &Polytope, rs: &RootSystem) -> Result<Polytope, Error> {
    if p.space() != rs.space() {
        return Err(Error::DimensionMismatch(
            "polytope and root system live in different spaces".into(),
        ));
    }
    if !p.is_full_dimensional() {
        return Err(Error::BadPolytope(format!(
            "polytope has affine rank {} in dimension {}",
            p.affine_rank(),
            p.dim()
        )));
    }
    let vertex_set: HashSet<&QVector> = p.vertices().iter().collect();
    let group = rs.group();
    for e in 0..group.order() {
        let m = group.element(e);
        for v in p.vertices() {
            if !vertex_set.contains(&m.mul_vec(v)) {
                return Err(Error::BadPolytope(format!(
                    "group element {e} maps vertex {v:?} outside the vertex set"
                )));
            }
        }
    }

    // combined system: every row means <w, x> <= b in the space's pairing
    let mut ineqs: Vec<(QVector, Rat)> = p
        .facets()?
        .into_iter()
        .map(|f| (f.normal, f.offset))
        .collect();
    for alpha in rs.simple_roots() {
        ineqs.push((vec_neg(alpha), rat(0)));
    }
    let gram = p.space().gram();
    let rows: Vec<QVector> = ineqs.iter().map(|(w, _)| gram.mul_vec(w)).collect();

    let d = p.dim();
    let mut verts: BTreeSet<QVector> = BTreeSet::new();
    for sub in k_subsets(ineqs.len(), d) {
        let m = QMatrix::from_rows(sub.iter().map(|&i| rows[i].clone()).collect());
        if rank(&m) < d {
            continue;
        }
        let rhs: QVector = sub.iter().map(|&i| ineqs[i].1.clone()).collect();
        let x = match solve(&m, &rhs)? {
            Some(x) => x,
            None => continue,
        };
        if rows
            .iter()
            .zip(&ineqs)
            .all(|(row, (_, b))| dot(row, &x) <= *b)
        {
            verts.insert(x);
        }
    }
    Polytope::new(p.space().clone(), verts.into_iter().collect())
}

/// Whether the normal fan of the chamber-intersected polytope coincides —
/// same ray directions, same cone incidences — with the fold of the
/// polytope's own normal fan.
pub fn polytopal_check(p: &Polytope, rs: &RootSystem) -> Result<bool, Error> {
    let source_fan = normal_fan(p)?;
    let hybrid = build_hybrid_naive(&source_fan, rs)?;
    let quotient = quotient_polytope(p, rs)?;
    let quotient_fan = normal_fan(&quotient)?;
    Ok(fans_equal(&quotient_fan, hybrid.fan()))
}
