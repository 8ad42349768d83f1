//! Finite matrix groups acting on fans: binding a group to a fan (with
//! orbit-consistent ray generators), cone orbits and stabilizers, dominant
//! chamber representatives, and the wall data attached to them.

mod group;
mod roots;

pub use group::{point_stabilizer, MatrixGroup, DEFAULT_GROUP_CAP};
pub use roots::{moreau, parabolic, reflection, RootSystem};

use crate::error::Error;
use crate::exact::{feasible_nonneg, rat, vec_add, QMatrix, QPoly, QVector, Rat};
use crate::fan::{Cone, Fan};
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet};

/// Values of a class function on a group: one polynomial per conjugacy
/// class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<QPoly>,
}

impl ClassFunction {
    pub fn new(group: &MatrixGroup, values: Vec<QPoly>) -> Result<ClassFunction, Error> {
        if values.len() != group.conj_classes().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} conjugacy classes",
                values.len(),
                group.conj_classes().len()
            )));
        }
        Ok(ClassFunction { values })
    }

    pub fn values(&self) -> &[QPoly] {
        &self.values
    }

    pub fn value_of_class(&self, class: usize) -> &QPoly {
        &self.values[class]
    }

    pub fn value_of_element(&self, group: &MatrixGroup, element: usize) -> &QPoly {
        &self.values[group.class_of(element)]
    }
}

/// A group bound to a fan it preserves: exact ray permutations per element,
/// plus ray generators rescaled so that `g · v_ρ = v_{g·ρ}` holds on the
/// nose for every element.
#[derive(Clone, Debug)]
pub struct FanAction {
    group: MatrixGroup,
    fan: Fan,
    /// Orbit-consistent generators (same directions as the fan's rays).
    gens: Vec<QVector>,
    /// `gens[ρ] = scales[ρ] · fan.generator(ρ)`.
    scales: Vec<Rat>,
    /// `ray_perm[e][ρ]` = image of ray `ρ` under element `e`.
    ray_perm: Vec<Vec<usize>>,
}

/// Verifies that every element of `group` maps cones of `fan` to cones and
/// returns the bound action.
pub fn bind_action(group: &MatrixGroup, fan: &Fan) -> Result<FanAction, Error> {
    if group.dim() != fan.dim() {
        return Err(Error::DimensionMismatch(
            "group and fan live in different dimensions".into(),
        ));
    }
    let nrays = fan.rays().len();
    let ray_index: HashMap<&QVector, usize> = (0..nrays)
        .map(|r| (fan.generator(r), r))
        .collect();
    let mut ray_perm: Vec<Vec<usize>> = Vec::with_capacity(group.order());
    for (e, g) in group.elements().iter().enumerate() {
        let mut perm = Vec::with_capacity(nrays);
        for r in 0..nrays {
            let img = crate::exact::primitive(&g.mul_vec(fan.generator(r)));
            match ray_index.get(&img) {
                Some(&j) => perm.push(j),
                None => {
                    return Err(Error::NotFanInvariant {
                        element: e,
                        witness: format!("ray {r} maps outside the ray set"),
                    })
                }
            }
        }
        ray_perm.push(perm);
    }
    for (e, perm) in ray_perm.iter().enumerate() {
        for c in fan.all_cones() {
            let mut img: Vec<usize> = c.rays.iter().map(|&r| perm[r]).collect();
            img.sort_unstable();
            if !fan.has_cone(&img) {
                return Err(Error::NotFanInvariant {
                    element: e,
                    witness: format!("cone {:?} maps to {:?}, which is not a cone", c.rays, img),
                });
            }
        }
    }

    // rescale generators orbit by orbit: fix the lowest-index ray of each
    // orbit and push its generator around by the group
    let mut gens: Vec<Option<QVector>> = vec![None; nrays];
    for rep in 0..nrays {
        if gens[rep].is_some() {
            continue;
        }
        gens[rep] = Some(fan.generator(rep).clone());
        let mut queue = vec![rep];
        while let Some(r) = queue.pop() {
            let v = gens[r].clone().expect("queued ray has a generator");
            for (e, perm) in ray_perm.iter().enumerate() {
                let img = perm[r];
                if gens[img].is_none() {
                    gens[img] = Some(group.element(e).mul_vec(&v));
                    queue.push(img);
                }
            }
        }
    }
    let gens: Vec<QVector> = gens
        .into_iter()
        .map(|g| g.expect("every ray lies in some orbit"))
        .collect();
    // consistency: finite order makes the propagated choice unique
    for (e, perm) in ray_perm.iter().enumerate() {
        for r in 0..nrays {
            if group.element(e).mul_vec(&gens[r]) != gens[perm[r]] {
                return Err(Error::Internal(format!(
                    "orbit rescaling is inconsistent on ray {r} under element {e}"
                )));
            }
        }
    }
    let scales: Vec<Rat> = (0..nrays)
        .map(|r| {
            let orig = fan.generator(r);
            let k = orig
                .iter()
                .position(|x| !x.is_zero())
                .expect("ray generators are nonzero");
            let s = &gens[r][k] / &orig[k];
            if !s.is_positive() {
                return Err(Error::Internal(format!(
                    "rescaled generator of ray {r} reversed direction"
                )));
            }
            Ok(s)
        })
        .collect::<Result<_, _>>()?;
    Ok(FanAction {
        group: group.clone(),
        fan: fan.clone(),
        gens,
        scales,
        ray_perm,
    })
}

impl FanAction {
    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// The orbit-consistent generator of ray `r`.
    pub fn generator(&self, r: usize) -> &QVector {
        &self.gens[r]
    }

    pub fn generators(&self) -> &[QVector] {
        &self.gens
    }

    pub fn scale(&self, r: usize) -> &Rat {
        &self.scales[r]
    }

    pub fn ray_perm(&self, element: usize) -> &[usize] {
        &self.ray_perm[element]
    }

    /// Sorted ray set of the image cone `g·σ`.
    pub fn cone_image(&self, element: usize, rays: &[usize]) -> Vec<usize> {
        let perm = &self.ray_perm[element];
        let mut img: Vec<usize> = rays.iter().map(|&r| perm[r]).collect();
        img.sort_unstable();
        img
    }

    pub fn is_setwise_fixed(&self, element: usize, rays: &[usize]) -> bool {
        self.cone_image(element, rays) == rays
    }

    /// Indices (into the group) of the elements stabilizing the cone setwise.
    pub fn setwise_stabilizer_indices(&self, rays: &[usize]) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&e| self.is_setwise_fixed(e, rays))
            .collect()
    }

    /// The setwise stabilizer as a group in its own right.
    pub fn setwise_stabilizer(&self, rays: &[usize]) -> Result<MatrixGroup, Error> {
        let elems: Vec<QMatrix> = self
            .setwise_stabilizer_indices(rays)
            .into_iter()
            .map(|e| self.group.element(e).clone())
            .collect();
        MatrixGroup::from_elements(self.group.space().clone(), elems)
    }

    /// The orbit of a cone, as sorted ray sets in deterministic order.
    pub fn orbit_of(&self, rays: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut orbit = Vec::new();
        let mut queue = vec![rays.to_vec()];
        seen.insert(rays.to_vec());
        while let Some(c) = queue.pop() {
            for e in 0..self.group.order() {
                let img = self.cone_image(e, &c);
                if seen.insert(img.clone()) {
                    queue.push(img);
                }
            }
            orbit.push(c);
        }
        orbit.sort_unstable();
        orbit
    }

    /// All cone orbits, grouped by dimension, in deterministic order.
    pub fn cone_orbits(&self) -> Vec<Vec<Cone>> {
        let mut orbits = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for dim in 0..=self.fan.max_cone_dim() {
            for c in self.fan.cones(dim) {
                if seen.contains(&c.rays) {
                    continue;
                }
                let members = self.orbit_of(&c.rays);
                for m in &members {
                    seen.insert(m.clone());
                }
                orbits.push(
                    members
                        .into_iter()
                        .map(|rays| self.fan.cone(&rays).expect("orbit member is a cone").clone())
                        .collect(),
                );
            }
        }
        orbits
    }

    /// True when every element that stabilizes a cone setwise fixes each of
    /// its rays.
    pub fn is_proper(&self) -> bool {
        self.proper_violation().is_none()
    }

    /// A witness pair (element, cone) breaking properness, if any.
    pub fn proper_violation(&self) -> Option<(usize, Cone)> {
        for e in 1..self.group.order() {
            let perm = &self.ray_perm[e];
            for c in self.fan.all_cones() {
                if self.is_setwise_fixed(e, &c.rays) && c.rays.iter().any(|&r| perm[r] != r) {
                    return Some((e, c.clone()));
                }
            }
        }
        None
    }

    /// A relative-interior point of the cone fixed by its setwise
    /// stabilizer: the stabilizer average of the ray-generator barycenter.
    pub fn average_point(&self, rays: &[usize]) -> Result<QVector, Error> {
        let d = self.fan.dim();
        let cone = self
            .fan
            .cone(rays)
            .ok_or_else(|| Error::NoSuchCone(rays.to_vec()))?;
        if rays.is_empty() {
            return Ok(vec![rat(0); d]);
        }
        let mut x = vec![rat(0); d];
        for &r in rays {
            x = vec_add(&x, &self.gens[r]);
        }
        let k = rat(rays.len() as i64);
        for e in x.iter_mut() {
            *e /= &k;
        }
        let stab = self.setwise_stabilizer_indices(rays);
        let mut y = vec![rat(0); d];
        for &e in &stab {
            y = vec_add(&y, &self.group.apply(e, &x));
        }
        let n = rat(stab.len() as i64);
        for e in y.iter_mut() {
            *e /= &n;
        }
        if !self.fan.cone_relint_contains(cone, &y) {
            return Err(Error::Internal(format!(
                "averaged point left the relative interior of cone {rays:?}"
            )));
        }
        for &e in &stab {
            if self.group.apply(e, &y) != y {
                return Err(Error::Internal(format!(
                    "averaged point of cone {rays:?} is not stabilizer-fixed"
                )));
            }
        }
        Ok(y)
    }

    /// Whether the relative interior of the cone meets the closed chamber
    /// `D = {v : ⟨v, α⟩ ≥ 0 ∀α ∈ Δ}`.  Tries the barycenter first, then an
    /// exact feasibility program.
    pub fn relint_meets_chamber(&self, rs: &RootSystem, rays: &[usize]) -> bool {
        if rays.is_empty() || rs.rank() == 0 {
            return true;
        }
        let mut bary = vec![rat(0); self.fan.dim()];
        for &r in rays {
            bary = vec_add(&bary, &self.gens[r]);
        }
        if rs.in_chamber(&bary) {
            return true;
        }
        // feasibility of  Σ_ρ (λ_ρ + 1) ⟨v_ρ, α_j⟩ ≥ 0,  λ ≥ 0:
        // rows  Σ_ρ λ_ρ a_{jρ} − s_j = −Σ_ρ a_{jρ}
        let k = rays.len();
        let r = rs.rank();
        let mut rows = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for (j, alpha) in rs.simple_roots().iter().enumerate() {
            let mut row = vec![rat(0); k + r];
            let mut total = rat(0);
            for (col, &ray) in rays.iter().enumerate() {
                let a = rs.space().inner(&self.gens[ray], alpha);
                total += &a;
                row[col] = a;
            }
            row[k + j] = rat(-1);
            rows.push(row);
            rhs.push(-total);
        }
        feasible_nonneg(&QMatrix::from_rows(rows), &rhs).is_some()
    }
}

/// One cone per orbit whose relative interior meets the closed dominant
/// chamber; uniqueness within each orbit is verified.
pub fn orbit_representatives_in_chamber(
    action: &FanAction,
    rs: &RootSystem,
) -> Result<Vec<Cone>, Error> {
    if !action.group().same_elements(rs.group()) {
        return Err(Error::GroupMismatch);
    }
    let mut reps = Vec::new();
    for orbit in action.cone_orbits() {
        let hits: Vec<&Cone> = orbit
            .iter()
            .filter(|c| action.relint_meets_chamber(rs, &c.rays))
            .collect();
        if hits.len() != 1 {
            return Err(Error::OrbitRepresentative {
                cone: orbit[0].rays.clone(),
                count: hits.len(),
            });
        }
        reps.push(hits[0].clone());
    }
    Ok(reps)
}

/// Wall data of a chamber representative: which simple roots fix its
/// averaged interior point, which of those swap a ray pair, and which rays
/// lie in the chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    /// Simple-root indices whose reflections fix the averaged point
    /// (they generate its stabilizer).
    pub stabilizer_roots: Vec<usize>,
    /// The subset of `stabilizer_roots` whose reflections swap exactly one
    /// pair of the cone's rays.
    pub swap_roots: Vec<usize>,
    /// The cone's rays whose generators lie in the chamber.
    pub chamber_rays: Vec<usize>,
}

/// Computes the wall data for a cone whose relative interior meets the
/// dominant chamber, verifying on the way that the point stabilizer is the
/// standard parabolic subgroup of the roots it contains and that every
/// wall reflection either fixes the cone's rays or swaps exactly one pair.
pub fn parabolic_data(
    action: &FanAction,
    rs: &RootSystem,
    rays: &[usize],
) -> Result<ParabolicData, Error> {
    if !action.group().same_elements(rs.group()) {
        return Err(Error::GroupMismatch);
    }
    if !action.relint_meets_chamber(rs, rays) {
        return Err(Error::Internal(format!(
            "cone {rays:?} does not meet the dominant chamber"
        )));
    }
    let y = action.average_point(rays)?;
    let stabilizer_roots: Vec<usize> = (0..rs.rank())
        .filter(|&j| rs.space().inner(&y, &rs.simple_roots()[j]).is_zero())
        .collect();
    // the point stabilizer must be exactly the parabolic these roots generate
    let stab = point_stabilizer(rs.group(), &y)?;
    let para = parabolic(rs, &stabilizer_roots)?;
    if !stab.same_elements(&para) {
        return Err(Error::NotParabolic);
    }
    let ray_set: HashSet<usize> = rays.iter().copied().collect();
    let mut swap_roots = Vec::new();
    for &j in &stabilizer_roots {
        let refl = rs.group().element(rs.simple_reflection(j));
        let e = action
            .group()
            .index_of(refl)
            .ok_or(Error::GroupMismatch)?;
        let perm = action.ray_perm(e);
        let moved: Vec<usize> = rays.iter().copied().filter(|&r| perm[r] != r).collect();
        match moved.len() {
            0 => {}
            2 if perm[moved[0]] == moved[1]
                && perm[moved[1]] == moved[0]
                && ray_set.contains(&moved[0])
                && ray_set.contains(&moved[1]) =>
            {
                swap_roots.push(j);
            }
            _ => {
                return Err(Error::SwapDichotomy {
                    root: j,
                    cone: rays.to_vec(),
                });
            }
        }
    }
    let chamber_rays: Vec<usize> = rays
        .iter()
        .copied()
        .filter(|&r| rs.in_chamber(action.generator(r)))
        .collect();
    Ok(ParabolicData {
        stabilizer_roots,
        swap_roots,
        chamber_rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{cross_polytope_fan, AmbientSpace};

    fn v(entries: &[i64]) -> QVector {
        entries.iter().map(|&x| rat(x)).collect()
    }

    fn b2() -> RootSystem {
        RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, -1]), v(&[0, 1])],
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    fn quadrant_action() -> (FanAction, RootSystem) {
        let rs = b2();
        let fan = cross_polytope_fan(2).unwrap();
        let action = bind_action(rs.group(), &fan).unwrap();
        (action, rs)
    }

    #[test]
    fn trivial_action_is_identity() {
        let fan = cross_polytope_fan(2).unwrap();
        let g = MatrixGroup::generate(AmbientSpace::standard(2), &[], 10).unwrap();
        let a = bind_action(&g, &fan).unwrap();
        assert_eq!(a.ray_perm(0), &[0, 1, 2, 3]);
        assert!(a.is_proper());
        assert_eq!(a.cone_orbits().len(), fan.cone_count());
    }

    #[test]
    fn sign_flips_on_octant_fan() {
        let fan = cross_polytope_fan(3).unwrap();
        let gens: Vec<QMatrix> = (0..3)
            .map(|i| {
                let mut m = QMatrix::identity(3);
                *m.at_mut(i, i) = rat(-1);
                m
            })
            .collect();
        let g = MatrixGroup::generate(AmbientSpace::standard(3), &gens, 100).unwrap();
        assert_eq!(g.order(), 8);
        let a = bind_action(&g, &fan).unwrap();
        // scales are all 1 and generators unchanged
        assert!(a.scales.iter().all(|s| s == &rat(1)));
        assert_eq!(a.generators().len(), 6);
        // orbits: one per coordinate subset
        assert_eq!(a.cone_orbits().len(), 8);
    }

    #[test]
    fn non_invariant_fan_rejected_at_ray_level() {
        // a quadrant-only fan is not preserved by the antipodal map
        let fan = Fan::build(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![vec![0, 1]],
        )
        .unwrap();
        let neg = {
            let mut m = QMatrix::identity(2);
            *m.at_mut(0, 0) = rat(-1);
            *m.at_mut(1, 1) = rat(-1);
            m
        };
        let g = MatrixGroup::generate(AmbientSpace::standard(2), &[neg], 10).unwrap();
        let err = bind_action(&g, &fan).unwrap_err();
        assert!(matches!(err, Error::NotFanInvariant { element: 1, .. }));
    }

    #[test]
    fn non_invariant_fan_rejected_at_cone_level() {
        // rays are rotation-stable but the cone set is not
        let fan = Fan::build(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let rot = QMatrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
        let g = MatrixGroup::generate(AmbientSpace::standard(2), &[rot], 10).unwrap();
        let err = bind_action(&g, &fan).unwrap_err();
        match err {
            Error::NotFanInvariant { witness, .. } => {
                assert!(witness.contains("cone"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rebinding_changes_nothing() {
        let (a, _) = quadrant_action();
        let again = bind_action(a.group(), a.fan()).unwrap();
        assert_eq!(a.ray_perm, again.ray_perm);
        assert_eq!(a.gens, again.gens);
        assert!(again.scales.iter().all(|s| s == &rat(1)));
    }

    #[test]
    fn quadrant_stabilizers_under_b2() {
        let (a, _) = quadrant_action();
        // rays come out as e1, e2, −e1, −e2
        assert_eq!(a.fan().generator(0), &v(&[1, 0]));
        let full = a.setwise_stabilizer(&[]).unwrap();
        assert_eq!(full.order(), 8);
        let quadrant = a.setwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(quadrant.order(), 2);
        let swap = QMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        assert!(quadrant.index_of(&swap).is_some());
        let axis = a.setwise_stabilizer(&[0]).unwrap();
        assert_eq!(axis.order(), 2);
        let flip = QMatrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]);
        assert!(axis.index_of(&flip).is_some());
    }

    #[test]
    fn quadrant_orbit_representatives() {
        let (a, rs) = quadrant_action();
        let reps = orbit_representatives_in_chamber(&a, &rs).unwrap();
        let rep_rays: Vec<Vec<usize>> = reps.iter().map(|c| c.rays.clone()).collect();
        // zero cone, the e1 ray, and the first quadrant
        assert_eq!(rep_rays, vec![vec![], vec![0], vec![0, 1]]);
    }

    #[test]
    fn octant_orbit_representatives_under_sign_flips() {
        let fan = cross_polytope_fan(3).unwrap();
        let rs = RootSystem::new(
            AmbientSpace::standard(3),
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
            100,
        )
        .unwrap();
        let a = bind_action(rs.group(), &fan).unwrap();
        let reps = orbit_representatives_in_chamber(&a, &rs).unwrap();
        // the faces of the positive octant: one rep per coordinate subset
        let rep_rays: Vec<Vec<usize>> = reps.iter().map(|c| c.rays.clone()).collect();
        assert_eq!(
            rep_rays,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn quadrant_action_is_not_proper_but_coxeter_action_is() {
        let (a, _) = quadrant_action();
        assert!(!a.is_proper());
        let (e, c) = a.proper_violation().unwrap();
        assert_eq!(c.rays, vec![0, 1]);
        assert!(e > 0);
    }

    #[test]
    fn average_points_on_quadrant_fan() {
        let (a, _) = quadrant_action();
        assert_eq!(a.average_point(&[]).unwrap(), v(&[0, 0]));
        assert_eq!(a.average_point(&[0]).unwrap(), v(&[1, 0]));
        let y = a.average_point(&[0, 1]).unwrap();
        assert_eq!(y[0], y[1]);
        assert!(y[0].is_positive());
    }

    #[test]
    fn parabolic_data_on_quadrant_fan() {
        let (a, rs) = quadrant_action();
        // full quadrant: diagonal wall fixes the average, swaps e1 and e2
        let d = parabolic_data(&a, &rs, &[0, 1]).unwrap();
        assert_eq!(d.stabilizer_roots, vec![0]);
        assert_eq!(d.swap_roots, vec![0]);
        assert_eq!(d.chamber_rays, vec![0]);
        // the e1 ray: fixed by the second wall, nothing swapped
        let d = parabolic_data(&a, &rs, &[0]).unwrap();
        assert_eq!(d.stabilizer_roots, vec![1]);
        assert!(d.swap_roots.is_empty());
        assert_eq!(d.chamber_rays, vec![0]);
        // the zero cone: all walls fix the origin
        let d = parabolic_data(&a, &rs, &[]).unwrap();
        assert_eq!(d.stabilizer_roots, vec![0, 1]);
        assert!(d.swap_roots.is_empty());
        assert!(d.chamber_rays.is_empty());
    }

    #[test]
    fn wall_cones_are_reflection_invariant() {
        // every cone whose averaged point lies on a reflection hyperplane is
        // setwise invariant under that reflection
        let (a, rs) = quadrant_action();
        for c in a.fan().all_cones() {
            let y = a.average_point(&c.rays).unwrap();
            for &i in rs.pair_reps() {
                let alpha = &rs.roots()[i];
                if rs.space().inner(&y, alpha).is_zero() {
                    let s = reflection(alpha, rs.space()).unwrap();
                    let e = rs.group().index_of(&s).unwrap();
                    assert!(a.is_setwise_fixed(e, &c.rays));
                }
            }
        }
    }

    #[test]
    fn stabilizers_match_point_stabilizers() {
        let (a, _) = quadrant_action();
        for c in a.fan().all_cones() {
            let y = a.average_point(&c.rays).unwrap();
            let setwise = a.setwise_stabilizer(&c.rays).unwrap();
            let pointwise = point_stabilizer(a.group(), &y).unwrap();
            assert!(setwise.same_elements(&pointwise));
        }
    }
}
