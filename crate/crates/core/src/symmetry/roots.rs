//! Root systems and reflection groups: reflections, closure of simple roots
//! under the generated group, standard parabolic subgroups, the dominant
//! chamber, and nearest-point (Moreau) decomposition against it.

use super::group::{MatrixGroup, DEFAULT_GROUP_CAP};
use crate::error::Error;
use crate::exact::{
    primitive, primitive_signed, rank, rat, solve, vec_is_zero, vec_sub, QMatrix, QVector, Rat,
};
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// The reflection fixing the hyperplane orthogonal to `alpha`:
/// `v ↦ v − 2⟨v,α⟩/⟨α,α⟩ · α`.
pub fn reflection(alpha: &[Rat], space: &crate::fan::AmbientSpace) -> Result<QMatrix, Error> {
    if alpha.len() != space.dim() {
        return Err(Error::DimensionMismatch(format!(
            "root has {} entries in a {}-dimensional space",
            alpha.len(),
            space.dim()
        )));
    }
    if vec_is_zero(alpha) {
        return Err(Error::BadRootSystem(
            "cannot reflect across the zero vector".into(),
        ));
    }
    let d = space.dim();
    let norm = space.inner(alpha, alpha);
    let dual = space.gram().mul_vec(alpha); // row functional v ↦ ⟨v, α⟩
    let mut m = QMatrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            let delta = rat(2) * &alpha[i] * &dual[j] / &norm;
            *m.at_mut(i, j) -= delta;
        }
    }
    Ok(m)
}

/// A finite root system presented by simple roots, together with the
/// reflection group they generate.
#[derive(Clone, Debug)]
pub struct RootSystem {
    space: crate::fan::AmbientSpace,
    simple_roots: Vec<QVector>,
    /// All root directions (primitive, both signs), sorted.
    roots: Vec<QVector>,
    /// One index per ± pair (the member whose first nonzero entry is positive).
    pair_reps: Vec<usize>,
    group: MatrixGroup,
    /// Index of each simple reflection inside `group`.
    simple_refl: Vec<usize>,
}

impl RootSystem {
    /// Closes the simple roots under their generated reflection group and
    /// verifies the root-system axioms on the result.
    pub fn new(
        space: crate::fan::AmbientSpace,
        simple_roots: Vec<QVector>,
        cap: usize,
    ) -> Result<RootSystem, Error> {
        let r = simple_roots.len();
        for a in &simple_roots {
            if a.len() != space.dim() {
                return Err(Error::DimensionMismatch(
                    "simple root length differs from ambient dimension".into(),
                ));
            }
            if vec_is_zero(a) {
                return Err(Error::BadRootSystem("zero simple root".into()));
            }
        }
        if rank(&QMatrix::from_rows(simple_roots.clone())) != r {
            return Err(Error::RankDeficient {
                rank: rank(&QMatrix::from_rows(simple_roots.clone())),
                expected: r,
            });
        }
        let refls: Vec<QMatrix> = simple_roots
            .iter()
            .map(|a| reflection(a, &space))
            .collect::<Result<_, _>>()?;
        let group = MatrixGroup::generate(space.clone(), &refls, cap)?;
        let simple_refl: Vec<usize> = refls
            .iter()
            .map(|m| {
                group
                    .index_of(m)
                    .ok_or_else(|| Error::Internal("generator missing from its group".into()))
            })
            .collect::<Result<_, _>>()?;

        // the full root set: group orbit of the simple roots, as directions
        let mut seen: HashMap<QVector, ()> = HashMap::new();
        let mut roots: Vec<QVector> = Vec::new();
        for w in group.elements() {
            for a in &simple_roots {
                let img = primitive(&w.mul_vec(a));
                if seen.insert(img.clone(), ()).is_none() {
                    roots.push(img);
                }
            }
        }
        roots.sort_unstable();
        let root_index: HashMap<&QVector, usize> =
            roots.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let pair_reps: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, v)| primitive_signed(v) == **v)
            .map(|(i, _)| i)
            .collect();

        // axiom (i): the only roots on each line are the ± pair
        for v in &roots {
            let neg: QVector = v.iter().map(|x| -x).collect();
            if !root_index.contains_key(&neg) {
                return Err(Error::BadRootSystem(
                    "root set is not symmetric under negation".into(),
                ));
            }
        }
        if pair_reps.len() * 2 != roots.len() {
            return Err(Error::BadRootSystem(
                "roots do not split into ± pairs".into(),
            ));
        }
        // axiom (ii): every root reflection permutes the root directions
        // (and belongs to the group)
        for &i in &pair_reps {
            let s = reflection(&roots[i], &space)?;
            if group.index_of(&s).is_none() {
                return Err(Error::BadRootSystem(
                    "a root reflection lies outside the generated group".into(),
                ));
            }
            for v in &roots {
                if !root_index.contains_key(&primitive(&s.mul_vec(v))) {
                    return Err(Error::BadRootSystem(
                        "a root reflection does not permute the roots".into(),
                    ));
                }
            }
        }
        Ok(RootSystem {
            space,
            simple_roots,
            roots,
            pair_reps,
            group,
            simple_refl,
        })
    }

    pub fn space(&self) -> &crate::fan::AmbientSpace {
        &self.space
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple_roots
    }

    pub fn roots(&self) -> &[QVector] {
        &self.roots
    }

    /// Indices into `roots()`, one per ± pair.
    pub fn pair_reps(&self) -> &[usize] {
        &self.pair_reps
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    /// Group index of the `i`-th simple reflection.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.simple_refl[i]
    }

    /// Pairings `⟨v, α_j⟩` against all simple roots.
    pub fn chamber_pairings(&self, v: &[Rat]) -> Vec<Rat> {
        self.simple_roots
            .iter()
            .map(|a| self.space.inner(v, a))
            .collect()
    }

    /// Membership in the closed dominant chamber
    /// `D = {v : ⟨v, α⟩ ≥ 0 for every simple root α}`.
    pub fn in_chamber(&self, v: &[Rat]) -> bool {
        self.chamber_pairings(v).iter().all(|x| !x.is_negative())
    }

    /// The dual basis to the simple roots under ⟨−,−⟩: vectors `ω_i` with
    /// `⟨ω_i, α_j⟩ = δ_ij`.  Requires a full-rank root system.
    pub fn fundamental_coweights(&self) -> Result<Vec<QVector>, Error> {
        let d = self.space.dim();
        if self.rank() != d {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                expected: d,
            });
        }
        let rows: Vec<QVector> = self
            .simple_roots
            .iter()
            .map(|a| self.space.gram().mul_vec(a))
            .collect();
        let m = QMatrix::from_rows(rows);
        let mut omega = Vec::with_capacity(d);
        for i in 0..d {
            let mut e = vec![rat(0); d];
            e[i] = rat(1);
            let w = solve(&m, &e)?
                .ok_or_else(|| Error::Internal("independent roots gave singular system".into()))?;
            omega.push(w);
        }
        Ok(omega)
    }
}

/// Standard parabolic subgroup generated by the chosen simple reflections.
pub fn parabolic(rs: &RootSystem, subset: &[usize]) -> Result<MatrixGroup, Error> {
    for &j in subset {
        if j >= rs.rank() {
            return Err(Error::DimensionMismatch(format!(
                "simple-root index {j} out of range for rank {}",
                rs.rank()
            )));
        }
    }
    let gens: Vec<QMatrix> = subset
        .iter()
        .map(|&j| rs.group().element(rs.simple_reflection(j)).clone())
        .collect();
    MatrixGroup::generate(rs.space().clone(), &gens, DEFAULT_GROUP_CAP)
}

/// Nearest-point decomposition of `v` against the dominant chamber:
/// `v = v_D + v_N` with `v_D ∈ D`, `v_N` a nonpositive combination of the
/// simple roots orthogonal to `v_D`.  The pair is unique; both uniqueness
/// and existence are asserted by enumerating active subsets of the simple
/// roots.
pub fn moreau(v: &[Rat], rs: &RootSystem) -> Result<(QVector, QVector), Error> {
    if v.len() != rs.space().dim() {
        return Err(Error::DimensionMismatch(
            "vector length differs from ambient dimension".into(),
        ));
    }
    let r = rs.rank();
    let alphas = rs.simple_roots();
    let mut accepted: Vec<(QVector, QVector)> = Vec::new();
    for mask in 0..1usize << r {
        let active: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let k = active.len();
        // solve  Σ_l ⟨α_l, α_k⟩ c_l = ⟨v, α_k⟩  over the active set
        let coeffs = if k == 0 {
            Vec::new()
        } else {
            let gram_rows: Vec<QVector> = active
                .iter()
                .map(|&a| {
                    active
                        .iter()
                        .map(|&b| rs.space().inner(&alphas[b], &alphas[a]))
                        .collect()
                })
                .collect();
            let rhs: QVector = active
                .iter()
                .map(|&a| rs.space().inner(v, &alphas[a]))
                .collect();
            match solve(&QMatrix::from_rows(gram_rows), &rhs)? {
                Some(c) => c,
                None => continue,
            }
        };
        if coeffs.iter().any(|c| c.is_positive()) {
            continue;
        }
        let mut v_n = vec![rat(0); v.len()];
        for (c, &a) in coeffs.iter().zip(&active) {
            for (x, y) in v_n.iter_mut().zip(&alphas[a]) {
                *x += c * y;
            }
        }
        let v_d = vec_sub(v, &v_n);
        if !rs.in_chamber(&v_d) {
            continue;
        }
        accepted.push((v_d, v_n));
    }
    let first = accepted
        .first()
        .cloned()
        .ok_or_else(|| Error::MoreauFailed("no active set yields a valid decomposition".into()))?;
    if accepted.iter().any(|p| *p != first) {
        return Err(Error::MoreauFailed(
            "decomposition is not unique across active sets".into(),
        ));
    }
    debug_assert!(rs.space().inner(&first.0, &first.1).is_zero());
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::AmbientSpace;

    fn v(entries: &[i64]) -> QVector {
        entries.iter().map(|&x| rat(x)).collect()
    }

    pub(crate) fn b2() -> RootSystem {
        RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, -1]), v(&[0, 1])],
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    #[test]
    fn reflection_matrices() {
        let space = AmbientSpace::standard(2);
        let s1 = reflection(&v(&[1, 0]), &space).unwrap();
        assert_eq!(
            s1,
            QMatrix::from_rows(vec![vec![rat(-1), rat(0)], vec![rat(0), rat(1)]])
        );
        let swap = reflection(&v(&[1, -1]), &space).unwrap();
        assert_eq!(
            swap,
            QMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]])
        );
        let s = reflection(&v(&[2, 3]), &space).unwrap();
        assert!((&s * &s).is_identity());
        assert!(reflection(&v(&[0, 0]), &space).is_err());
    }

    #[test]
    fn orthogonal_roots() {
        let rs = RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[0, 1])],
            100,
        )
        .unwrap();
        assert_eq!(rs.roots().len(), 4);
        assert_eq!(rs.group().order(), 4);
        assert_eq!(rs.pair_reps().len(), 2);
    }

    #[test]
    fn b2_roots() {
        let rs = b2();
        assert_eq!(rs.roots().len(), 8);
        assert_eq!(rs.group().order(), 8);
        assert_eq!(rs.group().conj_classes().len(), 5);
    }

    #[test]
    fn a2_in_sum_zero_coordinates() {
        let rs = RootSystem::new(
            AmbientSpace::standard(3),
            vec![v(&[1, -1, 0]), v(&[0, 1, -1])],
            100,
        )
        .unwrap();
        assert_eq!(rs.roots().len(), 6);
        assert_eq!(rs.group().order(), 6);
        // rank 2 in a 3-dimensional space: no coweights
        assert!(rs.fundamental_coweights().is_err());
    }

    #[test]
    fn infinite_dihedral_rejected() {
        let err = RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[1, 2])],
            200,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge(200)));
    }

    #[test]
    fn dependent_roots_rejected() {
        let err = RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[-2, 0])],
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RankDeficient { .. }));
    }

    #[test]
    fn parabolic_subgroups() {
        let rs = b2();
        assert_eq!(parabolic(&rs, &[]).unwrap().order(), 1);
        assert_eq!(parabolic(&rs, &[0]).unwrap().order(), 2);
        assert_eq!(parabolic(&rs, &[0, 1]).unwrap().order(), 8);
        assert!(parabolic(&rs, &[5]).is_err());
    }

    #[test]
    fn coweights_pair_against_roots() {
        let rs = b2();
        let omega = rs.fundamental_coweights().unwrap();
        for (i, w) in omega.iter().enumerate() {
            for (j, a) in rs.simple_roots().iter().enumerate() {
                let expect = if i == j { rat(1) } else { rat(0) };
                assert_eq!(rs.space().inner(w, a), expect);
            }
        }
    }

    #[test]
    fn moreau_examples() {
        let rs = RootSystem::new(
            AmbientSpace::standard(2),
            vec![v(&[1, 0]), v(&[0, 1])],
            100,
        )
        .unwrap();
        // already dominant
        assert_eq!(moreau(&v(&[2, 3]), &rs).unwrap(), (v(&[2, 3]), v(&[0, 0])));
        // one active wall
        assert_eq!(
            moreau(&v(&[-1, 2]), &rs).unwrap(),
            (v(&[0, 2]), v(&[-1, 0]))
        );
        // fully in the polar cone
        assert_eq!(
            moreau(&v(&[-1, -1]), &rs).unwrap(),
            (v(&[0, 0]), v(&[-1, -1]))
        );
    }

    #[test]
    fn moreau_random_vectors_decompose_orthogonally() {
        use rand::{Rng, SeedableRng};
        let rs = b2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x: QVector = (0..2)
                .map(|_| {
                    crate::exact::rat_from(rng.gen_range(-30..=30), rng.gen_range(1..=7))
                })
                .collect();
            let (d, n) = moreau(&x, &rs).unwrap();
            assert!(rs.in_chamber(&d));
            assert!(rs.space().inner(&d, &n).is_zero());
            // the residual is a nonpositive combination of the simple roots
            let cols: Vec<QVector> = rs.simple_roots().to_vec();
            let c = solve(&QMatrix::from_cols(cols), &n).unwrap().unwrap();
            assert!(c.iter().all(|x| !x.is_positive()));
            // and the parts sum back to the input
            let sum: QVector = d.iter().zip(&n).map(|(a, b)| a + b).collect();
            assert_eq!(sum, x);
        }
    }

    #[test]
    fn empty_root_system() {
        let rs = RootSystem::new(AmbientSpace::standard(2), vec![], 10).unwrap();
        assert_eq!(rs.group().order(), 1);
        assert!(rs.in_chamber(&v(&[-5, 3])));
        let (d, n) = moreau(&v(&[-5, 3]), &rs).unwrap();
        assert_eq!(d, v(&[-5, 3]));
        assert_eq!(n, v(&[0, 0]));
    }
}
