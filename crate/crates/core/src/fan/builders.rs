//! Ready-made complete fans: the coordinate-orthant fan (central fan of the
//! cross-polytope) and chamber fans of finite reflection groups.

use super::{AmbientSpace, Fan};
use crate::error::Error;
use crate::exact::{primitive, rat, QVector};
use crate::symmetry::RootSystem;
use std::collections::{BTreeSet, HashMap};

/// The fan of all coordinate orthants in dimension `d`: rays are
/// `e_1, ..., e_d, -e_1, ..., -e_d` and the `2^d` maximal cones are the
/// orthants.  This is the central fan of the cross-polytope and the normal
/// fan of the cube.
pub fn cross_polytope_fan(d: usize) -> Result<Fan, Error> {
    if d == 0 {
        return Err(Error::InvalidFan("dimension must be positive".into()));
    }
    let mut gens: Vec<QVector> = Vec::with_capacity(2 * d);
    for s in [1i64, -1] {
        for i in 0..d {
            let mut e = vec![rat(0); d];
            e[i] = rat(s);
            gens.push(e);
        }
    }
    let cones: Vec<Vec<usize>> = (0..1usize << d)
        .map(|mask| {
            (0..d)
                .map(|i| if mask >> i & 1 == 0 { i } else { d + i })
                .collect()
        })
        .collect();
    Fan::build(AmbientSpace::standard(d), gens, cones)
}

/// The chamber fan of a full-rank finite reflection group: maximal cones
/// are the images `w·D` of the closed dominant chamber, rays the group
/// orbit of the chamber's extreme rays (the dual basis of the simple
/// roots).
pub fn coxeter_fan(rs: &RootSystem) -> Result<Fan, Error> {
    let d = rs.space().dim();
    if rs.rank() != d {
        return Err(Error::RankDeficient {
            rank: rs.rank(),
            expected: d,
        });
    }
    let omega = rs.fundamental_coweights()?;
    let mut gens: Vec<QVector> = Vec::new();
    let mut index: HashMap<QVector, usize> = HashMap::new();
    let mut chambers: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in rs.group().elements() {
        let mut cone: Vec<usize> = omega
            .iter()
            .map(|o| {
                let v = primitive(&w.mul_vec(o));
                *index.entry(v.clone()).or_insert_with(|| {
                    gens.push(v);
                    gens.len() - 1
                })
            })
            .collect();
        cone.sort_unstable();
        chambers.insert(cone);
    }
    Fan::build(
        rs.space().clone(),
        gens,
        chambers.into_iter().collect(),
    )
}
