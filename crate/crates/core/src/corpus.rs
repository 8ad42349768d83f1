//! Built-in worked examples with frozen expected values.
//!
//! Each fan entry pairs a complete simplicial source fan with a reflection
//! group acting on it and freezes the three headline quantities: the
//! h-polynomial of the source fan, the invariant Poincaré polynomial of the
//! action, and the f-vector of the folded fan.  Polytope entries pair an
//! invariant polytope with the group whose dominant chamber cuts it and
//! freeze the vertices of the quotient.
//!
//! Every frozen value records how it was obtained — counted by hand, or
//! frozen from a run of the brute-force ring oracle (`srring`), which
//! recomputes graded dimensions and traces from explicit monomial bases,
//! independently of every closed formula.  The unit tests recompute the
//! cheap routes against the manifest; `oracle_confirms_every_frozen_value`
//! (ignored by default, also exercised by the acceptance suite) replays the
//! oracle on all of it.

use crate::error::Error;
use crate::exact::{parse_rat, rat, QMatrix, QPoly, QVector};
use crate::fan::{coxeter_fan, cross_polytope_fan, AmbientSpace, Fan, Polytope};
use crate::symmetry::{RootSystem, DEFAULT_GROUP_CAP};

/// How a frozen expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Small enough to count or expand by hand.
    HandCount,
    /// Frozen from a run of the brute-force ring oracle.
    RingOracle,
}

/// An expected value together with its origin.
#[derive(Clone, Copy, Debug)]
pub struct Frozen<T> {
    pub value: T,
    pub how: Provenance,
}

const fn by_hand<T>(value: T) -> Frozen<T> {
    Frozen {
        value,
        how: Provenance::HandCount,
    }
}

const fn by_oracle<T>(value: T) -> Frozen<T> {
    Frozen {
        value,
        how: Provenance::RingOracle,
    }
}

/// Which source fan an entry uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FanKind {
    /// Central fan of the d-dimensional cross-polytope (the 2^d orthants).
    Cross(usize),
    /// Chamber fan of the entry's own reflection group.
    Chambers,
}

/// Which reflection group an entry uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GroupKind {
    /// No reflections at all, acting on d-dimensional space.
    Trivial(usize),
    /// Coordinate sign changes in d dimensions (simple roots e_1..e_d).
    Signs(usize),
    /// Full symmetry group of the square (order 8), standard coordinates.
    B2,
    /// Full symmetry group of the cube (order 48), standard coordinates.
    B3,
    /// Dihedral group of order 6, written in simple-root coordinates.
    A2,
    /// Symmetric group on four letters, written in simple-root coordinates.
    A3,
}

impl GroupKind {
    fn roots(self) -> Result<RootSystem, Error> {
        let (space, roots) = match self {
            GroupKind::Trivial(d) => (AmbientSpace::standard(d), vec![]),
            GroupKind::Signs(d) => {
                (AmbientSpace::standard(d), (0..d).map(|i| unit(d, i)).collect())
            }
            GroupKind::B2 => (
                AmbientSpace::standard(2),
                vec![int_vec(&[1, -1]), int_vec(&[0, 1])],
            ),
            GroupKind::B3 => (
                AmbientSpace::standard(3),
                vec![
                    int_vec(&[1, -1, 0]),
                    int_vec(&[0, 1, -1]),
                    int_vec(&[0, 0, 1]),
                ],
            ),
            GroupKind::A2 => (chain_space(2)?, vec![unit(2, 0), unit(2, 1)]),
            GroupKind::A3 => (chain_space(3)?, vec![unit(3, 0), unit(3, 1), unit(3, 2)]),
        };
        RootSystem::new(space, roots, DEFAULT_GROUP_CAP)
    }
}

fn int_vec(entries: &[i64]) -> QVector {
    entries.iter().map(|&x| rat(x)).collect()
}

fn unit(d: usize, i: usize) -> QVector {
    let mut v = vec![rat(0); d];
    v[i] = rat(1);
    v
}

/// Bilinear form of the rank-r "chain" reflection group: 2 on the diagonal,
/// -1 between neighbours.  In these coordinates the simple roots are the
/// standard basis vectors.
fn chain_space(r: usize) -> Result<AmbientSpace, Error> {
    let mut rows = vec![vec![rat(0); r]; r];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = rat(2);
        if i + 1 < r {
            row[i + 1] = rat(-1);
        }
        if i > 0 {
            row[i - 1] = rat(-1);
        }
    }
    AmbientSpace::new(r, QMatrix::from_rows(rows))
}

/// A source fan, a reflection group acting on it, and the frozen results.
#[derive(Clone, Copy, Debug)]
pub struct FanInstance {
    pub name: &'static str,
    pub about: &'static str,
    fan_kind: FanKind,
    group_kind: GroupKind,
    /// h-polynomial of the source fan, ascending coefficients.
    pub h: Frozen<&'static [i64]>,
    /// Invariant Poincaré polynomial of the action = h-polynomial of the
    /// folded fan, ascending coefficients.
    pub invariant: Frozen<&'static [i64]>,
    /// f-vector of the folded fan.
    pub hybrid_f: Frozen<&'static [usize]>,
}

impl FanInstance {
    pub fn fan(&self) -> Result<Fan, Error> {
        match self.fan_kind {
            FanKind::Cross(d) => cross_polytope_fan(d),
            FanKind::Chambers => coxeter_fan(&self.roots()?),
        }
    }

    pub fn roots(&self) -> Result<RootSystem, Error> {
        self.group_kind.roots()
    }

    pub fn expected_h(&self) -> QPoly {
        QPoly::new(self.h.value.iter().map(|&c| rat(c)).collect())
    }

    pub fn expected_invariant(&self) -> QPoly {
        QPoly::new(self.invariant.value.iter().map(|&c| rat(c)).collect())
    }
}

/// An invariant polytope, the group folding it, and the frozen quotient.
#[derive(Clone, Copy, Debug)]
pub struct PolytopeInstance {
    pub name: &'static str,
    pub about: &'static str,
    poly_kind: PolyKind,
    group_kind: GroupKind,
    /// Vertices of the quotient polytope, as rational strings.
    pub quotient_vertices: Frozen<&'static [&'static [&'static str]]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PolyKind {
    /// conv(±e_1 ± e_2): the square with corners (±1, ±1).
    Square,
    /// conv(±e_i) in three dimensions.
    Octahedron,
    /// [-1, 1]^3.
    Cube,
    /// Orbit of (1, 1) under the order-6 dihedral group, in simple-root
    /// coordinates.
    Hexagon,
}

impl PolytopeInstance {
    pub fn polytope(&self) -> Result<Polytope, Error> {
        match self.poly_kind {
            PolyKind::Square => Polytope::new(
                AmbientSpace::standard(2),
                vec![
                    int_vec(&[1, 1]),
                    int_vec(&[1, -1]),
                    int_vec(&[-1, 1]),
                    int_vec(&[-1, -1]),
                ],
            ),
            PolyKind::Octahedron => {
                let mut verts = Vec::new();
                for i in 0..3 {
                    let mut v = unit(3, i);
                    verts.push(v.clone());
                    v[i] = rat(-1);
                    verts.push(v);
                }
                Polytope::new(AmbientSpace::standard(3), verts)
            }
            PolyKind::Cube => {
                let mut verts = Vec::new();
                for x in [-1i64, 1] {
                    for y in [-1i64, 1] {
                        for z in [-1i64, 1] {
                            verts.push(int_vec(&[x, y, z]));
                        }
                    }
                }
                Polytope::new(AmbientSpace::standard(3), verts)
            }
            PolyKind::Hexagon => Polytope::new(
                chain_space(2)?,
                vec![
                    int_vec(&[1, 1]),
                    int_vec(&[0, 1]),
                    int_vec(&[1, 0]),
                    int_vec(&[-1, 0]),
                    int_vec(&[0, -1]),
                    int_vec(&[-1, -1]),
                ],
            ),
        }
    }

    pub fn roots(&self) -> Result<RootSystem, Error> {
        self.group_kind.roots()
    }

    pub fn expected_quotient(&self) -> Result<Vec<QVector>, Error> {
        self.quotient_vertices
            .value
            .iter()
            .map(|v| v.iter().map(|s| parse_rat(s)).collect())
            .collect()
    }
}

/// The fan corpus.
pub static FAN_INSTANCES: &[FanInstance] = &[
    FanInstance {
        name: "line-mirror",
        about: "the two half-lines of the real line, folded by the sign flip",
        fan_kind: FanKind::Cross(1),
        group_kind: GroupKind::Signs(1),
        h: by_hand(&[1, 1]),
        invariant: by_hand(&[1, 1]),
        hybrid_f: by_hand(&[1, 2]),
    },
    FanInstance {
        name: "quadrant-trivial",
        about: "four quadrants with no symmetry: the fold is the fan itself",
        fan_kind: FanKind::Cross(2),
        group_kind: GroupKind::Trivial(2),
        h: by_hand(&[1, 2, 1]),
        invariant: by_hand(&[1, 2, 1]),
        hybrid_f: by_hand(&[1, 4, 4]),
    },
    FanInstance {
        name: "quadrant-signs",
        about: "four quadrants under coordinate sign changes",
        fan_kind: FanKind::Cross(2),
        group_kind: GroupKind::Signs(2),
        h: by_hand(&[1, 2, 1]),
        invariant: by_hand(&[1, 2, 1]),
        hybrid_f: by_hand(&[1, 4, 4]),
    },
    FanInstance {
        name: "quadrant-b2",
        about: "four quadrants under the full symmetry group of the square",
        fan_kind: FanKind::Cross(2),
        group_kind: GroupKind::B2,
        h: by_hand(&[1, 2, 1]),
        invariant: by_oracle(&[1, 1, 1]),
        hybrid_f: by_hand(&[1, 3, 3]),
    },
    FanInstance {
        name: "octant-signs",
        about: "eight octants under coordinate sign changes",
        fan_kind: FanKind::Cross(3),
        group_kind: GroupKind::Signs(3),
        h: by_hand(&[1, 3, 3, 1]),
        invariant: by_oracle(&[1, 3, 3, 1]),
        hybrid_f: by_hand(&[1, 6, 12, 8]),
    },
    FanInstance {
        name: "octant-b3",
        about: "eight octants under the full symmetry group of the cube",
        fan_kind: FanKind::Cross(3),
        group_kind: GroupKind::B3,
        h: by_hand(&[1, 3, 3, 1]),
        invariant: by_oracle(&[1, 1, 1, 1]),
        hybrid_f: by_hand(&[1, 4, 6, 4]),
    },
    FanInstance {
        name: "cross4-signs",
        about: "central fan of the 4-dimensional cross-polytope under sign changes",
        fan_kind: FanKind::Cross(4),
        group_kind: GroupKind::Signs(4),
        h: by_hand(&[1, 4, 6, 4, 1]),
        invariant: by_oracle(&[1, 4, 6, 4, 1]),
        hybrid_f: by_hand(&[1, 8, 24, 32, 16]),
    },
    FanInstance {
        name: "chambers-a2",
        about: "chamber fan of the order-6 dihedral reflection group",
        fan_kind: FanKind::Chambers,
        group_kind: GroupKind::A2,
        h: by_oracle(&[1, 4, 1]),
        invariant: by_oracle(&[1, 2, 1]),
        hybrid_f: by_hand(&[1, 4, 4]),
    },
    FanInstance {
        name: "chambers-a3",
        about: "chamber fan of the symmetric group on four letters",
        fan_kind: FanKind::Chambers,
        group_kind: GroupKind::A3,
        h: by_oracle(&[1, 11, 11, 1]),
        invariant: by_oracle(&[1, 3, 3, 1]),
        hybrid_f: by_hand(&[1, 6, 12, 8]),
    },
    FanInstance {
        name: "chambers-b2",
        about: "chamber fan of the order-8 dihedral reflection group",
        fan_kind: FanKind::Chambers,
        group_kind: GroupKind::B2,
        h: by_hand(&[1, 6, 1]),
        invariant: by_oracle(&[1, 2, 1]),
        hybrid_f: by_hand(&[1, 4, 4]),
    },
    FanInstance {
        name: "chambers-b3",
        about: "chamber fan of the full cube symmetry group",
        fan_kind: FanKind::Chambers,
        group_kind: GroupKind::B3,
        h: by_hand(&[1, 23, 23, 1]),
        invariant: by_oracle(&[1, 3, 3, 1]),
        hybrid_f: by_hand(&[1, 6, 12, 8]),
    },
];

/// The polytope corpus.
pub static POLYTOPE_INSTANCES: &[PolytopeInstance] = &[
    PolytopeInstance {
        name: "square-signs",
        about: "square with corners (±1, ±1), folded to the unit square",
        poly_kind: PolyKind::Square,
        group_kind: GroupKind::Signs(2),
        quotient_vertices: by_hand(&[
            &["0", "0"],
            &["1", "0"],
            &["0", "1"],
            &["1", "1"],
        ]),
    },
    PolytopeInstance {
        name: "octahedron-signs",
        about: "regular octahedron folded to a corner simplex",
        poly_kind: PolyKind::Octahedron,
        group_kind: GroupKind::Signs(3),
        quotient_vertices: by_hand(&[
            &["0", "0", "0"],
            &["1", "0", "0"],
            &["0", "1", "0"],
            &["0", "0", "1"],
        ]),
    },
    PolytopeInstance {
        name: "cube-signs",
        about: "cube with corners (±1, ±1, ±1), folded to the unit cube",
        poly_kind: PolyKind::Cube,
        group_kind: GroupKind::Signs(3),
        quotient_vertices: by_hand(&[
            &["0", "0", "0"],
            &["1", "0", "0"],
            &["0", "1", "0"],
            &["0", "0", "1"],
            &["1", "1", "0"],
            &["1", "0", "1"],
            &["0", "1", "1"],
            &["1", "1", "1"],
        ]),
    },
    PolytopeInstance {
        name: "hexagon-a2",
        about: "invariant hexagon of the order-6 dihedral group, folded to a quadrilateral",
        poly_kind: PolyKind::Hexagon,
        group_kind: GroupKind::A2,
        quotient_vertices: by_hand(&[
            &["0", "0"],
            &["1", "1/2"],
            &["1/2", "1"],
            &["1", "1"],
        ]),
    },
];

/// Looks up a fan entry by name.
pub fn fan_instance(name: &str) -> Option<&'static FanInstance> {
    FAN_INSTANCES.iter().find(|e| e.name == name)
}

/// Looks up a polytope entry by name.
pub fn polytope_instance(name: &str) -> Option<&'static PolytopeInstance> {
    POLYTOPE_INSTANCES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charformula::h_polynomial;
    use crate::hybrid::{hybrid_agreement_check, polytopal_check, quotient_polytope, theorem_check};
    use crate::srring::ArtinianTable;

    #[test]
    fn fan_manifest_matches_recomputation() {
        for inst in FAN_INSTANCES {
            let f = inst.fan().unwrap();
            let rs = inst.roots().unwrap();
            assert_eq!(h_polynomial(&f), inst.expected_h(), "{}: h", inst.name);
            let h = hybrid_agreement_check(&f, &rs).unwrap();
            assert_eq!(
                h.fan().f_vector(),
                inst.hybrid_f.value,
                "{}: folded f-vector",
                inst.name
            );
            // the ring oracle is cheap enough to run inline in 1 and 2
            // dimensions; the ignored sweep below replays it everywhere
            let with_oracle = f.dim() <= 2;
            let report = theorem_check(&f, &rs, with_oracle).unwrap();
            assert_eq!(
                report.invariant_avg,
                inst.expected_invariant(),
                "{}: invariant series",
                inst.name
            );
        }
    }

    #[test]
    fn quotient_polytopes_match_frozen_vertices() {
        for inst in POLYTOPE_INSTANCES {
            let p = inst.polytope().unwrap();
            let rs = inst.roots().unwrap();
            let q = quotient_polytope(&p, &rs).unwrap();
            let mut got = q.vertices().to_vec();
            got.sort();
            let mut want = inst.expected_quotient().unwrap();
            want.sort();
            assert_eq!(got, want, "{}: quotient vertices", inst.name);
            assert!(polytopal_check(&p, &rs).unwrap(), "{}: fold vs normal fan", inst.name);
        }
    }

    #[test]
    fn corpus_names_are_unique_and_findable() {
        for inst in FAN_INSTANCES {
            assert!(std::ptr::eq(fan_instance(inst.name).unwrap(), inst));
        }
        for inst in POLYTOPE_INSTANCES {
            assert!(std::ptr::eq(polytope_instance(inst.name).unwrap(), inst));
        }
        assert!(fan_instance("no-such-entry").is_none());
    }

    #[test]
    #[ignore = "replays the brute-force ring oracle on every instance; takes minutes"]
    fn oracle_confirms_every_frozen_value() {
        for inst in FAN_INSTANCES {
            let f = inst.fan().unwrap();
            let rs = inst.roots().unwrap();
            let table = ArtinianTable::new(&f).unwrap();
            assert_eq!(
                table.hilbert(),
                inst.expected_h(),
                "{}: ring dimensions vs h",
                inst.name
            );
            let report = theorem_check(&f, &rs, true).unwrap();
            assert_eq!(
                report.oracle_avg.unwrap(),
                inst.expected_invariant(),
                "{}: oracle invariant",
                inst.name
            );
        }
    }
}
