//! End-to-end acceptance suite.
//!
//! Each test below is one top-level guarantee of the library, exercised over
//! the whole built-in corpus with exact arithmetic.  Heavy shared work (the
//! parabolic-subgroup character sweep) is computed once and reused.

use std::sync::OnceLock;

use fanchar::charformula::{
    char_fixed_cones, char_maschke, equivariant_h_series, ext_trace_check, h_polynomial,
    sym_series, sym_trace_check,
};
use fanchar::corpus::{fan_instance, polytope_instance, FAN_INSTANCES, POLYTOPE_INSTANCES};
use fanchar::exact::{poly_is_palindromic, rat, QMatrix, QPoly, QVector, Rat};
use fanchar::fan::{normal_fan, Fan};
use fanchar::hybrid::{
    build_hybrid_naive, check_structure, hybrid_agreement_check, locate_in_hybrid,
    polytopal_check, theorem_check,
};
use fanchar::srring::{binomial, ArtinianTable};
use fanchar::symmetry::{
    bind_action, moreau, orbit_representatives_in_chamber, parabolic, reflection, RootSystem,
};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qv(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| rat(x)).collect()
}

fn poly(cs: &[i64]) -> QPoly {
    QPoly::new(cs.iter().map(|&c| rat(c)).collect())
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> QVector {
    (0..dim)
        .map(|_| rat(rng.gen_range(-12..=12)) / rat(rng.gen_range(1..=3)))
        .collect()
}

/// The fold of the octahedron's normal fan by coordinate sign changes is the
/// boundary complex of a simplex: rays (1,1,1), -e1, -e2, -e3, four maximal
/// cones, h-polynomial 1 + t + t^2 + t^3.
#[test]
fn octahedron_normal_fan_folds_to_a_simplex_boundary() {
    let inst = polytope_instance("octahedron-signs").expect("corpus entry");
    let p = inst.polytope().expect("octahedron builds");
    let rs = inst.roots().expect("sign group builds");
    let f = normal_fan(&p).expect("normal fan of the octahedron");
    assert!(
        f.is_simplicial().is_err(),
        "the source fan has square cones, yet the fold below is simplicial"
    );

    // the source is not simplicial, so only the enumeration builder applies
    let h = build_hybrid_naive(&f, &rs).expect("enumeration fold builds");
    let s = check_structure(&h);
    assert!(s.valid && s.complete && s.simplicial, "fold structure: {s:?}");

    let mut rays: Vec<QVector> = (0..h.fan().rays().len())
        .map(|r| h.fan().generator(r).clone())
        .collect();
    rays.sort();
    let mut expected = vec![qv(&[1, 1, 1]), qv(&[-1, 0, 0]), qv(&[0, -1, 0]), qv(&[0, 0, -1])];
    expected.sort();
    assert_eq!(rays, expected, "fold rays");

    assert_eq!(h.fan().maximal_cones().len(), 4, "fold maximal cones");
    assert_eq!(h_polynomial(h.fan()), poly(&[1, 1, 1, 1]), "fold h-polynomial");
}

/// One action's worth of results from the parabolic-subgroup sweep.
struct SweepReport {
    actions: usize,
    elements: usize,
    route_failures: Vec<String>,
    palindromy_failures: Vec<String>,
    socle_failures: Vec<String>,
}

static SWEEP: OnceLock<SweepReport> = OnceLock::new();

/// Fans paired with their full reflection groups; the sweep runs every
/// standard parabolic subgroup (all subsets of the simple roots) of each.
const SWEEP_INSTANCES: &[&str] = &[
    "quadrant-b2",
    "octant-b3",
    "cross4-signs",
    "chambers-a2",
    "chambers-a3",
    "chambers-b2",
    "chambers-b3",
];

/// For every fan in `SWEEP_INSTANCES` and every standard parabolic subgroup
/// of its reflection group, computes the graded character of the quotient by
/// four independent routes (recursive series, fixed-cone census, complement
/// recursion, and the graded quotient ring itself) and records any
/// disagreement, palindromy failure, or socle failure.
fn parabolic_sweep() -> &'static SweepReport {
    SWEEP.get_or_init(|| {
        let mut report = SweepReport {
            actions: 0,
            elements: 0,
            route_failures: Vec::new(),
            palindromy_failures: Vec::new(),
            socle_failures: Vec::new(),
        };
        for name in SWEEP_INSTANCES {
            let inst = fan_instance(name).expect("corpus entry");
            let f = inst.fan().expect("corpus fan builds");
            let rs = inst.roots().expect("corpus root system builds");
            let d = f.dim();
            let table = ArtinianTable::new(&f).expect("graded ring table builds");
            for mask in 0u32..(1 << rs.rank()) {
                let subset: Vec<usize> =
                    (0..rs.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let label = format!("{name} simple roots {subset:?}");
                let group = parabolic(&rs, &subset).expect("parabolic subgroup generates");
                let action = bind_action(&group, &f).expect("subgroup acts on the fan");
                let series = equivariant_h_series(&action).expect("character series");
                let chars = table.characters(&action).expect("ring characters");
                report.actions += 1;
                for e in 0..group.order() {
                    report.elements += 1;
                    let by_series = series.value_of_element(&group, e).clone();
                    let by_fixed = char_fixed_cones(&action, e).expect("fixed-cone census");
                    let by_complement = char_maschke(&action, e).expect("complement recursion");
                    let by_ring = chars.oracle_character(e);
                    if !(by_series == by_fixed
                        && by_fixed == by_complement
                        && by_complement == by_ring)
                    {
                        report.route_failures.push(format!(
                            "{label} element {e}: series {by_series}, fixed {by_fixed}, \
                             complement {by_complement}, ring {by_ring}"
                        ));
                    }
                    if !poly_is_palindromic(&by_series, d).unwrap_or(false) {
                        report
                            .palindromy_failures
                            .push(format!("{label} element {e}: {by_series}"));
                    }
                }
                if let Err(err) = chars.socle_check() {
                    report.socle_failures.push(format!("{label}: {err}"));
                }
            }
        }
        report
    })
}

/// All four character routes agree elementwise for the full group and every
/// standard parabolic subgroup of every fan in the sweep corpus.
#[test]
fn character_routes_agree_for_every_parabolic_action() {
    let s = parabolic_sweep();
    assert_eq!(s.actions, 52, "expected the full subgroup sweep");
    assert!(s.elements > 52, "sweep covered {} elements", s.elements);
    assert!(
        s.route_failures.is_empty(),
        "character routes disagree:\n{}",
        s.route_failures.join("\n")
    );
}

/// Every character from the sweep is palindromic through the fan dimension,
/// and the top graded piece of each quotient is one-dimensional with trace 1
/// for every group element.
#[test]
fn characters_are_palindromic_with_a_simple_socle() {
    let s = parabolic_sweep();
    assert!(
        s.palindromy_failures.is_empty(),
        "non-palindromic characters:\n{}",
        s.palindromy_failures.join("\n")
    );
    assert!(
        s.socle_failures.is_empty(),
        "socle failures:\n{}",
        s.socle_failures.join("\n")
    );
}

/// For every corpus reflection action, the h-polynomial of the folded fan
/// equals the invariant Poincaré series by all four routes, including the
/// graded-quotient average, with the frozen spot values confirmed.
#[test]
fn invariant_series_matches_folded_h_by_all_routes() {
    for inst in FAN_INSTANCES {
        let f = inst.fan().expect("corpus fan builds");
        let rs = inst.roots().expect("corpus root system builds");
        let report = theorem_check(&f, &rs, true)
            .unwrap_or_else(|err| panic!("{}: {err}", inst.name));
        assert_eq!(
            report.invariant_avg,
            inst.expected_invariant(),
            "{}: invariant series",
            inst.name
        );
        assert_eq!(
            report.oracle_avg.as_ref().expect("oracle route ran"),
            &inst.expected_invariant(),
            "{}: ring-average route",
            inst.name
        );
    }
    // spot values, now known to equal the freshly computed series
    for (name, coeffs) in [
        ("quadrant-b2", vec![1, 1, 1]),
        ("octant-signs", vec![1, 3, 3, 1]),
        ("octant-b3", vec![1, 1, 1, 1]),
    ] {
        let inst = fan_instance(name).expect("corpus entry");
        assert_eq!(inst.expected_invariant(), poly(&coeffs), "{name}");
    }
}

/// The quotient polytope (polytope ∩ dominant chamber) has the folded normal
/// fan, for every polytope in the corpus.
#[test]
fn quotient_polytopes_carry_the_folded_normal_fan() {
    for required in ["octahedron-signs", "square-signs", "hexagon-a2"] {
        assert!(polytope_instance(required).is_some(), "{required} present");
    }
    for inst in POLYTOPE_INSTANCES {
        let p = inst.polytope().expect("corpus polytope builds");
        let rs = inst.roots().expect("corpus root system builds");
        let ok = polytopal_check(&p, &rs).unwrap_or_else(|err| panic!("{}: {err}", inst.name));
        assert!(ok, "{}: normal fan of the quotient != folded fan", inst.name);
    }
}

/// The chamber fans of the order-6 and order-24 symmetric reflection groups
/// have h-polynomials 1 + 4t + t^2 and 1 + 11t + 11t^2 + t^3 (the descent
/// counts of permutations of 3 and 4 letters), confirmed independently by the
/// graded dimensions of the Artinian quotient ring.
#[test]
fn chamber_fan_h_polynomials_match_descent_counts() {
    for (name, coeffs) in [
        ("chambers-a2", vec![1, 4, 1]),
        ("chambers-a3", vec![1, 11, 11, 1]),
    ] {
        let inst = fan_instance(name).expect("corpus entry");
        let f = inst.fan().expect("corpus fan builds");
        let expected = poly(&coeffs);
        assert_eq!(h_polynomial(&f), expected, "{name}: face-count route");
        let table = ArtinianTable::new(&f).expect("graded ring table builds");
        assert_eq!(table.hilbert(), expected, "{name}: graded-dimension route");
        for (k, c) in coeffs.iter().enumerate() {
            assert_eq!(
                table.dim_quotient(k) as i64,
                *c,
                "{name}: quotient dimension in degree {k}"
            );
        }
    }
}

fn face_ring_dimension_from_h(h: &QPoly, d: usize, k: usize) -> usize {
    (0..=k.min(d))
        .map(|j| {
            let hj = h.coeff(j).to_integer().to_usize().expect("small coefficient");
            hj * binomial(k - j + d - 1, d - 1)
        })
        .sum()
}

/// Trace identities and graded-dimension identities across the corpus:
/// symmetric-power traces satisfy the power-sum recursion and exterior-power
/// traces the determinant expansion; the fundamental monomial spans the
/// socle; face-ring dimensions follow h(t)/(1-t)^d; and each graded trace of
/// the face ring factors as (symmetric-power trace) * (quotient trace),
/// all through degree d + 3.
#[test]
fn trace_identities_and_graded_dimensions_hold() {
    for inst in FAN_INSTANCES {
        let f = inst.fan().expect("corpus fan builds");
        let rs = inst.roots().expect("corpus root system builds");
        let d = f.dim();
        let group = rs.group();

        for e in 0..group.order() {
            let m = group.element(e);
            assert!(
                sym_trace_check(m, d + 3).expect("symmetric traces computable"),
                "{} element {e}: symmetric-power recursion",
                inst.name
            );
            assert!(
                ext_trace_check(m).expect("exterior traces computable"),
                "{} element {e}: exterior-power expansion",
                inst.name
            );
        }

        let table = ArtinianTable::new(&f).expect("graded ring table builds");
        table
            .volume_element_check()
            .unwrap_or_else(|err| panic!("{}: socle generator: {err}", inst.name));

        let h = table.hilbert();
        for k in 0..=d + 3 {
            assert_eq!(
                table.dim_face_ring(k),
                face_ring_dimension_from_h(&h, d, k),
                "{}: face-ring dimension in degree {k}",
                inst.name
            );
        }

        let action = bind_action(group, &f).expect("group acts on the fan");
        let chars = table.characters(&action).expect("ring characters");
        for e in 0..group.order() {
            let sym = sym_series(group.element(e), d + 3).expect("symmetric-power series");
            for k in 0..=d + 3 {
                let mut product: Rat = rat(0);
                for j in 0..=k.min(d) {
                    product += sym.coeff(k - j) * chars.quotient_trace(e, j);
                }
                assert_eq!(
                    rat(chars.face_trace(e, k)),
                    product,
                    "{} element {e}: face-ring trace in degree {k}",
                    inst.name
                );
            }
        }
    }
}

fn assert_moreau_properties(rs: &RootSystem, v: &QVector) {
    let (v_d, v_n) = moreau(v, rs).expect("decomposition exists");
    let total: QVector = v_d
        .iter()
        .zip(&v_n)
        .map(|(a, b)| a.clone() + b.clone())
        .collect();
    assert_eq!(&total, v, "parts sum to the input");
    assert!(rs.in_chamber(&v_d), "chamber part {v_d:?} lies in the chamber");
    assert!(
        rs.space().inner(&v_d, &v_n).is_zero(),
        "parts are orthogonal: {v_d:?} vs {v_n:?}"
    );
    if rs.rank() == 0 {
        assert!(v_n.iter().all(Zero::is_zero), "no walls: normal part is zero");
    } else {
        // membership in the polar of the chamber, tested against the
        // chamber's extreme generators
        for w in rs.fundamental_coweights().expect("full-rank root system") {
            assert!(
                rs.space().inner(&v_n, &w) <= rat(0),
                "normal part {v_n:?} pairs nonpositively with {w:?}"
            );
        }
    }
}

fn assert_location_agrees(f: &Fan, rs: &RootSystem, rng: &mut ChaCha8Rng) {
    let h = hybrid_agreement_check(f, rs).expect("fold builders agree");
    for _ in 0..100 {
        let v = random_point(rng, f.dim());
        let located = locate_in_hybrid(&h, rs, &v).expect("stabilizer-directed location");
        assert!(
            h.fan().cone_contains(&located, &v),
            "located cone {:?} contains {v:?}",
            located.rays
        );
        let generic = h.fan().point_locate(&v).expect("fold is complete");
        assert!(
            generic.rays.iter().all(|r| located.rays.contains(r)),
            "generic cone {:?} is a face of the located cone {:?}",
            generic.rays,
            located.rays
        );
        if generic.dim == f.dim() {
            assert_eq!(generic.rays, located.rays, "full-dimensional agreement");
        }
    }
}

/// Structural facts behind the fold, across the whole corpus: each cone
/// orbit meets the dominant chamber in exactly one cone; the setwise
/// stabilizer of a cone is the stabilizer of its averaged interior point; a
/// cone whose averaged point lies on a mirror is invariant under that
/// reflection; the chamber/normal decomposition holds on random points; and
/// stabilizer-directed point location agrees with the generic locator.
#[test]
fn stabilizers_orbits_and_location_behave_structurally() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for inst in FAN_INSTANCES {
        let f = inst.fan().expect("corpus fan builds");
        let rs = inst.roots().expect("corpus root system builds");
        let group = rs.group();
        let action = bind_action(group, &f).expect("group acts on the fan");

        let reps = orbit_representatives_in_chamber(&action, &rs)
            .unwrap_or_else(|err| panic!("{}: orbit representatives: {err}", inst.name));
        assert_eq!(
            reps.len(),
            action.cone_orbits().len(),
            "{}: one representative per orbit",
            inst.name
        );

        for c in f.all_cones() {
            let y = action.average_point(&c.rays).expect("interior point");

            let setwise = action.setwise_stabilizer_indices(&c.rays);
            let pointwise: Vec<usize> = (0..group.order())
                .filter(|&e| group.apply(e, &y) == y)
                .collect();
            assert_eq!(
                setwise, pointwise,
                "{}: stabilizers of cone {:?}",
                inst.name, c.rays
            );

            for &i in rs.pair_reps() {
                let alpha = &rs.roots()[i];
                if rs.space().inner(&y, alpha).is_zero() {
                    let s = reflection(alpha, rs.space()).expect("reflection matrix");
                    let e = group
                        .index_of(&s)
                        .unwrap_or_else(|| panic!("{}: reflection not in group", inst.name));
                    assert!(
                        action.is_setwise_fixed(e, &c.rays),
                        "{}: cone {:?} meets the mirror of root {i} but moves under \
                         its reflection",
                        inst.name,
                        c.rays
                    );
                }
            }
        }

        for _ in 0..100 {
            let v = random_point(&mut rng, f.dim());
            assert_moreau_properties(&rs, &v);
        }

        assert_location_agrees(&f, &rs, &mut rng);
    }
}

/// Properness detection: chamber fans are proper under their own reflection
/// groups, while the full hyperoctahedral action on the quadrant fan is
/// improper, witnessed by the axis swap fixing the positive quadrant without
/// fixing its rays.
#[test]
fn improper_actions_are_flagged_with_a_witness() {
    for name in [
        "line-mirror",
        "quadrant-signs",
        "octant-signs",
        "cross4-signs",
        "chambers-a2",
        "chambers-a3",
        "chambers-b2",
        "chambers-b3",
    ] {
        let inst = fan_instance(name).expect("corpus entry");
        let f = inst.fan().expect("corpus fan builds");
        let rs = inst.roots().expect("corpus root system builds");
        let action = bind_action(rs.group(), &f).expect("group acts on the fan");
        assert!(action.is_proper(), "{name}: chamber fan action is proper");
        assert!(action.proper_violation().is_none(), "{name}: no witness");
    }

    let inst = fan_instance("quadrant-b2").expect("corpus entry");
    let f = inst.fan().expect("corpus fan builds");
    let rs = inst.roots().expect("corpus root system builds");
    let action = bind_action(rs.group(), &f).expect("group acts on the fan");
    assert!(!action.is_proper(), "swap-capable action is improper");

    let (e, cone) = action.proper_violation().expect("witness pair");
    let swap = QMatrix::from_rows(vec![qv(&[0, 1]), qv(&[1, 0])]);
    assert_eq!(rs.group().element(e), &swap, "witness element is the axis swap");
    let mut gens: Vec<QVector> = cone
        .rays
        .iter()
        .map(|&r| f.generator(r).clone())
        .collect();
    gens.sort();
    assert_eq!(
        gens,
        vec![qv(&[0, 1]), qv(&[1, 0])],
        "witness cone is the positive quadrant"
    );
}
