//! Closed-form graded characters of a fan symmetry.
//!
//! Everything here evaluates formulas: the h-polynomial as an f-vector
//! transform, the graded character of an element as a sum over its invariant
//! cones (by two algebraically different expressions that must agree), the
//! same character assembled from induced characters of cone stabilizers via
//! the Frobenius formula, and the Poincaré series of the invariants by
//! averaging and by summing over orbit representatives.  The routes are
//! deliberately redundant: each public entry point cross-checks one route
//! against another and fails hard on any disagreement, so the formula layer
//! can be trusted against the brute-force ring computations elsewhere in
//! the crate.

use crate::error::Error;
use crate::exact::{
    det, det_poly, poly_exact_div, poly_is_palindromic, quotient_matrix, rat,
    restrict_and_quotient, QMatrix, QPoly, QVector, Rat,
};
use crate::fan::{k_subsets, Fan};
use crate::symmetry::{
    orbit_representatives_in_chamber, parabolic_data, ClassFunction, FanAction, MatrixGroup,
    RootSystem,
};
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet};

/// h-polynomial of a fan: Σ_i |Σ_i| (t−1)^{d−i} over cone dimensions i.
///
/// This is a pure f-vector transform, so it is evaluated for any fan; its
/// usual combinatorial meaning needs the fan complete and simplicial.
pub fn h_polynomial(f: &Fan) -> QPoly {
    let d = f.dim();
    let shifted = QPoly::new(vec![rat(-1), rat(1)]);
    let mut h = QPoly::zero();
    for (i, &count) in f.f_vector().iter().enumerate() {
        h = h + shifted.pow(d - i).scale(&rat(count as i64));
    }
    h
}

pub(crate) fn require_complete_simplicial(f: &Fan) -> Result<(), Error> {
    if let Err(rays) = f.is_simplicial() {
        return Err(Error::NotSimplicial(format!(
            "cone {rays:?} has more rays than its dimension"
        )));
    }
    if !f.is_complete().complete {
        return Err(Error::NotComplete(
            "character formulas are only meaningful for complete fans".into(),
        ));
    }
    Ok(())
}

fn cone_span(a: &FanAction, rays: &[usize]) -> Vec<QVector> {
    rays.iter().map(|&r| a.generator(r).clone()).collect()
}

/// Graded character of one element as a sum over its setwise-invariant
/// cones σ of det(tI − g on V/span σ).
pub fn char_fixed_cones(a: &FanAction, element: usize) -> Result<QPoly, Error> {
    require_complete_simplicial(a.fan())?;
    char_fixed_cones_unchecked(a, element)
}

fn char_fixed_cones_unchecked(a: &FanAction, element: usize) -> Result<QPoly, Error> {
    let g = a.group().element(element);
    let mut total = QPoly::zero();
    for cone in a.fan().all_cones() {
        if !a.is_setwise_fixed(element, &cone.rays) {
            continue;
        }
        let q = quotient_matrix(g, &cone_span(a, &cone.rays))?;
        total = total + det_poly(&q)?;
    }
    Ok(total)
}

/// The same graded character through the complementary factorization:
/// Σ over invariant cones of t^{dim σ} · det(I − t·g)/det(I − t·g|span σ).
///
/// Must return exactly [`char_fixed_cones`]; the exact polynomial division
/// doubles as a proof that each invariant cone's span really is invariant.
pub fn char_maschke(a: &FanAction, element: usize) -> Result<QPoly, Error> {
    require_complete_simplicial(a.fan())?;
    char_maschke_unchecked(a, element)
}

fn char_maschke_unchecked(a: &FanAction, element: usize) -> Result<QPoly, Error> {
    let d = a.fan().dim();
    let g = a.group().element(element);
    let full = det_poly(g)?.reverse(d); // det(I − t·g)
    let mut total = QPoly::zero();
    for cone in a.fan().all_cones() {
        if !a.is_setwise_fixed(element, &cone.rays) {
            continue;
        }
        let s = cone.dim;
        let (restriction, _) = restrict_and_quotient(g, &cone_span(a, &cone.rays))?;
        let denom = det_poly(&restriction)?.reverse(s);
        let factor = poly_exact_div(&full, &denom).map_err(|_| {
            Error::Internal(format!(
                "det(I − t·g) does not factor through the restriction to cone {:?}",
                cone.rays
            ))
        })?;
        total = total + QPoly::term(rat(1), s) * factor;
    }
    Ok(total)
}

/// Graded character of the whole action, one polynomial per conjugacy
/// class, each checked against the per-element fixed-cone sum.
pub struct GradedCharacter {
    values: Vec<QPoly>,
}

impl GradedCharacter {
    pub fn values(&self) -> &[QPoly] {
        &self.values
    }

    pub fn value_of_class(&self, class: usize) -> &QPoly {
        &self.values[class]
    }

    pub fn value_of_element(&self, group: &MatrixGroup, element: usize) -> &QPoly {
        &self.values[group.class_of(element)]
    }

    pub fn class_function(&self, group: &MatrixGroup) -> Result<ClassFunction, Error> {
        ClassFunction::new(group, self.values.clone())
    }
}

/// Frobenius formula for the character of Ind_H^G(χ) at `g`, where H is the
/// setwise stabilizer of the cone and χ(x) = det(tI − x on V/span σ):
/// (1/|H|) Σ over h in G with h⁻¹gh in H of χ(h⁻¹gh).
fn induced_char_value(a: &FanAction, rays: &[usize], g: usize) -> Result<QPoly, Error> {
    let group = a.group();
    let stab = a.setwise_stabilizer_indices(rays);
    let members: HashSet<usize> = stab.iter().copied().collect();
    let basis = cone_span(a, rays);
    let mut chi: HashMap<usize, QPoly> = HashMap::new();
    let mut total = QPoly::zero();
    for h in 0..group.order() {
        let conj = group.mul(group.mul(group.inverse(h), g), h);
        if !members.contains(&conj) {
            continue;
        }
        if !chi.contains_key(&conj) {
            let q = quotient_matrix(group.element(conj), &basis)?;
            chi.insert(conj, det_poly(&q)?);
        }
        total = total + chi[&conj].clone();
    }
    Ok(total.scale(&(rat(1) / rat(stab.len() as i64))))
}

/// Equivariant graded series of the action: for each conjugacy class, the
/// sum over cone-orbit representatives of the induced stabilizer character,
/// evaluated by the literal Frobenius sum.
///
/// Each class value is checked against [`char_fixed_cones`]; the result must
/// also restrict to the h-polynomial on the identity class, be palindromic
/// of degree d, and have integer coefficients.  Any failure is a hard
/// theorem-violation error.
pub fn equivariant_h_series(a: &FanAction) -> Result<GradedCharacter, Error> {
    require_complete_simplicial(a.fan())?;
    let group = a.group();
    let orbits = a.cone_orbits();
    let d = a.fan().dim();
    let mut values = Vec::with_capacity(group.conj_classes().len());
    for class in group.conj_classes() {
        let g = class[0];
        let mut value = QPoly::zero();
        for orbit in &orbits {
            value = value + induced_char_value(a, &orbit[0].rays, g)?;
        }
        let direct = char_fixed_cones_unchecked(a, g)?;
        if value != direct {
            return Err(Error::TheoremViolation(format!(
                "induced-character sum {value} differs from the fixed-cone sum {direct} \
                 on the class of element {g}"
            )));
        }
        values.push(value);
    }
    let identity_class = group.class_of(group.index_of(&QMatrix::identity(d)).ok_or_else(
        || Error::Internal("group does not contain the identity".into()),
    )?);
    if values[identity_class] != h_polynomial(a.fan()) {
        return Err(Error::TheoremViolation(
            "identity-class value differs from the h-polynomial".into(),
        ));
    }
    for v in &values {
        if !poly_is_palindromic(v, d)? {
            return Err(Error::TheoremViolation(format!(
                "class value {v} is not palindromic of degree {d}"
            )));
        }
        if v.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(Error::TheoremViolation(format!(
                "class value {v} has a non-integer coefficient"
            )));
        }
    }
    Ok(GradedCharacter { values })
}

/// The unweighted form of the equivariant series: the Frobenius-induced
/// character summed over every cone, each weighted by |G_σ|/|G|.  Exists to
/// cross-check the orbit-restricted sum in [`equivariant_h_series`]; the two
/// must agree because an orbit of size |G|/|G_σ| repeats the same induced
/// character.
pub fn equivariant_h_series_full(a: &FanAction, element: usize) -> Result<QPoly, Error> {
    require_complete_simplicial(a.fan())?;
    let group = a.group();
    let order = rat(group.order() as i64);
    let mut value = QPoly::zero();
    for cone in a.fan().all_cones() {
        let stab = a.setwise_stabilizer_indices(&cone.rays).len();
        let weight = rat(stab as i64) / &order;
        value = value + induced_char_value(a, &cone.rays, element)?.scale(&weight);
    }
    Ok(value)
}

/// Poincaré series of the invariant part of the graded quotient, computed
/// as the average (1/|G|) Σ_g of the per-element graded characters.
pub fn invariant_poincare_avg(a: &FanAction) -> Result<QPoly, Error> {
    require_complete_simplicial(a.fan())?;
    let group = a.group();
    let mut sum = QPoly::zero();
    for class in group.conj_classes() {
        let value = char_fixed_cones_unchecked(a, class[0])?;
        sum = sum + value.scale(&rat(class.len() as i64));
    }
    let avg = sum.scale(&(rat(1) / rat(group.order() as i64)));
    if avg
        .coeffs()
        .iter()
        .any(|c| !c.is_integer() || c.is_negative())
    {
        return Err(Error::Internal(format!(
            "averaged invariant series {avg} is not a nonnegative integer polynomial"
        )));
    }
    Ok(avg)
}

/// The same invariant series summed over chamber orbit representatives: for
/// each representative σ, average det(tI − w on V/span σ) over the setwise
/// stabilizer of σ.  Checked exactly against [`invariant_poincare_avg`].
pub fn invariant_poincare_orbit(a: &FanAction, rs: &RootSystem) -> Result<QPoly, Error> {
    require_complete_simplicial(a.fan())?;
    let reps = orbit_representatives_in_chamber(a, rs)?;
    let group = a.group();
    let mut total = QPoly::zero();
    for rep in &reps {
        let basis = cone_span(a, &rep.rays);
        let stab = a.setwise_stabilizer_indices(&rep.rays);
        let mut part = QPoly::zero();
        for &w in &stab {
            part = part + det_poly(&quotient_matrix(group.element(w), &basis)?)?;
        }
        total = total + part.scale(&(rat(1) / rat(stab.len() as i64)));
    }
    let avg = invariant_poincare_avg(a)?;
    if total != avg {
        return Err(Error::TheoremViolation(format!(
            "orbit-summed invariant series {total} differs from the averaged series {avg}"
        )));
    }
    Ok(total)
}

/// Closed-form contribution of one chamber orbit representative to the
/// invariant series: t^{|K|−|J0|} (t−1)^{d−|I|−|K|}, where K indexes the
/// simple roots fixing the representative's averaged point, J0 those of them
/// swapping a ray pair, and I the rays lying in the chamber.
pub fn orbit_contribution(a: &FanAction, rs: &RootSystem, rays: &[usize]) -> Result<QPoly, Error> {
    let data = parabolic_data(a, rs, rays)?;
    let d = a.fan().dim();
    let k = data.stabilizer_roots.len();
    let j0 = data.swap_roots.len();
    let i = data.chamber_rays.len();
    let linear_exp = (d - i).checked_sub(k).ok_or_else(|| {
        Error::Internal(format!(
            "wall data of cone {rays:?} gives a negative exponent: d={d}, |I|={i}, |K|={k}"
        ))
    })?;
    let shifted = QPoly::new(vec![rat(-1), rat(1)]);
    Ok(QPoly::term(rat(1), k - j0) * shifted.pow(linear_exp))
}

/// Sums [`orbit_contribution`] over every chamber orbit representative and
/// checks the total against [`invariant_poincare_orbit`].
pub fn invariant_poincare_contrib(a: &FanAction, rs: &RootSystem) -> Result<QPoly, Error> {
    let reps = orbit_representatives_in_chamber(a, rs)?;
    let mut total = QPoly::zero();
    for rep in &reps {
        total = total + orbit_contribution(a, rs, &rep.rays)?;
    }
    let orbit_route = invariant_poincare_orbit(a, rs)?;
    if total != orbit_route {
        return Err(Error::TheoremViolation(format!(
            "closed-form contributions sum to {total}, expected {orbit_route}"
        )));
    }
    Ok(total)
}

/// Exponent vectors of total degree `k` in `d` variables, lexicographic.
fn exponent_vectors(d: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(remaining as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=remaining {
            cur.push(e as u32);
            rec(remaining - e, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

/// Trace of `g` on its k-th symmetric power, read off the diagonal of the
/// explicitly constructed induced matrix on the degree-k monomial basis.
pub fn sym_trace(g: &QMatrix, k: usize) -> Result<Rat, Error> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let d = g.rows();
    let monomials = exponent_vectors(d, k);
    let index: HashMap<&[u32], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let n = monomials.len();
    let mut induced = QMatrix::zeros(n, n);
    for (col, mono) in monomials.iter().enumerate() {
        // expand the image Π_j (g·e_j)^{e_j} into the monomial basis
        let mut image: HashMap<Vec<u32>, Rat> = HashMap::new();
        image.insert(vec![0; d], rat(1));
        for (j, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                let mut next: HashMap<Vec<u32>, Rat> = HashMap::new();
                for (exps, coeff) in &image {
                    for i in 0..d {
                        let gij = g.at(i, j);
                        if gij.is_zero() {
                            continue;
                        }
                        let mut bumped = exps.clone();
                        bumped[i] += 1;
                        let term = coeff * gij;
                        *next.entry(bumped).or_insert_with(|| rat(0)) += term;
                    }
                }
                image = next;
            }
        }
        for (exps, coeff) in image {
            let row = index[exps.as_slice()];
            *induced.at_mut(row, col) = coeff;
        }
    }
    Ok((0..n).map(|i| induced.at(i, i).clone()).sum())
}

/// Power series Σ_k trace(g, Sym^k) t^k truncated below `cap`, via the
/// closed form 1/det(I − t·g).
pub fn sym_series(g: &QMatrix, cap: usize) -> Result<QPoly, Error> {
    let d = g.rows();
    det_poly(g)?.reverse(d).series_inverse(cap)
}

/// True iff the explicit symmetric-power traces match the power-series
/// expansion of 1/det(I − t·g) through degree `k_max`.
pub fn sym_trace_check(g: &QMatrix, k_max: usize) -> Result<bool, Error> {
    let series = sym_series(g, k_max + 1)?;
    for k in 0..=k_max {
        if sym_trace(g, k)? != series.coeff(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn submatrix(g: &QMatrix, rows: &[usize], cols: &[usize]) -> QMatrix {
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            *m.at_mut(i, j) = g.at(r, c).clone();
        }
    }
    m
}

/// Trace of `g` on its j-th exterior power, read off the diagonal of the
/// explicitly constructed induced matrix on the wedge basis.
pub fn ext_trace(g: &QMatrix, j: usize) -> Result<Rat, Error> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let d = g.rows();
    if j > d {
        return Ok(rat(0));
    }
    let subsets = k_subsets(d, j);
    let n = subsets.len();
    let mut induced = QMatrix::zeros(n, n);
    for (row, s) in subsets.iter().enumerate() {
        for (col, t) in subsets.iter().enumerate() {
            *induced.at_mut(row, col) = det(&submatrix(g, s, t))?;
        }
    }
    Ok((0..n).map(|i| induced.at(i, i).clone()).sum())
}

/// True iff the characteristic polynomial's coefficients are the signed
/// exterior-power traces: coeff of t^m equals (−1)^{d−m} trace(Λ^{d−m} g).
pub fn ext_trace_check(g: &QMatrix) -> Result<bool, Error> {
    let d = g.rows();
    let p = det_poly(g)?;
    for m in 0..=d {
        let trace = ext_trace(g, d - m)?;
        let signed = if (d - m) % 2 == 0 { trace } else { -trace };
        if p.coeff(m) != signed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a proper action, every setwise-invariant cone is fixed pointwise, so
/// the restriction of the element to the cone's span must have
/// characteristic polynomial (t−1)^{dim σ}.
pub fn properness_restriction_check(a: &FanAction) -> Result<(), Error> {
    let group = a.group();
    let shifted = QPoly::new(vec![rat(-1), rat(1)]);
    for e in 0..group.order() {
        for cone in a.fan().all_cones() {
            if !a.is_setwise_fixed(e, &cone.rays) {
                continue;
            }
            let (restriction, _) = restrict_and_quotient(group.element(e), &cone_span(a, &cone.rays))?;
            if det_poly(&restriction)? != shifted.pow(cone.dim) {
                return Err(Error::TheoremViolation(format!(
                    "element {e} stabilizes cone {:?} but does not restrict to the identity",
                    cone.rays
                )));
            }
        }
    }
    Ok(())
}
