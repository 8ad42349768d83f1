//! Face ring of a complete simplicial fan and its Artinian reduction.
//!
//! The face ring has one variable per ray; a monomial survives exactly when
//! its support is the ray set of a cone.  Dividing by the linear system of
//! parameters cut out by the ambient coordinates leaves a finite-dimensional
//! graded quotient whose Hilbert function is the h-vector of the fan.  When a
//! symmetry group acts on the fan it permutes the monomial bases, and this
//! module computes the graded traces of each element on both the face ring
//! and the quotient — the latter by two independent routes so they can be
//! checked against each other.

use crate::error::Error;
use crate::exact::{det, rat, solve, QMatrix, QPoly, QVector, Rat, Rref};
use crate::fan::{fans_equal, Cone, Fan};
use crate::symmetry::{ClassFunction, FanAction, MatrixGroup};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Monomial in the ray variables, stored as sparse exponents keyed by ray
/// index.  Zero exponents are never stored, so equality and hashing see a
/// canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            exps: BTreeMap::new(),
        }
    }

    pub fn from_exps(pairs: impl IntoIterator<Item = (usize, u32)>) -> Monomial {
        Monomial {
            exps: pairs.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// Squarefree monomial with exponent one on each listed ray.
    pub fn squarefree(rays: &[usize]) -> Monomial {
        Monomial::from_exps(rays.iter().map(|&r| (r, 1)))
    }

    pub fn degree(&self) -> usize {
        self.exps.values().map(|&e| e as usize).sum()
    }

    /// Ray indices with positive exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.exps.keys().copied().collect()
    }

    pub fn exponent(&self, ray: usize) -> u32 {
        self.exps.get(&ray).copied().unwrap_or(0)
    }

    /// Multiplies by the variable of `ray`.
    pub fn mul_var(&self, ray: usize) -> Monomial {
        let mut exps = self.exps.clone();
        *exps.entry(ray).or_insert(0) += 1;
        Monomial { exps }
    }

    /// Relabels each variable x_i to x_{perm[i]}.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|(&r, &e)| (perm[r], e)).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (r, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "x{r}")?;
            } else {
                write!(f, "x{r}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Binomial coefficient as an exact machine integer; callers stay far below
/// overflow range.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All ways to write `total` as an ordered sum of `parts` positive integers,
/// in lexicographic order.
fn positive_compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            cur.push(remaining as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=remaining - (left - 1) {
            cur.push(first as u32);
            rec(remaining - first, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
    } else if total >= parts {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Monomial basis of one graded piece of the face ring: every monomial of
/// the given degree whose support is the ray set of a cone.  The order is
/// deterministic — cones by ascending dimension in fan order, exponent
/// patterns lexicographic within a cone.
pub struct GradedBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Enumerates the degree-`degree` monomial basis of the face ring.
pub fn graded_basis(fan: &Fan, degree: usize) -> GradedBasis {
    let mut monomials = Vec::new();
    if degree == 0 {
        monomials.push(Monomial::one());
    } else {
        for dim in 1..=fan.max_cone_dim().min(degree) {
            for cone in fan.cones(dim) {
                for comp in positive_compositions(degree, dim) {
                    monomials.push(Monomial::from_exps(
                        cone.rays.iter().copied().zip(comp),
                    ));
                }
            }
        }
    }
    let index = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    GradedBasis {
        degree,
        monomials,
        index,
    }
}

/// Linear system of parameters: for each ambient coordinate j, the linear
/// form whose coefficient on the variable of ray i is the j-th coordinate of
/// that ray's generator.  Returned as coefficient vectors over the rays.
pub fn lsop_for(gens: &[QVector], dim: usize) -> Vec<QVector> {
    (0..dim)
        .map(|j| gens.iter().map(|v| v[j].clone()).collect())
        .collect()
}

/// Linear system of parameters built from the fan's own primitive generators.
pub fn lsop(fan: &Fan) -> Vec<QVector> {
    let gens: Vec<QVector> = (0..fan.rays().len())
        .map(|i| fan.generator(i).clone())
        .collect();
    lsop_for(&gens, fan.dim())
}

/// Checks that the span of the parameter forms is preserved when the ray
/// variables are relabelled by `perm`.
pub fn lsop_span_invariant(forms: &[QVector], perm: &[usize]) -> bool {
    let n = perm.len();
    let mut span = Rref::new(n);
    for row in forms {
        span.insert(row.clone());
    }
    forms.iter().all(|row| {
        let mut img = vec![rat(0); n];
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                img[perm[i]] = c.clone();
            }
        }
        span.contains(&img)
    })
}

/// Graded dimension and multiplication data for the face ring of a complete
/// simplicial fan modulo its linear system of parameters.
///
/// Monomial bases are enumerated through degree d+3 so series identities can
/// be tested past the top quotient degree; the parameter ideal is only
/// tracked through degree d, beyond which the quotient vanishes.
pub struct ArtinianTable {
    fan: Fan,
    gens: Vec<QVector>,
    forms: Vec<QVector>,
    bases: Vec<GradedBasis>,
    ideal: Vec<Rref>,
    ideal_cols: Vec<Vec<QVector>>,
    quotient_cols: Vec<Vec<usize>>,
    dims_abar: Vec<usize>,
}

impl ArtinianTable {
    /// Builds the table with the fan's own primitive ray generators.
    pub fn new(fan: &Fan) -> Result<ArtinianTable, Error> {
        let gens = (0..fan.rays().len())
            .map(|i| fan.generator(i).clone())
            .collect();
        ArtinianTable::with_generators(fan, gens)
    }

    /// Builds the table with externally supplied ray generators, for example
    /// the rescaled generators attached to a symmetry action.  Each supplied
    /// generator must be a positive multiple of the fan's own.
    pub fn with_generators(fan: &Fan, gens: Vec<QVector>) -> Result<ArtinianTable, Error> {
        let d = fan.dim();
        if let Err(rays) = fan.is_simplicial() {
            return Err(Error::NotSimplicial(format!(
                "cone {rays:?} has more rays than its dimension"
            )));
        }
        let report = fan.is_complete();
        if !report.complete {
            return Err(Error::NotComplete(
                "the quotient is finite-dimensional only for complete fans".into(),
            ));
        }
        if gens.len() != fan.rays().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generators for {} rays",
                gens.len(),
                fan.rays().len()
            )));
        }
        for (i, g) in gens.iter().enumerate() {
            if !is_positive_multiple(g, fan.generator(i)) {
                return Err(Error::InvalidFan(format!(
                    "generator {i} does not span ray {i}"
                )));
            }
        }

        let bases: Vec<GradedBasis> = (0..=d + 3).map(|k| graded_basis(fan, k)).collect();
        let forms = lsop_for(&gens, d);

        let mut ideal: Vec<Rref> = Vec::with_capacity(d + 1);
        let mut ideal_cols: Vec<Vec<QVector>> = Vec::with_capacity(d + 1);
        ideal.push(Rref::new(bases[0].len()));
        ideal_cols.push(Vec::new());
        for k in 1..=d {
            let (prev, cur) = (&bases[k - 1], &bases[k]);
            let mut span = Rref::new(cur.len());
            let mut cols = Vec::new();
            for form in &forms {
                for m in prev.monomials() {
                    let mut v = vec![rat(0); cur.len()];
                    let mut nonzero = false;
                    for (i, c) in form.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        // the product dies unless the enlarged support is
                        // still the ray set of a cone
                        if let Some(pos) = cur.index_of(&m.mul_var(i)) {
                            v[pos] = c.clone();
                            nonzero = true;
                        }
                    }
                    if nonzero && span.insert(v.clone()) {
                        cols.push(v);
                    }
                }
            }
            ideal.push(span);
            ideal_cols.push(cols);
        }

        let mut dims_abar = Vec::with_capacity(d + 1);
        let mut quotient_cols = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let n = bases[k].len();
            let span = &ideal[k];
            let mut pivots = span.pivots.iter().copied().peekable();
            let mut free = Vec::with_capacity(n - span.rank());
            for j in 0..n {
                if pivots.peek() == Some(&j) {
                    pivots.next();
                } else {
                    free.push(j);
                }
            }
            dims_abar.push(n - span.rank());
            quotient_cols.push(free);
        }

        // two facts that hold for every complete simplicial fan; a failure
        // here is a bug, not bad input
        let top = fan.cones(d).len();
        let total: usize = dims_abar.iter().sum();
        if total != top {
            return Err(Error::Internal(format!(
                "quotient dimensions sum to {total}, expected the {top} top cones"
            )));
        }
        if dims_abar[d] != 1 {
            return Err(Error::Internal(format!(
                "top quotient piece has dimension {}, expected 1",
                dims_abar[d]
            )));
        }

        Ok(ArtinianTable {
            fan: fan.clone(),
            gens,
            forms,
            bases,
            ideal,
            ideal_cols,
            quotient_cols,
            dims_abar,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn generators(&self) -> &[QVector] {
        &self.gens
    }

    pub fn parameter_forms(&self) -> &[QVector] {
        &self.forms
    }

    /// Highest degree with an enumerated basis (three past the fan dimension).
    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, k: usize) -> &GradedBasis {
        &self.bases[k]
    }

    /// Dimension of the degree-k piece of the face ring, for k through d+3.
    pub fn dim_face_ring(&self, k: usize) -> usize {
        self.bases[k].len()
    }

    /// Dimension of the degree-k piece of the quotient; zero past degree d.
    pub fn dim_quotient(&self, k: usize) -> usize {
        self.dims_abar.get(k).copied().unwrap_or(0)
    }

    /// Rank of the degree-k piece of the parameter ideal, for k through d.
    pub fn ideal_rank(&self, k: usize) -> usize {
        self.ideal[k].rank()
    }

    /// Hilbert series of the quotient as a polynomial in t.
    pub fn hilbert(&self) -> QPoly {
        QPoly::new(self.dims_abar.iter().map(|&n| rat(n as i64)).collect())
    }

    /// Monomials whose classes form a basis of the degree-k quotient piece.
    pub fn quotient_monomials(&self, k: usize) -> Vec<&Monomial> {
        self.quotient_cols[k]
            .iter()
            .map(|&pos| self.bases[k].monomial(pos))
            .collect()
    }

    fn check_action(&self, action: &FanAction) -> Result<(), Error> {
        if !fans_equal(&self.fan, action.fan()) || action.generators() != &self.gens[..] {
            return Err(Error::Internal(
                "action is bound to a different fan or generator scaling".into(),
            ));
        }
        Ok(())
    }

    /// Graded traces of every group element on the face ring and on the
    /// quotient.  Face-ring traces count fixed monomials; quotient traces
    /// reduce each permuted quotient monomial modulo the ideal and read off
    /// the diagonal coefficient.  The action must be bound to the same fan
    /// with the same generator scaling as this table.
    pub fn characters(&self, action: &FanAction) -> Result<ActionCharacters, Error> {
        self.check_action(action)?;
        let d = self.fan.dim();
        let order = action.group().order();
        let mut traces_face = Vec::with_capacity(order);
        let mut traces_quot = Vec::with_capacity(order);
        for e in 0..order {
            let perm = action.ray_perm(e);
            if !lsop_span_invariant(&self.forms, perm) {
                return Err(Error::LsopNotInvariant(e));
            }
            let fixed: Vec<i64> = self
                .bases
                .iter()
                .map(|b| {
                    b.monomials()
                        .iter()
                        .filter(|m| &m.permute(perm) == *m)
                        .count() as i64
                })
                .collect();
            let mut quot = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let b = &self.bases[k];
                let mut trace = rat(0);
                for &pos in &self.quotient_cols[k] {
                    let img = b.monomial(pos).permute(perm);
                    let img_pos = b.index_of(&img).ok_or_else(|| {
                        Error::Internal("permuted monomial left the basis".into())
                    })?;
                    let mut v = vec![rat(0); b.len()];
                    v[img_pos] = rat(1);
                    self.ideal[k].reduce(&mut v);
                    trace += v[pos].clone();
                }
                if !trace.is_integer() {
                    return Err(Error::Internal(format!(
                        "trace {trace} on the degree-{k} quotient is not an integer"
                    )));
                }
                quot.push(trace);
            }
            traces_face.push(fixed);
            traces_quot.push(quot);
        }
        Ok(ActionCharacters {
            dims_abar: self.dims_abar.clone(),
            traces_face,
            traces_quot,
        })
    }

    /// Trace of one element on the degree-k ideal piece by the restriction
    /// route: pick the stored column basis B of the image, solve B·M = g·B
    /// exactly, and return trace(M).
    pub fn ideal_trace_restricted(
        &self,
        action: &FanAction,
        element: usize,
        k: usize,
    ) -> Result<Rat, Error> {
        self.check_action(action)?;
        let cols = &self.ideal_cols[k];
        if cols.is_empty() {
            return Ok(rat(0));
        }
        let b = &self.bases[k];
        let perm = action.ray_perm(element);
        let mon_perm: Vec<usize> = (0..b.len())
            .map(|i| {
                b.index_of(&b.monomial(i).permute(perm))
                    .ok_or_else(|| Error::Internal("permuted monomial left the basis".into()))
            })
            .collect::<Result<_, _>>()?;
        let rows = b.len();
        let mut basis_rows = vec![vec![rat(0); cols.len()]; rows];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..rows {
                basis_rows[i][j] = col[i].clone();
            }
        }
        let basis_mat = QMatrix::from_rows(basis_rows);
        let mut trace = rat(0);
        for (j, col) in cols.iter().enumerate() {
            let mut img = vec![rat(0); rows];
            for i in 0..rows {
                if !col[i].is_zero() {
                    img[mon_perm[i]] = col[i].clone();
                }
            }
            let sol = solve(&basis_mat, &img)?.ok_or_else(|| {
                Error::Internal("ideal image is not closed under the action".into())
            })?;
            trace += sol[j].clone();
        }
        Ok(trace)
    }

    /// Graded quotient trace of one element computed as the face-ring trace
    /// minus the restricted ideal trace — an independent route used to
    /// cross-check [`ArtinianTable::characters`].
    pub fn oracle_character_restricted(
        &self,
        action: &FanAction,
        element: usize,
    ) -> Result<QPoly, Error> {
        self.check_action(action)?;
        let d = self.fan.dim();
        let perm = action.ray_perm(element);
        let mut coeffs = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let fixed = self.bases[k]
                .monomials()
                .iter()
                .filter(|m| &m.permute(perm) == *m)
                .count() as i64;
            let ideal_trace = self.ideal_trace_restricted(action, element, k)?;
            coeffs.push(rat(fixed) - ideal_trace);
        }
        Ok(QPoly::new(coeffs))
    }

    /// For every ridge (codimension-one cone) with adjacent top cones σ₁ and
    /// σ₂, the combination det(V₁)·x₁ + det(V₂)·x₂ of the squarefree top
    /// monomials must lie in the degree-d ideal, where each determinant is
    /// taken over the cone's generators ordered as the ridge's rays followed
    /// by the remaining ray.
    pub fn volume_element_check(&self) -> Result<(), Error> {
        let d = self.fan.dim();
        let b = &self.bases[d];
        let span = &self.ideal[d];
        for ridge in self.fan.cones(d - 1) {
            let adjacent: Vec<&Cone> = self
                .fan
                .cones(d)
                .iter()
                .filter(|c| ridge.rays.iter().all(|r| c.rays.contains(r)))
                .collect();
            if adjacent.len() != 2 {
                return Err(Error::Internal(format!(
                    "ridge {:?} lies in {} top cones, expected 2",
                    ridge.rays,
                    adjacent.len()
                )));
            }
            let mut relation = vec![rat(0); b.len()];
            for cone in adjacent {
                let mut order: Vec<usize> = ridge.rays.clone();
                order.extend(cone.rays.iter().copied().filter(|r| !ridge.rays.contains(r)));
                let mat = QMatrix::from_rows(
                    (0..d)
                        .map(|coord| order.iter().map(|&i| self.gens[i][coord].clone()).collect())
                        .collect(),
                );
                let volume = det(&mat)?;
                let pos = b
                    .index_of(&Monomial::squarefree(&cone.rays))
                    .ok_or_else(|| Error::Internal("top monomial missing from basis".into()))?;
                relation[pos] += volume;
            }
            if !span.contains(&relation) {
                return Err(Error::VolumeElement(ridge.rays.clone()));
            }
        }
        Ok(())
    }
}

fn is_positive_multiple(a: &QVector, b: &QVector) -> bool {
    if a.len() != b.len() {
        return false;
    }
    // find the scale from the first nonzero coordinate of b, then compare
    let Some(i) = b.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if a[i].is_zero() {
        return false;
    }
    let scale = &a[i] / &b[i];
    if scale <= rat(0) {
        return false;
    }
    a.iter()
        .zip(b.iter())
        .all(|(x, y)| *x == y * &scale)
}

/// Graded traces of every element of a bound group on the face ring (through
/// degree d+3) and on the Artinian quotient (through degree d).
pub struct ActionCharacters {
    dims_abar: Vec<usize>,
    traces_face: Vec<Vec<i64>>,
    traces_quot: Vec<Vec<Rat>>,
}

impl ActionCharacters {
    pub fn elements(&self) -> usize {
        self.traces_quot.len()
    }

    /// Top degree of the quotient (the fan dimension).
    pub fn top_degree(&self) -> usize {
        self.dims_abar.len() - 1
    }

    /// Trace of an element on the degree-k face-ring piece (k through d+3).
    pub fn face_trace(&self, element: usize, k: usize) -> i64 {
        self.traces_face[element][k]
    }

    /// Trace of an element on the degree-k quotient piece (k through d).
    pub fn quotient_trace(&self, element: usize, k: usize) -> &Rat {
        &self.traces_quot[element][k]
    }

    /// Graded quotient trace of one element as a polynomial in t.
    pub fn oracle_character(&self, element: usize) -> QPoly {
        QPoly::new(self.traces_quot[element].clone())
    }

    /// Aggregates the per-element characters into a class function,
    /// verifying along the way that conjugate elements got equal traces.
    pub fn class_function(&self, group: &MatrixGroup) -> Result<ClassFunction, Error> {
        if group.order() != self.elements() {
            return Err(Error::DimensionMismatch(format!(
                "{} elements traced, group has {}",
                self.elements(),
                group.order()
            )));
        }
        let mut values = Vec::with_capacity(group.conj_classes().len());
        for class in group.conj_classes() {
            let first = self.oracle_character(class[0]);
            for &e in &class[1..] {
                if self.oracle_character(e) != first {
                    return Err(Error::Internal(format!(
                        "conjugate elements {} and {} have different characters",
                        class[0], e
                    )));
                }
            }
            values.push(first);
        }
        ClassFunction::new(group, values)
    }

    /// The top quotient piece is one-dimensional and carries the trivial
    /// action: every element must act on it with trace one.
    pub fn socle_check(&self) -> Result<(), Error> {
        let d = self.top_degree();
        if self.dims_abar[d] != 1 {
            return Err(Error::SocleFailure(format!(
                "top quotient piece has dimension {}",
                self.dims_abar[d]
            )));
        }
        for (e, traces) in self.traces_quot.iter().enumerate() {
            if traces[d] != rat(1) {
                return Err(Error::SocleFailure(format!(
                    "element {e} has top trace {}",
                    traces[d]
                )));
            }
        }
        Ok(())
    }
}
