//! Finite groups of exact rational matrices preserving the ambient bilinear
//! form.  Groups are generated by breadth-first closure under products, with
//! a hard element cap guarding against accidentally infinite input.

use crate::error::Error;
use crate::exact::{rat, solve, QMatrix, QVector, Rat};
use crate::fan::AmbientSpace;
use std::collections::HashMap;

/// Default limit on group size during closure.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A finite matrix group.  Element 0 is always the identity; the element
/// list is closed under products and inverses.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    space: AmbientSpace,
    elements: Vec<QMatrix>,
    index: HashMap<QMatrix, usize>,
    inverse_of: Vec<usize>,
    conj_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Whether `m` preserves the bilinear form of `space`: mᵀ·G·m = G.
/// This forces `m` invertible, so it needs no separate check.
fn preserves_form(m: &QMatrix, space: &AmbientSpace) -> bool {
    let d = space.dim();
    if m.rows() != d || m.cols() != d {
        return false;
    }
    &(&m.transpose() * space.gram()) * m == *space.gram()
}

impl MatrixGroup {
    /// Closes `gens` under products, breadth-first from the identity.
    pub fn generate(
        space: AmbientSpace,
        gens: &[QMatrix],
        cap: usize,
    ) -> Result<MatrixGroup, Error> {
        let d = space.dim();
        for g in gens {
            if !preserves_form(g, &space) {
                return Err(Error::NotOrthogonal);
            }
        }
        let mut elements = vec![QMatrix::identity(d)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let p = &elements[head] * g;
                if !index.contains_key(&p) {
                    if elements.len() + 1 > cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            head += 1;
        }
        Self::finish(space, elements, index)
    }

    /// Builds a group from an explicit element list (used for stabilizers
    /// and other subgroups).  The identity is moved to position 0; the list
    /// must be closed under products.
    pub fn from_elements(space: AmbientSpace, elems: Vec<QMatrix>) -> Result<MatrixGroup, Error> {
        let d = space.dim();
        let id = QMatrix::identity(d);
        let mut elements = vec![id.clone()];
        for e in elems {
            if !preserves_form(&e, &space) {
                return Err(Error::NotOrthogonal);
            }
            if e != id && !elements.contains(&e) {
                elements.push(e);
            }
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        // closure under products
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&(a * b)) {
                    return Err(Error::Internal(
                        "element list is not closed under products".into(),
                    ));
                }
            }
        }
        Self::finish(space, elements, index)
    }

    fn finish(
        space: AmbientSpace,
        elements: Vec<QMatrix>,
        index: HashMap<QMatrix, usize>,
    ) -> Result<MatrixGroup, Error> {
        // inverse of a form-preserving matrix: m⁻¹ = G⁻¹ mᵀ G
        let d = space.dim();
        let gram_inv = {
            let mut cols = Vec::with_capacity(d);
            for i in 0..d {
                let mut e = vec![rat(0); d];
                e[i] = rat(1);
                let col = solve(space.gram(), &e)?
                    .ok_or_else(|| Error::Internal("gram matrix not invertible".into()))?;
                cols.push(col);
            }
            QMatrix::from_cols(cols)
        };
        let mut inverse_of = Vec::with_capacity(elements.len());
        for e in &elements {
            let inv = &(&gram_inv * &e.transpose()) * space.gram();
            let j = *index
                .get(&inv)
                .ok_or_else(|| Error::Internal("group not closed under inverses".into()))?;
            inverse_of.push(j);
        }
        // conjugacy classes by orbit under conjugation
        let n = elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut conj_classes = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = conj_classes.len();
            let mut members = vec![i];
            class_of[i] = c;
            let mut head = 0;
            while head < members.len() {
                let x = &elements[members[head]];
                for (g, gi) in elements.iter().zip(&inverse_of) {
                    let y = &(&elements[*gi] * x) * g;
                    let j = *index
                        .get(&y)
                        .ok_or_else(|| Error::Internal("conjugate left the group".into()))?;
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        members.push(j);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            conj_classes.push(members);
        }
        Ok(MatrixGroup {
            space,
            elements,
            index,
            inverse_of,
            conj_classes,
            class_of,
        })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse_of[i]
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        *self
            .index
            .get(&(&self.elements[i] * &self.elements[j]))
            .expect("group closed under products")
    }

    pub fn apply(&self, i: usize, v: &[Rat]) -> QVector {
        self.elements[i].mul_vec(v)
    }

    pub fn conj_classes(&self) -> &[Vec<usize>] {
        &self.conj_classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Same underlying set of matrices, regardless of element order.
    pub fn same_elements(&self, other: &MatrixGroup) -> bool {
        self.order() == other.order()
            && self.elements.iter().all(|e| other.index_of(e).is_some())
    }
}

/// Subgroup of the elements fixing `y`.
pub fn point_stabilizer(group: &MatrixGroup, y: &[Rat]) -> Result<MatrixGroup, Error> {
    let fixed: Vec<QMatrix> = group
        .elements()
        .iter()
        .filter(|m| m.mul_vec(y) == y)
        .cloned()
        .collect();
    MatrixGroup::from_elements(group.space().clone(), fixed)
}
