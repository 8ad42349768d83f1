//! Polytopes by vertex list, facet enumeration, and the two fans a polytope
//! carries: the central fan (cones over proper faces, origin interior) and
//! the normal fan.
//!
//! Facets are found by brute force over `d`-subsets of vertices.  Normal
//! vectors are expressed as elements of the ambient space via its bilinear
//! form, so a facet `{x : <a, x> = b}` has `a` living in `V` rather than in
//! an abstract dual.

use super::{k_subsets, AmbientSpace, Fan};
use crate::error::Error;
use crate::exact::{
    feasible_nonneg, kernel, primitive, rank, rat, solve, vec_sub, QMatrix, QVector, Rat,
};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Convex polytope given by its vertices.  The list is validated to be
/// irredundant: every listed point is a vertex.
#[derive(Clone, Debug)]
pub struct Polytope {
    space: AmbientSpace,
    vertices: Vec<QVector>,
}

/// One facet: outer functional, offset, and the vertices lying on it.
/// Points `x` of the polytope satisfy `<a, x> <= b`.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: QVector,
    pub offset: Rat,
    pub vertices: Vec<usize>,
}

impl Polytope {
    pub fn new(space: AmbientSpace, vertices: Vec<QVector>) -> Result<Polytope, Error> {
        let d = space.dim();
        if vertices.is_empty() {
            return Err(Error::BadPolytope("no vertices".into()));
        }
        for v in &vertices {
            if v.len() != d {
                return Err(Error::BadPolytope(format!(
                    "vertex length {} in a {d}-dimensional space",
                    v.len()
                )));
            }
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::BadPolytope(format!("duplicate vertex {j}")));
                }
            }
        }
        // each vertex must be extreme: not a convex combination of the rest
        for i in 0..vertices.len() {
            if vertices.len() == 1 {
                break;
            }
            let others: Vec<&QVector> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .collect();
            let mut rows: Vec<QVector> = (0..d)
                .map(|k| others.iter().map(|v| v[k].clone()).collect())
                .collect();
            rows.push(vec![rat(1); others.len()]);
            let mut rhs = vertices[i].clone();
            rhs.push(rat(1));
            if feasible_nonneg(&QMatrix::from_rows(rows), &rhs).is_some() {
                return Err(Error::BadPolytope(format!(
                    "point {i} is not a vertex (convex combination of the others)"
                )));
            }
        }
        Ok(Polytope { space, vertices })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn affine_rank(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let v0 = &self.vertices[0];
        let rows: Vec<QVector> = self.vertices[1..]
            .iter()
            .map(|v| vec_sub(v, v0))
            .collect();
        rank(&QMatrix::from_rows(rows))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_rank() == self.space.dim()
    }

    /// All facets, by hyperplane enumeration over `d`-subsets of vertices.
    /// Requires a full-dimensional polytope.
    pub fn facets(&self) -> Result<Vec<Facet>, Error> {
        let d = self.space.dim();
        if !self.is_full_dimensional() {
            return Err(Error::BadPolytope(format!(
                "polytope has affine rank {} in dimension {d}",
                self.affine_rank()
            )));
        }
        let gram = self.space.gram();
        // pairing values <a, v> = (G a) . v; we solve for w = G a directly
        let mut found: BTreeMap<Vec<String>, Facet> = BTreeMap::new();
        for sub in k_subsets(self.vertices.len(), d) {
            // (w, b) with w.v_j - b = 0 for all chosen vertices
            let rows: Vec<QVector> = sub
                .iter()
                .map(|&j| {
                    let mut row = self.vertices[j].clone();
                    row.push(rat(-1));
                    row
                })
                .collect();
            let ker = kernel(&QMatrix::from_rows(rows));
            if ker.len() != 1 {
                continue;
            }
            let mut wb = ker[0].clone();
            // orient outward: w.v <= b on every vertex
            let mut sign = 0i32;
            let mut ok = true;
            for v in &self.vertices {
                let val: Rat = wb[..d]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum::<Rat>()
                    - &wb[d];
                if val.is_zero() {
                    continue;
                }
                let s = if val.is_positive() { 1 } else { -1 };
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    ok = false;
                    break;
                }
            }
            if !ok || sign == 0 {
                continue;
            }
            if sign > 0 {
                for x in wb.iter_mut() {
                    *x = -x.clone();
                }
            }
            let wb = primitive(&wb);
            let key: Vec<String> = wb.iter().map(crate::exact::rat_to_string).collect();
            if found.contains_key(&key) {
                continue;
            }
            let w = wb[..d].to_vec();
            let b = wb[d].clone();
            let on: Vec<usize> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| {
                    w.iter().zip(*v).map(|(a, x)| a * x).sum::<Rat>() == b
                })
                .map(|(j, _)| j)
                .collect();
            // normal in V: a = G^{-1} w, rescaled primitive together with
            // the offset so that <a, x> <= offset still cuts the same
            // halfspace
            let mut normal = solve(gram, &w)?
                .ok_or_else(|| Error::Internal("gram matrix not invertible".into()))?;
            normal.push(b);
            let ab = primitive(&normal);
            found.insert(
                key,
                Facet {
                    normal: ab[..d].to_vec(),
                    offset: ab[d].clone(),
                    vertices: on,
                },
            );
        }
        Ok(found.into_values().collect())
    }
}

/// Fan of cones over the proper faces of `p`; requires the origin strictly
/// inside.  Rays are the vertex directions, maximal cones sit over facets.
pub fn central_fan(p: &Polytope) -> Result<Fan, Error> {
    let facets = p.facets()?;
    for f in &facets {
        if !f.offset.is_positive() {
            return Err(Error::BadPolytope(
                "origin is not strictly interior".into(),
            ));
        }
    }
    let gens: Vec<QVector> = p.vertices().to_vec();
    let cones: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let fan = Fan::build(p.space().clone(), gens, cones)?;
    let report = fan.validate();
    if !report.is_valid() {
        return Err(Error::InvalidFan(format!(
            "central fan failed validation: {}",
            report.violations[0]
        )));
    }
    Ok(fan)
}

/// Normal fan of a full-dimensional polytope: one maximal cone per vertex,
/// spanned by the outer normals of the facets through that vertex.
pub fn normal_fan(p: &Polytope) -> Result<Fan, Error> {
    let facets = p.facets()?;
    let gens: Vec<QVector> = facets.iter().map(|f| f.normal.clone()).collect();
    let cones: Vec<Vec<usize>> = (0..p.vertices().len())
        .map(|v| {
            facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertices.contains(&v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let fan = Fan::build(p.space().clone(), gens, cones)?;
    let report = fan.validate();
    if !report.is_valid() {
        return Err(Error::InvalidFan(format!(
            "normal fan failed validation: {}",
            report.violations[0]
        )));
    }
    Ok(fan)
}
