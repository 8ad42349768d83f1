//! JSON file formats for fans, polytopes, groups, and class functions.
//!
//! Conventions shared by every format:
//!
//! * rationals are decimal strings `"p/q"`, with `/q` omitted when the
//!   denominator is 1 (plain JSON integers are also accepted on input);
//! * vectors are arrays of rationals, matrices are row-major nested arrays.
//!
//! The formats themselves:
//!
//! * **fan** — `{ "dim", "gram", "rays", "maximal_cones" }`, where
//!   `maximal_cones` lists each maximal cone as an array of ray indices.
//!   Only maximal cones are stored; the face closure is rebuilt on load.
//!   `gram` may be omitted for the standard inner product.
//! * **polytope** — `{ "dim", "vertices" }`, plus `gram` when the ambient
//!   bilinear form is not the identity.
//! * **group** — either `{ "generators": [matrix, ...] }` for a finite
//!   matrix group or `{ "simple_roots": [vector, ...] }` for a reflection
//!   group, with optional `"gram"` and `"dim"`.  When no gram is given the
//!   group lives in the caller-provided ambient space (or the standard one).
//! * **class function** — `{ "classes": [{ "size", "representative",
//!   "value" }] }`, one entry per conjugacy class, `value` holding ascending
//!   polynomial coefficients.
//! * **hybrid fan** — the fan format plus `"labels"` (per-ray provenance:
//!   rays copied from the source fan vs. negated simple roots) and
//!   `"pairs"` (the generating index pair of each maximal cone, aligned
//!   with `maximal_cones`).

use crate::error::Error;
use crate::exact::{parse_rat, rat_to_string, QMatrix, QPoly, QVector};
use crate::fan::{AmbientSpace, Fan, Polytope};
use crate::hybrid::{HybridFan, RayLabel};
use crate::symmetry::{MatrixGroup, RootSystem, DEFAULT_GROUP_CAP};
use serde_json::{json, Map, Value};

fn bad(path: &str, message: impl Into<String>) -> Error {
    Error::BadFile {
        path: path.to_string(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------- reading

/// Reads and parses a JSON file.
pub fn read_json(path: &str) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| bad(path, e.to_string()))
}

/// Writes a JSON value to a file, pretty-printed.
pub fn write_json(path: &str, v: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| bad(path, e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

fn as_object<'a>(v: &'a Value, path: &str, what: &str) -> Result<&'a Map<String, Value>, Error> {
    v.as_object()
        .ok_or_else(|| bad(path, format!("{what} must be a JSON object")))
}

fn as_array<'a>(v: &'a Value, path: &str, what: &str) -> Result<&'a [Value], Error> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| bad(path, format!("{what} must be a JSON array")))
}

fn as_usize(v: &Value, path: &str, what: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(path, format!("{what} must be a nonnegative integer")))
}

fn field<'a>(
    obj: &'a Map<String, Value>,
    path: &str,
    key: &str,
) -> Result<&'a Value, Error> {
    obj.get(key)
        .ok_or_else(|| bad(path, format!("missing field {key:?}")))
}

fn rat_from_json(v: &Value, path: &str, what: &str) -> Result<crate::exact::Rat, Error> {
    if let Some(s) = v.as_str() {
        return parse_rat(s).map_err(|_| bad(path, format!("{what}: bad rational {s:?}")));
    }
    if let Some(n) = v.as_i64() {
        return Ok(crate::exact::rat(n));
    }
    Err(bad(
        path,
        format!("{what} must be a rational string or an integer"),
    ))
}

/// Parses an array of rationals.
pub fn vec_from_json(v: &Value, path: &str, what: &str) -> Result<QVector, Error> {
    as_array(v, path, what)?
        .iter()
        .map(|x| rat_from_json(x, path, what))
        .collect()
}

/// Parses a row-major nested array into a matrix; rows must have equal
/// lengths.
pub fn mat_from_json(v: &Value, path: &str, what: &str) -> Result<QMatrix, Error> {
    let rows: Vec<QVector> = as_array(v, path, what)?
        .iter()
        .map(|row| vec_from_json(row, path, what))
        .collect::<Result<_, _>>()?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(bad(path, format!("{what}: ragged matrix rows")));
        }
    }
    Ok(QMatrix::from_rows(rows))
}

// ---------------------------------------------------------------- writing

/// Serializes a rational vector.
pub fn vec_to_json(v: &[crate::exact::Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rat_to_string(x))).collect())
}

/// Serializes a matrix row-major.
pub fn mat_to_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_to_json(m.row(i))).collect())
}

/// Serializes a polynomial as its ascending coefficient array.
pub fn poly_to_json(p: &QPoly) -> Value {
    vec_to_json(p.coeffs())
}

// -------------------------------------------------------------------- fan

/// Serializes a fan: dimension, gram matrix, primitive ray generators, and
/// the ray-index sets of the maximal cones.
pub fn fan_to_json(f: &Fan) -> Value {
    json!({
        "dim": f.dim(),
        "gram": mat_to_json(f.space().gram()),
        "rays": Value::Array(f.rays().iter().map(|r| vec_to_json(&r.generator)).collect()),
        "maximal_cones": f.maximal_cones().iter().map(|c| c.rays.clone()).collect::<Vec<_>>(),
    })
}

/// Rebuilds a fan from its serialized form, restoring the face closure.
/// No fan axioms are checked; run `validate` separately.
pub fn fan_from_json(v: &Value, path: &str) -> Result<Fan, Error> {
    let obj = as_object(v, path, "fan")?;
    let dim = as_usize(field(obj, path, "dim")?, path, "dim")?;
    let space = ambient_space(obj, path, dim)?;
    let rays: Vec<QVector> = as_array(field(obj, path, "rays")?, path, "rays")?
        .iter()
        .map(|r| vec_from_json(r, path, "ray"))
        .collect::<Result<_, _>>()?;
    let cones: Vec<Vec<usize>> =
        as_array(field(obj, path, "maximal_cones")?, path, "maximal_cones")?
            .iter()
            .map(|c| {
                as_array(c, path, "cone")?
                    .iter()
                    .map(|i| as_usize(i, path, "ray index"))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
    Fan::build(space, rays, cones)
}

fn ambient_space(obj: &Map<String, Value>, path: &str, dim: usize) -> Result<AmbientSpace, Error> {
    match obj.get("gram") {
        Some(g) => AmbientSpace::new(dim, mat_from_json(g, path, "gram")?),
        None => Ok(AmbientSpace::standard(dim)),
    }
}

pub fn read_fan(path: &str) -> Result<Fan, Error> {
    fan_from_json(&read_json(path)?, path)
}

pub fn write_fan(path: &str, f: &Fan) -> Result<(), Error> {
    write_json(path, &fan_to_json(f))
}

// --------------------------------------------------------------- polytope

/// Serializes a polytope as its vertex list (plus the gram matrix when the
/// bilinear form is not the standard one).
pub fn polytope_to_json(p: &Polytope) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(p.space().dim()));
    let d = p.space().dim();
    if *p.space().gram() != QMatrix::identity(d) {
        obj.insert("gram".into(), mat_to_json(p.space().gram()));
    }
    obj.insert(
        "vertices".into(),
        Value::Array(p.vertices().iter().map(|v| vec_to_json(v)).collect()),
    );
    Value::Object(obj)
}

pub fn polytope_from_json(v: &Value, path: &str) -> Result<Polytope, Error> {
    let obj = as_object(v, path, "polytope")?;
    let dim = as_usize(field(obj, path, "dim")?, path, "dim")?;
    let space = ambient_space(obj, path, dim)?;
    let vertices: Vec<QVector> = as_array(field(obj, path, "vertices")?, path, "vertices")?
        .iter()
        .map(|x| vec_from_json(x, path, "vertex"))
        .collect::<Result<_, _>>()?;
    Polytope::new(space, vertices)
}

pub fn read_polytope(path: &str) -> Result<Polytope, Error> {
    polytope_from_json(&read_json(path)?, path)
}

pub fn write_polytope(path: &str, p: &Polytope) -> Result<(), Error> {
    write_json(path, &polytope_to_json(p))
}

// ------------------------------------------------------------------ group

/// A group loaded from a file: either a plain matrix group or a reflection
/// group remembering its simple roots.
pub enum GroupInput {
    Matrix(MatrixGroup),
    Roots(RootSystem),
}

impl GroupInput {
    pub fn group(&self) -> &MatrixGroup {
        match self {
            GroupInput::Matrix(g) => g,
            GroupInput::Roots(rs) => rs.group(),
        }
    }

    /// The root system, when the file gave simple roots.
    pub fn roots(&self) -> Option<&RootSystem> {
        match self {
            GroupInput::Matrix(_) => None,
            GroupInput::Roots(rs) => Some(rs),
        }
    }
}

/// Loads a group from `{ "generators": ... }` or `{ "simple_roots": ... }`.
///
/// The ambient dimension comes from an explicit `"dim"` field, or from the
/// data itself, or from `ambient`.  The bilinear form comes from a `"gram"`
/// field when present, otherwise from `ambient` (so a group file without a
/// gram pairs correctly with a fan that has one), otherwise it is standard.
pub fn group_from_json(
    v: &Value,
    path: &str,
    ambient: Option<&AmbientSpace>,
) -> Result<GroupInput, Error> {
    let obj = as_object(v, path, "group")?;
    let gens = obj.get("generators");
    let roots = obj.get("simple_roots");
    if gens.is_some() == roots.is_some() {
        return Err(bad(
            path,
            "expected exactly one of \"generators\" and \"simple_roots\"",
        ));
    }

    let matrices: Option<Vec<QMatrix>> = gens
        .map(|g| {
            as_array(g, path, "generators")?
                .iter()
                .map(|m| mat_from_json(m, path, "generator"))
                .collect::<Result<_, _>>()
        })
        .transpose()?;
    let simple: Option<Vec<QVector>> = roots
        .map(|r| {
            as_array(r, path, "simple_roots")?
                .iter()
                .map(|x| vec_from_json(x, path, "simple root"))
                .collect::<Result<_, _>>()
        })
        .transpose()?;

    let inferred = match (&matrices, &simple) {
        (Some(ms), _) => ms.first().map(|m| m.rows()),
        (_, Some(rs)) => rs.first().map(Vec::len),
        _ => None,
    };
    let dim = match obj.get("dim") {
        Some(d) => as_usize(d, path, "dim")?,
        None => inferred
            .or(ambient.map(AmbientSpace::dim))
            .ok_or_else(|| bad(path, "cannot infer the dimension; add a \"dim\" field"))?,
    };

    let space = match obj.get("gram") {
        Some(g) => AmbientSpace::new(dim, mat_from_json(g, path, "gram")?)?,
        None => match ambient {
            Some(sp) if sp.dim() == dim => sp.clone(),
            _ => AmbientSpace::standard(dim),
        },
    };

    if let Some(ms) = matrices {
        let group = MatrixGroup::generate(space, &ms, DEFAULT_GROUP_CAP)?;
        return Ok(GroupInput::Matrix(group));
    }
    let rs = RootSystem::new(space, simple.unwrap(), DEFAULT_GROUP_CAP)?;
    Ok(GroupInput::Roots(rs))
}

pub fn read_group(path: &str, ambient: Option<&AmbientSpace>) -> Result<GroupInput, Error> {
    group_from_json(&read_json(path)?, path, ambient)
}

// --------------------------------------------------------- class functions

/// Serializes one polynomial per conjugacy class as
/// `{ "classes": [{ "size", "representative", "value" }] }`.
pub fn class_function_to_json(group: &MatrixGroup, values: &[QPoly]) -> Result<Value, Error> {
    let classes = group.conj_classes();
    if values.len() != classes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} conjugacy classes",
            values.len(),
            classes.len()
        )));
    }
    let entries: Vec<Value> = classes
        .iter()
        .zip(values)
        .map(|(class, value)| {
            json!({
                "size": class.len(),
                "representative": mat_to_json(group.element(class[0])),
                "value": poly_to_json(value),
            })
        })
        .collect();
    Ok(json!({ "classes": entries }))
}

// ----------------------------------------------------------------- hybrid

/// Serializes a hybrid fan: the fan format plus per-ray provenance labels
/// and, aligned with `maximal_cones`, the pair of index sets each maximal
/// cone was generated from (`i`: source-fan ray indices, `j`: simple-root
/// indices).
pub fn hybrid_to_json(h: &HybridFan) -> Result<Value, Error> {
    let mut v = fan_to_json(h.fan());
    let obj = v.as_object_mut().expect("fan_to_json returns an object");
    let labels: Vec<Value> = h
        .labels()
        .iter()
        .map(|l| match l {
            RayLabel::Source(i) => json!({ "kind": "source", "index": i }),
            RayLabel::Wall(j) => json!({ "kind": "wall", "index": j }),
        })
        .collect();
    obj.insert("labels".into(), Value::Array(labels));
    let pairs: Vec<Value> = h
        .fan()
        .maximal_cones()
        .iter()
        .map(|c| {
            let origin = h.origin_of(&c.rays).ok_or_else(|| {
                Error::Internal(format!("maximal cone {:?} has no recorded origin", c.rays))
            })?;
            Ok(json!({ "i": origin.source_rays, "j": origin.roots }))
        })
        .collect::<Result<_, Error>>()?;
    obj.insert("pairs".into(), Value::Array(pairs));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fan::{coxeter_fan, fans_equal};
    use crate::hybrid::build_hybrid_naive;

    fn qv(entries: &[i64]) -> QVector {
        entries.iter().map(|&x| rat(x)).collect()
    }

    fn b2_roots() -> RootSystem {
        RootSystem::new(
            AmbientSpace::standard(2),
            vec![qv(&[1, -1]), qv(&[0, 1])],
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    fn a2_space() -> AmbientSpace {
        AmbientSpace::new(
            2,
            QMatrix::from_rows(vec![vec![rat(2), rat(-1)], vec![rat(-1), rat(2)]]),
        )
        .unwrap()
    }

    #[test]
    fn fan_round_trip_preserves_structure_and_form() {
        let rs = RootSystem::new(a2_space(), vec![qv(&[1, 0]), qv(&[0, 1])], 200).unwrap();
        let f = coxeter_fan(&rs).unwrap();
        let v = fan_to_json(&f);
        let back = fan_from_json(&v, "test").unwrap();
        assert!(fans_equal(&f, &back));
        assert_eq!(f.space().gram(), back.space().gram());
        // the writer stores only maximal cones
        assert_eq!(
            v["maximal_cones"].as_array().unwrap().len(),
            f.maximal_cones().len()
        );
    }

    #[test]
    fn fan_file_round_trip_on_disk() {
        let f = coxeter_fan(&b2_roots()).unwrap();
        let path = std::env::temp_dir().join(format!("fanchar-io-{}.json", std::process::id()));
        let path = path.to_str().unwrap().to_string();
        write_fan(&path, &f).unwrap();
        let back = read_fan(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert!(fans_equal(&f, &back));
    }

    #[test]
    fn polytope_round_trip_keeps_the_gram() {
        let hexagon = Polytope::new(
            a2_space(),
            vec![
                qv(&[1, 1]),
                qv(&[0, 1]),
                qv(&[1, 0]),
                qv(&[-1, 0]),
                qv(&[0, -1]),
                qv(&[-1, -1]),
            ],
        )
        .unwrap();
        let v = polytope_to_json(&hexagon);
        assert!(v.get("gram").is_some());
        let back = polytope_from_json(&v, "test").unwrap();
        assert_eq!(back.vertices(), hexagon.vertices());
        assert_eq!(back.space().gram(), hexagon.space().gram());

        // identity form: the gram field is omitted
        let square = Polytope::new(
            AmbientSpace::standard(2),
            vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])],
        )
        .unwrap();
        let v = polytope_to_json(&square);
        assert!(v.get("gram").is_none());
        let back = polytope_from_json(&v, "test").unwrap();
        assert_eq!(back.vertices(), square.vertices());
    }

    #[test]
    fn group_files_accept_both_shapes() {
        let roots = json!({ "simple_roots": [["1", "-1"], ["0", "1"]] });
        let g = group_from_json(&roots, "test", None).unwrap();
        assert_eq!(g.group().order(), 8);
        assert!(g.roots().is_some());

        // the same group from generator matrices, integers spelled as numbers
        let gens = json!({ "generators": [
            [[0, 1], [1, 0]],
            [[1, 0], [0, -1]],
        ]});
        let m = group_from_json(&gens, "test", None).unwrap();
        assert!(m.roots().is_none());
        assert!(m.group().same_elements(g.group()));
    }

    #[test]
    fn group_file_takes_the_ambient_form_when_it_has_none() {
        let v = json!({ "simple_roots": [["1", "0"], ["0", "1"]] });
        let space = a2_space();
        let g = group_from_json(&v, "test", Some(&space)).unwrap();
        assert_eq!(g.group().order(), 6);
        assert_eq!(g.group().space().gram(), space.gram());
        // without the hint these roots generate a different group
        let plain = group_from_json(&v, "test", None).unwrap();
        assert_eq!(plain.group().order(), 4);
    }

    #[test]
    fn malformed_files_are_rejected_with_context() {
        let missing = json!({ "dim": 2, "rays": [] });
        assert!(matches!(
            fan_from_json(&missing, "f.json"),
            Err(Error::BadFile { .. })
        ));
        let zero_denominator = json!({ "dim": 1, "rays": [["1/0"]], "maximal_cones": [[0]] });
        assert!(matches!(
            fan_from_json(&zero_denominator, "f.json"),
            Err(Error::BadFile { .. })
        ));
        let both = json!({ "generators": [], "simple_roots": [] });
        assert!(group_from_json(&both, "g.json", None).is_err());
        let no_dim = json!({ "generators": [] });
        assert!(group_from_json(&no_dim, "g.json", None).is_err());
    }

    #[test]
    fn class_function_output_lists_every_class() {
        let rs = b2_roots();
        let group = rs.group();
        let values: Vec<QPoly> = (0..group.conj_classes().len())
            .map(|k| QPoly::constant(rat(k as i64 + 1)))
            .collect();
        let v = class_function_to_json(group, &values).unwrap();
        let classes = v["classes"].as_array().unwrap();
        assert_eq!(classes.len(), group.conj_classes().len());
        let total: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
        assert_eq!(total as usize, group.order());
        assert_eq!(classes[0]["value"], json!(["1"]));
    }

    #[test]
    fn hybrid_output_carries_labels_and_pairs() {
        let source = crate::fan::cross_polytope_fan(2).unwrap();
        let h = build_hybrid_naive(&source, &b2_roots()).unwrap();
        let v = hybrid_to_json(&h).unwrap();
        let labels = v["labels"].as_array().unwrap();
        assert_eq!(labels.len(), h.fan().rays().len());
        let walls = labels
            .iter()
            .filter(|l| l["kind"] == json!("wall"))
            .count();
        assert_eq!(walls, 2);
        let pairs = v["pairs"].as_array().unwrap();
        assert_eq!(pairs.len(), h.fan().maximal_cones().len());
        // every maximal cone's pair regenerates its ray count
        for (c, pair) in h.fan().maximal_cones().iter().zip(pairs) {
            let i = pair["i"].as_array().unwrap().len();
            let j = pair["j"].as_array().unwrap().len();
            assert_eq!(i + j, c.rays.len());
        }
    }
}
