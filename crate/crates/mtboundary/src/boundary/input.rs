//! The analysis-input JSON: discriminant, algebra descriptor, cone, F, center.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hodge::filtration_from_spans;
use crate::linalg::{Filtration, Mat};
use crate::scalars::{format_rational, is_squarefree, parse_rational, QuadExt, Rational, ScalarRepr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Sp,
    So,
    G2,
    Su21QForm,
    Explicit,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Sp => "sp",
            AlgebraKind::So => "so",
            AlgebraKind::G2 => "g2",
            AlgebraKind::Su21QForm => "su21_qform",
            AlgebraKind::Explicit => "explicit",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    pub q: Option<Mat<Rational>>,
    pub basis: Vec<Mat<Rational>>,
    pub weight: i32,
    pub sign_b: i32,
    /// Replaces sign_B·Tr(xy) as the Gram matrix of B in the algebra basis.
    pub b_gram: Option<Mat<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisInput {
    pub discriminant: u64,
    pub algebra: AlgebraSpec,
    pub cone: Vec<Mat<Rational>>,
    pub filtration: Vec<(i32, Vec<Vec<QuadExt>>)>,
    pub center: Option<i32>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), message: message.into() }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(format!("{ptr}/{key}"), "missing field"))
}

fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(ptr, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn as_int(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(ptr, "expected an integer"))
}

fn rational_at(v: &Value, ptr: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::scalars::rat)
            .ok_or_else(|| schema(ptr, "numbers must be integers; write fractions as strings")),
        Value::String(s) => parse_rational(s).map_err(|e| schema(ptr, e.to_string())),
        _ => Err(schema(ptr, "expected a rational (integer or string)")),
    }
}

fn quad_at(v: &Value, ptr: &str, disc: u64) -> Result<QuadExt> {
    match v {
        Value::Object(o) => {
            let re = o.get("re").map(|x| rational_at(x, &format!("{ptr}/re"))).transpose()?;
            let im = o.get("im").map(|x| rational_at(x, &format!("{ptr}/im"))).transpose()?;
            if o.keys().any(|k| k != "re" && k != "im") {
                return Err(schema(ptr, "only \"re\" and \"im\" are allowed"));
            }
            Ok(QuadExt {
                re: re.unwrap_or_else(|| crate::scalars::rat(0)),
                im: im.unwrap_or_else(|| crate::scalars::rat(0)),
                disc,
            })
        }
        _ => Ok(QuadExt::real(rational_at(v, ptr)?, disc)),
    }
}

fn matrix_at(v: &Value, ptr: &str) -> Result<Mat<Rational>> {
    let rows = as_array(v, ptr)?;
    let n = rows.first().map(|r| r.as_array().map_or(0, |a| a.len())).unwrap_or(0);
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{ptr}/{i}");
        let row = as_array(r, &rp)?;
        if row.len() != n {
            return Err(schema(rp, format!("row has {} entries, expected {n}", row.len())));
        }
        out.push(row.iter().enumerate().map(|(j, x)| rational_at(x, &format!("{rp}/{j}"))).collect::<Result<Vec<_>>>()?);
    }
    if out.len() != n || n == 0 {
        return Err(schema(ptr, "expected a nonempty square matrix"));
    }
    Mat::from_rows(out, n, ())
}

fn matrix_json(m: &Mat<Rational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| json!(format_rational(x))).collect())).collect())
}

fn quad_json(x: &QuadExt) -> Value {
    serde_json::to_value(ScalarRepr::from_quad(x)).expect("scalar serializes")
}

impl AnalysisInput {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let top = as_object(v, "")?;
        let d = as_int(field(top, "discriminant", "")?, "/discriminant")?;
        if d <= 0 || !is_squarefree(d as u64) {
            return Err(schema("/discriminant", "must be a positive square-free integer"));
        }
        let disc = d as u64;
        let alg = as_object(field(top, "algebra", "")?, "/algebra")?;
        let kind = match field(alg, "type", "/algebra")?.as_str() {
            Some("sp") => AlgebraKind::Sp,
            Some("so") => AlgebraKind::So,
            Some("g2") => AlgebraKind::G2,
            Some("su21_qform") => AlgebraKind::Su21QForm,
            Some("explicit") => AlgebraKind::Explicit,
            _ => return Err(schema("/algebra/type", "expected one of sp, so, g2, su21_qform, explicit")),
        };
        let q = alg.get("Q").map(|x| matrix_at(x, "/algebra/Q")).transpose()?;
        if matches!(kind, AlgebraKind::Sp | AlgebraKind::So | AlgebraKind::Explicit) && q.is_none() {
            return Err(schema("/algebra/Q", "missing field"));
        }
        let basis = match alg.get("basis") {
            Some(b) => as_array(b, "/algebra/basis")?
                .iter()
                .enumerate()
                .map(|(i, m)| matrix_at(m, &format!("/algebra/basis/{i}")))
                .collect::<Result<Vec<_>>>()?,
            None if kind == AlgebraKind::Explicit => return Err(schema("/algebra/basis", "missing field")),
            None => Vec::new(),
        };
        let weight = as_int(field(alg, "weight", "/algebra")?, "/algebra/weight")? as i32;
        let sign_b = match alg.get("sign_B") {
            None => -1,
            Some(x) => match as_int(x, "/algebra/sign_B")? {
                s @ (1 | -1) => s as i32,
                _ => return Err(schema("/algebra/sign_B", "must be +1 or -1")),
            },
        };
        let b_gram = alg.get("B").map(|x| matrix_at(x, "/algebra/B")).transpose()?;
        let cone = as_array(field(top, "cone", "")?, "/cone")?
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_at(m, &format!("/cone/{i}")))
            .collect::<Result<Vec<_>>>()?;
        if cone.is_empty() {
            return Err(schema("/cone", "needs at least one generator"));
        }
        let fobj = as_object(field(top, "filtration", "")?, "/filtration")?;
        let mut filtration = Vec::new();
        for (key, vecs) in fobj {
            let ptr = format!("/filtration/{key}");
            let p: i32 = key.parse().map_err(|_| schema(&ptr, "keys must be integers"))?;
            let vecs = as_array(vecs, &ptr)?
                .iter()
                .enumerate()
                .map(|(i, vec)| {
                    let vp = format!("{ptr}/{i}");
                    as_array(vec, &vp)?
                        .iter()
                        .enumerate()
                        .map(|(j, x)| quad_at(x, &format!("{vp}/{j}"), disc))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            filtration.push((p, vecs));
        }
        filtration.sort_by_key(|(p, _)| *p);
        let center = top.get("center").map(|c| as_int(c, "/center").map(|c| c as i32)).transpose()?;
        Ok(AnalysisInput {
            discriminant: disc,
            algebra: AlgebraSpec { kind, q, basis, weight, sign_b, b_gram },
            cone,
            filtration,
            center,
        })
    }

    pub fn to_value(&self) -> Value {
        let a = &self.algebra;
        let mut alg = Map::new();
        alg.insert("type".into(), json!(a.kind.name()));
        if let Some(q) = &a.q {
            alg.insert("Q".into(), matrix_json(q));
        }
        if !a.basis.is_empty() {
            alg.insert("basis".into(), Value::Array(a.basis.iter().map(matrix_json).collect()));
        }
        alg.insert("weight".into(), json!(a.weight));
        alg.insert("sign_B".into(), json!(a.sign_b));
        if let Some(b) = &a.b_gram {
            alg.insert("B".into(), matrix_json(b));
        }
        let mut f = Map::new();
        for (p, vecs) in &self.filtration {
            f.insert(p.to_string(), Value::Array(vecs.iter().map(|v| Value::Array(v.iter().map(quad_json).collect())).collect()));
        }
        let mut top = Map::new();
        top.insert("discriminant".into(), json!(self.discriminant));
        top.insert("algebra".into(), Value::Object(alg));
        top.insert("cone".into(), Value::Array(self.cone.iter().map(matrix_json).collect()));
        top.insert("filtration".into(), Value::Object(f));
        if let Some(c) = self.center {
            top.insert("center".into(), json!(c));
        }
        Value::Object(top)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("input serializes")
    }

    pub fn filtration(&self, ambient: usize) -> Result<Filtration<QuadExt>> {
        for (p, vecs) in &self.filtration {
            for (i, v) in vecs.iter().enumerate() {
                if v.len() != ambient {
                    return Err(schema(
                        format!("/filtration/{p}/{i}"),
                        format!("vector has length {}, expected {ambient}", v.len()),
                    ));
                }
            }
        }
        filtration_from_spans(ambient, self.discriminant, &self.filtration)
            .map_err(|e| schema("/filtration", e.to_string()))
    }
}
