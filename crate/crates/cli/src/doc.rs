//! JSON input documents: parsing into validated objects and printing back.
//!
//! Integers are decimal strings, rationals are `"a/b"` strings. Elements are
//! written in the coordinates of the generators the document declares; the
//! printed form of a module is its canonical presentation, so printing and
//! re-parsing reproduces the same object.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use divkummer::duality::HomElement;
use divkummer::exactalg::{FgModule, IntMatrix, ModuleMap, Presented, Ring};
use divkummer::modfilter::IdealFilter;
use divkummer::pointed::{frac, Flavor, JTExtension, PointedMap, PointedModule, TorsionTarget};

/// Everything that can go wrong before or while running a command.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input, addressed by a JSON path.
    Schema { path: String, message: String },
    Math(divkummer::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<divkummer::Error> for CliError {
    fn from(e: divkummer::Error) -> Self {
        CliError::Math(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn schema(path: &str, message: impl Into<String>) -> CliError {
    CliError::Schema { path: path.to_string(), message: message.into() }
}

pub fn field<'a>(v: &'a Value, path: &str, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| schema(path, format!("missing key `{key}`")))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

pub fn int(v: &Value, path: &str) -> CliResult<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| schema(path, format!("`{s}` is not a decimal integer"))),
        _ => Err(schema(path, "expected a decimal string")),
    }
}

pub fn count(v: &Value, path: &str) -> CliResult<usize> {
    match v {
        Value::Number(n) => n.as_u64().map(|x| x as usize).ok_or_else(|| schema(path, "expected a non-negative count")),
        Value::String(_) => {
            let k = int(v, path)?;
            usize::try_from(k).map_err(|_| schema(path, "expected a non-negative count"))
        }
        _ => Err(schema(path, "expected a count")),
    }
}

pub fn rational(v: &Value, path: &str) -> CliResult<BigRational> {
    let Value::String(s) = v else { return Err(schema(path, "expected a rational string such as \"1/6\"")) };
    let bad = || schema(path, format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn array<'a>(v: &'a Value, path: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

pub fn vector(v: &Value, path: &str, len: Option<usize>) -> CliResult<Vec<BigInt>> {
    let a = array(v, path)?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(schema(path, format!("expected {n} entries, found {}", a.len())));
        }
    }
    a.iter().enumerate().map(|(i, x)| int(x, &format!("{path}[{i}]"))).collect()
}

pub fn rationals(v: &Value, path: &str, len: usize) -> CliResult<Vec<BigRational>> {
    let a = array(v, path)?;
    if a.len() != len {
        return Err(schema(path, format!("expected {len} entries, found {}", a.len())));
    }
    a.iter().enumerate().map(|(i, x)| rational(x, &format!("{path}[{i}]"))).collect()
}

/// A matrix given as a list of rows; `cols` is required when there are no rows.
pub fn matrix(v: &Value, path: &str, cols: Option<usize>) -> CliResult<IntMatrix> {
    let rows = array(v, path)?;
    let width = match (cols, rows.first()) {
        (Some(c), _) => c,
        (None, Some(r)) => array(r, &format!("{path}[0]"))?.len(),
        (None, None) => 0,
    };
    let data = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("{path}[{i}]"), Some(width)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(width, data)?)
}

pub fn ring(doc: &Value) -> CliResult<Ring> {
    match opt_field(doc, "ring") {
        None => Ok(Ring::Integers),
        Some(Value::String(s)) if s == "Z" => Ok(Ring::Integers),
        Some(v @ Value::Object(_)) => {
            let q = field(v, "$.ring", "quadratic")?;
            let t = int(field(q, "$.ring.quadratic", "trace")?, "$.ring.quadratic.trace")?;
            let n = int(field(q, "$.ring.quadratic", "norm")?, "$.ring.quadratic.norm")?;
            Ok(Ring::quadratic(t, n)?)
        }
        Some(_) => Err(schema("$.ring", "expected \"Z\" or {\"quadratic\": {\"trace\", \"norm\"}}")),
    }
}

pub fn filter(doc: &Value, flag: Option<&str>) -> CliResult<IdealFilter> {
    let s = match (flag, opt_field(doc, "filter")) {
        (Some(f), _) => f.to_string(),
        (None, Some(Value::String(s))) => s.clone(),
        (None, Some(_)) => return Err(schema("$.filter", "expected a string such as \"2^inf\"")),
        (None, None) => return Err(schema("$.filter", "no filter given (use --filter or the `filter` key)")),
    };
    Ok(s.parse()?)
}

/// `{"s": 2}` for `(Q/Z)^s`, `{"s": 2, "prime": "3"}` for `(Z[1/3]/Z)^s`, plus
/// `"action"` over a quadratic order.
pub fn target(v: &Value, path: &str, ring: &Ring) -> CliResult<TorsionTarget> {
    let s = count(field(v, path, "s")?, &format!("{path}.s"))?;
    let flavor = match opt_field(v, "prime") {
        None => Flavor::QmodZ,
        Some(p) => Flavor::Prufer(int(p, &format!("{path}.prime"))?),
    };
    let action = opt_field(v, "action").map(|a| matrix(a, &format!("{path}.action"), Some(s))).transpose()?;
    Ok(TorsionTarget::new(ring.clone(), s, flavor, action)?)
}

pub fn target_of(doc: &Value, ring: &Ring) -> CliResult<TorsionTarget> {
    target(field(doc, "$", "target")?, "$.target", ring)
}

/// A module from generators and relations, kept with its presentation.
pub fn module(v: &Value, path: &str, ring: &Ring) -> CliResult<Presented> {
    let g = count(field(v, path, "generators")?, &format!("{path}.generators"))?;
    let rel = match opt_field(v, "relations") {
        Some(r) => matrix(r, &format!("{path}.relations"), Some(g))?,
        None => IntMatrix::zeros(0, g),
    };
    let action = opt_field(v, "action").map(|a| matrix(a, &format!("{path}.action"), Some(g))).transpose()?;
    Ok(FgModule::from_relations(ring.clone(), g, &rel, action.as_ref())?)
}

/// A raw element of a presented module, in canonical coordinates.
pub fn element(p: &Presented, v: &Value, path: &str) -> CliResult<Vec<BigInt>> {
    let raw = vector(v, path, Some(p.to_canon.rows()))?;
    Ok(p.module.reduce(&p.to_canon.apply(&raw)))
}

/// Canonical coordinates back to the document's generators.
pub fn raw_element(p: &Presented, x: &[BigInt]) -> Vec<BigInt> {
    p.from_canon.apply(x)
}

/// A map given by the images (rows) of the source's raw generators.
pub fn module_map(src: &Presented, dst: &Presented, v: &Value, path: &str) -> CliResult<ModuleMap> {
    let raw = matrix(v, path, Some(dst.to_canon.rows()))?;
    if raw.rows() != src.to_canon.rows() {
        return Err(schema(path, format!("expected {} rows, one per source generator", src.to_canon.rows())));
    }
    let canon = src.from_canon.mul(&raw).mul(&dst.to_canon);
    Ok(ModuleMap::new(src.module.clone(), dst.module.clone(), dst.module.reduce_matrix(&canon))?)
}

/// A pointed module: a module document with a `pointing` list of
/// `{"element": [...], "value": ["a/b", ...]}`.
pub struct PointedDoc {
    pub presented: Presented,
    pub pointed: PointedModule,
}

pub fn pointed(v: &Value, path: &str, ring: &Ring, j: &IdealFilter, t: &TorsionTarget) -> CliResult<PointedDoc> {
    pointed_with(v, opt_field(v, "pointing"), path, &format!("{path}.pointing"), ring, j, t)
}

/// The top-level `module`, pointed by the top-level `pointing` (or its own).
pub fn top_pointed(doc: &Value, ring: &Ring, j: &IdealFilter, t: &TorsionTarget) -> CliResult<PointedDoc> {
    let m = field(doc, "$", "module")?;
    match opt_field(doc, "pointing") {
        Some(p) => pointed_with(m, Some(p), "$.module", "$.pointing", ring, j, t),
        None => pointed(m, "$.module", ring, j, t),
    }
}

fn pointed_with(
    v: &Value,
    pointing: Option<&Value>,
    path: &str,
    ppath: &str,
    ring: &Ring,
    j: &IdealFilter,
    t: &TorsionTarget,
) -> CliResult<PointedDoc> {
    let presented = module(v, path, ring)?;
    let mut pairs = Vec::new();
    if let Some(list) = pointing {
        for (i, item) in array(list, ppath)?.iter().enumerate() {
            let p = format!("{ppath}[{i}]");
            let x = element(&presented, field(item, &p, "element")?, &format!("{p}.element"))?;
            let val = rationals(field(item, &p, "value")?, &format!("{p}.value"), t.s())?;
            pairs.push((x, val));
        }
    }
    let pointed = PointedModule::new(j, t, &presented.module, &pairs)?;
    Ok(PointedDoc { presented, pointed })
}

pub struct PointedMapDoc {
    pub source: PointedDoc,
    pub target: PointedDoc,
    pub map: PointedMap,
}

pub fn pointed_map(v: &Value, path: &str, ring: &Ring, j: &IdealFilter, t: &TorsionTarget) -> CliResult<PointedMapDoc> {
    let source = pointed(field(v, path, "source")?, &format!("{path}.source"), ring, j, t)?;
    let target = pointed(field(v, path, "target")?, &format!("{path}.target"), ring, j, t)?;
    let f = module_map(&source.presented, &target.presented, field(v, path, "matrix")?, &format!("{path}.matrix"))?;
    let map = PointedMap::new(&source.pointed, &target.pointed, &f)?;
    Ok(PointedMapDoc { source, target, map })
}

pub struct ExtensionDoc {
    pub base: PointedDoc,
    pub total: PointedDoc,
    pub ext: JTExtension,
}

/// `{"base": pointed, "total": pointed, "inc": matrix}`.
pub fn extension(v: &Value, path: &str, ring: &Ring, j: &IdealFilter, t: &TorsionTarget) -> CliResult<ExtensionDoc> {
    let base = pointed(field(v, path, "base")?, &format!("{path}.base"), ring, j, t)?;
    let total = pointed(field(v, path, "total")?, &format!("{path}.total"), ring, j, t)?;
    let inc = module_map(&base.presented, &total.presented, field(v, path, "inc")?, &format!("{path}.inc"))?;
    let ext = JTExtension::new(&base.pointed, &total.pointed, &inc)?;
    Ok(ExtensionDoc { base, total, ext })
}

/// Kummer values given per raw generator of `x`.
pub fn hom_element(x: &Presented, t: &TorsionTarget, v: &Value, path: &str) -> CliResult<HomElement> {
    let rows = array(v, path)?;
    if rows.len() != x.to_canon.rows() {
        return Err(schema(path, format!("expected one value per generator ({})", x.to_canon.rows())));
    }
    let raw: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| rationals(r, &format!("{path}[{i}]"), t.s()))
        .collect::<CliResult<_>>()?;
    let values = (0..x.module.ngens())
        .map(|k| {
            (0..t.s())
                .map(|c| {
                    let mut acc = BigRational::from_integer(BigInt::from(0));
                    for (i, r) in raw.iter().enumerate() {
                        acc += &r[c] * BigRational::from_integer(x.from_canon[(k, i)].clone());
                    }
                    frac(&acc)
                })
                .collect()
        })
        .collect();
    Ok(HomElement::new(&x.module, t, values)?)
}

pub fn s_int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn s_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(s_int).collect())
}

pub fn s_rat(x: &BigRational) -> Value {
    Value::String(if x.is_integer() { x.numer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) })
}

pub fn s_rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(s_rat).collect())
}

pub fn s_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| s_vec(m.row(r))).collect())
}

pub fn print_ring(r: &Ring) -> Value {
    match r {
        Ring::Integers => json!("Z"),
        Ring::QuadraticOrder { trace, norm } => json!({"quadratic": {"trace": s_int(trace), "norm": s_int(norm)}}),
    }
}

/// The canonical presentation of a module as a document.
pub fn print_module(m: &FgModule) -> Value {
    let g = m.ngens();
    let rows: Vec<Value> = m
        .torsion_factors()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut r = vec![BigInt::from(0); g];
            r[i] = d.clone();
            s_vec(&r)
        })
        .collect();
    let mut o = Map::new();
    o.insert("generators".into(), json!(g));
    o.insert("relations".into(), Value::Array(rows));
    if let Some(a) = m.action() {
        o.insert("action".into(), s_matrix(a));
    }
    Value::Object(o)
}

pub fn print_target(t: &TorsionTarget) -> Value {
    let mut o = Map::new();
    o.insert("s".into(), json!(t.s()));
    if let Flavor::Prufer(p) = t.flavor() {
        o.insert("prime".into(), s_int(p));
    }
    if let Some(a) = t.action() {
        o.insert("action".into(), s_matrix(a));
    }
    Value::Object(o)
}

pub fn print_pointed(m: &PointedModule) -> Value {
    let mut v = print_module(m.module());
    let pts: Vec<Value> =
        m.pointing().iter().map(|(x, t)| json!({"element": s_vec(x), "value": s_rats(t)})).collect();
    v["pointing"] = Value::Array(pts);
    v
}

pub fn print_extension(e: &JTExtension) -> Value {
    json!({
        "base": print_pointed(e.base()),
        "total": print_pointed(e.total()),
        "inc": s_matrix(e.inc().matrix()),
    })
}

/// Invariant-factor summary used in reports.
pub fn summary(m: &FgModule) -> Value {
    json!({
        "display": format!("{m:?}"),
        "invariant_factors": s_vec(m.torsion_factors()),
        "rank": m.rank(),
        "order": m.order().map(|o| s_int(&o)),
    })
}
