//! JSON wire formats shared by the CLI and the C ABI.
//!
//! Exact rationals travel as `"num/den"` strings, integer coefficients as JSON integers of
//! arbitrary size. Objects are emitted with sorted keys, so rendering is deterministic.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
pub use serde_json::Value;
use serde_json::{json, Map, Number};

use crate::dynamical::LefschetzZeta;
use crate::endo::GradedEndoObject;
use crate::equivariant::{CyclicAction, RelativeObject};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::qz::{PrimeSet, QZElement, QZFraction, SplitQZElement};
use crate::torified::{half_exponent_string, parse_half_exponent, LClass, LeveledClass, TorifiedClass};
use crate::witt::{GhostVector, RationalWitt, SymbolicGhost, WittVector};
use crate::Rational;

fn bad(what: &str) -> Error {
    Error::invalid(format!("malformed {what}"))
}

/// Parses a JSON document.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("invalid JSON: {e}")))
}

/// Compact rendering with sorted keys.
pub fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

pub fn int_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn uint_value(n: &BigUint) -> Value {
    int_value(&BigInt::from(n.clone()))
}

pub fn rat_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An integer when integral, otherwise a `"num/den"` string.
fn rat_compact(r: &Rational) -> Value {
    if r.is_integer() {
        int_value(r.numer())
    } else {
        Value::String(rat_string(r))
    }
}

/// Accepts a JSON integer or a decimal string.
pub fn parse_int(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(bad("integer")),
    };
    BigInt::from_str(&s).map_err(|_| Error::invalid(format!("not an integer: {s}")))
}

fn parse_uint(v: &Value) -> Result<BigUint> {
    parse_int(v)?.to_biguint().ok_or_else(|| Error::invalid("expected a nonnegative integer"))
}

fn parse_u64(v: &Value) -> Result<u64> {
    parse_int(v)?.to_u64().ok_or_else(|| Error::invalid("expected a nonnegative machine integer"))
}

fn parse_usize(v: &Value) -> Result<usize> {
    parse_int(v)?.to_usize().ok_or_else(|| Error::invalid("expected an index"))
}

/// Accepts a JSON integer, `"a"` or `"a/b"`.
pub fn parse_rat(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => match s.trim().split_once('/') {
            None => Ok(Rational::from_integer(parse_int(v)?)),
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad("fraction"))?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad("fraction"))?;
                if d.is_positive() || d.is_negative() {
                    Ok(Rational::new(n, d))
                } else {
                    Err(Error::invalid("zero denominator"))
                }
            }
        },
        _ => Ok(Rational::from_integer(parse_int(v)?)),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::invalid(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

// ---- Z[Q/Z] ----

pub fn qz_to_json(x: &QZElement) -> Value {
    let terms: Vec<Value> =
        x.terms().map(|(r, c)| json!({"r": r.to_string(), "c": int_value(c)})).collect();
    json!({ "terms": terms })
}

pub fn qz_from_json(v: &Value) -> Result<QZElement> {
    let mut terms = Vec::new();
    for t in array(field(v, "terms")?, "terms")? {
        let r = field(t, "r")?.as_str().ok_or_else(|| bad("fraction"))?;
        terms.push((r.parse::<QZFraction>()?, parse_int(field(t, "c")?)?));
    }
    Ok(QZElement::from_terms(terms))
}

pub fn primes_to_json(p: &PrimeSet) -> Value {
    Value::Array(p.primes().iter().map(|&q| json!(q)).collect())
}

pub fn split_to_json(primes: &PrimeSet, x: &SplitQZElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|((a, b), c)| json!({"smooth": a.to_string(), "coprime": b.to_string(), "c": int_value(c)}))
        .collect();
    json!({ "primes": primes_to_json(primes), "terms": terms })
}

pub fn split_from_json(v: &Value) -> Result<(PrimeSet, SplitQZElement)> {
    let primes = PrimeSet::new(
        array(field(v, "primes")?, "primes")?.iter().map(parse_u64).collect::<Result<_>>()?,
    )?;
    let mut terms = Vec::new();
    for t in array(field(v, "terms")?, "terms")? {
        let a = field(t, "smooth")?.as_str().ok_or_else(|| bad("fraction"))?.parse()?;
        let b = field(t, "coprime")?.as_str().ok_or_else(|| bad("fraction"))?.parse()?;
        terms.push(((a, b), parse_int(field(t, "c")?)?));
    }
    let x = SplitQZElement::from_terms(&primes, terms)?;
    Ok((primes, x))
}

// ---- Witt vectors ----

/// A Witt vector in either wire form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittValue {
    Series(WittVector),
    Rational(RationalWitt),
}

impl WittValue {
    /// Series form; rational inputs are expanded to `trunc`.
    pub fn to_series(&self, trunc: usize) -> WittVector {
        match self {
            WittValue::Series(w) => w.clone(),
            WittValue::Rational(r) => r.expand(trunc),
        }
    }
}

pub fn witt_to_json(w: &WittVector) -> Value {
    let coeffs: Vec<Value> = w.coeffs().iter().map(|c| Value::String(rat_string(c))).collect();
    json!({ "trunc": w.truncation(), "coeffs": coeffs })
}

fn poly_to_json(p: &RatPolynomial) -> Value {
    if p.is_zero() {
        return json!([0]);
    }
    Value::Array(p.coeffs().iter().map(rat_compact).collect())
}

fn poly_from_json(v: &Value) -> Result<RatPolynomial> {
    Ok(RatPolynomial::new(array(v, "polynomial")?.iter().map(parse_rat).collect::<Result<_>>()?))
}

pub fn rational_witt_to_json(r: &RationalWitt) -> Value {
    json!({ "num": poly_to_json(r.num()), "den": poly_to_json(r.den()) })
}

pub fn rational_witt_from_json(v: &Value) -> Result<RationalWitt> {
    RationalWitt::new(poly_from_json(field(v, "num")?)?, poly_from_json(field(v, "den")?)?)
}

pub fn witt_value_to_json(w: &WittValue) -> Value {
    match w {
        WittValue::Series(s) => witt_to_json(s),
        WittValue::Rational(r) => rational_witt_to_json(r),
    }
}

pub fn witt_from_json(v: &Value) -> Result<WittValue> {
    if v.get("num").is_some() || v.get("den").is_some() {
        return rational_witt_from_json(v).map(WittValue::Rational);
    }
    let coeffs: Vec<Rational> =
        array(field(v, "coeffs")?, "coeffs")?.iter().map(parse_rat).collect::<Result<_>>()?;
    if let Some(t) = v.get("trunc") {
        if parse_usize(t)? != coeffs.len() {
            return Err(Error::invalid("trunc does not match the number of coefficients"));
        }
    }
    WittVector::new(coeffs).map(WittValue::Series)
}

pub fn ghost_to_json(g: &GhostVector) -> Value {
    let values: Vec<Value> = g.values().iter().map(|c| Value::String(rat_string(c))).collect();
    json!({ "trunc": g.truncation(), "ghost": values })
}

pub fn ghost_from_json(v: &Value) -> Result<GhostVector> {
    GhostVector::new(array(field(v, "ghost")?, "ghost")?.iter().map(parse_rat).collect::<Result<_>>()?)
}

/// Each ghost value as its ascending coefficient list in `q`.
pub fn symbolic_ghost_to_json(g: &SymbolicGhost) -> Value {
    let values: Vec<Value> = g
        .values()
        .iter()
        .map(|p| {
            if p.is_zero() {
                json!([0])
            } else {
                Value::Array(p.coeffs().iter().map(int_value).collect())
            }
        })
        .collect();
    json!({ "q": "sym", "trunc": g.truncation(), "ghost": values })
}

pub fn symbolic_ghost_from_json(v: &Value) -> Result<SymbolicGhost> {
    let values = array(field(v, "ghost")?, "ghost")?
        .iter()
        .map(|p| Ok(IntPolynomial::new(array(p, "polynomial")?.iter().map(parse_int).collect::<Result<_>>()?)))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::invalid("empty ghost vector"));
    }
    Ok(SymbolicGhost::new(values))
}

// ---- classes ----

/// A class in either basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassValue {
    T(TorifiedClass),
    L(LClass),
}

impl ClassValue {
    pub fn to_t(&self) -> Result<TorifiedClass> {
        match self {
            ClassValue::T(c) => Ok(c.clone()),
            ClassValue::L(l) => l.to_t(),
        }
    }

    pub fn to_l(&self) -> LClass {
        match self {
            ClassValue::T(c) => c.to_l(),
            ClassValue::L(l) => l.clone(),
        }
    }
}

pub fn t_class_to_json(c: &TorifiedClass) -> Value {
    let a: Vec<Value> = if c.is_zero() { vec![json!(0)] } else { c.coeffs().iter().map(uint_value).collect() };
    json!({ "T": a })
}

pub fn l_class_to_json(c: &LClass) -> Value {
    let terms: Map<String, Value> =
        c.doubled_terms().map(|(e2, k)| (half_exponent_string(e2), int_value(k))).collect();
    json!({ "L": terms })
}

pub fn class_to_json(c: &ClassValue) -> Value {
    match c {
        ClassValue::T(t) => t_class_to_json(t),
        ClassValue::L(l) => l_class_to_json(l),
    }
}

pub fn class_from_json(v: &Value) -> Result<ClassValue> {
    if let Some(a) = v.get("T") {
        let a = array(a, "T coefficients")?.iter().map(parse_uint).collect::<Result<_>>()?;
        return Ok(ClassValue::T(TorifiedClass::new(a)));
    }
    if let Some(l) = v.get("L") {
        if let Some(a) = l.as_array() {
            let c = a.iter().enumerate().map(|(i, x)| Ok((2 * i as i64, parse_int(x)?))).collect::<Result<_>>()?;
            return Ok(ClassValue::L(LClass::from_doubled(c)));
        }
        let obj = l.as_object().ok_or_else(|| bad("L coefficients"))?;
        let mut c = BTreeMap::new();
        for (k, val) in obj {
            let e2 = parse_half_exponent(k)?;
            if c.insert(e2, parse_int(val)?).is_some() {
                return Err(Error::invalid(format!("exponent {k} given twice")));
            }
        }
        return Ok(ClassValue::L(LClass::from_doubled(c)));
    }
    Err(Error::invalid("class needs a \"T\" or \"L\" field"))
}

pub fn leveled_to_json(c: &LeveledClass) -> Value {
    json!({ "class": t_class_to_json(&c.cls), "level": c.level() })
}

pub fn leveled_from_json(v: &Value) -> Result<LeveledClass> {
    LeveledClass::new(class_from_json(field(v, "class")?)?.to_t()?, parse_u64(field(v, "level")?)?)
}

// ---- matrices ----

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(|c| Value::String(rat_string(c))).collect()))
        .collect();
    json!({ "rows": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = array(field(v, "rows")?, "rows")?
        .iter()
        .map(|r| array(r, "row")?.iter().map(parse_rat).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn graded_to_json(g: &GradedEndoObject) -> Value {
    json!({ "plus": matrix_to_json(g.plus.matrix()), "minus": matrix_to_json(g.minus.matrix()) })
}

pub fn graded_from_json(v: &Value) -> Result<GradedEndoObject> {
    use crate::endo::EndoObject;
    Ok(GradedEndoObject::new(
        EndoObject::new(matrix_from_json(field(v, "plus")?)?),
        EndoObject::new(matrix_from_json(field(v, "minus")?)?),
    ))
}

pub fn lefschetz_to_json(z: &LefschetzZeta) -> Value {
    let e: Map<String, Value> = z.exponents().iter().map(|(d, s)| (d.to_string(), int_value(s))).collect();
    json!({ "exponents": e })
}

pub fn lefschetz_from_json(v: &Value) -> Result<BTreeMap<u64, BigInt>> {
    let obj = field(v, "exponents")?.as_object().ok_or_else(|| bad("exponents"))?;
    obj.iter()
        .map(|(k, s)| {
            let d = k.parse::<u64>().ok().filter(|d| *d >= 1).ok_or_else(|| bad("exponent index"))?;
            Ok((d, parse_int(s)?))
        })
        .collect()
}

pub fn count_to_json(n: &BigUint) -> Value {
    json!({ "count": n.to_string() })
}

// ---- actions ----

pub fn action_to_json(a: &CyclicAction) -> Value {
    json!({ "level": a.level(), "perm": a.perm() })
}

pub fn action_from_json(v: &Value) -> Result<CyclicAction> {
    let perm = array(field(v, "perm")?, "perm")?.iter().map(parse_usize).collect::<Result<_>>()?;
    CyclicAction::new(parse_u64(field(v, "level")?)?, perm)
}

pub fn relative_to_json(r: &RelativeObject) -> Value {
    json!({ "total": action_to_json(r.total()), "base": action_to_json(r.base()), "map": r.map() })
}

pub fn relative_from_json(v: &Value) -> Result<RelativeObject> {
    let map = array(field(v, "map")?, "map")?.iter().map(parse_usize).collect::<Result<_>>()?;
    RelativeObject::new(action_from_json(field(v, "total")?)?, action_from_json(field(v, "base")?)?, map)
}

/// Cycle type as `{"length": count}`.
pub fn cycle_type_to_json(ct: &BTreeMap<usize, usize>) -> Value {
    Value::Object(ct.iter().map(|(l, c)| (l.to_string(), json!(c))).collect())
}

/// Relative orbit type as a sorted list of `[orbit, base orbit, count]`.
pub fn orbit_type_to_json(ot: &BTreeMap<(usize, usize), usize>) -> Value {
    Value::Array(ot.iter().map(|((a, b), c)| json!([a, b, c])).collect())
}

/// The error payload `{"error":{"kind":…,"detail":…}}`.
pub fn error_to_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "detail": e.to_string() } })
}
