//! JSON encodings of rationals, multiplication tables, quadratic forms and
//! orders. Rationals and integers travel as decimal strings.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use quatring::algebra::MultiplicationTable;
use quatring::orders::OrderZ;
use quatring::quadform::QuadraticForm;
use quatring::quaternion::QuaternionAlgebraQ;
use quatring::Rational;

/// A malformed document: the message names the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

type Res<T> = Result<T, FormatError>;

fn bad<T>(msg: impl Into<String>) -> Res<T> {
    Err(FormatError(msg.into()))
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_value(x: &Rational) -> Value {
    Value::String(rational_to_string(x))
}

pub fn int_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn parse_int(s: &str) -> Res<BigInt> {
    s.trim().parse::<BigInt>().or_else(|_| bad(format!("not an integer: {s:?}")))
}

pub fn parse_rational(s: &str) -> Res<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d.is_zero() {
                return bad(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

fn rational_of(v: &Value, what: &str) -> Res<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => bad(format!("{what}: expected a rational string")),
    }
}

fn int_of(v: &Value, what: &str) -> Res<BigInt> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        _ => bad(format!("{what}: expected an integer")),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| FormatError(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError(format!("{what}: expected an array")))
}

fn usize_of(v: &Value, what: &str) -> Res<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| FormatError(format!("{what}: expected a nonnegative integer")))
}

pub fn vector_value(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(rational_value).collect())
}

pub fn matrix_value(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| vector_value(r)).collect())
}

/// `{"dim": n, "c": [[[c_ijk; n]; n]; n]}`.
pub fn table_to_json(t: &MultiplicationTable) -> Value {
    let c: Vec<Value> = t.constants().iter().map(|plane| matrix_value(plane)).collect();
    json!({"dim": t.dim(), "c": c})
}

/// The raw structure constants; validation is left to the table constructor.
pub fn table_from_json(v: &Value) -> Res<(usize, Vec<Vec<Vec<Rational>>>)> {
    let dim = usize_of(field(v, "dim")?, "dim")?;
    let mut c = Vec::new();
    for (i, plane) in array(field(v, "c")?, "c")?.iter().enumerate() {
        let mut rows = Vec::new();
        for (j, row) in array(plane, "c[i]")?.iter().enumerate() {
            let entries = array(row, "c[i][j]")?;
            let what = format!("c[{}][{}]", i + 1, j + 1);
            rows.push(entries.iter().map(|x| rational_of(x, &what)).collect::<Res<Vec<_>>>()?);
        }
        c.push(rows);
    }
    Ok((dim, c))
}

/// `{"rank": n, "q": [Q(e_i)], "t": {"i,j": T(e_i, e_j)}}` with 1-based
/// `i < j`; absent pairs are zero.
pub fn form_to_json(f: &QuadraticForm) -> Value {
    let n = f.rank();
    let q: Vec<Value> = (0..n).map(|i| rational_value(&f.q(i))).collect();
    let mut t = Map::new();
    for i in 0..n {
        for j in i + 1..n {
            if !f.t(i, j).is_zero() {
                t.insert(format!("{},{}", i + 1, j + 1), rational_value(f.t(i, j)));
            }
        }
    }
    json!({"rank": n, "q": q, "t": t})
}

pub fn form_from_json(v: &Value) -> Res<QuadraticForm> {
    let n = usize_of(field(v, "rank")?, "rank")?;
    let q = array(field(v, "q")?, "q")?.iter().map(|x| rational_of(x, "q")).collect::<Res<Vec<_>>>()?;
    if q.len() != n {
        return bad(format!("q has {} entries, rank is {n}", q.len()));
    }
    let mut t = vec![vec![Rational::zero(); n]; n];
    if let Some(obj) = v.get("t") {
        let obj = obj.as_object().ok_or_else(|| FormatError("t: expected an object".into()))?;
        for (key, val) in obj {
            let parsed = key
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)));
            let Some((i, j)) = parsed.filter(|&(i, j)| i != j && (1..=n).contains(&i) && (1..=n).contains(&j)) else {
                return bad(format!("t: bad index pair {key:?}"));
            };
            let (i, j) = (i.min(j) - 1, i.max(j) - 1);
            t[i][j] = rational_of(val, key)?;
        }
    }
    QuadraticForm::new(q, &t).map_err(|e| FormatError(e.to_string()))
}

pub fn algebra_value(b: &QuaternionAlgebraQ) -> Value {
    json!({"a": rational_value(&b.a), "b": rational_value(&b.b)})
}

/// `{"algebra": {"a", "b"}, "den": d, "basis": [[4 integers]; 4]}`.
pub fn order_to_json(o: &OrderZ) -> Value {
    let basis: Vec<Value> = o.basis().iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect();
    json!({"algebra": algebra_value(o.algebra()), "den": int_value(o.den()), "basis": basis})
}

/// The parts of an order document; the order itself is validated by
/// [`OrderZ::from_parts`].
pub fn order_from_json(v: &Value) -> Res<(Rational, Rational, BigInt, Vec<Vec<BigInt>>)> {
    let alg = field(v, "algebra")?;
    let a = rational_of(field(alg, "a")?, "algebra.a")?;
    let b = rational_of(field(alg, "b")?, "algebra.b")?;
    let den = int_of(field(v, "den")?, "den")?;
    let mut basis = Vec::new();
    for row in array(field(v, "basis")?, "basis")? {
        basis.push(array(row, "basis row")?.iter().map(|x| int_of(x, "basis")).collect::<Res<Vec<_>>>()?);
    }
    Ok((a, b, den, basis))
}
