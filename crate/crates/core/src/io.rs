//! Matrix interchange: JSON in every domain, CSV for real rationals.
//!
//! JSON layout: `{"n": N, "domain": ..., "entries": [[...], ...]}` for
//! square input, or `"rows"`/`"cols"` instead of `"n"` for rectangular
//! input. Exact scalars are strings (`"3/2"`, `"1-2/3i"`); bare JSON
//! integers are also read. Prime-field matrices carry `"modulus"` and
//! integer entries. Floats are numbers or `[re, im]` pairs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{ComplexFloat, Domain, Field, GaussianRational, Gf, PrimeModulus, Rational, Tolerance};

/// A matrix in whichever domain the input named.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Gaussian(Matrix<GaussianRational>),
    Gf(Matrix<Gf>),
    Float(Matrix<ComplexFloat>),
}

/// Scalars with a JSON entry encoding.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, ctx: &Self::Ctx) -> Result<Self>;
}

fn parse_err(v: &Value, what: &str) -> Error {
    Error::Parse(format!("entry {v} is not a {what}"))
}

fn exact_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value, _: &()) -> Result<Self> {
        exact_text(v).ok_or_else(|| parse_err(v, "rational"))?.parse()
    }
}

impl JsonScalar for GaussianRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value, _: &()) -> Result<Self> {
        exact_text(v).ok_or_else(|| parse_err(v, "Gaussian rational"))?.parse()
    }
}

impl JsonScalar for Gf {
    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn from_json(v: &Value, p: &PrimeModulus) -> Result<Self> {
        let r: Rational = exact_text(v).ok_or_else(|| parse_err(v, "field element"))?.parse()?;
        rational_to_gf(&r, *p)
    }
}

impl JsonScalar for ComplexFloat {
    fn to_json(&self) -> Value {
        if self.im == 0.0 {
            json!(self.re)
        } else {
            json!([self.re, self.im])
        }
    }

    fn from_json(v: &Value, _: &Tolerance) -> Result<Self> {
        let num = |x: &Value| x.as_f64().ok_or_else(|| parse_err(v, "float"));
        match v {
            Value::Number(_) => Ok(ComplexFloat::new(num(v)?, 0.0)),
            Value::Array(pair) if pair.len() == 2 => Ok(ComplexFloat::new(num(&pair[0])?, num(&pair[1])?)),
            Value::String(s) => {
                let g: GaussianRational = s.parse()?;
                Ok(ComplexFloat::from(&g))
            }
            _ => Err(parse_err(v, "float")),
        }
    }
}

fn big_mod(x: &BigInt, p: u64) -> i64 {
    let r = x % BigInt::from(p);
    r.to_i64().expect("residue fits")
}

/// Reduces `a/b` modulo `p`; fails when `p` divides the denominator.
pub fn rational_to_gf(r: &Rational, p: PrimeModulus) -> Result<Gf> {
    let den = big_mod(r.denom(), p.get());
    if den == 0 {
        return Err(Error::ArithmeticDomain(format!("{r} has no residue modulo {}", p.get())));
    }
    Ok(Gf::new(big_mod(r.numer(), p.get()), p) / Gf::new(den, p))
}

/// Encodes a matrix; square matrices use `"n"`, others `"rows"`/`"cols"`.
pub fn matrix_to_json<F: JsonScalar>(m: &Matrix<F>, extra: Option<(&str, Value)>) -> Value {
    let mut obj = Map::new();
    if m.is_square() {
        obj.insert("n".into(), json!(m.rows()));
    } else {
        obj.insert("rows".into(), json!(m.rows()));
        obj.insert("cols".into(), json!(m.cols()));
    }
    obj.insert("domain".into(), json!(F::DOMAIN.name()));
    if let Some((k, v)) = extra {
        obj.insert(k.into(), v);
    }
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(F::to_json).collect())).collect();
    obj.insert("entries".into(), Value::Array(entries));
    Value::Object(obj)
}

fn entries_from_json<F: JsonScalar>(obj: &Map<String, Value>, ctx: F::Ctx) -> Result<Matrix<F>> {
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"entries\" array".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("each row of \"entries\" must be an array".into()))?
                .iter()
                .map(|v| F::from_json(v, &ctx))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(parsed, ctx)?;
    let dim = |key: &str| obj.get(key).map(|v| v.as_u64().ok_or_else(|| Error::Parse(format!("\"{key}\" must be a count"))));
    if let Some(n) = dim("n") {
        let n = n? as usize;
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!("declared n = {n}, entries are {}x{}", m.rows(), m.cols())));
        }
    }
    for (key, got) in [("rows", m.rows()), ("cols", m.cols())] {
        if let Some(want) = dim(key) {
            if want? as usize != got {
                return Err(Error::Shape(format!("declared {key} does not match entries")));
            }
        }
    }
    Ok(m)
}

/// Options for reading a matrix.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReadOptions {
    /// Domain to read into; overrides or converts the payload's own.
    pub domain: Option<Domain>,
    pub modulus: Option<PrimeModulus>,
    pub tolerance: Option<Tolerance>,
}

/// Parses JSON or (for text not starting with `{`) CSV.
pub fn parse_matrix(text: &str, opts: &ReadOptions) -> Result<AnyMatrix> {
    let trimmed = text.trim_start();
    let any = if trimmed.starts_with('{') {
        parse_json(trimmed, opts)?
    } else {
        AnyMatrix::Rational(parse_csv(text)?)
    };
    match opts.domain {
        Some(d) => any.convert(d, opts),
        None => Ok(any),
    }
}

fn parse_json(text: &str, opts: &ReadOptions) -> Result<AnyMatrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("matrix JSON must be an object".into()))?;
    let domain = match obj.get("domain") {
        Some(Value::String(s)) => s.parse()?,
        Some(_) => return Err(Error::Parse("\"domain\" must be a string".into())),
        None => opts.domain.unwrap_or(Domain::GaussianRational),
    };
    Ok(match domain {
        Domain::Rational => AnyMatrix::Rational(entries_from_json(obj, ())?),
        Domain::GaussianRational => AnyMatrix::Gaussian(entries_from_json(obj, ())?),
        Domain::Float => AnyMatrix::Float(entries_from_json(obj, opts.tolerance.unwrap_or_default())?),
        Domain::Gf => {
            let p = match obj.get("modulus") {
                Some(v) => PrimeModulus::new(v.as_u64().ok_or_else(|| Error::Parse("\"modulus\" must be an integer".into()))?)?,
                None => opts.modulus.ok_or_else(|| Error::Parse("prime-field matrix needs a modulus".into()))?,
            };
            AnyMatrix::Gf(entries_from_json(obj, p)?)
        }
    })
}

/// Reads comma-separated rationals, one matrix row per line.
pub fn parse_csv(text: &str) -> Result<Matrix<Rational>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record.iter().map(str::parse).collect::<Result<Vec<Rational>>>()?);
    }
    Matrix::from_rows(rows, ())
}

pub fn matrix_to_csv(m: &Matrix<Rational>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|x| x.to_string())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

impl AnyMatrix {
    pub fn domain(&self) -> Domain {
        match self {
            AnyMatrix::Rational(_) => Domain::Rational,
            AnyMatrix::Gaussian(_) => Domain::GaussianRational,
            AnyMatrix::Gf(_) => Domain::Gf,
            AnyMatrix::Float(_) => Domain::Float,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => (m.rows(), m.cols()),
            AnyMatrix::Gaussian(m) => (m.rows(), m.cols()),
            AnyMatrix::Gf(m) => (m.rows(), m.cols()),
            AnyMatrix::Float(m) => (m.rows(), m.cols()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Rational(m) => matrix_to_json(m, None),
            AnyMatrix::Gaussian(m) => matrix_to_json(m, None),
            AnyMatrix::Gf(m) => matrix_to_json(m, Some(("modulus", json!(m.ctx().get())))),
            AnyMatrix::Float(m) => matrix_to_json(m, None),
        }
    }

    /// Moves the matrix into `target`. Embeddings (rational into Gaussian
    /// or float, exact into float, rational into a prime field) always
    /// work; Gaussian to rational needs real entries.
    pub fn convert(self, target: Domain, opts: &ReadOptions) -> Result<AnyMatrix> {
        let tol = opts.tolerance.unwrap_or_default();
        let unsupported = |from: Domain| Error::ArithmeticDomain(format!("cannot read a {from} matrix as {target}"));
        Ok(match (self, target) {
            (m, t) if m.domain() == t => match m {
                AnyMatrix::Float(f) => AnyMatrix::Float(f.map(tol, |z| *z)),
                other => other,
            },
            (AnyMatrix::Rational(m), Domain::GaussianRational) => AnyMatrix::Gaussian(m.map((), |r| GaussianRational::real(r.clone()))),
            (AnyMatrix::Rational(m), Domain::Float) => AnyMatrix::Float(m.map(tol, |r| ComplexFloat::new(r.to_f64(), 0.0))),
            (AnyMatrix::Gaussian(m), Domain::Float) => AnyMatrix::Float(m.map(tol, |z| ComplexFloat::from(z))),
            (AnyMatrix::Gaussian(m), Domain::Rational) => {
                if m.entries().iter().any(|z| !z.im.is_zero()) {
                    return Err(unsupported(Domain::GaussianRational));
                }
                AnyMatrix::Rational(m.map((), |z| z.re.clone()))
            }
            (AnyMatrix::Rational(m), Domain::Gf) => {
                let p = opts.modulus.ok_or_else(|| Error::Parse("--modulus is required for the gf domain".into()))?;
                let rows = m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| rational_to_gf(x, p)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                AnyMatrix::Gf(Matrix::from_rows(rows, p)?)
            }
            (AnyMatrix::Gaussian(m), Domain::Gf) if m.entries().iter().all(|z| z.im.is_zero()) => {
                AnyMatrix::Rational(m.map((), |z| z.re.clone())).convert(Domain::Gf, opts)?
            }
            (m, _) => return Err(unsupported(m.domain())),
        })
    }
}
