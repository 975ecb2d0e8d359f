//! Seeded corpus for `verify --corpus` and the generator front end.

use std::collections::BTreeMap;

use hadakern::generators::{
    gen_lambda_shift, gen_named_example, gen_psrp_gap, gen_random_psd, gen_random_psd_repeated,
    gen_random_unimodular_hns, gen_signature_example, gen_toeplitz_tridiag, gen_vandermonde_psd, Generated, Sampler,
};
use hadakern::{Error, Rational, Result};

pub const FAMILIES: [&str; 9] = [
    "lambda-shift",
    "vandermonde",
    "psrp-gap",
    "signature",
    "toeplitz",
    "example",
    "random-psd",
    "random-psd-repeated",
    "random-hns",
];

/// `key=value` pairs separated by commas; list values use `:`.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("parameter {part:?} is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn raw(&self, key: &str) -> Result<&str> {
        self.0.get(key).map(String::as_str).ok_or_else(|| Error::InvalidGenerator(format!("missing parameter {key}")))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.raw(key)?.parse().map_err(|_| Error::Parse(format!("parameter {key} must be a non-negative integer")))
    }

    fn rational(&self, key: &str) -> Result<Rational> {
        self.raw(key)?.parse()
    }
}

/// Builds one generator output from a family name and parameters.
pub fn generate(family: &str, params: &BTreeMap<String, String>, seed: u64) -> Result<Generated> {
    let p = Params(params);
    match family {
        "lambda-shift" => gen_lambda_shift(p.usize("n")?, &p.rational("lambda")?),
        "vandermonde" => {
            let u = p.raw("u")?.split(':').map(str::parse).collect::<Result<Vec<Rational>>>()?;
            let l = u.len();
            gen_vandermonde_psd(l, p.usize("m")?, &u)
        }
        "psrp-gap" => gen_psrp_gap(p.usize("n")?, p.usize("l")?, p.usize("k")?),
        "signature" => gen_signature_example(p.usize("n")?, p.usize("k")?, p.usize("n_plus")?, p.usize("n_minus")?),
        "toeplitz" => gen_toeplitz_tridiag(p.usize("n")?),
        "example" => gen_named_example(p.raw("name")?),
        "random-psd" => gen_random_psd(p.usize("n")?, p.usize("r")?, seed),
        "random-psd-repeated" => gen_random_psd_repeated(p.usize("n")?, p.usize("r")?, seed),
        "random-hns" => gen_random_unimodular_hns(p.usize("n")?, seed),
        other => Err(Error::InvalidGenerator(format!("unknown family {other:?}; known: {}", FAMILIES.join(", ")))),
    }
}

pub struct Item {
    pub family: &'static str,
    pub params: BTreeMap<String, String>,
    pub generated: Result<Generated>,
}

fn item(family: &'static str, pairs: &[(&str, String)], seed: u64) -> Item {
    let params: BTreeMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let generated = generate(family, &params, seed);
    Item { family, params, generated }
}

/// The matrices checked for one corpus seed, at most 6x6.
pub fn corpus_for_seed(seed: u64) -> Vec<Item> {
    let mut s = Sampler::new(seed);
    let mut items = Vec::new();

    let n = 2 + s.index(5);
    let r = 1 + s.index(n);
    items.push(item("random-psd", &[("n", n.to_string()), ("r", r.to_string())], seed));
    let r = 1 + s.index(n);
    items.push(item("random-psd-repeated", &[("n", n.to_string()), ("r", r.to_string())], seed));
    items.push(item("random-hns", &[("n", (1 + s.index(6)).to_string())], seed));

    let n = 2 + s.index(5);
    let k = s.index(n);
    let n_plus = k + s.index(n - k);
    let n_minus = 1 + s.index(n - n_plus);
    let sig = [("n", n), ("k", k), ("n_plus", n_plus), ("n_minus", n_minus)].map(|(a, b)| (a, b.to_string()));
    items.push(item("signature", &sig, seed));

    let n = 3 + s.index(4);
    let l = 2 + s.index(n - 2);
    let k = 2 + s.index(l - 1);
    items.push(item("psrp-gap", &[("n", n.to_string()), ("l", l.to_string()), ("k", k.to_string())], seed));

    let n = 1 + s.index(6);
    let lambda = Rational::new(s.range(-2, 2 * n as i64 + 2), 2);
    items.push(item("lambda-shift", &[("n", n.to_string()), ("lambda", lambda.to_string())], seed));

    items.push(item("toeplitz", &[("n", (3 + seed % 6).to_string())], seed));
    items
}
