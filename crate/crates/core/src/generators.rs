//! Constructors for the matrix families used as test inputs, each paired
//! with a certificate of the properties the construction is meant to have.
//!
//! All matrices are built over the Gaussian rationals. Perturbation sizes
//! that a proof only asserts to exist are found by halving from 1 and
//! re-running the certificate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::{Combinations, IndexSet};
use crate::kernels::{ker_block_ones, simultaneous_kernel};
use crate::matrix::{inverse, kernel_basis, principal_minor, rank, signature, HermitianMatrix, Matrix, Signature};
use crate::pmp::{is_k_pmp, is_k_psrp, pmp_order};
use crate::scalar::{Field, Gf, GaussianRational as Q, PrimeModulus, Rational};
use crate::strata::{hns_decompose, identical_index_partition, Partition};

/// Halvings tried before an adaptive perturbation gives up.
const MAX_HALVINGS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub checks: Vec<Check>,
}

impl Certificate {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    fn expect<T: PartialEq + std::fmt::Display>(&mut self, name: &str, got: T, want: T) {
        let passed = got == want;
        self.check(name, passed, format!("got {got}, expected {want}"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A generated matrix with its certificate and, for perturbative
/// constructions, the perturbation size that was used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generated {
    pub matrix: HermitianMatrix<Q>,
    pub epsilon: Option<Rational>,
    pub certificate: Certificate,
}

impl Generated {
    fn new(matrix: HermitianMatrix<Q>, certificate: Certificate) -> Self {
        Generated { matrix, epsilon: None, certificate }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGenerator(msg.into())
}

fn herm(m: Matrix<Q>) -> HermitianMatrix<Q> {
    HermitianMatrix::new(m).expect("construction is Hermitian")
}

fn real(r: &Rational) -> Q {
    Q::real(r.clone())
}

/// All principal minors of `a` with sizes in `sizes`, paired with their index sets.
fn minors(a: &HermitianMatrix<Q>, sizes: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = (IndexSet, Rational)> + '_ {
    sizes.flat_map(move |p| Combinations::new(a.n(), p)).map(move |s| {
        let s = IndexSet::new(s);
        let m = principal_minor(a, &s).expect("valid index set");
        (s, m.re)
    })
}

/// `lambda Id_N - ones_N`: `(k-1)`-PMP but not `k`-PMP when `lambda` lies
/// in `[k-1, k)`.
pub fn gen_lambda_shift(n: usize, lambda: &Rational) -> Result<Generated> {
    if n == 0 {
        return Err(invalid("lambda shift needs N >= 1"));
    }
    let m = Matrix::from_fn(n, n, (), |i, j| {
        let one = Q::ints(1, 0);
        if i == j {
            real(lambda) - one
        } else {
            -one
        }
    });
    let a = herm(m);
    let mut cert = Certificate::default();
    let expected_order = (1..=n).filter(|&p| *lambda >= Rational::integer(p as i64)).count();
    cert.expect("pmp_order", pmp_order(&a), expected_order);
    // Size-p principal minors are lambda^(p-1) (lambda - p).
    let closed_form = (1..=n).all(|p| {
        let want = pow(lambda, p - 1) * (lambda.clone() - Rational::integer(p as i64));
        principal_minor(&a, &IndexSet::new((0..p).collect())).expect("valid").re == want
    });
    cert.check("minor closed form", closed_form, "leading minors equal lambda^(p-1)(lambda-p)");
    let (plus, zero, minus) = sign_counts(&[(lambda.clone(), n - 1), (lambda.clone() - Rational::integer(n as i64), 1)]);
    cert.expect("signature", signature(&a), Signature::new(plus, zero, minus));
    Ok(Generated::new(a, cert))
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x.clone())
}

/// Inertia of a list of eigenvalues with multiplicities.
fn sign_counts(eigs: &[(Rational, usize)]) -> (usize, usize, usize) {
    let (mut p, mut z, mut m) = (0, 0, 0);
    for (v, mult) in eigs {
        if v.is_positive() {
            p += mult;
        } else if v.is_negative() {
            m += mult;
        } else {
            z += mult;
        }
    }
    (p, z, m)
}

fn vandermonde_sum(m: usize, u: &[Rational]) -> HermitianMatrix<Q> {
    let l = u.len();
    herm(Matrix::from_fn(l, l, (), |i, j| {
        let prod = u[i].clone() * u[j].clone();
        real(&(0..m).fold(Rational::zero(), |acc, e| acc + pow(&prod, e)))
    }))
}

/// `sum_{i<m} u^{oi} (u^{oi})^T` for `l` distinct nonzero rationals `u`.
pub fn gen_vandermonde_psd(l: usize, m: usize, u: &[Rational]) -> Result<Generated> {
    if m == 0 || m > l {
        return Err(invalid(format!("need 1 <= m <= l, got m = {m}, l = {l}")));
    }
    if u.len() != l {
        return Err(invalid(format!("u has {} entries, expected {l}", u.len())));
    }
    if u.iter().any(Rational::is_zero) {
        return Err(invalid("u has a zero entry"));
    }
    for (i, x) in u.iter().enumerate() {
        if u[..i].contains(x) {
            return Err(invalid(format!("u repeats the entry {x}")));
        }
    }
    let a = vandermonde_sum(m, u);
    let mut cert = Certificate::default();
    cert.expect("rank", rank(a.as_matrix()), m);
    let sig = signature(&a);
    cert.check("psd", sig.is_psd(), format!("signature {sig}"));
    let bad = minors(&a, 1..=m).find(|(_, v)| !v.is_positive());
    cert.check(
        "minors positive up to m",
        bad.is_none(),
        bad.map_or_else(|| "all positive".to_string(), |(s, v)| format!("minor on {s} is {v}")),
    );
    Ok(Generated::new(a, cert))
}

fn first_naturals(l: usize) -> Vec<Rational> {
    (1..=l as i64).map(Rational::integer).collect()
}

/// Halves `eps` from 1 until `build(eps)` passes `accept`.
fn adaptive<T>(mut build: impl FnMut(&Rational) -> T, mut accept: impl FnMut(&T) -> bool) -> Result<(T, Rational)> {
    let mut eps = Rational::one();
    let half = Rational::new(1, 2);
    for _ in 0..MAX_HALVINGS {
        let out = build(&eps);
        if accept(&out) {
            return Ok((out, eps));
        }
        eps = eps * half.clone();
    }
    Err(Error::VerificationFailed(format!("no perturbation size down to {eps} satisfied the construction")))
}

/// The block matrix `[[A, B], [B^T, Id]]` that is k-PMP but not l-PSRP.
///
/// `A` is the rank `k-1` Vandermonde sum on `u = (1, ..., l)`. The columns
/// of `B` are `eps` times the canonical basis vectors of `ker A`, reused
/// cyclically when `N - l` exceeds `dim ker A`.
pub fn gen_psrp_gap(n: usize, l: usize, k: usize) -> Result<Generated> {
    if !(2 <= k && k <= l && l < n) {
        return Err(invalid(format!("need 2 <= k <= l < N, got N = {n}, l = {l}, k = {k}")));
    }
    let a = vandermonde_sum(k - 1, &first_naturals(l));
    let ker = kernel_basis(a.as_matrix());
    let dim = ker.dim();
    let build = |eps: &Rational| {
        let e = real(eps);
        herm(Matrix::from_fn(n, n, (), |i, j| match (i < l, j < l) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => e.clone() * ker.vectors()[(j - l) % dim][i].clone(),
            (false, true) => e.clone() * ker.vectors()[(i - l) % dim][j].clone(),
            (false, false) => Q::ints((i == j) as i64, 0),
        }))
    };
    let (m, eps) = adaptive(build, |m| is_k_pmp(m, k).expect("k <= N").holds)?;

    let mut cert = Certificate::default();
    cert.check("k-PMP", is_k_pmp(&m, k)?.holds, format!("k = {k}"));
    let top: Vec<usize> = (0..l).collect();
    cert.expect("rank A", rank(&m.submatrix(&top, &top)), k - 1);
    let all: Vec<usize> = (0..n).collect();
    cert.expect("rank [A B]", rank(&m.submatrix(&top, &all)), l.min(k - 1 + n - l));
    let psrp = is_k_psrp(&m, l)?;
    cert.check("fails l-PSRP", !psrp.holds, format!("witness {:?}", psrp.witness.map(|w| w.to_string())));
    Ok(Generated { matrix: m, epsilon: Some(eps), certificate: cert })
}

/// Exact orthogonal projection onto the span of the (real) columns of `k`.
fn projection(k: &Matrix<Q>) -> Matrix<Q> {
    let kt = k.transpose();
    let gram_inv = inverse(&kt.mul(k).expect("shapes")).expect("independent columns");
    k.mul(&gram_inv).and_then(|x| x.mul(&kt)).expect("shapes")
}

/// A matrix of signature `(n_plus, N - n_plus - n_minus, n_minus)` that is
/// exactly k-PMP.
///
/// `B` is the rank `k` Vandermonde sum of size `k + n_minus` (zero when
/// `k = 0`), `P` the projection onto `ker B`, and the output is
/// `(B - eps P) + Id_{n_plus - k} + 0`.
pub fn gen_signature_example(n: usize, k: usize, n_plus: usize, n_minus: usize) -> Result<Generated> {
    if !(n_plus >= k && n_minus >= 1 && n_plus + n_minus <= n && k < n) {
        return Err(invalid(format!(
            "need n_plus >= k, n_minus >= 1, n_plus + n_minus <= N, k < N; got N = {n}, k = {k}, signature ({n_plus}, _, {n_minus})"
        )));
    }
    let s = k + n_minus;
    let b = if k == 0 { HermitianMatrix::zeros(s, ()) } else { vandermonde_sum(k, &first_naturals(s)) };
    let ker = kernel_basis(b.as_matrix());
    let kmat = Matrix::from_fn(s, ker.dim(), (), |i, j| ker.vectors()[j][i].clone());
    let p = projection(&kmat);
    let build = |eps: &Rational| herm(b.as_matrix().sub(&p.scale(&real(eps))).expect("same shape"));
    let accept = |be: &HermitianMatrix<Q>| {
        minors(be, 1..=k).all(|(_, v)| v.is_positive()) && minors(be, k + 1..=k + 1).all(|(_, v)| v.is_negative())
    };
    let (b_eps, eps) = adaptive(build, accept)?;

    let parts = [
        b_eps.clone(),
        HermitianMatrix::identity(n_plus - k, ()),
        HermitianMatrix::zeros(n - n_plus - n_minus, ()),
    ];
    let a = HermitianMatrix::direct_sum(&parts, ());
    let mut cert = Certificate::default();
    cert.expect("signature", signature(&a), Signature::new(n_plus, n - n_plus - n_minus, n_minus));
    cert.expect("pmp_order", pmp_order(&a), k);
    let bad = minors(&b_eps, k + 1..=k + 1).find(|(_, v)| !v.is_negative());
    cert.check(
        "(k+1)-minors of B_eps negative",
        bad.is_none(),
        bad.map_or_else(|| "all negative".to_string(), |(s, v)| format!("minor on {s} is {v}")),
    );
    Ok(Generated { matrix: a, epsilon: Some(eps), certificate: cert })
}

/// The 0/1 tridiagonal Toeplitz matrix `T_N`.
pub fn gen_toeplitz_tridiag(n: usize) -> Result<Generated> {
    if n < 3 {
        return Err(invalid(format!("T_N needs N >= 3, got {n}")));
    }
    let a = herm(Matrix::from_fn(n, n, (), |i, j| Q::ints((i.abs_diff(j) <= 1) as i64, 0)));
    let mut cert = Certificate::default();
    cert.expect("pmp_order", pmp_order(&a), 2);
    let pi = identical_index_partition(a.as_matrix());
    cert.expect("identical-index partition", pi.clone(), Partition::singletons(n));
    cert.check("ker J_pi trivial", ker_block_ones::<Q>(&pi, ()).is_zero_space(), "");
    if n % 3 == 2 {
        let v = alternating_witness(n);
        cert.check("alternating vector in simultaneous kernel", simultaneous_kernel(a.as_matrix()).contains(&v), "");
    }
    Ok(Generated::new(a, cert))
}

/// `(1, -1, 0, 1, -1, 0, ..., 1, -1)` of length `n`.
pub fn alternating_witness(n: usize) -> Vec<Q> {
    (0..n).map(|i| Q::ints([1, -1, 0][i % 3], 0)).collect()
}

pub const NAMED_EXAMPLES: [&str; 4] = ["example5x5", "pmp2-6x6", "hns-fail-3x3", "pow2-psd"];

fn parse_rows(rows: &[&[&str]]) -> HermitianMatrix<Q> {
    let rows = rows.iter().map(|r| r.iter().map(|s| s.parse().expect("literal")).collect()).collect();
    HermitianMatrix::from_rows(rows, ()).expect("literal is Hermitian")
}

/// The named example matrices.
pub fn gen_named_example(name: &str) -> Result<Generated> {
    let mut cert = Certificate::default();
    let a = match name {
        "example5x5" => {
            let a = parse_rows(&[
                &["2", "2", "1", "-2i", "2"],
                &["2", "2", "1", "-2i", "2"],
                &["1", "1", "1", "-i", "1"],
                &["2i", "2i", "i", "2", "2i"],
                &["2", "2", "1", "-2i", "2"],
            ]);
            cert.expect("pmp_order", pmp_order(&a), 5);
            cert.expect("rank", rank(a.as_matrix()), 2);
            a
        }
        "pmp2-6x6" => {
            let a = parse_rows(&[
                &["2", "2", "-2", "1", "1", "-1"],
                &["2", "2", "2", "1", "1", "1"],
                &["-2", "2", "2", "-1", "1", "1"],
                &["1", "1", "-1", "2", "2", "-2"],
                &["1", "1", "1", "2", "2", "2"],
                &["-1", "1", "1", "-2", "2", "2"],
            ]);
            cert.expect("pmp_order", pmp_order(&a), 2);
            a
        }
        "hns-fail-3x3" => {
            let a = parse_rows(&[&["1", "1", "-1"], &["1", "1", "1"], &["-1", "1", "1"]]);
            cert.expect("pmp_order", pmp_order(&a), 2);
            a
        }
        "pow2-psd" => {
            let a = parse_rows(&[&["1", "2", "0"], &["2", "8", "0"], &["0", "0", "1"]]);
            cert.expect("pmp_order", pmp_order(&a), 3);
            a
        }
        other => return Err(invalid(format!("unknown example {other:?}; known: {}", NAMED_EXAMPLES.join(", ")))),
    };
    Ok(Generated::new(a, cert))
}

/// Seeded source of the random entries used by the corpus generators.
///
/// Rationals have numerator in `-10..=10` and denominator in `1..=10`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn rational(&mut self) -> Rational {
        Rational::new(self.range(-10, 10), self.range(1, 10))
    }

    pub fn positive_rational(&mut self) -> Rational {
        Rational::new(self.range(1, 10), self.range(1, 10))
    }

    pub fn gaussian(&mut self) -> Q {
        Q::new(self.rational(), self.rational())
    }

    pub fn gf(&mut self, p: PrimeModulus) -> Gf {
        Gf::new(self.rng.random_range(0..p.get()) as i64, p)
    }

    /// A unit of the Gaussian integers, `+-1` or `+-i`.
    pub fn unit_phase(&mut self) -> Q {
        [Q::ints(1, 0), Q::ints(0, 1), Q::ints(-1, 0), Q::ints(0, -1)][self.index(4)].clone()
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut self.rng);
        p
    }

    /// Random block sizes summing to `n`.
    pub fn composition(&mut self, n: usize) -> Vec<usize> {
        let mut sizes = vec![1];
        for _ in 1..n {
            if self.coin(0.5) {
                *sizes.last_mut().expect("nonempty") += 1;
            } else {
                sizes.push(1);
            }
        }
        sizes
    }

    /// Hermitian matrix with entries from a small alphabet closed under
    /// the unit phases, so that orbit coincidences are frequent.
    pub fn alphabet_hermitian(&mut self, n: usize) -> HermitianMatrix<Q> {
        const OFF: [(i64, i64); 9] = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (2, 0), (0, 2), (1, 1), (4, 0)];
        const DIAG: [i64; 4] = [0, 1, 2, 4];
        let mut m = Matrix::zeros(n, n, ());
        for i in 0..n {
            m.set(i, i, Q::ints(DIAG[self.index(DIAG.len())], 0));
            for j in i + 1..n {
                let (re, im) = OFF[self.index(OFF.len())];
                let v = Q::ints(re, im);
                m.set(j, i, v.conj());
                m.set(i, j, v);
            }
        }
        herm(m)
    }
}

fn gram(v: &Matrix<Q>) -> HermitianMatrix<Q> {
    herm(v.mul(&v.conj_transpose()).expect("shapes"))
}

/// `V V^*` for a random `N x r` Gaussian-rational `V`.
pub fn gen_random_psd(n: usize, r: usize, seed: u64) -> Result<Generated> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= N, got r = {r}, N = {n}")));
    }
    let mut s = Sampler::new(seed);
    let v = Matrix::from_fn(n, r, (), |_, _| s.gaussian());
    let a = gram(&v);
    let mut cert = Certificate::default();
    let sig = signature(&a);
    cert.check("psd", sig.is_psd(), format!("signature {sig}"));
    cert.expect("rank equals rank V", sig.rank(), rank(&v));
    Ok(Generated::new(a, cert))
}

/// `V V^*` where the rows of `V` are drawn from `r` random rows, so that
/// repeated indices (and hence nontrivial simultaneous kernels) are common.
/// Some drawn rows are zero.
pub fn gen_random_psd_repeated(n: usize, r: usize, seed: u64) -> Result<Generated> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= N, got r = {r}, N = {n}")));
    }
    let mut s = Sampler::new(seed);
    let distinct = 1 + s.index(n);
    let pool: Vec<Vec<Q>> = (0..distinct)
        .map(|_| if s.coin(0.15) { vec![Q::ints(0, 0); r] } else { (0..r).map(|_| s.gaussian()).collect() })
        .collect();
    let rows: Vec<usize> = (0..n).map(|_| s.index(distinct)).collect();
    let v = Matrix::from_fn(n, r, (), |i, j| pool[rows[i]][j].clone());
    let a = gram(&v);
    let mut cert = Certificate::default();
    let sig = signature(&a);
    cert.check("psd", sig.is_psd(), format!("signature {sig}"));
    cert.expect("rank equals rank V", sig.rank(), rank(&v));
    Ok(Generated::new(a, cert))
}

/// `(QD) J (QD)^*` for a random permutation `Q`, phases in `{+-1, +-i}` and
/// `J` a direct sum of all-ones and zero blocks of random sizes.
pub fn gen_random_unimodular_hns(n: usize, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(invalid("need N >= 1"));
    }
    let mut s = Sampler::new(seed);
    let sizes = s.composition(n);
    let kinds: Vec<bool> = sizes.iter().map(|_| s.coin(0.75)).collect();
    let perm = s.permutation(n);
    let phases: Vec<Q> = (0..n).map(|_| s.unit_phase()).collect();
    let blocks: Vec<Matrix<Q>> = sizes
        .iter()
        .zip(&kinds)
        .map(|(&sz, &ones)| if ones { Matrix::ones(sz, sz, ()) } else { Matrix::zeros(sz, sz, ()) })
        .collect();
    let j = Matrix::direct_sum(&blocks, ());
    let mut qd = Matrix::zeros(n, n, ());
    for (k, &p) in perm.iter().enumerate() {
        qd.set(p, k, phases[k].clone());
    }
    let a = herm(qd.mul(&j).and_then(|x| x.mul(&qd.conj_transpose())).expect("shapes"));

    let mut cert = Certificate::default();
    cert.check("psd", signature(&a).is_psd(), "");
    match hns_decompose(&a) {
        Ok(dec) => {
            let qd = dec.monomial();
            let back = qd.mul(&dec.canonical).and_then(|x| x.mul(&qd.conj_transpose())).expect("shapes");
            cert.check("decomposition round-trips", back == *a.as_matrix(), "");
            let mut want: Vec<usize> = sizes.iter().zip(&kinds).filter(|(_, &o)| o).map(|(&sz, _)| sz).collect();
            let mut got: Vec<usize> = dec.blocks.iter().filter(|b| b.ones).map(|b| b.size).collect();
            want.sort_unstable();
            got.sort_unstable();
            cert.check("ones block sizes", got == want, format!("got {got:?}, expected {want:?}"));
        }
        Err(e) => cert.check("decomposition round-trips", false, e.to_string()),
    }
    Ok(Generated::new(a, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::integer(x)).collect()
    }

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    #[test]
    fn lambda_shift_examples() {
        let g = gen_lambda_shift(3, &Rational::new(3, 2)).unwrap();
        assert!(g.certificate.passed(), "{:?}", g.certificate);
        assert_eq!(pmp_order(&g.matrix), 1);
        assert_eq!(signature(&g.matrix), Signature::new(2, 0, 1));
        for n in 1..6 {
            let g = gen_lambda_shift(n, &Rational::integer(n as i64)).unwrap();
            assert!(g.certificate.passed());
            assert_eq!(pmp_order(&g.matrix), n);
        }
        let g = gen_lambda_shift(1, &Rational::zero()).unwrap();
        assert_eq!(g.matrix.get(0, 0), &q("-1"));
        assert_eq!(pmp_order(&g.matrix), 0);
    }

    #[test]
    fn lambda_shift_order_sweep() {
        for n in 1..6 {
            for twice in -2..=(2 * n as i64 + 1) {
                let lambda = Rational::new(twice, 2);
                let g = gen_lambda_shift(n, &lambda).unwrap();
                assert!(g.certificate.passed(), "N = {n}, lambda = {lambda}: {:?}", g.certificate);
            }
        }
    }

    #[test]
    fn vandermonde_example() {
        let g = gen_vandermonde_psd(3, 2, &ints(&[1, 2, 3])).unwrap();
        let want = parse_rows(&[&["2", "3", "4"], &["3", "5", "7"], &["4", "7", "10"]]);
        assert_eq!(g.matrix, want);
        assert!(g.certificate.passed());
        let g = gen_vandermonde_psd(2, 1, &ints(&[1, 2])).unwrap();
        assert_eq!(g.matrix, HermitianMatrix::ones(2, ()));
        let g = gen_vandermonde_psd(4, 4, &ints(&[1, -1, 2, 3])).unwrap();
        assert!(g.certificate.passed());
        assert_eq!(signature(&g.matrix), Signature::new(4, 0, 0));
    }

    #[test]
    fn vandermonde_rejects_bad_nodes() {
        assert!(matches!(gen_vandermonde_psd(3, 2, &ints(&[1, 1, 2])), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_vandermonde_psd(3, 2, &ints(&[0, 1, 2])), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_vandermonde_psd(2, 3, &ints(&[1, 2])), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_vandermonde_psd(3, 0, &ints(&[1, 2, 3])), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn psrp_gap_examples() {
        let g = gen_psrp_gap(5, 3, 2).unwrap();
        assert!(g.certificate.passed(), "{:?}", g.certificate);
        let top: Vec<usize> = (0..3).collect();
        assert_eq!(rank(&g.matrix.submatrix(&top, &top)), 1);
        assert_eq!(rank(&g.matrix.submatrix(&top, &(0..5).collect::<Vec<_>>())), 3);
        let g = gen_psrp_gap(4, 2, 2).unwrap();
        assert!(g.certificate.passed(), "{:?}", g.certificate);
        assert!(matches!(gen_psrp_gap(4, 4, 2), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_psrp_gap(4, 2, 3), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn psrp_gap_all_small() {
        for n in 3..=6 {
            for l in 2..n {
                for k in 2..=l {
                    let g = gen_psrp_gap(n, l, k).unwrap();
                    assert!(g.certificate.passed(), "({n}, {l}, {k}): {:?}", g.certificate);
                }
            }
        }
    }

    #[test]
    fn signature_examples() {
        let g = gen_signature_example(4, 2, 2, 1).unwrap();
        assert!(g.certificate.passed(), "{:?}", g.certificate);
        assert_eq!(signature(&g.matrix), Signature::new(2, 1, 1));
        assert_eq!(pmp_order(&g.matrix), 2);

        let g = gen_signature_example(3, 0, 0, 3).unwrap();
        assert!(g.certificate.passed());
        assert!((0..3).all(|i| g.matrix.get(i, i).re.is_negative()));

        for n in 2..6 {
            let g = gen_signature_example(n, n - 1, n - 1, 1).unwrap();
            assert!(g.certificate.passed());
            assert_eq!(signature(&g.matrix).n_minus, 1);
        }
        assert!(matches!(gen_signature_example(4, 2, 1, 1), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_signature_example(4, 1, 2, 0), Err(Error::InvalidGenerator(_))));
        assert!(matches!(gen_signature_example(4, 1, 3, 2), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn projection_is_idempotent_and_kills_range() {
        let b = vandermonde_sum(2, &first_naturals(4));
        let ker = kernel_basis(b.as_matrix());
        let kmat = Matrix::from_fn(4, ker.dim(), (), |i, j| ker.vectors()[j][i].clone());
        let p = projection(&kmat);
        assert_eq!(p.mul(&p).unwrap(), p);
        assert!(b.as_matrix().mul(&p).unwrap().is_zero_matrix());
        assert_eq!(rank(&p), 2);
    }

    #[test]
    fn toeplitz() {
        for n in 3..=11 {
            let g = gen_toeplitz_tridiag(n).unwrap();
            assert!(g.certificate.passed(), "{n}: {:?}", g.certificate);
        }
        let g = gen_toeplitz_tridiag(5).unwrap();
        assert!(simultaneous_kernel(g.matrix.as_matrix()).contains(&alternating_witness(5)));
        assert_eq!(alternating_witness(5), vec![q("1"), q("-1"), q("0"), q("1"), q("-1")]);
        let t3 = gen_toeplitz_tridiag(3).unwrap();
        assert_eq!(crate::matrix::determinant(t3.matrix.as_matrix()), q("-1"));
        assert!(gen_toeplitz_tridiag(2).is_err());
    }

    #[test]
    fn named_examples() {
        for name in NAMED_EXAMPLES {
            let g = gen_named_example(name).unwrap();
            assert!(g.certificate.passed(), "{name}");
        }
        let a = gen_named_example("example5x5").unwrap().matrix;
        assert_eq!(a.get(0, 3), &q("-2i"));
        assert!(matches!(gen_named_example("nope"), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn random_families_are_deterministic_and_certified() {
        for seed in 0..20 {
            for n in 1..=5 {
                let r = 1 + (seed as usize % n);
                let a = gen_random_psd(n, r, seed).unwrap();
                assert!(a.certificate.passed());
                assert_eq!(a, gen_random_psd(n, r, seed).unwrap());
                let b = gen_random_psd_repeated(n, r, seed).unwrap();
                assert!(b.certificate.passed());
                let h = gen_random_unimodular_hns(n, seed).unwrap();
                assert!(h.certificate.passed(), "{n} {seed}: {:?}", h.certificate);
                assert_eq!(h, gen_random_unimodular_hns(n, seed).unwrap());
            }
        }
        assert_ne!(gen_random_psd(4, 2, 1).unwrap().matrix, gen_random_psd(4, 2, 2).unwrap().matrix);
    }

    #[test]
    fn random_psd_generic_rank() {
        let g = gen_random_psd(4, 2, 7).unwrap();
        assert_eq!(signature(&g.matrix), Signature::new(2, 2, 0));
    }

    #[test]
    fn composition_sums() {
        let mut s = Sampler::new(3);
        for n in 1..10 {
            assert_eq!(s.composition(n).iter().sum::<usize>(), n);
        }
    }
}
