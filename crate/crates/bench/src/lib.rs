//! Fixed inputs for the benchmarks, so every run measures the same matrices.

use hadakern::generators::{gen_named_example, gen_random_psd_repeated, gen_signature_example, gen_toeplitz_tridiag};
use hadakern::{GaussianRational, HermitianMatrix};

pub type Q = GaussianRational;

/// Rank-`n/2` PSD matrix with repeated rows.
pub fn repeated_psd(n: usize) -> HermitianMatrix<Q> {
    gen_random_psd_repeated(n, (n / 2).max(1), 17).expect("valid parameters").matrix
}

/// A 3-PMP matrix that is not PSD.
pub fn signature_example(n: usize) -> HermitianMatrix<Q> {
    gen_signature_example(n, 3, 3, 1).expect("valid parameters").matrix
}

pub fn toeplitz(n: usize) -> HermitianMatrix<Q> {
    gen_toeplitz_tridiag(n).expect("valid parameters").matrix
}

pub fn worked_example() -> HermitianMatrix<Q> {
    gen_named_example("example5x5").expect("built in").matrix
}
