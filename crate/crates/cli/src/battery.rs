//! The theorem battery run by `verify`.
//!
//! Each check either applies to the input and passes or fails, or does not
//! apply and is skipped. Checks whose conclusion is known to break outside
//! the hypotheses (the kernel equalities for matrices that are not 3-PMP)
//! report the observed inequality as a pass with a note.

use hadakern::io::JsonScalar;
use hadakern::kernels::{distinct_diagonal_check, positive_combination_kernel, simultaneous_kernel, verify_t3pmp};
use hadakern::matrix::{signature, subspace_equal};
use hadakern::pmp::{is_k_psrp, pmp_order_with_witness};
use hadakern::strata::{hns_decompose, is_block_orbit_constant, is_maximal, pi_min, pi_stratum, rank_one_certificates, GroupSpec};
use hadakern::{Error, HermitianMatrix, Rational, StarField};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckLine {
    fn new(check: &'static str, status: Status, detail: impl Into<String>) -> Self {
        CheckLine { check, status, detail: detail.into(), note: None }
    }

    fn verdict(check: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    fn skip(check: &'static str, why: impl Into<String>) -> Self {
        Self::new(check, Status::Skip, why)
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn any_failed(lines: &[CheckLine]) -> bool {
    lines.iter().any(|l| l.status == Status::Fail)
}

fn groups() -> Vec<GroupSpec> {
    ["trivial", "roots:4", "circle", "cyclic:2"].iter().map(|s| s.parse().expect("builtin group")).collect()
}

/// Runs every applicable check on `a`.
pub fn battery<F: StarField + JsonScalar>(a: &HermitianMatrix<F>) -> Vec<CheckLine> {
    let n = a.n();
    let mut out = Vec::new();
    let (order, witness) = pmp_order_with_witness(a);
    let sig = signature(a);
    let three_pmp = order >= n.min(3);

    out.push(if order == n {
        CheckLine::verdict("pmp-signature", sig.is_psd(), format!("PSD by minors, signature {sig}"))
    } else {
        let ok = sig.n_plus >= order && sig.n_minus >= 1;
        CheckLine::verdict("pmp-signature", ok, format!("pmp_order {order}, signature {sig}, witness {}", fmt_opt(&witness)))
    });

    out.push(if order >= 2 {
        match is_k_psrp(a, order - 1) {
            Ok(v) => CheckLine::verdict("psrp", v.holds, format!("{}-PSRP, witness {}", order - 1, fmt_opt(&v.witness))),
            Err(e) => CheckLine::verdict("psrp", false, e.to_string()),
        }
    } else {
        CheckLine::skip("psrp", format!("pmp_order {order} < 2"))
    });

    let report = verify_t3pmp(a);
    let dims: Vec<usize> = report.spaces().iter().map(|s| s.dim()).collect();
    out.push(if three_pmp {
        let dim_ok = report.block_ones.dim() == n - report.partition.len();
        CheckLine::verdict(
            "t3pmp",
            report.all_equal() && dim_ok,
            format!("partition {}, kernel dims {dims:?}", report.partition),
        )
    } else if report.all_equal() {
        CheckLine::new("t3pmp", Status::Pass, format!("not 3-PMP, spaces happen to agree, dims {dims:?}"))
            .with_note("hypothesis not met")
    } else {
        CheckLine::new("t3pmp", Status::Pass, format!("not 3-PMP, kernel dims {dims:?}"))
            .with_note("expected inequality: the equality needs 3-PMP")
    });

    for g in groups() {
        out.push(partition_check(a, &g));
    }

    for g in groups() {
        out.push(stratum_check(a, &g, three_pmp));
    }

    out.push(hns_check(a, three_pmp));

    out.push(if order == n {
        let base = simultaneous_kernel(a.as_matrix());
        let coefficient_sets: Vec<Vec<Rational>> = vec![
            vec![Rational::one(); n],
            (1..=n as i64).map(Rational::integer).collect(),
            (1..=n as i64).map(|i| Rational::new(1, i * i)).collect(),
        ];
        let ok = coefficient_sets.iter().all(|c| match positive_combination_kernel(a.as_matrix(), c) {
            Ok(k) => subspace_equal(&k, &base).unwrap_or(false),
            Err(_) => false,
        });
        CheckLine::verdict("tsimul", ok, format!("simultaneous kernel dim {}", base.dim()))
    } else {
        CheckLine::skip("tsimul", "not PSD")
    });

    out.push(match distinct_diagonal_check(a.as_matrix()) {
        Ok(d) if d.hypothesis => CheckLine::verdict("distinct-diagonal", d.kernel.is_zero_space(), "kernel trivial"),
        Ok(_) => CheckLine::skip("distinct-diagonal", "some a_ii equals a_ij with i < j"),
        Err(e) => CheckLine::verdict("distinct-diagonal", false, e.to_string()),
    });

    out
}

fn fmt_opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "none".to_string(), |w| w.to_string())
}

fn partition_check<F: StarField>(a: &HermitianMatrix<F>, g: &GroupSpec) -> CheckLine {
    let res = pi_min(a, g).and_then(|pi| {
        let ok = is_block_orbit_constant(a, &pi, g)? && is_maximal_orbit(a, &pi, g)?;
        Ok((pi, ok))
    });
    match res {
        Ok((pi, ok)) => CheckLine::verdict("pi-min", ok, format!("{g}: {pi}")),
        Err(Error::UnsupportedGroup(m)) => CheckLine::skip("pi-min", m),
        Err(e) => CheckLine::verdict("pi-min", false, e.to_string()),
    }
}

/// No two blocks of `pi` can be merged with the result still orbit-constant.
fn is_maximal_orbit<F: StarField>(a: &HermitianMatrix<F>, pi: &hadakern::strata::Partition, g: &GroupSpec) -> hadakern::Result<bool> {
    for i in 0..pi.len() {
        for j in i + 1..pi.len() {
            if is_block_orbit_constant(a, &pi.merge_blocks(i, j), g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn stratum_check<F: StarField>(a: &HermitianMatrix<F>, g: &GroupSpec, three_pmp: bool) -> CheckLine {
    let name = "stratum";
    match pi_stratum(a, g) {
        Ok(pi) => {
            let res = (|| {
                let report = rank_one_certificates(a, &pi, g)?;
                let rebuilt = report.reconstruct().eq_in(a.as_matrix());
                let matches_min = !g.is_unimodular() || pi_min(a, g)? == pi;
                Ok::<_, Error>(rebuilt && matches_min && is_maximal(a, &pi, g)? && report.maximal)
            })();
            match res {
                Ok(ok) => CheckLine::verdict(name, ok, format!("{g}: {pi}")),
                Err(e) => CheckLine::verdict(name, false, format!("{g}: {e}")),
            }
        }
        Err(Error::NotThreePmp { witness }) if !three_pmp => {
            CheckLine::new(name, Status::Pass, format!("{g}: rejected, witness {witness}")).with_note("not 3-PMP")
        }
        Err(Error::UnsupportedGroup(m)) => CheckLine::skip(name, m),
        Err(e) => CheckLine::verdict(name, false, format!("{g}: {e}")),
    }
}

fn hns_check<F: StarField>(a: &HermitianMatrix<F>, three_pmp: bool) -> CheckLine {
    let ctx = a.ctx();
    let one = F::one(ctx);
    let unimodular = a.entries().iter().all(|z| {
        let m = z.modulus_squared();
        m.is_zero(ctx) || m.eq_in(&one, ctx)
    });
    if !unimodular {
        return CheckLine::skip("hns", "entries not of modulus 0 or 1");
    }
    match hns_decompose(a) {
        Ok(d) => {
            let qd = d.monomial();
            let back = qd.mul(&d.canonical).and_then(|x| x.mul(&qd.conj_transpose()));
            let ok = three_pmp && back.map(|b| b.eq_in(a.as_matrix())).unwrap_or(false) && signature(a).is_psd();
            CheckLine::verdict("hns", ok, format!("{} blocks", d.blocks.len()))
        }
        Err(Error::NotThreePmp { witness }) if !three_pmp => {
            CheckLine::new("hns", Status::Pass, format!("rejected, witness {witness}")).with_note("not 3-PMP")
        }
        Err(e) => CheckLine::verdict("hns", false, e.to_string()),
    }
}
