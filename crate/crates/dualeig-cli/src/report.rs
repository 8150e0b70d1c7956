//! Machine-readable report shapes and the matching table printers.
//!
//! JSON numbers use serde's shortest round-trip encoding, so reports reparse
//! to the exact floating-point values; table output prints 16 significant
//! digits.

use serde::Serialize;

use dualeig::ring::{DualNumber, DualScalar};
use dualeig::smm::DualEigenPair;

#[derive(Serialize)]
pub struct DualNumberJson {
    pub standard: f64,
    pub dual: f64,
}

/// Components per part, trimmed to the ring width.
#[derive(Serialize)]
pub struct DualScalarJson {
    pub standard: Vec<f64>,
    pub dual: Vec<f64>,
}

#[derive(Serialize)]
pub struct PairReport {
    pub value: DualNumberJson,
    pub residual: f64,
    pub vector: Vec<DualScalarJson>,
}

#[derive(Serialize)]
pub struct ClusterReport {
    pub lambda_s: f64,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct EigReport {
    pub command: String,
    pub input: String,
    pub sha256: String,
    pub ring: String,
    pub n: usize,
    pub elapsed_ms: f64,
    pub max_residual: f64,
    pub imag_residue: f64,
    pub clusters: Vec<ClusterReport>,
    pub eigenpairs: Vec<PairReport>,
}

#[derive(Serialize)]
pub struct DetReport {
    pub command: String,
    pub input: String,
    pub sha256: String,
    pub ring: String,
    pub n: usize,
    pub elapsed_ms: f64,
    pub value: DualNumberJson,
}

#[derive(Serialize)]
pub struct BalanceJson {
    pub command: String,
    pub input: String,
    pub sha256: String,
    pub ring: String,
    pub n: usize,
    pub m: usize,
    pub elapsed_ms: f64,
    pub threshold: f64,
    pub balanced: bool,
    pub components: usize,
    pub zero_eigenvalue_count: usize,
    pub condition1_ok: bool,
    pub condition2_ok: bool,
    pub err: f64,
    pub spectrum: Vec<DualNumberJson>,
    pub switching: Vec<DualScalarJson>,
}

#[derive(Serialize)]
pub struct ViolationReport {
    /// 1-based endpoints of the failing edge.
    pub i: usize,
    pub j: usize,
    pub mismatch: f64,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub input: String,
    pub sha256: String,
    pub ring: String,
    pub n: usize,
    pub m: usize,
    pub elapsed_ms: f64,
    pub tol: f64,
    pub reasonable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formation: Option<Vec<DualScalarJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationReport>,
}

#[derive(Serialize)]
pub struct CycleReport {
    pub command: String,
    pub n: usize,
    pub theta: f64,
    pub values: Vec<f64>,
}

#[derive(Serialize)]
pub struct GenReport {
    pub command: String,
    pub n: usize,
    pub m: usize,
    pub ring: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

#[derive(Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub eig_ms: f64,
    pub residue: f64,
    pub balance_ms: f64,
    pub err: f64,
    pub balanced: bool,
}

#[derive(Serialize)]
pub struct BenchReport {
    pub command: String,
    pub ring: String,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

pub fn dual_number(v: DualNumber) -> DualNumberJson {
    DualNumberJson {
        standard: v.standard,
        dual: v.dual,
    }
}

pub fn dual_scalar(v: DualScalar) -> DualScalarJson {
    DualScalarJson {
        standard: v.standard().components(),
        dual: v.dual_part().components(),
    }
}

pub fn pair_report(p: &DualEigenPair) -> PairReport {
    PairReport {
        value: dual_number(p.value),
        residual: p.residual,
        vector: (0..p.vector.len())
            .map(|i| dual_scalar(p.vector.get(i)))
            .collect(),
    }
}

pub fn fmt_dual(v: &DualNumberJson) -> String {
    if v.dual >= 0.0 {
        format!("{:.16e} + {:.16e} eps", v.standard, v.dual)
    } else {
        format!("{:.16e} - {:.16e} eps", v.standard, -v.dual)
    }
}

pub fn print_eig_table(rep: &EigReport) {
    println!("# {} (ring {}, {}x{})", rep.command, rep.ring, rep.n, rep.n);
    for (k, p) in rep.eigenpairs.iter().enumerate() {
        println!(
            "lambda[{k}] = {:<45}  residual {:.3e}",
            fmt_dual(&p.value),
            p.residual
        );
    }
    let clusters: Vec<String> = rep
        .clusters
        .iter()
        .map(|c| format!("{:.6}(x{})", c.lambda_s, c.multiplicity))
        .collect();
    println!("clusters      {}", clusters.join(", "));
    println!("max residual  {:.3e}", rep.max_residual);
    println!("elapsed       {:.3} ms", rep.elapsed_ms);
}

pub fn print_balance_table(rep: &BalanceJson) {
    println!("# {} (ring {}, n={}, m={})", rep.command, rep.ring, rep.n, rep.m);
    let spectrum: Vec<String> = rep.spectrum.iter().map(fmt_dual).collect();
    println!("spectrum          {}", spectrum.join(", "));
    println!("components        {}", rep.components);
    println!("zero eigenvalues  {}", rep.zero_eigenvalue_count);
    println!(
        "condition (i)     {}",
        if rep.condition1_ok { "ok" } else { "failed" }
    );
    println!(
        "condition (ii)    {}",
        if rep.condition2_ok { "ok" } else { "failed" }
    );
    println!("err               {:.16e}", rep.err);
    println!("threshold         {:.3e}", rep.threshold);
    println!(
        "verdict           {}",
        if rep.balanced { "BALANCED" } else { "UNBALANCED" }
    );
    println!("elapsed           {:.3} ms", rep.elapsed_ms);
}

pub fn print_verify_table(rep: &VerifyReport) {
    println!("# {} (ring {}, n={}, m={})", rep.command, rep.ring, rep.n, rep.m);
    println!(
        "verdict  {}",
        if rep.reasonable {
            "REASONABLE"
        } else {
            "UNREASONABLE"
        }
    );
    if let Some(formation) = &rep.formation {
        for (i, q) in formation.iter().enumerate() {
            println!(
                "q[{}] = {} | {}",
                i + 1,
                fmt_components(&q.standard),
                fmt_components(&q.dual)
            );
        }
    }
    if let Some(v) = &rep.violation {
        println!(
            "violating edge ({}, {}) with mismatch {:.3e} > tol {:.3e}",
            v.i, v.j, v.mismatch, rep.tol
        );
    }
    println!("elapsed  {:.3} ms", rep.elapsed_ms);
}

fn fmt_components(c: &[f64]) -> String {
    c.iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(" ")
}
