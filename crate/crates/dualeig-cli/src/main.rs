//! Command-line front end: parses matrix/graph/scheme files, dispatches to
//! the solvers, and emits either a human-readable table or a JSON report.
//!
//! Exit codes: 0 for success (and positive verdicts), 1 for a negative
//! verdict (unbalanced graph, unreasonable scheme), 2 for input or numerical
//! errors.

mod report;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use dualeig::gaingraph::{
    self, adjacency_laplacian, balanced_cycle, check_balance, cycle_laplacian_spectrum,
    verify_reasonable, ConfigScheme, Reasonableness,
};
use dualeig::ring::Ring;
use dualeig::{dmat, smm};

use report::*;

#[derive(Parser)]
#[command(
    name = "dualeig",
    about = "Eigenvalues of dual Hermitian matrices and unit gain graph verification",
    version
)]
struct Cli {
    /// Emit a JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Comparison tolerance for verdict-style checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Balance threshold for the Laplacian spectral test.
    #[arg(long, global = true, default_value_t = 1e-8)]
    threshold: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full dual eigendecomposition of a dual Hermitian matrix file.
    Eig { matrix: PathBuf },
    /// Dual determinant of a dual Hermitian matrix file.
    Det { matrix: PathBuf },
    /// Balance verification of a unit gain graph file.
    Balance { graph: PathBuf },
    /// Reasonableness verification of a relative-configuration scheme file.
    Verify { graph: PathBuf },
    /// Closed-form Laplacian spectrum of a gain cycle.
    Cycle {
        #[arg(long)]
        n: usize,
        /// Angle of the total cycle gain; 0 for balanced cycles.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Generate a random balanced gain cycle.
    Gen {
        #[arg(long)]
        n: usize,
        /// Ground ring: r, c, or q.
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve generated balanced cycles per size: wall time, eigenvalue
    /// residue against the closed form, and balance residue.
    Bench {
        /// Comma-separated cycle sizes, e.g. 10,20,50.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Ground ring: r, c, or q.
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: &Cli) -> dualeig::Result<i32> {
    match &cli.command {
        Command::Eig { matrix } => cmd_eig(cli, matrix),
        Command::Det { matrix } => cmd_det(cli, matrix),
        Command::Balance { graph } => cmd_balance(cli, graph),
        Command::Verify { graph } => cmd_verify(cli, graph),
        Command::Cycle { n, theta } => cmd_cycle(cli, *n, *theta),
        Command::Gen { n, ring, seed, out } => cmd_gen(cli, *n, ring, *seed, out.as_deref()),
        Command::Bench { sizes, ring, seed } => cmd_bench(cli, sizes, ring, *seed),
    }
}

fn read_input(path: &Path) -> dualeig::Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path)?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok((bytes, hex))
}

fn cmd_eig(cli: &Cli, path: &Path) -> dualeig::Result<i32> {
    let (bytes, digest) = read_input(path)?;
    let matrix = dmat::read_matrix(bytes.as_slice())?;
    let start = Instant::now();
    let dec = smm::smm_eig(&matrix)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let rep = EigReport {
        command: format!("eig {}", path.display()),
        input: path.display().to_string(),
        sha256: digest,
        ring: matrix.ring().tag().to_string(),
        n: matrix.rows(),
        elapsed_ms,
        max_residual: dec.max_residual(),
        imag_residue: dec.imag_residue,
        clusters: dec
            .clusters
            .iter()
            .map(|c| ClusterReport {
                lambda_s: c.lambda_s,
                multiplicity: c.multiplicity,
            })
            .collect(),
        eigenpairs: dec.pairs.iter().map(pair_report).collect(),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        print_eig_table(&rep);
    }
    Ok(0)
}

fn cmd_det(cli: &Cli, path: &Path) -> dualeig::Result<i32> {
    let (bytes, digest) = read_input(path)?;
    let matrix = dmat::read_matrix(bytes.as_slice())?;
    let start = Instant::now();
    let value = smm::determinant(&matrix)?;
    let rep = DetReport {
        command: format!("det {}", path.display()),
        input: path.display().to_string(),
        sha256: digest,
        ring: matrix.ring().tag().to_string(),
        n: matrix.rows(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        value: dual_number(value),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        println!("det = {}", fmt_dual(&rep.value));
        println!("elapsed {:.3} ms", rep.elapsed_ms);
    }
    Ok(0)
}

fn cmd_balance(cli: &Cli, path: &Path) -> dualeig::Result<i32> {
    let (bytes, digest) = read_input(path)?;
    let graph = gaingraph::read_graph(bytes.as_slice())?;
    let start = Instant::now();
    let report = check_balance(&graph, cli.threshold)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let rep = BalanceJson {
        command: format!("balance {}", path.display()),
        input: path.display().to_string(),
        sha256: digest,
        ring: graph.ring().tag().to_string(),
        n: graph.vertex_count(),
        m: graph.edges().len(),
        elapsed_ms,
        threshold: cli.threshold,
        balanced: report.balanced,
        components: report.components,
        zero_eigenvalue_count: report.zero_eigenvalue_count,
        condition1_ok: report.condition1_ok,
        condition2_ok: report.condition2_ok,
        err: report.err,
        spectrum: report.spectrum.iter().copied().map(dual_number).collect(),
        switching: (0..report.switching.len())
            .map(|i| dual_scalar(report.switching.get(i)))
            .collect(),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        print_balance_table(&rep);
    }
    Ok(if rep.balanced { 0 } else { 1 })
}

fn cmd_verify(cli: &Cli, path: &Path) -> dualeig::Result<i32> {
    let (bytes, digest) = read_input(path)?;
    let graph = gaingraph::read_graph(bytes.as_slice())?;
    let start = Instant::now();
    let outcome = verify_reasonable(&ConfigScheme(graph.clone()), cli.tol)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let (reasonable, formation, violation) = match &outcome {
        Reasonableness::Reasonable(f) => (
            true,
            Some(
                f.configurations()
                    .iter()
                    .map(|q| dual_scalar(*q))
                    .collect::<Vec<_>>(),
            ),
            None,
        ),
        Reasonableness::Unreasonable(v) => (
            false,
            None,
            Some(ViolationReport {
                i: v.i + 1,
                j: v.j + 1,
                mismatch: v.mismatch,
            }),
        ),
    };
    let rep = VerifyReport {
        command: format!("verify {}", path.display()),
        input: path.display().to_string(),
        sha256: digest,
        ring: graph.ring().tag().to_string(),
        n: graph.vertex_count(),
        m: graph.edges().len(),
        elapsed_ms,
        tol: cli.tol,
        reasonable,
        formation,
        violation,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        print_verify_table(&rep);
    }
    Ok(if reasonable { 0 } else { 1 })
}

fn cmd_cycle(cli: &Cli, n: usize, theta: f64) -> dualeig::Result<i32> {
    let values = cycle_laplacian_spectrum(n, theta)?;
    let rep = CycleReport {
        command: format!("cycle --n {n} --theta {theta}"),
        n,
        theta,
        values,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        println!("# closed-form Laplacian spectrum, n={n}, theta={theta}");
        for v in &rep.values {
            println!("{v:.16e}");
        }
    }
    Ok(0)
}

fn cmd_gen(cli: &Cli, n: usize, ring: &str, seed: u64, out: Option<&Path>) -> dualeig::Result<i32> {
    let ring = Ring::from_tag(ring)?;
    let graph = balanced_cycle(n, ring, seed)?;
    let mut text = Vec::new();
    gaingraph::write_graph(&mut text, &graph)?;
    let text = String::from_utf8(text).expect("graph text is utf-8");

    match out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(text.as_bytes())?;
            let rep = GenReport {
                command: format!("gen --n {n} --ring {} --seed {seed}", ring.tag()),
                n,
                m: graph.edges().len(),
                ring: ring.tag().to_string(),
                seed,
                out: Some(path.display().to_string()),
                graph: None,
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            } else {
                println!(
                    "wrote balanced {} cycle with n={n} to {}",
                    ring,
                    path.display()
                );
            }
        }
        None => {
            if cli.json {
                let rep = GenReport {
                    command: format!("gen --n {n} --ring {} --seed {seed}", ring.tag()),
                    n,
                    m: graph.edges().len(),
                    ring: ring.tag().to_string(),
                    seed,
                    out: None,
                    graph: Some(text),
                };
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            } else {
                print!("{text}");
            }
        }
    }
    Ok(0)
}

fn cmd_bench(cli: &Cli, sizes: &[usize], ring: &str, seed: u64) -> dualeig::Result<i32> {
    let ring = Ring::from_tag(ring)?;
    let mut rows = Vec::new();
    for &n in sizes {
        rows.push(bench_one(n, ring, seed, cli.threshold)?);
    }
    let rep = BenchReport {
        command: format!(
            "bench --sizes {} --ring {} --seed {seed}",
            sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(","),
            ring.tag()
        ),
        ring: ring.tag().to_string(),
        seed,
        rows,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        println!("# balanced {} cycles, seed {seed}", ring);
        println!(
            "{:>6} {:>12} {:>14} {:>12} {:>14} {:>10}",
            "n", "eig ms", "residue", "balance ms", "err", "balanced"
        );
        for r in &rep.rows {
            println!(
                "{:>6} {:>12.3} {:>14.3e} {:>12.3} {:>14.3e} {:>10}",
                r.n, r.eig_ms, r.residue, r.balance_ms, r.err, r.balanced
            );
        }
    }
    Ok(0)
}

fn bench_one(n: usize, ring: Ring, seed: u64, threshold: f64) -> dualeig::Result<BenchRow> {
    let graph = balanced_cycle(n, ring, seed)?;
    let (_, laplacian) = adjacency_laplacian(&graph);

    let start = Instant::now();
    let dec = smm::smm_eig(&laplacian)?;
    let eig_ms = start.elapsed().as_secs_f64() * 1e3;
    let residue = cycle_residue(&dec, n)?;

    let start = Instant::now();
    let balance = check_balance(&graph, threshold)?;
    let balance_ms = start.elapsed().as_secs_f64() * 1e3;

    Ok(BenchRow {
        n,
        eig_ms,
        residue,
        balance_ms,
        err: balance.err,
        balanced: balance.balanced,
    })
}

/// Flat 2-norm distance between the computed dual spectrum and the
/// closed-form (real) cycle spectrum.
fn cycle_residue(dec: &smm::DualEigenDecomposition, n: usize) -> dualeig::Result<f64> {
    let closed = cycle_laplacian_spectrum(n, 0.0)?;
    let mut values = dec.values();
    values.sort_by(|a, b| a.total_cmp(b));
    let sum: f64 = values
        .iter()
        .zip(&closed)
        .map(|(lam, c)| (lam.standard - c).powi(2) + lam.dual.powi(2))
        .sum();
    Ok(sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_residue_of_generated_cycles_is_tiny() {
        for ring in [Ring::Complex, Ring::Quaternion] {
            let g = balanced_cycle(12, ring, 1).unwrap();
            let (_, l) = adjacency_laplacian(&g);
            let dec = smm::smm_eig(&l).unwrap();
            assert!(cycle_residue(&dec, 12).unwrap() < 1e-12);
        }
    }
}
