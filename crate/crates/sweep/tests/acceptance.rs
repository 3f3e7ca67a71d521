//! Acceptance run: one line per criterion, printed unconditionally.
//!
//! Criteria 5 and 9 do not hold for the model as implemented (see README,
//! "Known failures"). They are still evaluated and reported as FAIL. The run
//! fails if any other criterion fails, if a known failure starts passing
//! (so the list cannot go stale), or if a supporting check breaks.

use std::process::{Command, ExitCode};
use std::time::Instant;

use lipkin_core::model::{build_hamiltonian, ModelParams, Parity};
use lipkin_core::numerics::eig_sym_tridiagonal;
use lipkin_sweep::verify::{
    criterion_1, criterion_10, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, production_spectrum, CriterionReport, Level,
};

const KNOWN_FAILURES: [u8; 2] = [5, 9];

/// Spectrum of a Hamiltonian whose even block has a 1e-6 diagonal slip.
fn perturbed_spectrum(p: &ModelParams<f64>) -> lipkin_core::Result<Vec<f64>> {
    let mut levels = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        if p.omega() == 0 && parity == Parity::Odd {
            continue;
        }
        let block = build_hamiltonian(p, parity)?;
        let mut diag = block.diag().to_vec();
        if parity == Parity::Even {
            diag[0] += 1e-6;
        }
        let block = lipkin_core::numerics::SymTriMatrix::new(diag, block.offdiag().to_vec())?;
        levels.extend(eig_sym_tridiagonal(&block)?.values);
    }
    levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(levels)
}

fn cli_fig1_twice() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    let mut times = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("fig1_{run}.csv"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_lipkin"))
            .args(["figure", "fig1", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        times.push(start.elapsed().as_secs_f64());
        if !status.success() {
            return Err(format!("run {run} exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    if outputs[0] != outputs[1] {
        return Err("outputs differ".into());
    }
    if times.iter().any(|&t| t >= 30.0) {
        return Err(format!("too slow: {times:?}"));
    }
    Ok(format!(
        "identical {} bytes, {:.2}s/{:.2}s",
        outputs[0].len(),
        times[0],
        times[1]
    ))
}

fn main() -> ExitCode {
    let reports: Vec<CriterionReport> = vec![
        criterion_1(Level::Full, &production_spectrum),
        criterion_2(Level::Full),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    let mut ok = true;
    for r in &reports {
        println!("{}", r.line());
        let known = KNOWN_FAILURES.contains(&r.id);
        if r.passed() == known {
            ok = false;
            println!(
                "  unexpected: criterion {} {}",
                r.id,
                if known {
                    "now passes; update the known-failure list"
                } else {
                    "failed"
                }
            );
        }
    }

    let control = criterion_1(Level::Full, &perturbed_spectrum);
    println!("negative-control {}", control.line());
    if control.passed() {
        ok = false;
        println!("  unexpected: perturbed spectrum passed criterion 1");
    }

    match cli_fig1_twice() {
        Ok(msg) => println!("cli figure fig1 twice: PASS ({msg})"),
        Err(msg) => {
            ok = false;
            println!("cli figure fig1 twice: FAIL ({msg})");
        }
    }

    let passed = reports.iter().filter(|r| r.passed()).count();
    println!(
        "acceptance: {passed}/{} criteria pass; known failures {:?}; {}",
        reports.len(),
        KNOWN_FAILURES,
        if ok { "ok" } else { "UNEXPECTED RESULTS" }
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
