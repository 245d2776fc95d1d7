mod args;
mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use duclab_core::clifford::{schedule_period, spacetime, SpacetimeDiagram};
use duclab_core::lie::{closure_dim, default_member_cap, ClosureSummary};
use duclab_core::pauli::Letter;
use duclab_core::sim::mbqc::{
    adaptive_run, prepare_resource, stabilizer_check, AngleProgram, Boundary,
};
use duclab_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use args::{Cli, Command, MbqcArgs, ScheduleCheckArgs, SpacetimeArgs, TableArgs};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Table(a) => cmd_table(&a),
        Command::Spacetime(a) => cmd_spacetime(&a),
        Command::Verify(a) => verify::cmd_verify(&a),
        Command::MbqcRun(a) => cmd_mbqc_run(&a),
        Command::ScheduleCheck(a) => cmd_schedule_check(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("duclab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub(crate) fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_exhaustion() => EXIT_CAP,
        Error::ZeroProbability { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Writes to `--out` when given, else stdout.
pub(crate) fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Domain(format!("stdout: {e}")))
        }
    }
}

fn table_row(k: usize, r: &std::result::Result<ClosureSummary, Error>) -> [String; 4] {
    match r {
        Ok(s) => [k.to_string(), s.period.to_string(), s.dimension.to_string(), s.label.to_string()],
        Err(Error::PeriodExhausted { cap }) => {
            [k.to_string(), format!("exhausted(cap={cap})"), "-".into(), "-".into()]
        }
        Err(Error::ClosureExhausted { cap }) => {
            [k.to_string(), "-".into(), format!("exhausted(cap={cap})"), "-".into()]
        }
        Err(e) => [k.to_string(), "-".into(), "-".into(), format!("error: {e}")],
    }
}

fn cmd_table(a: &TableArgs) -> Result<u8> {
    let source = a.source.resolve()?;
    let ks = match (&a.k, &a.k_range, source.fixed_k()) {
        (Some(k), _, _) => vec![*k],
        (None, Some(r), _) => r.0.clone(),
        (None, None, Some(k)) => vec![k],
        (None, None, None) => (2..=7).collect(),
    };
    if ks.contains(&0) {
        return Err(Error::Domain("k must be positive".into()));
    }
    let schedules = ks.iter().map(|&k| source.schedule(k)).collect::<Result<Vec<_>>>()?;

    // rows are computed concurrently and printed in k order
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = ks
            .iter()
            .zip(&schedules)
            .map(|(&k, s)| {
                let cap = a.caps.closure_cap.unwrap_or_else(|| default_member_cap(k));
                scope.spawn(move || closure_dim(k, s, a.caps.period_cap, cap))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });

    let header = ["k", "p_k", "dim", "label"].map(String::from);
    let rows: Vec<[String; 4]> = ks.iter().zip(&results).map(|(&k, r)| table_row(k, r)).collect();
    let mut text = String::new();
    if a.source.explain {
        writeln!(text, "# {}", source.explain()).unwrap();
    }
    if a.pretty {
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().chain([&header]).map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for r in [&header].into_iter().chain(&rows) {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(text, "{}", cells.join("  ").trim_end()).unwrap();
        }
    } else {
        for r in [&header].into_iter().chain(&rows) {
            writeln!(text, "{}", r.join("\t")).unwrap();
        }
    }
    emit(a.out.as_deref(), &text)?;

    if let Some(e) = results.iter().filter_map(|r| r.as_ref().err()).next() {
        return Ok(exit_code(e));
    }
    Ok(0)
}

fn pgm(d: &SpacetimeDiagram) -> String {
    let shade = |l: Letter| match l {
        Letter::I => 255,
        Letter::X => 170,
        Letter::Y => 85,
        Letter::Z => 0,
    };
    let mut s = format!("P2\n# I=255 X=170 Y=85 Z=0\n{} {}\n255\n", d.period(), d.k());
    for q in 0..d.k() {
        let row: Vec<String> = d.columns().iter().map(|c| shade(c.letter(q)).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn cmd_spacetime(a: &SpacetimeArgs) -> Result<u8> {
    let source = a.source.resolve()?;
    let k = a.k.or(source.fixed_k()).ok_or_else(|| Error::Domain("--k is required".into()))?;
    let d = spacetime(k, &source.schedule(k)?, a.period_cap)?;
    let mut text = String::new();
    if a.source.explain {
        writeln!(text, "# {}", source.explain()).unwrap();
    }
    if a.symmetry_row {
        writeln!(text, "{}", d.symmetry_row()).unwrap();
    }
    text.push_str(&d.render());
    emit(a.out.as_deref(), &text)?;
    if let Some(path) = &a.pgm {
        emit(Some(path), &pgm(&d))?;
    }
    Ok(0)
}

fn cmd_mbqc_run(a: &MbqcArgs) -> Result<u8> {
    if a.boundary != Boundary::Open {
        return Err(Error::Domain("the sideways reading needs an open chain".into()));
    }
    let source = a.source.resolve()?;
    let schedule = source.schedule(a.k)?;
    let program = match &a.angles {
        Some(v) => AngleProgram::new(v.clone()),
        None => AngleProgram::random(a.n, &mut ChaCha8Rng::seed_from_u64(a.seed)),
    };
    let run = adaptive_run(a.n, a.k, &schedule, &program, a.seed)?;
    let mut text = run.record.trajectory_log();
    if a.source.explain {
        text.insert_str(0, &format!("# {}\n", source.explain()));
    }
    emit(a.out.as_deref(), &text)?;
    if let Some(path) = &a.distribution {
        emit(Some(path), &run.distribution_tsv())?;
    }
    let line = duclab_core::report::CheckLine::new("byproduct", a.k, run.passed())
        .param("N", a.n)
        .param("seed", a.seed)
        .param("boundary_word", run.record.boundary_word.phaseless())
        .param("fidelity", format!("{:.12}", run.fidelity))
        .param("probability", format!("{:.6e}", run.record.probability()));
    eprintln!("{line}");
    Ok(if run.passed() { 0 } else { EXIT_FAIL })
}

fn cmd_schedule_check(a: &ScheduleCheckArgs) -> Result<u8> {
    let source = a.source.resolve()?;
    let k = a.k.or(source.fixed_k()).ok_or_else(|| Error::Domain("--k is required".into()))?;
    let schedule = source.schedule(k)?;
    let mut text = String::new();
    if a.source.explain {
        writeln!(text, "# {}", source.explain()).unwrap();
    }
    text.push_str(&schedule.to_text());
    let p = schedule_period(k, &schedule, a.period_cap)?;
    writeln!(text, "period_t\t{}", schedule.period_t()).unwrap();
    writeln!(text, "time_independent\t{}", schedule.is_time_independent()).unwrap();
    writeln!(text, "p_k\t{p}").unwrap();
    let mut code = 0;
    if let Some(n) = a.n {
        let state = prepare_resource(n, k, &schedule, a.boundary)?;
        let ok = stabilizer_check(&state, k, &schedule, a.boundary)?;
        writeln!(text, "stabilizers\tN={n}\t{}\t{}", a.boundary, if ok { "PASS" } else { "FAIL" }).unwrap();
        if !ok {
            code = EXIT_FAIL;
        }
    }
    emit(None, &text)?;
    Ok(code)
}
