mod args;
mod output;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use sobmul_core::experiments::{
    counterexample_growth, empirical_boundedness, BoundednessConfig, CounterexampleConfig, ExperimentReport,
    ProvedQuery,
};
use sobmul_core::interpolation::{interpolate_specs, InterpMethod};
use sobmul_core::{check_embedding, check_multiplication, replay_certificate, EmbedQuery, MultQuery, Status};

use args::{Cli, Command, CounterexampleArgs, EmbedArgs, InterpArgs, MultArgs, ReplayArgs, VerifyArgs};
use output::{exit_code, QueryDoc, VerdictDoc, EXIT_ERROR, EXIT_EXPERIMENT_FAILED};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::CheckMult(a) => check_mult(a, cli.json),
        Command::CheckEmbed(a) => check_embed(a, cli.json),
        Command::Interp(a) => interp(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Counterexample(a) => counterexample(a, cli.json),
        Command::Replay(a) => replay(a, cli.json),
    }
}

fn mult_query(a: &MultArgs) -> MultQuery {
    MultQuery::new(
        a.space.spec(&a.s1, &a.p1),
        a.space.spec(&a.s2, &a.p2),
        a.space.spec(&a.s, &a.p),
    )
}

fn emit_verdict(doc: &VerdictDoc, json: bool) -> i32 {
    if json {
        println!("{}", serde_json::to_string_pretty(doc).expect("verdict serializes"));
    } else {
        print!("{}", doc.to_text());
    }
    exit_code(doc.status)
}

fn check_mult(a: &MultArgs, json: bool) -> Result<i32> {
    let query = mult_query(a);
    let verdict = check_multiplication(&query)?;
    Ok(emit_verdict(&VerdictDoc::new(QueryDoc::Mult(query), verdict), json))
}

fn check_embed(a: &EmbedArgs, json: bool) -> Result<i32> {
    let query = EmbedQuery::new(a.space.spec(&a.s, &a.p), a.space.spec(&a.t, &a.q));
    let verdict = check_embedding(&query)?;
    Ok(emit_verdict(&VerdictDoc::new(QueryDoc::Embed(query), verdict), json))
}

fn interp(a: &InterpArgs, json: bool) -> Result<i32> {
    let end0 = a.space.spec(&a.s0, &a.p0);
    let end1 = a.space.spec(&a.s1, &a.p1);
    let (spec, params) = interpolate_specs(&end0, &end1, &a.theta)?;
    if json {
        let doc = serde_json::json!({
            "end0": end0,
            "end1": end1,
            "result": spec,
            "params": params,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("result: {spec}");
        println!("s = {}, p = {}", spec.s, spec.p);
        println!("theta: {}", params.theta);
        match &params.method {
            InterpMethod::Complex => println!("method: complex"),
            InterpMethod::Real { secondary } => println!("method: real, q = {secondary}"),
        }
        println!("admissible: {}", params.admissible);
        for c in &params.caveats {
            println!("caveat: {c}");
        }
    }
    Ok(0)
}

fn write_report(report: &ExperimentReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let json_path = dir.join(format!("{}.json", report.experiment));
    fs::write(&json_path, report.to_json()).with_context(|| format!("writing {}", json_path.display()))?;
    let csv_path = dir.join(format!("{}.csv", report.experiment));
    let file = fs::File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    report.write_csv(file)?;
    Ok(())
}

fn emit_report(report: &ExperimentReport, dir: &Path, json: bool) -> Result<i32> {
    write_report(report, dir)?;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("experiment: {}", report.experiment);
        for row in &report.rows {
            let cols: Vec<String> = row.measured.iter().map(|(k, v)| format!("{k}={v:.6e}")).collect();
            println!("  {} {}", row.parameter, cols.join(" "));
        }
        println!("slope: {:.6} +- {:.2e} (fitted on {})", report.slope, report.stderr, report.fitted_column);
        println!("expected: {}", serde_json::to_string(&report.expected)?);
        println!("pass: {}", report.pass);
        println!("report: {}", dir.display());
    }
    Ok(if report.pass { 0 } else { EXIT_EXPERIMENT_FAILED })
}

fn verify(a: &VerifyArgs, json: bool) -> Result<i32> {
    let query = ProvedQuery::Mult(mult_query(&a.query));
    let cfg = BoundednessConfig {
        samples: a.samples,
        seed: a.seed,
        bandwidths: a.bandwidths.clone(),
        decay: a.decay,
        grid: a.grid,
    };
    let report = empirical_boundedness(&query, &cfg)?;
    emit_report(&report, &a.out, json)
}

fn counterexample(a: &CounterexampleArgs, json: bool) -> Result<i32> {
    if a.p1 <= a.p {
        bail!("no contradiction expected: need p1 > p, got p1 = {}, p = {}", a.p1, a.p);
    }
    let mut cfg = CounterexampleConfig::new(a.s.clone(), a.p1.clone(), a.p.clone(), a.grid, a.n_max)?;
    cfg.s2 = a.s2.clone();
    cfg.p2 = a.p2.clone();
    let report = counterexample_growth(&cfg)?;
    emit_report(&report, &a.out, json)
}

fn replay(a: &ReplayArgs, json: bool) -> Result<i32> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let doc: VerdictDoc = serde_json::from_str(&text).context("parsing verdict JSON")?;
    let replays = match (doc.status, doc.certificate()) {
        (Status::Undetermined, None) => true,
        (Status::Undetermined, Some(_)) => bail!("Undetermined verdict carries a certificate"),
        (_, None) => bail!("{} verdict has no certificate", doc.status),
        (_, Some(cert)) => replay_certificate(&cert) && cert.all_hold(),
    };
    if !replays {
        bail!("certificate does not replay");
    }
    let recomputed = match &doc.query {
        QueryDoc::Mult(q) => check_multiplication(q)?,
        QueryDoc::Embed(q) => check_embedding(q)?,
    };
    if recomputed.status != doc.status {
        bail!("query now evaluates to {}, file says {}", recomputed.status, doc.status);
    }
    if json {
        println!("{}", serde_json::json!({ "replay": "ok", "status": doc.status, "rule": doc.rule }));
    } else {
        println!("replay: ok");
        println!("verdict: {}", doc.status);
    }
    Ok(exit_code(doc.status))
}
