mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, ExportArgs, Format, GraphArg, Method, ReportArgs, SpectrumArgs, VerifyArgs};
use dkq_core::graphs::{cayley_graph, d_graph};
use dkq_core::oracle::{self, DEFAULT_ORACLE_LIMIT};
use dkq_core::spectra::{self, round_sig12, BoundsReport, GraphKind, Spectrum, SpectrumExport};
use dkq_core::verify::{run_suite, Suite, SuiteReport, GRAPHS_MAX_Q};
use dkq_core::FieldSpec;

/// Largest edge list `export` writes without `--allow-large`.
const EXPORT_EDGE_LIMIT: u64 = 50_000_000;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dkq_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use dkq_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::NotPrime(_)
                | E::BadDegree(_)
                | E::EvenCharacteristic(_)
                | E::FieldTooLarge { .. }
                | E::NotOddPrimePower(_)
                | E::InvalidParameter(_)
                | E::UnsupportedRank(_)
                | E::OracleTooLarge { .. },
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn field(q: u64) -> CliResult<FieldSpec> {
    Ok(FieldSpec::of_order(q)?)
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn brute_spectrum(args: &SpectrumArgs, f: &FieldSpec, tol: f64) -> CliResult<Spectrum> {
    let limit = if args.allow_large { usize::MAX } else { DEFAULT_ORACLE_LIMIT };
    Ok(match args.graph {
        GraphArg::D => oracle::bipartite_spectrum_with_limit(&d_graph(args.k, f)?, tol, limit)?,
        GraphArg::Point => oracle::dense_spectrum_with_limit(&cayley_graph(f)?, tol, limit)?,
    })
}

fn repr_spectrum(args: &SpectrumArgs, f: &FieldSpec, tol: f64) -> CliResult<Spectrum> {
    let point = spectra::assemble_point_spectrum(f, tol)?;
    Ok(match args.graph {
        GraphArg::D => spectra::lift_to_bipartite(&point, f.q())?,
        GraphArg::Point => point,
    })
}

fn cmd_spectrum(args: &SpectrumArgs) -> CliResult<bool> {
    let f = field(args.q)?;
    if !(2..=5).contains(&args.k) {
        return Err(CliError::Usage(format!("--k must be in 2..=5, got {}", args.k)));
    }
    if args.graph == GraphArg::Point && args.k != 5 {
        return Err(CliError::Usage("the point graph is defined for k = 5 only".into()));
    }
    if args.method != Method::Brute && args.k != 5 {
        return Err(CliError::Usage("the representation method needs k = 5".into()));
    }
    let tol = args.tol.unwrap_or_else(|| spectra::default_bucket_tol(f.q()));
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }

    let (spectrum, compared) = match args.method {
        Method::Repr => (repr_spectrum(args, &f, tol)?, None),
        Method::Brute => (brute_spectrum(args, &f, tol)?, None),
        Method::Both => {
            let repr = repr_spectrum(args, &f, tol)?;
            let brute = brute_spectrum(args, &f, tol)?;
            let report = oracle::compare_spectra(&repr, &brute, tol);
            (repr, Some(report))
        }
    };

    let kind = match args.graph {
        GraphArg::D => GraphKind::Bipartite { k: args.k },
        GraphArg::Point => GraphKind::Point,
    };
    let method = match args.method {
        Method::Repr => "repr",
        Method::Brute => "brute",
        Method::Both => "both",
    };
    let export = SpectrumExport::new(&spectrum, f.q(), kind, method);
    let text = match args.format {
        Format::Json => export.to_json() + "\n",
        Format::Csv => export.to_csv(),
    };
    write_output(args.out.as_deref(), &text)?;

    let mut ok = args.k != 5 || export.bound_2sqrtq;
    if let Some(report) = compared {
        ok &= report.matched;
        let json = serde_json::to_string_pretty(&report).expect("plain data serializes") + "\n";
        match &args.compare_out {
            Some(p) => std::fs::write(p, json)?,
            None => io::stderr().lock().write_all(json.as_bytes())?,
        }
    }
    Ok(ok)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<bool> {
    let all = args.suite == "all";
    let suites: Vec<Suite> = if all {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(|e: dkq_core::Error| CliError::Usage(e.to_string()))?]
    };
    let fields = args.q.iter().map(|&q| field(q)).collect::<CliResult<Vec<_>>>()?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for f in &fields {
        for &s in &suites {
            if all && s == Suite::Graphs && f.q() > GRAPHS_MAX_Q {
                eprintln!("{s} q={}: skipped (above {GRAPHS_MAX_Q})", f.q());
                continue;
            }
            let r = run_suite(s, f, args.seed)?;
            eprintln!("{} q={}: {}", s, f.q(), if r.passed() { "pass" } else { "FAIL" });
            reports.push(r);
        }
    }
    let ok = reports.iter().all(SuiteReport::passed);
    let json = serde_json::to_string_pretty(&reports).expect("plain data serializes") + "\n";
    write_output(args.out.as_deref(), &json)?;
    Ok(ok)
}

#[derive(Serialize)]
struct ReportRow {
    q: u32,
    lambda2: f64,
    two_sqrt_q: f64,
    two_sqrt_q_minus_1: f64,
    spectral_gap: f64,
    cheeger_lower: f64,
    cheeger_upper: f64,
    bound_2sqrtq: bool,
    ramanujan: bool,
}

impl From<&BoundsReport> for ReportRow {
    fn from(r: &BoundsReport) -> ReportRow {
        ReportRow {
            q: r.q,
            lambda2: round_sig12(r.lambda2),
            two_sqrt_q: round_sig12(r.two_sqrt_q),
            two_sqrt_q_minus_1: round_sig12(r.two_sqrt_q_minus_1),
            spectral_gap: round_sig12(r.spectral_gap),
            cheeger_lower: round_sig12(r.cheeger_lower),
            cheeger_upper: round_sig12(r.cheeger_upper),
            bound_2sqrtq: r.bound_2sqrtq,
            ramanujan: r.ramanujan,
        }
    }
}

fn cmd_report(args: &ReportArgs) -> CliResult<bool> {
    let fields = args.q.iter().map(|&q| field(q)).collect::<CliResult<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(fields.len());
    for f in &fields {
        rows.push(ReportRow::from(&spectra::bounds_report(f)?));
    }
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n",
        Format::Csv => {
            let mut s = String::from(
                "q,lambda2,two_sqrt_q,two_sqrt_q_minus_1,spectral_gap,cheeger_lower,cheeger_upper,bound_2sqrtq,ramanujan\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.q,
                    r.lambda2,
                    r.two_sqrt_q,
                    r.two_sqrt_q_minus_1,
                    r.spectral_gap,
                    r.cheeger_lower,
                    r.cheeger_upper,
                    r.bound_2sqrtq,
                    r.ramanujan
                ));
            }
            s
        }
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(rows.iter().all(|r| r.bound_2sqrtq))
}

fn cmd_export(args: &ExportArgs) -> CliResult<bool> {
    let f = field(args.q)?;
    let edges = (f.q() as u64).saturating_pow(args.k as u32).saturating_mul(f.q() as u64);
    if edges > EXPORT_EDGE_LIMIT && !args.allow_large {
        return Err(CliError::Usage(format!(
            "{edges} edges exceeds the export limit {EXPORT_EDGE_LIMIT}; pass --allow-large"
        )));
    }
    let g = d_graph(args.k, &f)?;
    match &args.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            g.write_edge_csv(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            g.write_edge_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
