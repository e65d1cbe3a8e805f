use std::fs;
use std::path::{Path, PathBuf};

use rudin_shapiro::autocorr::{
    aperiodic_table_fast, aperiodic_table_naive, periodic_table, periodic_table_naive, AutocorrTable,
};
use rudin_shapiro::format::round_sig;
use rudin_shapiro::jsr::{bnb_bracket, invariant_polytope, PolytopeError};
use rudin_shapiro::seq::{generalized_sequence, parse_pattern, rs_sequence, SeqFormat};
use rudin_shapiro::stats::{conjecture_table, merit_csv, merit_series, plot_csv, table_csv, Criterion};
use rudin_shapiro::{Error, Family};
use serde_json::json;

use crate::suites::{self, SuiteReport, NAIVE_CAP};
use crate::{
    AutocorrArgs, Command, DataFormat, GenArgs, GenFormat, JsrArgs, JsrMethod, Kind, OutArgs, Suite,
    TableMethod, VerifyArgs,
};

/// Largest order accepted by `autocorr --check`.
pub const CHECK_CAP: u32 = 12;
/// Largest order for `verify decomposition`.
pub const DECOMPOSITION_CAP: u32 = 20;
/// Largest order for `verify lemma6`.
pub const LEMMA6_CAP: u32 = 120;
/// Longest word for `verify remark1`.
pub const REMARK1_CAP: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// A finished command: the artifact, its default file name, and whether
/// every check passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub file_name: String,
    pub status: Status,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Library(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Executes a command and writes its artifact to `--out` or stdout.
pub fn run(command: &Command) -> Result<Status, CliError> {
    let (outcome, out) = execute(command)?;
    emit(&outcome, out)?;
    Ok(outcome.status)
}

/// Executes a command without writing anything.
pub fn execute(command: &Command) -> Result<(Outcome, &OutArgs), CliError> {
    Ok(match command {
        Command::Gen(a) => (gen(a)?, &a.out),
        Command::Autocorr(a) => (autocorr(a)?, &a.out),
        Command::Verify(a) => (verify(a)?, &a.out),
        Command::Jsr(a) => (jsr(a)?, &a.out),
        Command::Table(a) => {
            let criterion = if a.signed { Criterion::Signed } else { Criterion::Absolute };
            let body = table_csv(&conjecture_table(a.m_max, criterion)?);
            (pass(body, "table.csv"), &a.out)
        }
        Command::Merit(a) => (pass(merit_csv(&merit_series(a.m_max)?), "merit.csv"), &a.out),
        Command::Plotdata(a) => {
            let body = plot_csv(&aperiodic_table_fast(a.m)?);
            (pass(body, format!("plot_{}.csv", a.m)), &a.out)
        }
    })
}

fn pass(body: String, file_name: impl Into<String>) -> Outcome {
    Outcome { body, file_name: file_name.into(), status: Status::Pass }
}

fn emit(outcome: &Outcome, out: &OutArgs) -> Result<(), CliError> {
    match &out.out {
        None => {
            print!("{}", outcome.body);
            Ok(())
        }
        Some(p) => {
            let path = target_path(p, &outcome.file_name);
            fs::write(&path, &outcome.body).map_err(|source| CliError::Io { path, source })
        }
    }
}

fn target_path(out: &Path, file_name: &str) -> PathBuf {
    if out.is_dir() {
        out.join(file_name)
    } else {
        out.to_path_buf()
    }
}

fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    let seq = match &a.f {
        Some(f) => generalized_sequence(a.m, &parse_pattern(f)?)?,
        None => rs_sequence(a.m)?,
    };
    let format = match a.format {
        GenFormat::Symbols => SeqFormat::Symbols,
        GenFormat::Ints => SeqFormat::Ints,
        GenFormat::Compact => SeqFormat::Compact,
    };
    let stem = match &a.f {
        Some(f) => format!("seq_{}_f{f}.txt", a.m),
        None => format!("seq_{}.txt", a.m),
    };
    Ok(pass(seq.render(format) + "\n", stem))
}

fn autocorr(a: &AutocorrArgs) -> Result<Outcome, CliError> {
    if a.check && a.m > CHECK_CAP {
        return Err(usage(format!("--check needs m <= {CHECK_CAP}, got {}", a.m)));
    }
    let naive = || -> Result<AutocorrTable, CliError> {
        if a.m > NAIVE_CAP {
            return Err(usage(format!("--method naive needs m <= {NAIVE_CAP}, got {}", a.m)));
        }
        let seq = rs_sequence(a.m)?;
        Ok(match a.kind {
            Kind::Aperiodic => aperiodic_table_naive(&seq),
            Kind::Periodic => periodic_table_naive(&seq),
        })
    };
    let table = match a.method {
        TableMethod::Naive => naive()?,
        TableMethod::Fast => match a.kind {
            Kind::Aperiodic => aperiodic_table_fast(a.m)?,
            Kind::Periodic => periodic_table(a.m)?,
        },
    };
    let status = if a.check && naive()? != table {
        eprintln!("check failed: table differs from the direct sums");
        Status::Fail
    } else {
        Status::Pass
    };
    let (body, file_name) = match a.format {
        DataFormat::Csv => (table.to_csv(), table.file_name()),
        DataFormat::Json => {
            let v = json!({"m": a.m, "kind": table.kind(), "values": table.values()});
            (v.to_string() + "\n", table.file_name().replace(".csv", ".json"))
        }
    };
    Ok(Outcome { body, file_name, status })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let bounded = |default: u32, min: u32, cap: u32| -> Result<u32, CliError> {
        let m = a.m_max.unwrap_or(default);
        if m < min || m > cap {
            return Err(usage(format!("--m-max must lie in {min}..={cap} for this suite, got {m}")));
        }
        Ok(m)
    };
    if !a.tol.is_finite() || a.tol < 0.0 {
        return Err(usage("--tol must be a non-negative number"));
    }
    let report: SuiteReport = match a.suite {
        Suite::Recurrences => suites::recurrences(bounded(12, 0, NAIVE_CAP)?)?,
        Suite::Theorem12 => suites::theorem12(bounded(12, 3, NAIVE_CAP)?)?,
        Suite::Decomposition => suites::decomposition(bounded(12, 3, DECOMPOSITION_CAP)?)?,
        Suite::Lemma4 => suites::lemma4(a.tol)?,
        Suite::Lemma6 => suites::lemma6(bounded(40, 1, LEMMA6_CAP)?),
        Suite::Remark1 => suites::remark1(bounded(8, 1, REMARK1_CAP)?, a.tol)?,
    };
    let status = if report.pass { Status::Pass } else { Status::Fail };
    Ok(Outcome {
        body: report.to_json().to_string() + "\n",
        file_name: format!("verify_{}.json", report.suite),
        status,
    })
}

fn jsr(a: &JsrArgs) -> Result<Outcome, CliError> {
    let family = Family::rudin_shapiro_pair();
    match a.method {
        JsrMethod::Bnb => {
            let b = bnb_bracket(&family, a.depth, a.norm_scale)?;
            let mut v = b.to_json();
            v["method"] = json!("bnb");
            v["ratio"] = json!(round_sig(b.ratio()));
            Ok(pass(v.to_string() + "\n", "jsr_bnb.json"))
        }
        JsrMethod::Polytope => {
            if !a.tol.is_finite() || a.tol <= 0.0 {
                return Err(usage("--tol must be positive"));
            }
            let candidate = family.word(&[0]);
            let (v, status) = match invariant_polytope(&family, &candidate, a.max_rounds, a.tol) {
                Ok(run) => {
                    let mut v = run.to_json();
                    v["method"] = json!("polytope");
                    v["success"] = json!(true);
                    v["vertex_count"] = json!(run.polytope.vertex_count());
                    v["growth"] = json!(round_sig(run.growth));
                    (v, Status::Pass)
                }
                Err(PolytopeError::NotInvariant(f)) => {
                    let v = json!({
                        "method": "polytope",
                        "success": false,
                        "rounds": f.rounds,
                        "vertex_count": f.vertex_count,
                        "escaping": f.escaping.map(round_sig),
                        "violation": round_sig(f.violation),
                    });
                    (v, Status::Fail)
                }
                Err(PolytopeError::Numeric(e)) => return Err(e.into()),
            };
            Ok(Outcome { body: v.to_string() + "\n", file_name: "jsr_polytope.json".into(), status })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn exec(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = crate::Cli::try_parse_from(std::iter::once("rscorr").chain(args.iter().copied())).unwrap();
        execute(&cli.command).map(|(o, _)| o)
    }

    #[test]
    fn gen_third_order() {
        assert_eq!(exec(&["gen", "--m", "3"]).unwrap().body, "+ + + - + + - +\n");
        assert_eq!(exec(&["gen", "--m", "2", "--format", "ints"]).unwrap().body, "1 1 1 -1\n");
    }

    #[test]
    fn usage_errors_map_to_two() {
        let e = exec(&["autocorr", "--m", "13", "--check"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(exec(&["gen", "--m", "31"]).unwrap_err().exit_code(), 2);
        assert_eq!(exec(&["gen", "--m", "3", "--f", "01"]).unwrap_err().exit_code(), 2);
        assert_eq!(exec(&["verify", "theorem12", "--m-max", "2"]).unwrap_err().exit_code(), 2);
        assert_eq!(exec(&["jsr", "--depth", "23"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn out_directory_gets_default_name() {
        assert_eq!(target_path(Path::new("."), "C_3.csv"), PathBuf::from("./C_3.csv"));
        assert_eq!(target_path(Path::new("x.csv"), "C_3.csv"), PathBuf::from("x.csv"));
    }

    #[test]
    fn autocorr_json_names() {
        let o = exec(&["autocorr", "--m", "2", "--kind", "periodic", "--format", "json"]).unwrap();
        assert_eq!(o.file_name, "P_2.json");
        assert!(o.body.starts_with('{'));
    }
}
