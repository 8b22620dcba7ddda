//! Command-line front end: `classify`, `stabilizer`, `cartan` and `verify-x7`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use g2forms::classify::{self, Verdict};
use g2forms::exterior::KForm;
use g2forms::liealg::{self, LieAlgebra};
use g2forms::pipeline::{self, VerificationReport};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "g2forms",
    version,
    about = "Exact classification of 3-forms on R^7 and checks of the Cartan 3-form on X^7"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a 3-form on R^7 read from a KForm JSON file.
    Classify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stabilizer dimension of a 3-form on R^7, optionally with a basis.
    Stabilizer {
        file: PathBuf,
        #[arg(long)]
        basis: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the Cartan 3-form of su2, su3 or an algebra file.
    Cartan {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        check_closed: bool,
        #[arg(long)]
        check_multisymplectic: bool,
        /// Write the form (KForm schema) here; the check summary still goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded verification pipeline on X^7.
    VerifyX7 {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Verification(String),
}

type Outcome = Result<bool, Failure>;

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code: 0 success, 1 verification failure, 2 input error.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    let result = match cli.command {
        Command::Classify { file, output } => cmd_classify(&file, output.as_deref()),
        Command::Stabilizer { file, basis, output } => cmd_stabilizer(&file, basis, output.as_deref()),
        Command::Cartan { algebra, check_closed, check_multisymplectic, output } => {
            cmd_cartan(&algebra, check_closed, check_multisymplectic, output.as_deref())
        }
        Command::VerifyX7 { samples, seed, output, format } => {
            cmd_verify_x7(samples as usize, seed, output.as_deref(), format)
        }
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn check_input(path: &Path) -> Result<(), Failure> {
    if !path.is_file() {
        return Err(Failure::Input(format!("input file {} does not exist", path.display())));
    }
    Ok(())
}

fn check_output(path: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(Failure::Input(format!("output directory {} does not exist", dir.display())))
        }
        _ if path.is_dir() => Err(Failure::Input(format!("output path {} is a directory", path.display()))),
        _ => Ok(()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn load_form(path: &Path) -> Result<KForm, Failure> {
    check_input(path)?;
    let form = KForm::from_json(&read(path)?)
        .map_err(|e| Failure::Input(format!("parse error in {}: {e}", path.display())))?;
    if form.dim() != 7 || form.degree() != 3 {
        return Err(Failure::Input(format!(
            "shape error: expected a 3-form on R^7, got a {}-form on R^{}",
            form.degree(),
            form.dim()
        )));
    }
    Ok(form)
}

fn cmd_classify(file: &Path, output: Option<&Path>) -> Outcome {
    check_output(output)?;
    let form = load_form(file)?;
    let report = classify::classify(&form).map_err(|e| Failure::Verification(e.to_string()))?;
    emit(&pretty(&report), output)?;
    Ok(true)
}

fn cmd_stabilizer(file: &Path, basis: bool, output: Option<&Path>) -> Outcome {
    check_output(output)?;
    let form = load_form(file)?;
    let fail = |e: g2forms::Error| Failure::Verification(e.to_string());
    let value = if basis {
        let b = classify::stabilizer(&form).map_err(fail)?;
        json!({ "stabilizer_dim": b.dim(), "basis": b.elements })
    } else {
        json!({ "stabilizer_dim": classify::stabilizer_dim(&form).map_err(fail)? })
    };
    emit(&pretty(&value), output)?;
    Ok(true)
}

fn load_algebra(name: &str) -> Result<LieAlgebra, Failure> {
    match name {
        "su2" => Ok(liealg::build_su2()),
        "su3" => Ok(liealg::build_su3()),
        path => {
            let path = Path::new(path);
            check_input(path)?;
            LieAlgebra::from_json(&read(path)?)
                .map_err(|e| Failure::Input(format!("invalid algebra file {}: {e}", path.display())))
        }
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_cartan(algebra: &str, closed: bool, multisymplectic: bool, output: Option<&Path>) -> Outcome {
    check_output(output)?;
    let g = load_algebra(algebra)?;
    let form = g.cartan_3form(&g.default_metric()).map_err(|e| Failure::Verification(e.to_string()))?;
    let mut checks = serde_json::Map::new();
    let mut all = true;
    if closed {
        // a top-degree form is closed for degree reasons
        let ok = form.degree() == g.dim()
            || g.ce_differential(&form).map_err(|e| Failure::Verification(e.to_string()))?.is_zero();
        all &= ok;
        checks.insert("closed".into(), verdict_word(ok).into());
    }
    if multisymplectic {
        let ok = form.is_multisymplectic();
        all &= ok;
        checks.insert("multisymplectic".into(), verdict_word(ok).into());
    }
    let form_value: Value = serde_json::from_str(&form.to_json()).expect("form JSON");
    let summary = match output {
        Some(path) => {
            emit(&form.to_json(), Some(path))?;
            json!({ "algebra": algebra, "dim": g.dim(), "form_file": path.display().to_string(), "checks": checks })
        }
        None => json!({ "algebra": algebra, "dim": g.dim(), "form": form_value, "checks": checks }),
    };
    emit(&pretty(&summary), None)?;
    Ok(all)
}

fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    for rec in &r.records {
        let _ = writeln!(
            out,
            "sample {:>4}  p=({}, {})  in_x7={}  rank={}  {:?} {{{},{}}}  stabilizer={}",
            rec.index,
            rec.params.p[0],
            rec.params.p[1],
            rec.in_x7,
            rec.tangent_rank,
            rec.report.verdict,
            rec.report.signature[0],
            rec.report.signature[1],
            rec.report.stabilizer_dim,
        );
    }
    let equal = r.translate_checks.iter().filter(|t| t.equal).count();
    let _ = writeln!(out, "translate checks equal: {equal}/{}", r.translate_checks.len());
    let _ = writeln!(out, "identity golden match: {}", r.summary.identity_golden_match);
    let _ = writeln!(
        out,
        "samples: {}  seed: {}  all split-stable: {}",
        r.summary.samples, r.summary.seed, r.summary.all_split_stable
    );
    out
}

fn cmd_verify_x7(samples: usize, seed: u64, output: Option<&Path>, format: Format) -> Outcome {
    check_output(output)?;
    let report = pipeline::run(samples, seed).map_err(|e| Failure::Verification(e.to_string()))?;
    let text = match format {
        Format::Json => pretty(&report),
        Format::Text => render_text(&report),
    };
    emit(&text, output)?;
    for rec in &report.records {
        if !rec.in_x7 || rec.tangent_rank != 7 || rec.report.verdict != Verdict::SplitStable {
            eprintln!(
                "sample {}: {:?}, signature {:?}, stabilizer dimension {}",
                rec.index, rec.report.verdict, rec.report.signature, rec.report.stabilizer_dim
            );
        }
    }
    let unequal = report.translate_checks.iter().filter(|t| !t.equal).count();
    if unequal > 0 {
        eprintln!("translate check failed for {unequal} of {} samples", report.translate_checks.len());
    }
    if !report.summary.identity_golden_match {
        eprintln!("restriction at the identity does not match the golden form");
    }
    Ok(report.passed())
}
