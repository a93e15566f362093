//! Command-line front end: build operators, map between spin and fermion
//! pictures, and run exact verification checks.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use spinfermion::applications::{
    ising_zz_number_ops, precession_hamiltonian_fermionic, rotated_field_magnitude, spectrum_equal, FieldVector,
};
use spinfermion::fermion_to_spin::{
    eval_spin_poly, fermion_creator_spin_expansion, number_op_polynomial, root_component_vector,
};
use spinfermion::operators::{
    fermion_annihilator, fermion_creator, number_operator, spin_plus, spin_z, verify_car, verify_su2,
};
use spinfermion::scalar::ratio;
use spinfermion::spin_to_fermion::{spin_plus_fermionic, spin_z_fermionic};
use spinfermion::uodm::{build_uodm, closed_form_uodm, expand_uodm_fermionic};
use spinfermion::{Error, ExactComplex, ExactReal, Flavor, Matrix, Rational, RootComponentVector, SpinRep, UodmVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INCOMPATIBLE: i32 = 3;

/// Environment variable capping the flavor count (and so `2s+1 ≤ 2^cap`).
pub const MAX_L_VAR: &str = "SPINFERMION_MAX_L";
const DEFAULT_MAX_L: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "spinfermion", version, about = "Exact spin-s <-> fermion operator mapping")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an operator matrix.
    Construct(ConstructArgs),
    /// Expand S+ or Sz in fermion operators.
    SpinToFermion {
        #[arg(long = "two-s")]
        two_s: u32,
        #[arg(long, value_enum)]
        op: SpinOp,
    },
    /// Expand a fermion creator in spin operators.
    FermionToSpin {
        #[arg(long = "L")]
        flavors: usize,
        #[arg(long)]
        alpha: usize,
        /// Root component vector, comma separated; defaults to the canonical choice.
        #[arg(long, value_delimiter = ',')]
        components: Option<Vec<String>>,
    },
    /// Number operator as a polynomial in Sz.
    NumopPoly {
        #[arg(long = "two-s")]
        two_s: u32,
        #[arg(long)]
        alpha: usize,
    },
    /// Run an exact check; exit status 2 on failure.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Two-site Sz Sz coupling in number operators.
    Ising {
        #[arg(long = "two-s")]
        two_s: u32,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: OperatorKind,
    #[arg(long = "L")]
    flavors: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long = "two-s")]
    two_s: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OperatorKind {
    C,
    Cdag,
    N,
    Splus,
    Sz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpinOp {
    Plus,
    Z,
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Anticommutation relations of the constructed creators and annihilators.
    Car {
        #[arg(long = "L")]
        flavors: usize,
    },
    /// su(2) commutation relations of the spin matrices.
    Su2 {
        #[arg(long = "two-s")]
        two_s: u32,
    },
    /// Closed-form UODM against the direct and fermionic-basis constructions.
    ClosedForm {
        #[arg(long = "L")]
        flavors: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Spin -> fermion -> spin reconstructions at one representation.
    Roundtrip {
        #[arg(long = "two-s")]
        two_s: u32,
    },
    /// Precession Hamiltonian against the rotated field along z.
    Spectrum {
        #[arg(long = "two-s")]
        two_s: u32,
        /// Field components `bx,by,bz` (rationals).
        #[arg(long, default_value = "0,0,1")]
        field: String,
    },
}

/// A finished command: the document to print and the exit status.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            code: EXIT_OK,
        }
    }
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn max_flavors() -> Result<usize, Failure> {
    match std::env::var(MAX_L_VAR) {
        Err(_) => Ok(DEFAULT_MAX_L),
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&l| (1..=30).contains(&l))
            .ok_or_else(|| usage(format!("{MAX_L_VAR}={v} is not an integer in 1..=30"))),
    }
}

fn check_flavors(flavors: usize) -> Result<(), Failure> {
    let cap = max_flavors()?;
    if flavors == 0 {
        return Err(usage("--L must be at least 1"));
    }
    if flavors > cap {
        return Err(usage(format!("L = {flavors} exceeds the cap {cap} ({MAX_L_VAR})")));
    }
    Ok(())
}

fn spin_rep(two_s: u32) -> Result<SpinRep, Failure> {
    let rep = SpinRep::new(two_s)?;
    let cap = max_flavors()?;
    if rep.dim() > 1usize << cap {
        return Err(usage(format!("2s+1 = {} exceeds 2^{cap} ({MAX_L_VAR})", rep.dim())));
    }
    Ok(rep)
}

/// A representation that must pair with `L` flavors.
fn mapped_rep(two_s: u32) -> Result<SpinRep, Failure> {
    let rep = spin_rep(two_s)?;
    rep.flavors()?;
    Ok(rep)
}

fn flavor(flavors: usize, alpha: usize) -> Result<Flavor, Failure> {
    check_flavors(flavors)?;
    Ok(Flavor::new(flavors, alpha)?)
}

fn matrix_text(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| scalar_text(m.get(i, j))).collect();
        out.push_str(&row.join("  "));
        out.push('\n');
    }
    out
}

fn scalar_text(z: &ExactComplex) -> String {
    if z.is_real() {
        z.re.to_string()
    } else {
        z.to_string()
    }
}

fn construct(args: &ConstructArgs) -> Result<Report, Failure> {
    let m = match args.kind {
        OperatorKind::C | OperatorKind::Cdag | OperatorKind::N => {
            let l = args
                .flavors
                .ok_or_else(|| usage("--L is required for fermion operators"))?;
            let a = args
                .alpha
                .ok_or_else(|| usage("--alpha is required for fermion operators"))?;
            let f = flavor(l, a)?;
            match args.kind {
                OperatorKind::C => fermion_annihilator(f),
                OperatorKind::Cdag => fermion_creator(f),
                _ => number_operator(f),
            }
        }
        OperatorKind::Splus | OperatorKind::Sz => {
            let two_s = args
                .two_s
                .ok_or_else(|| usage("--two-s is required for spin operators"))?;
            let rep = spin_rep(two_s)?;
            match args.kind {
                OperatorKind::Splus => spin_plus(rep),
                _ => spin_z(rep),
            }
        }
    };
    Ok(Report::ok(m.to_json(), matrix_text(&m)))
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let value: ExactReal = s
        .parse()
        .map_err(|_| usage(format!("`{s}` is not a rational number")))?;
    value
        .as_rational()
        .ok_or_else(|| usage(format!("`{s}` is not a rational number")))
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn verdict(passed: bool, json: Value, text: String) -> Report {
    Report {
        json,
        text,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    }
}

fn verify(check: &Check) -> Result<Report, Failure> {
    match check {
        Check::Car { flavors } => {
            check_flavors(*flavors)?;
            let r = verify_car(*flavors)?;
            let mut json = json!({"check": "car", "status": status(r.passed), "L": flavors});
            if let Some(f) = &r.failure {
                json["failure"] = json!(f);
            }
            let text = format!("car L={flavors}: {}{}\n", status(r.passed), failure_suffix(&r.failure));
            Ok(verdict(r.passed, json, text))
        }
        Check::Su2 { two_s } => {
            let r = verify_su2(spin_rep(*two_s)?)?;
            let mut json = json!({"check": "su2", "status": status(r.passed), "two_s": two_s});
            if let Some(f) = &r.failure {
                json["failure"] = json!(f);
            }
            let text = format!("su2 2s={two_s}: {}{}\n", status(r.passed), failure_suffix(&r.failure));
            Ok(verdict(r.passed, json, text))
        }
        Check::ClosedForm { flavors, samples, seed } => {
            check_flavors(*flavors)?;
            let mut rng = StdRng::seed_from_u64(*seed);
            let n = (1usize << flavors) - 1;
            let mut first_failure = None;
            for sample in 0..*samples {
                let x = (0..n)
                    .map(|_| ExactReal::from_rational(ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))))
                    .collect();
                let v = UodmVector::new(*flavors, x)?;
                let direct = build_uodm(&v);
                let agree = closed_form_uodm(&v)? == direct && expand_uodm_fermionic(&v)?.reconstruct()? == direct;
                if !agree {
                    first_failure = Some(sample);
                    break;
                }
            }
            let passed = first_failure.is_none();
            let mut json = json!({
                "check": "closed-form", "status": status(passed), "L": flavors, "samples": samples, "seed": seed,
            });
            if let Some(s) = first_failure {
                json["failure"] = json!(format!("sample {s}"));
            }
            let text = format!("closed-form L={flavors} ({samples} samples): {}\n", status(passed));
            Ok(verdict(passed, json, text))
        }
        Check::Roundtrip { two_s } => {
            let rep = mapped_rep(*two_s)?;
            let flavors = rep.flavors()?;
            let mut results = serde_json::Map::new();
            results.insert(
                "S+".into(),
                json!(status(spin_plus_fermionic(rep)?.reconstruct()? == spin_plus(rep))),
            );
            results.insert(
                "Sz".into(),
                json!(status(spin_z_fermionic(rep)?.reconstruct()? == spin_z(rep))),
            );
            for alpha in 1..=flavors {
                let f = Flavor::new(flavors, alpha)?;
                let creator = fermion_creator_spin_expansion(&root_component_vector(f)?)?;
                results.insert(
                    format!("c{alpha}+"),
                    json!(status(creator.reconstruct()? == fermion_creator(f))),
                );
                let poly = number_op_polynomial(rep, alpha)?;
                results.insert(
                    format!("n{alpha}"),
                    json!(status(eval_spin_poly(&poly, rep)? == number_operator(f))),
                );
            }
            let passed = results.values().all(|v| v == "pass");
            let text = results
                .iter()
                .map(|(k, v)| format!("{k}: {}\n", v.as_str().unwrap_or_default()))
                .collect();
            let json = json!({"check": "roundtrip", "status": status(passed), "two_s": two_s, "operators": results});
            Ok(verdict(passed, json, text))
        }
        Check::Spectrum { two_s, field } => {
            let rep = mapped_rep(*two_s)?;
            let parts: Vec<&str> = field.split(',').map(str::trim).collect();
            let [bx, by, bz] = parts.as_slice() else {
                return Err(usage("--field takes three components"));
            };
            let b = FieldVector::new(parse_rational(bx)?, parse_rational(by)?, parse_rational(bz)?);
            let magnitude = rotated_field_magnitude(&b)?;
            let h = precession_hamiltonian_fermionic(&b, rep)?;
            let rotated = spin_z(rep).scale_real(&magnitude);
            let passed = spectrum_equal(&h, &rotated)?;
            let char_poly: Vec<String> = h.char_poly()?.coefficients.iter().map(scalar_text).collect();
            let json = json!({
                "check": "spectrum",
                "status": status(passed),
                "two_s": two_s,
                "field_magnitude": magnitude.to_string(),
                "char_poly": char_poly,
            });
            let text = format!(
                "spectrum 2s={two_s}: {} (|b| = {magnitude}; char poly {})\n",
                status(passed),
                char_poly.join(", ")
            );
            Ok(verdict(passed, json, text))
        }
    }
}

fn failure_suffix(failure: &Option<String>) -> String {
    failure
        .as_ref()
        .map(|f| format!(" (first violation: {f})"))
        .unwrap_or_default()
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Construct(args) => construct(args),
        Command::SpinToFermion { two_s, op } => {
            let rep = mapped_rep(*two_s)?;
            let e = match op {
                SpinOp::Plus => spin_plus_fermionic(rep)?,
                SpinOp::Z => spin_z_fermionic(rep)?,
            };
            Ok(Report::ok(e.to_json(), e.to_text()))
        }
        Command::FermionToSpin {
            flavors,
            alpha,
            components,
        } => {
            let f = flavor(*flavors, *alpha)?;
            // the mapped representation must be within the cap as well
            spin_rep(((1u64 << flavors) - 1) as u32)?;
            let root = match components {
                None => root_component_vector(f)?,
                Some(raw) => {
                    let x = raw
                        .iter()
                        .map(|s| s.trim().parse::<ExactReal>())
                        .collect::<spinfermion::Result<Vec<_>>>()?;
                    RootComponentVector::new(f, x)?
                }
            };
            let e = fermion_creator_spin_expansion(&root)?;
            Ok(Report::ok(e.to_json(), e.to_text()))
        }
        Command::NumopPoly { two_s, alpha } => {
            let rep = mapped_rep(*two_s)?;
            let p = number_op_polynomial(rep, *alpha)?;
            Ok(Report::ok(p.to_json(), p.to_text()))
        }
        Command::Verify { check } => verify(check),
        Command::Ising { two_s } => {
            let e = ising_zz_number_ops(mapped_rep(*two_s)?)?;
            Ok(Report::ok(e.to_json(), e.to_text()))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IncompatibleRepresentation { .. } => EXIT_INCOMPATIBLE,
        Error::RootValidationFailure { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let body = match cli.format {
        Format::Json => format!("{}\n", report.json),
        Format::Text => report.text,
    };
    match &cli.output {
        None => {
            if let Err(e) = stdout.write_all(body.as_bytes()) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
    }
    report.code
}
