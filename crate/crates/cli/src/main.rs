//! `so3split` — command-line front end for the angular-momentum library:
//! generator construction, characters, decomposition, residual-symmetry
//! reports, precession runs, and Zeeman spectra, emitted as JSON, CSV, or
//! aligned tables.
//!
//! Exit codes: 0 success, 1 domain error (invalid values, file contents,
//! physics preconditions), 2 usage error (unknown flags, missing arguments).

mod emit;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use so3split_core::dynamics::{
    heisenberg_closed_form, heisenberg_integrate, schrodinger_closed_form, schrodinger_integrate,
    Orientation, PrecessionSpec,
};
use so3split_core::repanalysis::{
    decompose_by_character, decompose_by_weights, decomposition_character, group_element_of,
    residual_symmetry, validate_generator_triple, RotationParameter,
};
use so3split_core::so3rep::{
    defining_rep, direct_sum, spherical_rep, tensor_product, SpinLabel,
};
use so3split_core::zeeman::{perturbed_hamiltonian, splitting_report};

use emit::{Emission, Format};
use load::{load_decomposition, load_spin_rep, load_triple};

/// A failure routed to an exit code: usage errors exit 2, domain errors
/// (bad values, bad files, physics preconditions) exit 1.
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<so3split_core::Error> for CliError {
    fn from(err: so3split_core::Error) -> Self {
        CliError::Domain(err.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "so3split",
    version,
    about = "Angular-momentum representations, symmetry breaking, precession, and Zeeman spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct generator matrices for a spin-l representation
    Generators(GeneratorsArgs),
    /// Evaluate the rotation character χ(θ) of a representation
    Character(CharacterArgs),
    /// Decompose a representation into irreducible blocks
    Decompose(DecomposeArgs),
    /// Classify the residual symmetry of a perturbed Hamiltonian
    Symmetry(SymmetryArgs),
    /// Run precession dynamics in either picture
    Evolve(EvolveArgs),
    /// Compute Zeeman level splitting for hydrogen
    Zeeman(ZeemanArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the emission to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Cartesian,
    Spherical,
}

#[derive(Args)]
struct GeneratorsArgs {
    /// Spin label as a decimal: integer or half-integer (e.g. 1, 0.5, 3.5)
    #[arg(long)]
    l: Option<String>,
    /// Spin label as twice its value: a non-negative integer
    #[arg(long = "two-l", value_name = "2L")]
    two_l: Option<String>,
    /// Carrier basis (cartesian is available for l = 1 only)
    #[arg(long, value_enum, default_value_t = BasisArg::Spherical)]
    basis: BasisArg,
    /// Emit the tensor product with a second spin-L2 representation
    /// (spherical carriers) as a raw generator triple
    #[arg(long, value_name = "L2", conflicts_with_all = ["direct_sum", "basis"])]
    tensor: Option<String>,
    /// Emit the direct sum of a comma-separated list of spin labels
    /// (spherical carriers) as a raw generator triple
    #[arg(long = "direct-sum", value_name = "L1,L2,...", conflicts_with_all = ["l", "two_l", "basis"])]
    direct_sum: Option<String>,
    /// Reload a representation or generator-triple document and re-emit it
    /// (validates on load)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["l", "two_l", "basis", "tensor", "direct_sum"])]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CharacterArgs {
    /// Spin label as a decimal
    #[arg(long)]
    l: Option<String>,
    /// Spin label as twice its value
    #[arg(long = "two-l", value_name = "2L")]
    two_l: Option<String>,
    /// Decomposition JSON file whose total character to evaluate
    #[arg(long, value_name = "FILE", conflicts_with_all = ["l", "two_l"])]
    decomp: Option<PathBuf>,
    /// Rotation angle θ in radians
    #[arg(long)]
    theta: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeMethod {
    Weights,
    Character,
    Both,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Representation or generator-triple JSON file
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Decomposition route; `both` cross-checks the two and emits one result
    #[arg(long, value_enum, default_value_t = DecomposeMethod::Both)]
    method: DecomposeMethod,
    /// Validation tolerance for Hermiticity and the commutation relations
    /// [default: 1e-8]
    #[arg(long)]
    tol: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SymmetryArgs {
    /// Spin label as a decimal (with --field-gauss)
    #[arg(long)]
    l: Option<String>,
    /// Spin label as twice its value (with --field-gauss)
    #[arg(long = "two-l", value_name = "2L")]
    two_l: Option<String>,
    /// Magnetic field in gauss; builds the orbital Zeeman perturbation
    #[arg(long = "field-gauss", value_name = "B")]
    field_gauss: Option<String>,
    /// Perturbed-Hamiltonian JSON file (requires --rep)
    #[arg(long, value_name = "FILE", requires = "rep", conflicts_with_all = ["l", "two_l", "field_gauss"])]
    hamiltonian: Option<PathBuf>,
    /// Representation JSON file the Hamiltonian acts on
    #[arg(long, value_name = "FILE", requires = "hamiltonian")]
    rep: Option<PathBuf>,
    /// Commutator tolerance for declaring a generator surviving
    /// [default: 1e-10]
    #[arg(long)]
    tol: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PictureArg {
    Schrodinger,
    Heisenberg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Integrated,
}

#[derive(Args)]
struct EvolveArgs {
    /// Which picture evolves: the state vector or the operators
    #[arg(long, value_enum, default_value_t = PictureArg::Schrodinger)]
    picture: PictureArg,
    /// Closed-form solution or fixed-step numerical integration
    #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
    method: MethodArg,
    /// Precession rate ω in radians per unit time
    #[arg(long)]
    rate: String,
    /// Final time
    #[arg(long = "t-end", value_name = "T")]
    t_end: String,
    /// Sample / integration step (dt·|rate| must stay ≤ 0.1)
    #[arg(long)]
    dt: String,
    /// Initial polar angle θ₀ in radians (state picture)
    #[arg(long)]
    theta0: Option<String>,
    /// Initial azimuth φ₀ in radians (state picture) [default: 0]
    #[arg(long)]
    phi0: Option<String>,
    /// Initial operator triple: representation or generator-triple JSON
    /// (operator picture) [default: the Cartesian l = 1 generators]
    #[arg(long, value_name = "FILE")]
    rep: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ZeemanArgs {
    /// Principal quantum number
    #[arg(long)]
    n: Option<String>,
    /// Sweep all principal quantum numbers 1..=K
    #[arg(long = "n-max", value_name = "K", conflicts_with_all = ["n", "l"])]
    n_max: Option<String>,
    /// Restrict to one orbital quantum number (requires --n)
    #[arg(long, requires = "n")]
    l: Option<String>,
    /// Magnetic field in gauss (≥ 0)
    #[arg(long = "field-gauss", value_name = "B")]
    field_gauss: String,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if err.kind() == ErrorKind::DisplayHelp
                || err.kind() == ErrorKind::DisplayVersion =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let line = err.to_string();
            let line = line.lines().next().unwrap_or("invalid usage");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generators(args) => run_generators(args),
        Command::Character(args) => run_character(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Symmetry(args) => run_symmetry(args),
        Command::Evolve(args) => run_evolve(args),
        Command::Zeeman(args) => run_zeeman(args),
    }
}

/// Parses a decimal spin label (`--l`) or doubled integer label (`--two-l`),
/// requiring exactly one of the two flags.
fn parse_spin_label(l: &Option<String>, two_l: &Option<String>) -> CliResult<SpinLabel> {
    match (l, two_l) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "error: pass exactly one of --l and --two-l".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "error: one of --l or --two-l is required".into(),
        )),
        (Some(text), None) => {
            let value = parse_f64("--l", text)?;
            Ok(SpinLabel::from_l(value)?)
        }
        (None, Some(text)) => {
            let value: u32 = text.parse().map_err(|_| {
                CliError::Domain(format!("rejected input: --two-l must be a non-negative integer, got `{text}`"))
            })?;
            Ok(SpinLabel::from_two_l(value))
        }
    }
}

fn parse_f64(flag: &str, text: &str) -> CliResult<f64> {
    text.parse::<f64>()
        .map_err(|_| CliError::Domain(format!("rejected input: {flag} must be a number, got `{text}`")))
}

fn parse_u32(flag: &str, text: &str) -> CliResult<u32> {
    text.parse::<u32>().map_err(|_| {
        CliError::Domain(format!("rejected input: {flag} must be a non-negative integer, got `{text}`"))
    })
}

fn run_generators(args: GeneratorsArgs) -> CliResult {
    if let Some(path) = &args.input {
        return match load::load_rep_document(path)? {
            load::RepDocument::Rep(rep) => Emission::spin_rep(&rep).write(&args.out),
            load::RepDocument::Triple(gens) => Emission::triple(&gens).write(&args.out),
        };
    }
    if let Some(list) = &args.direct_sum {
        let labels: Vec<SpinLabel> = list
            .split(',')
            .map(|item| {
                let value = parse_f64("--direct-sum", item.trim())?;
                Ok(SpinLabel::from_l(value)?)
            })
            .collect::<CliResult<_>>()?;
        let reps: Vec<_> = labels.into_iter().map(spherical_rep).collect();
        let (gens, _) = direct_sum(&reps)?;
        return Emission::triple(&gens).write(&args.out);
    }

    let label = parse_spin_label(&args.l, &args.two_l)?;
    if let Some(second) = &args.tensor {
        let second = SpinLabel::from_l(parse_f64("--tensor", second)?)?;
        let gens = tensor_product(&spherical_rep(label), &spherical_rep(second))?;
        return Emission::triple(&gens).write(&args.out);
    }

    let rep = match args.basis {
        BasisArg::Spherical => spherical_rep(label),
        BasisArg::Cartesian => {
            if label != SpinLabel::from_two_l(2) {
                return Err(CliError::Domain(format!(
                    "rejected input: the Cartesian carrier exists only for l = 1, got l = {label}"
                )));
            }
            defining_rep()
        }
    };
    Emission::spin_rep(&rep).write(&args.out)
}

fn run_character(args: CharacterArgs) -> CliResult {
    let theta = parse_f64("--theta", &args.theta)?;
    if !theta.is_finite() {
        return Err(CliError::Domain("rejected input: --theta must be finite".into()));
    }
    let value = if let Some(path) = &args.decomp {
        let decomp = load_decomposition(path)?;
        decomposition_character(&decomp, theta)
    } else {
        let label = parse_spin_label(&args.l, &args.two_l)?;
        so3split_core::repanalysis::character(label, theta)
    };
    Emission::character(theta, value).write(&args.out)
}

fn run_decompose(args: DecomposeArgs) -> CliResult {
    let tol = match &args.tol {
        Some(text) => parse_f64("--tol", text)?,
        None => 1e-8,
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Domain(format!("rejected input: --tol must be positive, got {tol}")));
    }
    let gens = load_triple(&args.input)?;
    validate_generator_triple(&gens, tol)?;

    let by_character = || {
        let l_max = SpinLabel::from_two_l((gens.dim() - 1) as u32);
        let chi = |theta: f64| {
            group_element_of(&gens, &RotationParameter::about_z(theta).expect("finite angle"))
                .trace()
        };
        decompose_by_character(chi, l_max)
    };
    let decomp = match args.method {
        DecomposeMethod::Weights => decompose_by_weights(&gens, tol)?,
        DecomposeMethod::Character => by_character()?,
        DecomposeMethod::Both => {
            let weights = decompose_by_weights(&gens, tol)?;
            let character = by_character()?;
            if weights != character {
                return Err(CliError::Domain(format!(
                    "inconsistent character data: weight route found {weights} but character route found {character}"
                )));
            }
            weights
        }
    };
    Emission::decomposition(&decomp).write(&args.out)
}

fn run_symmetry(args: SymmetryArgs) -> CliResult {
    let tol = match &args.tol {
        Some(text) => parse_f64("--tol", text)?,
        None => 1e-10,
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Domain(format!("rejected input: --tol must be positive, got {tol}")));
    }
    let (h_pert, rep) = if let Some(h_path) = &args.hamiltonian {
        let rep_path = args.rep.as_ref().expect("clap enforces --rep with --hamiltonian");
        let rep = load_spin_rep(rep_path)?;
        let h_pert = load::load_matrix(h_path)?;
        (h_pert, rep)
    } else {
        let field = match &args.field_gauss {
            Some(text) => parse_f64("--field-gauss", text)?,
            None => {
                return Err(CliError::Usage(
                    "error: pass --l/--two-l with --field-gauss, or --rep with --hamiltonian".into(),
                ))
            }
        };
        let label = parse_spin_label(&args.l, &args.two_l)?;
        let rep = spherical_rep(label);
        let h_pert = perturbed_hamiltonian(&rep, field)?;
        (h_pert, rep)
    };
    let report = residual_symmetry(&h_pert, &rep, tol)?;
    Emission::symmetry(&report).write(&args.out)
}

fn run_evolve(args: EvolveArgs) -> CliResult {
    let rate = parse_f64("--rate", &args.rate)?;
    let t_end = parse_f64("--t-end", &args.t_end)?;
    let dt = parse_f64("--dt", &args.dt)?;
    let spec = PrecessionSpec::new(rate, t_end, dt)?;

    match args.picture {
        PictureArg::Schrodinger => {
            if args.rep.is_some() {
                return Err(CliError::Usage(
                    "error: --rep applies only to --picture heisenberg".into(),
                ));
            }
            let theta0 = match &args.theta0 {
                Some(text) => parse_f64("--theta0", text)?,
                None => {
                    return Err(CliError::Usage(
                        "error: --theta0 is required for the state picture".into(),
                    ))
                }
            };
            let phi0 = match &args.phi0 {
                Some(text) => parse_f64("--phi0", text)?,
                None => 0.0,
            };
            let init = Orientation::new(theta0, phi0)?;
            let trajectory = match args.method {
                MethodArg::ClosedForm => schrodinger_closed_form(init, &spec),
                MethodArg::Integrated => schrodinger_integrate(init, &spec),
            };
            Emission::orientation_trajectory(&trajectory).write(&args.out)
        }
        PictureArg::Heisenberg => {
            if args.theta0.is_some() || args.phi0.is_some() {
                return Err(CliError::Usage(
                    "error: --theta0/--phi0 apply only to --picture schrodinger".into(),
                ));
            }
            let init_ops = match &args.rep {
                Some(path) => load_triple(path)?,
                None => defining_rep().generators().clone(),
            };
            let trajectory = match args.method {
                MethodArg::ClosedForm => heisenberg_closed_form(&init_ops, &spec)?,
                MethodArg::Integrated => heisenberg_integrate(&init_ops, &spec)?,
            };
            Emission::operator_trajectory(&trajectory).write(&args.out)
        }
    }
}

fn run_zeeman(args: ZeemanArgs) -> CliResult {
    let field = parse_f64("--field-gauss", &args.field_gauss)?;
    let reports = match (&args.n, &args.n_max) {
        (Some(n_text), None) => {
            let n = parse_u32("--n", n_text)?;
            let mut reports = splitting_report(n, field)?;
            if let Some(l_text) = &args.l {
                let l = parse_u32("--l", l_text)?;
                reports.retain(|r| r.spectrum.base().l() == l);
                if reports.is_empty() {
                    return Err(CliError::Domain(format!(
                        "rejected input: --l {l} is outside 0..={} for n = {n}",
                        n - 1
                    )));
                }
            }
            reports
        }
        (None, Some(k_text)) => {
            let k = parse_u32("--n-max", k_text)?;
            if k == 0 {
                return Err(CliError::Domain(
                    "rejected input: --n-max must be ≥ 1".into(),
                ));
            }
            let mut reports = Vec::new();
            for n in 1..=k {
                reports.extend(splitting_report(n, field)?);
            }
            reports
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
        (None, None) => {
            return Err(CliError::Usage("error: one of --n or --n-max is required".into()))
        }
    };
    Emission::zeeman(&reports).write(&args.out)
}
