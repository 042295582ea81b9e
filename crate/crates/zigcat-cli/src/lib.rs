//! Command-line front end for zigcat: argument parsing, dispatch and the
//! check suites. `run` is what the binary calls; tests call it directly.

pub mod checks;
pub mod display;
pub mod report;

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{parse_structured, render, Format, Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "zigcat", version, about = "Exact computations with type A/B zigzag algebras and braid actions")]
pub struct Cli {
    /// text or structured (one JSON object per line)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// worker threads; results do not depend on it
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Algebra construction and hom tables
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Apply a braid word to a complex
    Act(ActArgs),
    /// Matrix of a braid word on K0
    Burau(BurauArgs),
    /// Trigraded curves
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Check suites
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Graded dimension matrices at t = -1 against the Cartan/intersection displays
    Cartan(CartanArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TypeTag {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl TypeTag {
    pub fn kind(self) -> zigcat::zigzag::Kind {
        match self {
            TypeTag::A => zigcat::zigzag::Kind::A,
            TypeTag::B => zigcat::zigzag::Kind::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradingArg {
    Ks,
    Pathlen,
}

impl GradingArg {
    pub fn grading(self) -> zigcat::zigzag::Grading {
        match self {
            GradingArg::Ks => zigcat::zigzag::Grading::Ks,
            GradingArg::Pathlen => zigcat::zigzag::Grading::PathLen,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum IsoArg {
    Fingerprint,
    Exhaustive,
    /// fingerprint, then exhaustive when inconclusive
    #[default]
    Escalate,
}

#[derive(Args, Debug, Clone)]
pub struct AlgArgs {
    #[arg(long = "type", value_enum, default_value_t = TypeTag::B)]
    pub type_tag: TypeTag,
    /// number of vertices
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = GradingArg::Ks)]
    pub grading: GradingArg,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Dimension, basis with degrees, hom tables, relation and associativity checks
    Info(AlgArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ActArgs {
    #[command(flatten)]
    pub alg: AlgArgs,
    /// letters separated by spaces, e.g. "2 1 -2"; applied left to right
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// start vertex, or "all" for the sum of all projectives
    #[arg(long, default_value = "all")]
    pub start: String,
    /// read the start complex from a file instead
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Gaussian elimination after each letter
    #[arg(long)]
    pub minimize: bool,
    /// act by R_1 instead of R_1<1> for sigma_1 in type B
    #[arg(long)]
    pub bare: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum MatrixStyle {
    #[default]
    Plain,
    /// rows as "a & b & c \\"
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct BurauArgs {
    #[arg(long = "type", value_enum, default_value_t = TypeTag::B)]
    pub type_tag: TypeTag,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, value_enum, default_value_t = MatrixStyle::Plain)]
    pub style: MatrixStyle,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    pub file: PathBuf,
    /// line index
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    /// The complex L_B of a curve
    Lb(CurveArgs),
    /// Trigraded intersection number with the basic curve b_j
    Itrigr(CurveArgs),
    /// Poincare polynomial of Hom(P_j, L_B(curve))
    Poincare(CurveArgs),
    /// The j-strings of a curve with their contributions
    Strings(CurveArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RelArgs {
    #[arg(long = "type", value_enum, default_value_t = TypeTag::B)]
    pub type_tag: TypeTag,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = IsoArg::Escalate)]
    pub iso: IsoArg,
    #[arg(long)]
    pub bare: bool,
}

#[derive(Args, Debug, Clone)]
pub struct InverseArgs {
    #[command(flatten)]
    pub rel: RelArgs,
    /// check w w^-1 and w^-1 w instead of the single generators
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct EquivArgs {
    #[arg(long)]
    pub n: usize,
    /// all words up to this length
    #[arg(long, default_value_t = 2)]
    pub maxlen: usize,
    /// a single word instead of the enumeration
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum ShiftArg {
    /// U_j generated in degree -1
    #[default]
    Minus,
    Plus,
}

#[derive(Args, Debug, Clone)]
pub struct TlArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ShiftArg::Minus)]
    pub shift: ShiftArg,
    /// also compute the Hom spaces of the generators
    #[arg(long)]
    pub homs: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SoergelArgs {
    #[arg(long)]
    pub n: usize,
    /// JSON file with lists a, b, c, d and matrix f; defaults to the known solution
    #[arg(long)]
    pub scalars: Option<PathBuf>,
    /// override one scalar, e.g. b1=2 or f1_2=-1/2
    #[arg(long = "set")]
    pub set: Vec<String>,
    #[arg(long, value_enum, default_value_t = ShiftArg::Minus)]
    pub shift: ShiftArg,
}

#[derive(Args, Debug, Clone)]
pub struct DecatArgs {
    #[arg(long)]
    pub n: usize,
    /// flip one sign of the K0 map (negative control)
    #[arg(long)]
    pub perturb: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PoincareArgs {
    /// curve files, or directories with a manifest.json
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// restrict to one line
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SgnArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// words up to this length are explored from each curve
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[arg(long)]
    pub bare: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FaithArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub maxlen: usize,
}

#[derive(Args, Debug, Clone)]
pub struct K0Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 8)]
    pub maxlen: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Both sides of every braid relation on the sum of all projectives
    BraidRelations(RelArgs),
    /// sigma sigma^-1 is the identity
    Inverse(InverseArgs),
    /// Extension of scalars intertwines the type B and type A actions
    Equivariance(EquivArgs),
    /// Temperley-Lieb decompositions of tensor words in U_j
    Tl(TlArgs),
    /// Relations between the images of the Soergel generators
    SoergelRelations(SoergelArgs),
    /// Decategorified square between the type B and type A K0 matrices
    DecatSquare(DecatArgs),
    /// Poincare polynomial equals trigraded intersection number
    PoincareItrigr(PoincareArgs),
    /// Parity rule for sgn under sigma_1 and invariance under sigma_j, j >= 2
    SgnLaw(SgnArgs),
    /// Every short reduced word acts nontrivially
    FaithfulnessSample(FaithArgs),
    /// K0 class of an image equals the matrix product
    K0Functoriality(K0Args),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum SideArg {
    /// two-sided graded dimensions, against the intersection form display
    #[default]
    TwoSided,
    /// dimensions over k_j, against the Cartan matrix display
    Left,
}

#[derive(Args, Debug, Clone)]
pub struct CartanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
}

pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub reports: Vec<Report>,
}

impl Cli {
    /// Checks the ranges that clap cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        let need = |n: usize, lo: usize, what: &str| -> Result<()> {
            if n < lo {
                bail!("--n must be at least {} for {}", lo, what)
            }
            Ok(())
        };
        match &self.cmd {
            Cmd::Algebra { cmd: AlgebraCmd::Info(a) } => need(a.n, 1, "an algebra"),
            Cmd::Act(a) => need(a.alg.n, 1, "act"),
            Cmd::Burau(b) => need(b.n, 1, "burau"),
            Cmd::Cartan(c) => need(c.n, 2, "cartan"),
            Cmd::Curve { .. } => Ok(()),
            Cmd::Check { cmd } => match cmd {
                CheckCmd::BraidRelations(r) => need(r.n, 2, "braid relations"),
                CheckCmd::Inverse(r) => need(r.rel.n, 1, "inverse"),
                CheckCmd::Equivariance(e) => need(e.n, 2, "equivariance"),
                CheckCmd::Tl(t) => need(t.n, 2, "tl"),
                CheckCmd::SoergelRelations(s) => need(s.n, 2, "soergel relations"),
                CheckCmd::DecatSquare(d) => need(d.n, 2, "the decategorified square"),
                CheckCmd::FaithfulnessSample(f) => {
                    need(f.n, 2, "faithfulness")?;
                    if f.maxlen > checks::FAITH_MAXLEN {
                        bail!("--maxlen is limited to {}", checks::FAITH_MAXLEN);
                    }
                    Ok(())
                }
                CheckCmd::K0Functoriality(k) => need(k.n, 2, "k0 functoriality"),
                CheckCmd::PoincareItrigr(_) | CheckCmd::SgnLaw(_) => Ok(()),
            },
        }
    }
}

/// Parses arguments (without the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<RunOutput>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut argv: Vec<std::ffi::OsString> = vec!["zigcat".into()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv)?;
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Result<RunOutput> {
    cli.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().context("thread pool")?;
    let reports = pool.install(|| dispatch(cli))?;
    let code = if reports.iter().any(Report::failed) { 1 } else { 0 };
    Ok(RunOutput { code, stdout: render(&reports, cli.format), reports })
}

fn dispatch(cli: &Cli) -> Result<Vec<Report>> {
    match &cli.cmd {
        Cmd::Algebra { cmd: AlgebraCmd::Info(a) } => checks::algebra_info(a),
        Cmd::Act(a) => checks::act(a),
        Cmd::Burau(b) => checks::burau(b),
        Cmd::Curve { cmd } => checks::curve(cmd),
        Cmd::Cartan(c) => checks::cartan(c),
        Cmd::Check { cmd } => match cmd {
            CheckCmd::BraidRelations(r) => checks::braid_relations(r),
            CheckCmd::Inverse(r) => checks::inverse(r),
            CheckCmd::Equivariance(e) => checks::equivariance(e),
            CheckCmd::Tl(t) => checks::tl(t),
            CheckCmd::SoergelRelations(s) => checks::soergel(s),
            CheckCmd::DecatSquare(d) => checks::decat_square(d),
            CheckCmd::PoincareItrigr(p) => checks::poincare_itrigr(p),
            CheckCmd::SgnLaw(s) => checks::sgn_law(s),
            CheckCmd::FaithfulnessSample(f) => checks::faithfulness_sample(f),
            CheckCmd::K0Functoriality(k) => checks::k0_functoriality(k),
        },
    }
}
