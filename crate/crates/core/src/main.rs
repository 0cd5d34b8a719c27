use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hk_lattice::classification::{
    k3_triples, k3sq_figure, k3sq_records, mirror_admissible_records, EmbeddingRecord, Hilb2Figure, MirrorExample,
};
use hk_lattice::lattice::LatticeError;
use hk_lattice::mukai::{self, MukaiVector, Surface};
use hk_lattice::scenario::{Scenario, ScenarioError};
use hk_lattice::{Error, IntegralLattice, NikulinTriple};

#[derive(Parser)]
#[command(
    name = "hk-lattice",
    version,
    about = "Exact lattice computations for brane involutions and hyperkähler mirrors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of an integral lattice.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Classification data sets.
    Figure {
        #[arg(long, value_enum)]
        id: FigureId,
        /// Emit `r\ta\tdelta` rows instead of JSON.
        #[arg(long)]
        tsv: bool,
    },
    /// Mirror period, Kähler class and wall obstructions for a scenario.
    Mirror {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Brane type of a scenario's involution and its row of the mirror table.
    Involution {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Mukai vector predicates.
    Mukai {
        #[command(subcommand)]
        command: MukaiCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Rank, signature, determinant, discriminant group and 2-elementary triple.
    Invariants {
        /// Gram file: rank on the first line, then the rows.
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureId {
    K3,
    #[value(name = "k3sq-plus")]
    K3sqPlus,
    #[value(name = "k3sq-minus")]
    K3sqMinus,
    Ex51,
    Ex52,
    Ex53,
    Ex54,
}

#[derive(Subcommand)]
enum MukaiCommand {
    /// Dimension `v² + 2` of the moduli space.
    Dim(VectorArgs),
    /// Whether a universal family exists by the gcd criterion.
    Fine(VectorArgs),
    /// Lattice conditions for a reflexive K3 surface.
    #[command(allow_negative_numbers = true)]
    Reflexive { h_sq: i64, hd: i64, d_sq: i64 },
    /// Mukai vector of the Hilbert scheme of points.
    Hilbert {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "k3")]
        surface: String,
    },
}

#[derive(clap::Args)]
struct VectorArgs {
    /// `r;d1,...,dk;s` with `D` in Picard-basis coordinates.
    #[arg(long, allow_hyphen_values = true)]
    vector: String,
    /// Picard Gram matrix as JSON rows, e.g. `[[-12]]`.
    #[arg(long, default_value = "[]", allow_hyphen_values = true)]
    picard_gram: String,
}

enum Failure {
    Input(String),
    Engine(Error),
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Input(m) => Failure::Input(m),
            ScenarioError::Engine(e) => Failure::Engine(e),
        }
    }
}

fn input_err(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Scalar(_) => "scalar",
        Error::Lattice(_) => "lattice",
        Error::Classification(_) => "classification",
        Error::Construct(_) => "construction",
        Error::Mirror(_) => "mirror",
        Error::Involution(_) => "involution",
        Error::Mukai(_) => "mukai",
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{text}");
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Engine(Error::Lattice(LatticeError::Parse(e.to_string()))))?;
    out(&text);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            out(&json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }).to_string());
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Lattice { command: LatticeCommand::Invariants { file } } => lattice_invariants(&file),
        Command::Figure { id, tsv } => figure(id, tsv),
        Command::Mirror { scenario } => emit(&Scenario::load(&scenario)?.run_mirror()?),
        Command::Involution { scenario } => emit(&Scenario::load(&scenario)?.run_involution()?),
        Command::Mukai { command } => mukai_cmd(command),
    }
}

#[derive(Serialize)]
struct Invariants {
    rank: usize,
    signature: (usize, usize),
    det: String,
    disc_group: Vec<String>,
    triple: Option<NikulinTriple>,
}

fn lattice_invariants(file: &PathBuf) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| input_err(format!("{}: {e}", file.display())))?;
    let l = IntegralLattice::parse_gram_text(&text).map_err(input_err)?;
    let group = l.discriminant_group().map_err(|e| Failure::Engine(e.into()))?;
    let triple = l.two_elementary_invariants().ok();
    emit(&Invariants {
        rank: l.rank(),
        signature: l.signature(),
        det: l.det().to_string(),
        disc_group: group.elementary_divisors.iter().map(ToString::to_string).collect(),
        triple,
    })
}

fn figure(id: FigureId, tsv: bool) -> Result<(), Failure> {
    let records: Option<Vec<EmbeddingRecord>> = match id {
        FigureId::K3 => None,
        FigureId::K3sqPlus => Some(k3sq_records(Hilb2Figure::Plus)),
        FigureId::K3sqMinus => Some(k3sq_records(Hilb2Figure::Minus)),
        FigureId::Ex51 => Some(mirror_admissible_records(MirrorExample::Ex51)),
        FigureId::Ex52 => Some(mirror_admissible_records(MirrorExample::Ex52)),
        FigureId::Ex53 => Some(mirror_admissible_records(MirrorExample::Ex53)),
        FigureId::Ex54 => Some(mirror_admissible_records(MirrorExample::Ex54)),
    };
    let triples: BTreeSet<NikulinTriple> = match (id, &records) {
        (FigureId::K3, _) => k3_triples().into_iter().collect(),
        (FigureId::K3sqPlus, _) => k3sq_figure(Hilb2Figure::Plus),
        (FigureId::K3sqMinus, _) => k3sq_figure(Hilb2Figure::Minus),
        (_, records) => records.iter().flatten().map(|r| r.t).collect(),
    };
    if tsv {
        let mut text = String::from("r\ta\tdelta");
        for t in &triples {
            text.push_str(&format!("\n{}\t{}\t{}", t.r, t.a, t.delta));
        }
        out(&text);
        return Ok(());
    }
    let name = id.to_possible_value().map(|v| v.get_name().to_string());
    emit(&json!({
        "id": name,
        "count": triples.len(),
        "triples": triples,
        "records": records,
    }))
}

fn picard_lattice(text: &str) -> Result<IntegralLattice, Failure> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| input_err(format!("--picard-gram: {e}")))?;
    if rows.is_empty() {
        return Ok(IntegralLattice::zero());
    }
    IntegralLattice::new(rows).map_err(|e| input_err(format!("--picard-gram: {e}")))
}

fn parse_vector(args: &VectorArgs) -> Result<(MukaiVector, IntegralLattice), Failure> {
    let v: MukaiVector = args.vector.parse().map_err(input_err)?;
    let picard = picard_lattice(&args.picard_gram)?;
    if v.d.len() != picard.rank() {
        return Err(input_err(format!(
            "D has {} coordinates but the Picard lattice has rank {}",
            v.d.len(),
            picard.rank()
        )));
    }
    Ok((v, picard))
}

fn mukai_cmd(command: MukaiCommand) -> Result<(), Failure> {
    let engine = |e: mukai::MukaiError| Failure::Engine(e.into());
    match command {
        MukaiCommand::Dim(args) => {
            let (v, picard) = parse_vector(&args)?;
            let dim = mukai::moduli_dimension(&v, &picard).map_err(engine)?;
            emit(&json!({ "vector": v.to_string(), "dimension": i64::try_from(dim).unwrap_or(i64::MAX) }))
        }
        MukaiCommand::Fine(args) => {
            let (v, picard) = parse_vector(&args)?;
            emit(&json!({ "vector": v.to_string(), "fine": mukai::is_fine(&v, &picard).map_err(engine)? }))
        }
        MukaiCommand::Reflexive { h_sq, hd, d_sq } => emit(&mukai::is_reflexive_datum(h_sq, hd, d_sq)),
        MukaiCommand::Hilbert { n, surface } => {
            let surface: Surface = surface.parse().map_err(input_err)?;
            let v = mukai::hilbert_vector(n, surface, 0).map_err(input_err)?;
            let dim = mukai::moduli_dimension(&v, &IntegralLattice::zero()).map_err(engine)?;
            emit(&json!({ "vector": v.to_string(), "dimension": i64::try_from(dim).unwrap_or(i64::MAX) }))
        }
    }
}
