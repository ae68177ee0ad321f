//! `chanmaj`: command-line front end for the channel majorization library.
//!
//! Results go to standard output as JSON (or CSV for scalar tables); errors
//! go to standard error. Exit status 0 is success, 2 an input problem
//! (bad flags, unreadable or malformed files, domain and size errors) and 1
//! a solver or internal failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chanmaj::classical::{
    apply_superchannel, channel_majorizes, embed_output, is_completely_uniformity_preserving,
    is_mixing_superchannel, is_uniformity_preserving, standard_form,
};
use chanmaj::entropy::{max_extension, min_extension, regularized_min_extension};
use chanmaj::games::{operational_majorizes, pr_t, simulate_game};
use chanmaj::quantum::h_min_channel;
use chanmaj::vector::optimal_upper_bound;
use chanmaj::{
    tol, ClassicalChannel, ClassicalSuperchannel, EntropyFunction, QuantumChannel, TGame,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Parser, Debug)]
#[command(
    name = "chanmaj",
    version,
    about = "Majorization of classical and quantum channels"
)]
struct Cli {
    /// Output format; CSV is available for scalar results only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether N majorizes M and print a certificate.
    Majorize {
        #[arg(long = "n")]
        n: PathBuf,
        #[arg(long = "m")]
        m: PathBuf,
        /// Also run the predictability test on the grid with this denominator.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Canonical representative of the channel's equivalence class.
    StandardForm(ChannelArg),
    /// Optimal upper bound of the channel's columns.
    UpperBound(ChannelArg),
    /// Minimal and maximal entropy extensions and the regularized sequence.
    Entropy {
        #[command(flatten)]
        channel: ChannelArg,
        #[arg(long, default_value = "shannon")]
        entropy: String,
        #[arg(long, default_value_t = 1)]
        kmax: usize,
    },
    /// Optimal winning probability of a t-game.
    Game {
        #[command(flatten)]
        channel: ChannelArg,
        #[arg(long)]
        game: PathBuf,
    },
    /// Monte-Carlo estimate of a t-game next to the exact value.
    Simulate {
        #[command(flatten)]
        channel: ChannelArg,
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Min-entropy of a quantum channel given by Kraus operators.
    Qhmin(ChannelArg),
    /// Classify a classical superchannel, optionally applying it to a channel.
    VerifySuperchannel {
        #[arg(long)]
        superchannel: PathBuf,
        #[arg(long = "n")]
        n: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ChannelArg {
    #[arg(long)]
    channel: PathBuf,
}

/// A failure classified by exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) | Failure::Internal(msg) => f.write_str(msg),
        }
    }
}

impl From<chanmaj::Error> for Failure {
    fn from(e: chanmaj::Error) -> Self {
        if e.is_user_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed JSON in {}: {e}", path.display())))
}

/// Rounds every float in `v` to nine significant digits.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.*e}", SIGNIFICANT_DIGITS - 1)
                .parse()
                .expect("scientific notation parses");
            json!(rounded)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> CliResult<Value> {
    serde_json::to_value(t).map_err(|e| Failure::Internal(format!("serialization: {e}")))
}

/// Output before formatting: a JSON document, or rows of a CSV table.
enum Output {
    Json(Value),
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
        json: Value,
    },
}

impl Output {
    /// A flat object of scalars, printable as a one-row table.
    fn scalars(pairs: Vec<(&'static str, Value)>) -> Output {
        let header = pairs.iter().map(|(k, _)| *k).collect();
        let row = pairs.iter().map(|(_, v)| v.clone()).collect();
        let json = Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
        Output::Table {
            header,
            rows: vec![row],
            json,
        }
    }

    fn render(self, format: Format) -> CliResult<String> {
        match (self, format) {
            (Output::Json(v), Format::Json) | (Output::Table { json: v, .. }, Format::Json) => {
                Ok(format!("{}\n", round_numbers(v)))
            }
            (Output::Table { header, rows, .. }, Format::Csv) => {
                let csv_err = |e: csv::Error| Failure::Internal(format!("CSV output: {e}"));
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).map_err(csv_err)?;
                for row in rows {
                    let cells = row.into_iter().map(|c| match round_numbers(c) {
                        Value::String(s) => s,
                        Value::Null => String::new(),
                        other => other.to_string(),
                    });
                    w.write_record(cells).map_err(csv_err)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| Failure::Internal(format!("CSV output: {e}")))?;
                String::from_utf8(bytes).map_err(|e| Failure::Internal(e.to_string()))
            }
            (Output::Json(_), Format::Csv) => Err(Failure::Input(
                "CSV output is only available for scalar results".into(),
            )),
        }
    }
}

fn majorize(n: &Path, m: &Path, grid: Option<usize>) -> CliResult<Output> {
    let n: ClassicalChannel = read_json(n)?;
    let m: ClassicalChannel = read_json(m)?;
    // Unused outcomes do not affect majorization, so pad to a common size.
    let size = n.output_dim().max(m.output_dim());
    let (n, m) = (embed_output(&n, size)?, embed_output(&m, size)?);
    let cert = channel_majorizes(&n, &m)?;
    let mut out = json!({ "holds": cert.holds(), "certificate": to_value(&cert)? });
    if let Some(grid) = grid {
        out["grid_holds"] = json!(operational_majorizes(&n, &m, grid)?);
    }
    Ok(Output::Json(out))
}

fn entropy(path: &Path, spec: &str, kmax: usize) -> CliResult<Output> {
    let h: EntropyFunction = spec.parse()?;
    let channel: ClassicalChannel = read_json(path)?;
    let lower = min_extension(h, &channel)?;
    let upper = max_extension(h, &channel);
    let regularized = regularized_min_extension(h, &channel, kmax)?;
    let rows = regularized
        .iter()
        .enumerate()
        .map(|(k, r)| vec![json!(k + 1), json!(lower), json!(upper), json!(r)])
        .collect();
    Ok(Output::Table {
        header: vec!["k", "lower", "upper", "regularized"],
        rows,
        json: json!({
            "entropy": h.to_string(),
            "lower": lower,
            "upper": upper,
            "regularized": regularized,
        }),
    })
}

fn verify_superchannel(path: &Path, n: Option<&Path>) -> CliResult<Output> {
    let theta: ClassicalSuperchannel = read_json(path)?;
    let mut out = json!({
        "mixing": is_mixing_superchannel(&theta),
        "uniformity_preserving": is_uniformity_preserving(&theta),
        "completely_uniformity_preserving": is_completely_uniformity_preserving(&theta)?,
    });
    if let Some(n) = n {
        let n: ClassicalChannel = read_json(n)?;
        out["image"] = to_value(&apply_superchannel(&theta, &n)?)?;
    }
    Ok(Output::Json(out))
}

fn execute(command: Command) -> CliResult<Output> {
    match command {
        Command::Majorize { n, m, grid } => majorize(&n, &m, grid),
        Command::StandardForm(c) => {
            let channel: ClassicalChannel = read_json(&c.channel)?;
            Ok(Output::Json(to_value(&standard_form(&channel)?)?))
        }
        Command::UpperBound(c) => {
            let channel: ClassicalChannel = read_json(&c.channel)?;
            let r = optimal_upper_bound(&channel.column_vectors())?;
            Ok(Output::Json(json!({ "upper_bound": r.as_slice() })))
        }
        Command::Entropy {
            channel,
            entropy: spec,
            kmax,
        } => entropy(&channel.channel, &spec, kmax),
        Command::Game { channel, game } => {
            let n: ClassicalChannel = read_json(&channel.channel)?;
            let g: TGame = read_json(&game)?;
            Ok(Output::scalars(vec![("pr_t", json!(pr_t(&n, &g)?))]))
        }
        Command::Simulate {
            channel,
            game,
            rounds,
            seed,
            workers,
        } => {
            let n: ClassicalChannel = read_json(&channel.channel)?;
            let g: TGame = read_json(&game)?;
            let estimate = simulate_game(&n, &g, rounds, seed, workers)?;
            Ok(Output::scalars(vec![
                ("estimate", json!(estimate)),
                ("exact", json!(pr_t(&n, &g)?)),
                ("rounds", json!(rounds)),
                ("seed", json!(seed)),
            ]))
        }
        Command::Qhmin(c) => {
            let channel: QuantumChannel = read_json(&c.channel)?;
            Ok(Output::scalars(vec![(
                "h_min",
                json!(h_min_channel(&channel)?),
            )]))
        }
        Command::VerifySuperchannel { superchannel, n } => {
            verify_superchannel(&superchannel, n.as_deref())
        }
    }
}

fn apply_tolerance_override() -> CliResult<()> {
    match std::env::var("CHANMAJ_TOL") {
        Ok(raw) => {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("CHANMAJ_TOL is not a number: '{raw}'")))?;
            tol::set_cmp_tol(tol)?;
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(Failure::Input(format!("CHANMAJ_TOL: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_tolerance_override()
        .and_then(|()| execute(cli.command))
        .and_then(|out| out.render(cli.format));
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("chanmaj: {e}");
            ExitCode::from(e.code())
        }
    }
}
