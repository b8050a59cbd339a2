//! `ldrelay` command-line interface.
//!
//! Exit codes: 0 success, 1 I/O or unreadable input, 2 usage or validation
//! error, 3 a check ran and failed (verification mismatch, decode failure).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{capacity, construct_scheme, CapacityReport};
use crate::codec::Codebook;
use crate::gf2::Gf2Matrix;
use crate::network::{compose_gm, compose_gs, transmit, CodingScheme, NetworkParams};
use crate::oracle::{verify_grid, DEFAULT_BIT_BUDGET};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ldrelay", version, about = "Linear capacity of the diamond relay network with a disturbing node")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Gains {
    /// Gain S -> A
    #[arg(long)]
    pub n1: usize,
    /// Gain S -> B
    #[arg(long)]
    pub n2: usize,
    /// Gain A -> D
    #[arg(long)]
    pub n3: usize,
    /// Gain B -> D
    #[arg(long)]
    pub n4: usize,
    /// Gain M -> A and M -> B
    #[arg(long)]
    pub m: usize,
}

impl Gains {
    fn params(&self) -> NetworkParams {
        NetworkParams::new(self.n1, self.n2, self.n3, self.n4, self.m)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form capacity, regime and bound breakdown.
    Capacity {
        #[command(flatten)]
        gains: Gains,
        #[arg(long)]
        json: bool,
    },
    /// Build an optimal scheme and write G_A, G_B as matrix files.
    Construct {
        #[command(flatten)]
        gains: Gains,
        #[arg(long, value_name = "PATH")]
        out_ga: PathBuf,
        #[arg(long, value_name = "PATH")]
        out_gb: PathBuf,
    },
    /// Rate of a scheme given as matrix files.
    Rate {
        #[command(flatten)]
        gains: Gains,
        #[arg(long, value_name = "PATH")]
        ga: PathBuf,
        #[arg(long, value_name = "PATH")]
        gb: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Random encode/transmit/decode round trips over the optimal scheme.
    Simulate {
        #[command(flatten)]
        gains: Gains,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compare closed form and brute force on [0, G]^5.
    Verify {
        #[arg(long, value_name = "G")]
        max_gain: usize,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BIT_BUDGET)]
        bits_cap: usize,
        #[arg(long, value_name = "N")]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Capacity over a grid of parameters. Ranges are `N` or `LO-HI` (inclusive).
    Sweep {
        #[arg(long, value_name = "RANGE")]
        n1: GainRange,
        #[arg(long, value_name = "RANGE")]
        n2: GainRange,
        #[arg(long, value_name = "RANGE")]
        n3: GainRange,
        #[arg(long, value_name = "RANGE")]
        n4: GainRange,
        #[arg(long, value_name = "RANGE")]
        m: GainRange,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

/// Inclusive range of gains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GainRange {
    pub lo: usize,
    pub hi: usize,
}

impl GainRange {
    pub fn values(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for GainRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not a gain or LO-HI range"))
        };
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range `{s}` has lower bound above upper bound"));
        }
        Ok(GainRange { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn capacity_table(r: &CapacityReport) -> String {
    let mut out = String::new();
    let terms: Vec<String> = r.bound_terms.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(out, "params    {}", r.params);
    let _ = writeln!(out, "q         {}", r.params.q());
    let _ = writeln!(out, "case      {}", r.regime.case);
    let _ = writeln!(out, "swapped   {}", r.regime.swapped);
    let _ = writeln!(out, "capacity  {}", r.capacity);
    let _ = writeln!(out, "k         {}", opt(r.k));
    let _ = writeln!(out, "j         {}", opt(r.j));
    let _ = writeln!(out, "bound     min({})", terms.join(", "));
    let _ = writeln!(out, "cut       {}", r.cut);
    out
}

fn cmd_capacity(gains: &Gains, json: bool, out: &mut String) -> CmdResult {
    let report = capacity(&gains.params());
    out.push_str(&if json { to_json(&report) } else { capacity_table(&report) });
    Ok(EXIT_OK)
}

fn cmd_construct(gains: &Gains, out_ga: &Path, out_gb: &Path, out: &mut String) -> CmdResult {
    let p = gains.params();
    let report = capacity(&p);
    let scheme = construct_scheme(&p);
    let rate = crate::network::achievable_rate(&p, &scheme).expect("constructed at dimension q");
    for (path, g) in [(out_ga, scheme.g_a()), (out_gb, scheme.g_b())] {
        std::fs::write(path, g.to_text())
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    }
    let _ = writeln!(out, "params    {p}");
    let _ = writeln!(out, "case      {}", report.regime.case);
    let _ = writeln!(out, "rate      {rate}");
    Ok(EXIT_OK)
}

fn read_matrix(path: &Path) -> Result<Gf2Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    Gf2Matrix::from_text(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct RateReport {
    params: NetworkParams,
    rank_gs: usize,
    rank_intersection: usize,
    rate: usize,
}

fn cmd_rate(gains: &Gains, ga: &Path, gb: &Path, json: bool, out: &mut String) -> CmdResult {
    let p = gains.params();
    let (g_a, g_b) = (read_matrix(ga)?, read_matrix(gb)?);
    let q = p.q();
    for (name, g) in [("G_A", &g_a), ("G_B", &g_b)] {
        if g.shape() != (q, q) {
            return Err(Failure::usage(format!(
                "{name} is {}x{}, expected {q}x{q} for these gains",
                g.rows(),
                g.cols()
            )));
        }
    }
    let scheme = CodingScheme::new(g_a, g_b).expect("shapes checked");
    let gs = compose_gs(&p, &scheme).expect("shapes checked");
    let gm = compose_gm(&p, &scheme).expect("shapes checked");
    let report = RateReport {
        params: p,
        rank_gs: gs.rank(),
        rank_intersection: gs.rank_intersection(&gm).expect("shapes checked"),
        rate: gs.rank_deficit(&gm).expect("shapes checked"),
    };
    if json {
        out.push_str(&to_json(&report));
    } else {
        let _ = writeln!(out, "params              {p}");
        let _ = writeln!(out, "rank(G_S)           {}", report.rank_gs);
        let _ = writeln!(out, "rank(G_S ∩ G_M)     {}", report.rank_intersection);
        let _ = writeln!(out, "rate                {}", report.rate);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SimulationReport {
    params: NetworkParams,
    capacity: usize,
    rate: usize,
    seed: u64,
    trials: usize,
    successes: usize,
}

fn random_column(rng: &mut ChaCha8Rng, len: usize) -> Gf2Matrix {
    let bits: Vec<u8> = (0..len).map(|_| rng.random::<bool>() as u8).collect();
    Gf2Matrix::column(&bits)
}

fn cmd_simulate(gains: &Gains, trials: usize, seed: u64, json: bool, out: &mut String) -> CmdResult {
    let p = gains.params();
    let scheme = construct_scheme(&p);
    let gs = compose_gs(&p, &scheme).expect("constructed at dimension q");
    let gm = compose_gm(&p, &scheme).expect("constructed at dimension q");
    let cb = Codebook::build(&gs, &gm).expect("square transfer matrices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    for _ in 0..trials {
        let msg = random_column(&mut rng, cb.rate());
        let x_m = random_column(&mut rng, p.q());
        let x_s = cb.encode(&msg).expect("message sized to rate");
        let y = transmit(&p, &scheme, &x_s, &x_m).expect("vectors sized to q");
        if cb.decode(&y).as_ref() == Ok(&msg) {
            successes += 1;
        }
    }
    let report = SimulationReport {
        params: p,
        capacity: capacity(&p).capacity,
        rate: cb.rate(),
        seed,
        trials,
        successes,
    };
    if json {
        out.push_str(&to_json(&report));
    } else {
        let _ = writeln!(out, "params    {p}");
        let _ = writeln!(out, "capacity  {}", report.capacity);
        let _ = writeln!(out, "rate      {}", report.rate);
        let _ = writeln!(out, "seed      {seed}");
        let _ = writeln!(out, "decoded   {successes}/{trials}");
    }
    Ok(if successes == trials { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_verify(
    max_gain: usize,
    bits_cap: usize,
    jobs: Option<usize>,
    json: bool,
    out: &mut String,
    err: &mut String,
) -> CmdResult {
    let run = || verify_grid(max_gain, bits_cap);
    let report = match jobs {
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::io(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    out.push_str(&if json { to_json(&report) } else { report.to_table() });
    let _ = writeln!(err, "elapsed {:.3}s", report.elapsed.as_secs_f64());
    Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Serialize)]
struct SweepRow {
    n1: usize,
    n2: usize,
    n3: usize,
    n4: usize,
    m: usize,
    q: usize,
    case: String,
    capacity: usize,
    cut: usize,
}

fn cmd_sweep(ranges: [GainRange; 5], format: OutputFormat, out: &mut String) -> CmdResult {
    let [r1, r2, r3, r4, rm] = ranges;
    let mut rows = Vec::new();
    for n1 in r1.values() {
        for n2 in r2.values() {
            for n3 in r3.values() {
                for n4 in r4.values() {
                    for m in rm.values() {
                        let p = NetworkParams::new(n1, n2, n3, n4, m);
                        let r = capacity(&p);
                        rows.push(SweepRow {
                            n1,
                            n2,
                            n3,
                            n4,
                            m,
                            q: p.q(),
                            case: r.regime.case.to_string(),
                            capacity: r.capacity,
                            cut: r.cut,
                        });
                    }
                }
            }
        }
    }
    match format {
        OutputFormat::Json => out.push_str(&to_json(&rows)),
        OutputFormat::Csv => {
            out.push_str("n1,n2,n3,n4,m,q,case,capacity,cut\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n1, r.n2, r.n3, r.n4, r.m, r.q, r.case, r.capacity, r.cut
                );
            }
        }
        OutputFormat::Table => {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>3} {:>3} {:>3} {:>3}  {:<6} {:>8} {:>4}",
                "n1", "n2", "n3", "n4", "m", "q", "case", "capacity", "cut"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>3} {:>3} {:>3}  {:<6} {:>8} {:>4}",
                    r.n1, r.n2, r.n3, r.n4, r.m, r.q, r.case, r.capacity, r.cut
                );
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let (mut out, mut err) = (String::new(), String::new());
    let result = match &cli.command {
        Command::Capacity { gains, json } => cmd_capacity(gains, *json, &mut out),
        Command::Construct {
            gains,
            out_ga,
            out_gb,
        } => cmd_construct(gains, out_ga, out_gb, &mut out),
        Command::Rate {
            gains,
            ga,
            gb,
            json,
        } => cmd_rate(gains, ga, gb, *json, &mut out),
        Command::Simulate {
            gains,
            trials,
            seed,
            json,
        } => cmd_simulate(gains, *trials, *seed, *json, &mut out),
        Command::Verify {
            max_gain,
            bits_cap,
            jobs,
            json,
        } => cmd_verify(*max_gain, *bits_cap, *jobs, *json, &mut out, &mut err),
        Command::Sweep {
            n1,
            n2,
            n3,
            n4,
            m,
            format,
        } => cmd_sweep([*n1, *n2, *n3, *n4, *m], *format, &mut out),
    };
    let _ = stdout.write_all(out.as_bytes());
    let _ = stderr.write_all(err.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
