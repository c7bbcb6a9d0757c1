use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nbqc::construct::{Code, CodeSpec, IndexAssignment};
use nbqc::cost::{self, CostParams, Variant, Weights};
use nbqc::decode::montecarlo::render_csv as sim_csv;
use nbqc::decode::{run_monte_carlo, DecoderConfig, Partition, Quantizer, SimRow};
use nbqc::shuffle::{route_schedule, SlotPlan};
use nbqc::{CodeFile, Error};

mod config;

#[derive(Parser)]
#[command(
    name = "nbqc",
    version,
    about = "Non-binary QC-LDPC construction, verification, decoding and network costing"
)]
#[command(args_override_self = true)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionArg {
    Layer1,
    Layer2,
}

impl From<PartitionArg> for Partition {
    fn from(p: PartitionArg) -> Self {
        match p {
            PartitionArg::Layer1 => Partition::LayerI,
            PartitionArg::Layer2 => Partition::LayerII,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and write its parity-check matrix.
    Construct(ConstructArgs),
    /// Check the structural properties of a code file.
    Verify(VerifyArgs),
    /// Monte-Carlo FER/BER of the layered Min-Max decoder.
    Simulate(SimulateArgs),
    /// Print the VNU-to-VNU movement between consecutive layers.
    Schedule(CodeArgs),
    /// Route every layer transition through the switch model.
    Route(CodeArgs),
    /// Shuffle-network hardware counts and savings.
    Cost(CostArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    class: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    gamma: usize,
    #[arg(long)]
    rho: usize,
    /// Primitive polynomial in hex, e.g. 0x13.
    #[arg(long)]
    poly: Option<String>,
    /// Order the Class-II subgroups randomly with this seed.
    #[arg(long, value_name = "SEED")]
    random_surjective: Option<u64>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_name = "PATH")]
    path: Option<PathBuf>,
    #[arg(long)]
    code: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Comma-separated Eb/N0 values in dB; `inf` for a noiseless channel.
    #[arg(long, value_delimiter = ',', required = true)]
    snr_list: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 10)]
    max_iter: usize,
    #[arg(long, value_enum, default_value_t = PartitionArg::Layer1)]
    partition: PartitionArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed-point format `BQ,BF`.
    #[arg(long)]
    quant: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum, default_value_t = PartitionArg::Layer1)]
    partition: PartitionArg,
}

#[derive(Args)]
struct CostArgs {
    #[arg(long)]
    bq: u64,
    #[arg(long)]
    nm: u64,
    #[arg(long)]
    dc: u64,
    /// LUT word size (default: ceil(log2 q)).
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    gamma: u64,
    #[arg(long)]
    rho: u64,
    /// `wires`, `all`, or `category=weight,...`.
    #[arg(long, default_value = "wires")]
    weights: String,
    /// Copies merged into one by the Class-II network.
    #[arg(long, default_value_t = 16)]
    k: u64,
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// Validation or domain error, or a failed check.
    Domain(String),
    /// Unreadable or malformed input.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn load(path: &Path) -> Result<CodeFile, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    CodeFile::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn construct(a: ConstructArgs, format: Format) -> CmdResult {
    let ConstructArgs {
        class,
        m,
        c,
        n,
        t,
        gamma,
        rho,
        poly,
        random_surjective: random,
        output,
    } = a;
    let output = output.as_path();
    let mut spec = if class == 1 {
        if t.is_some() || random.is_some() {
            return Err(Failure::Domain(
                "Class-I codes take neither --t nor --random-surjective".into(),
            ));
        }
        match (c, n) {
            (Some(c), Some(n)) => CodeSpec::class1(m, c, n, gamma, rho),
            _ => {
                return Err(Failure::Domain(
                    "Class-I step 1 (factorization) needs --c and --n".into(),
                ))
            }
        }
    } else {
        let t =
            t.ok_or_else(|| Failure::Domain("Class-II step 1 (factorization) needs --t".into()))?;
        let s = CodeSpec::class2(m, t, gamma, rho);
        if c.is_some_and(|c| c != s.c) || n.is_some_and(|n| n != s.n) {
            return Err(Failure::Domain(format!(
                "Class-II step 1 (factorization) fixes c = 2^(m-t) = {} and n = 2^t = {}",
                s.c, s.n
            )));
        }
        s
    };
    if let Some(p) = poly {
        let hex = p.trim_start_matches("0x").trim_start_matches("0X");
        let v = u32::from_str_radix(hex, 16)
            .map_err(|_| Failure::Domain(format!("bad polynomial `{p}`")))?;
        spec = spec.with_poly(v);
    }
    if let Some(seed) = random {
        spec = spec.with_assignment(IndexAssignment::Random { seed });
    }
    let code = Code::build(&spec)?;
    let text = CodeFile::from_code(&code).to_text()?;
    fs::write(output, text).map_err(|e| Failure::Input(format!("{}: {e}", output.display())))?;
    let h = &code.h;
    let density = h.nnz() as f64 / (h.rows() * h.cols()) as f64;
    Ok(match format {
        Format::Text => format!(
            "wrote {}: {}x{} over GF({}), nnz={} density={:.6}\n",
            output.display(),
            h.rows(),
            h.cols(),
            code.field.q(),
            h.nnz(),
            density
        ),
        Format::Csv => format!(
            "rows,cols,q,nnz,density\n{},{},{},{},{}\n",
            h.rows(),
            h.cols(),
            code.field.q(),
            h.nnz(),
            density
        ),
    })
}

fn verify(path: &Path, format: Format) -> CmdResult {
    let file = load(path)?;
    let report = file.verify()?;
    let text = match format {
        Format::Text => {
            let verdict = if report.all_passed() {
                "all checks passed"
            } else {
                "some checks FAILED"
            };
            format!("{}{verdict}\n", report.render_text())
        }
        Format::Csv => report.render_csv(),
    };
    if report.all_passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Domain(format!(
            "{} structural check(s) failed",
            report.failed().count()
        )))
    }
}

fn parse_quant(s: &str) -> Result<Quantizer, Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::Domain(format!("--quant expects BQ,BF, got `{s}`")))?;
    let bq = a
        .trim()
        .parse()
        .map_err(|_| Failure::Domain(format!("bad BQ `{a}`")))?;
    let bf = b
        .trim()
        .parse()
        .map_err(|_| Failure::Domain(format!("bad BF `{b}`")))?;
    Ok(Quantizer::new(bq, bf)?)
}

fn render_sim_text(rows: &[SimRow]) -> String {
    let mut out = format!(
        "{:>8} {:>8} {:>8} {:>10} {:>12} {:>12} {:>9}\n",
        "snr_db", "trials", "frames", "symbols", "fer", "ber", "avg_iter"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>8} {:>8} {:>8} {:>10} {:>12.6e} {:>12.6e} {:>9.3}\n",
            r.snr_db,
            r.trials,
            r.frame_errors,
            r.symbol_errors,
            r.fer(),
            r.ber(),
            r.avg_iters()
        ));
    }
    out
}

fn simulate(a: SimulateArgs, format: Format) -> CmdResult {
    let SimulateArgs {
        code,
        snr_list,
        trials,
        max_iter,
        partition,
        seed,
        quant,
        workers,
    } = a;
    let file = load(&code)?;
    let field = file.field()?;
    let config = DecoderConfig {
        max_iter,
        quant: quant.as_deref().map(parse_quant).transpose()?,
        seed,
        ..DecoderConfig::default()
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Failure::Domain("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Failure::Domain(e.to_string()))?;
    let rows = pool.install(|| {
        run_monte_carlo(
            &field,
            &file.h,
            &snr_list,
            trials,
            partition.into(),
            &config,
        )
    })?;
    Ok(match format {
        Format::Text => render_sim_text(&rows),
        Format::Csv => sim_csv(&rows),
    })
}

fn schedule(path: &Path, partition: Partition, format: Format) -> CmdResult {
    let file = load(path)?;
    let code = file.rebuild()?;
    if code.h != file.h {
        return Err(Failure::Domain(
            "stored matrix does not match its header parameters".into(),
        ));
    }
    let plan = SlotPlan::for_code(&code, partition)?;
    let layers = plan.layers();
    let mut out = match format {
        Format::Text => format!(
            "class={} partition={} layers={} vnus={}\n",
            code.spec.class.number(),
            partition.name(),
            layers,
            plan.groups * plan.group_size
        ),
        Format::Csv => "from_layer,to_layer,src,dst\n".to_string(),
    };
    for (t, p) in plan.transitions().iter().enumerate() {
        let to = (t + 1) % layers;
        match format {
            Format::Text => out.push_str(&format!("transition {t}->{to}: {}\n", p.pairs())),
            Format::Csv => {
                for (s, &d) in p.map().iter().enumerate() {
                    out.push_str(&format!("{t},{to},{s},{d}\n"));
                }
            }
        }
    }
    Ok(out)
}

fn route(path: &Path, partition: Partition, format: Format) -> CmdResult {
    let file = load(path)?;
    let code = file.rebuild()?;
    if code.h != file.h {
        return Err(Failure::Domain(
            "stored matrix does not match its header parameters".into(),
        ));
    }
    let report = route_schedule(&code, partition)?;
    let text = match format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
    };
    if report.all_verified() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Domain(
            "internal error: a transition was not realized by its fabric".into(),
        ))
    }
}

fn cost_cmd(a: CostArgs, format: Format) -> CmdResult {
    let CostArgs {
        bq,
        nm,
        dc,
        p,
        q,
        gamma,
        rho,
        weights,
        k,
    } = a;
    let params = CostParams::new(bq, nm, dc, p, q, gamma, rho)?;
    let weights: Weights = weights
        .parse()
        .map_err(|e: Error| Failure::Domain(e.to_string()))?;
    let proposed = [Variant::P1, Variant::P2, Variant::P3, Variant::P4];
    let refs = [Variant::Ref4, Variant::Ref5];
    let fraction = cost::fractional_saving(k)?;
    match format {
        Format::Csv => {
            let mut out = cost::render_csv(&Variant::ALL, &params);
            out.push_str("\ndesign,reference,saving\n");
            for a in proposed {
                for b in refs {
                    let s =
                        cost::savings(&cost::cost(a, &params), &cost::cost(b, &params), &weights)?;
                    out.push_str(&format!("{a},{b},{s}\n"));
                }
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = cost::render_report(&Variant::ALL, &params);
            out.push_str("savings (weighted):\n");
            for a in proposed {
                for b in refs {
                    let (ca, cb) = (cost::cost(a, &params), cost::cost(b, &params));
                    let s = cost::savings(&ca, &cb, &weights)?;
                    let per: Vec<String> = cost::category_savings(&ca, &cb)
                        .into_iter()
                        .filter_map(|(c, r)| r.map(|r| format!("{}={:.4}", c.name(), r)))
                        .collect();
                    out.push_str(&format!(
                        "  {a} vs {b}: {:.4} ({:.2}%)  [{}]\n",
                        s,
                        100.0 * s,
                        per.join(" ")
                    ));
                }
            }
            out.push_str(&format!(
                "class-II network sharing: (k-1)/k = {}/{k} = {fraction} ({:.2}%)\n",
                k.saturating_sub(1),
                100.0 * fraction
            ));
            Ok(out)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let format = cli.format;
    match cli.cmd {
        Cmd::Construct(a) => construct(a, format),
        Cmd::Verify(a) => {
            let p = a
                .code
                .or(a.path)
                .ok_or_else(|| Failure::Input("verify needs a code file".into()))?;
            verify(&p, format)
        }
        Cmd::Simulate(a) => simulate(a, format),
        Cmd::Schedule(a) => schedule(&a.code, a.partition.into(), format),
        Cmd::Route(a) => route(&a.code, a.partition.into(), format),
        Cmd::Cost(a) => cost_cmd(a, format),
    }
}

fn main() -> ExitCode {
    let subcommands = [
        "construct",
        "verify",
        "simulate",
        "schedule",
        "route",
        "cost",
    ];
    let argv = match config::expand_config(std::env::args_os().collect(), &subcommands) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
