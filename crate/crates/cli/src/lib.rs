//! The `simred` command-line tool.

pub mod pairfile;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use simred_core::{
    apply_plan, assert_equal_path_sets, brute_codewords, brute_errors, build_code_trellis,
    build_error_trellis, check_gh_relation, enumerate_paths, min_weight_path, search_plans,
    simultaneous_reduce, suggest_backward_shift, syndrome, unshift_received,
    verify_simultaneous_reduction, BlockSequence, GhPair, OracleConfig, Poly, PolyMatrix,
    ShiftPlan, ShiftedFrame, Trellis,
};

use pairfile::{format_pair, parse_pair};

#[derive(Parser, Debug)]
#[command(name = "simred", version, about = "Simultaneous code/error-trellis reduction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check G(D) H^T(D) = 0 and full row ranks.
    CheckGh(PairArg),
    /// Suggest backward-shift exponents and search for the best plan.
    Suggest {
        #[command(flatten)]
        pair: PairArg,
        /// Largest exponent tried by the plan search.
        #[arg(long, default_value_t = 3)]
        max_exponent: u32,
    },
    /// Apply a plan and print the transformed pair.
    Transform {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        plan: PathBuf,
    },
    /// Apply a plan (or the best searched one), then row-reduce.
    Reduce {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_exponent: u32,
    },
    /// Build the code-trellis (reduced and shifted when a plan is given).
    CodeTrellis(TrellisArgs),
    /// Build the error-trellis for received data.
    ErrorTrellis(ReceivedArgs),
    /// Minimum-weight error path and corrected codeword.
    Decode(ReceivedArgs),
    /// Compare original and reduced trellises path by path.
    Verify(ReceivedArgs),
    /// Compare trellis path sets with brute-force enumeration.
    Oracle {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, default_value_t = 4)]
        n_blocks: usize,
        /// Random syndromes tested per run.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct PairArg {
    /// File with `G = ...` and `H = ...` lines.
    pub pair: PathBuf,
}

#[derive(Args, Debug)]
pub struct TrellisArgs {
    #[command(flatten)]
    pub pair: PairArg,
    #[arg(long)]
    pub n_blocks: usize,
    #[arg(long)]
    pub plan: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReceivedArgs {
    #[command(flatten)]
    pub trellis: TrellisArgs,
    /// File with the real received blocks; pad blocks are appended.
    #[arg(long, conflicts_with = "seed")]
    pub received: Option<PathBuf>,
    /// Draw a random codeword and flip bits instead of reading a file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Bit flip probability used with `--seed`.
    #[arg(long, default_value_t = 0.1)]
    pub flip: f64,
}

/// Text written to the output plus the process exit status.
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }

    fn check(output: String, passed: bool) -> Self {
        Outcome {
            output,
            status: if passed { 0 } else { 1 },
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_pair(arg: &PairArg) -> Result<GhPair> {
    let text = read(&arg.pair)?;
    let file = parse_pair(&text).with_context(|| format!("in {}", arg.pair.display()))?;
    file.into_pair()
        .with_context(|| format!("in {}", arg.pair.display()))
}

fn load_plan(path: &Path, n: usize) -> Result<ShiftPlan> {
    let plan: ShiftPlan = read(path)?
        .parse()
        .with_context(|| format!("in {}", path.display()))?;
    if plan.n() != n {
        bail!("{}: plan has {} columns, code length is {n}", path.display(), plan.n());
    }
    Ok(plan)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn rows(m: &PolyMatrix) -> Vec<String> {
    m.row_strings()
}

fn strings(set: &BTreeSet<BlockSequence>) -> Vec<String> {
    set.iter().map(ToString::to_string).collect()
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Random codeword of `n_blocks` blocks with each bit flipped with
/// probability `flip`.
fn random_received(g: &PolyMatrix, n_blocks: usize, seed: u64, flip: f64) -> Result<BlockSequence> {
    if !(0.0..=1.0).contains(&flip) {
        bail!("flip probability {flip} outside [0, 1]");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = vec![Poly::ZERO; g.cols()];
    for p in 0..g.rows() {
        let free = n_blocks.saturating_sub(g.row_degree(p).unwrap_or(0) as usize);
        let u = Poly::from_bits(rng.gen_range(0..1u64 << free));
        for (j, c) in cols.iter_mut().enumerate() {
            *c += u * g.get(p, j);
        }
    }
    let mut z = BlockSequence::zeros(g.cols(), n_blocks);
    for k in 0..n_blocks {
        for (j, c) in cols.iter().enumerate() {
            let flipped = rng.gen_bool(flip);
            z.set_bit(k, j, c.coeff(k as u32) ^ flipped);
        }
    }
    Ok(z)
}

fn load_received(args: &ReceivedArgs, pair: &GhPair) -> Result<BlockSequence> {
    let n = args.trellis.n_blocks;
    let z = match (&args.received, args.seed) {
        (Some(path), _) => read(path)?
            .parse::<BlockSequence>()
            .with_context(|| format!("in {}", path.display()))?,
        (None, Some(seed)) => random_received(pair.g(), n, seed, args.flip)?,
        (None, None) => bail!("give --received FILE or --seed N"),
    };
    if z.width() != pair.n() {
        bail!("received blocks have width {}, code length is {}", z.width(), pair.n());
    }
    if z.len() < n {
        bail!("received {} blocks, --n-blocks is {n}", z.len());
    }
    if z.blocks()[n..].iter().any(|&b| b != 0) {
        bail!("received blocks beyond --n-blocks must be zero");
    }
    Ok(z.truncated(n))
}

fn trellis_output(t: &Trellis, format: Format, extra: serde_json::Value) -> String {
    match format {
        Format::Dot => t.to_dot(),
        Format::Json => {
            let mut doc = json!({
                "kind": format!("{:?}", t.kind()).to_lowercase(),
                "horizon": t.horizon(),
                "state_bits": t.state_bits(),
                "states": 1u64 << t.state_bits(),
                "states_per_time": t.states_per_time(),
                "path_count": t.path_count().to_string(),
            });
            if let (Some(d), Some(e)) = (doc.as_object_mut(), extra.as_object()) {
                d.extend(e.clone());
            }
            json(&doc)
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(e) = extra.as_object() {
                for (k, v) in e {
                    let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
                    let _ = writeln!(s, "{k}: {v}");
                }
            }
            let _ = writeln!(s, "kind: {:?}", t.kind());
            let _ = writeln!(s, "sections: {}", t.horizon());
            let _ = writeln!(s, "states: {} ({} bits)", 1u64 << t.state_bits(), t.state_bits());
            let per: Vec<String> = t.states_per_time().iter().map(usize::to_string).collect();
            let _ = writeln!(s, "states per time: {}", per.join(" "));
            let _ = writeln!(s, "paths: {}", t.path_count());
            s
        }
    }
}

fn cmd_check_gh(arg: &PairArg, format: Format) -> Result<Outcome> {
    let file = parse_pair(&read(&arg.pair)?).with_context(|| format!("in {}", arg.pair.display()))?;
    let (g, h) = (&file.g, &file.h);
    let product = g.mul_transpose(h)?;
    let holds = check_gh_relation(g, h)? && g.rows() + h.rows() == g.cols();
    let (gr, hr) = (g.rank(), h.rank());
    let nonzero: Vec<(usize, usize, String)> = (0..product.rows())
        .flat_map(|i| (0..product.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !product.get(i, j).is_zero())
        .map(|(i, j)| (i + 1, j + 1, product.get(i, j).to_string()))
        .collect();
    let output = match format {
        Format::Json => json(&json!({
            "holds": holds,
            "product": rows(&product),
            "g_rank": gr,
            "h_rank": hr,
            "n": g.cols(),
        })),
        _ => {
            let mut s = format!("G H^T = {product}\nrank G = {gr}, rank H = {hr}, n = {}\n", g.cols());
            for (i, j, p) in &nonzero {
                let _ = writeln!(s, "nonzero entry ({i},{j}): {p}");
            }
            let _ = writeln!(s, "GH relation: {}", if holds { "holds" } else { "fails" });
            s
        }
    };
    Ok(Outcome::check(output, holds))
}

fn cmd_suggest(arg: &PairArg, max_exponent: u32, format: Format) -> Result<Outcome> {
    let pair = load_pair(arg)?;
    let shifts = suggest_backward_shift(pair.h())?;
    let search = search_plans(&pair, max_exponent)?;
    let best = &search.best;
    let output = match format {
        Format::Json => json(&json!({
            "backward_shift": shifts,
            "max_exponent": max_exponent,
            "candidates": search.candidates,
            "legal": search.legal,
            "best_plan": best.plan.columns(),
            "csr_constant": best.csr_constant,
            "nu_before": best.nu_before,
            "nu_before_dual": best.nu_before_dual,
            "nu_after": best.nu_after,
            "nu_after_dual": best.nu_after_dual,
            "g_reduced": rows(best.reduced_pair.g()),
            "h_reduced": rows(best.reduced_pair.h()),
        })),
        _ => format!(
            "backward shift exponents: {}\nsearched {} plans ({} legal), max exponent {max_exponent}\nbest plan (g_div g_mul h_div h_mul), l = {}:\n{}nu: {} -> {}, nu_dual: {} -> {}\nG'' = {}\nH'' = {}\n",
            join(&shifts),
            search.candidates,
            search.legal,
            best.csr_constant,
            best.plan,
            best.nu_before,
            best.nu_after,
            best.nu_before_dual,
            best.nu_after_dual,
            best.reduced_pair.g(),
            best.reduced_pair.h(),
        ),
    };
    Ok(Outcome::ok(output))
}

fn cmd_transform(arg: &PairArg, plan: &Path, format: Format) -> Result<Outcome> {
    let pair = load_pair(arg)?;
    let plan = load_plan(plan, pair.n())?;
    let out = apply_plan(&pair, &plan)?;
    let output = match format {
        Format::Json => json(&json!({ "g": rows(out.g()), "h": rows(out.h()) })),
        _ => format_pair(out.g(), out.h()),
    };
    Ok(Outcome::ok(output))
}

fn cmd_reduce(arg: &PairArg, plan: Option<&Path>, max_exponent: u32, format: Format) -> Result<Outcome> {
    let pair = load_pair(arg)?;
    let report = match plan {
        Some(p) => simultaneous_reduce(&pair, &load_plan(p, pair.n())?)?,
        None => search_plans(&pair, max_exponent)?.best,
    };
    let output = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.to_string(),
    };
    Ok(Outcome::ok(output))
}

fn cmd_code_trellis(args: &TrellisArgs, format: Format) -> Result<Outcome> {
    let pair = load_pair(&args.pair)?;
    let n = args.n_blocks;
    let (t, extra) = match &args.plan {
        None => (build_code_trellis(pair.g(), n)?, json!({ "g": pair.g().to_string() })),
        Some(p) => {
            let frame = ShiftedFrame::new(&pair, &load_plan(p, pair.n())?, n)?;
            let g = frame.reduction.reduced_pair.g().to_string();
            (frame.code_trellis()?, json!({ "g": g, "shifted": true }))
        }
    };
    Ok(Outcome::ok(trellis_output(&t, format, extra)))
}

/// Received data, its frame and the error-trellis built from it.
struct ErrorSetup {
    received: BlockSequence,
    syndrome: BlockSequence,
    frame: Option<ShiftedFrame>,
    trellis: Trellis,
}

fn error_setup(args: &ReceivedArgs) -> Result<(GhPair, ErrorSetup)> {
    let pair = load_pair(&args.trellis.pair)?;
    let n = args.trellis.n_blocks;
    let real = load_received(args, &pair)?;
    let setup = match &args.trellis.plan {
        None => {
            let received = real.padded(n + pair.h().memory());
            let zeta = syndrome(&received, pair.h())?;
            let trellis = build_error_trellis(pair.h(), &zeta)?;
            ErrorSetup {
                received,
                syndrome: zeta,
                frame: None,
                trellis,
            }
        }
        Some(p) => {
            let frame = ShiftedFrame::new(&pair, &load_plan(p, pair.n())?, n)?;
            let received = frame.shift(&real, n)?;
            let zeta = syndrome(&received, frame.reduction.reduced_pair.h())?;
            let trellis = frame.error_trellis(&zeta)?;
            ErrorSetup {
                received,
                syndrome: zeta,
                frame: Some(frame),
                trellis,
            }
        }
    };
    Ok((pair, setup))
}

fn cmd_error_trellis(args: &ReceivedArgs, format: Format) -> Result<Outcome> {
    let (_, s) = error_setup(args)?;
    let extra = json!({
        "received": s.received.to_string(),
        "syndrome": s.syndrome.to_string(),
        "shifted": s.frame.is_some(),
    });
    Ok(Outcome::ok(trellis_output(&s.trellis, format, extra)))
}

fn cmd_decode(args: &ReceivedArgs, format: Format) -> Result<Outcome> {
    let (pair, s) = error_setup(args)?;
    let (e, weight) = min_weight_path(&s.trellis)?;
    let y = s.received.xor(&e)?;
    // back in the original time frame
    let (e0, y0) = match &s.frame {
        None => (e.clone(), y.clone()),
        Some(f) => {
            let len = args.trellis.n_blocks + pair.h().memory();
            let e0 = unshift_received(&e, &f.reduction.plan)?;
            let y0 = unshift_received(&y, &f.reduction.plan)?;
            (e0.padded(len).truncated(len), y0.padded(len).truncated(len))
        }
    };
    let output = match format {
        Format::Json => json(&json!({
            "received": s.received.to_string(),
            "syndrome": s.syndrome.to_string(),
            "error": e.to_string(),
            "weight": weight,
            "codeword": y.to_string(),
            "error_unshifted": e0.to_string(),
            "codeword_unshifted": y0.to_string(),
        })),
        _ => {
            let mut out = format!(
                "received:  {}\nsyndrome:  {}\nerror:     {e}\nweight:    {weight}\ncodeword:  {y}\n",
                s.received, s.syndrome
            );
            if s.frame.is_some() {
                let _ = write!(out, "error (original frame):    {e0}\ncodeword (original frame): {y0}\n");
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}

fn cmd_verify(args: &ReceivedArgs, format: Format) -> Result<Outcome> {
    let pair = load_pair(&args.trellis.pair)?;
    let Some(plan) = &args.trellis.plan else {
        bail!("verify needs --plan");
    };
    let plan = load_plan(plan, pair.n())?;
    let z = load_received(args, &pair)?;
    let report = verify_simultaneous_reduction(&pair, &plan, &z, args.trellis.n_blocks)?;
    let output = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.to_string(),
    };
    Ok(Outcome::check(output, report.passed()))
}

fn cmd_oracle(arg: &PairArg, n_blocks: usize, trials: usize, seed: u64, format: Format) -> Result<Outcome> {
    let pair = load_pair(arg)?;
    let cfg = OracleConfig::default();
    let mut lines = Vec::new();
    let mut passed = true;
    for n in pair.g().memory().max(1)..=n_blocks {
        let t = enumerate_paths(&build_code_trellis(pair.g(), n)?);
        let r = assert_equal_path_sets(&t, &brute_codewords(pair.g(), n, &cfg)?);
        passed &= r.passed();
        lines.push((format!("code N={n}"), r));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = pair.h();
    for trial in 1..=trials {
        let blocks = (0..n_blocks).map(|_| rng.gen_range(0..1u64 << pair.n())).collect();
        let z = BlockSequence::new(pair.n(), blocks)?.padded(n_blocks + h.memory());
        let zeta = syndrome(&z, h)?;
        let t = enumerate_paths(&build_error_trellis(h, &zeta)?);
        let r = assert_equal_path_sets(&t, &brute_errors(h, &zeta, n_blocks, None, &cfg)?);
        passed &= r.passed();
        lines.push((format!("error #{trial} syndrome {zeta}"), r));
    }
    let output = match format {
        Format::Json => json(&json!({
            "pass": passed,
            "checks": lines.iter().map(|(name, r)| json!({
                "name": name,
                "pass": r.passed(),
                "trellis_paths": r.left_size,
                "brute_force_paths": r.right_size,
                "only_trellis": strings(&r.only_left),
                "only_brute_force": strings(&r.only_right),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            for (name, r) in &lines {
                let _ = write!(s, "{name}: {r}");
            }
            let _ = writeln!(s, "result: {}", if passed { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Outcome::check(output, passed))
}

/// Executes one command and returns its output and exit status.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let f = cli.format;
    if f == Format::Dot && !matches!(cli.command, Command::CodeTrellis(_) | Command::ErrorTrellis(_)) {
        bail!("--format dot is only available for code-trellis and error-trellis");
    }
    match &cli.command {
        Command::CheckGh(p) => cmd_check_gh(p, f),
        Command::Suggest { pair, max_exponent } => cmd_suggest(pair, *max_exponent, f),
        Command::Transform { pair, plan } => cmd_transform(pair, plan, f),
        Command::Reduce {
            pair,
            plan,
            max_exponent,
        } => cmd_reduce(pair, plan.as_deref(), *max_exponent, f),
        Command::CodeTrellis(a) => cmd_code_trellis(a, f),
        Command::ErrorTrellis(a) => cmd_error_trellis(a, f),
        Command::Decode(a) => cmd_decode(a, f),
        Command::Verify(a) => cmd_verify(a, f),
        Command::Oracle {
            pair,
            n_blocks,
            trials,
            seed,
        } => cmd_oracle(pair, *n_blocks, *trials, *seed, f),
    }
}

/// Runs the tool and returns the process exit status: 0 on success, 1 when
/// a check fails, 2 on bad input.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &outcome.output) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", outcome.output);
            }
            outcome.status
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
