use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pisot::beta::parse_betas;
use pisot::format::{approx_json, parse_int_list, parse_ratio, ratio, round12, sig12};
use pisot::report::{self, envelope, render};
use pisot::svg::{angles_svg, SvgStyle};
use pisot::table;
use pisot::{load_spec, write_spec, SharedPrefixStream};
use pisot_core::algebraic::{pv_analysis, pv_decay, pv_root};
use pisot_core::cantor::{self, CantorSpec, StaircaseValue};
use pisot_core::crystal;
use pisot_core::quantum::{self, QuantumState};
use pisot_core::spacing::{self, AngleList, DEFAULT_GAP_TOLERANCE};
use pisot_core::words;
use pisot_core::{Alphabet, IntPolynomial, Letter, PisotMode, Word};

#[derive(Parser)]
#[command(name = "pisot", version, about = "Substitutions, Pisot numbers and optimal spacing on the circle")]
struct Cli {
    /// Output format; each command has a plain-text or CSV default.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Bits of precision for certified intervals.
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    /// Seed for every random choice; required by measurement-driven runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a substitution given as a spec file or a built-in name
    /// (fibonacci, pell, padovan, thue-morse).
    Subst {
        spec: String,
        #[command(subcommand)]
        action: SubstAction,
    },
    /// Factor complexity and finite-n entropy of a sequence prefix.
    Entropy(EntropyArgs),
    /// Angle sequences on the circle.
    Spacing {
        #[command(flatten)]
        style: StyleArgs,
        #[command(subcommand)]
        mode: SpacingMode,
    },
    /// Pisot–Vijayaraghavan test for a monic integer polynomial.
    Pv(PvArgs),
    /// Hiller's function and crystallographic orders.
    Hiller(HillerArgs),
    /// Numeric values of words and generalized Cantor sets.
    Cantor {
        #[command(subcommand)]
        action: CantorAction,
    },
    /// Quantum substitutions of the first and second kind.
    Quantum {
        #[command(subcommand)]
        action: QuantumAction,
    },
}

#[derive(Subcommand)]
enum SubstAction {
    /// Rules, incidence matrix and primitivity.
    Show,
    /// Print the canonical spec file.
    Write,
    /// sigma^k applied to one letter.
    Iterate {
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value = "0")]
        letter: String,
        /// Print as `{0,1,0}`.
        #[arg(long)]
        braced: bool,
        /// Print sigma^0 .. sigma^k, one per line.
        #[arg(long)]
        all: bool,
    },
    /// Prefix of the fixed point starting with a letter.
    Fixpoint {
        #[arg(long, default_value = "0")]
        letter: String,
        #[arg(long)]
        length: usize,
        /// Use the fixed point of sigma^power.
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Spectral analysis of the incidence matrix (JSON).
    Analyze {
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Loose,
    Strict,
}

#[derive(Args)]
struct EntropyArgs {
    /// Fixed point of this substitution (spec file or built-in name).
    #[arg(long, group = "source")]
    spec: Option<String>,
    /// A literal word over the digits 0..alphabet-size.
    #[arg(long, group = "source")]
    word: Option<String>,
    /// A uniformly random word of this length (uses --seed, default 0).
    #[arg(long, group = "source")]
    random: Option<usize>,
    #[arg(long, default_value_t = 2)]
    alphabet_size: usize,
    #[arg(long, default_value = "0")]
    letter: String,
    #[arg(long)]
    n_max: usize,
    /// Prefix length for --spec.
    #[arg(long, default_value_t = 10_000)]
    prefix_len: usize,
}

#[derive(Args)]
struct StyleArgs {
    #[arg(long, default_value_t = 800)]
    svg_size: u32,
    #[arg(long, default_value_t = 1.0)]
    stroke_width: f64,
    #[arg(long, default_value_t = 2.5)]
    point_radius: f64,
    /// Tolerance for grouping equal gaps.
    #[arg(long, default_value_t = DEFAULT_GAP_TOLERANCE)]
    gap_tolerance: f64,
}

#[derive(Subcommand)]
enum SpacingMode {
    /// The n-th roots of unity.
    Roots {
        #[arg(short, long)]
        n: usize,
    },
    /// theta_k = 2 pi frac(lambda^k) for the PV root of a polynomial.
    Cusps {
        /// Coefficients, constant term first: -1,-1,1 is x^2 - x - 1.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        count: usize,
    },
    /// Walk driven by a substitution's fixed point.
    Drive(WalkArgs),
    /// Walk driven by measurements of the second-kind quantum substitution.
    Quantum(WalkArgs),
}

#[derive(Args)]
struct WalkArgs {
    #[arg(long)]
    spec: String,
    /// One angle per letter: numbers or tau, rho, 1+sqrt2, golden-angle.
    #[arg(long)]
    beta: String,
    #[arg(long)]
    count: usize,
}

#[derive(Args)]
struct PvArgs {
    /// Coefficients, constant term first: -1,-1,1 is x^2 - x - 1.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Also report |s_n - lambda^n| for n = 1..=decay.
    #[arg(long, default_value_t = 0)]
    decay: usize,
}

#[derive(Args)]
struct HillerArgs {
    n: Option<u64>,
    /// Rows n = 1..=N.
    #[arg(long)]
    table: Option<u64>,
    /// Orders up to --max realizable in this dimension.
    #[arg(long)]
    allowed: Option<u64>,
    #[arg(long, default_value_t = 36)]
    max: u64,
}

#[derive(Args)]
struct CantorSpecArgs {
    #[arg(long, default_value_t = 3)]
    alphabet_size: usize,
    /// Excluded letter, as its index.
    #[arg(long, default_value_t = 1)]
    excluded: u8,
}

#[derive(Subcommand)]
enum CantorAction {
    /// Hausdorff dimension log(|A|-1) / log|A|.
    Dim(CantorSpecArgs),
    /// Cantor function of a word avoiding the excluded letter.
    Value {
        #[command(flatten)]
        spec: CantorSpecArgs,
        #[arg(long)]
        word: String,
    },
    /// Staircase value at any word or rational point.
    Stair {
        #[command(flatten)]
        spec: CantorSpecArgs,
        #[arg(long, group = "point", required = true)]
        word: Option<String>,
        #[arg(long, group = "point")]
        at: Option<String>,
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Exact value of a word in base |A|.
    Numeric {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        word: String,
    },
    /// Nonterminating expansion of a rational in [0, 1].
    Repr {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        value: String,
        #[arg(long)]
        digits: usize,
    },
    /// Re-expand a word's value over another alphabet.
    Transition {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        digits: usize,
    },
}

#[derive(Subcommand)]
enum QuantumAction {
    /// Apply sigma-hat repeatedly to |S, length> or to a state file.
    FirstKind {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1, group = "start")]
        length: usize,
        #[arg(long, group = "start")]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = quantum::DEFAULT_SUPPORT_CAP)]
        cap: u128,
    },
    /// Quantum complexity and entropy estimate of a state file.
    Complexity {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Normalized power iteration of the incidence matrix.
    SecondKind {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
    },
    /// Same as `spacing quantum`.
    Simulate {
        #[command(flatten)]
        style: StyleArgs,
        #[command(flatten)]
        walk: WalkArgs,
    },
}

/// Bad invocation rather than bad data: exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

struct Ctx {
    format: Option<Format>,
    bits: u32,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// The requested format if `allowed` has it, else the first entry.
    fn pick(&self, allowed: &[Option<Format>]) -> Result<Option<Format>> {
        if allowed.contains(&self.format) {
            Ok(self.format)
        } else if self.format.is_none() {
            Ok(allowed[0])
        } else {
            Err(usage("this command does not support the requested --format"))
        }
    }
}

fn letter_of(a: &Alphabet, sym: &str) -> Result<Letter> {
    a.lex(sym).ok_or_else(|| anyhow!("unknown letter {sym:?}"))
}

fn poly_arg(text: &str) -> Result<IntPolynomial> {
    let c = parse_int_list(text).ok_or_else(|| usage(format!("cannot parse polynomial {text:?}")))?;
    Ok(IntPolynomial::from_i64(&c)?)
}

fn sized(k: usize) -> Result<Alphabet> {
    Ok(Alphabet::with_size(k)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { format: cli.format, bits: cli.precision_bits, seed: cli.seed, out: cli.out };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(ctx: &Ctx, cmd: Command) -> Result<()> {
    match cmd {
        Command::Subst { spec, action } => subst(ctx, &spec, action),
        Command::Entropy(args) => entropy(ctx, args),
        Command::Spacing { style, mode } => spacing_cmd(ctx, &style, mode),
        Command::Pv(args) => pv(ctx, args),
        Command::Hiller(args) => hiller(ctx, args),
        Command::Cantor { action } => cantor_cmd(ctx, action),
        Command::Quantum { action } => quantum_cmd(ctx, action),
    }
}

fn braced(w: &Word) -> String {
    let parts: Vec<&str> = w.letters().iter().map(|&l| w.alphabet().symbol(l)).collect();
    format!("{{{}}}", parts.join(","))
}

fn subst(ctx: &Ctx, spec: &str, action: SubstAction) -> Result<()> {
    let sigma = load_spec(spec)?;
    let a = sigma.alphabet().clone();
    match action {
        SubstAction::Show => match ctx.pick(&[None, Some(Format::Json)])? {
            None => {
                let m = sigma.incidence_matrix();
                ctx.emit(&format!("{sigma}\nincidence matrix: {m}\nprimitive: {}\n", sigma.is_primitive()))
            }
            _ => ctx.emit(&render(&report::substitution_json(&sigma))),
        },
        SubstAction::Write => {
            ctx.pick(&[None, Some(Format::Json)])?;
            ctx.emit(&format!("{}\n", write_spec(&sigma)))
        }
        SubstAction::Iterate { k, letter, braced: br, all } => {
            let l = letter_of(&a, &letter)?;
            let show = |w: &Word| if br { braced(w) } else { w.to_string() };
            let range = if all { 0..=k } else { k..=k };
            match ctx.pick(&[None, Some(Format::Json)])? {
                None => {
                    let mut out = String::new();
                    for n in range {
                        out.push_str(&show(&sigma.iterate(l, n)?));
                        out.push('\n');
                    }
                    ctx.emit(&out)
                }
                _ => {
                    let rows = range
                        .map(|n| Ok(json!({"k": n, "word": sigma.iterate(l, n)?.to_string()})))
                        .collect::<Result<Vec<_>>>()?;
                    ctx.emit(&render(&envelope("iterates", json!({"substitution": report::spec_json(&sigma), "letter": letter, "iterates": rows}))))
                }
            }
        }
        SubstAction::Fixpoint { letter, length, power } => {
            let l = letter_of(&a, &letter)?;
            let s = sigma.power(power)?;
            let w = s.fixed_point_prefix(l, length)?;
            match ctx.pick(&[None, Some(Format::Json)])? {
                None => ctx.emit(&format!("{w}\n")),
                _ => ctx.emit(&render(&envelope(
                    "fixed-point",
                    json!({"substitution": report::spec_json(&sigma), "letter": letter, "power": power, "prefix": w.to_string()}),
                ))),
            }
        }
        SubstAction::Analyze { mode } => {
            ctx.pick(&[Some(Format::Json), None])?;
            let mode = match mode {
                ModeArg::Loose => PisotMode::Loose,
                ModeArg::Strict => PisotMode::Strict,
            };
            ctx.emit(&render(&report::pisot_report_json(&sigma, &sigma.classify_pisot(mode))))
        }
    }
}

fn entropy(ctx: &Ctx, args: EntropyArgs) -> Result<()> {
    let prefix = if let Some(spec) = &args.spec {
        let sigma = load_spec(spec)?;
        let l = letter_of(sigma.alphabet(), &args.letter)?;
        let sigma = match sigma.has_fixed_point(l) {
            true => sigma,
            false => match sigma.fixed_point_power(l) {
                Some(p) => sigma.power(p)?,
                None => bail!("no power of the substitution has a fixed point starting with {:?}", args.letter),
            },
        };
        if args.prefix_len < args.n_max {
            return Err(usage("--prefix-len must be at least --n-max"));
        }
        SharedPrefixStream::new(sigma.fixed_point(l)?).prefix(args.prefix_len)
    } else if let Some(w) = &args.word {
        Word::parse(&sized(args.alphabet_size)?, w)?
    } else if let Some(len) = args.random {
        let a = sized(args.alphabet_size)?;
        let mut rng = quantum::measurement_rng(ctx.seed.unwrap_or(0));
        let k = a.len();
        let letters = (0..len).map(|_| ((quantum::uniform(&mut rng) * k as f64) as usize).min(k - 1) as Letter).collect();
        Word::new(&a, letters)?
    } else {
        return Err(usage("one of --spec, --word or --random is required"));
    };
    if prefix.len() < args.n_max || args.n_max == 0 {
        return Err(usage(format!("n-max must be in 1..={}", prefix.len())));
    }
    let profile = words::complexity_profile(&prefix, args.n_max)?;
    match ctx.pick(&[Some(Format::Csv), Some(Format::Json)])? {
        Some(Format::Json) => {
            let rows: Vec<_> = (1..=profile.max_n())
                .map(|n| {
                    let e = profile.entropy(n).expect("n in range");
                    json!({"n": n, "p_n": profile.get(n), "estimate": round12(e.value), "sturmian": profile.is_sturmian_at(n), "truncated": e.truncated})
                })
                .collect();
            ctx.emit(&render(&envelope(
                "complexity-profile",
                json!({"prefix_length": profile.prefix_length, "alphabet_size": profile.alphabet_size, "rows": rows}),
            )))
        }
        _ => ctx.emit(&table::profile_csv(&profile)),
    }
}

fn style_of(s: &StyleArgs, polyline: bool) -> SvgStyle {
    SvgStyle { size: s.svg_size, stroke_width: s.stroke_width, point_radius: s.point_radius, petals: !polyline, polyline }
}

fn emit_angles(ctx: &Ctx, style: &StyleArgs, mode: &str, params: serde_json::Value, angles: &AngleList, polyline: bool) -> Result<()> {
    match ctx.pick(&[Some(Format::Csv), Some(Format::Svg), Some(Format::Json)])? {
        Some(Format::Svg) => ctx.emit(&angles_svg(angles, &style_of(style, polyline), &format!("pisot spacing {mode}"))),
        Some(Format::Json) => {
            let gaps = spacing::gap_statistics(angles, style.gap_tolerance)?;
            ctx.emit(&render(&report::spacing_json(mode, params, angles, &gaps)))
        }
        _ => ctx.emit(&table::angles_csv(angles)),
    }
}

fn spacing_cmd(ctx: &Ctx, style: &StyleArgs, mode: SpacingMode) -> Result<()> {
    match mode {
        SpacingMode::Roots { n } => {
            let a = spacing::roots_of_unity(n)?;
            emit_angles(ctx, style, "roots", json!({"n": n}), &a, false)
        }
        SpacingMode::Cusps { poly, count } => {
            let p = poly_arg(&poly)?;
            let a = spacing::cusp_curve(&p, count, ctx.bits)?;
            emit_angles(ctx, style, "cusps", json!({"polynomial": report::poly_json(&p), "count": count}), &a, true)
        }
        SpacingMode::Drive(w) => {
            let sigma = load_spec(&w.spec)?;
            let betas = parse_betas(&w.beta, ctx.bits)?;
            let a = spacing::substitution_spacing(&sigma, &betas, w.count)?;
            let params = json!({"substitution": report::spec_json(&sigma), "betas": betas, "count": w.count});
            emit_angles(ctx, style, "drive", params, &a, false)
        }
        SpacingMode::Quantum(w) => simulate(ctx, style, w),
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}

fn simulate(ctx: &Ctx, style: &StyleArgs, w: WalkArgs) -> Result<()> {
    let seed = ctx.seed.ok_or_else(|| usage("measurement-driven runs require --seed"))?;
    let sigma = load_spec(&w.spec)?;
    let betas = parse_betas(&w.beta, ctx.bits)?;
    let run = quantum::quantum_spacing_simulate(&sigma, &betas, w.count, seed)?;
    let perron = quantum::perron_probabilities(&sigma.incidence_matrix(), ctx.bits).unwrap_or_default();
    let manifest = render(&report::run_manifest(&sigma, &betas, &w.beta, w.count, seed, &run, &perron));
    if ctx.pick(&[Some(Format::Csv), Some(Format::Svg), Some(Format::Json)])? == Some(Format::Json) {
        return ctx.emit(&manifest);
    }
    if let Some(out) = &ctx.out {
        let path = manifest_path(out);
        std::fs::write(&path, &manifest).with_context(|| format!("writing {}", path.display()))?;
    }
    let params = json!({"seed": seed});
    emit_angles(ctx, style, "quantum", params, &run.angles, false)
}

fn pv(ctx: &Ctx, args: PvArgs) -> Result<()> {
    let p = poly_arg(&args.poly)?;
    let a = pv_analysis(&p)?;
    let is_pv = a.verdict != pisot_core::algebraic::PvVerdict::NotPv;
    let root = if is_pv { Some(pv_root(&p)?.approx(ctx.bits)) } else { None };
    let decay = if args.decay > 0 {
        if !is_pv {
            bail!("{p} is not PV; no decay to report");
        }
        (1..=args.decay).map(|n| Ok((n, pv_decay(&p, n, None)?))).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    match ctx.pick(&[None, Some(Format::Json)])? {
        None => {
            let c = a.root_counts;
            let mut out = format!(
                "polynomial: {p}\nPV: {is_pv}\nverdict: {}\nroots inside/on/outside the unit circle: {}/{}/{}\nirreducible: {}\n",
                report::verdict_name(a.verdict),
                c.inside,
                c.on_circle,
                c.outside,
                a.irreducible.map_or("unknown".to_string(), |b| b.to_string())
            );
            if let Some(r) = &root {
                out.push_str(&format!("root: {} in [{}, {}]\n", sig12(r.to_f64()), ratio(r.lower()), ratio(r.upper())));
            }
            for (n, d) in &decay {
                out.push_str(&format!("decay {n}: {}\n", sig12(d.to_f64())));
            }
            ctx.emit(&out)
        }
        _ => ctx.emit(&render(&report::pv_json(&p, &a, root.as_ref(), &decay))),
    }
}

fn hiller(ctx: &Ctx, args: HillerArgs) -> Result<()> {
    if let Some(d) = args.allowed {
        let orders: Vec<u64> = crystal::allowed_orders(d, args.max).into_iter().collect();
        return match ctx.pick(&[None, Some(Format::Json)])? {
            None => {
                let list: Vec<String> = orders.iter().map(u64::to_string).collect();
                ctx.emit(&format!("{}\n", list.join(", ")))
            }
            _ => ctx.emit(&render(&envelope("allowed-orders", json!({"dimension": d, "max": args.max, "orders": orders})))),
        };
    }
    let rows: Vec<(u64, u64)> = match (args.table, args.n) {
        (Some(t), None) => (1..=t).map(|n| Ok((n, crystal::hiller(n)?))).collect::<Result<_>>()?,
        (None, Some(n)) => vec![(n, crystal::hiller(n)?)],
        _ => return Err(usage("give either N, --table N or --allowed D")),
    };
    match ctx.pick(&[None, Some(Format::Csv), Some(Format::Json)])? {
        Some(Format::Csv) => ctx.emit(&table::pairs_csv(("n", "hil"), rows.iter().map(|(n, h)| (n.to_string(), h.to_string())))),
        Some(Format::Json) => {
            let rows: Vec<_> = rows.iter().map(|(n, h)| json!({"n": n, "hil": h})).collect();
            ctx.emit(&render(&envelope("hiller", json!({"rows": rows}))))
        }
        _ if args.table.is_some() => {
            let mut out = String::from("n & Hil(n)\n");
            for (n, h) in rows {
                out.push_str(&format!("{n} & {h}\n"));
            }
            ctx.emit(&out)
        }
        _ => ctx.emit(&format!("{}\n", rows[0].1)),
    }
}

fn cantor_spec(s: &CantorSpecArgs) -> Result<CantorSpec> {
    Ok(CantorSpec::new(&sized(s.alphabet_size)?, s.excluded)?)
}

fn emit_value(ctx: &Ctx, kind: &str, text: String, fields: serde_json::Value) -> Result<()> {
    match ctx.pick(&[None, Some(Format::Json)])? {
        None => ctx.emit(&format!("{text}\n")),
        _ => ctx.emit(&render(&envelope(kind, fields))),
    }
}

fn cantor_cmd(ctx: &Ctx, action: CantorAction) -> Result<()> {
    match action {
        CantorAction::Dim(s) => {
            let spec = cantor_spec(&s)?;
            let d = cantor::hausdorff_dimension(&spec)?;
            let k = s.alphabet_size;
            emit_value(
                ctx,
                "hausdorff-dimension",
                format!("log({})/log({k}) = {}", k - 1, sig12(d.to_f64())),
                json!({"alphabet_size": k, "expression": format!("log({})/log({k})", k - 1), "dimension": approx_json(&d)}),
            )
        }
        CantorAction::Value { spec, word } => {
            let c = cantor_spec(&spec)?;
            let w = Word::parse(c.alphabet(), &word)?;
            let v = cantor::cantor_function_value(&c, &w)?;
            emit_value(ctx, "cantor-value", ratio(&v), json!({"word": word, "value": ratio(&v)}))
        }
        CantorAction::Stair { spec, word, at, digits } => {
            let c = cantor_spec(&spec)?;
            let v = match (word, at) {
                (Some(w), _) => cantor::cantor_staircase(&c, &Word::parse(c.alphabet(), &w)?)?,
                (None, Some(q)) => {
                    let q = parse_ratio(&q).ok_or_else(|| usage(format!("cannot parse rational {q:?}")))?;
                    cantor::cantor_function_at(&c, &q, digits)?
                }
                (None, None) => return Err(usage("give --word or --at")),
            };
            let (text, fields) = match v {
                StaircaseValue::Plateau(p) => (ratio(&p), json!({"plateau": true, "value": ratio(&p)})),
                StaircaseValue::Bounds(lo, hi) => (
                    format!("[{}, {}]", ratio(&lo), ratio(&hi)),
                    json!({"plateau": false, "lower": ratio(&lo), "upper": ratio(&hi)}),
                ),
            };
            emit_value(ctx, "cantor-staircase", text, fields)
        }
        CantorAction::Numeric { alphabet_size, word } => {
            let w = Word::parse(&sized(alphabet_size)?, &word)?;
            let v = cantor::numeric_value(&w)?;
            emit_value(ctx, "numeric-value", ratio(&v), json!({"word": word, "value": ratio(&v)}))
        }
        CantorAction::Repr { alphabet_size, value, digits } => {
            let q = parse_ratio(&value).ok_or_else(|| usage(format!("cannot parse rational {value:?}")))?;
            let w = cantor::representation(&sized(alphabet_size)?, &q, digits)?;
            emit_value(ctx, "representation", w.to_string(), json!({"value": ratio(&q), "digits": digits, "word": w.to_string()}))
        }
        CantorAction::Transition { from, to, word, digits } => {
            let w = Word::parse(&sized(from)?, &word)?;
            let t = cantor::alphabet_transition(&w, &sized(to)?, digits)?;
            emit_value(
                ctx,
                "alphabet-transition",
                t.word.to_string(),
                json!({"word": t.word.to_string(), "truncation_bound": ratio(&t.truncation_bound)}),
            )
        }
    }
}

fn read_state(path: &Path) -> Result<QuantumState> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(report::parse_state(&text)?)
}

fn emit_state(ctx: &Ctx, psi: &QuantumState, renormalized: bool) -> Result<()> {
    match ctx.pick(&[None, Some(Format::Json), Some(Format::Csv)])? {
        Some(Format::Json) => ctx.emit(&render(&report::state_json(psi))),
        Some(Format::Csv) => ctx.emit(&table::records_csv(psi)),
        _ => {
            let mut out = String::new();
            if renormalized {
                out.push_str("# renormalized: distinct words collided\n");
            }
            for (w, re, im) in psi.records() {
                out.push_str(&format!("{w} {} {}\n", sig12(re), sig12(im)));
            }
            ctx.emit(&out)
        }
    }
}

fn quantum_cmd(ctx: &Ctx, action: QuantumAction) -> Result<()> {
    match action {
        QuantumAction::FirstKind { spec, steps, length, state, cap } => {
            let sigma = load_spec(&spec)?;
            let mut psi = match state {
                Some(p) => read_state(&p)?,
                None => quantum::symmetric_state(sigma.alphabet(), length, cap)?,
            };
            let mut renormalized = false;
            for _ in 0..steps {
                let e = quantum::apply_first_kind(&sigma, &psi)?;
                renormalized |= e.renormalized;
                psi = e.state;
            }
            emit_state(ctx, &psi, renormalized)
        }
        QuantumAction::Complexity { state, n } => {
            let psi = read_state(&state)?;
            let c = quantum::quantum_complexity(&psi, n)?;
            let e = quantum::quantum_entropy_estimate(&psi, n)?;
            emit_value(
                ctx,
                "quantum-complexity",
                format!("complexity {}\nentropy {}", sig12(c), sig12(e)),
                json!({"n": n, "complexity": round12(c), "entropy_estimate": round12(e)}),
            )
        }
        QuantumAction::SecondKind { spec, start, steps, tol } => {
            let sigma = load_spec(&spec)?;
            let l = letter_of(sigma.alphabet(), &start)?;
            let m = sigma.incidence_matrix();
            let lim = quantum::second_kind_limit(&m, l, steps, tol)?;
            let perron = quantum::perron_probabilities(&m, ctx.bits);
            match ctx.pick(&[None, Some(Format::Json)])? {
                None => {
                    let mut out = format!("iterations {} converged {}\n", lim.iterations, lim.converged);
                    for (a, p) in sigma.alphabet().letters().zip(&lim.probabilities) {
                        out.push_str(&format!("Pr({}) = {}\n", sigma.alphabet().symbol(a), sig12(*p)));
                    }
                    ctx.emit(&out)
                }
                _ => ctx.emit(&render(&report::second_kind_json(&sigma, &lim, perron.as_deref()))),
            }
        }
        QuantumAction::Simulate { style, walk } => simulate(ctx, &style, walk),
    }
}
