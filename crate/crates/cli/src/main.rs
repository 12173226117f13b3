use std::fmt::Write as _;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use qcount::checks::{run_check, CheckRow};
use qcount::dirichlet::{a12, a6, coincidence_e3, coincidence_z12, ell};
use qcount::lattice::enumerate_shell;
use qcount::modelset::{default_shift, export, generate, BoundaryPolicy, ExportFormat, ModelSetConfig};
use qcount::shelling::{
    averaged_shelling, averaged_shelling_table, central_shell, central_shell_via_norm, class_name,
    AveragedShellingRow,
};
use qcount::window::{covariogram, euclid_hat, h1, h2_exact};
use qcount::zeta::{catalog, orbit_data, ZetaSystem};
use qcount::{Error, Q3Element, Q3Vector, Rational, ZSqrt3};

/// Longest table `count` will produce.
const MAX_TABLE: u64 = 10_000_000;

#[derive(Parser)]
#[command(name = "qcount", version, about = "Exact counting for the triangular lattice and the twelvefold module")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dirichlet-series coefficient tables.
    #[command(subcommand)]
    Count(CountCmd),
    /// Central and averaged shelling.
    #[command(subcommand)]
    Shell(ShellCmd),
    /// Window covariogram at one shift or along a symmetry axis.
    Covariogram(CovariogramArgs),
    #[command(subcommand)]
    Tiling(TilingCmd),
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Closed form against oracle, one row per case; exits 1 on mismatch.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Module {
    E3,
    E12,
}

#[derive(Subcommand)]
enum CountCmd {
    /// Sublattices of Z^n by index.
    Sublattices {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Similar sublattices (submodules) by index.
    Similar {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coincidence sublattices (submodules) by index.
    Coincidence {
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    PrimeForm,
    Norm,
    Oracle,
}

#[derive(Subcommand)]
enum ShellCmd {
    /// Number of points of Z[xi12] with x*conj(x) = r2.
    Central {
        #[arg(long)]
        r2: String,
        #[arg(long, value_enum, default_value_t = Method::PrimeForm)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Averaged shelling number of the shield tiling at r2, or the table of
    /// all radii with r2 <= --max.
    Averaged {
        #[arg(long, required_unless_present = "max", conflicts_with = "max")]
        r2: Option<String>,
        #[arg(long)]
        max: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Type1,
    Type2,
}

#[derive(clap::Args)]
struct CovariogramArgs {
    /// Shift "x;y" with components in Q(sqrt3).
    #[arg(long, required_unless_present = "profile", conflicts_with = "profile")]
    shift: Option<String>,
    #[arg(long, value_enum)]
    profile: Option<Profile>,
    #[arg(long, default_value_t = 21)]
    samples: u32,
}

#[derive(Subcommand)]
enum TilingCmd {
    /// Shield tiling patch as a cut-and-project set.
    Generate {
        /// Window shift "x;y"; defaults to a generic shift.
        #[arg(long)]
        shift: Option<String>,
        #[arg(long)]
        radius: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long, default_value = "reject-singular")]
        policy: String,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Fixed point and periodic orbit counts.
    Expand {
        #[arg(long)]
        system: String,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(clap::Args)]
struct OracleArgs {
    /// series, sublattices, ideals, coincidence, identities, shelling,
    /// averaged, closed-forms, modelset, zeta, euclid-hat, zeta-q-sqrt3 or
    /// shell-sample.
    check: String,
    #[arg(long)]
    max: Option<u64>,
    /// Seed for shell-sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(usize),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) => Failure::Budget(e.to_string()),
            Error::Parse { .. }
            | Error::UnknownName(_)
            | Error::InvalidArgument(_)
            | Error::NegativeArgument(..)
            | Error::ZeroInput(_)
            | Error::InvalidNormHeuristic(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(n)) => {
            eprintln!("{n} mismatches");
            ExitCode::from(1)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Out {
    let threads = cli.threads.max(1);
    match cli.cmd {
        Cmd::Count(c) => count(c, threads),
        Cmd::Shell(ShellCmd::Central { r2, method, format }) => shell_central(&r2, method, format),
        Cmd::Shell(ShellCmd::Averaged { r2, max, format }) => match (r2, max) {
            (Some(r2), _) => shell_averaged(&r2, format.unwrap_or(Format::Json)),
            (None, Some(max)) => averaged_table(max, format.unwrap_or(Format::Csv)),
            (None, None) => Err(Failure::Usage("--r2 or --max is required".into())),
        },
        Cmd::Covariogram(args) => covariogram_cmd(args),
        Cmd::Tiling(TilingCmd::Generate { shift, radius, format, policy }) => {
            tiling(shift.as_deref(), &radius, &format, &policy)
        }
        Cmd::Zeta(ZetaCmd::Expand { system, max, format }) => zeta_expand(&system, max, format),
        Cmd::Oracle(args) => oracle(args, threads),
    }
}

/// Order-preserving map over `items` on `threads` workers.
fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn json_int(n: &BigInt) -> Value {
    n.to_u64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn count(c: CountCmd, threads: usize) -> Out {
    let (name, max, format, f): (String, u64, Format, Box<dyn Fn(u64) -> BigInt + Sync>) = match c {
        CountCmd::Sublattices { rank, max, format } => {
            if rank == 0 {
                return Err(Failure::Usage("--rank must be positive".into()));
            }
            (format!("ell{rank}"), max, format, Box::new(move |m| ell(rank, m)))
        }
        CountCmd::Similar { module, max, format } => match module {
            Module::E3 => ("a6".into(), max, format, Box::new(|m| a6(m).into())),
            Module::E12 => ("a12".into(), max, format, Box::new(|m| a12(m).into())),
        },
        CountCmd::Coincidence { module, max, format } => match module {
            Module::E3 => ("coincidence_e3".into(), max, format, Box::new(|m| coincidence_e3(m).into())),
            Module::E12 => ("coincidence_z12".into(), max, format, Box::new(|m| coincidence_z12(m).into())),
        },
    };
    if max == 0 {
        return Err(Failure::Usage("--max must be positive".into()));
    }
    if max > MAX_TABLE {
        return Err(Failure::Budget(format!("--max {max} exceeds the table budget {MAX_TABLE}")));
    }
    let ms: Vec<u64> = (1..=max).collect();
    let values = par_map(&ms, threads, |&m| f(m));
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("m,count\n");
            for (m, v) in ms.iter().zip(&values) {
                writeln!(out, "{m},{v}").unwrap();
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = ms
                .iter()
                .zip(&values)
                .map(|(m, v)| json!({"m": m, "count": json_int(v)}))
                .collect();
            to_json_text(&json!({"series": name, "rows": rows}))
        }
    })
}

fn decimal(x: &Q3Element) -> String {
    format!("{:.12}", x.to_f64())
}

fn parse_r2(s: &str) -> Result<ZSqrt3, Failure> {
    s.parse::<ZSqrt3>().map_err(Failure::from)
}

fn shell_central(r2: &str, method: Method, format: Format) -> Out {
    let r2 = parse_r2(r2)?;
    let res = central_shell(r2);
    let (count, method_name) = match method {
        Method::PrimeForm => (res.count, "PRIME_FORM"),
        Method::Norm => (central_shell_via_norm(r2)?, "NORM_HEURISTIC"),
        Method::Oracle => (enumerate_shell(r2).len() as u64, "ORACLE"),
    };
    Ok(match format {
        Format::Csv => format!("r2,count,method\n{r2},{count},{method_name}\n"),
        Format::Json => {
            let factorization = res.factorization.as_ref().map(|f| {
                json!({
                    "unit": f.unit.to_string(),
                    "factors": f.factors.iter().map(|p| json!({
                        "prime": p.prime.to_string(),
                        "p": p.p,
                        "exponent": p.exponent,
                        "class": class_name(p.class),
                    })).collect::<Vec<_>>(),
                })
            });
            to_json_text(&json!({
                "r2": r2.to_string(),
                "r2_decimal": decimal(&r2.to_q3()),
                "count": count,
                "method": method_name,
                "factorization": factorization,
            }))
        }
    })
}

fn averaged_json(row: &AveragedShellingRow) -> Value {
    json!({
        "r2": row.r2.to_string(),
        "r2_decimal": decimal(&row.r2.to_q3()),
        "central_count": row.central_count,
        "representatives": row.representatives.iter().map(|(z, len)| json!({
            "z": z.to_string(),
            "orbit_length": len,
        })).collect::<Vec<_>>(),
        "value": row.value.to_string(),
        "value_decimal": decimal(&row.value),
    })
}

fn shell_averaged(r2: &str, format: Format) -> Out {
    let row = averaged_shelling(parse_r2(r2)?)?;
    Ok(match format {
        Format::Json => to_json_text(&averaged_json(&row)),
        Format::Csv => averaged_csv(&[row]),
    })
}

fn averaged_csv(rows: &[AveragedShellingRow]) -> String {
    let mut out = String::from("r2,r2_decimal,central_count,orbits,value,value_decimal\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.r2,
            decimal(&row.r2.to_q3()),
            row.central_count,
            row.representatives.len(),
            row.value,
            decimal(&row.value)
        )
        .unwrap();
    }
    out
}

fn averaged_table(max: i64, format: Format) -> Out {
    if max > 64 {
        return Err(Failure::Budget(format!("--max {max} exceeds the averaged table budget 64")));
    }
    let rows = averaged_shelling_table(max)?;
    Ok(match format {
        Format::Csv => averaged_csv(&rows),
        Format::Json => to_json_text(&Value::Array(rows.iter().map(averaged_json).collect())),
    })
}

fn covariogram_row(out: &mut String, s: f64, exact: &Q3Element, closed: Option<Q3Element>) -> Result<(), Failure> {
    let closed = closed.map_or_else(|| "-".to_string(), |c| c.to_string());
    let hat = euclid_hat(s)?;
    writeln!(out, "{s:.12},{exact},{closed},{hat:.12}").unwrap();
    Ok(())
}

fn covariogram_cmd(args: CovariogramArgs) -> Out {
    let mut out = String::from("s,exact,closed_form,euclid_hat\n");
    if let Some(shift) = args.shift {
        let v: Q3Vector = shift.parse()?;
        let exact = covariogram(&v)?;
        // Closed forms exist along the two symmetry axes used by h1 and h2.
        let closed = if v.y.is_zero() {
            Some(h1(&v.x.abs())?)
        } else if v.x == v.y {
            Some(h2_exact(&v.x.abs())?)
        } else {
            None
        };
        let (x, y) = v.to_f64();
        covariogram_row(&mut out, (x * x + y * y).sqrt(), &exact, closed)?;
        return Ok(out);
    }
    if args.samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let n = i64::from(args.samples) - 1;
    let profile = args.profile.expect("clap enforces shift or profile");
    for k in 0..=n {
        match profile {
            // Type 1 along (1,0) up to the support end 2+sqrt3.
            Profile::Type1 => {
                let s = Q3Element::frac(2 * k, k, n);
                let exact = covariogram(&Q3Vector::new(s.clone(), Q3Element::zero()))?;
                covariogram_row(&mut out, s.to_f64(), &exact, Some(h1(&s)?))?;
            }
            // Type 2 along (1,1), s = sqrt2*w, w up to 1+sqrt3.
            Profile::Type2 => {
                let w = Q3Element::frac(k, k, n);
                let exact = covariogram(&Q3Vector::new(w.clone(), w.clone()))?;
                covariogram_row(&mut out, std::f64::consts::SQRT_2 * w.to_f64(), &exact, Some(h2_exact(&w)?))?;
            }
        }
    }
    Ok(out)
}

fn tiling(shift: Option<&str>, radius: &str, format: &str, policy: &str) -> Out {
    let shift = match shift {
        Some(s) => s.parse::<Q3Vector>()?,
        None => default_shift(),
    };
    let radius: Q3Element = radius.parse()?;
    if !radius.is_rational() {
        return Err(Failure::Usage(format!("radius must be rational, got {radius}")));
    }
    let radius: Rational = radius.rational_part().clone();
    let policy: BoundaryPolicy = policy.parse()?;
    let format: ExportFormat = format.parse()?;
    let config = ModelSetConfig::new(shift, radius, policy)?;
    let patch = generate(&config)?;
    let mut buf = Vec::new();
    export(&patch, format, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Failure::Other(e.to_string()))
}

fn zeta_expand(system: &str, max: usize, format: Format) -> Out {
    let system: ZetaSystem = system.parse()?;
    if max == 0 {
        return Err(Failure::Usage("--max must be positive".into()));
    }
    if max > 10_000 {
        return Err(Failure::Budget(format!("--max {max} exceeds the expansion budget 10000")));
    }
    let data = orbit_data(&catalog(system), max)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("n,a_n,c_n\n");
            for (i, (a, c)) in data.a.iter().zip(&data.c).enumerate() {
                writeln!(out, "{},{a},{c}", i + 1).unwrap();
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = data
                .a
                .iter()
                .zip(&data.c)
                .enumerate()
                .map(|(i, (a, c))| json!({"n": i + 1, "a_n": json_int(a), "c_n": json_int(c)}))
                .collect();
            to_json_text(&json!({"system": system.name(), "rows": rows}))
        }
    })
}

/// Random totally positive `r2` compared between the prime formula and
/// direct enumeration.
fn shell_sample(samples: u64, seed: u64, threads: usize) -> Vec<CheckRow> {
    let mut rng = StdRng::seed_from_u64(seed);
    let r2s: Vec<ZSqrt3> = (0..samples)
        .map(|_| {
            let b: i64 = rng.gen_range(-8..=8);
            let floor = (b.unsigned_abs() as f64 * 3f64.sqrt()).floor() as i64;
            let a = floor + rng.gen_range(1..=14);
            ZSqrt3::new(a, b)
        })
        .collect();
    par_map(&r2s, threads, |&r2| {
        let closed = central_shell(r2).count;
        let oracle = enumerate_shell(r2).len() as u64;
        CheckRow {
            key: r2.to_string(),
            closed_form: closed.to_string(),
            oracle: oracle.to_string(),
            matches: closed == oracle,
        }
    })
}

fn oracle(args: OracleArgs, threads: usize) -> Out {
    let rows = if args.check == "shell-sample" {
        shell_sample(args.max.unwrap_or(50), args.seed, threads)
    } else {
        run_check(&args.check, args.max)?
    };
    let out = match args.format {
        Format::Csv => {
            let mut out = String::from("m,closed_form,oracle,match\n");
            for r in &rows {
                writeln!(out, "{},{},{},{}", r.key, r.closed_form, r.oracle, r.matches).unwrap();
            }
            out
        }
        Format::Json => to_json_text(&Value::Array(
            rows.iter()
                .map(|r| json!({"m": r.key, "closed_form": r.closed_form, "oracle": r.oracle, "match": r.matches}))
                .collect(),
        )),
    };
    let bad = rows.iter().filter(|r| !r.matches).count();
    if bad > 0 {
        print!("{out}");
        return Err(Failure::Mismatch(bad));
    }
    Ok(out)
}
