//! Command-line frontend for the hexpoly library.
//!
//! Counting output is CSV, everything else is one JSON object per run
//! with a `schema` marker. All numbers are rendered through exact integer
//! arithmetic, so byte-for-byte output depends only on the arguments.
//!
//! Exit codes: 0 on success, 2 for usage and domain errors (including
//! malformed family names and engines asked about families they cannot
//! handle), 3 when `--check` finds two engines disagreeing.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use hexpoly::asymptotics::{profile, RatInterval};
use hexpoly::columndp;
use hexpoly::enumerator::{self, Options, DEFAULT_AREA_CAP};
use hexpoly::hexgrid::FamilySpec;
use hexpoly::temperley::{area_gf, solved_unknowns_json, GfModel};

#[derive(Parser)]
#[command(name = "hexpoly", version, about = "Exact enumeration of hexagonal-lattice polyomino families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count all families per area and print a CSV table.
    Table {
        /// Largest area to count up to.
        #[arg(long)]
        max_area: usize,
        /// Raise the enumeration area cap (structural maximum 30).
        #[arg(long)]
        cap: Option<usize>,
        /// Worker threads; 0 picks the machine's parallelism.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print a family's area generating function.
    Gf {
        /// Family name: cc, cheesy:1, cheesy:2 or cheesy:3.
        #[arg(long)]
        family: String,
        /// Include the solved boundary series of the linear system.
        #[arg(long)]
        with_unknowns: bool,
    },
    /// Print a family's counting series.
    Series {
        /// Family name: cc, cheesy:m or all.
        #[arg(long)]
        family: String,
        /// Number of area terms to produce.
        #[arg(long)]
        terms: usize,
        /// Which engine computes the series [default: dp, or enumerate for all].
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        /// Recompute with every other applicable engine and compare.
        #[arg(long)]
        check: bool,
        /// Raise the enumeration area cap (structural maximum 30).
        #[arg(long)]
        cap: Option<usize>,
        /// Worker threads for the enumeration engine; 0 picks automatically.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print certified growth rate and amplitude for a family.
    Asym {
        /// Family name: cc, cheesy:1, cheesy:2 or cheesy:3.
        #[arg(long)]
        family: String,
        /// Interval width target, e.g. 1e-9, 0.001 or 1/1000000000.
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// Extrapolate the growth constants of successive families.
    Extrapolate {
        /// How many families to use, starting from cc: 3 or 4.
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// Fit a geometric tail instead of doubling the last increment.
        #[arg(long)]
        fitted: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Enumerate,
    Dp,
    Gf,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Enumerate => "enumerate",
            Engine::Dp => "dp",
            Engine::Gf => "gf",
        }
    }
}

#[derive(Debug)]
enum CliError {
    /// Bad arguments or a request outside an engine's domain.
    Domain(String),
    /// Two engines produced different numbers.
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Mismatch(m) => m,
        }
    }
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table {
            max_area,
            cap,
            threads,
        } => table(max_area, cap, threads),
        Command::Gf {
            family,
            with_unknowns,
        } => gf(&family, with_unknowns),
        Command::Series {
            family,
            terms,
            engine,
            check,
            cap,
            threads,
        } => series(&family, terms, engine, check, cap, threads),
        Command::Asym { family, tol } => asym(&family, &tol),
        Command::Extrapolate { levels, fitted } => extrapolate(levels, fitted),
    }
}

fn parse_family(name: &str) -> Result<FamilySpec, CliError> {
    name.parse().map_err(|e| domain(format!("{e}")))
}

fn gf_model(family: FamilySpec) -> Result<GfModel, CliError> {
    GfModel::from_family(family).ok_or_else(|| {
        domain(format!(
            "family {family} has no cataloged generating function; available: cc, cheesy:1, cheesy:2, cheesy:3"
        ))
    })
}

fn enumeration_options(cap: Option<usize>, threads: usize) -> Options {
    Options {
        cap: cap.unwrap_or(DEFAULT_AREA_CAP),
        threads,
    }
}

// ---------------------------------------------------------------------
// table

fn table_families() -> [(&'static str, FamilySpec); 5] {
    [
        ("cc", FamilySpec::ColumnConvex),
        ("cheesy1", FamilySpec::cheesy(1).unwrap()),
        ("cheesy2", FamilySpec::cheesy(2).unwrap()),
        ("cheesy3", FamilySpec::cheesy(3).unwrap()),
        ("all", FamilySpec::All),
    ]
}

fn table(max_area: usize, cap: Option<usize>, threads: usize) -> Result<(), CliError> {
    let named = table_families();
    let families: Vec<FamilySpec> = named.iter().map(|&(_, f)| f).collect();
    let counts =
        enumerator::enumerate_all_with(max_area, &families, &enumeration_options(cap, threads))
            .map_err(|e| domain(e.to_string()))?;
    let mut out = String::new();
    out.push_str("area");
    for (name, _) in named {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for area in 1..=max_area {
        out.push_str(&area.to_string());
        for (_, family) in named {
            out.push(',');
            out.push_str(&counts.count(family, area).expect("counted range").to_string());
        }
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

// ---------------------------------------------------------------------
// gf

fn poly_strings(coeffs: &[BigInt]) -> serde_json::Value {
    coeffs.iter().map(|c| c.to_string()).collect()
}

fn gf(family: &str, with_unknowns: bool) -> Result<(), CliError> {
    let family = parse_family(family)?;
    let model = gf_model(family)?;
    let f = area_gf(model).map_err(|e| domain(e.to_string()))?;
    let mut record = serde_json::json!({
        "schema": "hexpoly/1",
        "command": "gf",
        "family": family.to_string(),
        "numerator": poly_strings(f.num().coeffs()),
        "denominator": poly_strings(f.den().coeffs()),
        "display": f.to_string(),
    });
    if with_unknowns {
        let unknowns = solved_unknowns_json(model).map_err(|e| domain(e.to_string()))?;
        record["unknowns"] = unknowns;
    }
    println!("{record}");
    Ok(())
}

// ---------------------------------------------------------------------
// series

fn series_by_engine(
    engine: Engine,
    family: FamilySpec,
    terms: usize,
    cap: Option<usize>,
    threads: usize,
) -> Result<Vec<BigUint>, CliError> {
    match engine {
        Engine::Enumerate => {
            let counts = enumerator::enumerate_all_with(
                terms,
                &[family],
                &enumeration_options(cap, threads),
            )
            .map_err(|e| domain(e.to_string()))?;
            Ok(counts.column(family).expect("requested family").to_vec())
        }
        Engine::Dp => match family {
            FamilySpec::ColumnConvex => Ok(columndp::count(0, terms as u32)),
            FamilySpec::Cheesy(m) => Ok(columndp::count(m.get(), terms as u32)),
            FamilySpec::All => Err(domain(
                "the column-transfer engine cannot count the unrestricted family; use --engine enumerate",
            )),
        },
        Engine::Gf => {
            let model = gf_model(family)?;
            let f = area_gf(model).map_err(|e| domain(e.to_string()))?;
            let series = f
                .series(terms + 1)
                .map_err(|e| domain(e.to_string()))?;
            series[1..]
                .iter()
                .map(|c| {
                    if !c.is_integer() || c.is_negative() {
                        return Err(domain(format!(
                            "generating function produced a non-count coefficient {c}"
                        )));
                    }
                    Ok(c.to_integer()
                        .to_biguint()
                        .expect("nonnegative integer coefficient"))
                })
                .collect()
        }
    }
}

fn engine_applies(engine: Engine, family: FamilySpec, terms: usize, cap: Option<usize>) -> bool {
    match engine {
        Engine::Enumerate => terms <= cap.unwrap_or(DEFAULT_AREA_CAP),
        Engine::Dp => family != FamilySpec::All,
        Engine::Gf => GfModel::from_family(family).is_some(),
    }
}

fn series(
    family: &str,
    terms: usize,
    engine: Option<Engine>,
    check: bool,
    cap: Option<usize>,
    threads: usize,
) -> Result<(), CliError> {
    let family = parse_family(family)?;
    if terms == 0 {
        return Err(domain("--terms must be at least 1"));
    }
    let engine = engine.unwrap_or(if family == FamilySpec::All {
        Engine::Enumerate
    } else {
        Engine::Dp
    });
    let counts = series_by_engine(engine, family, terms, cap, threads)?;
    let mut verified = vec![engine.name()];
    if check {
        for other in [Engine::Enumerate, Engine::Dp, Engine::Gf] {
            if other == engine || !engine_applies(other, family, terms, cap) {
                continue;
            }
            let redone = series_by_engine(other, family, terms, cap, threads)?;
            if redone != counts {
                let n = counts
                    .iter()
                    .zip(&redone)
                    .position(|(a, b)| a != b)
                    .map(|i| i + 1)
                    .unwrap_or(0);
                return Err(CliError::Mismatch(format!(
                    "engines {} and {} disagree on {family} at area {n}",
                    engine.name(),
                    other.name()
                )));
            }
            verified.push(other.name());
        }
    }
    let record = serde_json::json!({
        "schema": "hexpoly/1",
        "command": "series",
        "family": family.to_string(),
        "engine": engine.name(),
        "terms": terms,
        "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "verified_engines": verified,
    });
    println!("{record}");
    Ok(())
}

// ---------------------------------------------------------------------
// asym

/// Renders a rational number as a fixed-point decimal with `digits`
/// fractional digits, rounding half away from zero — pure integer math.
fn decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled_num = x.numer() * &scale;
    let den = x.denom().clone();
    let quot = {
        let two = BigInt::from(2u32);
        let adjust = if scaled_num.is_negative() { -&den } else { den.clone() };
        (&scaled_num * &two + adjust) / (&den * &two)
    };
    let (sign, magnitude) = if quot.is_negative() {
        ("-", -quot)
    } else {
        ("", quot)
    };
    let int_part = &magnitude / &scale;
    let frac_part = &magnitude % &scale;
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

fn interval_json(iv: &RatInterval, digits: u32) -> serde_json::Value {
    serde_json::json!({
        "decimal": decimal_string(&iv.midpoint(), digits),
        "low": iv.lo().to_string(),
        "high": iv.hi().to_string(),
        "width": iv.width().to_string(),
    })
}

fn parse_tolerance(text: &str) -> Result<BigRational, CliError> {
    let bad = || domain(format!("cannot parse tolerance {text:?}"));
    let parse_int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
    let value = if let Some((num, den)) = text.split_once('/') {
        let den = parse_int(den)?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(parse_int(num)?, den)
    } else {
        let (mantissa, exp) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (text, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if frac_part.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mantissa_int = parse_int(&digits)?;
        let shift = exp - frac_part.len() as i32;
        let pow = BigInt::from(10u32).pow(shift.unsigned_abs());
        if shift >= 0 {
            BigRational::from_integer(mantissa_int * pow)
        } else {
            BigRational::new(mantissa_int, pow)
        }
    };
    if value <= BigRational::zero() {
        return Err(domain("tolerance must be positive"));
    }
    Ok(value)
}

fn asym(family: &str, tol: &str) -> Result<(), CliError> {
    let family = parse_family(family)?;
    let model = gf_model(family)?;
    let tol = parse_tolerance(tol)?;
    let f = area_gf(model).map_err(|e| domain(e.to_string()))?;
    let p = profile(&f, &tol).map_err(|e| domain(e.to_string()))?;
    let record = serde_json::json!({
        "schema": "hexpoly/1",
        "command": "asym",
        "family": family.to_string(),
        "tolerance": tol.to_string(),
        "root": interval_json(&p.root, 15),
        "growth": interval_json(&p.growth, 12),
        "amplitude": interval_json(&p.amplitude, 12),
    });
    println!("{record}");
    Ok(())
}

// ---------------------------------------------------------------------
// extrapolate

fn extrapolate(levels: usize, fitted: bool) -> Result<(), CliError> {
    if !(3..=GfModel::ALL.len()).contains(&levels) {
        return Err(domain(format!(
            "--levels must be 3 or 4; only {} families have certified growth rates",
            GfModel::ALL.len()
        )));
    }
    let tol = BigRational::new(1.into(), 1_000_000_000.into());
    let mut names = Vec::new();
    let mut growth_rationals = Vec::new();
    for &model in &GfModel::ALL[..levels] {
        let f = area_gf(model).map_err(|e| domain(e.to_string()))?;
        let p = profile(&f, &tol).map_err(|e| domain(e.to_string()))?;
        names.push(model.to_string());
        growth_rationals.push(p.growth.midpoint());
    }
    for w in growth_rationals.windows(2) {
        if w[1] <= w[0] {
            return Err(domain("growth rates are not strictly increasing"));
        }
    }
    // Exact-rational versions of the float helpers, for stable output.
    let n = growth_rationals.len();
    let estimate = if fitted {
        let d_last = &growth_rationals[n - 1] - &growth_rationals[n - 2];
        let d_prev = &growth_rationals[n - 2] - &growth_rationals[n - 3];
        let ratio = &d_last / &d_prev;
        if ratio <= BigRational::zero() || ratio >= BigRational::from_integer(1.into()) {
            return Err(domain(
                "increments are not a decaying geometric tail; rerun without --fitted",
            ));
        }
        &growth_rationals[n - 1]
            + &d_last * &ratio / (BigRational::from_integer(1.into()) - &ratio)
    } else {
        let doubled = &growth_rationals[n - 1] * BigRational::from_integer(2.into());
        doubled - &growth_rationals[n - 2]
    };
    let record = serde_json::json!({
        "schema": "hexpoly/1",
        "command": "extrapolate",
        "families": names,
        "growth": growth_rationals
            .iter()
            .map(|g| decimal_string(g, 9))
            .collect::<Vec<_>>(),
        "method": if fitted { "geometric-tail" } else { "doubled-increment" },
        "estimate": decimal_string(&estimate, 9),
    });
    println!("{record}");
    Ok(())
}
