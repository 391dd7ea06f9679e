//! Argument grammar and command dispatch for the `modsqrt` binary.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use modsqrt_core::residue::{
    count_relative_pairs, search_witness_above, WitnessSearch, CENSUS_GUARD, PAIR_COUNT_GUARD,
};
use modsqrt_core::sqrt::{BRUTE_GUARD, ENUMERATION_CAP};
use modsqrt_core::{
    brute_sqrt, enumerate_solution_set, euler_classify, f_census, f_value, find_strict_witness,
    reduce_signed, relative_witness_probability, sqrt_direct_3mod4, sqrt_mod_two, sqrt_proposed,
    sqrt_proposed_pk, sqrt_proposed_with, sqrt_tonelli_shanks, Error as CoreError, FValue,
    LazyRelativeWitness, OddPrimeField, PrimePowerGroup, Residuosity, SqrtOutcome, Witness,
};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bench::{run_bench, time_ratios, Algorithm, BenchConfig, WitnessMode};
use crate::corpus::load_prime_corpus;
use crate::report::emit_csv;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modsqrt", version, about = "Square roots modulo p and p^k")]
struct Cli {
    /// Print each result as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SqrtAlgo {
    Proposed,
    Tonelli,
    Direct34,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SqrtWitnessMode {
    Strict,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchWitnessMode {
    Provided,
    Strict,
    Relative,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Square root modulo a prime.
    Sqrt {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
        /// Witness (strict or relative non-residue).
        #[arg(short = 'w', allow_negative_numbers = true)]
        w: Option<BigInt>,
        #[arg(long, value_enum, default_value_t = SqrtAlgo::Proposed)]
        algo: SqrtAlgo,
        /// How to obtain a witness when -w is absent.
        #[arg(long, value_enum, default_value_t = SqrtWitnessMode::Relative)]
        witness_mode: SqrtWitnessMode,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Square root modulo p^k.
    SqrtPk {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
        #[arg(short = 'w', allow_negative_numbers = true)]
        w: Option<BigInt>,
    },
    /// Euler's criterion.
    Classify {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
    },
    /// f-value of an element.
    Fvalue {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
    },
    /// Find a strict witness, or with --relative one suited to -a.
    Witness {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: Option<BigInt>,
        #[arg(long, requires = "a")]
        relative: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Materialise the candidate set that must contain sqrt(a).
    Enumerate {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
        #[arg(short = 'w', allow_negative_numbers = true)]
        w: BigInt,
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: u64,
    },
    /// f-value class sizes and the relative-witness probability.
    Census {
        #[arg(short = 'p')]
        p: BigUint,
    },
    /// Time the descent against Tonelli-Shanks.
    Bench {
        #[arg(long)]
        primes: PathBuf,
        #[arg(long)]
        count: u64,
        /// Comma-separated subset of proposed,tonelli_shanks.
        #[arg(long, value_delimiter = ',', default_value = "proposed,tonelli_shanks")]
        algos: Vec<Algorithm>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        #[arg(long, value_enum, default_value_t = BenchWitnessMode::Provided)]
        witness_mode: BenchWitnessMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Benchmark distinct primes concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Brute-force square root for small moduli.
    Oracle {
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: BigInt,
        #[arg(long, default_value_t = BRUTE_GUARD)]
        guard: u64,
    },
}

/// A command failure and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::WitnessNotFound(_)
            | CoreError::GuardExceeded { .. }
            | CoreError::CompositeModulus(_)
            | CoreError::TonelliStall(_)
            | CoreError::CertificateFailed(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::computation(e.to_string())
    }
}

/// Text lines plus the equivalent JSON object.
struct Output {
    lines: Vec<String>,
    json: Value,
}

/// Parse `argv` (including the program name), run, and write results.
/// Returns the process exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match run(cli.command, err) {
        Ok(output) => {
            let written = if cli.json {
                writeln!(out, "{}", output.json)
            } else {
                output.lines.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_FAILURE
                }
            }
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "error": f.message, "exit_code": f.code })
                );
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn run(command: Command, err: &mut dyn Write) -> Result<Output, Failure> {
    match command {
        Command::Sqrt {
            p,
            a,
            w,
            algo,
            witness_mode,
            seed,
        } => cmd_sqrt(p, a, w, algo, witness_mode, seed),
        Command::SqrtPk { p, k, a, w } => cmd_sqrt_pk(p, k, a, w),
        Command::Classify { p, a } => {
            let field = OddPrimeField::new(p)?;
            let alpha = reduce_signed(&a, field.p());
            let class = euler_classify(&alpha, &field)?;
            Ok(Output {
                lines: vec![class.to_string()],
                json: json!({
                    "command": "classify",
                    "p": field.p().to_string(),
                    "alpha": alpha.to_string(),
                    "class": class.as_str(),
                }),
            })
        }
        Command::Fvalue { p, a } => {
            let field = OddPrimeField::new(p)?;
            let alpha = reduce_signed(&a, field.p());
            let f = f_value(&alpha, &field)?;
            Ok(Output {
                lines: vec![f.to_string()],
                json: json!({
                    "command": "fvalue",
                    "p": field.p().to_string(),
                    "alpha": alpha.to_string(),
                    "f": f.as_i64(),
                    "r": field.r(),
                }),
            })
        }
        Command::Witness {
            p,
            a,
            relative,
            seed,
        } => cmd_witness(p, a, relative, seed),
        Command::Enumerate { p, a, w, cap } => {
            let field = OddPrimeField::new(p)?;
            let alpha = reduce_signed(&a, field.p());
            let witness = Witness::strict(&reduce_signed(&w, field.p()), &field)?;
            let set = enumerate_solution_set(&alpha, &field, &witness, cap)?;
            let elements: Vec<String> = set.elements.iter().map(|x| x.to_string()).collect();
            Ok(Output {
                lines: vec![format!("k={}", set.k), elements.join(" ")],
                json: json!({
                    "command": "enumerate",
                    "p": field.p().to_string(),
                    "alpha": alpha.to_string(),
                    "witness": witness.element().to_string(),
                    "k": set.k,
                    "elements": elements,
                }),
            })
        }
        Command::Census { p } => cmd_census(p),
        Command::Bench {
            primes,
            count,
            algos,
            csv,
            reps,
            witness_mode,
            seed,
            parallel,
        } => {
            let fields = load_prime_corpus(&primes).map_err(|e| Failure::usage(e.to_string()))?;
            let config = BenchConfig {
                primes: fields,
                residue_count: count,
                algorithms: algos,
                witness_mode: match witness_mode {
                    BenchWitnessMode::Provided => WitnessMode::Provided,
                    BenchWitnessMode::Strict => WitnessMode::StrictSearch,
                    BenchWitnessMode::Relative => WitnessMode::RelativeSearch,
                },
                repetitions: reps,
                seed,
                parallel,
            };
            let records = run_bench(&config).map_err(|e| match e {
                crate::bench::BenchError::InvalidConfig(_) => Failure::usage(e.to_string()),
                _ => Failure::computation(e.to_string()),
            })?;
            for (digits, ratio) in time_ratios(&records) {
                writeln!(
                    err,
                    "{digits}-digit prime: tonelli_shanks/proposed = {ratio:.3}"
                )?;
            }
            let mut csv_text = Vec::new();
            emit_csv(&records, &mut csv_text)?;
            let csv_text = String::from_utf8(csv_text).expect("CSV is ASCII");
            let lines = match &csv {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(path)?);
                    f.write_all(csv_text.as_bytes())?;
                    f.flush()?;
                    vec![format!(
                        "wrote {} records to {}",
                        records.len(),
                        path.display()
                    )]
                }
                None => csv_text.lines().map(str::to_owned).collect(),
            };
            let json_records: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "prime_digits": r.prime_digits,
                        "algorithm": r.algorithm.name(),
                        "residues_found": r.residues_found,
                        "total_time_s": r.total_time,
                        "verified": r.verified,
                    })
                })
                .collect();
            Ok(Output {
                lines,
                json: json!({ "command": "bench", "records": json_records }),
            })
        }
        Command::Oracle { p, a, guard } => {
            if p < BigUint::from(2u32) {
                return Err(Failure::usage("modulus must be at least 2"));
            }
            let alpha = reduce_signed(&a, &p);
            let outcome = brute_sqrt(&alpha, &p, guard)?;
            Ok(outcome_output("oracle", &p, &alpha, &outcome, json!({})))
        }
    }
}

fn rng_for(seed: Option<u64>) -> ChaCha8Rng {
    match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => {
            let nanos = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(0);
            ChaCha8Rng::seed_from_u64(nanos ^ u64::from(std::process::id()))
        }
    }
}

fn outcome_output(
    command: &str,
    modulus: &BigUint,
    alpha: &BigUint,
    outcome: &SqrtOutcome,
    extra: Value,
) -> Output {
    let (line, result, roots) = match outcome {
        SqrtOutcome::Roots { canonical, other } => (
            format!("{canonical} {other}"),
            "roots",
            vec![canonical.to_string(), other.to_string()],
        ),
        SqrtOutcome::NonResidue => ("non-residue".to_owned(), "non-residue", vec![]),
        SqrtOutcome::ZeroRoot => ("0".to_owned(), "zero", vec!["0".to_owned()]),
    };
    let mut json = json!({
        "command": command,
        "modulus": modulus.to_string(),
        "alpha": alpha.to_string(),
        "result": result,
        "roots": roots,
    });
    if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
        map.extend(more);
    }
    Output {
        lines: vec![line],
        json,
    }
}

fn checked(
    outcome: SqrtOutcome,
    alpha: &BigUint,
    modulus: &BigUint,
) -> Result<SqrtOutcome, Failure> {
    if outcome.verify(alpha, modulus) {
        Ok(outcome)
    } else {
        Err(Failure::computation(format!(
            "self-check failed: {outcome:?} is not a root of {alpha} mod {modulus}"
        )))
    }
}

fn cmd_sqrt(
    p: BigUint,
    a: BigInt,
    w: Option<BigInt>,
    algo: SqrtAlgo,
    witness_mode: SqrtWitnessMode,
    seed: Option<u64>,
) -> Result<Output, Failure> {
    if p == BigUint::from(2u32) {
        let alpha = reduce_signed(&a, &p);
        let outcome = checked(sqrt_mod_two(&alpha), &alpha, &p)?;
        return Ok(outcome_output("sqrt", &p, &alpha, &outcome, json!({})));
    }
    let field = OddPrimeField::new(p)?;
    let alpha = reduce_signed(&a, field.p());
    let given = w
        .map(|w| Witness::new(&reduce_signed(&w, field.p()), &field))
        .transpose()?;
    let mut rng = rng_for(seed);

    let (outcome, used): (SqrtOutcome, Option<Witness>) = match algo {
        SqrtAlgo::Direct34 => (sqrt_direct_3mod4(&alpha, &field)?, None),
        SqrtAlgo::Tonelli => {
            let w = match given {
                Some(w) if w.is_strict() => w,
                Some(w) => return Err(CoreError::NotStrictWitness(w.element().clone()).into()),
                None => find_strict_witness(&field, &mut WitnessSearch::random(&mut rng))?,
            };
            (sqrt_tonelli_shanks(&alpha, &field, &w)?, Some(w))
        }
        SqrtAlgo::Proposed => match (given, witness_mode) {
            (Some(w), _) => (sqrt_proposed(&alpha, &field, Some(&w))?, Some(w)),
            (None, SqrtWitnessMode::Strict) => {
                let w = find_strict_witness(&field, &mut WitnessSearch::random(&mut rng))?;
                (sqrt_proposed(&alpha, &field, Some(&w))?, Some(w))
            }
            (None, SqrtWitnessMode::Relative) => {
                let mut search = WitnessSearch::random(&mut rng);
                let descent = sqrt_proposed_with(
                    &alpha,
                    &field,
                    &mut LazyRelativeWitness {
                        search: &mut search,
                    },
                )?;
                (descent.outcome, descent.witness)
            }
        },
    };
    let outcome = checked(outcome, &alpha, field.p())?;
    let extra = json!({
        "algorithm": format!("{algo:?}").to_lowercase(),
        "witness": used.as_ref().map(|w| w.element().to_string()),
    });
    Ok(outcome_output("sqrt", field.p(), &alpha, &outcome, extra))
}

fn cmd_sqrt_pk(p: BigUint, k: u32, a: BigInt, w: Option<BigInt>) -> Result<Output, Failure> {
    let group = PrimePowerGroup::new(p, k)?;
    let modulus = group.modulus().clone();
    let alpha = reduce_signed(&a, &modulus);
    let witness = w
        .map(|w| Witness::new(&reduce_signed(&w, &modulus), &group))
        .transpose()?;
    let outcome = sqrt_proposed_pk(&alpha, &group, witness.as_ref())?;
    let outcome = checked(outcome, &alpha, &modulus)?;
    let extra = json!({ "p": group.p().to_string(), "k": group.k() });
    Ok(outcome_output("sqrt-pk", &modulus, &alpha, &outcome, extra))
}

fn cmd_witness(
    p: BigUint,
    a: Option<BigInt>,
    relative: bool,
    seed: Option<u64>,
) -> Result<Output, Failure> {
    let field = OddPrimeField::new(p)?;
    let mut rng = rng_for(seed);
    let mut search = WitnessSearch::random(&mut rng);
    let witness = if relative {
        let alpha = reduce_signed(
            a.as_ref().expect("clap enforces -a with --relative"),
            field.p(),
        );
        if euler_classify(&alpha, &field)? != Residuosity::Residue {
            return Err(CoreError::NotAResidue(alpha).into());
        }
        let target = f_value(&alpha, &field)?;
        if target == FValue::MinusOne {
            return Ok(Output {
                lines: vec!["not-needed".to_owned()],
                json: json!({
                    "command": "witness",
                    "p": field.p().to_string(),
                    "alpha": alpha.to_string(),
                    "needed": false,
                }),
            });
        }
        search_witness_above(target, field.units(), &mut search)?
    } else {
        find_strict_witness(&field, &mut search)?
    };
    let kind = if witness.is_strict() {
        "strict"
    } else {
        "relative"
    };
    Ok(Output {
        lines: vec![format!("{} {} {kind}", witness.element(), witness.f())],
        json: json!({
            "command": "witness",
            "p": field.p().to_string(),
            "needed": true,
            "witness": witness.element().to_string(),
            "f": witness.f().as_i64(),
            "kind": kind,
        }),
    })
}

fn cmd_census(p: BigUint) -> Result<Output, Failure> {
    let field = OddPrimeField::new(p)?;
    let census = f_census(&field, CENSUS_GUARD)?;
    let mut lines: Vec<String> = census.iter().map(|(f, n)| format!("f={f} {n}")).collect();
    let closed = relative_witness_probability(&field);
    let as_f64 = |num: &BigInt, den: &BigInt| {
        num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
    };
    let closed_f = as_f64(closed.numer(), closed.denom());
    lines.push(format!("closed-form {closed} {closed_f:.6}"));
    let exhaustive = match count_relative_pairs(&field, PAIR_COUNT_GUARD) {
        Ok((fav, total)) => {
            let ratio = num_rational_ratio(fav, total);
            lines.push(format!(
                "exhaustive {fav}/{total} = {ratio} {:.6}",
                fav as f64 / total as f64
            ));
            json!({ "favorable": fav, "pairs": total, "ratio": ratio })
        }
        Err(CoreError::GuardExceeded { .. }) => {
            lines.push(format!("exhaustive skipped (p > {PAIR_COUNT_GUARD})"));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let counts: Vec<Value> = census
        .iter()
        .map(|(f, n)| json!({ "f": f.as_i64(), "count": n }))
        .collect();
    Ok(Output {
        lines,
        json: json!({
            "command": "census",
            "p": field.p().to_string(),
            "r": field.r(),
            "d": census.d(),
            "counts": counts,
            "closed_form_matches": census.matches_closed_form(),
            "probability": closed.to_string(),
            "probability_f64": closed_f,
            "exhaustive": exhaustive,
        }),
    })
}

fn num_rational_ratio(num: u64, den: u64) -> String {
    let g = gcd(num, den).max(1);
    format!("{}/{}", num / g, den / g)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
