//! Timing harness: Tonelli-Shanks against the descent over `alpha = 1..=N`.
//!
//! Only the root computation is inside the timed region. Classification,
//! witness setup in `Provided` mode and verification are outside it.

use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use modsqrt_core::residue::WitnessSearch;
use modsqrt_core::{
    euler_classify, find_strict_witness, sqrt_proposed, sqrt_proposed_with, sqrt_tonelli_shanks,
    Error as CoreError, LazyRelativeWitness, OddPrimeField, Residuosity, SqrtOutcome, Witness,
};
use num_bigint::BigUint;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Proposed,
    TonelliShanks,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Proposed, Algorithm::TonelliShanks];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Proposed => "proposed",
            Algorithm::TonelliShanks => "tonelli_shanks",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proposed" => Ok(Algorithm::Proposed),
            "tonelli_shanks" | "tonelli" => Ok(Algorithm::TonelliShanks),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// One strict non-residue per prime, found before timing and reused.
    #[default]
    Provided,
    /// A strict non-residue searched per alpha, inside the timed region.
    StrictSearch,
    /// The descent acquires a relative witness lazily per alpha; Tonelli-Shanks
    /// still searches a strict one.
    RelativeSearch,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub primes: Vec<OddPrimeField>,
    pub residue_count: u64,
    pub algorithms: Vec<Algorithm>,
    pub witness_mode: WitnessMode,
    pub repetitions: u32,
    pub seed: u64,
    /// Benchmark distinct primes on separate threads. Each timed section is
    /// still single-threaded.
    pub parallel: bool,
}

impl BenchConfig {
    pub fn new(primes: Vec<OddPrimeField>, residue_count: u64) -> Self {
        Self {
            primes,
            residue_count,
            algorithms: Algorithm::ALL.to_vec(),
            witness_mode: WitnessMode::Provided,
            repetitions: 3,
            seed: 0,
            parallel: false,
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.residue_count == 0 {
            return Err(BenchError::InvalidConfig(
                "residue_count must be at least 1",
            ));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::InvalidConfig("select at least one algorithm"));
        }
        if self.repetitions == 0 {
            return Err(BenchError::InvalidConfig("repetitions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub prime_digits: u32,
    pub algorithm: Algorithm,
    pub residues_found: u64,
    /// Seconds, minimum over repetitions.
    pub total_time: f64,
    pub verified: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid bench configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("verification failed: p = {p}, alpha = {alpha}, root = {root}")]
    Verification {
        p: BigUint,
        alpha: BigUint,
        root: String,
    },
    #[error("p = {p}, alpha = {alpha}: {source}")]
    Core {
        p: BigUint,
        alpha: BigUint,
        #[source]
        source: CoreError,
    },
}

pub fn decimal_digits(n: &BigUint) -> u32 {
    n.to_string().len() as u32
}

/// Run every (prime, algorithm) pair. Records come out in corpus order, then
/// in `config.algorithms` order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    config.validate()?;
    let per_prime: Vec<Result<Vec<BenchRecord>, BenchError>> = if config.parallel {
        thread::scope(|scope| {
            let handles: Vec<_> = config
                .primes
                .iter()
                .enumerate()
                .map(|(idx, field)| scope.spawn(move || bench_prime(config, idx, field)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("bench worker panicked"))
                .collect()
        })
    } else {
        config
            .primes
            .iter()
            .enumerate()
            .map(|(idx, field)| bench_prime(config, idx, field))
            .collect()
    };
    let mut records = Vec::new();
    for r in per_prime {
        records.extend(r?);
    }
    Ok(records)
}

fn bench_prime(
    config: &BenchConfig,
    idx: usize,
    field: &OddPrimeField,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut setup_rng =
        ChaCha8Rng::seed_from_u64(config.seed ^ (idx as u64).wrapping_mul(0x9e37_79b9));
    let provided = match config.witness_mode {
        WitnessMode::Provided => Some(
            find_strict_witness(field, &mut WitnessSearch::random(&mut setup_rng)).map_err(
                |source| BenchError::Core {
                    p: field.p().clone(),
                    alpha: BigUint::from(0u32),
                    source,
                },
            )?,
        ),
        _ => None,
    };

    let mut records = Vec::with_capacity(config.algorithms.len());
    for (a_idx, &algorithm) in config.algorithms.iter().enumerate() {
        let mut best: Option<Duration> = None;
        let mut residues_found = 0;
        for rep in 0..config.repetitions {
            let seed = config.seed ^ ((idx as u64) << 32) ^ ((a_idx as u64) << 16) ^ u64::from(rep);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (found, elapsed) =
                time_algorithm(config, field, algorithm, provided.as_ref(), &mut rng)?;
            residues_found = found;
            best = Some(best.map_or(elapsed, |b| b.min(elapsed)));
        }
        records.push(BenchRecord {
            prime_digits: decimal_digits(field.p()),
            algorithm,
            residues_found,
            total_time: best.unwrap_or_default().as_secs_f64(),
            verified: true,
        });
    }
    Ok(records)
}

fn time_algorithm(
    config: &BenchConfig,
    field: &OddPrimeField,
    algorithm: Algorithm,
    provided: Option<&Witness>,
    rng: &mut ChaCha8Rng,
) -> Result<(u64, Duration), BenchError> {
    let mut total = Duration::ZERO;
    let mut found = 0u64;
    for a in 1..=config.residue_count {
        let alpha = BigUint::from(a);
        let wrap = |source| BenchError::Core {
            p: field.p().clone(),
            alpha: alpha.clone(),
            source,
        };
        if euler_classify(&alpha, field).map_err(wrap)? != Residuosity::Residue {
            continue;
        }
        found += 1;

        let start = Instant::now();
        let outcome = compute_root(field, &alpha, algorithm, config.witness_mode, provided, rng);
        total += start.elapsed();

        let outcome = outcome.map_err(|source| BenchError::Core {
            p: field.p().clone(),
            alpha: alpha.clone(),
            source,
        })?;
        if !outcome.is_roots() || !outcome.verify(&alpha, field.p()) {
            return Err(BenchError::Verification {
                p: field.p().clone(),
                alpha,
                root: match outcome.canonical() {
                    Some(root) => root.to_string(),
                    None => format!("{outcome:?}"),
                },
            });
        }
    }
    Ok((found, total))
}

fn compute_root(
    field: &OddPrimeField,
    alpha: &BigUint,
    algorithm: Algorithm,
    mode: WitnessMode,
    provided: Option<&Witness>,
    rng: &mut ChaCha8Rng,
) -> Result<SqrtOutcome, CoreError> {
    match (algorithm, provided) {
        (Algorithm::Proposed, Some(w)) => sqrt_proposed(alpha, field, Some(w)),
        (Algorithm::TonelliShanks, Some(w)) => sqrt_tonelli_shanks(alpha, field, w),
        (Algorithm::Proposed, None) if mode == WitnessMode::RelativeSearch => {
            let mut search = WitnessSearch::random(rng);
            sqrt_proposed_with(
                alpha,
                field,
                &mut LazyRelativeWitness {
                    search: &mut search,
                },
            )
            .map(|d| d.outcome)
        }
        (Algorithm::Proposed, None) => {
            let w = find_strict_witness(field, &mut WitnessSearch::random(rng))?;
            sqrt_proposed(alpha, field, Some(&w))
        }
        (Algorithm::TonelliShanks, None) => {
            let w = find_strict_witness(field, &mut WitnessSearch::random(rng))?;
            sqrt_tonelli_shanks(alpha, field, &w)
        }
    }
}

/// `tonelli_shanks / proposed` total time per prime, for records carrying both.
pub fn time_ratios(records: &[BenchRecord]) -> Vec<(u32, f64)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < records.len() {
        let digits = records[i].prime_digits;
        let group: Vec<&BenchRecord> = records[i..]
            .iter()
            .take_while(|r| r.prime_digits == digits)
            .collect();
        let time_of = |alg| {
            group
                .iter()
                .find(|r| r.algorithm == alg)
                .map(|r| r.total_time)
        };
        if let (Some(ts), Some(pr)) = (
            time_of(Algorithm::TonelliShanks),
            time_of(Algorithm::Proposed),
        ) {
            if pr > 0.0 {
                out.push((digits, ts / pr));
            }
        }
        i += group.len();
    }
    out
}
