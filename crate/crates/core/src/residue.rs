//! The f-value of a unit, witness search, and the exact census of f-value classes.
//!
//! For a group of order `2^r * d` (`d` odd), `f(x)` is `-1` when `x^d = 1` and
//! otherwise the unique `i` with `x^(2^i d) = -1`. Non-residues sit at
//! `r - 1`, residues at `-1 ..= r - 2`. Any `w` with `f(w) > f(alpha)` can
//! stand in for a non-residue when extracting `sqrt(alpha)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_core::RngCore;

use crate::modmath::{random_in_range, OddPrimeField, Residuosity, UnitGroup};
use crate::Error;

/// Default cap on witness draws.
pub const DEFAULT_MAX_ATTEMPTS: u32 = 256;
/// Largest prime [`f_census`] enumerates by default.
pub const CENSUS_GUARD: u64 = 1_000_000;
/// Largest prime the pair-counting cross-check accepts by default.
pub const PAIR_COUNT_GUARD: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FValue {
    /// `x^d = 1`.
    MinusOne,
    /// `x^(2^i d) = -1`.
    Level(u32),
}

impl FValue {
    pub fn as_i64(self) -> i64 {
        match self {
            FValue::MinusOne => -1,
            FValue::Level(i) => i64::from(i),
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            -1 => Some(FValue::MinusOne),
            v => u32::try_from(v).ok().map(FValue::Level),
        }
    }

    /// Index into a table laid out as `[-1, 0, 1, ...]`.
    pub fn slot(self) -> usize {
        match self {
            FValue::MinusOne => 0,
            FValue::Level(i) => i as usize + 1,
        }
    }
}

impl fmt::Display for FValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// f-value of `gamma`. Zero and non-units are outside the domain.
pub fn f_value<G: AsRef<UnitGroup>>(gamma: &BigUint, group: &G) -> Result<FValue, Error> {
    let units = group.as_ref();
    let gamma = units.reduce(gamma);
    if gamma.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !units.is_unit(&gamma) {
        return Err(Error::NotAUnit {
            element: gamma,
            modulus: units.modulus().clone(),
        });
    }
    f_value_of_power(&units.pow(&gamma, units.odd_part()), units)
}

/// f-value given `x^d` rather than `x`: at most `r - 1` squarings.
pub(crate) fn f_value_of_power(power: &BigUint, units: &UnitGroup) -> Result<FValue, Error> {
    if power.is_one() {
        return Ok(FValue::MinusOne);
    }
    let mut x = power.clone();
    for i in 0..units.two_adicity() {
        if x == *units.minus_one() {
            return Ok(FValue::Level(i));
        }
        x = units.square(&x);
    }
    Err(Error::CompositeModulus(units.modulus().clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    StrictNonResidue,
    RelativeNonResidue,
}

/// Auxiliary element multiplied into the descent to cancel `-1` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    element: BigUint,
    f: FValue,
    kind: WitnessKind,
}

impl Witness {
    /// Computes the f-value of `element`; the kind is strict exactly when
    /// `f = r - 1`.
    pub fn new<G: AsRef<UnitGroup>>(element: &BigUint, group: &G) -> Result<Self, Error> {
        let units = group.as_ref();
        let element = units.reduce(element);
        let f = f_value(&element, units)?;
        Ok(Self::from_parts(element, f, units))
    }

    /// Like [`Witness::new`] but rejects anything that is not a non-residue.
    pub fn strict<G: AsRef<UnitGroup>>(element: &BigUint, group: &G) -> Result<Self, Error> {
        let w = Self::new(element, group)?;
        if w.kind != WitnessKind::StrictNonResidue {
            return Err(Error::NotStrictWitness(w.element));
        }
        Ok(w)
    }

    fn from_parts(element: BigUint, f: FValue, units: &UnitGroup) -> Self {
        let kind = if f == FValue::Level(units.two_adicity() - 1) {
            WitnessKind::StrictNonResidue
        } else {
            WitnessKind::RelativeNonResidue
        };
        Self { element, f, kind }
    }

    pub fn element(&self) -> &BigUint {
        &self.element
    }

    pub fn f(&self) -> FValue {
        self.f
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn is_strict(&self) -> bool {
        self.kind == WitnessKind::StrictNonResidue
    }

    /// `f(self) > target`.
    pub fn suits(&self, target: FValue) -> bool {
        self.f > target
    }
}

pub enum SearchStrategy<'a> {
    /// Uniform draws from `[2, n - 2]`.
    Random(&'a mut dyn RngCore),
    /// `2, 3, 4, ...`; reproducible.
    Sequential,
}

pub struct WitnessSearch<'a> {
    pub strategy: SearchStrategy<'a>,
    pub max_attempts: u32,
}

impl<'a> WitnessSearch<'a> {
    pub fn random(rng: &'a mut dyn RngCore) -> Self {
        Self {
            strategy: SearchStrategy::Random(rng),
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn sequential() -> Self {
        Self {
            strategy: SearchStrategy::Sequential,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_max_attempts(mut self, max_attempts: u32) -> Self {
        self.max_attempts = max_attempts;
        self
    }

    fn candidate(&mut self, units: &UnitGroup, attempt: u32) -> Option<BigUint> {
        let two = BigUint::from(2u32);
        let n = units.modulus();
        // [2, n - 2], widened to [2, n - 1] for n = 3.
        let high = if *n > BigUint::from(4u32) {
            n - &two
        } else {
            n - BigUint::one()
        };
        match &mut self.strategy {
            SearchStrategy::Random(rng) => Some(random_in_range(&two, &high, &mut **rng)),
            SearchStrategy::Sequential => {
                let c = two + attempt;
                (c <= high).then_some(c)
            }
        }
    }

    /// Draw until `accept` holds for a unit candidate's f-value.
    fn run(
        &mut self,
        units: &UnitGroup,
        mut accept: impl FnMut(FValue) -> bool,
    ) -> Result<Witness, Error> {
        for attempt in 0..self.max_attempts {
            let Some(c) = self.candidate(units, attempt) else {
                break;
            };
            if !units.is_unit(&c) {
                continue;
            }
            let f = f_value(&c, units)?;
            if accept(f) {
                return Ok(Witness::from_parts(c, f, units));
            }
        }
        Err(Error::WitnessNotFound(self.max_attempts))
    }
}

/// Find a strict quadratic non-residue, classifying candidates by Euler's criterion.
pub fn find_strict_witness<G: AsRef<UnitGroup>>(
    group: &G,
    search: &mut WitnessSearch<'_>,
) -> Result<Witness, Error> {
    let units = group.as_ref();
    for attempt in 0..search.max_attempts {
        let Some(c) = search.candidate(units, attempt) else {
            break;
        };
        if !units.is_unit(&c) {
            continue;
        }
        if units.classify_unit(&c)? == Residuosity::NonResidue {
            let top = FValue::Level(units.two_adicity() - 1);
            return Ok(Witness::from_parts(c, top, units));
        }
    }
    Err(Error::WitnessNotFound(search.max_attempts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelativeWitness {
    /// `f(alpha) = -1`: the root is `alpha^((d+1)/2)` with no witness at all.
    NotNeeded,
    Found(Witness),
}

/// Find any `gamma` with `f(gamma) > f(alpha)` for a residue `alpha`.
pub fn find_relative_witness<G: AsRef<UnitGroup>>(
    alpha: &BigUint,
    group: &G,
    search: &mut WitnessSearch<'_>,
) -> Result<RelativeWitness, Error> {
    let units = group.as_ref();
    let target = f_value(alpha, units)?;
    if target == FValue::MinusOne {
        return Ok(RelativeWitness::NotNeeded);
    }
    if target >= FValue::Level(units.two_adicity() - 1) {
        return Err(Error::NotAResidue(units.reduce(alpha)));
    }
    search_witness_above(target, units, search).map(RelativeWitness::Found)
}

/// Search for a witness whose f-value exceeds `target`.
pub fn search_witness_above(
    target: FValue,
    units: &UnitGroup,
    search: &mut WitnessSearch<'_>,
) -> Result<Witness, Error> {
    search.run(units, |f| f > target)
}

/// Counts of each f-value class over all of `F_p^*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FCensus {
    r: u32,
    d: u64,
    /// `counts[0]` is `|S_{-1}|`, `counts[i + 1]` is `|S_i|`.
    counts: Vec<u64>,
}

impl FCensus {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn count(&self, f: FValue) -> u64 {
        self.counts.get(f.slot()).copied().unwrap_or(0)
    }

    /// `(f, |S_f|)` in increasing `f`.
    pub fn iter(&self) -> impl Iterator<Item = (FValue, u64)> + '_ {
        self.counts.iter().enumerate().map(|(slot, &c)| {
            let f = if slot == 0 {
                FValue::MinusOne
            } else {
                FValue::Level(slot as u32 - 1)
            };
            (f, c)
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `|S_{-1}| = d`, `|S_i| = 2^i d`.
    pub fn closed_form(r: u32, d: u64) -> Vec<u64> {
        core::iter::once(d).chain((0..r).map(|i| d << i)).collect()
    }

    pub fn matches_closed_form(&self) -> bool {
        self.counts == Self::closed_form(self.r, self.d)
    }
}

fn small_prime(field: &OddPrimeField, guard: u64, what: &'static str) -> Result<u64, Error> {
    match field.p_u64() {
        Some(p) if p <= guard => Ok(p),
        _ => Err(Error::GuardExceeded {
            what,
            value: field.p().clone(),
            limit: guard,
        }),
    }
}

/// Evaluate `f` on every element of `F_p^*`. Refuses `p > guard`.
pub fn f_census(field: &OddPrimeField, guard: u64) -> Result<FCensus, Error> {
    let p = small_prime(field, guard, "census prime")?;
    let r = field.r();
    let d = field.d().to_u64().expect("d < p fits in u64");
    let mut counts = alloc::vec![0u64; r as usize + 1];
    for x in 1..p {
        counts[f_value(&BigUint::from(x), field)?.slot()] += 1;
    }
    Ok(FCensus { r, d, counts })
}

/// Probability, averaged over residues `alpha`, that a uniform `gamma` in
/// `F_p^*` has `f(gamma) > f(alpha)`: `(2/3)(1 - 2^(-2r))`, exactly.
pub fn relative_witness_probability(field: &OddPrimeField) -> BigRational {
    let four_r = BigInt::one() << (2 * field.r() as usize);
    let numer = (&four_r - BigInt::one()) * BigInt::from(2);
    let denom = four_r * BigInt::from(3);
    BigRational::new(numer, denom)
}

/// Same ratio by counting every `(residue alpha, gamma)` pair directly.
/// Refuses `p > guard`.
pub fn exhaustive_relative_witness_ratio(
    field: &OddPrimeField,
    guard: u64,
) -> Result<BigRational, Error> {
    let (favorable, total) = count_relative_pairs(field, guard)?;
    Ok(BigRational::new(
        BigInt::from(favorable),
        BigInt::from(total),
    ))
}

/// `(favorable pairs, residues * (p - 1))`, unreduced.
pub fn count_relative_pairs(field: &OddPrimeField, guard: u64) -> Result<(u64, u64), Error> {
    let p = small_prime(field, guard, "pair-count prime")?;
    let mut fs = Vec::with_capacity(p as usize - 1);
    let mut residues = Vec::new();
    for x in 1..p {
        let xb = BigUint::from(x);
        fs.push(f_value(&xb, field)?);
        if field.units().classify_unit(&xb)? == Residuosity::Residue {
            residues.push(x);
        }
    }
    let mut favorable = 0u64;
    for &alpha in &residues {
        let fa = fs[alpha as usize - 1];
        favorable += fs.iter().filter(|&&fg| fg > fa).count() as u64;
    }
    Ok((favorable, residues.len() as u64 * (p - 1)))
}
