//! Square-root algorithms.
//!
//! [`sqrt_proposed_with`] is the top-down descent. It keeps the exponent pair
//! `(alpha_pow, beta_pow)` with `alpha^alpha_pow * w^beta_pow = 1`, starting at
//! `alpha_pow = order / 2`. Each step halves both exponents; if the product
//! becomes `-1`, `2^f(w) * d` is added to `beta_pow` since `w^(2^f(w) d) = -1`.
//! After `r - 1` steps `alpha_pow = d` is odd and
//! `sqrt(alpha) = alpha^((d+1)/2) * w^(beta_pow/2)`.
//!
//! Every power of `alpha` and `w` the descent needs is of the form
//! `x^(2^i d)`, so both are read from a [`PowerTable`] built with one
//! exponentiation and `r - 1` squarings.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::modmath::{OddPrimeField, PrimePowerGroup, Residuosity, UnitGroup};
use crate::residue::{f_value_of_power, search_witness_above, FValue, Witness, WitnessSearch};
use crate::Error;

/// Largest modulus the brute-force scanners accept by default.
pub const BRUTE_GUARD: u64 = 10_000_000;
/// Largest solution set [`enumerate_solution_set`] materialises by default.
pub const ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtOutcome {
    /// `canonical = min(x, m - x)`, `other = m - canonical`.
    Roots {
        canonical: BigUint,
        other: BigUint,
    },
    NonResidue,
    /// `alpha = 0`, whose only root is 0.
    ZeroRoot,
}

impl SqrtOutcome {
    pub fn from_root(root: &BigUint, units: &UnitGroup) -> Self {
        let (canonical, other) = units.canonical_pair(root);
        SqrtOutcome::Roots { canonical, other }
    }

    pub fn canonical(&self) -> Option<&BigUint> {
        match self {
            SqrtOutcome::Roots { canonical, .. } => Some(canonical),
            SqrtOutcome::NonResidue | SqrtOutcome::ZeroRoot => None,
        }
    }

    pub fn is_roots(&self) -> bool {
        matches!(self, SqrtOutcome::Roots { .. })
    }

    /// Whether every reported root squares to `alpha` modulo `modulus`.
    pub fn verify(&self, alpha: &BigUint, modulus: &BigUint) -> bool {
        let alpha = alpha % modulus;
        match self {
            SqrtOutcome::Roots { canonical, other } => {
                (canonical * canonical) % modulus == alpha
                    && (other * other) % modulus == alpha
                    && (canonical + other) % modulus == BigUint::zero()
                    && canonical <= other
            }
            SqrtOutcome::ZeroRoot => alpha.is_zero(),
            SqrtOutcome::NonResidue => true,
        }
    }
}

/// `[x^d, x^(2d), x^(4d), ..., x^(2^(r-1) d)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTable {
    base: BigUint,
    entries: Vec<BigUint>,
}

impl PowerTable {
    pub fn new(base: &BigUint, units: &UnitGroup) -> Self {
        let base = units.reduce(base);
        let base_d = units.pow(&base, units.odd_part());
        Self::from_odd_power(base, base_d, units)
    }

    fn from_odd_power(base: BigUint, base_d: BigUint, units: &UnitGroup) -> Self {
        let r = units.two_adicity() as usize;
        let mut entries = Vec::with_capacity(r);
        entries.push(base_d);
        for i in 1..r {
            let next = units.square(&entries[i - 1]);
            entries.push(next);
        }
        Self { base, entries }
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// `base^(2^i d)`.
    pub fn get(&self, i: u32) -> Option<&BigUint> {
        self.entries.get(i as usize)
    }

    /// `base^(m d)` as a product of entries over the set bits of `m`.
    /// `None` when `m >= 2^r`.
    pub fn pow_odd_multiple(&self, m: &BigUint, units: &UnitGroup) -> Option<BigUint> {
        if m.bits() > self.entries.len() as u64 {
            return None;
        }
        let mut acc = BigUint::one();
        for (i, e) in self.entries.iter().enumerate() {
            if m.bit(i as u64) {
                acc = units.mul(&acc, e);
            }
        }
        Some(units.reduce(&acc))
    }

    fn f_value(&self, units: &UnitGroup) -> Result<FValue, Error> {
        f_value_of_power(&self.entries[0], units)
    }
}

/// Supplies a witness the first time the descent meets `-1`, at which point
/// `f(alpha)` is known.
pub trait WitnessProvider {
    fn provide(
        &mut self,
        alpha: &BigUint,
        alpha_f: FValue,
        units: &UnitGroup,
    ) -> Result<Witness, Error>;
}

/// A caller-chosen witness element.
#[derive(Debug, Clone, Copy)]
pub struct FixedWitness<'a>(pub &'a BigUint);

impl WitnessProvider for FixedWitness<'_> {
    fn provide(&mut self, _: &BigUint, _: FValue, units: &UnitGroup) -> Result<Witness, Error> {
        Witness::new(self.0, units)
    }
}

/// Searches for a relative non-residue on demand.
pub struct LazyRelativeWitness<'s, 'r> {
    pub search: &'s mut WitnessSearch<'r>,
}

impl WitnessProvider for LazyRelativeWitness<'_, '_> {
    fn provide(
        &mut self,
        _: &BigUint,
        alpha_f: FValue,
        units: &UnitGroup,
    ) -> Result<Witness, Error> {
        search_witness_above(alpha_f, units, self.search)
    }
}

/// Result of one descent, with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub outcome: SqrtOutcome,
    /// Main-loop iterations; `r - 1` for every residue.
    pub iterations: u32,
    /// The witness actually multiplied in, if any `-1` was met.
    pub witness: Option<Witness>,
    /// `m` with `alpha^d * w^(2 m d) = 1`.
    pub m: BigUint,
}

impl Descent {
    fn trivial(outcome: SqrtOutcome) -> Self {
        Self {
            outcome,
            iterations: 0,
            witness: None,
            m: BigUint::zero(),
        }
    }
}

struct WitnessState {
    witness: Witness,
    table: PowerTable,
    /// `2^f(w) * d`, added to `beta_pow` on every `-1`.
    step: BigUint,
}

/// The top-down descent in any `Z_{p^k}^*`.
pub fn sqrt_proposed_with<G, P>(
    alpha: &BigUint,
    group: &G,
    provider: &mut P,
) -> Result<Descent, Error>
where
    G: AsRef<UnitGroup>,
    P: WitnessProvider + ?Sized,
{
    let units = group.as_ref();
    let alpha = units.reduce(alpha);
    if alpha.is_zero() {
        return Ok(Descent::trivial(SqrtOutcome::ZeroRoot));
    }
    if !units.is_unit(&alpha) {
        return Err(Error::NotAUnit {
            element: alpha,
            modulus: units.modulus().clone(),
        });
    }
    let d = units.odd_part();
    let r = units.two_adicity();

    // alpha^((d-1)/2) gives both alpha^d and alpha^((d+1)/2).
    let half = units.pow(&alpha, &(d >> 1u32));
    let root_base = units.mul(&half, &alpha);
    let alpha_d = units.mul(&units.square(&half), &alpha);
    let alpha_table = PowerTable::from_odd_power(alpha.clone(), alpha_d, units);

    // Top entry is alpha^(order/2): Euler's criterion.
    if units.classify_power(&alpha_table.entries[r as usize - 1])? == Residuosity::NonResidue {
        return Ok(Descent::trivial(SqrtOutcome::NonResidue));
    }

    let minus_one = units.minus_one();
    let mut witness: Option<WitnessState> = None;
    let mut beta_pow = BigUint::zero();
    let mut level = r - 1;
    let mut iterations = 0u32;

    let witness_power =
        |state: &Option<WitnessState>, beta_pow: &BigUint| -> Result<BigUint, Error> {
            match state {
                None => Ok(BigUint::one()),
                Some(s) => {
                    let (m, rem) = beta_pow.div_rem(d);
                    if !rem.is_zero() {
                        return Err(Error::CertificateFailed(
                            "witness exponent not a multiple of d",
                        ));
                    }
                    s.table
                        .pow_odd_multiple(&m, units)
                        .ok_or(Error::CertificateFailed(
                            "witness exponent out of table range",
                        ))
                }
            }
        };

    while level > 0 {
        iterations += 1;
        level -= 1;
        if beta_pow.is_odd() {
            return Err(Error::CertificateFailed(
                "odd witness exponent before halving",
            ));
        }
        beta_pow >>= 1u32;

        let value = units.mul(
            &alpha_table.entries[level as usize],
            &witness_power(&witness, &beta_pow)?,
        );
        if value == *minus_one {
            if witness.is_none() {
                // First -1 fixes f(alpha) = level.
                let alpha_f = FValue::Level(level);
                let w = provider.provide(&alpha, alpha_f, units)?;
                let table = PowerTable::new(w.element(), units);
                let w_f = table.f_value(units)?;
                let FValue::Level(t) = w_f else {
                    return Err(Error::WitnessNotRelative {
                        witness: w.element().clone(),
                        witness_f: w_f,
                        target_f: alpha_f,
                    });
                };
                if w_f <= alpha_f {
                    return Err(Error::WitnessNotRelative {
                        witness: w.element().clone(),
                        witness_f: w_f,
                        target_f: alpha_f,
                    });
                }
                let step = d << t;
                witness = Some(WitnessState {
                    witness: w,
                    table,
                    step,
                });
            }
            let state = witness.as_ref().expect("witness set above");
            beta_pow += &state.step;
        } else if !value.is_one() {
            return Err(Error::CompositeModulus(units.modulus().clone()));
        }
    }

    // alpha^d * w^beta_pow = 1 with beta_pow = 2 m d.
    let certificate = units.mul(
        &alpha_table.entries[0],
        &witness_power(&witness, &beta_pow)?,
    );
    if !certificate.is_one() {
        return Err(Error::CertificateFailed("alpha^d * w^(2md) != 1"));
    }
    if beta_pow.is_odd() {
        return Err(Error::CertificateFailed(
            "odd witness exponent before final halving",
        ));
    }
    beta_pow >>= 1u32;
    let root = units.mul(&root_base, &witness_power(&witness, &beta_pow)?);
    if units.square(&root) != alpha {
        return Err(Error::CertificateFailed("root does not square to alpha"));
    }

    Ok(Descent {
        outcome: SqrtOutcome::from_root(&root, units),
        iterations,
        m: &beta_pow / d,
        witness: witness.map(|s| s.witness),
    })
}

/// Square root in `F_p` by descent. Without a witness, one is acquired only
/// if needed, by a sequential relative search.
pub fn sqrt_proposed(
    alpha: &BigUint,
    field: &OddPrimeField,
    witness: Option<&Witness>,
) -> Result<SqrtOutcome, Error> {
    descend(alpha, field.units(), witness).map(|d| d.outcome)
}

/// Square root in `Z_{p^k}^*` by descent. `alpha` must be a unit.
pub fn sqrt_proposed_pk(
    alpha: &BigUint,
    group: &PrimePowerGroup,
    witness: Option<&Witness>,
) -> Result<SqrtOutcome, Error> {
    let alpha = group.units().reduce(alpha);
    if !group.units().is_unit(&alpha) {
        return Err(Error::NotAUnit {
            element: alpha,
            modulus: group.modulus().clone(),
        });
    }
    descend(&alpha, group.units(), witness).map(|d| d.outcome)
}

fn descend(
    alpha: &BigUint,
    units: &UnitGroup,
    witness: Option<&Witness>,
) -> Result<Descent, Error> {
    match witness {
        Some(w) => sqrt_proposed_with(alpha, units, &mut FixedWitness(w.element())),
        None => {
            let mut search = WitnessSearch::sequential();
            sqrt_proposed_with(
                alpha,
                units,
                &mut LazyRelativeWitness {
                    search: &mut search,
                },
            )
        }
    }
}

/// Tonelli-Shanks with a strict non-residue, as the classic loop:
/// `M = r, c = w^d, t = alpha^d, R = alpha^((d+1)/2)`, keeping `R^2 = alpha t`.
pub fn sqrt_tonelli_shanks(
    alpha: &BigUint,
    field: &OddPrimeField,
    witness: &Witness,
) -> Result<SqrtOutcome, Error> {
    let units = field.units();
    let alpha = units.reduce(alpha);
    if alpha.is_zero() {
        return Ok(SqrtOutcome::ZeroRoot);
    }
    if units.classify_unit(&alpha)? == Residuosity::NonResidue {
        return Ok(SqrtOutcome::NonResidue);
    }
    let beta = units.reduce(witness.element());
    if beta.is_zero() || units.classify_unit(&beta)? != Residuosity::NonResidue {
        return Err(Error::NotStrictWitness(beta));
    }

    let d = units.odd_part();
    let mut m = units.two_adicity();
    let mut c = units.pow(&beta, d);
    let mut t = units.pow(&alpha, d);
    let mut root = units.pow(&alpha, &((d + 1u32) >> 1u32));

    while !t.is_one() {
        let mut i = 0u32;
        let mut probe = t.clone();
        while !probe.is_one() {
            probe = units.square(&probe);
            i += 1;
            if i == m {
                return Err(Error::TonelliStall(m));
            }
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = units.square(&b);
        }
        m = i;
        c = units.square(&b);
        t = units.mul(&t, &c);
        root = units.mul(&root, &b);
    }
    Ok(SqrtOutcome::from_root(&root, units))
}

/// `±alpha^((p+1)/4)` for `p = 3 (mod 4)`.
pub fn sqrt_direct_3mod4(alpha: &BigUint, field: &OddPrimeField) -> Result<SqrtOutcome, Error> {
    if !field.is_three_mod_four() {
        return Err(Error::WrongPrimeClass(field.p().clone()));
    }
    let units = field.units();
    let alpha = units.reduce(&alpha.clone());
    if alpha.is_zero() {
        return Ok(SqrtOutcome::ZeroRoot);
    }
    if units.classify_unit(&alpha)? == Residuosity::NonResidue {
        return Ok(SqrtOutcome::NonResidue);
    }
    let exponent = (field.p() + 1u32) >> 2u32;
    Ok(SqrtOutcome::from_root(&units.pow(&alpha, &exponent), units))
}

/// `F_2`: every element is its own root.
pub fn sqrt_mod_two(alpha: &BigUint) -> SqrtOutcome {
    if alpha.is_even() {
        SqrtOutcome::ZeroRoot
    } else {
        SqrtOutcome::Roots {
            canonical: BigUint::one(),
            other: BigUint::one(),
        }
    }
}

/// The `2^k` candidates `alpha^((d+1)/2) * w^(2^(r-1-k) i d)`, `0 <= i < 2^k`,
/// where `k` is minimal with `alpha^(2^k d) = 1`. One of them is a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub alpha: BigUint,
    pub k: u32,
    pub elements: Vec<BigUint>,
}

impl SolutionSet {
    /// Candidates that actually square to `alpha`.
    pub fn roots<'a>(&'a self, units: &'a UnitGroup) -> impl Iterator<Item = &'a BigUint> + 'a {
        self.elements
            .iter()
            .filter(move |x| units.square(x) == self.alpha)
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        self.elements.contains(x)
    }
}

/// Materialise the candidate set for a residue `alpha` and strict witness.
/// Refuses sets larger than `cap`.
pub fn enumerate_solution_set<G: AsRef<UnitGroup>>(
    alpha: &BigUint,
    group: &G,
    witness: &Witness,
    cap: u64,
) -> Result<SolutionSet, Error> {
    let units = group.as_ref();
    let alpha = units.reduce(alpha);
    if alpha.is_zero() || !units.is_unit(&alpha) {
        return Err(Error::NotAResidue(alpha));
    }
    if units.classify_unit(&alpha)? != Residuosity::Residue {
        return Err(Error::NotAResidue(alpha));
    }
    let beta = units.reduce(witness.element());
    if beta.is_zero()
        || !units.is_unit(&beta)
        || units.classify_unit(&beta)? != Residuosity::NonResidue
    {
        return Err(Error::NotStrictWitness(beta));
    }

    let d = units.odd_part();
    let r = units.two_adicity();
    let mut k = 0u32;
    let mut x = units.pow(&alpha, d);
    while !x.is_one() {
        x = units.square(&x);
        k += 1;
        if k >= r {
            return Err(Error::CompositeModulus(units.modulus().clone()));
        }
    }
    let size = 1u64
        .checked_shl(k)
        .filter(|&s| s <= cap)
        .ok_or(Error::GuardExceeded {
            what: "solution set size 2^k with k =",
            value: BigUint::from(k),
            limit: cap,
        })?;

    let step = units.pow(&beta, &(d << (r - 1 - k)));
    let mut elements = Vec::with_capacity(size as usize);
    let mut current = units.pow(&alpha, &((d + 1u32) >> 1u32));
    for _ in 0..size {
        let next = units.mul(&current, &step);
        elements.push(current);
        current = next;
    }
    Ok(SolutionSet { alpha, k, elements })
}

fn small_modulus(modulus: &BigUint, guard: u64) -> Result<u64, Error> {
    match modulus.to_u64() {
        Some(m) if m <= guard && m >= 2 => Ok(m),
        _ => Err(Error::GuardExceeded {
            what: "brute-force modulus",
            value: modulus.clone(),
            limit: guard,
        }),
    }
}

/// Scan `x = 0, 1, ..., m/2` for `x^2 = alpha (mod m)`. The first hit is the
/// canonical root. Refuses `m > guard`.
pub fn brute_sqrt(alpha: &BigUint, modulus: &BigUint, guard: u64) -> Result<SqrtOutcome, Error> {
    let m = small_modulus(modulus, guard)?;
    let a = (alpha % modulus)
        .to_u64()
        .expect("reduced below a u64 modulus");
    let hit = (0..=m / 2).find(|&x| (u128::from(x) * u128::from(x) % u128::from(m)) as u64 == a);
    Ok(match hit {
        None => SqrtOutcome::NonResidue,
        Some(0) => SqrtOutcome::ZeroRoot,
        Some(x) => SqrtOutcome::Roots {
            canonical: BigUint::from(x),
            other: BigUint::from(m - x),
        },
    })
}

/// Smallest square root of every residue mod `m`, by one pass over `0..=m/2`.
/// Same answers as [`brute_sqrt`], amortised over a whole modulus.
#[derive(Debug, Clone)]
pub struct SquareTable {
    modulus: u64,
    smallest_root: Vec<u32>,
}

impl SquareTable {
    const NONE: u32 = u32::MAX;

    pub fn new(modulus: u64, guard: u64) -> Result<Self, Error> {
        let m = small_modulus(&BigUint::from(modulus), guard.min(u64::from(u32::MAX - 1)))?;
        let mut smallest_root = alloc::vec![Self::NONE; m as usize];
        for x in (0..=m / 2).rev() {
            smallest_root[(x * x % m) as usize] = x as u32;
        }
        Ok(Self {
            modulus: m,
            smallest_root,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn lookup(&self, alpha: u64) -> SqrtOutcome {
        match self.smallest_root[(alpha % self.modulus) as usize] {
            Self::NONE => SqrtOutcome::NonResidue,
            0 => SqrtOutcome::ZeroRoot,
            x => SqrtOutcome::Roots {
                canonical: BigUint::from(x),
                other: BigUint::from(self.modulus - u64::from(x)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::find_strict_witness;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn roots(a: u64, b: u64) -> SqrtOutcome {
        SqrtOutcome::Roots {
            canonical: big(a),
            other: big(b),
        }
    }

    fn field(p: u64) -> OddPrimeField {
        OddPrimeField::from_u64(p).unwrap()
    }

    fn witness(w: u64, f: &OddPrimeField) -> Witness {
        Witness::new(&big(w), f).unwrap()
    }

    #[test]
    fn power_table_layout() {
        let f = field(97);
        let t = PowerTable::new(&big(5), f.units());
        assert_eq!(t.entries().len(), 5);
        for i in 0..4 {
            assert_eq!(t.entries()[i + 1], f.units().square(&t.entries()[i]));
        }
        assert_eq!(*t.get(4).unwrap(), big(96));
        assert_eq!(
            t.pow_odd_multiple(&big(13), f.units()),
            Some(f.units().pow(&big(5), &big(39)))
        );
        assert_eq!(t.pow_odd_multiple(&big(32), f.units()), None);
    }

    #[test]
    fn proposed_examples() {
        let f97 = field(97);
        assert_eq!(
            sqrt_proposed(&big(2), &f97, Some(&witness(5, &f97))).unwrap(),
            roots(14, 83)
        );
        assert_eq!(
            sqrt_proposed(&big(6), &field(43), None).unwrap(),
            roots(7, 36)
        );
        let f41 = field(41);
        assert_eq!(
            sqrt_proposed(&big(2), &f41, Some(&witness(3, &f41))).unwrap(),
            roots(17, 24)
        );
        let f13 = field(13);
        assert_eq!(
            sqrt_proposed(&big(12), &f13, Some(&witness(5, &f13))).unwrap(),
            roots(5, 8)
        );
        assert_eq!(
            sqrt_proposed(&big(6), &f97, Some(&witness(9, &f97))).unwrap(),
            roots(43, 54)
        );
        assert_eq!(
            sqrt_proposed(&big(6), &f97, Some(&witness(2, &f97))).unwrap(),
            roots(43, 54)
        );
        for p in [3u64, 7, 13, 97] {
            assert_eq!(
                sqrt_proposed(&big(1), &field(p), None).unwrap(),
                roots(1, p - 1)
            );
        }
        assert_eq!(
            sqrt_proposed(&big(0), &f97, None).unwrap(),
            SqrtOutcome::ZeroRoot
        );
        assert_eq!(
            sqrt_proposed(&big(5), &f97, None).unwrap(),
            SqrtOutcome::NonResidue
        );
    }

    #[test]
    fn example_a_exponent_trace() {
        let f97 = field(97);
        let d = sqrt_proposed_with(&big(2), f97.units(), &mut FixedWitness(&big(5))).unwrap();
        assert_eq!(d.iterations, 4);
        // beta_pow ends at 90 = 2 * 45 = 2 * m * 3.
        assert_eq!(d.m, big(15));
        assert_eq!(d.witness.unwrap().f(), FValue::Level(4));
    }

    #[test]
    fn unsuitable_witness_is_rejected() {
        let f97 = field(97);
        let err = sqrt_proposed(&big(6), &f97, Some(&witness(22, &f97))).unwrap_err();
        assert!(matches!(err, Error::WitnessNotRelative { .. }), "{err:?}");
        // 6 needs no witness mod 43, so a useless one is never consulted.
        let f43 = field(43);
        assert_eq!(
            sqrt_proposed(&big(6), &f43, Some(&witness(4, &f43))).unwrap(),
            roots(7, 36)
        );
    }

    #[test]
    fn prime_power_examples() {
        let g = PrimePowerGroup::from_u64(41, 3).unwrap();
        let w = Witness::new(&big(3), &g).unwrap();
        assert_eq!(
            sqrt_proposed_pk(&big(5), &g, Some(&w)).unwrap(),
            roots(3226, 65695)
        );
        let g43 = PrimePowerGroup::from_u64(43, 3).unwrap();
        assert_eq!(
            sqrt_proposed_pk(&big(1), &g43, None).unwrap(),
            roots(1, 79506)
        );
        assert_eq!(
            sqrt_proposed_pk(&big(5), &g43, None).unwrap(),
            SqrtOutcome::NonResidue
        );
        let g49 = PrimePowerGroup::from_u64(7, 2).unwrap();
        assert_eq!(
            sqrt_proposed_pk(&big(2), &g49, None).unwrap(),
            roots(10, 39)
        );
        assert!(matches!(
            sqrt_proposed_pk(&big(14), &g49, None),
            Err(Error::NotAUnit { .. })
        ));
        assert!(matches!(
            sqrt_proposed_pk(&big(0), &g49, None),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn tonelli_examples() {
        let f97 = field(97);
        assert_eq!(
            sqrt_tonelli_shanks(&big(2), &f97, &witness(5, &f97)).unwrap(),
            roots(14, 83)
        );
        let f41 = field(41);
        assert_eq!(
            sqrt_tonelli_shanks(&big(2), &f41, &witness(3, &f41)).unwrap(),
            roots(17, 24)
        );
        let f17 = field(17);
        assert_eq!(
            sqrt_tonelli_shanks(&big(4), &f17, &witness(3, &f17)).unwrap(),
            roots(2, 15)
        );
        assert_eq!(
            sqrt_tonelli_shanks(&big(3), &f17, &witness(3, &f17)).unwrap(),
            SqrtOutcome::NonResidue
        );
        assert!(matches!(
            sqrt_tonelli_shanks(&big(4), &f97, &witness(9, &f97)),
            Err(Error::NotStrictWitness(_))
        ));
    }

    #[test]
    fn direct_examples() {
        assert_eq!(
            sqrt_direct_3mod4(&big(6), &field(43)).unwrap(),
            roots(7, 36)
        );
        assert_eq!(sqrt_direct_3mod4(&big(1), &field(7)).unwrap(), roots(1, 6));
        assert_eq!(sqrt_direct_3mod4(&big(2), &field(7)).unwrap(), roots(3, 4));
        assert_eq!(
            sqrt_direct_3mod4(&big(3), &field(7)).unwrap(),
            SqrtOutcome::NonResidue
        );
        assert!(matches!(
            sqrt_direct_3mod4(&big(2), &field(97)),
            Err(Error::WrongPrimeClass(_))
        ));
    }

    #[test]
    fn mod_two() {
        assert_eq!(sqrt_mod_two(&big(0)), SqrtOutcome::ZeroRoot);
        assert_eq!(sqrt_mod_two(&big(7)), roots(1, 1));
    }

    #[test]
    fn solution_set_examples() {
        let f41 = field(41);
        let s = enumerate_solution_set(&big(2), &f41, &witness(3, &f41), ENUMERATION_CAP).unwrap();
        assert_eq!(s.k, 2);
        assert_eq!(s.elements, [big(8), big(17), big(31), big(30)]);
        assert!(s.contains(&big(17)));
        assert_eq!(s.roots(f41.units()).collect::<Vec<_>>(), [&big(17)]);

        let f43 = field(43);
        let s = enumerate_solution_set(&big(6), &f43, &witness(3, &f43), ENUMERATION_CAP).unwrap();
        assert_eq!((s.k, s.elements), (0, alloc::vec![big(36)]));

        let f97 = field(97);
        let s = enumerate_solution_set(&big(1), &f97, &witness(5, &f97), ENUMERATION_CAP).unwrap();
        assert_eq!((s.k, s.elements), (0, alloc::vec![big(1)]));

        assert!(matches!(
            enumerate_solution_set(&big(5), &f97, &witness(5, &f97), ENUMERATION_CAP),
            Err(Error::NotAResidue(_))
        ));
        assert!(matches!(
            enumerate_solution_set(&big(2), &f97, &witness(9, &f97), ENUMERATION_CAP),
            Err(Error::NotStrictWitness(_))
        ));
        // f(2) = 3 mod 97, so k = 4 and 16 candidates.
        assert!(matches!(
            enumerate_solution_set(&big(2), &f97, &witness(5, &f97), 8),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn brute_examples() {
        assert_eq!(
            brute_sqrt(&big(2), &big(97), BRUTE_GUARD).unwrap(),
            roots(14, 83)
        );
        assert_eq!(
            brute_sqrt(&big(5), &big(68921), BRUTE_GUARD).unwrap(),
            roots(3226, 65695)
        );
        assert_eq!(
            brute_sqrt(&big(3), &big(7), BRUTE_GUARD).unwrap(),
            SqrtOutcome::NonResidue
        );
        assert_eq!(
            brute_sqrt(&big(0), &big(7), BRUTE_GUARD).unwrap(),
            SqrtOutcome::ZeroRoot
        );
        assert!(matches!(
            brute_sqrt(&big(2), &big(97), 50),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn square_table_matches_brute_scan() {
        for m in [2u64, 3, 7, 9, 13, 25, 49, 97, 121, 343] {
            let table = SquareTable::new(m, BRUTE_GUARD).unwrap();
            for a in 0..m {
                assert_eq!(
                    table.lookup(a),
                    brute_sqrt(&big(a), &big(m), BRUTE_GUARD).unwrap(),
                    "{a} mod {m}"
                );
            }
        }
    }

    #[test]
    fn lazy_witness_agrees_with_strict() {
        let f = field(7681);
        let strict = find_strict_witness(&f, &mut WitnessSearch::sequential()).unwrap();
        for a in 1..400u64 {
            let lazy = sqrt_proposed(&big(a), &f, None).unwrap();
            let with = sqrt_proposed(&big(a), &f, Some(&strict)).unwrap();
            assert_eq!(lazy, with, "alpha = {a}");
        }
    }
}
