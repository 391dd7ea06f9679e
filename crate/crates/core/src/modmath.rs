//! Modular arithmetic substrate: exponentiation, 2-adic decomposition of group
//! orders, primality, and Euler-criterion classification.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_core::RngCore;

use crate::Error;

/// Number of strong-pseudoprime rounds run when validating a field prime.
pub const MILLER_RABIN_ROUNDS: usize = 40;

const SMALL_PRIMES: [u32; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// `base^exponent mod modulus` by binary exponentiation. `0^0` is 1.
///
/// Panics if `modulus < 2`.
pub fn mod_pow(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(
        *modulus >= BigUint::from(2u32),
        "modulus must be at least 2"
    );
    base.modpow(exponent, modulus)
}

/// Split a positive even `n` as `2^r * d` with `d` odd and `r >= 1`.
pub fn decompose_two_adic(n: &BigUint) -> Result<(u32, BigUint), Error> {
    if n.is_zero() || n.is_odd() {
        return Err(Error::NotPositiveEven(n.clone()));
    }
    // n is non-zero, so trailing_zeros is defined.
    let r = n.trailing_zeros().unwrap_or(0);
    let r = u32::try_from(r).map_err(|_| Error::NotPositiveEven(n.clone()))?;
    Ok((r, n >> r))
}

/// Miller-Rabin with the first [`MILLER_RABIN_ROUNDS`] primes as bases, after
/// trial division by the same primes.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in SMALL_PRIMES.iter().take(MILLER_RABIN_ROUNDS) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
            if x == one {
                return false;
            }
        }
        return false;
    }
    true
}

/// Uniform integer in `[0, bound)` by rejection sampling. `bound` must be non-zero.
pub fn random_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty sampling range");
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess = (bytes as u64) * 8 - bits;
    let mut buf = alloc::vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[bytes - 1] &= 0xffu8 >> excess;
        let candidate = BigUint::from_bytes_le(&buf);
        if candidate < *bound {
            return candidate;
        }
    }
}

/// Uniform integer in the inclusive range `[low, high]`.
pub fn random_in_range<R: RngCore + ?Sized>(low: &BigUint, high: &BigUint, rng: &mut R) -> BigUint {
    assert!(low <= high, "empty sampling range");
    let span = high - low + BigUint::one();
    low + random_below(&span, rng)
}

/// Reduce a signed integer into `[0, modulus)`.
pub fn reduce_signed(value: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    value
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

/// The multiplicative group of units modulo `p^k` (odd prime `p`), which is
/// cyclic of order `2^r * d`. Prime fields are the case `k = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: BigUint,
    order: BigUint,
    two_adicity: u32,
    odd_part: BigUint,
    minus_one: BigUint,
}

impl UnitGroup {
    fn new(modulus: BigUint, order: BigUint) -> Result<Self, Error> {
        let (two_adicity, odd_part) = decompose_two_adic(&order)?;
        let minus_one = &modulus - BigUint::one();
        Ok(Self {
            modulus,
            order,
            two_adicity,
            odd_part,
            minus_one,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Group order, `p - 1` for a field and `phi(p^k)` otherwise.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `r` in `order = 2^r * d`.
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// `d` in `order = 2^r * d`.
    pub fn odd_part(&self) -> &BigUint {
        &self.odd_part
    }

    /// `modulus - 1`, the only square root of unity besides 1.
    pub fn minus_one(&self) -> &BigUint {
        &self.minus_one
    }

    pub fn reduce(&self, x: &BigUint) -> BigUint {
        x % &self.modulus
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b % &self.modulus
    }

    pub fn square(&self, a: &BigUint) -> BigUint {
        a * a % &self.modulus
    }

    pub fn pow(&self, base: &BigUint, exponent: &BigUint) -> BigUint {
        mod_pow(base, exponent, &self.modulus)
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        let a = self.reduce(a);
        if a.is_zero() {
            a
        } else {
            &self.modulus - a
        }
    }

    pub fn is_unit(&self, x: &BigUint) -> bool {
        x.gcd(&self.modulus).is_one()
    }

    /// `(min(x, m - x), max(x, m - x))`.
    pub fn canonical_pair(&self, x: &BigUint) -> (BigUint, BigUint) {
        let x = self.reduce(x);
        let y = self.neg(&x);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// Euler's criterion on a unit: `x^(order/2)` must be `1` or `-1`.
    pub(crate) fn classify_unit(&self, x: &BigUint) -> Result<Residuosity, Error> {
        let half = &self.order >> 1u32;
        self.classify_power(&self.pow(x, &half))
    }

    pub(crate) fn classify_power(&self, power: &BigUint) -> Result<Residuosity, Error> {
        if power.is_one() {
            Ok(Residuosity::Residue)
        } else if *power == self.minus_one {
            Ok(Residuosity::NonResidue)
        } else {
            Err(Error::CompositeModulus(self.modulus.clone()))
        }
    }
}

impl AsRef<UnitGroup> for UnitGroup {
    fn as_ref(&self) -> &UnitGroup {
        self
    }
}

/// `F_p` for an odd prime `p`, carrying `p - 1 = 2^r * d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPrimeField {
    units: UnitGroup,
}

impl OddPrimeField {
    /// Validates that `p` is an odd (probable) prime.
    pub fn new(p: BigUint) -> Result<Self, Error> {
        if p.is_even() || !is_probable_prime(&p) {
            return Err(Error::NotOddPrime(p));
        }
        let order = &p - BigUint::one();
        Ok(Self {
            units: UnitGroup::new(p, order)?,
        })
    }

    pub fn from_u64(p: u64) -> Result<Self, Error> {
        Self::new(BigUint::from(p))
    }

    pub fn p(&self) -> &BigUint {
        self.units.modulus()
    }

    pub fn r(&self) -> u32 {
        self.units.two_adicity()
    }

    pub fn d(&self) -> &BigUint {
        self.units.odd_part()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    /// `p mod 4 == 3`, the class admitting the direct `(p+1)/4` formula.
    pub fn is_three_mod_four(&self) -> bool {
        self.r() == 1
    }

    /// Small primes as `u64`, when they fit.
    pub fn p_u64(&self) -> Option<u64> {
        self.p().to_u64()
    }
}

impl AsRef<UnitGroup> for OddPrimeField {
    fn as_ref(&self) -> &UnitGroup {
        &self.units
    }
}

/// `Z_{p^k}^*` for an odd prime `p` and `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerGroup {
    p: BigUint,
    k: u32,
    units: UnitGroup,
}

impl PrimePowerGroup {
    pub fn new(p: BigUint, k: u32) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let field = OddPrimeField::new(p)?;
        let p = field.p().clone();
        let p_to_k_minus_1 = num_traits::pow(p.clone(), (k - 1) as usize);
        let modulus = &p_to_k_minus_1 * &p;
        let phi = field.units.order() * &p_to_k_minus_1;
        Ok(Self {
            p,
            k,
            units: UnitGroup::new(modulus, phi)?,
        })
    }

    pub fn from_u64(p: u64, k: u32) -> Result<Self, Error> {
        Self::new(BigUint::from(p), k)
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> &BigUint {
        self.units.modulus()
    }

    /// Euler's totient `p^(k-1) * (p - 1)`.
    pub fn phi(&self) -> &BigUint {
        self.units.order()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }
}

impl AsRef<UnitGroup> for PrimePowerGroup {
    fn as_ref(&self) -> &UnitGroup {
        &self.units
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Residuosity {
    Residue,
    NonResidue,
    Zero,
}

impl Residuosity {
    pub fn as_str(self) -> &'static str {
        match self {
            Residuosity::Residue => "residue",
            Residuosity::NonResidue => "non-residue",
            Residuosity::Zero => "zero",
        }
    }
}

impl core::fmt::Display for Residuosity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Euler's criterion in `F_p`. A power other than `±1` means `p` is composite
/// and is reported as an error, never as a non-residue.
pub fn euler_classify(alpha: &BigUint, field: &OddPrimeField) -> Result<Residuosity, Error> {
    let alpha = field.units.reduce(alpha);
    if alpha.is_zero() {
        return Ok(Residuosity::Zero);
    }
    field.units.classify_unit(&alpha)
}

/// Euler's criterion in `Z_{p^k}^*` using `phi(p^k) / 2`.
pub fn euler_classify_pk(alpha: &BigUint, group: &PrimePowerGroup) -> Result<Residuosity, Error> {
    let alpha = group.units.reduce(alpha);
    if !group.units.is_unit(&alpha) {
        return Err(Error::NotAUnit {
            element: alpha,
            modulus: group.modulus().clone(),
        });
    }
    group.units.classify_unit(&alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&big(2), &big(48), &big(97)), big(1));
        assert_eq!(mod_pow(&big(5), &big(48), &big(97)), big(96));
        assert_eq!(mod_pow(&big(0), &big(0), &big(97)), big(1));
        assert_eq!(mod_pow(&big(12345), &big(0), &big(2)), big(1));
    }

    #[test]
    fn mod_pow_matches_naive_exhaustively() {
        for m in 2u64..50 {
            for b in 0..m {
                let mut acc = 1 % m;
                for e in 0u64..50 {
                    assert_eq!(
                        mod_pow(&big(b), &big(e), &big(m)),
                        big(acc),
                        "{b}^{e} mod {m}"
                    );
                    acc = acc * b % m;
                }
            }
        }
    }

    #[test]
    fn two_adic_examples() {
        assert_eq!(decompose_two_adic(&big(96)).unwrap(), (5, big(3)));
        assert_eq!(decompose_two_adic(&big(40)).unwrap(), (3, big(5)));
        assert_eq!(decompose_two_adic(&big(12)).unwrap(), (2, big(3)));
        assert!(decompose_two_adic(&big(0)).is_err());
        assert!(decompose_two_adic(&big(7)).is_err());
    }

    #[test]
    fn primality_small_range() {
        let sieve = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|q| q * q <= n)
                    .all(|q| !n.is_multiple_of(q))
        };
        for n in 0u64..5000 {
            assert_eq!(is_probable_prime(&big(n)), sieve(n), "{n}");
        }
        // Carmichael numbers and a strong pseudoprime to base 2.
        for n in [561u64, 1105, 1729, 2047, 3215031751, 3825123056546413051] {
            assert!(!is_probable_prime(&big(n)), "{n}");
        }
        let p100: BigUint = "633825300114114732634188808193".parse().unwrap();
        assert!(is_probable_prime(&p100));
    }

    #[test]
    fn field_construction() {
        let f = OddPrimeField::from_u64(97).unwrap();
        assert_eq!((f.r(), f.d().clone()), (5, big(3)));
        assert!(matches!(
            OddPrimeField::from_u64(2),
            Err(Error::NotOddPrime(_))
        ));
        assert!(matches!(
            OddPrimeField::from_u64(15),
            Err(Error::NotOddPrime(_))
        ));
        assert!(matches!(
            OddPrimeField::from_u64(1),
            Err(Error::NotOddPrime(_))
        ));
    }

    #[test]
    fn prime_power_group_totient() {
        let g = PrimePowerGroup::from_u64(41, 3).unwrap();
        assert_eq!(*g.modulus(), big(68921));
        assert_eq!(*g.phi(), big(67240));
        assert_eq!(g.units().two_adicity(), 3);
        assert_eq!(*g.units().odd_part(), big(8405));
        let g = PrimePowerGroup::from_u64(43, 3).unwrap();
        assert_eq!(*g.modulus(), big(79507));
        assert!(PrimePowerGroup::from_u64(43, 0).is_err());
    }

    #[test]
    fn classify_examples() {
        let f97 = OddPrimeField::from_u64(97).unwrap();
        let f43 = OddPrimeField::from_u64(43).unwrap();
        assert_eq!(euler_classify(&big(2), &f97).unwrap(), Residuosity::Residue);
        assert_eq!(
            euler_classify(&big(3), &f43).unwrap(),
            Residuosity::NonResidue
        );
        assert_eq!(euler_classify(&big(0), &f43).unwrap(), Residuosity::Zero);
        assert_eq!(euler_classify(&big(43), &f43).unwrap(), Residuosity::Zero);

        let g = PrimePowerGroup::from_u64(41, 3).unwrap();
        assert_eq!(
            euler_classify_pk(&big(5), &g).unwrap(),
            Residuosity::Residue
        );
        assert_eq!(
            euler_classify_pk(&big(3), &g).unwrap(),
            Residuosity::NonResidue
        );
        let g43 = PrimePowerGroup::from_u64(43, 3).unwrap();
        assert!(matches!(
            euler_classify_pk(&big(43), &g43),
            Err(Error::NotAUnit { .. })
        ));
        assert_eq!(
            euler_classify_pk(&big(5), &g43).unwrap(),
            Residuosity::NonResidue
        );
    }

    #[test]
    fn composite_power_is_a_hard_error() {
        // Bypass primality validation to exercise the composite path.
        let units = UnitGroup::new(big(15), big(14)).unwrap();
        assert!(matches!(
            units.classify_unit(&big(2)),
            Err(Error::CompositeModulus(_))
        ));
    }

    #[test]
    fn residue_counts_are_balanced() {
        for p in (3u64..2000).filter(|&n| is_probable_prime(&big(n))) {
            let f = OddPrimeField::from_u64(p).unwrap();
            let mut residues = 0u64;
            let mut squares = alloc::collections::BTreeSet::new();
            for x in 1..p {
                if euler_classify(&big(x), &f).unwrap() == Residuosity::Residue {
                    residues += 1;
                }
                squares.insert(x * x % p);
            }
            assert_eq!(residues, (p - 1) / 2, "p = {p}");
            for s in squares {
                assert_eq!(euler_classify(&big(s), &f).unwrap(), Residuosity::Residue);
            }
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(reduce_signed(&BigInt::from(-1), &big(13)), big(12));
        assert_eq!(reduce_signed(&BigInt::from(-27), &big(13)), big(12));
        assert_eq!(reduce_signed(&BigInt::from(40), &big(13)), big(1));
    }
}
