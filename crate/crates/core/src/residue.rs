//! The finite rings `Z[i]/(1+i)^k`.
//!
//! Residues are represented by their base-`(1+i)` digit expansion
//! `d₀ + d₁(1+i) + … + d_{k-1}(1+i)^{k-1}` with `dⱼ ∈ {0, 1}`. The digits are
//! packed into a `u64`, so two classes are equal exactly when their digit
//! words are equal.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;

/// Largest modulus exponent accepted by the enumerating checks.
pub const MAX_ENUMERATION_EXPONENT: u32 = 14;

/// Largest modulus exponent representable at all.
pub const MAX_EXPONENT: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    k: u32,
    digits: u64,
}

impl ResidueClass {
    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn digits(&self) -> u64 {
        self.digits
    }

    /// Builds the class whose base-`(1+i)` digits are the low `k` bits of
    /// `digits`.
    pub fn from_digits(digits: u64, k: u32) -> Result<Self> {
        check_exponent(k)?;
        Ok(ResidueClass {
            k,
            digits: digits & mask(k),
        })
    }

    pub fn zero(k: u32) -> Result<Self> {
        Self::from_digits(0, k)
    }

    pub fn one(k: u32) -> Result<Self> {
        Self::from_digits(1, k)
    }

    pub fn is_one(&self) -> bool {
        self.digits == 1
    }

    /// Units are exactly the classes not divisible by `1+i`.
    pub fn is_unit(&self) -> bool {
        self.digits & 1 == 1
    }

    /// The canonical representative as a Gaussian integer.
    pub fn representative(&self) -> GaussianInt {
        let pi = GaussianInt::one_plus_i();
        let mut acc = GaussianInt::zero();
        let mut power = GaussianInt::one();
        for j in 0..self.k {
            if (self.digits >> j) & 1 == 1 {
                acc = &acc + &power;
            }
            power = &power * &pi;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        reduce_unchecked(&(&self.representative() + &other.representative()), self.k)
    }

    pub fn neg(&self) -> Self {
        reduce_unchecked(&-self.representative(), self.k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        reduce_unchecked(&(&self.representative() * &other.representative()), self.k)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ResidueClass { k: self.k, digits: 1 & mask(self.k) };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod (1+i)^{}", self.representative(), self.k)
    }
}

fn mask(k: u32) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn check_exponent(k: u32) -> Result<()> {
    if k == 0 || k > MAX_EXPONENT {
        return Err(Error::Precondition(format!(
            "modulus exponent must lie in 1..={MAX_EXPONENT}, got {k}"
        )));
    }
    Ok(())
}

fn check_enumerable(k: u32) -> Result<()> {
    check_exponent(k)?;
    if k > MAX_ENUMERATION_EXPONENT {
        return Err(Error::EnumerationTooLarge {
            k,
            max: MAX_ENUMERATION_EXPONENT,
        });
    }
    Ok(())
}

/// Reduces `z` modulo `(1+i)^k`.
pub fn reduce(z: &GaussianInt, k: u32) -> Result<ResidueClass> {
    check_exponent(k)?;
    Ok(reduce_unchecked(z, k))
}

fn reduce_unchecked(z: &GaussianInt, k: u32) -> ResidueClass {
    // Peel off one digit at a time: d = z mod (1+i) is the parity of re+im,
    // then z ← (z - d)/(1+i).
    let mut z = z.clone();
    let mut digits = 0u64;
    for j in 0..k {
        if z.is_zero() {
            break;
        }
        if (&z.re + &z.im).is_odd() {
            digits |= 1 << j;
            z.re -= 1;
        }
        // (a + bi)/(1+i) = ((a+b) + (b-a)i)/2
        let re = (&z.re + &z.im) >> 1u32;
        let im = (&z.im - &z.re) >> 1u32;
        z = GaussianInt { re, im };
    }
    ResidueClass { k, digits }
}

/// All `2^k` residues in digit order.
pub fn enumerate_ring(k: u32) -> Result<Vec<ResidueClass>> {
    check_enumerable(k)?;
    Ok((0..1u64 << k).map(|digits| ResidueClass { k, digits }).collect())
}

/// The residues coprime to `1+i`, found by testing the norm parity of each
/// representative.
pub fn enumerate_units(k: u32) -> Result<Vec<ResidueClass>> {
    Ok(enumerate_ring(k)?
        .into_iter()
        .filter(|c| c.representative().norm().is_odd())
        .collect())
}

/// `#(Z[i]/(1+i)^k)^*`: `1` for `k = 1`, `2^{k-1}` otherwise.
pub fn unit_group_order(k: u32) -> Result<u64> {
    check_exponent(k)?;
    Ok(1u64 << (k - 1))
}

/// Unit-group order from the closed form and from enumeration, which must
/// agree.
pub fn unit_group_order_checked(k: u32) -> Result<u64> {
    let formula = unit_group_order(k)?;
    let counted = enumerate_units(k)?.len() as u64;
    if formula != counted {
        return Err(Error::Inconsistent(format!(
            "unit group of (1+i)^{k}: formula {formula}, enumeration {counted}"
        )));
    }
    Ok(formula)
}

/// Outcome of [`pth_power_forces_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCheck {
    pub holds: bool,
    /// A unit `u ≢ 1` with `u^p ≡ 1`, present exactly when `holds` is false.
    pub witness: Option<ResidueClass>,
    pub units_checked: u64,
}

/// Whether `u^p ≡ 1` forces `u ≡ 1` for every unit `u` of `Z[i]/(1+i)^k`.
pub fn pth_power_forces_identity(p: u32, k: u32) -> Result<PowerCheck> {
    if k < 2 {
        return Err(Error::Precondition(format!("modulus exponent must be >= 2, got {k}")));
    }
    let units = enumerate_units(k)?;
    let witness = units
        .iter()
        .find(|u| !u.is_one() && u.pow(p as u64).is_one())
        .copied();
    Ok(PowerCheck {
        holds: witness.is_none(),
        witness,
        units_checked: units.len() as u64,
    })
}

/// Whether `u ↦ u^p` permutes the unit group of `Z[i]/(1+i)^k`.
pub fn pth_power_is_bijective(p: u32, k: u32) -> Result<bool> {
    let units = enumerate_units(k)?;
    let mut seen = vec![false; 1usize << k];
    for u in &units {
        let image = u.pow(p as u64);
        if !image.is_unit() || std::mem::replace(&mut seen[image.digits as usize], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `-x₂ ≡ 1 (mod (1+i)^k)` and, when it holds with `x₂ ≠ -1`, that
/// `|x₂| ≥ 2^{k/2} - 1`.
///
/// Returns `None` when the congruence does not hold, otherwise whether the
/// size bound does.
pub fn congruence_size_floor(x2: &GaussianInt, k: u32) -> Result<Option<bool>> {
    let neg = -x2;
    if !reduce(&neg, k)?.is_one() {
        return Ok(None);
    }
    if neg == GaussianInt::one() {
        // x₂ = -1 sits in the class trivially; the bound is about the others.
        return Ok(Some(true));
    }
    // |x₂| + 1 ≥ 2^{k/2}  ⇔  N + 2√N + 1 ≥ 2^k, with √N bracketed by integer roots.
    let n = x2.norm();
    let s = n.sqrt();
    let target = num_bigint::BigInt::from(1u8) << k;
    let lower_ok = &n + &s * 2u32 + 1u32 >= target;
    if lower_ok {
        return Ok(Some(true));
    }
    let s_up = if &s * &s == n { s } else { s + 1u32 };
    Ok(Some(&n + &s_up * 2u32 + 1u32 >= target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn reduce_examples() {
        let c = reduce(&g(5, 2), 2).unwrap();
        assert_eq!(c, ResidueClass::one(2).unwrap());
        assert_eq!(c.representative(), g(1, 0));
        assert_eq!(reduce(&g(0, 0), 7).unwrap(), ResidueClass::zero(7).unwrap());
        assert_eq!(reduce(&g(1, 1).pow(3), 3).unwrap(), ResidueClass::zero(3).unwrap());
        assert!(reduce(&g(1, 0), 0).is_err());
    }

    #[test]
    fn representative_is_congruent() {
        let pi3 = g(1, 1).pow(3);
        for z in [g(5, 2), g(-7, 3), g(11, -11), g(0, 9)] {
            let r = reduce(&z, 3).unwrap().representative();
            assert!(pi3.divides(&(&z - &r)));
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(unit_group_order_checked(2).unwrap(), 2);
        assert_eq!(unit_group_order_checked(3).unwrap(), 4);
        // k = p - 4 for p = 11.
        assert_eq!(unit_group_order_checked(7).unwrap(), (1 << 7) - (1 << 6));
        assert_eq!(unit_group_order(1).unwrap(), 1);
        assert_eq!(enumerate_units(1).unwrap().len(), 1);
        assert!(matches!(
            enumerate_units(15),
            Err(Error::EnumerationTooLarge { k: 15, .. })
        ));
    }

    #[test]
    fn power_identity_examples() {
        let r = pth_power_forces_identity(7, 3).unwrap();
        assert!(r.holds && r.witness.is_none());
        assert_eq!(r.units_checked, 4);
        let r = pth_power_forces_identity(5, 6).unwrap();
        assert!(r.holds);
        assert_eq!(r.units_checked, 32);

        let r = pth_power_forces_identity(2, 3).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w, reduce(&g(-1, 0), 3).unwrap());
        assert!(w.pow(2).is_one() && !w.is_one());
        assert!(pth_power_forces_identity(3, 1).is_err());
    }

    #[test]
    fn bijectivity() {
        assert!(pth_power_is_bijective(5, 8).unwrap());
        assert!(!pth_power_is_bijective(2, 4).unwrap());
    }

    #[test]
    fn congruence_floor() {
        // -x₂ = 1 + (1+i)^7 m
        let pi7 = g(1, 1).pow(7);
        for m in [g(1, 0), g(0, 1), g(-1, 2), g(3, -3)] {
            let x2 = -(&g(1, 0) + &(&pi7 * &m));
            assert_eq!(congruence_size_floor(&x2, 7).unwrap(), Some(true));
        }
        assert_eq!(congruence_size_floor(&g(2, 0), 7).unwrap(), None);
    }
}
