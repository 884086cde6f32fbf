//! Closed intervals with exact rational endpoints.
//!
//! Arithmetic returns enclosures of the exact image. Irrational constants
//! (integer roots, π, sine) are produced by functions taking a working
//! precision in bits; their results are rounded outward onto the dyadic grid
//! of that precision so endpoint sizes stay bounded.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn try_new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(int(n))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Intersection; `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Pointwise maximum of two enclosed quantities.
    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Interval {
                lo: BigRational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    /// `Less` if every point is below every point of `other`, `Greater` for
    /// the reverse, `None` when they overlap.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self * &other.recip()?)
    }

    pub fn powi(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::from_int(1);
        }
        let lo = pow_rat(&self.lo, e);
        let hi = pow_rat(&self.hi, e);
        if e % 2 == 1 || !self.lo.is_negative() {
            Interval { lo, hi }
        } else if !self.hi.is_positive() {
            Interval { lo: hi, hi: lo }
        } else {
            Interval {
                lo: BigRational::zero(),
                hi: lo.max(hi),
            }
        }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        self * &Interval::point(k.clone())
    }

    /// Widens the endpoints onto the grid `2^{-bits}·Z`.
    pub fn round_outward(&self, bits: u32) -> Interval {
        Interval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_pair();
        write!(f, "[{lo:.12e}, {hi:.12e}]")
    }
}

fn pow_rat(q: &BigRational, e: u32) -> BigRational {
    BigRational::new(q.numer().pow(e), q.denom().pow(e))
}

pub fn dyadic_floor(q: &BigRational, bits: u32) -> BigRational {
    let scaled: BigInt = (q.numer() << bits).div_floor(q.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

pub fn dyadic_ceil(q: &BigRational, bits: u32) -> BigRational {
    let scaled: BigInt = (q.numer() << bits).div_ceil(q.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

/// Enclosure of `q^{1/n}` for `q ≥ 0` with endpoints on the `2^{-bits}`
/// grid: `[⌊q^{1/n}·2^b⌋, ⌈q^{1/n}·2^b⌉] / 2^b`.
pub fn nth_root(q: &BigRational, n: u32, bits: u32) -> Result<Interval> {
    if q.is_negative() {
        return Err(Error::Precondition(format!("root of negative value {q}")));
    }
    if n == 0 {
        return Err(Error::Precondition("zeroth root".into()));
    }
    let shift = n as u64 * bits as u64;
    let scaled_num: BigInt = q.numer() << shift;
    let floor_arg = scaled_num.div_floor(q.denom());
    let ceil_arg = scaled_num.div_ceil(q.denom());
    let lo = floor_arg.nth_root(n);
    let mut hi = ceil_arg.nth_root(n);
    if hi.pow(n) != ceil_arg {
        hi += 1u32;
    }
    let den = BigInt::one() << bits;
    Ok(Interval {
        lo: BigRational::new(lo, den.clone()),
        hi: BigRational::new(hi, den),
    })
}

/// `x ↦ x^{1/n}` on a nonnegative interval.
pub fn nth_root_interval(x: &Interval, n: u32, bits: u32) -> Result<Interval> {
    let lo = nth_root(x.lo(), n, bits)?;
    let hi = nth_root(x.hi(), n, bits)?;
    Ok(Interval {
        lo: lo.lo,
        hi: hi.hi,
    })
}

pub fn sqrt(q: &BigRational, bits: u32) -> Result<Interval> {
    nth_root(q, 2, bits)
}

/// Enclosure of `base^{num/den}` for `base > 0`, `den ≥ 1`.
pub fn rational_power(base: &BigRational, num: i64, den: u32, bits: u32) -> Result<Interval> {
    if !base.is_positive() {
        return Err(Error::Precondition(format!("rational power of non-positive base {base}")));
    }
    let e = num.unsigned_abs() as u32;
    let raised = if num >= 0 { pow_rat(base, e) } else { pow_rat(&base.recip(), e) };
    nth_root(&raised, den, bits)
}

/// `arctan(1/m)` for integer `m ≥ 2` by its alternating series.
fn atan_inv(m: u64, bits: u32) -> Interval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut sum = BigRational::zero();
    let mut power = m.clone(); // m^{2k+1}
    let mut k: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if term < tol {
            // Partial sums of an alternating series with decreasing terms
            // bracket the limit; the next term bounds the error.
            return Interval::new(&sum - &term, &sum + &term).round_outward(bits + 2);
        }
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &m2;
        k += 1;
    }
}

/// `π = 16·arctan(1/5) - 4·arctan(1/239)`.
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 8).scale(&int(16));
    let b = atan_inv(239, bits + 8).scale(&int(4));
    (&a - &b).round_outward(bits)
}

/// Taylor polynomial of `sin` at a point with a Lagrange remainder bound.
fn sin_point(x: &BigRational, bits: u32) -> Interval {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let x2 = x * x;
    let mut sum = BigRational::zero();
    let mut term = x.clone(); // x^{2k+1}/(2k+1)!
    let mut k: u64 = 0;
    loop {
        let rem = term.abs();
        if rem < tol && k > 0 {
            // |sin x - S_k| ≤ |x|^{2k+1}/(2k+1)!
            return Interval::new(&sum - &rem, &sum + &rem).round_outward(bits + 2);
        }
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        let d = BigInt::from((2 * k + 2) * (2 * k + 3));
        term = &term * &x2 / int(d);
        k += 1;
    }
}

/// `sin` on an interval inside `[0, π/2]`, where it is increasing.
pub fn sin_increasing(x: &Interval, bits: u32) -> Result<Interval> {
    // 3/2 < π/2
    if x.lo().is_negative() || *x.hi() > rat(3, 2) + rat(1, 16) {
        return Err(Error::Precondition(format!("sine argument {x} outside [0, 1.5625]")));
    }
    let lo = sin_point(x.lo(), bits);
    let hi = sin_point(x.hi(), bits);
    Ok(Interval::new(lo.lo, hi.hi).round_outward(bits))
}

/// `|sin(2πn/p)|`, reduced by symmetry to `sin(π·g)` with `g ∈ [0, 1/2]`.
pub fn abs_sin_two_pi_ratio(n: i64, p: i64, bits: u32) -> Result<Interval> {
    if p <= 0 {
        return Err(Error::Precondition(format!("denominator must be positive, got {p}")));
    }
    let f = BigRational::new(BigInt::from(2 * n), BigInt::from(p));
    // |sin(πf)| has period 1 in f and is symmetric about 1/2.
    let frac = &f - f.floor();
    let g = if frac > rat(1, 2) { int(1) - frac } else { frac };
    let arg = pi(bits + 8).scale(&g);
    sin_increasing(&arg, bits)
}

/// Keeps the running intersection of successively refined enclosures, so
/// the reported interval never widens as precision grows.
#[derive(Clone, Debug, Default)]
pub struct Refiner {
    current: Option<Interval>,
}

impl Refiner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn refine(&mut self, next: Interval) -> Result<&Interval> {
        let merged = match &self.current {
            None => next,
            Some(cur) => cur.intersect(&next).ok_or_else(|| {
                Error::Inconsistent(format!("disjoint enclosures {cur} and {next}"))
            })?,
        };
        self.current = Some(merged);
        Ok(self.current.as_ref().unwrap())
    }

    pub fn current(&self) -> Option<&Interval> {
        self.current.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(i: &Interval) -> (f64, f64) {
        i.to_f64_pair()
    }

    #[test]
    fn arithmetic() {
        let a = Interval::new(rat(-1, 2), rat(3, 1));
        let b = Interval::new(rat(2, 1), rat(5, 2));
        assert_eq!(&a + &b, Interval::new(rat(3, 2), rat(11, 2)));
        assert_eq!(&a - &b, Interval::new(rat(-3, 1), rat(1, 1)));
        assert_eq!(&a * &b, Interval::new(rat(-5, 4), rat(15, 2)));
        assert_eq!(a.powi(2), Interval::new(rat(0, 1), rat(9, 1)));
        assert_eq!(b.recip().unwrap(), Interval::new(rat(2, 5), rat(1, 2)));
        assert!(a.recip().is_err());
        assert_eq!(a.abs(), Interval::new(rat(0, 1), rat(3, 1)));
    }

    #[test]
    fn roots_bracket_exactly() {
        let two = int(2);
        let r = sqrt(&two, 64).unwrap();
        assert!(r.lo() * r.lo() <= two && two <= r.hi() * r.hi());
        assert!(r.width() <= rat(1, 1) / int(BigInt::one() << 64u32));
        let four = int(4);
        let r = nth_root(&four, 7, 80).unwrap();
        assert!(pow_rat(r.lo(), 7) <= four && four <= pow_rat(r.hi(), 7));
        // perfect powers are exact
        assert_eq!(nth_root(&int(27), 3, 10).unwrap(), Interval::from_int(3));
        assert!(nth_root(&int(-1), 2, 10).is_err());
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(200);
        let (lo, hi) = approx(&p);
        assert!(lo <= std::f64::consts::PI + 1e-15 && std::f64::consts::PI - 1e-15 <= hi);
        assert!(p.width() < rat(1, 1) / int(BigInt::one() << 199u32));
        // 355/113 is above π, 333/106 below.
        assert!(p.hi() < &rat(355, 113) && p.lo() > &rat(333, 106));
    }

    #[test]
    fn sine_values() {
        let s = abs_sin_two_pi_ratio(1, 7, 64).unwrap();
        let (lo, hi) = approx(&s);
        assert!(lo > 0.781 && hi < 0.782);
        let s = abs_sin_two_pi_ratio(3, 7, 64).unwrap();
        let (lo, hi) = approx(&s);
        assert!(lo > 0.433 && hi < 0.434);
        assert_eq!(abs_sin_two_pi_ratio(0, 7, 32).unwrap(), Interval::from_int(0));
        let half = abs_sin_two_pi_ratio(1, 12, 64).unwrap();
        assert!(half.contains(&rat(1, 2)));
    }

    #[test]
    fn refiner_never_widens() {
        let mut r = Refiner::new();
        let mut prev: Option<Interval> = None;
        for bits in [16, 32, 64, 128] {
            let cur = r.refine(abs_sin_two_pi_ratio(2, 11, bits).unwrap()).unwrap().clone();
            if let Some(p) = &prev {
                assert!(cur.is_subset_of(p));
            }
            prev = Some(cur);
        }
        assert!(r.refine(Interval::from_int(5)).is_err());
    }
}
