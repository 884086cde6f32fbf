//! Exact arithmetic in the Gaussian integers `Z[i]`.
//!
//! Components are arbitrary-precision, so no operation truncates. Besides the
//! ring operations this module provides the Euclidean division used by
//! [`GaussianInt::gcd`], the `(1+i)`-adic valuation, and exact `p`-th root
//! extraction used by the searches.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `re + im·i` of `Z[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// The unit group `{1, i, -1, -i}`, in that order.
pub const UNITS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// The prime `1+i` lying over 2.
    pub fn one_plus_i() -> Self {
        Self::new(1, 1)
    }

    pub fn units() -> [GaussianInt; 4] {
        UNITS.map(|(a, b)| GaussianInt::new(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        GaussianInt {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// `re² + im²`, the squared absolute value.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exponentiation by squaring; `pow(z, 0) = 1` for every `z`.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianInt::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division `z = q·w + r` with `norm(r) ≤ norm(w)/2`.
    ///
    /// Each coordinate of `z/w` is rounded to the nearest integer; exact
    /// halves round toward negative infinity.
    pub fn divmod(&self, w: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = w.norm();
        let num = self * &w.conj();
        let q = GaussianInt {
            re: round_half_down(&num.re, &d),
            im: round_half_down(&num.im, &d),
        };
        let r = self - &(&q * w);
        Ok((q, r))
    }

    /// Exact quotient, or `None` when `w` does not divide `self`.
    pub fn div_exact(&self, w: &GaussianInt) -> Option<GaussianInt> {
        if w.is_zero() {
            return None;
        }
        let d = w.norm();
        let num = self * &w.conj();
        let (qr, rr) = num.re.div_rem(&d);
        let (qi, ri) = num.im.div_rem(&d);
        (rr.is_zero() && ri.is_zero()).then(|| GaussianInt::new(qr, qi))
    }

    pub fn divides(&self, z: &GaussianInt) -> bool {
        if self.is_zero() {
            return z.is_zero();
        }
        z.div_exact(self).is_some()
    }

    /// Greatest common divisor, normalized to its canonical associate.
    pub fn gcd(&self, w: &GaussianInt) -> Result<CanonicalAssociate> {
        if self.is_zero() && w.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = w.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(CanonicalAssociate::of(&a))
    }

    /// Largest `k` with `(1+i)^k | z`.
    ///
    /// `1+i` is the only prime above 2 and has norm 2, so this equals the
    /// 2-adic valuation of the norm.
    pub fn val_one_plus_i(&self) -> Valuation {
        match self.norm().trailing_zeros() {
            Some(k) => Valuation::Finite(k),
            None => Valuation::Infinite,
        }
    }

    /// Exact `p`-th root `x` with `x^p = self` and both coordinates of `x`
    /// bounded by `bound` in absolute value. When several roots qualify the
    /// canonical-order smallest is not guaranteed; use [`Self::exact_roots`]
    /// to obtain every one.
    pub fn exact_root(&self, p: u32, bound: u64) -> Option<GaussianInt> {
        self.exact_roots(p, bound).into_iter().next()
    }

    /// Every `x` in the box `max(|re x|, |im x|) ≤ bound` with `x^p = self`,
    /// sorted by `(re, im)`.
    ///
    /// The norm is tested for being a perfect `p`-th power first; surviving
    /// candidates come from a floating-point approximation of each complex
    /// root and are confirmed by exact exponentiation.
    pub fn exact_roots(&self, p: u32, bound: u64) -> Vec<GaussianInt> {
        assert!(p >= 1, "root degree must be positive");
        if self.is_zero() {
            return vec![GaussianInt::zero()];
        }
        let n = self.norm();
        let root_norm = n.nth_root(p);
        if root_norm.pow(p) != n {
            return Vec::new();
        }
        // |x|² = root_norm must fit inside the box.
        let limit = BigInt::from(bound) * BigInt::from(bound) * 2u32;
        if root_norm > limit {
            return Vec::new();
        }
        let radius = root_norm.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let angle = approx_arg(self);
        let step = std::f64::consts::TAU / p as f64;
        let bound = BigInt::from(bound);
        let mut out: Vec<GaussianInt> = Vec::new();
        for k in 0..p {
            let theta = angle / p as f64 + step * k as f64;
            let re0 = (radius * theta.cos()).round() as i64;
            let im0 = (radius * theta.sin()).round() as i64;
            for dre in -1..=1 {
                for dim in -1..=1 {
                    let cand = GaussianInt::new(re0 + dre, im0 + dim);
                    if cand.re.abs() > bound || cand.im.abs() > bound {
                        continue;
                    }
                    if cand.norm() == root_norm && !out.contains(&cand) && cand.pow(p) == *self {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort_by(lex_cmp);
        out
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

fn approx_arg(z: &GaussianInt) -> f64 {
    // Shift both coordinates by the same power of two so large values stay in
    // f64 range; the angle is unaffected.
    let bits = z.re.bits().max(z.im.bits());
    let shift = bits.saturating_sub(1000);
    let re = (&z.re >> shift).to_f64().unwrap_or(0.0);
    let im = (&z.im >> shift).to_f64().unwrap_or(0.0);
    im.atan2(re)
}

/// Nearest integer to `n/d` (`d > 0`), exact halves toward negative infinity.
fn round_half_down(n: &BigInt, d: &BigInt) -> BigInt {
    // ceil((2n - d) / 2d)
    let two_d: BigInt = d * 2u32;
    let num: BigInt = n * 2u32 - d;
    num.div_ceil(&two_d)
}

/// Lexicographic order on `(re, im)`.
pub fn lex_cmp(a: &GaussianInt, b: &GaussianInt) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

impl PartialOrd for GaussianInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(re, im)`; this is not compatible with the ring
/// structure, it only fixes output order.
impl Ord for GaussianInt {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self, other)
    }
}

/// `(1+i)`-adic valuation; `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// The representative of `{z, iz, -z, -iz}` with `re > 0, im ≥ 0`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalAssociate(GaussianInt);

impl CanonicalAssociate {
    pub fn of(z: &GaussianInt) -> Self {
        if z.is_zero() {
            return CanonicalAssociate(GaussianInt::zero());
        }
        let mut w = z.clone();
        for _ in 0..4 {
            if w.re.is_positive() && !w.im.is_negative() {
                return CanonicalAssociate(w);
            }
            w = w.mul_i();
        }
        unreachable!("every nonzero Gaussian integer has an associate in the first quadrant")
    }

    pub fn value(&self) -> &GaussianInt {
        &self.0
    }

    pub fn into_inner(self) -> GaussianInt {
        self.0
    }
}

impl fmt::Display for CanonicalAssociate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianInt> for &'a GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &'a GaussianInt) -> GaussianInt {
                let f: fn(&GaussianInt, &GaussianInt) -> GaussianInt = $body;
                f(self, rhs)
            }
        }

        impl $tr for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianInt {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| GaussianInt {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| GaussianInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        -&self
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::new(v, 0)
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussianInt::new(re, im)
    }
}

/// Renders as `a+bi` / `a-bi` without spaces, dropping zero parts and unit
/// coefficients: `4`, `-i`, `2i`, `-2+3i`, `1-i`.
impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if self.im == -BigInt::one() {
            f.write_str("-i")
        } else {
            write!(f, "{}i", self.im)
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        if s.is_empty() || s.contains(char::is_whitespace) {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return BigInt::from_str(s)
                .ok()
                .filter(|_| is_plain_int(s) && !s.starts_with('+'))
                .map(|re| GaussianInt::new(re, 0))
                .ok_or_else(bad);
        };
        // Split at the last sign that is not leading.
        let split = body
            .char_indices()
            .rev()
            .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx);
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            BigInt::zero()
        } else if is_plain_int(re_part) {
            BigInt::from_str(re_part).map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        let im = match im_part {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            other if is_plain_int(other) => {
                let v = BigInt::from_str(other).map_err(|_| bad())?;
                // `0i`, `+0i` and friends are not canonical renderings.
                if v.is_zero() {
                    return Err(bad());
                }
                v
            }
            _ => return Err(bad()),
        };
        // A leading '+' on the real part is never emitted.
        if re_part.starts_with('+') || (split.is_none() && im_part.starts_with('+')) {
            return Err(bad());
        }
        Ok(GaussianInt { re, im })
    }
}

fn is_plain_int(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
