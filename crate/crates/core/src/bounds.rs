//! Certified checks of the inequality chains behind the non-existence
//! arguments.
//!
//! Each check compares two interval enclosures. A verdict is `Certified` or
//! `Refuted` only when the enclosures are strictly separated; the recorded
//! margin is the gap between them. Overlapping enclosures are retried with
//! doubled precision up to the configured cap before the check settles on
//! `Undecided`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::interval::{self, int, rat, Interval, Refiner};
use crate::search::is_prime;

pub const DEFAULT_PRECISION_CAP: u32 = 512;
const START_PRECISION: u32 = 64;

/// Default range of `n` checked explicitly by [`check_gap_bound`].
pub const DEFAULT_GAP_N_MAX: u64 = 64;

/// A rational serialized as the exact string `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(pub BigRational);

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (n, m) = s
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom(format!("expected num/den, got {s:?}")))?;
        let n: BigInt = n.parse().map_err(serde::de::Error::custom)?;
        let m: BigInt = m.parse().map_err(serde::de::Error::custom)?;
        if m.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(ExactRational(BigRational::new(n, m)))
    }
}

impl From<BigRational> for ExactRational {
    fn from(q: BigRational) -> Self {
        ExactRational(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRepr {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl From<&Interval> for IntervalRepr {
    fn from(i: &Interval) -> Self {
        IntervalRepr {
            lo: i.lo().clone().into(),
            hi: i.hi().clone().into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Refuted,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub claim: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Strictly positive separation for `Certified`/`Refuted`, zero otherwise.
    pub margin: ExactRational,
    pub precision_bits: u32,
    /// Enclosure of the claim's principal quantity.
    pub enclosure: Option<IntervalRepr>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(claim: &str, params: &[(&str, String)], outcome: Comparison) -> Self {
        BoundReport {
            claim: claim.to_string(),
            parameters: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            verdict: outcome.verdict,
            margin: outcome.margin.into(),
            precision_bits: outcome.bits,
            enclosure: outcome.enclosure.as_ref().map(IntervalRepr::from),
            notes: Vec::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn margin(&self) -> &BigRational {
        &self.margin.0
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Result of deciding `lhs > rhs` (or `lhs < rhs`).
#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: Verdict,
    pub margin: BigRational,
    pub bits: u32,
    pub enclosure: Option<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Claim: `lhs > rhs`.
    Greater,
    /// Claim: `lhs < rhs`.
    Less,
}

/// Decides a strict inequality between two enclosures, doubling precision
/// until they separate or `cap` is reached.
pub fn decide(
    direction: Direction,
    cap: u32,
    mut lhs: impl FnMut(u32) -> Result<Interval>,
    mut rhs: impl FnMut(u32) -> Result<Interval>,
) -> Result<Comparison> {
    let mut left = Refiner::new();
    let mut right = Refiner::new();
    let mut bits = START_PRECISION.min(cap.max(1));
    loop {
        let l = left.refine(lhs(bits)?)?.clone();
        let r = right.refine(rhs(bits)?)?.clone();
        let (verdict, margin) = separate(direction, &l, &r);
        if verdict != Verdict::Undecided || bits >= cap {
            return Ok(Comparison { verdict, margin, bits, enclosure: Some(l) });
        }
        bits = (bits * 2).min(cap);
    }
}

fn separate(direction: Direction, l: &Interval, r: &Interval) -> (Verdict, BigRational) {
    let above = l.lo() - r.hi();
    let below = r.lo() - l.hi();
    let (holds, fails) = match direction {
        Direction::Greater => (above, below),
        Direction::Less => (below, above),
    };
    if holds.is_positive() {
        (Verdict::Certified, holds)
    } else if fails.is_positive() {
        (Verdict::Refuted, fails)
    } else {
        (Verdict::Undecided, BigRational::zero())
    }
}

fn exact(direction: Direction, lhs: BigRational, rhs: BigRational) -> Comparison {
    let l = Interval::point(lhs);
    let (verdict, margin) = separate(direction, &l, &Interval::point(rhs));
    Comparison { verdict, margin, bits: 0, enclosure: Some(l) }
}

fn require_odd_prime(p: u32, min: u32) -> Result<()> {
    if p < min || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Precondition(format!("expected an odd prime >= {min}, got {p}")));
    }
    Ok(())
}

/// Enclosure of `(n+1)^{p/2} - n^{p/2}`.
pub fn gap_enclosure(p: u32, n: u64, bits: u32) -> Result<Interval> {
    let upper = interval::nth_root(&int(BigInt::from(n + 1).pow(p)), 2, bits)?;
    let lower = interval::nth_root(&int(BigInt::from(n).pow(p)), 2, bits)?;
    Ok(&upper - &lower)
}

/// Enclosure of `d/dn [(n+1)^{p/2} - n^{p/2}] = (p/2)((n+1)^{p/2-1} - n^{p/2-1})`.
pub fn gap_derivative_enclosure(p: u32, n: u64, bits: u32) -> Result<Interval> {
    let e = p - 2;
    let upper = interval::nth_root(&int(BigInt::from(n + 1).pow(e)), 2, bits)?;
    let lower = interval::nth_root(&int(BigInt::from(n).pow(e)), 2, bits)?;
    Ok((&upper - &lower).scale(&rat(p as i64, 2)))
}

/// Certifies `(n+1)^{p/2} - n^{p/2} ≥ 5/2` for `1 ≤ n ≤ n_max`, and that the
/// gap increases in `n`, so `n = 1` is the minimum over all `n ≥ 1`. The
/// bound exceeds 2 = |x₁^p - x₂^p|, which is the contradiction in the coprime
/// case.
pub fn check_gap_bound(p: u32, n_max: u64, cap: u32) -> Result<BoundReport> {
    require_odd_prime(p, 3)?;
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be positive".into()));
    }
    let threshold = rat(5, 2);
    let mut worst: Option<(u64, Comparison)> = None;
    for n in 1..=n_max {
        let c = decide(Direction::Greater, cap, |b| gap_enclosure(p, n, b), |_| {
            Ok(Interval::point(threshold.clone()))
        })?;
        let replace = match &worst {
            None => true,
            Some((_, w)) => rank(&c) < rank(w),
        };
        if replace {
            worst = Some((n, c));
        }
    }
    let (n_worst, outcome) = worst.expect("n_max >= 1");

    // Monotonicity: the exponent p/2 - 1 is positive, so t ↦ t^{p/2-1} is
    // increasing and the derivative is positive on every [n, n+1].
    let exponent_positive = p > 2;
    let mut derivative_ok = exponent_positive;
    for n in 1..=n_max.min(DEFAULT_GAP_N_MAX) {
        let d = gap_derivative_enclosure(p, n, START_PRECISION)?;
        derivative_ok &= d.lo().is_positive();
    }
    let mut report = BoundReport::new(
        "gap_bound",
        &[("p", p.to_string()), ("n_max", n_max.to_string()), ("threshold", "5/2".into())],
        outcome,
    )
    .note(format!("tightest case n = {n_worst}"));
    if derivative_ok {
        report = report.note(
            "monotone: exponent p/2 - 1 > 0 and derivative enclosures positive, so n = 1 bounds every n >= 1",
        );
    } else {
        report.verdict = Verdict::Undecided;
        report.margin = BigRational::zero().into();
        report = report.note("monotonicity certificate failed");
    }
    Ok(report)
}

/// Orders comparisons from most to least damaging for a "for all" claim.
fn rank(c: &Comparison) -> (u8, BigRational) {
    match c.verdict {
        Verdict::Refuted => (0, -c.margin.clone()),
        Verdict::Undecided => (1, BigRational::zero()),
        Verdict::Certified => (2, c.margin.clone()),
    }
}

/// Enclosure of `2^{1/2}(2^{(p-4)/2} - 1)`.
pub fn lemma1_threshold(p: u32, bits: u32) -> Result<Interval> {
    let sqrt2 = interval::sqrt(&int(2), bits)?;
    let inner = &interval::rational_power(&int(2), p as i64 - 4, 2, bits)? - &Interval::from_int(1);
    Ok(&sqrt2 * &inner)
}

/// The size floor `|x| > 2^{1/2}(2^{(p-4)/2} - 1)` for solutions whose
/// factors `y ± i` share a factor. Certified when the floor exceeds 1, i.e.
/// it rules out units.
pub fn check_lemma1_bound(p: u32, cap: u32) -> Result<BoundReport> {
    require_odd_prime(p, 5)?;
    let outcome = decide(Direction::Greater, cap, |b| lemma1_threshold(p, b), |_| Ok(Interval::from_int(1)))?;
    // Closed form 2^{(p-3)/2} - √2 must agree with the composed chain.
    let bits = outcome.bits.max(START_PRECISION);
    let closed = &interval::rational_power(&int(2), p as i64 - 3, 2, bits)? - &interval::sqrt(&int(2), bits)?;
    let composed = lemma1_threshold(p, bits)?;
    if composed.intersect(&closed).is_none() {
        return Err(Error::Inconsistent(format!("threshold {composed} disagrees with closed form {closed}")));
    }
    let mut report = BoundReport::new("lemma1_bound", &[("p", p.to_string())], outcome)
        .note("chain |x| >= 2^{1/2}|x2| and |x2| >= 2^{(p-4)/2} - 1");
    if report.verdict == Verdict::Refuted {
        report = report.note("threshold below 1: no constraint at this p");
    }
    Ok(report)
}

/// `(6/p)·3^{-(p-3)/2}`, exact for odd `p`.
pub fn sin_threshold(p: u32) -> BigRational {
    let three_pow = BigInt::from(3).pow((p - 3) / 2);
    BigRational::new(BigInt::from(6), BigInt::from(p) * three_pow)
}

/// Certifies `|sin(2πn/p)| > (6/p)·3^{-(p-3)/2}` for every `1 ≤ n ≤ p-1`.
pub fn check_sin_bound(p: u32, cap: u32) -> Result<BoundReport> {
    require_odd_prime(p, 7)?;
    let threshold = sin_threshold(p);
    let mut worst: Option<(u32, Comparison)> = None;
    for n in 1..p {
        let c = decide(
            Direction::Greater,
            cap,
            |b| interval::abs_sin_two_pi_ratio(n as i64, p as i64, b),
            |_| Ok(Interval::point(threshold.clone())),
        )?;
        if worst.as_ref().is_none_or(|(_, w)| rank(&c) < rank(w)) {
            worst = Some((n, c));
        }
    }
    let (n_worst, outcome) = worst.expect("p >= 7");
    Ok(BoundReport::new(
        "sin_bound",
        &[("p", p.to_string()), ("threshold", ExactRational(threshold).to_string())],
        outcome,
    )
    .note(format!("tightest case n = {n_worst}")))
}

/// Enclosure of the geometric sum `1/(1 - |x₂|^{-p})` that dominates the
/// binomial tail `|1 + ((1/p-1)/2!)x₂^{-(2p-1)} + …|`.
pub fn binomial_tail_bound(abs_x2: &Interval, p: u32, bits: u32) -> Result<Interval> {
    if abs_x2.lo() <= &int(1) {
        return Err(Error::Precondition(format!(
            "|x2| must exceed 1 for the geometric series to converge, got {abs_x2}"
        )));
    }
    let ratio = abs_x2.powi(p).recip()?;
    let one = Interval::from_int(1);
    Ok((&one - &ratio).recip()?.round_outward(bits))
}

/// `|x₂|` lower bound `2^{3/2} - 1` used for the tail constant.
pub fn tail_floor(bits: u32) -> Result<Interval> {
    Ok(&interval::rational_power(&int(2), 3, 2, bits)? - &Interval::from_int(1))
}

/// Certifies that the tail factor is below `1 + 1/10` once `|x₂| ≥ 2^{3/2} - 1`.
pub fn check_tail_constant(p: u32, cap: u32) -> Result<BoundReport> {
    require_odd_prime(p, 5)?;
    let outcome = decide(
        Direction::Less,
        cap,
        |b| {
            // Worst case is the smallest |x₂|; use the lower endpoint.
            let floor = tail_floor(b)?;
            binomial_tail_bound(&Interval::point(floor.lo().clone()), p, b)
        },
        |_| Ok(Interval::point(rat(11, 10))),
    )?;
    Ok(BoundReport::new("tail_constant", &[("p", p.to_string()), ("threshold", "11/10".into())], outcome))
}

/// Lower bound on `|x₂|` for the Liouville estimate at exponent `p`: the
/// larger of `2^{(p-4)/2} - 1` and `√3`.
pub fn x2_floor(p: u32, bits: u32) -> Result<Interval> {
    let lemma = &interval::rational_power(&int(2), p as i64 - 4, 2, bits)? - &Interval::from_int(1);
    let root3 = interval::sqrt(&int(3), bits)?;
    Ok(lemma.max(&root3))
}

/// Upper bound on `|x₃ - 4^{1/p}x₂|` from the binomial expansion when
/// `|x₂|` is enclosed by `abs_x2`:
/// `4^{1/p}·(1/p)·|x₂|^{-(p-1)}·tail(|x₂|)`.
pub fn liouville_bound(abs_x2: &Interval, p: u32, bits: u32) -> Result<Interval> {
    let root4 = interval::nth_root(&int(4), p, bits)?;
    let tail = binomial_tail_bound(abs_x2, p, bits)?;
    let scale = abs_x2.powi(p - 1).recip()?.scale(&rat(1, p as i64));
    Ok((&(&root4 * &scale) * &tail).round_outward(bits))
}

/// [`liouville_bound`] at a concrete `x₂`, using `|x₂|^{p-1} = N(x₂)^{(p-1)/2}`
/// exactly.
pub fn liouville_gap(x2: &GaussianInt, p: u32, bits: u32) -> Result<Interval> {
    require_odd_prime(p, 3)?;
    let n = x2.norm();
    if n <= BigInt::one() {
        return Err(Error::Precondition(format!("x2 = {x2} must have |x2| > 1")));
    }
    let abs_x2 = interval::sqrt(&int(n.clone()), bits)?;
    let root4 = interval::nth_root(&int(4), p, bits)?;
    let tail = binomial_tail_bound(&abs_x2, p, bits)?;
    let denom = BigRational::from_integer(n.pow((p - 1) / 2) * BigInt::from(p));
    Ok((&root4 * &tail).scale(&denom.recip()).round_outward(bits))
}

/// Final chain of the non-existence argument for `p ≥ 7` and its sub-cases.
///
/// Returns three reports: `prop1_final` (`2^{(p-1)/2} > 4 + 4^{1/p}`),
/// `prop1_subcase` (`2^{(p-1)/2} > 4·(1 + 1/10)`) and `prop1_coefficients`
/// (`C(p-1,k)·4^{(p-1-k)/p}·ε^k ≤ 1/p` for all `1 ≤ k ≤ p-1`).
pub fn check_prop1_final(p: u32, cap: u32) -> Result<Vec<BoundReport>> {
    require_odd_prime(p, 5)?;
    let lhs = int(BigInt::from(2).pow((p - 1) / 2));
    let params = [("p", p.to_string())];

    let main = decide(
        Direction::Greater,
        cap,
        |_| Ok(Interval::point(lhs.clone())),
        |b| Ok(&Interval::from_int(4) + &interval::nth_root(&int(4), p, b)?),
    )?;
    let mut final_report = BoundReport::new("prop1_final", &params, main);
    if final_report.verdict == Verdict::Refuted {
        final_report = final_report.note("inequality fails at this p; the chain applies only to p >= 7");
    }

    let sub = exact(Direction::Greater, lhs.clone(), rat(44, 10));
    let mut sub_report = BoundReport::new("prop1_subcase", &params, sub);
    if sub_report.verdict == Verdict::Refuted {
        sub_report = sub_report.note("2^{(p-1)/2} < 4(1 + 1/10) holds here, contrary to the 'not possible for p >= 5' step");
    }

    let coeff = coefficient_check(p, cap)?;
    Ok(vec![final_report, sub_report, coeff])
}

/// Enclosure of the largest `ε` allowed by the Liouville estimate at the
/// `|x₂|` floor (with `|a₂| ≥ 1`).
pub fn epsilon_bound(p: u32, bits: u32) -> Result<Interval> {
    let floor = x2_floor(p, bits)?;
    // Largest value is attained at the smallest |x₂|.
    liouville_bound(&Interval::point(floor.lo().clone()), p, bits)
}

fn coefficient_check(p: u32, cap: u32) -> Result<BoundReport> {
    let limit = rat(1, p as i64);
    let mut worst: Option<(u32, Comparison)> = None;
    for k in 1..p {
        let c = decide(
            Direction::Less,
            cap,
            |b| {
                let eps = epsilon_bound(p, b)?;
                let eps_hi = Interval::point(eps.hi().clone());
                let c = int(binomial(BigInt::from(p - 1), BigInt::from(k)));
                let root = interval::rational_power(&int(4), (p - 1 - k) as i64, p, b)?;
                Ok((&root * &eps_hi.powi(k)).scale(&c).round_outward(b))
            },
            |_| Ok(Interval::point(limit.clone())),
        )?;
        if worst.as_ref().is_none_or(|(_, w)| rank(&c) < rank(w)) {
            worst = Some((k, c));
        }
    }
    let (k_worst, outcome) = worst.expect("p >= 5");
    Ok(BoundReport::new("prop1_coefficients", &[("p", p.to_string())], outcome)
        .note(format!("tightest case k = {k_worst}; eps from the Liouville bound at |x2| >= max(2^((p-4)/2) - 1, sqrt 3), |a2| >= 1")))
}

/// Hull of the two endpoints between which the mean-value point lies.
pub fn mean_value_hull(a3_over_a2: &BigRational, p: u32, bits: u32) -> Result<Interval> {
    let root4 = interval::nth_root(&int(4), p, bits)?;
    Ok(root4.hull(&Interval::point(a3_over_a2.clone())))
}

/// `5 + 10ε + 10ε² + 5ε³ + ε⁴` at `ε = e`, the triangle bound on
/// `|(1 - (1-ε)^5)/ε|`.
fn quartic_upper(e: &BigRational) -> BigRational {
    let e2 = e * e;
    let e3 = &e2 * e;
    let e4 = &e3 * e;
    int(5) + e * int(10) + &e2 * int(10) + &e3 * int(5) + e4
}

/// The explicit constants in the `p = 5` argument.
///
/// Returns `thm2_a` (`5 + 10/20 + 10/20² + 5/20³ + 1/20⁴ < 5.6`), `thm2_b`
/// (`|1 + η + … + η⁴| > 4.7` whenever `|1 - η| < 1/40`) and `thm2_c`
/// (`4·0.8⁴·5.6/4.7 < 2`).
pub fn check_theorem2_constants() -> Vec<BoundReport> {
    let a_value = quartic_upper(&rat(1, 20));
    let a = BoundReport::new("thm2_a", &[("eps_max", "1/20".into())], exact(Direction::Less, a_value, rat(56, 10)))
        .note("1 + tau + ... + tau^4 = 5 - 10e + 10e^2 - 5e^3 + e^4 with e = 1 - tau");

    let d = rat(1, 40);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let d4 = &d3 * &d;
    let lower = int(5) - (&d * int(10) + &d2 * int(10) + &d3 * int(5) + d4);
    let b = BoundReport::new("thm2_b", &[("eta_dist_max", "1/40".into())], exact(Direction::Greater, lower, rat(47, 10)))
        .note("verified as |1 + eta + ... + eta^4| > 4.7, the factor consistent with 1 - eta^5 = (1 - eta)(1 + ... + eta^4)");

    let c_value = int(4) * pow(&rat(4, 5), 4) * rat(56, 10) / rat(47, 10);
    let c = BoundReport::new("thm2_c", &[("ratio", "4/5".into())], exact(Direction::Less, c_value, int(2)));
    vec![a, b, c]
}

fn pow(q: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * q)
}

/// Every report bundled by the `verify` command for one exponent.
pub fn verify_exponent(p: u32, cap: u32) -> Result<Vec<BoundReport>> {
    let mut out = vec![
        check_gap_bound(p, DEFAULT_GAP_N_MAX, cap)?,
        check_lemma1_bound(p, cap)?,
        check_tail_constant(p, cap)?,
    ];
    if p >= 7 {
        out.push(check_sin_bound(p, cap)?);
    }
    out.extend(check_prop1_final(p, cap)?);
    Ok(out)
}
