//! Exhaustive searches over boxes of `Z[i]`.
//!
//! Every search enumerates one variable over a [`SearchBox`] and tests the
//! forced value for being an exact power with a root inside the same box.
//! Boxes split into disjoint row ranges, which is how the CLI spreads work
//! across threads; merging sorts the union, so results do not depend on the
//! split.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{lex_cmp, GaussianInt, Valuation};

/// The square `max(|re|, |im|) ≤ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub bound: u64,
}

impl SearchBox {
    pub fn new(bound: u64) -> Self {
        SearchBox { bound }
    }

    pub fn len(&self) -> u64 {
        let side = 2 * self.bound + 1;
        side * side
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full_rows(&self) -> RowRange {
        let b = self.bound as i64;
        RowRange { bound: self.bound, rows: -b..=b }
    }

    /// Splits the rows into at most `parts` contiguous, disjoint ranges that
    /// cover the box.
    pub fn partition(&self, parts: usize) -> Vec<RowRange> {
        let side = 2 * self.bound as i64 + 1;
        let parts = (parts.max(1) as i64).min(side);
        let lo = -(self.bound as i64);
        (0..parts)
            .map(|j| {
                let start = lo + side * j / parts;
                let end = lo + side * (j + 1) / parts - 1;
                RowRange { bound: self.bound, rows: start..=end }
            })
            .collect()
    }

    /// Splits at the given row cut points (each cut starts a new range).
    pub fn partition_at(&self, cuts: &[i64]) -> Vec<RowRange> {
        let b = self.bound as i64;
        let mut cuts: Vec<i64> = cuts.iter().copied().filter(|c| *c > -b && *c <= b).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut start = -b;
        for c in cuts {
            out.push(RowRange { bound: self.bound, rows: start..=c - 1 });
            start = c;
        }
        out.push(RowRange { bound: self.bound, rows: start..=b });
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = GaussianInt> {
        self.full_rows().iter()
    }
}

/// Rows `re ∈ rows` of a box, each row spanning `im ∈ [-bound, bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowRange {
    pub bound: u64,
    pub rows: RangeInclusive<i64>,
}

impl RowRange {
    pub fn iter(&self) -> impl Iterator<Item = GaussianInt> {
        let b = self.bound as i64;
        self.rows
            .clone()
            .flat_map(move |re| (-b..=b).map(move |im| GaussianInt::new(re, im)))
    }
}

/// A solution of `x^p - y^q = 1`; trivial when `x·y = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalanSolution {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub p: u32,
    pub q: u32,
    pub trivial: bool,
}

impl CatalanSolution {
    fn new(x: GaussianInt, y: GaussianInt, p: u32, q: u32) -> Self {
        let trivial = x.is_zero() || y.is_zero();
        CatalanSolution { x, y, p, q, trivial }
    }

    pub fn satisfies(&self) -> bool {
        &self.x.pow(self.p) - &self.y.pow(self.q) == GaussianInt::one()
    }

    fn sort_key(&self) -> (&GaussianInt, &GaussianInt) {
        (&self.x, &self.y)
    }
}

/// A pair with `x3^p - 4·x2^p = 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedSolution {
    pub x3: GaussianInt,
    pub x2: GaussianInt,
    pub p: u32,
    pub trivial: bool,
}

/// A pair with `a·x^p - y^p = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralSolution {
    pub x: GaussianInt,
    pub y: GaussianInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralSearch {
    pub a: i64,
    pub b: i64,
    pub p: u32,
    /// Whether `|b| < 2^{p/2}` holds for the inputs.
    pub within_hypothesis: bool,
    pub solutions: Vec<GeneralSolution>,
}

fn check_exponent(name: &str, e: u32) -> Result<()> {
    if e < 2 {
        return Err(Error::Precondition(format!("exponent {name} must be >= 2, got {e}")));
    }
    Ok(())
}

fn check_odd_prime(p: u32) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Solutions of `x^p - y^q = 1` from the given rows of `y`.
pub fn search_catalan_rows(p: u32, q: u32, rows: &RowRange) -> Result<Vec<CatalanSolution>> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    let one = GaussianInt::one();
    let mut out = Vec::new();
    for y in rows.iter() {
        let target = &y.pow(q) + &one;
        for x in target.exact_roots(p, rows.bound) {
            out.push(CatalanSolution::new(x, y.clone(), p, q));
        }
    }
    Ok(out)
}

/// Every solution of `x^p - y^q = 1` with `x` and `y` inside the box, in
/// lexicographic order of `(x, y)`.
pub fn search_catalan(p: u32, q: u32, bx: SearchBox) -> Result<Vec<CatalanSolution>> {
    search_catalan_parallel(p, q, bx, 1)
}

/// [`search_catalan`] with the rows split over `workers` threads of the
/// current rayon pool.
pub fn search_catalan_parallel(
    p: u32,
    q: u32,
    bx: SearchBox,
    workers: usize,
) -> Result<Vec<CatalanSolution>> {
    let parts = bx.partition(workers);
    let chunks = run_parts(&parts, workers, |r| search_catalan_rows(p, q, r))?;
    Ok(merge_catalan(chunks))
}

pub fn merge_catalan(chunks: Vec<Vec<CatalanSolution>>) -> Vec<CatalanSolution> {
    let mut all: Vec<CatalanSolution> = chunks.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        let (ax, ay) = a.sort_key();
        let (bx, by) = b.sort_key();
        lex_cmp(ax, bx).then_with(|| lex_cmp(ay, by))
    });
    all.dedup();
    all
}

fn run_parts<T: Send>(
    parts: &[RowRange],
    workers: usize,
    f: impl Fn(&RowRange) -> Result<Vec<T>> + Sync,
) -> Result<Vec<Vec<T>>> {
    if workers <= 1 || parts.len() <= 1 {
        return parts.iter().map(&f).collect();
    }
    parts.par_iter().map(&f).collect()
}

pub fn nontrivial(solutions: &[CatalanSolution]) -> Vec<(GaussianInt, GaussianInt)> {
    solutions
        .iter()
        .filter(|s| !s.trivial)
        .map(|s| (s.x.clone(), s.y.clone()))
        .collect()
}

/// Solutions of `x3^p - 4·x2^p = 4` with both variables in the box.
pub fn search_shifted(p: u32, bx: SearchBox) -> Result<Vec<ShiftedSolution>> {
    search_shifted_parallel(p, bx, 1)
}

pub fn search_shifted_parallel(p: u32, bx: SearchBox, workers: usize) -> Result<Vec<ShiftedSolution>> {
    check_odd_prime(p)?;
    let four = GaussianInt::from(4);
    let parts = bx.partition(workers);
    let chunks = run_parts(&parts, workers, |rows| {
        let mut out = Vec::new();
        for x2 in rows.iter() {
            let target = &(&four * &x2.pow(p)) + &four;
            for x3 in target.exact_roots(p, rows.bound) {
                let trivial = x3.is_zero() || x2.is_zero();
                out.push(ShiftedSolution { x3, x2: x2.clone(), p, trivial });
            }
        }
        Ok(out)
    })?;
    let mut all: Vec<ShiftedSolution> = chunks.into_iter().flatten().collect();
    all.sort_by(|a, b| lex_cmp(&a.x3, &b.x3).then_with(|| lex_cmp(&a.x2, &b.x2)));
    Ok(all)
}

/// Solutions of `a·x^p - y^p = b` with both variables in the box.
pub fn search_general(a: i64, b: i64, p: u32, bx: SearchBox) -> Result<GeneralSearch> {
    check_odd_prime(p)?;
    if a == 0 {
        return Err(Error::Precondition("coefficient a must be nonzero".into()));
    }
    // |b| < 2^{p/2}  ⇔  b² < 2^p
    let within_hypothesis = BigInt::from(b) * BigInt::from(b) < BigInt::from(1u8) << p;
    let ga = GaussianInt::from(a);
    let gb = GaussianInt::from(b);
    let mut solutions = Vec::new();
    for x in bx.iter() {
        let target = &(&ga * &x.pow(p)) - &gb;
        for y in target.exact_roots(p, bx.bound) {
            solutions.push(GeneralSolution { x: x.clone(), y });
        }
    }
    solutions.sort_by(|s, t| lex_cmp(&s.x, &t.x).then_with(|| lex_cmp(&s.y, &t.y)));
    Ok(GeneralSearch { a, b, p, within_hypothesis, solutions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    Coprime,
    CommonFactor,
}

/// How `y + i` and `y - i` share factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSplit {
    pub tag: CaseTag,
    /// `(1+i)`-adic valuation of `y + i`.
    pub r1: u64,
    /// `(1+i)`-adic valuation of `y - i`.
    pub r2: u64,
    pub gcd: GaussianInt,
    /// `x` with `x^p = y² + 1`, when one exists.
    pub pth_root: Option<GaussianInt>,
}

/// Classifies `y` by `gcd(y + i, y - i)`.
///
/// When `y² + 1` is a perfect `p`-th power and the factors are not coprime,
/// the smaller valuation must be exactly 2; a violation is reported as an
/// error.
pub fn case_split(y: &GaussianInt, p: u32) -> Result<CaseSplit> {
    check_odd_prime(p)?;
    let i = GaussianInt::i();
    let plus = y + &i;
    let minus = y - &i;
    if plus.is_zero() || minus.is_zero() {
        return Err(Error::Precondition(format!("y = {y} gives a trivial solution")));
    }
    let gcd = plus.gcd(&minus)?.into_inner();
    let val = |z: &GaussianInt| match z.val_one_plus_i() {
        Valuation::Finite(k) => k,
        Valuation::Infinite => unreachable!("nonzero input"),
    };
    let (r1, r2) = (val(&plus), val(&minus));
    let tag = if gcd.is_unit() { CaseTag::Coprime } else { CaseTag::CommonFactor };
    let square_plus_one = &(y * y) + &GaussianInt::one();
    let bound = root_search_bound(&square_plus_one, p);
    let pth_root = square_plus_one.exact_root(p, bound);
    if tag == CaseTag::CommonFactor && pth_root.is_some() && r1.min(r2) != 2 {
        return Err(Error::Inconsistent(format!(
            "y = {y}: y² + 1 is a {p}-th power but min(r1, r2) = {}",
            r1.min(r2)
        )));
    }
    Ok(CaseSplit { tag, r1, r2, gcd, pth_root })
}

/// A coordinate bound large enough to contain every `p`-th root of `z`.
fn root_search_bound(z: &GaussianInt, p: u32) -> u64 {
    use num_traits::ToPrimitive;
    let r = z.norm().nth_root(2 * p) + 1u32;
    r.to_u64().unwrap_or(u64::MAX / 4)
}

/// Every unit is a `p`-th power of a unit, checked over `{1, i, -1, -i}`.
pub fn verify_unit_pth_powers(p: u32) -> Result<bool> {
    if p.is_multiple_of(2) {
        return Err(Error::Precondition(format!("exponent must be odd, got {p}")));
    }
    let units = GaussianInt::units();
    Ok(units.iter().all(|target| units.iter().any(|u| u.pow(p) == *target)))
}
