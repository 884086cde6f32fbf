//! The JSON report written by the `catalan-zi` binary.
//!
//! Numbers that are not small machine integers are strings: Gaussian
//! integers as `a+bi`, rationals as `num/den`. Nothing in the file is a
//! float, and nothing depends on the worker count, so identical
//! configurations give byte-identical files.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::elliptic::{CurveD, FiberResult, TorsionLabel};
use crate::gaussian::GaussianInt;
use crate::search::{CatalanSolution, GeneralSolution};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub searches: Vec<CatalanSearchEntry>,
    pub shifted: Vec<ShiftedEntry>,
    pub general: Vec<GeneralEntry>,
    pub bound_reports: Vec<BoundReport>,
    pub residue_checks: Vec<ResidueEntry>,
    pub fibers: Option<FiberSection>,
    pub assumptions: Vec<String>,
    pub failures: Vec<String>,
    pub passed: bool,
    /// Only present when timing was requested; omitted otherwise so that
    /// reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

/// The parts of the run configuration that determine the report content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub p: Vec<u32>,
    pub q: Vec<u32>,
    pub bound: u64,
    pub precision_cap: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalanSearchEntry {
    pub p: u32,
    pub q: u32,
    pub bound: u64,
    pub solutions: Vec<CatalanSolution>,
    pub nontrivial_count: usize,
    /// Nontrivial solutions inside the box that the known classification
    /// predicts.
    pub expected_nontrivial: Vec<(GaussianInt, GaussianInt)>,
    pub matches_expected: bool,
    pub conjugation_closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftedStatus {
    Trivial,
    /// The exceptional pair `x3 = -(1+i), x2 = i`.
    Stated,
    /// The complex conjugate of the stated pair, which also solves the
    /// equation but is not listed with it.
    ConjugateOfStated,
    Unexpected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedRow {
    pub x3: GaussianInt,
    pub x2: GaussianInt,
    pub status: ShiftedStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedEntry {
    pub p: u32,
    pub bound: u64,
    pub solutions: Vec<ShiftedRow>,
    pub discrepancy: Option<String>,
    pub matches_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralEntry {
    pub a: i64,
    pub b: i64,
    pub p: u32,
    pub bound: u64,
    pub within_hypothesis: bool,
    pub solutions: Vec<GeneralSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub p: u32,
    pub k: u32,
    pub unit_group_order: u64,
    /// `None` when `k` exceeds the enumeration ceiling.
    pub enumerated_units: Option<u64>,
    pub forces_identity: Option<bool>,
    pub units_are_pth_powers: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionRow {
    pub label: TorsionLabel,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub curve: CurveD,
    pub target: TorsionLabel,
    pub result: FiberResult,
    pub as_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSection {
    pub torsion: Vec<TorsionRow>,
    pub fibers: Vec<FiberRow>,
}

impl SearchReport {
    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
