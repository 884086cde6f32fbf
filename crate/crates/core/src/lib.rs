//! Exact verification tools for the Catalan equation `x^p - y^q = 1` over the
//! Gaussian integers when one exponent is even.
//!
//! - [`gaussian`]: arithmetic in `Z[i]` (norm, Euclidean division, gcd,
//!   `(1+i)`-adic valuation, exact roots).
//! - [`residue`]: the rings `Z[i]/(1+i)^k` and their unit groups.
//! - [`search`]: exhaustive box searches and the `y ± i` case split.
//! - [`interval`] and [`bounds`]: rational interval arithmetic and the
//!   certified inequality checks built on it.
//! - [`elliptic`]: `y² = x³ ± 1` over `Q(i)`, the trace map and its fibers.
//! - [`cli`] and [`report`]: the `catalan-zi` command and its JSON report.

pub mod bounds;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod gaussian;
pub mod interval;
pub mod report;
pub mod residue;
pub mod search;

pub(crate) mod serde_str;

pub use error::{Error, Result};
pub use gaussian::{CanonicalAssociate, GaussianInt, Valuation};
