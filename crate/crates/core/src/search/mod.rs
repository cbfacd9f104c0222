//! Seeded, budgeted searches for extremal properly colored sets and for
//! blocking sets, with independently re-verifiable reports.
//!
//! Every search is deterministic: the same configuration (including the
//! seed) produces an identical report, byte for byte once serialized.
//! "Exhausted" always refers to the discretized candidate space a search
//! defines for itself, never to the continuum.

mod blocking_search;
mod evidence;
mod extremal;

pub use blocking_search::search_blocking;
pub use evidence::{extension_candidates, triangle_blocking_trials, TrialReport};
pub use extremal::search_extremal;

use crate::blocking::{is_k_color_blocked, BlockTarget};
use crate::coloring::is_properly_colored;
use crate::error::{Error, Result};
use crate::visibility::{max_collinear, ColoredPointSet};
use serde::Serialize;

/// What a search optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Extremal,
    Blocking,
}

/// A square rational lattice: coordinates i/denom for |i| <= extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub extent: i64,
    pub denom: i64,
}

impl GridSpec {
    pub fn new(extent: i64, denom: i64) -> Result<Self> {
        if extent < 0 || denom < 1 {
            return Err(Error::invalid("grid needs extent >= 0 and denom >= 1"));
        }
        Ok(GridSpec { extent, denom })
    }

    pub fn point_count(&self) -> u64 {
        let side = 2 * self.extent as u64 + 1;
        side * side
    }
}

/// Search parameters. `max_collinear = None` leaves collinearity
/// unconstrained (used where the underlying statement has no such bound).
#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub k: usize,
    pub max_collinear: Option<usize>,
    pub grid: GridSpec,
    pub budget: u64,
    pub seed: u64,
    /// Cap on configuration size (total points for extremal, blockers for
    /// blocking searches).
    pub max_points: usize,
    /// Stop as soon as a configuration of this size is found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_at_size: Option<usize>,
    #[serde(skip)]
    pub seed_points: Option<ColoredPointSet>,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if let Some(l) = self.max_collinear {
            if l < 2 {
                return Err(Error::invalid("collinearity bound must be at least 2"));
            }
        }
        if self.budget == 0 {
            return Err(Error::invalid("budget must be positive"));
        }
        if self.grid.point_count() == 0 {
            return Err(Error::invalid("grid is empty"));
        }
        if self.max_points == 0 {
            return Err(Error::invalid("max_points must be positive"));
        }
        Ok(())
    }
}

/// Deterministic record of a search run. `best` is `None` when nothing
/// verifiable was found.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub k: usize,
    pub max_collinear: Option<usize>,
    pub grid: GridSpec,
    pub budget: u64,
    pub seed: u64,
    /// The blocking target, echoed so reports re-verify standalone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<ColoredPointSet>,
    pub best: Option<ColoredPointSet>,
    pub best_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_found_at_node: Option<u64>,
    pub nodes_expanded: u64,
    pub exhausted: bool,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Re-verify a report's witness with the independent verifiers: proper
/// coloring, color budget and collinearity bound for extremal reports, the
/// full blocking verifier for blocking reports. Empty reports pass.
pub fn replay(report: &SearchReport) -> Result<bool> {
    let best = match &report.best {
        Some(b) => b,
        None => return Ok(true),
    };
    match report.mode {
        SearchMode::Extremal => {
            if best.len() != report.best_size {
                return Ok(false);
            }
            let mut used: Vec<usize> = best.colors().to_vec();
            used.sort_unstable();
            used.dedup();
            if used.len() > report.k {
                return Ok(false);
            }
            if let Some(l) = report.max_collinear {
                if max_collinear(best.points()) > l {
                    return Ok(false);
                }
            }
            Ok(is_properly_colored(best).proper)
        }
        SearchMode::Blocking => {
            let target_set = report
                .target
                .as_ref()
                .ok_or_else(|| Error::invalid("blocking report lacks its target"))?;
            let target = BlockTarget::convex(
                target_set.points().to_vec(),
                target_set.color(0),
            )
            .or_else(|_| {
                BlockTarget::concave4(target_set.points().to_vec(), target_set.color(0))
            })?;
            if let Some(l) = report.max_collinear {
                let union = target_set.union(best)?;
                if max_collinear(union.points()) > l {
                    return Ok(false);
                }
            }
            let r = is_k_color_blocked(&target, best, report.k)?;
            Ok(r.valid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(3, 1).is_ok());
        assert!(GridSpec::new(-1, 1).is_err());
        assert!(GridSpec::new(3, 0).is_err());
        assert_eq!(GridSpec::new(3, 1).unwrap().point_count(), 49);
    }

    #[test]
    fn config_validation() {
        let cfg = SearchConfig {
            mode: SearchMode::Extremal,
            k: 0,
            max_collinear: Some(3),
            grid: GridSpec { extent: 2, denom: 1 },
            budget: 10,
            seed: 0,
            max_points: 8,
            stop_at_size: None,
            seed_points: None,
        };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig { k: 2, max_collinear: Some(1), ..cfg };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig { max_collinear: Some(3), budget: 0, ..cfg };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn replay_empty_report_passes() {
        let report = SearchReport {
            mode: SearchMode::Extremal,
            k: 3,
            max_collinear: Some(3),
            grid: GridSpec { extent: 2, denom: 1 },
            budget: 10,
            seed: 1,
            target: None,
            best: None,
            best_size: 0,
            best_found_at_node: None,
            nodes_expanded: 10,
            exhausted: true,
        };
        assert!(replay(&report).unwrap());
    }

    #[test]
    fn replay_rejects_tampered_witness() {
        let best = crate::corpus::mc33_canonical();
        let mut report = SearchReport {
            mode: SearchMode::Extremal,
            k: 3,
            max_collinear: Some(3),
            grid: GridSpec { extent: 3, denom: 1 },
            budget: 10,
            seed: 1,
            target: None,
            best: Some(best.clone()),
            best_size: 6,
            best_found_at_node: Some(1),
            nodes_expanded: 10,
            exhausted: false,
        };
        assert!(replay(&report).unwrap());
        // Flip one color so two visible points share a class.
        report.best = Some(best.recolored(2, 0).unwrap());
        assert!(!replay(&report).unwrap());
        // Witness of the wrong size is rejected too.
        report.best = Some(
            ColoredPointSet::new(vec![Point::ints(0, 0)], vec![0], 1).unwrap(),
        );
        assert!(!replay(&report).unwrap());
    }
}
