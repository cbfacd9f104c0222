//! Exact-arithmetic toolkit for visibility graphs of colored planar point
//! sets: blocking-set verification, order-type equivalence, empty convex
//! polygon detection and seeded combinatorial searches.
//!
//! Every geometric decision is made over arbitrary-precision rationals;
//! floating point appears only in SVG rendering.

pub mod blocking;
pub mod coloring;
pub mod corpus;
pub mod empty_polygon;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod geom;
pub mod render;
pub mod search;
pub mod visibility;

pub use error::Error;
pub use geom::{Orientation, Point, Rat};
pub use visibility::{ColoredPointSet, VisibilityGraph};

/// Environment variable capping the number of worker threads used by
/// trial-sharding operations. Results are identical for any cap.
pub const THREADS_ENV: &str = "VISGRAB_THREADS";

/// Worker count for sharded trial runs: `VISGRAB_THREADS` if set and valid,
/// otherwise the machine's available parallelism.
pub fn worker_count() -> usize {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
