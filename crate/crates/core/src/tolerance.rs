//! Default numerical tolerances.

/// On-shell membership `|p·p - m²|` (relative to `max(1, p0²)`).
pub const ON_SHELL: f64 = 1e-9;
/// Dense linear-algebra identities (unitarity, eigenvectors, stabilizers).
pub const LINALG: f64 = 1e-10;
/// Metric preservation and unit-axis checks.
pub const METRIC: f64 = 1e-12;
/// Matching transported grid points against each other.
pub const GRID_MATCH: f64 = 1e-9;
