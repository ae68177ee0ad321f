//! Numerical tolerances shared across the crate.

use std::sync::atomic::{AtomicU64, Ordering};

/// Entries down to `-NUM_EPS` are accepted as zero and clamped.
pub const NUM_EPS: f64 = 1e-12;

/// Allowed deviation of a probability vector's sum from one.
pub const SUM_TOL: f64 = 1e-9;

/// Default tolerance for majorization and equality comparisons.
pub const DEFAULT_CMP_TOL: f64 = 1e-9;

static CMP_TOL_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current comparison tolerance (default `1e-9`).
pub fn cmp_tol() -> f64 {
    f64::from_bits(CMP_TOL_BITS.load(Ordering::Relaxed))
}

/// Overrides the comparison tolerance process-wide. Used by the CLI to
/// honour `CHANMAJ_TOL`; library callers normally leave it alone.
pub fn set_cmp_tol(tol: f64) -> crate::Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(crate::Error::domain(format!(
            "comparison tolerance must be a non-negative finite number, got {tol}"
        )));
    }
    CMP_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}
