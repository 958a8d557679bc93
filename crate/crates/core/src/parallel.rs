//! Worker pool sizing.

use crate::error::{Result, SymmError};

pub const THREADS_VAR: &str = "SYMMKIT_THREADS";

/// Sizes the global rayon pool from `SYMMKIT_THREADS` when it is set.
/// Results never depend on the thread count.
pub fn init_thread_pool() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| SymmError::Config(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    // a pool built earlier in the process stays in place
    if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
        log::debug!("global thread pool already initialized");
    }
    Ok(())
}
