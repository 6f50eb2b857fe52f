//! Execution policy helpers.
//!
//! With the default `parallel` feature the heavy operations (codebook
//! verification, exhaustive decode checks, minimal-length search, matrix
//! builds, simulation) fan out over a rayon pool; built with
//! `--no-default-features` the same entry points run the sequential
//! fallback. Both paths reduce deterministically, so outputs never depend
//! on the feature choice or the thread count.

/// Caps the size of the global worker pool.
///
/// Returns `true` if the pool was configured, `false` if a pool was already
/// running (rayon's global pool can only be built once per process) or the
/// crate was built without the `parallel` feature. Callers treat `false` as
/// "keep the existing configuration", not as an error.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_ok()
}

/// Sequential build: thread configuration is a no-op.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> bool {
    false
}

/// True when the crate was built with the `parallel` feature.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
