//! Worker-pool plumbing. `FRACTURE_THREADS` caps parallelism; 0 or unset
//! means one worker per available core.

use std::sync::OnceLock;

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

fn configured_threads() -> usize {
    std::env::var("FRACTURE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0)
}

/// The process-wide worker pool.
pub fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(configured_threads())
            .build()
            .expect("failed to build worker pool")
    })
}

/// Run `f` inside the worker pool.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}
