//! Thread-pool sizing from `TAUTFORGE_THREADS` (unset or 0 = rayon default).

/// Runs `f` on a pool capped by `TAUTFORGE_THREADS`, or on the global pool.
pub fn install<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match configured_threads() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Thread cap from the environment; `None` when unset, zero or unparsable.
pub fn configured_threads() -> Option<usize> {
    std::env::var("TAUTFORGE_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}
