use serde::Serialize;

/// Wall-clock split of a pipeline run: transform, black box, recovery.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timing {
    pub jl: f64,
    pub blackbox: f64,
    pub recover: f64,
}

impl Timing {
    pub fn total(&self) -> f64 {
        self.jl + self.blackbox + self.recover
    }
}

/// Runs `f` and measures it in seconds. Browsers expose no monotonic clock to
/// `std`, so on `wasm32` the measurement is always 0.
pub(crate) fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    #[cfg(not(target_arch = "wasm32"))]
    {
        let start = std::time::Instant::now();
        let out = f();
        (out, start.elapsed().as_secs_f64())
    }
    #[cfg(target_arch = "wasm32")]
    {
        (f(), 0.0)
    }
}
