//! Numeric check of the triangle-preservation bound.
//!
//! A right triangle `o, y1 = (a, 0), y2 = (a, b)` is perturbed to
//! `o, y1' = (a0, 0), y2' = (a', b')` with every squared side moving by at
//! most `delta`. The frame is chosen so that `y1'` lies on the non-negative
//! first axis, hence `a0 >= 0`. Under those conditions, and for
//! `delta < 2a^2/3`, the perturbed foot satisfies
//! `a' >= (2a^2 - 3 delta) / (2 sqrt(a^2 + delta))`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TriangleWitness {
    pub a: f64,
    pub b: f64,
    pub a0: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    pub delta: f64,
}

/// `(2a^2 - 3 delta) / (2 sqrt(a^2 + delta))`.
pub fn triangle_bound(a: f64, delta: f64) -> f64 {
    (2.0 * a * a - 3.0 * delta) / (2.0 * (a * a + delta).sqrt())
}

/// Re-verifies the perturbation bounds of `w`, then reports whether
/// `a' >= bound - 1e-12`.
///
/// Witnesses outside the bound's hypotheses are rejected: `a <= 0`, `b < 0`,
/// `a0 < 0`, `delta >= 2a^2/3` (the bound turns non-positive and stops
/// holding), or any squared side moved by more than `delta`.
pub fn check_triangle_bound(w: &TriangleWitness) -> Result<bool> {
    let fields = [w.a, w.b, w.a0, w.a_prime, w.b_prime, w.delta];
    if fields.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidWitness("non-finite field".into()));
    }
    if w.a <= 0.0 || w.b < 0.0 || w.delta < 0.0 || w.a0 < 0.0 {
        return Err(Error::InvalidWitness(
            "need a > 0, b >= 0, a0 >= 0 and delta >= 0".into(),
        ));
    }
    if 3.0 * w.delta >= 2.0 * w.a * w.a {
        return Err(Error::InvalidWitness(format!(
            "delta = {} is not below 2a^2/3 = {}",
            w.delta,
            2.0 * w.a * w.a / 3.0
        )));
    }
    let slack = w.delta + 1e-12 * (w.a * w.a + w.b * w.b).max(1.0);
    let sides = [
        ("|y1'|^2", w.a0 * w.a0, w.a * w.a),
        (
            "|y1' - y2'|^2",
            (w.a_prime - w.a0).powi(2) + w.b_prime * w.b_prime,
            w.b * w.b,
        ),
        (
            "|y2'|^2",
            w.a_prime * w.a_prime + w.b_prime * w.b_prime,
            w.a * w.a + w.b * w.b,
        ),
    ];
    for (name, moved, original) in sides {
        if (moved - original).abs() > slack {
            return Err(Error::InvalidWitness(format!(
                "{name} moved by {} > delta = {}",
                (moved - original).abs(),
                w.delta
            )));
        }
    }
    Ok(w.a_prime >= triangle_bound(w.a, w.delta) - 1e-12)
}

impl TriangleWitness {
    /// Draws a witness that satisfies the perturbation bounds by
    /// construction.
    ///
    /// `a` and `b` are uniform on `[0.1, 3)` and `[0, 3)`, `delta` uniform
    /// below `0.6 a^2`. Each squared side is then moved by an independent
    /// uniform amount in `[-delta, delta]` and the coordinates solved back
    /// from the three side lengths; draws whose sides do not close into a
    /// triangle are rejected and redrawn.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let a: f64 = rng.random_range(0.1..3.0);
            let b: f64 = rng.random_range(0.0..3.0);
            let delta = rng.random_range(0.0..0.6) * a * a;
            let a0 = (a * a + rng.random_range(-1.0..=1.0) * delta).sqrt();
            let hyp_sq = a * a + b * b + rng.random_range(-1.0..=1.0) * delta;
            let leg_sq = b * b + rng.random_range(-1.0..=1.0) * delta;
            if leg_sq < 0.0 || hyp_sq < 0.0 {
                continue;
            }
            // |y2'|^2 - |y2' - y1'|^2 = 2 a0 a' - a0^2
            let a_prime = (hyp_sq - leg_sq + a0 * a0) / (2.0 * a0);
            let b_sq = hyp_sq - a_prime * a_prime;
            if b_sq < 0.0 {
                continue;
            }
            return TriangleWitness {
                a,
                b,
                a0,
                a_prime,
                b_prime: b_sq.sqrt(),
                delta,
            };
        }
    }
}
