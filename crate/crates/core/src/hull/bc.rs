use serde::Serialize;

use crate::geometry::{check_open_unit, meb, vector, Point, PointSet};
use crate::jl::ConvexCombination;
use crate::{Error, Result};

/// Output of [`bc_meb`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MebSolution {
    pub center: Point,
    /// Covering radius of `center` over the whole input.
    pub radius: f64,
    /// The center as a convex combination of core-set points.
    pub comb: ConvexCombination,
    pub iterations: usize,
    /// Radius of the inner ball over the core set at each iteration.
    pub history: Vec<f64>,
    /// Core-set indices in insertion order.
    pub core: Vec<usize>,
}

/// Bădoiu–Clarkson: grow a core set `T` from the first point by repeatedly
/// adding the input point farthest from the center of the minimum enclosing
/// ball of `T`.
///
/// Runs at most `ceil(2 / eps)` iterations and stops early once the farthest
/// point already lies inside the inner ball. The returned center covers the
/// input within `(1 + eps)` times its minimum enclosing radius.
pub fn bc_meb(s: &PointSet, eps: f64) -> Result<MebSolution> {
    check_open_unit("eps", eps)?;
    if s.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let rounds = (2.0 / eps).ceil() as usize;
    let mut core = vec![0usize];
    let mut history = Vec::with_capacity(rounds);
    let mut iterations = 0;
    let (center, weights) = loop {
        let (center, radius, weights) = inner_ball(s, &core);
        iterations += 1;
        history.push(radius);
        let (far, far_sq) = farthest(s, center.coords());
        let inside = far_sq.sqrt() <= radius * (1.0 + 1e-12);
        if inside || iterations >= rounds || core.contains(&far) {
            break (center, weights);
        }
        core.push(far);
    };
    let radius = farthest(s, center.coords()).1.sqrt();
    let (indices, ws): (Vec<usize>, Vec<f64>) = core
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&i, &w)| (i, w))
        .unzip();
    let total: f64 = ws.iter().sum();
    let comb = ConvexCombination::new(indices, ws.into_iter().map(|w| w / total).collect())?;
    Ok(MebSolution {
        center,
        radius,
        comb,
        iterations,
        history,
        core,
    })
}

/// Center, radius over `core`, and weights of the center over `core`.
///
/// The core set holds at most `ceil(2 / eps)` points, so the exact
/// move-to-front solver is used regardless of the ambient dimension.
fn inner_ball(s: &PointSet, core: &[usize]) -> (Point, f64, Vec<f64>) {
    let ball = meb::meb_of_subset(s, core);
    let mut weights = vec![0.0; core.len()];
    for (i, w) in ball.support.iter().zip(&ball.weights) {
        let slot = core.iter().position(|c| c == i).expect("support lies in core");
        weights[slot] += w;
    }
    (ball.center, ball.radius, weights)
}

fn farthest(s: &PointSet, c: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, row) in s.rows().enumerate() {
        let dsq = vector::sq_dist(row, c);
        if dsq > best.1 {
            best = (i, dsq);
        }
    }
    best
}
