/// In-place unnormalized Walsh–Hadamard butterfly; `values.len()` must be a
/// power of two. Pairs `(x, y)` become `(x + y, x - y)` at every stage.
pub(crate) fn fwht(values: &mut [f64]) {
    debug_assert!(values.len().is_power_of_two());
    let mut half = 1usize;
    while half < values.len() {
        let step = half * 2;
        for block in values.chunks_exact_mut(step) {
            let (left, right) = block.split_at_mut(half);
            for (x, y) in left.iter_mut().zip(right.iter_mut()) {
                let (lx, ry) = (*x, *y);
                *x = lx + ry;
                *y = lx - ry;
            }
        }
        half = step;
    }
}
