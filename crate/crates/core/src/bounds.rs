//! Closed-form bounds evaluated at BFS level boundaries.
//!
//! All quantities refer to a visit from a fixed source `v` that has finished
//! level `d`: `farness` is the sum of distances inside the ball of radius `d`,
//! `ball` its size, and `gamma_next` an upper bound on the size of level `d+1`.

/// Lower bound on the farness of `v`, valid whenever `x <= r(v)` and
/// `gamma_next` bounds the next level's size:
/// `farness - gamma_next + (d + 2) * (x - ball)`.
///
/// Signed because the value is routinely negative early in a visit.
#[inline]
pub fn farness_lower_bound(level: u32, farness: u64, ball: u64, gamma_next: u64, x: u64) -> i64 {
    farness as i64 - gamma_next as i64 + (level as i64 + 2) * (x as i64 - ball as i64)
}

/// `(r-1)^2 / ((n-1) * f)`, with 0 whenever `n <= 1` or `r <= 1`.
#[inline]
pub fn closeness(farness: u64, reachable: u64, n: u64) -> f64 {
    if n <= 1 || reachable <= 1 || farness == 0 {
        return 0.0;
    }
    let r1 = (reachable - 1) as f64;
    r1 * r1 / ((n - 1) as f64 * farness as f64)
}

/// Upper bound on the closeness of `v` from a farness lower bound and the
/// exact reachable count. Non-positive `lambda` gives `+inf` so that it never
/// triggers a cut.
#[inline]
pub fn closeness_upper_bound(lambda: i64, reachable: u64, n: u64) -> f64 {
    if lambda <= 0 {
        return f64::INFINITY;
    }
    let r1 = reachable.saturating_sub(1) as f64;
    r1 * r1 / (n.saturating_sub(1) as f64 * lambda as f64)
}

/// Lower bound on `1 / c(v)` when only `alpha <= r(v) <= omega` is known.
///
/// `(a x - b) / x^2` has no interior minimum for `x > 0`, so checking the two
/// ends of the interval suffices. Requires `alpha >= 2`. The result may be
/// negative, which is a valid but useless bound.
#[inline]
pub fn inverse_closeness_lower_bound(
    level: u32,
    farness: u64,
    ball: u64,
    gamma_next: u64,
    alpha: u64,
    omega: u64,
    n: u64,
) -> f64 {
    debug_assert!(alpha >= 2 && omega >= alpha);
    let at = |x: u64| {
        let lambda = farness_lower_bound(level, farness, ball, gamma_next, x) as f64;
        let x1 = (x - 1) as f64;
        lambda / (x1 * x1)
    };
    (n - 1) as f64 * at(alpha).min(at(omega))
}
