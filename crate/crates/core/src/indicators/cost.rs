use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{evaluate_indicator, hypervolume, IndicatorId, ReferenceContext};

/// `p · I + (1 − p) · (−HV)`, with `I` sign-adjusted so that lower is better for every
/// indicator (extent indicators enter negated).
///
/// A degenerate indicator makes the cost `+∞` whenever `p > 0`; with `p = 0` the indicator is
/// not evaluated and the cost is exactly `−HV`.
pub fn coverage_cost<T: Scalar, P: AsRef<[T]>>(
    id: IndicatorId,
    points: &[P],
    ctx: &ReferenceContext<T>,
    p: T,
    reference: &[T],
) -> Result<T> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::InvalidConfig(format!("weight p = {p} outside [0, 1]")));
    }
    let hv = hypervolume(points, reference)?;
    let hv_term = (T::one() - p) * -hv;
    if p == T::zero() {
        return Ok(hv_term);
    }
    let raw = evaluate_indicator(id, points, ctx)?;
    if raw.degenerate || !raw.value.is_finite() {
        return Ok(T::infinity());
    }
    let adjusted = if id.orientation() > 0 {
        -raw.value
    } else {
        raw.value
    };
    Ok(p * adjusted + hv_term)
}
