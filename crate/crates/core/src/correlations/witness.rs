use super::capacity::correlation_capacity;
use super::measures::MeasureKind;
use crate::error::{Error, Result};

/// Smallest mediator dimension `d_C ≥ 2` whose capacity for `kind` is at least
/// `observed` (boundary inclusive).
///
/// `observed` should already have any known initial-correlation offset removed.
pub fn dimension_witness(kind: MeasureKind, observed: f64) -> Result<usize> {
    if !observed.is_finite() {
        return Err(Error::invalid(format!("observed value must be finite, got {observed}")));
    }
    if kind == MeasureKind::Negativity && observed < 0.0 {
        return Err(Error::invalid(format!("negativity cannot be negative, got {observed}")));
    }
    // Closed-form inverse as a starting point, then settle exactly against
    // the capacity formula so boundaries stay inclusive.
    let estimate = match kind {
        MeasureKind::MutualInformation => (observed / 2.0).exp2(),
        MeasureKind::ClassicalLowerBound | MeasureKind::DiscordLowerBound => observed.exp2(),
        MeasureKind::Negativity => 2.0 * observed + 1.0,
    };
    if estimate > 1e15 {
        return Err(Error::invalid(format!("observed value {observed} implies an absurd mediator dimension")));
    }
    let mut d = (estimate.ceil() as usize).max(2);
    while d > 2 && correlation_capacity(kind, d - 1)? >= observed {
        d -= 1;
    }
    while correlation_capacity(kind, d)? < observed {
        d += 1;
    }
    Ok(d)
}
