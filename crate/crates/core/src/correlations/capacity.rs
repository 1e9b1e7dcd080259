use std::collections::BTreeMap;

use super::measures::MeasureKind;
use crate::error::{Error, Result};

/// Supremum of `Q_{A:C}` over pure states for a mediator of dimension `d_c`.
///
/// The two lower-bound measures use the capacity of the quantity they bound:
/// exceeding it with the lower bound implies the true quantity exceeds it too.
pub fn correlation_capacity(kind: MeasureKind, d_c: usize) -> Result<f64> {
    if d_c < 2 {
        return Err(Error::invalid(format!("mediator dimension must be at least 2, got {d_c}")));
    }
    let d = d_c as f64;
    Ok(match kind {
        MeasureKind::MutualInformation => 2.0 * d.log2(),
        MeasureKind::ClassicalLowerBound | MeasureKind::DiscordLowerBound => d.log2(),
        MeasureKind::Negativity => (d - 1.0) / 2.0,
    })
}

/// `(measure, d_C) → capacity` for a range of mediator dimensions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CapacityTable {
    entries: BTreeMap<(MeasureKind, usize), f64>,
}

impl CapacityTable {
    pub fn for_dims(dims: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for d in dims {
            for kind in MeasureKind::ALL {
                entries.insert((kind, d), correlation_capacity(kind, d)?);
            }
        }
        Ok(CapacityTable { entries })
    }

    pub fn get(&self, kind: MeasureKind, d_c: usize) -> Option<f64> {
        self.entries.get(&(kind, d_c)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MeasureKind, usize, f64)> + '_ {
        self.entries.iter().map(|(&(k, d), &v)| (k, d, v))
    }
}
