//! Execution strategy for the data-parallel loops (trajectory samples,
//! per-sample measure evaluation, oracle grids).
//!
//! With the `parallel` feature disabled every strategy runs sequentially, so
//! results never depend on which strategy was requested.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map over `items`.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Fallible order-preserving map; the first error in sample order wins.
    pub fn try_map<T, R, F>(self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn strategies_agree_and_preserve_order() {
        let xs: Vec<u64> = (0..257).collect();
        let seq = Execution::Sequential.map(&xs, |x| x * x + 1);
        let par = Execution::Parallel.map(&xs, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[10], 101);
    }

    #[test]
    fn try_map_reports_first_error_in_order() {
        let xs: Vec<usize> = (0..50).collect();
        let r = Execution::Parallel.try_map(&xs, |&x| {
            if x >= 7 {
                Err(Error::InvalidDimension { what: "x", dim: x })
            } else {
                Ok(x)
            }
        });
        assert_eq!(r, Err(Error::InvalidDimension { what: "x", dim: 7 }));
    }
}
