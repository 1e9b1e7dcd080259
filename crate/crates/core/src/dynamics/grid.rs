use crate::error::{Error, Result};

/// Uniform sample times `0, …, t_max` (both ends included).
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_points: usize) -> Result<Self> {
        if !t_max.is_finite() || t_max < 0.0 {
            return Err(Error::invalid(format!("t_max must be finite and non-negative, got {t_max}")));
        }
        if n_points == 0 {
            return Err(Error::invalid("time grid needs at least one point"));
        }
        if n_points == 1 && t_max != 0.0 {
            return Err(Error::invalid("a single-point grid must have t_max = 0"));
        }
        if n_points > 1 && t_max == 0.0 {
            return Err(Error::invalid("repeated sample times: t_max = 0 with several points"));
        }
        Ok(TimeGrid { t_max, n_points })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> f64 {
        if self.n_points < 2 {
            0.0
        } else {
            self.t_max / (self.n_points - 1) as f64
        }
    }

    pub fn samples(&self) -> Vec<f64> {
        if self.n_points == 1 {
            return vec![0.0];
        }
        let last = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|k| if k + 1 == self.n_points { self.t_max } else { self.t_max * k as f64 / last })
            .collect()
    }

    /// Same grid with every time multiplied by `factor > 0` (e.g. `1/g`).
    pub fn scaled(&self, factor: f64) -> Result<TimeGrid> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::invalid(format!("time scale must be positive, got {factor}")));
        }
        TimeGrid::new(self.t_max * factor, self.n_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_uniform_and_include_ends() {
        let g = TimeGrid::new(4.0, 401).unwrap();
        let s = g.samples();
        assert_eq!(s.len(), 401);
        assert_eq!(s[0], 0.0);
        assert_eq!(s[400], 4.0);
        assert!((s[1] - 0.01).abs() < 1e-15);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(TimeGrid::new(-1.0, 3).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
        assert!(TimeGrid::new(1.0, 1).is_err());
        assert!(TimeGrid::new(0.0, 5).is_err());
        assert_eq!(TimeGrid::new(0.0, 1).unwrap().samples(), vec![0.0]);
    }
}
