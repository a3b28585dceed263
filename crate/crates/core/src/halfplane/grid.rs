use num_complex::Complex64;

use crate::error::{require, Result};

/// A closed interval of the imaginary direction, `t ∈ [t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineWindow {
    pub t_min: f64,
    pub t_max: f64,
}

impl LineWindow {
    pub fn new(t_min: f64, t_max: f64) -> Result<Self> {
        require(
            t_min.is_finite() && t_max.is_finite() && t_min < t_max,
            || format!("line window [{t_min}, {t_max}] is empty or not finite"),
        )?;
        Ok(Self { t_min, t_max })
    }

    /// `[−T, T]`.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Self::centered(0.0, half_width)
    }

    pub fn centered(center: f64, half_width: f64) -> Result<Self> {
        require(half_width > 0.0, || {
            format!("window half-width must be positive (got {half_width})")
        })?;
        Self::new(center - half_width, center + half_width)
    }

    pub fn len(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.len()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.t_min <= t && t <= self.t_max
    }
}

/// Sampled rectangle `[kappa, sigma_max] × [t_min, t_max]` inside `ℂ_κ`.
///
/// Sample coordinates are equally spaced and always include the four corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneGrid {
    pub kappa: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_sigma: usize,
    pub n_t: usize,
}

impl HalfPlaneGrid {
    pub fn new(
        kappa: f64,
        sigma_max: f64,
        t_min: f64,
        t_max: f64,
        n_sigma: usize,
        n_t: usize,
    ) -> Result<Self> {
        require(kappa.is_finite() && kappa >= 0.0, || {
            format!("kappa must be a finite nonnegative number (got {kappa})")
        })?;
        require(sigma_max.is_finite() && sigma_max > kappa, || {
            format!("sigma_max {sigma_max} must exceed kappa {kappa}")
        })?;
        require(
            t_min.is_finite() && t_max.is_finite() && t_min < t_max,
            || format!("t-range [{t_min}, {t_max}] is empty"),
        )?;
        require(n_sigma >= 2 && n_t >= 2, || {
            "grids need at least two samples per axis".to_string()
        })?;
        Ok(Self {
            kappa,
            sigma_max,
            t_min,
            t_max,
            n_sigma,
            n_t,
        })
    }

    pub fn sigma_step(&self) -> f64 {
        (self.sigma_max - self.kappa) / (self.n_sigma - 1) as f64
    }

    pub fn t_step(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_t - 1) as f64
    }

    pub fn sigma(&self, i: usize) -> f64 {
        if i + 1 == self.n_sigma {
            self.sigma_max
        } else {
            self.kappa + i as f64 * self.sigma_step()
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        if j + 1 == self.n_t {
            self.t_max
        } else {
            self.t_min + j as f64 * self.t_step()
        }
    }

    pub fn len(&self) -> usize {
        self.n_sigma * self.n_t
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major points: index `i * n_t + j` is `sigma(i) + i·t(j)`.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.n_sigma)
            .flat_map(move |i| (0..self.n_t).map(move |j| Complex64::new(self.sigma(i), self.t(j))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_contains_corners() {
        let g = HalfPlaneGrid::new(0.1, 2.3, -5.0, 7.7, 4, 9).unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), g.len());
        for corner in [
            Complex64::new(0.1, -5.0),
            Complex64::new(0.1, 7.7),
            Complex64::new(2.3, -5.0),
            Complex64::new(2.3, 7.7),
        ] {
            assert!(pts.contains(&corner), "missing corner {corner}");
        }
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(HalfPlaneGrid::new(1.0, 1.0, 0.0, 1.0, 2, 2).is_err());
        assert!(HalfPlaneGrid::new(-1.0, 1.0, 0.0, 1.0, 2, 2).is_err());
        assert!(HalfPlaneGrid::new(0.0, 1.0, 1.0, 0.0, 2, 2).is_err());
        assert!(HalfPlaneGrid::new(0.0, 1.0, 0.0, 1.0, 1, 2).is_err());
        assert!(LineWindow::symmetric(0.0).is_err());
    }
}
