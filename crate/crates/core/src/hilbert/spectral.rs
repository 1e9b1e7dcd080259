//! Hermitian spectral decomposition and the matrix functions built on it.
//!
//! The dense eigensolver is faer's self-adjoint decomposition; everything else
//! in the crate sees only [`Spectrum`].

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::state::hermiticity_deviation;
use crate::error::{Error, Result};

/// Hermiticity tolerance accepted on input, relative to the largest entry.
pub const SPECTRAL_HERMITIAN_TOL: f64 = 1e-10;

/// `op = V diag(values) V†`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

fn check_hermitian(op: &DMatrix<C64>) -> Result<()> {
    if !op.is_square() {
        return Err(Error::invalid("spectral decomposition needs a square matrix"));
    }
    let scale = op.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    let deviation = hermiticity_deviation(op);
    if deviation > SPECTRAL_HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn to_faer(op: &DMatrix<C64>) -> Mat<C64> {
    Mat::from_fn(op.nrows(), op.ncols(), |i, j| op[(i, j)])
}

pub fn spectral_decompose(op: &DMatrix<C64>) -> Result<Spectrum> {
    check_hermitian(op)?;
    let n = op.nrows();
    if n == 0 {
        return Ok(Spectrum { values: vec![], vectors: DMatrix::zeros(0, 0) });
    }
    let evd = to_faer(op)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re));
    let values = order.iter().map(|&i| s[i].re).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(Spectrum { values, vectors })
}

/// Ascending eigenvalues only; cheaper than the full decomposition.
pub fn hermitian_eigenvalues(op: &DMatrix<C64>) -> Result<Vec<f64>> {
    check_hermitian(op)?;
    if op.nrows() == 0 {
        return Ok(vec![]);
    }
    let mut values = to_faer(op)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(λ)) V†`.
    pub fn map<F: Fn(f64) -> C64>(&self, f: F) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let mut col = scaled.column_mut(j);
            col *= f(lambda);
        }
        scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.map(|l| C64::new(l, 0.0))
    }

    /// `exp(-i t op)`.
    pub fn unitary(&self, t: f64) -> DMatrix<C64> {
        self.map(|l| C64::from_polar(1.0, -l * t))
    }

    /// `exp(-i t op) ψ` without forming the propagator matrix.
    pub fn evolve(&self, psi: &DVector<C64>, t: f64) -> DVector<C64> {
        let mut coeffs = self.vectors.adjoint() * psi;
        for (c, &l) in coeffs.iter_mut().zip(&self.values) {
            *c *= C64::from_polar(1.0, -l * t);
        }
        &self.vectors * coeffs
    }

    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, l| m.max(l.abs()))
    }
}

/// Spectral norm of a Hermitian or anti-Hermitian matrix.
pub fn normal_spectral_norm(op: &DMatrix<C64>) -> Result<f64> {
    let deviation = hermiticity_deviation(op);
    let scale = op.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    let herm = if deviation <= SPECTRAL_HERMITIAN_TOL * scale {
        op.clone()
    } else {
        op * C64::new(0.0, 1.0)
    };
    let values = hermitian_eigenvalues(&herm)?;
    Ok(values.iter().fold(0.0_f64, |m, l| m.max(l.abs())))
}
