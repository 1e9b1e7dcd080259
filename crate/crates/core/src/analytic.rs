//! Closed-form results for the dipole–dipole coupling: Laguerre polynomials,
//! Fock matrix elements of the displacement operator, and the reduced `AB`
//! state of an initial `|m n 0⟩`.
//!
//! With `α = i g t` the evolved state is
//!
//! ```text
//! |ψ_t⟩ = ¼ [ (d₊₊|D₊D₊⟩ + d₋₋|D₋D₋⟩)|0⟩ − (d₊₋|D₊D₋⟩ + d₋₊|D₋D₊⟩)|1⟩ ]
//! ```
//!
//! where `|D±⁽ᵏ⁾⟩ ∝ [D(α) ± D(−α)]|k⟩` and
//! `d_st = 2·sqrt((1 s x_m)(1 t x_n))` with `x_k = e^{−2|α|²} L_k(4|α|²)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::truncation::{check_doubling, DOUBLING_TOL};
use crate::hilbert::{DensityOperator, Space, Subsystem};

/// Radicands down to this are clipped to zero.
pub const RADICAND_TOL: f64 = 1e-12;

/// `L_k(x)` via `(k+1)L_{k+1} = (2k+1−x)L_k − k L_{k−1}`.
pub fn laguerre(k: usize, x: f64) -> f64 {
    associated_laguerre(k, 0.0, x)
}

/// Generalized Laguerre polynomial `L_k^{(a)}(x)`.
pub fn associated_laguerre(k: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `⟨k|D(α)|k⟩ = e^{−|α|²/2} L_k(|α|²)`.
pub fn displacement_diagonal(k: usize, alpha: C64) -> f64 {
    let r2 = alpha.norm_sqr();
    (-r2 / 2.0).exp() * laguerre(k, r2)
}

/// `⟨j|D(α)|k⟩` in the untruncated Fock basis.
pub fn displacement_element(j: usize, k: usize, alpha: C64) -> C64 {
    let r2 = alpha.norm_sqr();
    let (lo, hi, step) = if j >= k { (k, j, alpha) } else { (j, k, -alpha.conj()) };
    // Π_{i=lo+1}^{hi} step/√i = step^{hi−lo} √(lo!/hi!)
    let prefactor = ((lo + 1)..=hi).fold(C64::new(1.0, 0.0), |acc, i| acc * step / (i as f64).sqrt());
    prefactor * ((-r2 / 2.0).exp() * associated_laguerre(lo, (hi - lo) as f64, r2))
}

/// First `dim` Fock amplitudes of `D(α)|k⟩`.
pub fn displaced_fock_state(k: usize, alpha: C64, dim: usize) -> DVector<C64> {
    DVector::from_fn(dim, |j, _| displacement_element(j, k, alpha))
}

/// `x_k = ⟨k|D(2α)|k⟩ = e^{−2|α|²} L_k(4|α|²)`.
fn overlap(k: usize, alpha: C64) -> f64 {
    displacement_diagonal(k, alpha * 2.0)
}

fn clipped_sqrt(radicand: f64) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::NumericalDomain { radicand })
    }
}

/// The four branch weights `d₊₊, d₋₋, d₊₋, d₋₊`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleCoefficients {
    pub pp: f64,
    pub mm: f64,
    pub pm: f64,
    pub mp: f64,
}

impl DipoleCoefficients {
    /// `(d₊₊² + d₋₋² + d₊₋² + d₋₊²) / 16`, which is 1 for a normalized state.
    pub fn normalization(&self) -> f64 {
        (self.pp.powi(2) + self.mm.powi(2) + self.pm.powi(2) + self.mp.powi(2)) / 16.0
    }
}

pub fn dipole_coefficients(m: usize, n: usize, alpha: C64) -> Result<DipoleCoefficients> {
    let (xm, xn) = (overlap(m, alpha), overlap(n, alpha));
    let d = |sm: f64, sn: f64| -> Result<f64> { Ok(2.0 * clipped_sqrt((1.0 + sm * xm) * (1.0 + sn * xn))?) };
    Ok(DipoleCoefficients { pp: d(1.0, 1.0)?, mm: d(-1.0, -1.0)?, pm: d(1.0, -1.0)?, mp: d(-1.0, 1.0)? })
}

/// Closed-form data for the dipole evolution of `|m n 0⟩` at a fixed `α`.
#[derive(Clone, Debug)]
pub struct DipoleClosedForm {
    pub m: usize,
    pub n: usize,
    pub alpha: C64,
    pub coefficients: DipoleCoefficients,
    /// `(|D₊⁽ᵐ⁾⟩, |D₋⁽ᵐ⁾⟩)` truncated to the field dimension.
    pub branches_m: (DVector<C64>, DVector<C64>),
    pub branches_n: (DVector<C64>, DVector<C64>),
}

/// `[D(α) ± D(−α)]|k⟩` normalized by its exact norm `sqrt(2(1 ± x_k))`; a
/// branch with vanishing weight is returned as the zero vector.
fn branch_pair(k: usize, alpha: C64, dim: usize) -> Result<(DVector<C64>, DVector<C64>)> {
    let fwd = displaced_fock_state(k, alpha, dim);
    let back = displaced_fock_state(k, -alpha, dim);
    let x = overlap(k, alpha);
    let make = |v: DVector<C64>, sign: f64| -> Result<DVector<C64>> {
        let norm = clipped_sqrt(2.0 * (1.0 + sign * x))?;
        Ok(if norm < 1e-7 { DVector::zeros(dim) } else { v.unscale(norm) })
    };
    Ok((make(&fwd + &back, 1.0)?, make(fwd - back, -1.0)?))
}

impl DipoleClosedForm {
    pub fn new(m: usize, n: usize, g: f64, t: f64, field_dim: usize) -> Result<Self> {
        if field_dim == 0 {
            return Err(Error::InvalidDimension { what: "field", dim: 0 });
        }
        if !(g.is_finite() && t.is_finite()) {
            return Err(Error::invalid("coupling and time must be finite"));
        }
        let alpha = C64::new(0.0, g * t);
        Ok(DipoleClosedForm {
            m,
            n,
            alpha,
            coefficients: dipole_coefficients(m, n, alpha)?,
            branches_m: branch_pair(m, alpha, field_dim)?,
            branches_n: branch_pair(n, alpha, field_dim)?,
        })
    }

    /// Amplitudes of the two atom branches (`|0⟩` then `|1⟩`) on `A⊗B`.
    pub fn atom_branches(&self) -> (DVector<C64>, DVector<C64>) {
        let c = &self.coefficients;
        let (pm_, mm_) = (&self.branches_m.0, &self.branches_m.1);
        let (pn, mn) = (&self.branches_n.0, &self.branches_n.1);
        let w = |d: f64| C64::new(d / 4.0, 0.0);
        let ground = pm_.kronecker(pn) * w(c.pp) + mm_.kronecker(mn) * w(c.mm);
        let excited = -(pm_.kronecker(mn) * w(c.pm) + mm_.kronecker(pn) * w(c.mp));
        (ground, excited)
    }

    /// Unnormalized reduced `AB` matrix on the truncated fields.
    pub fn reduced_ab_matrix(&self) -> DMatrix<C64> {
        let (v0, v1) = self.atom_branches();
        &v0 * v0.adjoint() + &v1 * v1.adjoint()
    }
}

/// The 4×4 field state in the `{|D₊⟩, |D₋⟩}` branch basis of each field.
pub fn effective_two_qubit_state(m: usize, n: usize, alpha: C64) -> Result<DensityOperator> {
    let c = dipole_coefficients(m, n, alpha)?;
    let v0 = [c.pp, 0.0, 0.0, c.mm];
    let v1 = [0.0, c.pm, c.mp, 0.0];
    let matrix = DMatrix::from_fn(4, 4, |i, j| C64::new((v0[i] * v0[j] + v1[i] * v1[j]) / 16.0, 0.0));
    let space = Space::new(vec![(Subsystem::A, 2), (Subsystem::B, 2)])?;
    DensityOperator::new(matrix, space)
}

/// Reduced `AB` state of the dipole-evolved `|m n 0⟩` at time `t`, on fields
/// truncated to `field_dim`.
///
/// The truncation is accepted when the weight captured at `field_dim` agrees
/// with that at `2·field_dim`; the result is then renormalized.
pub fn dipole_closed_form_reduced_ab(m: usize, n: usize, g: f64, t: f64, field_dim: usize) -> Result<DensityOperator> {
    if m >= field_dim || n >= field_dim {
        return Err(Error::InvalidDimension { what: "field (below initial occupation)", dim: field_dim });
    }
    let captured = |dim: usize| -> Result<Vec<f64>> {
        let form = DipoleClosedForm::new(m, n, g, t, dim)?;
        let (v0, v1) = form.atom_branches();
        Ok(vec![v0.norm_squared() + v1.norm_squared()])
    };
    check_doubling(field_dim, DOUBLING_TOL, captured)?;
    let matrix = DipoleClosedForm::new(m, n, g, t, field_dim)?.reduced_ab_matrix();
    let trace: f64 = matrix.diagonal().iter().map(|z| z.re).sum();
    let space = Space::new(vec![(Subsystem::A, field_dim), (Subsystem::B, field_dim)])?;
    DensityOperator::new(matrix.unscale(trace), space)
}
