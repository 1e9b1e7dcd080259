use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::layout::{Space, Subsystem};
use super::spectral;
use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-POSITIVITY_TOL, 0)` are treated as float noise.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Largest entrywise deviation from Hermiticity.
pub fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0_f64;
    for j in 0..n {
        for i in 0..=j {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Pure state on a labelled space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    space: Space,
}

impl StateVector {
    pub fn new(amplitudes: DVector<C64>, space: Space) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: amplitudes.len() });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector { amplitudes, space })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: DVector<C64>, space: Space) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        StateVector::new(amplitudes.unscale(norm), space)
    }

    /// Product basis state with the given per-factor occupations.
    pub fn basis(space: Space, digits: &[usize]) -> Result<Self> {
        if digits.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), found: digits.len() });
        }
        for (&x, &(label, d)) in digits.iter().zip(space.factors()) {
            if x >= d {
                return Err(Error::invalid(format!("level {x} out of range for {label} (dim {d})")));
            }
        }
        let mut v = DVector::zeros(space.dim());
        v[space.index(digits)] = C64::new(1.0, 0.0);
        Ok(StateVector { amplitudes: v, space })
    }

    pub(crate) fn from_parts(amplitudes: DVector<C64>, space: Space) -> Self {
        debug_assert_eq!(amplitudes.len(), space.dim());
        StateVector { amplitudes, space }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// ⟨ψ|O|ψ⟩ for a full-space operator.
    pub fn expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: op.nrows() });
        }
        Ok(self.amplitudes.dotc(&(op * &self.amplitudes)))
    }

    pub fn density(&self) -> DensityOperator {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityOperator::from_parts(m, self.space.clone())
    }
}

/// Hermitian, unit-trace, positive semidefinite operator on a labelled space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<C64>,
    space: Space,
}

impl DensityOperator {
    /// Validates all three density-operator invariants.
    pub fn new(matrix: DMatrix<C64>, space: Space) -> Result<Self> {
        let n = space.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows() });
        }
        let deviation = hermiticity_deviation(&matrix);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotUnit { trace });
        }
        let min = spectral::hermitian_eigenvalues(&matrix)?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -POSITIVITY_TOL {
            return Err(Error::Positivity { min_eigenvalue: min });
        }
        Ok(DensityOperator { matrix, space })
    }

    pub(crate) fn from_parts(matrix: DMatrix<C64>, space: Space) -> Self {
        debug_assert_eq!(matrix.nrows(), space.dim());
        DensityOperator { matrix, space }
    }

    /// Maximally mixed state `𝟙/d`.
    pub fn maximally_mixed(space: Space) -> Self {
        let d = space.dim();
        let m = DMatrix::identity(d, d).unscale(d as f64);
        DensityOperator { matrix: m, space }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// tr(ρ O) for an operator on the same space.
    pub fn expectation(&self, op: &DMatrix<C64>) -> Result<C64> {
        if op.nrows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: op.nrows() });
        }
        Ok((&self.matrix * op).trace())
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        spectral::hermitian_eigenvalues(&self.matrix)
    }
}

/// Which space an operator acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActsOn {
    /// Not yet assigned to a subsystem; just a dimension.
    Local(usize),
    Space(Space),
}

impl ActsOn {
    pub fn dim(&self) -> usize {
        match self {
            ActsOn::Local(d) => *d,
            ActsOn::Space(s) => s.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    matrix: DMatrix<C64>,
    acts_on: ActsOn,
}

impl OperatorMatrix {
    pub fn local(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::invalid(format!(
                "operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidDimension { what: "operator", dim: 0 });
        }
        let d = matrix.nrows();
        Ok(OperatorMatrix { matrix, acts_on: ActsOn::Local(d) })
    }

    pub fn on_space(matrix: DMatrix<C64>, space: Space) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: matrix.nrows() });
        }
        Ok(OperatorMatrix { matrix, acts_on: ActsOn::Space(space) })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        OperatorMatrix::local(DMatrix::identity(dim, dim))
    }

    pub(crate) fn from_parts(matrix: DMatrix<C64>, acts_on: ActsOn) -> Self {
        OperatorMatrix { matrix, acts_on }
    }

    /// Assigns a local operator to one subsystem.
    pub fn on(self, label: Subsystem) -> Result<Self> {
        let space = Space::single(label, self.dim())?;
        match self.acts_on {
            ActsOn::Local(_) => Ok(OperatorMatrix { matrix: self.matrix, acts_on: ActsOn::Space(space) }),
            ActsOn::Space(ref s) if s == &space => Ok(self),
            ActsOn::Space(s) => Err(Error::invalid(format!("operator already acts on {s}"))),
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn acts_on(&self) -> &ActsOn {
        &self.acts_on
    }

    pub fn space(&self) -> Option<&Space> {
        match &self.acts_on {
            ActsOn::Space(s) => Some(s),
            ActsOn::Local(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix { matrix: self.matrix.adjoint(), acts_on: self.acts_on.clone() }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        hermiticity_deviation(&self.matrix) <= tol
    }

    pub fn apply(&self, psi: &StateVector) -> Result<DVector<C64>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.dim() });
        }
        Ok(&self.matrix * psi.amplitudes())
    }
}

/// Kronecker product of two objects of the same kind.
pub trait Tensor: Sized {
    fn kron(&self, rhs: &Self) -> Result<Self>;
}

impl Tensor for OperatorMatrix {
    fn kron(&self, rhs: &Self) -> Result<Self> {
        let acts_on = match (&self.acts_on, &rhs.acts_on) {
            (ActsOn::Space(l), ActsOn::Space(r)) => ActsOn::Space(l.concat(r)?),
            (ActsOn::Local(l), ActsOn::Local(r)) => ActsOn::Local(l * r),
            _ => {
                return Err(Error::invalid(
                    "cannot tensor a subsystem-assigned operator with an unassigned one",
                ))
            }
        };
        Ok(OperatorMatrix { matrix: self.matrix.kronecker(&rhs.matrix), acts_on })
    }
}

impl Tensor for StateVector {
    fn kron(&self, rhs: &Self) -> Result<Self> {
        let space = self.space.concat(&rhs.space)?;
        Ok(StateVector { amplitudes: self.amplitudes.kronecker(&rhs.amplitudes), space })
    }
}

impl Tensor for DensityOperator {
    fn kron(&self, rhs: &Self) -> Result<Self> {
        let space = self.space.concat(&rhs.space)?;
        Ok(DensityOperator { matrix: self.matrix.kronecker(&rhs.matrix), space })
    }
}

/// Kronecker product in list order (first operand slowest).
///
/// Mixing kinds is rejected at compile time: every operand has type `T`.
pub fn tensor_product<T: Tensor + Clone>(items: &[T]) -> Result<T> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::invalid("tensor product of an empty list"))?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.kron(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::layout::SystemLayout;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kron_dimensions_multiply() {
        let a = OperatorMatrix::identity(2).unwrap();
        let b = OperatorMatrix::identity(3).unwrap();
        let ab = tensor_product(&[a, b]).unwrap();
        assert_eq!(ab.dim(), 6);
        assert_eq!(ab.matrix(), &DMatrix::identity(6, 6));
        assert_eq!(ab.acts_on(), &ActsOn::Local(6));
    }

    #[test]
    fn product_basis_vector_lands_on_row_major_index() {
        let l = SystemLayout::new(3, 3, 2).unwrap();
        let a = StateVector::basis(Space::single(Subsystem::A, 3).unwrap(), &[1]).unwrap();
        let b = StateVector::basis(Space::single(Subsystem::B, 3).unwrap(), &[1]).unwrap();
        let cc = StateVector::basis(Space::single(Subsystem::C, 2).unwrap(), &[0]).unwrap();
        let psi = tensor_product(&[a, b, cc]).unwrap();
        assert_eq!(psi.space(), &l.space());
        let (ia, ib, ic) = (1, 1, 0);
        let idx = (ia * 3 + ib) * 2 + ic;
        assert_eq!(psi.amplitudes()[idx], c(1.0));
        assert_eq!(psi.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn mixing_assigned_and_local_operators_fails() {
        let a = OperatorMatrix::identity(2).unwrap().on(Subsystem::A).unwrap();
        let b = OperatorMatrix::identity(2).unwrap();
        assert!(a.kron(&b).is_err());
    }

    #[test]
    fn density_operator_validation() {
        let s = Space::single(Subsystem::A, 2).unwrap();
        let good = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.5), c(0.5), c(0.5)]);
        assert!(DensityOperator::new(good, s.clone()).is_ok());

        let not_herm = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.3), c(0.1), c(0.5)]);
        assert!(matches!(DensityOperator::new(not_herm, s.clone()), Err(Error::NotHermitian { .. })));

        let bad_trace = DMatrix::from_row_slice(2, 2, &[c(0.6), c(0.0), c(0.0), c(0.5)]);
        assert!(matches!(DensityOperator::new(bad_trace, s.clone()), Err(Error::TraceNotUnit { .. })));

        let negative = DMatrix::from_row_slice(2, 2, &[c(1.1), c(0.0), c(0.0), c(-0.1)]);
        assert!(matches!(DensityOperator::new(negative, s), Err(Error::Positivity { .. })));
    }

    #[test]
    fn state_vector_requires_unit_norm() {
        let s = Space::single(Subsystem::A, 2).unwrap();
        let v = DVector::from_vec(vec![c(1.0), c(1.0)]);
        assert!(matches!(StateVector::new(v.clone(), s.clone()), Err(Error::NotNormalized { .. })));
        let psi = StateVector::normalized(v, s).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-15);
    }
}
