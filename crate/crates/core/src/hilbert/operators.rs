//! Ladder operators, displacements and embeddings into the A⊗B⊗C layout.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::layout::{Space, Subsystem, SystemLayout};
use super::spectral::spectral_decompose;
use super::state::{ActsOn, OperatorMatrix, StateVector};
use crate::error::{Error, Result};

/// Truncated bosonic annihilation operator, `⟨n-1|a|n⟩ = √n`.
pub fn bosonic_annihilation(dim: usize) -> Result<OperatorMatrix> {
    if dim < 2 {
        return Err(Error::InvalidDimension { what: "bosonic mode", dim });
    }
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    OperatorMatrix::local(m)
}

/// Number operator `a†a`, built diagonally.
pub fn number_operator(dim: usize) -> Result<OperatorMatrix> {
    if dim == 0 {
        return Err(Error::InvalidDimension { what: "bosonic mode", dim });
    }
    let m = DMatrix::from_fn(dim, dim, |i, j| if i == j { C64::new(i as f64, 0.0) } else { C64::new(0.0, 0.0) });
    OperatorMatrix::local(m)
}

/// `(σ₊, σ₋)` with `|0⟩` ground and `|1⟩` excited: `σ₊ = |1⟩⟨0|`.
pub fn qubit_ladder() -> (OperatorMatrix, OperatorMatrix) {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let plus = DMatrix::from_row_slice(2, 2, &[zero, zero, one, zero]);
    let minus = plus.adjoint();
    (
        OperatorMatrix::from_parts(plus, ActsOn::Local(2)),
        OperatorMatrix::from_parts(minus, ActsOn::Local(2)),
    )
}

/// `σₓ = σ₊ + σ₋`.
pub fn sigma_x() -> OperatorMatrix {
    let (p, m) = qubit_ladder();
    OperatorMatrix::from_parts(p.matrix() + m.matrix(), ActsOn::Local(2))
}

/// `exp(α a† − α* a)` on the truncated Fock space.
///
/// The generator is anti-Hermitian, so this is `exp(−iK)` with the Hermitian
/// `K = i(α a† − α* a)` and goes through the spectral decomposition. Accuracy
/// near the truncation edge is the caller's business; see
/// [`crate::hilbert::truncation`].
pub fn displacement(alpha: C64, dim: usize) -> Result<OperatorMatrix> {
    let a = bosonic_annihilation(dim)?;
    let a = a.matrix();
    let generator = a.adjoint() * alpha - a * alpha.conj();
    let k = generator * C64::new(0.0, 1.0);
    let spectrum = spectral_decompose(&k)?;
    OperatorMatrix::local(spectrum.unitary(1.0))
}

/// `|Ψ⟩ = Σ_j |j⟩_A |j⟩_C / √d_small` on `A(d_large) ⊗ C(d_small)`.
pub fn max_entangled_state(d_small: usize, d_large: usize) -> Result<StateVector> {
    if d_small == 0 {
        return Err(Error::InvalidDimension { what: "maximally entangled state", dim: 0 });
    }
    if d_small > d_large {
        return Err(Error::invalid(format!(
            "smaller factor {d_small} exceeds larger factor {d_large}"
        )));
    }
    let space = Space::new(vec![(Subsystem::A, d_large), (Subsystem::C, d_small)])?;
    let amp = C64::new(1.0 / (d_small as f64).sqrt(), 0.0);
    let mut v = nalgebra::DVector::zeros(space.dim());
    for j in 0..d_small {
        v[space.index(&[j, j])] = amp;
    }
    Ok(StateVector::from_parts(v, space))
}

impl SystemLayout {
    /// Embeds an operator acting on some of the factors into the full space,
    /// acting as the identity on the rest.
    pub fn embed(&self, op: &OperatorMatrix) -> Result<OperatorMatrix> {
        let sub = op
            .space()
            .ok_or_else(|| Error::invalid("operator must be assigned to subsystems before embedding"))?;
        let full = self.space();
        for &(label, dim) in sub.factors() {
            if full.dim_of(label) != Some(dim) {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(label),
                    found: dim,
                });
            }
        }
        // The operator's factors must appear in layout order.
        let order: Vec<usize> = sub.labels().iter().filter_map(|&l| full.position(l)).collect();
        if order.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("operator space {sub} is not in A, B, C order")));
        }
        let m = op.matrix();
        let n = full.dim();
        let dims = full.dims();
        let rest_pos: Vec<usize> = (0..full.len()).filter(|p| !order.contains(p)).collect();
        let rest_dim: usize = rest_pos.iter().map(|&p| dims[p]).product();
        let sub_space = sub.clone();
        // Full composite index from the operator's digits and the spectator digits.
        let compose = |sub_index: usize, rest_index: usize| -> usize {
            let sd = sub_space.digits(sub_index);
            let mut digits = vec![0; dims.len()];
            for (k, &p) in order.iter().enumerate() {
                digits[p] = sd[k];
            }
            let mut r = rest_index;
            for &p in rest_pos.iter().rev() {
                digits[p] = r % dims[p];
                r /= dims[p];
            }
            full.index(&digits)
        };
        let sub_dim = sub.dim();
        let lookup: Vec<Vec<usize>> = (0..sub_dim)
            .map(|s| (0..rest_dim).map(|r| compose(s, r)).collect())
            .collect();
        let mut out = DMatrix::zeros(n, n);
        for sj in 0..sub_dim {
            for si in 0..sub_dim {
                let v = m[(si, sj)];
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                for r in 0..rest_dim {
                    out[(lookup[si][r], lookup[sj][r])] = v;
                }
            }
        }
        OperatorMatrix::on_space(out, full)
    }

    /// Embeds a local operator on a single subsystem.
    pub fn embed_local(&self, op: &OperatorMatrix, on: Subsystem) -> Result<OperatorMatrix> {
        let op = op.clone().on(on)?;
        self.embed(&op)
    }

    /// Product basis state `|a b c⟩` on this layout.
    pub fn basis_state(&self, a: usize, b: usize, c: usize) -> Result<StateVector> {
        StateVector::basis(self.space(), &[a, b, c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::spectral::spectral_decompose;

    fn cr(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn annihilation_lowers_fock_state() {
        let a = bosonic_annihilation(3).unwrap();
        let two = StateVector::basis(Space::single(Subsystem::A, 3).unwrap(), &[2]).unwrap();
        let out = a.apply(&two).unwrap();
        assert!((out[1] - cr(2f64.sqrt())).norm() < 1e-15);
        assert!(out[0].norm() == 0.0 && out[2].norm() == 0.0);
    }

    #[test]
    fn annihilation_kills_vacuum() {
        let a = bosonic_annihilation(2).unwrap();
        let vac = StateVector::basis(Space::single(Subsystem::A, 2).unwrap(), &[0]).unwrap();
        assert!(a.apply(&vac).unwrap().norm() == 0.0);
    }

    #[test]
    fn annihilation_rejects_small_dims() {
        assert!(matches!(bosonic_annihilation(1), Err(Error::InvalidDimension { .. })));
        assert!(bosonic_annihilation(0).is_err());
    }

    #[test]
    fn number_operator_spectrum() {
        let a = bosonic_annihilation(3).unwrap();
        let n = a.matrix().adjoint() * a.matrix();
        let s = spectral_decompose(&n).unwrap();
        for (k, l) in s.values.iter().enumerate() {
            assert!((l - k as f64).abs() < 1e-14);
        }
        let a5 = bosonic_annihilation(5).unwrap();
        let n5 = a5.matrix().adjoint() * a5.matrix();
        assert!((n5 - number_operator(5).unwrap().matrix()).camax() < 1e-15);
    }

    #[test]
    fn qubit_ladder_algebra() {
        let (p, m) = qubit_ladder();
        let ground = StateVector::basis(Space::single(Subsystem::C, 2).unwrap(), &[0]).unwrap();
        let up = p.apply(&ground).unwrap();
        assert_eq!(up[1], cr(1.0));
        assert_eq!(up[0], cr(0.0));
        assert_eq!(p.matrix() * p.matrix(), DMatrix::zeros(2, 2));
        assert_eq!(&p.adjoint(), &m);
        let s = spectral_decompose(sigma_x().matrix()).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-15 && (s.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn displacement_at_zero_is_identity() {
        let d = displacement(C64::new(0.0, 0.0), 6).unwrap();
        assert!((d.matrix() - DMatrix::<C64>::identity(6, 6)).norm() < 1e-13);
    }

    #[test]
    fn displacement_vacuum_overlap() {
        for alpha in [C64::new(0.3, 0.0), C64::new(0.0, 1.0), C64::new(-0.6, 0.7)] {
            let d = displacement(alpha, 30).unwrap();
            let want = (-alpha.norm_sqr() / 2.0).exp();
            assert!((d.matrix()[(0, 0)] - cr(want)).norm() < 1e-8, "alpha {alpha}");
        }
    }

    #[test]
    fn coherent_state_error_shrinks_with_dim() {
        let alpha = C64::new(1.6, 1.0);
        let coherent = |j: usize| {
            let fact: f64 = (1..=j).map(|i| i as f64).product();
            alpha.powu(j as u32) * ((-alpha.norm_sqr() / 2.0).exp() / fact.sqrt())
        };
        let errs: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&dim| {
                let d = displacement(alpha, dim).unwrap();
                (0..8).map(|j| (d.matrix()[(j, 0)] - coherent(j)).norm()).fold(0.0, f64::max)
            })
            .collect();
        assert!(errs[1] < errs[0], "{errs:?}");
        assert!(errs[2] < 1e-10, "{errs:?}");
    }

    #[test]
    fn max_entangled_state_validation() {
        assert!(max_entangled_state(3, 2).is_err());
        let psi = max_entangled_state(2, 2).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi.amplitudes()[0] - cr(h)).norm() < 1e-15);
        assert!((psi.amplitudes()[3] - cr(h)).norm() < 1e-15);
    }

    #[test]
    fn embedding_matches_explicit_kron() {
        let l = SystemLayout::new(3, 2, 2).unwrap();
        let a = bosonic_annihilation(3).unwrap();
        let (sp, _) = qubit_ladder();
        let pair = Space::new(vec![(Subsystem::A, 3), (Subsystem::C, 2)]).unwrap();
        let ac = OperatorMatrix::on_space(a.matrix().kronecker(sp.matrix()), pair).unwrap();
        let full = l.embed(&ac).unwrap();
        let id_b = DMatrix::<C64>::identity(2, 2);
        let want = a.matrix().kronecker(&id_b).kronecker(sp.matrix());
        assert_eq!(full.matrix(), &want);

        let on_b = l.embed_local(&a, Subsystem::B);
        assert!(on_b.is_err(), "dimension 3 operator cannot act on B of dim 2");
    }

    #[test]
    fn embedding_rejects_out_of_order_spaces() {
        let l = SystemLayout::new(2, 2, 2).unwrap();
        let ca = Space::new(vec![(Subsystem::C, 2), (Subsystem::A, 2)]).unwrap();
        let op = OperatorMatrix::on_space(DMatrix::identity(4, 4), ca).unwrap();
        assert!(l.embed(&op).is_err());
    }
}
