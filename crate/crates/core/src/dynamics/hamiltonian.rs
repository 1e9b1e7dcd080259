use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::spectral::normal_spectral_norm;
use crate::hilbert::state::hermiticity_deviation;
use crate::hilbert::{bosonic_annihilation, number_operator, qubit_ladder, sigma_x, OperatorMatrix, Space, Subsystem, SystemLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingKind {
    JaynesCummings,
    DipoleDipole,
    CustomBipartiteSum,
}

impl fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplingKind::JaynesCummings => "jaynes_cummings",
            CouplingKind::DipoleDipole => "dipole_dipole",
            CouplingKind::CustomBipartiteSum => "custom_bipartite_sum",
        })
    }
}

/// `H = H_AC + H_BC`, stored as its two pieces on `A⊗C` and `B⊗C`.
///
/// Keeping the pieces on their own two-factor spaces means there is no way to
/// write a direct A–B term into a spec.
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    kind: CouplingKind,
    g: f64,
    layout: SystemLayout,
    h_ac: OperatorMatrix,
    h_bc: OperatorMatrix,
}

const PIECE_HERMITIAN_TOL: f64 = 1e-12;

fn pair_space(probe: Subsystem, layout: &SystemLayout) -> Result<Space> {
    Space::new(vec![(probe, layout.dim(probe)), (Subsystem::C, layout.dim_c)])
}

fn require_qubit_mediator(layout: &SystemLayout) -> Result<()> {
    if layout.dim_c != 2 {
        return Err(Error::UnsupportedMediator { dim_c: layout.dim_c });
    }
    Ok(())
}

impl HamiltonianSpec {
    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    /// `H_AC` on the `A⊗C` space.
    pub fn h_ac(&self) -> &OperatorMatrix {
        &self.h_ac
    }

    /// `H_BC` on the `B⊗C` space.
    pub fn h_bc(&self) -> &OperatorMatrix {
        &self.h_bc
    }

    pub fn h_ac_full(&self) -> Result<DMatrix<C64>> {
        Ok(self.layout.embed(&self.h_ac)?.into_matrix())
    }

    pub fn h_bc_full(&self) -> Result<DMatrix<C64>> {
        Ok(self.layout.embed(&self.h_bc)?.into_matrix())
    }

    pub fn full_matrix(&self) -> Result<DMatrix<C64>> {
        Ok(self.h_ac_full()? + self.h_bc_full()?)
    }
}

/// `g(a σ₊ + a† σ₋) + g(b σ₊ + b† σ₋)`.
pub fn build_jc_hamiltonian(layout: SystemLayout, g: f64) -> Result<HamiltonianSpec> {
    require_qubit_mediator(&layout)?;
    let (sp, sm) = qubit_ladder();
    let piece = |probe: Subsystem| -> Result<OperatorMatrix> {
        let a = bosonic_annihilation(layout.dim(probe))?;
        let m = (a.matrix().kronecker(sp.matrix()) + a.matrix().adjoint().kronecker(sm.matrix())) * C64::new(g, 0.0);
        OperatorMatrix::on_space(m, pair_space(probe, &layout)?)
    };
    Ok(HamiltonianSpec {
        kind: CouplingKind::JaynesCummings,
        g,
        layout,
        h_ac: piece(Subsystem::A)?,
        h_bc: piece(Subsystem::B)?,
    })
}

/// `g(a + a†)(σ₊ + σ₋) + g(b + b†)(σ₊ + σ₋)`.
pub fn build_dipole_hamiltonian(layout: SystemLayout, g: f64) -> Result<HamiltonianSpec> {
    require_qubit_mediator(&layout)?;
    let sx = sigma_x();
    let piece = |probe: Subsystem| -> Result<OperatorMatrix> {
        let a = bosonic_annihilation(layout.dim(probe))?;
        let x = a.matrix() + a.matrix().adjoint();
        let m = x.kronecker(sx.matrix()) * C64::new(g, 0.0);
        OperatorMatrix::on_space(m, pair_space(probe, &layout)?)
    };
    Ok(HamiltonianSpec {
        kind: CouplingKind::DipoleDipole,
        g,
        layout,
        h_ac: piece(Subsystem::A)?,
        h_bc: piece(Subsystem::B)?,
    })
}

/// Arbitrary Hermitian pieces on `A⊗C` and `B⊗C`.
///
/// Unassigned (local) pieces of the right size are taken to act on the
/// corresponding pair. `g` is kept only as the time unit of the spec.
pub fn custom_bipartite_sum(
    layout: SystemLayout,
    g: f64,
    h_ac: OperatorMatrix,
    h_bc: OperatorMatrix,
) -> Result<HamiltonianSpec> {
    let assign = |op: OperatorMatrix, probe: Subsystem| -> Result<OperatorMatrix> {
        let space = pair_space(probe, &layout)?;
        match op.space() {
            Some(s) if s == &space => Ok(op),
            Some(s) => Err(Error::invalid(format!("piece acts on {s}, expected {space}"))),
            None => OperatorMatrix::on_space(op.into_matrix(), space),
        }
    };
    let h_ac = assign(h_ac, Subsystem::A)?;
    let h_bc = assign(h_bc, Subsystem::B)?;
    for piece in [&h_ac, &h_bc] {
        let deviation = hermiticity_deviation(piece.matrix());
        if deviation > PIECE_HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
    }
    Ok(HamiltonianSpec { kind: CouplingKind::CustomBipartiteSum, g, layout, h_ac, h_bc })
}

/// Mediator block `(i, j)` of a piece on `probe⊗C`: the probe operator `X_ij`
/// with `H = Σ_ij X_ij ⊗ |i⟩⟨j|`.
fn mediator_block(h: &DMatrix<C64>, dc: usize, i: usize, j: usize) -> DMatrix<C64> {
    let d = h.nrows() / dc;
    DMatrix::from_fn(d, d, |r, s| h[(r * dc + i, s * dc + j)])
}

/// Spectral norm of `[H_AC, H_BC]` on the full space.
///
/// The commutator is assembled as `Σ_pq C_pq ⊗ |p⟩⟨q|` with
/// `C_pq = Σ_j (A_pj ⊗ B_jq − A_jq ⊗ B_pj)` on `A⊗B`. When its Frobenius
/// norm, an upper bound on the spectral norm, is already below `1e-12` that
/// bound is returned and no full-space eigenproblem is solved.
pub fn commutator_norm(spec: &HamiltonianSpec) -> Result<f64> {
    let dc = spec.layout.dim_c;
    let (ha, hb) = (spec.h_ac.matrix(), spec.h_bc.matrix());
    let a: Vec<Vec<DMatrix<C64>>> = (0..dc).map(|i| (0..dc).map(|j| mediator_block(ha, dc, i, j)).collect()).collect();
    let b: Vec<Vec<DMatrix<C64>>> = (0..dc).map(|i| (0..dc).map(|j| mediator_block(hb, dc, i, j)).collect()).collect();
    let dab = spec.layout.dim_a * spec.layout.dim_b;
    let mut blocks = Vec::with_capacity(dc * dc);
    let mut frobenius_sq = 0.0;
    for p in 0..dc {
        for q in 0..dc {
            let mut c = DMatrix::<C64>::zeros(dab, dab);
            for j in 0..dc {
                c += a[p][j].kronecker(&b[j][q]) - a[j][q].kronecker(&b[p][j]);
            }
            frobenius_sq += c.norm_squared();
            blocks.push(c);
        }
    }
    let frobenius = frobenius_sq.sqrt();
    if frobenius <= 1e-12 {
        return Ok(frobenius);
    }
    let n = dab * dc;
    let full = DMatrix::from_fn(n, n, |r, s| blocks[(r % dc) * dc + s % dc][(r / dc, s / dc)]);
    normal_spectral_norm(&full)
}

/// `a†a + b†b + σ₊σ₋` on the full space.
pub fn total_excitation_operator(layout: SystemLayout) -> Result<OperatorMatrix> {
    require_qubit_mediator(&layout)?;
    let (sp, sm) = qubit_ladder();
    let excited = OperatorMatrix::local(sp.matrix() * sm.matrix())?;
    let na = layout.embed_local(&number_operator(layout.dim_a)?, Subsystem::A)?;
    let nb = layout.embed_local(&number_operator(layout.dim_b)?, Subsystem::B)?;
    let nc = layout.embed_local(&excited, Subsystem::C)?;
    OperatorMatrix::on_space(na.matrix() + nb.matrix() + nc.matrix(), layout.space())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jc(dim: usize) -> HamiltonianSpec {
        build_jc_hamiltonian(SystemLayout::fields_with_qubit(dim).unwrap(), 1.0).unwrap()
    }

    fn dipole(dim: usize) -> HamiltonianSpec {
        build_dipole_hamiltonian(SystemLayout::fields_with_qubit(dim).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn jc_pieces_do_not_commute() {
        assert!(commutator_norm(&jc(3)).unwrap() > 0.1);
    }

    #[test]
    fn blocked_commutator_matches_dense() {
        let spec = jc(3);
        let ac = spec.h_ac_full().unwrap();
        let bc = spec.h_bc_full().unwrap();
        let dense = normal_spectral_norm(&(&ac * &bc - &bc * &ac)).unwrap();
        assert!((commutator_norm(&spec).unwrap() - dense).abs() < 1e-12);
    }

    #[test]
    fn dipole_pieces_commute() {
        assert!(commutator_norm(&dipole(6)).unwrap() <= 1e-12);
    }

    #[test]
    fn identity_piece_commutes_with_anything() {
        let layout = SystemLayout::fields_with_qubit(3).unwrap();
        let j = jc(3);
        let id = OperatorMatrix::identity(6).unwrap();
        let spec = custom_bipartite_sum(layout, 1.0, j.h_ac().clone(), id).unwrap();
        assert_eq!(commutator_norm(&spec).unwrap(), 0.0);
    }

    #[test]
    fn jc_conserves_excitations() {
        let spec = jc(4);
        let h = spec.full_matrix().unwrap();
        let n = total_excitation_operator(*spec.layout()).unwrap();
        let comm = &h * n.matrix() - n.matrix() * &h;
        assert!(comm.camax() <= 1e-12);
    }

    #[test]
    fn jc_has_no_diagonal_on_110() {
        let spec = jc(3);
        let l = spec.layout();
        let h = spec.full_matrix().unwrap();
        let i = l.basis_index(1, 1, 0);
        assert_eq!(h[(i, i)], C64::new(0.0, 0.0));
        assert!(hermiticity_deviation(&h) == 0.0);
    }

    #[test]
    fn excitation_expectations() {
        let l = SystemLayout::fields_with_qubit(3).unwrap();
        let n = total_excitation_operator(l).unwrap();
        let psi = l.basis_state(1, 1, 0).unwrap();
        assert_eq!(psi.expectation(n.matrix()).unwrap().re, 2.0);
        let psi = l.basis_state(2, 2, 0).unwrap();
        assert_eq!(psi.expectation(n.matrix()).unwrap().re, 4.0);
    }

    #[test]
    fn qubit_mediator_required() {
        let l = SystemLayout::new(3, 3, 3).unwrap();
        assert!(matches!(build_jc_hamiltonian(l, 1.0), Err(Error::UnsupportedMediator { dim_c: 3 })));
        assert!(matches!(build_dipole_hamiltonian(l, 1.0), Err(Error::UnsupportedMediator { dim_c: 3 })));
        assert!(total_excitation_operator(l).is_err());
    }

    #[test]
    fn dipole_is_collective_mode_coupling() {
        // H' = √2 g (ξ + ξ†) σx with ξ = (a + b)/√2, assembled independently.
        let dim = 5;
        let spec = dipole(dim);
        let l = spec.layout();
        let a = l.embed_local(&bosonic_annihilation(dim).unwrap(), Subsystem::A).unwrap();
        let b = l.embed_local(&bosonic_annihilation(dim).unwrap(), Subsystem::B).unwrap();
        let sx = l.embed_local(&sigma_x(), Subsystem::C).unwrap();
        let xi = (a.matrix() + b.matrix()).unscale(2f64.sqrt());
        let want = (&xi + xi.adjoint()) * sx.matrix() * C64::new(2f64.sqrt(), 0.0);
        let got = spec.full_matrix().unwrap();
        assert!((got - want).camax() < 1e-14);
    }

    #[test]
    fn custom_rejects_non_hermitian_or_misplaced_pieces() {
        let layout = SystemLayout::fields_with_qubit(2).unwrap();
        let mut m = DMatrix::<C64>::zeros(4, 4);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let bad = OperatorMatrix::local(m).unwrap();
        let id = OperatorMatrix::identity(4).unwrap();
        assert!(custom_bipartite_sum(layout, 1.0, bad, id.clone()).is_err());
        let wrong = OperatorMatrix::identity(3).unwrap();
        assert!(custom_bipartite_sum(layout, 1.0, wrong, id).is_err());
    }
}
