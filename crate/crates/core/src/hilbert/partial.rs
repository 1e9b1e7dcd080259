use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::layout::{Space, Subsystem};
use super::state::{DensityOperator, OperatorMatrix, StateVector};
use crate::error::{Error, Result};

/// For a split of `space` into kept and traced factors, the full composite
/// index of every (traced, kept) pair: `table[t][k]`.
fn split_table(space: &Space, keep: &[Subsystem]) -> Result<(Space, Vec<Vec<usize>>)> {
    if keep.is_empty() {
        return Err(Error::invalid("partial trace must keep at least one subsystem"));
    }
    let kept = space.subspace(keep)?;
    if kept.len() == space.len() {
        return Err(Error::invalid("partial trace must trace out at least one subsystem"));
    }
    let traced_labels: Vec<Subsystem> = space
        .labels()
        .into_iter()
        .filter(|l| !kept.contains(*l))
        .collect();
    let traced = space.subspace(&traced_labels)?;
    let kept_pos: Vec<usize> = kept.labels().iter().filter_map(|&l| space.position(l)).collect();
    let traced_pos: Vec<usize> = traced.labels().iter().filter_map(|&l| space.position(l)).collect();

    let mut table = vec![vec![0usize; kept.dim()]; traced.dim()];
    let mut digits = vec![0usize; space.len()];
    for (t, row) in table.iter_mut().enumerate() {
        for (&p, d) in traced_pos.iter().zip(traced.digits(t)) {
            digits[p] = d;
        }
        for (k, slot) in row.iter_mut().enumerate() {
            for (&p, d) in kept_pos.iter().zip(kept.digits(k)) {
                digits[p] = d;
            }
            *slot = space.index(&digits);
        }
    }
    Ok((kept, table))
}

/// Reduced density operator on the `keep` factors.
pub fn partial_trace(rho: &DensityOperator, keep: &[Subsystem]) -> Result<DensityOperator> {
    let (kept, table) = split_table(rho.space(), keep)?;
    let m = rho.matrix();
    let n = kept.dim();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for row in &table {
        for j in 0..n {
            let fj = row[j];
            for i in 0..n {
                out[(i, j)] += m[(row[i], fj)];
            }
        }
    }
    Ok(DensityOperator::from_parts(out, kept))
}

/// Reduced state of a pure state, `M M†` with `M` the kept-by-traced reshape
/// of the amplitudes. Equal to `partial_trace(psi.density(), keep)` without
/// forming the full projector.
pub fn reduce_pure(psi: &StateVector, keep: &[Subsystem]) -> Result<DensityOperator> {
    let (kept, table) = split_table(psi.space(), keep)?;
    let amps = psi.amplitudes();
    let m = DMatrix::from_fn(kept.dim(), table.len(), |k, t| amps[table[t][k]]);
    Ok(DensityOperator::from_parts(&m * m.adjoint(), kept))
}

/// Partial transpose of a matrix on `space` with respect to the listed factors.
pub fn partial_transpose_matrix(m: &DMatrix<C64>, space: &Space, on: &[Subsystem]) -> Result<DMatrix<C64>> {
    let n = space.dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.nrows() });
    }
    let mut positions = Vec::with_capacity(on.len());
    for &l in on {
        let p = space
            .position(l)
            .ok_or_else(|| Error::invalid(format!("subsystem {l} not in space {space}")))?;
        positions.push(p);
    }
    let digits: Vec<Vec<usize>> = (0..n).map(|i| space.digits(i)).collect();
    let mut out = DMatrix::<C64>::zeros(n, n);
    let mut di = vec![0usize; space.len()];
    let mut dj = vec![0usize; space.len()];
    for i in 0..n {
        for j in 0..n {
            di.copy_from_slice(&digits[i]);
            dj.copy_from_slice(&digits[j]);
            for &p in &positions {
                std::mem::swap(&mut di[p], &mut dj[p]);
            }
            out[(space.index(&di), space.index(&dj))] = m[(i, j)];
        }
    }
    Ok(out)
}

/// `ρ^{T_X}`; Hermitian with unit trace but possibly indefinite.
pub fn partial_transpose(rho: &DensityOperator, on: Subsystem) -> Result<OperatorMatrix> {
    let pt = partial_transpose_matrix(rho.matrix(), rho.space(), &[on])?;
    OperatorMatrix::on_space(pt, rho.space().clone())
}
