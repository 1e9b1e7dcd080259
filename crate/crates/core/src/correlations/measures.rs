use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::entropy::{entropy_bits, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::hilbert::{hermitian_eigenvalues, partial_trace, partial_transpose_matrix, DensityOperator, Space, Subsystem};

/// The four probe–probe correlation quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureKind {
    /// `I = S_X + S_Y − S_XY`.
    MutualInformation,
    /// Mutual information after local Fock-basis dephasing (lower bound on the
    /// classical correlation).
    ClassicalLowerBound,
    /// `−S_{X|Y} = S_Y − S_XY` (lower bound on the relative entropy of discord).
    DiscordLowerBound,
    /// `(‖ρ^{T_X}‖₁ − 1)/2`.
    Negativity,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::MutualInformation,
        MeasureKind::ClassicalLowerBound,
        MeasureKind::DiscordLowerBound,
        MeasureKind::Negativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::MutualInformation => "mutual_information",
            MeasureKind::ClassicalLowerBound => "classical_lower_bound",
            MeasureKind::DiscordLowerBound => "discord_lower_bound",
            MeasureKind::Negativity => "negativity",
        }
    }

    /// Entropic measures pick up the initial `I_{AC:B}(0)` offset in their bound.
    pub fn is_entropic(self) -> bool {
        !matches!(self, MeasureKind::Negativity)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "mutual_information" | "mutual-information" | "mi" => Ok(MeasureKind::MutualInformation),
            "classical_lower_bound" | "classical" => Ok(MeasureKind::ClassicalLowerBound),
            "discord_lower_bound" | "discord" => Ok(MeasureKind::DiscordLowerBound),
            "negativity" => Ok(MeasureKind::Negativity),
            other => Err(Error::invalid(format!("unknown measure {other:?}"))),
        }
    }
}

/// Split of a state's factors into `left | right`; `right` is everything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<Subsystem>,
}

impl Bipartition {
    pub fn new(left: &[Subsystem]) -> Self {
        Bipartition { left: left.to_vec() }
    }

    /// `A | B` (or `A | rest`).
    pub fn a_b() -> Self {
        Bipartition::new(&[Subsystem::A])
    }

    /// `AC | B`.
    pub fn ac_b() -> Self {
        Bipartition::new(&[Subsystem::A, Subsystem::C])
    }

    pub fn left(&self) -> &[Subsystem] {
        &self.left
    }

    /// `(left, right)` labels, each in the space's own order.
    pub fn sides(&self, space: &Space) -> Result<(Vec<Subsystem>, Vec<Subsystem>)> {
        if self.left.is_empty() {
            return Err(Error::invalid("bipartition has an empty side"));
        }
        for l in &self.left {
            if !space.contains(*l) {
                return Err(Error::invalid(format!("subsystem {l} not in space {space}")));
            }
        }
        let (left, right): (Vec<_>, Vec<_>) = space.labels().into_iter().partition(|l| self.left.contains(l));
        if right.is_empty() {
            return Err(Error::invalid("bipartition has an empty side"));
        }
        Ok((left, right))
    }
}

pub fn mutual_information(rho: &DensityOperator, cut: &Bipartition) -> Result<f64> {
    let (left, right) = cut.sides(rho.space())?;
    let s_left = von_neumann_entropy(&partial_trace(rho, &left)?)?;
    let s_right = von_neumann_entropy(&partial_trace(rho, &right)?)?;
    let s_all = von_neumann_entropy(rho)?;
    Ok(s_left + s_right - s_all)
}

/// Mutual information of a classical joint distribution over the product
/// basis of `space`, split by `cut`.
pub(crate) fn classical_mutual_information(probs: &[f64], space: &Space, cut: &Bipartition) -> Result<f64> {
    let (left, right) = cut.sides(space)?;
    let left_space = space.subspace(&left)?;
    let right_space = space.subspace(&right)?;
    let left_pos: Vec<usize> = left.iter().filter_map(|&l| space.position(l)).collect();
    let right_pos: Vec<usize> = right.iter().filter_map(|&l| space.position(l)).collect();
    let mut p_left = vec![0.0; left_space.dim()];
    let mut p_right = vec![0.0; right_space.dim()];
    for (i, &p) in probs.iter().enumerate() {
        let d = space.digits(i);
        let li = left_pos.iter().fold(0, |acc, &q| acc * space.factors()[q].1 + d[q]);
        let ri = right_pos.iter().fold(0, |acc, &q| acc * space.factors()[q].1 + d[q]);
        p_left[li] += p;
        p_right[ri] += p;
    }
    Ok(entropy_bits(&p_left)? + entropy_bits(&p_right)? - entropy_bits(probs)?)
}

/// `C̃`: mutual information of `Σ_xy |xy⟩⟨xy| ρ |xy⟩⟨xy|` in the Fock product basis.
pub fn classical_lower_bound(rho: &DensityOperator, cut: &Bipartition) -> Result<f64> {
    let probs: Vec<f64> = rho.matrix().diagonal().iter().map(|z| z.re).collect();
    classical_mutual_information(&probs, rho.space(), cut)
}

/// As [`classical_lower_bound`], measuring each listed factor in the basis given
/// by the columns of a unitary; unlisted factors use the Fock basis.
pub fn classical_lower_bound_in_bases(
    rho: &DensityOperator,
    cut: &Bipartition,
    bases: &[(Subsystem, DMatrix<C64>)],
) -> Result<f64> {
    let space = rho.space();
    let mut u = DMatrix::<C64>::identity(1, 1);
    for &(label, dim) in space.factors() {
        let factor = match bases.iter().find(|(l, _)| *l == label) {
            Some((_, m)) => {
                if m.nrows() != dim || m.ncols() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: m.nrows() });
                }
                let unitarity = (m.adjoint() * m - DMatrix::<C64>::identity(dim, dim)).camax();
                if unitarity > 1e-10 {
                    return Err(Error::invalid(format!("basis for {label} is not orthonormal")));
                }
                m.clone()
            }
            None => DMatrix::identity(dim, dim),
        };
        u = u.kronecker(&factor);
    }
    let rotated = u.adjoint() * rho.matrix() * &u;
    let probs: Vec<f64> = rotated.diagonal().iter().map(|z| z.re).collect();
    classical_mutual_information(&probs, space, cut)
}

/// `−S_{X|Y} = S_Y − S_XY` for the cut `X | Y`.
pub fn discord_lower_bound(rho: &DensityOperator, cut: &Bipartition) -> Result<f64> {
    let (_, right) = cut.sides(rho.space())?;
    let s_right = von_neumann_entropy(&partial_trace(rho, &right)?)?;
    Ok(s_right - von_neumann_entropy(rho)?)
}

/// Negativity from the eigenvalues of the Hermitian partial transpose.
pub fn negativity(rho: &DensityOperator, cut: &Bipartition) -> Result<f64> {
    let (left, _) = cut.sides(rho.space())?;
    let pt = partial_transpose_matrix(rho.matrix(), rho.space(), &left)?;
    negativity_from_spectrum(&hermitian_eigenvalues(&pt)?)
}

pub(crate) fn negativity_from_spectrum(eigs: &[f64]) -> Result<f64> {
    let trace_norm: f64 = eigs.iter().map(|l| l.abs()).sum();
    Ok((trace_norm - 1.0) / 2.0)
}

pub fn evaluate(kind: MeasureKind, rho: &DensityOperator, cut: &Bipartition) -> Result<f64> {
    match kind {
        MeasureKind::MutualInformation => mutual_information(rho, cut),
        MeasureKind::ClassicalLowerBound => classical_lower_bound(rho, cut),
        MeasureKind::DiscordLowerBound => discord_lower_bound(rho, cut),
        MeasureKind::Negativity => negativity(rho, cut),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{max_entangled_state, StateVector, Tensor};
    use nalgebra::DVector;

    fn ab() -> Space {
        Space::new(vec![(Subsystem::A, 2), (Subsystem::B, 2)]).unwrap()
    }

    fn bell() -> DensityOperator {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = DVector::from_vec(vec![C64::new(h, 0.), C64::new(0., 0.), C64::new(0., 0.), C64::new(h, 0.)]);
        StateVector::new(v, ab()).unwrap().density()
    }

    fn product() -> DensityOperator {
        let ra = DMatrix::from_row_slice(2, 2, &[C64::new(0.8, 0.), C64::new(0.1, 0.2), C64::new(0.1, -0.2), C64::new(0.2, 0.)]);
        let rb = DMatrix::from_row_slice(2, 2, &[C64::new(0.35, 0.), C64::new(0.0, 0.3), C64::new(0.0, -0.3), C64::new(0.65, 0.)]);
        let ra = DensityOperator::new(ra, Space::single(Subsystem::A, 2).unwrap()).unwrap();
        let rb = DensityOperator::new(rb, Space::single(Subsystem::B, 2).unwrap()).unwrap();
        ra.kron(&rb).unwrap()
    }

    #[test]
    fn bell_values() {
        let cut = Bipartition::a_b();
        let rho = bell();
        assert!((mutual_information(&rho, &cut).unwrap() - 2.0).abs() < 1e-12);
        assert!((classical_lower_bound(&rho, &cut).unwrap() - 1.0).abs() < 1e-12);
        assert!((discord_lower_bound(&rho, &cut).unwrap() - 1.0).abs() < 1e-12);
        assert!((negativity(&rho, &cut).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_values_vanish() {
        let cut = Bipartition::a_b();
        let rho = product();
        for kind in [MeasureKind::MutualInformation, MeasureKind::ClassicalLowerBound, MeasureKind::Negativity] {
            assert!(evaluate(kind, &rho, &cut).unwrap().abs() < 1e-10, "{kind}");
        }
    }

    #[test]
    fn maximally_mixed_pair_has_negative_conditional_term() {
        let rho = DensityOperator::maximally_mixed(ab());
        assert!((discord_lower_bound(&rho, &Bipartition::a_b()).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_entangled_capacities() {
        let cut = Bipartition::a_b();
        let rho3 = max_entangled_state(3, 3).unwrap().density();
        assert!((mutual_information(&rho3, &cut).unwrap() - 2.0 * 3f64.log2()).abs() < 1e-12);
        assert!((negativity(&rho3, &cut).unwrap() - 1.0).abs() < 1e-12);
        let rho4 = max_entangled_state(4, 6).unwrap().density();
        assert!((negativity(&rho4, &cut).unwrap() - 1.5).abs() < 1e-12);
        let marginal = partial_trace(&rho3, &[Subsystem::C]).unwrap();
        let want = DMatrix::<C64>::identity(3, 3).unscale(3.0);
        assert!((marginal.matrix() - want).camax() < 1e-15);
    }

    #[test]
    fn rotated_basis_changes_classical_value() {
        // |+⟩|+⟩ is uncorrelated in every basis; the Bell state loses its
        // correlation when only one side is rotated by a Hadamard.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = DMatrix::from_row_slice(2, 2, &[C64::new(h, 0.), C64::new(h, 0.), C64::new(h, 0.), C64::new(-h, 0.)]);
        let v = classical_lower_bound_in_bases(&bell(), &Bipartition::a_b(), &[(Subsystem::A, had.clone())]).unwrap();
        assert!(v.abs() < 1e-12);
        let both = classical_lower_bound_in_bases(&bell(), &Bipartition::a_b(), &[(Subsystem::A, had.clone()), (Subsystem::B, had)]).unwrap();
        assert!((both - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bipartition_validation() {
        let rho = bell();
        assert!(mutual_information(&rho, &Bipartition::new(&[])).is_err());
        assert!(mutual_information(&rho, &Bipartition::new(&[Subsystem::A, Subsystem::B])).is_err());
        assert!(negativity(&rho, &Bipartition::new(&[Subsystem::C])).is_err());
    }

    #[test]
    fn measure_names_round_trip() {
        for k in MeasureKind::ALL {
            assert_eq!(k.name().parse::<MeasureKind>().unwrap(), k);
        }
        assert_eq!("classical".parse::<MeasureKind>().unwrap(), MeasureKind::ClassicalLowerBound);
        assert!("entanglement".parse::<MeasureKind>().is_err());
    }
}
