use std::fmt;

use crate::error::{Error, Result};

/// One of the three parties: probes `A`, `B` and mediator `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
            Subsystem::C => "C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            "C" | "c" => Ok(Subsystem::C),
            other => Err(Error::invalid(format!("unknown subsystem {other:?}"))),
        }
    }
}

/// Ordered, labelled tensor factorization of a Hilbert space.
///
/// Composite indices are row-major: the first factor varies slowest and the
/// last factor fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    factors: Vec<(Subsystem, usize)>,
}

impl Space {
    pub fn new(factors: Vec<(Subsystem, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("a space needs at least one factor"));
        }
        for (i, &(label, dim)) in factors.iter().enumerate() {
            if dim == 0 {
                return Err(Error::InvalidDimension { what: "tensor factor", dim });
            }
            if factors[..i].iter().any(|&(l, _)| l == label) {
                return Err(Error::invalid(format!("subsystem {label} appears twice")));
            }
        }
        Ok(Space { factors })
    }

    pub fn single(label: Subsystem, dim: usize) -> Result<Self> {
        Space::new(vec![(label, dim)])
    }

    pub fn factors(&self) -> &[(Subsystem, usize)] {
        &self.factors
    }

    pub fn labels(&self) -> Vec<Subsystem> {
        self.factors.iter().map(|&(l, _)| l).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|&(_, d)| d).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|&(_, d)| d).product()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn position(&self, label: Subsystem) -> Option<usize> {
        self.factors.iter().position(|&(l, _)| l == label)
    }

    pub fn contains(&self, label: Subsystem) -> bool {
        self.position(label).is_some()
    }

    pub fn dim_of(&self, label: Subsystem) -> Option<usize> {
        self.position(label).map(|p| self.factors[p].1)
    }

    /// Sub-space made of the listed factors, kept in this space's order.
    pub fn subspace(&self, keep: &[Subsystem]) -> Result<Space> {
        for l in keep {
            if !self.contains(*l) {
                return Err(Error::invalid(format!("subsystem {l} not in space")));
            }
        }
        let factors = self
            .factors
            .iter()
            .filter(|(l, _)| keep.contains(l))
            .copied()
            .collect();
        Space::new(factors)
    }

    pub fn concat(&self, other: &Space) -> Result<Space> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Space::new(factors)
    }

    /// Splits a composite index into per-factor digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, &(_, d)) in self.factors.iter().enumerate().rev() {
            out[k] = index % d;
            index /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &(_, d))| acc * d + x)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, d)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{l}({d})")?;
        }
        Ok(())
    }
}

/// Dimensions of the probe/probe/mediator factorization, ordered A, B, C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemLayout {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
}

impl SystemLayout {
    pub fn new(dim_a: usize, dim_b: usize, dim_c: usize) -> Result<Self> {
        for (what, dim) in [("probe A", dim_a), ("probe B", dim_b), ("mediator C", dim_c)] {
            if dim == 0 {
                return Err(Error::InvalidDimension { what, dim });
            }
        }
        Ok(SystemLayout { dim_a, dim_b, dim_c })
    }

    /// Two truncated fields around a qubit mediator.
    pub fn fields_with_qubit(field_dim: usize) -> Result<Self> {
        SystemLayout::new(field_dim, field_dim, 2)
    }

    pub fn total_dim(&self) -> usize {
        self.dim_a * self.dim_b * self.dim_c
    }

    pub fn dim(&self, s: Subsystem) -> usize {
        match s {
            Subsystem::A => self.dim_a,
            Subsystem::B => self.dim_b,
            Subsystem::C => self.dim_c,
        }
    }

    pub fn space(&self) -> Space {
        Space {
            factors: vec![
                (Subsystem::A, self.dim_a),
                (Subsystem::B, self.dim_b),
                (Subsystem::C, self.dim_c),
            ],
        }
    }

    /// Composite index of the product basis state `|a b c⟩`.
    pub fn basis_index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim_b + b) * self.dim_c + c
    }
}
