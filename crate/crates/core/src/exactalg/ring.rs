use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// The coefficient ring: the integers or an imaginary quadratic order
/// `Z[ω]` with `ω² − tω + n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    QuadraticOrder { trace: BigInt, norm: BigInt },
}

impl Ring {
    pub fn quadratic(trace: BigInt, norm: BigInt) -> Result<Ring> {
        let disc = &trace * &trace - BigInt::from(4) * &norm;
        if !disc.is_negative() {
            return Err(Error::BadDiscriminant(disc));
        }
        Ok(Ring::QuadraticOrder { trace, norm })
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Ring::Integers)
    }

    pub fn discriminant(&self) -> Option<BigInt> {
        match self {
            Ring::Integers => None,
            Ring::QuadraticOrder { trace, norm } => Some(trace * trace - BigInt::from(4) * norm),
        }
    }

    /// Rank of the ring as a Z-module.
    pub fn degree(&self) -> usize {
        match self {
            Ring::Integers => 1,
            Ring::QuadraticOrder { .. } => 2,
        }
    }

    /// Matrix of multiplication by ω on the Z-basis (1, ω), row convention.
    pub fn omega_matrix(&self) -> Option<IntMatrix> {
        match self {
            Ring::Integers => None,
            Ring::QuadraticOrder { trace, norm } => Some(
                IntMatrix::new(2, 2, vec![BigInt::zero(), BigInt::one(), -norm.clone(), trace.clone()])
                    .expect("2x2 shape"),
            ),
        }
    }

    /// Evaluates `A² − tA + nI`; zero exactly when `A` is a valid ω-action.
    pub fn minimal_polynomial_at(&self, a: &IntMatrix) -> Option<IntMatrix> {
        match self {
            Ring::Integers => None,
            Ring::QuadraticOrder { trace, norm } => {
                let n = a.rows();
                let sq = a.mul(a);
                Some(sq.sub(&a.scale(trace)).add(&IntMatrix::identity(n).scale(norm)))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::QuadraticOrder { trace, norm } => write!(f, "Z[w]/(w^2 - {trace}w + {norm})"),
        }
    }
}
