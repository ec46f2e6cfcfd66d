//! Half-turn factorization of orientation-preserving isometries of hyperbolic 4-space.
//!
//! Everything lives in the hyperboloid model inside `R^{4,1}` with the time coordinate
//! last. Types are generic over a [`Scalar`] (`f32` or `f64`); the crate root exports
//! `f64` aliases for everyday use.

use std::fmt;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

pub mod banks;
pub mod geometry;
pub mod isometry;
pub mod json;
pub mod linker;
pub mod lorentz;
pub mod pencils;
pub mod sampling;

mod error;
pub use error::{Error, Result};

/// Real scalar usable by every routine in the crate.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Relative tolerance used for sign and rank bands.
    fn default_tau() -> Self;

    /// Largest Lorentz residual accepted before re-projection.
    fn default_reproject_max() -> Self;

    /// Sine of the largest principal angle accepted in bank and pencil membership.
    fn default_membership_tol() -> Self;
}

impl Scalar for f64 {
    fn default_tau() -> Self {
        1e-9
    }
    fn default_reproject_max() -> Self {
        1e-6
    }
    fn default_membership_tol() -> Self {
        1e-6
    }
}

impl Scalar for f32 {
    fn default_tau() -> Self {
        1e-4
    }
    fn default_reproject_max() -> Self {
        1e-3
    }
    fn default_membership_tol() -> Self {
        3e-3
    }
}

/// Tolerance context threaded through every tolerance-sensitive operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ctx<T: Scalar> {
    /// Relative band for signs, ranks and degeneracy.
    pub tau: T,
    /// Lorentz residual above which a matrix is rejected instead of re-projected.
    pub reproject_max: T,
    /// Principal-angle sine accepted by incidence predicates.
    pub membership_tol: T,
}

impl<T: Scalar> Default for Ctx<T> {
    fn default() -> Self {
        Ctx {
            tau: T::default_tau(),
            reproject_max: T::default_reproject_max(),
            membership_tol: T::default_membership_tol(),
        }
    }
}

impl<T: Scalar> Ctx<T> {
    pub fn with_tau(tau: T) -> Self {
        Ctx { tau, ..Self::default() }
    }
}

pub use banks::{BankElementT, BankT, FactorT, PlaneWitnessT};
pub use geometry::{GeoKind, GeoObjectT, PlanePairClass, PrincipalPairT};
pub use isometry::{FixedDataT, IsometryClass, IsometryClassSummaryT, IsometryT};
pub use linker::{LinkCertificateT, LinkOptions, LinkOutcomeT, LinkStatus};
pub use lorentz::{Signature, SubspaceT, VectorKind};
pub use pencils::{PencilKind, PencilT};

pub type LVector = nalgebra::Vector5<f64>;
pub type LMatrix = nalgebra::Matrix5<f64>;
pub type Subspace = SubspaceT<f64>;
pub type GeoObject = GeoObjectT<f64>;
pub type Isometry = IsometryT<f64>;
pub type IsometryClassSummary = IsometryClassSummaryT<f64>;
pub type FixedData = FixedDataT<f64>;
pub type Pencil = PencilT<f64>;
pub type Bank = BankT<f64>;
pub type Factor = FactorT<f64>;
pub type BankElement = BankElementT<f64>;
pub type PlaneWitness = PlaneWitnessT<f64>;
pub type LinkCertificate = LinkCertificateT<f64>;
pub type LinkOutcome = LinkOutcomeT<f64>;
pub type PrincipalPair = PrincipalPairT<f64>;
