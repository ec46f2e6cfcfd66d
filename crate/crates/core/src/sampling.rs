//! Seeded random objects for samplers, searches and tests.

use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::{boost_to, GeoObjectT};
use crate::isometry::{coordinate_rotation, dilation, translation, IsometryT};
use crate::lorentz::{lorentz_inner, lorentz_sq, M5, SubspaceT, V5};
use crate::{Ctx, Result, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss<T: Scalar>(r: &mut SampleRng) -> T {
    T::lit(r.sample::<f64, _>(StandardNormal))
}

pub fn gaussian_v5<T: Scalar>(r: &mut SampleRng) -> V5<T> {
    V5::from_fn(|_, _| gauss(r))
}

/// Future unit time-like vector with space part of typical size `spread`.
pub fn random_point<T: Scalar>(r: &mut SampleRng, spread: f64) -> V5<T> {
    let x = Vector4::<f64>::from_fn(|_, _| r.sample::<f64, _>(StandardNormal) * spread);
    let t = (1.0 + x.norm_squared()).sqrt();
    V5::new(T::lit(x[0]), T::lit(x[1]), T::lit(x[2]), T::lit(x[3]), T::lit(t))
}

/// Uniformly distributed rotation of the space coordinates (det +1).
pub fn random_rotation<T: Scalar>(r: &mut SampleRng) -> M5<T> {
    let g = Matrix4::<f64>::from_fn(|_, _| r.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..4 {
        if rr[(j, j)] < 0.0 {
            for i in 0..4 {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..4 {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    let mut m = M5::<T>::identity();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = T::lit(q[(i, j)]);
        }
    }
    m
}

/// Boost to a random point composed with a random rotation.
pub fn random_isometry<T: Scalar>(r: &mut SampleRng, spread: f64) -> IsometryT<T> {
    let p = random_point::<T>(r, spread);
    let rot = random_rotation::<T>(r);
    IsometryT::from_matrix_unchecked(boost_to(&p).matrix() * rot)
}

/// Plane through three random points.
pub fn random_plane<T: Scalar>(r: &mut SampleRng, spread: f64, ctx: &Ctx<T>) -> Result<GeoObjectT<T>> {
    let pts = (0..3).map(|_| random_point::<T>(r, spread)).collect();
    GeoObjectT::plane(pts, ctx)
}

/// Unit space-like vector of a subspace containing space-like vectors.
///
/// Non-degenerate subspaces use `cosh(s) u + sinh(s) t` with `u` a random unit space-like
/// direction and `t` the time-like basis vector; degenerate ones add a multiple of the
/// light-like direction to a unit vector of a space-like complement. The hyperbolic
/// parameter is clamped so samples stay within a few units of the origin.
pub fn random_unit_in<T: Scalar>(s: &SubspaceT<T>, r: &mut SampleRng, spread: f64, ctx: &Ctx<T>) -> Option<V5<T>> {
    let sig = s.signature(ctx);
    if sig.plus == 0 {
        return None;
    }
    if sig.zero > 0 {
        let v = s.null_direction(ctx)?;
        let e4 = SubspaceT::span(&[V5::new(T::zero(), T::zero(), T::zero(), T::zero(), T::one())], ctx.tau);
        let space = s.intersect(&e4.complement(), ctx);
        let u = combine(space.frame(), r)?;
        let u = u / lorentz_sq(&u).sqrt();
        let c = (r.sample::<f64, _>(StandardNormal) * spread).clamp(-3.0, 3.0);
        return Some(u + v * T::lit(c));
    }
    let on = s.orthonormal_basis(ctx).ok()?;
    let (space, time): (Vec<V5<T>>, Vec<V5<T>>) = on.into_iter().partition(|b| lorentz_sq(b) > T::zero());
    let u = combine(&space, r)?;
    let u = u / lorentz_sq(&u).sqrt();
    match time.first() {
        None => Some(u),
        Some(t) => {
            let x = T::lit((r.sample::<f64, _>(StandardNormal) * spread).clamp(-2.0, 2.0));
            Some(u * x.cosh() + t * x.sinh())
        }
    }
}

fn combine<T: Scalar>(vs: &[V5<T>], r: &mut SampleRng) -> Option<V5<T>> {
    if vs.is_empty() {
        return None;
    }
    let mut u = V5::zeros();
    for v in vs {
        u += v * gauss::<T>(r);
    }
    if u.norm() == T::zero() {
        return Some(vs[0]);
    }
    Some(u)
}

/// A pair `(u, w)` spanning a random 2-dim space-like subspace of the space-like subspace `s`.
pub fn random_space_like_pair<T: Scalar>(s: &SubspaceT<T>, r: &mut SampleRng) -> Option<(V5<T>, V5<T>)> {
    let a = combine(s.frame(), r)?;
    let mut b = combine(s.frame(), r)?;
    b -= a * (lorentz_inner(&a, &b) / lorentz_sq(&a));
    Some((a, b))
}

/// Canonical representatives of each class, conjugated by a random isometry.
pub mod canonical {
    use super::*;
    use crate::isometry::ClassTag;
    use nalgebra::Vector3;

    /// A random element of the given class.
    pub fn random_of_class<T: Scalar>(tag: ClassTag, r: &mut SampleRng) -> IsometryT<T> {
        let angle = |r: &mut SampleRng| T::lit(r.gen_range(0.2..2.9));
        let length = |r: &mut SampleRng| T::lit(r.gen_range(0.3..2.0));
        let base: M5<T> = match tag {
            ClassTag::Identity => M5::identity(),
            ClassTag::EllipticI => coordinate_rotation(0, 1, angle(r)),
            ClassTag::EllipticII => {
                let a = angle(r);
                let mut b = angle(r);
                if (a - b).abs() < T::lit(0.1) {
                    b = a * T::lit(0.5);
                }
                coordinate_rotation(0, 1, a) * coordinate_rotation(2, 3, b)
            }
            ClassTag::PureHyperbolic => dilation(length(r).exp()),
            ClassTag::PureLoxodromic => coordinate_rotation(0, 1, angle(r)) * dilation(length(r).exp()),
            ClassTag::PureParabolic => {
                let b = Vector3::new(gauss::<T>(r), gauss::<T>(r), gauss::<T>(r));
                translation(&b)
            }
            ClassTag::ScrewParabolic => {
                let c = T::lit(r.gen_range(0.3..2.0));
                coordinate_rotation(0, 1, angle(r)) * translation(&Vector3::new(T::zero(), T::zero(), c))
            }
        };
        let g = random_isometry::<T>(r, 0.7);
        IsometryT::from_matrix_unchecked(base).conjugate_by(&g)
    }

    /// Isoclinic type-II elliptic element (equal angles, not an involution).
    pub fn random_isoclinic<T: Scalar>(r: &mut SampleRng) -> IsometryT<T> {
        let a = T::lit(r.gen_range(0.3..2.8));
        let base = coordinate_rotation(0, 1, a) * coordinate_rotation(2, 3, a);
        let g = random_isometry::<T>(r, 0.7);
        IsometryT::from_matrix_unchecked(base).conjugate_by(&g)
    }

    /// Antipodal map at a random point.
    pub fn random_involution<T: Scalar>(r: &mut SampleRng) -> IsometryT<T> {
        let m = M5::from_diagonal(&V5::new(-T::one(), -T::one(), -T::one(), -T::one(), T::one()));
        let g = random_isometry::<T>(r, 0.7);
        IsometryT::from_matrix_unchecked(m).conjugate_by(&g)
    }
}
