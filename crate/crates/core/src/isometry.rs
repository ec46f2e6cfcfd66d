//! Positive Lorentz matrices, their six-way classification and canonical splittings.

use std::ops::Mul;

use nalgebra::{DMatrix, Matrix2, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::lorentz::{
    jmat, lorentz_inner, normalize, nullspace, projector_from_on, smallest_singular, unit, M5,
    SubspaceT, V5,
};
use crate::{Ctx, Error, Result, Scalar};

/// An element of `SO+(4,1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryT<T: Scalar> {
    m: M5<T>,
}

/// `|M^T J M - J|_F`.
pub fn lorentz_residual<T: Scalar>(m: &M5<T>) -> T {
    let j = jmat::<T>();
    (m.transpose() * j * m - j).norm()
}

impl<T: Scalar> IsometryT<T> {
    /// Validates, fixes the projective sign and re-projects onto the group.
    ///
    /// The residual is measured relative to `|M|_F^2 / 5`, which is 1 for the identity.
    pub fn new(m: M5<T>, ctx: &Ctx<T>) -> Result<Self> {
        let mut m = m;
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotInGroup("non-finite entry".into()));
        }
        let scale = (m.norm_squared() / T::lit(5.0)).max(T::one());
        let r = lorentz_residual(&m);
        if r > ctx.reproject_max * scale {
            return Err(Error::NotInGroup(format!("Lorentz residual {r}")));
        }
        if m[(4, 4)] < T::zero() {
            if m.determinant() < T::zero() {
                m = -m;
            } else {
                return Err(Error::NotInGroup("reverses the time orientation".into()));
            }
        }
        let j = jmat::<T>();
        for _ in 0..2 {
            let inv_t = m
                .try_inverse()
                .ok_or_else(|| Error::NotInGroup("singular".into()))?
                .transpose();
            m = (m + j * inv_t * j) * T::lit(0.5);
        }
        if (m.determinant() - T::one()).abs() > T::lit(1e-3) {
            return Err(Error::NotInGroup("orientation reversing".into()));
        }
        if m[(4, 4)] < T::one() - T::lit(1e-6) {
            return Err(Error::NotInGroup("does not preserve the upper sheet".into()));
        }
        Ok(IsometryT { m })
    }

    /// Wraps a matrix already known to be in the group.
    pub fn from_matrix_unchecked(m: M5<T>) -> Self {
        IsometryT { m }
    }

    pub fn identity() -> Self {
        IsometryT { m: M5::identity() }
    }

    pub fn matrix(&self) -> &M5<T> {
        &self.m
    }

    pub fn inverse(&self) -> Self {
        let j = jmat::<T>();
        IsometryT { m: j * self.m.transpose() * j }
    }

    /// `g M g^-1`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        IsometryT { m: g.m * self.m * g.inverse().m }
    }

    pub fn apply(&self, v: &V5<T>) -> V5<T> {
        self.m * v
    }

    /// Frobenius distance between matrices.
    pub fn distance(&self, other: &Self) -> T {
        (self.m - other.m).norm()
    }
}

impl<T: Scalar> Mul for &IsometryT<T> {
    type Output = IsometryT<T>;
    fn mul(self, rhs: Self) -> IsometryT<T> {
        IsometryT { m: self.m * rhs.m }
    }
}

impl<T: Scalar> Mul for IsometryT<T> {
    type Output = IsometryT<T>;
    fn mul(self, rhs: Self) -> IsometryT<T> {
        IsometryT { m: self.m * rhs.m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    Identity,
    EllipticI,
    EllipticII,
    PureHyperbolic,
    PureLoxodromic,
    PureParabolic,
    ScrewParabolic,
}

/// Class with its numeric invariants. Angles are in radians, in `(0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometryClass<T: Scalar> {
    Identity,
    EllipticI { angle: T },
    EllipticII { involution: bool, angles: (T, T) },
    PureHyperbolic { length: T },
    PureLoxodromic { length: T, angle: T },
    PureParabolic,
    ScrewParabolic { angle: T },
}

impl<T: Scalar> IsometryClass<T> {
    pub fn tag(&self) -> ClassTag {
        match self {
            IsometryClass::Identity => ClassTag::Identity,
            IsometryClass::EllipticI { .. } => ClassTag::EllipticI,
            IsometryClass::EllipticII { .. } => ClassTag::EllipticII,
            IsometryClass::PureHyperbolic { .. } => ClassTag::PureHyperbolic,
            IsometryClass::PureLoxodromic { .. } => ClassTag::PureLoxodromic,
            IsometryClass::PureParabolic => ClassTag::PureParabolic,
            IsometryClass::ScrewParabolic { .. } => ClassTag::ScrewParabolic,
        }
    }

    pub fn is_involution(&self) -> bool {
        matches!(self, IsometryClass::EllipticII { involution: true, .. })
    }
}

/// Geometric data attached to a class. Which fields are set depends on the class.
#[derive(Clone, Debug)]
pub struct FixedDataT<T: Scalar> {
    /// Axis of a hyperbolic element (2-dim time-like).
    pub axis: Option<SubspaceT<T>>,
    /// Fixed plane of the rotational part (or of a type-I elliptic element).
    pub twisting_plane: Option<SubspaceT<T>>,
    /// Axis plus rotation plane, for loxodromic elements.
    pub twisting_hyperplane: Option<SubspaceT<T>>,
    /// Future unit time-like fixed vector of a type-II elliptic element.
    pub fixed_point: Option<V5<T>>,
    /// Light-like fixed ray of a parabolic element.
    pub fixed_ideal: Option<V5<T>>,
    /// Unit space-like representative in `v^L` of the translation direction of a parabolic element.
    pub direction: Option<V5<T>>,
    /// Invariant plane pair of a non-involutive type-II elliptic element, larger angle first.
    pub invariant_pair: Option<(SubspaceT<T>, SubspaceT<T>)>,
}

impl<T: Scalar> Default for FixedDataT<T> {
    fn default() -> Self {
        FixedDataT {
            axis: None,
            twisting_plane: None,
            twisting_hyperplane: None,
            fixed_point: None,
            fixed_ideal: None,
            direction: None,
            invariant_pair: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsometryClassSummaryT<T: Scalar> {
    pub class: IsometryClass<T>,
    pub fixed: FixedDataT<T>,
}

impl<T: Scalar> IsometryClassSummaryT<T> {
    pub fn tag(&self) -> ClassTag {
        self.class.tag()
    }
}

fn angle_tol<T: Scalar>(ctx: &Ctx<T>) -> T {
    ctx.membership_tol
}

/// Rotation angle in `[0, π]` of `m` on a 2-dim space-like invariant subspace.
fn plane_angle<T: Scalar>(m: &M5<T>, on: &[V5<T>]) -> T {
    let r = Matrix2::from_fn(|i, j| lorentz_inner(&on[i], &(m * on[j])));
    (r[(1, 0)] - r[(0, 1)]).atan2(r[(0, 0)] + r[(1, 1)]).abs()
}

/// The two roots `a >= b` of the characteristic factorization
/// `(λ-1)(λ²-aλ+1)(λ²-bλ+1)`.
pub fn trace_pair<T: Scalar>(m: &M5<T>) -> (T, T) {
    let t1 = m.trace();
    let t2 = (m * m).trace();
    let e2 = (t1 * t1 - t2) * T::lit(0.5);
    let s = t1 - T::one();
    let p = e2 - T::lit(2.0) - s;
    let disc = (s * s - T::lit(4.0) * p).max(T::zero()).sqrt();
    ((s + disc) * T::lit(0.5), (s - disc) * T::lit(0.5))
}

/// Six-way classification with fixed data.
pub fn classify<T: Scalar>(iso: &IsometryT<T>, ctx: &Ctx<T>) -> Result<IsometryClassSummaryT<T>> {
    let m = iso.m;
    let id = M5::<T>::identity();
    let two = T::lit(2.0);
    let kappa = m.norm_squared();
    let band = T::lit(10.0) * ctx.tau * kappa;
    let (a, b) = trace_pair(&m);
    let mut fixed = FixedDataT::default();

    if (m - id).norm() <= T::lit(1e3) * ctx.tau {
        return Ok(IsometryClassSummaryT { class: IsometryClass::Identity, fixed });
    }

    if a > two + band {
        let lam = (a + (a * a - T::lit(4.0)).sqrt()) * T::lit(0.5);
        let length = lam.ln();
        let axis_v = smallest_singular(&(m * m - m * a + id), 2);
        let axis = SubspaceT::span(&axis_v, ctx.tau);
        let e = axis.complement();
        let on = e.orthonormal_basis(ctx)?;
        let r = Matrix3::from_fn(|i, j| lorentz_inner(&on[i], &(m * on[j])));
        let w = Vector3::new(r[(2, 1)] - r[(1, 2)], r[(0, 2)] - r[(2, 0)], r[(1, 0)] - r[(0, 1)]);
        let theta = (w.norm() * T::lit(0.5)).atan2((r.trace() - T::one()) * T::lit(0.5));
        fixed.axis = Some(axis.clone());
        if theta <= angle_tol(ctx) {
            return Ok(IsometryClassSummaryT { class: IsometryClass::PureHyperbolic { length }, fixed });
        }
        let rvec = smallest_singular(&(m - id), 1)[0];
        let rline = SubspaceT::span(&[rvec], ctx.tau);
        fixed.twisting_plane = Some(axis.sum(&rline, ctx));
        fixed.twisting_hyperplane = Some(rline.complement());
        return Ok(IsometryClassSummaryT {
            class: IsometryClass::PureLoxodromic { length, angle: theta },
            fixed,
        });
    }

    if a < two - band {
        let p = normalize(&smallest_singular(&(m - id), 1)[0], &Ctx { tau: T::lit(1e-3), ..*ctx })?;
        fixed.fixed_point = Some(p);
        let pl = SubspaceT::span(&[p], ctx.tau).complement();
        let on = pl.orthonormal_basis(ctx)?;
        let r4 = DMatrix::from_fn(4, 4, |i, j| lorentz_inner(&on[i], &(m * on[j])));
        let inv_defect = (&r4 * &r4 - DMatrix::identity(4, 4)).norm();
        let involution = inv_defect <= T::lit(4.0) * two.sqrt() * ctx.membership_tol;
        let big = (b * T::lit(0.5)).max(-T::one()).min(T::one()).acos();
        let small = (a * T::lit(0.5)).max(-T::one()).min(T::one()).acos();
        if involution {
            return Ok(IsometryClassSummaryT {
                class: IsometryClass::EllipticII { involution: true, angles: (big, small) },
                fixed,
            });
        }
        let (e_big, e_small) = type2_planes(&m, p, big, small, None, ctx)?;
        let on_big = e_big.orthonormal_basis(ctx)?;
        let on_small = e_small.orthonormal_basis(ctx)?;
        let (ab, asm) = (plane_angle(&m, &on_big), plane_angle(&m, &on_small));
        let pline = SubspaceT::span(&[p], ctx.tau);
        fixed.invariant_pair = Some((pline.sum(&e_big, ctx), pline.sum(&e_small, ctx)));
        return Ok(IsometryClassSummaryT {
            class: IsometryClass::EllipticII { involution: false, angles: (ab, asm) },
            fixed,
        });
    }

    let null = nullspace(&(m - id), T::lit(1e3) * ctx.tau);
    if null.len() >= 5 {
        return Ok(IsometryClassSummaryT { class: IsometryClass::Identity, fixed });
    }
    if null.len() >= 3 {
        let nsub = SubspaceT::span(&smallest_singular(&(m - id), 3), ctx.tau);
        if nsub.signature(ctx).is_time_like() {
            let e = nsub.complement();
            let on = e.orthonormal_basis(ctx)?;
            let angle = plane_angle(&m, &on);
            fixed.twisting_plane = Some(nsub);
            return Ok(IsometryClassSummaryT { class: IsometryClass::EllipticI { angle }, fixed });
        }
        let v = nsub
            .null_direction(ctx)
            .ok_or_else(|| Error::NotInGroup("parabolic without a light-like fixed ray".into()))?;
        fixed.direction = Some(parabolic_direction(&m, &v, ctx)?);
        fixed.fixed_ideal = Some(v);
        return Ok(IsometryClassSummaryT { class: IsometryClass::PureParabolic, fixed });
    }

    let v = normalize(&smallest_singular(&(m - id), 1)[0], &Ctx { tau: T::lit(1e-3), ..*ctx })?;
    let e = SubspaceT::span(&smallest_singular(&(m * m - m * b + id), 2), ctx.tau);
    let on = e.orthonormal_basis(ctx)?;
    let angle = plane_angle(&m, &on);
    let w = e.complement();
    let t = m * projector_from_on(&w.orthonormal_basis(ctx)?) + projector_from_on(&on);
    fixed.direction = Some(parabolic_direction(&t, &v, ctx)?);
    fixed.fixed_ideal = Some(v);
    fixed.twisting_plane = Some(w);
    Ok(IsometryClassSummaryT { class: IsometryClass::ScrewParabolic { angle }, fixed })
}

/// Validates a raw matrix and classifies it.
pub fn classify_matrix<T: Scalar>(m: &M5<T>, ctx: &Ctx<T>) -> Result<IsometryClassSummaryT<T>> {
    classify(&IsometryT::new(*m, ctx)?, ctx)
}

/// Unit representative of the translation direction of a pure parabolic `t` fixing `v`.
fn parabolic_direction<T: Scalar>(t: &M5<T>, v: &V5<T>, ctx: &Ctx<T>) -> Result<V5<T>> {
    let y = unit::<T>(4);
    let d = (t - M5::identity()) * y;
    let d = d - v * (d.dot(v) / v.norm_squared());
    normalize(&d, ctx)
}

/// Angle gap below which a type-II rotation is treated as isoclinic.
pub(crate) fn is_isoclinic<T: Scalar>(big: T, small: T) -> bool {
    (big - small).abs() <= T::lit(1e-6)
}

/// Rotation planes `(E_big, E_small)` of a type-II elliptic element in `p^L`.
///
/// For isoclinic rotations the pair is not unique; `hint` (a vector of `p^L`) selects
/// `span{hint, M hint}` as the first plane.
pub(crate) fn type2_planes<T: Scalar>(
    m: &M5<T>,
    p: V5<T>,
    big: T,
    small: T,
    hint: Option<V5<T>>,
    ctx: &Ctx<T>,
) -> Result<(SubspaceT<T>, SubspaceT<T>)> {
    let id = M5::<T>::identity();
    let pline = SubspaceT::span(&[p], ctx.tau);
    let pl = pline.complement();
    if is_isoclinic(big, small) {
        let pp = pl.projector();
        let u = match hint {
            Some(h) if (pp * h).norm() > ctx.tau => pp * h,
            _ => pl.frame()[0],
        };
        let e1 = SubspaceT::span(&[u, m * u], ctx.tau);
        if e1.dim() != 2 {
            return Err(Error::WrongClass("degenerate isoclinic rotation".into()));
        }
        let e2 = pl.intersect(&e1.complement(), ctx);
        return Ok((e1, e2));
    }
    let two = T::lit(2.0);
    let q = m * m - m * (two * big.cos()) + id;
    let eb = SubspaceT::span(&smallest_singular(&q, 2), ctx.tau);
    let es = pl.intersect(&eb.complement(), ctx);
    Ok((eb, es))
}

/// Splits a loxodromic or screw parabolic element into commuting `(translation, rotation)`.
pub fn decompose<T: Scalar>(iso: &IsometryT<T>, ctx: &Ctx<T>) -> Result<(IsometryT<T>, IsometryT<T>)> {
    let s = classify(iso, ctx)?;
    let m = iso.m;
    let (keep, rot) = match s.class {
        IsometryClass::PureLoxodromic { .. } => {
            let axis = s.fixed.axis.expect("axis");
            (axis.clone(), axis.complement())
        }
        IsometryClass::ScrewParabolic { .. } => {
            let w = s.fixed.twisting_plane.expect("twisting plane");
            (w.clone(), w.complement())
        }
        _ => {
            return Err(Error::WrongClass(format!("{:?} has no translation/rotation split", s.tag())))
        }
    };
    let pk = keep.lorentz_projector(ctx)?;
    let pr = rot.lorentz_projector(ctx)?;
    let t = m * pk + pr;
    let r = pk + m * pr;
    Ok((IsometryT::from_matrix_unchecked(t), IsometryT::from_matrix_unchecked(r)))
}

/// Splits a non-involutive type-II elliptic element into commuting type-I factors, larger angle first.
pub fn decompose_type2<T: Scalar>(iso: &IsometryT<T>, ctx: &Ctx<T>) -> Result<(IsometryT<T>, IsometryT<T>)> {
    decompose_type2_with(iso, None, ctx)
}

/// As [`decompose_type2`]; `hint` resolves the isoclinic ambiguity.
pub fn decompose_type2_with<T: Scalar>(
    iso: &IsometryT<T>,
    hint: Option<V5<T>>,
    ctx: &Ctx<T>,
) -> Result<(IsometryT<T>, IsometryT<T>)> {
    let s = classify(iso, ctx)?;
    let (big, small) = match s.class {
        IsometryClass::EllipticII { involution: true, .. } => return Err(Error::IsInvolution),
        IsometryClass::EllipticII { angles, .. } => angles,
        _ => return Err(Error::WrongClass(format!("{:?} is not type-II elliptic", s.tag()))),
    };
    let p = s.fixed.fixed_point.expect("fixed point");
    let (e1, e2) = type2_planes(&iso.m, p, big, small, hint, ctx)?;
    let id = M5::<T>::identity();
    let factor = |e: &SubspaceT<T>| -> Result<IsometryT<T>> {
        let pe = e.lorentz_projector(ctx)?;
        Ok(IsometryT::from_matrix_unchecked(iso.m * pe + (id - pe)))
    };
    Ok((factor(&e1)?, factor(&e2)?))
}

/// Boost along `(e_3, e_0)` realizing the dilation `x -> λx` of the boundary.
pub fn dilation<T: Scalar>(lambda: T) -> M5<T> {
    let c = (lambda + T::one() / lambda) * T::lit(0.5);
    let s = (lambda - T::one() / lambda) * T::lit(0.5);
    let mut m = M5::identity();
    m[(3, 3)] = c;
    m[(3, 4)] = s;
    m[(4, 3)] = s;
    m[(4, 4)] = c;
    m
}

/// Poincaré extension of the boundary translation `x -> x + b`.
pub fn translation<T: Scalar>(b: &Vector3<T>) -> M5<T> {
    let h = b.norm_squared() * T::lit(0.5);
    let mut m = M5::identity();
    for i in 0..3 {
        m[(i, 3)] = -b[i];
        m[(i, 4)] = b[i];
        m[(3, i)] = b[i];
        m[(4, i)] = b[i];
    }
    m[(3, 3)] = T::one() - h;
    m[(3, 4)] = h;
    m[(4, 3)] = -h;
    m[(4, 4)] = T::one() + h;
    m
}

/// Poincaré extension of `x -> λ A x + b` on the boundary of the upper half-space.
pub fn from_boundary_similarity<T: Scalar>(
    a: &Matrix3<T>,
    b: &Vector3<T>,
    lambda: T,
    ctx: &Ctx<T>,
) -> Result<IsometryT<T>> {
    if (a.transpose() * a - Matrix3::identity()).norm() > T::lit(1e3) * ctx.tau
        || a.determinant() < T::zero()
    {
        return Err(Error::NotOrthogonal);
    }
    if !(lambda > T::zero()) {
        return Err(Error::NonPositiveScale);
    }
    let mut rot = M5::identity();
    rot.fixed_view_mut::<3, 3>(0, 0).copy_from(a);
    Ok(IsometryT::from_matrix_unchecked(translation(b) * dilation(lambda) * rot))
}

/// Rotation by `theta` about the boundary z-axis.
pub fn rot_z<T: Scalar>(theta: T) -> Matrix3<T> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(c, -s, T::zero(), s, c, T::zero(), T::zero(), T::zero(), T::one())
}

/// A displayed parabolic matrix together with its Jordan data.
#[derive(Clone, Debug)]
pub struct ReferenceParabolic<T: Scalar> {
    pub p: DMatrix<T>,
    pub s: DMatrix<T>,
    pub j: DMatrix<T>,
    /// The light-like vector fixed by `p`.
    pub fixed: Vec<T>,
}

/// `P_n = S_n J_n S_n^{-1}` for `n = 2, 3, 4` with parameters `t`, `(x,y)` or `(x,y,z)`.
///
/// The `(x,y)` case uses `+x²/(x²+y²)` in row 2, column 1 of `S_3`; see the tests.
pub fn reference_parabolic<T: Scalar>(n: usize, params: &[T]) -> Result<ReferenceParabolic<T>> {
    let z = T::zero();
    let o = T::one();
    let h = T::lit(0.5);
    match (n, params.len()) {
        (2, 1) => {
            let t = params[0];
            if t == z {
                return Err(Error::BadParams("t must be nonzero".into()));
            }
            let t2 = t * t;
            let p = DMatrix::from_row_slice(
                3,
                3,
                &[o, -t, t, t, o - t2 * h, t2 * h, t, -t2 * h, o + t2 * h],
            );
            let s = DMatrix::from_row_slice(3, 3, &[z, t, -t * h, t2, z, -o, t2, z, z]);
            let j = DMatrix::from_row_slice(3, 3, &[o, o, z, z, o, o, z, z, o]);
            Ok(ReferenceParabolic { p, s, j, fixed: vec![z, o, o] })
        }
        (3, 2) => {
            let (x, y) = (params[0], params[1]);
            let r = x * x + y * y;
            if !(r > z) {
                return Err(Error::BadParams("x²+y² must be positive".into()));
            }
            #[rustfmt::skip]
            let p = DMatrix::from_row_slice(4, 4, &[
                o, z, -x, x,
                z, o, -y, y,
                x, y, o - r * h, r * h,
                x, y, -r * h, o + r * h,
            ]);
            #[rustfmt::skip]
            let s = DMatrix::from_row_slice(4, 4, &[
                -x * y / r, z, x, z,
                x * x / r, z, y, z,
                -y * h, r, r * h, z,
                -y * h, r, r * h, o,
            ]);
            #[rustfmt::skip]
            let j = DMatrix::from_row_slice(4, 4, &[
                o, z, z, z,
                z, o, o, z,
                z, z, o, o,
                z, z, z, o,
            ]);
            Ok(ReferenceParabolic { p, s, j, fixed: vec![z, z, o, o] })
        }
        (4, 3) => {
            let (x, y, w) = (params[0], params[1], params[2]);
            let r = x * x + y * y + w * w;
            if !(r > z) {
                return Err(Error::BadParams("x²+y²+z² must be positive".into()));
            }
            if y == z {
                return Err(Error::BadParams("y must be nonzero".into()));
            }
            #[rustfmt::skip]
            let p = DMatrix::from_row_slice(5, 5, &[
                o, z, z, -x, x,
                z, o, z, -y, y,
                z, z, o, -w, w,
                x, y, w, o - r * h, r * h,
                x, y, w, -r * h, o + r * h,
            ]);
            #[rustfmt::skip]
            let s = DMatrix::from_row_slice(5, 5, &[
                z, -x * y / r, z, x, z,
                -w / y, (x * x + w * w) / r, z, y, z,
                o, -y * w / r, z, w, z,
                z, -y * h, r, r * h, z,
                z, -y * h, r, r * h, o,
            ]);
            #[rustfmt::skip]
            let j = DMatrix::from_row_slice(5, 5, &[
                o, z, z, z, z,
                z, o, z, z, z,
                z, z, o, o, z,
                z, z, z, o, o,
                z, z, z, z, o,
            ]);
            Ok(ReferenceParabolic { p, s, j, fixed: vec![z, z, z, o, o] })
        }
        _ => Err(Error::BadParams(format!("unsupported n={n} with {} parameters", params.len()))),
    }
}

/// `ρ P_4` together with its parts.
#[derive(Clone, Debug)]
pub struct ScrewBuild<T: Scalar> {
    pub screw: IsometryT<T>,
    pub rho: IsometryT<T>,
    pub p4: IsometryT<T>,
    /// `span{v1, v2, v3}`, the fixed plane of `rho`.
    pub twisting_plane: SubspaceT<T>,
    /// Set when `theta ≡ π`: the rotational part is an involution and more subspaces are invariant.
    pub rotation_is_involution: bool,
}

/// Builds `ρ P_4` where `ρ` fixes `span{v1, v2, v3}` (v1, v2 the third and fourth columns
/// of `S_4`) and rotates its Lorentz complement by `theta`.
pub fn screw_parabolic_from<T: Scalar>(
    params: &[T; 3],
    v3: &V5<T>,
    theta: T,
    ctx: &Ctx<T>,
) -> Result<ScrewBuild<T>> {
    let b = Vector3::new(params[0], params[1], params[2]);
    let s = b.norm_squared();
    if !(s > T::zero()) {
        return Err(Error::BadParams("x²+y²+z² must be positive".into()));
    }
    let two_pi = T::two_pi();
    let red = theta - two_pi * (theta / two_pi).round();
    if red.abs() <= ctx.tau {
        return Err(Error::BadAngle("rotation angle is a multiple of 2π".into()));
    }
    if lorentz_inner(v3, v3) >= -ctx.tau * v3.norm_squared() {
        return Err(Error::NotTimeLike);
    }
    let h = s * T::lit(0.5);
    let v1 = V5::new(T::zero(), T::zero(), T::zero(), s, s);
    let v2 = V5::new(b[0], b[1], b[2], h, h);
    let w = SubspaceT::span(&[v1, v2, *v3], ctx.tau);
    let e = w.complement();
    let on = e.orthonormal_basis(ctx)?;
    let j = jmat::<T>();
    let (sn, cs) = theta.sin_cos();
    let pw = w.lorentz_projector(ctx)?;
    let pe = projector_from_on(&on);
    let (f1, f2) = (on[0], on[1]);
    let rho = pw + pe * cs + (f2 * f1.transpose() - f1 * f2.transpose()) * j * sn;
    let p4 = translation(&b);
    let pi = T::pi();
    let rotation_is_involution = (red.abs() - pi).abs() <= T::lit(1e3) * ctx.tau;
    Ok(ScrewBuild {
        screw: IsometryT::from_matrix_unchecked(rho * p4),
        rho: IsometryT::from_matrix_unchecked(rho),
        p4: IsometryT::from_matrix_unchecked(p4),
        twisting_plane: w,
        rotation_is_involution,
    })
}

/// Lorentz rotation in the `(e_i, e_j)` space-like coordinate plane.
pub fn coordinate_rotation<T: Scalar>(i: usize, j: usize, theta: T) -> M5<T> {
    let (s, c) = theta.sin_cos();
    let mut m = M5::identity();
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(i, j)] = -s;
    m[(j, i)] = s;
    m
}

/// The reference hyperbolic matrix: identity on `e_1..e_3`, `[[√2,1],[1,√2]]` on `(e_4, e_0)`.
pub fn sqrt2_hyperbolic<T: Scalar>() -> IsometryT<T> {
    let mut m = M5::identity();
    let r2 = T::lit(2.0).sqrt();
    m[(3, 3)] = r2;
    m[(3, 4)] = T::one();
    m[(4, 3)] = T::one();
    m[(4, 4)] = r2;
    IsometryT::from_matrix_unchecked(m)
}
