//! Totally geodesic subspaces of H⁴, the boundary `R³ ∪ {∞}`, reflections, half-turns
//! and the configuration theory of plane pairs.

use nalgebra::{DMatrix, DVector, Matrix2, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::isometry::{FixedDataT, IsometryClass, IsometryClassSummaryT, IsometryT};
use crate::lorentz::{jmat, lorentz_inner, lorentz_sq, normalize, unit, M5, SubspaceT, V5};
use crate::{Ctx, Error, Result, Scalar};

/// A point of `∂H⁴ = R³ ∪ {∞}` in upper half-space coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint<T: Scalar> {
    Finite(Vector3<T>),
    Infinity,
}

/// Light-like representative of a boundary point.
pub fn ideal_vector<T: Scalar>(p: &BoundaryPoint<T>) -> V5<T> {
    match p {
        BoundaryPoint::Finite(u) => {
            let r = u.norm_squared();
            let h = T::lit(0.5);
            V5::new(u[0], u[1], u[2], (r - T::one()) * h, (r + T::one()) * h)
        }
        BoundaryPoint::Infinity => V5::new(T::zero(), T::zero(), T::zero(), T::one(), T::one()),
    }
}

/// Boundary point of a light-like ray.
pub fn boundary_point<T: Scalar>(v: &V5<T>, ctx: &Ctx<T>) -> BoundaryPoint<T> {
    let d = v[4] - v[3];
    if d.abs() <= T::lit(1e3) * ctx.tau * v.norm() {
        BoundaryPoint::Infinity
    } else {
        BoundaryPoint::Finite(Vector3::new(v[0] / d, v[1] / d, v[2] / d))
    }
}

/// Unit time-like vector of the upper half-space point `(u, h)`, `h > 0`.
pub fn upper_half_space_point<T: Scalar>(u: &Vector3<T>, h: T) -> V5<T> {
    let r = u.norm_squared() + h * h;
    let two_h = h + h;
    V5::new(u[0] / h, u[1] / h, u[2] / h, (r - T::one()) / two_h, (r + T::one()) / two_h)
}

/// Upper half-space coordinates of a time-like vector.
pub fn to_upper_half_space<T: Scalar>(v: &V5<T>) -> (Vector3<T>, T) {
    let d = v[4] - v[3];
    let d = if v[4] < T::zero() { -d } else { d };
    let s = if v[4] < T::zero() { -T::one() } else { T::one() };
    let h = (-lorentz_sq(v)).sqrt() / d;
    (Vector3::new(v[0] * s / d, v[1] * s / d, v[2] * s / d), h)
}

/// Kinds of totally geodesic objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeoKind {
    Point,
    IdealPoint,
    Line,
    Plane,
    Hyperplane,
}

impl GeoKind {
    pub fn dim(&self) -> usize {
        match self {
            GeoKind::Point | GeoKind::IdealPoint => 1,
            GeoKind::Line => 2,
            GeoKind::Plane => 3,
            GeoKind::Hyperplane => 4,
        }
    }
}

/// A totally geodesic object, carried by a time-like subspace (or a light-like line).
#[derive(Clone, Debug)]
pub struct GeoObjectT<T: Scalar> {
    kind: GeoKind,
    carrier: SubspaceT<T>,
}

impl<T: Scalar> GeoObjectT<T> {
    /// Checks kind/carrier consistency.
    pub fn new(kind: GeoKind, carrier: SubspaceT<T>, ctx: &Ctx<T>) -> Result<Self> {
        let found = Self::infer_kind(&carrier, ctx)?;
        if found != kind {
            return Err(Error::WrongKind(format!("expected {kind:?}, carrier is a {found:?}")));
        }
        Ok(GeoObjectT { kind, carrier })
    }

    /// Infers the kind from the carrier.
    pub fn from_carrier(carrier: SubspaceT<T>, ctx: &Ctx<T>) -> Result<Self> {
        let kind = Self::infer_kind(&carrier, ctx)?;
        Ok(GeoObjectT { kind, carrier })
    }

    pub fn from_basis(kind: GeoKind, basis: Vec<V5<T>>, ctx: &Ctx<T>) -> Result<Self> {
        Self::new(kind, SubspaceT::new(basis, ctx)?, ctx)
    }

    fn infer_kind(carrier: &SubspaceT<T>, ctx: &Ctx<T>) -> Result<GeoKind> {
        let sig = carrier.signature(ctx);
        match (carrier.dim(), sig.minus, sig.zero) {
            (1, 0, 1) => Ok(GeoKind::IdealPoint),
            (1, 1, 0) => Ok(GeoKind::Point),
            (2, 1, 0) => Ok(GeoKind::Line),
            (3, 1, 0) => Ok(GeoKind::Plane),
            (4, 1, 0) => Ok(GeoKind::Hyperplane),
            (d, _, _) => Err(Error::WrongKind(format!(
                "{d}-dim subspace with signature ({}, {}, {})",
                sig.plus, sig.minus, sig.zero
            ))),
        }
    }

    pub fn point(v: V5<T>, ctx: &Ctx<T>) -> Result<Self> {
        Self::from_basis(GeoKind::Point, vec![v], ctx)
    }

    pub fn ideal_point(p: &BoundaryPoint<T>, ctx: &Ctx<T>) -> Result<Self> {
        Self::from_basis(GeoKind::IdealPoint, vec![ideal_vector(p)], ctx)
    }

    pub fn plane(basis: Vec<V5<T>>, ctx: &Ctx<T>) -> Result<Self> {
        Self::from_basis(GeoKind::Plane, basis, ctx)
    }

    pub fn line(basis: Vec<V5<T>>, ctx: &Ctx<T>) -> Result<Self> {
        Self::from_basis(GeoKind::Line, basis, ctx)
    }

    pub fn hyperplane(basis: Vec<V5<T>>, ctx: &Ctx<T>) -> Result<Self> {
        Self::from_basis(GeoKind::Hyperplane, basis, ctx)
    }

    /// Hyperplane with the given space-like normal.
    pub fn hyperplane_from_normal(n: &V5<T>, ctx: &Ctx<T>) -> Result<Self> {
        let carrier = SubspaceT::span(&[*n], ctx.tau).complement();
        Self::new(GeoKind::Hyperplane, carrier, ctx)
    }

    /// Plane through three distinct boundary points.
    pub fn plane_from_ideal_points(pts: &[BoundaryPoint<T>; 3], ctx: &Ctx<T>) -> Result<Self> {
        Self::plane(pts.iter().map(ideal_vector).collect(), ctx)
    }

    /// Geodesic with the two given endpoints.
    pub fn line_from_ideal_points(a: &BoundaryPoint<T>, b: &BoundaryPoint<T>, ctx: &Ctx<T>) -> Result<Self> {
        Self::line(vec![ideal_vector(a), ideal_vector(b)], ctx)
    }

    /// Hyperplane bounded by the sphere `|x - c| = r`.
    pub fn sphere(c: &Vector3<T>, r: T, ctx: &Ctx<T>) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(Error::BadParams("radius must be positive".into()));
        }
        let k = c.norm_squared() - r * r;
        let h = T::lit(0.5);
        let n = V5::new(c[0], c[1], c[2], (k - T::one()) * h, (k + T::one()) * h) / r;
        Self::hyperplane_from_normal(&n, ctx)
    }

    /// Hyperplane bounded by the Euclidean plane `x·m = c` (plus ∞).
    pub fn euclidean_plane(m: &Vector3<T>, c: T, ctx: &Ctx<T>) -> Result<Self> {
        let nm = m.norm();
        if nm <= ctx.tau {
            return Err(Error::ZeroVector);
        }
        let (m, c) = (m / nm, c / nm);
        Self::hyperplane_from_normal(&V5::new(m[0], m[1], m[2], c, c), ctx)
    }

    pub fn kind(&self) -> GeoKind {
        self.kind
    }

    pub fn carrier(&self) -> &SubspaceT<T> {
        &self.carrier
    }

    /// Unit space-like normal of a hyperplane.
    pub fn normal(&self, ctx: &Ctx<T>) -> Result<V5<T>> {
        if self.kind != GeoKind::Hyperplane {
            return Err(Error::WrongKind(format!("{:?} has no single normal", self.kind)));
        }
        normalize(&self.carrier.complement().frame()[0], ctx)
    }

    /// Equality of carriers.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.kind == other.kind && self.carrier.approx_eq(&other.carrier, tol)
    }

    pub fn transform(&self, g: &IsometryT<T>) -> Self {
        GeoObjectT { kind: self.kind, carrier: self.carrier.transform(g.matrix()) }
    }
}

fn expect_kind<T: Scalar>(o: &GeoObjectT<T>, k: GeoKind) -> Result<()> {
    if o.kind != k {
        return Err(Error::WrongKind(format!("expected {k:?}, got {:?}", o.kind)));
    }
    Ok(())
}

/// `x -> x - 2<x,n> n` for the unit normal `n`. Orientation reversing, so a raw matrix.
pub fn reflection_matrix<T: Scalar>(h: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<M5<T>> {
    expect_kind(h, GeoKind::Hyperplane)?;
    let n = h.normal(ctx)?;
    Ok(reflection_from_normal(&n))
}

pub(crate) fn reflection_from_normal<T: Scalar>(n: &V5<T>) -> M5<T> {
    let s = lorentz_sq(n);
    M5::identity() - n * (n.transpose() * jmat::<T>()) * (T::lit(2.0) / s)
}

/// Half-turn about a plane: `I - 2 Π` with `Π` the Lorentz projector onto `P^L`.
pub fn half_turn_matrix<T: Scalar>(p: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<IsometryT<T>> {
    expect_kind(p, GeoKind::Plane)?;
    Ok(IsometryT::from_matrix_unchecked(half_turn_of(p.carrier(), ctx)?))
}

pub(crate) fn half_turn_of<T: Scalar>(carrier: &SubspaceT<T>, ctx: &Ctx<T>) -> Result<M5<T>> {
    let pr = carrier.complement().lorentz_projector(ctx)?;
    Ok(M5::identity() - pr * T::lit(2.0))
}

/// Configuration of two planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlanePairClass {
    UltraParallel,
    Tangent,
    MeetInLine,
    MeetInPoint { orthogonal: bool },
    Equal,
}

/// Lorentz-orthonormal bases of the tangent planes `T_P`, `T_Q` at a common point `p`
/// and their cross-Gram matrix.
fn tangent_data<T: Scalar>(
    p: &V5<T>,
    a: &SubspaceT<T>,
    b: &SubspaceT<T>,
    ctx: &Ctx<T>,
) -> Result<([V5<T>; 2], [V5<T>; 2], Matrix2<T>)> {
    let pl = SubspaceT::span(&[*p], ctx.tau).complement();
    let ta = a.intersect(&pl, ctx).orthonormal_basis(ctx)?;
    let tb = b.intersect(&pl, ctx).orthonormal_basis(ctx)?;
    if ta.len() != 2 || tb.len() != 2 {
        return Err(Error::NotSinglePoint);
    }
    let x = Matrix2::from_fn(|i, j| lorentz_inner(&ta[i], &tb[j]));
    Ok(([ta[0], ta[1]], [tb[0], tb[1]], x))
}

pub fn classify_plane_pair<T: Scalar>(
    p: &GeoObjectT<T>,
    q: &GeoObjectT<T>,
    ctx: &Ctx<T>,
) -> Result<PlanePairClass> {
    expect_kind(p, GeoKind::Plane)?;
    expect_kind(q, GeoKind::Plane)?;
    Ok(classify_carriers(p.carrier(), q.carrier(), ctx))
}

fn classify_carriers<T: Scalar>(a: &SubspaceT<T>, b: &SubspaceT<T>, ctx: &Ctx<T>) -> PlanePairClass {
    if a.approx_eq(b, T::lit(1e3) * ctx.tau) {
        return PlanePairClass::Equal;
    }
    let w = a.intersect(b, ctx);
    if w.dim() >= 3 {
        return PlanePairClass::Equal;
    }
    let sig = w.signature(ctx);
    if sig.minus > 0 {
        if w.dim() == 2 {
            return PlanePairClass::MeetInLine;
        }
        let orthogonal = match w.time_like_unit(ctx).map(|p| tangent_data(&p, a, b, ctx)) {
            Some(Ok((_, _, x))) => x.norm() <= ctx.membership_tol,
            _ => false,
        };
        return PlanePairClass::MeetInPoint { orthogonal };
    }
    if sig.zero > 0 {
        return PlanePairClass::Tangent;
    }
    PlanePairClass::UltraParallel
}

/// Points `x ∈ A`, `y ∈ B` realizing the distance between two ultra-parallel lines.
pub fn line_feet<T: Scalar>(a: &SubspaceT<T>, b: &SubspaceT<T>, ctx: &Ctx<T>) -> Result<(V5<T>, V5<T>)> {
    let ea = a.orthonormal_basis(ctx)?;
    let eb = b.orthonormal_basis(ctx)?;
    if ea.len() != 2 || eb.len() != 2 {
        return Err(Error::WrongKind("line feet need two lines".into()));
    }
    let eta = Matrix2::new(T::one(), T::zero(), T::zero(), -T::one());
    let g = Matrix2::from_fn(|i, j| lorentz_inner(&ea[i], &eb[j]));
    let k = eta * g * eta * g.transpose();
    let tr = k.trace();
    let half_gap = (k[(0, 0)] - k[(1, 1)]) * T::lit(0.5);
    let disc = half_gap * half_gap + k[(0, 1)] * k[(1, 0)];
    if disc < T::zero() {
        return Err(Error::NotUltraParallel);
    }
    let sq = disc.sqrt();
    let mut best: Option<(T, nalgebra::Vector2<T>)> = None;
    for lam in [tr * T::lit(0.5) + sq, tr * T::lit(0.5) - sq] {
        let c1 = nalgebra::Vector2::new(k[(0, 1)], lam - k[(0, 0)]);
        let c2 = nalgebra::Vector2::new(lam - k[(1, 1)], k[(1, 0)]);
        let u = if c1.norm() >= c2.norm() { c1 } else { c2 };
        let n = u.norm();
        if n == T::zero() {
            continue;
        }
        let u = u / n;
        let q = u[0] * u[0] - u[1] * u[1];
        if best.map(|(bq, _)| q < bq).unwrap_or(true) {
            best = Some((q, u));
        }
    }
    let (q, u) = best.ok_or(Error::NotUltraParallel)?;
    if q >= -ctx.tau {
        return Err(Error::NotUltraParallel);
    }
    let c = Ctx { tau: T::lit(1e-6), ..*ctx };
    let x = normalize(&(ea[0] * u[0] + ea[1] * u[1]), &c)?;
    let pb = b.lorentz_projector(ctx)?;
    let y = normalize(&(pb * x), &c)?;
    Ok((x, y))
}

/// Lorentz-orthonormal tangent directions at the point `x` of the object carried by `s`.
fn tangents<T: Scalar>(s: &SubspaceT<T>, x: &V5<T>, ctx: &Ctx<T>) -> Vec<V5<T>> {
    let xl = SubspaceT::span(&[*x], ctx.tau).complement();
    s.intersect(&xl, ctx).orthonormal_basis(ctx).unwrap_or_default()
}

/// Newton steps on the stationarity of `-<x, y>` over `x ∈ A`, `y ∈ B`.
fn polish_feet<T: Scalar>(
    mut x: V5<T>,
    mut y: V5<T>,
    a: &SubspaceT<T>,
    b: &SubspaceT<T>,
    ctx: &Ctx<T>,
) -> (V5<T>, V5<T>) {
    let grad = |x: &V5<T>, y: &V5<T>| {
        let (ea, eb) = (tangents(a, x, ctx), tangents(b, y, ctx));
        let g: Vec<T> = ea
            .iter()
            .map(|e| -lorentz_inner(e, y))
            .chain(eb.iter().map(|e| -lorentz_inner(x, e)))
            .collect();
        let n = g.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        (ea, eb, g, n)
    };
    let (mut ea, mut eb, mut g, mut gn) = grad(&x, &y);
    for _ in 0..6 {
        let (p, q) = (ea.len(), eb.len());
        if p == 0 || q == 0 || gn == T::zero() {
            break;
        }
        let c = -lorentz_inner(&x, &y);
        let mut h = DMatrix::<T>::zeros(p + q, p + q);
        for i in 0..p + q {
            h[(i, i)] = c;
        }
        for i in 0..p {
            for j in 0..q {
                let k = -lorentz_inner(&ea[i], &eb[j]);
                h[(i, p + j)] = k;
                h[(p + j, i)] = k;
            }
        }
        let Some(step) = h.lu().solve(&DVector::from_vec(g.clone())) else { break };
        let walk = |v: &V5<T>, e: &[V5<T>], off: usize| {
            let d = e.iter().enumerate().fold(V5::zeros(), |acc, (i, f)| acc - f * step[off + i]);
            let n = lorentz_sq(&d).max(T::zero()).sqrt();
            if n == T::zero() {
                *v
            } else {
                v * n.cosh() + d * (n.sinh() / n)
            }
        };
        let (nx, ny) = (walk(&x, &ea, 0), walk(&y, &eb, p));
        let next = grad(&nx, &ny);
        if next.3 >= gn {
            break;
        }
        (x, y) = (nx, ny);
        (ea, eb, g, gn) = next;
    }
    (x, y)
}

/// The common perpendicular of two ultra-parallel planes, with its feet on `P` and `Q`.
pub fn common_perpendicular_with_feet<T: Scalar>(
    p: &GeoObjectT<T>,
    q: &GeoObjectT<T>,
    ctx: &Ctx<T>,
) -> Result<(GeoObjectT<T>, V5<T>, V5<T>)> {
    if classify_plane_pair(p, q, ctx)? != PlanePairClass::UltraParallel {
        return Err(Error::NotUltraParallel);
    }
    let (a, b) = (p.carrier(), q.carrier());
    let w = a.intersect(b, ctx);
    let c = Ctx { tau: T::lit(1e-6), ..*ctx };
    let (x, y) = if w.dim() == 2 {
        let s = a.sum(b, ctx);
        let np = s.intersect(&a.complement(), ctx);
        let nq = s.intersect(&b.complement(), ctx);
        if np.dim() != 1 || nq.dim() != 1 {
            return Err(Error::NotUltraParallel);
        }
        let m = np.sum(&nq, ctx);
        let fx = m.intersect(a, ctx);
        let fy = m.intersect(b, ctx);
        if fx.dim() != 1 || fy.dim() != 1 {
            return Err(Error::NotUltraParallel);
        }
        (normalize(&fx.frame()[0], &c)?, normalize(&fy.frame()[0], &c)?)
    } else {
        let n = w.complement();
        line_feet(&n.intersect(a, ctx), &n.intersect(b, ctx), ctx)?
    };
    let (x, y) = polish_feet(x, y, a, b, ctx);
    // `x` and the unit direction towards `y` stay independent for nearby feet.
    let u = y + x * lorentz_inner(&x, &y);
    let n = lorentz_sq(&u);
    if !(n > T::zero()) {
        return Err(Error::NotUltraParallel);
    }
    let line = GeoObjectT::line(vec![x, u / n.sqrt()], ctx)?;
    Ok((line, x, y))
}

pub fn common_perpendicular<T: Scalar>(
    p: &GeoObjectT<T>,
    q: &GeoObjectT<T>,
    ctx: &Ctx<T>,
) -> Result<GeoObjectT<T>> {
    common_perpendicular_with_feet(p, q, ctx).map(|r| r.0)
}

/// Acute angle between two space-like lines.
fn line_angle<T: Scalar>(u: &V5<T>, v: &V5<T>) -> T {
    let c = lorentz_inner(u, v).abs() / (lorentz_sq(u) * lorentz_sq(v)).sqrt();
    c.min(T::one()).acos()
}

/// `H_P H_Q` together with the class and fixed data predicted from the configuration.
pub fn compose_half_turns<T: Scalar>(
    p: &GeoObjectT<T>,
    q: &GeoObjectT<T>,
    ctx: &Ctx<T>,
) -> Result<(IsometryT<T>, IsometryClassSummaryT<T>)> {
    let class = classify_plane_pair(p, q, ctx)?;
    let hp = half_turn_matrix(p, ctx)?;
    let hq = half_turn_matrix(q, ctx)?;
    let prod = &hp * &hq;
    let (a, b) = (p.carrier(), q.carrier());
    let mut fixed = FixedDataT::default();
    let angle_tol = ctx.membership_tol;
    let two = T::lit(2.0);
    let predicted = match class {
        PlanePairClass::Equal => return Err(Error::EqualPlanes),
        PlanePairClass::UltraParallel => {
            let (line, x, y) = common_perpendicular_with_feet(p, q, ctx)?;
            let length = two * (-lorentz_inner(&x, &y)).max(T::one()).acosh();
            let ml = line.carrier().complement();
            let np = ml.intersect(&a.complement(), ctx);
            let nq = ml.intersect(&b.complement(), ctx);
            let (Some(u), Some(v)) = (np.frame().first(), nq.frame().first()) else {
                return Err(Error::NotUltraParallel);
            };
            let phi = line_angle(u, v);
            fixed.axis = Some(line.carrier().clone());
            if two * phi <= angle_tol {
                IsometryClass::PureHyperbolic { length }
            } else {
                let r = a.intersect(b, ctx).intersect(&ml, ctx);
                fixed.twisting_plane = Some(line.carrier().sum(&r, ctx));
                fixed.twisting_hyperplane = Some(r.complement());
                IsometryClass::PureLoxodromic { length, angle: two * phi }
            }
        }
        PlanePairClass::Tangent => {
            let w = a.intersect(b, ctx);
            let v = w.null_direction(ctx).ok_or(Error::DegenerateSubspace)?;
            let vl = SubspaceT::span(&[v], ctx.tau).complement();
            let dir = |s: &SubspaceT<T>| -> Result<V5<T>> {
                let t = s.intersect(&vl, ctx);
                let vn = v / v.norm();
                let cand = t.frame().iter().map(|f| f - vn * vn.dot(f)).fold(V5::zeros(), |acc, g| {
                    if g.norm() > acc.norm() {
                        g
                    } else {
                        acc
                    }
                });
                if cand.norm() <= ctx.tau {
                    return Err(Error::DegenerateSubspace);
                }
                Ok(cand)
            };
            let (dp, dq) = (dir(a)?, dir(b)?);
            let phi = line_angle(&dp, &dq);
            fixed.fixed_ideal = Some(v);
            if two * phi <= angle_tol {
                IsometryClass::PureParabolic
            } else {
                IsometryClass::ScrewParabolic { angle: two * phi }
            }
        }
        PlanePairClass::MeetInLine => {
            let w = a.intersect(b, ctx);
            let wl = w.complement();
            let up = a.intersect(&wl, ctx);
            let uq = b.intersect(&wl, ctx);
            let theta = line_angle(&up.frame()[0], &uq.frame()[0]);
            fixed.twisting_plane = Some(w.sum(&a.sum(b, ctx).complement(), ctx));
            IsometryClass::EllipticI { angle: two * theta }
        }
        PlanePairClass::MeetInPoint { orthogonal } => {
            let w = a.intersect(b, ctx);
            let pt = w.time_like_unit(ctx).ok_or(Error::NotSinglePoint)?;
            fixed.fixed_point = Some(pt);
            let (_, _, x) = tangent_data(&pt, a, b, ctx)?;
            let sv = x.singular_values();
            let (smax, smin) = (sv.max().min(T::one()), sv.min().min(T::one()));
            let angles = (two * smin.acos(), two * smax.acos());
            if !orthogonal {
                if let Ok(pp) = principal_plane_pair(p, q, ctx) {
                    let (t1, t2) = (pp.tau1.carrier().clone(), pp.tau2.carrier().clone());
                    // tau1 carries the larger singular value, hence the smaller angle.
                    fixed.invariant_pair = Some((t2, t1));
                }
            }
            IsometryClass::EllipticII { involution: orthogonal, angles }
        }
    };
    Ok((prod, IsometryClassSummaryT { class: predicted, fixed }))
}

/// The invariant plane pair of `H_P H_Q` for planes meeting non-orthogonally in a point.
#[derive(Clone, Debug)]
pub struct PrincipalPairT<T: Scalar> {
    /// Spanned by the meeting point and the maximizing tangent directions.
    pub tau1: GeoObjectT<T>,
    pub tau2: GeoObjectT<T>,
    /// Cosines of the principal angles between the tangent planes, descending.
    pub singular_values: (T, T),
    pub gap: T,
    /// Set when the two cosines nearly coincide and the pair is ill-conditioned.
    pub near_degenerate: bool,
}

pub fn principal_plane_pair<T: Scalar>(
    p: &GeoObjectT<T>,
    q: &GeoObjectT<T>,
    ctx: &Ctx<T>,
) -> Result<PrincipalPairT<T>> {
    match classify_plane_pair(p, q, ctx)? {
        PlanePairClass::MeetInPoint { orthogonal: false } => {}
        PlanePairClass::MeetInPoint { orthogonal: true } => return Err(Error::OrthogonalPlanes),
        _ => return Err(Error::NotSinglePoint),
    }
    let (a, b) = (p.carrier(), q.carrier());
    let pt = a.intersect(b, ctx).time_like_unit(ctx).ok_or(Error::NotSinglePoint)?;
    let (ta, tb, x) = tangent_data(&pt, a, b, ctx)?;
    let svd = x.svd(true, true);
    let u = svd.u.expect("u");
    let vt = svd.v_t.expect("v_t");
    let s = svd.singular_values;
    let (i0, i1) = if s[0] >= s[1] { (0, 1) } else { (1, 0) };
    let vp = |i: usize| ta[0] * u[(0, i)] + ta[1] * u[(1, i)];
    let vq = |i: usize| tb[0] * vt[(i, 0)] + tb[1] * vt[(i, 1)];
    let tau1 = GeoObjectT::plane(vec![pt, vp(i0), vq(i0)], ctx)?;
    let tau2 = GeoObjectT::plane(vec![pt, vp(i1), vq(i1)], ctx)?;
    let gap = s[i0] - s[i1];
    Ok(PrincipalPairT {
        tau1,
        tau2,
        singular_values: (s[i0], s[i1]),
        gap,
        near_degenerate: gap < ctx.tau.sqrt(),
    })
}

/// Boost taking `e_0` (index 4) to the unit future time-like `p`.
pub fn boost_to<T: Scalar>(p: &V5<T>) -> IsometryT<T> {
    let x = Vector4::new(p[0], p[1], p[2], p[3]);
    let t = p[4];
    let mut m = M5::identity();
    let k = T::one() / (T::one() + t);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] += x[i] * x[j] * k;
        }
        m[(i, 4)] = x[i];
        m[(4, i)] = x[i];
    }
    m[(4, 4)] = t;
    IsometryT::from_matrix_unchecked(m)
}

/// Rotation of the space coordinates taking the ideal point of `v` to `∞`.
pub fn to_infinity<T: Scalar>(v: &V5<T>) -> IsometryT<T> {
    let s = Vector4::new(v[0], v[1], v[2], v[3]);
    let s = if v[4] < T::zero() { -s } else { s };
    let sn = s / s.norm();
    let e3 = Vector4::new(T::zero(), T::zero(), T::zero(), T::one());
    let w = sn - e3;
    let mut m = M5::identity();
    if w.norm() > T::lit(1e-12) {
        let h = nalgebra::Matrix4::identity() - w * w.transpose() * (T::lit(2.0) / w.norm_squared());
        m.fixed_view_mut::<4, 4>(0, 0).copy_from(&h);
        m[(0, 0)] = -m[(0, 0)];
        m[(0, 1)] = -m[(0, 1)];
        m[(0, 2)] = -m[(0, 2)];
        m[(0, 3)] = -m[(0, 3)];
    }
    IsometryT::from_matrix_unchecked(m)
}

/// Isometry taking `e_0` to the future unit time-like `p` and `(e_1, e_2, e_3, e_4)` to
/// the given Lorentz-orthonormal frame of `p^L` (completed if shorter).
pub fn frame_map<T: Scalar>(on: &[V5<T>]) -> M5<T> {
    let mut m = M5::zeros();
    for (i, v) in on.iter().enumerate() {
        m.set_column(i, v);
    }
    m
}

/// Light-like vector of the boundary point `∞`.
pub fn infinity<T: Scalar>() -> V5<T> {
    unit::<T>(3) + unit::<T>(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{classify, coordinate_rotation, sqrt2_hyperbolic, ClassTag};

    fn ctx() -> Ctx<f64> {
        Ctx::default()
    }

    fn e(i: usize) -> V5<f64> {
        unit(i)
    }

    fn plane(v: [usize; 3]) -> GeoObjectT<f64> {
        GeoObjectT::plane(v.iter().map(|&i| e(i)).collect(), &ctx()).unwrap()
    }

    #[test]
    fn boundary_roundtrip() {
        let c = ctx();
        let u = Vector3::new(0.3, -1.2, 2.0);
        let v = ideal_vector::<f64>(&BoundaryPoint::Finite(u));
        assert!(lorentz_sq::<f64>(&v).abs() < 1e-12);
        match boundary_point(&v, &c) {
            BoundaryPoint::Finite(w) => assert!((w - u).norm() < 1e-12),
            _ => panic!(),
        }
        assert_eq!(boundary_point(&infinity::<f64>(), &c), BoundaryPoint::Infinity);
        let x = upper_half_space_point(&u, 0.7);
        assert!((lorentz_sq(&x) + 1.0).abs() < 1e-12);
        let (uu, h) = to_upper_half_space(&x);
        assert!((uu - u).norm() < 1e-12 && (h - 0.7).abs() < 1e-12);
    }

    #[test]
    fn sphere_normal_is_orthogonal_to_its_points() {
        let c = ctx();
        let center = Vector3::new(1.0, 2.0, -1.0);
        let h = GeoObjectT::sphere(&center, 2.0, &c).unwrap();
        let p = BoundaryPoint::Finite(center + Vector3::new(0.0, 2.0, 0.0));
        assert!(h.carrier().contains(&ideal_vector(&p), 1e-12));
        let up = upper_half_space_point(&center, 2.0);
        assert!(h.carrier().contains(&up, 1e-12));
        let ep = GeoObjectT::euclidean_plane(&Vector3::new(1.0, 0.0, 1.0), 10.0, &c).unwrap();
        let q = BoundaryPoint::Finite(Vector3::new(5.0, 3.0, 5.0));
        assert!(ep.carrier().contains(&ideal_vector(&q), 1e-12));
        assert!(ep.carrier().contains(&infinity(), 1e-12));
    }

    #[test]
    fn reflection_examples() {
        let c = ctx();
        let h = GeoObjectT::hyperplane(vec![e(0), e(1), e(2), e(4)], &c).unwrap();
        let r = reflection_matrix(&h, &c).unwrap();
        assert!((r - M5::from_diagonal(&V5::new(1.0, 1.0, 1.0, -1.0, 1.0))).norm() < 1e-12);
        let h = GeoObjectT::hyperplane(vec![e(1), e(2), e(3), e(4)], &c).unwrap();
        let r = reflection_matrix(&h, &c).unwrap();
        assert!((r - M5::from_diagonal(&V5::new(-1.0, 1.0, 1.0, 1.0, 1.0))).norm() < 1e-12);
        assert!((r.determinant() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_turn_examples() {
        let c = ctx();
        let h = half_turn_matrix(&plane([0, 1, 4]), &c).unwrap();
        assert!((h.matrix() - M5::from_diagonal(&V5::new(1.0, 1.0, -1.0, -1.0, 1.0))).norm() < 1e-12);
        let h = half_turn_matrix(&plane([0, 2, 4]), &c).unwrap();
        assert!((h.matrix() - M5::from_diagonal(&V5::new(1.0, -1.0, 1.0, -1.0, 1.0))).norm() < 1e-12);
        assert!(matches!(
            half_turn_matrix(&GeoObjectT::point(e(4), &c).unwrap(), &c),
            Err(Error::WrongKind(_))
        ));
    }

    #[test]
    fn plane_pair_examples() {
        let c = ctx();
        assert_eq!(classify_plane_pair(&plane([0, 1, 4]), &plane([0, 2, 4]), &c).unwrap(), PlanePairClass::MeetInLine);
        assert_eq!(
            classify_plane_pair(&plane([0, 1, 4]), &plane([2, 3, 4]), &c).unwrap(),
            PlanePairClass::MeetInPoint { orthogonal: true }
        );
        let z = |x: f64| {
            let a = BoundaryPoint::Finite(Vector3::new(x, 0.0, 0.0));
            let b = BoundaryPoint::Finite(Vector3::new(x, 0.0, 1.0));
            GeoObjectT::plane_from_ideal_points(&[a, b, BoundaryPoint::Infinity], &c).unwrap()
        };
        assert_eq!(classify_plane_pair(&z(0.0), &z(1.0), &c).unwrap(), PlanePairClass::Tangent);
        let (m, s) = compose_half_turns(&z(0.0), &z(1.0), &c).unwrap();
        assert_eq!(s.tag(), ClassTag::PureParabolic);
        let want = crate::isometry::translation(&Vector3::new(-2.0, 0.0, 0.0));
        assert!((m.matrix() - want).norm() < 1e-9);
    }

    #[test]
    fn antipodal_composition() {
        let c = ctx();
        let (m, s) = compose_half_turns(&plane([0, 1, 4]), &plane([2, 3, 4]), &c).unwrap();
        assert!((m.matrix() - M5::from_diagonal(&V5::new(-1.0, -1.0, -1.0, -1.0, 1.0))).norm() < 1e-12);
        assert!(s.class.is_involution());
        assert_eq!(classify(&m, &c).unwrap().tag(), ClassTag::EllipticII);
    }

    #[test]
    fn perpendicular_of_translated_plane() {
        let c = ctx();
        let p = plane([0, 1, 4]);
        let g = IsometryT::from_matrix_unchecked(coordinate_rotation(0, 1, 0.4) * sqrt2_hyperbolic::<f64>().matrix());
        let q = p.transform(&g);
        let (line, x, y) = common_perpendicular_with_feet(&p, &q, &c).unwrap();
        let axis = SubspaceT::new(vec![e(3), e(4)], &c).unwrap();
        assert!(line.carrier().approx_eq(&axis, 1e-9));
        let len = (-lorentz_inner(&x, &y)).acosh();
        assert!((len - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-9);
    }

    #[test]
    fn meet_in_line_angle_doubles() {
        let c = ctx();
        let th = 0.3f64;
        let p = plane([0, 1, 4]);
        let q = GeoObjectT::plane(vec![e(0), e(1) * th.cos() + e(2) * th.sin(), e(4)], &c).unwrap();
        let (m, s) = compose_half_turns(&p, &q, &c).unwrap();
        match (s.class, classify(&m, &c).unwrap().class) {
            (IsometryClass::EllipticI { angle: a }, IsometryClass::EllipticI { angle: b }) => {
                assert!((a - 2.0 * th).abs() < 1e-9 && (b - 2.0 * th).abs() < 1e-9)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn principal_pair_invariant() {
        let c = ctx();
        let al = 0.7f64;
        let p = plane([0, 1, 4]);
        let q = GeoObjectT::plane(vec![e(0) * al.cos() + e(2) * al.sin(), e(3), e(4)], &c).unwrap();
        let pp = principal_plane_pair(&p, &q, &c).unwrap();
        let want = GeoObjectT::plane(vec![e(0), e(2), e(4)], &c).unwrap();
        assert!(pp.tau1.approx_eq(&want, 1e-9));
        let (m, _) = compose_half_turns(&p, &q, &c).unwrap();
        assert!(pp.tau1.carrier().is_invariant_under(m.matrix(), 1e-9));
        assert!(pp.tau2.carrier().is_invariant_under(m.matrix(), 1e-9));
        assert_eq!(
            principal_plane_pair(&plane([0, 1, 4]), &plane([2, 3, 4]), &c).unwrap_err(),
            Error::OrthogonalPlanes
        );
    }

    #[test]
    fn conjugators() {
        let c = ctx();
        let p = upper_half_space_point(&Vector3::new(0.2, 0.1, -0.5), 1.7);
        let b = boost_to(&p);
        assert!((b.apply(&e(4)) - p).norm() < 1e-12);
        assert!(crate::isometry::lorentz_residual(b.matrix()) < 1e-12);
        let v = ideal_vector::<f64>(&BoundaryPoint::Finite(Vector3::new(1.0, 2.0, 3.0)));
        let g = to_infinity::<f64>(&v);
        assert!(crate::lorentz::same_ray(&g.apply(&v), &infinity(), 1e-12));
        assert!((g.matrix().determinant() - 1.0).abs() < 1e-12);
        let _ = c;
    }
}
