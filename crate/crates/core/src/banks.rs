//! Half-turn banks: the planes `k` about which an isometry factors as `H_{k1} H_k = H_k H_{k2}`.
//!
//! Apart from the type-II elliptic special cases, a bank is `{ {n_s, n_t}^L }` with unit
//! normals `n_s ∈ A` and `n_t ∈ B` for a pair of mutually Lorentz-orthogonal subspaces:
//!
//! | class            | A            | B          | factor parts |
//! |------------------|--------------|------------|--------------|
//! | type-I elliptic  | `P^L`        | `P`        | `(M, I)`     |
//! | pure hyperbolic  | `L`          | `L^L`      | `(M, I)`     |
//! | pure parabolic   | `span{v,d}`  | `{v,d}^L`  | `(M, I)`     |
//! | loxodromic       | `L`          | `τ^L`      | `(T, R)`     |
//! | screw parabolic  | `span{v,d}`  | `W^L`      | `(T, R)`     |
//! | type-II elliptic | `E_1`        | `E_2`      | `(ρ1, ρ2)`   |

use crate::geometry::{half_turn_of, reflection_from_normal, GeoKind, GeoObjectT};
use crate::isometry::{
    classify, decompose, decompose_type2_with, is_isoclinic, type2_planes, IsometryClass,
    IsometryClassSummaryT, IsometryT,
};
use crate::lorentz::{lorentz_inner, normalize, smallest_singular, M5, SubspaceT, V5};
use crate::sampling::{random_plane, random_space_like_pair, random_unit_in, rng, SampleRng};
use crate::{Ctx, Error, Result, Scalar};

/// Hyperplanes `s`, `t` with `plane = s ∩ t`.
#[derive(Clone, Debug)]
pub struct PlaneWitnessT<T: Scalar> {
    pub s: GeoObjectT<T>,
    pub t: GeoObjectT<T>,
}

#[derive(Clone, Debug)]
pub struct BankElementT<T: Scalar> {
    pub plane: GeoObjectT<T>,
    pub witness: Option<PlaneWitnessT<T>>,
}

/// Output of [`factor_about`].
#[derive(Clone, Debug)]
pub struct FactorT<T: Scalar> {
    pub k1: GeoObjectT<T>,
    pub k2: GeoObjectT<T>,
    /// `|H_{k1} H_k - M|_F` and `|H_k H_{k2} - M|_F`.
    pub residuals: (T, T),
}

#[derive(Clone, Debug)]
enum Shape<T: Scalar> {
    Identity,
    Involution { p: V5<T> },
    Isoclinic { p: V5<T>, jc: M5<T> },
    Pair { a: SubspaceT<T>, b: SubspaceT<T>, parts: Option<(M5<T>, M5<T>)> },
}

/// An isometry with its bank description precomputed.
#[derive(Clone, Debug)]
pub struct BankT<T: Scalar> {
    iso: IsometryT<T>,
    summary: IsometryClassSummaryT<T>,
    shape: Shape<T>,
}

fn parabolic_span<T: Scalar>(s: &IsometryClassSummaryT<T>, ctx: &Ctx<T>) -> SubspaceT<T> {
    let v = s.fixed.fixed_ideal.expect("fixed ideal point");
    let d = s.fixed.direction.expect("direction");
    SubspaceT::span(&[v, d], ctx.tau)
}

impl<T: Scalar> BankT<T> {
    pub fn new(iso: &IsometryT<T>, ctx: &Ctx<T>) -> Result<Self> {
        let summary = classify(iso, ctx)?;
        let m = *iso.matrix();
        let id = M5::<T>::identity();
        let f = &summary.fixed;
        let shape = match summary.class {
            IsometryClass::Identity => Shape::Identity,
            IsometryClass::EllipticII { involution: true, .. } => {
                Shape::Involution { p: f.fixed_point.expect("fixed point") }
            }
            IsometryClass::EllipticII { angles: (big, small), .. } => {
                let p = f.fixed_point.expect("fixed point");
                if is_isoclinic(big, small) {
                    let jc = (m - id * big.cos()) / big.sin();
                    Shape::Isoclinic { p, jc }
                } else {
                    let (e1, e2) = type2_planes(&m, p, big, small, None, ctx)?;
                    let (r1, r2) = decompose_type2_with(iso, None, ctx)?;
                    Shape::Pair { a: e1, b: e2, parts: Some((*r1.matrix(), *r2.matrix())) }
                }
            }
            IsometryClass::EllipticI { .. } => {
                let p = f.twisting_plane.clone().expect("twisting plane");
                Shape::Pair { a: p.complement(), b: p, parts: None }
            }
            IsometryClass::PureHyperbolic { .. } => {
                let l = f.axis.clone().expect("axis");
                Shape::Pair { a: l.clone(), b: l.complement(), parts: None }
            }
            IsometryClass::PureParabolic => {
                let vd = parabolic_span(&summary, ctx);
                Shape::Pair { a: vd.clone(), b: vd.complement(), parts: None }
            }
            IsometryClass::PureLoxodromic { .. } => {
                let l = f.axis.clone().expect("axis");
                let tau = f.twisting_plane.clone().expect("twisting plane");
                let (t, r) = decompose(iso, ctx)?;
                Shape::Pair { a: l, b: tau.complement(), parts: Some((*t.matrix(), *r.matrix())) }
            }
            IsometryClass::ScrewParabolic { .. } => {
                let vd = parabolic_span(&summary, ctx);
                let w = f.twisting_plane.clone().expect("twisting plane");
                let (t, r) = decompose(iso, ctx)?;
                Shape::Pair { a: vd, b: w.complement(), parts: Some((*t.matrix(), *r.matrix())) }
            }
        };
        Ok(BankT { iso: iso.clone(), summary, shape })
    }

    pub fn isometry(&self) -> &IsometryT<T> {
        &self.iso
    }

    pub fn summary(&self) -> &IsometryClassSummaryT<T> {
        &self.summary
    }

    /// The normal spaces `(A, B)` when the bank has that form.
    pub fn normal_spaces(&self) -> Option<(&SubspaceT<T>, &SubspaceT<T>)> {
        match &self.shape {
            Shape::Pair { a, b, .. } => Some((a, b)),
            _ => None,
        }
    }

    /// Largest membership defect of a plane, as a sine; zero means exact membership.
    pub fn defect(&self, k: &SubspaceT<T>, ctx: &Ctx<T>) -> T {
        let kl = k.complement();
        match &self.shape {
            Shape::Identity => T::zero(),
            Shape::Involution { p } => sine_off(k, p),
            Shape::Isoclinic { p, jc } => {
                let on = kl.frame();
                let pr = self.isoclinic_form(on, jc);
                sine_off(k, p).max(pr)
            }
            Shape::Pair { a, b, .. } => {
                let da = a.closest_direction(&kl).map(|x| x.0).unwrap_or(T::one());
                let db = b.closest_direction(&kl).map(|x| x.0).unwrap_or(T::one());
                let _ = ctx;
                da.max(db)
            }
        }
    }

    fn isoclinic_form(&self, on: &[V5<T>], jc: &M5<T>) -> T {
        if on.len() != 2 {
            return T::one();
        }
        let (a, b) = (on[0], on[1]);
        lorentz_inner(&b, &(jc * a)).abs() / (a.norm() * b.norm())
    }

    pub fn contains(&self, k: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<bool> {
        if k.kind() != GeoKind::Plane {
            return Err(Error::WrongKind(format!("banks hold planes, got {:?}", k.kind())));
        }
        Ok(self.defect(k.carrier(), ctx) <= ctx.membership_tol)
    }

    /// Normals `(n_s, n_t)` with `k^L = span{n_s, n_t}`, `n_s ∈ A`, `n_t ∈ B`.
    fn witness_normals(&self, k: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<(V5<T>, V5<T>)> {
        let kl = k.complement();
        let (a, _) = self.split_spaces(k, ctx)?;
        let (_, x) = a.closest_direction(&kl)?;
        let rest = kl.intersect(&SubspaceT::span(&[x], ctx.tau).complement(), ctx);
        let y = *rest.frame().first()?;
        let c = Ctx { tau: T::lit(1e-6), ..*ctx };
        Some((normalize(&x, &c).ok()?, normalize(&y, &c).ok()?))
    }

    /// `(A, B)` adapted to `k`; the isoclinic case picks the plane pair through `k`.
    fn split_spaces(&self, k: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<(SubspaceT<T>, SubspaceT<T>)> {
        match &self.shape {
            Shape::Pair { a, b, .. } => Some((a.clone(), b.clone())),
            Shape::Isoclinic { p, .. } => {
                let u = *k.complement().frame().first()?;
                let big = match self.summary.class {
                    IsometryClass::EllipticII { angles, .. } => angles.0,
                    _ => return None,
                };
                type2_planes(self.iso.matrix(), *p, big, big, Some(u), ctx).ok()
            }
            _ => None,
        }
    }

    pub fn witness(&self, k: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<Option<PlaneWitnessT<T>>> {
        if !self.contains(k, ctx)? {
            return Ok(None);
        }
        let Some((ns, nt)) = self.witness_normals(k.carrier(), ctx) else { return Ok(None) };
        Ok(Some(PlaneWitnessT {
            s: GeoObjectT::hyperplane_from_normal(&ns, ctx)?,
            t: GeoObjectT::hyperplane_from_normal(&nt, ctx)?,
        }))
    }

    /// Factor parts `(γ_A, γ_B)` with `M = γ_A γ_B`, adapted to `k` in the isoclinic case.
    fn parts(&self, k: &SubspaceT<T>, ctx: &Ctx<T>) -> Result<(M5<T>, M5<T>)> {
        let m = *self.iso.matrix();
        match &self.shape {
            Shape::Pair { parts: Some(p), .. } => Ok(*p),
            Shape::Pair { parts: None, .. } => Ok((m, M5::identity())),
            Shape::Isoclinic { .. } => {
                let u = k.complement().frame()[0];
                let (r1, r2) = decompose_type2_with(&self.iso, Some(u), ctx)?;
                Ok((*r1.matrix(), *r2.matrix()))
            }
            _ => Err(Error::WrongClass("no factor parts".into())),
        }
    }

    /// `k1`, `k2` with `H_{k1} H_k = M = H_k H_{k2}`.
    pub fn factor_about(&self, k: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<FactorT<T>> {
        if !self.contains(k, ctx)? {
            return Err(Error::NotInBank);
        }
        let m = *self.iso.matrix();
        let kc = k.carrier();
        let (k1, k2) = match &self.shape {
            Shape::Identity => (k.clone(), k.clone()),
            Shape::Involution { p } => {
                let q = SubspaceT::span(&[*p], ctx.tau).sum(&kc.complement(), ctx);
                let q = GeoObjectT::new(GeoKind::Plane, q, ctx)?;
                (q.clone(), q)
            }
            _ => {
                let (ns, nt) = self.witness_normals(kc, ctx).ok_or(Error::NotInBank)?;
                let (ga, gb) = self.parts(kc, ctx)?;
                let (rs, rt) = (reflection_from_normal(&ns), reflection_from_normal(&nt));
                let hk = half_turn_of(kc, ctx)?;
                let k1 = plane_of_reflections(&(ga * rs), &(gb * rt), ctx)?;
                let k2 = plane_of_reflections(&(rs * ga), &(rt * gb), ctx)?;
                (snap(k1, &(m * hk), ctx), snap(k2, &(hk * m), ctx))
            }
        };
        let hk = half_turn_of(kc, ctx)?;
        let h1 = half_turn_of(k1.carrier(), ctx)?;
        let h2 = half_turn_of(k2.carrier(), ctx)?;
        let residuals = ((h1 * hk - m).norm(), (hk * h2 - m).norm());
        Ok(FactorT { k1, k2, residuals })
    }

    /// `n` bank elements drawn from the bank's natural parameters.
    pub fn sample(&self, n: usize, seed: u64, ctx: &Ctx<T>) -> Vec<BankElementT<T>> {
        let mut r = rng(seed);
        self.sample_with(n, &mut r, ctx)
    }

    pub fn sample_with(&self, n: usize, r: &mut SampleRng, ctx: &Ctx<T>) -> Vec<BankElementT<T>> {
        let mut out = Vec::with_capacity(n);
        let mut guard = 0;
        while out.len() < n && guard < 10 * n + 10 {
            guard += 1;
            if let Some(el) = self.sample_one(r, ctx) {
                out.push(el);
            }
        }
        out
    }

    fn sample_one(&self, r: &mut SampleRng, ctx: &Ctx<T>) -> Option<BankElementT<T>> {
        let spread = 1.0;
        let normals = match &self.shape {
            Shape::Identity => {
                let plane = random_plane::<T>(r, spread, ctx).ok()?;
                return Some(BankElementT { plane, witness: None });
            }
            Shape::Involution { p } => {
                let pl = SubspaceT::span(&[*p], ctx.tau).complement();
                random_space_like_pair(&pl, r)?
            }
            Shape::Isoclinic { p, jc } => {
                let pl = SubspaceT::span(&[*p], ctx.tau).complement();
                let (a, _) = random_space_like_pair(&pl, r)?;
                let e1 = SubspaceT::span(&[a, jc * a], ctx.tau);
                let e2 = pl.intersect(&e1.complement(), ctx);
                let b = random_unit_in(&e2, r, spread, ctx)?;
                (a, b)
            }
            Shape::Pair { a, b, .. } => (random_unit_in(a, r, spread, ctx)?, random_unit_in(b, r, spread, ctx)?),
        };
        let (ns, nt) = normals;
        let k = SubspaceT::span(&[ns, nt], ctx.tau).complement();
        let plane = GeoObjectT::new(GeoKind::Plane, k, ctx).ok()?;
        let witness = match self.shape {
            Shape::Pair { .. } | Shape::Isoclinic { .. } => Some(PlaneWitnessT {
                s: GeoObjectT::hyperplane_from_normal(&ns, ctx).ok()?,
                t: GeoObjectT::hyperplane_from_normal(&nt, ctx).ok()?,
            }),
            _ => None,
        };
        Some(BankElementT { plane, witness })
    }
}

/// Coordinates on a bank used by the numerical search.
#[derive(Clone, Debug)]
pub(crate) enum Chart<T: Scalar> {
    /// Every plane.
    Everything,
    /// `W = span{x, y}`, `x ∈ A`, `y ∈ B`.
    Pair(SubspaceT<T>, SubspaceT<T>),
    /// Any 2-dim `W` inside the space.
    Inside(SubspaceT<T>),
    /// `W = span{x, J x}` with `x` in the space.
    Complex(SubspaceT<T>, M5<T>),
}

impl<T: Scalar> BankT<T> {
    pub(crate) fn chart(&self, ctx: &Ctx<T>) -> Chart<T> {
        match &self.shape {
            Shape::Identity => Chart::Everything,
            Shape::Involution { p } => Chart::Inside(SubspaceT::span(&[*p], ctx.tau).complement()),
            Shape::Isoclinic { p, jc } => Chart::Complex(SubspaceT::span(&[*p], ctx.tau).complement(), *jc),
            Shape::Pair { a, b, .. } => Chart::Pair(a.clone(), b.clone()),
        }
    }
}

/// Sine of the angle between `p` and the subspace `k`.
fn sine_off<T: Scalar>(k: &SubspaceT<T>, p: &V5<T>) -> T {
    let pp = k.projector() * p;
    (p - pp).norm() / p.norm()
}

/// Replaces `k` by the fixed set of the half-turn `h` when that fits `h` better.
///
/// The reflection route loses accuracy when the normals are long; the fixed set of
/// `M H_k` (resp. `H_k M`) is the same plane computed directly.
fn snap<T: Scalar>(k: GeoObjectT<T>, h: &M5<T>, ctx: &Ctx<T>) -> GeoObjectT<T> {
    let id = M5::<T>::identity();
    let fit = |c: &SubspaceT<T>| half_turn_of(c, ctx).map(|hc| (hc - h).norm()).unwrap_or(T::max_value().unwrap_or(T::one()));
    let cand = SubspaceT::span(&smallest_singular(&(h - id), 3), ctx.tau);
    if fit(&cand) < fit(k.carrier()) {
        if let Ok(g) = GeoObjectT::new(GeoKind::Plane, cand, ctx) {
            return g;
        }
    }
    k
}

/// The plane `s ∩ t` for reflections `R_s`, `R_t`.
fn plane_of_reflections<T: Scalar>(rs: &M5<T>, rt: &M5<T>, ctx: &Ctx<T>) -> Result<GeoObjectT<T>> {
    let id = M5::<T>::identity();
    let ns = smallest_singular(&(rs + id), 1)[0];
    let nt = smallest_singular(&(rt + id), 1)[0];
    let k = SubspaceT::span(&[ns, nt], ctx.tau).complement();
    GeoObjectT::new(GeoKind::Plane, k, ctx)
}

pub fn bank_contains<T: Scalar>(m: &IsometryT<T>, k: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<bool> {
    BankT::new(m, ctx)?.contains(k, ctx)
}

pub fn factor_about<T: Scalar>(m: &IsometryT<T>, k: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<FactorT<T>> {
    BankT::new(m, ctx)?.factor_about(k, ctx)
}

pub fn bank_sample<T: Scalar>(m: &IsometryT<T>, n: usize, seed: u64, ctx: &Ctx<T>) -> Result<Vec<GeoObjectT<T>>> {
    Ok(BankT::new(m, ctx)?.sample(n, seed, ctx).into_iter().map(|e| e.plane).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::half_turn_matrix;
    use crate::isometry::{coordinate_rotation, sqrt2_hyperbolic, ClassTag};
    use crate::lorentz::unit;
    use crate::sampling::canonical::{random_involution, random_isoclinic, random_of_class};

    fn ctx() -> Ctx<f64> {
        Ctx::default()
    }

    fn plane(v: [usize; 3]) -> GeoObjectT<f64> {
        GeoObjectT::plane(v.iter().map(|&i| unit(i)).collect(), &ctx()).unwrap()
    }

    #[test]
    fn sqrt2_factor_example() {
        let c = ctx();
        let d = sqrt2_hyperbolic::<f64>();
        let k = plane([0, 1, 4]);
        assert!(bank_contains(&d, &k, &c).unwrap());
        let f = factor_about(&d, &k, &c).unwrap();
        let hk = half_turn_matrix(&k, &c).unwrap();
        let dh = d.matrix() * hk.matrix();
        assert!((dh * dh - M5::identity()).norm() < 1e-12);
        let fixed = SubspaceT::span(&crate::lorentz::nullspace(&(dh - M5::identity()), 1e-9), 1e-9);
        assert!(f.k1.carrier().approx_eq(&fixed, 1e-9));
        assert!(f.residuals.0 < 1e-9 && f.residuals.1 < 1e-9);
        assert!(!bank_contains(&d, &plane([0, 3, 4]), &c).unwrap());
    }

    #[test]
    fn identity_and_involution_examples() {
        let c = ctx();
        let k = plane([0, 1, 4]);
        let f = factor_about(&IsometryT::identity(), &k, &c).unwrap();
        assert!(f.k1.approx_eq(&k, 1e-12) && f.k2.approx_eq(&k, 1e-12));
        let anti = IsometryT::from_matrix_unchecked(M5::from_diagonal(&V5::new(-1.0, -1.0, -1.0, -1.0, 1.0)));
        let f = factor_about(&anti, &k, &c).unwrap();
        let q = plane([2, 3, 4]);
        assert!(f.k1.approx_eq(&q, 1e-9) && f.k2.approx_eq(&q, 1e-9));
        let s = bank_sample(&anti, 5, 1, &c).unwrap();
        assert_eq!(s.len(), 5);
        for p in s {
            assert!(p.carrier().contains(&unit(4), 1e-9));
        }
    }

    #[test]
    fn loxodromic_bank_needs_both_conditions() {
        let c = ctx();
        let m = IsometryT::from_matrix_unchecked(coordinate_rotation(0, 1, 1.0) * sqrt2_hyperbolic::<f64>().matrix());
        // Orthogonal to the axis at e_0 but not containing the rotation axis e_3.
        assert!(!bank_contains(&m, &plane([0, 1, 4]), &c).unwrap());
        assert!(bank_contains(&m, &plane([0, 2, 4]), &c).unwrap());
    }

    #[test]
    fn factor_round_trip_all_classes() {
        let c = ctx();
        let mut r = crate::sampling::rng(5);
        let mut isos: Vec<IsometryT<f64>> = [
            ClassTag::EllipticI,
            ClassTag::EllipticII,
            ClassTag::PureHyperbolic,
            ClassTag::PureLoxodromic,
            ClassTag::PureParabolic,
            ClassTag::ScrewParabolic,
        ]
        .iter()
        .map(|&t| random_of_class(t, &mut r))
        .collect();
        isos.push(random_isoclinic(&mut r));
        isos.push(random_involution(&mut r));
        for m in isos {
            let bank = BankT::new(&m, &c).unwrap();
            for el in bank.sample(10, 9, &c) {
                assert!(bank.contains(&el.plane, &c).unwrap(), "{:?}", bank.summary().tag());
                let f = bank.factor_about(&el.plane, &c).unwrap();
                assert!(f.residuals.0 < 1e-9 && f.residuals.1 < 1e-9, "{:?} {:?}", bank.summary().tag(), f.residuals);
                assert!(bank.contains(&f.k1, &c).unwrap() && bank.contains(&f.k2, &c).unwrap());
            }
        }
    }
}
