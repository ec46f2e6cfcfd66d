//! Permuted, invariant, dual and twisting pencils, held as subspaces of normals or of
//! common carriers.
//!
//! | owner               | permuted (normals) | invariant (normals) | dual (contains) | twisting (normals) |
//! |---------------------|--------------------|---------------------|-----------------|--------------------|
//! | type-I elliptic, P  | `P^L`              | `P`                 | `P^L`           | none               |
//! | hyperbolic, axis L  | `L`                | `L^L`               | `L`             | loxodromic: `τ^L`  |
//! | parabolic, (v, d)   | `span{v,d}`        | `{v,d}^L`           | `span{v,d}`     | screw: `W^L`       |

use serde::{Deserialize, Serialize};

use crate::geometry::{GeoKind, GeoObjectT};
use crate::isometry::{IsometryClass, IsometryClassSummaryT};
use crate::lorentz::{lorentz_inner, SubspaceT, V5};
use crate::sampling::{random_point, random_unit_in, SampleRng};
use crate::{Ctx, Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PencilKind {
    Permuted,
    Invariant,
    Dual,
    Twisting,
}

#[derive(Clone, Debug)]
pub struct PencilT<T: Scalar> {
    kind: PencilKind,
    owner: IsometryClassSummaryT<T>,
    /// Normals of the member hyperplanes, or the common subspace of dual members.
    space: SubspaceT<T>,
    /// Points through which no unique permuted element exists (beyond those where the
    /// normal degenerates).
    locus: SubspaceT<T>,
}

/// `span{v, d}` of a parabolic owner.
fn parabolic_span<T: Scalar>(s: &IsometryClassSummaryT<T>, ctx: &Ctx<T>) -> Option<SubspaceT<T>> {
    let v = s.fixed.fixed_ideal?;
    let d = s.fixed.direction?;
    Some(SubspaceT::span(&[v, d], ctx.tau))
}

impl<T: Scalar> PencilT<T> {
    pub fn new(kind: PencilKind, owner: &IsometryClassSummaryT<T>, ctx: &Ctx<T>) -> Result<Self> {
        let wrong = || Error::WrongClass(format!("{:?} has no {kind:?} pencil", owner.tag()));
        let f = &owner.fixed;
        let (space, locus) = match (&owner.class, kind) {
            (IsometryClass::EllipticI { .. }, PencilKind::Twisting) => return Err(wrong()),
            (IsometryClass::EllipticI { .. }, _) => {
                let p = f.twisting_plane.clone().ok_or_else(wrong)?;
                let s = match kind {
                    PencilKind::Invariant => p.clone(),
                    _ => p.complement(),
                };
                (s, p)
            }
            (IsometryClass::PureHyperbolic { .. } | IsometryClass::PureLoxodromic { .. }, _) => {
                let l = f.axis.clone().ok_or_else(wrong)?;
                let s = match kind {
                    PencilKind::Permuted | PencilKind::Dual => l.clone(),
                    PencilKind::Invariant => l.complement(),
                    PencilKind::Twisting => match &f.twisting_plane {
                        Some(t) => t.complement(),
                        None => return Err(wrong()),
                    },
                };
                // Every point of the axis has a unique orthogonal hyperplane; only its
                // endpoints are degenerate, and those fail the space-like normal check.
                (s, SubspaceT::zero())
            }
            (IsometryClass::PureParabolic | IsometryClass::ScrewParabolic { .. }, _) => {
                let vd = parabolic_span(owner, ctx).ok_or_else(wrong)?;
                let v = SubspaceT::span(&[f.fixed_ideal.ok_or_else(wrong)?], ctx.tau);
                let s = match kind {
                    PencilKind::Permuted | PencilKind::Dual => vd,
                    PencilKind::Invariant => vd.complement(),
                    PencilKind::Twisting => match &f.twisting_plane {
                        Some(w) if matches!(owner.class, IsometryClass::ScrewParabolic { .. }) => w.complement(),
                        _ => return Err(wrong()),
                    },
                };
                (s, v)
            }
            _ => return Err(wrong()),
        };
        Ok(PencilT { kind, owner: owner.clone(), space, locus })
    }

    pub fn kind(&self) -> PencilKind {
        self.kind
    }

    pub fn owner(&self) -> &IsometryClassSummaryT<T> {
        &self.owner
    }

    /// Normal space (hyperplane pencils) or common subspace (dual pencils).
    pub fn space(&self) -> &SubspaceT<T> {
        &self.space
    }

    fn element_kind(&self) -> GeoKind {
        match self.kind {
            PencilKind::Dual => GeoKind::Plane,
            _ => GeoKind::Hyperplane,
        }
    }

    /// Membership of a hyperplane (or, for dual pencils, a plane).
    pub fn contains(&self, g: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<bool> {
        if g.kind() != self.element_kind() {
            return Err(Error::KindMismatch(format!("{:?} pencil holds {:?}, got {:?}", self.kind, self.element_kind(), g.kind())));
        }
        Ok(match self.kind {
            PencilKind::Dual => g.carrier().contains_subspace(&self.space, ctx.membership_tol),
            _ => self.space.contains(&g.normal(ctx)?, ctx.membership_tol),
        })
    }

    /// The element through a point or ideal point, with a flag telling whether it is unique.
    ///
    /// Permuted elements are unique away from the owner's twisting plane, fixed ideal point
    /// and axis endpoints.
    /// Invariant and twisting elements form a 2-parameter family through each point; the
    /// returned one has a normal with vanishing time coordinate when that is possible.
    pub fn element_through(&self, x: &GeoObjectT<T>, ctx: &Ctx<T>) -> Result<(GeoObjectT<T>, bool)> {
        if !matches!(x.kind(), GeoKind::Point | GeoKind::IdealPoint) {
            return Err(Error::KindMismatch(format!("expected a point, got {:?}", x.kind())));
        }
        let xv = x.carrier().frame()[0];
        match self.kind {
            PencilKind::Permuted => {
                if self.locus.contains(&xv, ctx.membership_tol) {
                    return Err(Error::NotUnique);
                }
                let fr = self.space.frame();
                let (c0, c1) = (lorentz_inner(&fr[0], &xv), lorentz_inner(&fr[1], &xv));
                if c0.hypot(c1) <= ctx.membership_tol * xv.norm() {
                    return Err(Error::NotUnique);
                }
                let n = fr[1] * c0 - fr[0] * c1;
                GeoObjectT::hyperplane_from_normal(&n, ctx).map(|h| (h, true)).map_err(|_| Error::NotUnique)
            }
            PencilKind::Invariant | PencilKind::Twisting => {
                let xl = SubspaceT::span(&[xv], ctx.tau).complement();
                let sols = self.space.intersect(&xl, ctx);
                let e4 = SubspaceT::span(&[crate::lorentz::unit::<T>(4)], ctx.tau).complement();
                let flat = sols.intersect(&e4, ctx);
                let cands: Vec<V5<T>> = flat.frame().iter().chain(sols.frame().iter()).copied().collect();
                for n in cands {
                    if let Ok(h) = GeoObjectT::hyperplane_from_normal(&n, ctx) {
                        return Ok((h, false));
                    }
                }
                Err(Error::NotUnique)
            }
            PencilKind::Dual => {
                if self.space.contains(&xv, ctx.membership_tol) {
                    return Err(Error::NotUnique);
                }
                let s = self.space.sum(x.carrier(), ctx);
                GeoObjectT::new(GeoKind::Plane, s, ctx).map(|p| (p, true)).map_err(|_| Error::NotUnique)
            }
        }
    }

    /// `n` random members.
    pub fn sample(&self, n: usize, rng: &mut SampleRng, ctx: &Ctx<T>) -> Vec<GeoObjectT<T>> {
        let mut out = Vec::with_capacity(n);
        let mut guard = 0;
        while out.len() < n && guard < 20 * n + 20 {
            guard += 1;
            let g = match self.kind {
                PencilKind::Dual => {
                    let x = random_point::<T>(rng, 1.0);
                    GeoObjectT::new(GeoKind::Plane, self.space.sum(&SubspaceT::span(&[x], ctx.tau), ctx), ctx)
                }
                _ => match random_unit_in(&self.space, rng, 1.0, ctx) {
                    Some(nv) => GeoObjectT::hyperplane_from_normal(&nv, ctx),
                    None => continue,
                },
            };
            if let Ok(g) = g {
                out.push(g);
            }
        }
        out
    }
}
