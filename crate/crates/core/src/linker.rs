//! Linked pairs: planes `β` lying in the half-turn banks of two isometries at once, so
//! that `A = H_α H_β` and `B = H_β H_γ`.
//!
//! A bank element is `β = W^L` for a 2-dim space-like `W` meeting both normal spaces of
//! the bank. Every constructive condition handled here names a hyperplane `h ⊃ β`; its
//! normal `n` lies in `W`, and the rest of `W` follows by linear algebra ([`complete`]).
//! Candidates are accepted only after [`verify_link`]-style certification.

use nalgebra::{DMatrix, DVector, Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::banks::{BankT, Chart};
use crate::geometry::{
    boundary_point, half_turn_of, line_feet, reflection_matrix, to_infinity, BoundaryPoint, GeoKind, GeoObjectT,
};
use crate::isometry::{from_boundary_similarity, rot_z, translation, IsometryClass, IsometryT};
use crate::lorentz::{jmat, lorentz_inner, lorentz_sq, nullspace, null_pair, same_ray, unit, M5, SubspaceT, V5};
use crate::{Ctx, Error, Result, Scalar};

/// Planes with `A = H_α H_β` and `B = H_β H_γ`.
#[derive(Clone, Debug)]
pub struct LinkCertificateT<T: Scalar> {
    pub alpha: GeoObjectT<T>,
    pub beta: GeoObjectT<T>,
    pub gamma: GeoObjectT<T>,
    /// `|H_α H_β - A|_F` and `|H_β H_γ - B|_F`.
    pub residuals: (T, T),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkStatus {
    Linked,
    NotLinked,
    Undetermined,
}

/// A near miss reported by an undetermined search.
#[derive(Clone, Debug)]
pub struct CandidateT<T: Scalar> {
    pub plane: GeoObjectT<T>,
    /// Larger of the two bank defects (sines).
    pub defect: T,
}

#[derive(Clone, Debug)]
pub enum LinkOutcomeT<T: Scalar> {
    Linked { certificate: LinkCertificateT<T>, condition: String },
    NotLinked { reason: String },
    Undetermined { closest: Vec<CandidateT<T>> },
}

impl<T: Scalar> LinkOutcomeT<T> {
    pub fn status(&self) -> LinkStatus {
        match self {
            LinkOutcomeT::Linked { .. } => LinkStatus::Linked,
            LinkOutcomeT::NotLinked { .. } => LinkStatus::NotLinked,
            LinkOutcomeT::Undetermined { .. } => LinkStatus::Undetermined,
        }
    }

    pub fn certificate(&self) -> Option<&LinkCertificateT<T>> {
        match self {
            LinkOutcomeT::Linked { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn condition(&self) -> Option<&str> {
        match self {
            LinkOutcomeT::Linked { condition, .. } => Some(condition),
            _ => None,
        }
    }
}

/// Parameters of the fallback bank search.
#[derive(Clone, Copy, Debug)]
pub struct LinkOptions {
    pub seed: u64,
    /// Bank samples drawn per side.
    pub samples: usize,
    /// Best samples per side handed to the local refinement.
    pub starts: usize,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions { seed: 0, samples: 10_000, starts: 6 }
    }
}

/// Largest factorization residual accepted in a certificate.
pub fn certificate_tol<T: Scalar>(ctx: &Ctx<T>) -> T {
    ctx.tau
}

/// Outcome of [`verify_link`].
#[derive(Clone, Debug)]
pub struct VerifyReportT<T: Scalar> {
    pub residuals: (T, T),
    pub beta_in_a: bool,
    pub beta_in_b: bool,
    pub passed: bool,
    pub detail: String,
}

/// Recomputes both products and both bank memberships.
pub fn verify_link<T: Scalar>(
    a: &IsometryT<T>,
    b: &IsometryT<T>,
    cert: &LinkCertificateT<T>,
    ctx: &Ctx<T>,
) -> VerifyReportT<T> {
    let fail = |detail: String| VerifyReportT {
        residuals: (T::max_value().unwrap_or(T::one()), T::max_value().unwrap_or(T::one())),
        beta_in_a: false,
        beta_in_b: false,
        passed: false,
        detail,
    };
    let hs: Result<Vec<M5<T>>> =
        [&cert.alpha, &cert.beta, &cert.gamma].iter().map(|p| half_turn_of(p.carrier(), ctx)).collect();
    let hs = match hs {
        Ok(h) => h,
        Err(e) => return fail(format!("bad plane: {e}")),
    };
    let r1 = (hs[0] * hs[1] - a.matrix()).norm();
    let r2 = (hs[1] * hs[2] - b.matrix()).norm();
    let in_a = BankT::new(a, ctx).and_then(|k| k.contains(&cert.beta, ctx)).unwrap_or(false);
    let in_b = BankT::new(b, ctx).and_then(|k| k.contains(&cert.beta, ctx)).unwrap_or(false);
    let tol = certificate_tol(ctx);
    let mut detail = Vec::new();
    if !(r1 < tol) {
        detail.push(format!("|H_a H_b - A| = {r1}"));
    }
    if !(r2 < tol) {
        detail.push(format!("|H_b H_g - B| = {r2}"));
    }
    if !in_a {
        detail.push("beta not in bank(A)".to_string());
    }
    if !in_b {
        detail.push("beta not in bank(B)".to_string());
    }
    VerifyReportT {
        residuals: (r1, r2),
        beta_in_a: in_a,
        beta_in_b: in_b,
        passed: detail.is_empty(),
        detail: if detail.is_empty() { "ok".into() } else { detail.join("; ") },
    }
}

/// Certificate for `(B, A)` built on the same `β`.
pub fn reverse_certificate<T: Scalar>(
    a: &IsometryT<T>,
    b: &IsometryT<T>,
    cert: &LinkCertificateT<T>,
    ctx: &Ctx<T>,
) -> Result<LinkCertificateT<T>> {
    certify(&BankT::new(b, ctx)?, &BankT::new(a, ctx)?, cert.beta.carrier(), ctx).ok_or(Error::NotInBank)
}

fn certify<T: Scalar>(
    ba: &BankT<T>,
    bb: &BankT<T>,
    beta: &SubspaceT<T>,
    ctx: &Ctx<T>,
) -> Option<LinkCertificateT<T>> {
    let beta = GeoObjectT::new(GeoKind::Plane, beta.clone(), ctx).ok()?;
    let fa = ba.factor_about(&beta, ctx).ok()?;
    let fb = bb.factor_about(&beta, ctx).ok()?;
    let residuals = (fa.residuals.0, fb.residuals.1);
    let tol = certificate_tol(ctx);
    (residuals.0 < tol && residuals.1 < tol).then(|| LinkCertificateT {
        alpha: fa.k1,
        beta,
        gamma: fb.k2,
        residuals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Hyperbolic,
    Loxodromic,
    Parabolic,
    Screw,
    Other,
}

/// One isometry with the data the handlers read.
struct Side<T: Scalar> {
    bank: BankT<T>,
    role: Role,
    /// Normal spaces of the bank.
    s1: SubspaceT<T>,
    s2: SubspaceT<T>,
}

impl<T: Scalar> Side<T> {
    fn new(bank: BankT<T>) -> Self {
        let role = match bank.summary().class {
            IsometryClass::PureHyperbolic { .. } => Role::Hyperbolic,
            IsometryClass::PureLoxodromic { .. } => Role::Loxodromic,
            IsometryClass::PureParabolic => Role::Parabolic,
            IsometryClass::ScrewParabolic { .. } => Role::Screw,
            _ => Role::Other,
        };
        let (s1, s2) = match bank.normal_spaces() {
            Some((a, b)) => (a.clone(), b.clone()),
            None => (SubspaceT::zero(), SubspaceT::zero()),
        };
        let role = if s1.dim() == 0 { Role::Other } else { role };
        Side { bank, role, s1, s2 }
    }

    fn axis(&self) -> Option<&SubspaceT<T>> {
        self.bank.summary().fixed.axis.as_ref()
    }

    fn twisting(&self) -> Option<&SubspaceT<T>> {
        self.bank.summary().fixed.twisting_plane.as_ref()
    }

    fn ideal(&self) -> Option<V5<T>> {
        self.bank.summary().fixed.fixed_ideal
    }

    /// Light-like fixed rays.
    fn fixed_rays(&self, ctx: &Ctx<T>) -> Vec<V5<T>> {
        if let Some(v) = self.ideal() {
            return vec![v];
        }
        match self.axis().and_then(|l| null_pair(l, ctx)) {
            Some((p, q)) => vec![p, q],
            None => Vec::new(),
        }
    }

    /// Normal of the permuted-pencil element through the ray `x`.
    fn element_through(&self, x: &V5<T>) -> Option<V5<T>> {
        let f = self.s1.frame();
        if f.len() != 2 {
            return None;
        }
        let (c0, c1) = (lorentz_inner(&f[0], x), lorentz_inner(&f[1], x));
        let n = f[1] * c0 - f[0] * c1;
        (n.norm() > T::lit(1e-9) * x.norm()).then_some(n)
    }
}

fn disjoint_fixed<T: Scalar>(p: &Side<T>, q: &Side<T>, ctx: &Ctx<T>) -> bool {
    let tol = ctx.membership_tol;
    let (fp, fq) = (p.fixed_rays(ctx), q.fixed_rays(ctx));
    !fp.iter().any(|u| fq.iter().any(|v| same_ray(u, v, tol)))
}

/// A vector of `s ∩ t` when the two subspaces meet.
fn meet<T: Scalar>(s: &SubspaceT<T>, t: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<V5<T>> {
    match s.closest_direction(t) {
        Some((sine, v)) if sine <= ctx.membership_tol => Some(v),
        _ => None,
    }
}

/// Unit tangent at `a` of the 2-dim subspace `l` through `a`.
fn tangent<T: Scalar>(l: &SubspaceT<T>, a: &V5<T>, ctx: &Ctx<T>) -> Option<V5<T>> {
    let t = l.intersect(&SubspaceT::span(&[*a], ctx.tau).complement(), ctx);
    t.frame().first().copied()
}

/// Plane `β = W^L` with `n ∈ W` in the banks of both sides, if the linear conditions
/// leave room for it.
///
/// With `W = span{n, m}`, `W` meets `S ∌ n` iff `m ∈ span{n} + S`; together with
/// `<n, m> = 0` these are linear in `m`, solved in the least-squares sense.
fn complete<T: Scalar>(n: &V5<T>, spaces: &[&SubspaceT<T>], ctx: &Ctx<T>) -> Option<SubspaceT<T>> {
    if lorentz_sq(n) <= ctx.tau * n.norm_squared() {
        return None;
    }
    let ln = SubspaceT::span(&[*n], ctx.tau);
    let mut rows: Vec<nalgebra::RowVector5<T>> = Vec::new();
    for s in spaces {
        if s.contains(n, ctx.membership_tol) {
            continue;
        }
        let q = M5::identity() - ln.sum(s, ctx).projector();
        rows.extend(q.row_iter().map(|r| r.into_owned()));
    }
    let jn = jmat::<T>() * n / n.norm();
    rows.push(jn.transpose());
    let a = DMatrix::from_fn(rows.len(), 5, |i, j| rows[i][j]);
    let (_, s, vt) = crate::lorentz::svd(&a);
    let smax = s.max().max(T::one());
    let kernel: Vec<V5<T>> = s
        .iter()
        .enumerate()
        .filter(|(_, &x)| x <= T::lit(1e-7) * smax)
        .map(|(i, _)| V5::from_fn(|k, _| vt[(i, k)]))
        .collect();
    let m = space_like_in(&SubspaceT::span(&kernel, ctx.tau), ctx)?;
    let w = SubspaceT::span(&[*n, m], ctx.tau);
    (w.dim() == 2).then(|| w.complement())
}

fn space_like_in<T: Scalar>(u: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<V5<T>> {
    let mut cands: Vec<V5<T>> = u.frame().to_vec();
    if let Ok(on) = u.orthonormal_basis(ctx) {
        cands.extend(on);
    }
    cands
        .into_iter()
        .map(|v| (lorentz_sq(&v) / v.norm_squared(), v))
        .filter(|(q, _)| *q > T::lit(1e-6))
        .max_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(_, v)| v)
}

enum Cand<T: Scalar> {
    /// Normal of a hyperplane containing `β`.
    Through(V5<T>),
    Plane(SubspaceT<T>),
}

struct Attempt<T: Scalar> {
    label: &'static str,
    applies: bool,
    cands: Vec<Cand<T>>,
}

fn attempt<T: Scalar>(label: &'static str, applies: bool, normals: Vec<Option<V5<T>>>) -> Attempt<T> {
    let cands: Vec<Cand<T>> = normals.into_iter().flatten().map(Cand::Through).collect();
    Attempt { label, applies: applies && !cands.is_empty(), cands }
}

/// Whether `(x, y)` is a pair handled with `x` in the first position.
fn canonical_order(x: Role, y: Role) -> bool {
    use Role::*;
    matches!(
        (x, y),
        (Hyperbolic, Hyperbolic)
            | (Parabolic, Parabolic)
            | (Hyperbolic, Parabolic)
            | (Parabolic, Loxodromic)
            | (Screw, Hyperbolic)
            | (Screw, Parabolic)
            | (Loxodromic, Hyperbolic)
            | (Screw, Screw)
            | (Loxodromic, Loxodromic)
            | (Screw, Loxodromic)
    )
}

/// Foot data for two hyperbolic sides: feet `a`, `b` and axis tangents there.
fn feet<T: Scalar>(p: &Side<T>, q: &Side<T>, ctx: &Ctx<T>) -> Option<(V5<T>, V5<T>, V5<T>, V5<T>)> {
    let (la, lb) = (p.axis()?, q.axis()?);
    let (a, b) = line_feet(la, lb, ctx).ok()?;
    Some((a, b, tangent(la, &a, ctx)?, tangent(lb, &b, ctx)?))
}

/// Direction at `a` of the line in the twisting plane perpendicular to the axis.
fn twist_line<T: Scalar>(p: &Side<T>, a: &V5<T>, ta: &V5<T>, ctx: &Ctx<T>) -> Option<V5<T>> {
    let perp = SubspaceT::span(&[*a, *ta], ctx.tau).complement();
    p.twisting()?.intersect(&perp, ctx).frame().first().copied()
}

fn attempts<T: Scalar>(p: &Side<T>, q: &Side<T>, ctx: &Ctx<T>) -> Vec<Attempt<T>> {
    use Role::*;
    let tol = ctx.membership_tol;
    let disjoint = disjoint_fixed(p, q, ctx);
    // Permuted-pencil element of `q` through the fixed point of `p` and vice versa.
    let hx = p.ideal().and_then(|x| q.element_through(&x));
    let hy = q.ideal().and_then(|y| p.element_through(&y));
    let common = meet(&p.s1, &q.s1, ctx);
    match (p.role, q.role) {
        (Hyperbolic, Hyperbolic) => {
            let f = feet(p, q, ctx);
            vec![attempt("hyperbolic-hyperbolic/ultra-parallel", f.is_some(), vec![f.map(|f| f.2), f.map(|f| f.3)])]
        }
        (Parabolic, Parabolic) => {
            let (x, y) = (p.ideal(), q.ideal());
            let same = matches!((x, y), (Some(x), Some(y)) if same_ray(&x, &y, tol));
            let dir = p.bank.summary().fixed.direction;
            vec![
                attempt("parabolic-parabolic/distinct-fixed-points", !same, vec![hy, hx]),
                attempt("parabolic-parabolic/common-fixed-point", same, vec![dir, q.bank.summary().fixed.direction]),
            ]
        }
        (Hyperbolic, Parabolic) => {
            let h = q.ideal().and_then(|v| p.element_through(&v));
            vec![attempt("hyperbolic-parabolic", disjoint, vec![h])]
        }
        (Parabolic, Loxodromic) => {
            let x_on_l = matches!((p.ideal(), q.twisting()), (Some(x), Some(t)) if t.contains(&x, tol));
            vec![
                attempt("parabolic-loxodromic/condition-1", disjoint, vec![common]),
                attempt("parabolic-loxodromic/condition-2", disjoint && x_on_l, vec![hx]),
                attempt("parabolic-loxodromic/condition-3", disjoint, vec![meet(&p.s1, &q.s2, ctx)]),
            ]
        }
        (Screw, Hyperbolic) => {
            let eq = equidistance_report(p, q, ctx).ok();
            let holds = eq.as_ref().map(|r| r.holds).unwrap_or(false);
            let plane = eq.and_then(|r| r.candidate).map(|g| Cand::Plane(g.carrier().clone()));
            vec![
                attempt("screw-hyperbolic/condition-1", disjoint, vec![common]),
                attempt("screw-hyperbolic/condition-2", disjoint, vec![meet(&q.s1, &p.s2, ctx)]),
                Attempt {
                    label: "screw-hyperbolic/computational",
                    applies: disjoint && holds && plane.is_some(),
                    cands: plane.into_iter().collect(),
                },
                attempt("screw-hyperbolic/condition-3", disjoint, vec![hx]),
            ]
        }
        (Screw, Parabolic) => {
            let y_on_l = matches!((q.ideal(), p.twisting()), (Some(y), Some(t)) if t.contains(&y, tol));
            vec![
                attempt("screw-parabolic/condition-1", disjoint, vec![common]),
                attempt("screw-parabolic/condition-2", disjoint && y_on_l, vec![hx, hy]),
                attempt("screw-parabolic/condition-3", disjoint, vec![meet(&q.s1, &p.s2, ctx)]),
                attempt("screw-parabolic/condition-4", disjoint, vec![hx]),
            ]
        }
        (Loxodromic, Hyperbolic) => {
            let f = feet(p, q, ctx);
            let n_in_tau = matches!((f, p.twisting()), (Some(f), Some(t)) if t.contains(&f.1, tol));
            let tb = f.map(|f| f.3);
            vec![
                attempt("loxodromic-hyperbolic/condition-1", n_in_tau, vec![tb]),
                attempt("loxodromic-hyperbolic/condition-2", f.is_some(), vec![tb]),
            ]
        }
        (Screw, Screw) => {
            let (x, y) = (p.ideal(), q.ideal());
            let mutual = matches!((x, y, p.twisting(), q.twisting()),
                (Some(x), Some(y), Some(ta), Some(tb)) if ta.contains(&y, tol) && tb.contains(&x, tol));
            let (c1, c2) = (meet(&p.s1, &q.s2, ctx), meet(&q.s1, &p.s2, ctx));
            vec![
                attempt("screw-screw/condition-1", disjoint, vec![common]),
                attempt("screw-screw/condition-2", disjoint && mutual, vec![hx, hy]),
                attempt("screw-screw/condition-3", disjoint, vec![hx, hy]),
                attempt("screw-screw/condition-4", disjoint && c1.is_some() && c2.is_some(), vec![c1, c2]),
            ]
        }
        (Loxodromic, Loxodromic) => {
            let f = feet(p, q, ctx);
            let coplanar = f
                .and_then(|(a, b, ta, tb)| {
                    let la = twist_line(p, &a, &ta, ctx)?;
                    let lb = twist_line(q, &b, &tb, ctx)?;
                    Some(SubspaceT::span(&[a, b, la, lb], T::lit(1e3) * ctx.tau).dim() <= 3)
                })
                .unwrap_or(false);
            vec![attempt("loxodromic-loxodromic/coplanar", coplanar, vec![f.map(|f| f.2), f.map(|f| f.3)])]
        }
        (Screw, Loxodromic) => {
            let (c1, c2) = (meet(&p.s1, &q.s2, ctx), meet(&q.s1, &p.s2, ctx));
            vec![
                attempt("screw-loxodromic/condition-1", disjoint, vec![common]),
                attempt("screw-loxodromic/condition-2", disjoint, vec![hx]),
                attempt("screw-loxodromic/condition-3", disjoint && c1.is_some() && c2.is_some(), vec![c1, c2]),
            ]
        }
        _ => Vec::new(),
    }
}

/// Normals shared by a bank space of each side.
fn direct_candidates<T: Scalar>(p: &Side<T>, q: &Side<T>, ctx: &Ctx<T>) -> Vec<V5<T>> {
    let mut out = Vec::new();
    for s in [&p.s1, &p.s2] {
        for t in [&q.s1, &q.s2] {
            if s.dim() > 0 && t.dim() > 0 {
                out.extend(meet(s, t, ctx));
            }
        }
    }
    out
}

pub fn link<T: Scalar>(a: &IsometryT<T>, b: &IsometryT<T>, ctx: &Ctx<T>) -> Result<LinkOutcomeT<T>> {
    link_with(a, b, &LinkOptions::default(), ctx)
}

/// Constructive conditions in their fixed order, then direct constructions through
/// shared normals, then a seeded search over bank samples with local refinement.
pub fn link_with<T: Scalar>(
    a: &IsometryT<T>,
    b: &IsometryT<T>,
    opts: &LinkOptions,
    ctx: &Ctx<T>,
) -> Result<LinkOutcomeT<T>> {
    let (ba, bb) = (BankT::new(a, ctx)?, BankT::new(b, ctx)?);
    if let Some(out) = trivial(&ba, &bb, opts, ctx) {
        return Ok(out);
    }
    let (sa, sb) = (Side::new(ba.clone()), Side::new(bb.clone()));
    let linked = |cert: LinkCertificateT<T>, label: &str| LinkOutcomeT::Linked { certificate: cert, condition: label.to_string() };

    let (p, q) = if canonical_order(sa.role, sb.role) { (&sa, &sb) } else { (&sb, &sa) };
    let spaces = [&sa.s1, &sa.s2, &sb.s1, &sb.s2];
    for att in attempts(p, q, ctx) {
        if !att.applies {
            continue;
        }
        for c in &att.cands {
            let beta = match c {
                Cand::Through(n) => complete(n, &spaces, ctx),
                Cand::Plane(s) => Some(s.clone()),
            };
            if let Some(cert) = beta.and_then(|beta| certify(&ba, &bb, &beta, ctx)) {
                return Ok(linked(cert, att.label));
            }
        }
    }
    if sa.role != Role::Other && sb.role != Role::Other {
        for n in direct_candidates(&sa, &sb, ctx) {
            if let Some(cert) = complete(&n, &spaces, ctx).and_then(|beta| certify(&ba, &bb, &beta, ctx)) {
                return Ok(linked(cert, "direct-construction"));
            }
        }
    }
    Ok(search(&ba, &bb, opts, ctx))
}

fn trivial<T: Scalar>(ba: &BankT<T>, bb: &BankT<T>, opts: &LinkOptions, ctx: &Ctx<T>) -> Option<LinkOutcomeT<T>> {
    let ida = matches!(ba.summary().class, IsometryClass::Identity);
    let idb = matches!(bb.summary().class, IsometryClass::Identity);
    if !ida && !idb {
        return None;
    }
    let other = if ida { bb } else { ba };
    let beta = other.sample(1, opts.seed, ctx).into_iter().next()?.plane;
    let cert = certify(ba, bb, beta.carrier(), ctx)?;
    Some(LinkOutcomeT::Linked { certificate: cert, condition: "trivial".into() })
}

fn search<T: Scalar>(ba: &BankT<T>, bb: &BankT<T>, opts: &LinkOptions, ctx: &Ctx<T>) -> LinkOutcomeT<T> {
    let mut pool: Vec<(T, usize, GeoObjectT<T>)> = Vec::new();
    for (side, (src, other)) in [(ba, bb), (bb, ba)].into_iter().enumerate() {
        for el in src.sample(opts.samples, opts.seed.wrapping_add(side as u64), ctx) {
            let d = other.defect(el.plane.carrier(), ctx);
            pool.push((d, side, el.plane));
        }
    }
    pool.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    for side in 0..2 {
        let (src, other) = if side == 0 { (ba, bb) } else { (bb, ba) };
        for (_, _, plane) in pool.iter().filter(|e| e.1 == side).take(opts.starts) {
            let Some(beta) = refine(src, other, plane.carrier(), ctx) else { continue };
            if let Some(cert) = certify(ba, bb, &beta, ctx) {
                return LinkOutcomeT::Linked { certificate: cert, condition: "bank-search".into() };
            }
        }
    }
    let closest = pool
        .into_iter()
        .take(5)
        .map(|(_, _, plane)| {
            let defect = ba.defect(plane.carrier(), ctx).max(bb.defect(plane.carrier(), ctx));
            CandidateT { plane, defect }
        })
        .collect();
    LinkOutcomeT::Undetermined { closest }
}

fn coords<T: Scalar>(s: &SubspaceT<T>, v: &V5<T>) -> Vec<T> {
    s.frame().iter().map(|f| f.dot(v)).collect()
}

fn from_coords<T: Scalar>(s: &SubspaceT<T>, c: &[T]) -> V5<T> {
    let mut v = V5::zeros();
    for (f, &x) in s.frame().iter().zip(c) {
        v += f * x;
    }
    v
}

/// Euclidean orthonormal frame of `span{x, y}`.
fn orthonormal2<T: Scalar>(x: &V5<T>, y: &V5<T>) -> Option<(V5<T>, V5<T>)> {
    let nx = x.norm();
    if nx == T::zero() {
        return None;
    }
    let u = x / nx;
    let w = y - u * u.dot(y);
    let nw = w.norm();
    (nw > T::lit(1e-12) * y.norm()).then(|| (u, w / nw))
}

/// Local solve for `W` in the chart of `src` meeting the bank conditions of `other`.
fn refine<T: Scalar>(src: &BankT<T>, other: &BankT<T>, start: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<SubspaceT<T>> {
    let w0 = start.complement();
    let f = w0.frame();
    if f.len() != 2 {
        return None;
    }
    let src_chart = src.chart(ctx);
    let oth_chart = other.chart(ctx);
    let mut x0: Vec<T> = Vec::new();
    match &src_chart {
        Chart::Pair(a, b) => {
            x0.extend(coords(a, &w0.closest_direction(a)?.1));
            x0.extend(coords(b, &w0.closest_direction(b)?.1));
        }
        Chart::Inside(s) => {
            x0.extend(coords(s, &f[0]));
            x0.extend(coords(s, &f[1]));
        }
        Chart::Complex(s, _) => x0.extend(coords(s, &f[0])),
        Chart::Everything => return None,
    }
    let n_src = x0.len();
    if let Chart::Pair(a, b) = &oth_chart {
        x0.extend(coords(a, &w0.closest_direction(a)?.1));
        x0.extend(coords(b, &w0.closest_direction(b)?.1));
    }
    let span_of = |x: &[T]| -> Option<(V5<T>, V5<T>)> {
        match &src_chart {
            Chart::Pair(a, b) => {
                let da = a.dim();
                orthonormal2(&from_coords(a, &x[..da]), &from_coords(b, &x[da..]))
            }
            Chart::Inside(s) => {
                let d = s.dim();
                orthonormal2(&from_coords(s, &x[..d]), &from_coords(s, &x[d..]))
            }
            Chart::Complex(s, jc) => {
                let v = from_coords(s, x);
                orthonormal2(&v, &(jc * v))
            }
            Chart::Everything => None,
        }
    };
    let residual = |x: &DVector<T>| -> DVector<T> {
        let xs = x.as_slice();
        let Some((u, w)) = span_of(&xs[..n_src]) else { return DVector::from_element(10, T::one()) };
        let pw = u * u.transpose() + w * w.transpose();
        let off = |v: V5<T>| {
            let n = v.norm();
            if n == T::zero() {
                V5::from_element(T::one())
            } else {
                (v - pw * v) / n
            }
        };
        let parts: Vec<V5<T>> = match &oth_chart {
            Chart::Pair(a, b) => {
                let da = a.dim();
                let rest = &xs[n_src..];
                vec![off(from_coords(a, &rest[..da])), off(from_coords(b, &rest[da..]))]
            }
            Chart::Inside(s) => {
                let q = M5::identity() - s.projector();
                vec![q * u, q * w]
            }
            Chart::Complex(s, jc) => {
                let q = M5::identity() - s.projector();
                vec![q * u, q * w, jc * u - pw * (jc * u), jc * w - pw * (jc * w)]
            }
            Chart::Everything => Vec::new(),
        };
        DVector::from_iterator(parts.len() * 5, parts.iter().flat_map(|p| p.iter().copied()))
    };
    let x = levenberg_marquardt(&residual, DVector::from_vec(x0), 200);
    let (u, w) = span_of(&x.as_slice()[..n_src])?;
    Some(SubspaceT::span(&[u, w], ctx.tau).complement())
}

/// Damped Gauss–Newton with a forward-difference Jacobian.
fn levenberg_marquardt<T: Scalar>(f: &dyn Fn(&DVector<T>) -> DVector<T>, mut x: DVector<T>, iters: usize) -> DVector<T> {
    let eps = T::default_epsilon();
    let h = eps.sqrt();
    let mut r = f(&x);
    let mut cost = r.norm_squared();
    let mut lambda = T::lit(1e-3);
    let n = x.len();
    for _ in 0..iters {
        if cost <= eps * eps {
            break;
        }
        let mut jac = DMatrix::zeros(r.len(), n);
        for j in 0..n {
            let step = h * x[j].abs().max(T::one());
            let mut xp = x.clone();
            xp[j] += step;
            jac.set_column(j, &((f(&xp) - &r) / step));
        }
        let jt = jac.transpose();
        let g = &jt * &r;
        let jtj = &jt * &jac;
        let mut accepted = false;
        while lambda < T::lit(1e12) {
            let mut m = jtj.clone();
            for i in 0..n {
                m[(i, i)] += lambda * (jtj[(i, i)] + T::lit(1e-9));
            }
            let Some(step) = m.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= T::lit(4.0);
                continue;
            };
            let xn = &x + &step;
            let rn = f(&xn);
            let cn = rn.norm_squared();
            if cn < cost {
                x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda / T::lit(3.0)).max(T::lit(1e-12));
                accepted = true;
                break;
            }
            lambda *= T::lit(4.0);
        }
        if !accepted {
            break;
        }
    }
    x
}

/// The equidistance test for a screw parabolic and a pure hyperbolic isometry.
#[derive(Clone, Debug)]
pub struct EquidistanceReportT<T: Scalar> {
    /// Fixed points of the hyperbolic element after normalizing the screw to fix `∞`
    /// with the `z`-axis bounding its twisting plane.
    pub v: Vector3<T>,
    pub w: Vector3<T>,
    /// `|v1² + v2² - w1² - w2²|`.
    pub defect: T,
    /// `max(v1² + v2², w1² + w2²)`, or 1 when both lie on the axis.
    pub scale: T,
    pub holds: bool,
    /// Plane over the horizontal line from the midpoint of `v, w` to the `z`-axis.
    pub candidate: Option<GeoObjectT<T>>,
}

/// Isometry moving the fixed point of a screw parabolic element to `∞` and the
/// boundary of its twisting plane to the `z`-axis.
pub fn screw_normalizer<T: Scalar>(screw: &IsometryT<T>, ctx: &Ctx<T>) -> Result<IsometryT<T>> {
    let s = crate::isometry::classify(screw, ctx)?;
    let wrong = || Error::WrongClass("expected a screw parabolic isometry".into());
    if !matches!(s.class, IsometryClass::ScrewParabolic { .. }) {
        return Err(wrong());
    }
    let x = s.fixed.fixed_ideal.ok_or_else(wrong)?;
    let tau = s.fixed.twisting_plane.ok_or_else(wrong)?;
    let g1 = to_infinity(&x);
    let t1 = tau.transform(g1.matrix());
    let horiz = SubspaceT::span(&[unit(0), unit(1), unit(2)], ctx.tau);
    let u = *t1.intersect(&horiz, ctx).frame().first().ok_or_else(wrong)?;
    let line = t1.intersect(&SubspaceT::span(&[u], ctx.tau).complement(), ctx);
    let (n1, n2) = null_pair(&line, ctx).ok_or_else(wrong)?;
    let foot = [n1, n2]
        .iter()
        .find_map(|n| match boundary_point(n, ctx) {
            BoundaryPoint::Finite(p) => Some(p),
            BoundaryPoint::Infinity => None,
        })
        .ok_or_else(wrong)?;
    let u3 = Vector3::new(u[0], u[1], u[2]);
    let ez = Vector3::z();
    let rot = Rotation3::rotation_between(&u3, &ez)
        .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), T::pi()));
    let r = from_boundary_similarity(rot.matrix(), &Vector3::zeros(), T::one(), ctx)?;
    Ok(IsometryT::from_matrix_unchecked(r.matrix() * translation(&(-foot)) * g1.matrix()))
}

/// The equidistance test; `scale`-relative defects up to `membership_tol` count as holding.
pub fn equidistance_condition<T: Scalar>(
    screw: &IsometryT<T>,
    hyperbolic: &IsometryT<T>,
    ctx: &Ctx<T>,
) -> Result<EquidistanceReportT<T>> {
    let p = Side::new(BankT::new(screw, ctx)?);
    let q = Side::new(BankT::new(hyperbolic, ctx)?);
    if p.role != Role::Screw || q.role != Role::Hyperbolic {
        return Err(Error::WrongClass("expected a screw parabolic and a pure hyperbolic isometry".into()));
    }
    equidistance_report(&p, &q, ctx)
}

fn equidistance_report<T: Scalar>(p: &Side<T>, q: &Side<T>, ctx: &Ctx<T>) -> Result<EquidistanceReportT<T>> {
    let g = screw_normalizer(p.bank.isometry(), ctx)?;
    let axis = q.axis().ok_or_else(|| Error::WrongClass("no axis".into()))?;
    let (e1, e2) = null_pair(&axis.transform(g.matrix()), ctx).ok_or(Error::DegenerateSubspace)?;
    let finite = |e: &V5<T>| match boundary_point(e, ctx) {
        BoundaryPoint::Finite(x) => Ok(x),
        BoundaryPoint::Infinity => Err(Error::BadParams("the hyperbolic element fixes the screw's fixed point".into())),
    };
    let (v, w) = (finite(&e1)?, finite(&e2)?);
    let rv = v[0] * v[0] + v[1] * v[1];
    let rw = w[0] * w[0] + w[1] * w[1];
    let defect = (rv - rw).abs();
    let mut scale = rv.max(rw);
    if scale <= ctx.tau {
        scale = T::one();
    }
    let holds = defect <= ctx.membership_tol * scale;
    let m = (v + w) * T::lit(0.5);
    let candidate = if m[0].hypot(m[1]) > ctx.membership_tol * (T::one() + m.norm()) {
        let pts = [
            BoundaryPoint::Finite(m),
            BoundaryPoint::Finite(Vector3::new(T::zero(), T::zero(), m[2])),
            BoundaryPoint::Infinity,
        ];
        GeoObjectT::plane_from_ideal_points(&pts, ctx).ok().map(|k| k.transform(&g.inverse()))
    } else {
        None
    };
    Ok(EquidistanceReportT { v, w, defect, scale, holds, candidate })
}

/// A linked loxodromic/parabolic pair with no common invariant subspace meeting
/// `H⁴ ∪ ∂H⁴`, and a plane linking them.
///
/// `A` fixes `(0,0,±1)`, its twisting plane is bounded by the `z`-axis and its twisting
/// hyperplane by the unit sphere; it rotates by `π/6` and translates by `ln(1+√2)`.
/// `B` is `x ↦ x + (1,0,1)`. `β` is the plane over the `y`-axis.
pub fn counterexample_pair<T: Scalar>(ctx: &Ctx<T>) -> Result<(IsometryT<T>, IsometryT<T>, GeoObjectT<T>)> {
    let lambda = T::one() + T::lit(2.0).sqrt();
    let a0 = from_boundary_similarity(&rot_z(T::pi() / T::lit(6.0)), &Vector3::zeros(), lambda, ctx)?;
    let inv = reflection_matrix(&GeoObjectT::sphere(&Vector3::z(), T::lit(2.0).sqrt(), ctx)?, ctx)?;
    let flip = reflection_matrix(&GeoObjectT::euclidean_plane(&Vector3::x(), T::zero(), ctx)?, ctx)?;
    let g = IsometryT::from_matrix_unchecked(inv * flip);
    let a = a0.conjugate_by(&g);
    let b = IsometryT::from_matrix_unchecked(translation(&Vector3::new(T::one(), T::zero(), T::one())));
    let o = BoundaryPoint::Finite(Vector3::zeros());
    let y = BoundaryPoint::Finite(Vector3::y());
    let beta = GeoObjectT::plane_from_ideal_points(&[o, y, BoundaryPoint::Infinity], ctx)?;
    Ok((a, b, beta))
}

/// Invariant subspaces assembled from generalized eigenspaces.
///
/// Each eigenvalue cluster contributes the chain `ker p(M) ⊂ ker p(M)² ⊂ …` of its
/// minimal factor `p`; the lattice is every sum of one chain member per cluster.
pub fn invariant_lattice<T: Scalar>(iso: &IsometryT<T>, ctx: &Ctx<T>) -> Result<Vec<SubspaceT<T>>> {
    let s = crate::isometry::classify(iso, ctx)?;
    let m = *iso.matrix();
    let id = M5::<T>::identity();
    let rot = |t: T| m * m - m * (T::lit(2.0) * t.cos()) + id;
    let mut factors: Vec<M5<T>> = vec![m - id];
    match s.class {
        IsometryClass::Identity => return Ok(Vec::new()),
        IsometryClass::EllipticI { angle } => factors.push(rot(angle)),
        IsometryClass::EllipticII { angles: (x, y), .. } => {
            factors.push(rot(x));
            if !crate::isometry::is_isoclinic(x, y) {
                factors.push(rot(y));
            }
        }
        IsometryClass::PureHyperbolic { length } => {
            factors.push(m - id * length.exp());
            factors.push(m - id * (-length).exp());
        }
        IsometryClass::PureLoxodromic { length, angle } => {
            factors.push(m - id * length.exp());
            factors.push(m - id * (-length).exp());
            factors.push(rot(angle));
        }
        IsometryClass::PureParabolic => {}
        IsometryClass::ScrewParabolic { angle } => factors.push(rot(angle)),
    }
    let rel = T::lit(1e3) * ctx.tau;
    let mut chains: Vec<Vec<SubspaceT<T>>> = Vec::new();
    for f in factors {
        let mut chain = vec![SubspaceT::zero()];
        let mut pw = f;
        loop {
            let k = SubspaceT::span(&nullspace(&pw, rel), ctx.tau);
            if k.dim() <= chain.last().map(|c| c.dim()).unwrap_or(0) {
                break;
            }
            chain.push(k);
            pw *= f;
        }
        chains.push(chain);
    }
    let mut out: Vec<SubspaceT<T>> = vec![SubspaceT::zero()];
    for chain in &chains {
        let mut next = Vec::new();
        for acc in &out {
            for c in chain {
                next.push(acc.sum(c, ctx));
            }
        }
        out = next;
    }
    let tol = ctx.membership_tol;
    let mut uniq: Vec<SubspaceT<T>> = Vec::new();
    for s in out {
        if (1..=4).contains(&s.dim()) && !uniq.iter().any(|u| u.approx_eq(&s, tol)) {
            uniq.push(s);
        }
    }
    Ok(uniq)
}

/// Subspaces meeting `H⁴ ∪ ∂H⁴` (time-like or light-like, dimension 1 to 4) that are
/// invariant under both isometries and appear in either invariant lattice.
pub fn common_invariant_subspaces<T: Scalar>(
    a: &IsometryT<T>,
    b: &IsometryT<T>,
    ctx: &Ctx<T>,
) -> Result<Vec<SubspaceT<T>>> {
    let tol = ctx.membership_tol;
    let mut out: Vec<SubspaceT<T>> = Vec::new();
    for (x, y) in [(a, b), (b, a)] {
        for s in invariant_lattice(x, ctx)? {
            let sig = s.signature(ctx);
            let meets_h4 = sig.minus > 0 || sig.zero > 0;
            if meets_h4 && s.is_invariant_under(y.matrix(), tol) && !out.iter().any(|u| u.approx_eq(&s, tol)) {
                out.push(s);
            }
        }
    }
    out.sort_by_key(|s| s.dim());
    Ok(out)
}
