//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero on any failure.

use std::time::Instant;

use nalgebra::{DMatrix, DVector, Vector3};

use h4::banks::{bank_contains, BankT};
use h4::geometry::{
    classify_plane_pair, common_perpendicular_with_feet, compose_half_turns, half_turn_matrix, ideal_vector,
    BoundaryPoint,
};
use h4::isometry::{
    classify, coordinate_rotation, dilation, reference_parabolic, translation, ClassTag, IsometryClass,
};
use h4::linker::{
    common_invariant_subspaces, counterexample_pair, equidistance_condition, link_with, reverse_certificate,
    verify_link, LinkCertificateT, LinkOptions,
};
use h4::lorentz::{jmat, lorentz_inner, lorentz_sq, nullspace, unit, M5, V5};
use h4::pencils::{PencilKind, PencilT};
use h4::sampling::canonical::{random_involution, random_isoclinic, random_of_class};
use h4::sampling::{random_isometry, random_point, random_plane, rng, SampleRng};
use h4::{Ctx, GeoKind, GeoObject, Isometry, LinkStatus, PlanePairClass, Subspace};

type Outcome = (bool, String);

fn ctx() -> Ctx<f64> {
    Ctx::default()
}

fn opts() -> LinkOptions {
    LinkOptions { seed: 1, samples: 2000, starts: 6 }
}

fn plane(basis: Vec<V5<f64>>) -> GeoObject {
    GeoObject::plane(basis, &ctx()).expect("plane")
}

fn moved(p: &GeoObject, g: &Isometry) -> GeoObject {
    p.transform(g)
}

fn standard(i: usize, j: usize) -> GeoObject {
    plane(vec![unit(i), unit(j), unit(4)])
}

/// Future unit time-like multiple of `v`.
fn unit_point(v: V5<f64>) -> V5<f64> {
    let v = v / (-lorentz_sq(&v)).sqrt();
    if v[4] < 0.0 {
        -v
    } else {
        v
    }
}

fn boost(axis: usize, t: f64) -> M5<f64> {
    let mut m = M5::identity();
    m[(axis, axis)] = t.cosh();
    m[(4, 4)] = t.cosh();
    m[(axis, 4)] = t.sinh();
    m[(4, axis)] = t.sinh();
    m
}

/// Plane pairs covering every configuration: random pairs (ultra-parallel or meeting in a
/// point) mixed with pairs sharing a line, an ideal point, an orthogonal point, and the
/// special hyperbolic and parabolic configurations.
fn plane_pairs(n: usize, r: &mut SampleRng) -> Vec<(GeoObject, GeoObject)> {
    let c = ctx();
    let mut out = Vec::with_capacity(n);
    let mut i = 0usize;
    while out.len() < n {
        i += 1;
        let g = random_isometry::<f64>(r, 0.7);
        let pair = match i % 10 {
            6 => {
                let (x, y) = (random_point(r, 1.0), random_point(r, 1.0));
                let (z, w) = (random_point(r, 1.0), random_point(r, 1.0));
                (plane(vec![x, y, z]), plane(vec![x, y, w]))
            }
            7 => {
                let b = Vector3::new(r_gauss(r), r_gauss(r), r_gauss(r));
                let v = ideal_vector(&BoundaryPoint::Finite(b));
                let p = plane(vec![v, random_point(r, 1.0), random_point(r, 1.0)]);
                let q = plane(vec![v, random_point(r, 1.0), random_point(r, 1.0)]);
                (p, q)
            }
            8 => (moved(&standard(0, 1), &g), moved(&standard(2, 3), &g)),
            9 if i % 20 == 9 => {
                let q = moved(&standard(0, 1), &Isometry::from_matrix_unchecked(boost(2, 0.8)));
                (moved(&standard(0, 1), &g), moved(&q, &g))
            }
            9 => {
                let over_x = |z: f64| {
                    let pts = [
                        BoundaryPoint::Finite(Vector3::new(0.0, 0.0, z)),
                        BoundaryPoint::Finite(Vector3::new(1.0, 0.0, z)),
                        BoundaryPoint::Infinity,
                    ];
                    GeoObject::plane_from_ideal_points(&pts, &c).expect("plane")
                };
                (moved(&over_x(0.0), &g), moved(&over_x(0.7), &g))
            }
            _ => (random_plane(r, 1.0, &c).expect("plane"), random_plane(r, 1.0, &c).expect("plane")),
        };
        out.push(pair);
    }
    out
}

fn r_gauss(r: &mut SampleRng) -> f64 {
    use rand::Rng;
    r.sample::<f64, _>(rand_distr::StandardNormal)
}

fn tag_of(m: &Isometry) -> Option<ClassTag> {
    classify(m, &ctx()).ok().map(|s| s.tag())
}

/// `|(I - P_S) M F_S| / |M|` for an orthonormal frame `F_S` of `S`.
fn invariance_residual(s: &Subspace, m: &M5<f64>) -> f64 {
    let pr = s.projector();
    let res = s.frame().iter().map(|f| ((M5::identity() - pr) * (m * f)).norm()).fold(0.0, f64::max);
    res / m.norm()
}

fn c1_involution() -> Outcome {
    let c = ctx();
    let start = Instant::now();
    let mut r = rng(101);
    let (mut worst, mut bad_fixed) = (0.0f64, 0usize);
    for _ in 0..1000 {
        let p = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        let h = *half_turn_matrix(&p, &c).expect("half-turn").matrix();
        worst = worst.max((h * h - M5::identity()).norm());
        let fixed = Subspace::span(&nullspace(&(h - M5::identity()), 1e-9), 1e-9);
        if !(fixed.dim() == 3 && fixed.approx_eq(p.carrier(), 1e-9)) {
            bad_fixed += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst < 1e-11 && bad_fixed == 0 && secs < 5.0;
    (ok, format!("max |H^2 - I|_F = {worst:.2e}, fixed-set mismatches = {bad_fixed}, {secs:.2} s"))
}

fn c2_concordance() -> Outcome {
    let c = ctx();
    let mut r = rng(202);
    let (mut mismatches, mut involutions, mut pairs, mut worst) = (0usize, 0usize, 0usize, 0.0f64);
    let mut bad_pairs = 0usize;
    let mut seen = std::collections::BTreeMap::new();
    for (p, q) in plane_pairs(1000, &mut r) {
        let (prod, pred) = match compose_half_turns(&p, &q, &c) {
            Ok(x) => x,
            Err(_) => {
                mismatches += 1;
                continue;
            }
        };
        let actual = tag_of(&prod);
        *seen.entry(format!("{:?}", pred.tag())).or_insert(0usize) += 1;
        if actual != Some(pred.tag()) {
            mismatches += 1;
        }
        match classify_plane_pair(&p, &q, &c).expect("pair") {
            PlanePairClass::MeetInPoint { orthogonal: true } => {
                involutions += 1;
                if !matches!(classify(&prod, &c).map(|s| s.class), Ok(IsometryClass::EllipticII { involution: true, .. })) {
                    mismatches += 1;
                }
            }
            PlanePairClass::MeetInPoint { orthogonal: false } => match &pred.fixed.invariant_pair {
                Some((t1, t2)) => {
                    pairs += 1;
                    worst = worst.max(invariance_residual(t1, prod.matrix())).max(invariance_residual(t2, prod.matrix()));
                }
                None => bad_pairs += 1,
            },
            _ => {}
        }
    }
    let ok = mismatches == 0 && bad_pairs == 0 && involutions > 0 && pairs > 0 && worst < 1e-9;
    (
        ok,
        format!(
            "mismatches = {mismatches}, involutions = {involutions}, invariant pairs = {pairs} (missing {bad_pairs}), max invariance residual = {worst:.2e}, classes {seen:?}"
        ),
    )
}

/// Closest points of two ultra-parallel planes by alternating nearest-point projections.
fn closest_points(p: &GeoObject, q: &GeoObject) -> Option<(V5<f64>, V5<f64>)> {
    let c = ctx();
    let pp = p.carrier().lorentz_projector(&c).ok()?;
    let pq = q.carrier().lorentz_projector(&c).ok()?;
    let mut x = unit_point(pp * unit::<f64>(4));
    let mut y = unit_point(pq * x);
    for _ in 0..2_000_000 {
        let x2 = unit_point(pp * y);
        let y2 = unit_point(pq * x2);
        let step = (x2 - x).norm() + (y2 - y).norm();
        x = x2;
        y = y2;
        if step < 1e-13 * (x.norm() + y.norm()) {
            return Some((x, y));
        }
    }
    None
}

/// Largest cosine between the segment `foot -> other` and a unit tangent of `g` at `foot`.
fn orthogonality(foot: &V5<f64>, other: &V5<f64>, g: &GeoObject) -> f64 {
    let c = ctx();
    let u = other + foot * lorentz_inner(foot, other);
    let u = u / lorentz_sq(&u).sqrt();
    let tangent = g.carrier().intersect(&Subspace::span(&[*foot], 1e-12).complement(), &c);
    let on = tangent.orthonormal_basis(&c).expect("tangent basis");
    on.iter().map(|e| lorentz_inner(e, &u).abs()).fold(if on.len() == 2 { 0.0 } else { 1.0 }, f64::max)
}

fn hyperbolic_gap(a: &V5<f64>, b: &V5<f64>) -> f64 {
    lorentz_sq(&(a - b)).max(0.0).sqrt()
}

fn c3_common_perpendicular() -> Outcome {
    let c = ctx();
    let mut r = rng(303);
    let (mut count, mut worst_orth, mut worst_foot, mut failures) = (0usize, 0.0f64, 0.0f64, 0usize);
    let mut tries = 0usize;
    while count < 500 && tries < 100_000 {
        tries += 1;
        let p = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        let q = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        if classify_plane_pair(&p, &q, &c).expect("pair") != PlanePairClass::UltraParallel {
            continue;
        }
        count += 1;
        let Ok((_, x, y)) = common_perpendicular_with_feet(&p, &q, &c) else {
            failures += 1;
            continue;
        };
        for (foot, other, g) in [(x, y, &p), (y, x, &q)] {
            worst_orth = worst_orth.max(orthogonality(&foot, &other, g));
        }
        match closest_points(&p, &q) {
            Some((ox, oy)) => worst_foot = worst_foot.max(hyperbolic_gap(&x, &ox)).max(hyperbolic_gap(&y, &oy)),
            None => failures += 1,
        }
    }
    let ok = count == 500 && failures == 0 && worst_orth < 1e-9 && worst_foot < 1e-6;
    (
        ok,
        format!("pairs = {count}, failures = {failures}, max orthogonality residual = {worst_orth:.2e}, max foot offset = {worst_foot:.2e}"),
    )
}

fn class_cases(r: &mut SampleRng) -> Vec<(&'static str, Isometry)> {
    vec![
        ("identity", Isometry::identity()),
        ("elliptic-I", random_of_class(ClassTag::EllipticI, r)),
        ("elliptic-II", random_of_class(ClassTag::EllipticII, r)),
        ("elliptic-II isoclinic", random_isoclinic(r)),
        ("elliptic-II involution", random_involution(r)),
        ("hyperbolic", random_of_class(ClassTag::PureHyperbolic, r)),
        ("parabolic", random_of_class(ClassTag::PureParabolic, r)),
        ("loxodromic", random_of_class(ClassTag::PureLoxodromic, r)),
        ("screw", random_of_class(ClassTag::ScrewParabolic, r)),
    ]
}

fn c4_round_trip() -> Outcome {
    let c = ctx();
    let start = Instant::now();
    let mut r = rng(404);
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, m) in class_cases(&mut r) {
        let bank = BankT::new(&m, &c).expect("bank");
        let ks = bank.sample(100, 17, &c);
        let (mut worst, mut outside) = (0.0f64, 0usize);
        for el in &ks {
            match bank.factor_about(&el.plane, &c) {
                Ok(f) => {
                    worst = worst.max(f.residuals.0).max(f.residuals.1);
                    if !(bank.contains(&f.k1, &c).unwrap_or(false) && bank.contains(&f.k2, &c).unwrap_or(false)) {
                        outside += 1;
                    }
                }
                Err(_) => outside += 1,
            }
        }
        ok &= ks.len() == 100 && worst < 1e-9 && outside == 0;
        lines.push(format!("{name}: {}x, {worst:.1e}, {outside} out", ks.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 30.0;
    (ok, format!("{}; {secs:.2} s", lines.join("; ")))
}

fn c5_exhaustiveness() -> Outcome {
    let c = ctx();
    let mut r = rng(505);
    let (mut fails, mut n) = (0usize, 0usize);
    for (p, q) in plane_pairs(500, &mut r) {
        n += 1;
        let m = &half_turn_matrix(&p, &c).expect("half-turn") * &half_turn_matrix(&q, &c).expect("half-turn");
        let both = bank_contains(&m, &p, &c).unwrap_or(false) && bank_contains(&m, &q, &c).unwrap_or(false);
        if !both {
            fails += 1;
        }
    }
    (fails == 0, format!("pairs = {n}, outside the bank = {fails}"))
}

/// Sine distance from `v` to the subspace `s`.
fn sine_to(s: &Subspace, v: &V5<f64>) -> f64 {
    (v - s.projector() * v).norm() / v.norm()
}

/// Direction in the circle of unit normals of `k^L` closest to `s`: grid, then golden section.
fn best_normal(on: &[V5<f64>], s: &Subspace) -> (f64, f64) {
    let f = |t: f64| sine_to(s, &(on[0] * t.cos() + on[1] * t.sin()));
    let n = 720;
    let h = std::f64::consts::PI / n as f64;
    let (mut bt, mut bv) = (0.0, f64::INFINITY);
    for i in 0..n {
        let t = i as f64 * h;
        let v = f(t);
        if v < bv {
            bt = t;
            bv = v;
        }
    }
    let (mut a, mut b) = (bt - h, bt + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (x1, x2) = (b - g * (b - a), a + g * (b - a));
        if f(x1) < f(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t).min(bv))
}

/// Whether hyperplanes `s ∈ F1`, `t ∈ F2` with `s ∩ t = k` exist, by search over the pencils.
fn witness_search(first: &PencilT<f64>, second: &PencilT<f64>, k: &GeoObject, tol: f64) -> bool {
    let c = ctx();
    let Ok(on) = k.carrier().complement().orthonormal_basis(&c) else { return false };
    if on.len() != 2 {
        return false;
    }
    let (ta, da) = best_normal(&on, first.space());
    let (tb, db) = best_normal(&on, second.space());
    da <= tol && db <= tol && (ta - tb).sin().abs() > 1e-3
}

fn c6_criteria() -> Outcome {
    let c = ctx();
    let mut r = rng(606);
    let mut lines = Vec::new();
    let mut total = 0usize;
    let cases = [
        ("elliptic-I", ClassTag::EllipticI, PencilKind::Invariant),
        ("hyperbolic", ClassTag::PureHyperbolic, PencilKind::Invariant),
        ("parabolic", ClassTag::PureParabolic, PencilKind::Invariant),
        ("loxodromic", ClassTag::PureLoxodromic, PencilKind::Twisting),
        ("screw", ClassTag::ScrewParabolic, PencilKind::Twisting),
    ];
    let bump = Isometry::from_matrix_unchecked(coordinate_rotation(0, 2, 1e-3) * boost(1, 1e-3));
    for (name, tag, second) in cases {
        let m = random_of_class::<f64>(tag, &mut r);
        let bank = BankT::new(&m, &c).expect("bank");
        let f1 = PencilT::new(PencilKind::Permuted, bank.summary(), &c).expect("pencil");
        let f2 = PencilT::new(second, bank.summary(), &c).expect("pencil");
        let mut planes: Vec<GeoObject> = bank.sample(70, 23, &c).into_iter().map(|e| e.plane).collect();
        let near: Vec<GeoObject> = planes.iter().map(|p| p.transform(&bump)).collect();
        planes.extend(near);
        while planes.len() < 200 {
            planes.push(random_plane(&mut r, 1.0, &c).expect("plane"));
        }
        let (mut members, mut disagree) = (0usize, 0usize);
        for k in &planes {
            let crit = bank.contains(k, &c).expect("plane");
            let wit = witness_search(&f1, &f2, k, c.membership_tol);
            members += crit as usize;
            disagree += (crit != wit) as usize;
        }
        total += disagree;
        lines.push(format!("{name}: {members}/200 members, {disagree} disagreements"));
    }
    (total == 0, lines.join("; "))
}

fn c7_jordan() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for (n, params) in [(2usize, vec![1.0]), (3, vec![3.0, 4.0]), (4, vec![1.0, 2.0, 2.0])] {
        let rp = reference_parabolic::<f64>(n, &params).expect("reference");
        let sinv: DMatrix<f64> = rp.s.clone().try_inverse().expect("invertible");
        let res = (&rp.s * &rp.j * sinv - &rp.p).norm();
        let v = DVector::from_vec(rp.fixed.clone());
        let exact = &rp.p * &v == v;
        let mut expect = vec![0.0; n + 1];
        expect[n - 1] = 1.0;
        expect[n] = 1.0;
        let stated = rp.fixed == expect;
        ok &= res < 1e-12 && exact && stated;
        lines.push(format!("n={n}: |SJS^-1 - P|_F = {res:.1e}, fixes {:?} exactly: {exact}", rp.fixed));
    }
    (ok, lines.join("; "))
}

fn product_certificate(a: &Isometry, b: &Isometry, beta: &GeoObject) -> Option<LinkCertificateT<f64>> {
    let c = ctx();
    let fa = BankT::new(a, &c).ok()?.factor_about(beta, &c).ok()?;
    let fb = BankT::new(b, &c).ok()?.factor_about(beta, &c).ok()?;
    Some(LinkCertificateT { alpha: fa.k1, beta: beta.clone(), gamma: fb.k2, residuals: (fa.residuals.0, fb.residuals.1) })
}

type Linked = Vec<(String, Isometry, Isometry, LinkCertificateT<f64>)>;

fn c8_counterexample(suite: &mut Linked) -> Outcome {
    let c = ctx();
    let (a, b, beta) = counterexample_pair::<f64>(&c).expect("pair");
    let Some(cert) = product_certificate(&a, &b, &beta) else {
        return (false, "beta does not factor both elements".into());
    };
    let rep = verify_link(&a, &b, &cert, &c);
    let common = common_invariant_subspaces(&a, &b, &c).expect("lattice");
    let ok = rep.passed && rep.residuals.0 < 1e-9 && rep.residuals.1 < 1e-9 && common.is_empty();
    let found = link_with(&a, &b, &opts(), &c).expect("link");
    if let Some(cc) = found.certificate() {
        suite.push(("counterexample (search)".into(), a.clone(), b.clone(), cc.clone()));
    }
    suite.push(("counterexample".into(), a, b, cert));
    (
        ok,
        format!(
            "verify = {} ({:.1e}, {:.1e}), common invariant subspaces = {}, link(A,B) = {:?}",
            rep.detail,
            rep.residuals.0,
            rep.residuals.1,
            common.len(),
            found.condition()
        ),
    )
}

fn z_screw() -> Isometry {
    Isometry::from_matrix_unchecked(coordinate_rotation(0, 1, 0.9) * translation(&Vector3::new(0.0, 0.0, 1.3)))
}

/// Pure hyperbolic element of length 0.7 whose axis ends at `v` and `w`.
fn hyperbolic_through(v: Vector3<f64>, w: Vector3<f64>) -> Isometry {
    let c = ctx();
    let l = GeoObject::line_from_ideal_points(&BoundaryPoint::Finite(v), &BoundaryPoint::Finite(w), &c).expect("line");
    let on = l.carrier().orthonormal_basis(&c).expect("basis");
    let (x, t) = if lorentz_sq(&on[0]) > 0.0 { (on[0], on[1]) } else { (on[1], on[0]) };
    let (ch, sh) = (0.7f64.cosh(), 0.7f64.sinh());
    let (jx, jt) = (jmat::<f64>() * x, jmat::<f64>() * t);
    let mut m = M5::identity();
    m += (x * (ch - 1.0) + t * sh) * jx.transpose();
    m -= (x * sh + t * (ch - 1.0)) * jt.transpose();
    Isometry::new(m, &c).expect("isometry")
}

fn c9_computational(suite: &mut Linked) -> Outcome {
    let c = ctx();
    let a = z_screw();
    let b = hyperbolic_through(Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.0, 5.0));
    let rep = equidistance_condition(&a, &b, &c).expect("report");
    let out = link_with(&a, &b, &opts(), &c).expect("link");
    let mut ok = rep.holds && out.condition() == Some("screw-hyperbolic/computational");
    let mut detail = format!("defect = {:.1e}, condition = {:?}", rep.defect, out.condition());
    if let Some(cert) = out.certificate() {
        let v = verify_link(&a, &b, cert, &c);
        ok &= v.passed && v.residuals.0 < 1e-9 && v.residuals.1 < 1e-9;
        detail += &format!(", residuals = ({:.1e}, {:.1e})", v.residuals.0, v.residuals.1);
        suite.push(("equidistant".into(), a.clone(), b.clone(), cert.clone()));
    }
    let b2 = hyperbolic_through(Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.1, 5.0));
    let rep2 = equidistance_condition(&a, &b2, &c).expect("report");
    let out2 = link_with(&a, &b2, &opts(), &c).expect("link");
    let declined = !rep2.holds && rep2.defect > 0.05 * rep2.scale && out2.condition() != Some("screw-hyperbolic/computational");
    ok &= declined;
    detail += &format!(
        "; perturbed: defect = {:.3} vs 0.05 scale = {:.4}, declined = {declined}, outcome = {:?}",
        rep2.defect,
        0.05 * rep2.scale,
        out2.status()
    );
    (ok, detail)
}

fn product_pairs(suite: &mut Linked) -> usize {
    let c = ctx();
    let mut r = rng(1010);
    let mut missed = 0;
    for i in 0..12 {
        let p = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        let beta = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        let q = random_plane::<f64>(&mut r, 1.0, &c).expect("plane");
        let hb = half_turn_matrix(&beta, &c).expect("half-turn");
        let a = &half_turn_matrix(&p, &c).expect("half-turn") * &hb;
        let b = &hb * &half_turn_matrix(&q, &c).expect("half-turn");
        match link_with(&a, &b, &opts(), &c).expect("link").certificate() {
            Some(cert) => suite.push((format!("product {i}"), a, b, cert.clone())),
            None => missed += 1,
        }
    }
    let hyp = |s: f64| Isometry::from_matrix_unchecked(dilation(2.0)).conjugate_by(&Isometry::from_matrix_unchecked(boost(0, s)));
    let (a, b) = (hyp(0.0), hyp(2.5));
    match link_with(&a, &b, &opts(), &c).expect("link").certificate() {
        Some(cert) => suite.push(("ultra-parallel hyperbolics".into(), a, b, cert.clone())),
        None => missed += 1,
    }
    missed
}

fn c10_order_symmetry(suite: &Linked, missed: usize) -> Outcome {
    let c = ctx();
    let mut bad = Vec::new();
    for (name, a, b, cert) in suite {
        let forward = verify_link(a, b, cert, &c).passed;
        let back = link_with(b, a, &opts(), &c).expect("link");
        let back_ok = back.status() == LinkStatus::Linked;
        let rev = reverse_certificate(a, b, cert, &c).map(|rc| verify_link(b, a, &rc, &c).passed).unwrap_or(false);
        let round = back
            .certificate()
            .and_then(|bc| reverse_certificate(b, a, bc, &c).ok())
            .map(|fc| verify_link(a, b, &fc, &c).passed)
            .unwrap_or(false);
        if !(forward && back_ok && rev && round) {
            bad.push(format!("{name} (fwd {forward}, link(B,A) {back_ok}, reversed {rev}, round trip {round})"));
        }
    }
    let ok = bad.is_empty() && missed == 0 && !suite.is_empty();
    (ok, format!("linked pairs = {}, unlinked products = {missed}, failures = {bad:?}", suite.len()))
}

fn main() {
    // Sanity check on the kind of planes the generators produce.
    assert_eq!(standard(0, 1).kind(), GeoKind::Plane);
    let mut suite: Linked = Vec::new();
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 involution and fixed set", c1_involution()),
        ("2 composition concordance", c2_concordance()),
        ("3 common perpendicular", c3_common_perpendicular()),
        ("4 factorization round trip", c4_round_trip()),
        ("5 exhaustiveness", c5_exhaustiveness()),
        ("6 criterion/definition equivalence", c6_criteria()),
        ("7 Jordan forms", c7_jordan()),
    ];
    results.push(("8 counterexample pair", c8_counterexample(&mut suite)));
    results.push(("9 equidistance condition", c9_computational(&mut suite)));
    let missed = product_pairs(&mut suite);
    results.push(("10 order symmetry", c10_order_symmetry(&suite, missed)));
    let mut failed = 0;
    for (name, (ok, detail)) in &results {
        println!("{} criterion {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
        failed += !ok as usize;
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
