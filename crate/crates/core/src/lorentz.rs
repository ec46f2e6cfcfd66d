//! Lorentzian linear algebra on `R^{4,1}`: the form, vector classes and subspaces.

use nalgebra::{DMatrix, DVector, Matrix5, SymmetricEigen, Vector5};
use serde::{Deserialize, Serialize};

use crate::{Ctx, Error, Result, Scalar};

pub type V5<T> = Vector5<T>;
pub type M5<T> = Matrix5<T>;

/// `diag(1,1,1,1,-1)`.
pub fn jmat<T: Scalar>() -> M5<T> {
    let mut j = M5::identity();
    j[(4, 4)] = -T::one();
    j
}

/// Standard basis vector; index 4 is the time axis.
pub fn unit<T: Scalar>(i: usize) -> V5<T> {
    let mut v = V5::zeros();
    v[i] = T::one();
    v
}

pub fn lorentz_inner<T: Scalar>(u: &V5<T>, v: &V5<T>) -> T {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3] - u[4] * v[4]
}

pub fn lorentz_sq<T: Scalar>(u: &V5<T>) -> T {
    lorentz_inner(u, u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorKind {
    SpaceLike,
    TimeLike,
    LightLike,
}

pub fn classify_vector<T: Scalar>(v: &V5<T>, ctx: &Ctx<T>) -> Result<VectorKind> {
    let n2 = v.norm_squared();
    if n2.sqrt() <= ctx.tau {
        return Err(Error::ZeroVector);
    }
    let q = lorentz_sq(v);
    Ok(if q > ctx.tau * n2 {
        VectorKind::SpaceLike
    } else if q < -ctx.tau * n2 {
        VectorKind::TimeLike
    } else {
        VectorKind::LightLike
    })
}

/// Canonical representative: unit space-like, future unit time-like, or
/// Euclidean-unit future light-like.
pub fn normalize<T: Scalar>(v: &V5<T>, ctx: &Ctx<T>) -> Result<V5<T>> {
    let kind = classify_vector(v, ctx)?;
    Ok(match kind {
        VectorKind::SpaceLike => v / lorentz_sq(v).sqrt(),
        VectorKind::TimeLike => {
            let w = v / (-lorentz_sq(v)).sqrt();
            if w[4] < T::zero() {
                -w
            } else {
                w
            }
        }
        VectorKind::LightLike => {
            let w = v / v.norm();
            if w[4] < T::zero() {
                -w
            } else {
                w
            }
        }
    })
}

/// Lorentz projector `x -> sum_i eps_i <b_i,x> b_i` for a Lorentz-orthonormal list.
pub fn projector_from_on<T: Scalar>(on: &[V5<T>]) -> M5<T> {
    let j = jmat::<T>();
    let mut p = M5::zeros();
    for b in on {
        let eps = lorentz_sq(b).signum();
        p += (b * b.transpose()) * j * eps;
    }
    p
}

/// Thin SVD `(U, sigma, V^T)` with a checked reconstruction.
///
/// nalgebra's bidiagonal SVD occasionally returns inaccurate factors for rank-deficient
/// input; such results are recomputed on a row-rotated copy `Q m`, with `U = Q^T U'`.
pub fn svd<T: Scalar>(m: &DMatrix<T>) -> (DMatrix<T>, DVector<T>, DMatrix<T>) {
    let scale = m.norm().max(T::one());
    let tol = T::lit(1e3) * T::default_epsilon() * scale;
    let attempt = |q: Option<&DMatrix<T>>| {
        let a = match q {
            Some(q) => q * m,
            None => m.clone(),
        };
        let d = a.clone().svd(true, true);
        let (u, vt, s) = (d.u.expect("u requested"), d.v_t.expect("v_t requested"), d.singular_values);
        let err = (&u * DMatrix::from_diagonal(&s) * &vt - &a).norm();
        let u = match q {
            Some(q) => q.transpose() * u,
            None => u,
        };
        (err, u, s, vt)
    };
    let mut best = attempt(None);
    let n = m.nrows();
    let mut k = 0;
    while best.0 > tol && k < 8 {
        k += 1;
        let seed = DMatrix::from_fn(n, n, |i, j| T::lit((1.0 + (7 * i + 3 * j + 11 * k) as f64).sin()));
        let q = seed.qr().q();
        let next = attempt(Some(&q));
        if next.0 < best.0 {
            best = next;
        }
    }
    (best.1, best.2, best.3)
}

pub fn singular_values<T: Scalar>(m: &DMatrix<T>) -> DVector<T> {
    svd(m).1
}

/// Right singular vectors of `m` whose singular values are at most `rel * max(1, sigma_max)`.
pub fn nullspace<T: Scalar>(m: &M5<T>, rel: T) -> Vec<V5<T>> {
    let (_, s, vt) = svd(&DMatrix::from_fn(5, 5, |i, j| m[(i, j)]));
    let smax = s.max().max(T::one());
    (0..5).filter(|&i| s[i] <= rel * smax).map(|i| V5::from_fn(|k, _| vt[(i, k)])).collect()
}

/// The `k` right singular vectors with the smallest singular values.
pub fn smallest_singular<T: Scalar>(m: &M5<T>, k: usize) -> Vec<V5<T>> {
    let (_, s, vt) = svd(&DMatrix::from_fn(5, 5, |i, j| m[(i, j)]));
    let mut idx: Vec<usize> = (0..5).collect();
    idx.sort_by(|&a, &b| s[a].partial_cmp(&s[b]).unwrap_or(std::cmp::Ordering::Equal));
    idx.into_iter().take(k).map(|i| V5::from_fn(|r, _| vt[(i, r)])).collect()
}

/// Euclidean orthonormal frame of the span of `vectors`, rank decided by `rel * sigma_max`.
fn orth_frame<T: Scalar>(vectors: &[V5<T>], rel: T) -> Vec<V5<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DMatrix::from_fn(5, vectors.len(), |i, j| vectors[j][i]);
    let (u, s, _) = svd(&m);
    let smax = s.max();
    if smax <= T::zero() {
        return Vec::new();
    }
    (0..s.len()).filter(|&i| s[i] > rel * smax).map(|i| V5::from_fn(|r, _| u[(r, i)])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_time_like(&self) -> bool {
        self.minus == 1
    }
    pub fn is_degenerate(&self) -> bool {
        self.zero > 0
    }
}

/// A linear subspace of `R^{4,1}`.
///
/// Keeps the basis it was built from and an internal Euclidean-orthonormal frame used
/// for projectors, ranks and comparisons.
#[derive(Clone, Debug)]
pub struct SubspaceT<T: Scalar> {
    basis: Vec<V5<T>>,
    frame: Vec<V5<T>>,
}

impl<T: Scalar> SubspaceT<T> {
    /// Validating constructor: rejects dependent bases.
    pub fn new(basis: Vec<V5<T>>, ctx: &Ctx<T>) -> Result<Self> {
        if basis.len() > 5 {
            return Err(Error::DegenerateBasis);
        }
        let mut unit_cols = Vec::with_capacity(basis.len());
        for v in &basis {
            let n = v.norm();
            if n <= ctx.tau {
                return Err(Error::DegenerateBasis);
            }
            unit_cols.push(v / n);
        }
        if !unit_cols.is_empty() {
            let m = DMatrix::from_fn(5, unit_cols.len(), |i, j| unit_cols[j][i]);
            let smin = singular_values(&m).min();
            if smin * smin <= ctx.tau {
                return Err(Error::DegenerateBasis);
            }
        }
        let frame = orth_frame(&unit_cols, T::zero());
        Ok(SubspaceT { basis, frame })
    }

    /// Rank-revealing span; never fails.
    pub fn span(vectors: &[V5<T>], rel: T) -> Self {
        let frame = orth_frame(vectors, rel);
        SubspaceT { basis: frame.clone(), frame }
    }

    pub fn zero() -> Self {
        SubspaceT { basis: Vec::new(), frame: Vec::new() }
    }

    pub fn whole() -> Self {
        let frame: Vec<V5<T>> = (0..5).map(unit).collect();
        SubspaceT { basis: frame.clone(), frame }
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn basis(&self) -> &[V5<T>] {
        &self.basis
    }

    /// Euclidean-orthonormal frame.
    pub fn frame(&self) -> &[V5<T>] {
        &self.frame
    }

    /// Euclidean orthogonal projector.
    pub fn projector(&self) -> M5<T> {
        let mut p = M5::zeros();
        for f in &self.frame {
            p += f * f.transpose();
        }
        p
    }

    pub fn contains(&self, v: &V5<T>, tol: T) -> bool {
        let n = v.norm();
        if n == T::zero() {
            return true;
        }
        (v - self.projector() * v).norm() <= tol * n
    }

    /// Largest sine of a principal angle from `other` into `self`.
    pub fn max_sine_from(&self, other: &Self) -> T {
        let q = M5::identity() - self.projector();
        other
            .frame
            .iter()
            .map(|f| (q * f).norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn contains_subspace(&self, other: &Self, tol: T) -> bool {
        if other.dim() == 0 {
            return true;
        }
        if other.dim() > self.dim() {
            return false;
        }
        let q = M5::identity() - self.projector();
        let m = DMatrix::from_fn(5, other.dim(), |i, j| (q * other.frame[j])[i]);
        singular_values(&m).max() <= tol
    }

    /// Smallest sine of a principal angle between the two subspaces together with the
    /// unit vector of `other` realizing it.
    pub fn closest_direction(&self, other: &Self) -> Option<(T, V5<T>)> {
        if other.dim() == 0 || self.dim() == 0 {
            return None;
        }
        let q = M5::identity() - self.projector();
        let m = DMatrix::from_fn(5, other.dim(), |i, j| (q * other.frame[j])[i]);
        let (_, s, vt) = svd(&m);
        let (imin, smin) = s
            .iter()
            .enumerate()
            .fold((0usize, T::max_value().unwrap_or(T::one())), |acc, (i, &s)| {
                if s < acc.1 {
                    (i, s)
                } else {
                    acc
                }
            });
        let mut x = V5::zeros();
        for (j, f) in other.frame.iter().enumerate() {
            x += f * vt[(imin, j)];
        }
        Some((smin, x / x.norm()))
    }

    /// Whether the subspaces share a nonzero vector up to `tol` (sine of the smallest principal angle).
    pub fn meets(&self, other: &Self, tol: T) -> bool {
        self.closest_direction(other).map(|(s, _)| s <= tol).unwrap_or(false)
    }

    /// Chordal distance `|P1 - P2|_F / sqrt 2`; 1 when dimensions differ.
    pub fn distance(&self, other: &Self) -> T {
        if self.dim() != other.dim() {
            return T::one();
        }
        (self.projector() - other.projector()).norm() / T::lit(2.0).sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.distance(other) <= tol
    }

    /// Counts of positive, negative and zero eigenvalues of the Lorentz Gram matrix.
    pub fn signature(&self, ctx: &Ctx<T>) -> Signature {
        let k = self.dim();
        if k == 0 {
            return Signature { plus: 0, minus: 0, zero: 0 };
        }
        let j = jmat::<T>();
        let g = DMatrix::from_fn(k, k, |a, b| (self.frame[a].transpose() * j * self.frame[b])[0]);
        let eig = SymmetricEigen::new(g);
        let lmax = eig.eigenvalues.amax().max(T::one());
        let band = ctx.tau * lmax;
        let mut s = Signature { plus: 0, minus: 0, zero: 0 };
        for &l in eig.eigenvalues.iter() {
            if l > band {
                s.plus += 1;
            } else if l < -band {
                s.minus += 1;
            } else {
                s.zero += 1;
            }
        }
        s
    }

    /// Lorentz orthogonal complement.
    pub fn complement(&self) -> Self {
        let j = jmat::<T>();
        let mut k = M5::zeros();
        for f in &self.frame {
            let g = j * f;
            k += g * g.transpose();
        }
        let eig = SymmetricEigen::new(k);
        let half = T::lit(0.5);
        let frame: Vec<V5<T>> = (0..5)
            .filter(|&i| eig.eigenvalues[i] < half)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect();
        SubspaceT { basis: frame.clone(), frame }
    }

    /// Euclidean orthogonal complement.
    pub fn euclid_complement(&self) -> Self {
        let eig = SymmetricEigen::new(self.projector());
        let half = T::lit(0.5);
        let frame: Vec<V5<T>> = (0..5)
            .filter(|&i| eig.eigenvalues[i] < half)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect();
        SubspaceT { basis: frame.clone(), frame }
    }

    /// `span(S ∪ T)`.
    pub fn sum(&self, other: &Self, ctx: &Ctx<T>) -> Self {
        let mut v = self.frame.clone();
        v.extend_from_slice(&other.frame);
        Self::span(&v, ctx.tau)
    }

    /// `S ∩ T = (S^L + T^L)^L`.
    pub fn intersect(&self, other: &Self, ctx: &Ctx<T>) -> Self {
        self.complement().sum(&other.complement(), ctx).complement()
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &M5<T>) -> Self {
        let v: Vec<V5<T>> = self.frame.iter().map(|f| m * f).collect();
        let frame = orth_frame(&v, T::lit(1e-12));
        let basis: Vec<V5<T>> = self.basis.iter().map(|b| m * b).collect();
        SubspaceT { basis, frame }
    }

    /// Whether `m` maps the subspace into itself, up to `tol`.
    pub fn is_invariant_under(&self, m: &M5<T>, tol: T) -> bool {
        let q = M5::identity() - self.projector();
        self.frame.iter().all(|f| (q * (m * f)).norm() <= tol * (m * f).norm().max(T::one()))
    }

    /// Lorentz Gram–Schmidt on the stored basis: `<b_i,b_j> = ±δ_ij`, time-like vector last
    /// with positive time coordinate.
    pub fn orthonormal_basis(&self, ctx: &Ctx<T>) -> Result<Vec<V5<T>>> {
        if self.signature(ctx).is_degenerate() {
            return Err(Error::DegenerateSubspace);
        }
        let thr = T::lit(1e-3);
        let mut rem: Vec<V5<T>> = self.basis.clone();
        let mut out: Vec<V5<T>> = Vec::new();
        let mut guard = 0usize;
        while !rem.is_empty() {
            guard += 1;
            if guard > 64 {
                return Err(Error::DegenerateSubspace);
            }
            for v in rem.iter_mut() {
                for b in &out {
                    let s = lorentz_sq(b).signum();
                    *v -= b * (lorentz_inner(b, v) * s);
                }
            }
            let ratio = |v: &V5<T>| {
                let n2 = v.norm_squared();
                if n2 == T::zero() {
                    T::zero()
                } else {
                    lorentz_sq(v).abs() / n2
                }
            };
            let mut idx = rem.iter().position(|v| ratio(v) > thr);
            if idx.is_none() {
                let best = (0..rem.len())
                    .max_by(|&a, &b| {
                        ratio(&rem[a])
                            .partial_cmp(&ratio(&rem[b]))
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
                    .expect("nonempty");
                if ratio(&rem[best]) > ctx.tau {
                    idx = Some(best);
                }
            }
            match idx {
                Some(i) => {
                    let v = rem.remove(i);
                    out.push(v / lorentz_sq(&v).abs().sqrt());
                }
                None => {
                    if rem.len() < 2 {
                        return Err(Error::DegenerateSubspace);
                    }
                    let (a, b) = (rem[0], rem[1]);
                    let (p, m) = (a + b, a - b);
                    rem[0] = if ratio(&p) >= ratio(&m) { p } else { m };
                }
            }
        }
        let mut space: Vec<V5<T>> = Vec::new();
        let mut time: Option<V5<T>> = None;
        for b in out {
            if lorentz_sq(&b) < T::zero() {
                time = Some(if b[4] < T::zero() { -b } else { b });
            } else {
                space.push(b);
            }
        }
        space.extend(time);
        Ok(space)
    }

    /// Lorentz (not Euclidean) projector onto a non-degenerate subspace.
    pub fn lorentz_projector(&self, ctx: &Ctx<T>) -> Result<M5<T>> {
        Ok(projector_from_on(&self.orthonormal_basis(ctx)?))
    }

    /// The light-like direction of a subspace with signature `(k-1, 0, 1)`.
    pub fn null_direction(&self, ctx: &Ctx<T>) -> Option<V5<T>> {
        let sig = self.signature(ctx);
        if sig.zero != 1 || sig.minus != 0 {
            return None;
        }
        let v = self.projector() * unit::<T>(4);
        normalize(&v, &Ctx { tau: T::lit(1e-3), ..*ctx }).ok()
    }

    /// A future unit time-like vector of the subspace, if it is time-like.
    pub fn time_like_unit(&self, ctx: &Ctx<T>) -> Option<V5<T>> {
        if !self.signature(ctx).is_time_like() {
            return None;
        }
        self.orthonormal_basis(ctx).ok().and_then(|b| b.last().copied())
    }
}

/// Free-function forms of the subspace operations.
pub fn subspace_signature<T: Scalar>(s: &SubspaceT<T>, ctx: &Ctx<T>) -> Signature {
    s.signature(ctx)
}

pub fn lorentz_complement<T: Scalar>(s: &SubspaceT<T>) -> SubspaceT<T> {
    s.complement()
}

pub fn subspace_intersection<T: Scalar>(
    s: &SubspaceT<T>,
    t: &SubspaceT<T>,
    ctx: &Ctx<T>,
) -> SubspaceT<T> {
    s.intersect(t, ctx)
}

pub fn orthonormal_basis<T: Scalar>(s: &SubspaceT<T>, ctx: &Ctx<T>) -> Result<Vec<V5<T>>> {
    s.orthonormal_basis(ctx)
}

/// The two light-like directions of a time-like 2-dimensional subspace.
pub fn null_pair<T: Scalar>(line: &SubspaceT<T>, ctx: &Ctx<T>) -> Option<(V5<T>, V5<T>)> {
    if line.dim() != 2 {
        return None;
    }
    let on = line.orthonormal_basis(ctx).ok()?;
    if lorentz_sq(&on[1]) >= T::zero() {
        return None;
    }
    let (s, t) = (on[0], on[1]);
    let c = Ctx { tau: T::lit(1e-3), ..*ctx };
    Some((normalize(&(t + s), &c).ok()?, normalize(&(t - s), &c).ok()?))
}

/// Whether two light-like vectors represent the same ideal point.
pub fn same_ray<T: Scalar>(a: &V5<T>, b: &V5<T>, tol: T) -> bool {
    let (na, nb) = (a.norm(), b.norm());
    (a / na - b / nb).norm() <= tol || (a / na + b / nb).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: [f64; 5]) -> V5<f64> {
        V5::from_column_slice(&x)
    }

    fn ctx() -> Ctx<f64> {
        Ctx::default()
    }

    #[test]
    fn inner_examples() {
        assert_eq!(lorentz_inner(&unit::<f64>(4), &unit(4)), -1.0);
        let l = v([0., 0., 0., 1., 1.]);
        assert_eq!(lorentz_inner(&l, &l), 0.0);
        assert_eq!(lorentz_inner(&unit::<f64>(0), &unit(3)), 0.0);
    }

    #[test]
    fn vector_classes() {
        let c = ctx();
        assert_eq!(classify_vector(&unit::<f64>(4), &c).unwrap(), VectorKind::TimeLike);
        assert_eq!(classify_vector(&v([0., 0., 0., 1., 1.]), &c).unwrap(), VectorKind::LightLike);
        assert_eq!(classify_vector(&unit::<f64>(0), &c).unwrap(), VectorKind::SpaceLike);
        assert_eq!(classify_vector(&V5::<f64>::zeros(), &c), Err(Error::ZeroVector));
    }

    #[test]
    fn signatures() {
        let c = ctx();
        let s = SubspaceT::new(vec![unit(0), unit(1), unit(4)], &c).unwrap();
        assert_eq!(s.signature(&c), Signature { plus: 2, minus: 1, zero: 0 });
        let l = SubspaceT::new(vec![v([0., 0., 0., 1., 1.])], &c).unwrap();
        assert_eq!(l.signature(&c), Signature { plus: 0, minus: 0, zero: 1 });
        let e = SubspaceT::new(vec![unit(0), unit(3)], &c).unwrap();
        assert_eq!(e.signature(&c), Signature { plus: 2, minus: 0, zero: 0 });
    }

    #[test]
    fn dependent_basis_rejected() {
        let c = ctx();
        let r = SubspaceT::new(vec![unit(0), unit::<f64>(0) * 2.0], &c);
        assert_eq!(r.unwrap_err(), Error::DegenerateBasis);
    }

    #[test]
    fn complements() {
        let c = ctx();
        let s = SubspaceT::new(vec![unit(0), unit(1), unit(4)], &c).unwrap();
        let want = SubspaceT::new(vec![unit(2), unit(3)], &c).unwrap();
        assert!(s.complement().approx_eq(&want, 1e-12));
        let l = SubspaceT::new(vec![v([0., 0., 0., 1., 1.])], &c).unwrap();
        assert!(l.complement().contains(&v([0., 0., 0., 1., 1.]), 1e-12));
        let t = SubspaceT::new(vec![unit(3), unit(4)], &c).unwrap();
        let want = SubspaceT::new(vec![unit(0), unit(1), unit(2)], &c).unwrap();
        assert!(t.complement().approx_eq(&want, 1e-12));
    }

    #[test]
    fn intersections() {
        let c = ctx();
        let a = SubspaceT::new(vec![unit(0), unit(1), unit(4)], &c).unwrap();
        let b = SubspaceT::new(vec![unit(0), unit(2), unit(4)], &c).unwrap();
        let want = SubspaceT::new(vec![unit(0), unit(4)], &c).unwrap();
        assert!(a.intersect(&b, &c).approx_eq(&want, 1e-12));
        let b2 = SubspaceT::new(vec![unit(2), unit(3), unit(4)], &c).unwrap();
        let want = SubspaceT::new(vec![unit(4)], &c).unwrap();
        assert!(a.intersect(&b2, &c).approx_eq(&want, 1e-12));
    }

    #[test]
    fn gram_schmidt_examples() {
        let c = ctx();
        let s = SubspaceT::new(vec![v([2., 0., 0., 0., 0.]), v([1., 1., 0., 0., 0.])], &c).unwrap();
        let on = s.orthonormal_basis(&c).unwrap();
        assert!((on[0] - unit(0)).norm() < 1e-15);
        assert!((on[1] - unit(1)).norm() < 1e-15);
        let t = SubspaceT::new(vec![v([0., 0., 0., 0., 2.])], &c).unwrap();
        assert!((t.orthonormal_basis(&c).unwrap()[0] - unit(4)).norm() < 1e-15);
        let u = SubspaceT::new(vec![v([0., 0., 0., 1., 2.])], &c).unwrap();
        let b = u.orthonormal_basis(&c).unwrap()[0];
        let r3 = 3f64.sqrt();
        assert!((b - v([0., 0., 0., 1. / r3, 2. / r3])).norm() < 1e-15);
        assert!((lorentz_sq(&b) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn gram_schmidt_handles_null_inputs() {
        let c = ctx();
        let s = SubspaceT::new(vec![v([0., 0., 0., 1., 1.]), v([0., 0., 0., 1., -1.]), unit(0)], &c)
            .unwrap();
        let on = s.orthonormal_basis(&c).unwrap();
        for (i, a) in on.iter().enumerate() {
            for (j, b) in on.iter().enumerate() {
                let want = if i != j {
                    0.0
                } else if i == 2 {
                    -1.0
                } else {
                    1.0
                };
                assert!((lorentz_inner(a, b) - want).abs() < 1e-12);
            }
        }
        assert!(on[2][4] > 0.0);
        let d = SubspaceT::new(vec![v([0., 0., 0., 1., 1.]), unit(0)], &c).unwrap();
        assert_eq!(d.orthonormal_basis(&c), Err(Error::DegenerateSubspace));
    }

    #[test]
    fn null_pair_of_axis() {
        let c = ctx();
        let l = SubspaceT::new(vec![unit(3), unit(4)], &c).unwrap();
        let (a, b) = null_pair(&l, &c).unwrap();
        assert!(lorentz_sq(&a).abs() < 1e-14 && lorentz_sq(&b).abs() < 1e-14);
        assert!(!same_ray(&a, &b, 1e-6));
    }
}
