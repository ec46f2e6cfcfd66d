//! JSON forms used by the command-line tool. Everything here is `f64`.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::banks::BankT;
use crate::geometry::{ideal_vector, BoundaryPoint, GeoKind, GeoObjectT};
use crate::isometry::{ClassTag, IsometryClass, IsometryClassSummaryT, IsometryT};
use crate::linker::{LinkOutcomeT, LinkStatus};
use crate::lorentz::{SubspaceT, V5};
use crate::{Ctx, Error, Result};

pub type Row = [f64; 5];

fn rows(vs: &[V5<f64>]) -> Vec<Row> {
    vs.iter().map(|v| [v[0], v[1], v[2], v[3], v[4]]).collect()
}

fn vector(r: &[f64]) -> Result<V5<f64>> {
    if r.len() != 5 {
        return Err(Error::BadParams(format!("expected 5 coordinates, got {}", r.len())));
    }
    Ok(V5::from_column_slice(r))
}

/// A matrix, given bare or as `{"matrix": ...}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Wrapped { matrix: Vec<Vec<f64>> },
    Bare(Vec<Vec<f64>>),
}

impl MatrixInput {
    pub fn isometry(&self, ctx: &Ctx<f64>) -> Result<IsometryT<f64>> {
        let m = match self {
            MatrixInput::Wrapped { matrix } | MatrixInput::Bare(matrix) => matrix,
        };
        if m.len() != 5 || m.iter().any(|r| r.len() != 5) {
            return Err(Error::BadParams("expected a 5x5 matrix".into()));
        }
        IsometryT::new(nalgebra::Matrix5::from_fn(|i, j| m[i][j]), ctx)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointInput {
    Finite([f64; 3]),
    Named(String),
}

impl PointInput {
    fn boundary(&self) -> Result<BoundaryPoint<f64>> {
        match self {
            PointInput::Finite(x) => Ok(BoundaryPoint::Finite(Vector3::from_column_slice(x))),
            PointInput::Named(s) if s == "inf" => Ok(BoundaryPoint::Infinity),
            PointInput::Named(s) => Err(Error::BadParams(format!("unknown point {s:?}"))),
        }
    }
}

/// A plane as a Lorentz basis or by three boundary points (`"inf"` allowed).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PlaneInput {
    Basis { basis: Vec<Vec<f64>> },
    Ideal { ideal_points: Vec<PointInput> },
}

impl PlaneInput {
    pub fn plane(&self, ctx: &Ctx<f64>) -> Result<GeoObjectT<f64>> {
        match self {
            PlaneInput::Basis { basis } => {
                let b = basis.iter().map(|r| vector(r)).collect::<Result<Vec<_>>>()?;
                GeoObjectT::plane(b, ctx)
            }
            PlaneInput::Ideal { ideal_points } => {
                if ideal_points.len() != 3 {
                    return Err(Error::BadParams("a plane needs three boundary points".into()));
                }
                let pts: Vec<V5<f64>> =
                    ideal_points.iter().map(|p| p.boundary().map(|b| ideal_vector(&b))).collect::<Result<_>>()?;
                GeoObjectT::plane(pts, ctx)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub matrix: Vec<Row>,
}

impl MatrixJson {
    pub fn of(m: &nalgebra::Matrix5<f64>) -> Self {
        MatrixJson { matrix: (0..5).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)], m[(i, 3)], m[(i, 4)]]).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneJson {
    pub basis: Vec<Row>,
}

impl PlaneJson {
    pub fn of(g: &GeoObjectT<f64>) -> Self {
        PlaneJson { basis: rows(g.carrier().basis()) }
    }
}

fn sub(s: &Option<SubspaceT<f64>>) -> Option<Vec<Row>> {
    s.as_ref().map(|s| rows(s.basis()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<Row>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisting_plane: Option<Vec<Row>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisting_hyperplane: Option<Vec<Row>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_ideal: Option<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_pair: Option<[Vec<Row>; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryJson {
    pub class: ClassTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<bool>,
    pub fixed: FixedJson,
}

impl SummaryJson {
    pub fn of(s: &IsometryClassSummaryT<f64>) -> Self {
        let (mut length, mut angle, mut angles, mut involution) = (None, None, None, None);
        match s.class {
            IsometryClass::Identity | IsometryClass::PureParabolic => {}
            IsometryClass::EllipticI { angle: a } | IsometryClass::ScrewParabolic { angle: a } => angle = Some(a),
            IsometryClass::EllipticII { involution: i, angles: (x, y) } => {
                angles = Some([x, y]);
                involution = Some(i);
            }
            IsometryClass::PureHyperbolic { length: l } => length = Some(l),
            IsometryClass::PureLoxodromic { length: l, angle: a } => {
                length = Some(l);
                angle = Some(a);
            }
        }
        let f = &s.fixed;
        let one = |v: &Option<V5<f64>>| v.map(|v| rows(&[v])[0]);
        let fixed = FixedJson {
            axis: sub(&f.axis),
            twisting_plane: sub(&f.twisting_plane),
            twisting_hyperplane: sub(&f.twisting_hyperplane),
            fixed_point: one(&f.fixed_point),
            fixed_ideal: one(&f.fixed_ideal),
            direction: one(&f.direction),
            invariant_pair: f.invariant_pair.as_ref().map(|(a, b)| [rows(a.basis()), rows(b.basis())]),
        };
        SummaryJson { class: s.tag(), length, angle, angles, involution, fixed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComposeJson {
    pub product: Vec<Row>,
    pub predicted: SummaryJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub k1: PlaneJson,
    pub k2: PlaneJson,
    pub residuals: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub s: Row,
    pub t: Row,
}

#[derive(Clone, Debug, Serialize)]
pub struct BankJson {
    pub member: bool,
    pub defect: f64,
    pub witness: Option<WitnessJson>,
}

impl BankJson {
    pub fn of(bank: &BankT<f64>, k: &GeoObjectT<f64>, ctx: &Ctx<f64>) -> Result<Self> {
        let member = bank.contains(k, ctx)?;
        let defect = bank.defect(k.carrier(), ctx);
        let witness = match bank.witness(k, ctx)? {
            Some(w) => Some(WitnessJson { s: rows(&[w.s.normal(ctx)?])[0], t: rows(&[w.t.normal(ctx)?])[0] }),
            None => None,
        };
        Ok(BankJson { member, defect, witness })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub alpha: PlaneJson,
    pub beta: PlaneJson,
    pub gamma: PlaneJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateJson {
    pub plane: PlaneJson,
    pub defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkJson {
    pub status: LinkStatus,
    pub condition: Option<String>,
    pub certificate: Option<CertificateJson>,
    pub residuals: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub closest: Vec<CandidateJson>,
}

impl LinkJson {
    pub fn of(out: &LinkOutcomeT<f64>) -> Self {
        let mut j = LinkJson {
            status: out.status(),
            condition: None,
            certificate: None,
            residuals: None,
            reason: None,
            closest: Vec::new(),
        };
        match out {
            LinkOutcomeT::Linked { certificate: c, condition } => {
                j.condition = Some(condition.clone());
                j.certificate = Some(CertificateJson {
                    alpha: PlaneJson::of(&c.alpha),
                    beta: PlaneJson::of(&c.beta),
                    gamma: PlaneJson::of(&c.gamma),
                });
                j.residuals = Some([c.residuals.0, c.residuals.1]);
            }
            LinkOutcomeT::NotLinked { reason } => j.reason = Some(reason.clone()),
            LinkOutcomeT::Undetermined { closest } => {
                j.closest = closest.iter().map(|c| CandidateJson { plane: PlaneJson::of(&c.plane), defect: c.defect }).collect();
            }
        }
        j
    }
}

/// A pair of isometries, as emitted by the `linked-pair` example.
#[derive(Clone, Debug, Deserialize)]
pub struct PairInput {
    pub a: MatrixInput,
    pub b: MatrixInput,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub beta: PlaneJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub error: &'static str,
    pub detail: String,
}

impl ErrorJson {
    pub fn of(e: &Error) -> Self {
        ErrorJson { error: e.code(), detail: e.to_string() }
    }
}

/// Checks that a parsed object is a plane.
pub fn expect_plane(g: &GeoObjectT<f64>) -> Result<()> {
    if g.kind() == GeoKind::Plane {
        Ok(())
    } else {
        Err(Error::WrongKind(format!("expected a plane, got {:?}", g.kind())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrix_forms_and_planes() {
        let c = Ctx::default();
        let id: Vec<Vec<f64>> = (0..5).map(|i| (0..5).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let bare: MatrixInput = serde_json::from_value(serde_json::json!(id)).unwrap();
        assert!(bare.isometry(&c).is_ok());
        let wrapped: MatrixInput = serde_json::from_value(serde_json::json!({ "matrix": id })).unwrap();
        assert!(wrapped.isometry(&c).is_ok());
        let p: PlaneInput =
            serde_json::from_value(serde_json::json!({"ideal_points": [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], "inf"]})).unwrap();
        let g = p.plane(&c).unwrap();
        assert!(g.carrier().contains(&crate::lorentz::unit(1), 1e-12));
        let bad: PlaneInput = serde_json::from_value(serde_json::json!({"ideal_points": ["nowhere", [0.0, 0.0, 0.0], "inf"]})).unwrap();
        assert_eq!(bad.plane(&c).unwrap_err().code(), "BadParams");
    }
}
