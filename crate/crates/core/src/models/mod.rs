//! The registered concrete models and the spec-driven constructor.

pub mod finsupp;
pub mod grid;
pub mod lex;
pub mod scalar;
pub mod zeromul;

pub use finsupp::{FinSuppFn, FinSuppRing};
pub use grid::{GridFn, GridRing};
pub use lex::{LexPlane, LexVec};
pub use scalar::ScalarRing;
pub use zeromul::{Coord2, ZeroMulRing};

use crate::lattice::ModelError;
use crate::rat::Rat;
use serde::{Deserialize, Serialize};

/// The `model` section of a spec file. Unknown fields are rejected, and
/// fields that do not apply to the requested kind are errors too: the
/// parse-validate-reject cycle leaves no partially constructed state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

impl ModelSpec {
    pub fn grid(carrier: &[&str], scale: &str) -> Self {
        ModelSpec {
            kind: "grid".into(),
            carrier: Some(carrier.iter().map(|s| s.to_string()).collect()),
            scale: Some(scale.into()),
        }
    }

    pub fn of_kind(kind: &str, scale: Option<&str>) -> Self {
        ModelSpec {
            kind: kind.into(),
            carrier: None,
            scale: scale.map(Into::into),
        }
    }
}

/// A constructed model of any registered family. Group-only models (the lex
/// plane) refuse ring-level commands at dispatch time.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Grid(GridRing),
    FinSupp(FinSuppRing),
    Lex(LexPlane),
    Scalar(ScalarRing),
    ZeroMul(ZeroMulRing),
}

impl AnyModel {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Grid(_) => "grid",
            AnyModel::FinSupp(_) => "finsupp",
            AnyModel::Lex(_) => "lex",
            AnyModel::Scalar(_) => "scalar",
            AnyModel::ZeroMul(_) => "zeromul",
        }
    }

    pub fn is_ring(&self) -> bool {
        !matches!(self, AnyModel::Lex(_))
    }
}

fn parse_scale(kind: &str, scale: &Option<String>) -> Result<Rat, ModelError> {
    match scale {
        None => Ok(Rat::one()),
        Some(s) => {
            Rat::parse(s).map_err(|e| ModelError::parse(s, format!("scale for `{kind}`: {e}")))
        }
    }
}

fn reject_field(
    kind: &str,
    field: &str,
    present: bool,
) -> Result<(), ModelError> {
    if present {
        Err(ModelError::UnexpectedField {
            kind: kind.to_owned(),
            field: field.to_owned(),
        })
    } else {
        Ok(())
    }
}

/// Builds a usable model from a validated spec.
pub fn make_model(spec: &ModelSpec) -> Result<AnyModel, ModelError> {
    let kind = spec.kind.as_str();
    match kind {
        "grid" => {
            let carrier = spec.carrier.clone().ok_or_else(|| ModelError::MissingField {
                kind: kind.to_owned(),
                field: "carrier".to_owned(),
            })?;
            let scale = parse_scale(kind, &spec.scale)?;
            Ok(AnyModel::Grid(GridRing::new(carrier, scale)?))
        }
        "finsupp" => {
            reject_field(kind, "carrier", spec.carrier.is_some())?;
            let scale = parse_scale(kind, &spec.scale)?;
            Ok(AnyModel::FinSupp(FinSuppRing::new(scale)?))
        }
        "lex" => {
            reject_field(kind, "carrier", spec.carrier.is_some())?;
            reject_field(kind, "scale", spec.scale.is_some())?;
            Ok(AnyModel::Lex(LexPlane))
        }
        "scalar" => {
            reject_field(kind, "carrier", spec.carrier.is_some())?;
            let scale = parse_scale(kind, &spec.scale)?;
            Ok(AnyModel::Scalar(ScalarRing::new(scale)?))
        }
        "zeromul" => {
            reject_field(kind, "carrier", spec.carrier.is_some())?;
            reject_field(kind, "scale", spec.scale.is_some())?;
            Ok(AnyModel::ZeroMul(ZeroMulRing))
        }
        other => Err(ModelError::UnknownKind(other.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_registered_kinds() {
        let g = make_model(&ModelSpec::grid(&["-1", "0", "1"], "2")).unwrap();
        match g {
            AnyModel::Grid(m) => {
                assert_eq!(m.points(), 3);
                assert_eq!(*m.scale(), Rat::from_int(2));
            }
            _ => panic!("expected grid"),
        }
        assert!(matches!(
            make_model(&ModelSpec::of_kind("lex", None)).unwrap(),
            AnyModel::Lex(_)
        ));
        assert!(matches!(
            make_model(&ModelSpec::of_kind("scalar", Some("1"))).unwrap(),
            AnyModel::Scalar(_)
        ));
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(make_model(&ModelSpec::of_kind("ring", None)).is_err());
        assert!(make_model(&ModelSpec::of_kind("grid", None)).is_err());
        assert!(make_model(&ModelSpec::grid(&["a", "a"], "1")).is_err());
        assert!(make_model(&ModelSpec::grid(&["a"], "0")).is_err());
        assert!(make_model(&ModelSpec::grid(&["a"], "-2")).is_err());
        // lex takes neither carrier nor scale
        let mut spec = ModelSpec::of_kind("lex", Some("1"));
        assert!(make_model(&spec).is_err());
        spec.scale = None;
        spec.carrier = Some(vec!["a".into()]);
        assert!(make_model(&spec).is_err());
    }
}
