//! JSON documents read and written by the command line.
//!
//! Rationals are strings `"p/q"` in canonical form; on input bare integers
//! and unreduced fractions are accepted too.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use valcalc_core::{format_rational, parse_rational, Cluster, MonomialIdeal, Rational, SurfaceValuation};

use crate::error::CliError;

/// A rational that serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    /// 1-based indices of the earlier points this one is proximate to.
    pub proximate_to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterDoc {
    pub points: Vec<PointDoc>,
}

impl ClusterDoc {
    pub fn to_cluster(&self) -> Result<Cluster, CliError> {
        let lists: Vec<Vec<usize>> = self.points.iter().map(|p| p.proximate_to.clone()).collect();
        Ok(Cluster::from_one_based(&lists)?)
    }

    pub fn from_cluster(c: &Cluster) -> Self {
        ClusterDoc {
            points: c
                .to_one_based()
                .into_iter()
                .map(|proximate_to| PointDoc { proximate_to })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDoc {
    pub cluster: ClusterDoc,
    pub normalization: Q,
}

impl ValuationDoc {
    pub fn to_valuation(&self) -> Result<SurfaceValuation, CliError> {
        let cluster = Arc::new(self.cluster.to_cluster()?);
        Ok(SurfaceValuation::divisorial(cluster, &self.normalization.0)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDoc {
    pub mults: Vec<Q>,
    pub residual: Q,
}

/// A monomial ideal as its list of generator exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealDoc(pub Vec<Vec<u64>>);

impl IdealDoc {
    pub fn to_ideal(&self) -> Result<MonomialIdeal, CliError> {
        let nvars = self
            .0
            .first()
            .map(Vec::len)
            .ok_or_else(|| CliError::Parse("an ideal needs at least one generator".into()))?;
        Ok(MonomialIdeal::new(nvars, self.0.clone())?)
    }

    pub fn from_ideal(a: &MonomialIdeal) -> Self {
        IdealDoc(a.gens().to_vec())
    }
}

/// Either a bare cluster (normalized by `1`) or a full valuation document.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum SurfaceInput {
    Valuation(ValuationDoc),
    Cluster(ClusterDoc),
}

impl SurfaceInput {
    pub fn to_valuation(&self) -> Result<SurfaceValuation, CliError> {
        match self {
            SurfaceInput::Valuation(v) => v.to_valuation(),
            SurfaceInput::Cluster(c) => {
                Ok(SurfaceValuation::divisorial(Arc::new(c.to_cluster()?), &Rational::from_integer(1.into()))?)
            }
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline; field order is declaration order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use valcalc_core::rational::rat;

    fn round_trip<T>(value: &T)
    where
        T: Serialize + for<'de> Deserialize<'de> + PartialEq + fmt::Debug,
    {
        let text = to_json(value);
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, value);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn documents_round_trip() {
        let cluster: ClusterDoc = serde_json::from_str(
            r#"{"points":[{"proximate_to":[]},{"proximate_to":[1]},{"proximate_to":[2,1]}]}"#,
        )
        .unwrap();
        round_trip(&cluster);
        assert_eq!(ClusterDoc::from_cluster(&cluster.to_cluster().unwrap()), cluster);
        round_trip(&ValuationDoc { cluster, normalization: Q(rat(3, 2)) });
        round_trip(&GermDoc { mults: vec![Q(rat(1, 1)), Q(rat(0, 1))], residual: Q(rat(0, 1)) });
        round_trip(&IdealDoc(vec![vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(serde_json::to_string(&Q(rat(-4, 6))).unwrap(), r#""-2/3""#);
        let q: Q = serde_json::from_str(r#""4/-6""#).unwrap();
        assert_eq!(q, Q(rat(-2, 3)));
        let q: Q = serde_json::from_str("5").unwrap();
        assert_eq!(q, Q(rat(5, 1)));
        assert!(serde_json::from_str::<Q>(r#""1/0""#).is_err());
    }

    #[test]
    fn surface_input_accepts_both_shapes() {
        let bare: SurfaceInput =
            serde_json::from_str(r#"{"points":[{"proximate_to":[]},{"proximate_to":[1]}]}"#).unwrap();
        assert!(matches!(bare, SurfaceInput::Cluster(_)));
        let full: SurfaceInput = serde_json::from_str(
            r#"{"cluster":{"points":[{"proximate_to":[]}]},"normalization":"2/1"}"#,
        )
        .unwrap();
        assert_eq!(full.to_valuation().unwrap().normalization(), &rat(2, 1));
        assert!(serde_json::from_str::<SurfaceInput>(r#"{"points":[{"proximate":[]}]}"#).is_err());
    }
}
