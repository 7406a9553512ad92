//! JSON form of a model: `{kind, labels, atoms, valuation, measures}` with
//! measure values as decimal strings or `"inf"`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExtNat, Measure, MeasuresModel, ModelKind, Natural};
use crate::algebra::AtomSet;
use crate::error::{Error, Result};
use crate::syntax::Labels;

#[derive(Serialize, Deserialize)]
struct ModelWire {
    kind: ModelKind,
    labels: Vec<String>,
    atoms: usize,
    valuation: BTreeMap<String, Vec<usize>>,
    measures: Vec<Vec<String>>,
}

impl<N: Natural> MeasuresModel<N> {
    fn to_wire(&self) -> ModelWire {
        ModelWire {
            kind: self.kind,
            labels: self.labels.iter().map(|l| l.to_string()).collect(),
            atoms: self.atoms,
            valuation: self
                .labels
                .iter()
                .zip(&self.valuation)
                .map(|(l, v)| (l.to_string(), v.indices()))
                .collect(),
            measures: self
                .measures
                .iter()
                .map(|m| m.values().iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    fn from_wire(wire: ModelWire) -> Result<Self> {
        let labels = Labels::new(&wire.labels)?;
        if let Some(extra) = wire.valuation.keys().find(|k| !labels.contains(k)) {
            return Err(Error::UnknownLabel(extra.clone()));
        }
        let valuation = labels
            .iter()
            .map(|l| {
                let idx = wire
                    .valuation
                    .get(l.as_str())
                    .ok_or_else(|| Error::Invalid(format!("no valuation for label {l}")))?;
                AtomSet::from_indices(wire.atoms, idx)
            })
            .collect::<Result<Vec<_>>>()?;
        let measures = wire
            .measures
            .iter()
            .map(|m| {
                m.iter()
                    .map(|v| v.parse::<ExtNat<N>>())
                    .collect::<Result<Vec<_>>>()
                    .map(Measure::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(wire.kind, labels, wire.atoms, valuation, measures)
    }
}

impl<N: Natural> Serialize for MeasuresModel<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de, N: Natural> Deserialize<'de> for MeasuresModel<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ModelWire::deserialize(d)?;
        Self::from_wire(wire).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AtomSpace;
    use num_bigint::BigUint;

    #[test]
    fn round_trip() {
        let sp = AtomSpace::new(Labels::new(["e", "f"]).unwrap()).unwrap();
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let m = MeasuresModel::canonical(
            ModelKind::Infinitary,
            &sp,
            vec![Measure::new(vec![
                ExtNat::Fin(BigUint::from(0u32)),
                ExtNat::Inf,
                ExtNat::Fin(big),
                ExtNat::Fin(BigUint::from(1u32)),
            ])],
        )
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"infinitary","labels":["e","f"],"atoms":4,"valuation":{"e":[1,3],"f":[2,3]},"measures":[["0","inf","123456789012345678901234567890","1"]]}"#
        );
        let back: MeasuresModel<BigUint> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_kind = r#"{"kind":"finitary","labels":["a"],"atoms":2,"valuation":{"a":[1]},"measures":[["inf","1"]]}"#;
        assert!(serde_json::from_str::<MeasuresModel<u64>>(bad_kind).is_err());
        let extra = r#"{"kind":"finitary","labels":["a"],"atoms":2,"valuation":{"a":[1],"b":[]},"measures":[["1","1"]]}"#;
        assert!(serde_json::from_str::<MeasuresModel<u64>>(extra).is_err());
        let range = r#"{"kind":"finitary","labels":["a"],"atoms":2,"valuation":{"a":[2]},"measures":[["1","1"]]}"#;
        assert!(serde_json::from_str::<MeasuresModel<u64>>(range).is_err());
    }
}
