use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Geodesic,
    Conical,
    Convex,
    Consistent,
    Reversible,
    MidpointProperty,
    Linear,
}

impl Property {
    pub const BICOMBING: [Property; 6] = [
        Property::Geodesic,
        Property::Conical,
        Property::Convex,
        Property::Consistent,
        Property::Reversible,
        Property::MidpointProperty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Geodesic => "geodesic",
            Property::Conical => "conical",
            Property::Convex => "convex",
            Property::Consistent => "consistent",
            Property::Reversible => "reversible",
            Property::MidpointProperty => "midpoint_property",
            Property::Linear => "linear",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The tuple that produced the worst violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub tuple_index: u64,
    /// Flat coordinates of each point (`[x, y]` for planar points,
    /// `[x0, v0, x1, v1, ...]` for monotone functions).
    pub points: Vec<Vec<f64>>,
    pub t_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub bicombing: String,
    pub passed: bool,
    /// `"inf"` in JSON when a sample could not be evaluated at all.
    #[serde(serialize_with = "ser_violation", deserialize_with = "de_violation")]
    pub worst_violation: f64,
    pub tol: f64,
    pub witness: Option<Witness>,
    pub samples_evaluated: u64,
    pub seed: u64,
}

impl PropertyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:<18} {} worst={:.3e} tol={:.0e} n={}",
            self.bicombing,
            self.property,
            if self.passed { "pass" } else { "FAIL" },
            self.worst_violation,
            self.tol,
            self.samples_evaluated
        )
    }
}

fn ser_violation<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

fn de_violation<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(v) => Ok(v),
        Raw::Str(s) if s == "inf" => Ok(f64::INFINITY),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("bad violation `{s}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_infinite_violation() {
        let report = PropertyReport {
            property: Property::MidpointProperty,
            bicombing: "b".into(),
            passed: false,
            worst_violation: f64::INFINITY,
            tol: 1e-9,
            witness: Some(Witness {
                tuple_index: 3,
                points: vec![vec![0.0, 1.0]],
                t_values: vec![0.5],
            }),
            samples_evaluated: 10,
            seed: 42,
        };
        let json = report.to_json();
        assert!(json.contains("\"worst_violation\": \"inf\""));
        assert!(json.contains("\"property\": \"midpoint_property\""));
        let back: PropertyReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
