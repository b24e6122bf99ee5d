use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{GradedMatrix, Parity};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct Wire {
    dim: usize,
    parity: Vec<Parity>,
    entries: Vec<Vec<String>>,
}

impl GradedMatrix {
    fn to_wire(&self) -> Wire {
        let n = self.dim();
        Wire {
            dim: n,
            parity: self.parity().to_vec(),
            entries: (0..n)
                .map(|r| (0..n).map(|c| self.get(r, c).to_string()).collect())
                .collect(),
        }
    }

    fn from_wire(w: Wire) -> Result<GradedMatrix> {
        if w.parity.len() != w.dim || w.entries.len() != w.dim || w.entries.iter().any(|r| r.len() != w.dim) {
            return Err(Error::Shape(format!("matrix JSON is not {0}x{0}", w.dim)));
        }
        let entries = w
            .entries
            .iter()
            .flatten()
            .map(|s| s.parse::<Scalar>())
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::from_entries(w.parity, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("matrix serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_wire()).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<GradedMatrix> {
        let w: Wire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        GradedMatrix::from_wire(w)
    }
}

impl Serialize for GradedMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        GradedMatrix::from_wire(w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rep_parity;

    #[test]
    fn round_trip() {
        let mut m = GradedMatrix::zeros(rep_parity(3));
        m.set(0, 1, "(p^4-1)/(2*h)".parse().unwrap());
        m.set(2, 0, "-h^2/3".parse().unwrap());
        let s = m.to_json();
        assert!(s.contains("\"parity\":[\"even\",\"odd\",\"even\"]"));
        let back = GradedMatrix::from_json(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), s);
        assert!(GradedMatrix::from_json(r#"{"dim":2,"parity":["even"],"entries":[["1","0"],["0","1"]]}"#).is_err());
    }
}
