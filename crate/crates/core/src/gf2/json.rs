use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Gf2Matrix;

/// Wire form of a matrix: shape plus one `0`/`1` string per row.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let data = (0..self.rows())
            .map(|r| {
                (0..self.cols())
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            data,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gf2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let m = MatrixJson::deserialize(d)?;
        if m.data.len() != m.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but data has {}",
                m.rows,
                m.data.len()
            )));
        }
        let mut out = Gf2Matrix::zeros(m.rows, m.cols);
        for (r, line) in m.data.iter().enumerate() {
            if line.len() != m.cols {
                return Err(D::Error::custom(format!(
                    "row {r} has {} entries, expected {}",
                    line.len(),
                    m.cols
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => out.set(r, c, true),
                    other => return Err(D::Error::custom(format!("row {r} has invalid digit {other:?}"))),
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = Gf2Matrix::parse(&["101", "010"]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":3,"data":["101","010"]}"#);
        let back: Gf2Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let empty: Gf2Matrix = serde_json::from_str(r#"{"rows":1,"cols":0,"data":[""]}"#).unwrap();
        assert_eq!(empty.shape(), (1, 0));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(serde_json::from_str::<Gf2Matrix>(r#"{"rows":1,"cols":2,"data":["1"]}"#).is_err());
        assert!(serde_json::from_str::<Gf2Matrix>(r#"{"rows":1,"cols":1,"data":["2"]}"#).is_err());
    }
}
