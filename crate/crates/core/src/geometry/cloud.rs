use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{NerveError, Result};

/// A finite set of points in `ℝ^d`, indexed by position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    d: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        for p in &points {
            if p.len() != d {
                return Err(NerveError::DimensionMismatch { expected: d, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(NerveError::Schema(format!("non-finite coordinate in {p:?}")));
            }
        }
        Ok(PointCloud { d, points })
    }

    /// Infers the dimension from the first point.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        Self::new(d, points)
    }

    /// Uniform samples from `[0, scale]^d`.
    pub fn random(n: usize, d: usize, scale: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n).map(|_| (0..d).map(|_| rng.gen::<f64>() * scale).collect()).collect();
        PointCloud { d, points }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Points selected by index.
    pub fn select(&self, idx: &[usize]) -> Vec<Vec<f64>> {
        idx.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cloud serializes")
    }

    /// Parses `{"d": 2, "points": [[x, y], ...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PointCloud = serde_json::from_str(s).map_err(|e| NerveError::Schema(e.to_string()))?;
        Self::new(raw.d, raw.points)
    }

    /// Parses one point per row. A first row that is not numeric is treated as a header.
    pub fn from_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
        let mut points = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| NerveError::Schema(e.to_string()))?;
            let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(p) => points.push(p),
                Err(_) if row == 0 => continue,
                Err(e) => return Err(NerveError::Schema(format!("row {row}: {e}"))),
            }
        }
        Self::from_points(points)
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv_agree() {
        let a = PointCloud::from_json_str(r#"{"d":2,"points":[[0,0],[1,0.5]]}"#).unwrap();
        let b = PointCloud::from_csv("x,y\n0,0\n1,0.5\n".as_bytes()).unwrap();
        assert_eq!(a, b);
        assert_eq!(PointCloud::from_json_str(&a.to_json().to_string()).unwrap(), a);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(PointCloud::from_json_str(r#"{"d":2,"points":[[0,0],[1]]}"#).is_err());
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(PointCloud::random(5, 2, 1.0, 3), PointCloud::random(5, 2, 1.0, 3));
        assert_ne!(PointCloud::random(5, 2, 1.0, 3), PointCloud::random(5, 2, 1.0, 4));
    }
}
