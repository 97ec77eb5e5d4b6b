//! Input documents and validation of GIT presentations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rank, rat, Rat};

/// The data `(C^{n+r}, (C*)^r, theta)`: column `rho` of `weights` is the
/// character `xi_rho` by which the torus scales the coordinate `x_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitPresentation {
    pub n: usize,
    pub r: usize,
    pub weights: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_generators: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    version: Option<u32>,
    n: usize,
    r: usize,
    weights: Vec<Vec<i64>>,
    theta: Vec<i64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    effective_generators: Option<Vec<Vec<i64>>>,
}

const PRESETS: &[(&str, &str)] = &[
    ("p1", include_str!("../../presets/p1.json")),
    ("p2", include_str!("../../presets/p2.json")),
    ("f2", include_str!("../../presets/f2.json")),
    ("local-p2", include_str!("../../presets/local-p2.json")),
    ("point", include_str!("../../presets/point.json")),
    ("point-r2", include_str!("../../presets/point-r2.json")),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

impl GitPresentation {
    /// Parse and validate a JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPresentation(format!("malformed document: {e}")))?;
        if let Some(v) = doc.version {
            if v != 1 {
                return Err(Error::InvalidPresentation(format!("unsupported document version {v}")));
            }
        }
        let p = GitPresentation {
            n: doc.n,
            r: doc.r,
            weights: doc.weights,
            theta: doc.theta,
            labels: doc.labels,
            effective_generators: doc.effective_generators,
        };
        p.validate_shape()?;
        Ok(p)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let text = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
        Self::from_json(text)
    }

    pub fn nrays(&self) -> usize {
        self.n + self.r
    }

    /// The character `xi_rho` as a column of the weight matrix.
    pub fn xi(&self, rho: usize) -> Vec<i64> {
        self.weights.iter().map(|row| row[rho]).collect()
    }

    pub fn label(&self, rho: usize) -> String {
        match &self.labels {
            Some(l) => l[rho].clone(),
            None => format!("x{}", rho + 1),
        }
    }

    /// Shape checks plus the rank condition.
    pub fn validate_shape(&self) -> Result<()> {
        let nr = self.nrays();
        if self.r == 0 {
            return Err(Error::InvalidPresentation("r must be at least 1".into()));
        }
        if nr + 2 > crate::exact::MAX_VARS {
            return Err(Error::InvalidPresentation(format!(
                "n + r = {nr} is too large (at most {} rays are supported)",
                crate::exact::MAX_VARS - 2
            )));
        }
        if self.weights.len() != self.r {
            return Err(Error::InvalidPresentation(format!(
                "weights has {} rows, expected r = {}",
                self.weights.len(),
                self.r
            )));
        }
        if let Some(row) = self.weights.iter().position(|row| row.len() != nr) {
            return Err(Error::InvalidPresentation(format!(
                "weights row {row} has {} entries, expected n + r = {nr}",
                self.weights[row].len()
            )));
        }
        if self.theta.len() != self.r {
            return Err(Error::InvalidPresentation(format!(
                "theta has {} entries, expected r = {}",
                self.theta.len(),
                self.r
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != nr {
                return Err(Error::InvalidPresentation(format!(
                    "labels has {} entries, expected n + r = {nr}",
                    labels.len()
                )));
            }
        }
        if let Some(gens) = &self.effective_generators {
            if let Some(g) = gens.iter().find(|g| g.len() != self.r) {
                return Err(Error::InvalidPresentation(format!(
                    "effective generator {g:?} has {} entries, expected r = {}",
                    g.len(),
                    self.r
                )));
            }
        }
        let m: Vec<Vec<Rat>> = self.weights.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
        let rk = rank(&m);
        if rk != self.r {
            return Err(Error::RankDeficient { rank: rk, expected: self.r });
        }
        Ok(())
    }

    /// Stable digest input: the canonical JSON serialization.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        for name in preset_names() {
            GitPresentation::preset(name).unwrap();
        }
        assert!(matches!(GitPresentation::preset("p9"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn shape_errors_are_actionable() {
        let bad = r#"{"n":1,"r":1,"weights":[[1,1,1]],"theta":[1]}"#;
        let e = GitPresentation::from_json(bad).unwrap_err();
        assert!(e.to_string().contains("expected n + r = 2"), "{e}");
        let rank_def = r#"{"n":1,"r":2,"weights":[[1,1,0],[2,2,0]],"theta":[1,1]}"#;
        assert_eq!(GitPresentation::from_json(rank_def).unwrap_err(), Error::RankDeficient { rank: 1, expected: 2 });
        let unknown = r#"{"n":1,"r":1,"weights":[[1,1]],"theta":[1],"colour":3}"#;
        assert!(GitPresentation::from_json(unknown).is_err());
    }
}
