//! CurveDocument JSON schema: one of three payload kinds plus free-form
//! string metadata. All numbers must be finite.

use selfx_core::{C64, LaurentPolynomial};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplesPayload {
    pub angles: Vec<f64>,
    pub values: Vec<(f64, f64)>,
}

impl SamplesPayload {
    pub fn validate(&self) -> Result<(), String> {
        if self.angles.len() != self.values.len() {
            return Err(format!(
                "angles length {} != values length {}",
                self.angles.len(),
                self.values.len()
            ));
        }
        if self.angles.is_empty() {
            return Err("samples payload is empty".into());
        }
        let finite = self.angles.iter().all(|a| a.is_finite())
            && self.values.iter().all(|(re, im)| re.is_finite() && im.is_finite());
        if !finite {
            return Err("non-finite number in samples".into());
        }
        Ok(())
    }

    pub fn to_target(&self) -> Vec<(f64, C64)> {
        self.angles
            .iter()
            .zip(self.values.iter())
            .map(|(&a, &(re, im))| (a, C64::new(re, im)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolylinePayload {
    pub params: Vec<f64>,
    pub points: Vec<(f64, f64)>,
}

impl PolylinePayload {
    pub fn validate(&self) -> Result<(), String> {
        if self.params.len() != self.points.len() {
            return Err(format!(
                "params length {} != points length {}",
                self.params.len(),
                self.points.len()
            ));
        }
        if self.points.len() < 3 {
            return Err("polyline needs at least 3 points".into());
        }
        let finite = self.params.iter().all(|a| a.is_finite())
            && self.points.iter().all(|(x, y)| x.is_finite() && y.is_finite());
        if !finite {
            return Err("non-finite number in polyline".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum DocPayload {
    Laurent(LaurentPolynomial),
    Samples(SamplesPayload),
    Polyline(PolylinePayload),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDocument {
    #[serde(flatten)]
    pub payload: DocPayload,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl CurveDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        let doc: CurveDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match &doc.payload {
            DocPayload::Laurent(_) => {}
            DocPayload::Samples(s) => s.validate()?,
            DocPayload::Polyline(p) => p.validate()?,
        }
        Ok(doc)
    }

    pub fn laurent(p: LaurentPolynomial) -> Self {
        Self { payload: DocPayload::Laurent(p), metadata: BTreeMap::new() }
    }
}
