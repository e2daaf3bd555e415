//! Curve fixtures and corpus files.

use std::path::Path;

use paritylab::curve::{CurveModel, CurveRecord};
use paritylab::{Error, Result};
use serde::{Deserialize, Serialize};

const BUILTIN: &str = include_str!("../fixtures/curves.json");

/// A corpus entry. Ranks are data with a citation, never computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFixture {
    pub label: String,
    pub ainvs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_provenance: Option<String>,
}

impl CurveFixture {
    pub fn validate(&self) -> Result<()> {
        if self.known_rank.is_some() && self.rank_provenance.as_deref().is_none_or(|s| s.trim().is_empty()) {
            return Err(Error::Parse(format!("{}: known_rank without rank_provenance", self.label)));
        }
        self.model().map(|_| ())
    }

    pub fn model(&self) -> Result<CurveModel> {
        CurveRecord { label: Some(self.label.clone()), ainvs: self.ainvs.clone() }.to_model()
    }

    pub fn rank_parity(&self) -> Option<u8> {
        self.known_rank.map(|r| (r % 2) as u8)
    }
}

pub fn builtin() -> Vec<CurveFixture> {
    serde_json::from_str(BUILTIN).expect("embedded corpus parses")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_corpus(path: &Path) -> Result<Vec<CurveFixture>> {
    let text = read(path)?;
    let corpus: Vec<CurveFixture> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    for f in &corpus {
        f.validate()?;
    }
    Ok(corpus)
}

/// `--curve` accepts a JSON file, an inline "[a1,a2,a3,a4,a6]" or a
/// built-in label such as "11a1".
pub fn resolve_curve(arg: &str) -> Result<(String, CurveModel)> {
    let t = arg.trim();
    if let Some(body) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let ainvs = body.split(',').map(|s| s.trim().trim_matches('"').to_string()).collect();
        let rec = CurveRecord { label: None, ainvs };
        return Ok((t.to_string(), rec.to_model()?));
    }
    let path = Path::new(t);
    if path.is_file() {
        let text = read(path)?;
        let rec: CurveRecord =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let fixture: serde_json::Value = serde_json::from_str(&text).unwrap();
        if fixture.get("known_rank").is_some_and(|r| !r.is_null())
            && fixture.get("rank_provenance").and_then(|p| p.as_str()).is_none_or(|s| s.trim().is_empty())
        {
            return Err(Error::Parse(format!("{}: known_rank without rank_provenance", path.display())));
        }
        let label = rec.label.clone().unwrap_or_else(|| path.display().to_string());
        return Ok((label, rec.to_model()?));
    }
    match builtin().into_iter().find(|f| f.label == t) {
        Some(f) => Ok((f.label.clone(), f.model()?)),
        None => Err(Error::Parse(format!("{t:?} is neither a file, an a-invariant list nor a known label"))),
    }
}

/// A line of an s3-mode corpus: multiplicities of 1, ε, ρ in the
/// Mordell–Weil representation (D₂ₚ when `p` is given).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Multiplicities {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

pub fn load_multiplicities(path: &Path) -> Result<Vec<Multiplicities>> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
