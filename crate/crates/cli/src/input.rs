//! The JSON input document for surface parameterizations.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use tropsurf::arith::rat_parse;
use tropsurf::generic::GenericInput;
use tropsurf::poly::LaurentPoly;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub variables: [String; 2],
    #[serde(default = "default_delta")]
    pub delta: u64,
    pub polynomials: Vec<PolyDoc>,
    #[serde(default)]
    pub options: InputOptions,
}

fn default_delta() -> u64 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub name: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub exp: [i64; 2],
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    #[serde(default)]
    pub suppress_bivalent: bool,
    #[serde(default)]
    pub keep_zero_edges: bool,
    #[serde(default)]
    pub mixed_volume: bool,
}

impl InputDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self, String> {
        let text = std::str::from_utf8(bytes).map_err(|e| format!("not UTF-8: {e}"))?;
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| format!("malformed input document: {e}"))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), String> {
        if self.delta == 0 {
            return Err("delta must be positive".into());
        }
        for p in &self.polynomials {
            let mut seen: BTreeSet<[i64; 2]> = BTreeSet::new();
            for t in &p.terms {
                rat_parse(&t.coeff)
                    .map_err(|e| format!("polynomial {}: {e}", p.name))?;
                if !seen.insert(t.exp) {
                    return Err(format!(
                        "polynomial {}: duplicate exponent [{}, {}]",
                        p.name, t.exp[0], t.exp[1]
                    ));
                }
            }
            if p.terms.is_empty() {
                return Err(format!("polynomial {} has no terms", p.name));
            }
        }
        Ok(())
    }

    pub fn to_generic_input(&self) -> Result<GenericInput, String> {
        let polys: Vec<LaurentPoly> = self
            .polynomials
            .iter()
            .map(|p| {
                LaurentPoly::from_terms(
                    p.terms
                        .iter()
                        .map(|t| ((t.exp[0], t.exp[1]), rat_parse(&t.coeff).unwrap())),
                )
            })
            .collect();
        GenericInput::new(polys, self.delta).map_err(|e| e.to_string())
    }
}
