//! Generator files: the JSON contract between constructions, fixtures, and
//! the CLI. Matrix entries are little-endian coefficient vectors over GF(p).

use crate::error::{Error, Result};
use crate::geometry::{identity_mat, ModelTag};
use crate::group::{GroupCtx, GroupElem};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

/// `{"q":5,"model":"fermat","generators":[[[..],[..],[..]], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub q: u64,
    pub model: String,
    /// generators[g][row][col] = coefficient vector of one GF(q^2) entry
    pub generators: Vec<Vec<Vec<Vec<u64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl GeneratorFile {
    pub fn from_elems(gens: &[GroupElem], provenance: Option<serde_json::Value>) -> GeneratorFile {
        let ctx = &gens[0].ctx;
        let f = ctx.field();
        let generators = gens
            .iter()
            .map(|g| {
                g.mat
                    .iter()
                    .map(|row| row.iter().map(|e| f.coeffs_vec(e)).collect())
                    .collect()
            })
            .collect();
        GeneratorFile {
            q: ctx.q(),
            model: ctx.model.tag.as_str().to_string(),
            generators,
            provenance,
        }
    }

    pub fn to_elems(&self) -> Result<Vec<GroupElem>> {
        let tag = ModelTag::parse(&self.model)?;
        let ctx: Arc<GroupCtx> = GroupCtx::new(tag, self.q)?;
        let f = ctx.field();
        let mut out = Vec::new();
        for g in &self.generators {
            if g.len() != 3 || g.iter().any(|r| r.len() != 3) {
                return Err(Error::BadGeneratorFile("matrix is not 3x3".into()));
            }
            let mut m = identity_mat(f);
            for (i, row) in g.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    m[i][j] = f.from_coeffs(entry)?;
                }
            }
            out.push(GroupElem::new(&ctx, m)?);
        }
        if out.is_empty() {
            return Err(Error::BadGeneratorFile("no generators".into()));
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<GeneratorFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, serde_json::to_string_pretty(self).map_err(Error::from)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_recipe, Recipe};

    #[test]
    fn round_trip_preserves_generators() {
        let gens = build_recipe(5, &Recipe::B2 { m: 4 }).unwrap();
        let gf = GeneratorFile::from_elems(&gens, Some(serde_json::json!({"recipe": "b2"})));
        let text = serde_json::to_string(&gf).unwrap();
        let parsed: GeneratorFile = serde_json::from_str(&text).unwrap();
        let back = parsed.to_elems().unwrap();
        assert_eq!(back.len(), gens.len());
        for (a, b) in gens.iter().zip(&back) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_non_unitary_input() {
        let text = r#"{"q":3,"model":"fermat","generators":[[[[1],[1],[0]],[[0],[1],[0]],[[0],[0],[1]]]]}"#;
        let parsed: GeneratorFile = serde_json::from_str(text).unwrap();
        assert!(parsed.to_elems().is_err());
    }
}
