//! On-disk cache of newform eigenvalue tables, one JSON file per level.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{NFElem, NumberField, UniPoly};
use crate::modsym::{build_space, newform_decomposition, Eigenform, Sign};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "RANKIN_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".cache/eigenforms";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedOrbit {
    pub label: String,
    /// Minimal polynomial coefficients, constant term first.
    pub minpoly: Vec<String>,
    /// Prime to power-basis coordinates of `a_p`.
    pub eigenvalues: BTreeMap<u64, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenformCacheFile {
    pub version: u32,
    pub level: u64,
    pub orbits: Vec<CachedOrbit>,
}

impl EigenformCacheFile {
    pub fn from_forms(level: u64, forms: &[Eigenform]) -> Self {
        let orbits = forms
            .iter()
            .map(|f| CachedOrbit {
                label: f.label.clone(),
                minpoly: f.field.minpoly().coeffs().iter().map(format_rational).collect(),
                eigenvalues: f
                    .eigenvalues
                    .iter()
                    .map(|(&p, a)| (p, a.coords().iter().map(format_rational).collect()))
                    .collect(),
            })
            .collect();
        EigenformCacheFile { version: CACHE_VERSION, level, orbits }
    }

    pub fn to_forms(&self) -> Result<Vec<Eigenform>> {
        let mut out = Vec::new();
        for o in &self.orbits {
            let coeffs = o.minpoly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            let field = NumberField::new(UniPoly::new(coeffs))
                .map_err(|e| Error::Cache(format!("orbit {}: {e}", o.label)))?;
            let mut eigenvalues = BTreeMap::new();
            for (&p, c) in &o.eigenvalues {
                let c = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                let a = NFElem::new(&field, c).map_err(|e| Error::Cache(format!("a_{p} of {}: {e}", o.label)))?;
                eigenvalues.insert(p, a);
            }
            out.push(Eigenform { level: self.level, label: o.label.clone(), field, eigenvalues });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformCache {
    dir: PathBuf,
}

impl EigenformCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        EigenformCache { dir: dir.into() }
    }

    /// Explicit directory, else the environment variable, else the default.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        if let Some(d) = explicit {
            return Self::new(d);
        }
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::new(DEFAULT_CACHE_DIR),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, level: u64) -> PathBuf {
        self.dir.join(format!("level-{level}.json"))
    }

    pub fn load(&self, level: u64) -> Result<Option<Vec<Eigenform>>> {
        let path = self.path(level);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let file: EigenformCacheFile =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if file.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "{} has version {}, expected {CACHE_VERSION}",
                path.display(),
                file.version
            )));
        }
        if file.level != level {
            return Err(Error::Cache(format!("{} holds level {}", path.display(), file.level)));
        }
        file.to_forms().map(Some)
    }

    pub fn store(&self, level: u64, forms: &[Eigenform]) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let file = EigenformCacheFile::from_forms(level, forms);
        let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = self.dir.join(format!(".level-{level}.json.{}", std::process::id()));
        let mut h = fs::File::create(&tmp).map_err(io)?;
        h.write_all(text.as_bytes()).map_err(io)?;
        h.write_all(b"\n").map_err(io)?;
        drop(h);
        fs::rename(&tmp, self.path(level)).map_err(io)
    }

    /// Cached newforms if present, else compute and store them. The flag
    /// reports a cache hit.
    pub fn newforms(&self, level: u64) -> Result<(Vec<Eigenform>, bool)> {
        if let Some(f) = self.load(level)? {
            return Ok((f, true));
        }
        let forms = newform_decomposition(&build_space(level, Sign::Plus)?)?;
        self.store(level, &forms)?;
        Ok((forms, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = EigenformCache::new(dir.path());
        let (cold, hit) = cache.newforms(23).unwrap();
        assert!(!hit);
        let (warm, hit) = cache.newforms(23).unwrap();
        assert!(hit);
        assert_eq!(cold, warm);
    }

    #[test]
    fn rejects_other_versions() {
        let dir = tempfile::tempdir().unwrap();
        let cache = EigenformCache::new(dir.path());
        let text = r#"{"version": 99, "level": 11, "orbits": []}"#;
        fs::write(cache.path(11), text).unwrap();
        assert!(matches!(cache.load(11), Err(Error::Cache(_))));
    }
}
