use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use finstudio_core::RuleSet;

/// Preferred default when present.
pub const PREFERRED_DEFAULT: &str = "pk-fy2014-15";

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Load {
        path: PathBuf,
        source: finstudio_core::Error,
    },
    #[error("no *.rules.json files in {}", .0.display())]
    Empty(PathBuf),
    #[error("rule-set id {0:?} is defined more than once")]
    Duplicate(String),
}

/// Immutable id → rule-set map with a default entry.
#[derive(Debug, Clone)]
pub struct RulesetRegistry {
    sets: BTreeMap<String, Arc<RuleSet>>,
    default_id: String,
}

impl RulesetRegistry {
    pub fn builtin() -> Self {
        Self::from_rulesets(vec![RuleSet::builtin()]).expect("one rule-set")
    }

    pub fn from_rulesets(sets: Vec<RuleSet>) -> Result<Self, RegistryError> {
        let mut map = BTreeMap::new();
        for set in sets {
            let id = set.id.clone();
            if map.insert(id.clone(), Arc::new(set)).is_some() {
                return Err(RegistryError::Duplicate(id));
            }
        }
        let default_id = if map.contains_key(PREFERRED_DEFAULT) {
            PREFERRED_DEFAULT.to_string()
        } else {
            map.keys().next().cloned().ok_or(RegistryError::Empty(PathBuf::new()))?
        };
        Ok(RulesetRegistry {
            sets: map,
            default_id,
        })
    }

    /// Loads every `*.rules.json` file in `dir` (not recursive).
    pub fn from_dir(dir: &Path) -> Result<Self, RegistryError> {
        let io_err = |source| RegistryError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(io_err)?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.ends_with(".rules.json"))
            })
            .collect();
        paths.sort();
        if paths.is_empty() {
            return Err(RegistryError::Empty(dir.to_path_buf()));
        }
        let mut sets = Vec::with_capacity(paths.len());
        for path in paths {
            let text = fs::read_to_string(&path).map_err(|source| RegistryError::Io {
                path: path.clone(),
                source,
            })?;
            let set = finstudio_core::load_ruleset(&text)
                .map_err(|source| RegistryError::Load { path, source })?;
            sets.push(set);
        }
        Self::from_rulesets(sets)
    }

    /// The named rule-set, or the default when `id` is `None`.
    pub fn get(&self, id: Option<&str>) -> Option<&Arc<RuleSet>> {
        self.sets.get(id.unwrap_or(&self.default_id))
    }

    pub fn default_id(&self) -> &str {
        &self.default_id
    }

    pub fn iter(&self) -> impl Iterator<Item = &RuleSet> {
        self.sets.values().map(|s| s.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_one_default_entry() {
        let r = RulesetRegistry::builtin();
        assert_eq!(r.default_id(), "pk-fy2014-15");
        assert_eq!(r.iter().count(), 1);
        assert!(r.get(None).is_some());
        assert!(r.get(Some("nope")).is_none());
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = RulesetRegistry::from_rulesets(vec![RuleSet::builtin(), RuleSet::builtin()])
            .unwrap_err();
        assert!(matches!(err, RegistryError::Duplicate(_)));
    }

    #[test]
    fn falls_back_to_first_id() {
        let mut a = RuleSet::builtin();
        a.id = "b-set".into();
        let mut b = RuleSet::builtin();
        b.id = "a-set".into();
        let r = RulesetRegistry::from_rulesets(vec![a, b]).unwrap();
        assert_eq!(r.default_id(), "a-set");
    }
}
