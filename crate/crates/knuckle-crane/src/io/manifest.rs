//! Run manifests: the fully resolved configuration plus bookkeeping,
//! written next to every output.
//!
//! A manifest is itself a valid run configuration (the extra `[manifest]`
//! table is ignored by the config parser), so re-running from one
//! regenerates the outputs bit-identically; the wall-clock entry is
//! metadata and takes no part in reproduction.

use serde::{Deserialize, Serialize};

use crate::error::{CraneError, Result};
use crate::io::config::{config_to_toml, RawConfig};
use crate::sim::ScenarioConfig;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ManifestMeta {
    pub artifact_version: String,
    pub command: String,
    pub rng_seed: u64,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
}

/// Render a manifest: resolved config followed by the `[manifest]` table.
pub fn manifest_to_toml(cfg: &ScenarioConfig, meta: &ManifestMeta) -> String {
    #[derive(Serialize)]
    struct MetaTable<'a> {
        manifest: &'a ManifestMeta,
    }
    let mut text = config_to_toml(cfg);
    text.push('\n');
    text.push_str(
        &toml::to_string_pretty(&MetaTable { manifest: meta })
            .expect("manifest serialization is total"),
    );
    text
}

/// Read back both halves of a manifest.
pub fn manifest_from_toml(text: &str) -> Result<(ScenarioConfig, ManifestMeta)> {
    #[derive(Deserialize)]
    struct MetaTable {
        manifest: ManifestMeta,
    }
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| CraneError::Config(format!("TOML parse: {e}")))?;
    let meta: MetaTable =
        toml::from_str(text).map_err(|e| CraneError::Config(format!("TOML parse: {e}")))?;
    Ok((raw.build()?, meta.manifest))
}

pub fn artifact_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
