//! Run configurations and the manifests that record them.
//!
//! A manifest is a valid `--config` file: `{"command", "config", "seeds"}`.
//! Only `config` is read back; `seeds` documents the derived per-run seeds.

use std::path::Path;

use anyhow::{bail, Context};
use mdbo_core::clustering::BLOB_SIGMA;
use mdbo_core::harness::RunSeed;
use mdbo_core::{Algorithm, ExperimentPlan, OptimizerSettings};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusterConfig {
    /// CSV input; exclusive with `synthetic`.
    pub input: Option<String>,
    /// Generator spec such as `blobs:k=2,n=6000,d=11`.
    pub synthetic: Option<String>,
    pub k: usize,
    pub algorithm: Algorithm,
    /// Lloyd iteration cap for the k-means comparison.
    pub max_iters: usize,
    pub seed: u64,
    pub settings: OptimizerSettings,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            input: None,
            synthetic: None,
            k: 2,
            algorithm: Algorithm::Mdbo,
            max_iters: 100,
            seed: 0,
            settings: OptimizerSettings::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSeeds {
    pub data: u64,
    pub optimizer: u64,
    pub kmeans: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest<C, S> {
    pub command: String,
    pub config: C,
    pub seeds: S,
}

#[derive(Deserialize)]
struct ConfigOnly<C> {
    command: String,
    config: C,
}

pub type BenchManifest = Manifest<ExperimentPlan, Vec<RunSeed>>;
pub type ClusterManifest = Manifest<ClusterConfig, ClusterSeeds>;

/// Reads the `config` member of a manifest-shaped file written for `command`.
pub fn load<C: DeserializeOwned>(path: &Path, command: &str) -> anyhow::Result<C> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let file: ConfigOnly<C> =
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    if file.command != command {
        bail!("config {} is for `{}`, not `{command}`", path.display(), file.command);
    }
    Ok(file.config)
}

/// Parameters of the synthetic data generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobSpec {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub sigma: f64,
}

/// Parses `blobs:k=2,n=6000,d=11[,sigma=0.05]`.
pub fn parse_blobs(spec: &str) -> anyhow::Result<BlobSpec> {
    let Some(params) = spec.strip_prefix("blobs:") else {
        bail!("unknown synthetic generator `{spec}`; expected `blobs:k=K,n=N,d=D[,sigma=S]`");
    };
    let mut out = BlobSpec { k: 2, n: 6000, d: 11, sigma: BLOB_SIGMA };
    for pair in params.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = pair.split_once('=').with_context(|| format!("`{pair}` is not key=value"))?;
        let bad = || format!("bad value `{value}` for `{key}`");
        match key.trim() {
            "k" => out.k = value.trim().parse().with_context(bad)?,
            "n" => out.n = value.trim().parse().with_context(bad)?,
            "d" => out.d = value.trim().parse().with_context(bad)?,
            "sigma" => out.sigma = value.trim().parse().with_context(bad)?,
            other => bail!("unknown blobs parameter `{other}`; valid: k, n, d, sigma"),
        }
    }
    Ok(out)
}
