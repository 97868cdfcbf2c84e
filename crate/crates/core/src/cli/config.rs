use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::args::{Format, ZetaMode};
use crate::signal::SignalSpec;

/// Parameter values read from `--config`. Keys are the flag names with
/// dashes replaced by underscores; flags given on the command line win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub signal: Option<SignalSource>,
    pub zeta_x: Option<f64>,
    #[serde(rename = "zeta_N")]
    pub zeta_n: Option<u32>,
    pub lambda: Option<OneOrMany>,
    pub range: Option<[f64; 2]>,
    pub step: Option<f64>,
    pub threshold: Option<f64>,
    pub epsilon: Option<f64>,
    pub n: Option<u32>,
    #[serde(rename = "J")]
    pub order: Option<u32>,
    pub tol: Option<f64>,
    pub t_initial: Option<f64>,
    pub growth: Option<f64>,
    pub max_doublings: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub offset: Option<f64>,
    pub probe_window: Option<f64>,
    pub probe_step: Option<f64>,
    pub j_max: Option<u32>,
    pub initial_grid: Option<usize>,
    pub max_refinements: Option<u32>,
    pub x: Option<f64>,
    #[serde(rename = "N")]
    pub n_terms: Option<u32>,
    pub mode: Option<ZetaMode>,
}

/// A signal file path, or the signal specification itself.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SignalSource {
    Path(PathBuf),
    Inline(SignalSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

impl FileConfig {
    /// Reads a config file. Relative signal paths are resolved against the
    /// directory holding the config file.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut cfg: FileConfig =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if let Some(SignalSource::Path(p)) = &mut cfg.signal {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }
}
