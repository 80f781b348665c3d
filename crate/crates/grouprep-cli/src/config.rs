//! TOML run configuration. Every key is optional; missing sections fall
//! back to the library defaults so an empty file is a valid config.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use grouprep::suites::SuiteConfig;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default)]
    pub ring: Ring,
    #[serde(default)]
    pub output: Output,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    pub line_points: Option<usize>,
    pub box_half: Option<f64>,
    pub plane_points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub identity: Option<f64>,
    pub transfer: Option<f64>,
    pub spectral_threshold: Option<f64>,
    pub gabor_threshold: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub l2g_a: Option<(f64, f64, usize)>,
    pub l2g_b: Option<(f64, f64, usize)>,
    pub calderon_a: Option<(f64, f64)>,
    pub calderon_b_half: Option<f64>,
    pub wh_half: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ring {
    pub alphas: Option<usize>,
    pub radius: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    /// human-readable report path (stdout always gets a copy)
    pub text: Option<PathBuf>,
    /// line-delimited structured records
    pub records: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config `{}`", path.display()))?;
        // toml errors carry line/column spans; keep them in the message
        let cfg: RunConfig = toml::from_str(&text)
            .with_context(|| format!("config `{}` does not parse", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, v) in [
            ("identity", t.identity),
            ("transfer", t.transfer),
            ("spectral_threshold", t.spectral_threshold),
            ("gabor_threshold", t.gabor_threshold),
        ] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    bail!("tolerances.{name} must be > 0, got {v}");
                }
            }
        }
        Ok(())
    }

    pub fn suite_config(&self) -> SuiteConfig {
        let mut c = SuiteConfig::default();
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(v) = self.grids.line_points {
            c.line_points = v;
        }
        if let Some(v) = self.grids.box_half {
            c.box_half = v;
        }
        if let Some(v) = self.grids.plane_points {
            c.plane_points = v;
        }
        if let Some(v) = self.tolerances.identity {
            c.identity_tol = v;
        }
        if let Some(v) = self.tolerances.transfer {
            c.transfer_tol = v;
        }
        if let Some(v) = self.tolerances.spectral_threshold {
            c.spectral_threshold = v;
        }
        if let Some(v) = self.tolerances.gabor_threshold {
            c.gabor_threshold = v;
        }
        if let Some(v) = self.truncation.l2g_a {
            c.l2g_a = v;
        }
        if let Some(v) = self.truncation.l2g_b {
            c.l2g_b = v;
        }
        if let Some(v) = self.truncation.calderon_a {
            c.calderon_a = v;
        }
        if let Some(v) = self.truncation.calderon_b_half {
            c.calderon_b_half = v;
        }
        if let Some(v) = self.truncation.wh_half {
            c.wh_half = v;
        }
        if let Some(v) = self.ring.alphas {
            c.ring_alphas = v;
        }
        if let Some(v) = self.ring.radius {
            c.ring_radius = v;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_defaults() {
        let cfg: RunConfig = toml::from_str("").unwrap();
        let s = cfg.suite_config();
        assert_eq!(s.seed, SuiteConfig::default().seed);
    }

    #[test]
    fn sections_override() {
        let cfg: RunConfig = toml::from_str(
            "seed = 11\n[grids]\nline_points = 256\n[tolerances]\ntransfer = 1e-8\n",
        )
        .unwrap();
        let s = cfg.suite_config();
        assert_eq!(s.seed, 11);
        assert_eq!(s.line_points, 256);
        assert_eq!(s.transfer_tol, 1e-8);
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let cfg: RunConfig = toml::from_str("[tolerances]\nidentity = 0.0\n").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<RunConfig>("spline = 3\n").is_err());
    }
}
