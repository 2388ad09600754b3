use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sweep parameters for `run_all`. Every field has a default, so a config
/// file only lists what it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub a: Vec<f64>,
    pub alpha: Vec<f64>,
    /// Highest iterate for symbolic checks.
    pub n_max_symbolic: usize,
    /// Highest iterate for matrix-based checks.
    pub n_max_numeric: usize,
    /// Highest iterate on decay and limit curves.
    pub n_max_sot: usize,
    /// Section sizes, ascending.
    pub sections: Vec<usize>,
    /// Points of the disk, e.g. `"0.3"`, `"0.5i"`, `"0.1-0.2i"`.
    pub omega: Vec<String>,
    /// Angles for the numerical-range interior probe.
    pub angles: usize,
    /// Angles for the numerical radius in the norm sweep.
    pub radius_angles: usize,
    pub rel_cutoff: f64,
    pub margin: f64,
    pub corner: usize,
    pub seed: u64,
    /// Random family elements per algebra law.
    pub random_samples: usize,
    pub hyponormal_p: Vec<f64>,
    pub hyponormal_section: usize,
    pub out: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            a: vec![0.25, 0.5, 0.75],
            alpha: vec![-0.5, 0.0, 1.0],
            n_max_symbolic: 12,
            n_max_numeric: 4,
            n_max_sot: 30,
            sections: vec![64, 128, 256],
            omega: ["0", "0.3", "0.5i", "0.7", "-0.6"]
                .map(String::from)
                .to_vec(),
            angles: 256,
            radius_angles: 64,
            rel_cutoff: 1e-12,
            margin: 1e-6,
            corner: 8,
            seed: 20_240_601,
            random_samples: 64,
            hyponormal_p: vec![0.25, 0.5, 0.75, 1.0],
            hyponormal_section: 64,
            out: None,
        }
    }
}

pub fn parse_point(s: &str) -> Result<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| Error::Config(format!("cannot parse point {s:?}: {e}")))
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn omegas(&self) -> Result<Vec<Complex64>> {
        self.omega.iter().map(|s| parse_point(s)).collect()
    }

    pub fn largest_section(&self) -> Option<usize> {
        self.sections.last().copied()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if let Some(a) = self.a.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return bad(format!("a = {a} is outside (0, 1)"));
        }
        if let Some(al) = self
            .alpha
            .iter()
            .find(|al| !(**al > -1.0 && al.is_finite()))
        {
            return bad(format!("alpha = {al} must exceed -1"));
        }
        if self.sections.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!(
                "sections {:?} must be strictly ascending",
                self.sections
            ));
        }
        if self.sections.iter().any(|&n| n < 2) {
            return bad("sections must be at least 2".into());
        }
        for w in self.omegas()? {
            if !(w.norm() < 1.0) {
                return bad(format!("omega = {w} is not in the open unit disk"));
            }
        }
        if self.angles < 16 || self.radius_angles < 16 {
            return bad("angle counts must be at least 16".into());
        }
        if !(self.rel_cutoff > 0.0 && self.rel_cutoff <= 1e-3) {
            return bad(format!(
                "rel_cutoff = {} must lie in (0, 1e-3]",
                self.rel_cutoff
            ));
        }
        if self.corner == 0 {
            return bad("corner must be positive".into());
        }
        if self.n_max_symbolic > crate::closed_forms::DEFAULT_N_CAP
            || self.n_max_sot > crate::closed_forms::DEFAULT_N_CAP
        {
            return bad(format!(
                "iterate counts are capped at {}",
                crate::closed_forms::DEFAULT_N_CAP
            ));
        }
        if self.hyponormal_p.iter().any(|p| !(*p > 0.0)) {
            return bad("hyponormal exponents must be positive".into());
        }
        if self.hyponormal_section < 2 {
            return bad("hyponormal_section must be at least 2".into());
        }
        Ok(())
    }
}
