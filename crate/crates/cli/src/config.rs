//! Campaign configuration: a flat `key = value` text format, one pair per
//! line, with `#` comments. List-valued settings (`design`, `problem`)
//! repeat the key once per entry; scalar keys take the last occurrence.
//!
//! ```text
//! # three designs on two problems, short runs
//! design = SGA1
//! design = A5-I3
//! design = A6-I3
//! problem = F2
//! problem = F4
//! runs_per_cell = 10
//! max_generations = 500
//! stopping_interval = 100
//! master_seed = 7
//! family = normal
//! ```
//!
//! Omitting every `design` line selects all nine designs; omitting every
//! `problem` line selects all ten problems.

use crate::design::{Design, ALL_DESIGNS};
use opadapt_core::interpret::DistributionFamily;
use opadapt_core::objectives::ObjectiveId;

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub designs: Vec<&'static Design>,
    pub problems: Vec<ObjectiveId>,
    pub runs_per_cell: usize,
    pub max_generations: u64,
    pub stopping_interval: u64,
    pub master_seed: u64,
    pub family: DistributionFamily,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            designs: ALL_DESIGNS.iter().collect(),
            problems: ObjectiveId::ALL.to_vec(),
            runs_per_cell: 10,
            max_generations: 2000,
            stopping_interval: 100,
            master_seed: 1,
            family: DistributionFamily::Normal,
        }
    }
}

impl CampaignConfig {
    /// Parse the text of a config file.
    pub fn parse(text: &str) -> Result<CampaignConfig, String> {
        let mut designs: Vec<&'static Design> = Vec::new();
        let mut problems: Vec<ObjectiveId> = Vec::new();
        let mut cfg = CampaignConfig::default();

        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value', got '{line}'", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let ctx = |e: String| format!("line {}: {e}", lineno + 1);
            match key {
                "design" => designs.push(
                    Design::by_name(value)
                        .ok_or_else(|| ctx(format!("unknown design '{value}'")))?,
                ),
                "problem" => problems.push(value.parse().map_err(ctx)?),
                "runs_per_cell" => {
                    cfg.runs_per_cell =
                        value.parse().map_err(|e| ctx(format!("runs_per_cell: {e}")))?
                }
                "max_generations" => {
                    cfg.max_generations =
                        value.parse().map_err(|e| ctx(format!("max_generations: {e}")))?
                }
                "stopping_interval" => {
                    cfg.stopping_interval =
                        value.parse().map_err(|e| ctx(format!("stopping_interval: {e}")))?
                }
                "master_seed" => {
                    cfg.master_seed = value.parse().map_err(|e| ctx(format!("master_seed: {e}")))?
                }
                "family" => cfg.family = value.parse().map_err(ctx)?,
                _ => return Err(ctx(format!("unknown key '{key}'"))),
            }
        }

        if !designs.is_empty() {
            cfg.designs = designs;
        }
        if !problems.is_empty() {
            cfg.problems = problems;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.runs_per_cell < 1 {
            return Err("runs_per_cell must be at least 1".into());
        }
        if self.max_generations < 1 {
            return Err("max_generations must be at least 1".into());
        }
        if self.stopping_interval < 1 {
            return Err("stopping_interval must be at least 1".into());
        }
        if self.max_generations % self.stopping_interval != 0 {
            return Err(format!(
                "stopping_interval {} must divide max_generations {}",
                self.stopping_interval, self.max_generations
            ));
        }
        Ok(())
    }

    /// The recording generations: `interval, 2*interval, ..., max`.
    pub fn stopping_points(&self) -> Vec<u64> {
        (1..=self.max_generations / self.stopping_interval)
            .map(|k| k * self.stopping_interval)
            .collect()
    }
}
