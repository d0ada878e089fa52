//! Flat key-value experiment configuration.
//!
//! The format is one `section.key = value` assignment per line, `#` comments,
//! and comma-separated lists. An empty file is a complete configuration: every
//! key has a default mirroring the standard simulation setup. Unknown keys are
//! rejected so typos fail loudly instead of silently running defaults.
//!
//! ```text
//! network.node_count = 800
//! run.planners = CMIP, GIGM-MIP
//! run.source_counts = 10, 20, 40, 80
//! run.seeds = 0, 1, 2
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use masim_core::{AgentParams, EnergyParams, NetworkConfig, Point};

/// The planners the harness knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Planner {
    Cmip,
    ClMip,
    GigmMip,
}

impl Planner {
    pub const ALL: [Planner; 3] = [Planner::Cmip, Planner::ClMip, Planner::GigmMip];

    /// The label used in config files, CSV rows, and plot legends.
    pub fn label(self) -> &'static str {
        match self {
            Planner::Cmip => "CMIP",
            Planner::ClMip => "CL-MIP",
            Planner::GigmMip => "GIGM-MIP",
        }
    }

    pub fn from_label(s: &str) -> Option<Planner> {
        match s {
            "CMIP" => Some(Planner::Cmip),
            "CL-MIP" => Some(Planner::ClMip),
            "GIGM-MIP" => Some(Planner::GigmMip),
            _ => None,
        }
    }
}

impl fmt::Display for Planner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Fully resolved harness configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub network: NetworkConfig,
    pub agent: AgentParams,
    pub energy: EnergyParams,
    pub planners: Vec<Planner>,
    /// Source counts swept by the vary-sources scenario.
    pub source_counts: Vec<usize>,
    /// Aggregation ratios swept by the vary-aggregation scenario.
    pub aggregation_ratios: Vec<f64>,
    /// Fixed source count used by the vary-aggregation scenario. Defaults to
    /// 80, capped by the node count for small deployments.
    pub aggregation_source_count: usize,
    /// Partition count; `None` means one partition per 20 sources.
    pub k: Option<usize>,
    /// Agent payload threshold in bits; `None` means 10 per-source
    /// contributions at the cell's aggregation ratio.
    pub ma_dpt_bits: Option<f64>,
    /// CL-MIP grouping radius in meters; `None` picks the documented default.
    pub vcl_radius_m: Option<f64>,
    /// Base seeds; each (sweep point, seed) pair is one independent trial.
    pub seeds: Vec<u64>,
    pub output_path: PathBuf,
}

impl ExperimentConfig {
    /// Applies command-line overrides on top of a loaded config and
    /// re-validates. Each argument mirrors one flag; `None` leaves the config
    /// value alone.
    pub fn apply_overrides(
        &mut self,
        planners: Option<&str>,
        seeds: Option<&str>,
        k: Option<&str>,
        ma_dpt: Option<&str>,
    ) -> Result<(), ConfigError> {
        if let Some(value) = planners {
            self.planners = value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    Planner::from_label(s).ok_or_else(|| {
                        err(format!(
                            "--planner: `{s}` is not one of CMIP, CL-MIP, GIGM-MIP"
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
        }
        if let Some(value) = seeds {
            self.seeds = value
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|_| err(format!("--seeds: `{s}` is not a non-negative integer")))
                })
                .collect::<Result<_, _>>()?;
        }
        if let Some(value) = k {
            self.k = match value {
                "auto" => None,
                v => Some(
                    v.parse::<usize>()
                        .map_err(|_| err(format!("--k: `{v}` is not an integer or `auto`")))?,
                ),
            };
        }
        if let Some(value) = ma_dpt {
            self.ma_dpt_bits = match value {
                "auto" => None,
                v => Some(
                    v.parse::<f64>()
                        .map_err(|_| err(format!("--ma-dpt: `{v}` is not a number or `auto`")))?,
                ),
            };
        }
        validate(self)
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            network: NetworkConfig::default(),
            agent: AgentParams::default(),
            energy: EnergyParams::default(),
            planners: Planner::ALL.to_vec(),
            source_counts: (10..=80).step_by(5).collect(),
            aggregation_ratios: (1..=9).map(|i| i as f64 / 10.0).collect(),
            aggregation_source_count: 80,
            k: None,
            ma_dpt_bits: None,
            vcl_radius_m: None,
            seeds: (0..30).collect(),
            output_path: PathBuf::from("results"),
        }
    }
}

/// Configuration failure: a parse error (with its line number) or an invalid
/// value (named by its field).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn err_at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: message.into(),
    }
}

fn err(message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: None,
        message: message.into(),
    }
}

/// Reads and parses a config file; missing keys fall back to defaults.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Parses config text into a validated [`ExperimentConfig`].
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut sink_x: Option<f64> = None;
    let mut sink_y: Option<f64> = None;
    let mut aggregation_source_count: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err_at(line_no, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();

        match key {
            "network.field_width" => cfg.network.field_width_m = f64_value(key, value, line_no)?,
            "network.field_height" => cfg.network.field_height_m = f64_value(key, value, line_no)?,
            "network.node_count" => cfg.network.node_count = usize_value(key, value, line_no)?,
            "network.transmission_range" => {
                cfg.network.transmission_range_m = f64_value(key, value, line_no)?
            }
            "network.sink_x" => sink_x = Some(f64_value(key, value, line_no)?),
            "network.sink_y" => sink_y = Some(f64_value(key, value, line_no)?),
            "agent.processing_code_bits" => {
                cfg.agent.processing_code_bits = f64_value(key, value, line_no)?
            }
            "agent.data_rate_bps" => cfg.agent.data_rate_bps = f64_value(key, value, line_no)?,
            "agent.processing_rate_bps" => {
                cfg.agent.processing_rate_bps = f64_value(key, value, line_no)?
            }
            "agent.access_delay_s" => cfg.agent.access_delay_s = f64_value(key, value, line_no)?,
            "agent.control_delay_s" => cfg.agent.control_delay_s = f64_value(key, value, line_no)?,
            "agent.raw_data_bits" => cfg.agent.raw_data_bits = f64_value(key, value, line_no)?,
            "agent.reduction_ratio" => cfg.agent.reduction_ratio = f64_value(key, value, line_no)?,
            "agent.reduction_means_kept" => {
                cfg.agent.reduction_means_kept = bool_value(key, value, line_no)?
            }
            "agent.aggregation_ratio" => {
                cfg.agent.aggregation_ratio = f64_value(key, value, line_no)?
            }
            "agent.clone_cost_s" => cfg.agent.clone_cost_s = f64_value(key, value, line_no)?,
            "energy.elec_j_per_bit" => cfg.energy.elec_j_per_bit = f64_value(key, value, line_no)?,
            "energy.amp_j_per_bit_m2" => {
                cfg.energy.amp_j_per_bit_m2 = f64_value(key, value, line_no)?
            }
            "run.planners" => cfg.planners = planner_list(value, line_no)?,
            "run.source_counts" => cfg.source_counts = list(key, value, line_no, usize_value)?,
            "run.aggregation_ratios" => {
                cfg.aggregation_ratios = list(key, value, line_no, f64_value)?
            }
            "run.aggregation_source_count" => {
                aggregation_source_count = Some(usize_value(key, value, line_no)?)
            }
            "run.k" => cfg.k = auto_or(key, value, line_no, usize_value)?,
            "run.ma_dpt" => cfg.ma_dpt_bits = auto_or(key, value, line_no, f64_value)?,
            "run.vcl_radius" => cfg.vcl_radius_m = auto_or(key, value, line_no, f64_value)?,
            "run.seeds" => cfg.seeds = list(key, value, line_no, u64_value)?,
            "run.output_path" => cfg.output_path = PathBuf::from(value),
            _ => return Err(err_at(line_no, format!("unknown key `{key}`"))),
        }
    }

    cfg.network.sink_position = Point::new(
        sink_x.unwrap_or(cfg.network.field_width_m / 2.0),
        sink_y.unwrap_or(cfg.network.field_height_m / 2.0),
    );
    cfg.aggregation_source_count =
        aggregation_source_count.unwrap_or_else(|| 80.min(cfg.network.node_count));
    validate(&cfg)?;
    Ok(cfg)
}

fn f64_value(key: &str, value: &str, line: usize) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| err_at(line, format!("{key}: `{value}` is not a number")))
}

fn usize_value(key: &str, value: &str, line: usize) -> Result<usize, ConfigError> {
    value.parse::<usize>().map_err(|_| {
        err_at(
            line,
            format!("{key}: `{value}` is not a non-negative integer"),
        )
    })
}

fn u64_value(key: &str, value: &str, line: usize) -> Result<u64, ConfigError> {
    value.parse::<u64>().map_err(|_| {
        err_at(
            line,
            format!("{key}: `{value}` is not a non-negative integer"),
        )
    })
}

fn bool_value(key: &str, value: &str, line: usize) -> Result<bool, ConfigError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err_at(line, format!("{key}: `{value}` is not true/false"))),
    }
}

fn list<T>(
    key: &str,
    value: &str,
    line: usize,
    item: impl Fn(&str, &str, usize) -> Result<T, ConfigError>,
) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(key, s, line))
        .collect()
}

fn auto_or<T>(
    key: &str,
    value: &str,
    line: usize,
    item: impl Fn(&str, &str, usize) -> Result<T, ConfigError>,
) -> Result<Option<T>, ConfigError> {
    if value == "auto" {
        Ok(None)
    } else {
        item(key, value, line).map(Some)
    }
}

fn planner_list(value: &str, line: usize) -> Result<Vec<Planner>, ConfigError> {
    let planners: Vec<Planner> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            Planner::from_label(s).ok_or_else(|| {
                err_at(
                    line,
                    format!("run.planners: `{s}` is not one of CMIP, CL-MIP, GIGM-MIP"),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(planners)
}

fn validate(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    cfg.network
        .validate()
        .map_err(|m| err(format!("network.{m}")))?;
    cfg.agent
        .validate()
        .map_err(|m| err(format!("agent.{m}")))?;
    cfg.energy
        .validate()
        .map_err(|m| err(format!("energy.{m}")))?;

    if cfg.planners.is_empty() {
        return Err(err("run.planners: at least one planner is required"));
    }
    if cfg.source_counts.is_empty() {
        return Err(err("run.source_counts: at least one count is required"));
    }
    for &count in &cfg.source_counts {
        if count == 0 || count > cfg.network.node_count {
            return Err(err(format!(
                "run.source_counts: {count} is outside 1..={}",
                cfg.network.node_count
            )));
        }
    }
    if cfg.aggregation_ratios.is_empty() {
        return Err(err(
            "run.aggregation_ratios: at least one ratio is required",
        ));
    }
    for &f in &cfg.aggregation_ratios {
        if !(f > 0.0 && f <= 1.0) {
            return Err(err(format!(
                "run.aggregation_ratios: {f} is outside (0, 1]"
            )));
        }
    }
    if cfg.aggregation_source_count == 0 || cfg.aggregation_source_count > cfg.network.node_count {
        return Err(err(format!(
            "run.aggregation_source_count: {} is outside 1..={}",
            cfg.aggregation_source_count, cfg.network.node_count
        )));
    }
    if cfg.k == Some(0) {
        return Err(err("run.k: must be >= 1 or auto"));
    }
    if let Some(ma_dpt) = cfg.ma_dpt_bits {
        if !(ma_dpt.is_finite() && ma_dpt > 0.0) {
            return Err(err("run.ma_dpt: must be > 0 or auto"));
        }
    }
    if let Some(radius) = cfg.vcl_radius_m {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(err("run.vcl_radius: must be > 0 or auto"));
        }
    }
    if cfg.seeds.is_empty() {
        return Err(err("run.seeds: at least one seed is required"));
    }
    Ok(())
}
