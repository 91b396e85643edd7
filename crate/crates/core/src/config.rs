//! Simulation parameters: definition, validation, and TOML (de)serialization.
//!
//! Field names carry explicit units (`_min`, `_per_min`, `_m`, `_mps`,
//! `_hz`) so unit errors surface in review rather than in output data.

use std::fs;
use std::ops::Deref;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Minutes in the diurnal cycle; timespans partition `[0, 1440)`.
pub const DIURNAL_MINUTES: f64 = 1440.0;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{field} must be a positive count")]
    NonPositiveCount { field: &'static str },
    #[error("event_rate_per_min must be positive, got {value}")]
    NonPositiveRate { value: f64 },
    #[error("total_time_min must be finite and non-negative, got {value}")]
    InvalidTotalTime { value: f64 },
    #[error("{field} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { field: &'static str, value: f64 },
    #[error("normal_counts has length {got}, expected num_roles = {expected}")]
    NormalCountsLength { expected: usize, got: usize },
    #[error("P exceeds role capacity: normal_counts[{role}] = {count} but role {role} has {capacity} actions")]
    NormalCountExceedsCapacity { role: usize, count: usize, capacity: usize },
    #[error("role_concentration has {got} rows, expected one per timespan ({expected})")]
    ConcentrationRows { expected: usize, got: usize },
    #[error("role_concentration row {row} has length {got}, expected num_roles = {expected}")]
    ConcentrationRowLength { row: usize, expected: usize, got: usize },
    #[error("role_concentration[{row}][{col}] must be finite and non-negative, got {value}")]
    InvalidConcentration { row: usize, col: usize, value: f64 },
    #[error("role_concentration row {row} has no strictly positive entry")]
    AllZeroConcentrationRow { row: usize },
    #[error("action_membership has {got} rows, expected num_actions = {expected}")]
    MembershipRows { expected: usize, got: usize },
    #[error("action_membership row {action} has length {got}, expected num_roles = {expected}")]
    MembershipRowLength { action: usize, expected: usize, got: usize },
    #[error("action_membership entries must be 0 or 1; row {action} col {role} is {value}")]
    MembershipEntry { action: usize, role: usize, value: u8 },
    #[error("action in multiple roles: action_membership row {action} sums to {sum}")]
    ActionInMultipleRoles { action: usize, sum: u32 },
    #[error("action in no role: action_membership row {action} sums to 0")]
    ActionInNoRole { action: usize },
    #[error("timespans_min must contain at least one interval")]
    TimespansEmpty,
    #[error("timespan {index} is empty or reversed: [{start}, {end})")]
    TimespanReversed { index: usize, start: f64, end: f64 },
    #[error("timespans must start at 0 minutes, got {start}")]
    TimespansNotAnchored { start: f64 },
    #[error("timespan {index} starts at {start} but the previous interval ends at {previous_end}")]
    TimespanGapOrOverlap { index: usize, previous_end: f64, start: f64 },
    #[error("timespans must end at {DIURNAL_MINUTES} minutes, got {end}")]
    TimespansShort { end: f64 },
    #[error("action_roles entry {index} is {role}, expected a role below num_roles = {num_roles}")]
    ActionRoleOutOfRange { index: usize, role: usize, num_roles: usize },
    #[error("exactly one of action_roles and action_membership must be given")]
    ActionsSpec,
    #[error("bin_edges must be strictly ascending; edge {index} breaks the order")]
    EdgeOrder { index: usize },
    #[error("bin_edges needs at least two entries, got {got}")]
    TooFewEdges { got: usize },
    #[error("bin_mass has length {got}, expected {expected} (one per bin)")]
    MassLength { expected: usize, got: usize },
    #[error("bin_mass[{index}] must be finite and non-negative, got {value}")]
    InvalidMass { index: usize, value: f64 },
    #[error("bin_mass sums to {sum}, expected 1 within 1e-9")]
    MassSum { sum: f64 },
    #[error("{field} must have strictly positive support; first bin edge is {edge}")]
    NonPositiveSupport { field: &'static str, edge: f64 },
    #[error("noise_sigma_m must be finite and non-negative, got {value}")]
    InvalidNoiseSigma { value: f64 },
    #[error("reading config: {0}")]
    Io(String),
    #[error("parsing config: {0}")]
    Toml(String),
}

/// A piecewise-uniform distribution described by normalized histogram bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    bin_edges: Vec<f64>,
    bin_mass: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(bin_edges: Vec<f64>, bin_mass: Vec<f64>) -> Result<Self, ConfigError> {
        if bin_edges.len() < 2 {
            return Err(ConfigError::TooFewEdges { got: bin_edges.len() });
        }
        for (i, pair) in bin_edges.windows(2).enumerate() {
            if !(pair[0] < pair[1]) {
                return Err(ConfigError::EdgeOrder { index: i + 1 });
            }
        }
        if bin_mass.len() != bin_edges.len() - 1 {
            return Err(ConfigError::MassLength {
                expected: bin_edges.len() - 1,
                got: bin_mass.len(),
            });
        }
        let mut sum = 0.0;
        for (i, &m) in bin_mass.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(ConfigError::InvalidMass { index: i, value: m });
            }
            sum += m;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ConfigError::MassSum { sum });
        }
        Ok(EmpiricalDistribution { bin_edges, bin_mass })
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn bin_mass(&self) -> &[f64] {
        &self.bin_mass
    }

    pub fn num_bins(&self) -> usize {
        self.bin_mass.len()
    }

    pub fn min(&self) -> f64 {
        self.bin_edges[0]
    }

    pub fn max(&self) -> f64 {
        *self.bin_edges.last().expect("validated edges")
    }

    /// Mean under the piecewise-uniform reading (mass at bin midpoints).
    pub fn mean(&self) -> f64 {
        self.bin_mass
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(m, e)| m * 0.5 * (e[0] + e[1]))
            .sum()
    }
}

/// Sensor-level parameters of the observational model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorConfig {
    /// Per-track vehicle speed distribution, m/s.
    pub speed_mps: EmpiricalDistribution,
    /// Per-track observation frame rate distribution, Hz.
    pub frame_rate_hz: EmpiricalDistribution,
    /// Standard deviation of per-axis Gaussian position noise, meters.
    pub noise_sigma_m: f64,
}

impl SensorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.noise_sigma_m.is_finite() || self.noise_sigma_m < 0.0 {
            return Err(ConfigError::InvalidNoiseSigma { value: self.noise_sigma_m });
        }
        if self.speed_mps.min() <= 0.0 {
            return Err(ConfigError::NonPositiveSupport {
                field: "speed_mps",
                edge: self.speed_mps.min(),
            });
        }
        if self.frame_rate_hz.min() <= 0.0 {
            return Err(ConfigError::NonPositiveSupport {
                field: "frame_rate_hz",
                edge: self.frame_rate_hz.min(),
            });
        }
        Ok(())
    }
}

/// Population-level parameters of the activity model.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    /// Number of agents (N).
    pub num_agents: usize,
    /// Number of roles (R).
    pub num_roles: usize,
    /// Number of actions (A).
    pub num_actions: usize,
    /// Simulation horizon in minutes (tau).
    pub total_time_min: f64,
    /// Event rate in events per minute (mu); mean event count is mu * tau.
    pub event_rate_per_min: f64,
    /// Probability an event is normal (gamma).
    pub normal_prob: f64,
    /// Per-role count of actions each agent deems normal (P).
    pub normal_counts: Vec<usize>,
    /// T x R Dirichlet concentration rows, one per timespan (X).
    pub role_concentration: Vec<Vec<f64>>,
    /// A x R binary membership matrix, one role per action (G).
    pub action_membership: Vec<Vec<u8>>,
    /// Half-open [start, end) intervals partitioning the diurnal cycle.
    pub timespans_min: Vec<(f64, f64)>,
    /// Root seed; all randomness in a run derives from it.
    pub seed: u64,
}

impl SimulationConfig {
    /// Number of timespans (T).
    pub fn num_timespans(&self) -> usize {
        self.timespans_min.len()
    }

    /// Builds the one-hot membership matrix from a role id per action.
    pub fn membership_from_roles(action_roles: &[usize], num_roles: usize) -> Vec<Vec<u8>> {
        action_roles
            .iter()
            .map(|&r| {
                let mut row = vec![0u8; num_roles];
                if r < num_roles {
                    row[r] = 1;
                }
                row
            })
            .collect()
    }
}

/// A `SimulationConfig` whose invariants have all been checked.
///
/// Construction goes through [`validate_config`]; the wrapper also carries
/// the role -> actions index derived from the membership matrix. Immutable
/// and safely shareable across workers.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    cfg: SimulationConfig,
    role_actions: Vec<Vec<usize>>,
}

impl Deref for ValidatedConfig {
    type Target = SimulationConfig;

    fn deref(&self) -> &SimulationConfig {
        &self.cfg
    }
}

impl ValidatedConfig {
    pub fn inner(&self) -> &SimulationConfig {
        &self.cfg
    }

    /// Actions belonging to `role`, ascending by action id.
    pub fn actions_of_role(&self, role: usize) -> &[usize] {
        &self.role_actions[role]
    }

    /// The single role an action belongs to.
    pub fn role_of_action(&self, action: usize) -> usize {
        self.cfg.action_membership[action]
            .iter()
            .position(|&m| m == 1)
            .expect("validated one-hot row")
    }

    /// Index of the timespan containing minute `t` of the simulation.
    ///
    /// `t` wraps modulo the diurnal cycle, so horizons longer than one day
    /// revisit the same timespans each day.
    pub fn timespan_index(&self, t_min: f64) -> usize {
        timespan_index(t_min, &self.cfg.timespans_min)
    }
}

/// Interval lookup over a validated diurnal partition.
pub fn timespan_index(t_min: f64, timespans_min: &[(f64, f64)]) -> usize {
    let m = t_min.rem_euclid(DIURNAL_MINUTES);
    let idx = timespans_min.partition_point(|&(start, _)| start <= m);
    idx.saturating_sub(1)
}

/// Checks every `SimulationConfig` invariant, returning the config wrapped
/// as evidence. Pure: repeated calls on equal inputs give equal verdicts.
pub fn validate_config(cfg: SimulationConfig) -> Result<ValidatedConfig, ConfigError> {
    if cfg.num_agents == 0 {
        return Err(ConfigError::NonPositiveCount { field: "num_agents" });
    }
    if cfg.num_roles == 0 {
        return Err(ConfigError::NonPositiveCount { field: "num_roles" });
    }
    if cfg.num_actions == 0 {
        return Err(ConfigError::NonPositiveCount { field: "num_actions" });
    }
    if !cfg.total_time_min.is_finite() || cfg.total_time_min < 0.0 {
        return Err(ConfigError::InvalidTotalTime { value: cfg.total_time_min });
    }
    if !cfg.event_rate_per_min.is_finite() || cfg.event_rate_per_min <= 0.0 {
        return Err(ConfigError::NonPositiveRate { value: cfg.event_rate_per_min });
    }
    if !cfg.normal_prob.is_finite() || !(0.0..=1.0).contains(&cfg.normal_prob) {
        return Err(ConfigError::ProbabilityOutOfRange {
            field: "normal_prob",
            value: cfg.normal_prob,
        });
    }

    if cfg.timespans_min.is_empty() {
        return Err(ConfigError::TimespansEmpty);
    }
    for (i, &(start, end)) in cfg.timespans_min.iter().enumerate() {
        if !start.is_finite() || !end.is_finite() || !(start < end) {
            return Err(ConfigError::TimespanReversed { index: i, start, end });
        }
        if i == 0 {
            if start != 0.0 {
                return Err(ConfigError::TimespansNotAnchored { start });
            }
        } else {
            let previous_end = cfg.timespans_min[i - 1].1;
            if start != previous_end {
                return Err(ConfigError::TimespanGapOrOverlap { index: i, previous_end, start });
            }
        }
    }
    let last_end = cfg.timespans_min.last().expect("non-empty").1;
    if last_end != DIURNAL_MINUTES {
        return Err(ConfigError::TimespansShort { end: last_end });
    }

    if cfg.role_concentration.len() != cfg.num_timespans() {
        return Err(ConfigError::ConcentrationRows {
            expected: cfg.num_timespans(),
            got: cfg.role_concentration.len(),
        });
    }
    for (row, conc) in cfg.role_concentration.iter().enumerate() {
        if conc.len() != cfg.num_roles {
            return Err(ConfigError::ConcentrationRowLength {
                row,
                expected: cfg.num_roles,
                got: conc.len(),
            });
        }
        let mut any_positive = false;
        for (col, &value) in conc.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(ConfigError::InvalidConcentration { row, col, value });
            }
            any_positive |= value > 0.0;
        }
        if !any_positive {
            return Err(ConfigError::AllZeroConcentrationRow { row });
        }
    }

    if cfg.action_membership.len() != cfg.num_actions {
        return Err(ConfigError::MembershipRows {
            expected: cfg.num_actions,
            got: cfg.action_membership.len(),
        });
    }
    let mut role_actions = vec![Vec::new(); cfg.num_roles];
    for (action, row) in cfg.action_membership.iter().enumerate() {
        if row.len() != cfg.num_roles {
            return Err(ConfigError::MembershipRowLength {
                action,
                expected: cfg.num_roles,
                got: row.len(),
            });
        }
        let mut sum = 0u32;
        let mut role = None;
        for (r, &m) in row.iter().enumerate() {
            if m > 1 {
                return Err(ConfigError::MembershipEntry { action, role: r, value: m });
            }
            if m == 1 {
                sum += 1;
                role = Some(r);
            }
        }
        match sum {
            0 => return Err(ConfigError::ActionInNoRole { action }),
            1 => role_actions[role.expect("sum is 1")].push(action),
            _ => return Err(ConfigError::ActionInMultipleRoles { action, sum }),
        }
    }

    if cfg.normal_counts.len() != cfg.num_roles {
        return Err(ConfigError::NormalCountsLength {
            expected: cfg.num_roles,
            got: cfg.normal_counts.len(),
        });
    }
    for (role, &count) in cfg.normal_counts.iter().enumerate() {
        let capacity = role_actions[role].len();
        if count > capacity {
            return Err(ConfigError::NormalCountExceedsCapacity { role, count, capacity });
        }
    }

    Ok(ValidatedConfig { cfg, role_actions })
}

// ---------------------------------------------------------------------------
// TOML file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct ConfigFile {
    population: PopulationSection,
    roles: RolesSection,
    actions: ActionsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    sensor: Option<SensorConfig>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PopulationSection {
    num_agents: usize,
    num_roles: usize,
    num_actions: usize,
    total_time_min: f64,
    event_rate_per_min: f64,
    normal_prob: f64,
    normal_counts: Vec<usize>,
    seed: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RolesSection {
    timespans_min: Vec<(f64, f64)>,
    role_concentration: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ActionsSection {
    /// Compact form: role id per action.
    #[serde(skip_serializing_if = "Option::is_none")]
    action_roles: Option<Vec<usize>>,
    /// Explicit A x R binary matrix form.
    #[serde(skip_serializing_if = "Option::is_none")]
    action_membership: Option<Vec<Vec<u8>>>,
}

/// Parses a config document. Sensor parameters are optional; activity-only
/// runs omit them.
pub fn parse_config_str(text: &str) -> Result<(SimulationConfig, Option<SensorConfig>), ConfigError> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string()))?;
    let membership = match (file.actions.action_roles, file.actions.action_membership) {
        (Some(roles), None) => {
            for (index, &role) in roles.iter().enumerate() {
                if role >= file.population.num_roles {
                    return Err(ConfigError::ActionRoleOutOfRange {
                        index,
                        role,
                        num_roles: file.population.num_roles,
                    });
                }
            }
            SimulationConfig::membership_from_roles(&roles, file.population.num_roles)
        }
        (None, Some(matrix)) => matrix,
        _ => return Err(ConfigError::ActionsSpec),
    };
    let cfg = SimulationConfig {
        num_agents: file.population.num_agents,
        num_roles: file.population.num_roles,
        num_actions: file.population.num_actions,
        total_time_min: file.population.total_time_min,
        event_rate_per_min: file.population.event_rate_per_min,
        normal_prob: file.population.normal_prob,
        normal_counts: file.population.normal_counts,
        role_concentration: file.roles.role_concentration,
        action_membership: membership,
        timespans_min: file.roles.timespans_min,
        seed: file.population.seed,
    };
    if let Some(sensor) = &file.sensor {
        EmpiricalDistribution::new(sensor.speed_mps.bin_edges.clone(), sensor.speed_mps.bin_mass.clone())?;
        EmpiricalDistribution::new(
            sensor.frame_rate_hz.bin_edges.clone(),
            sensor.frame_rate_hz.bin_mass.clone(),
        )?;
        sensor.validate()?;
    }
    Ok((cfg, file.sensor))
}

/// Loads and parses a config file.
pub fn load_config(path: &Path) -> Result<(SimulationConfig, Option<SensorConfig>), ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    parse_config_str(&text)
}

/// Serializes a config back to the TOML schema, using the compact
/// `action_roles` form when every membership row is one-hot.
pub fn serialize_config(cfg: &SimulationConfig, sensor: Option<&SensorConfig>) -> String {
    let one_hot_roles: Option<Vec<usize>> = cfg
        .action_membership
        .iter()
        .map(|row| {
            let ones: Vec<usize> =
                row.iter().enumerate().filter(|(_, &m)| m == 1).map(|(r, _)| r).collect();
            if ones.len() == 1 && row.iter().all(|&m| m <= 1) {
                Some(ones[0])
            } else {
                None
            }
        })
        .collect();
    let actions = match one_hot_roles {
        Some(roles) => ActionsSection { action_roles: Some(roles), action_membership: None },
        None => ActionsSection {
            action_roles: None,
            action_membership: Some(cfg.action_membership.clone()),
        },
    };
    let file = ConfigFile {
        population: PopulationSection {
            num_agents: cfg.num_agents,
            num_roles: cfg.num_roles,
            num_actions: cfg.num_actions,
            total_time_min: cfg.total_time_min,
            event_rate_per_min: cfg.event_rate_per_min,
            normal_prob: cfg.normal_prob,
            normal_counts: cfg.normal_counts.clone(),
            seed: cfg.seed,
        },
        roles: RolesSection {
            timespans_min: cfg.timespans_min.clone(),
            role_concentration: cfg.role_concentration.clone(),
        },
        actions,
        sensor: sensor.cloned(),
    };
    toml::to_string_pretty(&file).expect("config serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Toy scenario: 100 agents, three roles with 25/5/10 locations.
    pub(crate) fn toy_config() -> SimulationConfig {
        let action_roles: Vec<usize> = std::iter::repeat(0)
            .take(25)
            .chain(std::iter::repeat(1).take(5))
            .chain(std::iter::repeat(2).take(10))
            .collect();
        SimulationConfig {
            num_agents: 100,
            num_roles: 3,
            num_actions: 40,
            total_time_min: 1440.0,
            event_rate_per_min: 20.0 / 1440.0,
            normal_prob: 0.8,
            normal_counts: vec![1, 1, 2],
            role_concentration: vec![
                vec![8.0, 0.5, 1.5],
                vec![1.0, 6.0, 3.0],
                vec![4.0, 1.0, 5.0],
            ],
            action_membership: SimulationConfig::membership_from_roles(&action_roles, 3),
            timespans_min: vec![(0.0, 480.0), (480.0, 1080.0), (1080.0, 1440.0)],
            seed: 42,
        }
    }

    #[test]
    fn toy_config_is_valid() {
        assert!(validate_config(toy_config()).is_ok());
    }

    #[test]
    fn normal_count_over_capacity_is_rejected() {
        let mut cfg = toy_config();
        cfg.normal_counts = vec![1, 6, 2]; // role 1 only has 5 actions
        assert_eq!(
            validate_config(cfg),
            Err(ConfigError::NormalCountExceedsCapacity { role: 1, count: 6, capacity: 5 })
        );
    }

    #[test]
    fn multi_role_action_is_rejected() {
        let mut cfg = toy_config();
        cfg.action_membership[3] = vec![1, 1, 0];
        assert_eq!(
            validate_config(cfg),
            Err(ConfigError::ActionInMultipleRoles { action: 3, sum: 2 })
        );
    }

    #[test]
    fn orphan_action_is_rejected() {
        let mut cfg = toy_config();
        cfg.action_membership[0] = vec![0, 0, 0];
        assert_eq!(validate_config(cfg), Err(ConfigError::ActionInNoRole { action: 0 }));
    }

    #[test]
    fn timespan_gap_is_rejected() {
        let mut cfg = toy_config();
        cfg.timespans_min = vec![(0.0, 480.0), (500.0, 1440.0)];
        assert_eq!(
            validate_config(cfg),
            Err(ConfigError::TimespanGapOrOverlap { index: 1, previous_end: 480.0, start: 500.0 })
        );
    }

    #[test]
    fn all_zero_concentration_row_is_rejected() {
        let mut cfg = toy_config();
        cfg.role_concentration[1] = vec![0.0, 0.0, 0.0];
        assert_eq!(validate_config(cfg), Err(ConfigError::AllZeroConcentrationRow { row: 1 }));
    }

    #[test]
    fn validation_is_a_pure_predicate() {
        let cfg = toy_config();
        let first = validate_config(cfg.clone()).unwrap();
        let second = validate_config(cfg.clone()).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.inner(), &cfg);
    }

    #[test]
    fn timespan_lookup_hits_interval_bounds() {
        let spans = vec![(0.0, 480.0), (480.0, 1080.0), (1080.0, 1440.0)];
        assert_eq!(timespan_index(0.0, &spans), 0);
        assert_eq!(timespan_index(700.0, &spans), 1);
        assert_eq!(timespan_index(1441.0, &spans), 0); // diurnal wrap
        assert_eq!(timespan_index(480.0, &spans), 1); // half-open boundary
        assert_eq!(timespan_index(1439.999, &spans), 2);
        assert_eq!(timespan_index(2880.0, &spans), 0);
    }

    #[test]
    fn role_index_round_trips() {
        let v = validate_config(toy_config()).unwrap();
        assert_eq!(v.actions_of_role(0).len(), 25);
        assert_eq!(v.actions_of_role(1).len(), 5);
        assert_eq!(v.actions_of_role(2).len(), 10);
        for role in 0..3 {
            for &a in v.actions_of_role(role) {
                assert_eq!(v.role_of_action(a), role);
            }
        }
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = toy_config();
        let sensor = SensorConfig {
            speed_mps: EmpiricalDistribution::new(vec![8.0, 12.0, 16.0, 20.0], vec![0.3, 0.5, 0.2])
                .unwrap(),
            frame_rate_hz: EmpiricalDistribution::new(vec![0.05, 0.2], vec![1.0]).unwrap(),
            noise_sigma_m: 5.0,
        };
        let text = serialize_config(&cfg, Some(&sensor));
        let (parsed, parsed_sensor) = parse_config_str(&text).unwrap();
        assert_eq!(parsed, cfg);
        assert_eq!(parsed_sensor.as_ref(), Some(&sensor));
    }

    #[test]
    fn membership_matrix_form_parses() {
        let text = r#"
            [population]
            num_agents = 2
            num_roles = 2
            num_actions = 2
            total_time_min = 60.0
            event_rate_per_min = 0.1
            normal_prob = 1.0
            normal_counts = [1, 1]
            seed = 7

            [roles]
            timespans_min = [[0.0, 1440.0]]
            role_concentration = [[1.0, 1.0]]

            [actions]
            action_membership = [[1, 0], [0, 1]]
        "#;
        let (cfg, sensor) = parse_config_str(text).unwrap();
        assert!(sensor.is_none());
        assert!(validate_config(cfg).is_ok());
    }

    #[test]
    fn distribution_mass_must_sum_to_one() {
        let err = EmpiricalDistribution::new(vec![0.0, 1.0, 2.0], vec![0.5, 0.4]).unwrap_err();
        assert!(matches!(err, ConfigError::MassSum { .. }));
    }

    proptest! {
        #[test]
        fn timespan_lookup_is_total_and_consistent(t in 0.0f64..1e7) {
            let spans = vec![(0.0, 313.0), (313.0, 901.5), (901.5, 1440.0)];
            let idx = timespan_index(t, &spans);
            prop_assert!(idx < spans.len());
            let m = t.rem_euclid(DIURNAL_MINUTES);
            prop_assert!(spans[idx].0 <= m && m < spans[idx].1);
        }

        #[test]
        fn histogram_distribution_accepts_any_normalized_mass(raw in proptest::collection::vec(0.01f64..1.0, 1..20)) {
            let total: f64 = raw.iter().sum();
            let mass: Vec<f64> = raw.iter().map(|m| m / total).collect();
            let edges: Vec<f64> = (0..=mass.len()).map(|i| i as f64).collect();
            let dist = EmpiricalDistribution::new(edges, mass).unwrap();
            let sum: f64 = dist.bin_mass().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
        }
    }
}
