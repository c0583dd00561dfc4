//! Scenario files.
//!
//! A scenario is a TOML document describing an interface, an agent, an
//! environment and, optionally, a good set, a regulating set, a separate
//! model and hand-written belief/normative maps. Labels are used throughout;
//! indices never appear in files.
//!
//! ```toml
//! format_version = 1
//!
//! [interface]
//! sensors = ["lo", "hi"]
//! actions = ["stay", "flip"]
//!
//! [agent]
//! states = ["x0", "x1"]
//! readout = { x0 = "stay", x1 = "flip" }
//! update.x0 = { lo = "x0", hi = "x1" }
//! update.x1 = { lo = "x0", hi = "x1" }
//!
//! [environment]
//! states = ["y0", "y1"]
//! evolve.y0 = { stay = { next = "y0", sensor = "lo" }, flip = { next = "y1", sensor = "hi" } }
//! evolve.y1 = { stay = { next = "y1", sensor = "hi" }, flip = { next = "y0", sensor = "lo" } }
//!
//! [good]
//! env_goal = ["y0"]          # or agent_goal = [...], or pairs = [["x0", "y0"], ...]
//!
//! [regulating]               # optional, same forms as [good]
//! pairs = [["x0", "y0"]]
//! ```
//!
//! `[model]` has the shape of `[environment]`; `[psi]` and `[phi]` map each
//! agent state to a list of model-state labels (environment labels when no
//! model is given).

use std::collections::HashSet;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interpretation::{BeliefMap, NormativeMap, StateMap};
use crate::machine::{CoupledSystem, Interface, MealyMachine, MooreMachine};
use crate::regulation::{lift_agent_goal, lift_environment_goal};
use crate::set::StateSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("unknown {kind} label `{label}` in {context}")]
    UnknownLabel {
        kind: &'static str,
        label: String,
        context: String,
    },
    #[error("non-total {table} table: missing row {row}")]
    NonTotal { table: String, row: String },
    #[error("duplicate {kind} `{label}` in {context}")]
    Duplicate {
        kind: &'static str,
        label: String,
        context: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

impl ScenarioError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "syntax",
            Self::UnsupportedVersion(_) => "unsupported-version",
            Self::UnknownLabel { .. } => "unknown-label",
            Self::NonTotal { .. } => "non-total-table",
            Self::Duplicate { .. } => "duplicate-label",
            Self::Invalid(_) => "invalid",
        }
    }
}

type Result<T> = std::result::Result<T, ScenarioError>;

/// A good or regulating set as written in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    /// Explicit joint states, as a set over `X×Y`.
    Pairs(StateSet),
    /// Environment goal `G_Y ⊆ Y`, lifted to `X × G_Y`.
    EnvGoal(StateSet),
    /// Agent goal `G_X ⊆ X`, lifted to `G_X × Y`.
    AgentGoal(StateSet),
}

impl SetSpec {
    pub fn resolve(&self, sys: &CoupledSystem) -> StateSet {
        match self {
            SetSpec::Pairs(set) => set.clone(),
            SetSpec::EnvGoal(goal) => lift_environment_goal(goal, sys).expect("validated size"),
            SetSpec::AgentGoal(goal) => lift_agent_goal(goal, sys).expect("validated size"),
        }
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub system: CoupledSystem,
    pub good: Option<SetSpec>,
    pub regulating: Option<SetSpec>,
    pub model: Option<MealyMachine>,
    pub psi: Option<BeliefMap>,
    pub phi: Option<NormativeMap>,
}

impl Scenario {
    pub fn new(system: CoupledSystem) -> Self {
        Self {
            system,
            good: None,
            regulating: None,
            model: None,
            psi: None,
            phi: None,
        }
    }

    pub fn good_set(&self) -> Option<StateSet> {
        self.good.as_ref().map(|g| g.resolve(&self.system))
    }

    pub fn regulating_set(&self) -> Option<StateSet> {
        self.regulating.as_ref().map(|r| r.resolve(&self.system))
    }

    /// The model beliefs refer to: the explicit model or the environment.
    pub fn belief_model(&self) -> &MealyMachine {
        self.model.as_ref().unwrap_or(self.system.environment())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&RawScenario::from(self)).expect("scenario serializes")
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| syntax_error(text, &e))?;
    raw.validate()
}

pub fn serialize_scenario(scenario: &Scenario) -> String {
    scenario.to_toml()
}

fn syntax_error(text: &str, err: &toml::de::Error) -> ScenarioError {
    let offset = err.span().map(|s| s.start).unwrap_or(0).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ScenarioError::Syntax {
        line,
        column,
        message: err.message().to_string(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    format_version: u32,
    interface: RawInterface,
    agent: RawAgent,
    environment: RawMealy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    good: Option<RawSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regulating: Option<RawSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model: Option<RawMealy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    psi: Option<IndexMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<IndexMap<String, Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterface {
    sensors: Vec<String>,
    actions: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAgent {
    states: Vec<String>,
    readout: IndexMap<String, String>,
    update: IndexMap<String, IndexMap<String, String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMealy {
    states: Vec<String>,
    evolve: IndexMap<String, IndexMap<String, RawStep>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    next: String,
    sensor: String,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    env_goal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    agent_goal: Option<Vec<String>>,
}

/// Labels of one kind, resolved to indices.
struct Labels<'a> {
    kind: &'static str,
    labels: &'a [String],
}

impl<'a> Labels<'a> {
    fn new(kind: &'static str, labels: &'a [String], context: &str) -> Result<Self> {
        if labels.is_empty() {
            return Err(ScenarioError::Invalid(format!(
                "{context} must not be empty"
            )));
        }
        let mut seen = HashSet::new();
        for label in labels {
            if !seen.insert(label) {
                return Err(ScenarioError::Duplicate {
                    kind,
                    label: label.clone(),
                    context: context.to_string(),
                });
            }
        }
        Ok(Self { kind, labels })
    }

    fn index(&self, label: &str, context: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ScenarioError::UnknownLabel {
                kind: self.kind,
                label: label.to_string(),
                context: context.to_string(),
            })
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    /// Rejects keys that are not labels of this kind.
    fn check_keys<'k, V: 'k>(
        &self,
        keys: impl IntoIterator<Item = (&'k String, V)>,
        context: &str,
    ) -> Result<()> {
        for (key, _) in keys {
            self.index(key, context)?;
        }
        Ok(())
    }

    fn subset(&self, labels: &[String], context: &str) -> Result<StateSet> {
        let mut set = StateSet::empty(self.len());
        for label in labels {
            if !set.insert(self.index(label, context)?) {
                return Err(ScenarioError::Duplicate {
                    kind: self.kind,
                    label: label.clone(),
                    context: context.to_string(),
                });
            }
        }
        Ok(set)
    }
}

fn internal(err: crate::Error) -> ScenarioError {
    ScenarioError::Invalid(err.to_string())
}

impl RawScenario {
    fn validate(self) -> Result<Scenario> {
        if self.format_version != FORMAT_VERSION {
            return Err(ScenarioError::UnsupportedVersion(self.format_version));
        }
        let sensors = Labels::new("sensor", &self.interface.sensors, "interface.sensors")?;
        let actions = Labels::new("action", &self.interface.actions, "interface.actions")?;
        let interface = Interface::new(
            self.interface.sensors.clone(),
            self.interface.actions.clone(),
        )
        .map_err(internal)?;

        let agent = self.agent.validate(&interface, &sensors, &actions)?;
        let environment =
            self.environment
                .validate("environment", &interface, &sensors, &actions)?;
        let system = CoupledSystem::new(agent, environment).map_err(internal)?;
        let model = self
            .model
            .map(|m| m.validate("model", &interface, &sensors, &actions))
            .transpose()?;

        let xs = Labels::new("agent state", &self.agent.states, "agent.states")?;
        let ys = Labels::new(
            "environment state",
            &self.environment.states,
            "environment.states",
        )?;
        let good = self
            .good
            .map(|g| g.validate("good", &xs, &ys))
            .transpose()?;
        let regulating = self
            .regulating
            .map(|r| r.validate("regulating", &xs, &ys))
            .transpose()?;

        let model_states = model
            .as_ref()
            .map(|m| m.states())
            .unwrap_or(system.environment().states());
        let zs = Labels::new("model state", model_states, "model.states")?;
        let psi = self
            .psi
            .map(|t| slice_table("psi", &t, &xs, &zs))
            .transpose()?;
        let phi = self
            .phi
            .map(|t| slice_table("phi", &t, &xs, &zs))
            .transpose()?;

        Ok(Scenario {
            system,
            good,
            regulating,
            model,
            psi,
            phi,
        })
    }
}

fn slice_table<Role>(
    name: &str,
    table: &IndexMap<String, Vec<String>>,
    xs: &Labels<'_>,
    zs: &Labels<'_>,
) -> Result<StateMap<Role>> {
    xs.check_keys(table, name)?;
    let sets = xs
        .labels
        .iter()
        .map(|x| {
            let row = table.get(x).ok_or_else(|| ScenarioError::NonTotal {
                table: name.to_string(),
                row: format!("({x})"),
            })?;
            zs.subset(row, &format!("{name}.{x}"))
        })
        .collect::<Result<Vec<_>>>()?;
    StateMap::new(zs.len(), sets).map_err(internal)
}

impl RawAgent {
    fn validate(
        &self,
        interface: &Arc<Interface>,
        sensors: &Labels<'_>,
        actions: &Labels<'_>,
    ) -> Result<MooreMachine> {
        let xs = Labels::new("agent state", &self.states, "agent.states")?;
        xs.check_keys(&self.readout, "agent.readout")?;
        xs.check_keys(&self.update, "agent.update")?;
        let mut readout = Vec::with_capacity(xs.len());
        let mut update = Vec::with_capacity(xs.len() * sensors.len());
        for x in xs.labels {
            let a = self.readout.get(x).ok_or_else(|| ScenarioError::NonTotal {
                table: "readout".into(),
                row: format!("({x})"),
            })?;
            readout.push(actions.index(a, &format!("agent.readout.{x}"))?);
            let row = self.update.get(x);
            if let Some(row) = row {
                sensors.check_keys(row, &format!("agent.update.{x}"))?;
            }
            for s in sensors.labels {
                let next = row
                    .and_then(|r| r.get(s))
                    .ok_or_else(|| ScenarioError::NonTotal {
                        table: "update".into(),
                        row: format!("({x}, {s})"),
                    })?;
                update.push(xs.index(next, &format!("agent.update.{x}.{s}"))?);
            }
        }
        MooreMachine::new(interface.clone(), self.states.clone(), readout, update).map_err(internal)
    }
}

impl RawMealy {
    fn validate(
        &self,
        section: &str,
        interface: &Arc<Interface>,
        sensors: &Labels<'_>,
        actions: &Labels<'_>,
    ) -> Result<MealyMachine> {
        let ys = Labels::new("state", &self.states, &format!("{section}.states"))?;
        ys.check_keys(&self.evolve, &format!("{section}.evolve"))?;
        let mut evolve = Vec::with_capacity(ys.len() * actions.len());
        for y in ys.labels {
            let row = self.evolve.get(y);
            if let Some(row) = row {
                actions.check_keys(row, &format!("{section}.evolve.{y}"))?;
            }
            for a in actions.labels {
                let step = row
                    .and_then(|r| r.get(a))
                    .ok_or_else(|| ScenarioError::NonTotal {
                        table: format!("{section} evolve"),
                        row: format!("({y}, {a})"),
                    })?;
                let context = format!("{section}.evolve.{y}.{a}");
                evolve.push((
                    ys.index(&step.next, &context)?,
                    sensors.index(&step.sensor, &context)?,
                ));
            }
        }
        MealyMachine::new(interface.clone(), self.states.clone(), evolve).map_err(internal)
    }
}

impl RawSet {
    fn validate(self, name: &str, xs: &Labels<'_>, ys: &Labels<'_>) -> Result<SetSpec> {
        match (self.pairs, self.env_goal, self.agent_goal) {
            (Some(pairs), None, None) => {
                let mut set = StateSet::empty(xs.len() * ys.len());
                for (x, y) in &pairs {
                    let i = xs.index(x, name)? * ys.len() + ys.index(y, name)?;
                    if !set.insert(i) {
                        return Err(ScenarioError::Duplicate {
                            kind: "pair",
                            label: format!("({x}, {y})"),
                            context: name.to_string(),
                        });
                    }
                }
                Ok(SetSpec::Pairs(set))
            }
            (None, Some(goal), None) => Ok(SetSpec::EnvGoal(
                ys.subset(&goal, &format!("{name}.env_goal"))?,
            )),
            (None, None, Some(goal)) => Ok(SetSpec::AgentGoal(
                xs.subset(&goal, &format!("{name}.agent_goal"))?,
            )),
            _ => Err(ScenarioError::Invalid(format!(
                "[{name}] needs exactly one of `pairs`, `env_goal`, `agent_goal`"
            ))),
        }
    }
}

fn select(labels: &[String], set: &StateSet) -> Vec<String> {
    set.iter().map(|i| labels[i].clone()).collect()
}

fn raw_mealy(machine: &MealyMachine) -> RawMealy {
    let interface = machine.interface();
    let evolve = machine
        .states()
        .iter()
        .enumerate()
        .map(|(y, label)| {
            let row = interface
                .actions()
                .iter()
                .enumerate()
                .map(|(a, action)| {
                    let (next, sensor) = machine.evolve(y, a).expect("in range");
                    (
                        action.clone(),
                        RawStep {
                            next: machine.states()[next].clone(),
                            sensor: interface.sensors()[sensor].clone(),
                        },
                    )
                })
                .collect();
            (label.clone(), row)
        })
        .collect();
    RawMealy {
        states: machine.states().to_vec(),
        evolve,
    }
}

fn raw_set(spec: &SetSpec, sys: &CoupledSystem) -> RawSet {
    let xs = sys.agent().states();
    let ys = sys.environment().states();
    match spec {
        SetSpec::Pairs(set) => RawSet {
            pairs: Some(
                set.iter()
                    .map(|i| {
                        let w = sys.joint_state(i).expect("in range");
                        (xs[w.x].clone(), ys[w.y].clone())
                    })
                    .collect(),
            ),
            ..RawSet::default()
        },
        SetSpec::EnvGoal(goal) => RawSet {
            env_goal: Some(select(ys, goal)),
            ..RawSet::default()
        },
        SetSpec::AgentGoal(goal) => RawSet {
            agent_goal: Some(select(xs, goal)),
            ..RawSet::default()
        },
    }
}

fn raw_table<Role>(
    map: &StateMap<Role>,
    xs: &[String],
    zs: &[String],
) -> IndexMap<String, Vec<String>> {
    xs.iter()
        .enumerate()
        .map(|(x, label)| (label.clone(), select(zs, map.get(x))))
        .collect()
}

impl From<&Scenario> for RawScenario {
    fn from(s: &Scenario) -> Self {
        let sys = &s.system;
        let agent = sys.agent();
        let interface = sys.interface();
        let readout = agent
            .states()
            .iter()
            .enumerate()
            .map(|(x, label)| {
                let a = agent.readout(x).expect("in range");
                (label.clone(), interface.actions()[a].clone())
            })
            .collect();
        let update = agent
            .states()
            .iter()
            .enumerate()
            .map(|(x, label)| {
                let row = interface
                    .sensors()
                    .iter()
                    .enumerate()
                    .map(|(si, sensor)| {
                        let next = agent.update(x, si).expect("in range");
                        (sensor.clone(), agent.states()[next].clone())
                    })
                    .collect();
                (label.clone(), row)
            })
            .collect();
        let zs = s.belief_model().states();
        RawScenario {
            format_version: FORMAT_VERSION,
            interface: RawInterface {
                sensors: interface.sensors().to_vec(),
                actions: interface.actions().to_vec(),
            },
            agent: RawAgent {
                states: agent.states().to_vec(),
                readout,
                update,
            },
            environment: raw_mealy(sys.environment()),
            good: s.good.as_ref().map(|g| raw_set(g, sys)),
            regulating: s.regulating.as_ref().map(|r| raw_set(r, sys)),
            model: s.model.as_ref().map(raw_mealy),
            psi: s.psi.as_ref().map(|m| raw_table(m, agent.states(), zs)),
            phi: s.phi.as_ref().map(|m| raw_table(m, agent.states(), zs)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    const TOGGLE: &str = include_str!("../fixtures/toggle_world.toml");

    #[test]
    fn toggle_fixture_is_the_preset() {
        let scenario = parse_scenario(TOGGLE).unwrap();
        assert_eq!(scenario.system, presets::toggle_world());
        assert_eq!(scenario.good_set(), Some(presets::toggle_world_goal()));
    }

    #[test]
    fn round_trip_preserves_everything() {
        let scenario = parse_scenario(TOGGLE).unwrap();
        let again = parse_scenario(&scenario.to_toml()).unwrap();
        assert_eq!(scenario, again);
    }

    fn replace(from: &str, to: &str) -> String {
        assert!(TOGGLE.contains(from), "fixture lacks `{from}`");
        TOGGLE.replacen(from, to, 1)
    }

    #[test]
    fn missing_update_row_is_reported() {
        let text = replace("x1 = { lo = \"x0\", hi = \"x1\" }", "x1 = { lo = \"x0\" }");
        let err = parse_scenario(&text).unwrap_err();
        assert_eq!(err.code(), "non-total-table");
        assert_eq!(
            err,
            ScenarioError::NonTotal {
                table: "update".into(),
                row: "(x1, hi)".into()
            }
        );
    }

    #[test]
    fn unknown_label() {
        let text = replace("x0 = \"stay\"", "x0 = \"jump\"");
        let err = parse_scenario(&text).unwrap_err();
        assert_eq!(err.code(), "unknown-label");
        assert!(err.to_string().contains("jump"));
    }

    #[test]
    fn duplicate_label() {
        let text = replace("states = [\"y0\", \"y1\"]", "states = [\"y0\", \"y0\"]");
        assert_eq!(parse_scenario(&text).unwrap_err().code(), "duplicate-label");
    }

    #[test]
    fn syntax_error_has_position() {
        let text = replace("[environment]", "[environment");
        match parse_scenario(&text).unwrap_err() {
            ScenarioError::Syntax { line, column, .. } => {
                let expected = TOGGLE
                    .lines()
                    .position(|l| l.starts_with("[environment]"))
                    .unwrap()
                    + 1;
                assert_eq!(line, expected);
                assert!(column >= 1);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn version_is_checked() {
        let text = replace("format_version = 1", "format_version = 2");
        assert_eq!(
            parse_scenario(&text).unwrap_err(),
            ScenarioError::UnsupportedVersion(2)
        );
    }

    #[test]
    fn set_needs_exactly_one_form() {
        let text = replace(
            "env_goal = [\"y0\"]",
            "env_goal = [\"y0\"]\nagent_goal = [\"x0\"]",
        );
        assert_eq!(parse_scenario(&text).unwrap_err().code(), "invalid");
    }

    #[test]
    fn pair_lists() {
        let text = replace(
            "env_goal = [\"y0\"]",
            "pairs = [[\"x1\", \"y0\"], [\"x0\", \"y1\"]]",
        );
        let s = parse_scenario(&text).unwrap();
        assert_eq!(s.good_set(), Some(StateSet::from_indices(4, [1, 2])));
        let dup = replace(
            "env_goal = [\"y0\"]",
            "pairs = [[\"x1\", \"y0\"], [\"x1\", \"y0\"]]",
        );
        assert_eq!(parse_scenario(&dup).unwrap_err().code(), "duplicate-label");
    }

    #[test]
    fn psi_table_must_be_total() {
        let text = format!("{TOGGLE}\n[psi]\nx0 = [\"y0\"]\n");
        let err = parse_scenario(&text).unwrap_err();
        assert_eq!(err.code(), "non-total-table");
        let text = format!("{TOGGLE}\n[psi]\nx0 = [\"y0\"]\nx1 = []\n");
        let s = parse_scenario(&text).unwrap();
        let psi = s.psi.unwrap();
        assert_eq!(psi.get(0), &StateSet::from_indices(2, [0]));
        assert!(psi.get(1).is_empty());
    }
}
