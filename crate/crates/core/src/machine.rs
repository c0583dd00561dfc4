//! Finite deterministic Moore and Mealy machines and their coupling.
//!
//! The agent is a Moore machine `(X, r, u)`: its action depends only on its
//! state, and its state is updated from the sensor value it receives. The
//! environment (or a model of it) is a Mealy machine `(Y, e)` mapping a state
//! and an action to a successor state and a sensor value. Wiring the two
//! together through a shared [`Interface`] yields a closed system on `X×Y`.
//!
//! Everything is stored as dense indices; labels are kept only for I/O.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{check_index, check_size, Error, Result};

fn check_labels(what: &str, labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Config(format!("{what} must not be empty")));
    }
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::Config(format!("duplicate {what} label `{label}`")));
        }
    }
    Ok(())
}

/// The sensor values `S` and actions `A` through which agent and
/// environment communicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interface {
    sensors: Vec<String>,
    actions: Vec<String>,
}

impl Interface {
    pub fn new<S: Into<String>, A: Into<String>>(
        sensors: impl IntoIterator<Item = S>,
        actions: impl IntoIterator<Item = A>,
    ) -> Result<Arc<Self>> {
        let sensors: Vec<String> = sensors.into_iter().map(Into::into).collect();
        let actions: Vec<String> = actions.into_iter().map(Into::into).collect();
        check_labels("sensor", &sensors)?;
        check_labels("action", &actions)?;
        Ok(Arc::new(Self { sensors, actions }))
    }

    /// An interface with generated labels `s0..` and `a0..`.
    pub fn with_sizes(sensors: usize, actions: usize) -> Result<Arc<Self>> {
        Self::new(
            (0..sensors).map(|i| format!("s{i}")),
            (0..actions).map(|i| format!("a{i}")),
        )
    }

    pub fn num_sensors(&self) -> usize {
        self.sensors.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn sensors(&self) -> &[String] {
        &self.sensors
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn sensor_index(&self, label: &str) -> Option<usize> {
        self.sensors.iter().position(|l| l == label)
    }

    pub fn action_index(&self, label: &str) -> Option<usize> {
        self.actions.iter().position(|l| l == label)
    }
}

/// Agent: readout `r: X → A` and update `u: X×S → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    interface: Arc<Interface>,
    states: Vec<String>,
    readout: Vec<usize>,
    /// Row-major over `(x, s)`.
    update: Vec<usize>,
}

impl MooreMachine {
    /// `update` is row-major: entry `x * |S| + s` holds `u(x, s)`.
    pub fn new(
        interface: Arc<Interface>,
        states: Vec<String>,
        readout: Vec<usize>,
        update: Vec<usize>,
    ) -> Result<Self> {
        check_labels("agent state", &states)?;
        let n = states.len();
        check_size("readout table", n, readout.len())?;
        check_size("update table", n * interface.num_sensors(), update.len())?;
        for &a in &readout {
            check_index("action", a, interface.num_actions())?;
        }
        for &x in &update {
            check_index("agent state", x, n)?;
        }
        Ok(Self {
            interface,
            states,
            readout,
            update,
        })
    }

    /// Tabulates the machine from closures over indices.
    pub fn from_fn(
        interface: Arc<Interface>,
        states: Vec<String>,
        readout: impl Fn(usize) -> usize,
        update: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = states.len();
        let m = interface.num_sensors();
        let readout_table = (0..n).map(&readout).collect();
        let update_table = (0..n)
            .flat_map(|x| (0..m).map(move |s| (x, s)))
            .map(|(x, s)| update(x, s))
            .collect();
        Self::new(interface, states, readout_table, update_table)
    }

    pub fn interface(&self) -> &Arc<Interface> {
        &self.interface
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|l| l == label)
    }

    pub fn readout(&self, x: usize) -> Result<usize> {
        check_index("agent state", x, self.num_states())?;
        Ok(self.readout[x])
    }

    pub fn update(&self, x: usize, s: usize) -> Result<usize> {
        check_index("agent state", x, self.num_states())?;
        check_index("sensor", s, self.interface.num_sensors())?;
        Ok(self.update[x * self.interface.num_sensors() + s])
    }

    /// Unchecked variants for hot loops over validated indices.
    #[inline]
    pub(crate) fn r(&self, x: usize) -> usize {
        self.readout[x]
    }

    #[inline]
    pub(crate) fn u(&self, x: usize, s: usize) -> usize {
        self.update[x * self.interface.num_sensors() + s]
    }
}

/// Environment or model: evolution `e: Y×A → Y×S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    interface: Arc<Interface>,
    states: Vec<String>,
    /// Row-major over `(y, a)`; each entry is `(y', s)`.
    evolve: Vec<(usize, usize)>,
}

impl MealyMachine {
    /// `evolve` is row-major: entry `y * |A| + a` holds `e(y, a)`.
    pub fn new(
        interface: Arc<Interface>,
        states: Vec<String>,
        evolve: Vec<(usize, usize)>,
    ) -> Result<Self> {
        check_labels("environment state", &states)?;
        let n = states.len();
        check_size("evolve table", n * interface.num_actions(), evolve.len())?;
        for &(y, s) in &evolve {
            check_index("environment state", y, n)?;
            check_index("sensor", s, interface.num_sensors())?;
        }
        Ok(Self {
            interface,
            states,
            evolve,
        })
    }

    pub fn from_fn(
        interface: Arc<Interface>,
        states: Vec<String>,
        evolve: impl Fn(usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        let n = states.len();
        let k = interface.num_actions();
        let table = (0..n)
            .flat_map(|y| (0..k).map(move |a| (y, a)))
            .map(|(y, a)| evolve(y, a))
            .collect();
        Self::new(interface, states, table)
    }

    pub fn interface(&self) -> &Arc<Interface> {
        &self.interface
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|l| l == label)
    }

    /// `e(y, a)` as `(next state, sensor)`.
    pub fn evolve(&self, y: usize, a: usize) -> Result<(usize, usize)> {
        check_index("environment state", y, self.num_states())?;
        check_index("action", a, self.interface.num_actions())?;
        Ok(self.evolve[y * self.interface.num_actions() + a])
    }

    #[inline]
    pub(crate) fn e(&self, y: usize, a: usize) -> (usize, usize) {
        self.evolve[y * self.interface.num_actions() + a]
    }
}

/// A state of the coupled system, an element of `X×Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointState {
    pub x: usize,
    pub y: usize,
}

impl JointState {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

/// The closed system on `X×Y` with `h(x, y) = (u(x, s), y')` where
/// `(y', s) = e(y, r(x))`.
///
/// Joint states are indexed x-major: `x * |Y| + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledSystem {
    agent: MooreMachine,
    environment: MealyMachine,
}

impl CoupledSystem {
    pub fn new(agent: MooreMachine, environment: MealyMachine) -> Result<Self> {
        if agent.interface() != environment.interface() {
            return Err(Error::InterfaceMismatch);
        }
        Ok(Self { agent, environment })
    }

    pub fn agent(&self) -> &MooreMachine {
        &self.agent
    }

    pub fn environment(&self) -> &MealyMachine {
        &self.environment
    }

    pub fn interface(&self) -> &Arc<Interface> {
        self.agent.interface()
    }

    /// `|X| · |Y|`.
    pub fn num_joint_states(&self) -> usize {
        self.agent.num_states() * self.environment.num_states()
    }

    pub fn index_of(&self, w: JointState) -> Result<usize> {
        self.check(w)?;
        Ok(w.x * self.environment.num_states() + w.y)
    }

    pub fn joint_state(&self, index: usize) -> Result<JointState> {
        check_index("joint state", index, self.num_joint_states())?;
        Ok(self.joint(index))
    }

    #[inline]
    pub(crate) fn joint(&self, index: usize) -> JointState {
        let ny = self.environment.num_states();
        JointState::new(index / ny, index % ny)
    }

    #[inline]
    pub(crate) fn index(&self, w: JointState) -> usize {
        w.x * self.environment.num_states() + w.y
    }

    fn check(&self, w: JointState) -> Result<()> {
        check_index("agent state", w.x, self.agent.num_states())?;
        check_index("environment state", w.y, self.environment.num_states())
    }

    /// One tick of the coupled dynamics. The readout is taken from the
    /// current agent state before the agent is updated.
    pub fn step(&self, w: JointState) -> Result<JointState> {
        self.check(w)?;
        Ok(self.step_unchecked(w))
    }

    /// The step together with the action and sensor value exchanged.
    pub fn step_detailed(&self, w: JointState) -> Result<Transition> {
        self.check(w)?;
        let action = self.agent.r(w.x);
        let (y_next, sensor) = self.environment.e(w.y, action);
        Ok(Transition {
            from: w,
            to: JointState::new(self.agent.u(w.x, sensor), y_next),
            action,
            sensor,
        })
    }

    #[inline]
    pub(crate) fn step_unchecked(&self, w: JointState) -> JointState {
        let action = self.agent.r(w.x);
        let (y_next, sensor) = self.environment.e(w.y, action);
        JointState::new(self.agent.u(w.x, sensor), y_next)
    }

    /// Step on x-major indices.
    #[inline]
    pub(crate) fn step_index(&self, index: usize) -> usize {
        self.index(self.step_unchecked(self.joint(index)))
    }

    /// `n + 1` states starting at `w0`.
    pub fn trajectory(&self, w0: JointState, n: usize) -> Result<Vec<JointState>> {
        self.check(w0)?;
        let mut out = Vec::with_capacity(n + 1);
        let mut w = w0;
        out.push(w);
        for _ in 0..n {
            w = self.step_unchecked(w);
            out.push(w);
        }
        Ok(out)
    }
}

/// One edge of the coupled transition graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: JointState,
    pub to: JointState,
    pub action: usize,
    pub sensor: usize,
}

/// Couples an agent to an environment, failing if their interfaces differ.
pub fn couple(agent: MooreMachine, environment: MealyMachine) -> Result<CoupledSystem> {
    CoupledSystem::new(agent, environment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn interface_rejects_empty_and_duplicates() {
        assert!(Interface::new(Vec::<String>::new(), ["a"]).is_err());
        assert!(Interface::new(["s"], Vec::<String>::new()).is_err());
        assert!(Interface::new(["s", "s"], ["a"]).is_err());
        assert!(Interface::new(["s"], ["a", "a"]).is_err());
    }

    #[test]
    fn moore_rejects_bad_tables() {
        let i = Interface::with_sizes(2, 2).unwrap();
        let states = vec!["x0".to_string(), "x1".to_string()];
        assert!(MooreMachine::new(i.clone(), states.clone(), vec![0], vec![0; 4]).is_err());
        assert!(MooreMachine::new(i.clone(), states.clone(), vec![0, 2], vec![0; 4]).is_err());
        assert!(MooreMachine::new(i.clone(), states.clone(), vec![0, 1], vec![0; 3]).is_err());
        assert!(MooreMachine::new(i, states, vec![0, 1], vec![0, 1, 2, 0]).is_err());
    }

    #[test]
    fn doorstop_agent() {
        let sys = presets::doorstop();
        let agent = sys.agent();
        assert_eq!(agent.readout(0), Ok(0));
        assert_eq!(agent.update(0, 0), Ok(0));
        assert!(matches!(
            agent.readout(1),
            Err(Error::OutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn identity_readout_and_copy_update() {
        let i = Interface::with_sizes(2, 2).unwrap();
        let agent =
            MooreMachine::from_fn(i, vec!["x0".into(), "x1".into()], |x| x, |_, s| s).unwrap();
        assert_eq!(agent.readout(1), Ok(1));
        assert_eq!(agent.update(0, 1), Ok(1));
        assert!(agent.update(0, 2).is_err());
    }

    #[test]
    fn toggle_world_tables() {
        let sys = presets::toggle_world();
        let i = sys.interface();
        let stay = i.action_index("stay").unwrap();
        let flip = i.action_index("flip").unwrap();
        let lo = i.sensor_index("lo").unwrap();
        let hi = i.sensor_index("hi").unwrap();
        assert_eq!(sys.agent().readout(1), Ok(flip));
        assert_eq!(sys.agent().update(0, hi), Ok(1));
        assert_eq!(sys.environment().evolve(0, flip), Ok((1, hi)));
        assert_eq!(sys.environment().evolve(0, stay), Ok((0, lo)));
        assert!(sys.environment().evolve(2, stay).is_err());
        assert!(sys.environment().evolve(0, 2).is_err());
    }

    #[test]
    fn single_state_environment() {
        let i = Interface::with_sizes(1, 3).unwrap();
        let env = MealyMachine::from_fn(i, vec!["y".into()], |_, _| (0, 0)).unwrap();
        for a in 0..3 {
            assert_eq!(env.evolve(0, a), Ok((0, 0)));
        }
    }

    #[test]
    fn coupling_requires_identical_interface() {
        let a = Interface::with_sizes(1, 1).unwrap();
        let b = Interface::new(["other"], ["a0"]).unwrap();
        let agent = MooreMachine::from_fn(a.clone(), vec!["x".into()], |_| 0, |_, _| 0).unwrap();
        let env = MealyMachine::from_fn(b, vec!["y".into()], |_, _| (0, 0)).unwrap();
        assert_eq!(couple(agent.clone(), env), Err(Error::InterfaceMismatch));
        // Equal by value is enough; the Arc need not be shared.
        let c = Interface::with_sizes(1, 1).unwrap();
        let env = MealyMachine::from_fn(c, vec!["y".into()], |_, _| (0, 0)).unwrap();
        assert!(couple(agent, env).is_ok());
    }

    #[test]
    fn one_state_system_is_identity() {
        let i = Interface::with_sizes(1, 1).unwrap();
        let agent = MooreMachine::from_fn(i.clone(), vec!["x".into()], |_| 0, |_, _| 0).unwrap();
        let env = MealyMachine::from_fn(i, vec!["y".into()], |_, _| (0, 0)).unwrap();
        let sys = couple(agent, env).unwrap();
        assert_eq!(sys.num_joint_states(), 1);
        let w = JointState::new(0, 0);
        assert_eq!(sys.step(w), Ok(w));
        assert_eq!(sys.trajectory(w, 3).unwrap(), vec![w; 4]);
        assert_eq!(sys.trajectory(w, 0).unwrap(), vec![w]);
    }

    // Hand evaluation of h on the toggle world:
    //   (0,0): r=stay, e(0,stay)=(0,lo), u(0,lo)=0 -> (0,0)
    //   (0,1): r=stay, e(1,stay)=(1,hi), u(0,hi)=1 -> (1,1)
    //   (1,0): r=flip, e(0,flip)=(1,hi), u(1,hi)=1 -> (1,1)
    //   (1,1): r=flip, e(1,flip)=(0,lo), u(1,lo)=0 -> (0,0)
    #[test]
    fn toggle_world_step_hand_evaluated() {
        let sys = presets::toggle_world();
        assert_eq!(sys.num_joint_states(), 4);
        let expected = [
            ((0, 0), (0, 0)),
            ((0, 1), (1, 1)),
            ((1, 0), (1, 1)),
            ((1, 1), (0, 0)),
        ];
        for ((x, y), (x2, y2)) in expected {
            assert_eq!(
                sys.step(JointState::new(x, y)),
                Ok(JointState::new(x2, y2)),
                "h({x},{y})"
            );
        }
        assert!(sys.step(JointState::new(2, 0)).is_err());
    }

    #[test]
    fn toggle_world_trajectories() {
        let sys = presets::toggle_world();
        let w = |x, y| JointState::new(x, y);
        assert_eq!(sys.trajectory(w(0, 0), 4).unwrap(), vec![w(0, 0); 5]);
        assert_eq!(
            sys.trajectory(w(1, 0), 4).unwrap(),
            vec![w(1, 0), w(1, 1), w(0, 0), w(0, 0), w(0, 0)]
        );
    }

    #[test]
    fn joint_indexing_is_x_major() {
        let sys = presets::toggle_world();
        assert_eq!(sys.index_of(JointState::new(1, 0)), Ok(2));
        assert_eq!(sys.joint_state(1), Ok(JointState::new(0, 1)));
        assert!(sys.joint_state(4).is_err());
    }

    #[test]
    fn types_are_thread_safe() {
        fn check<T: Send + Sync>() {}
        check::<CoupledSystem>();
        check::<crate::StateSet>();
    }
}
