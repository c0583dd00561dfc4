//! Small hand-checked systems used by the tests, the examples and the
//! shipped fixture files.

use crate::machine::{CoupledSystem, Interface, MealyMachine, MooreMachine};
use crate::set::StateSet;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Toggle world.
///
/// Environment `Y = {y0, y1}` with actions `stay`/`flip`; the sensor reports
/// the new state (`lo` for `y0`, `hi` for `y1`). The agent `X = {x0, x1}`
/// remembers the last sensor value (`lo -> x0`, `hi -> x1`) and flips
/// whenever it is in `x1`.
///
/// | x  | r(x) | u(x, lo) | u(x, hi) |
/// |----|------|----------|----------|
/// | x0 | stay | x0       | x1       |
/// | x1 | flip | x0       | x1       |
pub fn toggle_world() -> CoupledSystem {
    let interface = Interface::new(["lo", "hi"], ["stay", "flip"]).expect("valid interface");
    let agent = MooreMachine::from_fn(interface.clone(), labels(&["x0", "x1"]), |x| x, |_, s| s)
        .expect("valid agent");
    let environment = MealyMachine::from_fn(interface, labels(&["y0", "y1"]), |y, a| {
        let next = if a == 0 { y } else { 1 - y };
        (next, next)
    })
    .expect("valid environment");
    CoupledSystem::new(agent, environment).expect("shared interface")
}

/// Good set of the toggle world: environment in `y0`, any agent state.
pub fn toggle_world_goal() -> StateSet {
    let sys = toggle_world();
    crate::regulation::lift_environment_goal(&StateSet::from_indices(2, [0]), &sys)
        .expect("sized to Y")
}

/// A doorstop: one agent state, one sensor value, one action. The
/// environment still moves: `y0 <-> y1`, `y2 -> y3 -> y3`.
pub fn doorstop() -> CoupledSystem {
    let interface = Interface::new(["s"], ["a"]).expect("valid interface");
    let agent = MooreMachine::from_fn(interface.clone(), labels(&["*"]), |_| 0, |_, _| 0)
        .expect("valid agent");
    let environment = MealyMachine::from_fn(
        interface,
        labels(&["y0", "y1", "y2", "y3"]),
        |y, _| match y {
            0 => (1, 0),
            1 => (0, 0),
            _ => (3, 0),
        },
    )
    .expect("valid environment");
    CoupledSystem::new(agent, environment).expect("shared interface")
}

/// Good set of the doorstop: `{y0, y1, y2}`. The largest regulating set is
/// `{y0, y1}` since `y2` leaves immediately.
pub fn doorstop_goal() -> StateSet {
    StateSet::from_indices(4, [0, 1, 2])
}
