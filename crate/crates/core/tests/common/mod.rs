//! Brute-force oracles written directly from the definitions. They only
//! evaluate machine tables through the public `readout`/`update`/`evolve`
//! accessors and never call into the regulation or interpretation modules.

#![allow(dead_code)]

use goodreg::{MealyMachine, MooreMachine, StateSet};

pub fn oracle_step(agent: &MooreMachine, env: &MealyMachine, x: usize, y: usize) -> (usize, usize) {
    let a = agent.readout(x).unwrap();
    let (y2, s) = env.evolve(y, a).unwrap();
    (agent.update(x, s).unwrap(), y2)
}

/// Bitmask over x-major joint indices.
pub fn oracle_forward_closed(agent: &MooreMachine, env: &MealyMachine, mask: u64) -> bool {
    let ny = env.num_states();
    let n = agent.num_states() * ny;
    (0..n).all(|i| {
        if mask & (1 << i) == 0 {
            return true;
        }
        let (x2, y2) = oracle_step(agent, env, i / ny, i % ny);
        mask & (1 << (x2 * ny + y2)) != 0
    })
}

/// Every forward-closed subset of `good`, by scanning all masks.
pub fn oracle_closed_family(agent: &MooreMachine, env: &MealyMachine, good: u64) -> Vec<u64> {
    let n = agent.num_states() * env.num_states();
    (0u64..1 << n)
        .filter(|m| m & !good == 0 && oracle_forward_closed(agent, env, *m))
        .collect()
}

pub fn oracle_largest(agent: &MooreMachine, env: &MealyMachine, good: u64) -> u64 {
    oracle_closed_family(agent, env, good)
        .into_iter()
        .fold(0, |acc, m| acc | m)
}

pub fn oracle_update(model: &MealyMachine, belief: &[bool], a: usize, s: usize) -> Vec<bool> {
    let mut out = vec![false; model.num_states()];
    for (z, &held) in belief.iter().enumerate() {
        if held {
            let (z2, s2) = model.evolve(z, a).unwrap();
            if s2 == s {
                out[z2] = true;
            }
        }
    }
    out
}

/// `update(ψ(x), r(x), s) ⊆ ψ(u(x, s))` for all `x`, `s`.
pub fn oracle_consistent(agent: &MooreMachine, model: &MealyMachine, psi: &[Vec<bool>]) -> bool {
    let sensors = agent.interface().num_sensors();
    (0..agent.num_states()).all(|x| {
        let a = agent.readout(x).unwrap();
        (0..sensors).all(|s| {
            let post = oracle_update(model, &psi[x], a, s);
            let target = &psi[agent.update(x, s).unwrap()];
            post.iter().zip(target).all(|(&p, &t)| !p || t)
        })
    })
}

pub fn slices(mask: u64, nx: usize, ny: usize) -> Vec<Vec<bool>> {
    (0..nx)
        .map(|x| (0..ny).map(|y| mask & (1 << (x * ny + y)) != 0).collect())
        .collect()
}

pub fn mask_of(set: &StateSet) -> u64 {
    set.to_mask().expect("small universe")
}
