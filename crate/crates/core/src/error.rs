use thiserror::Error;

use crate::interpretation::ConsistencyWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{kind} index {index} out of range (size {size})")]
    OutOfRange {
        kind: &'static str,
        index: usize,
        size: usize,
    },
    #[error("{what}: expected size {expected}, found {found}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("agent and environment do not share the same interface")]
    InterfaceMismatch,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("universe of {universe} joint states exceeds the enumeration cap of {cap}")]
    Capacity { universe: usize, cap: usize },
    #[error("belief map is not consistent: {0}")]
    InconsistentBeliefs(ConsistencyWitness),
    #[error("start state (x={x}, y={y}) lies outside the believed set")]
    StartOutsideBelief { x: usize, y: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(kind: &'static str, index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::OutOfRange { kind, index, size })
    }
}

pub(crate) fn check_size(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            what,
            expected,
            found,
        })
    }
}
