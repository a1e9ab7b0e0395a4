use thiserror::Error;

use crate::mdp::StateId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid MDP: {0}")]
    InvalidMdp(String),

    #[error("state {state} has no action with index {action}")]
    ActionOutOfRange { state: StateId, action: usize },

    #[error("state {0} is not a state of this MDP")]
    StateOutOfRange(StateId),

    #[error("state {0} appears more than once in a change set")]
    DuplicateChange(StateId),

    #[error("policy covers {found} states, expected {expected}")]
    PolicyLength { expected: usize, found: usize },

    #[error("total reward is undefined: recurrent state {state} collects nonzero reward")]
    IllDefinedTotalReward { state: StateId },

    #[error("linear system has no unique solution")]
    SingularSystem,

    #[error("linear system is not square: {rows} rows, {cols} columns, rhs of length {rhs}")]
    NonSquareSystem { rows: usize, cols: usize, rhs: usize },

    #[error("greedy argmax at state {state} is ambiguous between actions {actions:?}")]
    AmbiguousArgmax { state: StateId, actions: Vec<usize> },

    #[error("iteration budget of {0} exhausted before termination")]
    IterationBudgetExceeded(usize),

    #[error("invalid instance parameters: {0}")]
    InvalidParams(String),

    #[error("invalid phase: {0}")]
    InvalidPhase(String),

    #[error("counter configuration is already full")]
    CounterOverflow,

    #[error("trace does not match instance: {0}")]
    TraceMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
