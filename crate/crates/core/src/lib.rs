pub mod chain;
pub mod cli;
pub mod error;
pub mod evaluation;
pub mod instance;
pub mod iteration;
pub mod linalg;
pub mod mdp;
pub mod rational;
pub mod trace_io;
pub mod verify;

pub use error::{Error, Result};
pub use evaluation::{GainBias, ValueReport, ValueVector};
pub use iteration::{Criterion, RunConfig, TieMode, TraceRecord};
pub use mdp::{Action, Mdp, Policy, StateId};
pub use rational::Rational;
