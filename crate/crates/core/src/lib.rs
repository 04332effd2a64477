pub mod eos;
pub mod equilibrium;
pub mod error;
pub mod experiments;
pub mod flux;
pub mod grid;
pub mod potential;
pub mod reconstruction;
pub mod solver;
pub mod source;
pub mod state;
