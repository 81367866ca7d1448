//! Exact coloring invariants for categorical, lexicographic, exponential and
//! Kneser graphs, plus verification harnesses for the constructions built on
//! them.

pub mod config;
pub mod error;
pub mod graph;
pub mod lab;
pub mod rational;
pub mod solvers;

pub use config::Budget;
pub use error::{Error, Result};
pub use graph::{Coloring, Graph, Homomorphism, VertexLabel};
pub use rational::Rational;
