pub mod cli;
pub mod dot;
pub mod harness;
pub mod metric;
pub mod rational;
pub mod region;
pub mod tangent;
pub mod topology;
pub mod tree;
