pub mod catalog;
pub mod expr;
pub mod jordan;
pub mod liealg;
pub mod odesys;
pub mod symmetry;
