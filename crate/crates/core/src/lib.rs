pub mod bocher;
pub mod canon;
pub mod contract;
pub mod catalog;
pub mod exactfield;
pub mod qalg;
pub mod symbolic;
