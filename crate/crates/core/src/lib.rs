pub mod coxeter;
pub mod kernels;
pub mod percolation;
pub mod refgraph;
pub mod report;
pub mod suites;
