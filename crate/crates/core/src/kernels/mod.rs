mod checks;
mod cut;
mod decomposition;
mod density;
mod generate;
mod step;

pub use checks::{
    check_cutnorm_sandwich, check_domination, check_holder, check_sidorenko, check_tree_gluing, check_triangle,
    EQUALITY_TOL, INEQUALITY_TOL,
};
pub use cut::{cut_norm_exact, hypergraph_cut_norm, CutMode, ASCENT_STARTS, CUT_CELL_CAP, CUT_RESOLUTION_CAP};
pub use decomposition::{
    double_four_cycle, double_subdivided_k4, validate_n_decomposition, DecompositionCheck, NDecomposition,
};
pub use density::{
    abs_graph_norm, colored_density, colored_density_brute, complex_density, complex_graph_norm, density,
    density_brute, graph_norm, IMAGINARY_TOL, WORK_CAP,
};
pub use generate::{random_complex, random_nonnegative, random_signed, random_with_profile, Profile};
pub use step::{kernel_from_json, kernel_to_json, AnyKernel, ColoredFamily, Scalar, StepKernel};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum KernelError {
    #[error("bad kernel shape: {0}")]
    Shape(String),
    #[error("non-finite kernel entry at index {index}")]
    NonFinite { index: usize },
    #[error("kernel is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("evaluation needs more than {cap} terms")]
    WorkCapExceeded { cap: u64 },
    #[error("size {n} exceeds cap {cap}")]
    ResolutionCap { n: usize, cap: usize },
    #[error("the subsets share a generator, so the family is not stable")]
    NotStableFamily,
    #[error("imaginary residue {residue:e} is not negligible")]
    ImaginaryResidue { residue: f64 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("kernel parse error: {0}")]
    Parse(String),
}
