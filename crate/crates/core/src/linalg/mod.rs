//! Dense real matrix kernel.

mod eigen;
mod matrix;
mod orthogonal;

pub use eigen::{
    eigenvalues, hessenberg, real_eigenvector, real_schur, RealSchur, SchurBlock, Spectrum,
    SWEEPS_PER_DIMENSION,
};
pub use matrix::{assemble_block_diag, dot, norm, BlockSpec, RealMatrix};
pub use orthogonal::{
    build_normal_matrix, is_normal, is_symmetric, normal_block_form, normality_defect,
    random_orthogonal,
};
