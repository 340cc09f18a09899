//! Exact computation of homotopy colimits and homotopy limits of chain
//! complexes.
//!
//! The engine works with bounded chain complexes of finitely generated free
//! modules over `Z`, `Q`, or a prime field. Homotopy colimits of a diagram
//! are computed as the direct-sum totalization of the Moore complex of the
//! simplicial bar construction; homotopy limits over loop-free index
//! categories as the direct-product totalization of the reduced Moore complex
//! of the cosimplicial cobar construction. All homology is exact, via Smith
//! normal form over arbitrary-precision integers.

pub mod error;
pub mod matrix;
pub mod ring;
pub mod snf;

pub mod chain;
pub mod simplicial_set;

pub mod category;
pub mod dold_kan;
pub mod totalization;

pub mod bar_cobar;
pub mod corpus;

pub use chain::{
    cone, direct_sum, is_quasi_iso, is_quasi_iso_on, kunneth_rhs, shift, tensor, tensor_groups,
    ChainComplex, ChainMap, HomologyGroup,
};
pub use category::{is_loop_free, nerve_simplices, validate, Diagram, FiniteCategory, NerveSimplex};
pub use dold_kan::{
    degenerate_sub, moore, moore_cosimplicial, normalized, normalized_cosimplicial, reduced_moore,
    reduced_moore_cosimplicial, CosimplicialChainComplex, DoubleComplex, DoubleComplexMap,
    SimplicialChainComplex,
};
pub use error::Error;
pub use matrix::Matrix;
pub use ring::Ring;
pub use simplicial_set::FiniteSimplicialSet;
pub use snf::{
    image_basis, inverse, kernel_basis, rank, smith_normal_form, solve_exact, SmithDecomposition,
};
pub use totalization::{tot_prod, tot_sum, tot_sum_map, DegreeWindow};
pub use bar_cobar::{
    bar_simplicial, cobar_cosimplicial, cosimplicial_totalization, fat_realization, hocolim,
    hocolim_at_level, hocolim_levels_needed, holim, holim_at_level, linearize,
    nondegenerate_nerve_dimension, realization, simplicial_hocolim, HocolimResult, HolimResult,
};
