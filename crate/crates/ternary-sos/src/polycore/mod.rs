//! Exact and floating-point polynomial kernel: arithmetic, gcd, resultants,
//! discriminants with nominal degree, square-free and psd tests,
//! homogenization.

pub mod binary;
pub mod det;
pub mod ratfunc;
pub mod resultant;
pub mod roots;
pub mod unipoly;

pub use binary::BinaryForm;
pub use det::{det_bareiss, det_gauss};
pub use ratfunc::RatFunc;
pub use resultant::{disc, disc_scale_law, pencil_pairing_matrix, resultant, sylvester};
pub use roots::{
    approx_gcd_degree, cluster_complex, cluster_vectors, complex_roots, polish_multiple_root,
    psd_binary, square_free, sturm_real_root_count, C64, TAU_GCD, TAU_PSD, TAU_ROOT,
};
pub use unipoly::UniPoly;
