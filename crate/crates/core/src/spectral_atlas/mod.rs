//! Spectral geometry of `T / i`: the lens-shaped regions `R_p`, the
//! eigenfunctions `xi_lambda`, and fine spectra on rearrangement-invariant
//! spaces described by their indices.

mod classify;
mod eigen;
mod region;

pub use classify::{
    boundary_polyline, check_partition, classify_point, classify_space, lorentz_indices,
    xi_in_space, FineSpectrum, Indices, PartitionReport, PointClass, SpaceDescriptor, SpectralSet,
};
pub use eigen::{
    eigen_residual, gamma_of_lambda, in_eigenvalue_set, xi, xi_eval, z_of_lambda,
    EIGEN_GAMMA_MARGIN, EIGEN_SET_IM_TOL,
};
pub use region::{region_contains, Membership, SpectralRegion, REGION_TOL};
