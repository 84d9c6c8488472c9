//! Dense Hermitian linear algebra: matrix type, Jacobi eigensolver,
//! fractional powers, matrix means, Loewner certificates and random
//! instance generation.

pub mod cmatrix;
pub mod hermitian;
pub mod jacobi;
pub mod means;
pub mod random;

pub use cmatrix::CMatrix;
pub use hermitian::{
    loewner_leq, loewner_margin, psd_pow, HermitianMatrix, LoewnerVerdict, PsdMatrix,
    SpdMatrix, SpectralBounds,
};
pub use jacobi::{hermitian_eigen, spectral_map};
pub use means::{congruence, nabla, sharp};
pub use random::{random_matrix, random_psd, random_spd, random_spd_seeded, random_unitary};
