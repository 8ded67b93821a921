//! Cohomology of products of projective spaces and the characteristic
//! class calculus on it: Chern character, Todd class and its square root,
//! Mukai vectors and pairings, the Gamma class, twisted Mukai vectors,
//! integral transforms and the Denis trace of idempotents.

pub mod bridge;
pub mod classes;
pub mod denis;
pub mod gamma;
pub mod ring;
pub mod transform;

pub use bridge::{local_global_bridge, BridgeReport};
pub use classes::{
    check_odd, chern_character, dual, euler_pairing, grr_check, hrr_check, lambda_twist_vector,
    mukai_pairing, mukai_vector, sheaf_class, sqrt_todd, tau, td_pairing, td_pairing_check, todd,
    todd_of, BundleData, ExactCheck, SheafDescriptor,
};
pub use denis::{denis_trace, IdempotentMatrix};
pub use gamma::{gamma_class, gamma_identity_check, GammaIdentityReport, EULER_GAMMA, ZETA};
pub use ring::{CoeffKind, CohClass, CohRing};
pub use transform::{compose, diagonal, ProductSpace, Side};
