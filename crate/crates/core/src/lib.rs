//! Exact algebra for link maps of two 2-spheres in the 4-sphere.
//!
//! The ground ring is Λ = Z[x, x⁻¹] with involution x ↦ x⁻¹. Link maps are
//! classified up to link homotopy by their Kirk invariants (σ₁, σ₂), pairs of
//! elements of z·Z[z] with z = 2 − x − x⁻¹. This crate computes those
//! invariants from accessory-sphere presentations, realizes every valid pair,
//! and produces checkable unlinking certificates for presentations whose
//! second component pairs trivially enough with the Whitney disks.

pub mod artifact;
pub mod diskledger;
pub mod forms;
pub mod json;
pub mod kirk;
pub mod laurent;
pub mod pi2;
pub mod realize;
pub mod report;
pub mod samples;
pub mod unlink;

pub use artifact::{Artifact, ArtifactError};
pub use diskledger::{DiskError, DiskKind, DiskRecord, Multiplicities};
pub use forms::{FormError, HermitianForm, IsometryMatrix, Matrix};
pub use json::JsonInt;
pub use kirk::{make_kirk, JkInput, KirkError, KirkPair};
pub use laurent::{IAdicOrder, LaurentError, LaurentPoly, ZPoly};
pub use pi2::{BasisKind, BasisTag, Pi2Error, SphereClass, UnlinkingReport};
pub use realize::{
    invariants_of, realize, sigma1_of, sigma2_of, PairRecord, Presentation, PresentationError,
    RealizeError,
};
pub use report::Check;
pub use unlink::{
    classify, construct_isometry, reduce, stabilize, IsometryWitness, UnlinkCertificate,
    UnlinkError, Verdict,
};
