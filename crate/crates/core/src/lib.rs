//! Rank-metric public-key encryption built on Gabidulin codes.
//!
//! The toolkit implements Loidreau's cryptosystem together with two masking
//! variants: `mod1` publishes a generator of a random (k−l)-dimensional
//! subcode of the Gabidulin code, and `mod2` adds a low-column-rank matrix
//! to the generator before scrambling. The [`analysis`] module carries the
//! Frobenius-sum distinguisher, the Coggia–Couvreur chain intersection, the
//! white-box resistance checks separating the vulnerable original from the
//! masked variants, generic-attack cost estimates, and the parameter
//! registry with key-size accounting.
//!
//! All randomness flows through [`rng::DetRng`], a ChaCha20 stream seeded
//! with 32 bytes, so every keygen/encrypt run is reproducible from its seed.

pub mod analysis;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod keyio;
pub mod linalg;
pub mod rng;
pub mod schemes;

pub use error::{Error, Result};
pub use field::{ExtField, FieldElement};
pub use gabidulin::GabidulinCode;
pub use keyio::{ObjectKind, WireObject};
pub use linalg::{FieldMatrix, FieldVector, LinearCode, SubspaceBasisQ};
pub use rng::DetRng;
pub use schemes::{Ciphertext, KeyPair, PublicKey, Scheme, SchemeParams, SecretKey};

