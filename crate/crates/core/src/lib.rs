//! Exact arithmetic for rank-2 Drinfeld modules over A = F_q[t] and the
//! group-theoretic machinery needed to certify that their torsion Galois
//! representations have large image.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: the base field F_q (q = p^e) and the `Field` trait shared by
//!   every coefficient field in the tower.
//! * [`fpoly`]: generic dense polynomial arithmetic and factorization over
//!   any finite `Field` (squarefree split, distinct-degree, Cantor–Zassenhaus).
//! * [`apoly`]: the ring A = F_q[t], its ideals, prime enumeration, CRT and
//!   the text grammar used by the CLI.
//! * [`ratfunc`]: the fraction field F = F_q(t), places and valuations.
//! * [`residue`]: residue fields A/𝔭 and their explicit extensions.
//! * [`xpoly`]: polynomials in x over A: Sylvester resultants and the
//!   power-polynomial transform.
//! * [`skew`]: the twisted polynomial ring K{τ} and additive polynomials.
//! * [`drinfeld`]: Drinfeld modules, j-invariants, reduction types, torsion.
//! * [`frobenius`]: torsion bases over finite fields, Frobenius matrices and
//!   exact Frobenius characteristic polynomials by CRT.
//! * [`groups`]: matrix groups over quotients A/𝔞: closure, commutators,
//!   filtrations and the finite-level fullness criteria.
//! * [`certify`]: the rule engine assembling arithmetic facts into auditable
//!   certificates of Galois-image properties.
//! * [`wild2`]: the q = 2 toolkit for ramification at the infinite place.
//! * [`density`]: exact enumeration and seeded sampling over A²(d).
//!
//! ```
//! use dmq_core::apoly::{AIdeal, APoly};
//! use dmq_core::certify::{adelic_certificate, CertifyOptions};
//! use dmq_core::frobenius::frob_charpoly_exact;
//! use dmq_core::{DrinfeldModule, Fq};
//!
//! // φ_t = t + τ − t²τ² over F_3(t)
//! let fq = Fq::prime(3).unwrap();
//! let dm = DrinfeldModule::family(
//!     &fq,
//!     &APoly::parse(&fq, "1").unwrap(),
//!     &APoly::parse(&fq, "2*t^2").unwrap(),
//! )
//! .unwrap();
//!
//! // the exact Frobenius polynomial at a good prime
//! let p = AIdeal::parse(&fq, "(t+2)").unwrap();
//! let frob = frob_charpoly_exact(&dm, &p).unwrap();
//! assert_eq!(frob.to_string(&fq), "x^2 + (2)*x + (t+2)");
//!
//! // and the full adelic certificate
//! let outcome = adelic_certificate(&dm, &CertifyOptions::default()).unwrap();
//! assert!(outcome.certificate.proven());
//! assert_eq!(outcome.det_index, 1);
//! ```

pub mod apoly;
pub mod certify;
pub mod density;
pub mod drinfeld;
pub mod error;
pub mod field;
pub mod fpoly;
pub mod frobenius;
pub mod groups;
pub mod ratfunc;
pub mod residue;
pub mod rng;
pub mod skew;
pub mod wild2;
pub mod xpoly;

pub use apoly::{AIdeal, APoly};
pub use certify::{
    AdelicOutcome, Certificate, CertifyOptions, Claim, DetFacts, InertiaWitness, SieveFlags,
    Status,
};
pub use density::{CountMode, DensityEstimate, SetDescriptor};
pub use drinfeld::{DrinfeldModule, ReductionKind, ReductionReport};
pub use error::{Error, Result};
pub use field::{Field, Fq};
pub use frobenius::{FrobPoly, FrobSample, TorsionBasis};
pub use groups::{MatGroup, QuotMat, QuotRing};
pub use ratfunc::{FuncField, Place, RatFunc};
pub use residue::{ExtField, ResidueField};
pub use skew::{AdditivePoly, SkewPoly};
