//! Grassmann-algebra arithmetic, Berezin integration, supermatrices and
//! super-Grassmannian charts, together with the special functions and
//! quadrature machinery needed to evaluate beta super-integrals on
//! G_{2|1,3|2} by independent routes.
//!
//! The crate is organized bottom-up:
//!
//! * [`grassmann`] — finite-generator Grassmann algebra over complex
//!   coefficients (canonical monomials, signed products, nilpotent powers).
//! * [`berezin`] — Berezin integration over odd variables.
//! * [`supermatrix`] — parity-graded block matrices and the Berezinian.
//! * [`supergrass`] — chart atlases on super-Grassmannians, reduction and
//!   transition maps, affine form families.
//! * [`specfun`] — complex Gamma, classical beta, Gauss 2F1, generalized
//!   binomial coefficients.
//! * [`quad`] — Gauss-Jacobi rules on [0,1] and a half-line rule for
//!   Mellin integrals.
//! * [`superbeta`] — the beta super-integral, its closed form and the
//!   identity checks tying everything together.
//! * [`verify`] — the runnable verification suites behind the CLI.

pub mod berezin;
pub mod grassmann;
pub mod quad;
pub mod specfun;
pub mod superbeta;
pub mod supergrass;
pub mod supermatrix;
pub mod verify;

pub use grassmann::{GrassmannElement, GrassmannError, OddMonomial, Parity};
pub use quad::JacobiRule;
pub use superbeta::{BetaParams, ClassicalParams, GeneralSuperBetaParams};
pub use supergrass::{AffineFormFamily, Chart, ReducedPoint};
pub use supermatrix::SuperMatrix;
