//! Norms on the Drury–Arveson space and radially weighted Besov spaces,
//! iterated-logarithm transforms of zero-free functions, and numerical
//! checks of the inequalities that make the transforms useful for
//! cyclicity questions about stable polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: multivariate power series truncated at a total-degree cap.
//! * [`weights`]: radial measures and the weight sequences they induce.
//! * [`norms`]: `H²_d`, Besov and Dirichlet norms plus tail diagnostics.
//! * [`transforms`]: stable polynomials, the iterated-log ladder, argument
//!   and sup-norm estimators.
//! * [`quadrature`]: disk quadrature and the integral bounds.
//! * [`identities`]: series-level checks of derivative identities.
//!
//! With the default `parallel` feature, sampling loops and quadrature panels
//! run on rayon. Without it the same code runs sequentially and produces
//! identical results.

pub mod corpus;
pub mod error;
pub mod identities;
pub mod io;
pub mod norms;
pub mod par;
pub mod quadrature;
pub mod roots;
pub mod sampling;
pub mod series;
pub mod transforms;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{HomogeneousPart, MultiIndex, TruncatedSeries};
