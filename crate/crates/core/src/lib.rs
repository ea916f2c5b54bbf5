//! Syndrome decoding of one-point AG codes by solving multivariate linear
//! recurrences.
//!
//! The syndrome array of an error pattern is a multidimensional linear
//! recurring sequence: it is annihilated, under the shift action of
//! polynomials on power series, by the vanishing ideal of the error positions.
//! With a Gröbner basis `G` of that ideal the array is the unique solution of
//! the homogeneous Cauchy problem `G(X) o E = 0, E|Δ(G) = V0`. This crate
//! provides the pieces needed to use that equation for decoding:
//!
//! * [`gf`]: table-driven arithmetic in GF(p^m),
//! * [`poly`]: sparse multivariate polynomials and the weighted graded order,
//! * [`series`]: truncated power series and the polynomial action on them,
//! * [`groebner`]: Buchberger, normal forms and delta sets,
//! * [`cauchy`]: the Cauchy solver producing trajectories from initial data,
//! * [`agcode`]: curves, one-point dual codes and the generalized transform,
//! * [`decoder`]: Berlekamp-Massey-Sakata and the full decoding pipeline,
//! * [`cli`]: the file-based command line front end.

pub mod agcode;
pub mod cauchy;
pub mod cli;
pub mod decoder;
pub mod gf;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod series;

pub use agcode::{build_code, gt, known_syndromes, CodeSpec, CurveSpec, SyndromeArray};
pub use cauchy::{consistency_check, solve_box, solve_coefficient, CauchyProblem, LinearRecurringSeries};
pub use decoder::{bms, decode, DecodeResult, DecodeStatus};
pub use gf::{Elem, Field, FieldElement};
pub use groebner::{buchberger, vanishing_ideal, DeltaSet, GroebnerBasis};
pub use poly::{vanishing_product, Exponent, MonomialOrder, MultiPoly};
pub use series::{act, act_matrix, is_in_kernel, orthogonal_test, KernelVerdict, TruncatedSeries};
