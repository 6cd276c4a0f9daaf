//! Positivity certificates for continuous piecewise polynomials on
//! 1-dimensional simplicial complexes.
//!
//! A complex is a graph of vertices and straight edges, possibly with
//! isolated vertices. An element of its algebra of continuous piecewise
//! polynomials is one univariate polynomial per edge (on `t in [-1, 1]`)
//! plus one value per isolated vertex, matching at shared vertices. For a
//! nonnegative element `F` this crate constructs and checks explicit
//! identities
//!
//! ```text
//! F = S + sum_{(i,j) in E} S_ij T_i T_j
//! ```
//!
//! where the `T_k` are the tent (Courant) functions, `S` is a sum of at most
//! `2e + m0` squares, each `S_ij` a sum of at most two squares, and all
//! degrees are bounded by `deg(F) + 6(e - 1) + 1` per connected component.
//!
//! The pipeline: [`poly`] supplies dense polynomial arithmetic and root
//! finding, [`interval`] the weighted square decompositions on `[-1, 1]`,
//! [`simplicial`] the combinatorics, [`pwpoly`] the piecewise algebra and
//! tent conversions, [`certify`] the certificate construction, verification,
//! and quadratic-module conversion, and [`exact`] a rational verifier for
//! certificates with exactly representable coefficients.

pub mod certify;
pub mod config;
pub mod exact;
pub mod interval;
pub mod poly;
pub mod pwpoly;
pub mod simplicial;

mod par;

pub use certify::{
    certify, is_nonneg, qm_convert, qm_expand, random_nonneg, verify, CertMeta, Certificate,
    CertifyError, NonnegReport, QmForm, Verdict, VerifyReport, Witness,
};
pub use config::Tolerances;
pub use interval::{
    adapt_sos, boundary_matched_sqrt, kms_form, lukacs_decompose, AdaptResult, IntervalError,
    MatchEnds, Parity, TwoSquareForm,
};
pub use poly::{CPoly, Degree, Poly, PolyError};
pub use pwpoly::{from_tent, Location, PiecewisePoly, PwError, TentPoly};
pub use simplicial::{Complex1D, ComplexError, Peeling, SharedVertices, VertexMap};
