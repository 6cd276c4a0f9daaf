//! Sum-of-squares decompositions of polynomials nonnegative on `[-1, 1]`.
//!
//! Everything here runs on the reference interval with weight `w = 1 - t^2`:
//!
//! * [`lukacs_decompose`] writes an even-degree `f` as `p^2 + w q^2` and an
//!   odd-degree `f` as `(1+t) p^2 + (1-t) q^2` (single squares, sharp degree
//!   bounds), built directly from the root factorization of `f`.
//! * [`kms_form`] converts either parity into `f = s0 + s1 w` with `s0`, `s1`
//!   sums of two squares, `deg s0 <= deg f + 1`, `deg s1 <= deg f - 1`.
//! * [`boundary_matched_sqrt`] produces a single square root `s` of prescribed
//!   boundary values with `s^2 <= f` on the interval.
//! * [`adapt_sos`] iterates the square root against a running remainder to
//!   match whole vectors of boundary values and closes with a weighted
//!   two-square tail that vanishes at the matched ends.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::fmt;

use crate::config::Tolerances;
use crate::poly::{CPoly, Degree, Poly, PolyError};

/// Roots this close to `+-1` (absolute) are treated as boundary/exterior
/// sticks rather than interior zeros.
const INTERIOR_BAND: f64 = 1e-9;

/// Remainders whose sup-norm falls below this (relative to the input scale)
/// are snapped to the zero polynomial.
const ZERO_SNAP_REL: f64 = 1e-13;

/// A sum of two squares `u^2 + v^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSquareForm {
    pub u: Poly,
    pub v: Poly,
}

impl TwoSquareForm {
    pub fn zero() -> Self {
        TwoSquareForm {
            u: Poly::zero(),
            v: Poly::zero(),
        }
    }

    pub fn new(u: Poly, v: Poly) -> Self {
        TwoSquareForm { u, v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Expands to the explicit polynomial `u^2 + v^2`.
    pub fn expand(&self) -> Poly {
        &(&self.u * &self.u) + &(&self.v * &self.v)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (u, v) = (self.u.eval(x), self.v.eval(x));
        u * u + v * v
    }

    pub fn degree(&self) -> Degree {
        self.expand().degree()
    }

    /// Scales the represented value by `c^2` (each root by `c`).
    pub fn scale_roots(&self, c: f64) -> Self {
        TwoSquareForm {
            u: self.u.scale(c),
            v: self.v.scale(c),
        }
    }
}

/// Parity of the decomposed polynomial, which selects the shape of the
/// weighted representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Which endpoints of the interval carry boundary constraints in
/// [`adapt_sos`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchEnds {
    Both,
    RightOnly,
}

/// Result of [`adapt_sos`]: `f = sum squares_i^2 + remainder * (1 - t^2)`.
#[derive(Clone, Debug)]
pub struct AdaptResult {
    pub squares: Vec<Poly>,
    pub remainder: TwoSquareForm,
}

#[derive(Debug, Clone)]
pub enum IntervalError {
    /// The input dips below the nonnegativity tolerance; carries a witness.
    NotNonnegative { at: f64, value: f64 },
    /// A requested boundary value is too large for the available mass, or a
    /// boundary-sum precondition fails.
    BoundaryInfeasible {
        end: f64,
        required: f64,
        available: f64,
    },
    /// A running remainder inside [`adapt_sos`] dipped below tolerance,
    /// signalling accumulated numerical loss.
    RemainderNegative { step: usize, at: f64, value: f64 },
    /// A reconstruction or dominance post-condition failed beyond tolerance.
    Numerical { what: &'static str, residual: f64 },
    Roots(PolyError),
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::NotNonnegative { at, value } => {
                write!(f, "not nonnegative on [-1,1]: value {value:e} at t = {at}")
            }
            IntervalError::BoundaryInfeasible {
                end,
                required,
                available,
            } => write!(
                f,
                "boundary constraint at t = {end} infeasible: needs {required:e}, has {available:e}"
            ),
            IntervalError::RemainderNegative { step, at, value } => write!(
                f,
                "remainder after step {step} dipped to {value:e} at t = {at}"
            ),
            IntervalError::Numerical { what, residual } => {
                write!(f, "numerical contract violation in {what}: residual {residual:e}")
            }
            IntervalError::Roots(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IntervalError {}

impl From<PolyError> for IntervalError {
    fn from(e: PolyError) -> Self {
        IntervalError::Roots(e)
    }
}

/// Internal single-square weighted forms closed under multiplication.
///
/// `Even(a, b)` represents `a^2 + (1-t^2) b^2`; `Odd(p, q)` represents
/// `(1+t) p^2 + (1-t) q^2`. The three product rules below keep each
/// component a single polynomial, which is what makes the sharp
/// Markov-Lukacs degree bounds come out exactly.
#[derive(Clone, Debug)]
enum Form {
    Even(Poly, Poly),
    Odd(Poly, Poly),
}

fn one_plus_t() -> Poly {
    Poly::new(vec![1.0, 1.0])
}

fn one_minus_t() -> Poly {
    Poly::new(vec![1.0, -1.0])
}

fn weight() -> Poly {
    Poly::new(vec![1.0, 0.0, -1.0])
}

impl Form {
    fn mul(&self, rhs: &Form) -> Form {
        let w = weight();
        match (self, rhs) {
            (Form::Even(a1, b1), Form::Even(a2, b2)) => Form::Even(
                &(a1 * a2) - &(&w * &(b1 * b2)),
                &(a1 * b2) + &(a2 * b1),
            ),
            (Form::Even(a, b), Form::Odd(p, q)) | (Form::Odd(p, q), Form::Even(a, b)) => {
                Form::Odd(
                    &(a * p) - &(&(b * &one_minus_t()) * q),
                    &(a * q) + &(&(b * &one_plus_t()) * p),
                )
            }
            (Form::Odd(p1, q1), Form::Odd(p2, q2)) => Form::Even(
                &(&(p1 * p2) * &one_plus_t()) - &(&(q1 * q2) * &one_minus_t()),
                &(p1 * q2) + &(p2 * q1),
            ),
        }
    }

    fn scale(&self, c: f64) -> Form {
        match self {
            Form::Even(a, b) => Form::Even(a.scale(c), b.scale(c)),
            Form::Odd(p, q) => Form::Odd(p.scale(c), q.scale(c)),
        }
    }

    fn mul_square(&self, s: &Poly) -> Form {
        match self {
            Form::Even(a, b) => Form::Even(a * s, b * s),
            Form::Odd(p, q) => Form::Odd(p * s, q * s),
        }
    }

    fn expand(&self) -> Poly {
        match self {
            Form::Even(a, b) => &(a * a) + &(&weight() * &(b * b)),
            Form::Odd(p, q) => &(&one_plus_t() * &(p * p)) + &(&one_minus_t() * &(q * q)),
        }
    }

    /// Gauss-Newton polish of the components against a target.
    fn refine(&mut self, target: &Poly) {
        let is_even = matches!(self, Form::Even(..));
        let mut comps = match self {
            Form::Even(a, b) => vec![(Poly::one(), a.clone()), (weight(), b.clone())],
            Form::Odd(p, q) => vec![
                (one_plus_t(), p.clone()),
                (one_minus_t(), q.clone()),
            ],
        };
        refine_weighted(target, &mut comps);
        *self = if is_even {
            Form::Even(comps[0].1.clone(), comps[1].1.clone())
        } else {
            Form::Odd(comps[0].1.clone(), comps[1].1.clone())
        };
    }
}

/// Gauss-Newton polish of a weighted square combination: adjusts the
/// components `c_i` to minimize the coefficient-space residual of
/// `target - sum_i w_i c_i^2`. Root extraction leaves residuals around the
/// eigenvalue accuracy; a few linearized least-squares steps pull them down
/// to rounding level. Component degrees never grow, and explicit weight
/// factors (which carry exact boundary zeros) are untouched.
fn refine_weighted(target: &Poly, comps: &mut [(Poly, Poly)]) {
    for iter in 0..3 {
        let mut expansion = Poly::zero();
        for (w, c) in comps.iter() {
            expansion = &expansion + &(w * &(c * c));
        }
        let residual = target - &expansion;
        if std::env::var("TENTPOLE_DEBUG_REFINE").is_ok() {
            eprintln!(
                "refine iter {iter}: residual {:e} (target norm {:e})",
                residual.sup_norm(),
                target.sup_norm()
            );
        }
        if residual.sup_norm() <= 1e-14 * target.sup_norm() {
            break;
        }
        let mut columns: Vec<Poly> = Vec::new();
        let mut spans: Vec<usize> = Vec::new();
        for (w, c) in comps.iter() {
            spans.push(c.coeffs().len());
            for k in 0..c.coeffs().len() {
                columns.push(&(w * &Poly::monomial(k, 2.0)) * c);
            }
        }
        if columns.is_empty() {
            break;
        }
        let rows = columns
            .iter()
            .map(|c| c.coeffs().len())
            .chain([residual.coeffs().len()])
            .max()
            .unwrap();
        let mut a = DMatrix::<f64>::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &c) in col.coeffs().iter().enumerate() {
                a[(i, j)] = c;
            }
        }
        let mut rhs = DVector::<f64>::zeros(rows);
        for (i, &c) in residual.coeffs().iter().enumerate() {
            rhs[i] = c;
        }
        let delta = match a.svd(true, true).solve(&rhs, 1e-13) {
            Ok(d) => d,
            Err(_) => break,
        };
        let slice = delta.as_slice();
        let mut offset = 0;
        let mut candidate = comps.to_vec();
        for ((_, c), span) in candidate.iter_mut().zip(&spans) {
            let mut coeffs = c.coeffs().to_vec();
            for (coeff, dc) in coeffs.iter_mut().zip(&slice[offset..offset + span]) {
                *coeff += dc;
            }
            *c = Poly::new(coeffs);
            offset += span;
        }
        let mut new_expansion = Poly::zero();
        for (w, c) in candidate.iter() {
            new_expansion = &new_expansion + &(w * &(c * c));
        }
        if (target - &new_expansion).sup_norm() < residual.sup_norm() {
            comps.clone_from_slice(&candidate);
        } else {
            break;
        }
    }
}

/// Writes the monic quadratic `t^2 + B t + C` (nonnegative on `[-1, 1]`) as
/// `(alpha t + beta)^2 + (1 - t^2) gamma^2`. Of the two admissible values of
/// `gamma^2` the smaller feasible one is chosen.
fn monic_quad_form(b: f64, c: f64) -> Result<(Poly, Poly), IntervalError> {
    let scale = 1.0 + b.abs() + c.abs();
    let dust = 1e-9 * scale;
    let disc = ((1.0 + c) * (1.0 + c) - b * b).max(0.0).sqrt();
    for u in [((c - 1.0) - disc) / 2.0, ((c - 1.0) + disc) / 2.0] {
        let u = if u < 0.0 && u >= -dust { 0.0 } else { u };
        if u < 0.0 {
            continue;
        }
        let alpha = (1.0 + u).sqrt();
        let beta = b / (2.0 * alpha);
        return Ok((Poly::new(vec![beta, alpha]), Poly::constant(u.sqrt())));
    }
    Err(IntervalError::Numerical {
        what: "quadratic two-square ansatz",
        residual: f64::NAN,
    })
}

/// A linear factor pinned to one side of the interval, written as a
/// nonnegative combination of `(1+t)` and `(1-t)`.
///
/// For a root `r` on the right (`r >= 1 - band` or beyond), the nonnegative
/// normal form is `r - t`; on the left it is `t - r`. Either way the result
/// is an odd form with constant components.
fn stick_atom(r: f64, right: bool) -> Form {
    let (cp, cm) = if right {
        // r - t = (r-1)(1+t)/2 + (r+1)(1-t)/2
        ((r - 1.0) / 2.0, (r + 1.0) / 2.0)
    } else {
        // t - r = (1-r)(1+t)/2 + (-1-r)(1-t)/2
        ((1.0 - r) / 2.0, (-1.0 - r) / 2.0)
    };
    Form::Odd(
        Poly::constant(cp.max(0.0).sqrt()),
        Poly::constant(cm.max(0.0).sqrt()),
    )
}

struct RootInventory {
    /// One representative per conjugate pair, `im > 0`, sorted.
    complex_pairs: Vec<Complex64>,
    /// Product of `(t - m)` over paired interior roots (snapped to cluster
    /// midpoints); enters the decomposition as an exact square factor.
    pure: Poly,
    /// Real roots at or beyond the left end, ascending.
    left_sticks: Vec<f64>,
    /// Real roots at or beyond the right end, ascending.
    right_sticks: Vec<f64>,
}

fn classify_roots(f: &Poly, tol: &Tolerances) -> Result<RootInventory, IntervalError> {
    let roots = f.roots(tol)?;
    let mut complex_pairs = Vec::new();
    let mut interior = Vec::new();
    let mut left_sticks = Vec::new();
    let mut right_sticks = Vec::new();
    for r in roots {
        if r.im > 0.0 {
            complex_pairs.push(r);
        } else if r.im == 0.0 {
            if r.re <= -1.0 + INTERIOR_BAND {
                left_sticks.push(r.re);
            } else if r.re >= 1.0 - INTERIOR_BAND {
                right_sticks.push(r.re);
            } else {
                interior.push(r.re);
            }
        }
    }
    complex_pairs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
    left_sticks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    right_sticks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Interior real zeros of a nonnegative polynomial must come in pairs.
    // Cluster by the pairing radius and pair consecutive cluster members,
    // snapping each pair to its midpoint.
    let mut pure = Poly::one();
    let mut i = 0;
    while i < interior.len() {
        let mut j = i + 1;
        while j < interior.len()
            && interior[j] - interior[j - 1] <= tol.pair * (1.0 + interior[j].abs())
        {
            j += 1;
        }
        let cluster = &interior[i..j];
        if cluster.len() % 2 != 0 {
            let center = cluster[cluster.len() / 2];
            return Err(IntervalError::NotNonnegative {
                at: center,
                value: f.eval(center),
            });
        }
        for pair in cluster.chunks(2) {
            let m = (pair[0] + pair[1]) / 2.0;
            pure = &pure * &Poly::new(vec![-m, 1.0]);
        }
        i = j;
    }

    Ok(RootInventory {
        complex_pairs,
        pure,
        left_sticks,
        right_sticks,
    })
}

/// Composes the weighted form from the root inventory of `f`. Fails with
/// `NotNonnegative` when the root pattern is inconsistent with a function
/// nonnegative on the interval.
fn compose_form(f: &Poly, tol: &Tolerances) -> Result<Form, IntervalError> {
    let inv = classify_roots(f, tol)?;

    // Pair same-side sticks into monic quadratic chunks; at most one stick
    // per side is left over and enters as an odd atom.
    let mut atoms: Vec<Form> = Vec::new();
    for z in &inv.complex_pairs {
        let (p, q) = monic_quad_form(-2.0 * z.re, z.norm_sqr())?;
        atoms.push(Form::Even(p, q));
    }
    let mut flips = 0usize;
    for (sticks, right) in [(&inv.left_sticks, false), (&inv.right_sticks, true)] {
        for pair in sticks.chunks(2) {
            if pair.len() == 2 {
                let (p, q) = monic_quad_form(-(pair[0] + pair[1]), pair[0] * pair[1])?;
                atoms.push(Form::Even(p, q));
            } else {
                atoms.push(stick_atom(pair[0], right));
                if right {
                    flips += 1;
                }
            }
        }
    }

    let c_eff = f.leading() * if flips % 2 == 1 { -1.0 } else { 1.0 };
    if c_eff <= 0.0 {
        return Err(IntervalError::NotNonnegative {
            at: 0.0,
            value: f.eval(0.0),
        });
    }

    let mut acc = Form::Even(Poly::one(), Poly::zero());
    for atom in &atoms {
        acc = acc.mul(atom);
    }
    Ok(acc.scale(c_eff.sqrt()).mul_square(&inv.pure))
}

/// Decomposes `f >= 0` on `[-1, 1]` into its parity-matched weighted form:
/// `f = p^2 + (1-t^2) q^2` for even degree (`deg p <= m`, `deg q <= m-1`),
/// `f = (1+t) p^2 + (1-t) q^2` for odd degree (`deg p, deg q <= m`).
pub fn lukacs_decompose(f: &Poly, tol: &Tolerances) -> Result<(Poly, Poly, Parity), IntervalError> {
    if f.is_zero() {
        return Ok((Poly::zero(), Poly::zero(), Parity::Even));
    }
    let norm = f.sup_norm();
    let (min, argmin) = f.min_on_interval(tol)?;
    if min < -tol.nonneg_abs(norm) {
        return Err(IntervalError::NotNonnegative {
            at: argmin,
            value: min,
        });
    }
    // Dust-level leading coefficients carry no root structure but poison
    // the companion matrix; the construction runs on the deflated input and
    // the polish below reconciles against the original.
    let work = f.deflated(1e-12);
    let deg = match work.degree() {
        Degree::Of(d) => d,
        Degree::MinusInf => unreachable!(),
    };
    if deg == 0 {
        return Ok((
            Poly::constant(work.coeff(0).max(0.0).sqrt()),
            Poly::zero(),
            Parity::Even,
        ));
    }

    let mut acc = match compose_form(&work, tol) {
        Ok(form) => form,
        Err(IntervalError::NotNonnegative { .. }) => {
            // Zeros that only touch the axis can scatter into odd real
            // clusters under rounding. A constant lift separates them into
            // clean conjugate pairs; the subsequent polish runs against the
            // original input, so the lift does not survive in the output.
            let lift = 1e-12 * norm + 2.0 * (-min).max(0.0);
            let lifted = &work + &Poly::constant(lift);
            compose_form(&lifted, tol).map_err(|e| match e {
                IntervalError::NotNonnegative { .. } => IntervalError::NotNonnegative {
                    at: argmin,
                    value: min,
                },
                other => other,
            })?
        }
        Err(other) => return Err(other),
    };
    acc.refine(f);

    let residual = (&acc.expand() - f).sup_norm();
    if residual > tol.sos * norm {
        return Err(IntervalError::Numerical {
            what: "weighted square reconstruction",
            residual,
        });
    }

    match acc {
        Form::Even(p, q) => {
            debug_assert!(deg % 2 == 0);
            Ok((p, q, Parity::Even))
        }
        Form::Odd(p, q) => {
            debug_assert!(deg % 2 == 1);
            Ok((p, q, Parity::Odd))
        }
    }
}

/// Two-square representation `f = s0 + s1 (1 - t^2)` with
/// `deg s0 <= deg f + 1` and `deg s1 <= deg f - 1`.
///
/// Even input passes the single squares through; odd input is converted with
/// `(1 +- t) = (1 +- t)^2 / 2 + (1 - t^2) / 2`.
pub fn kms_form(f: &Poly, tol: &Tolerances) -> Result<(TwoSquareForm, TwoSquareForm), IntervalError> {
    let (p, q, parity) = lukacs_decompose(f, tol)?;
    let forms = match parity {
        Parity::Even => (
            TwoSquareForm::new(p, Poly::zero()),
            TwoSquareForm::new(q, Poly::zero()),
        ),
        Parity::Odd => {
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            (
                TwoSquareForm::new(
                    (&one_plus_t() * &p).scale(inv_sqrt2),
                    (&one_minus_t() * &q).scale(inv_sqrt2),
                ),
                TwoSquareForm::new(p.scale(inv_sqrt2), q.scale(inv_sqrt2)),
            )
        }
    };
    debug_assert!(forms.0.degree() <= f.degree().plus(1));
    Ok(forms)
}

/// Builds the square root of Lemma form: `s` with `s(-1) = a`, `s(1) = b`,
/// `s^2 <= f` on the interval and `deg(s^2) <= deg f + 3`.
///
/// The two squares of the interval part `s0` of `f` are merged into one
/// complex polynomial `g = u + i v` with `|g|^2 = s0` pointwise; unimodular
/// phases taken at the endpoints then tilt the complex linear interpolant
/// so that the real part of `g * ell` hits the requested boundary values.
/// An endpoint where `f` vanishes (within tolerance) contributes no term:
/// the corresponding boundary value is forced to zero.
pub fn boundary_matched_sqrt(
    f: &Poly,
    a: f64,
    b: f64,
    tol: &Tolerances,
) -> Result<Poly, IntervalError> {
    if f.is_zero() {
        let eb = tol.bnd_abs(0.0);
        for (end, val) in [(-1.0, a), (1.0, b)] {
            if val * val > eb {
                return Err(IntervalError::BoundaryInfeasible {
                    end,
                    required: val * val,
                    available: 0.0,
                });
            }
        }
        return Ok(Poly::zero());
    }
    let norm = f.sup_norm();
    let eb = tol.bnd_abs(norm);
    let fm = f.eval(-1.0);
    let fp = f.eval(1.0);
    if a * a > fm + eb {
        return Err(IntervalError::BoundaryInfeasible {
            end: -1.0,
            required: a * a,
            available: fm,
        });
    }
    if b * b > fp + eb {
        return Err(IntervalError::BoundaryInfeasible {
            end: 1.0,
            required: b * b,
            available: fp,
        });
    }
    let a_eff = if fm <= eb { 0.0 } else { a };
    let b_eff = if fp <= eb { 0.0 } else { b };
    if a_eff == 0.0 && b_eff == 0.0 {
        return Ok(Poly::zero());
    }

    let (s0, _) = kms_form(f, tol)?;
    let g = CPoly::from_re_im(&s0.u, &s0.v);
    let mut ell = CPoly::new(Vec::new());
    if a_eff != 0.0 {
        let gm = g.eval(Complex64::new(-1.0, 0.0));
        if gm.norm() > 0.0 {
            let alpha = gm / gm.norm();
            let c = alpha.conj() * (a_eff / (2.0 * fm.sqrt()));
            // c * (1 - t)
            ell = CPoly::new(vec![c, -c]).add(&ell);
        }
    }
    if b_eff != 0.0 {
        let gp = g.eval(Complex64::new(1.0, 0.0));
        if gp.norm() > 0.0 {
            let beta = gp / gp.norm();
            let c = beta.conj() * (b_eff / (2.0 * fp.sqrt()));
            // c * (1 + t)
            ell = CPoly::new(vec![c, c]).add(&ell);
        }
    }
    let s = g.mul(&ell).re();

    let ei = tol.interp * (1.0 + norm);
    let interp_err = (s.eval(-1.0) - a_eff).abs().max((s.eval(1.0) - b_eff).abs());
    if interp_err > ei {
        return Err(IntervalError::Numerical {
            what: "boundary interpolation",
            residual: interp_err,
        });
    }
    let slack = tol.dom * norm;
    for i in 0..=1000 {
        let x = -1.0 + 2.0 * i as f64 / 1000.0;
        let sv = s.eval(x);
        let excess = sv * sv - f.eval(x) - slack;
        if excess > 0.0 {
            return Err(IntervalError::Numerical {
                what: "grid dominance",
                residual: excess,
            });
        }
    }
    debug_assert!((&s * &s).degree() <= f.degree().plus(3));
    Ok(s)
}

/// Matched sum-of-squares splitting: `f = sum_{i=1}^{k+2} s_i^2 +
/// r (1 - t^2)` where `s_i` interpolates the i-th boundary pair for
/// `i <= k` and the last two squares vanish at every matched end.
///
/// Boundary vectors must satisfy `sum a_i^2 = f(-1)` and `sum b_i^2 = f(1)`
/// (only the `b` constraint when `ends` is `RightOnly`; the `a` values are
/// then ignored and the free end is left unconstrained).
pub fn adapt_sos(
    f: &Poly,
    a: &[f64],
    b: &[f64],
    ends: MatchEnds,
    tol: &Tolerances,
) -> Result<AdaptResult, IntervalError> {
    assert_eq!(a.len(), b.len(), "boundary vectors must have equal length");
    let k = a.len();
    let f0norm = f.sup_norm();
    let snap = ZERO_SNAP_REL * (1.0 + f0norm);

    if !f.is_zero() {
        let (min, argmin) = f.min_on_interval(tol)?;
        if min < -tol.nonneg_abs(f0norm) {
            return Err(IntervalError::NotNonnegative {
                at: argmin,
                value: min,
            });
        }
    }
    let eb = tol.bnd_abs(f0norm);
    let sum_sq = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    if matches!(ends, MatchEnds::Both) {
        let have = f.eval(-1.0);
        if (sum_sq(a) - have).abs() > eb {
            return Err(IntervalError::BoundaryInfeasible {
                end: -1.0,
                required: sum_sq(a),
                available: have,
            });
        }
    }
    let have = f.eval(1.0);
    if (sum_sq(b) - have).abs() > eb {
        return Err(IntervalError::BoundaryInfeasible {
            end: 1.0,
            required: sum_sq(b),
            available: have,
        });
    }

    let mut rem = f.clone();
    let mut squares = Vec::with_capacity(k + 2);
    for i in 0..k {
        if rem.sup_norm() <= snap {
            rem = Poly::zero();
        }
        let ai = match ends {
            MatchEnds::Both => a[i],
            MatchEnds::RightOnly => 0.0,
        };
        let s = boundary_matched_sqrt(&rem, ai, b[i], tol)?;
        rem = &rem - &(&s * &s);
        if !rem.is_zero() {
            let (min, at) = rem.min_on_interval(tol)?;
            if min < -tol.nonneg_abs(f0norm) {
                return Err(IntervalError::RemainderNegative {
                    step: i + 1,
                    at,
                    value: min,
                });
            }
        }
        squares.push(s);
    }

    if rem.sup_norm() <= snap {
        squares.push(Poly::zero());
        squares.push(Poly::zero());
        return Ok(AdaptResult {
            squares,
            remainder: TwoSquareForm::zero(),
        });
    }

    // Pull the matched-end zeros of the remainder out as explicit linear
    // factors before the final two-square split, so the tail squares carry
    // those factors exactly rather than only to root-finding accuracy. The
    // split of the quotient is then polished against the remainder itself,
    // with the weights (and their boundary zeros) held fixed.
    let remainder;
    match ends {
        MatchEnds::Both => {
            let (vm, vp) = (rem.eval(-1.0), rem.eval(1.0));
            rem = &rem - &Poly::new(vec![(vm + vp) / 2.0, (vp - vm) / 2.0]);
            let (h, _) = rem.div_rem(&weight());
            if h.sup_norm() <= snap {
                squares.push(Poly::zero());
                squares.push(Poly::zero());
                return Ok(AdaptResult {
                    squares,
                    remainder: TwoSquareForm::zero(),
                });
            }
            let (h0, h1) = kms_form(&h, tol)?;
            let w = weight();
            // rem = w h0 + w^2 h1
            let mut comps = vec![
                (w.clone(), h0.u),
                (w.clone(), h0.v),
                (&w * &w, h1.u),
                (&w * &w, h1.v),
            ];
            refine_weighted(&rem, &mut comps);
            squares.push(&w * &comps[2].1);
            squares.push(&w * &comps[3].1);
            remainder = TwoSquareForm::new(comps[0].1.clone(), comps[1].1.clone());
        }
        MatchEnds::RightOnly => {
            let vp = rem.eval(1.0);
            rem = &rem - &Poly::new(vec![vp / 2.0, vp / 2.0]);
            let (h, _) = rem.div_rem(&one_minus_t());
            if h.sup_norm() <= snap {
                squares.push(Poly::zero());
                squares.push(Poly::zero());
                return Ok(AdaptResult {
                    squares,
                    remainder: TwoSquareForm::zero(),
                });
            }
            let (p, q, parity) = lukacs_decompose(&h, tol)?;
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            match parity {
                Parity::Even => {
                    // rem = (1-t) p^2 + w (1-t) q^2
                    //     = ((1-t)p)^2/2 + ((1-t^2)q)^2/2
                    //       + w (p^2/2 + ((1-t)q)^2/2)
                    let mut comps = vec![
                        (one_minus_t(), p),
                        (&weight() * &one_minus_t(), q),
                    ];
                    refine_weighted(&rem, &mut comps);
                    let (p, q) = (comps[0].1.clone(), comps[1].1.clone());
                    squares.push((&one_minus_t() * &p).scale(inv_sqrt2));
                    squares.push((&weight() * &q).scale(inv_sqrt2));
                    remainder = TwoSquareForm::new(
                        p.scale(inv_sqrt2),
                        (&one_minus_t() * &q).scale(inv_sqrt2),
                    );
                }
                Parity::Odd => {
                    // rem = (1-t)((1+t)p^2 + (1-t)q^2) = w p^2 + ((1-t)q)^2
                    let mut comps = vec![
                        (weight(), p),
                        (&one_minus_t() * &one_minus_t(), q),
                    ];
                    refine_weighted(&rem, &mut comps);
                    squares.push(&one_minus_t() * &comps[1].1);
                    squares.push(Poly::zero());
                    remainder = TwoSquareForm::new(comps[0].1.clone(), Poly::zero());
                }
            }
        }
    }

    Ok(AdaptResult { squares, remainder })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn assert_close(p: &Poly, q: &Poly, eps: f64) {
        assert!(
            (p - q).sup_norm() <= eps,
            "polynomials differ: {:?} vs {:?}",
            p,
            q
        );
    }

    #[test]
    fn lukacs_of_constant() {
        let (p, q, parity) = lukacs_decompose(&Poly::one(), &tol()).unwrap();
        assert_eq!(parity, Parity::Even);
        assert_close(&p, &Poly::one(), 0.0);
        assert!(q.is_zero());
    }

    #[test]
    fn lukacs_of_weight() {
        let f = Poly::new(vec![1.0, 0.0, -1.0]);
        let (p, q, parity) = lukacs_decompose(&f, &tol()).unwrap();
        assert_eq!(parity, Parity::Even);
        assert!(p.sup_norm() < 1e-12);
        assert_close(&q, &Poly::one(), 1e-12);
    }

    #[test]
    fn lukacs_matches_ansatz_oracle() {
        // Oracle: matching coefficients of p = alpha t + beta, q = gamma
        // against t^2 - 5t + 6 gives gamma^2 = (5 - 2 sqrt 6) / 2.
        let f = Poly::new(vec![6.0, -5.0, 1.0]);
        let (p, q, parity) = lukacs_decompose(&f, &tol()).unwrap();
        assert_eq!(parity, Parity::Even);
        let expected_q2 = (5.0 - 2.0 * 6.0_f64.sqrt()) / 2.0;
        assert!((q.eval(0.0).powi(2) - expected_q2).abs() < 1e-10);
        let recon = &(&p * &p) + &(&weight() * &(&q * &q));
        assert_close(&recon, &f, 1e-10);
    }

    #[test]
    fn lukacs_odd_parity() {
        let f = Poly::new(vec![1.0, 1.0]);
        let (p, q, parity) = lukacs_decompose(&f, &tol()).unwrap();
        assert_eq!(parity, Parity::Odd);
        assert_close(&p, &Poly::one(), 1e-12);
        assert!(q.sup_norm() < 1e-12);
    }

    #[test]
    fn lukacs_rejects_negative() {
        let err = lukacs_decompose(&Poly::t(), &tol()).unwrap_err();
        match err {
            IntervalError::NotNonnegative { at, value } => {
                assert_eq!(at, -1.0);
                assert_eq!(value, -1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn kms_of_one_plus_t() {
        let f = Poly::new(vec![1.0, 1.0]);
        let (s0, s1) = kms_form(&f, &tol()).unwrap();
        // s0 = (1+t)^2 / 2, s1 = 1/2
        assert_close(&s0.expand(), &Poly::new(vec![0.5, 1.0, 0.5]), 1e-12);
        assert_close(&s1.expand(), &Poly::constant(0.5), 1e-12);
        assert!(s0.degree() <= f.degree().plus(1));
    }

    #[test]
    fn kms_of_constant_and_weight() {
        let (s0, s1) = kms_form(&Poly::one(), &tol()).unwrap();
        assert_close(&s0.expand(), &Poly::one(), 0.0);
        assert!(s1.is_zero());

        let (s0, s1) = kms_form(&Poly::new(vec![1.0, 0.0, -1.0]), &tol()).unwrap();
        assert!(s0.expand().sup_norm() < 1e-12);
        assert_close(&s1.expand(), &Poly::one(), 1e-12);
    }

    #[test]
    fn sqrt_hand_trace() {
        // f = 1, a = 1, b = -1: g = 1, ell = (1-t)/2 - (1+t)/2 = -t.
        let s = boundary_matched_sqrt(&Poly::one(), 1.0, -1.0, &tol()).unwrap();
        assert_close(&s, &Poly::new(vec![0.0, -1.0]), 1e-12);
    }

    #[test]
    fn sqrt_forced_zero_boundary() {
        let f = Poly::new(vec![1.0, 0.0, -1.0]);
        let s = boundary_matched_sqrt(&f, 0.0, 0.0, &tol()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn sqrt_degenerate_left_end() {
        // f = (1+t)^2 vanishes at -1; grid dominance oracle on 1001 points.
        let f = Poly::new(vec![1.0, 2.0, 1.0]);
        let s = boundary_matched_sqrt(&f, 0.0, 2.0, &tol()).unwrap();
        assert!((s.eval(-1.0)).abs() < 1e-10);
        assert!((s.eval(1.0) - 2.0).abs() < 1e-10);
        for i in 0..=1000 {
            let x = -1.0 + 2.0 * i as f64 / 1000.0;
            assert!(s.eval(x).powi(2) <= f.eval(x) + 1e-8 * f.sup_norm());
        }
        assert!(s.degree().plus(0) <= Degree::Of(2));
    }

    #[test]
    fn sqrt_infeasible_boundary() {
        let err = boundary_matched_sqrt(&Poly::one(), 2.0, 0.0, &tol()).unwrap_err();
        assert!(matches!(err, IntervalError::BoundaryInfeasible { .. }));
    }

    #[test]
    fn adapt_constant_interpolation() {
        let res = adapt_sos(&Poly::one(), &[1.0], &[1.0], MatchEnds::Both, &tol()).unwrap();
        assert_eq!(res.squares.len(), 3);
        assert_close(&res.squares[0], &Poly::one(), 1e-12);
        assert!(res.squares[1].is_zero() && res.squares[2].is_zero());
        assert!(res.remainder.is_zero());
    }

    #[test]
    fn adapt_sign_flip_trace() {
        // Continues the hand trace: s1 = -t, then 1 - t^2 is pure remainder.
        let res = adapt_sos(&Poly::one(), &[1.0], &[-1.0], MatchEnds::Both, &tol()).unwrap();
        assert_close(&res.squares[0], &Poly::new(vec![0.0, -1.0]), 1e-12);
        assert!(res.squares[1].sup_norm() < 1e-9);
        assert!(res.squares[2].sup_norm() < 1e-9);
        assert_close(&res.remainder.expand(), &Poly::one(), 1e-9);
    }

    #[test]
    fn adapt_pure_remainder() {
        let f = Poly::new(vec![1.0, 0.0, -1.0]);
        let res = adapt_sos(&f, &[], &[], MatchEnds::Both, &tol()).unwrap();
        assert_eq!(res.squares.len(), 2);
        assert!(res.squares[0].sup_norm() < 1e-9);
        assert!(res.squares[1].sup_norm() < 1e-9);
        assert_close(&res.remainder.expand(), &Poly::one(), 1e-9);
    }

    #[test]
    fn adapt_boundary_sum_mismatch() {
        let err = adapt_sos(&Poly::one(), &[0.5], &[1.0], MatchEnds::Both, &tol()).unwrap_err();
        assert!(matches!(err, IntervalError::BoundaryInfeasible { .. }));
    }

    #[test]
    fn adapt_right_only_leaves_left_free() {
        let f = Poly::new(vec![0.0, 0.0, 1.0]); // t^2
        let res = adapt_sos(&f, &[0.0, 0.0], &[1.0, 0.0], MatchEnds::RightOnly, &tol()).unwrap();
        assert_eq!(res.squares.len(), 4);
        assert!((res.squares[0].eval(1.0) - 1.0).abs() < 1e-10);
        // reconstruction
        let mut recon = &weight() * &res.remainder.expand();
        for s in &res.squares {
            recon = &recon + &(s * s);
        }
        assert_close(&recon, &f, 1e-9);
        // tails vanish at the matched end only
        assert!(res.squares[2].eval(1.0).abs() < 1e-10);
        assert!(res.squares[3].eval(1.0).abs() < 1e-10);
    }
}
