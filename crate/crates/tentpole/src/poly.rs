//! Dense univariate polynomials over real (and internally complex)
//! coefficients: ring arithmetic, companion-matrix root finding with a
//! Newton polish, and global minimization over `[-1, 1]`.
//!
//! Coefficients are stored in ascending order of degree and trailing
//! near-zeros are trimmed after every arithmetic composite so that degree
//! accounting stays exact.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::config::Tolerances;

/// Relative threshold for dropping trailing coefficients after arithmetic.
/// With compensated products and sums the noise floor of a single composite
/// sits within a few ulps of the coefficient sup-norm, so one order of
/// magnitude above machine epsilon separates rounding junk from structure.
/// The adaptive splitting produces remainders whose coefficient norms exceed
/// their on-interval values by several orders; a looser relative threshold
/// would discard genuinely meaningful top coefficients there.
const TRIM_REL: f64 = 1e-15;

/// Degree of a polynomial. The zero polynomial reports `MinusInf`, which
/// compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInf,
    Of(usize),
}

impl Degree {
    /// Adds a finite increment; `MinusInf` absorbs.
    pub fn plus(self, n: usize) -> Degree {
        match self {
            Degree::MinusInf => Degree::MinusInf,
            Degree::Of(d) => Degree::Of(d + n),
        }
    }

    /// Multiplies a finite degree by `k`; `MinusInf` absorbs.
    pub fn times(self, k: usize) -> Degree {
        match self {
            Degree::MinusInf => Degree::MinusInf,
            Degree::Of(d) => Degree::Of(d * k),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInf => None,
            Degree::Of(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInf => write!(f, "-inf"),
            Degree::Of(d) => write!(f, "{}", d),
        }
    }
}

/// Errors from root finding and minimization.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyError {
    /// `roots` requires a nonzero polynomial of degree at least one.
    DegreeTooLow,
    /// Eigenvalue iteration or polishing failed to reproduce the input
    /// within the configured residual.
    RootsDiverged { residual: f64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DegreeTooLow => {
                write!(f, "root finding requires degree >= 1")
            }
            PolyError::RootsDiverged { residual } => {
                write!(f, "root finding did not converge (residual {:e})", residual)
            }
        }
    }
}

impl std::error::Error for PolyError {}

/// Dense univariate polynomial with real coefficients in ascending order.
///
/// Invariant: the last stored coefficient is nonzero, or the coefficient
/// vector is empty (the zero polynomial).
#[derive(Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, dropping exactly
    /// zero trailing entries.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Poly {
        let mut coeffs = coeffs.into();
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial and trims trailing coefficients that are small
    /// relative to the sup-norm of the vector. Used after arithmetic.
    fn trimmed(mut coeffs: Vec<f64>) -> Poly {
        let max = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let eps = TRIM_REL * max;
        while let Some(&c) = coeffs.last() {
            if c.abs() <= eps {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: usize, c: f64) -> Poly {
        if c == 0.0 {
            return Poly::zero();
        }
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The identity polynomial `t`.
    pub fn t() -> Poly {
        Poly::monomial(1, 1.0)
    }

    /// Expands `lead * prod (t - r_i)` over the given real roots.
    pub fn from_roots(lead: f64, roots: &[f64]) -> Poly {
        let mut p = Poly::constant(lead);
        for &r in roots {
            p = &p * &Poly::new(vec![-r, 1.0]);
        }
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInf
        } else {
            Degree::Of(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient; 0 for the zero polynomial.
    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Maximum absolute coefficient.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Compensated Horner evaluation: the running rounding error of every
    /// multiply-add is tracked through an error-free transformation, so the
    /// result behaves as if computed in twice the working precision. The
    /// adaptive splitting produces polynomials whose coefficient norms dwarf
    /// their values on the interval, which makes this accuracy load-bearing.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0_f64;
        let mut err = 0.0_f64;
        for &c in self.coeffs.iter().rev() {
            let p = acc * x;
            let e_mul = acc.mul_add(x, -p);
            let s = p + c;
            let e_add = if p.abs() >= c.abs() {
                (p - s) + c
            } else {
                (c - s) + p
            };
            acc = s;
            err = err.mul_add(x, e_mul + e_add);
        }
        acc + err
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: f64) -> Poly {
        Poly::trimmed(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Drops leading coefficients whose magnitude is at most `rel` times the
    /// sup-norm. Near-zero leads carry no usable root information but drive
    /// the companion matrix singular, so root-based consumers work on the
    /// deflated polynomial and reconcile against the original afterwards.
    pub fn deflated(&self, rel: f64) -> Poly {
        let eps = rel * self.sup_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().map_or(false, |c| c.abs() <= eps) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Substitutes `t -> -t` (negates odd coefficients).
    pub fn reflect(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { *c })
            .collect();
        Poly { coeffs }
    }

    /// Long division: returns `(q, r)` with `self = q * d + r` and
    /// `deg r < deg d`. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; self.coeffs.len() - dn + 1];
        let lead = d.coeffs[dn - 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dn - 1] / lead;
            quot[k] = q;
            if q != 0.0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= q * dc;
                }
            }
        }
        rem.truncate(dn - 1);
        (Poly::trimmed(quot), Poly::trimmed(rem))
    }

    /// All complex roots with multiplicity, via the eigenvalues of the
    /// balanced companion matrix of the monic normalization, followed by a
    /// Newton polish per root. Near-real roots are projected onto the real
    /// axis and the remainder is matched into exact conjugate pairs. The
    /// result is sorted by `(re, im)`.
    ///
    /// Leading coefficients below `1e-12` of the sup-norm are deflated away
    /// first; the returned multiset has one root per deflated degree. The
    /// reconstruction residual is still measured against the undeflated
    /// input.
    pub fn roots(&self, tol: &Tolerances) -> Result<Vec<Complex64>, PolyError> {
        let work = self.deflated(1e-12);
        let n = match work.degree() {
            Degree::Of(n) if n >= 1 => n,
            _ => return Err(PolyError::DegreeTooLow),
        };
        let lead = work.coeffs[n];
        let mut roots: Vec<Complex64> = if n == 1 {
            vec![Complex64::new(-work.coeffs[0] / lead, 0.0)]
        } else {
            let mut companion = DMatrix::<f64>::zeros(n, n);
            for i in 1..n {
                companion[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                companion[(i, n - 1)] = -work.coeffs[i] / lead;
            }
            balance(&mut companion);
            companion.complex_eigenvalues().iter().copied().collect()
        };
        for r in roots.iter_mut() {
            *r = polish_root(&work.coeffs, *r);
        }
        for r in roots.iter_mut() {
            if r.im.abs() <= tol.pair * (1.0 + r.norm()) {
                r.im = 0.0;
            }
        }
        pair_conjugates(&mut roots);
        roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

        let recon = CPoly::from_roots(Complex64::new(lead, 0.0), &roots).re();
        let residual = (self - &recon).sup_norm();
        if residual > tol.roots * self.sup_norm() {
            return Err(PolyError::RootsDiverged { residual });
        }
        Ok(roots)
    }

    /// Global minimum of the polynomial over `[-1, 1]` and its location,
    /// found by evaluating at both endpoints and at every real critical
    /// point inside the open interval. Ties resolve to the smaller `t`.
    pub fn min_on_interval(&self, tol: &Tolerances) -> Result<(f64, f64), PolyError> {
        if self.is_zero() {
            return Ok((0.0, -1.0));
        }
        let n = self.coeffs.len() - 1;
        let mut candidates = vec![-1.0, 1.0];
        if n >= 2 {
            match self.derivative().roots(tol) {
                Ok(crit) => {
                    for r in crit {
                        if r.im == 0.0 && r.re > -1.0 && r.re < 1.0 {
                            candidates.push(r.re);
                        }
                    }
                }
                // a derivative that deflates to a constant has no usable
                // interior critical points
                Err(PolyError::DegreeTooLow) => {}
                Err(e) => return Err(e),
            }
        }
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut best_x = candidates[0];
        let mut best = self.eval(best_x);
        for &x in &candidates[1..] {
            let v = self.eval(x);
            if v < best {
                best = v;
                best_x = x;
            }
        }
        Ok((best, best_x))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![0.0; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::trimmed(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![0.0; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        Poly::trimmed(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    /// Convolution with compensated accumulation: each product is split
    /// into its rounded value and exact error via fused multiply-add, and
    /// partial sums carry a Neumaier correction term.
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut sums = vec![0.0_f64; n];
        let mut comps = vec![0.0_f64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let k = i + j;
                let prod = a * b;
                let err = a.mul_add(b, -prod);
                let t = sums[k] + prod;
                comps[k] += if sums[k].abs() >= prod.abs() {
                    (sums[k] - t) + prod
                } else {
                    (prod - t) + sums[k]
                };
                comps[k] += err;
                sums[k] = t;
            }
        }
        let coeffs = sums.iter().zip(&comps).map(|(s, c)| s + c).collect();
        Poly::trimmed(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Complex-coefficient companion of [`Poly`] with the same layout. Used by
/// the interval decompositions, which factor through `C[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex64>,
}

impl CPoly {
    pub fn new(coeffs: Vec<Complex64>) -> CPoly {
        let mut coeffs = coeffs;
        while coeffs.last().map_or(false, |c| c.norm() == 0.0) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn constant(c: Complex64) -> CPoly {
        CPoly::new(vec![c])
    }

    pub fn from_real(p: &Poly) -> CPoly {
        CPoly {
            coeffs: p.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    /// Builds `u + i v` from two real polynomials.
    pub fn from_re_im(u: &Poly, v: &Poly) -> CPoly {
        let len = u.coeffs.len().max(v.coeffs.len());
        let coeffs = (0..len)
            .map(|k| Complex64::new(u.coeff(k), v.coeff(k)))
            .collect();
        CPoly::new(coeffs)
    }

    /// Expands `lead * prod (t - r_i)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> CPoly {
        let mut acc = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i] -= c * r;
                next[i + 1] += c;
            }
            acc = next;
        }
        CPoly::new(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn add(&self, rhs: &CPoly) -> CPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        CPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        CPoly::new(coeffs)
    }

    pub fn scale(&self, c: Complex64) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficientwise real part.
    pub fn re(&self) -> Poly {
        Poly::trimmed(self.coeffs.iter().map(|c| c.re).collect())
    }
}

/// Parlett-Reinsch balancing with powers of two, so the similarity
/// transform is exact in floating point.
fn balance(a: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let n = a.nrows();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut f = 1.0;
                let s = c + r;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= ginv;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// A few Newton steps on the original polynomial; keeps whichever iterate
/// has the smallest residual.
fn polish_root(coeffs: &[f64], z0: Complex64) -> Complex64 {
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let mut best = z0;
    let mut best_abs = eval(z0).0.norm();
    let mut z = z0;
    for _ in 0..12 {
        let (p, dp) = eval(z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        let abs = eval(z).0.norm();
        if abs < best_abs {
            best_abs = abs;
            best = z;
        }
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    best
}

/// Greedily matches roots with positive and negative imaginary part into
/// exact conjugate pairs; unmatched leftovers are projected onto the real
/// axis. Real input polynomials therefore always report conjugate-symmetric
/// root sets.
fn pair_conjugates(roots: &mut Vec<Complex64>) {
    let mut real: Vec<Complex64> = Vec::new();
    let mut pos: Vec<Complex64> = Vec::new();
    let mut neg: Vec<Complex64> = Vec::new();
    for &r in roots.iter() {
        if r.im == 0.0 {
            real.push(r);
        } else if r.im > 0.0 {
            pos.push(r);
        } else {
            neg.push(r);
        }
    }
    let key = |a: &Complex64| (a.re, a.im);
    pos.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    neg.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    let mut out = real;
    let mut used = vec![false; neg.len()];
    for p in pos {
        let mut pick: Option<(usize, f64)> = None;
        for (i, q) in neg.iter().enumerate() {
            if used[i] {
                continue;
            }
            let d = (p - q.conj()).norm();
            if pick.map_or(true, |(_, best)| d < best) {
                pick = Some((i, d));
            }
        }
        match pick {
            Some((i, _)) => {
                used[i] = true;
                let mid = (p + neg[i].conj()) * 0.5;
                out.push(mid);
                out.push(mid.conj());
            }
            None => out.push(Complex64::new(p.re, 0.0)),
        }
    }
    for (i, q) in neg.iter().enumerate() {
        if !used[i] {
            out.push(Complex64::new(q.re, 0.0));
        }
    }
    *roots = out;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn product_of_conjugate_linears() {
        let p = Poly::new(vec![1.0, 1.0]);
        let q = Poly::new(vec![1.0, -1.0]);
        assert_eq!((&p * &q).coeffs(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn eval_by_substitution() {
        let p = Poly::new(vec![6.0, -5.0, 1.0]);
        assert_eq!(p.eval(1.0), 2.0);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = Poly::new(vec![3.0, 0.5, -2.0]);
        let z = &p + &p.scale(-1.0);
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::MinusInf);
    }

    #[test]
    fn degree_order() {
        assert!(Degree::MinusInf < Degree::Of(0));
        assert!(Degree::Of(3) < Degree::Of(4));
        assert_eq!(Degree::MinusInf.plus(7), Degree::MinusInf);
        assert_eq!(Degree::Of(2).plus(3), Degree::Of(5));
    }

    #[test]
    fn roots_of_interval_weight() {
        let p = Poly::new(vec![1.0, 0.0, -1.0]);
        let mut roots = p.roots(&tol()).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0].re + 1.0).abs() < 1e-12 && roots[0].im == 0.0);
        assert!((roots[1].re - 1.0).abs() < 1e-12 && roots[1].im == 0.0);
    }

    #[test]
    fn roots_conjugate_pair() {
        let p = Poly::new(vec![1.0, 0.0, 1.0]);
        let roots = p.roots(&tol()).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], roots[1].conj());
        assert!((roots[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_against_quadratic_formula() {
        // Oracle: t^2 - 5t + 6 has roots (5 +- sqrt(25 - 24)) / 2 = {2, 3}.
        let p = Poly::new(vec![6.0, -5.0, 1.0]);
        let roots = p.roots(&tol()).unwrap();
        assert!((roots[0] - Complex64::new(2.0, 0.0)).norm() < 1e-9);
        assert!((roots[1] - Complex64::new(3.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn roots_rejects_constants() {
        assert_eq!(Poly::constant(4.0).roots(&tol()), Err(PolyError::DegreeTooLow));
        assert_eq!(Poly::zero().roots(&tol()), Err(PolyError::DegreeTooLow));
    }

    #[test]
    fn min_of_even_square() {
        let p = Poly::new(vec![0.0, 0.0, 1.0]);
        let (min, argmin) = p.min_on_interval(&tol()).unwrap();
        assert!(min.abs() < 1e-12);
        assert!(argmin.abs() < 1e-9);
    }

    #[test]
    fn min_of_monotone_linear() {
        let p = Poly::t();
        assert_eq!(p.min_on_interval(&tol()).unwrap(), (-1.0, -1.0));
    }

    #[test]
    fn min_with_exterior_vertex() {
        // Calculus oracle: vertex of t^2 - 5t + 6 sits at t = 2.5, outside
        // the interval, so the minimum is at the right endpoint.
        let p = Poly::new(vec![6.0, -5.0, 1.0]);
        let (min, argmin) = p.min_on_interval(&tol()).unwrap();
        assert_eq!((min, argmin), (2.0, 1.0));
    }

    #[test]
    fn division_round_trip() {
        let d = Poly::new(vec![1.0, 0.0, -1.0]);
        let q = Poly::new(vec![2.0, -0.5, 3.0]);
        let r = Poly::new(vec![0.25, -1.0]);
        let p = &(&q * &d) + &r;
        let (q2, r2) = p.div_rem(&d);
        assert!((&q2 - &q).sup_norm() < 1e-12);
        assert!((&r2 - &r).sup_norm() < 1e-12);
    }

    #[test]
    fn reflect_is_involutive() {
        let p = Poly::new(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(p.reflect().reflect(), p);
        assert_eq!(p.reflect().eval(0.5), p.eval(-0.5));
    }

    #[test]
    fn high_multiplicity_double_root() {
        // (t^2 - 2t + 1) has the double root 1; pairing must keep both.
        let p = Poly::new(vec![1.0, -2.0, 1.0]);
        let roots = p.roots(&tol()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(r.im == 0.0 && (r.re - 1.0).abs() < 1e-6);
        }
    }
}
