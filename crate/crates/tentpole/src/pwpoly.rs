//! Continuous piecewise polynomials on a 1-dimensional simplicial complex.
//!
//! An element is one univariate polynomial per edge, living on the edge
//! parameter `t in [-1, 1]` with `t = -1` at the smaller-indexed vertex, plus
//! one scalar per isolated vertex. Values at shared vertices must agree; that
//! compatibility is checked on construction. Tent (Courant) functions, ring
//! arithmetic, degree, conversion to and from polynomials in the tent
//! variables, and the restriction/extension/gluing plumbing used by the
//! certificate recursion all live here.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::Tolerances;
use crate::poly::{Degree, Poly};
use crate::simplicial::{Complex1D, ComplexError, VertexMap};

#[derive(Debug, Clone, PartialEq)]
pub enum PwError {
    Complex(ComplexError),
    /// Wrong number of edge polynomials or isolated values.
    ArityMismatch {
        edges_expected: usize,
        edges_got: usize,
        isolated_expected: usize,
        isolated_got: usize,
    },
    IncompatibleVertexValues {
        vertex: usize,
        left: f64,
        right: f64,
    },
    /// Operands live over different complexes.
    ComplexMismatch,
    VertexOutOfRange {
        vertex: usize,
        m: usize,
    },
    EdgeNotInComplex {
        edge: (usize, usize),
    },
    GlueMismatch {
        vertex: usize,
        left: f64,
        right: f64,
    },
    /// A target edge is covered by zero or several glue parts.
    GlueCoverage {
        edge: (usize, usize),
        covered: usize,
    },
    /// A target vertex is not covered by any glue part.
    GlueMissingVertex {
        vertex: usize,
    },
}

impl fmt::Display for PwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PwError::Complex(e) => write!(f, "{e}"),
            PwError::ArityMismatch {
                edges_expected,
                edges_got,
                isolated_expected,
                isolated_got,
            } => write!(
                f,
                "expected {edges_expected} edge polynomials and {isolated_expected} isolated values, got {edges_got} and {isolated_got}"
            ),
            PwError::IncompatibleVertexValues { vertex, left, right } => write!(
                f,
                "incompatible values at vertex {vertex}: {left} vs {right}"
            ),
            PwError::ComplexMismatch => write!(f, "operands live over different complexes"),
            PwError::VertexOutOfRange { vertex, m } => {
                write!(f, "vertex {vertex} out of range 1..={m}")
            }
            PwError::EdgeNotInComplex { edge } => {
                write!(f, "edge ({}, {}) not in the complex", edge.0, edge.1)
            }
            PwError::GlueMismatch { vertex, left, right } => write!(
                f,
                "glue parts disagree at vertex {vertex}: {left} vs {right}"
            ),
            PwError::GlueCoverage { edge, covered } => write!(
                f,
                "edge ({}, {}) covered by {covered} glue parts, expected exactly one",
                edge.0, edge.1
            ),
            PwError::GlueMissingVertex { vertex } => {
                write!(f, "vertex {vertex} not covered by any glue part")
            }
        }
    }
}

impl std::error::Error for PwError {}

impl From<ComplexError> for PwError {
    fn from(e: ComplexError) -> Self {
        PwError::Complex(e)
    }
}

/// A point of the complex: a vertex or a parameter on an edge.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Vertex(usize),
    EdgePoint { edge: (usize, usize), t: f64 },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Vertex(v) => write!(f, "vertex {v}"),
            Location::EdgePoint { edge, t } => {
                write!(f, "edge ({}, {}) at t = {}", edge.0, edge.1, t)
            }
        }
    }
}

/// A continuous piecewise polynomial over a fixed complex.
#[derive(Clone, PartialEq)]
pub struct PiecewisePoly {
    complex: Complex1D,
    edge_polys: Vec<Poly>,
    isolated_values: Vec<f64>,
}

impl fmt::Debug for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PiecewisePoly(edges={:?}, isolated={:?})",
            self.edge_polys, self.isolated_values
        )
    }
}

impl PiecewisePoly {
    /// Validates one polynomial per edge and one scalar per isolated vertex
    /// into a compatible element: at every vertex with several incident
    /// edges, all endpoint values must agree within the compatibility
    /// tolerance scaled by the largest vertex magnitude.
    pub fn make(
        complex: &Complex1D,
        edge_polys: Vec<Poly>,
        isolated_values: Vec<f64>,
        tol: &Tolerances,
    ) -> Result<PiecewisePoly, PwError> {
        if edge_polys.len() != complex.edge_count()
            || isolated_values.len() != complex.isolated_count()
        {
            return Err(PwError::ArityMismatch {
                edges_expected: complex.edge_count(),
                edges_got: edge_polys.len(),
                isolated_expected: complex.isolated_count(),
                isolated_got: isolated_values.len(),
            });
        }
        let f = PiecewisePoly {
            complex: complex.clone(),
            edge_polys,
            isolated_values,
        };
        f.check_compatibility(tol)?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        complex: Complex1D,
        edge_polys: Vec<Poly>,
        isolated_values: Vec<f64>,
    ) -> PiecewisePoly {
        PiecewisePoly {
            complex,
            edge_polys,
            isolated_values,
        }
    }

    fn check_compatibility(&self, tol: &Tolerances) -> Result<(), PwError> {
        let mut magnitude = 0.0_f64;
        let mut per_vertex: Vec<Vec<f64>> = vec![Vec::new(); self.complex.vertex_count()];
        for (v_slot, vals) in per_vertex.iter_mut().enumerate() {
            let v = v_slot + 1;
            for &e in self.complex.incident_edges(v) {
                let (i, _) = self.complex.edges()[e];
                let t = if v == i { -1.0 } else { 1.0 };
                let val = self.edge_polys[e].eval(t);
                magnitude = magnitude.max(val.abs());
                vals.push(val);
            }
        }
        for &val in &self.isolated_values {
            magnitude = magnitude.max(val.abs());
        }
        let eps = tol.compat_abs(magnitude);
        for (v_slot, vals) in per_vertex.iter().enumerate() {
            for pair in vals.windows(2) {
                if (pair[0] - pair[1]).abs() > eps {
                    return Err(PwError::IncompatibleVertexValues {
                        vertex: v_slot + 1,
                        left: pair[0],
                        right: pair[1],
                    });
                }
            }
        }
        Ok(())
    }

    pub fn zero(complex: &Complex1D) -> PiecewisePoly {
        PiecewisePoly {
            complex: complex.clone(),
            edge_polys: vec![Poly::zero(); complex.edge_count()],
            isolated_values: vec![0.0; complex.isolated_count()],
        }
    }

    pub fn constant(complex: &Complex1D, c: f64) -> PiecewisePoly {
        PiecewisePoly {
            complex: complex.clone(),
            edge_polys: vec![Poly::constant(c); complex.edge_count()],
            isolated_values: vec![c; complex.isolated_count()],
        }
    }

    /// The tent (Courant) function of vertex `k`: the piecewise linear
    /// element with value 1 at `v_k` and 0 at every other vertex.
    pub fn tent(complex: &Complex1D, k: usize) -> Result<PiecewisePoly, PwError> {
        if k == 0 || k > complex.vertex_count() {
            return Err(PwError::VertexOutOfRange {
                vertex: k,
                m: complex.vertex_count(),
            });
        }
        let edge_polys = complex
            .edges()
            .iter()
            .map(|&(i, j)| {
                if k == i {
                    Poly::new(vec![0.5, -0.5])
                } else if k == j {
                    Poly::new(vec![0.5, 0.5])
                } else {
                    Poly::zero()
                }
            })
            .collect();
        let isolated_values = complex
            .isolated()
            .iter()
            .map(|&v| if v == k { 1.0 } else { 0.0 })
            .collect();
        Ok(PiecewisePoly {
            complex: complex.clone(),
            edge_polys,
            isolated_values,
        })
    }

    pub fn complex(&self) -> &Complex1D {
        &self.complex
    }

    pub fn edge_polys(&self) -> &[Poly] {
        &self.edge_polys
    }

    pub fn isolated_values(&self) -> &[f64] {
        &self.isolated_values
    }

    /// The well-defined value at a vertex.
    pub fn vertex_value(&self, v: usize) -> f64 {
        if let Some(k) = self.complex.isolated_index(v) {
            return self.isolated_values[k];
        }
        let e = self.complex.incident_edges(v)[0];
        let (i, _) = self.complex.edges()[e];
        self.edge_polys[e].eval(if v == i { -1.0 } else { 1.0 })
    }

    pub fn eval(&self, loc: &Location) -> Result<f64, PwError> {
        match loc {
            Location::Vertex(v) => {
                if *v == 0 || *v > self.complex.vertex_count() {
                    return Err(PwError::VertexOutOfRange {
                        vertex: *v,
                        m: self.complex.vertex_count(),
                    });
                }
                Ok(self.vertex_value(*v))
            }
            Location::EdgePoint { edge, t } => {
                let idx = self
                    .complex
                    .edge_index(edge.0, edge.1)
                    .ok_or(PwError::EdgeNotInComplex { edge: *edge })?;
                Ok(self.edge_polys[idx].eval(*t))
            }
        }
    }

    /// Max edge-polynomial degree; an element supported only on isolated
    /// vertices has degree 0, and the zero element reports `MinusInf`.
    pub fn degree(&self) -> Degree {
        let edge_deg = self
            .edge_polys
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::MinusInf);
        if edge_deg == Degree::MinusInf && self.isolated_values.iter().any(|&v| v != 0.0) {
            Degree::Of(0)
        } else {
            edge_deg
        }
    }

    /// Max absolute coefficient across edges and isolated values.
    pub fn sup_norm(&self) -> f64 {
        let edge = self
            .edge_polys
            .iter()
            .fold(0.0_f64, |m, p| m.max(p.sup_norm()));
        self.isolated_values
            .iter()
            .fold(edge, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.edge_polys.iter().all(Poly::is_zero) && self.isolated_values.iter().all(|&v| v == 0.0)
    }

    fn zip_with(
        &self,
        rhs: &PiecewisePoly,
        edge_op: impl Fn(&Poly, &Poly) -> Poly,
        iso_op: impl Fn(f64, f64) -> f64,
    ) -> Result<PiecewisePoly, PwError> {
        if self.complex != rhs.complex {
            return Err(PwError::ComplexMismatch);
        }
        Ok(PiecewisePoly {
            complex: self.complex.clone(),
            edge_polys: self
                .edge_polys
                .iter()
                .zip(&rhs.edge_polys)
                .map(|(a, b)| edge_op(a, b))
                .collect(),
            isolated_values: self
                .isolated_values
                .iter()
                .zip(&rhs.isolated_values)
                .map(|(&a, &b)| iso_op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &PiecewisePoly) -> Result<PiecewisePoly, PwError> {
        self.zip_with(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &PiecewisePoly) -> Result<PiecewisePoly, PwError> {
        self.zip_with(rhs, |a, b| a - b, |a, b| a - b)
    }

    /// Pointwise product; products of compatible elements stay compatible.
    pub fn mul(&self, rhs: &PiecewisePoly) -> Result<PiecewisePoly, PwError> {
        self.zip_with(rhs, |a, b| a * b, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> PiecewisePoly {
        PiecewisePoly {
            complex: self.complex.clone(),
            edge_polys: self.edge_polys.iter().map(|p| p.scale(c)).collect(),
            isolated_values: self.isolated_values.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn square(&self) -> PiecewisePoly {
        self.mul(self).expect("same complex")
    }

    /// Keeps the edge polynomials and vertex values selected by a
    /// sub-complex with a strictly increasing vertex relabeling.
    pub fn restrict(
        &self,
        sub: &Complex1D,
        map: &VertexMap,
    ) -> Result<PiecewisePoly, PwError> {
        let mut edge_polys = Vec::with_capacity(sub.edge_count());
        for &(i, j) in sub.edges() {
            let (pi, pj) = (map.to_parent(i), map.to_parent(j));
            let idx = self
                .complex
                .edge_index(pi, pj)
                .ok_or(PwError::EdgeNotInComplex { edge: (pi, pj) })?;
            edge_polys.push(self.edge_polys[idx].clone());
        }
        let isolated_values = sub
            .isolated()
            .iter()
            .map(|&v| self.vertex_value(map.to_parent(v)))
            .collect();
        Ok(PiecewisePoly {
            complex: sub.clone(),
            edge_polys,
            isolated_values,
        })
    }

    /// Extends a polynomial on one edge to the whole complex: the edge keeps
    /// `g`, edges sharing one endpoint decay linearly from the endpoint value
    /// of `g` to zero, and everything else is zero.
    pub fn linear_extension(
        complex: &Complex1D,
        edge: (usize, usize),
        g: &Poly,
    ) -> Result<PiecewisePoly, PwError> {
        let (k, l) = (edge.0.min(edge.1), edge.0.max(edge.1));
        if complex.edge_index(k, l).is_none() {
            return Err(PwError::EdgeNotInComplex { edge: (k, l) });
        }
        let val_k = g.eval(-1.0);
        let val_l = g.eval(1.0);
        let edge_polys = complex
            .edges()
            .iter()
            .map(|&(i, j)| {
                if (i, j) == (k, l) {
                    g.clone()
                } else if i == k || i == l {
                    // shared vertex sits at t = -1 on edge (i, j)
                    let v = if i == k { val_k } else { val_l };
                    Poly::new(vec![v / 2.0, -v / 2.0])
                } else if j == k || j == l {
                    let v = if j == k { val_k } else { val_l };
                    Poly::new(vec![v / 2.0, v / 2.0])
                } else {
                    Poly::zero()
                }
            })
            .collect();
        Ok(PiecewisePoly {
            complex: complex.clone(),
            edge_polys,
            isolated_values: vec![0.0; complex.isolated_count()],
        })
    }

    /// Assembles parts over sub-complexes into an element of the target.
    /// Every target edge must be covered by exactly one part and every
    /// target vertex by at least one; parts must agree at shared vertices.
    pub fn glue(
        target: &Complex1D,
        parts: &[(&PiecewisePoly, &VertexMap)],
        tol: &Tolerances,
    ) -> Result<PiecewisePoly, PwError> {
        let mut edge_polys: Vec<Option<Poly>> = vec![None; target.edge_count()];
        let mut vertex_vals: Vec<Option<(f64, usize)>> = vec![None; target.vertex_count()];
        let mut magnitude = 0.0_f64;
        for (part, _) in parts {
            for v in 1..=part.complex().vertex_count() {
                magnitude = magnitude.max(part.vertex_value(v).abs());
            }
        }
        let eps = tol.compat_abs(magnitude);
        for (part, map) in parts {
            for (local_idx, &(i, j)) in part.complex().edges().iter().enumerate() {
                let (pi, pj) = (map.to_parent(i), map.to_parent(j));
                let idx = target
                    .edge_index(pi, pj)
                    .ok_or(PwError::EdgeNotInComplex { edge: (pi, pj) })?;
                if edge_polys[idx].is_some() {
                    return Err(PwError::GlueCoverage {
                        edge: (pi, pj),
                        covered: 2,
                    });
                }
                edge_polys[idx] = Some(part.edge_polys()[local_idx].clone());
            }
            for v in 1..=part.complex().vertex_count() {
                let pv = map.to_parent(v);
                let val = part.vertex_value(v);
                match vertex_vals[pv - 1] {
                    None => vertex_vals[pv - 1] = Some((val, pv)),
                    Some((prev, _)) => {
                        if (prev - val).abs() > eps {
                            return Err(PwError::GlueMismatch {
                                vertex: pv,
                                left: prev,
                                right: val,
                            });
                        }
                    }
                }
            }
        }
        for (idx, slot) in edge_polys.iter().enumerate() {
            if slot.is_none() {
                return Err(PwError::GlueCoverage {
                    edge: target.edges()[idx],
                    covered: 0,
                });
            }
        }
        let mut isolated_values = Vec::with_capacity(target.isolated_count());
        for &v in target.isolated() {
            match vertex_vals[v - 1] {
                Some((val, _)) => isolated_values.push(val),
                None => return Err(PwError::GlueMissingVertex { vertex: v }),
            }
        }
        let glued = PiecewisePoly {
            complex: target.clone(),
            edge_polys: edge_polys.into_iter().map(Option::unwrap).collect(),
            isolated_values,
        };
        glued.check_compatibility(tol)?;
        Ok(glued)
    }

    /// Canonical polynomial in the tent variables that maps back to this
    /// element under [`from_tent`].
    ///
    /// The output uses only monomials `c`, `c T_i`, and `c T_i^a T_j^b` with
    /// `(i, j)` an edge. On each edge the deviation from the linear
    /// interpolant of the vertex values is divided exactly by `1 - t^2` and
    /// re-expressed in the on-edge identity `t = T_j - T_i`.
    pub fn to_tent(&self) -> TentPoly {
        let m = self.complex.vertex_count();
        let mut vals: Vec<f64> = (1..=m).map(|v| self.vertex_value(v)).collect();
        let mut g = TentPoly::new();
        if m > 0 && vals[0] != 0.0 && vals.iter().all(|&v| v == vals[0]) {
            g.add_term(vals[0], &[]);
            let base = vals[0];
            for v in vals.iter_mut() {
                *v -= base;
            }
        }
        for (v, &c) in vals.iter().enumerate() {
            if c != 0.0 {
                g.add_term(c, &[(v + 1, 1)]);
            }
        }
        let w = Poly::new(vec![1.0, 0.0, -1.0]);
        for (idx, &(i, j)) in self.complex.edges().iter().enumerate() {
            let f = &self.edge_polys[idx];
            let vm = f.eval(-1.0);
            let vp = f.eval(1.0);
            let lin = Poly::new(vec![(vm + vp) / 2.0, (vp - vm) / 2.0]);
            let dev = f - &lin;
            if dev.is_zero() {
                continue;
            }
            // dev vanishes at both endpoints, so the division is exact up to
            // the compatibility tolerance; the remainder is discarded.
            let (h, _) = dev.div_rem(&w);
            for (power, &hc) in h.coeffs().iter().enumerate() {
                if hc == 0.0 {
                    continue;
                }
                // 4 h_c (T_j - T_i)^power T_i T_j, expanded binomially
                for r in 0..=power {
                    let sign = if (power - r) % 2 == 1 { -1.0 } else { 1.0 };
                    let coeff = 4.0 * hc * sign * binomial(power, r);
                    g.add_term(
                        coeff,
                        &[(i, (power - r + 1) as u32), (j, (r + 1) as u32)],
                    );
                }
            }
        }
        g
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Sparse polynomial in the tent variables `T_1 ... T_m`, stored as a map
/// from exponent vectors to coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TentPoly {
    terms: BTreeMap<Vec<(usize, u32)>, f64>,
}

impl TentPoly {
    pub fn new() -> TentPoly {
        TentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: f64) -> TentPoly {
        let mut g = TentPoly::new();
        g.add_term(c, &[]);
        g
    }

    pub fn variable(v: usize) -> TentPoly {
        let mut g = TentPoly::new();
        g.add_term(1.0, &[(v, 1)]);
        g
    }

    /// Adds `c * prod T_v^e`. Exponent entries are merged and sorted; terms
    /// that cancel exactly are removed.
    pub fn add_term(&mut self, c: f64, exps: &[(usize, u32)]) {
        if c == 0.0 {
            return;
        }
        let mut sorted = exps.to_vec();
        sorted.sort_unstable();
        let mut key: Vec<(usize, u32)> = Vec::with_capacity(sorted.len());
        for (v, e) in sorted {
            if e == 0 {
                continue;
            }
            match key.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => key.push((v, e)),
            }
        }
        let entry = self.terms.entry(key.clone()).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(usize, u32)], f64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree of a stored monomial.
    pub fn tent_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|k| Degree::Of(k.iter().map(|&(_, e)| e as usize).sum()))
            .max()
            .unwrap_or(Degree::MinusInf)
    }
}

/// Substitutes the tent functions into a tent polynomial and expands on the
/// complex. The defining relations (tents sum to one, off-complex monomials
/// vanish) hold automatically in the image.
pub fn from_tent(complex: &Complex1D, g: &TentPoly) -> Result<PiecewisePoly, PwError> {
    let m = complex.vertex_count();
    for (key, _) in g.terms() {
        for &(v, _) in key {
            if v == 0 || v > m {
                return Err(PwError::VertexOutOfRange { vertex: v, m });
            }
        }
    }
    let mut edge_polys = Vec::with_capacity(complex.edge_count());
    for &(i, j) in complex.edges() {
        let mut acc = Poly::zero();
        let t_i = Poly::new(vec![0.5, -0.5]);
        let t_j = Poly::new(vec![0.5, 0.5]);
        'term: for (key, c) in g.terms() {
            let mut factor = Poly::constant(c);
            for &(v, e) in key {
                let base = if v == i {
                    &t_i
                } else if v == j {
                    &t_j
                } else {
                    continue 'term; // tent of a foreign vertex vanishes here
                };
                for _ in 0..e {
                    factor = &factor * base;
                }
            }
            acc = &acc + &factor;
        }
        edge_polys.push(acc);
    }
    let isolated_values = complex
        .isolated()
        .iter()
        .map(|&v| {
            g.terms()
                .filter(|(key, _)| key.iter().all(|&(u, _)| u == v))
                .map(|(_, c)| c)
                .sum()
        })
        .collect();
    Ok(PiecewisePoly::new_unchecked(
        complex.clone(),
        edge_polys,
        isolated_values,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn triangle() -> Complex1D {
        Complex1D::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path3() -> Complex1D {
        Complex1D::new(3, &[(1, 2), (2, 3)]).unwrap()
    }

    fn tsq() -> Poly {
        Poly::new(vec![0.0, 0.0, 1.0])
    }

    #[test]
    fn make_accepts_matching_squares() {
        let c = triangle();
        let f = PiecewisePoly::make(&c, vec![tsq(), tsq(), tsq()], vec![], &tol()).unwrap();
        for v in 1..=3 {
            assert_eq!(f.vertex_value(v), 1.0);
        }
        assert_eq!(f.degree(), Degree::Of(2));
    }

    #[test]
    fn make_rejects_vertex_mismatch() {
        let c = path3();
        let t = Poly::t();
        let err = PiecewisePoly::make(&c, vec![t.clone(), t], vec![], &tol()).unwrap_err();
        match err {
            PwError::IncompatibleVertexValues { vertex, left, right } => {
                assert_eq!(vertex, 2);
                assert_eq!((left, right), (1.0, -1.0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn make_accepts_even_pair() {
        let c = path3();
        assert!(PiecewisePoly::make(&c, vec![tsq(), tsq()], vec![], &tol()).is_ok());
    }

    #[test]
    fn tent_on_path() {
        let c = path3();
        let t2 = PiecewisePoly::tent(&c, 2).unwrap();
        assert_eq!(t2.edge_polys()[0], Poly::new(vec![0.5, 0.5]));
        assert_eq!(t2.edge_polys()[1], Poly::new(vec![0.5, -0.5]));
        let t1 = PiecewisePoly::tent(&c, 1).unwrap();
        assert_eq!(t1.edge_polys()[0], Poly::new(vec![0.5, -0.5]));
        assert!(t1.edge_polys()[1].is_zero());
    }

    #[test]
    fn tent_on_isolated_point() {
        let c = Complex1D::new(1, &[]).unwrap();
        let t1 = PiecewisePoly::tent(&c, 1).unwrap();
        assert_eq!(t1.isolated_values(), &[1.0]);
    }

    #[test]
    fn tents_partition_unity_exactly() {
        for c in [triangle(), path3(), Complex1D::new(4, &[(1, 3)]).unwrap()] {
            let mut sum = PiecewisePoly::zero(&c);
            for k in 1..=c.vertex_count() {
                sum = sum.add(&PiecewisePoly::tent(&c, k).unwrap()).unwrap();
            }
            assert_eq!(sum, PiecewisePoly::constant(&c, 1.0));
        }
    }

    #[test]
    fn product_of_adjacent_tents() {
        let c = path3();
        let t1 = PiecewisePoly::tent(&c, 1).unwrap();
        let t2 = PiecewisePoly::tent(&c, 2).unwrap();
        let p = t1.mul(&t2).unwrap();
        assert_eq!(p.edge_polys()[0], Poly::new(vec![0.25, 0.0, -0.25]));
        assert!(p.edge_polys()[1].is_zero());

        let t3 = PiecewisePoly::tent(&c, 3).unwrap();
        assert!(t1.mul(&t3).unwrap().is_zero());
    }

    #[test]
    fn degree_cases() {
        let points = Complex1D::new(2, &[]).unwrap();
        let f = PiecewisePoly::make(&points, vec![], vec![1.0, 1.0], &tol()).unwrap();
        assert_eq!(f.degree(), Degree::Of(0));
        assert_eq!(PiecewisePoly::zero(&points).degree(), Degree::MinusInf);
        let c = path3();
        assert_eq!(PiecewisePoly::tent(&c, 2).unwrap().degree(), Degree::Of(1));
    }

    #[test]
    fn from_tent_triangle_fixture() {
        let c = triangle();
        let mut g = TentPoly::constant(1.0);
        g.add_term(-4.0, &[(1, 1), (2, 1)]);
        g.add_term(-4.0, &[(1, 1), (3, 1)]);
        g.add_term(-4.0, &[(2, 1), (3, 1)]);
        let f = from_tent(&c, &g).unwrap();
        for p in f.edge_polys() {
            assert_eq!(p, &tsq());
        }
    }

    #[test]
    fn from_tent_kills_off_complex_monomials() {
        let c = triangle();
        let mut g = TentPoly::new();
        g.add_term(1.0, &[(1, 1), (2, 1), (3, 1)]);
        assert!(from_tent(&c, &g).unwrap().is_zero());

        let path = path3();
        let mut g13 = TentPoly::new();
        g13.add_term(1.0, &[(1, 1), (3, 1)]);
        assert!(from_tent(&path, &g13).unwrap().is_zero());
    }

    #[test]
    fn from_tent_partition_of_unity() {
        let c = path3();
        let mut g = TentPoly::new();
        for v in 1..=3 {
            g.add_term(1.0, &[(v, 1)]);
        }
        assert_eq!(from_tent(&c, &g).unwrap(), PiecewisePoly::constant(&c, 1.0));
    }

    #[test]
    fn to_tent_recovers_paper_form() {
        let c = triangle();
        let f = PiecewisePoly::make(&c, vec![tsq(), tsq(), tsq()], vec![], &tol()).unwrap();
        let g = f.to_tent();
        let mut expected = TentPoly::constant(1.0);
        expected.add_term(-4.0, &[(1, 1), (2, 1)]);
        expected.add_term(-4.0, &[(1, 1), (3, 1)]);
        expected.add_term(-4.0, &[(2, 1), (3, 1)]);
        assert_eq!(g, expected);
    }

    #[test]
    fn to_tent_fixes_tents() {
        let c = path3();
        for k in 1..=3 {
            let t = PiecewisePoly::tent(&c, k).unwrap();
            assert_eq!(t.to_tent(), TentPoly::variable(k));
        }
    }

    #[test]
    fn tent_round_trip() {
        let c = triangle();
        let mut g = TentPoly::new();
        g.add_term(0.7, &[]);
        g.add_term(-1.3, &[(2, 1)]);
        g.add_term(2.5, &[(1, 2), (2, 1)]);
        g.add_term(-0.25, &[(1, 1), (3, 2)]);
        g.add_term(1.1, &[(2, 2), (3, 2)]);
        let f = from_tent(&c, &g).unwrap();
        let back = from_tent(&c, &f.to_tent()).unwrap();
        for (p, q) in f.edge_polys().iter().zip(back.edge_polys()) {
            assert!((p - q).sup_norm() < 1e-12);
        }
    }

    #[test]
    fn linear_extension_of_constant() {
        let c = path3();
        let f = PiecewisePoly::linear_extension(&c, (1, 2), &Poly::constant(5.0)).unwrap();
        assert_eq!(f.edge_polys()[0], Poly::constant(5.0));
        assert_eq!(f.edge_polys()[1], Poly::new(vec![2.5, -2.5]));
    }

    #[test]
    fn linear_extension_vanishing_boundary() {
        let c = path3();
        let g = Poly::new(vec![1.0, 0.0, -1.0]); // vanishes at both ends
        let f = PiecewisePoly::linear_extension(&c, (1, 2), &g).unwrap();
        assert!(f.edge_polys()[1].is_zero());
    }

    #[test]
    fn linear_extension_on_star() {
        let c = Complex1D::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let f = PiecewisePoly::linear_extension(&c, (1, 2), &Poly::t()).unwrap();
        let expected = Poly::new(vec![-0.5, 0.5]); // -(1-t)/2
        assert_eq!(f.edge_polys()[1], expected);
        assert_eq!(f.edge_polys()[2], expected);
    }

    #[test]
    fn glue_round_trip_on_triangle() {
        let c = triangle();
        let f = PiecewisePoly::make(&c, vec![tsq(), tsq(), tsq()], vec![], &tol()).unwrap();
        let peel = c.peel().unwrap();
        let f1 = f.restrict(&peel.delta1, &peel.delta1_map).unwrap();
        let f2 = f.restrict(&peel.delta2, &peel.delta2_map).unwrap();
        let glued = PiecewisePoly::glue(
            &c,
            &[(&f1, &peel.delta1_map), (&f2, &peel.delta2_map)],
            &tol(),
        )
        .unwrap();
        assert_eq!(glued, f);
    }

    #[test]
    fn glue_detects_mismatch() {
        let c = triangle();
        let peel = c.peel().unwrap();
        let f1 = PiecewisePoly::constant(&peel.delta1, 2.0);
        let f2 = PiecewisePoly::constant(&peel.delta2, 1.0);
        let err = PiecewisePoly::glue(
            &c,
            &[(&f1, &peel.delta1_map), (&f2, &peel.delta2_map)],
            &tol(),
        )
        .unwrap_err();
        assert!(matches!(err, PwError::GlueMismatch { .. }));
    }

    #[test]
    fn glue_endpoint_match() {
        // f = t^2 on edge (1,2) glued with the constant 1 on the path 1-3-2
        let c = triangle();
        let peel = c.peel().unwrap();
        let f1 = PiecewisePoly::make(&peel.delta1, vec![tsq()], vec![], &tol()).unwrap();
        let f2 = PiecewisePoly::constant(&peel.delta2, 1.0);
        let glued = PiecewisePoly::glue(
            &c,
            &[(&f1, &peel.delta1_map), (&f2, &peel.delta2_map)],
            &tol(),
        )
        .unwrap();
        assert_eq!(glued.vertex_value(1), 1.0);
        assert_eq!(glued.vertex_value(3), 1.0);
    }
}
