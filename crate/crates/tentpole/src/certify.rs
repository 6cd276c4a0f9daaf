//! Construction and verification of positivity certificates on a complex.
//!
//! A nonnegative element `F` is written as `F = S + sum_{(i,j) in E} S_ij
//! T_i T_j` where `S` and every `S_ij` are sums of squares. The construction
//! recurses on the edges: it peels the lexicographically smallest edge,
//! certifies the rest, reads the boundary values of the recursive square
//! roots at the shared vertices, and matches them on the peeled edge with
//! the adaptive interval splitting. Certificates satisfy the degree bound
//! `deg <= deg(F) + 6(e-1) + 1` per connected component, with at most
//! `2e + m0` squares in `S` and at most two squares per edge term.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Tolerances;
use crate::interval::{
    adapt_sos, kms_form, AdaptResult, IntervalError, MatchEnds, TwoSquareForm,
};
use crate::par::ordered_map;
use crate::poly::{Degree, Poly};
use crate::pwpoly::{Location, PiecewisePoly, PwError};
use crate::simplicial::{Complex1D, SharedVertices, VertexMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonneg,
    Marginal,
    Negative,
}

/// Where and how far an element dips below zero.
#[derive(Clone, Debug)]
pub struct Witness {
    pub location: Location,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct NonnegReport {
    pub verdict: Verdict,
    /// Present whenever the verdict is not a clean `Nonneg`.
    pub witness: Option<Witness>,
    /// Global minimum found over the complex.
    pub min: f64,
}

/// Sum-of-squares certificate: `S = sum s_roots^2` plus, per edge, up to two
/// square roots whose squares sum to the multiplier `S_ij` of `T_i T_j`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub s_roots: Vec<PiecewisePoly>,
    pub edge_terms: BTreeMap<(usize, usize), Vec<PiecewisePoly>>,
    pub meta: CertMeta,
}

#[derive(Clone, Debug)]
pub struct CertMeta {
    pub input_degree: Degree,
    pub certificate_degree: Degree,
    pub residual: f64,
    pub square_count: usize,
}

/// Outcome of expanding a certificate against the claimed function.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Max absolute coefficient difference between the expansion and `F`.
    pub residual: f64,
    /// `1 + sup-norm of F`; the pass threshold is `tol.cert * scale`.
    pub scale: f64,
    pub pass: bool,
    pub degree_ok: bool,
    pub count_ok: bool,
    pub support_note: String,
    /// True when the residual was computed in exact rational arithmetic.
    pub exact: bool,
}

/// The quadratic-module form reachable from a certificate by the identity
/// `T_i T_j = T_i^2 T_j + T_j^2 T_i`: one multiplier per tent generator.
#[derive(Clone, Debug)]
pub struct QmForm {
    /// Square roots multiplying the generator 1.
    pub constant_part: Vec<PiecewisePoly>,
    /// Square roots multiplying each tent function `T_v`.
    pub tent_parts: BTreeMap<usize, Vec<PiecewisePoly>>,
}

#[derive(Debug)]
pub enum CertifyError {
    NotNonnegative { witness: Witness },
    /// An interval decomposition failed; carries the edge being processed.
    Interval {
        edge: Option<(usize, usize)>,
        source: IntervalError,
    },
    Pw(PwError),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyError::NotNonnegative { witness } => write!(
                f,
                "input is not nonnegative: value {:e} at {}",
                witness.value, witness.location
            ),
            CertifyError::Interval { edge, source } => match edge {
                Some((i, j)) => write!(f, "on edge ({i}, {j}): {source}"),
                None => write!(f, "{source}"),
            },
            CertifyError::Pw(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CertifyError {}

impl From<PwError> for CertifyError {
    fn from(e: PwError) -> Self {
        CertifyError::Pw(e)
    }
}

/// Decides nonnegativity of `F` over the whole complex by minimizing each
/// edge polynomial over `[-1, 1]` and inspecting isolated-vertex values.
///
/// Never fails: if derivative root finding degrades on some edge, that edge
/// falls back to a dense grid scan.
pub fn is_nonneg(f: &PiecewisePoly, tol: &Tolerances) -> NonnegReport {
    let complex = f.complex();
    let edge_mins: Vec<(f64, f64)> = ordered_map(f.edge_polys(), |p| {
        p.min_on_interval(tol).unwrap_or_else(|_| grid_min(p))
    });
    let mut min = f64::INFINITY;
    let mut witness = None;
    for (idx, &(val, at)) in edge_mins.iter().enumerate() {
        if val < min {
            min = val;
            witness = Some(Witness {
                location: Location::EdgePoint {
                    edge: complex.edges()[idx],
                    t: at,
                },
                value: val,
            });
        }
    }
    for (k, &v) in complex.isolated().iter().enumerate() {
        let val = f.isolated_values()[k];
        if val < min {
            min = val;
            witness = Some(Witness {
                location: Location::Vertex(v),
                value: val,
            });
        }
    }
    if !min.is_finite() {
        // complex with no edges and no isolated vertices cannot exist;
        // an empty function is trivially nonnegative
        min = 0.0;
    }
    let verdict = if min >= 0.0 {
        Verdict::Nonneg
    } else if min >= -tol.nonneg_abs(f.sup_norm()) {
        Verdict::Marginal
    } else {
        Verdict::Negative
    };
    NonnegReport {
        verdict,
        witness: if verdict == Verdict::Nonneg { None } else { witness },
        min,
    }
}

fn grid_min(p: &Poly) -> (f64, f64) {
    let mut best = (f64::INFINITY, -1.0);
    for i in 0..=2000 {
        let x = -1.0 + 2.0 * i as f64 / 2000.0;
        let v = p.eval(x);
        if v < best.0 {
            best = (v, x);
        }
    }
    best
}

struct CertParts {
    s_roots: Vec<PiecewisePoly>,
    edge_terms: BTreeMap<(usize, usize), Vec<PiecewisePoly>>,
}

/// Constructs a certificate for a nonnegative `F`. Marginal inputs (dips
/// within tolerance) are accepted; boundary square roots are clamped at
/// zero where needed.
pub fn certify(f: &PiecewisePoly, tol: &Tolerances) -> Result<Certificate, CertifyError> {
    let report = is_nonneg(f, tol);
    if report.verdict == Verdict::Negative {
        return Err(CertifyError::NotNonnegative {
            witness: report.witness.expect("negative verdict carries a witness"),
        });
    }
    let parts = certify_rec(f, tol)?;
    let mut cert = Certificate {
        s_roots: parts.s_roots,
        edge_terms: parts.edge_terms,
        meta: CertMeta {
            input_degree: f.degree(),
            certificate_degree: Degree::MinusInf,
            residual: f64::NAN,
            square_count: 0,
        },
    };
    cert.meta.square_count = cert.s_roots.len();
    cert.meta.certificate_degree = certificate_degree(&cert);
    let report = verify(f, &cert, tol)?;
    cert.meta.residual = report.residual;
    Ok(cert)
}

fn certificate_degree(cert: &Certificate) -> Degree {
    let mut deg = Degree::MinusInf;
    for root in &cert.s_roots {
        deg = deg.max(root.degree().times(2));
    }
    for roots in cert.edge_terms.values() {
        for root in roots {
            deg = deg.max(root.degree().times(2));
        }
    }
    deg
}

fn certify_rec(f: &PiecewisePoly, tol: &Tolerances) -> Result<CertParts, CertifyError> {
    let complex = f.complex();
    let comps = complex.components();
    if comps.len() > 1 {
        let mut s_roots = Vec::new();
        let mut edge_terms = BTreeMap::new();
        for (sub, map) in &comps {
            let fc = f.restrict(sub, map)?;
            let rec = certify_rec(&fc, tol)?;
            for root in &rec.s_roots {
                s_roots.push(embed(root, complex, map));
            }
            for (edge, roots) in &rec.edge_terms {
                let parent_edge = map.edge_to_parent(*edge);
                let lifted = roots.iter().map(|r| embed(r, complex, map)).collect();
                edge_terms.insert(parent_edge, lifted);
            }
        }
        return Ok(CertParts {
            s_roots,
            edge_terms,
        });
    }

    let e = complex.edge_count();
    if e == 0 {
        // connected with no edges: a single isolated vertex
        let value = f.vertex_value(1).max(0.0);
        let root = PiecewisePoly::tent(complex, 1)?.scale(value.sqrt());
        return Ok(CertParts {
            s_roots: vec![root],
            edge_terms: BTreeMap::new(),
        });
    }

    if e == 1 {
        let edge = complex.edges()[0];
        let (s0, s1) = kms_form(&f.edge_polys()[0], tol).map_err(|source| {
            CertifyError::Interval {
                edge: Some(edge),
                source,
            }
        })?;
        let on_edge = |p: &Poly| {
            PiecewisePoly::new_unchecked(complex.clone(), vec![p.clone()], Vec::new())
        };
        let s_roots = vec![on_edge(&s0.u), on_edge(&s0.v)];
        let mut edge_terms = BTreeMap::new();
        // S_ij = 4 s1 accounts for T_i T_j = (1 - t^2) / 4 on the edge
        let term: Vec<PiecewisePoly> = [&s1.u, &s1.v]
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| on_edge(&p.scale(2.0)))
            .collect();
        if !term.is_empty() {
            edge_terms.insert(edge, term);
        }
        return Ok(CertParts {
            s_roots,
            edge_terms,
        });
    }

    // e >= 2, connected: peel and recurse
    let peel = complex.peel().map_err(PwError::Complex)?;
    let f2 = f.restrict(&peel.delta2, &peel.delta2_map)?;
    let rec = certify_rec(&f2, tol)?;
    let k = 2 * (e - 1);
    let mut rec_roots = rec.s_roots;
    debug_assert_eq!(rec_roots.len(), k);
    while rec_roots.len() < k {
        rec_roots.push(PiecewisePoly::zero(&peel.delta2));
    }

    let (vi, vj) = peel.edge;
    let edge_idx = complex.edge_index(vi, vj).expect("peeled edge exists");
    let fe = &f.edge_polys()[edge_idx];
    let attach = |source: IntervalError| CertifyError::Interval {
        edge: Some(peel.edge),
        source,
    };

    // boundary vectors read off the recursive square roots, then matched on
    // the peeled edge; when only one vertex is shared the edge parameter is
    // reflected so that the shared vertex sits at t = +1
    let values_at = |parent_vertex: usize| -> Vec<f64> {
        let local = peel
            .delta2_map
            .from_parent(parent_vertex)
            .expect("shared vertex lies in the remainder");
        rec_roots.iter().map(|r| r.vertex_value(local)).collect()
    };
    let (adapt, reflected): (AdaptResult, bool) = match peel.shared {
        SharedVertices::Two => {
            let a = values_at(vi);
            let b = values_at(vj);
            (
                adapt_sos(fe, &a, &b, MatchEnds::Both, tol).map_err(attach)?,
                false,
            )
        }
        SharedVertices::One(shared) => {
            let b = values_at(shared);
            let zeros = vec![0.0; k];
            if shared == vj {
                (
                    adapt_sos(fe, &zeros, &b, MatchEnds::RightOnly, tol).map_err(attach)?,
                    false,
                )
            } else {
                let res = adapt_sos(&fe.reflect(), &zeros, &b, MatchEnds::RightOnly, tol)
                    .map_err(attach)?;
                (res, true)
            }
        }
    };
    let orient = |p: &Poly| if reflected { p.reflect() } else { p.clone() };
    let squares: Vec<Poly> = adapt.squares.iter().map(&orient).collect();
    let remainder = TwoSquareForm::new(orient(&adapt.remainder.u), orient(&adapt.remainder.v));

    // glue the matched squares with the recursive roots, the two tail
    // squares with zero
    let zero2 = PiecewisePoly::zero(&peel.delta2);
    let mut s_roots = Vec::with_capacity(k + 2);
    for (i, sq) in squares.iter().enumerate() {
        let on_edge =
            PiecewisePoly::new_unchecked(peel.delta1.clone(), vec![sq.clone()], Vec::new());
        let rest = if i < k { &rec_roots[i] } else { &zero2 };
        let glued = PiecewisePoly::glue(
            complex,
            &[(&on_edge, &peel.delta1_map), (rest, &peel.delta2_map)],
            tol,
        )?;
        s_roots.push(glued);
    }

    let mut edge_terms = BTreeMap::new();
    // S for the peeled edge: 4 * remainder, each root extended linearly
    let term: Vec<PiecewisePoly> = [&remainder.u, &remainder.v]
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| PiecewisePoly::linear_extension(complex, peel.edge, &p.scale(2.0)))
        .collect::<Result<_, _>>()?;
    if !term.is_empty() {
        edge_terms.insert(peel.edge, term);
    }
    // recursive edge terms: re-extend each root from its supporting edge
    for (edge, roots) in &rec.edge_terms {
        let parent_edge = peel.delta2_map.edge_to_parent(*edge);
        let local_idx = peel
            .delta2
            .edge_index(edge.0, edge.1)
            .expect("edge of the remainder");
        let lifted: Vec<PiecewisePoly> = roots
            .iter()
            .map(|r| {
                PiecewisePoly::linear_extension(
                    complex,
                    parent_edge,
                    &r.edge_polys()[local_idx],
                )
            })
            .collect::<Result<_, _>>()?;
        edge_terms.insert(parent_edge, lifted);
    }

    Ok(CertParts {
        s_roots,
        edge_terms,
    })
}

/// Lifts an element of a component into the parent complex, zero elsewhere.
fn embed(part: &PiecewisePoly, parent: &Complex1D, map: &VertexMap) -> PiecewisePoly {
    let mut edge_polys = vec![Poly::zero(); parent.edge_count()];
    for (local_idx, &le) in part.complex().edges().iter().enumerate() {
        let (pi, pj) = map.edge_to_parent(le);
        let idx = parent.edge_index(pi, pj).expect("component edge exists");
        edge_polys[idx] = part.edge_polys()[local_idx].clone();
    }
    let isolated_values = parent
        .isolated()
        .iter()
        .map(|&v| {
            map.from_parent(v)
                .map(|lv| part.vertex_value(lv))
                .unwrap_or(0.0)
        })
        .collect();
    PiecewisePoly::new_unchecked(parent.clone(), edge_polys, isolated_values)
}

/// Expands a certificate with piecewise arithmetic and compares it with `F`
/// coefficientwise. Also checks the degree and square-count budgets.
pub fn verify(
    f: &PiecewisePoly,
    cert: &Certificate,
    tol: &Tolerances,
) -> Result<VerifyReport, CertifyError> {
    let complex = f.complex();
    for root in &cert.s_roots {
        if root.complex() != complex {
            return Err(CertifyError::Pw(PwError::ComplexMismatch));
        }
    }
    for (&(i, j), roots) in &cert.edge_terms {
        if complex.edge_index(i, j).is_none() {
            return Err(CertifyError::Pw(PwError::EdgeNotInComplex { edge: (i, j) }));
        }
        for root in roots {
            if root.complex() != complex {
                return Err(CertifyError::Pw(PwError::ComplexMismatch));
            }
        }
    }

    let squares = ordered_map(&cert.s_roots, PiecewisePoly::square);
    let mut expansion = PiecewisePoly::zero(complex);
    for sq in &squares {
        expansion = expansion.add(sq)?;
    }
    for (&(i, j), roots) in &cert.edge_terms {
        let mut multiplier = PiecewisePoly::zero(complex);
        for sq in ordered_map(roots, PiecewisePoly::square) {
            multiplier = multiplier.add(&sq)?;
        }
        let ti = PiecewisePoly::tent(complex, i)?;
        let tj = PiecewisePoly::tent(complex, j)?;
        expansion = expansion.add(&multiplier.mul(&ti)?.mul(&tj)?)?;
    }

    let diff = expansion.sub(f)?;
    let residual = diff.sup_norm();
    let scale = 1.0 + f.sup_norm();

    let count_ok = cert.s_roots.len()
        <= 2 * complex.edge_count() + complex.isolated_count()
        && cert.edge_terms.values().all(|roots| roots.len() <= 2);
    let degree_ok = check_degree_bounds(f, cert)?;

    let mut max_off = Degree::MinusInf;
    for (&(i, j), roots) in &cert.edge_terms {
        for root in roots {
            for (idx, &edge) in complex.edges().iter().enumerate() {
                if edge != (i, j) {
                    max_off = max_off.max(root.edge_polys()[idx].degree());
                }
            }
        }
    }
    let support_note = match max_off {
        Degree::MinusInf | Degree::Of(0) | Degree::Of(1) => {
            "edge-term roots are at most linear away from their supporting edge".to_string()
        }
        Degree::Of(d) => format!(
            "edge-term roots reach degree {d} away from their supporting edge; only the supporting-edge restriction enters the expansion"
        ),
    };

    Ok(VerifyReport {
        residual,
        scale,
        pass: residual <= tol.cert * scale,
        degree_ok,
        count_ok,
        support_note,
        exact: false,
    })
}

/// Degree bound per connected component: `deg(F) + 6(e-1) + 1` for a
/// component with `e >= 1` edges, degree 0 on isolated vertices.
fn check_degree_bounds(f: &PiecewisePoly, cert: &Certificate) -> Result<bool, CertifyError> {
    let complex = f.complex();
    for (sub, map) in complex.components() {
        let e = sub.edge_count();
        let bound = if e >= 1 {
            f.restrict(&sub, &map)?.degree().plus(6 * (e - 1) + 1)
        } else {
            Degree::Of(0)
        };
        for root in &cert.s_roots {
            if root.restrict(&sub, &map)?.degree().times(2) > bound {
                return Ok(false);
            }
        }
        for (&(i, _), roots) in &cert.edge_terms {
            if map.from_parent(i).is_none() {
                continue;
            }
            for root in roots {
                if root.restrict(&sub, &map)?.degree().times(2) > bound {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Rewrites every `S_ij T_i T_j` as `S_ij T_j^2 T_i + S_ij T_i^2 T_j`,
/// producing a representation with one sum-of-squares multiplier per tent
/// generator. The expansion is unchanged at the symbolic level.
pub fn qm_convert(cert: &Certificate) -> Result<QmForm, CertifyError> {
    let mut tent_parts: BTreeMap<usize, Vec<PiecewisePoly>> = BTreeMap::new();
    for (&(i, j), roots) in &cert.edge_terms {
        if roots.is_empty() {
            continue;
        }
        let complex = roots[0].complex().clone();
        let ti = PiecewisePoly::tent(&complex, i)?;
        let tj = PiecewisePoly::tent(&complex, j)?;
        for root in roots {
            tent_parts.entry(i).or_default().push(root.mul(&tj)?);
            tent_parts.entry(j).or_default().push(root.mul(&ti)?);
        }
    }
    Ok(QmForm {
        constant_part: cert.s_roots.clone(),
        tent_parts,
    })
}

/// Expands a quadratic-module form back into an element of the complex.
pub fn qm_expand(qm: &QmForm, complex: &Complex1D) -> Result<PiecewisePoly, CertifyError> {
    let mut acc = PiecewisePoly::zero(complex);
    for root in &qm.constant_part {
        acc = acc.add(&root.square())?;
    }
    for (&v, roots) in &qm.tent_parts {
        let mut multiplier = PiecewisePoly::zero(complex);
        for root in roots {
            multiplier = multiplier.add(&root.square())?;
        }
        acc = acc.add(&multiplier.mul(&PiecewisePoly::tent(complex, v)?)?)?;
    }
    Ok(acc)
}

/// Deterministic generator of nonnegative test elements: a sum of squares
/// of random compatible elements plus a random two-square multiple of
/// `T_i T_j` per edge, degree at most `degree`.
pub fn random_nonneg(
    complex: &Complex1D,
    degree: usize,
    seed: u64,
    tol: &Tolerances,
) -> PiecewisePoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = degree / 2;
    let n_squares = rng.gen_range(1..=3usize);
    let mut f = PiecewisePoly::zero(complex);
    for _ in 0..n_squares {
        let g = random_compatible(complex, half, &mut rng, tol);
        f = f.add(&g.square()).expect("same complex");
    }
    if degree >= 2 {
        let sub_deg = (degree - 2) / 2;
        let quarter_weight = Poly::new(vec![0.25, 0.0, -0.25]);
        for idx in 0..complex.edge_count() {
            if !rng.gen_bool(0.8) {
                continue;
            }
            let u = random_poly(sub_deg, &mut rng);
            let v = random_poly(sub_deg, &mut rng);
            let s = &(&u * &u) + &(&v * &v);
            let mut edge_polys = vec![Poly::zero(); complex.edge_count()];
            edge_polys[idx] = &s * &quarter_weight;
            let term = PiecewisePoly::new_unchecked(
                complex.clone(),
                edge_polys,
                vec![0.0; complex.isolated_count()],
            );
            f = f.add(&term).expect("same complex");
        }
    }
    f
}

fn random_poly(degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(
        (0..=degree)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect::<Vec<f64>>(),
    )
}

/// A random compatible element of degree at most `degree`: random vertex
/// values with the linear part of each edge polynomial adjusted to match.
fn random_compatible(
    complex: &Complex1D,
    degree: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> PiecewisePoly {
    if degree == 0 {
        return PiecewisePoly::constant(complex, rng.gen_range(-1.0..1.0));
    }
    let values: Vec<f64> = (0..complex.vertex_count())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let edge_polys: Vec<Poly> = complex
        .edges()
        .iter()
        .map(|&(i, j)| {
            let p = random_poly(degree, rng);
            let (target_m, target_p) = (values[i - 1], values[j - 1]);
            let (dm, dp) = (target_m - p.eval(-1.0), target_p - p.eval(1.0));
            // add the linear interpolant of the endpoint corrections
            &p + &Poly::new(vec![(dm + dp) / 2.0, (dp - dm) / 2.0])
        })
        .collect();
    let isolated_values = complex
        .isolated()
        .iter()
        .map(|&v| values[v - 1])
        .collect();
    PiecewisePoly::make(complex, edge_polys, isolated_values, tol)
        .expect("adjusted element is compatible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwpoly::from_tent;
    use crate::pwpoly::TentPoly;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn triangle() -> Complex1D {
        Complex1D::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle_squares() -> PiecewisePoly {
        let c = triangle();
        let t2 = Poly::new(vec![0.0, 0.0, 1.0]);
        PiecewisePoly::make(&c, vec![t2.clone(), t2.clone(), t2], vec![], &tol()).unwrap()
    }

    #[test]
    fn nonneg_on_triangle_squares() {
        let report = is_nonneg(&triangle_squares(), &tol());
        assert_eq!(report.verdict, Verdict::Nonneg);
        assert!(report.witness.is_none());
    }

    #[test]
    fn negative_linear_witness() {
        let c = Complex1D::new(3, &[(1, 2), (2, 3)]).unwrap();
        let f = PiecewisePoly::make(
            &c,
            vec![Poly::t(), Poly::constant(1.0)],
            vec![],
            &tol(),
        )
        .unwrap();
        let report = is_nonneg(&f, &tol());
        assert_eq!(report.verdict, Verdict::Negative);
        let w = report.witness.unwrap();
        assert_eq!(w.value, -1.0);
        assert_eq!(
            w.location,
            Location::EdgePoint {
                edge: (1, 2),
                t: -1.0
            }
        );
    }

    #[test]
    fn negative_isolated_witness() {
        let c = Complex1D::new(2, &[(0, 0); 0]).unwrap();
        let f = PiecewisePoly::make(&c, vec![], vec![0.5, -0.5], &tol()).unwrap();
        let report = is_nonneg(&f, &tol());
        assert_eq!(report.verdict, Verdict::Negative);
        assert_eq!(report.witness.unwrap().location, Location::Vertex(2));
    }

    #[test]
    fn certify_constant_one() {
        let c = triangle();
        let f = PiecewisePoly::constant(&c, 1.0);
        let cert = certify(&f, &tol()).unwrap();
        let report = verify(&f, &cert, &tol()).unwrap();
        assert!(report.pass && report.degree_ok && report.count_ok);
        assert!(report.residual <= 1e-9);
    }

    #[test]
    fn certify_tent_function() {
        let c = triangle();
        let f = PiecewisePoly::tent(&c, 2).unwrap();
        let cert = certify(&f, &tol()).unwrap();
        let report = verify(&f, &cert, &tol()).unwrap();
        assert!(report.pass && report.degree_ok && report.count_ok);
    }

    #[test]
    fn certify_triangle_fixture() {
        let f = triangle_squares();
        let cert = certify(&f, &tol()).unwrap();
        assert!(cert.s_roots.len() <= 6);
        assert!(cert.edge_terms.values().all(|r| r.len() <= 2));
        let report = verify(&f, &cert, &tol()).unwrap();
        assert!(report.residual <= 1e-6 * report.scale);
        assert!(report.degree_ok);
        assert!(cert.meta.certificate_degree <= Degree::Of(15));
    }

    #[test]
    fn certify_refuses_negative() {
        let c = Complex1D::new(2, &[(1, 2)]).unwrap();
        let f = PiecewisePoly::make(&c, vec![Poly::t()], vec![], &tol()).unwrap();
        assert!(matches!(
            certify(&f, &tol()),
            Err(CertifyError::NotNonnegative { .. })
        ));
    }

    #[test]
    fn verify_paper_certificate_exactly() {
        // S = (4 T1 T2 - 2 T1 - 2 T2 + 1)^2, S_12 = (4 T1 - 2)^2, on the
        // triangle: edgewise S-root is (-t^2, t, t), S_12 root is -2t on the
        // supporting edge. All coefficients are exactly representable, so
        // the float expansion residual is exactly zero.
        let c = triangle();
        let f = triangle_squares();
        let s_root = PiecewisePoly::make(
            &c,
            vec![
                Poly::new(vec![0.0, 0.0, -1.0]),
                Poly::t(),
                Poly::t(),
            ],
            vec![],
            &tol(),
        )
        .unwrap();
        let t12_root = PiecewisePoly::make(
            &c,
            vec![
                Poly::new(vec![0.0, -2.0]),
                Poly::new(vec![0.0, -2.0]),
                Poly::constant(-2.0),
            ],
            vec![],
            &tol(),
        )
        .unwrap();
        let mut edge_terms = BTreeMap::new();
        edge_terms.insert((1, 2), vec![t12_root]);
        let cert = Certificate {
            s_roots: vec![s_root],
            edge_terms,
            meta: CertMeta {
                input_degree: f.degree(),
                certificate_degree: Degree::Of(4),
                residual: 0.0,
                square_count: 1,
            },
        };
        let report = verify(&f, &cert, &tol()).unwrap();
        assert_eq!(report.residual, 0.0);
        assert!(report.pass && report.degree_ok && report.count_ok);
    }

    #[test]
    fn verify_detects_corruption() {
        let f = triangle_squares();
        let mut cert = certify(&f, &tol()).unwrap();
        // corrupt one coefficient by 1e-3
        let mut polys = cert.s_roots[0].edge_polys().to_vec();
        let mut coeffs = polys[0].coeffs().to_vec();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        coeffs[0] += 1e-3;
        polys[0] = Poly::new(coeffs);
        cert.s_roots[0] = PiecewisePoly::new_unchecked(
            f.complex().clone(),
            polys,
            cert.s_roots[0].isolated_values().to_vec(),
        );
        let report = verify(&f, &cert, &tol()).unwrap();
        assert!(report.residual >= 1e-4);
        assert!(!report.pass);
    }

    #[test]
    fn qm_convert_preserves_expansion() {
        let f = triangle_squares();
        let cert = certify(&f, &tol()).unwrap();
        let qm = qm_convert(&cert).unwrap();
        let expanded = qm_expand(&qm, f.complex()).unwrap();
        let direct_residual = expanded.sub(&f).unwrap().sup_norm();
        assert!(direct_residual <= 1e-6 * (1.0 + f.sup_norm()));
    }

    #[test]
    fn qm_convert_empty_edge_terms() {
        let c = Complex1D::new(2, &[]).unwrap();
        let f = PiecewisePoly::make(&c, vec![], vec![1.0, 4.0], &tol()).unwrap();
        let cert = certify(&f, &tol()).unwrap();
        let qm = qm_convert(&cert).unwrap();
        assert!(qm.tent_parts.is_empty());
        assert_eq!(qm.constant_part.len(), 2);
    }

    #[test]
    fn random_nonneg_is_deterministic_and_nonneg() {
        let c = triangle();
        let f1 = random_nonneg(&c, 4, 42, &tol());
        let f2 = random_nonneg(&c, 4, 42, &tol());
        assert_eq!(f1, f2);
        assert_eq!(is_nonneg(&f1, &tol()).verdict, Verdict::Nonneg);
        let f0 = random_nonneg(&c, 0, 7, &tol());
        assert!(f0.degree() <= Degree::Of(0));
        assert_eq!(is_nonneg(&f0, &tol()).verdict, Verdict::Nonneg);
    }

    #[test]
    fn certified_squares_match_vertex_values() {
        let c = Complex1D::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let f = random_nonneg(&c, 4, 11, &tol());
        let cert = certify(&f, &tol()).unwrap();
        for v in 1..=4 {
            let total: f64 = cert
                .s_roots
                .iter()
                .map(|r| r.vertex_value(v).powi(2))
                .sum();
            assert!(
                (total - f.vertex_value(v)).abs() <= 1e-7 * (1.0 + f.vertex_value(v).abs()),
                "vertex {v}: {total} vs {}",
                f.vertex_value(v)
            );
        }
        // connected complex: exactly 2e square roots, zeros included
        assert_eq!(cert.s_roots.len(), 2 * c.edge_count());
    }
}
