//! Exact rational expansion of certificates.
//!
//! When every coefficient of the claimed function and the certificate is an
//! exact rational, the expansion residual can be computed without rounding.
//! Since each tent product `T_i T_j` is supported on its own edge (where it
//! equals `(1 - t^2) / 4`) and vanishes at all vertices, the check reduces
//! to per-edge polynomial identities over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::simplicial::Complex1D;

/// Dense rational polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }

    pub fn square(&self) -> RatPoly {
        self.mul(self)
    }

    /// Max absolute coefficient.
    pub fn sup_norm(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Rational edge polynomials plus one rational per isolated vertex, over a
/// fixed complex.
#[derive(Clone, Debug)]
pub struct RatFunction {
    pub edge_polys: Vec<RatPoly>,
    pub isolated_values: Vec<BigRational>,
}

impl RatFunction {
    pub fn zero(complex: &Complex1D) -> RatFunction {
        RatFunction {
            edge_polys: vec![RatPoly::zero(); complex.edge_count()],
            isolated_values: vec![BigRational::zero(); complex.isolated_count()],
        }
    }
}

#[derive(Clone, Debug)]
pub struct RatCertificate {
    pub s_roots: Vec<RatFunction>,
    pub edge_terms: BTreeMap<(usize, usize), Vec<RatFunction>>,
}

/// Expands `sum roots^2 + sum S_ij T_i T_j` against `f` in exact arithmetic
/// and returns the largest absolute coefficient difference.
///
/// Arity of all parts against the complex is the caller's contract.
pub fn verify_exact(
    complex: &Complex1D,
    f: &RatFunction,
    cert: &RatCertificate,
) -> BigRational {
    assert_eq!(f.edge_polys.len(), complex.edge_count());
    assert_eq!(f.isolated_values.len(), complex.isolated_count());

    // (1 - t^2) / 4, the on-edge value of the tent product
    let quarter = BigRational::new(1.into(), 4.into());
    let tent_product = RatPoly::new(vec![
        quarter.clone(),
        BigRational::zero(),
        -quarter,
    ]);

    let mut residual = BigRational::zero();
    for (idx, &(i, j)) in complex.edges().iter().enumerate() {
        let mut acc = RatPoly::zero();
        for root in &cert.s_roots {
            acc = acc.add(&root.edge_polys[idx].square());
        }
        if let Some(roots) = cert.edge_terms.get(&(i, j)) {
            let mut multiplier = RatPoly::zero();
            for root in roots {
                multiplier = multiplier.add(&root.edge_polys[idx].square());
            }
            acc = acc.add(&multiplier.mul(&tent_product));
        }
        residual = residual.max(acc.sub(&f.edge_polys[idx]).sup_norm());
    }
    for (k, value) in f.isolated_values.iter().enumerate() {
        let mut acc = BigRational::zero();
        for root in &cert.s_roots {
            let v = &root.isolated_values[k];
            acc += v * v;
        }
        residual = residual.max((acc - value).abs());
    }
    residual
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rp(coeffs: &[i64]) -> RatPoly {
        RatPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn paper_triangle_certificate_is_exact() {
        let complex = Complex1D::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let f = RatFunction {
            edge_polys: vec![rp(&[0, 0, 1]), rp(&[0, 0, 1]), rp(&[0, 0, 1])],
            isolated_values: vec![],
        };
        let s_root = RatFunction {
            edge_polys: vec![rp(&[0, 0, -1]), rp(&[0, 1]), rp(&[0, 1])],
            isolated_values: vec![],
        };
        let t12_root = RatFunction {
            edge_polys: vec![rp(&[0, -2]), rp(&[0, -2]), rp(&[-2])],
            isolated_values: vec![],
        };
        let mut edge_terms = BTreeMap::new();
        edge_terms.insert((1, 2), vec![t12_root]);
        let cert = RatCertificate {
            s_roots: vec![s_root],
            edge_terms,
        };
        let residual = verify_exact(&complex, &f, &cert);
        assert!(residual.is_zero());
    }

    #[test]
    fn corruption_is_detected_exactly() {
        let complex = Complex1D::new(2, &[(1, 2)]).unwrap();
        let f = RatFunction {
            edge_polys: vec![rp(&[1])],
            isolated_values: vec![],
        };
        let cert = RatCertificate {
            s_roots: vec![RatFunction {
                edge_polys: vec![RatPoly::new(vec![BigRational::new(
                    1001.into(),
                    1000.into(),
                )])],
                isolated_values: vec![],
            }],
            edge_terms: BTreeMap::new(),
        };
        let residual = verify_exact(&complex, &f, &cert);
        assert_eq!(
            residual,
            BigRational::new(2001.into(), 1_000_000.into())
        );
    }
}
