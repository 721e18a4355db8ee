//! The Chevalley-Eilenberg complex of a Lie algebra: the exterior
//! algebra on the dual basis x_1..x_n with the differential determined
//! by the structure constants,
//!
//!   d x_k = sum over i < j of c_ij^k  x_i ^ x_j,
//!
//! extended to all degrees by the graded Leibniz rule. With this sign
//! convention, heisenberg(3) gives d x_3 = x_1 ^ x_2.
//!
//! `build` materializes the differential in every degree as an exact
//! rational matrix over the lexicographic monomial bases and checks
//! d o d = 0, which holds exactly when the Jacobi identity does.
//! `build_unchecked` skips that check so callers can compare the
//! d-squared defect against a direct Jacobi test on broken input.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{basis_monomials, ExteriorElement};
use crate::lie::LieAlgebra;
use crate::linalg::{RatMatrix, Rational};

pub struct CEComplex {
    algebra: LieAlgebra,
    /// bases[k] lists the degree-k monomials in lexicographic order.
    bases: Vec<Vec<Vec<usize>>>,
    /// diffs[k] maps degree-k coordinates to degree-(k+1) coordinates.
    diffs: Vec<RatMatrix>,
}

impl CEComplex {
    /// Build and verify d^2 = 0. A nonzero composite means the
    /// presentation violates Jacobi; `LieAlgebra::validate` reports
    /// that case with the offending triple, so reaching it here
    /// indicates an internal inconsistency.
    pub fn build(algebra: LieAlgebra) -> Result<Self> {
        let complex = Self::build_unchecked(algebra);
        if let Some(k) = complex.d_squared_defect() {
            return Err(Error::Internal(format!(
                "differential does not square to zero out of degree {k}"
            )));
        }
        Ok(complex)
    }

    /// Build without the d^2 check.
    pub fn build_unchecked(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        let bases: Vec<Vec<Vec<usize>>> =
            (0..=n).map(|k| basis_monomials(n, k)).collect();
        let mut diffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let rows = if k + 1 <= n { bases[k + 1].len() } else { 0 };
            let mut m = RatMatrix::zero(rows, bases[k].len());
            if k + 1 <= n {
                for (col, mono) in bases[k].iter().enumerate() {
                    let image = d_monomial(&algebra, mono);
                    for (target, coeff) in image.terms() {
                        let row = bases[k + 1]
                            .binary_search(target)
                            .expect("image monomial is a basis element");
                        m.set(row, col, coeff.clone());
                    }
                }
            }
            diffs.push(m);
        }
        CEComplex {
            algebra,
            bases,
            diffs,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Monomial basis of degree k, lexicographic. Empty above top degree.
    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        static EMPTY: &[Vec<usize>] = &[];
        self.bases.get(k).map(|b| b.as_slice()).unwrap_or(EMPTY)
    }

    /// The matrix of d: degree k -> degree k+1.
    pub fn differential(&self, k: usize) -> Option<&RatMatrix> {
        self.diffs.get(k)
    }

    /// First degree k with d_{k+1} o d_k != 0, if any.
    pub fn d_squared_defect(&self) -> Option<usize> {
        let n = self.dim();
        (0..n.saturating_sub(1))
            .find(|&k| !self.diffs[k + 1].mul(&self.diffs[k]).is_zero())
    }

    /// Coordinates of a homogeneous element over the degree-k basis.
    pub fn element_coords(&self, k: usize, elem: &ExteriorElement) -> Result<Vec<Rational>> {
        if elem.ambient_dim() != self.dim() {
            return Err(Error::Input(format!(
                "element lives in dimension {}, complex in {}",
                elem.ambient_dim(),
                self.dim()
            )));
        }
        if !elem.is_zero() && elem.degree() != Some(k) {
            return Err(Error::Input(format!(
                "element is not homogeneous of degree {k}"
            )));
        }
        let basis = self.basis(k);
        let mut coords = vec![Rational::zero(); basis.len()];
        for (mono, c) in elem.terms() {
            let pos = basis
                .binary_search(mono)
                .expect("homogeneous terms lie in the degree basis");
            coords[pos] = c.clone();
        }
        Ok(coords)
    }

    /// Inverse of `element_coords`.
    pub fn coords_element(&self, k: usize, coords: &[Rational]) -> Result<ExteriorElement> {
        let basis = self.basis(k);
        if coords.len() != basis.len() {
            return Err(Error::Input(format!(
                "expected {} coordinates in degree {k}, got {}",
                basis.len(),
                coords.len()
            )));
        }
        let mut out = ExteriorElement::zero(self.dim());
        for (mono, c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&ExteriorElement::monomial(self.dim(), mono, c.clone())?)?;
            }
        }
        Ok(out)
    }

    /// Apply the differential to a homogeneous element (zero maps to
    /// zero by convention).
    pub fn apply_d(&self, elem: &ExteriorElement) -> Result<ExteriorElement> {
        if elem.is_zero() {
            return Ok(ExteriorElement::zero(self.dim()));
        }
        let k = elem
            .degree()
            .ok_or_else(|| Error::Input("cannot differentiate a mixed-degree element".into()))?;
        if k >= self.dim() {
            return Ok(ExteriorElement::zero(self.dim()));
        }
        let coords = self.element_coords(k, elem)?;
        let image = self.diffs[k].mul_vec(&coords);
        self.coords_element(k + 1, &image)
    }
}

/// d x_k as an element of degree 2.
pub fn differential_on_generator(algebra: &LieAlgebra, k: usize) -> Result<ExteriorElement> {
    let n = algebra.dim();
    if k == 0 || k > n {
        return Err(Error::Input(format!("generator index {k} outside 1..={n}")));
    }
    let mut out = ExteriorElement::zero(n);
    for (&(i, j, tk), c) in algebra.brackets() {
        if tk == k {
            out = out.add(&ExteriorElement::monomial(n, &[i, j], c.clone())?)?;
        }
    }
    Ok(out)
}

/// Leibniz expansion of d on a strictly increasing monomial:
/// replace each factor in turn by its differential, with the sign of
/// the factors walked past.
fn d_monomial(algebra: &LieAlgebra, mono: &[usize]) -> ExteriorElement {
    let n = algebra.dim();
    let mut out = ExteriorElement::zero(n);
    for (p, &idx) in mono.iter().enumerate() {
        let dgen = differential_on_generator(algebra, idx)
            .expect("basis monomial indices are in range");
        if dgen.is_zero() {
            continue;
        }
        let prefix = ExteriorElement::monomial(n, &mono[..p], Rational::one())
            .expect("prefix of a strictly increasing monomial");
        let suffix = ExteriorElement::monomial(n, &mono[p + 1..], Rational::one())
            .expect("suffix of a strictly increasing monomial");
        let mut term = prefix
            .wedge(&dgen)
            .and_then(|w| w.wedge(&suffix))
            .expect("ambient dimensions agree");
        if p % 2 == 1 {
            term = term.neg();
        }
        out = out.add(&term).expect("ambient dimensions agree");
    }
    out
}
