//! The cohomology ring of a Chevalley-Eilenberg complex.
//!
//! Each degree k gets a fixed basis of representative cocycles, chosen
//! deterministically: the canonical kernel basis of d_k is filtered
//! greedily against the span of the coboundaries, so the same complex
//! always yields the same representatives. Classes are coordinate
//! vectors over that basis. `reduce` sends any closed element to its
//! class, and `cup` multiplies classes by wedging representatives and
//! reducing the product.
//!
//! Degrees above the top dimension are "virtual": the only class there
//! is zero, kept representable so products can be formed blindly.

use num_traits::Zero;

use crate::ce_complex::CEComplex;
use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::linalg::{IncrementalSpan, RatMatrix, Rational, SpanSolver};

/// A cohomology class: coordinates over the fixed representative basis
/// of its degree. Degrees above the top dimension carry no coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl CohClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

struct DegreeData {
    betti: usize,
    /// Representative cocycles as coordinate vectors over the
    /// degree's monomial basis.
    reps: Vec<Vec<Rational>>,
    /// Image basis of the incoming differential.
    coboundaries: Vec<Vec<Rational>>,
    /// Solves over [reps | coboundaries]; any closed vector lands here.
    solver: SpanSolver,
}

pub struct CohomologyRing {
    complex: CEComplex,
    degrees: Vec<DegreeData>,
}

impl CohomologyRing {
    pub fn new(complex: CEComplex) -> Result<Self> {
        let n = complex.dim();
        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let dk = complex
                .differential(k)
                .expect("differential exists through top degree");
            let chain_dim = dk.cols();
            let kernel = dk.kernel_basis();
            let coboundaries = if k == 0 {
                Vec::new()
            } else {
                complex.differential(k - 1).unwrap().image_basis()
            };
            // Rank-nullity and the double-check that the image lies in
            // the kernel pin the Betti number two independent ways.
            let rank_out = dk.rank();
            let rank_in = if k == 0 {
                0
            } else {
                complex.differential(k - 1).unwrap().rank()
            };
            if kernel.len() + rank_out != chain_dim || coboundaries.len() != rank_in {
                return Err(Error::Internal(format!(
                    "rank bookkeeping failed in degree {k}"
                )));
            }
            let betti = kernel
                .len()
                .checked_sub(coboundaries.len())
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "image exceeds kernel in degree {k}; differential is broken"
                    ))
                })?;
            if betti != chain_dim - rank_out - rank_in {
                return Err(Error::Internal(format!(
                    "betti cross-check failed in degree {k}"
                )));
            }
            // Greedy representative extension: kernel vectors that
            // grow the span beyond the coboundaries become the basis.
            let mut span = IncrementalSpan::new();
            for cob in &coboundaries {
                span.insert(cob);
            }
            let mut reps = Vec::with_capacity(betti);
            for v in kernel {
                if span.insert(&v) {
                    reps.push(v);
                }
            }
            if reps.len() != betti {
                return Err(Error::Internal(format!(
                    "representative count mismatch in degree {k}"
                )));
            }
            let mut generators: Vec<Vec<Rational>> = reps.clone();
            generators.extend(coboundaries.iter().cloned());
            let solver = SpanSolver::new(chain_dim, &generators)?;
            degrees.push(DegreeData {
                betti,
                reps,
                coboundaries,
                solver,
            });
        }
        Ok(CohomologyRing { complex, degrees })
    }

    pub fn complex(&self) -> &CEComplex {
        &self.complex
    }

    /// Top (manifold) dimension.
    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map(|d| d.betti).unwrap_or(0)
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let b = d.betti as i64;
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum()
    }

    pub fn poincare_duality_holds(&self) -> bool {
        let n = self.dim();
        (0..=n).all(|k| self.betti(k) == self.betti(n - k))
    }

    /// Representative cocycles of H^k, as exterior elements.
    pub fn representatives(&self, k: usize) -> Vec<ExteriorElement> {
        match self.degrees.get(k) {
            None => Vec::new(),
            Some(d) => d
                .reps
                .iter()
                .map(|coords| {
                    self.complex
                        .coords_element(k, coords)
                        .expect("stored representative coordinates are valid")
                })
                .collect(),
        }
    }

    /// Basis classes of H^k in representative order.
    pub fn basis_classes(&self, k: usize) -> Vec<CohClass> {
        let b = self.betti(k);
        (0..b)
            .map(|i| {
                let mut coords = vec![Rational::zero(); b];
                coords[i] = Rational::from_integer(1.into());
                CohClass { degree: k, coords }
            })
            .collect()
    }

    pub fn zero_class(&self, k: usize) -> CohClass {
        CohClass {
            degree: k,
            coords: vec![Rational::zero(); self.betti(k)],
        }
    }

    pub fn unit_class(&self) -> CohClass {
        let mut coords = vec![Rational::zero(); self.betti(0)];
        coords[0] = Rational::from_integer(1.into());
        CohClass { degree: 0, coords }
    }

    /// The chosen representative cocycle of a class.
    pub fn class_representative(&self, class: &CohClass) -> Result<ExteriorElement> {
        let n = self.dim();
        if class.degree > n {
            if !class.is_zero() {
                return Err(Error::Input(format!(
                    "nonzero class in virtual degree {}",
                    class.degree
                )));
            }
            return Ok(ExteriorElement::zero(n));
        }
        let data = &self.degrees[class.degree];
        if class.coords.len() != data.betti {
            return Err(Error::Input(format!(
                "class in degree {} must have {} coordinates, got {}",
                class.degree,
                data.betti,
                class.coords.len()
            )));
        }
        let chain_dim = self.complex.basis(class.degree).len();
        let mut acc = vec![Rational::zero(); chain_dim];
        for (c, rep) in class.coords.iter().zip(&data.reps) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in acc.iter_mut().zip(rep) {
                *slot += c * x;
            }
        }
        self.complex.coords_element(class.degree, &acc)
    }

    /// Reduce a closed homogeneous element of degree k to its class.
    /// Degrees above the top are accepted for the zero element only.
    pub fn reduce(&self, k: usize, elem: &ExteriorElement) -> Result<CohClass> {
        let n = self.dim();
        if k > n {
            if !elem.is_zero() {
                return Err(Error::Input(format!(
                    "nonzero element claimed in degree {k} above top degree {n}"
                )));
            }
            return Ok(self.zero_class(k));
        }
        let coords = self.complex.element_coords(k, elem)?;
        let differential = self.complex.differential(k).unwrap().mul_vec(&coords);
        if differential.iter().any(|x| !x.is_zero()) {
            let dz = self.complex.coords_element(k + 1, &differential)?;
            return Err(Error::Input(format!(
                "element is not closed: d gives {dz}"
            )));
        }
        let data = &self.degrees[k];
        let solution = data
            .solver
            .solve(&coords)?
            .ok_or_else(|| Error::Internal("closed element outside kernel span".into()))?;
        Ok(CohClass {
            degree: k,
            coords: solution[..data.betti].to_vec(),
        })
    }

    /// Whether a closed element is a coboundary.
    pub fn is_exact(&self, k: usize, elem: &ExteriorElement) -> Result<bool> {
        Ok(self.reduce(k, elem)?.is_zero())
    }

    /// Cup product: wedge the representatives and reduce.
    pub fn cup(&self, a: &CohClass, b: &CohClass) -> Result<CohClass> {
        let degree = a.degree + b.degree;
        if degree > self.dim() {
            return Ok(self.zero_class(degree));
        }
        let ra = self.class_representative(a)?;
        let rb = self.class_representative(b)?;
        let product = ra.wedge(&rb)?;
        self.reduce(degree, &product)
    }

    /// Scale a class.
    pub fn scale_class(&self, class: &CohClass, c: &Rational) -> CohClass {
        CohClass {
            degree: class.degree,
            coords: class.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Add two classes of the same degree.
    pub fn add_classes(&self, a: &CohClass, b: &CohClass) -> Result<CohClass> {
        if a.degree != b.degree || a.coords.len() != b.coords.len() {
            return Err(Error::Input(
                "can only add classes of the same degree".into(),
            ));
        }
        Ok(CohClass {
            degree: a.degree,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    /// k-th cup power of a class.
    pub fn class_pow(&self, class: &CohClass, k: usize) -> Result<CohClass> {
        if k == 0 {
            return Ok(self.unit_class());
        }
        let mut acc = class.clone();
        for _ in 1..k {
            acc = self.cup(&acc, class)?;
        }
        Ok(acc)
    }

    /// Render a class as its bracketed representative, e.g.
    /// "[e1^e3 + e2^e4]"; the zero class renders as "0".
    pub fn class_to_string(&self, class: &CohClass) -> String {
        if class.is_zero() {
            return "0".to_string();
        }
        let rep = self
            .class_representative(class)
            .expect("class coordinates match the ring");
        format!("[{rep}]")
    }

    /// Dimension of the span of a set of classes in one degree.
    pub fn span_dim(&self, classes: &[CohClass]) -> usize {
        if classes.is_empty() {
            return 0;
        }
        let cols: Vec<Vec<Rational>> = classes.iter().map(|c| c.coords.clone()).collect();
        RatMatrix::from_columns(classes[0].coords.len(), &cols).rank()
    }

    /// Coboundary coordinate vectors in degree k (used by diagnostics).
    pub fn coboundary_basis(&self, k: usize) -> &[Vec<Rational>] {
        static EMPTY: &[Vec<Rational>] = &[];
        self.degrees
            .get(k)
            .map(|d| d.coboundaries.as_slice())
            .unwrap_or(EMPTY)
    }
}
