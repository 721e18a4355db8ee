//! Exterior algebra over the rationals on generators x_1, ..., x_n.
//!
//! Elements are sparse: a map from strictly increasing 1-based index
//! tuples to nonzero coefficients. The empty tuple is the scalar unit,
//! so degree-0 elements are rationals. Products of monomials merge the
//! two index tuples and pick up the sign of the permutation that sorts
//! the concatenation; a repeated index kills the term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    ambient: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

/// Merge two strictly increasing tuples. Returns the merged tuple and
/// whether the shuffle sign is negative; `None` when they share an
/// index.
fn merge_with_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the a.len() - i remaining a-entries.
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

impl ExteriorElement {
    pub fn zero(ambient: usize) -> Self {
        ExteriorElement {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ambient: usize, c: Rational) -> Self {
        let mut e = ExteriorElement::zero(ambient);
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    pub fn unit(ambient: usize) -> Self {
        ExteriorElement::scalar(ambient, Rational::one())
    }

    pub fn generator(ambient: usize, i: usize) -> Result<Self> {
        ExteriorElement::monomial(ambient, &[i], Rational::one())
    }

    /// Build `c * x_{i1} ^ ... ^ x_{ik}` from indices in any order; the
    /// sorting sign is folded into the coefficient and a repeated index
    /// yields zero. Indices must lie in 1..=ambient.
    pub fn monomial(ambient: usize, indices: &[usize], c: Rational) -> Result<Self> {
        for &i in indices {
            if i == 0 || i > ambient {
                return Err(Error::Input(format!(
                    "generator index e{i} outside 1..={ambient}"
                )));
            }
        }
        let mut idx = indices.to_vec();
        // Insertion sort, counting swaps for the sign; tuples are tiny.
        let mut swaps = 0usize;
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                idx.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Ok(ExteriorElement::zero(ambient));
        }
        let signed = if swaps % 2 == 1 { -c } else { c };
        let mut e = ExteriorElement::zero(ambient);
        if !signed.is_zero() {
            e.terms.insert(idx, signed);
        }
        Ok(e)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous element; `None` for zero or mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.len();
        if it.all(|t| t.len() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a strictly increasing tuple.
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check_ambient(&self, other: &ExteriorElement) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Input(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, tuple: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                self.terms.insert(tuple, c);
            }
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExteriorElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> ExteriorElement {
        let mut out = ExteriorElement::zero(self.ambient);
        if c.is_zero() {
            return out;
        }
        for (t, x) in &self.terms {
            out.terms.insert(t.clone(), x * c);
        }
        out
    }

    pub fn wedge(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.check_ambient(other)?;
        let mut out = ExteriorElement::zero(self.ambient);
        for (s, cs) in &self.terms {
            for (t, ct) in &other.terms {
                if let Some((merged, negative)) = merge_with_sign(s, t) {
                    let c = cs * ct;
                    out.add_term(merged, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }
}

/// Renders in the expression syntax the parser accepts: terms joined
/// by ` + ` / ` - `, coefficients as `p/q*`, generators as `e3`,
/// products as `e1^e2`. Zero prints as `0`, scalars as bare rationals.
impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (tuple, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if tuple.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", format_rational(&mag))?;
            }
            let mono = tuple
                .iter()
                .map(|i| format!("e{i}"))
                .collect::<Vec<_>>()
                .join("^");
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// All strictly increasing k-tuples from 1..=n in lexicographic order:
/// the canonical basis of the degree-k component.
pub fn basis_monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Advance the combination at the rightmost slot that can grow.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
