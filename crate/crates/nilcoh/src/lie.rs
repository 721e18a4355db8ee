//! Finite-dimensional Lie algebras over the rationals, presented by
//! structure constants [e_i, e_j] = sum_k c_ij^k e_k on a fixed basis.
//!
//! Constants are stored for i < j only; input with i > j is folded in
//! by antisymmetry and a nonzero constant on i = j is rejected.
//! `validate` checks the Jacobi identity on basis triples, which is
//! exactly the condition for the Chevalley-Eilenberg differential to
//! square to zero.
//!
//! `classify` reports nilpotency and solvability through the lower
//! central and derived series, whether every ad e_i has a real
//! spectrum (a Sturm test on the characteristic polynomial), and tries
//! to certify complete solvability by exhibiting a full flag of ideals
//! 0 < I_1 < ... < I_n with dim I_k = k. The flag search recursively
//! peels off one-dimensional ideals: a vector spans one exactly when
//! it is a common eigenvector of all ad e_i, so the search backtracks
//! over rational eigenvalues of each ad e_i and intersects eigenspaces.
//! Over the rationals the search is complete for rational flags; when
//! it fails the certificate is simply reported as not found.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{
    format_rational, intersect_spans, rat, RatMatrix, Rational, SpanSolver,
};
use crate::poly::{char_poly, rational_roots, sturm_real_rooted};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    // key (i, j, k) with i < j, all 1-based; values never zero
    brackets: BTreeMap<(usize, usize, usize), Rational>,
}

impl LieAlgebra {
    /// Fold raw structure constants into canonical form. Entries with
    /// i > j are negated onto (j, i); repeated keys accumulate; zero
    /// accumulations are dropped. A nonzero constant on i = j or an
    /// index outside 1..=dim is an input error, as is dim = 0.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        raw: impl IntoIterator<Item = ((usize, usize, usize), Rational)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("algebra dimension must be at least 1".into()));
        }
        let mut brackets: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for ((i, j, k), c) in raw {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(Error::Input(format!(
                        "bracket index {idx} outside 1..={dim}"
                    )));
                }
            }
            if c.is_zero() {
                continue;
            }
            if i == j {
                return Err(Error::Input(format!(
                    "nonzero constant on [e{i}, e{i}] violates antisymmetry"
                )));
            }
            let (key, val) = if i < j {
                ((i, j, k), c)
            } else {
                ((j, i, k), -c)
            };
            let slot = brackets.entry(key).or_insert_with(Rational::zero);
            *slot += val;
            if slot.is_zero() {
                brackets.remove(&key);
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            brackets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.brackets.iter()
    }

    /// c_ij^k with the sign fixed by antisymmetry; zero when absent.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        if i < j {
            self.brackets
                .get(&(i, j, k))
                .cloned()
                .unwrap_or_else(Rational::zero)
        } else if i > j {
            -self.structure_constant(j, i, k)
        } else {
            Rational::zero()
        }
    }

    /// [e_i, e_j] as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<Vec<Rational>> {
        for idx in [i, j] {
            if idx == 0 || idx > self.dim {
                return Err(Error::Input(format!(
                    "basis index {idx} outside 1..={}",
                    self.dim
                )));
            }
        }
        let mut out = vec![Rational::zero(); self.dim];
        let (a, b, flip) = if i < j {
            (i, j, false)
        } else if i > j {
            (j, i, true)
        } else {
            return Ok(out);
        };
        for (&(bi, bj, bk), c) in self.brackets.range((a, b, 0)..=(a, b, self.dim)) {
            debug_assert!(bi == a && bj == b);
            out[bk - 1] = if flip { -c.clone() } else { c.clone() };
        }
        Ok(out)
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::Input(format!(
                "bracket arguments must have length {}",
                self.dim
            )));
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j, k), c) in &self.brackets {
            // coefficient of [e_i, e_j] in [u, v] is u_i v_j - u_j v_i
            let f = &u[i - 1] * &v[j - 1] - &u[j - 1] * &v[i - 1];
            if !f.is_zero() {
                out[k - 1] += c * &f;
            }
        }
        Ok(out)
    }

    /// Jacobi identity on all basis triples i < j < k; the first
    /// violation is reported with its cyclic-sum defect.
    pub fn validate(&self) -> Result<()> {
        let basis: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); self.dim];
                v[i] = rat(1);
                v
            })
            .collect();
        for i in 1..=self.dim {
            for j in (i + 1)..=self.dim {
                for k in (j + 1)..=self.dim {
                    let ij = self.bracket_basis(i, j)?;
                    let jk = self.bracket_basis(j, k)?;
                    let ki = self.bracket_basis(k, i)?;
                    let mut defect = self.bracket(&ij, &basis[k - 1])?;
                    for (d, x) in defect
                        .iter_mut()
                        .zip(self.bracket(&jk, &basis[i - 1])?.into_iter())
                    {
                        *d += x;
                    }
                    for (d, x) in defect
                        .iter_mut()
                        .zip(self.bracket(&ki, &basis[j - 1])?.into_iter())
                    {
                        *d += x;
                    }
                    if defect.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Jacobi {
                            i,
                            j,
                            k,
                            defect: format_vector(&defect),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of ad e_i; column j holds [e_i, e_j].
    pub fn ad_matrix(&self, i: usize) -> Result<Vec<Vec<Rational>>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for j in 1..=self.dim {
            let col = self.bracket_basis(i, j)?;
            for (r, x) in col.into_iter().enumerate() {
                m[r][j - 1] = x;
            }
        }
        Ok(m)
    }

    /// Span of [A, B] for two subspaces given by spanning vectors.
    fn bracket_span(
        &self,
        a: &[Vec<Rational>],
        b: &[Vec<Rational>],
    ) -> Result<Vec<Vec<Rational>>> {
        let mut products = Vec::new();
        for u in a {
            for v in b {
                let w = self.bracket(u, v)?;
                if w.iter().any(|x| !x.is_zero()) {
                    products.push(w);
                }
            }
        }
        if products.is_empty() {
            return Ok(Vec::new());
        }
        Ok(RatMatrix::from_columns(self.dim, &products).image_basis())
    }

    fn standard_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); self.dim];
                v[i] = rat(1);
                v
            })
            .collect()
    }

    /// Dimensions of g = g_1 >= [g, g_1] >= [g, g_2] >= ..., recorded
    /// until the value repeats or reaches zero, including that final
    /// value. Nilpotent iff the last entry is 0.
    pub fn lower_central_series(&self) -> Result<Vec<usize>> {
        let full = self.standard_basis();
        let mut dims = vec![self.dim];
        let mut current = full.clone();
        loop {
            let next = self.bracket_span(&full, &current)?;
            let d = next.len();
            dims.push(d);
            if d == 0 || d == dims[dims.len() - 2] {
                return Ok(dims);
            }
            current = next;
        }
    }

    /// Dimensions of g >= [g, g] >= [[g, g], [g, g]] >= ..., with the
    /// same stopping rule as the lower central series.
    pub fn derived_series(&self) -> Result<Vec<usize>> {
        let mut dims = vec![self.dim];
        let mut current = self.standard_basis();
        loop {
            let next = self.bracket_span(&current, &current)?;
            let d = next.len();
            dims.push(d);
            if d == 0 || d == dims[dims.len() - 2] {
                return Ok(dims);
            }
            current = next;
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(*self.lower_central_series()?.last().unwrap() == 0)
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(*self.derived_series()?.last().unwrap() == 0)
    }

    /// Direct sum: the summands commute, the second one's indices are
    /// shifted up by dim(self).
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim;
        let mut brackets: Vec<((usize, usize, usize), Rational)> = self
            .brackets
            .iter()
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        for (&(i, j, k), c) in &other.brackets {
            brackets.push(((i + shift, j + shift, k + shift), c.clone()));
        }
        LieAlgebra::new(
            format!("{}+{}", self.name, other.name),
            self.dim + other.dim,
            brackets,
        )
        .expect("direct sum of valid presentations is valid")
    }

    /// Full classification; validates first.
    pub fn classify(&self) -> Result<ClassificationReport> {
        self.validate()?;
        let lower_central_series = self.lower_central_series()?;
        let derived_series = self.derived_series()?;
        let is_nilpotent = *lower_central_series.last().unwrap() == 0;
        let is_solvable = *derived_series.last().unwrap() == 0;
        let mut real_spectrum_on_basis = true;
        for i in 1..=self.dim {
            let p = char_poly(&self.ad_matrix(i)?)?;
            if !sturm_real_rooted(&p)? {
                real_spectrum_on_basis = false;
                break;
            }
        }
        let completely_solvable = if is_solvable {
            self.find_ideal_flag()?
        } else {
            None
        };
        Ok(ClassificationReport {
            is_abelian: self.is_abelian(),
            is_nilpotent,
            is_solvable,
            lower_central_series,
            derived_series,
            real_spectrum_on_basis,
            completely_solvable,
        })
    }

    /// Quotient by the line spanned by `v` (v normalized so its first
    /// nonzero coordinate, at `pivot`, is 1). The quotient basis is
    /// the image of the standard vectors away from `pivot`.
    fn quotient_by_line(&self, v: &[Rational], pivot: usize) -> Result<LieAlgebra> {
        let keep: Vec<usize> = (0..self.dim).filter(|&q| q != pivot).collect();
        let project = |w: &[Rational]| -> Vec<Rational> {
            // subtract the v-component so coordinate `pivot` vanishes
            let f = w[pivot].clone();
            keep.iter()
                .map(|&q| &w[q] - &f * &v[q])
                .collect()
        };
        let mut raw = Vec::new();
        for (a_pos, &qa) in keep.iter().enumerate() {
            for (b_pos, &qb) in keep.iter().enumerate().skip(a_pos + 1) {
                let w = self.bracket_basis(qa + 1, qb + 1)?;
                let img = project(&w);
                for (k_pos, c) in img.into_iter().enumerate() {
                    if !c.is_zero() {
                        raw.push(((a_pos + 1, b_pos + 1, k_pos + 1), c));
                    }
                }
            }
        }
        LieAlgebra::new(format!("{}/line", self.name), self.dim - 1, raw)
    }

    /// Search for a full flag of ideals. Returns the flag as vectors
    /// v_1, ..., v_n with I_k = span(v_1..v_k), or None.
    fn find_ideal_flag(&self) -> Result<Option<Vec<Vec<Rational>>>> {
        if self.dim == 1 {
            return Ok(Some(self.standard_basis()));
        }
        // Find a common eigenvector of all ad e_i by backtracking over
        // rational eigenvalues, shrinking the candidate subspace.
        let mut ads = Vec::new();
        for i in 1..=self.dim {
            ads.push(self.ad_matrix(i)?);
        }
        let line = match self.common_eigenvector(&ads, self.standard_basis(), 0)? {
            Some(v) => v,
            None => return Ok(None),
        };
        // Normalize on the first nonzero coordinate.
        let pivot = line
            .iter()
            .position(|x| !x.is_zero())
            .expect("eigenvector is nonzero");
        let scale = line[pivot].clone();
        let v: Vec<Rational> = line.iter().map(|x| x / &scale).collect();
        let quotient = self.quotient_by_line(&v, pivot)?;
        let Some(qflag) = quotient.find_ideal_flag()? else {
            return Ok(None);
        };
        let keep: Vec<usize> = (0..self.dim).filter(|&q| q != pivot).collect();
        let mut flag = vec![v];
        for w in qflag {
            let mut lift = vec![Rational::zero(); self.dim];
            for (pos, &q) in keep.iter().enumerate() {
                lift[q] = w[pos].clone();
            }
            flag.push(lift);
        }
        Ok(Some(flag))
    }

    fn common_eigenvector(
        &self,
        ads: &[Vec<Vec<Rational>>],
        candidates: Vec<Vec<Rational>>,
        next: usize,
    ) -> Result<Option<Vec<Rational>>> {
        if candidates.is_empty() {
            return Ok(None);
        }
        if next == ads.len() {
            return Ok(Some(candidates[0].clone()));
        }
        let ad = &ads[next];
        let poly = char_poly(ad)?;
        for lambda in rational_roots(&poly)? {
            // kernel of (ad - lambda I)
            let mut shifted = ad.clone();
            for (r, row) in shifted.iter_mut().enumerate() {
                row[r] -= &lambda;
            }
            let eigen = RatMatrix::from_dense(shifted).kernel_basis();
            if eigen.is_empty() {
                continue;
            }
            let meet = intersect_spans(self.dim, &candidates, &eigen);
            if meet.is_empty() {
                continue;
            }
            if let Some(v) = self.common_eigenvector(ads, meet, next + 1)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Check that span(flag[0..k]) is an ideal for every k and that the
    /// flag vectors are independent. Used to double-check certificates.
    pub fn verify_ideal_flag(&self, flag: &[Vec<Rational>]) -> Result<bool> {
        if flag.len() != self.dim {
            return Ok(false);
        }
        if RatMatrix::from_columns(self.dim, flag).rank() != self.dim {
            return Ok(false);
        }
        for k in 1..=self.dim {
            let members = &flag[..k];
            let solver = SpanSolver::new(self.dim, members)?;
            for i in 1..=self.dim {
                for u in members {
                    let mut ei = vec![Rational::zero(); self.dim];
                    ei[i - 1] = rat(1);
                    let w = self.bracket(&ei, u)?;
                    if solver.solve(&w)?.is_none() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn format_vector(v: &[Rational]) -> String {
    let inner = v
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ");
    format!("({inner})")
}

/// Serializes flag vectors as strings of rationals for report output.
fn serialize_flag<S: Serializer>(
    flag: &Option<Vec<Vec<Rational>>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match flag {
        None => s.serialize_none(),
        Some(vs) => {
            let mut seq = s.serialize_seq(Some(vs.len()))?;
            for v in vs {
                let rendered: Vec<String> = v.iter().map(format_rational).collect();
                seq.serialize_element(&rendered)?;
            }
            seq.end()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub lower_central_series: Vec<usize>,
    pub derived_series: Vec<usize>,
    /// Every ad e_i has all-real characteristic roots (Sturm test).
    pub real_spectrum_on_basis: bool,
    /// Full flag of ideals certifying complete solvability, when the
    /// backtracking search over rational common eigenvectors found one.
    /// `None` means not found, not a disproof.
    #[serde(serialize_with = "serialize_flag")]
    pub completely_solvable: Option<Vec<Vec<Rational>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn r(n: i64) -> Rational {
        rat(n)
    }

    #[test]
    fn folds_antisymmetric_input() {
        // [e2, e1] = -e3 is the same datum as [e1, e2] = e3.
        let a = LieAlgebra::new("h", 3, vec![((2, 1, 3), r(-1))]).unwrap();
        assert_eq!(a.structure_constant(1, 2, 3), r(1));
        assert_eq!(a.structure_constant(2, 1, 3), r(-1));
        let b = LieAlgebra::new("h", 3, vec![((1, 2, 3), r(1))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(LieAlgebra::new("z", 0, vec![]).is_err());
        assert!(LieAlgebra::new("d", 2, vec![((1, 1, 2), r(1))]).is_err());
        assert!(LieAlgebra::new("d", 2, vec![((1, 3, 2), r(1))]).is_err());
        assert!(LieAlgebra::new("d", 2, vec![((0, 1, 2), r(1))]).is_err());
        // zero constants and cancelling duplicates are dropped
        let a = LieAlgebra::new(
            "ok",
            2,
            vec![((1, 2, 1), r(1)), ((2, 1, 1), r(1)), ((1, 2, 2), r(0))],
        )
        .unwrap();
        assert!(a.is_abelian());
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric() {
        let a = catalog::heisenberg(5).unwrap();
        let u: Vec<Rational> = vec![r(1), r(2), r(0), r(-1), r(3)];
        let v: Vec<Rational> = vec![r(0), r(1), r(4), r(1), r(0)];
        let uv = a.bracket(&u, &v).unwrap();
        let vu = a.bracket(&v, &u).unwrap();
        for (x, y) in uv.iter().zip(vu.iter()) {
            assert_eq!(*x, -y.clone());
        }
        // [u, v] for h5: c12 contributes u1 v2 - u2 v1 = 1, c34
        // contributes u3 v4 - u4 v3 = 4; total coefficient 5 on e5.
        assert_eq!(uv, vec![r(0), r(0), r(0), r(0), r(5)]);
    }

    #[test]
    fn validate_accepts_catalog_and_catches_violations() {
        for a in catalog::entries() {
            a.validate().unwrap_or_else(|e| panic!("{}: {e}", a.name()));
        }
        // [e1, e5] = e1 on top of heisenberg(5) breaks Jacobi on (1, 2, 5).
        let mut raw: Vec<((usize, usize, usize), Rational)> = vec![
            ((1, 2, 5), r(1)),
            ((3, 4, 5), r(1)),
            ((1, 5, 1), r(1)),
        ];
        let bad = LieAlgebra::new("bad", 5, raw.drain(..)).unwrap();
        match bad.validate() {
            Err(Error::Jacobi { i, j, k, .. }) => assert_eq!((i, j, k), (1, 2, 5)),
            other => panic!("expected a jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn series_of_reference_algebras() {
        let h3 = catalog::heisenberg(3).unwrap();
        assert_eq!(h3.lower_central_series().unwrap(), vec![3, 1, 0]);
        assert_eq!(h3.derived_series().unwrap(), vec![3, 1, 0]);
        assert!(h3.is_nilpotent().unwrap());

        let t4 = catalog::torus(4).unwrap();
        assert_eq!(t4.lower_central_series().unwrap(), vec![4, 0]);

        // [e1, e2] = e2: lower central series stabilizes at 1.
        let aff = LieAlgebra::new("aff", 2, vec![((1, 2, 2), r(1))]).unwrap();
        assert_eq!(aff.lower_central_series().unwrap(), vec![2, 1, 1]);
        assert_eq!(aff.derived_series().unwrap(), vec![2, 1, 0]);
        assert!(!aff.is_nilpotent().unwrap());
        assert!(aff.is_solvable().unwrap());

        let kt = catalog::kodaira_thurston();
        assert_eq!(kt.lower_central_series().unwrap(), vec![4, 1, 0]);
    }

    #[test]
    fn classify_heisenberg() {
        let report = catalog::heisenberg(3).unwrap().classify().unwrap();
        assert!(report.is_nilpotent && report.is_solvable && !report.is_abelian);
        assert!(report.real_spectrum_on_basis);
        let flag = report.completely_solvable.expect("nilpotent flag exists");
        assert!(catalog::heisenberg(3)
            .unwrap()
            .verify_ideal_flag(&flag)
            .unwrap());
        // The first flag member must be central: here span{e3}.
        assert_eq!(flag[0], vec![r(0), r(0), r(1)]);
    }

    #[test]
    fn classify_solvable_non_nilpotent() {
        let s = catalog::solv3();
        let report = s.classify().unwrap();
        assert!(!report.is_nilpotent);
        assert!(report.is_solvable);
        assert!(report.real_spectrum_on_basis);
        let flag = report.completely_solvable.expect("flag for solv3");
        assert!(s.verify_ideal_flag(&flag).unwrap());
    }

    #[test]
    fn spectrum_detects_rotation() {
        // [e1, e2] = e3, [e1, e3] = -e2: ad e1 rotates the e2 e3 plane,
        // char poly t(t^2 + 1), not real-rooted. Jacobi holds (checked),
        // so classify runs and reports the complex spectrum.
        let rot = LieAlgebra::new(
            "rot",
            3,
            vec![((1, 2, 3), r(1)), ((1, 3, 2), r(-1))],
        )
        .unwrap();
        rot.validate().unwrap();
        let report = rot.classify().unwrap();
        assert!(!report.real_spectrum_on_basis);
        assert!(report.completely_solvable.is_none());
    }

    #[test]
    fn direct_sum_shifts_and_classifies() {
        let h3 = catalog::heisenberg(3).unwrap();
        let t1 = catalog::torus(1).unwrap();
        let sum = h3.direct_sum(&t1);
        assert_eq!(sum.dim(), 4);
        assert_eq!(sum.structure_constant(1, 2, 3), r(1));
        assert!(sum.classify().unwrap().is_nilpotent);

        let s = catalog::solv3();
        let mixed = h3.direct_sum(&s);
        let report = mixed.classify().unwrap();
        assert!(!report.is_nilpotent);
        assert!(report.is_solvable);
    }

    #[test]
    fn ad_matrix_of_solv3() {
        let s = catalog::solv3();
        // ad e3: e1 -> [e3, e1] = -e1, e2 -> [e3, e2] = e2.
        let ad3 = s.ad_matrix(3).unwrap();
        assert_eq!(ad3[0][0], r(-1));
        assert_eq!(ad3[1][1], r(1));
        assert_eq!(ad3[2][2], r(0));
    }
}
