//! Exact linear algebra over the rationals.
//!
//! Every matrix in this crate comes from an exterior-algebra
//! differential or a span of cocycles, so dimensions stay small
//! (binomial coefficients of the algebra dimension). Row reduction is
//! plain Gauss-Jordan with the first nonzero entry as pivot, which
//! makes every derived object canonical: the reduced form, the pivot
//! columns, the kernel basis (free variables set to 1 in increasing
//! column order), and the least-index solution returned by the span
//! solver are all unique for a given input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar; always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on a zero denominator; callers pass
/// literals.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` with an optional leading minus on `p`.
/// The result is normalized to lowest terms; `q` must be positive.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |message: &str| Error::Parse {
        location: format!("rational literal {s:?}"),
        message: message.to_string(),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str, sign_ok: bool| {
        let digits = t.strip_prefix('-').map(|r| (r, true)).unwrap_or((t, false));
        if digits.1 && !sign_ok {
            return false;
        }
        !digits.0.is_empty() && digits.0.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num_str, true) {
        return Err(err("expected an integer numerator"));
    }
    let numer: BigInt = num_str.parse().map_err(|_| err("bad numerator"))?;
    let denom: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if !valid_int(d, false) {
                return Err(err("expected a positive integer denominator"));
            }
            let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("denominator is zero"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"p"` when the denominator is 1, else `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse rational matrix. Stored entries are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

/// Result of row reduction: the reduced matrix, the pivot columns in
/// increasing order, and the rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    /// Build from dense rows. Panics on ragged input; this is a
    /// construction bug, not a data error.
    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = RatMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Build from a list of columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = RatMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut m = RatMatrix::zero(self.rows, other.cols);
        // Sparse product: walk our entries once per matching right entry.
        for (&(i, k), a) in &self.entries {
            for j in 0..other.cols {
                if let Some(b) = other.entries.get(&(k, j)) {
                    let cur = m.get(i, j) + a * b;
                    m.set(i, j, cur);
                }
            }
        }
        m
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref {
        let mut a = self.to_dense();
        let (pivots, rank) = rref_in_place(&mut a, self.cols);
        Rref {
            matrix: RatMatrix::from_dense(a),
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical kernel basis: one vector per free column of the
    /// reduced form, with the free variable set to 1 and free columns
    /// taken in increasing order. For the zero matrix this is the
    /// standard basis.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let red = self.rref();
        let dense = red.matrix.to_dense();
        let pivot_set: Vec<usize> = red.pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = rat(1);
            for (row, &p) in pivot_set.iter().enumerate() {
                v[p] = -dense[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space: the original columns sitting at the
    /// pivot positions of the reduced form.
    pub fn image_basis(&self) -> Vec<Vec<Rational>> {
        let red = self.rref();
        red.pivots.iter().map(|&j| self.column(j)).collect()
    }
}

/// In-place Gauss-Jordan on dense rows; returns (pivot columns, rank).
/// Pivots are searched in the first `pivot_cols` columns only, but row
/// operations apply to full rows, so trailing columns may carry an
/// augmented block. Pivot choice is the first row with a nonzero
/// entry, searched top to bottom, so the result is deterministic.
fn rref_in_place(a: &mut [Vec<Rational>], pivot_cols: usize) -> (Vec<usize>, usize) {
    let rows = a.len();
    let width = a.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..width {
                    let sub = &a[r][j] * &f;
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, r)
}

/// Repeated-solve helper for a fixed generating set. Construction
/// reduces `[A | I]` once; each solve is then a single matrix-vector
/// product. `solve` returns the least-index solution (free coordinates
/// zero), or `None` when the target is outside the span.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    count: usize,
    rank: usize,
    pivots: Vec<usize>,
    transform: Vec<Vec<Rational>>,
}

impl SpanSolver {
    pub fn new(dim: usize, generators: &[Vec<Rational>]) -> Result<Self> {
        for (idx, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::Input(format!(
                    "generator {idx} has length {} but the ambient dimension is {dim}",
                    g.len()
                )));
            }
        }
        let count = generators.len();
        // Augmented [A | I]; pivots are only searched among A's columns.
        let mut aug: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                let mut row: Vec<Rational> =
                    generators.iter().map(|g| g[i].clone()).collect();
                row.extend((0..dim).map(|j| if i == j { rat(1) } else { Rational::zero() }));
                row
            })
            .collect();
        let (pivots, rank) = rref_in_place(&mut aug, count);
        // Finish eliminating: rref_in_place only normalized within the
        // first `count` columns but row operations applied to whole
        // rows, so the transform block is already consistent.
        let transform = aug
            .iter()
            .map(|row| row[count..].to_vec())
            .collect::<Vec<_>>();
        Ok(SpanSolver {
            dim,
            count,
            rank,
            pivots,
            transform,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn solve(&self, target: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if target.len() != self.dim {
            return Err(Error::Input(format!(
                "target has length {} but the ambient dimension is {}",
                target.len(),
                self.dim
            )));
        }
        let mut t = vec![Rational::zero(); self.dim];
        for (i, row) in self.transform.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() && !target[j].is_zero() {
                    t[i] += x * &target[j];
                }
            }
        }
        if t[self.rank..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.count];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = t[row].clone();
        }
        Ok(Some(x))
    }
}

/// Express `target` in terms of `generators` if possible. Errors on a
/// length mismatch, returns `None` when the target is not in the span,
/// and otherwise the least-index solution read off the reduced form.
pub fn solve_in_span(
    target: &[Rational],
    generators: &[Vec<Rational>],
) -> Result<Option<Vec<Rational>>> {
    let solver = SpanSolver::new(target.len(), generators)?;
    solver.solve(target)
}

/// Intersection of two spans inside `Q^dim`, as a canonical basis.
/// Computed from the kernel of `[A | -B]`: a kernel vector (x, y)
/// satisfies `A x = B y`, and those common values span the
/// intersection.
pub fn intersect_spans(
    dim: usize,
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut columns: Vec<Vec<Rational>> = a.to_vec();
    for col in b {
        columns.push(col.iter().map(|x| -x.clone()).collect());
    }
    let stacked = RatMatrix::from_columns(dim, &columns);
    let mut members = Vec::new();
    for k in stacked.kernel_basis() {
        let mut v = vec![Rational::zero(); dim];
        for (j, col) in a.iter().enumerate() {
            if !k[j].is_zero() {
                for (i, x) in col.iter().enumerate() {
                    v[i] += x * &k[j];
                }
            }
        }
        members.push(v);
    }
    RatMatrix::from_columns(dim, &members).image_basis()
}

/// Incrementally maintained row-echelon span, used for greedy
/// independence filtering. `insert` reduces the candidate against the
/// rows collected so far and admits it exactly when a nonzero residue
/// remains.
#[derive(Clone, Debug, Default)]
pub struct IncrementalSpan {
    rows: Vec<(usize, Vec<Rational>)>, // (leading column, normalized row)
}

impl IncrementalSpan {
    pub fn new() -> Self {
        IncrementalSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.residue(v).iter().all(|x| x.is_zero())
    }

    fn residue(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (lead, row) in &self.rows {
            if !w[*lead].is_zero() {
                let f = w[*lead].clone();
                for (x, r) in w.iter_mut().zip(row.iter()) {
                    *x -= &f * r;
                }
            }
        }
        w
    }

    /// Returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.residue(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].clone();
        for x in w.iter_mut() {
            *x /= &inv;
        }
        self.rows.push((lead, w));
        self.rows.sort_by_key(|(l, _)| *l);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_proportional_rows() {
        let red = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(red.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(red.pivots, vec![0]);
        assert_eq!(red.rank, 1);
    }

    #[test]
    fn rref_swaps_to_identity() {
        let red = m(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!(red.matrix, RatMatrix::identity(2));
        assert_eq!(red.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero_matrix() {
        let red = RatMatrix::zero(3, 2).rref();
        assert!(red.matrix.is_zero());
        assert_eq!(red.rank, 0);
        assert!(red.pivots.is_empty());
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(&[&[2, 4, 1], &[1, 2, 0], &[0, 3, 5]]);
        let once = a.rref();
        let twice = once.matrix.rref();
        assert_eq!(once.matrix, twice.matrix);
        assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn kernel_of_sum_constraint() {
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![v(&[-1, 1])]);
    }

    #[test]
    fn kernel_of_zero_map_is_standard_basis() {
        let k = RatMatrix::zero(2, 3).kernel_basis();
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(RatMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3, 0], &[0, 1, 1, 1], &[1, 3, 4, 1]]);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 4 - a.rank());
        for k in ker {
            assert!(a.mul_vec(&k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn image_basis_returns_original_columns() {
        let a = m(&[&[1], &[2]]);
        assert_eq!(a.image_basis(), vec![v(&[1, 2])]);
        assert!(RatMatrix::zero(2, 2).image_basis().is_empty());
        let b = m(&[&[1, 2, 0], &[2, 4, 1]]);
        // Column 1 is twice column 0, so the pivots are columns 0 and 2.
        assert_eq!(b.image_basis(), vec![v(&[1, 2]), v(&[0, 1])]);
    }

    #[test]
    fn solve_scalar_multiple() {
        let sol = solve_in_span(&v(&[2, 4]), &[v(&[1, 2])]).unwrap();
        assert_eq!(sol, Some(v(&[2])));
    }

    #[test]
    fn solve_outside_span() {
        let sol = solve_in_span(&v(&[1, 0]), &[v(&[0, 1])]).unwrap();
        assert_eq!(sol, None);
    }

    #[test]
    fn solve_rejects_length_mismatch() {
        assert!(solve_in_span(&v(&[1, 0]), &[v(&[1])]).is_err());
    }

    #[test]
    fn solve_prefers_least_index() {
        // Both generators work; the pivot sits on the first.
        let sol = solve_in_span(&v(&[1, 1]), &[v(&[1, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(sol, Some(v(&[1, 0])));
    }

    #[test]
    fn span_solver_matches_one_shot_solve() {
        let gens = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2])];
        let solver = SpanSolver::new(3, &gens).unwrap();
        for target in [v(&[2, 3, 5]), v(&[1, 0, 0]), v(&[0, 0, 0])] {
            assert_eq!(
                solver.solve(&target).unwrap(),
                solve_in_span(&target, &gens).unwrap()
            );
        }
    }

    #[test]
    fn intersect_spans_plane_with_plane() {
        // span{e1, e2} meets span{e2, e3} in span{e2}.
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let meet = intersect_spans(3, &a, &b);
        assert_eq!(meet.len(), 1);
        let sol = solve_in_span(&v(&[0, 1, 0]), &meet).unwrap();
        assert!(sol.is_some());
    }

    #[test]
    fn incremental_span_filters_dependent_vectors() {
        let mut span = IncrementalSpan::new();
        assert!(span.insert(&v(&[1, 2, 0])));
        assert!(!span.insert(&v(&[2, 4, 0])));
        assert!(span.insert(&v(&[0, 0, 1])));
        assert_eq!(span.dim(), 2);
        assert!(span.contains(&v(&[3, 6, 5])));
        assert!(!span.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn rational_parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-7)), "-7");
        assert_eq!(format_rational(&rat(0)), "0");
        for bad in ["", "1/0", "1.5", "a", "1/-2", "--3", "1/ 2", "+3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn rank_plus_nullity_on_assorted_matrices() {
        let cases = vec![
            m(&[&[1, 2, 3], &[4, 5, 6]]),
            m(&[&[0, 0], &[0, 0], &[1, 7]]),
            RatMatrix::identity(5),
            RatMatrix::zero(4, 6),
        ];
        for a in cases {
            assert_eq!(a.rank() + a.kernel_basis().len(), a.cols());
        }
    }
}
