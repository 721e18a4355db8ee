//! Univariate rational polynomials, Sturm sequences, and exact
//! characteristic polynomials.
//!
//! `sturm_real_rooted` answers "are all complex roots real" without
//! factoring: it counts real roots of the square-free part p/gcd(p, p')
//! by sign variations of the Sturm chain at -inf and +inf and compares
//! the count with the degree. `rational_roots` implements the rational
//! root theorem on the primitive integer form; it is a best-effort
//! helper for eigenvector searches, so divisor enumeration is capped
//! rather than unbounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

/// Dense polynomial, coefficients in ascending degree order with no
/// trailing zeros; the zero polynomial stores no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }

    /// Exact Euclidean division. Errors on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if divisor.is_zero() {
            return Err(Error::Input("polynomial division by zero".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            if !f.is_zero() {
                quot[k] = f.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let sub = c * &f;
                    rem[k + i] -= sub;
                }
            }
            rem.pop();
        }
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (Euclid); gcd(0, 0) = 0.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("divisor checked nonzero");
            x = y;
            y = r;
        }
        match x.leading() {
            Some(l) if !l.is_one() => {
                let l = l.clone();
                RatPoly::from_coeffs(x.coeffs.iter().map(|c| c / &l).collect())
            }
            _ => x,
        }
    }

    /// p / gcd(p, p'): same roots, all simple. Errors on zero input.
    pub fn square_free_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::Input(
                "square-free part of the zero polynomial".into(),
            ));
        }
        let g = RatPoly::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return Ok(self.clone());
        }
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero(), "gcd must divide exactly");
        Ok(q)
    }
}

fn sign_at_plus_infinity(p: &RatPoly) -> i32 {
    match p.leading() {
        None => 0,
        Some(l) => {
            if l.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}

fn sign_at_minus_infinity(p: &RatPoly) -> i32 {
    let s = sign_at_plus_infinity(p);
    match p.degree() {
        Some(d) if d % 2 == 1 => -s,
        _ => s,
    }
}

fn sign_variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a square-free polynomial, from the
/// Sturm chain evaluated at -inf and +inf.
fn distinct_real_roots(square_free: &RatPoly) -> usize {
    if square_free.degree().map(|d| d == 0).unwrap_or(true) {
        return 0;
    }
    let mut chain = vec![square_free.clone(), square_free.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("divisor checked nonzero");
        chain.push(r.neg());
    }
    chain.pop();
    let at_minus: Vec<i32> = chain.iter().map(sign_at_minus_infinity).collect();
    let at_plus: Vec<i32> = chain.iter().map(sign_at_plus_infinity).collect();
    sign_variations(&at_minus) - sign_variations(&at_plus)
}

/// True when every complex root of `p` is real. Multiplicities do not
/// matter: the test runs on the square-free part and compares the real
/// root count with its degree. Errors on the zero polynomial; a
/// nonzero constant is vacuously real-rooted.
pub fn sturm_real_rooted(p: &RatPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::Input(
            "real-rootedness of the zero polynomial is undefined".into(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(true);
    }
    let sf = p.square_free_part()?;
    let deg = sf.degree().expect("nonzero by construction");
    Ok(distinct_real_roots(&sf) == deg)
}

/// Divisors of a positive integer, newest-first not required; `None`
/// when trial division would exceed the step cap (callers treat that
/// as "no candidates", which keeps downstream searches best-effort).
fn divisors_capped(n: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
    debug_assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &d * &d <= *n {
        steps += 1;
        if steps > cap {
            return None;
        }
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Distinct rational roots of a nonzero polynomial, sorted ascending.
/// Uses the rational root theorem on the primitive integer form.
/// Divisor enumeration is capped; in the (unrealistic for this crate)
/// case of huge coefficients the result may miss roots, which callers
/// must treat as a failed search, never as a proof of absence.
pub fn rational_roots(p: &RatPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Input(
            "rational roots of the zero polynomial are undefined".into(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let mut coeffs = p.coeffs.clone();
    // Factor out t^v.
    let shift = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    if shift > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..shift);
    }
    if coeffs.len() <= 1 {
        roots.sort();
        return Ok(roots);
    }
    // Clear denominators to a primitive integer polynomial.
    let mut denom_lcm = BigInt::one();
    for c in &coeffs {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().unwrap().abs();
    let an = ints.last().unwrap().abs();
    let reduced = RatPoly::from_coeffs(coeffs);
    let cap = 1_000_000;
    let (Some(ps), Some(qs)) = (divisors_capped(&a0, cap), divisors_capped(&an, cap)) else {
        return Ok(roots); // best effort: coefficients too large to enumerate
    };
    for q in &qs {
        for p_num in &ps {
            for sign in [1, -1] {
                let cand = Rational::new(p_num * BigInt::from(sign), q.clone());
                if reduced.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Characteristic polynomial det(t I - A) by the Faddeev-LeVerrier
/// recurrence, exact over the rationals.
pub fn char_poly(a: &[Vec<Rational>]) -> Result<RatPoly> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Input(format!(
                "characteristic polynomial needs a square matrix; row {i} has length {}",
                row.len()
            )));
        }
    }
    if n == 0 {
        return Ok(RatPoly::constant(rat(1)));
    }
    let trace = |m: &Vec<Vec<Rational>>| -> Rational {
        (0..n).map(|i| m[i][i].clone()).sum()
    };
    let mat_mul = |x: &Vec<Vec<Rational>>, y: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !y[k][j].is_zero() {
                        out[i][j] += &x[i][k] * &y[k][j];
                    }
                }
            }
        }
        out
    };
    let a_owned: Vec<Vec<Rational>> = a.to_vec();
    let mut m = a_owned.clone();
    let mut cs = vec![-trace(&m)];
    for k in 2..=n {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[i][i] += cs.last().unwrap();
        }
        m = mat_mul(&a_owned, &shifted);
        cs.push(-trace(&m) / rat(k as i64));
    }
    // coefficients ascending: c_n, c_{n-1}, ..., c_1, 1
    let mut coeffs: Vec<Rational> = cs.into_iter().rev().collect();
    coeffs.push(rat(1));
    Ok(RatPoly::from_coeffs(coeffs))
}
