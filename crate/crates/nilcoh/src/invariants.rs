//! Ring-level invariants: cup-length with an explicit witness,
//! cohomological symplecticness with an explicit symplectic class, and
//! verification of a user-supplied 2-form.
//!
//! Cup-length is computed by a span recursion. V_1 is spanned by the
//! positive-degree basis classes and V_{k+1} by all products w cup b
//! with w a basis vector of V_k and b a basis class; bilinearity makes
//! each V_k exactly the span of all k-fold products, so the cup-length
//! is the last k with V_k nonzero. Every admitted product remembers
//! its parent, so a nonzero witness tuple falls out by backtracking.
//! A separate brute-force oracle enumerates sorted tuples of basis
//! classes directly; it exists to cross-check the recursion and is
//! capped because its search space grows quickly.
//!
//! Cohomological symplecticness on a 2m-dimensional algebra asks for a
//! degree-2 class omega with omega^m nonzero. Expanding omega over the
//! H^2 basis shows the decision only depends on whether some sorted
//! m-tuple of basis classes has nonzero product (degree-2 classes
//! commute, and in characteristic zero a nonzero multilinear
//! expansion has a nonzero rational point). The witness search then
//! sweeps integer coefficient vectors in {0..m}^b2 by ascending
//! coefficient sum: omega(x)^m has degree at most m in each
//! coefficient, so a nonzero polynomial cannot vanish on that whole
//! grid and the sweep is guaranteed to land on a witness. When b2 is
//! large the grid is preceded by seeded random probing.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::cohomology::{CohClass, CohomologyRing};
use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::linalg::{rat, IncrementalSpan, Rational};

#[derive(Clone, Debug)]
pub struct CupLengthResult {
    pub cup_length: usize,
    /// Basis classes whose product is nonzero, one per factor.
    pub witness: Vec<CohClass>,
    /// The nonzero product of the witness factors.
    pub witness_product: CohClass,
    /// Dimension of the span of k-fold products for k = 1, 2, ...;
    /// strictly positive up to the cup-length, then a final zero.
    pub spans_by_stage: Vec<usize>,
}

struct Admitted {
    class: CohClass,
    /// Index into the previous stage, when this is a k-fold product.
    parent: Option<usize>,
    factor: CohClass,
}

/// Cup-length of the positive-degree part of the ring, with witness.
pub fn cup_length(ring: &CohomologyRing) -> Result<CupLengthResult> {
    let n = ring.dim();
    let basis: Vec<CohClass> = (1..=n).flat_map(|k| ring.basis_classes(k)).collect();
    let mut stages: Vec<Vec<Admitted>> = Vec::new();
    let mut spans_by_stage = Vec::new();
    loop {
        let mut stage: Vec<Admitted> = Vec::new();
        let mut spans: BTreeMap<usize, IncrementalSpan> = BTreeMap::new();
        let mut admit = |class: CohClass, parent: Option<usize>, factor: &CohClass| {
            if spans
                .entry(class.degree)
                .or_insert_with(IncrementalSpan::new)
                .insert(&class.coords)
            {
                stage.push(Admitted {
                    class,
                    parent,
                    factor: factor.clone(),
                });
            }
        };
        match stages.last() {
            None => {
                for b in &basis {
                    admit(b.clone(), None, b);
                }
            }
            Some(prev) => {
                for (pi, w) in prev.iter().enumerate() {
                    for b in &basis {
                        if w.class.degree + b.degree > n {
                            continue;
                        }
                        let p = ring.cup(&w.class, b)?;
                        if p.is_zero() {
                            continue;
                        }
                        admit(p, Some(pi), b);
                    }
                }
            }
        }
        spans_by_stage.push(stage.len());
        if stage.is_empty() {
            break;
        }
        stages.push(stage);
        if stages.len() > n {
            // k-fold products have degree >= k, so stage n+1 is empty;
            // reaching it non-empty means the pruning above is broken.
            return Err(Error::Internal("span recursion failed to terminate".into()));
        }
    }
    let cup_length = stages.len();
    let (witness, witness_product) = match stages.last() {
        None => (Vec::new(), ring.zero_class(0)),
        Some(last) => {
            let mut factors = Vec::with_capacity(cup_length);
            let mut level = stages.len() - 1;
            let mut cursor = &last[0];
            loop {
                factors.push(cursor.factor.clone());
                match cursor.parent {
                    Some(pi) => {
                        level -= 1;
                        cursor = &stages[level][pi];
                    }
                    None => break,
                }
            }
            factors.reverse();
            (factors, last[0].class.clone())
        }
    };
    Ok(CupLengthResult {
        cup_length,
        witness,
        witness_product,
        spans_by_stage,
    })
}

const ORACLE_DEFAULT_CAP: usize = 64;

/// Brute-force cup-length: enumerate sorted tuples (with repetition)
/// of positive-degree basis classes, pruning zero products. Sorting
/// loses nothing because reordering a product only changes its sign,
/// and repetition matters for even-degree classes. Refuses rings whose
/// positive Betti sum exceeds the cap (`NILCOH_ORACLE_CAP` overrides
/// the default of 64).
pub fn cup_length_oracle(ring: &CohomologyRing, max_len: usize) -> Result<usize> {
    let cap = std::env::var("NILCOH_ORACLE_CAP")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(ORACLE_DEFAULT_CAP);
    let n = ring.dim();
    let basis: Vec<CohClass> = (1..=n).flat_map(|k| ring.basis_classes(k)).collect();
    if basis.len() > cap {
        return Err(Error::Unsupported(format!(
            "oracle search over {} basis classes exceeds the cap of {cap}",
            basis.len()
        )));
    }
    let mut best = 0;
    oracle_dfs(ring, &basis, 0, &ring.unit_class(), 0, max_len, &mut best)?;
    Ok(best)
}

fn oracle_dfs(
    ring: &CohomologyRing,
    basis: &[CohClass],
    start: usize,
    current: &CohClass,
    len: usize,
    max_len: usize,
    best: &mut usize,
) -> Result<()> {
    if len > *best {
        *best = len;
    }
    if len >= max_len {
        return Ok(());
    }
    for i in start..basis.len() {
        let p = ring.cup(current, &basis[i])?;
        if p.is_zero() {
            continue;
        }
        oracle_dfs(ring, basis, i, &p, len + 1, max_len, best)?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SymplecticnessResult {
    pub is_cohomologically_symplectic: bool,
    /// A degree-2 class omega with omega^m nonzero, when one exists.
    pub witness: Option<CohClass>,
    /// The nonzero top power omega^m of the witness.
    pub top_power: Option<CohClass>,
}

/// Decide whether some m-fold product from `classes` is nonzero,
/// walking sorted index tuples with repetition and pruning zeros.
pub(crate) fn symplectic_decision_among(
    ring: &CohomologyRing,
    classes: &[CohClass],
    m: usize,
) -> Result<bool> {
    fn dfs(
        ring: &CohomologyRing,
        classes: &[CohClass],
        start: usize,
        current: &CohClass,
        remaining: usize,
    ) -> Result<bool> {
        if remaining == 0 {
            return Ok(true);
        }
        for i in start..classes.len() {
            let p = ring.cup(current, &classes[i])?;
            if p.is_zero() {
                continue;
            }
            if dfs(ring, classes, i, &p, remaining - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    dfs(ring, classes, 0, &ring.unit_class(), m)
}

const RANDOM_WITNESS_ATTEMPTS: usize = 10_000;
const GRID_FIRST_MAX_B2: usize = 12;

/// Decide cohomological symplecticness and produce a witness class.
/// Only even top dimensions are meaningful; odd ones are refused.
pub fn is_cohomologically_symplectic(ring: &CohomologyRing) -> Result<SymplecticnessResult> {
    let n = ring.dim();
    if n % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "symplecticness needs an even dimension, got {n}"
        )));
    }
    let m = n / 2;
    let basis2 = ring.basis_classes(2);
    let negative = SymplecticnessResult {
        is_cohomologically_symplectic: false,
        witness: None,
        top_power: None,
    };
    if basis2.is_empty() {
        return Ok(negative);
    }
    if !symplectic_decision_among(ring, &basis2, m)? {
        return Ok(negative);
    }
    let b2 = basis2.len();
    if b2 > GRID_FIRST_MAX_B2 {
        if let Some(result) = random_witness(ring, &basis2, m)? {
            return Ok(result);
        }
    }
    if let Some(result) = grid_witness(ring, &basis2, m)? {
        return Ok(result);
    }
    // The decision said yes, and the grid covers {0..m}^b2 on which a
    // nonzero polynomial of per-variable degree <= m cannot vanish.
    Err(Error::Internal(
        "witness sweep exhausted despite a positive decision".into(),
    ))
}

fn combine(
    ring: &CohomologyRing,
    basis2: &[CohClass],
    coeffs: &[Rational],
) -> Result<CohClass> {
    let mut omega = ring.zero_class(2);
    for (c, b) in coeffs.iter().zip(basis2) {
        if !c.is_zero() {
            omega = ring.add_classes(&omega, &ring.scale_class(b, c))?;
        }
    }
    Ok(omega)
}

fn witness_from(
    ring: &CohomologyRing,
    omega: CohClass,
    m: usize,
) -> Result<Option<SymplecticnessResult>> {
    if omega.is_zero() {
        return Ok(None);
    }
    let top = ring.class_pow(&omega, m)?;
    if top.is_zero() {
        return Ok(None);
    }
    Ok(Some(SymplecticnessResult {
        is_cohomologically_symplectic: true,
        witness: Some(omega),
        top_power: Some(top),
    }))
}

fn random_witness(
    ring: &CohomologyRing,
    basis2: &[CohClass],
    m: usize,
) -> Result<Option<SymplecticnessResult>> {
    let b2 = basis2.len();
    let bound = (m * b2) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e69_6c63_6f68);
    for _ in 0..RANDOM_WITNESS_ATTEMPTS {
        let coeffs: Vec<Rational> = (0..b2)
            .map(|_| rat(rng.gen_range(-bound..=bound)))
            .collect();
        let omega = combine(ring, basis2, &coeffs)?;
        if let Some(result) = witness_from(ring, omega, m)? {
            return Ok(Some(result));
        }
    }
    Ok(None)
}

fn grid_witness(
    ring: &CohomologyRing,
    basis2: &[CohClass],
    m: usize,
) -> Result<Option<SymplecticnessResult>> {
    let b2 = basis2.len();
    for total in 1..=(m * b2) {
        let mut found = None;
        for_each_composition(total, b2, m, &mut |a: &[usize]| {
            let coeffs: Vec<Rational> = a.iter().map(|&x| rat(x as i64)).collect();
            let omega = combine(ring, basis2, &coeffs)?;
            if let Some(result) = witness_from(ring, omega, m)? {
                found = Some(result);
                return Ok(false);
            }
            Ok(true)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Visit the vectors in {0..=max}^parts summing to `total`, first
/// coordinate descending (lexicographically descending overall). The
/// callback returns false to stop early.
fn for_each_composition(
    total: usize,
    parts: usize,
    max: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn go(
        prefix: &mut Vec<usize>,
        total: usize,
        parts: usize,
        max: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if parts == 0 {
            if total == 0 {
                return visit(prefix);
            }
            return Ok(true);
        }
        if total > max * parts {
            return Ok(true);
        }
        let hi = max.min(total);
        let lo = total.saturating_sub(max * (parts - 1));
        for a in (lo..=hi).rev() {
            prefix.push(a);
            let keep_going = go(prefix, total - a, parts - 1, max, visit)?;
            prefix.pop();
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(&mut Vec::with_capacity(parts), total, parts, max, visit)
}

#[derive(Clone, Debug)]
pub struct ClassVerdict {
    pub closed: bool,
    /// Meaningful only when closed.
    pub exact: bool,
    /// The class of omega^m, when omega is closed.
    pub top_power: Option<CohClass>,
    /// Closed with nonzero top power.
    pub symplectic: bool,
    /// Rendered d(omega) when not closed.
    pub differential: Option<String>,
}

/// Check a user-supplied 2-form: closedness, exactness, and whether
/// its class is symplectic. Even top dimension required.
pub fn verify_class(ring: &CohomologyRing, omega: &ExteriorElement) -> Result<ClassVerdict> {
    let n = ring.dim();
    if n % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "symplectic verification needs an even dimension, got {n}"
        )));
    }
    if !omega.is_zero() && omega.degree() != Some(2) {
        return Err(Error::Input(
            "a symplectic candidate must be homogeneous of degree 2".into(),
        ));
    }
    let m = n / 2;
    let d_omega = ring.complex().apply_d(omega)?;
    if !d_omega.is_zero() {
        return Ok(ClassVerdict {
            closed: false,
            exact: false,
            top_power: None,
            symplectic: false,
            differential: Some(d_omega.to_string()),
        });
    }
    let class = ring.reduce(2, omega)?;
    let exact = class.is_zero();
    let top = ring.class_pow(&class, m)?;
    let symplectic = !top.is_zero();
    Ok(ClassVerdict {
        closed: true,
        exact,
        top_power: Some(top),
        symplectic,
        differential: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ce_complex::CEComplex;
    use crate::linalg::RatMatrix;
    use rand::Rng;

    fn ring_of(a: crate::lie::LieAlgebra) -> CohomologyRing {
        CohomologyRing::new(CEComplex::build(a).unwrap()).unwrap()
    }

    fn check_witness(ring: &CohomologyRing, result: &CupLengthResult) {
        assert_eq!(result.witness.len(), result.cup_length);
        let mut acc = ring.unit_class();
        for f in &result.witness {
            acc = ring.cup(&acc, f).unwrap();
        }
        assert!(!acc.is_zero(), "witness product must be nonzero");
        assert_eq!(acc, result.witness_product);
        // spans positive up to the cup-length, then one final zero
        assert_eq!(result.spans_by_stage.len(), result.cup_length + 1);
        assert!(result.spans_by_stage[..result.cup_length]
            .iter()
            .all(|&d| d > 0));
        assert_eq!(result.spans_by_stage[result.cup_length], 0);
    }

    #[test]
    fn heisenberg3_cup_length() {
        let ring = ring_of(catalog::heisenberg(3).unwrap());
        let result = cup_length(&ring).unwrap();
        assert_eq!(result.cup_length, 2);
        check_witness(&ring, &result);
        assert_eq!(cup_length_oracle(&ring, 3).unwrap(), 2);
    }

    #[test]
    fn kodaira_thurston_cup_length() {
        let ring = ring_of(catalog::kodaira_thurston());
        let result = cup_length(&ring).unwrap();
        assert_eq!(result.cup_length, 3);
        check_witness(&ring, &result);
        assert_eq!(cup_length_oracle(&ring, 4).unwrap(), 3);
    }

    #[test]
    fn torus_cup_length_is_dimension() {
        for n in 1..=5 {
            let ring = ring_of(catalog::torus(n).unwrap());
            let result = cup_length(&ring).unwrap();
            assert_eq!(result.cup_length, n, "torus({n})");
            check_witness(&ring, &result);
        }
    }

    #[test]
    fn heisenberg5_and_sums_cup_length() {
        let h5 = ring_of(catalog::heisenberg(5).unwrap());
        let r = cup_length(&h5).unwrap();
        assert_eq!(r.cup_length, 3);
        check_witness(&h5, &r);

        let sum = ring_of(catalog::lookup("h3+h3").unwrap());
        let r = cup_length(&sum).unwrap();
        assert_eq!(r.cup_length, 4);
        check_witness(&sum, &r);

        let h5r = ring_of(catalog::lookup("h5+r").unwrap());
        let r = cup_length(&h5r).unwrap();
        assert_eq!(r.cup_length, 4);
        check_witness(&h5r, &r);
    }

    #[test]
    fn solv3_cup_length() {
        let ring = ring_of(catalog::solv3());
        let result = cup_length(&ring).unwrap();
        assert_eq!(result.cup_length, 2);
        check_witness(&ring, &result);
        assert_eq!(cup_length_oracle(&ring, 3).unwrap(), 2);
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let ring = ring_of(catalog::torus(7).unwrap());
        // positive Betti sum 2^7 - 1 = 127 > 64
        assert!(matches!(
            cup_length_oracle(&ring, 7),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn torus4_symplectic_with_small_witness() {
        let ring = ring_of(catalog::torus(4).unwrap());
        let result = is_cohomologically_symplectic(&ring).unwrap();
        assert!(result.is_cohomologically_symplectic);
        let omega = result.witness.unwrap();
        assert_eq!(
            ring.class_to_string(&omega),
            "[e1^e2 + e3^e4]",
            "sum-ascending sweep finds the standard form first"
        );
        assert!(!result.top_power.unwrap().is_zero());
    }

    #[test]
    fn kodaira_thurston_symplectic() {
        let ring = ring_of(catalog::kodaira_thurston());
        let result = is_cohomologically_symplectic(&ring).unwrap();
        assert!(result.is_cohomologically_symplectic);
        let omega = result.witness.unwrap();
        assert_eq!(ring.class_to_string(&omega), "[e1^e3 + e2^e4]");
        let top = result.top_power.unwrap();
        assert_eq!(top.coords, vec![rat(-2)]);
    }

    #[test]
    fn h3_plus_h3_symplectic() {
        let ring = ring_of(catalog::lookup("h3+h3").unwrap());
        let result = is_cohomologically_symplectic(&ring).unwrap();
        assert!(result.is_cohomologically_symplectic);
        let omega = result.witness.unwrap();
        let top = ring.class_pow(&omega, 3).unwrap();
        assert!(!top.is_zero());
    }

    #[test]
    fn h5_plus_r_not_symplectic() {
        let ring = ring_of(catalog::lookup("h5+r").unwrap());
        let result = is_cohomologically_symplectic(&ring).unwrap();
        assert!(!result.is_cohomologically_symplectic);
        assert!(result.witness.is_none());
    }

    #[test]
    fn odd_dimension_is_refused() {
        let ring = ring_of(catalog::heisenberg(3).unwrap());
        assert!(matches!(
            is_cohomologically_symplectic(&ring),
            Err(Error::Unsupported(_))
        ));
        let omega = ExteriorElement::generator(3, 1)
            .unwrap()
            .wedge(&ExteriorElement::generator(3, 2).unwrap())
            .unwrap();
        assert!(matches!(
            verify_class(&ring, &omega),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn decision_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (name, expected) in [("kodaira_thurston", true), ("h5+r", false)] {
            let ring = ring_of(catalog::lookup(name).unwrap());
            let m = ring.dim() / 2;
            let basis2 = ring.basis_classes(2);
            let b2 = basis2.len();
            // random invertible remix of the degree-2 basis
            let remixed = loop {
                let cols: Vec<Vec<Rational>> = (0..b2)
                    .map(|_| (0..b2).map(|_| rat(rng.gen_range(-3..=3))).collect())
                    .collect();
                if RatMatrix::from_columns(b2, &cols).rank() < b2 {
                    continue;
                }
                break cols
                    .into_iter()
                    .map(|coords| CohClass { degree: 2, coords })
                    .collect::<Vec<_>>();
            };
            assert_eq!(
                symplectic_decision_among(&ring, &remixed, m).unwrap(),
                expected,
                "{name}"
            );
        }
    }

    #[test]
    fn verify_class_on_kodaira_thurston() {
        let ring = ring_of(catalog::kodaira_thurston());
        let x = |i| ExteriorElement::generator(4, i).unwrap();
        // e1^e4 + e2^e3 squares to 2 e1^e2^e3^e4
        let omega = x(1)
            .wedge(&x(4))
            .unwrap()
            .add(&x(2).wedge(&x(3)).unwrap())
            .unwrap();
        let verdict = verify_class(&ring, &omega).unwrap();
        assert!(verdict.closed && !verdict.exact && verdict.symplectic);
        assert_eq!(verdict.top_power.unwrap().coords, vec![rat(2)]);
        // e1^e2 is exact, so its powers vanish
        let exact = x(1).wedge(&x(2)).unwrap();
        let verdict = verify_class(&ring, &exact).unwrap();
        assert!(verdict.closed && verdict.exact && !verdict.symplectic);
        // e3^e4 is not closed; its differential is reported
        let open = x(3).wedge(&x(4)).unwrap();
        let verdict = verify_class(&ring, &open).unwrap();
        assert!(!verdict.closed && !verdict.symplectic);
        assert_eq!(verdict.differential.as_deref(), Some("e1^e2^e4"));
        // wrong degree is an input error
        assert!(verify_class(&ring, &x(1)).is_err());
    }

    #[test]
    fn composition_enumeration_covers_grid() {
        // all of {0..2}^3 shows up exactly once across totals 0..=6
        let mut seen = Vec::new();
        for total in 0..=6 {
            for_each_composition(total, 3, 2, &mut |a| {
                seen.push(a.to_vec());
                Ok(true)
            })
            .unwrap();
        }
        assert_eq!(seen.len(), 27);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 27);
    }
}
