//! Closed-orbit lower bounds for magnetic flows on symplectic
//! nilmanifolds and solvmanifolds, assembled as explicit derivation
//! chains. Every numeric step names the rule that produced its bound
//! from earlier steps, and `verify_steps` replays the arithmetic, so a
//! report cannot silently drift from its own justification. Citations
//! are bare anchor labels of the classical results being invoked.
//!
//! The category convention throughout is cat(point) = 0.

use serde::Serialize;

use crate::ce_complex::CEComplex;
use crate::cohomology::CohomologyRing;
use crate::error::{Error, Result};
use crate::invariants::{cup_length, is_cohomologically_symplectic};
use crate::lie::LieAlgebra;

/// How a step's bound is produced from earlier steps (0-based indices
/// into the chain).
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum StepRule {
    /// An assumption or input quantity; no references.
    Given,
    /// Qualitative consequence of an earlier step; carries no bound.
    Implies { from: usize },
    /// Bound transferred unchanged to a new quantity.
    Carry { of: usize },
    /// Bound multiplied by a constant factor.
    Scale { of: usize, factor: i64 },
    /// Bound is the sum of two earlier bounds.
    Sum { of: [usize; 2] },
    /// Bound is an earlier bound plus a constant.
    AddConst { of: usize, add: i64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationStep {
    pub statement: String,
    pub citation: String,
    #[serde(flatten)]
    pub rule: StepRule,
    pub bound: Option<i64>,
}

/// Citation anchors used by the derivation chains.
pub mod citations {
    /// Cup-length is additive over products of spaces.
    pub const CUP_LENGTH_OF_PRODUCT: &str = "Lemma 2.1(ii)";
    /// A symplectic witness has nonzero m-th cup power.
    pub const SYMPLECTIC_POWER: &str = "Thm 1.6(i)";
    /// A closed symplectically aspherical 2m-manifold has category 2m.
    pub const CAT_OF_ASPHERICAL_SYMPLECTIC: &str = "Thm 1.6(ii)";
    /// Cup-length bounds category from below.
    pub const CUP_LENGTH_BOUNDS_CAT: &str = "Thm 1.6(iv)";
    /// Closed orbits on a level are at least category-type data plus one.
    pub const ORBITS_FROM_CATEGORY: &str = "Thm 2.3";
    /// Structure of the regular energy level as a fibration.
    pub const LEVEL_FIBRATION: &str = "Thm 3.2(4)";
    /// Category of a fibration total space dominates base plus fiber.
    pub const CAT_FIBRATION_SUM: &str = "(3.3)";
    /// Symplectic weight dominates the category-type bound.
    pub const SWGT_FROM_CATEGORY: &str = "Thm 3.4";
    /// Rational nilpotent algebras give lattices and aspherical quotients.
    pub const NILPOTENT_LATTICE: &str = "Prop 4.2";
    /// Aspherical quotients kill pi_2, hence symplectic asphericity.
    pub const PI2_VANISHES: &str = "Prop 4.3";
    /// Certified completely solvable case of the lattice quotient.
    pub const SOLVABLE_LATTICE: &str = "Prop 4.4";
    /// Category of a closed aspherical manifold equals its dimension.
    pub const EILENBERG_GANEA: &str = "[EG]";
    /// Input data of the computation at hand.
    pub const HYPOTHESIS: &str = "hypothesis";
}

/// Replay a chain: every reference must point backwards and every
/// bound must equal what its rule computes.
pub fn verify_steps(steps: &[DerivationStep]) -> Result<()> {
    let bound_of = |steps: &[DerivationStep], of: usize, at: usize| -> Result<i64> {
        steps[of].bound.ok_or_else(|| {
            Error::Internal(format!("step {at} references step {of} which has no bound"))
        })
    };
    for (i, step) in steps.iter().enumerate() {
        let refs: Vec<usize> = match &step.rule {
            StepRule::Given => vec![],
            StepRule::Implies { from } => vec![*from],
            StepRule::Carry { of } | StepRule::Scale { of, .. } | StepRule::AddConst { of, .. } => {
                vec![*of]
            }
            StepRule::Sum { of } => of.to_vec(),
        };
        for &r in &refs {
            if r >= i {
                return Err(Error::Internal(format!(
                    "step {i} references step {r}, which is not earlier"
                )));
            }
        }
        let expected = match &step.rule {
            StepRule::Given => continue,
            StepRule::Implies { .. } => {
                if step.bound.is_some() {
                    return Err(Error::Internal(format!(
                        "step {i} is qualitative but carries a bound"
                    )));
                }
                continue;
            }
            StepRule::Carry { of } => bound_of(steps, *of, i)?,
            StepRule::Scale { of, factor } => factor * bound_of(steps, *of, i)?,
            StepRule::Sum { of } => bound_of(steps, of[0], i)? + bound_of(steps, of[1], i)?,
            StepRule::AddConst { of, add } => bound_of(steps, *of, i)? + add,
        };
        if step.bound != Some(expected) {
            return Err(Error::Internal(format!(
                "step {i} claims bound {:?} but its rule gives {expected}",
                step.bound
            )));
        }
    }
    Ok(())
}

fn step(
    statement: impl Into<String>,
    citation: &str,
    rule: StepRule,
    bound: Option<i64>,
) -> DerivationStep {
    DerivationStep {
        statement: statement.into(),
        citation: citation.to_string(),
        rule,
        bound,
    }
}

/// Weight chain for the total space of a fibration with an
/// n-dimensional aspherical fiber over a symplectically aspherical
/// 2m-dimensional base: the category-type invariant is at least
/// 2m + n. Returns the bound and its six-step derivation.
pub fn swgt_chain(m: usize, fiber_n: usize) -> Result<(i64, Vec<DerivationStep>)> {
    if m == 0 {
        return Err(Error::Input("base dimension 2m needs m >= 1".into()));
    }
    let m_i = m as i64;
    let n_i = fiber_n as i64;
    let steps = vec![
        step(
            format!(
                "the base is a closed symplectically aspherical 2m-manifold, m = {m}, \
                 and the witness class has nonzero m-th cup power"
            ),
            citations::SYMPLECTIC_POWER,
            StepRule::Given,
            Some(m_i),
        ),
        step(
            format!("the base has Lusternik-Schnirelmann category 2m = {}", 2 * m_i),
            citations::CAT_OF_ASPHERICAL_SYMPLECTIC,
            StepRule::Scale { of: 0, factor: 2 },
            Some(2 * m_i),
        ),
        step(
            format!(
                "the fiber is a closed aspherical {fiber_n}-manifold, \
                 of category {fiber_n} (cat(point) = 0)"
            ),
            citations::EILENBERG_GANEA,
            StepRule::Given,
            Some(n_i),
        ),
        step(
            "the regular level of the flow fibers over the base with that fiber",
            citations::LEVEL_FIBRATION,
            StepRule::Implies { from: 1 },
            None,
        ),
        step(
            format!(
                "the category of the total space is at least cat(base) + cat(fiber) = {}",
                2 * m_i + n_i
            ),
            citations::CAT_FIBRATION_SUM,
            StepRule::Sum { of: [1, 2] },
            Some(2 * m_i + n_i),
        ),
        step(
            format!(
                "the symplectic weight invariant of the flow is at least {}",
                2 * m_i + n_i
            ),
            citations::SWGT_FROM_CATEGORY,
            StepRule::Carry { of: 4 },
            Some(2 * m_i + n_i),
        ),
    ];
    verify_steps(&steps)?;
    Ok((2 * m_i + n_i, steps))
}

/// Which of the two orbit bounds wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongerBound {
    Kerman,
    Aspherical,
    Equal,
}

#[derive(Clone, Debug)]
pub struct OrbitBounds {
    /// Closed-orbit count is at least m + cup-length.
    pub kerman: i64,
    pub kerman_steps: Vec<DerivationStep>,
    /// In the symplectically aspherical case, at least 3m.
    pub aspherical: Option<i64>,
    pub aspherical_steps: Vec<DerivationStep>,
    pub stronger: StrongerBound,
}

/// Lower bounds on closed orbits of the magnetic flow on almost every
/// energy level over a symplectic 2m-dimensional base of cup-length
/// cl. The aspherical chain is produced only when the base is
/// symplectically aspherical.
pub fn orbit_bounds(m: usize, cl: usize, aspherical: bool) -> Result<OrbitBounds> {
    if m == 0 {
        return Err(Error::Input("base dimension 2m needs m >= 1".into()));
    }
    if cl < 1 || cl > 2 * m {
        return Err(Error::Input(format!(
            "cup-length {cl} is impossible on a closed 2m-manifold with m = {m}"
        )));
    }
    let m_i = m as i64;
    let cl_i = cl as i64;
    let kerman_steps = vec![
        step(
            format!("the base has cup-length {cl}"),
            citations::CUP_LENGTH_BOUNDS_CAT,
            StepRule::Given,
            Some(cl_i),
        ),
        step(
            format!(
                "the regular level carries an aspherical torus factor of dimension m - 1 = {}",
                m_i - 1
            ),
            citations::LEVEL_FIBRATION,
            StepRule::Given,
            Some(m_i - 1),
        ),
        step(
            format!(
                "cup-length of the level is at least {} + {} = {}",
                cl_i,
                m_i - 1,
                cl_i + m_i - 1
            ),
            citations::CUP_LENGTH_OF_PRODUCT,
            StepRule::Sum { of: [0, 1] },
            Some(cl_i + m_i - 1),
        ),
        step(
            format!(
                "the flow has at least cup-length + 1 = {} closed orbits on almost every level",
                cl_i + m_i
            ),
            citations::ORBITS_FROM_CATEGORY,
            StepRule::AddConst { of: 2, add: 1 },
            Some(cl_i + m_i),
        ),
    ];
    verify_steps(&kerman_steps)?;
    let kerman = m_i + cl_i;

    let (aspherical_bound, aspherical_steps) = if aspherical {
        let (swgt, mut steps) = swgt_chain(m, m - 1)?;
        let last = steps.len() - 1;
        steps.push(step(
            format!(
                "the flow has at least swgt + 1 = {} closed orbits on almost every level",
                swgt + 1
            ),
            citations::ORBITS_FROM_CATEGORY,
            StepRule::AddConst { of: last, add: 1 },
            Some(swgt + 1),
        ));
        verify_steps(&steps)?;
        (Some(swgt + 1), steps)
    } else {
        (None, Vec::new())
    };

    let stronger = match aspherical_bound {
        None => StrongerBound::Kerman,
        Some(a) if a > kerman => StrongerBound::Aspherical,
        Some(a) if a < kerman => StrongerBound::Kerman,
        Some(_) => StrongerBound::Equal,
    };
    Ok(OrbitBounds {
        kerman,
        kerman_steps,
        aspherical: aspherical_bound,
        aspherical_steps,
        stronger,
    })
}

/// Is the quotient manifold symplectically aspherical? `Some(true)`
/// with a derivation when that follows from nilpotency or a certified
/// ideal flag; `Some(false)` when there is no symplectic class at all;
/// `None` when the manifold-level conclusion cannot be certified.
pub fn asphericity_report(
    nilpotent: bool,
    certified_solvable: bool,
    symplectic: bool,
) -> (Option<bool>, Vec<DerivationStep>) {
    if !symplectic {
        return (
            Some(false),
            vec![step(
                "no cohomologically symplectic class exists, so symplectic \
                 asphericity does not apply",
                citations::HYPOTHESIS,
                StepRule::Given,
                None,
            )],
        );
    }
    if nilpotent || certified_solvable {
        let (statement, citation) = if nilpotent {
            (
                "the algebra is nilpotent, so the simply connected group has a \
                 lattice and the compact quotient is aspherical",
                citations::NILPOTENT_LATTICE,
            )
        } else {
            (
                "the algebra carries a full rational flag of ideals, so any \
                 compact lattice quotient is an aspherical solvmanifold",
                citations::SOLVABLE_LATTICE,
            )
        };
        let steps = vec![
            step(statement, citation, StepRule::Given, None),
            step(
                "the manifold is cohomologically symplectic with an explicit witness",
                citations::HYPOTHESIS,
                StepRule::Given,
                None,
            ),
            step(
                "pi_2 of an aspherical manifold vanishes, so the witness class \
                 restricts to zero on spheres: the form is symplectically aspherical",
                citations::PI2_VANISHES,
                StepRule::Implies { from: 0 },
                None,
            ),
        ];
        return (Some(true), steps);
    }
    (
        None,
        vec![step(
            "the algebra is neither nilpotent nor certified completely solvable, \
             so no conclusion about a compact quotient is drawn",
            citations::HYPOTHESIS,
            StepRule::Given,
            None,
        )],
    )
}

/// Lusternik-Schnirelmann category of the compact quotient: equal to
/// the dimension for nilmanifolds and certified completely solvable
/// solvmanifolds, with cat(point) = 0.
pub fn cat_of_manifold(
    dim: usize,
    nilpotent: bool,
    certified_solvable: bool,
) -> Result<(usize, Vec<DerivationStep>)> {
    if !nilpotent && !certified_solvable {
        return Err(Error::Unsupported(
            "category of the quotient is only computed for nilpotent or \
             certified completely solvable algebras"
                .into(),
        ));
    }
    let (statement, citation) = if nilpotent {
        (
            "the quotient of the simply connected nilpotent group by a lattice \
             is a closed aspherical nilmanifold",
            citations::NILPOTENT_LATTICE,
        )
    } else {
        (
            "a compact quotient of the completely solvable group is a closed \
             aspherical solvmanifold",
            citations::SOLVABLE_LATTICE,
        )
    };
    let steps = vec![
        step(
            format!("the quotient manifold is closed of dimension {dim}"),
            citations::HYPOTHESIS,
            StepRule::Given,
            Some(dim as i64),
        ),
        step(statement, citation, StepRule::Given, None),
        step(
            format!(
                "category of a closed aspherical manifold equals its dimension {dim} \
                 (cat(point) = 0)"
            ),
            citations::EILENBERG_GANEA,
            StepRule::Carry { of: 0 },
            Some(dim as i64),
        ),
    ];
    verify_steps(&steps)?;
    Ok((dim, steps))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub name: String,
    pub manifold_dim: usize,
    pub betti: Vec<usize>,
    pub nilpotent: bool,
    pub completely_solvable_certified: bool,
    pub cup_length: usize,
    pub cup_length_witness: Vec<String>,
    /// Category of the quotient manifold itself, when certified.
    pub cat_manifold: Option<usize>,
    pub cohomologically_symplectic: bool,
    pub symplectic_witness: Option<String>,
    pub symplectic_top_power: Option<String>,
    /// Symplectic asphericity of the quotient; None means undecided.
    pub aspherical: Option<bool>,
    /// Weight of the witness class: 2 when symplectically aspherical,
    /// 1 when merely cohomologically symplectic.
    pub swgt_omega: Option<i64>,
    /// Category-type lower bound for the regular energy level.
    pub cat_total_space_bound: Option<i64>,
    pub orbit_bound_kerman: Option<i64>,
    pub orbit_bound_aspherical: Option<i64>,
    pub stronger_bound: Option<StrongerBound>,
    pub cat_convention: String,
    pub steps: Vec<DerivationStep>,
}

fn shift_rule(rule: StepRule, off: usize) -> StepRule {
    match rule {
        StepRule::Given => StepRule::Given,
        StepRule::Implies { from } => StepRule::Implies { from: from + off },
        StepRule::Carry { of } => StepRule::Carry { of: of + off },
        StepRule::Scale { of, factor } => StepRule::Scale { of: of + off, factor },
        StepRule::Sum { of } => StepRule::Sum {
            of: [of[0] + off, of[1] + off],
        },
        StepRule::AddConst { of, add } => StepRule::AddConst { of: of + off, add },
    }
}

fn append_chain(all: &mut Vec<DerivationStep>, chain: Vec<DerivationStep>) {
    let off = all.len();
    for s in chain {
        all.push(DerivationStep {
            rule: shift_rule(s.rule, off),
            ..s
        });
    }
}

/// Full pipeline for one algebra: classification, cohomology,
/// cup-length, symplecticness, and the orbit bounds, with one merged
/// derivation chain. Only even-dimensional algebras are accepted,
/// since the bounds concern magnetic flows over symplectic bases.
pub fn full_report(algebra: &LieAlgebra) -> Result<BoundsReport> {
    let classification = algebra.classify()?;
    let n = algebra.dim();
    if n % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "orbit bounds need an even-dimensional algebra, got dimension {n}"
        )));
    }
    let m = n / 2;
    let ring = CohomologyRing::new(CEComplex::build(algebra.clone())?)?;
    let cl = cup_length(&ring)?;
    let symp = is_cohomologically_symplectic(&ring)?;

    let nilpotent = classification.is_nilpotent;
    let certified = classification.completely_solvable.is_some();
    let (aspherical, asph_steps) = asphericity_report(
        nilpotent,
        certified,
        symp.is_cohomologically_symplectic,
    );

    let mut steps = Vec::new();
    append_chain(&mut steps, asph_steps);

    let cat_manifold = if nilpotent || certified {
        let (cat, cat_steps) = cat_of_manifold(n, nilpotent, certified)?;
        append_chain(&mut steps, cat_steps);
        Some(cat)
    } else {
        None
    };

    let orbits = if symp.is_cohomologically_symplectic && (nilpotent || certified) {
        let ob = orbit_bounds(m, cl.cup_length, aspherical == Some(true))?;
        append_chain(&mut steps, ob.kerman_steps.clone());
        append_chain(&mut steps, ob.aspherical_steps.clone());
        Some(ob)
    } else {
        None
    };
    verify_steps(&steps)?;

    let swgt_omega = if !symp.is_cohomologically_symplectic {
        None
    } else if aspherical == Some(true) {
        Some(2)
    } else {
        Some(1)
    };
    // best orbit bound minus one: orbits >= cat-type bound + 1
    let cat_total_space_bound = orbits
        .as_ref()
        .map(|ob| ob.aspherical.unwrap_or(ob.kerman).max(ob.kerman) - 1);

    Ok(BoundsReport {
        name: algebra.name().to_string(),
        manifold_dim: n,
        betti: ring.betti_vector(),
        nilpotent,
        completely_solvable_certified: certified,
        cup_length: cl.cup_length,
        cup_length_witness: cl
            .witness
            .iter()
            .map(|c| ring.class_to_string(c))
            .collect(),
        cat_manifold,
        cohomologically_symplectic: symp.is_cohomologically_symplectic,
        symplectic_witness: symp.witness.as_ref().map(|c| ring.class_to_string(c)),
        symplectic_top_power: symp.top_power.as_ref().map(|c| ring.class_to_string(c)),
        aspherical,
        swgt_omega,
        cat_total_space_bound,
        orbit_bound_kerman: orbits.as_ref().map(|ob| ob.kerman),
        orbit_bound_aspherical: orbits.as_ref().and_then(|ob| ob.aspherical),
        stronger_bound: orbits.as_ref().map(|ob| ob.stronger),
        cat_convention: "cat(point) = 0".to_string(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn swgt_chain_values_and_verification() {
        for m in 1..=10 {
            for n in 1..=10 {
                let (bound, steps) = swgt_chain(m, n).unwrap();
                assert_eq!(bound, (2 * m + n) as i64);
                assert_eq!(steps.len(), 6);
                verify_steps(&steps).unwrap();
            }
        }
        assert!(swgt_chain(0, 3).is_err());
    }

    #[test]
    fn verify_steps_catches_tampering() {
        let (_, mut steps) = swgt_chain(2, 3).unwrap();
        steps[4].bound = Some(99);
        assert!(verify_steps(&steps).is_err());
        // forward reference
        let bad = vec![step(
            "refers ahead",
            citations::HYPOTHESIS,
            StepRule::Carry { of: 0 },
            Some(1),
        )];
        assert!(verify_steps(&bad).is_err());
        // qualitative step with a bound
        let (_, mut steps) = swgt_chain(1, 1).unwrap();
        steps[3].bound = Some(5);
        assert!(verify_steps(&steps).is_err());
    }

    #[test]
    fn orbit_bound_arithmetic() {
        let ob = orbit_bounds(2, 3, true).unwrap();
        assert_eq!(ob.kerman, 5);
        assert_eq!(ob.aspherical, Some(6));
        assert_eq!(ob.stronger, StrongerBound::Aspherical);
        verify_steps(&ob.kerman_steps).unwrap();
        verify_steps(&ob.aspherical_steps).unwrap();

        let ob = orbit_bounds(1, 2, true).unwrap();
        assert_eq!(ob.kerman, 3);
        assert_eq!(ob.aspherical, Some(3));
        assert_eq!(ob.stronger, StrongerBound::Equal);

        let ob = orbit_bounds(3, 4, false).unwrap();
        assert_eq!(ob.kerman, 7);
        assert_eq!(ob.aspherical, None);
        assert_eq!(ob.stronger, StrongerBound::Kerman);

        assert!(orbit_bounds(2, 5, true).is_err());
        assert!(orbit_bounds(2, 0, true).is_err());
        assert!(orbit_bounds(0, 1, true).is_err());
    }

    #[test]
    fn asphericity_cases() {
        let (a, steps) = asphericity_report(true, true, true);
        assert_eq!(a, Some(true));
        assert!(steps.iter().any(|s| s.citation == citations::NILPOTENT_LATTICE));
        let (a, steps) = asphericity_report(false, true, true);
        assert_eq!(a, Some(true));
        assert!(steps.iter().any(|s| s.citation == citations::SOLVABLE_LATTICE));
        let (a, _) = asphericity_report(true, true, false);
        assert_eq!(a, Some(false));
        let (a, _) = asphericity_report(false, false, true);
        assert_eq!(a, None);
    }

    #[test]
    fn cat_of_manifold_cases() {
        let (cat, steps) = cat_of_manifold(4, true, false).unwrap();
        assert_eq!(cat, 4);
        verify_steps(&steps).unwrap();
        assert!(steps.iter().any(|s| s.citation == citations::EILENBERG_GANEA));
        assert!(cat_of_manifold(4, false, false).is_err());
    }

    #[test]
    fn full_report_kodaira_thurston() {
        let report = full_report(&catalog::kodaira_thurston()).unwrap();
        assert_eq!(report.manifold_dim, 4);
        assert!(report.nilpotent);
        assert_eq!(report.betti, vec![1, 3, 4, 3, 1]);
        assert_eq!(report.cup_length, 3);
        assert_eq!(report.cat_manifold, Some(4));
        assert!(report.cohomologically_symplectic);
        assert_eq!(report.aspherical, Some(true));
        assert_eq!(report.swgt_omega, Some(2));
        assert_eq!(report.orbit_bound_kerman, Some(5));
        assert_eq!(report.orbit_bound_aspherical, Some(6));
        assert_eq!(report.stronger_bound, Some(StrongerBound::Aspherical));
        assert_eq!(report.cat_total_space_bound, Some(5));
        verify_steps(&report.steps).unwrap();
        assert!(report
            .steps
            .iter()
            .any(|s| s.citation == citations::NILPOTENT_LATTICE));
    }

    #[test]
    fn full_report_torus2() {
        let report = full_report(&catalog::torus(2).unwrap()).unwrap();
        assert_eq!(report.cup_length, 2);
        assert_eq!(report.orbit_bound_kerman, Some(3));
        assert_eq!(report.orbit_bound_aspherical, Some(3));
        assert_eq!(report.stronger_bound, Some(StrongerBound::Equal));
        verify_steps(&report.steps).unwrap();
    }

    #[test]
    fn full_report_non_symplectic_even() {
        let report = full_report(&catalog::lookup("h5+r").unwrap()).unwrap();
        assert!(!report.cohomologically_symplectic);
        assert_eq!(report.aspherical, Some(false));
        assert_eq!(report.swgt_omega, None);
        assert_eq!(report.orbit_bound_kerman, None);
        assert_eq!(report.stronger_bound, None);
        assert_eq!(report.cup_length, 4);
        assert_eq!(report.cat_manifold, Some(6));
    }

    #[test]
    fn full_report_rejects_odd_dimension() {
        assert!(matches!(
            full_report(&catalog::solv3()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            full_report(&catalog::heisenberg(3).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn report_serializes_with_tagged_rules() {
        let report = full_report(&catalog::torus(2).unwrap()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["cat_convention"], "cat(point) = 0");
        let steps = json["steps"].as_array().unwrap();
        assert!(steps.iter().any(|s| s["rule"] == "scale"));
        assert!(steps.iter().any(|s| s["rule"] == "given"));
    }
}
