//! Built-in reference algebras, reachable from the CLI as
//! `catalog:NAME`.

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{rat, Rational};

/// Abelian algebra of the n-torus.
pub fn torus(n: usize) -> Result<LieAlgebra> {
    LieAlgebra::new(format!("torus({n})"), n, Vec::new())
}

/// Heisenberg algebra of odd dimension 2k+1:
/// [e_{2i-1}, e_{2i}] = e_{2k+1} for i = 1..k.
pub fn heisenberg(n: usize) -> Result<LieAlgebra> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Input(format!(
            "heisenberg dimension must be odd and at least 3, got {n}"
        )));
    }
    let k = (n - 1) / 2;
    let raw: Vec<((usize, usize, usize), Rational)> = (1..=k)
        .map(|i| ((2 * i - 1, 2 * i, n), rat(1)))
        .collect();
    LieAlgebra::new(format!("heisenberg({n})"), n, raw)
}

/// Nilpotent algebra of the Kodaira-Thurston manifold: heisenberg(3)
/// plus a central direction, dim 4, [e1, e2] = e3.
pub fn kodaira_thurston() -> LieAlgebra {
    LieAlgebra::new("kodaira_thurston", 4, vec![((1, 2, 3), rat(1))])
        .expect("fixed presentation is valid")
}

/// Completely solvable, non-nilpotent dim 3:
/// [e1, e3] = e1, [e2, e3] = -e2 (so ad e3 has eigenvalues -1, 1, 0).
pub fn solv3() -> LieAlgebra {
    LieAlgebra::new(
        "solv3",
        3,
        vec![((1, 3, 1), rat(1)), ((2, 3, 2), rat(-1))],
    )
    .expect("fixed presentation is valid")
}

fn h3_plus_h3() -> LieAlgebra {
    heisenberg(3)
        .unwrap()
        .direct_sum(&heisenberg(3).unwrap())
        .with_name("h3+h3")
}

fn h5_plus_r() -> LieAlgebra {
    heisenberg(5)
        .unwrap()
        .direct_sum(&torus(1).unwrap())
        .with_name("h5+r")
}

/// Every named entry, in a fixed order.
pub fn entries() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = (1..=6).map(|n| torus(n).unwrap()).collect();
    out.push(heisenberg(3).unwrap());
    out.push(heisenberg(5).unwrap());
    out.push(kodaira_thurston());
    out.push(h3_plus_h3());
    out.push(h5_plus_r());
    out.push(solv3());
    out
}

/// One-line descriptions in the same order as `entries`.
pub fn descriptions() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = (1..=6)
        .map(|n| {
            (
                format!("torus({n})"),
                format!("abelian, dim {n} (the {n}-torus)"),
            )
        })
        .collect();
    out.push((
        "heisenberg(3)".into(),
        "Heisenberg algebra, dim 3, [e1,e2]=e3".into(),
    ));
    out.push((
        "heisenberg(5)".into(),
        "Heisenberg algebra, dim 5, [e1,e2]=[e3,e4]=e5".into(),
    ));
    out.push((
        "kodaira_thurston".into(),
        "Kodaira-Thurston algebra, dim 4, [e1,e2]=e3".into(),
    ));
    out.push((
        "h3+h3".into(),
        "direct sum of two Heisenberg(3) algebras, dim 6".into(),
    ));
    out.push((
        "h5+r".into(),
        "heisenberg(5) plus a central line, dim 6".into(),
    ));
    out.push((
        "solv3".into(),
        "completely solvable non-nilpotent, dim 3, [e1,e3]=e1, [e2,e3]=-e2".into(),
    ));
    out
}

/// Resolve a catalog name, including the parameterized forms
/// `torus(N)` and `heisenberg(N)` for any valid N.
pub fn lookup(name: &str) -> Result<LieAlgebra> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    if let Some(inner) = name
        .strip_prefix("torus(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let n: usize = inner.parse().map_err(|_| unknown())?;
        return torus(n).map_err(|_| unknown());
    }
    if let Some(inner) = name
        .strip_prefix("heisenberg(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let n: usize = inner.parse().map_err(|_| unknown())?;
        return heisenberg(n).map_err(|_| unknown());
    }
    match name {
        "kodaira_thurston" => Ok(kodaira_thurston()),
        "h3+h3" => Ok(h3_plus_h3()),
        "h5+r" => Ok(h5_plus_r()),
        "solv3" => Ok(solv3()),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_validate() {
        for a in entries() {
            a.validate().unwrap_or_else(|e| panic!("{}: {e}", a.name()));
        }
        assert_eq!(entries().len(), descriptions().len());
    }

    #[test]
    fn lookup_matches_constructors() {
        assert_eq!(lookup("torus(4)").unwrap(), torus(4).unwrap());
        assert_eq!(lookup("heisenberg(7)").unwrap(), heisenberg(7).unwrap());
        assert_eq!(lookup("solv3").unwrap(), solv3());
        assert_eq!(lookup("kodaira_thurston").unwrap().dim(), 4);
        assert!(matches!(
            lookup("nope"),
            Err(Error::UnknownCatalog(_))
        ));
        assert!(matches!(
            lookup("torus(0)"),
            Err(Error::UnknownCatalog(_))
        ));
        assert!(matches!(
            lookup("heisenberg(4)"),
            Err(Error::UnknownCatalog(_))
        ));
    }

    #[test]
    fn heisenberg_brackets() {
        let h5 = heisenberg(5).unwrap();
        assert_eq!(h5.structure_constant(1, 2, 5), rat(1));
        assert_eq!(h5.structure_constant(3, 4, 5), rat(1));
        assert_eq!(h5.structure_constant(1, 3, 5), rat(0));
        assert!(heisenberg(2).is_err());
        assert!(heisenberg(1).is_err());
    }
}
