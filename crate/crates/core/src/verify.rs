//! Named identity checks collected as pass/fail findings.

use crate::complex::{verify_chain_map, ChainMap};
use crate::cosimplicial::{induced_chain_map, normalized_total};
use crate::error::Result;
use crate::linalg;
use crate::gmodule::{GModule, Side};
use crate::group_cohomology::{
    big_theta, big_theta_composite, construction, map_cosimplicial, phi, psi, verify_cosimplicial_iso, verify_theta,
    GroupMonad,
};
use crate::simplicial::{build_eg, build_eg_left, iso_eg_left_to_eg};

/// Outcome of one checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub passed: bool,
    /// Diagnostic for a failure.
    pub detail: Option<String>,
}

impl Finding {
    pub fn from_result<T>(name: &str, r: Result<T>) -> Self {
        match r {
            Ok(_) => Finding { name: name.to_string(), passed: true, detail: None },
            Err(e) => Finding { name: name.to_string(), passed: false, detail: Some(e.to_string()) },
        }
    }

    pub fn check(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        Finding { name: name.to_string(), passed: ok, detail: (!ok).then(detail) }
    }
}

/// Check `θ: U ≅ T`, the cosimplicial isomorphism `Θ`, its description as an
/// iterated horizontal composite, the factorization `Φ∘Ψ = Θ` through
/// `Map((EG)^left, V)`, and `Map(EG, V)` against the `U`-construction, through degree `top`.
/// Left modules are converted to right modules first.
pub fn monad_isomorphism_findings(v: &GModule, top: usize) -> Result<Vec<Finding>> {
    let v = if v.side() == Side::Left { v.opposite() } else { v.clone() };
    let g = v.group().clone();
    let mut out = vec![Finding::from_result("theta is a monad isomorphism U -> T", verify_theta(&v, None))];
    let uc = construction(&GroupMonad::monad_u(g.clone()), &v, top)?;
    let tc = construction(&GroupMonad::monad_t(g.clone()), &v, top)?;
    let (uobjs, tobjs) = (&uc.objects[1..], &tc.objects[1..]);
    let th = big_theta(&v, top);
    out.push(Finding::from_result(
        "Theta is a cosimplicial isomorphism",
        verify_cosimplicial_iso(&uc.module, uobjs, &tc.module, tobjs, &th),
    ));
    let unnormalized = (uc.module.unnormalized()?, tc.module.unnormalized()?);
    let components = (0..=top).map(|n| (n as i64, th[n].clone())).collect();
    let chain = ChainMap { source: unnormalized.0, target: unnormalized.1, components };
    let check = verify_chain_map(&chain)?;
    out.push(Finding::check("Theta is a chain map of the unnormalized complexes", check.ok, || {
        format!("fails in degree {:?}", check.first_failing_degree)
    }));
    let (nu, nt) = (normalized_total(&uc.module, top as i64, false)?, normalized_total(&tc.module, top as i64, false)?);
    let normal = induced_chain_map(&nu, &nt, |level, v| Ok(th[level].mul_vec(v)))?;
    let check = verify_chain_map(&normal)?;
    let bijective = normal.components.iter().all(|(_, m)| m.rows() == m.cols() && linalg::rank(m) == m.rows());
    out.push(Finding::check(
        "Theta is a chain isomorphism of the conormalized complexes",
        check.ok && bijective,
        || format!("chain map {}, bijective {bijective}", check.ok),
    ));
    let composite = big_theta_composite(&v, top)?;
    out.push(Finding::check("Theta equals the iterated horizontal composite of theta", composite == th, || {
        "componentwise difference".into()
    }));
    let (ph, ps) = (phi(&v, top), psi(&v, top));
    let bad = (0..=top).find(|&n| ph[n].mul(&ps[n]) != th[n]);
    out.push(Finding::check("Phi . Psi = Theta degreewise", bad.is_none(), || format!("degree {}", bad.unwrap_or(0))));
    let eg = build_eg(g.clone(), top)?;
    let left = build_eg_left(g, top)?;
    out.push(Finding::from_result("EG satisfies the simplicial identities", eg.set().check_identities()));
    out.push(Finding::from_result("(EG)^left satisfies the simplicial identities", left.set().check_identities()));
    out.push(Finding::from_result("EG faces and degeneracies are homomorphisms", eg.check_homomorphisms()));
    out.push(Finding::from_result(
        "(EG)^left faces and degeneracies are homomorphisms",
        left.check_homomorphisms(),
    ));
    let iso = iso_eg_left_to_eg(&left, &eg).and_then(|m| m.check(left.set(), eg.set()));
    out.push(match iso {
        Ok(b) => Finding::check("partial products give (EG)^left = EG", b, || "not bijective".into()),
        Err(e) => Finding::from_result::<()>("partial products give (EG)^left = EG", Err(e)),
    });
    let (meg, meg_objs) = map_cosimplicial(&eg, &v)?;
    let (mleft, mleft_objs) = map_cosimplicial(&left, &v)?;
    out.push(Finding::from_result(
        "Psi: Map(EG, V) -> Map((EG)^left, V) is a cosimplicial isomorphism",
        verify_cosimplicial_iso(&meg, &meg_objs, &mleft, &mleft_objs, &ps),
    ));
    out.push(Finding::from_result(
        "Phi: Map((EG)^left, V) -> T-construction is a cosimplicial isomorphism",
        verify_cosimplicial_iso(&mleft, &mleft_objs, &tc.module, tobjs, &ph),
    ));
    let same = (0..=top).all(|n| {
        meg.levels[n].codegeneracies == uc.module.levels[n].codegeneracies
            && meg_objs[n].generator_actions() == uobjs[n].generator_actions()
            && (n == top || meg.levels[n].cofaces == uc.module.levels[n].cofaces)
    });
    out.push(Finding::check("Map(EG, V) coincides with the U-construction", same, || "structure maps differ".into()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::Field;
    use std::sync::Arc;

    #[test]
    fn cyclic_three_passes() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let v = GModule::regular(g, Field::Rational, Side::Right);
        let f = monad_isomorphism_findings(&v, 2).unwrap();
        assert!(f.iter().all(|x| x.passed), "{f:?}");
        assert_eq!(f.len(), 14);
    }
}
