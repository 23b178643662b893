use crate::distlaw::{semidirect_product, ActionSystem, SplitEpiPair};
use crate::fincat::{FinCat, Functor, Mor};
use crate::report::OracleReport;

use super::kernel::{
    compare_actions, compare_split_epis, f_comparison, kernel_object, q_comparison,
    splitepi_to_distlaw, validate_split_epi,
};
use super::{tuple_witness, EquivError};

/// A split epimorphism `(i, s)` with a second retraction `t` of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveGraph {
    pair: SplitEpiPair,
    target: Functor,
}

impl ReflexiveGraph {
    pub fn new(pair: SplitEpiPair, t: Vec<Mor>) -> Result<Self, EquivError> {
        let target = Functor::new(t, pair.total(), pair.base()).map_err(EquivError::Target)?;
        if let Some(b) = pair.base().morphisms().find(|&b| target.apply(pair.i(b)) != b) {
            return Err(EquivError::TargetNotRetraction(pair.base().witness(&[b])));
        }
        Ok(ReflexiveGraph { pair, target })
    }

    pub fn pair(&self) -> &SplitEpiPair {
        &self.pair
    }

    pub fn total(&self) -> &FinCat {
        self.pair.total()
    }

    pub fn base(&self) -> &FinCat {
        self.pair.base()
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn i(&self, b: Mor) -> Mor {
        self.pair.i(b)
    }

    pub fn s(&self, a: Mor) -> Mor {
        self.pair.s(a)
    }

    pub fn t(&self, a: Mor) -> Mor {
        self.target.apply(a)
    }
}

/// An action with an equivariant functor `κ: Y -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreCrossedModule {
    action: ActionSystem,
    kappa: Functor,
}

impl PreCrossedModule {
    pub fn new(action: ActionSystem, kappa: Vec<Mor>) -> Result<Self, EquivError> {
        let kappa =
            Functor::new(kappa, action.fiber(), action.base()).map_err(EquivError::Kappa)?;
        let report = check_precrossed(&action, &kappa);
        if let Some(w) = report.witness {
            return Err(EquivError::PreCrossedViolated(w));
        }
        Ok(PreCrossedModule { action, kappa })
    }

    pub fn action(&self) -> &ActionSystem {
        &self.action
    }

    pub fn base(&self) -> &FinCat {
        self.action.base()
    }

    pub fn fiber(&self) -> &FinCat {
        self.action.fiber()
    }

    pub fn kappa(&self) -> &Functor {
        &self.kappa
    }

    pub fn k(&self, y: Mor) -> Mor {
        self.kappa.apply(y)
    }

    pub fn act(&self, b: Mor, y: Mor) -> Mor {
        self.action.act(b, y)
    }
}

/// A pre-crossed module satisfying the Peiffer identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    prex: PreCrossedModule,
}

impl CrossedModule {
    pub fn new(prex: PreCrossedModule) -> Result<Self, EquivError> {
        let report = check_peiffer(&prex);
        if let Some(w) = report.witness {
            return Err(EquivError::PeifferViolated(w));
        }
        Ok(CrossedModule { prex })
    }

    pub fn prex(&self) -> &PreCrossedModule {
        &self.prex
    }

    pub fn into_prex(self) -> PreCrossedModule {
        self.prex
    }
}

/// `κ(b ▷ y) ∘ b = b ∘ κ(y)` on every composable `(b, y)`.
pub fn check_precrossed(action: &ActionSystem, kappa: &Functor) -> OracleReport {
    let (b_cat, y_cat) = (action.base(), action.fiber());
    let mut checked = 0;
    for (b, y) in action.pairs() {
        checked += 1;
        let lhs = b_cat.comp(kappa.apply(action.act(b, y)), b);
        let rhs = b_cat.comp(b, kappa.apply(y));
        if lhs != rhs {
            return OracleReport::fail(
                checked,
                tuple_witness(&[b, y], &[b_cat, y_cat]),
                "κ is not equivariant",
            );
        }
    }
    OracleReport::pass(checked, "κ(b▷y)∘b = b∘κ(y)")
}

/// `(κ(y) ▷ y') ∘ y = y ∘ y'` on every pair over the same object.
pub fn check_peiffer(pxm: &PreCrossedModule) -> OracleReport {
    let y_cat = pxm.fiber();
    let mut checked = 0;
    for y in y_cat.morphisms() {
        for y2 in y_cat.morphisms().filter(|&y2| y_cat.tgt(y2) == y_cat.tgt(y)) {
            checked += 1;
            let lhs = y_cat.comp(pxm.act(pxm.k(y), y2), y);
            if lhs != y_cat.comp(y, y2) {
                return OracleReport::fail(checked, y_cat.witness(&[y, y2]), "Peiffer fails");
            }
        }
    }
    OracleReport::pass(checked, "Peiffer identity holds")
}

/// `κ = t ∘ p_A` with the induced action on the kernel.
pub fn reflgraph_to_prex(rg: &ReflexiveGraph) -> Result<PreCrossedModule, EquivError> {
    let action = splitepi_to_distlaw(rg.pair())?;
    let kernel = kernel_object(rg.pair());
    let kappa = kernel.carrier().iter().map(|&a| rg.t(a)).collect();
    PreCrossedModule::new(action, kappa)
}

/// The semidirect product with `t(y, b) = κ(y) ∘ b`.
pub fn prex_to_reflgraph(pxm: &PreCrossedModule) -> Result<ReflexiveGraph, EquivError> {
    let sd = semidirect_product(pxm.action());
    let b_cat = pxm.base();
    let t = sd
        .pair
        .total()
        .morphisms()
        .map(|a| {
            let (y, b) = sd.coords(a);
            b_cat.comp(pxm.k(y), b)
        })
        .collect();
    ReflexiveGraph::new(sd.pair, t)
}

/// ReflGraph → PreX → ReflGraph is isomorphic to the identity via `q`,
/// which also intertwines the targets.
pub fn reflgraph_round_trip(rg: &ReflexiveGraph) -> Result<OracleReport, EquivError> {
    let pxm = reflgraph_to_prex(rg)?;
    let rg2 = prex_to_reflgraph(&pxm)?;
    let sd = semidirect_product(pxm.action());
    let phi = q_comparison(rg.pair(), &kernel_object(rg.pair()), &sd);
    let report = compare_split_epis(rg2.pair(), rg.pair(), &phi);
    let a2 = rg2.total();
    let t_report = match a2.morphisms().find(|&a| rg.t(phi[a]) != rg2.t(a)) {
        None => OracleReport::pass(a2.len(), "t ∘ q = t"),
        Some(a) => OracleReport::fail(a2.len(), a2.witness(&[a]), "t ∘ q ≠ t"),
    };
    Ok(report.and(t_report))
}

/// PreX → ReflGraph → PreX is isomorphic to the identity via `f`, which
/// also intertwines `κ`.
pub fn prex_round_trip(pxm: &PreCrossedModule) -> Result<OracleReport, EquivError> {
    let rg = prex_to_reflgraph(pxm)?;
    let pxm2 = reflgraph_to_prex(&rg)?;
    let sd = semidirect_product(pxm.action());
    let f = f_comparison(&sd, &kernel_object(rg.pair()));
    let report = compare_actions(pxm.action(), pxm2.action(), &f);
    let y_cat = pxm.fiber();
    let k_report = match y_cat.morphisms().find(|&y| pxm2.k(f[y]) != pxm.k(y)) {
        None => OracleReport::pass(y_cat.len(), "κ' ∘ f = κ"),
        Some(y) => OracleReport::fail(y_cat.len(), y_cat.witness(&[y]), "κ' ∘ f ≠ κ"),
    };
    Ok(report.and(k_report))
}

/// `t = m(k1)q⁻¹` rebuilt from `k = t ∘ p_A` reproduces `t`, and
/// restricting the rebuilt `t` to the kernel gives back `k`.
pub fn check_kt_correspondence(rg: &ReflexiveGraph) -> Result<OracleReport, EquivError> {
    let q = validate_split_epi(rg.pair())?;
    let kernel = kernel_object(rg.pair());
    let (a_cat, b_cat) = (rg.total(), rg.base());
    let k: Vec<Mor> = kernel.carrier().iter().map(|&a| rg.t(a)).collect();
    let rebuilt: Vec<Mor> = a_cat
        .morphisms()
        .map(|a| {
            let pre = q.invert_tuple(&[a]).expect("q is bijective");
            let kk = kernel.position(pre[0]).expect("q⁻¹ lands in the kernel");
            b_cat.comp(k[kk], pre[1])
        })
        .collect();
    if let Some(a) = a_cat.morphisms().find(|&a| rebuilt[a] != rg.t(a)) {
        return Ok(OracleReport::fail(a_cat.len(), a_cat.witness(&[a]), "m(k1)q⁻¹ ≠ t"));
    }
    let from_t = OracleReport::pass(a_cat.len(), "t = m(k1)q⁻¹");
    let back = match (0..kernel.len()).find(|&kk| rebuilt[kernel.embed(kk)] != k[kk]) {
        None => OracleReport::pass(kernel.len(), "k = t ∘ p_A"),
        Some(kk) => OracleReport::fail(
            kernel.len(),
            a_cat.witness(&[kernel.embed(kk)]),
            "t ∘ p_A ≠ k",
        ),
    };
    Ok(from_t.and(back))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::semidirect_product;
    use crate::oracle::fixtures;
    use crate::oracle::groups::{alternating3, cycle_name, perm_compose, symmetric3};

    #[test]
    fn t_equal_to_s_gives_trivial_kappa() {
        let se = semidirect_product(fixtures::fix_e().action()).pair;
        let t = se.retraction().table().to_vec();
        let rg = ReflexiveGraph::new(se, t).unwrap();
        let pxm = reflgraph_to_prex(&rg).unwrap();
        assert!(pxm.fiber().morphisms().all(|y| pxm.base().is_identity(pxm.k(y))));
    }

    #[test]
    fn fix_a_target_is_multiplication_in_s3() {
        let xm = fixtures::fix_a();
        let rg = prex_to_reflgraph(xm.prex()).unwrap();
        let sd = semidirect_product(xm.prex().action());
        let (s3, a3) = (symmetric3(), alternating3());
        for a in rg.total().morphisms() {
            let (y, b) = sd.coords(a);
            let expected = perm_compose(a3.perm(y), s3.perm(b));
            assert_eq!(rg.base().name(rg.t(a)), cycle_name(expected));
        }
        let back = reflgraph_to_prex(&rg).unwrap();
        for k in back.fiber().morphisms() {
            // kernel elements are named "(y,e)"
            let name = back.fiber().name(k);
            let y = name.strip_prefix('(').unwrap().rsplit_once(",e)").unwrap().0;
            assert_eq!(back.base().name(back.k(k)), y);
        }
    }

    #[test]
    fn corrupted_kappa_is_rejected() {
        let pxm = fixtures::fix_a().into_prex();
        let action = pxm.action().clone();
        let (y_cat, b_cat) = (pxm.fiber(), pxm.base());
        let mut broken: Vec<Mor> = pxm.kappa().table().to_vec();
        let y = y_cat.index_of("(123)").unwrap();
        broken[y] = b_cat.index_of("(132)").unwrap();
        assert!(matches!(
            PreCrossedModule::new(action.clone(), broken),
            Err(EquivError::Kappa(_))
        ));
        // the inclusion is not equivariant for the trivial action
        let trivial = ActionSystem::from_fn(b_cat.clone(), y_cat.clone(), |_, y| y).unwrap();
        assert!(matches!(
            PreCrossedModule::new(trivial, pxm.kappa().table().to_vec()),
            Err(EquivError::PreCrossedViolated(_))
        ));
    }

    #[test]
    fn peiffer_on_fixtures() {
        let r = check_peiffer(fixtures::fix_a().prex());
        assert!(r.ok);
        assert_eq!(r.checked, 9);
        let r = check_peiffer(&fixtures::fix_e());
        assert!(!r.ok);
        assert_eq!(r.witness.unwrap().label, "((12), (123))");
        assert!(check_peiffer(fixtures::fix_b().prex()).ok);
    }

    #[test]
    fn fix_e_graph_has_trivial_kappa() {
        let rg = prex_to_reflgraph(&fixtures::fix_e()).unwrap();
        for a in rg.total().morphisms() {
            assert_eq!(rg.t(a), rg.s(a));
        }
        let back = reflgraph_to_prex(&rg).unwrap();
        assert!(check_precrossed(back.action(), back.kappa()).ok);
    }

    #[test]
    fn round_trips_and_kt() {
        for pxm in [fixtures::fix_a().into_prex(), fixtures::fix_c().into_prex(), fixtures::fix_e()] {
            assert!(prex_round_trip(&pxm).unwrap().ok);
            let rg = prex_to_reflgraph(&pxm).unwrap();
            assert!(reflgraph_round_trip(&rg).unwrap().ok);
            assert!(check_kt_correspondence(&rg).unwrap().ok);
        }
    }

    #[test]
    fn peiffer_failure_blocks_the_upgrade() {
        assert!(matches!(
            CrossedModule::new(fixtures::fix_e()),
            Err(EquivError::PeifferViolated(_))
        ));
    }
}
