use crate::distlaw::semidirect_product;
use crate::fincat::{Functor, InverseMap, Mor};
use crate::maps::{MorphismMap, TupleSet};
use crate::report::OracleReport;
use crate::witness::Witness;

use super::graph::{
    prex_to_reflgraph, reflgraph_round_trip, reflgraph_to_prex, CrossedModule, ReflexiveGraph,
};
use super::iterated::graph_power;
use super::kernel::{
    compare_actions, f_comparison, kernel_object, kernel_carrier, q_comparison,
    validate_split_epi,
};
use super::{bijectivity_witness, EquivError};

/// `A □_B A`: pairs `(a1, a2)` with `s(a1) = t(a2)`.
pub fn composable_pairs(rg: &ReflexiveGraph) -> TupleSet {
    graph_power(rg, 2)
}

/// A reflexive graph with a lawful composition `d: A □_B A -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalCat {
    graph: ReflexiveGraph,
    pairs: TupleSet,
    d: Vec<Mor>,
}

impl InternalCat {
    /// `d` is listed along [`composable_pairs`].
    pub fn new(graph: ReflexiveGraph, d: Vec<Mor>) -> Result<Self, EquivError> {
        let pairs = composable_pairs(&graph);
        assert_eq!(d.len(), pairs.len(), "d must be total on A □_B A");
        let report = check_internal_cat_laws(&graph, &pairs, &d);
        if let Some(witness) = report.witness {
            return Err(EquivError::InternalCatLaw {
                law: report.note,
                witness,
            });
        }
        Ok(InternalCat { graph, pairs, d })
    }

    pub fn graph(&self) -> &ReflexiveGraph {
        &self.graph
    }

    pub fn pairs(&self) -> &TupleSet {
        &self.pairs
    }

    pub fn table(&self) -> &[Mor] {
        &self.d
    }

    /// Panics if `(a1, a2)` is not composable.
    pub fn d(&self, a1: Mor, a2: Mor) -> Mor {
        let p = self
            .pairs
            .position(&[a1, a2])
            .unwrap_or_else(|| panic!("({a1}, {a2}) is not in A □_B A"));
        self.d[p]
    }
}

/// Endpoints, the two unit laws, associativity on `A □_B A □_B A` and
/// the interchange law `d(a∘c, a'∘c') = d(a, a') ∘ d(c, c')`.
pub fn check_internal_cat_laws(rg: &ReflexiveGraph, pairs: &TupleSet, d: &[Mor]) -> OracleReport {
    let a_cat = rg.total();
    let w = |ids: &[Mor]| a_cat.witness(ids);
    let d_at = |a1: Mor, a2: Mor| pairs.position(&[a1, a2]).map(|p| d[p]);
    let mut checked = 0;
    for (p, t) in pairs.iter().enumerate() {
        checked += 1;
        let (a1, a2, v) = (t[0], t[1], d[p]);
        if v >= a_cat.len()
            || a_cat.src(v) != a_cat.src(a2)
            || a_cat.tgt(v) != a_cat.tgt(a1)
            || rg.s(v) != rg.s(a2)
            || rg.t(v) != rg.t(a1)
        {
            return OracleReport::fail(checked, w(t), "endpoint");
        }
    }
    for a in a_cat.morphisms() {
        checked += 1;
        if d_at(a, rg.i(rg.s(a))) != Some(a) || d_at(rg.i(rg.t(a)), a) != Some(a) {
            return OracleReport::fail(checked, w(&[a]), "unit");
        }
    }
    for t in graph_power(rg, 3).iter() {
        checked += 1;
        let left = d_at(t[0], t[1]).and_then(|x| d_at(x, t[2]));
        let right = d_at(t[1], t[2]).and_then(|x| d_at(t[0], x));
        if left.is_none() || left != right {
            return OracleReport::fail(checked, w(t), "associativity");
        }
    }
    let mut by_tgt: Vec<Vec<usize>> = vec![Vec::new(); a_cat.objects().len()];
    for (p, t) in pairs.iter().enumerate() {
        by_tgt[a_cat.tgt(t[0])].push(p);
    }
    for (p, top) in pairs.iter().enumerate() {
        for &r in &by_tgt[a_cat.src(top[0])] {
            checked += 1;
            let bottom = pairs.get(r);
            let ac = a_cat.comp(top[0], bottom[0]);
            let ac2 = a_cat.comp(top[1], bottom[1]);
            if d_at(ac, ac2) != Some(a_cat.comp(d[p], d[r])) {
                return OracleReport::fail(
                    checked,
                    w(&[top[0], top[1], bottom[0], bottom[1]]),
                    "interchange",
                );
            }
        }
    }
    OracleReport::pass(checked, "endpoints, units, associativity and interchange hold")
}

/// For every `a` and kernel element `k` at `src(a)`: writing
/// `q₂⁻¹(i t(a) ∘ k, a) = (k', a)`, the square asks `k' ∘ a = a ∘ k`.
pub fn check_d_existence(rg: &ReflexiveGraph, q2: &MorphismMap) -> OracleReport {
    let a_cat = rg.total();
    let kernel = kernel_carrier(rg.base(), rg.pair().retraction().table());
    let mut checked = 0;
    for a in a_cat.morphisms() {
        for &(k, x) in &kernel {
            if x != a_cat.src(a) {
                continue;
            }
            checked += 1;
            let top = [a_cat.comp(rg.i(rg.t(a)), k), a];
            let pre = q2.invert_tuple(&top).expect("q₂ is bijective");
            if a_cat.comp(pre[0], pre[1]) != a_cat.comp(a, k) {
                return OracleReport::fail(checked, a_cat.witness(&[a, k]), "existence square fails");
            }
        }
    }
    OracleReport::pass(checked, "existence square commutes")
}

/// `d = m (p_A 1) q₂⁻¹`, after checking that `q`, `q₂` are bijective and
/// that the existence square commutes.
pub fn build_composition_d(rg: &ReflexiveGraph) -> Result<InternalCat, EquivError> {
    validate_split_epi(rg.pair())?;
    let a_cat = rg.total();
    let q2 = super::q_n(rg, 2)?;
    if let Some(w) = bijectivity_witness(&q2, &[a_cat], &[a_cat]) {
        return Err(EquivError::Q2NotInvertible(w));
    }
    if let Some(w) = check_d_existence(rg, &q2).witness {
        return Err(EquivError::NoComposition(w));
    }
    let d = q2
        .codomain()
        .iter()
        .map(|t| {
            let pre = q2.invert_tuple(t).expect("q₂ is bijective");
            a_cat.comp(pre[0], pre[1])
        })
        .collect();
    InternalCat::new(rg.clone(), d)
}

/// `d(a, a') = a ∘ i(t(a')⁻¹) ∘ a'` for a groupoid base, along
/// [`composable_pairs`].
pub fn groupoid_d_closed_form(rg: &ReflexiveGraph, inv: &InverseMap) -> Vec<Mor> {
    let a_cat = rg.total();
    composable_pairs(rg)
        .iter()
        .map(|t| {
            let shift = rg.i(inv.get(rg.t(t[1])));
            a_cat.comp(a_cat.comp(t[0], shift), t[1])
        })
        .collect()
}

pub fn xmod_to_relcat(xm: &CrossedModule) -> Result<InternalCat, EquivError> {
    build_composition_d(&prex_to_reflgraph(xm.prex())?)
}

pub fn relcat_to_xmod(ic: &InternalCat) -> Result<CrossedModule, EquivError> {
    CrossedModule::new(reflgraph_to_prex(ic.graph())?)
}

/// RelCat → Xmod → RelCat: the graph comparison `q` also carries `d` to
/// `d`.
pub fn relcat_round_trip(ic: &InternalCat) -> Result<OracleReport, EquivError> {
    let xm = relcat_to_xmod(ic)?;
    let ic2 = xmod_to_relcat(&xm)?;
    let graph_report = reflgraph_round_trip(ic.graph())?;
    let se = ic.graph().pair();
    let sd = semidirect_product(xm.prex().action());
    let phi = q_comparison(se, &kernel_object(se), &sd);
    let a2 = ic2.graph().total();
    let mut d_report = OracleReport::pass(ic2.pairs().len(), "q ∘ d' = d ∘ (q □ q)");
    for (p, t) in ic2.pairs().iter().enumerate() {
        if phi[ic2.table()[p]] != ic.d(phi[t[0]], phi[t[1]]) {
            d_report = OracleReport::fail(p + 1, a2.witness(t), "q ∘ d' ≠ d ∘ (q □ q)");
            break;
        }
    }
    Ok(graph_report.and(d_report))
}

/// Xmod → RelCat → Xmod: `f` intertwines the actions and `κ`.
pub fn xmod_round_trip(xm: &CrossedModule) -> Result<OracleReport, EquivError> {
    let ic = xmod_to_relcat(xm)?;
    let xm2 = relcat_to_xmod(&ic)?;
    let pxm = xm.prex();
    let sd = semidirect_product(pxm.action());
    let f = f_comparison(&sd, &kernel_object(ic.graph().pair()));
    let report = compare_actions(pxm.action(), xm2.prex().action(), &f);
    let y_cat = pxm.fiber();
    let k_report = match y_cat.morphisms().find(|&y| xm2.prex().k(f[y]) != pxm.k(y)) {
        None => OracleReport::pass(y_cat.len(), "κ' ∘ f = κ"),
        Some(y) => OracleReport::fail(y_cat.len(), y_cat.witness(&[y]), "κ' ∘ f ≠ κ"),
    };
    Ok(report.and(k_report))
}

/// `(β: B -> B', α: A -> A')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub base: Functor,
    pub total: Functor,
}

impl GraphMorphism {
    /// The first point where `α i = i' β`, `s' α = β s` or `t' α = β t`
    /// fails.
    pub fn defect(&self, from: &ReflexiveGraph, to: &ReflexiveGraph) -> Option<Witness> {
        let (beta, alpha) = (&self.base, &self.total);
        if let Some(b) = from
            .base()
            .morphisms()
            .find(|&b| alpha.apply(from.i(b)) != to.i(beta.apply(b)))
        {
            return Some(from.base().witness(&[b]));
        }
        from.total()
            .morphisms()
            .find(|&a| {
                to.s(alpha.apply(a)) != beta.apply(from.s(a))
                    || to.t(alpha.apply(a)) != beta.apply(from.t(a))
            })
            .map(|a| from.total().witness(&[a]))
    }
}

/// A morphism of the underlying reflexive graphs automatically satisfies
/// `d' ∘ (α □ α) = α ∘ d`.
pub fn check_graph_morphism_is_functor(
    f: &GraphMorphism,
    ic1: &InternalCat,
    ic2: &InternalCat,
) -> OracleReport {
    if let Some(w) = f.defect(ic1.graph(), ic2.graph()) {
        return OracleReport::fail(0, w, "not a morphism of reflexive graphs");
    }
    let alpha = &f.total;
    for (p, t) in ic1.pairs().iter().enumerate() {
        if ic2.d(alpha.apply(t[0]), alpha.apply(t[1])) != alpha.apply(ic1.table()[p]) {
            return OracleReport::fail(
                p + 1,
                ic1.graph().total().witness(t),
                "d is not preserved",
            );
        }
    }
    OracleReport::pass(ic1.pairs().len(), "d is preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::groupoid_inverses;
    use crate::oracle::fixtures;

    #[test]
    fn sizes() {
        assert_eq!(xmod_to_relcat(&fixtures::fix_b()).unwrap().graph().total().len(), 4);
        assert_eq!(xmod_to_relcat(&fixtures::fix_a()).unwrap().graph().total().len(), 18);
    }

    #[test]
    fn units_on_fix_a() {
        let ic = xmod_to_relcat(&fixtures::fix_a()).unwrap();
        let rg = ic.graph();
        for a in rg.total().morphisms() {
            assert_eq!(ic.d(a, rg.i(rg.s(a))), a);
            assert_eq!(ic.d(rg.i(rg.t(a)), a), a);
        }
    }

    #[test]
    fn closed_form_on_groupoids() {
        for xm in [fixtures::fix_a(), fixtures::fix_b(), fixtures::fix_c()] {
            let ic = xmod_to_relcat(&xm).unwrap();
            let inv = groupoid_inverses(ic.graph().base()).unwrap();
            assert_eq!(groupoid_d_closed_form(ic.graph(), &inv), ic.table());
        }
    }

    #[test]
    fn fix_e_has_no_composition() {
        let rg = prex_to_reflgraph(&fixtures::fix_e()).unwrap();
        let err = build_composition_d(&rg).unwrap_err();
        assert!(matches!(err, EquivError::NoComposition(_)));
        assert!(err.witness().is_some());
    }

    #[test]
    fn forgetting_and_rebuilding_d() {
        let ic = xmod_to_relcat(&fixtures::fix_a()).unwrap();
        let rebuilt = build_composition_d(ic.graph()).unwrap();
        assert_eq!(rebuilt, ic);
        assert!(relcat_round_trip(&ic).unwrap().ok);
        assert!(xmod_round_trip(&fixtures::fix_b()).unwrap().ok);
    }

    #[test]
    fn recovers_the_crossed_module() {
        let xm = fixtures::fix_b();
        let back = relcat_to_xmod(&xmod_to_relcat(&xm).unwrap()).unwrap();
        assert_eq!(back.prex().fiber().len(), 2);
        for y in back.prex().fiber().morphisms() {
            assert_eq!(back.prex().base().is_identity(back.prex().k(y)), back.prex().fiber().is_identity(y));
        }
    }

    #[test]
    fn corrupted_d_is_rejected() {
        let ic = xmod_to_relcat(&fixtures::fix_a()).unwrap();
        let mut d = ic.table().to_vec();
        let p = ic
            .pairs()
            .iter()
            .position(|t| !ic.graph().total().is_identity(t[0]) && !ic.graph().total().is_identity(t[1]))
            .unwrap();
        d[p] = if d[p] == 0 { 1 } else { 0 };
        assert!(matches!(
            InternalCat::new(ic.graph().clone(), d),
            Err(EquivError::InternalCatLaw { .. })
        ));
    }

    #[test]
    fn identity_graph_morphism_preserves_d() {
        let ic = xmod_to_relcat(&fixtures::fix_a()).unwrap();
        let id = GraphMorphism {
            base: crate::fincat::Functor::identity(ic.graph().base()),
            total: crate::fincat::Functor::identity(ic.graph().total()),
        };
        assert!(check_graph_morphism_is_functor(&id, &ic, &ic).ok);
        let sq = fixtures::sign_quotient();
        assert!(check_graph_morphism_is_functor(&sq.morphism, &sq.source, &sq.target).ok);
    }
}
