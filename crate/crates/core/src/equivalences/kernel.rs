use crate::distlaw::{
    distlaw_to_action, semidirect_product, ActionSystem, DistLawMap, SplitEpiPair,
};
use crate::fincat::{FinCat, Functor, InverseMap, Mor, Obj};
use crate::maps::{MorphismMap, TupleSet};
use crate::report::OracleReport;
use crate::span::pullback;

use super::{bijectivity_witness, tuple_witness, EquivError};

/// The morphisms of `A` sent to identities by `s`, as a bundle over `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelObject {
    carrier: Vec<Mor>,
    base_point: Vec<Obj>,
    position: Vec<Option<Mor>>,
    bundle: FinCat,
}

impl KernelObject {
    /// Ids in `A`, ascending.
    pub fn carrier(&self) -> &[Mor] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn bundle(&self) -> &FinCat {
        &self.bundle
    }

    /// `p_A`: kernel id to morphism of `A`.
    pub fn embed(&self, k: Mor) -> Mor {
        self.carrier[k]
    }

    pub fn base_point(&self, k: Mor) -> Obj {
        self.base_point[k]
    }

    /// The kernel id of a morphism of `A`, if it lies in the kernel.
    pub fn position(&self, a: Mor) -> Option<Mor> {
        self.position[a]
    }
}

/// `(a, x)` with `s(a) = 1_x`, read off the tables. Works on unvalidated
/// data so that a broken split epimorphism can still be inspected.
pub fn kernel_carrier(base: &FinCat, retraction: &[Mor]) -> Vec<(Mor, Obj)> {
    pullback(retraction, base.identities()).pairs().to_vec()
}

pub fn kernel_object(se: &SplitEpiPair) -> KernelObject {
    let a_cat = se.total();
    let pairs = kernel_carrier(se.base(), se.retraction().table());
    let carrier: Vec<Mor> = pairs.iter().map(|p| p.0).collect();
    let base_point: Vec<Obj> = pairs.iter().map(|p| p.1).collect();
    let mut position = vec![None; a_cat.len()];
    for (k, &a) in carrier.iter().enumerate() {
        position[a] = Some(k);
    }
    let morphisms = carrier
        .iter()
        .zip(&base_point)
        .map(|(&a, &x)| (a_cat.name(a).to_string(), x, x))
        .collect();
    let identities = (0..a_cat.objects().len())
        .map(|x| position[a_cat.id(x)].expect("identities lie in the kernel"))
        .collect();
    let bundle = FinCat::from_parts_trusted(a_cat.objects().clone(), morphisms, identities, |g, f| {
        position[a_cat.comp(carrier[g], carrier[f])].expect("the kernel is closed under composition")
    })
    .expect("the kernel of a split epimorphism is a subcategory");
    KernelObject {
        carrier,
        base_point,
        position,
        bundle,
    }
}

/// `q(k, b) = k ∘ i(b)` on `{(k, b) | s(k) = 1_x, x = tgt(b)}`, computed
/// from bare tables.
pub fn q_from_tables(
    total: &FinCat,
    base: &FinCat,
    section: &[Mor],
    retraction: &[Mor],
) -> MorphismMap {
    let kernel = kernel_carrier(base, retraction);
    let points: Vec<Obj> = kernel.iter().map(|p| p.1).collect();
    let tgts: Vec<Obj> = base.morphisms().map(|b| base.tgt(b)).collect();
    let domain = TupleSet::new(
        pullback(&points, &tgts)
            .pairs()
            .iter()
            .map(|&(k, b)| vec![kernel[k].0, b]),
    );
    let codomain = TupleSet::new(total.morphisms().map(|a| vec![a]));
    MorphismMap::from_fn("q", domain, codomain, |t| {
        vec![total.comp(t[0], section[t[1]])]
    })
    .expect("q lands in A")
}

pub fn build_q(se: &SplitEpiPair) -> MorphismMap {
    q_from_tables(
        se.total(),
        se.base(),
        se.section().table(),
        se.retraction().table(),
    )
}

/// `q`, provided it is bijective.
pub fn validate_split_epi(se: &SplitEpiPair) -> Result<MorphismMap, EquivError> {
    let q = build_q(se);
    match bijectivity_witness(&q, &[se.total(), se.base()], &[se.total()]) {
        None => Ok(q),
        Some(w) => Err(EquivError::QNotInvertible(w)),
    }
}

/// `a ↦ (a ∘ i(s(a)⁻¹), s(a))` for a groupoid base.
pub fn groupoid_q_inverse(se: &SplitEpiPair, inv: &InverseMap) -> MorphismMap {
    let q = build_q(se);
    let a_cat = se.total();
    MorphismMap::from_fn("q⁻¹", q.codomain().clone(), q.domain().clone(), |t| {
        let b = se.s(t[0]);
        vec![a_cat.comp(t[0], se.i(inv.get(b))), b]
    })
    .expect("a ∘ i(s(a)⁻¹) lies in the kernel")
}

/// `x = q⁻¹ ∘ m ∘ (i p_A)`: `x(b, k) = q⁻¹(i(b) ∘ k)`.
pub fn splitepi_distlaw(se: &SplitEpiPair) -> Result<DistLawMap, EquivError> {
    let q = validate_split_epi(se)?;
    let kernel = kernel_object(se);
    let (a_cat, b_cat) = (se.total(), se.base());
    let nk = kernel.len();
    let mut table = vec![None; b_cat.len() * nk];
    for b in b_cat.morphisms() {
        for k in 0..nk {
            if b_cat.src(b) != kernel.base_point(k) {
                continue;
            }
            let v = a_cat.comp(se.i(b), kernel.embed(k));
            let pre = q.invert_tuple(&[v]).expect("q is bijective");
            let k2 = kernel.position(pre[0]).expect("q⁻¹ lands in the kernel");
            table[b * nk + k] = Some((k2, pre[1]));
        }
    }
    Ok(DistLawMap::new(b_cat.clone(), kernel.bundle().clone(), table)?)
}

/// The action of `B` on the kernel bundle: `b ▷ k` is the first component
/// of `q⁻¹(i(b) ∘ k)`.
pub fn splitepi_to_distlaw(se: &SplitEpiPair) -> Result<ActionSystem, EquivError> {
    Ok(distlaw_to_action(&splitepi_distlaw(se)?)?)
}

/// Checks that `phi: from.A -> to.A` is an isomorphism of categories with
/// `phi ∘ i = i'` and `s' ∘ phi = s`.
pub(crate) fn compare_split_epis(
    from: &SplitEpiPair,
    to: &SplitEpiPair,
    phi: &[Mor],
) -> OracleReport {
    let (a1, a2) = (from.total(), to.total());
    let checked = a1.len();
    let note = "q is an isomorphism commuting with i and s";
    let mut hit = vec![false; a2.len()];
    for a in a1.morphisms() {
        if std::mem::replace(&mut hit[phi[a]], true) || a1.len() != a2.len() {
            return OracleReport::fail(checked, a1.witness(&[a]), "q is not bijective");
        }
    }
    if let Err(e) = Functor::new(phi.to_vec(), a1, a2) {
        let w = e.witness().cloned().unwrap_or_else(|| a1.witness(&[]));
        return OracleReport::fail(checked, w, format!("q is not a functor: {e}"));
    }
    for b in from.base().morphisms() {
        if phi[from.i(b)] != to.i(b) {
            return OracleReport::fail(checked, from.base().witness(&[b]), "q ∘ i ≠ i");
        }
    }
    for a in a1.morphisms() {
        if to.s(phi[a]) != from.s(a) {
            return OracleReport::fail(checked, a1.witness(&[a]), "s ∘ q ≠ s");
        }
    }
    OracleReport::pass(checked, note)
}

/// The comparison `(y, b) ↦ p_A(y) ∘ i(b)` from the semidirect product of
/// the induced action back to `A`.
pub(crate) fn q_comparison(
    se: &SplitEpiPair,
    kernel: &KernelObject,
    sd: &crate::distlaw::Semidirect,
) -> Vec<Mor> {
    sd.pair
        .total()
        .morphisms()
        .map(|a| {
            let (k, b) = sd.coords(a);
            se.total().comp(kernel.embed(k), se.i(b))
        })
        .collect()
}

/// SplitEpi → DistLaw → SplitEpi is isomorphic to the identity via `q`.
pub fn splitepi_round_trip(se: &SplitEpiPair) -> Result<OracleReport, EquivError> {
    let act = splitepi_to_distlaw(se)?;
    let sd = semidirect_product(&act);
    let kernel = kernel_object(se);
    let phi = q_comparison(se, &kernel, &sd);
    Ok(compare_split_epis(&sd.pair, se, &phi))
}

/// Checks that `f: Y -> K` is an isomorphism of bundles intertwining the
/// two actions of the same base.
pub(crate) fn compare_actions(from: &ActionSystem, to: &ActionSystem, f: &[Mor]) -> OracleReport {
    let (y1, y2) = (from.fiber(), to.fiber());
    let checked = from.pairs().count();
    let mut hit = vec![false; y2.len()];
    for y in y1.morphisms() {
        if std::mem::replace(&mut hit[f[y]], true) || y1.len() != y2.len() {
            return OracleReport::fail(checked, y1.witness(&[y]), "f is not bijective");
        }
    }
    if let Err(e) = Functor::new(f.to_vec(), y1, y2) {
        let w = e.witness().cloned().unwrap_or_else(|| y1.witness(&[]));
        return OracleReport::fail(checked, w, format!("f is not a functor: {e}"));
    }
    for (b, y) in from.pairs() {
        if f[from.act(b, y)] != to.act(b, f[y]) {
            return OracleReport::fail(
                checked,
                tuple_witness(&[b, y], &[from.base(), y1]),
                "f does not intertwine the actions",
            );
        }
    }
    OracleReport::pass(checked, "f is an isomorphism of actions")
}

/// `y ↦ (y, 1)` as a map into the kernel of the semidirect product.
pub(crate) fn f_comparison(sd: &crate::distlaw::Semidirect, kernel: &KernelObject) -> Vec<Mor> {
    sd.fiber_embedding()
        .iter()
        .map(|&a| kernel.position(a).expect("(y, 1) lies in the kernel"))
        .collect()
}

/// DistLaw → SplitEpi → DistLaw is isomorphic to the identity via `f`.
pub fn action_round_trip(act: &ActionSystem) -> Result<OracleReport, EquivError> {
    let sd = semidirect_product(act);
    let act2 = splitepi_to_distlaw(&sd.pair)?;
    let kernel = kernel_object(&sd.pair);
    Ok(compare_actions(act, &act2, &f_comparison(&sd, &kernel)))
}

#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    SplitEpi(&'a SplitEpiPair),
    Action(&'a ActionSystem),
}

pub fn natural_iso_check(instance: Instance<'_>) -> Result<OracleReport, EquivError> {
    match instance {
        Instance::SplitEpi(se) => splitepi_round_trip(se),
        Instance::Action(act) => action_round_trip(act),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::groupoid_inverses;
    use crate::oracle::fixtures;
    use crate::oracle::groups::cyclic;

    fn fix_a_pair() -> (SplitEpiPair, crate::distlaw::Semidirect) {
        let sd = semidirect_product(fixtures::fix_a().prex().action());
        (sd.pair.clone(), sd)
    }

    #[test]
    fn invertible_retraction_leaves_only_identities() {
        let z2 = cyclic(2);
        let id: Vec<Mor> = z2.morphisms().collect();
        let se = SplitEpiPair::new(z2.clone(), z2, id.clone(), id).unwrap();
        let k = kernel_object(&se);
        assert_eq!(k.carrier(), se.total().identities());
    }

    #[test]
    fn kernel_sizes() {
        assert_eq!(kernel_object(&fix_a_pair().0).len(), 3);
        let raw = fixtures::fix_d_raw();
        let names: Vec<&str> = kernel_carrier(&raw.base, &raw.retraction)
            .iter()
            .map(|&(a, _)| raw.total.name(a))
            .collect();
        assert_eq!(names, ["1", "a"]);
    }

    #[test]
    fn discrete_base_makes_q_the_identity() {
        let se = semidirect_product(fixtures::fix_e().action()).pair;
        let q = validate_split_epi(&se).unwrap();
        for (p, t) in q.domain().iter().enumerate() {
            assert_eq!(q.codomain().get(q.apply(p)), &t[..1]);
        }
    }

    #[test]
    fn raw_tables_collide_on_a() {
        let q = fixtures::fix_d_raw().q();
        assert!(!q.is_bijective());
        let a = fixtures::fix_d_raw().total.index_of("a").unwrap();
        let hits: Vec<&[Mor]> = q
            .domain()
            .iter()
            .enumerate()
            .filter(|&(p, _)| q.codomain().get(q.apply(p)) == [a])
            .map(|(_, t)| t)
            .collect();
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn corrected_split_epi_is_valid_but_q_is_not_invertible() {
        let se = fixtures::fix_d();
        assert!(matches!(validate_split_epi(&se), Err(EquivError::QNotInvertible(_))));
        assert!(splitepi_to_distlaw(&se).is_err());
    }

    #[test]
    fn groupoid_inverse_special_cases() {
        let (se, sd) = fix_a_pair();
        let inv = groupoid_inverses(se.base()).unwrap();
        let qi = groupoid_q_inverse(&se, &inv);
        let kernel = kernel_object(&se);
        for b in se.base().morphisms() {
            let id = se.total().id(se.base().tgt(b));
            assert_eq!(qi.apply_tuple(&[se.i(b)]), Some(&[id, b][..]));
        }
        for &k in kernel.carrier() {
            assert_eq!(qi.apply_tuple(&[k]), Some(&[k, se.base().id(0)][..]));
        }
        let (y, b) = (
            fixtures::fix_a().prex().fiber().index_of("(123)").unwrap(),
            se.base().index_of("(12)").unwrap(),
        );
        let a = sd.element(y, b);
        let expected = [se.total().comp(a, se.i(inv.get(b))), b];
        assert_eq!(qi.apply_tuple(&[a]), Some(&expected[..]));
    }

    #[test]
    fn discrete_base_gives_trivial_action() {
        let se = semidirect_product(fixtures::fix_e().action()).pair;
        let act = splitepi_to_distlaw(&se).unwrap();
        for (b, y) in act.pairs() {
            assert_eq!(act.act(b, y), y);
        }
    }

    #[test]
    fn natural_isomorphisms_on_fixtures() {
        for (xm, points) in [(fixtures::fix_a(), 18), (fixtures::fix_c(), 8)] {
            let act = xm.prex().action();
            let se = semidirect_product(act).pair;
            let r = natural_iso_check(Instance::SplitEpi(&se)).unwrap();
            assert!(r.ok, "{r}");
            assert_eq!(r.checked, points);
            assert!(natural_iso_check(Instance::Action(act)).unwrap().ok);
        }
    }
}
