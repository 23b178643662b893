//! Property tests over generated instances: small monoids, their
//! pre-crossed modules, and split epimorphisms built from idempotent
//! endomorphisms.

use std::sync::OnceLock;

use proptest::prelude::*;

use xmodkit::distlaw::{action_to_distlaw, semidirect_product, SplitEpiPair};
use xmodkit::document::{Document, Payload};
use xmodkit::equivalences::{
    action_round_trip, b_n, build_composition_d, build_q, check_internal_cat_laws, check_peiffer,
    groupoid_q_inverse, h_n, kernel_object, prex_round_trip, prex_to_reflgraph, q_n,
    splitepi_round_trip, PreCrossedModule, ReflexiveGraph,
};
use xmodkit::fincat::{groupoid_inverses, FinCat, Mor, RawCategory};
use xmodkit::oracle::groups::{cyclic, small_monoids, symmetric3};
use xmodkit::oracle::{
    brute_force_inverse, enumerate_functors, enumerate_prexmods, generic_distlaw_multiplication,
    Budget,
};

fn monoids() -> &'static [FinCat] {
    static CELL: OnceLock<Vec<FinCat>> = OnceLock::new();
    CELL.get_or_init(|| (1..=3).flat_map(small_monoids).collect())
}

fn prexmods() -> &'static [PreCrossedModule] {
    static CELL: OnceLock<Vec<PreCrossedModule>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for b in monoids() {
            for y in monoids() {
                out.extend(enumerate_prexmods(b, y, &mut Budget::default()).unwrap());
            }
        }
        out
    })
}

/// `A -s-> B -i-> A` with `B` the image of an idempotent endomorphism `e`.
fn split_epi_from_idempotent(a: &FinCat, e: &[Mor]) -> SplitEpiPair {
    let mut image: Vec<Mor> = e.to_vec();
    image.sort();
    image.dedup();
    let pos = |m: Mor| image.binary_search(&m).unwrap();
    let b = FinCat::monoid(
        "*",
        image.iter().map(|&m| a.name(m).to_string()).collect(),
        pos(a.id(0)),
        |g, f| pos(a.comp(image[g], image[f])),
    )
    .unwrap();
    SplitEpiPair::new(a.clone(), b, image.clone(), e.iter().map(|&m| pos(m)).collect()).unwrap()
}

fn split_epis() -> &'static [SplitEpiPair] {
    static CELL: OnceLock<Vec<SplitEpiPair>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for a in (1..=4).flat_map(small_monoids) {
            for e in enumerate_functors(&a, &a, &mut Budget::default()).unwrap() {
                let t = e.table();
                if (0..t.len()).all(|m| t[t[m]] == t[m]) {
                    out.push(split_epi_from_idempotent(&a, t));
                }
            }
        }
        out
    })
}

/// Category laws on raw tables, checked without `FinCat`.
fn raw_is_category(raw: &RawCategory) -> bool {
    use std::collections::HashMap;
    let ends: HashMap<&str, (&str, &str)> = raw
        .morphisms
        .iter()
        .map(|m| (m.name.as_str(), (m.src.as_str(), m.tgt.as_str())))
        .collect();
    let mut comp: HashMap<(&str, &str), &str> = HashMap::new();
    for [g, f, gf] in &raw.compose {
        if comp.insert((g.as_str(), f.as_str()), gf.as_str()).is_some() {
            return false;
        }
    }
    let names: Vec<&str> = raw.morphisms.iter().map(|m| m.name.as_str()).collect();
    for &g in &names {
        for &f in &names {
            let composable = ends[f].1 == ends[g].0;
            match (composable, comp.get(&(g, f))) {
                (true, Some(gf)) if ends.get(gf) == Some(&(ends[f].0, ends[g].1)) => {}
                (false, None) => {}
                _ => return false,
            }
        }
    }
    for x in &raw.objects {
        let ids: Vec<&str> = raw
            .identities
            .iter()
            .map(String::as_str)
            .filter(|i| ends.get(i).map(|e| e.0) == Some(x.as_str()))
            .collect();
        let [id] = ids[..] else { return false };
        if ends[id].1 != x {
            return false;
        }
        for &f in &names {
            if ends[f].1 == x && comp[&(id, f)] != f {
                return false;
            }
            if ends[f].0 == x && comp[&(f, id)] != f {
                return false;
            }
        }
    }
    for &h in &names {
        for &g in &names {
            for &f in &names {
                if ends[f].1 == ends[g].0 && ends[g].1 == ends[h].0 {
                    if comp[&(comp[&(h, g)], f)] != comp[&(h, comp[&(g, f)])] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mutated_tables_validate_iff_the_laws_hold(m in 0usize..45, cell in any::<prop::sample::Index>(), to in any::<prop::sample::Index>()) {
        let monoid = (1..=4).flat_map(small_monoids).nth(m).unwrap();
        let mut raw = monoid.to_raw();
        let k = cell.index(raw.compose.len());
        raw.compose[k][2] = raw.morphisms[to.index(raw.morphisms.len())].name.clone();
        prop_assert_eq!(FinCat::from_raw(&raw).is_ok(), raw_is_category(&raw));
    }

    #[test]
    fn peiffer_iff_composition(p in any::<prop::sample::Index>()) {
        let pxm = &prexmods()[p.index(prexmods().len())];
        let rg = prex_to_reflgraph(pxm).unwrap();
        let built = build_composition_d(&rg);
        prop_assert_eq!(check_peiffer(pxm).ok, built.is_ok());
        if let Ok(ic) = built {
            prop_assert!(check_internal_cat_laws(ic.graph(), ic.pairs(), ic.table()).ok);
        }
    }

    #[test]
    fn round_trips_and_oracle_agreement(p in any::<prop::sample::Index>()) {
        let pxm = &prexmods()[p.index(prexmods().len())];
        let act = pxm.action();
        let sd = semidirect_product(act);
        prop_assert!(action_round_trip(act).unwrap().ok);
        prop_assert!(splitepi_round_trip(&sd.pair).unwrap().ok);
        prop_assert!(prex_round_trip(pxm).unwrap().ok);
        let generic = generic_distlaw_multiplication(&action_to_distlaw(act));
        prop_assert_eq!(generic.to_raw(), sd.pair.total().to_raw());
    }

    #[test]
    fn b_and_h_are_bijective_on_span_instances(p in any::<prop::sample::Index>(), n in 1usize..=2) {
        let pxm = &prexmods()[p.index(prexmods().len())];
        let rg = prex_to_reflgraph(pxm).unwrap();
        prop_assert!(b_n(pxm, n).unwrap().is_bijective());
        prop_assert!(h_n(&rg, n).unwrap().is_bijective());
    }

    #[test]
    fn documents_round_trip(p in any::<prop::sample::Index>()) {
        let pxm = prexmods()[p.index(prexmods().len())].clone();
        let doc = Document::new(Payload::PreX(pxm));
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(Document::parse(&back.to_json()).unwrap(), back);
    }

    #[test]
    fn kernel_and_q_on_general_split_epis(k in any::<prop::sample::Index>()) {
        let se = &split_epis()[k.index(split_epis().len())];
        let kernel = kernel_object(se);
        let expected: Vec<Mor> = se
            .total()
            .morphisms()
            .filter(|&a| se.base().is_identity(se.s(a)))
            .collect();
        prop_assert_eq!(kernel.carrier(), &expected[..]);
        let q = build_q(se);
        prop_assert_eq!(q.is_bijective(), brute_force_inverse(&q).is_ok());
        if groupoid_inverses(se.base()).is_ok() {
            prop_assert!(q.is_bijective());
        }
    }

    #[test]
    fn qn_invertible_iff_q_invertible(k in any::<prop::sample::Index>(), n in 2usize..=3) {
        let se = &split_epis()[k.index(split_epis().len())];
        let rg = ReflexiveGraph::new(se.clone(), se.retraction().table().to_vec()).unwrap();
        prop_assert_eq!(q_n(&rg, n).unwrap().is_bijective(), q_n(&rg, 1).unwrap().is_bijective());
        prop_assert!(h_n(&rg, n - 1).unwrap().is_bijective());
    }

    #[test]
    fn groupoid_inverse_matches_brute_force(g in 0usize..4, y in 0usize..3, a in any::<prop::sample::Index>()) {
        let bases = [cyclic(1), cyclic(2), cyclic(3), symmetric3().cat];
        let fibers = [cyclic(2), cyclic(3), symmetric3().cat];
        let actions = xmodkit::oracle::enumerate_actions(&bases[g], &fibers[y], &mut Budget::default()).unwrap();
        let act = &actions[a.index(actions.len())];
        let se = semidirect_product(act).pair;
        let inv = groupoid_inverses(se.base()).unwrap();
        let brute = brute_force_inverse(&build_q(&se)).unwrap();
        let closed = groupoid_q_inverse(&se, &inv);
        prop_assert_eq!(closed.table(), brute.table());
    }
}

#[test]
fn generated_split_epis_include_non_invertible_q() {
    let bad = split_epis().iter().filter(|se| !build_q(se).is_bijective()).count();
    assert!(bad > 0);
    assert!(bad < split_epis().len());
}
