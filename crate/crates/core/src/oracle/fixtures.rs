//! The canonical fixtures.
//!
//! * FIX-A: `S_3` acting on `A_3` by conjugation, `κ` the inclusion.
//! * FIX-B: `Z_2` acting trivially on `Z_2`, `κ` the identity.
//! * FIX-C: the indiscrete groupoid on two objects acting on `Z_2 ⊔ Z_2`
//!   by transport, `κ` trivial.
//! * FIX-D: a split epimorphism of monoids whose `q` is not injective,
//!   plus the unsplit raw tables it is usually quoted with.
//! * FIX-E: the trivial group acting trivially on `S_3` with `κ` trivial;
//!   pre-crossed but not crossed.

use crate::distlaw::{semidirect_product, ActionSystem, SplitEpiError, SplitEpiPair};
use crate::document::Payload;
use crate::equivalences::{
    q_from_tables, xmod_to_relcat, CrossedModule, GraphMorphism, InternalCat, PreCrossedModule,
};
use crate::fincat::{FinCat, Functor, Mor};
use crate::maps::MorphismMap;
use crate::span::ObjSet;

use super::groups::{
    alternating3, cyclic, perm_compose, perm_inverse, sign, symmetric3, trivial, POINT,
};

fn trivial_action(base: &FinCat, fiber: &FinCat) -> ActionSystem {
    ActionSystem::from_fn(base.clone(), fiber.clone(), |_, y| y).expect("trivial action")
}

fn trivial_kappa(base: &FinCat, fiber: &FinCat) -> Vec<Mor> {
    fiber.morphisms().map(|y| base.id(fiber.src(y))).collect()
}

pub fn fix_a() -> CrossedModule {
    let (s3, a3) = (symmetric3(), alternating3());
    let action = ActionSystem::from_fn(s3.cat.clone(), a3.cat.clone(), |b, y| {
        let p = s3.perm(b);
        a3.id_of(perm_compose(perm_compose(p, a3.perm(y)), perm_inverse(p)))
    })
    .expect("conjugation is an action");
    let kappa = a3.cat.morphisms().map(|y| s3.id_of(a3.perm(y))).collect();
    xmod(action, kappa)
}

pub fn fix_b() -> CrossedModule {
    let z2 = cyclic(2);
    xmod(trivial_action(&z2, &z2), z2.morphisms().collect())
}

/// The indiscrete groupoid on `{0, 1}`: `u: 0 -> 1`, `v: 1 -> 0`.
pub fn indiscrete_pair() -> FinCat {
    let objects = ObjSet::new(["0", "1"]).expect("distinct");
    let morphisms: Vec<(String, usize, usize)> = [("1_0", 0, 0), ("1_1", 1, 1), ("u", 0, 1), ("v", 1, 0)]
        .into_iter()
        .map(|(n, s, t)| (n.to_string(), s, t))
        .collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.1, m.2)).collect();
    FinCat::from_parts(objects, morphisms, vec![0, 1], |g, f| {
        let want = (ends[f].0, ends[g].1);
        ends.iter().position(|&e| e == want).expect("indiscrete")
    })
    .expect("indiscrete groupoid")
}

/// `Z_2 ⊔ Z_2` over `{0, 1}`: `e0, g0` at 0 and `e1, g1` at 1.
pub fn z2_bundle() -> FinCat {
    let objects = ObjSet::new(["0", "1"]).expect("distinct");
    let morphisms = [("e0", 0), ("g0", 0), ("e1", 1), ("g1", 1)]
        .into_iter()
        .map(|(n, x)| (n.to_string(), x, x))
        .collect();
    FinCat::from_parts(objects, morphisms, vec![0, 2], |g, f| {
        (g & !1) + ((g & 1) ^ (f & 1))
    })
    .expect("bundle of groups")
}

pub fn fix_c() -> CrossedModule {
    let (b, y) = (indiscrete_pair(), z2_bundle());
    let action = ActionSystem::from_fn(b.clone(), y.clone(), |m, v| 2 * b.tgt(m) + (v & 1))
        .expect("transport is an action");
    let kappa = trivial_kappa(&b, &y);
    xmod(action, kappa)
}

fn xmod(action: ActionSystem, kappa: Vec<Mor>) -> CrossedModule {
    let pxm = PreCrossedModule::new(action, kappa).expect("fixture is pre-crossed");
    CrossedModule::new(pxm).expect("fixture satisfies Peiffer")
}

/// `{1, g, a}` with `g² = 1`, `a² = a`, `ag = ga = a`.
pub fn z2_with_zero() -> FinCat {
    let names = ["1", "g", "a"].map(String::from).to_vec();
    FinCat::monoid(POINT, names, 0, |x, y| match (x, y) {
        (2, _) | (_, 2) => 2,
        _ => x ^ y,
    })
    .expect("monoid")
}

/// `B = {1, a}` with `a² = a` as a retract of `{1, g, a}`: `s(g) = 1`,
/// `s(a) = a`. Its kernel is `{1, g}` and `q(1, a) = a = g a = q(g, a)`.
pub fn fix_d() -> SplitEpiPair {
    let names = ["1", "a"].map(String::from).to_vec();
    let base = FinCat::monoid(POINT, names, 0, |x, y| x | y).expect("monoid");
    SplitEpiPair::new(z2_with_zero(), base, vec![0, 2], vec![0, 0, 1]).expect("split epi")
}

/// Bare split-epimorphism tables that need not satisfy the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSplitEpi {
    pub total: FinCat,
    pub base: FinCat,
    pub section: Vec<Mor>,
    pub retraction: Vec<Mor>,
}

impl RawSplitEpi {
    pub fn validate(&self) -> Result<SplitEpiPair, SplitEpiError> {
        SplitEpiPair::new(
            self.total.clone(),
            self.base.clone(),
            self.section.clone(),
            self.retraction.clone(),
        )
    }

    /// `q` evaluated on the tables, whatever they satisfy.
    pub fn q(&self) -> MorphismMap {
        q_from_tables(&self.total, &self.base, &self.section, &self.retraction)
    }
}

/// `{1, g, a}` over `Z_2 = {1, g}` with `s(g) = g`, `s(a) = 1` and `i` the
/// inclusion. `s` is not multiplicative: `s(a g) = 1 ≠ g = s(a) s(g)`.
pub fn fix_d_raw() -> RawSplitEpi {
    let names = ["1", "g"].map(String::from).to_vec();
    let base = FinCat::monoid(POINT, names, 0, |x, y| x ^ y).expect("Z2");
    RawSplitEpi {
        total: z2_with_zero(),
        base,
        section: vec![0, 1],
        retraction: vec![0, 1, 0],
    }
}

pub fn fix_e() -> PreCrossedModule {
    let (b, y) = (trivial(), symmetric3().cat);
    PreCrossedModule::new(trivial_action(&b, &y), trivial_kappa(&b, &y)).expect("pre-crossed")
}

/// `Z_2` acting trivially on the trivial group.
pub fn sign_target() -> CrossedModule {
    let (b, y) = (cyclic(2), trivial());
    xmod(trivial_action(&b, &y), trivial_kappa(&b, &y))
}

/// The internal categories of FIX-A and of [`sign_target`] with the
/// morphism `(y, b) ↦ (e, sign b)` over `sign: S_3 -> Z_2`.
pub struct SignQuotient {
    pub source: InternalCat,
    pub target: InternalCat,
    pub morphism: GraphMorphism,
}

pub fn sign_quotient() -> SignQuotient {
    let (xa, xz) = (fix_a(), sign_target());
    let source = xmod_to_relcat(&xa).expect("crossed module");
    let target = xmod_to_relcat(&xz).expect("crossed module");
    let (sd_a, sd_z) = (
        semidirect_product(xa.prex().action()),
        semidirect_product(xz.prex().action()),
    );
    let beta = sign(&symmetric3(), &cyclic(2));
    let alpha = source
        .graph()
        .total()
        .morphisms()
        .map(|a| {
            let (_, b) = sd_a.coords(a);
            sd_z.element(0, beta.apply(b))
        })
        .collect();
    let alpha = Functor::new(alpha, source.graph().total(), target.graph().total())
        .expect("(y, b) ↦ (e, sign b) is a functor");
    SignQuotient {
        source,
        target,
        morphism: GraphMorphism { base: beta, total: alpha },
    }
}

/// A fixture shipped as a file under `fixtures/`.
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub payload: Payload,
}

pub fn all() -> Vec<Fixture> {
    let fix = |name, file, payload| Fixture {
        name,
        file,
        payload,
    };
    vec![
        fix("FIX-A", "fix-a.xmod.json", Payload::Xmod(fix_a())),
        fix("FIX-A", "fix-a.relcat.json", Payload::RelCat(xmod_to_relcat(&fix_a()).expect("xmod"))),
        fix("FIX-B", "fix-b.xmod.json", Payload::Xmod(fix_b())),
        fix("FIX-C", "fix-c.xmod.json", Payload::Xmod(fix_c())),
        fix("FIX-D", "fix-d.splitepi.json", Payload::SplitEpi(fix_d())),
        fix("FIX-E", "fix-e.prexmod.json", Payload::PreX(fix_e())),
        fix("S3", "s3.category.json", Payload::Category(symmetric3().cat)),
        fix("A3", "a3.category.json", Payload::Category(alternating3().cat)),
        fix("Z2", "z2.category.json", Payload::Category(cyclic(2))),
        fix("trivial", "trivial.category.json", Payload::Category(trivial())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let a = fix_a();
        assert_eq!((a.prex().base().len(), a.prex().fiber().len()), (6, 3));
        let c = fix_c();
        assert_eq!(c.prex().base().len(), 4);
        assert_eq!(c.prex().base().objects().len(), 2);
        assert!(c.prex().fiber().is_bundle());
        assert_eq!(fix_e().fiber().len(), 6);
    }

    #[test]
    fn raw_fix_d_tables_are_not_a_split_epi() {
        let raw = fix_d_raw();
        assert!(matches!(raw.validate(), Err(SplitEpiError::Retraction(_))));
        assert_eq!(raw.total.len(), 3);
    }

    #[test]
    fn file_names_are_unique() {
        let all = all();
        let mut names: Vec<&str> = all.iter().map(|f| f.file).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }
}
