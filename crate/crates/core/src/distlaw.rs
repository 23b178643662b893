//! Actions of a category `B` on a bundle `Y`, the matching distributive
//! laws `BY -> YB`, split epimorphisms, and the semidirect product that
//! turns an action into a split epimorphism.

use std::collections::HashMap;

use thiserror::Error;

use crate::fincat::{CategoryError, FinCat, Functor, FunctorError, Mor, UNDEF};
use crate::span::span_product;
use crate::witness::Witness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("base and fiber have different object sets")]
    ObjSetMismatch,
    #[error("fiber is not a bundle: {0} joins two different objects")]
    NotABundle(Witness),
    #[error("action undefined on composable pair {0}")]
    MissingEntry(Witness),
    #[error("action given on non-composable pair {0}")]
    UnexpectedEntry(Witness),
    #[error("action given twice on {0}")]
    DuplicateEntry(Witness),
    #[error("action value at {0} is not a fiber morphism")]
    OutOfRange(Witness),
    #[error("axiom (i) fails at {0}")]
    AxiomI(Witness),
    #[error("axiom (ii) fails at {0}")]
    AxiomII(Witness),
    #[error("axiom (iii) fails at {0}")]
    AxiomIII(Witness),
}

impl ActionError {
    pub fn witness(&self) -> Option<&Witness> {
        use ActionError::*;
        match self {
            NotABundle(w) | MissingEntry(w) | UnexpectedEntry(w) | DuplicateEntry(w)
            | OutOfRange(w) | AxiomI(w) | AxiomII(w) | AxiomIII(w) => Some(w),
            ObjSetMismatch => None,
        }
    }
}

fn mixed(ids: &[(Mor, &FinCat)]) -> Witness {
    let label = ids
        .iter()
        .map(|(f, c)| c.name(*f))
        .collect::<Vec<_>>()
        .join(", ");
    Witness::new(ids.iter().map(|p| p.0).collect(), format!("({label})"))
}

/// `b ▷ y`, defined exactly when `src(b) = tgt(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSystem {
    base: FinCat,
    fiber: FinCat,
    table: Vec<Mor>,
}

impl ActionSystem {
    /// `table[b * |Y| + y]`, `None` off the composable pairs.
    pub fn new(base: FinCat, fiber: FinCat, table: Vec<Option<Mor>>) -> Result<Self, ActionError> {
        if base.objects() != fiber.objects() {
            return Err(ActionError::ObjSetMismatch);
        }
        if let Some(y) = fiber.morphisms().find(|&y| fiber.src(y) != fiber.tgt(y)) {
            return Err(ActionError::NotABundle(fiber.witness(&[y])));
        }
        let ny = fiber.len();
        assert_eq!(table.len(), base.len() * ny, "dense action table");
        let mut dense = vec![UNDEF; table.len()];
        for b in base.morphisms() {
            for y in fiber.morphisms() {
                let cell = table[b * ny + y];
                let composable = base.src(b) == fiber.tgt(y);
                match (cell, composable) {
                    (None, true) => {
                        return Err(ActionError::MissingEntry(mixed(&[(b, &base), (y, &fiber)])))
                    }
                    (Some(_), false) => {
                        return Err(ActionError::UnexpectedEntry(mixed(&[(b, &base), (y, &fiber)])))
                    }
                    (Some(v), true) if v >= ny => {
                        return Err(ActionError::OutOfRange(mixed(&[(b, &base), (y, &fiber)])))
                    }
                    (Some(v), true) => dense[b * ny + y] = v,
                    (None, false) => {}
                }
            }
        }
        let act = ActionSystem {
            base,
            fiber,
            table: dense,
        };
        act.check_axioms()?;
        Ok(act)
    }

    /// `f` is called on composable pairs only.
    pub fn from_fn(
        base: FinCat,
        fiber: FinCat,
        f: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self, ActionError> {
        let mut table = vec![None; base.len() * fiber.len()];
        for b in base.morphisms() {
            for y in fiber.morphisms() {
                if base.src(b) == fiber.tgt(y) {
                    table[b * fiber.len() + y] = Some(f(b, y));
                }
            }
        }
        Self::new(base, fiber, table)
    }

    /// `(b, y, b ▷ y)` triples.
    pub fn from_entries(
        base: FinCat,
        fiber: FinCat,
        entries: &[(Mor, Mor, Mor)],
    ) -> Result<Self, ActionError> {
        let mut table = vec![None; base.len() * fiber.len()];
        for &(b, y, v) in entries {
            if b >= base.len() || y >= fiber.len() {
                return Err(ActionError::OutOfRange(Witness::new(vec![b, y], format!("#{b}, #{y}"))));
            }
            let cell = &mut table[b * fiber.len() + y];
            if cell.is_some() {
                return Err(ActionError::DuplicateEntry(mixed(&[(b, &base), (y, &fiber)])));
            }
            *cell = Some(v);
        }
        Self::new(base, fiber, table)
    }

    // (iii) is checked before (ii): a corrupted entry in an otherwise lawful
    // table is then reported against the actor composite it breaks.
    fn check_axioms(&self) -> Result<(), ActionError> {
        let (b_cat, y_cat) = (&self.base, &self.fiber);
        for (b, y) in self.pairs() {
            if y_cat.tgt(self.act(b, y)) != b_cat.tgt(b) {
                return Err(ActionError::AxiomI(mixed(&[(b, b_cat), (y, y_cat)])));
            }
        }
        for y in y_cat.morphisms() {
            if self.act(b_cat.id(y_cat.tgt(y)), y) != y {
                return Err(ActionError::AxiomIII(y_cat.witness(&[y])));
            }
        }
        let by_tgt = b_cat.by_target();
        for outer in b_cat.morphisms() {
            for &inner in &by_tgt[b_cat.src(outer)] {
                let composite = b_cat.comp(outer, inner);
                for y in y_cat.morphisms().filter(|&y| y_cat.tgt(y) == b_cat.src(inner)) {
                    if self.act(composite, y) != self.act(outer, self.act(inner, y)) {
                        return Err(ActionError::AxiomIII(mixed(&[
                            (outer, b_cat),
                            (inner, b_cat),
                            (y, y_cat),
                        ])));
                    }
                }
            }
        }
        for b in b_cat.morphisms() {
            let x = b_cat.src(b);
            if self.act(b, y_cat.id(x)) != y_cat.id(b_cat.tgt(b)) {
                return Err(ActionError::AxiomII(b_cat.witness(&[b])));
            }
            let local: Vec<Mor> = y_cat.morphisms().filter(|&y| y_cat.tgt(y) == x).collect();
            for &y in &local {
                for &y2 in &local {
                    let lhs = self.act(b, y_cat.comp(y, y2));
                    let rhs = y_cat.comp(self.act(b, y), self.act(b, y2));
                    if lhs != rhs {
                        return Err(ActionError::AxiomII(mixed(&[(b, b_cat), (y, y_cat), (y2, y_cat)])));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn fiber(&self) -> &FinCat {
        &self.fiber
    }

    /// `b ▷ y`; panics off the composable pairs.
    pub fn act(&self, b: Mor, y: Mor) -> Mor {
        let v = self.table[b * self.fiber.len() + y];
        assert!(v != UNDEF, "action undefined on ({b}, {y})");
        v
    }

    pub fn get(&self, b: Mor, y: Mor) -> Option<Mor> {
        let v = self.table[b * self.fiber.len() + y];
        (v != UNDEF).then_some(v)
    }

    /// Composable `(b, y)` pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.base.morphisms().flat_map(move |b| {
            self.fiber
                .morphisms()
                .filter(move |&y| self.base.src(b) == self.fiber.tgt(y))
                .map(move |y| (b, y))
        })
    }

    /// Values along [`ActionSystem::pairs`].
    pub fn values(&self) -> Vec<Mor> {
        self.pairs().map(|(b, y)| self.act(b, y)).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistLawError {
    #[error("base and fiber have different object sets")]
    ObjSetMismatch,
    #[error("no value at composable pair {0}")]
    MissingEntry(Witness),
    #[error("value at {0} is not a composable (fiber, base) pair over the same endpoints")]
    BadValue(Witness),
    #[error("second component at {0} is not the actor itself")]
    NotFirstComponentForm(Witness),
    #[error("unit law fails at {0}")]
    UnitLaw(Witness),
    #[error("multiplicativity fails at {0}")]
    Multiplicativity(Witness),
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl DistLawError {
    pub fn witness(&self) -> Option<&Witness> {
        use DistLawError::*;
        match self {
            MissingEntry(w) | BadValue(w) | NotFirstComponentForm(w) | UnitLaw(w)
            | Multiplicativity(w) => Some(w),
            Action(e) => e.witness(),
            ObjSetMismatch => None,
        }
    }
}

/// `x: B x_X Y -> Y x_X B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLawMap {
    base: FinCat,
    fiber: FinCat,
    table: Vec<(Mor, Mor)>,
}

impl DistLawMap {
    /// Checks shape only: totality on composable pairs and that every value
    /// is a composable `(y', b')` with the same outer endpoints.
    pub fn new(
        base: FinCat,
        fiber: FinCat,
        table: Vec<Option<(Mor, Mor)>>,
    ) -> Result<Self, DistLawError> {
        if base.objects() != fiber.objects() {
            return Err(DistLawError::ObjSetMismatch);
        }
        let ny = fiber.len();
        let mut dense = vec![(UNDEF, UNDEF); table.len()];
        for b in base.morphisms() {
            for y in fiber.morphisms() {
                if base.src(b) != fiber.tgt(y) {
                    continue;
                }
                let w = || mixed(&[(b, &base), (y, &fiber)]);
                let Some((y2, b2)) = table[b * ny + y] else {
                    return Err(DistLawError::MissingEntry(w()));
                };
                if y2 >= ny
                    || b2 >= base.len()
                    || fiber.src(y2) != base.tgt(b2)
                    || fiber.tgt(y2) != base.tgt(b)
                    || base.src(b2) != fiber.src(y)
                {
                    return Err(DistLawError::BadValue(w()));
                }
                dense[b * ny + y] = (y2, b2);
            }
        }
        Ok(DistLawMap {
            base,
            fiber,
            table: dense,
        })
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn fiber(&self) -> &FinCat {
        &self.fiber
    }

    pub fn get(&self, b: Mor, y: Mor) -> (Mor, Mor) {
        let v = self.table[b * self.fiber.len() + y];
        assert!(v.0 != UNDEF, "distributive law undefined on ({b}, {y})");
        v
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.base.morphisms().flat_map(move |b| {
            self.fiber
                .morphisms()
                .filter(move |&y| self.base.src(b) == self.fiber.tgt(y))
                .map(move |y| (b, y))
        })
    }

    /// `(e□1).x = 1□e`: the second component is always the actor.
    pub fn check_first_component_form(&self) -> Result<(), DistLawError> {
        for (b, y) in self.pairs() {
            if self.get(b, y).1 != b {
                return Err(DistLawError::NotFirstComponentForm(mixed(&[
                    (b, &self.base),
                    (y, &self.fiber),
                ])));
            }
        }
        Ok(())
    }

    /// The two unit laws and the two multiplicativity laws, pointwise.
    pub fn check_laws(&self) -> Result<(), DistLawError> {
        let (bc, yc) = (&self.base, &self.fiber);
        for y in yc.morphisms() {
            if self.get(bc.id(yc.tgt(y)), y) != (y, bc.id(yc.src(y))) {
                return Err(DistLawError::UnitLaw(yc.witness(&[y])));
            }
        }
        for b in bc.morphisms() {
            if self.get(b, yc.id(bc.src(b))) != (yc.id(bc.tgt(b)), b) {
                return Err(DistLawError::UnitLaw(bc.witness(&[b])));
            }
        }
        // x(b∘b', y) = (1x)(x1)(b, b', y)
        let by_tgt = bc.by_target();
        for b in bc.morphisms() {
            for &b_in in &by_tgt[bc.src(b)] {
                for y in yc.morphisms().filter(|&y| yc.tgt(y) == bc.src(b_in)) {
                    let (y1, b1) = self.get(b_in, y);
                    let (y2, b2) = self.get(b, y1);
                    if self.get(bc.comp(b, b_in), y) != (y2, bc.comp(b2, b1)) {
                        return Err(DistLawError::Multiplicativity(mixed(&[
                            (b, bc),
                            (b_in, bc),
                            (y, yc),
                        ])));
                    }
                }
            }
        }
        // x(b, y∘y') = (m1)(1x)(x1)(b, y, y')
        let y_by_tgt = yc.by_target();
        for (b, y) in self.pairs() {
            for &y_in in &y_by_tgt[yc.src(y)] {
                let (y1, b1) = self.get(b, y);
                let (y2, b2) = self.get(b1, y_in);
                if self.get(b, yc.comp(y, y_in)) != (yc.comp(y1, y2), b2) {
                    return Err(DistLawError::Multiplicativity(mixed(&[
                        (b, bc),
                        (y, yc),
                        (y_in, yc),
                    ])));
                }
            }
        }
        Ok(())
    }
}

/// `x(b, y) = (b ▷ y, b)`.
pub fn action_to_distlaw(act: &ActionSystem) -> DistLawMap {
    let ny = act.fiber.len();
    let mut table = vec![(UNDEF, UNDEF); act.base.len() * ny];
    for (b, y) in act.pairs() {
        table[b * ny + y] = (act.act(b, y), b);
    }
    DistLawMap {
        base: act.base.clone(),
        fiber: act.fiber.clone(),
        table,
    }
}

/// Reads `▷` off the first component; the result is validated as an action.
pub fn distlaw_to_action(x: &DistLawMap) -> Result<ActionSystem, DistLawError> {
    x.check_first_component_form()?;
    let ny = x.fiber.len();
    let mut table = vec![None; x.base.len() * ny];
    for (b, y) in x.pairs() {
        table[b * ny + y] = Some(x.get(b, y).0);
    }
    Ok(ActionSystem::new(x.base.clone(), x.fiber.clone(), table)?)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitEpiError {
    #[error("section i is not a functor: {0}")]
    Section(FunctorError),
    #[error("retraction s is not a functor: {0}")]
    Retraction(FunctorError),
    #[error("s∘i is not the identity at {0}")]
    NotSplit(Witness),
}

impl SplitEpiError {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SplitEpiError::Section(e) | SplitEpiError::Retraction(e) => e.witness(),
            SplitEpiError::NotSplit(w) => Some(w),
        }
    }
}

/// `B -i-> A -s-> B` with `s∘i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEpiPair {
    total: FinCat,
    base: FinCat,
    section: Functor,
    retraction: Functor,
}

impl SplitEpiPair {
    pub fn new(
        total: FinCat,
        base: FinCat,
        section: Vec<Mor>,
        retraction: Vec<Mor>,
    ) -> Result<Self, SplitEpiError> {
        let section = Functor::new(section, &base, &total).map_err(SplitEpiError::Section)?;
        let retraction =
            Functor::new(retraction, &total, &base).map_err(SplitEpiError::Retraction)?;
        if let Some(b) = base
            .morphisms()
            .find(|&b| retraction.apply(section.apply(b)) != b)
        {
            return Err(SplitEpiError::NotSplit(base.witness(&[b])));
        }
        Ok(SplitEpiPair {
            total,
            base,
            section,
            retraction,
        })
    }

    pub fn total(&self) -> &FinCat {
        &self.total
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn section(&self) -> &Functor {
        &self.section
    }

    pub fn retraction(&self) -> &Functor {
        &self.retraction
    }

    pub fn i(&self, b: Mor) -> Mor {
        self.section.apply(b)
    }

    pub fn s(&self, a: Mor) -> Mor {
        self.retraction.apply(a)
    }
}

/// `Y ⋊ B` with its split epimorphism and coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semidirect {
    pub pair: SplitEpiPair,
    coords: Vec<(Mor, Mor)>,
    index: HashMap<(Mor, Mor), Mor>,
    fiber_ids: Vec<Mor>,
}

impl Semidirect {
    pub fn element(&self, y: Mor, b: Mor) -> Mor {
        self.index[&(y, b)]
    }

    pub fn coords(&self, a: Mor) -> (Mor, Mor) {
        self.coords[a]
    }

    /// `y ↦ (y, 1)`.
    pub fn fiber_embedding(&self) -> &[Mor] {
        &self.fiber_ids
    }
}

/// Morphisms `(y, b)` with `src(y) = tgt(b)`, composed as
/// `(y, b)(y', b') = (y ∘ (b ▷ y'), b ∘ b')`.
pub fn semidirect_product(act: &ActionSystem) -> Semidirect {
    try_semidirect(act).expect("semidirect product of a lawful action is a category")
}

fn try_semidirect(act: &ActionSystem) -> Result<Semidirect, CategoryError> {
    let (y_cat, b_cat) = (&act.fiber, &act.base);
    let prod = span_product(&y_cat.underlying_span(), &b_cat.underlying_span())
        .expect("same object set");
    let coords = prod.provenance.clone();
    let index: HashMap<(Mor, Mor), Mor> = coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let morphisms = coords
        .iter()
        .map(|&(y, b)| {
            (
                format!("({},{})", y_cat.name(y), b_cat.name(b)),
                b_cat.src(b),
                b_cat.tgt(b),
            )
        })
        .collect();
    let n_obj = b_cat.objects().len();
    let identities = (0..n_obj)
        .map(|x| index[&(y_cat.id(x), b_cat.id(x))])
        .collect();
    let total = FinCat::from_parts(b_cat.objects().clone(), morphisms, identities, |g, f| {
        let (y, b) = coords[g];
        let (y2, b2) = coords[f];
        index[&(y_cat.comp(y, act.act(b, y2)), b_cat.comp(b, b2))]
    })?;
    let section = b_cat
        .morphisms()
        .map(|b| index[&(y_cat.id(b_cat.tgt(b)), b)])
        .collect();
    let retraction = coords.iter().map(|&(_, b)| b).collect();
    let pair = SplitEpiPair::new(total, b_cat.clone(), section, retraction)
        .expect("u1 and e1 are functors");
    let fiber_ids = y_cat
        .morphisms()
        .map(|y| index[&(y, b_cat.id(y_cat.tgt(y)))])
        .collect();
    Ok(Semidirect {
        pair,
        coords,
        index,
        fiber_ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;
    use crate::oracle::groups::{alternating3, cycle_name, perm_compose, perm_inverse, symmetric3};

    #[test]
    fn conjugation_matches_permutation_arithmetic() {
        let act = fixtures::fix_a().into_prex().action().clone();
        let (s3, a3) = (symmetric3(), alternating3());
        for (b, y) in act.pairs() {
            let (pb, py) = (s3.perm(b), a3.perm(y));
            let expected = perm_compose(perm_compose(pb, py), perm_inverse(pb));
            assert_eq!(act.fiber().name(act.act(b, y)), cycle_name(expected));
        }
    }

    #[test]
    fn transposition_acting_on_a_three_cycle() {
        let act = fixtures::fix_a().into_prex().action().clone();
        let x = action_to_distlaw(&act);
        let b = act.base().index_of("(12)").unwrap();
        let y = act.fiber().index_of("(123)").unwrap();
        let (y2, b2) = x.get(b, y);
        assert_eq!((act.fiber().name(y2), act.base().name(b2)), ("(132)", "(12)"));
    }

    #[test]
    fn corrupted_conjugation_breaks_axiom_iii() {
        let act = fixtures::fix_a().into_prex().action().clone();
        let (base, fiber) = (act.base().clone(), act.fiber().clone());
        let ny = fiber.len();
        let mut table: Vec<Option<Mor>> = vec![None; base.len() * ny];
        for (b, y) in act.pairs() {
            table[b * ny + y] = Some(act.act(b, y));
        }
        let b = base.index_of("(12)").unwrap();
        let y = fiber.index_of("(123)").unwrap();
        table[b * ny + y] = Some(y);
        assert!(matches!(
            ActionSystem::new(base, fiber, table),
            Err(ActionError::AxiomIII(_))
        ));
    }

    #[test]
    fn trivial_action_gives_swap_without_twist() {
        let act = fixtures::fix_b().into_prex().action().clone();
        let x = action_to_distlaw(&act);
        for (b, y) in act.pairs() {
            assert_eq!(x.get(b, y), (y, b));
        }
        assert_eq!(distlaw_to_action(&x).unwrap(), act);
    }

    #[test]
    fn swapped_second_component_is_rejected() {
        let act = fixtures::fix_b().into_prex().action().clone();
        let (base, fiber) = (act.base().clone(), act.fiber().clone());
        let ny = fiber.len();
        let other = |b: Mor| 1 - b;
        let mut table = vec![None; base.len() * ny];
        for (b, y) in act.pairs() {
            table[b * ny + y] = Some((act.act(b, y), other(b)));
        }
        let x = DistLawMap::new(base, fiber, table).unwrap();
        assert!(matches!(
            distlaw_to_action(&x),
            Err(DistLawError::NotFirstComponentForm(_))
        ));
    }

    #[test]
    fn transport_on_the_two_object_bundle() {
        let act = fixtures::fix_c().into_prex().action().clone();
        let x = action_to_distlaw(&act);
        let u = act.base().index_of("u").unwrap();
        let g_src = act.fiber().hom(act.base().src(u), act.base().src(u));
        let g = g_src.into_iter().find(|&y| !act.fiber().is_identity(y)).unwrap();
        let (y2, b2) = x.get(u, g);
        assert_eq!(b2, u);
        assert_eq!(act.fiber().src(y2), act.base().tgt(u));
        assert!(!act.fiber().is_identity(y2));
    }

    #[test]
    fn semidirect_sizes() {
        let a = semidirect_product(fixtures::fix_a().prex().action());
        assert_eq!(a.pair.total().len(), 18);
        let c = semidirect_product(fixtures::fix_c().prex().action());
        assert_eq!(c.pair.total().len(), 8);
        assert_eq!(c.pair.total().objects().len(), 2);
        for b in c.pair.base().morphisms() {
            assert_eq!(c.pair.s(c.pair.i(b)), b);
        }
    }

    #[test]
    fn trivial_base_semidirect_is_the_fiber() {
        let pxm = fixtures::fix_e();
        let sd = semidirect_product(pxm.action());
        let y = pxm.fiber();
        assert_eq!(sd.pair.total().len(), y.len());
        for g in y.morphisms() {
            for f in y.morphisms() {
                let (eg, ef) = (sd.fiber_embedding()[g], sd.fiber_embedding()[f]);
                assert_eq!(sd.pair.total().comp(eg, ef), sd.fiber_embedding()[y.comp(g, f)]);
            }
        }
    }
}
