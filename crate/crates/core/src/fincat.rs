//! Finite small categories with a fixed object set (monoids in spans over
//! `X`), identity-on-objects functors and groupoid inverses.
//!
//! Composition is written `comp(g, f)`: `f` first, then `g`. It is defined
//! exactly when `tgt(f) = src(g)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::span::{ObjSet, Span, SpanError};
use crate::witness::Witness;

pub type Mor = usize;
pub type Obj = usize;

pub(crate) const UNDEF: Mor = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// Name-level category tables, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<String>,
    /// `[g, f, g∘f]` triples.
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("object set: {0}")]
    Objects(#[from] SpanError),
    #[error("duplicate morphism name `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("no identity declared for object {0}")]
    MissingIdentity(Witness),
    #[error("more than one identity declared for object {0}")]
    DuplicateIdentity(Witness),
    #[error("declared identity {0} is not an endomorphism")]
    IdentityEndpoints(Witness),
    #[error("composite declared for non-composable pair {0}")]
    BadComposabilityDomain(Witness),
    #[error("no composite declared for composable pair {0}")]
    MissingComposite(Witness),
    #[error("conflicting composites declared for {0}")]
    ConflictingComposite(Witness),
    #[error("composite of {0} has the wrong source or target")]
    CompositeEndpoints(Witness),
    #[error("unit law fails at {0}")]
    UnitLawViolation(Witness),
    #[error("associativity fails at {0}")]
    AssociativityViolation(Witness),
    #[error("{0} has no inverse")]
    NotGroupoid(Witness),
}

impl CategoryError {
    pub fn witness(&self) -> Option<&Witness> {
        use CategoryError::*;
        match self {
            MissingIdentity(w) | DuplicateIdentity(w) | IdentityEndpoints(w)
            | BadComposabilityDomain(w) | MissingComposite(w) | ConflictingComposite(w)
            | CompositeEndpoints(w) | UnitLawViolation(w) | AssociativityViolation(w)
            | NotGroupoid(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: ObjSet,
    names: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    identities: Vec<Mor>,
    // comp[g * n + f], UNDEF off the composable pairs
    comp: Vec<Mor>,
}

impl FinCat {
    /// Validates name-level tables. Morphism ids follow the order of
    /// `raw.morphisms`.
    pub fn from_raw(raw: &RawCategory) -> Result<Self, CategoryError> {
        let objects = ObjSet::new(raw.objects.iter().cloned())?;
        let obj = |name: &str| {
            objects
                .index_of(name)
                .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
        };
        let mut index: HashMap<&str, Mor> = HashMap::new();
        let mut names = Vec::with_capacity(raw.morphisms.len());
        let mut src = Vec::with_capacity(raw.morphisms.len());
        let mut tgt = Vec::with_capacity(raw.morphisms.len());
        for (i, m) in raw.morphisms.iter().enumerate() {
            if index.insert(m.name.as_str(), i).is_some() {
                return Err(CategoryError::DuplicateMorphism(m.name.clone()));
            }
            names.push(m.name.clone());
            src.push(obj(&m.src)?);
            tgt.push(obj(&m.tgt)?);
        }
        let mor = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
        };

        let mut identities = vec![UNDEF; objects.len()];
        for name in &raw.identities {
            let f = mor(name)?;
            if src[f] != tgt[f] {
                return Err(CategoryError::IdentityEndpoints(Witness::new(
                    vec![f],
                    name.clone(),
                )));
            }
            if identities[src[f]] != UNDEF {
                return Err(CategoryError::DuplicateIdentity(Witness::new(
                    vec![src[f]],
                    objects.label(src[f]).to_string(),
                )));
            }
            identities[src[f]] = f;
        }
        if let Some(x) = identities.iter().position(|&i| i == UNDEF) {
            return Err(CategoryError::MissingIdentity(Witness::new(
                vec![x],
                objects.label(x).to_string(),
            )));
        }

        let n = names.len();
        let mut comp = vec![UNDEF; n * n];
        let mut bad_domain: Option<(Mor, Mor)> = None;
        let mut conflict: Option<(Mor, Mor)> = None;
        for [g, f, gf] in &raw.compose {
            let (g, f, gf) = (mor(g)?, mor(f)?, mor(gf)?);
            if tgt[f] != src[g] {
                bad_domain = Some(bad_domain.map_or((g, f), |b| b.min((g, f))));
                continue;
            }
            let cell = &mut comp[g * n + f];
            if *cell != UNDEF && *cell != gf {
                conflict = Some(conflict.map_or((g, f), |c| c.min((g, f))));
            }
            *cell = gf;
        }
        let pair = |(g, f): (Mor, Mor)| Witness::new(vec![g, f], format!("({}, {})", names[g], names[f]));
        if let Some(p) = bad_domain {
            return Err(CategoryError::BadComposabilityDomain(pair(p)));
        }
        if let Some(p) = conflict {
            return Err(CategoryError::ConflictingComposite(pair(p)));
        }
        let cat = FinCat {
            objects,
            names,
            src,
            tgt,
            identities,
            comp,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    /// Builds the composition table from `compose`, which is only called on
    /// composable pairs, then validates the category laws.
    pub fn from_parts(
        objects: ObjSet,
        morphisms: Vec<(String, Obj, Obj)>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self, CategoryError> {
        let cat = Self::tabulate(objects, morphisms, identities, &mut compose)?;
        cat.check_laws()?;
        Ok(cat)
    }

    /// As [`FinCat::from_parts`] but only checks the table shape. For
    /// constructions whose laws are inherited from validated inputs.
    pub(crate) fn from_parts_trusted(
        objects: ObjSet,
        morphisms: Vec<(String, Obj, Obj)>,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self, CategoryError> {
        let cat = Self::tabulate(objects, morphisms, identities, &mut compose)?;
        cat.check_table()?;
        Ok(cat)
    }

    fn tabulate(
        objects: ObjSet,
        morphisms: Vec<(String, Obj, Obj)>,
        identities: Vec<Mor>,
        compose: &mut dyn FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self, CategoryError> {
        let n = morphisms.len();
        let mut seen = HashMap::new();
        let mut names = Vec::with_capacity(n);
        let mut src = Vec::with_capacity(n);
        let mut tgt = Vec::with_capacity(n);
        for (i, (name, s, t)) in morphisms.into_iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(CategoryError::DuplicateMorphism(name));
            }
            if s >= objects.len() {
                return Err(CategoryError::UnknownObject(s.to_string()));
            }
            if t >= objects.len() {
                return Err(CategoryError::UnknownObject(t.to_string()));
            }
            names.push(name);
            src.push(s);
            tgt.push(t);
        }
        if identities.len() != objects.len() {
            let x = identities.len().min(objects.len().saturating_sub(1));
            return Err(CategoryError::MissingIdentity(Witness::new(
                vec![x],
                objects.labels().get(x).cloned().unwrap_or_default(),
            )));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= n || src[i] != x || tgt[i] != x {
                return Err(CategoryError::IdentityEndpoints(Witness::new(
                    vec![x],
                    objects.label(x).to_string(),
                )));
            }
        }
        let mut comp = vec![UNDEF; n * n];
        for g in 0..n {
            for f in 0..n {
                if tgt[f] == src[g] {
                    comp[g * n + f] = compose(g, f);
                }
            }
        }
        Ok(FinCat {
            objects,
            names,
            src,
            tgt,
            identities,
            comp,
        })
    }

    /// The discrete category `D(X)`.
    pub fn discrete(objects: ObjSet) -> Self {
        let n = objects.len();
        let names = objects.labels().iter().map(|l| format!("1_{l}")).collect();
        let ids: Vec<Mor> = (0..n).collect();
        let mut comp = vec![UNDEF; n * n];
        for x in 0..n {
            comp[x * n + x] = x;
        }
        FinCat {
            objects,
            names,
            src: ids.clone(),
            tgt: ids.clone(),
            identities: ids,
            comp,
        }
    }

    /// A monoid as a one-object category.
    pub fn monoid(
        object: &str,
        names: Vec<String>,
        unit: Mor,
        mul: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self, CategoryError> {
        let morphisms = names.into_iter().map(|n| (n, 0, 0)).collect();
        FinCat::from_parts(ObjSet::singleton(object), morphisms, vec![unit], |g, f| {
            mul(g, f)
        })
    }

    fn pair_witness(&self, g: Mor, f: Mor) -> Witness {
        Witness::new(vec![g, f], format!("({}, {})", self.names[g], self.names[f]))
    }

    pub fn witness(&self, ids: &[Mor]) -> Witness {
        let label = ids
            .iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(", ");
        Witness::new(ids.to_vec(), format!("({label})"))
    }

    fn check_table(&self) -> Result<(), CategoryError> {
        let n = self.len();
        for g in 0..n {
            for f in 0..n {
                let gf = self.comp[g * n + f];
                if self.tgt[f] != self.src[g] {
                    continue;
                }
                if gf == UNDEF || gf >= n {
                    return Err(CategoryError::MissingComposite(self.pair_witness(g, f)));
                }
                if self.src[gf] != self.src[f] || self.tgt[gf] != self.tgt[g] {
                    return Err(CategoryError::CompositeEndpoints(self.pair_witness(g, f)));
                }
            }
        }
        Ok(())
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        self.check_table()?;
        for f in self.morphisms() {
            let left = self.comp(self.identities[self.tgt[f]], f);
            let right = self.comp(f, self.identities[self.src[f]]);
            if left != f || right != f {
                return Err(CategoryError::UnitLawViolation(self.witness(&[f])));
            }
        }
        let by_tgt = self.by_target();
        for h in self.morphisms() {
            for &g in &by_tgt[self.src[h]] {
                let hg = self.comp(h, g);
                for &f in &by_tgt[self.src[g]] {
                    if self.comp(hg, f) != self.comp(h, self.comp(g, f)) {
                        return Err(CategoryError::AssociativityViolation(
                            self.witness(&[h, g, f]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms grouped by target object, ascending.
    pub fn by_target(&self) -> Vec<Vec<Mor>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for f in self.morphisms() {
            out[self.tgt[f]].push(f);
        }
        out
    }

    pub fn objects(&self) -> &ObjSet {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, f: Mor) -> &str {
        &self.names[f]
    }

    pub fn index_of(&self, name: &str) -> Option<Mor> {
        self.names.iter().position(|n| n == name)
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.src[f]
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.tgt[f]
    }

    pub fn id(&self, x: Obj) -> Mor {
        self.identities[x]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.src[f]] == f
    }

    pub fn composable(&self, g: Mor, f: Mor) -> bool {
        self.tgt[f] == self.src[g]
    }

    pub fn parallel(&self, f: Mor, g: Mor) -> bool {
        self.src[f] == self.src[g] && self.tgt[f] == self.tgt[g]
    }

    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.composable(g, f) {
            Some(self.comp[g * self.len() + f])
        } else {
            None
        }
    }

    /// `g∘f`; panics if `tgt(f) != src(g)`.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        assert!(
            self.composable(g, f),
            "composing non-composable {} after {}",
            self.names[g],
            self.names[f]
        );
        self.comp[g * self.len() + f]
    }

    /// `f_1 ∘ f_2 ∘ ... ∘ f_k`, or the identity on `x` for an empty list.
    pub fn comp_all(&self, x: Obj, fs: &[Mor]) -> Mor {
        fs.iter()
            .rev()
            .fold(self.id(x), |acc, &f| self.comp(f, acc))
    }

    pub fn hom(&self, x: Obj, y: Obj) -> Vec<Mor> {
        self.morphisms()
            .filter(|&f| self.src[f] == x && self.tgt[f] == y)
            .collect()
    }

    /// Source and target coincide everywhere.
    pub fn is_bundle(&self) -> bool {
        self.src == self.tgt
    }

    /// `X <-tgt- mor -src-> X`.
    pub fn underlying_span(&self) -> Span {
        Span::new(self.objects.clone(), self.tgt.clone(), self.src.clone())
            .expect("legs are object indices")
    }

    pub fn to_raw(&self) -> RawCategory {
        let n = self.len();
        let mut compose = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.compose(g, f) {
                    compose.push([
                        self.names[g].clone(),
                        self.names[f].clone(),
                        self.names[gf].clone(),
                    ]);
                }
            }
        }
        RawCategory {
            objects: self.objects.labels().to_vec(),
            morphisms: self
                .morphisms()
                .map(|f| RawMorphism {
                    name: self.names[f].clone(),
                    src: self.objects.label(self.src[f]).to_string(),
                    tgt: self.objects.label(self.tgt[f]).to_string(),
                })
                .collect(),
            identities: self.identities.iter().map(|&i| self.names[i].clone()).collect(),
            compose,
        }
    }

    /// Same category with morphisms renumbered in name order.
    pub fn sorted_by_name(&self) -> (FinCat, Vec<Mor>) {
        let mut order: Vec<Mor> = self.morphisms().collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut new_id = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let morphisms = order
            .iter()
            .map(|&f| (self.names[f].clone(), self.src[f], self.tgt[f]))
            .collect();
        let identities = self.identities.iter().map(|&i| new_id[i]).collect();
        let cat = FinCat::from_parts_trusted(self.objects.clone(), morphisms, identities, |g, f| {
            new_id[self.comp(order[g], order[f])]
        })
        .expect("relabelling preserves the table");
        (cat, new_id)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("domain and codomain have different object sets")]
    ObjSetMismatch,
    #[error("map has {found} entries, the domain has {expected} morphisms")]
    WrongLength { expected: usize, found: usize },
    #[error("image of {0} is not a morphism of the codomain")]
    OutOfRange(Witness),
    #[error("source or target not preserved at {0}")]
    SrcTgtNotPreserved(Witness),
    #[error("identity not preserved at object {0}")]
    IdentityNotPreserved(Witness),
    #[error("composition not preserved at {0}")]
    CompositionNotPreserved(Witness),
}

impl FunctorError {
    pub fn witness(&self) -> Option<&Witness> {
        use FunctorError::*;
        match self {
            OutOfRange(w) | SrcTgtNotPreserved(w) | IdentityNotPreserved(w)
            | CompositionNotPreserved(w) => Some(w),
            _ => None,
        }
    }
}

/// An identity-on-objects functor, stored as its morphism table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functor {
    map: Vec<Mor>,
}

impl Functor {
    pub fn new(map: Vec<Mor>, dom: &FinCat, cod: &FinCat) -> Result<Self, FunctorError> {
        if dom.objects() != cod.objects() {
            return Err(FunctorError::ObjSetMismatch);
        }
        if map.len() != dom.len() {
            return Err(FunctorError::WrongLength {
                expected: dom.len(),
                found: map.len(),
            });
        }
        for f in dom.morphisms() {
            if map[f] >= cod.len() {
                return Err(FunctorError::OutOfRange(dom.witness(&[f])));
            }
            if cod.src(map[f]) != dom.src(f) || cod.tgt(map[f]) != dom.tgt(f) {
                return Err(FunctorError::SrcTgtNotPreserved(dom.witness(&[f])));
            }
        }
        for x in 0..dom.objects().len() {
            if map[dom.id(x)] != cod.id(x) {
                return Err(FunctorError::IdentityNotPreserved(Witness::new(
                    vec![x],
                    dom.objects().label(x).to_string(),
                )));
            }
        }
        for g in dom.morphisms() {
            for f in dom.morphisms() {
                if let Some(gf) = dom.compose(g, f) {
                    if map[gf] != cod.comp(map[g], map[f]) {
                        return Err(FunctorError::CompositionNotPreserved(dom.witness(&[g, f])));
                    }
                }
            }
        }
        Ok(Functor { map })
    }

    pub fn identity(c: &FinCat) -> Self {
        Functor {
            map: c.morphisms().collect(),
        }
    }

    pub fn apply(&self, f: Mor) -> Mor {
        self.map[f]
    }

    pub fn table(&self) -> &[Mor] {
        &self.map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Functor {
        Functor {
            map: self.map.iter().map(|&f| next.map[f]).collect(),
        }
    }
}

/// Inverses in a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseMap {
    inv: Vec<Mor>,
}

impl InverseMap {
    pub fn get(&self, f: Mor) -> Mor {
        self.inv[f]
    }

    pub fn table(&self) -> &[Mor] {
        &self.inv
    }
}

pub fn groupoid_inverses(c: &FinCat) -> Result<InverseMap, CategoryError> {
    let mut inv = Vec::with_capacity(c.len());
    for f in c.morphisms() {
        let found = c.hom(c.tgt(f), c.src(f)).into_iter().find(|&g| {
            c.comp(g, f) == c.id(c.src(f)) && c.comp(f, g) == c.id(c.tgt(f))
        });
        match found {
            Some(g) => inv.push(g),
            None => return Err(CategoryError::NotGroupoid(c.witness(&[f]))),
        }
    }
    Ok(InverseMap { inv })
}

pub fn is_bundle(c: &FinCat) -> bool {
    c.is_bundle()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)], ids: &[&str], compose: &[[&str; 3]]) -> RawCategory {
        RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(n, s, t)| RawMorphism {
                    name: n.to_string(),
                    src: s.to_string(),
                    tgt: t.to_string(),
                })
                .collect(),
            identities: ids.iter().map(|s| s.to_string()).collect(),
            compose: compose
                .iter()
                .map(|t| [t[0].to_string(), t[1].to_string(), t[2].to_string()])
                .collect(),
        }
    }

    fn z2_with_zero() -> RawCategory {
        // {1, g, a}: g² = 1, a² = a, ag = ga = a
        let m = ["1", "g", "a"];
        let table = [["1", "g", "a"], ["g", "1", "a"], ["a", "a", "a"]];
        let mut compose = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                compose.push([m[i], m[j], *v]);
            }
        }
        raw(&["*"], &[("1", "*", "*"), ("g", "*", "*"), ("a", "*", "*")], &["1"], &compose)
    }

    #[test]
    fn discrete_category_is_valid() {
        let d = FinCat::discrete(ObjSet::new(["x", "y", "z"]).unwrap());
        assert_eq!(d.len(), 3);
        let again = FinCat::from_raw(&d.to_raw()).unwrap();
        assert_eq!(again, d);
        assert!(d.is_bundle());
        assert_eq!(groupoid_inverses(&d).unwrap().table(), &[0, 1, 2]);
    }

    #[test]
    fn monoid_with_zero_validates_and_is_not_a_groupoid() {
        let c = FinCat::from_raw(&z2_with_zero()).unwrap();
        assert_eq!(c.len(), 3);
        let err = groupoid_inverses(&c).unwrap_err();
        assert_eq!(err.witness().unwrap().ids, vec![2]);
    }

    #[test]
    fn composite_on_non_composable_pair_is_rejected() {
        let r = raw(
            &["0", "1"],
            &[("i0", "0", "0"), ("i1", "1", "1"), ("f", "0", "1")],
            &["i0", "i1"],
            &[["i0", "i0", "i0"], ["i1", "i1", "i1"], ["f", "i0", "f"], ["i1", "f", "f"], ["f", "f", "f"]],
        );
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(matches!(err, CategoryError::BadComposabilityDomain(ref w) if w.ids == vec![2, 2]));
    }

    #[test]
    fn missing_identity_and_composite() {
        let r = raw(&["0"], &[("i0", "0", "0")], &[], &[["i0", "i0", "i0"]]);
        assert!(matches!(FinCat::from_raw(&r), Err(CategoryError::MissingIdentity(_))));
        let r = raw(&["0"], &[("i0", "0", "0")], &["i0"], &[]);
        assert!(matches!(FinCat::from_raw(&r), Err(CategoryError::MissingComposite(_))));
    }

    #[test]
    fn broken_unit_and_associativity() {
        // g∘1 = 1 breaks the unit law at g
        let mut r = z2_with_zero();
        let cell = r.compose.iter_mut().find(|t| t[0] == "g" && t[1] == "1").unwrap();
        cell[2] = "1".into();
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(matches!(err, CategoryError::UnitLawViolation(ref w) if w.ids == vec![1]));

        // g∘a = g: (g∘g)∘a = a but g∘(g∘a) = 1
        let mut r = z2_with_zero();
        let cell = r.compose.iter_mut().find(|t| t[0] == "g" && t[1] == "a").unwrap();
        cell[2] = "g".into();
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(matches!(err, CategoryError::AssociativityViolation(_)), "{err:?}");
    }

    #[test]
    fn functor_composition_and_identity() {
        let c = FinCat::from_raw(&z2_with_zero()).unwrap();
        let id = Functor::new(c.morphisms().collect(), &c, &c).unwrap();
        // collapse g to 1
        let collapse = Functor::new(vec![0, 0, 2], &c, &c).unwrap();
        let both = id.then(&collapse);
        assert!(Functor::new(both.table().to_vec(), &c, &c).is_ok());
        let bad = Functor::new(vec![0, 2, 2], &c, &c).unwrap_err();
        assert!(matches!(bad, FunctorError::CompositionNotPreserved(_)));
    }

    #[test]
    fn sorting_by_name_preserves_structure() {
        let c = FinCat::from_raw(&z2_with_zero()).unwrap();
        let (s, new_id) = c.sorted_by_name();
        assert_eq!(s.names(), &["1", "a", "g"]);
        for g in c.morphisms() {
            for f in c.morphisms() {
                assert_eq!(new_id[c.comp(g, f)], s.comp(new_id[g], new_id[f]));
            }
        }
    }
}
