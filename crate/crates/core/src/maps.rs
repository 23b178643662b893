//! Finite maps between indexed sets of tuples. Every comparison map
//! (`q`, `q_n`, `h_n`, `b_n`, `f`, ...) is carried by a [`MorphismMap`].

use std::collections::HashMap;

use crate::fincat::Mor;

/// A finite set of id tuples with a position index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TupleSet {
    elems: Vec<Vec<Mor>>,
    index: HashMap<Vec<Mor>, usize>,
}

impl TupleSet {
    /// Keeps the given order; duplicates are dropped.
    pub fn new(elems: impl IntoIterator<Item = Vec<Mor>>) -> Self {
        let mut set = TupleSet::default();
        for e in elems {
            if !set.index.contains_key(&e) {
                set.index.insert(e.clone(), set.elems.len());
                set.elems.push(e);
            }
        }
        set
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Mor] {
        &self.elems[i]
    }

    pub fn position(&self, t: &[Mor]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Mor]> {
        self.elems.iter().map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bijectivity {
    Bijective,
    /// Two domain positions with the same image, earlier one first.
    NotInjective(usize, usize),
    /// A codomain position outside the image.
    NotSurjective(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismMap {
    pub name: String,
    domain: TupleSet,
    codomain: TupleSet,
    table: Vec<usize>,
    inverse: Option<Vec<usize>>,
    bijectivity: Bijectivity,
}

impl MorphismMap {
    /// Tabulates `f`; returns the first domain tuple whose image is not in
    /// the codomain as the error.
    pub fn from_fn(
        name: impl Into<String>,
        domain: TupleSet,
        codomain: TupleSet,
        mut f: impl FnMut(&[Mor]) -> Vec<Mor>,
    ) -> Result<Self, Vec<Mor>> {
        let mut table = Vec::with_capacity(domain.len());
        for t in domain.iter() {
            let image = f(t);
            match codomain.position(&image) {
                Some(p) => table.push(p),
                None => return Err(t.to_vec()),
            }
        }
        Ok(Self::from_table(name, domain, codomain, table))
    }

    pub fn from_table(
        name: impl Into<String>,
        domain: TupleSet,
        codomain: TupleSet,
        table: Vec<usize>,
    ) -> Self {
        assert_eq!(table.len(), domain.len(), "map must be total");
        let mut preimage = vec![usize::MAX; codomain.len()];
        let mut bijectivity = Bijectivity::Bijective;
        for (i, &c) in table.iter().enumerate() {
            if preimage[c] != usize::MAX {
                bijectivity = Bijectivity::NotInjective(preimage[c], i);
                break;
            }
            preimage[c] = i;
        }
        if bijectivity == Bijectivity::Bijective {
            if let Some(c) = preimage.iter().position(|&p| p == usize::MAX) {
                bijectivity = Bijectivity::NotSurjective(c);
            }
        }
        let inverse = (bijectivity == Bijectivity::Bijective).then_some(preimage);
        MorphismMap {
            name: name.into(),
            domain,
            codomain,
            table,
            inverse,
            bijectivity,
        }
    }

    pub fn domain(&self) -> &TupleSet {
        &self.domain
    }

    pub fn codomain(&self) -> &TupleSet {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_tuple(&self, t: &[Mor]) -> Option<&[Mor]> {
        self.domain
            .position(t)
            .map(|i| self.codomain.get(self.table[i]))
    }

    pub fn bijectivity(&self) -> Bijectivity {
        self.bijectivity
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<&[usize]> {
        self.inverse.as_deref()
    }

    pub fn invert_tuple(&self, t: &[Mor]) -> Option<&[Mor]> {
        let inv = self.inverse.as_ref()?;
        self.codomain.position(t).map(|c| self.domain.get(inv[c]))
    }

    /// The materialized inverse as a map in the other direction.
    pub fn inverse_map(&self) -> Option<MorphismMap> {
        let inv = self.inverse.as_ref()?;
        Some(MorphismMap::from_table(
            format!("{}⁻¹", self.name),
            self.codomain.clone(),
            self.domain.clone(),
            inv.clone(),
        ))
    }
}
