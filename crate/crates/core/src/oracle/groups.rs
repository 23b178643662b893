//! Small groups and monoids as one-object categories, built from their
//! own arithmetic rather than from tables.

use std::collections::BTreeSet;

use crate::fincat::{FinCat, Functor, Mor};

pub const POINT: &str = "*";

pub type Perm = [usize; 3];

/// `(g ∘ f)(x) = g(f(x))`.
pub fn perm_compose(g: Perm, f: Perm) -> Perm {
    [g[f[0]], g[f[1]], g[f[2]]]
}

pub fn perm_inverse(p: Perm) -> Perm {
    let mut inv = [0; 3];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

pub fn perm_is_even(p: Perm) -> bool {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Cycle notation on `{1, 2, 3}`, `e` for the identity.
pub fn cycle_name(p: Perm) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for start in 0..3 {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// A permutation group on three letters with morphisms sorted by name.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub cat: FinCat,
    perms: Vec<Perm>,
}

impl PermGroup {
    fn build(mut perms: Vec<Perm>) -> Self {
        perms.sort_by_key(|&p| cycle_name(p));
        let names = perms.iter().map(|&p| cycle_name(p)).collect();
        let unit = perms.iter().position(|&p| p == [0, 1, 2]).expect("contains e");
        let lookup = perms.clone();
        let cat = FinCat::monoid(POINT, names, unit, |g, f| {
            let gf = perm_compose(lookup[g], lookup[f]);
            lookup.iter().position(|&p| p == gf).expect("closed")
        })
        .expect("a permutation group is a category");
        PermGroup { cat, perms }
    }

    pub fn perm(&self, m: Mor) -> Perm {
        self.perms[m]
    }

    pub fn id_of(&self, p: Perm) -> Mor {
        self.perms.iter().position(|&q| q == p).expect("member")
    }
}

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn symmetric3() -> PermGroup {
    PermGroup::build(all_perms())
}

pub fn alternating3() -> PermGroup {
    PermGroup::build(all_perms().into_iter().filter(|&p| perm_is_even(p)).collect())
}

/// `Z_n` written multiplicatively: `e, g, g2, ..`.
pub fn cyclic(n: usize) -> FinCat {
    assert!(n > 0);
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    FinCat::monoid(POINT, names, 0, |g, f| (g + f) % n).expect("cyclic group")
}

pub fn trivial() -> FinCat {
    cyclic(1)
}

/// The sign `S_3 -> Z_2`.
pub fn sign(s3: &PermGroup, z2: &FinCat) -> Functor {
    let map = s3
        .cat
        .morphisms()
        .map(|m| if perm_is_even(s3.perm(m)) { 0 } else { 1 })
        .collect();
    Functor::new(map, &s3.cat, z2).expect("sign is a homomorphism")
}

const MONOID_NAMES: [&str; 4] = ["e", "a", "b", "c"];

/// All monoids of order `n` (at most 4) up to isomorphism, as one-object
/// categories with unit `e`. Order: lexicographic in the canonical table.
pub fn small_monoids(n: usize) -> Vec<FinCat> {
    assert!((1..=4).contains(&n), "monoids of order 1..=4 only");
    let free = n - 1;
    let cells = free * free;
    let perms = permutations(free);
    let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cur = vec![0usize; cells];
    loop {
        let table = full_table(n, &cur);
        if associative(n, &table) {
            let best = perms
                .iter()
                .map(|p| relabel(n, &table, p))
                .min()
                .expect("at least one relabelling");
            canon.insert(best);
        }
        if !advance(&mut cur, n) {
            break;
        }
    }
    canon
        .into_iter()
        .map(|t| {
            let names = MONOID_NAMES[..n].iter().map(|s| s.to_string()).collect();
            FinCat::monoid(POINT, names, 0, |g, f| t[g * n + f]).expect("associative")
        })
        .collect()
}

fn full_table(n: usize, free: &[usize]) -> Vec<usize> {
    let mut t = vec![0; n * n];
    for g in 0..n {
        for f in 0..n {
            t[g * n + f] = match (g, f) {
                (0, _) => f,
                (_, 0) => g,
                _ => free[(g - 1) * (n - 1) + (f - 1)],
            };
        }
    }
    t
}

fn associative(n: usize, t: &[usize]) -> bool {
    (0..n).all(|h| {
        (0..n).all(|g| (0..n).all(|f| t[t[h * n + g] * n + f] == t[h * n + t[g * n + f]]))
    })
}

/// Tables of `σ⁻¹(σ(x) σ(y))` for a permutation `σ` fixing the unit.
fn relabel(n: usize, t: &[usize], p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; n];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    let mut out = vec![0; n * n];
    for g in 0..n {
        for f in 0..n {
            out[g * n + f] = inv[t[p[g] * n + p[f]]];
        }
    }
    out
}

/// Permutations of `0..=free` fixing 0.
fn permutations(free: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..=free).collect();
    heap(&mut rest, free, &mut out);
    out
}

fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        let mut p = vec![0];
        p.extend(items.iter().copied());
        out.push(p);
        return;
    }
    for i in 0..k {
        heap(items, k - 1, out);
        let j = if k % 2 == 0 { i } else { 0 };
        items.swap(j, k - 1);
    }
}

fn advance(cur: &mut [usize], base: usize) -> bool {
    for d in cur.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::groupoid_inverses;

    #[test]
    fn s3_names_are_sorted() {
        let s3 = symmetric3();
        assert_eq!(s3.cat.names(), ["(12)", "(123)", "(13)", "(132)", "(23)", "e"]);
        assert!(groupoid_inverses(&s3.cat).is_ok());
    }

    #[test]
    fn conjugating_a_three_cycle_by_a_transposition() {
        let t = [1, 0, 2];
        let c = [1, 2, 0];
        let conj = perm_compose(perm_compose(t, c), perm_inverse(t));
        assert_eq!(cycle_name(c), "(123)");
        assert_eq!(cycle_name(conj), "(132)");
    }

    #[test]
    fn monoid_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| small_monoids(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 35]);
    }

    #[test]
    fn sign_kills_a3() {
        let s3 = symmetric3();
        let z2 = cyclic(2);
        let sg = sign(&s3, &z2);
        let a3 = alternating3();
        for m in a3.cat.morphisms() {
            assert_eq!(sg.apply(s3.id_of(a3.perm(m))), 0);
        }
    }
}
