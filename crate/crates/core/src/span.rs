//! Finite spans over a fixed object set, set-level pullbacks and the
//! monoidal product of spans.
//!
//! A span over `X` is a finite carrier with two legs into `X`. For the
//! underlying span of a category the left leg is the target map and the
//! right leg is the source map, so the product `P Q` collects the pairs
//! `(p, q)` with `src(p) = tgt(q)`: exactly the composable pairs.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("duplicate object label `{0}`")]
    DuplicateLabel(String),
    #[error("spans are over different object sets")]
    MismatchedObjSet,
    #[error("span legs have lengths {left} and {right}")]
    LegLengthMismatch { left: usize, right: usize },
    #[error("leg value {value} at element {element} is not an object index")]
    LegOutOfRange { element: usize, value: usize },
}

/// The fixed finite set of objects. Objects are addressed by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjSet {
    labels: Vec<String>,
}

impl ObjSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, SpanError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(SpanError::DuplicateLabel(l.clone()));
            }
        }
        Ok(ObjSet { labels })
    }

    pub fn singleton(label: &str) -> Self {
        ObjSet {
            labels: vec![label.to_string()],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// `X <-left- E -right-> X` with `E = {0, .., len-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    objects: ObjSet,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Span {
    pub fn new(objects: ObjSet, left: Vec<usize>, right: Vec<usize>) -> Result<Self, SpanError> {
        if left.len() != right.len() {
            return Err(SpanError::LegLengthMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        for (element, &value) in left.iter().chain(right.iter()).enumerate() {
            if value >= objects.len() {
                return Err(SpanError::LegOutOfRange {
                    element: element % left.len().max(1),
                    value,
                });
            }
        }
        Ok(Span {
            objects,
            left,
            right,
        })
    }

    /// The monoidal unit `X = X = X`.
    pub fn trivial(objects: ObjSet) -> Self {
        let ids: Vec<usize> = (0..objects.len()).collect();
        Span {
            objects,
            left: ids.clone(),
            right: ids,
        }
    }

    pub fn objects(&self) -> &ObjSet {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }
}

/// `{(a, c) | f(a) = g(c)}` listed in lexicographic order of `(a, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackResult {
    pairs: Vec<(usize, usize)>,
}

impl PullbackResult {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn proj1(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn proj2(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn position(&self, a: usize, c: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, c)).ok()
    }
}

/// Pullback of the cospan `A -f-> B <-g- C` computed in finite sets.
pub fn pullback(f: &[usize], g: &[usize]) -> PullbackResult {
    let mut fibres: HashMap<usize, Vec<usize>> = HashMap::new();
    for (c, &v) in g.iter().enumerate() {
        fibres.entry(v).or_default().push(c);
    }
    let mut pairs = Vec::new();
    for (a, v) in f.iter().enumerate() {
        if let Some(cs) = fibres.get(v) {
            pairs.extend(cs.iter().map(|&c| (a, c)));
        }
    }
    PullbackResult { pairs }
}

/// Product span together with the component ids of each fresh element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanProduct {
    pub span: Span,
    pub provenance: Vec<(usize, usize)>,
}

impl SpanProduct {
    pub fn position(&self, p: usize, q: usize) -> Option<usize> {
        self.provenance.binary_search(&(p, q)).ok()
    }
}

/// `P Q = P x_X Q`, glued along `right(P) = left(Q)`.
pub fn span_product(p: &Span, q: &Span) -> Result<SpanProduct, SpanError> {
    if p.objects != q.objects {
        return Err(SpanError::MismatchedObjSet);
    }
    let pb = pullback(&p.right, &q.left);
    let left = pb.pairs.iter().map(|&(a, _)| p.left[a]).collect();
    let right = pb.pairs.iter().map(|&(_, c)| q.right[c]).collect();
    Ok(SpanProduct {
        span: Span {
            objects: p.objects.clone(),
            left,
            right,
        },
        provenance: pb.pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(n: usize) -> ObjSet {
        ObjSet::new((0..n).map(|i| i.to_string())).unwrap()
    }

    #[test]
    fn identity_legs_give_diagonal() {
        let pb = pullback(&[0, 1], &[0, 1]);
        assert_eq!(pb.pairs(), &[(0, 0), (1, 1)]);
        assert_eq!(pb.proj1(), vec![0, 1]);
        assert_eq!(pb.proj2(), vec![0, 1]);
    }

    #[test]
    fn terminal_cospan_gives_product() {
        let pb = pullback(&[0, 0, 0], &[0, 0]);
        assert_eq!(pb.len(), 6);
    }

    #[test]
    fn empty_inputs_are_fine() {
        assert!(pullback(&[], &[0, 1]).is_empty());
        let empty = Span::trivial(objs(0));
        let prod = span_product(&empty, &empty).unwrap();
        assert!(prod.span.is_empty());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            ObjSet::new(["x", "x"]),
            Err(SpanError::DuplicateLabel("x".into()))
        );
    }

    #[test]
    fn mismatched_objects_rejected() {
        let p = Span::trivial(objs(1));
        let q = Span::trivial(objs(2));
        assert_eq!(span_product(&p, &q), Err(SpanError::MismatchedObjSet));
    }

    #[test]
    fn unit_laws() {
        let x = objs(2);
        let q = Span::new(x.clone(), vec![0, 1, 1, 0], vec![0, 0, 1, 1]).unwrap();
        let unit = Span::trivial(x);
        let lu = span_product(&unit, &q).unwrap();
        assert_eq!(lu.span.len(), q.len());
        for (k, &(u, e)) in lu.provenance.iter().enumerate() {
            assert_eq!(unit.right()[u], q.left()[e]);
            assert_eq!(lu.span.left()[k], q.left()[e]);
            assert_eq!(lu.span.right()[k], q.right()[e]);
        }
        let ru = span_product(&q, &unit).unwrap();
        assert_eq!(ru.span.len(), q.len());
    }

    #[test]
    fn leg_validation() {
        assert!(matches!(
            Span::new(objs(1), vec![0], vec![1]),
            Err(SpanError::LegOutOfRange { value: 1, .. })
        ));
        assert!(matches!(
            Span::new(objs(1), vec![0], vec![]),
            Err(SpanError::LegLengthMismatch { .. })
        ));
    }
}
