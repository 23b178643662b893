use std::fmt;

/// Minimal counterexample: element ids in a fixed order plus a rendering
/// with morphism names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub ids: Vec<usize>,
    pub label: String,
}

impl Witness {
    pub fn new(ids: Vec<usize>, label: impl Into<String>) -> Self {
        Witness {
            ids,
            label: label.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
