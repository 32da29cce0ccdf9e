use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a taxon within its [`Taxa`]; follows the lexicographic label order.
pub type TaxonId = u32;

/// A leaf label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The leaf set X: a sorted collection of distinct labels with `|X| >= 2`.
///
/// Every set of taxa elsewhere in the crate is a sorted slice of [`TaxonId`]s
/// into one of these, so comparing ids compares labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Taxa {
    labels: Vec<Label>,
}

impl Taxa {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels = labels
            .into_iter()
            .map(|s| Label::new(s))
            .collect::<Result<Vec<_>>>()?;
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        if labels.len() < 2 {
            return Err(Error::TooFewTaxa(labels.len()));
        }
        if labels.len() > u32::MAX as usize / 4 {
            return Err(Error::TooLarge(format!("{} labels", labels.len())));
        }
        Ok(Arc::new(Taxa { labels }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: TaxonId) -> &Label {
        &self.labels[id as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<TaxonId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(|i| i as TaxonId)
    }

    pub fn require(&self, label: &str) -> Result<TaxonId> {
        self.id(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = TaxonId> {
        0..self.labels.len() as TaxonId
    }

    /// Renders a sorted id set as `a,b,c`.
    pub fn format_set(&self, set: &[TaxonId]) -> String {
        let mut out = String::new();
        for (i, &x) in set.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(self.label(x).as_str());
        }
        out
    }

    /// Resolves labels to a sorted, deduplicated id set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<TaxonId>> {
        let mut ids = labels
            .iter()
            .map(|l| self.require(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }
}

/// Both handles describe the same leaf set.
pub(crate) fn same_taxa(a: &Arc<Taxa>, b: &Arc<Taxa>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// True iff `a` and `b` overlap: they intersect and neither contains the other.
///
/// Both slices must be sorted.
pub fn overlaps(a: &[TaxonId], b: &[TaxonId]) -> bool {
    let (mut i, mut j) = (0, 0);
    let (mut common, mut only_a, mut only_b) = (false, false, false);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                only_a = true;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b = true;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                common = true;
                i += 1;
                j += 1;
            }
        }
    }
    only_a |= i < a.len();
    only_b |= j < b.len();
    common && only_a && only_b
}

/// `a ⊆ b` for sorted slices.
pub(crate) fn is_subset(a: &[TaxonId], b: &[TaxonId]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
