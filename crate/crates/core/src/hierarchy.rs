//! Hierarchies: laminar cluster sets containing X and every singleton.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::{is_subset, Taxa, TaxonId};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hierarchy {
    taxa: Arc<Taxa>,
    /// Sorted lexicographically; each cluster sorted.
    clusters: Vec<Vec<TaxonId>>,
}

/// How [`Hierarchy::from_clusters`] treats a missing X or singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    #[default]
    Strict,
    /// Add X and every missing singleton.
    Autocomplete,
}

impl Hierarchy {
    pub fn new<S: AsRef<str>>(
        taxa: &Arc<Taxa>,
        clusters: &[Vec<S>],
        mode: Completion,
    ) -> Result<Self> {
        let ids = clusters
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Err(Error::EmptyCluster)
                } else {
                    taxa.set_of(c)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_clusters(taxa, ids, mode)
    }

    /// Validates (H0)-(H3) over id sets. Clusters need not be sorted or distinct.
    pub fn from_clusters(
        taxa: &Arc<Taxa>,
        clusters: Vec<Vec<TaxonId>>,
        mode: Completion,
    ) -> Result<Self> {
        let n = taxa.len();
        let mut clusters = clusters;
        for c in &mut clusters {
            if c.is_empty() {
                return Err(Error::EmptyCluster);
            }
            c.sort_unstable();
            c.dedup();
            if let Some(&x) = c.last() {
                if x as usize >= n {
                    return Err(Error::UnknownLabel(format!("#{x}")));
                }
            }
        }
        if mode == Completion::Autocomplete {
            clusters.push(taxa.ids().collect());
            clusters.extend(taxa.ids().map(|x| vec![x]));
        }
        clusters.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        clusters.dedup();

        if clusters[0].len() != n {
            return Err(Error::MissingGroundSet);
        }
        let mut singleton = vec![false; n];
        let mut deepest = vec![0usize; n];
        for (i, c) in clusters.iter().enumerate().skip(1) {
            let d = deepest[c[0] as usize];
            for &x in c.iter() {
                let e = deepest[x as usize];
                if e != d {
                    // Of the two containers, the later (smaller) one misses an element of `c`.
                    let witness = &clusters[d.max(e)];
                    return Err(Error::OverlappingClusters(
                        taxa.format_set(witness),
                        taxa.format_set(c),
                    ));
                }
            }
            for &x in c.iter() {
                deepest[x as usize] = i;
            }
            if c.len() == 1 {
                singleton[c[0] as usize] = true;
            }
        }
        if let Some(x) = singleton.iter().position(|s| !s) {
            return Err(Error::MissingSingleton(taxa.label(x as TaxonId).to_string()));
        }
        clusters.sort_unstable();
        Ok(Hierarchy {
            taxa: Arc::clone(taxa),
            clusters,
        })
    }

    /// `H_P = P ∪ {{x} : x ∈ X} ∪ {X}`.
    pub fn of_partition(p: &Partition) -> Self {
        Self::from_clusters(p.taxa(), p.blocks().to_vec(), Completion::Autocomplete)
            .expect("blocks of a partition are pairwise disjoint")
    }

    pub(crate) fn from_sorted_unchecked(taxa: &Arc<Taxa>, mut clusters: Vec<Vec<TaxonId>>) -> Self {
        clusters.sort_unstable();
        Hierarchy {
            taxa: Arc::clone(taxa),
            clusters,
        }
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    pub fn clusters(&self) -> &[Vec<TaxonId>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn contains(&self, cluster: &[TaxonId]) -> bool {
        self.clusters.binary_search_by(|c| c.as_slice().cmp(cluster)).is_ok()
    }

    /// `A_H`: the inclusion-minimal cluster containing `a`. Linear scan.
    pub fn closure(&self, a: &[TaxonId]) -> Result<&[TaxonId]> {
        if a.is_empty() {
            return Err(Error::EmptyArgument);
        }
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        Ok(self
            .clusters
            .iter()
            .filter(|c| c.len() >= a.len() && is_subset(&a, c))
            .min_by_key(|c| c.len())
            .expect("X contains every argument"))
    }

    /// `self ⊆ other` as cluster sets.
    pub fn is_subset_of(&self, other: &Hierarchy) -> bool {
        self.clusters.iter().all(|c| other.contains(c))
    }

    /// Cluster labels as `a,b,c` strings, one per cluster.
    pub fn formatted(&self) -> Vec<String> {
        self.clusters.iter().map(|c| self.taxa.format_set(c)).collect()
    }
}
