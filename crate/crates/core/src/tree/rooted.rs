use std::sync::Arc;

use super::lca::LcaIndex;
use super::{VertexId, NONE};
use crate::error::{Error, Result};
use crate::hierarchy::Hierarchy;
use crate::label::{same_taxa, Taxa, TaxonId};

/// A rooted phylogenetic tree.
///
/// Vertex ids are a preorder in which children are visited by their smallest
/// leaf label, so the root is `0`, every subtree `T(v)` occupies the id range
/// `v..end(v)`, and equal trees have equal ids. An edge is named by its child
/// endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    taxa: Arc<Taxa>,
    parent: Vec<u32>,
    child_start: Vec<u32>,
    children: Vec<u32>,
    end: Vec<u32>,
    leaf_count: Vec<u32>,
    taxon: Vec<u32>,
    leaf: Vec<u32>,
    names: Vec<Option<String>>,
}

impl RootedTree {
    /// Builds a tree from a parent array (`NONE` marks the root) and a taxon
    /// per leaf (`NONE` for inner vertices). `names` is empty or one entry per
    /// vertex. Returns the tree and the map from input ids to canonical ids.
    pub(crate) fn build(
        taxa: &Arc<Taxa>,
        parent: &[u32],
        taxon: &[u32],
        names: Vec<Option<String>>,
    ) -> Result<(Self, Vec<u32>)> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        assert_eq!(taxon.len(), n);
        let mut root = None;
        let mut degree = vec![0u32; n];
        for (v, &p) in parent.iter().enumerate() {
            if p == NONE {
                if root.replace(v).is_some() {
                    return Err(Error::InvalidTree("more than one root".into()));
                }
            } else if p as usize >= n || p as usize == v {
                return Err(Error::InvalidTree(format!("bad parent of vertex {v}")));
            } else {
                degree[p as usize] += 1;
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;

        let mut start = vec![0u32; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + degree[v];
        }
        let mut fill = start.clone();
        let mut kids = vec![0u32; n.saturating_sub(1)];
        for (v, &p) in parent.iter().enumerate() {
            if p != NONE {
                kids[fill[p as usize] as usize] = v as u32;
                fill[p as usize] += 1;
            }
        }

        let mut seen = vec![false; taxa.len()];
        for v in 0..n {
            match (degree[v], taxon[v]) {
                (0, NONE) => return Err(Error::InvalidTree(format!("leaf vertex {v} has no label"))),
                (0, x) => {
                    let slot = seen
                        .get_mut(x as usize)
                        .ok_or_else(|| Error::UnknownLabel(format!("#{x}")))?;
                    if *slot {
                        return Err(Error::DuplicateLeaf(taxa.label(x).to_string()));
                    }
                    *slot = true;
                }
                (1, _) => return Err(Error::UnaryInnerVertex),
                (_, NONE) => {}
                (_, x) => return Err(Error::InvalidTree(format!("inner vertex {v} carries taxon #{x}"))),
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidTree(format!(
                "leaf `{}` is missing",
                taxa.label(x as TaxonId)
            )));
        }

        // BFS order; reversed, it is a valid bottom-up order.
        let mut order = Vec::with_capacity(n);
        order.push(root as u32);
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            order.extend_from_slice(&kids[start[v] as usize..start[v + 1] as usize]);
        }
        if order.len() != n {
            return Err(Error::InvalidTree("vertices unreachable from the root".into()));
        }
        let mut min_taxon = taxon.to_vec();
        for &v in order.iter().rev() {
            let p = parent[v as usize];
            if p != NONE {
                let m = min_taxon[v as usize];
                let slot = &mut min_taxon[p as usize];
                *slot = (*slot).min(m);
            }
        }
        for v in 0..n {
            kids[start[v] as usize..start[v + 1] as usize]
                .sort_unstable_by_key(|&c| min_taxon[c as usize]);
        }

        let mut map = vec![NONE; n];
        let mut new_parent = vec![NONE; n];
        let mut new_taxon = vec![NONE; n];
        let mut new_start = vec![0u32; n + 1];
        let mut new_kids = Vec::with_capacity(n.saturating_sub(1));
        let mut end = vec![0u32; n];
        let mut leaf_count = vec![0u32; n];
        let mut leaf = vec![0u32; taxa.len()];
        let mut new_names = if names.is_empty() { Vec::new() } else { vec![None; n] };
        let mut names = names;

        // Preorder ids first, then everything derived from them.
        let mut stack = vec![root as u32];
        let mut next = 0u32;
        let mut preorder = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            map[v as usize] = next;
            next += 1;
            preorder.push(v);
            let ks = &kids[start[v as usize] as usize..start[v as usize + 1] as usize];
            stack.extend(ks.iter().rev());
        }
        for (id, &old) in preorder.iter().enumerate() {
            let o = old as usize;
            if parent[o] != NONE {
                new_parent[id] = map[parent[o] as usize];
            }
            new_taxon[id] = taxon[o];
            if degree[o] == 0 {
                leaf[taxon[o] as usize] = id as u32;
            }
            new_start[id + 1] = new_start[id] + degree[o];
            new_kids.extend(
                kids[start[o] as usize..start[o + 1] as usize]
                    .iter()
                    .map(|&c| map[c as usize]),
            );
            if !new_names.is_empty() {
                new_names[id] = names[o].take();
            }
        }
        for id in (0..n).rev() {
            let ks = &new_kids[new_start[id] as usize..new_start[id + 1] as usize];
            if ks.is_empty() {
                end[id] = id as u32 + 1;
                leaf_count[id] = 1;
            } else {
                end[id] = end[*ks.last().unwrap() as usize];
                leaf_count[id] = ks.iter().map(|&c| leaf_count[c as usize]).sum();
            }
        }

        let tree = RootedTree {
            taxa: Arc::clone(taxa),
            parent: new_parent,
            child_start: new_start,
            children: new_kids,
            end,
            leaf_count,
            taxon: new_taxon,
            leaf,
            names: new_names,
        };
        Ok((tree, map))
    }

    /// A tree from a parent array ([`NONE`](super::NONE) at the root) and the
    /// taxon of every leaf (`NONE` at inner vertices). Ids are renumbered.
    pub fn from_parents(taxa: &Arc<Taxa>, parent: &[u32], taxon: &[u32]) -> Result<Self> {
        if parent.len() != taxon.len() {
            return Err(Error::InvalidTree("parent and taxon arrays differ in length".into()));
        }
        Ok(Self::build(taxa, parent, taxon, Vec::new())?.0)
    }

    /// The star tree: a root with one leaf child per taxon.
    pub fn star(taxa: &Arc<Taxa>) -> Self {
        let n = taxa.len();
        let mut parent = vec![0u32; n + 1];
        parent[0] = NONE;
        let mut taxon = vec![NONE; n + 1];
        for x in 0..n {
            taxon[x + 1] = x as u32;
        }
        Self::build(taxa, &parent, &taxon, Vec::new()).unwrap().0
    }

    /// The unique tree whose cluster set is `h`.
    pub fn from_hierarchy(h: &Hierarchy) -> Self {
        let taxa = h.taxa();
        let mut clusters: Vec<&Vec<TaxonId>> = h.clusters().iter().collect();
        clusters.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut parent = Vec::with_capacity(clusters.len());
        let mut taxon = Vec::with_capacity(clusters.len());
        let mut deepest = vec![0u32; taxa.len()];
        for (i, c) in clusters.iter().enumerate() {
            parent.push(if i == 0 { NONE } else { deepest[c[0] as usize] });
            taxon.push(if c.len() == 1 { c[0] } else { NONE });
            for &x in c.iter() {
                deepest[x as usize] = i as u32;
            }
        }
        Self::build(taxa, &parent, &taxon, Vec::new())
            .expect("a hierarchy describes a phylogenetic tree")
            .0
    }

    pub fn taxa(&self) -> &Arc<Taxa> {
        &self.taxa
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v as usize];
        (p != NONE).then_some(p)
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[self.child_start[v as usize] as usize..self.child_start[v as usize + 1] as usize]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.taxon[v as usize] != NONE
    }

    pub fn taxon(&self, v: VertexId) -> Option<TaxonId> {
        let x = self.taxon[v as usize];
        (x != NONE).then_some(x)
    }

    pub fn leaf(&self, x: TaxonId) -> VertexId {
        self.leaf[x as usize]
    }

    /// Edges, each named by its child endpoint: every vertex but the root.
    pub fn edges(&self) -> impl Iterator<Item = VertexId> {
        1..self.parent.len() as u32
    }

    /// One past the last vertex of `T(v)`.
    pub fn subtree_end(&self, v: VertexId) -> VertexId {
        self.end[v as usize]
    }

    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        u <= v && v < self.end[u as usize]
    }

    /// `|L(T(v))|`.
    pub fn leaf_count(&self, v: VertexId) -> usize {
        self.leaf_count[v as usize] as usize
    }

    /// `L(T(v))`, sorted.
    pub fn cluster(&self, v: VertexId) -> Vec<TaxonId> {
        let mut c: Vec<TaxonId> = (v..self.end[v as usize])
            .filter_map(|w| self.taxon(w))
            .collect();
        c.sort_unstable();
        c
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.names.get(v as usize).and_then(|n| n.as_deref())
    }

    pub(crate) fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub(crate) fn parent_array(&self) -> &[u32] {
        &self.parent
    }

    pub(crate) fn taxon_array(&self) -> &[u32] {
        &self.taxon
    }

    pub fn lca_index(&self) -> LcaIndex {
        LcaIndex::new(self)
    }

    /// `H(T) = {L(T(v)) : v ∈ V(T)}`.
    pub fn hierarchy(&self) -> Hierarchy {
        let clusters = (0..self.len() as u32).map(|v| self.cluster(v)).collect();
        Hierarchy::from_sorted_unchecked(&self.taxa, clusters)
    }

    /// True iff `self` refines `t`, i.e. `H(t) ⊆ H(self)`.
    pub fn is_refinement_of(&self, t: &RootedTree) -> Result<bool> {
        if !same_taxa(&self.taxa, &t.taxa) {
            return Err(Error::LeafSetMismatch);
        }
        let idx = self.lca_index();
        // Walk t bottom-up, tracking the lca in `self` of each cluster of t.
        let mut image = vec![NONE; t.len()];
        for v in (0..t.len() as u32).rev() {
            let w = match t.taxon(v) {
                Some(x) => self.leaf(x),
                None => t
                    .children(v)
                    .iter()
                    .map(|&c| image[c as usize])
                    .reduce(|a, b| idx.lca(a, b))
                    .unwrap(),
            };
            if self.leaf_count(w) != t.leaf_count(v) {
                return Ok(false);
            }
            image[v as usize] = w;
        }
        Ok(true)
    }

    /// Label for reports: `v7 {b,c}`, or the inner name when one was given.
    pub fn describe_edge(&self, v: VertexId) -> String {
        match (self.taxon(v), self.name(v)) {
            (Some(x), _) => format!("v{v} {{{}}}", self.taxa.label(x)),
            (None, Some(name)) => format!("v{v} {name} {{{}}}", self.taxa.format_set(&self.cluster(v))),
            (None, None) => format!("v{v} {{{}}}", self.taxa.format_set(&self.cluster(v))),
        }
    }

    /// Resolves `v<id>`, an inner-vertex name, or a leaf label to a vertex.
    pub fn find_vertex(&self, token: &str) -> Result<VertexId> {
        if let Some(x) = self.taxa.id(token) {
            return Ok(self.leaf(x));
        }
        if let Some(v) = self.names.iter().position(|n| n.as_deref() == Some(token)) {
            return Ok(v as VertexId);
        }
        if let Some(id) = token.strip_prefix('v').and_then(|s| s.parse::<u32>().ok()) {
            if (id as usize) < self.len() {
                return Ok(id);
            }
        }
        Err(Error::UnknownVertex(token.to_string()))
    }
}
