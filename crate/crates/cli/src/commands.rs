use std::path::{Path, PathBuf};
use std::sync::Arc;

use phylopart::compat::{
    canonical_separating_edges, classify, forest_partition, maximum_separating_edges,
    minimum_separating_edges, CompatVerdict,
};
use phylopart::io::{parse_fitch_map, parse_newick, parse_partition, parse_partition_system, parse_splits, serialize_newick};
use phylopart::oracle::{brute_compatible, brute_is_refinement, brute_r_compatible, brute_separating_sets, enumerate_rooted_trees};
use phylopart::splits::{is_compatible_splits, pairwise_compatible, splits_of, tree_of_splits, SplitSystem};
use phylopart::systems::{
    compat_tp, explainable_rooted, fitch_map_of, monochromatic_partition, symm_fitch_recognition, EdgeColoredTree,
    FitchMap, PartitionSystem, SearchOptions,
};
use phylopart::{Error, Partition, RootedTree, Taxa, VertexId};
use thiserror::Error;

use crate::report::{block_labels, exit, Conflict, EdgeColors, EdgeRef, Report, Witness};
use crate::{CheckArgs, CutArgs, EdgeSet, FitchArgs, SearchArgs, SplitsArgs, SystemArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T>(path: &Path, r: phylopart::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// An unrooted tree is rooted at its default inner vertex; ids then refer to that rooting.
fn load_tree(path: &Path, unrooted: bool) -> Result<RootedTree> {
    let t = parsed(path, parse_newick(&read(path)?))?;
    if !unrooted {
        return Ok(t);
    }
    let u = parsed(path, t.unroot())?;
    parsed(path, u.root_at(u.default_root()))
}

fn options(search: &SearchArgs) -> SearchOptions {
    SearchOptions {
        budget: search.budget,
        ..SearchOptions::default()
    }
}

/// Folds an oracle result into the report.
fn note_oracle(report: &mut Report, check: phylopart::Result<bool>) {
    match check {
        Ok(true) => report.oracle = Some("agrees".into()),
        Ok(false) => {
            report.oracle = Some("disagrees".into());
            report.exit_code = exit::ORACLE_DISAGREES;
        }
        Err(e) => report.oracle = Some(format!("skipped ({e})")),
    }
}

fn edge_refs(t: &RootedTree, edges: &[VertexId]) -> Vec<EdgeRef> {
    edges.iter().map(|&v| EdgeRef::rooted(t, v)).collect()
}

pub fn check(a: &CheckArgs, oracle: bool) -> Result<Report> {
    let t = load_tree(&a.tree, a.unrooted)?;
    let p = parsed(&a.partition, parse_partition(&read(&a.partition)?, Some(t.taxa())))?;
    let verdict = classify(&t, &p)?;
    let mut report = match &verdict {
        CompatVerdict::Compatible { edges } => {
            let mut r = Report::new("check", "compatible", exit::COMPATIBLE);
            let (name, set) = match a.edges {
                EdgeSet::Canonical => ("canonical", edges.clone()),
                EdgeSet::Min => ("min", minimum_separating_edges(&t, &p)?),
                EdgeSet::Max => ("max", maximum_separating_edges(&t, &p)?),
            };
            r.edge_set = Some(name);
            r.edges = Some(edge_refs(&t, set.edges()));
            if a.refine {
                r.refinement = Some(serialize_newick(&t));
            }
            r
        }
        CompatVerdict::RCompatibleOnly {
            vertex,
            blocks,
            refinement,
        } => {
            let mut r = Report::new("check", "r-compatible", exit::R_COMPATIBLE_ONLY);
            r.conflict = Some(Conflict {
                vertex: EdgeRef::rooted(&t, *vertex),
                blocks: blocks.iter().map(|&b| block_labels(&p, b)).collect(),
            });
            r.refinement = Some(serialize_newick(refinement));
            r
        }
        CompatVerdict::Incompatible { witness } => {
            let mut r = Report::new("check", "incompatible", exit::NEGATIVE);
            r.witness = Some(Witness {
                edge: EdgeRef::rooted(&t, witness.edge),
                blocks: [block_labels(&p, witness.first), block_labels(&p, witness.second)],
            });
            r
        }
    };
    if a.unrooted {
        report.tree = Some(serialize_newick(&t));
    }
    if oracle {
        let listed: Vec<VertexId> = match &report.edges {
            Some(_) => match a.edges {
                EdgeSet::Canonical => canonical_separating_edges(&t, &p)?.edges().to_vec(),
                EdgeSet::Min => minimum_separating_edges(&t, &p)?.edges().to_vec(),
                EdgeSet::Max => maximum_separating_edges(&t, &p)?.edges().to_vec(),
            },
            None => Vec::new(),
        };
        let agrees = (|| {
            let compatible = brute_compatible(&t, &p)?;
            let r_compatible = brute_r_compatible(&t, &p)?;
            let listed_ok = !verdict.is_compatible() || brute_separating_sets(&t, &p)?.contains(&listed);
            Ok(compatible == verdict.is_compatible() && r_compatible == verdict.is_r_compatible() && listed_ok)
        })();
        note_oracle(&mut report, agrees);
    }
    Ok(report)
}

/// Resolves an edge token; a comma-separated label set names the edge above its cluster.
fn resolve_edge(t: &RootedTree, token: &str) -> phylopart::Result<VertexId> {
    if !token.contains(',') {
        return t.find_vertex(token);
    }
    let labels: Vec<&str> = token.split(',').map(str::trim).collect();
    let set = t.taxa().set_of(&labels)?;
    let v = t.lca_index().lca_of_taxa(&set)?;
    if t.leaf_count(v) == set.len() {
        Ok(v)
    } else {
        Err(Error::UnknownVertex(token.to_string()))
    }
}

pub fn cut(a: &CutArgs, oracle: bool) -> Result<Report> {
    let t = load_tree(&a.tree, false)?;
    let edges: Vec<VertexId> = a
        .edges
        .iter()
        .map(|token| resolve_edge(&t, token))
        .collect::<phylopart::Result<_>>()?;
    let p = forest_partition(&t, &edges)?;
    let mut report = Report::new("cut", "partition", exit::COMPATIBLE);
    report.partition = Some(p.to_string());
    report.edges = Some(edge_refs(&t, &edges));
    report.edge_set = Some("deleted");
    if oracle {
        note_oracle(&mut report, brute_compatible(&t, &p));
    }
    Ok(report)
}

fn load_splits(path: &Path) -> Result<SplitSystem> {
    let text = read(path)?;
    if text.trim_start().starts_with('(') {
        let t = parsed(path, parse_newick(&text))?;
        Ok(splits_of(&parsed(path, t.unroot())?))
    } else {
        parsed(path, parse_splits(&text, None))
    }
}

pub fn splits(a: &SplitsArgs, oracle: bool) -> Result<Report> {
    let s = load_splits(&a.input)?;
    let p = parsed(&a.partition, parse_partition(&read(&a.partition)?, Some(s.taxa())))?;
    let tree_like = pairwise_compatible(&s);
    let mut report = if !tree_like {
        Report::new("splits", "not-tree-like", exit::NEGATIVE)
    } else {
        match is_compatible_splits(&s, &p)? {
            Some(h) => {
                let mut r = Report::new("splits", "compatible", exit::COMPATIBLE);
                r.splits = Some(h.splits().iter().map(|sp| h.format_split(sp)).collect());
                r
            }
            None => Report::new("splits", "incompatible", exit::NEGATIVE),
        }
    };
    if a.check_treelike {
        report.tree_like = Some(tree_like);
    }
    if oracle && tree_like {
        let found = report.exit_code == exit::COMPATIBLE;
        let agrees = tree_of_splits(&s)
            .and_then(|u| u.root_at(u.default_root()))
            .and_then(|t| brute_compatible(&t, &p))
            .map(|expected| expected == found);
        note_oracle(&mut report, agrees);
    }
    Ok(report)
}

/// Trees on `taxa` that refine `base` and satisfy `ok`, by exhaustive enumeration.
fn brute_exists(taxa: &Arc<Taxa>, base: &RootedTree, ok: impl Fn(&RootedTree) -> phylopart::Result<bool>) -> phylopart::Result<bool> {
    for c in enumerate_rooted_trees(taxa)? {
        if brute_is_refinement(&c, base) && ok(&c)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn all_compatible(t: &RootedTree, members: &[Partition]) -> phylopart::Result<bool> {
    for p in members {
        if !brute_compatible(t, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn budget_report(command: &'static str, count: String, budget: u64) -> Report {
    let mut r = Report::new(command, "budget-exceeded", exit::BUDGET_EXCEEDED);
    r.search_space = Some(count);
    r.budget = Some(budget);
    r
}

pub fn system(a: &SystemArgs, oracle: bool) -> Result<Report> {
    let text = read(&a.system)?;
    let (base, members) = match &a.tree {
        Some(path) => {
            let t = load_tree(path, false)?;
            let members = parsed(&a.system, parse_partition_system(&text, Some(t.taxa())))?;
            (t, members)
        }
        None => {
            let members = parsed(&a.system, parse_partition_system(&text, None))?;
            let taxa = members
                .first()
                .map(|p| p.taxa().clone())
                .ok_or(CliError::Parse {
                    path: a.system.clone(),
                    source: Error::EmptySystem,
                })?;
            (RootedTree::star(&taxa), members)
        }
    };
    let ps = PartitionSystem::new(base.taxa(), members)?;
    let found = match compat_tp(&base, &ps, &options(&a.search)) {
        Err(Error::BudgetExceeded { count, budget }) => return Ok(budget_report("system", count.to_string(), budget)),
        other => other?,
    };
    let mut report = match &found {
        Some(t) => {
            let mut r = Report::new("system", "found", exit::COMPATIBLE);
            r.tree = Some(serialize_newick(t));
            r
        }
        None => Report::new("system", "no-refinement", exit::NEGATIVE),
    };
    if oracle {
        let agrees = match &found {
            Some(t) => Ok(brute_is_refinement(t, &base)).and_then(|r| Ok(r && all_compatible(t, ps.members())?)),
            None => brute_exists(ps.taxa(), &base, |c| all_compatible(c, ps.members())).map(|e| !e),
        };
        note_oracle(&mut report, agrees);
    }
    Ok(report)
}

fn explained_report(tc: &EdgeColoredTree) -> Report {
    let mut r = Report::new("fitch", "explained", exit::COMPATIBLE);
    r.tree = Some(serialize_newick(&tc.tree));
    r.edge_colors = Some(
        tc.tree
            .edges()
            .filter(|&v| tc.lambda[v as usize] != 0)
            .map(|v| EdgeColors {
                edge: EdgeRef::rooted(&tc.tree, v),
                colors: (0..64).filter(|i| tc.lambda[v as usize] >> i & 1 == 1).map(|i| i + 1).collect(),
            })
            .collect(),
    );
    r
}

fn monochromatic_members(eps: &FitchMap) -> Vec<Partition> {
    (1..=eps.colors())
        .filter_map(|m| monochromatic_partition(eps, m))
        .collect()
}

pub fn fitch(a: &FitchArgs, oracle: bool) -> Result<Report> {
    let text = read(&a.map)?;
    let tree = match &a.tree {
        Some(path) => Some(load_tree(path, a.unrooted)?),
        None => None,
    };
    let eps = parsed(&a.map, parse_fitch_map(&text, tree.as_ref().map(|t| t.taxa())))?;
    let outcome = match &tree {
        Some(t) => explainable_rooted(&eps, t),
        None => symm_fitch_recognition(&eps, &options(&a.search)),
    };
    let found = match outcome {
        Ok(found) => found,
        Err(Error::NotMonochromaticFitch(m)) => {
            let mut r = Report::new("fitch", "not-fitch", exit::NEGATIVE);
            r.color = Some(m);
            r.error = Some(Error::NotMonochromaticFitch(m).to_string());
            return Ok(r);
        }
        Err(Error::BudgetExceeded { count, budget }) => return Ok(budget_report("fitch", count.to_string(), budget)),
        Err(e) => return Err(e.into()),
    };
    let mut report = match &found {
        Some(tc) => explained_report(tc),
        None => Report::new("fitch", "no-tree", exit::NEGATIVE),
    };
    if oracle {
        let agrees = match (&found, &tree) {
            (Some(tc), _) => Ok(fitch_map_of(tc) == eps),
            (None, Some(t)) => all_compatible(t, &monochromatic_members(&eps)).map(|e| !e),
            (None, None) => {
                let members = monochromatic_members(&eps);
                brute_exists(eps.taxa(), &RootedTree::star(eps.taxa()), |c| all_compatible(c, &members)).map(|e| !e)
            }
        };
        note_oracle(&mut report, agrees);
    }
    Ok(report)
}
