//! Acceptance checks; prints one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use phylopart::coloring::color_edges;
use phylopart::compat::{
    canonical_separating_edges, classify_unrooted, forest_partition, is_compatible, is_compatible_via_closures,
    is_r_compatible, maximum_separating_edges, minimum_separating_edges,
};
use phylopart::io::parse_newick;
use phylopart::oracle::{
    brute_compatible, brute_exist_tp, brute_is_refinement, brute_r_compatible, brute_separating_sets,
    cluster_overlapping_two_blocks, enumerate_partitions, enumerate_rooted_trees,
};
use phylopart::refine::build_refinement;
use phylopart::splits::{
    is_compatible_recursive, is_compatible_splits, pairwise_compatible, splits_of, tree_of_splits, Split, SplitSystem,
};
use phylopart::systems::{
    binary_refinement_count, compat_tp, enumerate_binary_refinements, exist_tp, explainable, explainable_rooted,
    fitch_map_of, meet_system, symm_fitch_recognition, system_compatible_fixed, EdgeColoredTree, FitchMap,
    PartitionSystem, SearchOptions,
};
use phylopart::{Completion, Error, Hierarchy, Partition, RootedTree, VertexId};
use rand::Rng;

use common::{random_cut, random_partition, random_tree, rng, taxa};

type Outcome = Result<String, String>;

/// Every rooted tree and every partition for one leaf-set size.
struct Sweep {
    trees: Vec<RootedTree>,
    parts: Vec<Partition>,
}

fn sweeps() -> Vec<Sweep> {
    (2..=6)
        .map(|n| {
            let x = taxa(n);
            Sweep {
                trees: enumerate_rooted_trees(&x).unwrap(),
                parts: enumerate_partitions(&x).unwrap(),
            }
        })
        .collect()
}

fn pairs(sweeps: &[Sweep]) -> usize {
    sweeps.iter().map(|s| s.trees.len() * s.parts.len()).sum()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn criterion_1(sweeps: &[Sweep], brute: &mut Vec<Vec<Vec<bool>>>) -> Outcome {
    let mut mismatches = 0usize;
    let mut first = None;
    for s in sweeps {
        let mut table = Vec::with_capacity(s.trees.len());
        for t in &s.trees {
            let h = t.hierarchy();
            let mut row = Vec::with_capacity(s.parts.len());
            for p in &s.parts {
                let fast = is_compatible(t, p).unwrap();
                let oracle = brute_compatible(t, p).unwrap();
                let closures = is_compatible_via_closures(&h, p).unwrap();
                if fast != oracle || fast != closures {
                    mismatches += 1;
                    first.get_or_insert_with(|| format!("{} with {p}", phylopart::io::serialize_newick(t)));
                }
                row.push(oracle);
            }
            table.push(row);
        }
        brute.push(table);
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches, first: {}", first.unwrap()))?;
    Ok(format!("|X| = 2..6, {} tree/partition pairs, 0 mismatches", pairs(sweeps)))
}

fn criterion_2(sweeps: &[Sweep], brute: &[Vec<Vec<bool>>], r_table: &mut Vec<Vec<Vec<bool>>>) -> Outcome {
    let mut mismatches = 0usize;
    let mut first = None;
    for (s, compat) in sweeps.iter().zip(brute) {
        // r-compatible iff some refinement (all enumerated) is compatible.
        let mut table = Vec::with_capacity(s.trees.len());
        for t in &s.trees {
            let refinements: Vec<usize> = (0..s.trees.len())
                .filter(|&j| brute_is_refinement(&s.trees[j], t))
                .collect();
            let mut row = Vec::with_capacity(s.parts.len());
            for (k, p) in s.parts.iter().enumerate() {
                let oracle = refinements.iter().any(|&j| compat[j][k]);
                let fast = is_r_compatible(t, p).unwrap();
                let direct = cluster_overlapping_two_blocks(t, p).unwrap().is_none();
                if fast != oracle || fast != direct {
                    mismatches += 1;
                    first.get_or_insert_with(|| format!("{} with {p}", phylopart::io::serialize_newick(t)));
                }
                row.push(oracle);
            }
            table.push(row);
        }
        r_table.push(table);
    }
    // The standalone oracle agrees with the tabulated one.
    let mut r = rng(2);
    let mut spot = 0;
    for (s, table) in sweeps.iter().zip(r_table.iter()) {
        let exhaustive = s.trees.len() * s.parts.len() <= 400;
        for (t, row) in s.trees.iter().zip(table) {
            for (p, &expected) in s.parts.iter().zip(row) {
                if exhaustive || r.gen_ratio(1, 2000) {
                    spot += 1;
                    if brute_r_compatible(t, p).unwrap() != expected {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches, first: {first:?}"))?;
    Ok(format!(
        "{} pairs vs refinement oracle and overlap check, {spot} direct oracle calls (seed 2), 0 mismatches",
        pairs(sweeps)
    ))
}

fn criterion_3(sweeps: &[Sweep], r_table: &[Vec<Vec<bool>>]) -> Outcome {
    let mut checked = 0usize;
    for (s, table) in sweeps.iter().zip(r_table) {
        for (i, t) in s.trees.iter().enumerate() {
            for (k, p) in s.parts.iter().enumerate() {
                if !table[i][k] {
                    ensure(matches!(build_refinement(t, p), Err(Error::NotRCompatible(_))), || {
                        format!("refinement built for a non-r-compatible pair {p}")
                    })?;
                    continue;
                }
                checked += 1;
                let r = build_refinement(t, p).map_err(|e| e.to_string())?;
                ensure(brute_is_refinement(&r, t), || format!("not a refinement for {p}"))?;
                ensure(brute_compatible(&r, p).unwrap(), || format!("refinement incompatible with {p}"))?;
                ensure(build_refinement(&r, p).as_ref() == Ok(&r), || format!("not idempotent for {p}"))?;
            }
        }
    }
    Ok(format!("{checked} r-compatible pairs: refinement, oracle-compatible, idempotent"))
}

fn criterion_4(sweeps: &[Sweep], brute: &[Vec<Vec<bool>>]) -> Outcome {
    let mut checked = 0usize;
    let mut short_canonical = 0usize;
    for (s, table) in sweeps.iter().zip(brute) {
        for (i, t) in s.trees.iter().enumerate() {
            let idx = t.lca_index();
            for (k, p) in s.parts.iter().enumerate() {
                if !table[i][k] {
                    continue;
                }
                checked += 1;
                let all = brute_separating_sets(t, p).unwrap();
                let size_p = p.len();
                let smallest = all.iter().map(Vec::len).min().unwrap();
                ensure(smallest == size_p - 1, || format!("oracle minimum {smallest} for {p}"))?;

                let min = minimum_separating_edges(t, p).unwrap();
                ensure(min.len() == size_p - 1, || format!("minimum set size {} for {p}", min.len()))?;
                ensure(all.iter().any(|h| h == min.edges()), || format!("minimum set invalid for {p}"))?;

                let canonical = canonical_separating_edges(t, p).unwrap();
                let root_block = p
                    .blocks()
                    .iter()
                    .any(|b| idx.lca_of_taxa(b).unwrap() == t.root());
                ensure(canonical.len() == size_p || canonical.len() == size_p - 1, || {
                    format!("canonical size {} for {p}", canonical.len())
                })?;
                ensure((canonical.len() == size_p - 1) == root_block, || {
                    format!("canonical size condition fails for {p}")
                })?;
                ensure(all.iter().any(|h| h == canonical.edges()), || format!("canonical set invalid for {p}"))?;
                if canonical.len() < size_p {
                    short_canonical += 1;
                }

                let max = maximum_separating_edges(t, p).unwrap();
                ensure(all.iter().any(|h| h == max.edges()), || format!("maximum set invalid for {p}"))?;
                ensure(
                    all.iter().all(|h| h.iter().all(|v| max.contains(*v))),
                    || format!("maximum set misses a valid edge for {p}"),
                )?;
                ensure(
                    all.iter().filter(|h| h.len() == max.len()).count() == 1,
                    || format!("maximum set not unique for {p}"),
                )?;
            }
        }
    }
    Ok(format!(
        "{checked} compatible pairs: min = |P|-1, canonical in {{|P|-1,|P|}} ({short_canonical} short, all with a block at the root), maximum is the unique superset"
    ))
}

fn part(t: &RootedTree, text: &str) -> Partition {
    phylopart::io::parse_partition_line(text, t.taxa()).unwrap()
}

fn edge(t: &RootedTree, labels: &[&str]) -> VertexId {
    t.lca_index().lca_of_taxa(&t.taxa().set_of(labels).unwrap()).unwrap()
}

fn criterion_5() -> Outcome {
    let mut fixtures = Vec::new();
    let mut check = |name: &str, ok: bool| -> Result<(), String> {
        fixtures.push(name.to_string());
        ensure(ok, || format!("fixture `{name}` failed"))
    };

    // Cut partitions.
    let t = parse_newick("((a,(b,c))u,(d,(e,f))v,g);").unwrap();
    let h1 = [t.find_vertex("u").unwrap(), t.find_vertex("v").unwrap()];
    let h2 = [edge(&t, &["b", "c"]), edge(&t, &["d"]), edge(&t, &["e", "f"])];
    check("cut H1", forest_partition(&t, &h1).unwrap().to_string() == "a,b,c|d,e,f|g")?;
    check("cut H2", forest_partition(&t, &h2).unwrap().to_string() == "a,g|b,c|d|e,f")?;

    // Three trees explaining one partition.
    let t1 = parse_newick("((b,c),(d,e),a);").unwrap();
    let p = part(&t1, "a|b,c|d,e");
    check("T1 is the tree of H_P", t1.hierarchy() == Hierarchy::of_partition(&p))?;
    for nwk in ["((b,c),(d,e),a);", "(d,e,(a,b,c));", "(b,c,(a,d,e));"] {
        let ti = parse_newick(nwk).unwrap();
        let pi = part(&ti, "a|b,c|d,e");
        check(nwk, is_compatible(&ti, &pi).unwrap() && brute_compatible(&ti, &pi).unwrap())?;
    }
    let star5 = RootedTree::star(t1.taxa());
    check("star not compatible with P", !is_compatible(&star5, &p).unwrap())?;

    // r-compatible versus refused.
    let star = parse_newick("(a,b,c,d);").unwrap();
    let q = part(&star, "a,b|c,d");
    let g = color_edges(&star, &q).unwrap().map_err(|w| w.to_string())?;
    check("star: every edge carries one color", star.edges().all(|v| g.color(v).is_some()))?;
    check("star: not compatible, r-compatible", !is_compatible(&star, &q).unwrap() && is_r_compatible(&star, &q).unwrap())?;
    let crossed = parse_newick("((a,c),(b,d));").unwrap();
    let qc = part(&crossed, "a,b|c,d");
    check("T' refused", color_edges(&crossed, &qc).unwrap().is_err())?;
    check("T' not r-compatible", !is_r_compatible(&crossed, &qc).unwrap() && !brute_r_compatible(&crossed, &qc).unwrap())?;

    // Refinements whose union is not a hierarchy.
    let t4 = parse_newick("((a,b,c,d),e);").unwrap();
    let p1 = part(&t4, "a,b|c|d,e");
    let p2 = part(&t4, "a|b,c|d,e");
    let r1 = build_refinement(&t4, &p1).unwrap();
    let r2 = build_refinement(&t4, &p2).unwrap();
    let x4 = t4.taxa();
    check("T1* adds {a,b}", r1.hierarchy().len() == t4.hierarchy().len() + 1 && r1.hierarchy().contains(&[0, 1]))?;
    check("T2* adds {b,c}", r2.hierarchy().len() == t4.hierarchy().len() + 1 && r2.hierarchy().contains(&[1, 2]))?;
    let mut union = r1.hierarchy().clusters().to_vec();
    union.extend_from_slice(r2.hierarchy().clusters());
    union.sort();
    union.dedup();
    check(
        "union of refinements overlaps",
        matches!(Hierarchy::from_clusters(x4, union, Completion::Strict), Err(Error::OverlappingClusters(_, _))),
    )?;
    let sys = PartitionSystem::new(x4, vec![p1.clone(), p2.clone()]).unwrap();
    let common = compat_tp(&t4, &sys, &SearchOptions::default()).unwrap();
    check(
        "common refinement exists",
        common.is_some_and(|c| c.is_refinement_of(&t4).unwrap() && system_compatible_fixed(&c, &sys).unwrap().0),
    )?;

    // Canonical set neither minimum nor maximum; minimum not unique.
    let tm = parse_newick("(((a,b),(c,d)),(e,f));").unwrap();
    let pm = part(&tm, "a,b|c,d|e,f");
    let all = brute_separating_sets(&tm, &pm).unwrap();
    let sizes = (
        canonical_separating_edges(&tm, &pm).unwrap().len(),
        minimum_separating_edges(&tm, &pm).unwrap().len(),
        maximum_separating_edges(&tm, &pm).unwrap().len(),
    );
    check("canonical 3, minimum 2, maximum 4", sizes == (3, 2, 4))?;
    check("several minimum sets", all.iter().filter(|h| h.len() == 2).count() >= 2)?;

    // Clusters overlapping blocks of a compatible partition.
    let t5 = parse_newick("((c1,c2,(c3,(d1,d2)),(a1,a2),(b1,b2)),e);").unwrap();
    let p5 = part(&t5, "a1,a2|b1,b2|c1,c2,c3|d1,d2|e");
    check("C overlaps D+C3 yet compatible", is_compatible(&t5, &p5).unwrap())?;

    // No common refinement; meet is the singletons.
    let f1 = part(&star, "a,b|c,d");
    let f2 = part(&star, "a,c|b,d");
    let fig6 = PartitionSystem::new(star.taxa(), vec![f1.clone(), f2.clone()]).unwrap();
    check("exist_tp = none", exist_tp(&fig6, &SearchOptions::default()).unwrap().is_none())?;
    check("oracle exist = none", brute_exist_tp(&fig6).unwrap().is_none())?;
    check("members r-compatible", is_r_compatible(&star, &f1).unwrap() && is_r_compatible(&star, &f2).unwrap())?;
    let meet = meet_system(&fig6).unwrap();
    check("meet = singletons", meet == Partition::singletons(star.taxa()))?;
    check("meet compatible, members not", is_compatible(&star, &meet).unwrap() && !is_compatible(&star, &f1).unwrap())?;
    let crossing = SplitSystem::new(
        star.taxa(),
        vec![
            Split::new(star.taxa(), &[0, 1]).unwrap(),
            Split::new(star.taxa(), &[0, 2]).unwrap(),
        ],
    );
    check("crossing splits not tree-like", !pairwise_compatible(&crossing))?;

    // Split subset recovery on an unrooted tree.
    let t7 = parse_newick("((a,b),c,(d,e));").unwrap().unroot().unwrap();
    let p7 = Partition::new(t7.taxa(), &[vec!["a", "b", "c"], vec!["d", "e"]]).unwrap();
    let h7 = is_compatible_splits(&splits_of(&t7), &p7).unwrap();
    check(
        "h = {a,b,c|d,e}",
        h7.as_ref().is_some_and(|h| h.len() == 1 && h.format_split(&h.splits()[0]) == "a,b,c|d,e"),
    )?;
    check("recursive test agrees", is_compatible_recursive(&t7, &p7).unwrap())?;
    check("unrooted classify agrees", classify_unrooted(&t7, &p7).unwrap().0.is_compatible())?;
    check("tree of the splits", tree_of_splits(&splits_of(&t7)).map(|t| splits_of(&t)) == Ok(splits_of(&t7)))?;

    // Join of compatible partitions need not be compatible.
    let tj = parse_newick("((a,b),(a',b'));").unwrap();
    let j1 = part(&tj, "a,a'|b|b'");
    let j2 = part(&tj, "a|a'|b,b'");
    let join = j1.join(&j2).unwrap();
    check("join members compatible", is_compatible(&tj, &j1).unwrap() && is_compatible(&tj, &j2).unwrap())?;
    check("join = {a,a'},{b,b'} incompatible", join.to_string() == "a,a'|b,b'" && !is_compatible(&tj, &join).unwrap())?;
    let tc = parse_newick("((a,a',b),b');").unwrap();
    let pc = part(&tc, "a,a'|b,b'");
    check("overlapping closure: r-compatible only", !is_compatible(&tc, &pc).unwrap() && is_r_compatible(&tc, &pc).unwrap())?;

    Ok(format!("{} fixtures exact", fixtures.len()))
}

fn criterion_6() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(3usize, 3u64), (4, 15), (5, 105), (6, 945)] {
        let star = RootedTree::star(&taxa(n));
        let listed = enumerate_binary_refinements(&star).count() as u64;
        let formula = binary_refinement_count(&star);
        ensure(listed == expected && formula == BigUint::from(expected), || {
            format!("{n} leaves: listed {listed}, formula {formula}, expected {expected}")
        })?;
        counts.push(listed.to_string());
    }
    Ok(format!("stars on 3,4,5,6 leaves: {}", counts.join(", ")))
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn criterion_7() -> Outcome {
    let seed = 7;
    let mut r = rng(seed);
    let mut medians = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in [100_000usize, 1_000_000] {
        let x = taxa(n);
        let t = random_tree(&mut r, &x, 2);
        let cut = random_cut(&mut r, &t, 0.05);
        let p = forest_partition(&t, &cut).unwrap();
        let mut runs = Vec::new();
        for _ in 0..5 {
            let start = Instant::now();
            let g = color_edges(&t, &p).unwrap();
            let ok = is_compatible(&t, &p).unwrap();
            let elapsed = start.elapsed();
            ensure(g.is_ok() && ok, || format!("{n} leaves: induced partition not compatible"))?;
            runs.push(elapsed);
        }
        slowest = slowest.max(*runs.iter().max().unwrap());
        medians.push(median(runs));
    }
    let ratio = medians[1].as_secs_f64() / medians[0].as_secs_f64();
    ensure(ratio <= 15.0 && slowest < Duration::from_secs(2), || {
        format!("medians {:?}, ratio {ratio:.2}, slowest {slowest:?}", medians)
    })?;
    Ok(format!(
        "median {:.1} ms at 1e5, {:.1} ms at 1e6, ratio {ratio:.2} (<= 15), slowest run {:.0} ms (seed {seed})",
        medians[0].as_secs_f64() * 1e3,
        medians[1].as_secs_f64() * 1e3,
        slowest.as_secs_f64() * 1e3
    ))
}

fn criterion_8() -> Outcome {
    let seed = 8;
    let mut r = rng(seed);
    let opts = SearchOptions::default();
    let mut maps = 0usize;
    for n in 2..=5 {
        for t in enumerate_rooted_trees(&taxa(n)).unwrap() {
            for _ in 0..200 {
                let colors = r.gen_range(1..=3u32);
                let mut tc = EdgeColoredTree::uncolored(t.clone(), colors);
                for v in t.edges() {
                    tc.lambda[v as usize] = r.gen_range(0..1u64 << colors);
                }
                let eps = fitch_map_of(&tc);
                maps += 1;
                let found = symm_fitch_recognition(&eps, &opts).map_err(|e| e.to_string())?;
                ensure(found.as_ref().is_some_and(|f| fitch_map_of(f) == eps), || {
                    format!("recognition failed on {}", phylopart::io::serialize_newick(&t))
                })?;
                let on_t = explainable_rooted(&eps, &t).unwrap();
                ensure(on_t.is_some_and(|f| fitch_map_of(&f) == eps), || "explainable on T failed".into())?;
                if n >= 3 {
                    let un = explainable(&eps, &t.unroot().unwrap()).unwrap();
                    ensure(un.is_some_and(|f| fitch_map_of(&f) == eps), || "explainable on unrooted T failed".into())?;
                }
            }
        }
    }
    // Two crossing colors on four leaves.
    let x = taxa(4);
    let mut eps = FitchMap::new(&x, 2).unwrap();
    for a in 0..4u32 {
        for b in a + 1..4 {
            let m1 = u64::from((a < 2) != (b < 2));
            let m2 = u64::from(a % 2 != b % 2) << 1;
            eps.set(a, b, m1 | m2).unwrap();
        }
    }
    ensure(symm_fitch_recognition(&eps, &opts).unwrap().is_none(), || "crossing map accepted".into())?;
    for t in enumerate_rooted_trees(&x).unwrap() {
        ensure(explainable_rooted(&eps, &t).unwrap().is_none(), || "crossing map explained".into())?;
    }
    Ok(format!(
        "{maps} maps from all trees on 2..5 leaves reproduced bit-exactly (seed {seed}); crossing 2-color map rejected on all 26 trees"
    ))
}

fn criterion_9() -> Outcome {
    let seed = 9;
    let mut r = rng(seed);
    for i in 0..10_000 {
        let x = taxa(r.gen_range(2..=10));
        let p = random_partition(&mut r, &x, 5);
        let q = random_partition(&mut r, &x, 5);
        let s = random_partition(&mut r, &x, 5);
        let m = |a: &Partition, b: &Partition| a.meet(b).unwrap();
        let j = |a: &Partition, b: &Partition| a.join(b).unwrap();
        let laws = [
            m(&p, &q) == m(&q, &p),
            j(&p, &q) == j(&q, &p),
            m(&m(&p, &q), &s) == m(&p, &m(&q, &s)),
            j(&j(&p, &q), &s) == j(&p, &j(&q, &s)),
            m(&p, &j(&p, &q)) == p,
            j(&p, &m(&p, &q)) == p,
            m(&p, &p) == p && j(&p, &p) == p,
            m(&p, &q).refines(&p).unwrap() && m(&p, &q).refines(&q).unwrap(),
            p.refines(&j(&p, &q)).unwrap() && q.refines(&j(&p, &q)).unwrap(),
            p.refines(&q).unwrap() == (m(&p, &q) == p),
            p.refines(&q).unwrap() == (j(&p, &q) == q),
        ];
        if let Some(k) = laws.iter().position(|ok| !ok) {
            return Err(format!("sample {i}: law {k} fails for {p}, {q}, {s}"));
        }
    }
    for i in 0..1_000 {
        let x = taxa(r.gen_range(3..=12));
        let t = random_tree(&mut r, &x, 4);
        let k = r.gen_range(2..=4);
        let mut cuts = Vec::new();
        let mut members = Vec::new();
        for _ in 0..k {
            let h = random_cut(&mut r, &t, 0.3);
            members.push(forest_partition(&t, &h).unwrap());
            cuts.extend(h);
        }
        let sys = PartitionSystem::new(&x, members).unwrap();
        let meet = meet_system(&sys).unwrap();
        ensure(system_compatible_fixed(&t, &sys).unwrap().0, || format!("sample {i}: members incompatible"))?;
        ensure(is_compatible(&t, &meet).unwrap(), || format!("sample {i}: meet incompatible"))?;
        cuts.sort_unstable();
        cuts.dedup();
        ensure(forest_partition(&t, &cuts).unwrap() == meet, || format!("sample {i}: meet is not F(T, union H)"))?;
    }
    // Converse fails: crossing members, compatible meet.
    let star = parse_newick("(a,b,c,d);").unwrap();
    let f1 = part(&star, "a,b|c,d");
    let f2 = part(&star, "a,c|b,d");
    let meet = f1.meet(&f2).unwrap();
    ensure(
        is_compatible(&star, &meet).unwrap() && !is_compatible(&star, &f1).unwrap() && !is_compatible(&star, &f2).unwrap(),
        || "converse counterexample".into(),
    )?;
    // Joins are not closed.
    let tj = parse_newick("((a,b),(a',b'));").unwrap();
    let j1 = part(&tj, "a,a'|b|b'");
    let j2 = part(&tj, "a|a'|b,b'");
    ensure(
        is_compatible(&tj, &j1).unwrap()
            && is_compatible(&tj, &j2).unwrap()
            && j1.locally_comparable(&j2).unwrap()
            && !is_compatible(&tj, &j1.join(&j2).unwrap()).unwrap(),
        || "join counterexample".into(),
    )?;
    Ok(format!(
        "10000 lattice samples, 1000 wedge samples (seed {seed}); converse and join counterexamples hold"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweeps = sweeps();
    let mut brute = Vec::new();
    let mut r_table = Vec::new();
    let mut results: Vec<(&str, Outcome, Duration)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let outcome = f();
        let elapsed = t0.elapsed();
        let (tag, text) = match &outcome {
            Ok(s) => ("PASS", s.as_str()),
            Err(s) => ("FAIL", s.as_str()),
        };
        println!("{tag} {name}: {text} [{:.1}s]", elapsed.as_secs_f64());
        results.push((name, outcome, elapsed));
    };
    run("1 compatibility oracle equivalence", &mut || criterion_1(&sweeps, &mut brute));
    run("2 r-compatibility oracle equivalence", &mut || criterion_2(&sweeps, &brute, &mut r_table));
    run("3 refinement soundness", &mut || criterion_3(&sweeps, &r_table));
    run("4 separating-edge cardinalities", &mut || criterion_4(&sweeps, &brute));
    run("5 figure fixtures", &mut criterion_5);
    run("6 double-factorial counts", &mut criterion_6);
    run("7 linear-time scaling", &mut criterion_7);
    run("8 Fitch round trip", &mut criterion_8);
    run("9 lattice and wedge properties", &mut criterion_9);
    let failed = results.iter().filter(|r| r.1.is_err()).count();
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
