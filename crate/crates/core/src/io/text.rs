//! Line-oriented formats: partitions, partition systems, split systems,
//! edge colorings and Fitch maps.
//!
//! Blank lines and lines starting with `#` are ignored. A `ground: a,b,c`
//! header fixes the leaf set; without one it is the union of all labels.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::{same_taxa, Taxa, TaxonId};
use crate::partition::Partition;
use crate::splits::{Split, SplitSystem};
use crate::systems::{EdgeColoredTree, FitchMap};
use crate::tree::RootedTree;

/// A content line: 1-based number, text without the line break, and the
/// byte offset where the trimmed content starts.
#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    raw: &'a str,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn column(&self, part: &str) -> usize {
        let offset = part.as_ptr() as usize - self.raw.as_ptr() as usize;
        self.raw[..offset].chars().count() + 1
    }

    fn syntax(&self, part: &str, message: impl Into<String>) -> Error {
        Error::syntax(self.number, self.column(part), message)
    }

    fn wrap(&self, e: Error) -> Error {
        match e {
            e @ Error::Syntax { .. } => e,
            e => e.at_line(self.number),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.split('\n').enumerate().filter_map(|(i, raw)| {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let text = raw.trim();
        (!text.is_empty() && !text.starts_with('#')).then_some(Line { number: i + 1, raw, text })
    })
}

/// `key: value` header, matched case-insensitively.
fn header<'a>(line: &Line<'a>, key: &str) -> Option<&'a str> {
    let (k, v) = line.text.split_once(':')?;
    k.trim().eq_ignore_ascii_case(key).then_some(v)
}

/// Comma-separated labels; empty entries are syntax errors.
fn labels<'a>(line: &Line<'a>, part: &'a str) -> Result<Vec<&'a str>> {
    part.split(',')
        .map(|tok| {
            let t = tok.trim();
            if t.is_empty() {
                Err(line.syntax(tok, "empty label"))
            } else {
                Ok(t)
            }
        })
        .collect()
}

/// Blocks of a `a,b | c | d,e` line.
fn blocks<'a>(line: &Line<'a>) -> Result<Vec<Vec<&'a str>>> {
    line.text
        .split('|')
        .map(|b| {
            if b.trim().is_empty() {
                Err(line.wrap(Error::EmptyBlock))
            } else {
                labels(line, b)
            }
        })
        .collect()
}

/// Splits the document into an optional `ground:` header and data lines.
fn ground_header<'a>(lines: &[Line<'a>]) -> Result<(Option<Arc<Taxa>>, Vec<Line<'a>>)> {
    let mut ground = None;
    let mut data = Vec::new();
    for line in lines {
        match header(line, "ground") {
            Some(value) => {
                if ground.is_some() {
                    return Err(line.wrap(Error::Format("repeated `ground:` header".into())));
                }
                let taxa = Taxa::new(labels(line, value)?).map_err(|e| line.wrap(e))?;
                ground = Some(taxa);
            }
            None => data.push(*line),
        }
    }
    Ok((ground, data))
}

/// The leaf set of a document: caller's, header's (which must agree), or the
/// union of `found` labels.
fn resolve_ground<'a>(
    given: Option<&Arc<Taxa>>,
    declared: Option<Arc<Taxa>>,
    found: impl Iterator<Item = &'a str>,
) -> Result<Option<Arc<Taxa>>> {
    match (given, declared) {
        (Some(g), Some(d)) if !same_taxa(g, &d) => Err(Error::GroundSetMismatch),
        (Some(g), _) => Ok(Some(Arc::clone(g))),
        (None, Some(d)) => Ok(Some(d)),
        (None, None) => {
            let mut all: Vec<&str> = found.collect();
            all.sort_unstable();
            all.dedup();
            if all.is_empty() {
                Ok(None)
            } else {
                Taxa::new(all).map(Some)
            }
        }
    }
}

fn partition_of(line: &Line, taxa: &Arc<Taxa>, blocks: &[Vec<&str>]) -> Result<Partition> {
    Partition::new(taxa, blocks).map_err(|e| line.wrap(e))
}

/// One partition in `a | b,c | d,e` notation over `ground`.
pub fn parse_partition_line(text: &str, ground: &Arc<Taxa>) -> Result<Partition> {
    let line = Line {
        number: 1,
        raw: text,
        text: text.trim(),
    };
    let bs = blocks(&line)?;
    Partition::new(ground, &bs)
}

/// Every partition line of a document, in order.
pub fn parse_partition_system(text: &str, ground: Option<&Arc<Taxa>>) -> Result<Vec<Partition>> {
    let lines: Vec<Line> = content_lines(text).collect();
    let (declared, data) = ground_header(&lines)?;
    let parsed = data
        .iter()
        .map(|l| blocks(l).map(|b| (l, b)))
        .collect::<Result<Vec<_>>>()?;
    let taxa = resolve_ground(
        ground,
        declared,
        parsed.iter().flat_map(|(_, b)| b.iter().flatten().copied()),
    )?;
    match taxa {
        None => Ok(Vec::new()),
        Some(taxa) => parsed.iter().map(|(l, b)| partition_of(l, &taxa, b)).collect(),
    }
}

/// A document holding exactly one partition.
pub fn parse_partition(text: &str, ground: Option<&Arc<Taxa>>) -> Result<Partition> {
    let mut all = parse_partition_system(text, ground)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(Error::Format(format!("expected one partition, found {n}"))),
    }
}

/// A `ground:` header followed by one partition per line.
pub fn format_partition_system(taxa: &Taxa, members: &[Partition]) -> String {
    let all: Vec<TaxonId> = taxa.ids().collect();
    let mut out = format!("ground: {}\n", taxa.format_set(&all));
    for p in members {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// One split per line as `a,b | c,d,e`.
pub fn parse_splits(text: &str, ground: Option<&Arc<Taxa>>) -> Result<SplitSystem> {
    let lines: Vec<Line> = content_lines(text).collect();
    let (declared, data) = ground_header(&lines)?;
    let parsed = data
        .iter()
        .map(|l| {
            let b = blocks(l)?;
            if b.len() != 2 {
                return Err(l.wrap(Error::Format(format!("a split has 2 sides, found {}", b.len()))));
            }
            Ok((l, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let taxa = resolve_ground(
        ground,
        declared,
        parsed.iter().flat_map(|(_, b)| b.iter().flatten().copied()),
    )?
    .ok_or_else(|| Error::Format("split file names no labels".into()))?;
    let splits = parsed
        .iter()
        .map(|(l, b)| {
            let p = partition_of(l, &taxa, b)?;
            Split::new(&taxa, p.block(crate::partition::BlockId(0))).map_err(|e| l.wrap(e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SplitSystem::new(&taxa, splits))
}

fn color_set(line: &Line, part: &str, colors: u32) -> Result<u64> {
    let mut mask = 0u64;
    if part.trim().is_empty() {
        return Ok(0);
    }
    for tok in part.split(',') {
        let t = tok.trim();
        match t.parse::<u32>() {
            Ok(m) if m >= 1 && m <= colors => mask |= 1 << (m - 1),
            _ if t.is_empty() => return Err(line.syntax(tok, "empty color")),
            _ => return Err(line.wrap(Error::UnknownColor(t.to_string()))),
        }
    }
    Ok(mask)
}

fn format_colors(mask: u64) -> String {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Edge colors `λ` as lines `vertex: m1,m2`, where the vertex (a leaf label,
/// an inner-vertex name or `v<id>`) names the edge above it. Missing edges
/// get no color.
pub fn parse_edge_colors(text: &str, t: &RootedTree, colors: u32) -> Result<Vec<u64>> {
    if colors > 64 {
        return Err(Error::TooLarge(format!("{colors} colors (limit 64)")));
    }
    let mut lambda = vec![0u64; t.len()];
    for line in content_lines(text) {
        let (vertex, set) = line
            .text
            .split_once(':')
            .ok_or_else(|| line.syntax(line.text, "expected `vertex: colors`"))?;
        let v = t.find_vertex(vertex.trim()).map_err(|e| line.wrap(e))?;
        if v == t.root() {
            return Err(line.wrap(Error::ForeignEdge(vertex.trim().to_string())));
        }
        lambda[v as usize] |= color_set(&line, set, colors)?;
    }
    Ok(lambda)
}

/// Non-empty edge colors, one `v<id>: m1,m2` line each.
pub fn format_edge_colors(tc: &EdgeColoredTree) -> String {
    let mut out = String::new();
    for v in tc.tree.edges() {
        let mask = tc.lambda[v as usize];
        if mask != 0 {
            out.push_str(&format!("v{v}: {}\n", format_colors(mask)));
        }
    }
    out
}

/// A Fitch map as lines `x,y: m1,m2`; omitted pairs are empty. An optional
/// `colors: k` header fixes the palette, otherwise it ends at the largest
/// color used.
pub fn parse_fitch_map(text: &str, ground: Option<&Arc<Taxa>>) -> Result<FitchMap> {
    let lines: Vec<Line> = content_lines(text).collect();
    let (declared, rest) = ground_header(&lines)?;
    let mut palette: Option<u32> = None;
    let mut entries = Vec::new();
    for line in rest {
        if let Some(value) = header(&line, "colors") {
            let k = value
                .trim()
                .parse::<u32>()
                .map_err(|_| line.syntax(value, "expected a color count"))?;
            palette = Some(k);
            continue;
        }
        let (pair, set) = line
            .text
            .split_once(':')
            .ok_or_else(|| line.syntax(line.text, "expected `x,y: colors`"))?;
        let xy = labels(&line, pair)?;
        if xy.len() != 2 {
            return Err(line.syntax(pair, "expected a pair of labels"));
        }
        if xy[0] == xy[1] {
            return Err(line.wrap(Error::Format(format!("pair `{}` is not two distinct labels", pair.trim()))));
        }
        entries.push((line, xy[0], xy[1], set));
    }
    let taxa = resolve_ground(ground, declared, entries.iter().flat_map(|e| [e.1, e.2]))?
        .ok_or_else(|| Error::Format("Fitch map names no labels".into()))?;
    let colors = match palette {
        Some(k) => k,
        None => {
            let mut top = 0;
            for (line, _, _, set) in &entries {
                color_set(line, set, 64)?;
                top = top.max(64 - color_set(line, set, 64)?.leading_zeros());
            }
            top
        }
    };
    let mut eps = FitchMap::new(&taxa, colors)?;
    let mut seen = vec![false; taxa.len() * taxa.len()];
    for (line, x, y, set) in &entries {
        let x = taxa.require(x).map_err(|e| line.wrap(e))?;
        let y = taxa.require(y).map_err(|e| line.wrap(e))?;
        let mask = color_set(line, set, colors)?;
        let slot = (x.min(y) as usize) * taxa.len() + x.max(y) as usize;
        if seen[slot] && eps.get(x, y) != mask {
            return Err(line.wrap(Error::Format(format!(
                "conflicting colors for the pair {},{}",
                taxa.label(x),
                taxa.label(y)
            ))));
        }
        seen[slot] = true;
        eps.set(x, y, mask)?;
    }
    Ok(eps)
}

/// Headers plus one line per non-empty pair.
pub fn format_fitch_map(eps: &FitchMap) -> String {
    let taxa = eps.taxa();
    let all: Vec<TaxonId> = taxa.ids().collect();
    let mut out = format!("ground: {}\ncolors: {}\n", taxa.format_set(&all), eps.colors());
    for x in taxa.ids() {
        for y in x + 1..taxa.len() as TaxonId {
            let mask = eps.get(x, y);
            if mask != 0 {
                out.push_str(&format!("{},{}: {}\n", taxa.label(x), taxa.label(y), format_colors(mask)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::newick::parse_newick;

    fn abcde() -> Arc<Taxa> {
        Taxa::new(["a", "b", "c", "d", "e"]).unwrap()
    }

    #[test]
    fn partition_lines() {
        let x = abcde();
        let p = parse_partition_line("a | b,c | d,e", &x).unwrap();
        assert_eq!(p.to_string(), "a|b,c|d,e");
        let abc = Taxa::new(["a", "b", "c"]).unwrap();
        assert_eq!(parse_partition_line(" a ,b | c ", &abc).unwrap().to_string(), "a,b|c");
        assert_eq!(parse_partition_line("a,b|b,c", &abc).unwrap_err(), Error::BlockOverlap("b".into()));
        assert_eq!(parse_partition_line("a,b||c", &abc).unwrap_err(), Error::EmptyBlock.at_line(1));
        match parse_partition_line("a,,b|c", &abc) {
            Err(Error::Syntax { line: 1, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn systems_with_and_without_ground() {
        let sys = parse_partition_system("# crossing\r\na,b|c,d\n\na,c|b,d\n", None).unwrap();
        assert_eq!(sys.len(), 2);
        assert_eq!(sys[1].to_string(), "a,c|b,d");
        assert!(parse_partition_system("", None).unwrap().is_empty());
        assert!(parse_partition_system("# only a comment\n", None).unwrap().is_empty());

        let err = parse_partition_system("ground: a,b,c,d\na,b|c,d\na|b\n", None).unwrap_err();
        assert_eq!(err, Error::CoverageGap("c".into()).at_line(3));
        let x = abcde();
        let err = parse_partition_system("ground: a,b\na|b\n", Some(&x)).unwrap_err();
        assert_eq!(err, Error::GroundSetMismatch);
        let text = format_partition_system(&x, &[Partition::whole(&x), Partition::singletons(&x)]);
        let back = parse_partition_system(&text, None).unwrap();
        assert_eq!(back, vec![Partition::whole(&x), Partition::singletons(&x)]);
    }

    #[test]
    fn split_files() {
        let s = parse_splits("a,b|c,d\na,c|b,d\n", None).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "a,b|c,d\na,c|b,d\n");
        assert!(matches!(
            parse_splits("a|b|c,d\n", None),
            Err(Error::Line { line: 1, .. })
        ));
    }

    #[test]
    fn edge_color_lines() {
        let t = parse_newick("((a,b)u,(c,d),e);").unwrap();
        let u = t.find_vertex("u").unwrap();
        let lambda = parse_edge_colors("u: 1,2\n a : 3\n", &t, 3).unwrap();
        assert_eq!(lambda[u as usize], 0b11);
        assert_eq!(lambda[t.leaf(0) as usize], 0b100);
        assert_eq!(lambda.iter().filter(|&&m| m != 0).count(), 2);
        assert_eq!(
            parse_edge_colors("u: 4\n", &t, 3).unwrap_err(),
            Error::UnknownColor("4".into()).at_line(1)
        );
        assert_eq!(
            parse_edge_colors("w: 1\n", &t, 3).unwrap_err(),
            Error::UnknownVertex("w".into()).at_line(1)
        );
        let tc = EdgeColoredTree {
            tree: t.clone(),
            colors: 3,
            lambda: lambda.clone(),
        };
        assert_eq!(parse_edge_colors(&format_edge_colors(&tc), &t, 3).unwrap(), lambda);
    }

    #[test]
    fn fitch_map_files() {
        let eps = parse_fitch_map("a,b: 1\nb,c: 1,2\nc,a: 2\n", None).unwrap();
        assert_eq!(eps.colors(), 2);
        assert_eq!(eps.get(2, 0), 0b10);
        assert_eq!(eps.get(1, 2), 0b11);
        let back = parse_fitch_map(&format_fitch_map(&eps), None).unwrap();
        assert_eq!(back, eps);
        assert!(matches!(parse_fitch_map("a,b: 1\nb,a: 2\n", None), Err(Error::Line { line: 2, .. })));
        assert!(matches!(parse_fitch_map("a,a: 1\n", None), Err(Error::Line { .. })));
        assert_eq!(
            parse_fitch_map("colors: 1\na,b: 2\n", None).unwrap_err(),
            Error::UnknownColor("2".into()).at_line(2)
        );
    }
}
