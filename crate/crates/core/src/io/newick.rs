//! Newick input and canonical Newick output (topology only).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::{same_taxa, Taxa};
use crate::tree::{RootedTree, NONE};

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn new(text: &str) -> Cursor<'_> {
        Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.column, message)
    }

    /// Skips whitespace and `[...]` comments, then peeks.
    fn peek(&mut self) -> Result<Option<char>> {
        loop {
            match self.chars.peek().copied() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('[') => {
                    let err = self.error("unterminated comment");
                    while self.bump().ok_or_else(|| err.clone())? != ']' {}
                }
                other => return Ok(other),
            }
        }
    }

    fn label(&mut self) -> Result<Option<String>> {
        match self.peek()? {
            Some('\'') => {
                let err = self.error("unterminated quoted label");
                self.bump();
                let mut out = String::new();
                loop {
                    match self.bump().ok_or_else(|| err.clone())? {
                        '\'' if self.chars.peek() == Some(&'\'') => {
                            self.bump();
                            out.push('\'');
                        }
                        '\'' => break,
                        c => out.push(c),
                    }
                }
                Ok(Some(out))
            }
            _ => {
                let mut out = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || "(),:;[]".contains(c) {
                        break;
                    }
                    out.push(c);
                    self.bump();
                }
                Ok((!out.is_empty()).then_some(out))
            }
        }
    }

    fn branch_length(&mut self) -> Result<()> {
        if self.peek()? == Some(':') {
            self.bump();
            self.peek()?;
            let (line, column) = (self.line, self.column);
            let mut num = String::new();
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_digit() || "+-.eE".contains(c) {
                    num.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if num.parse::<f64>().is_err() {
                return Err(Error::syntax(line, column, "invalid branch length"));
            }
        }
        Ok(())
    }
}

struct Raw {
    parent: Vec<u32>,
    label: Vec<Option<String>>,
    inner: Vec<bool>,
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut cur = Cursor::new(text);
    if cur.peek()?.is_none() {
        return Err(Error::EmptyTree);
    }
    let mut raw = Raw {
        parent: Vec::new(),
        label: Vec::new(),
        inner: Vec::new(),
    };
    let mut open: Vec<u32> = Vec::new();
    loop {
        // A subtree starts here.
        let parent = open.last().copied().unwrap_or(NONE);
        if cur.peek()? == Some('(') {
            cur.bump();
            open.push(raw.parent.len() as u32);
            raw.parent.push(parent);
            raw.label.push(None);
            raw.inner.push(true);
            continue;
        }
        let (line, column) = (cur.line, cur.column);
        let label = cur
            .label()?
            .ok_or_else(|| Error::syntax(line, column, "expected a leaf label or `(`"))?;
        raw.parent.push(parent);
        raw.label.push(Some(label));
        raw.inner.push(false);
        cur.branch_length()?;

        // Close as many subtrees as the input does.
        loop {
            match cur.peek()? {
                Some(',') if !open.is_empty() => {
                    cur.bump();
                    break;
                }
                Some(')') if !open.is_empty() => {
                    cur.bump();
                    let v = open.pop().unwrap();
                    raw.label[v as usize] = cur.label()?;
                    cur.branch_length()?;
                }
                Some(';') if open.is_empty() => {
                    cur.bump();
                    if cur.peek()?.is_some() {
                        return Err(cur.error("unexpected text after `;`"));
                    }
                    return Ok(raw);
                }
                None => {
                    return Err(cur.error(if open.is_empty() {
                        "missing `;`"
                    } else {
                        "unbalanced `(`"
                    }))
                }
                Some(c) => return Err(cur.error(format!("unexpected `{c}`"))),
            }
        }
    }
}

/// Parses one tree; its leaf labels become the leaf set.
pub fn parse_newick(text: &str) -> Result<RootedTree> {
    parse_newick_impl(text, None)
}

/// Parses one tree whose leaves must be exactly `taxa`.
pub fn parse_newick_on(text: &str, taxa: &Arc<Taxa>) -> Result<RootedTree> {
    parse_newick_impl(text, Some(taxa))
}

fn parse_newick_impl(text: &str, taxa: Option<&Arc<Taxa>>) -> Result<RootedTree> {
    let raw = parse_raw(text)?;
    let leaves = raw
        .label
        .iter()
        .zip(&raw.inner)
        .filter(|(_, &inner)| !inner)
        .map(|(l, _)| l.clone().unwrap());
    let found = Taxa::new(leaves).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::DuplicateLeaf(l),
        Error::TooFewTaxa(_) if raw.inner.iter().any(|&i| i) => Error::UnaryInnerVertex,
        other => other,
    })?;
    let taxa = match taxa {
        Some(t) if same_taxa(t, &found) => Arc::clone(t),
        Some(_) => return Err(Error::LeafSetMismatch),
        None => found,
    };
    let taxon: Vec<u32> = raw
        .label
        .iter()
        .zip(&raw.inner)
        .map(|(l, &inner)| {
            if inner {
                NONE
            } else {
                taxa.id(l.as_deref().unwrap()).unwrap()
            }
        })
        .collect();
    let names: Vec<Option<String>> = if raw.inner.iter().zip(&raw.label).any(|(&i, l)| i && l.is_some()) {
        raw.label
            .iter()
            .zip(&raw.inner)
            .map(|(l, &inner)| if inner { l.clone() } else { None })
            .collect()
    } else {
        Vec::new()
    };
    Ok(RootedTree::build(&taxa, &raw.parent, &taxon, names)?.0)
}

fn push_label(out: &mut String, label: &str) {
    let plain = !label.starts_with('\'')
        && label.chars().all(|c| !c.is_whitespace() && !"(),:;[]".contains(c));
    if plain {
        out.push_str(label);
    } else {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    }
}

/// Canonical Newick: children ordered by smallest leaf label, no inner names.
pub fn serialize_newick(t: &RootedTree) -> String {
    write_newick(t, false)
}

/// Canonical Newick that keeps inner-vertex names.
pub fn serialize_newick_named(t: &RootedTree) -> String {
    write_newick(t, true)
}

fn write_newick(t: &RootedTree, named: bool) -> String {
    let mut out = String::new();
    // (vertex, next child index)
    let mut stack: Vec<(u32, usize)> = vec![(t.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if let Some(x) = t.taxon(v) {
            push_label(&mut out, t.taxa().label(x).as_str());
            stack.pop();
            continue;
        }
        let kids = t.children(v);
        if i == 0 {
            out.push('(');
        } else if i < kids.len() {
            out.push(',');
        }
        if i < kids.len() {
            top.1 += 1;
            stack.push((kids[i], 0));
        } else {
            out.push(')');
            if named {
                if let Some(name) = t.name(v) {
                    push_label(&mut out, name);
                }
            }
            stack.pop();
        }
    }
    out.push(';');
    out
}
