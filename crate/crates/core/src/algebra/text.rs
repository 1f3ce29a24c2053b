//! Line-oriented text format.
//!
//! A document is a sequence of blocks. `semiring` blocks carry `order`, `zero`,
//! `one`, `add` and `mul`; `semimodule` blocks refer to the closest preceding
//! `semiring` and carry `order`, `zero`, `add` and `act` (one row per scalar).
//! `map` and `subset` blocks hold a single line of indices. `lattice` blocks
//! carry `order`, `bottom`, `top`, `join` and an optional `meet`. Lines
//! starting with `#` are comments.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::semimodule::Semimodule;
use super::semiring::Semiring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLattice {
    pub order: usize,
    pub bottom: usize,
    pub top: usize,
    pub join: Vec<usize>,
    pub meet: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub enum Block {
    Semiring(Arc<Semiring>),
    Semimodule(Semimodule),
    Map(Vec<usize>),
    Subset(Vec<usize>),
    Lattice(RawLattice),
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Self {
        let lines = src
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let t = l.trim();
                (!t.is_empty() && !t.starts_with('#')).then(|| (i + 1, t.split_whitespace().collect()))
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }

    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        let l = self.lines.get(self.pos).cloned().ok_or_else(|| Error::parse(self.last_line(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(l)
    }

    fn keyword(&mut self, word: &str) -> Result<usize> {
        let (line, toks) = self.next()?;
        if toks.len() != 1 || toks[0] != word {
            return Err(Error::parse(line, format!("expected `{word}`, found `{}`", toks.join(" "))));
        }
        Ok(line)
    }

    fn field(&mut self, name: &str) -> Result<usize> {
        let (line, toks) = self.next()?;
        if toks.len() != 2 || toks[0] != name {
            return Err(Error::parse(line, format!("expected `{name} <index>`")));
        }
        parse_index(line, toks[1])
    }

    fn index_row(&mut self) -> Result<(usize, Vec<usize>)> {
        let (line, toks) = self.next()?;
        let row = toks.iter().map(|t| parse_index(line, t)).collect::<Result<Vec<_>>>()?;
        Ok((line, row))
    }

    fn table(&mut self, name: &str, rows: usize, cols: usize) -> Result<Vec<usize>> {
        self.keyword(name)?;
        let mut out = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line, row) = self.index_row()?;
            if row.len() != cols {
                return Err(Error::parse(line, format!("`{name}` row needs {cols} entries, found {}", row.len())));
            }
            out.extend(row);
        }
        Ok(out)
    }
}

fn parse_index(line: usize, tok: &str) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("`{tok}` is not a decimal index")));
    }
    tok.parse().map_err(|_| Error::parse(line, format!("`{tok}` is out of range")))
}

fn located<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ (Error::Axioms(_) | Error::Parse { .. }) => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn parse(src: &str) -> Result<Vec<Block>> {
    let mut lines = Lines::new(src);
    let mut blocks = Vec::new();
    let mut current: Option<Arc<Semiring>> = None;
    while let Some((line, toks)) = lines.peek().cloned() {
        if toks.len() != 1 {
            return Err(Error::parse(line, format!("expected a block keyword, found `{}`", toks.join(" "))));
        }
        lines.pos += 1;
        match toks[0] {
            "semiring" => {
                let order = lines.field("order")?;
                let zero = lines.field("zero")?;
                let one = lines.field("one")?;
                let add = lines.table("add", order, order)?;
                let mul = lines.table("mul", order, order)?;
                let s = Arc::new(located(line, Semiring::new(order, add, mul, zero, one))?);
                current = Some(s.clone());
                blocks.push(Block::Semiring(s));
            }
            "semimodule" => {
                let base = current.clone().ok_or_else(|| Error::parse(line, "semimodule before any semiring"))?;
                let order = lines.field("order")?;
                let zero = lines.field("zero")?;
                let add = lines.table("add", order, order)?;
                let act = lines.table("act", base.order(), order)?;
                blocks.push(Block::Semimodule(located(line, Semimodule::new(base, order, add, act, zero))?));
            }
            "map" => blocks.push(Block::Map(lines.index_row()?.1)),
            "subset" => {
                let row = match lines.peek() {
                    Some((_, t)) if t.iter().all(|x| x.bytes().all(|b| b.is_ascii_digit())) => lines.index_row()?.1,
                    _ => Vec::new(),
                };
                blocks.push(Block::Subset(row));
            }
            "lattice" => {
                let order = lines.field("order")?;
                let bottom = lines.field("bottom")?;
                let top = lines.field("top")?;
                let join = lines.table("join", order, order)?;
                let meet = match lines.peek() {
                    Some((_, t)) if t.len() == 1 && t[0] == "meet" => Some(lines.table("meet", order, order)?),
                    _ => None,
                };
                blocks.push(Block::Lattice(RawLattice { order, bottom, top, join, meet }));
            }
            other => return Err(Error::parse(line, format!("unknown block `{other}`"))),
        }
    }
    Ok(blocks)
}

fn write_rows(out: &mut String, name: &str, table: &[usize], cols: usize) {
    out.push_str(name);
    out.push('\n');
    for row in table.chunks(cols) {
        out.push_str(&join(row));
        out.push('\n');
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_semiring(s: &Semiring) -> String {
    let n = s.order();
    let mut out = String::new();
    let _ = writeln!(out, "semiring\norder {n}\nzero {}\none {}", s.zero(), s.one());
    write_rows(&mut out, "add", s.add_table(), n);
    write_rows(&mut out, "mul", s.mul_table(), n);
    out
}

/// Writes only the semimodule block; the caller emits its semiring first.
pub fn write_semimodule(m: &Semimodule) -> String {
    let n = m.order();
    let mut out = String::new();
    let _ = writeln!(out, "semimodule\norder {n}\nzero {}", m.zero());
    write_rows(&mut out, "add", m.add_table(), n);
    write_rows(&mut out, "act", m.act_table(), n);
    out
}

pub fn write_map(images: &[usize]) -> String {
    format!("map\n{}\n", join(images))
}

pub fn write_subset(members: &[usize]) -> String {
    if members.is_empty() {
        "subset\n".into()
    } else {
        format!("subset\n{}\n", join(members))
    }
}

pub fn write_lattice(l: &RawLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lattice\norder {}\nbottom {}\ntop {}", l.order, l.bottom, l.top);
    write_rows(&mut out, "join", &l.join, l.order);
    if let Some(meet) = &l.meet {
        write_rows(&mut out, "meet", meet, l.order);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const B31: &str = "\
semiring
order 3
zero 0
one 1
add
0 1 2
1 2 1
2 1 2
mul
0 0 0
0 1 2
0 2 2
";

    #[test]
    fn round_trip() {
        let blocks = parse(B31).unwrap();
        let Block::Semiring(s) = &blocks[0] else { panic!() };
        assert_eq!(write_semiring(s), B31);
        let m = Semimodule::regular(s.clone());
        let doc = format!("{B31}# the regular module\n{}{}", write_semimodule(&m), write_map(&[0, 2, 2]));
        let blocks = parse(&doc).unwrap();
        assert_eq!(blocks.len(), 3);
        let Block::Semimodule(back) = &blocks[1] else { panic!() };
        assert_eq!(back, &m);
        assert!(matches!(&blocks[2], Block::Map(v) if v == &[0, 2, 2]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = B31.replace("2 1 2\nmul", "2 x 2\nmul");
        match parse(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 8),
            other => panic!("{other:?}"),
        }
        let short = B31.replace("1 2 1\n", "1 2\n");
        assert!(matches!(parse(&short), Err(Error::Parse { line: 7, .. })));
        assert!(matches!(parse("semimodule\norder 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn axiom_failures_pass_through() {
        let bad = B31.replace("one 1", "one 0");
        assert!(matches!(parse(&bad), Err(Error::Axioms(_))));
    }
}
