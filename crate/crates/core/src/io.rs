//! Text formats.
//!
//! ```text
//! family 3        poset 3
//! set             cover 0 1
//! set 0 2         cover 1 2
//! ```
//!
//! `set` lists 0-based elements (none for `∅`); `cover i j` means `j`
//! covers `i`. Blank lines and `#` comments are ignored.

use crate::bits::{self, elems, Set};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::poset::Poset;

/// A parsed family plus non-fatal notes (duplicate sets, dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFamily {
    pub family: Family,
    pub warnings: Vec<String>,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Non-blank, comment-stripped lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number(line: usize, w: &str, bound: usize) -> Result<usize> {
    let v: usize = w.parse().or_else(|_| err(line, format!("expected a number, got `{w}`")))?;
    if v >= bound {
        return err(line, format!("element {v} out of range for size {bound}"));
    }
    Ok(v)
}

fn size_line(line: usize, words: &[&str], word: &str) -> Result<usize> {
    match words {
        [w, n] if *w == word => {
            let n: usize = n.parse().or_else(|_| err(line, format!("bad size `{n}`")))?;
            if n > bits::MAX_GROUND {
                return err(line, format!("size {n} exceeds 64"));
            }
            Ok(n)
        }
        _ => err(line, format!("expected `{word} <n>`")),
    }
}

pub fn parse_family(text: &str) -> Result<ParsedFamily> {
    let mut it = lines(text);
    let Some((l0, first)) = it.next() else { return err(1, "empty input") };
    let ground = size_line(l0, &first, "family")?;
    let mut sets: Vec<Set> = Vec::new();
    let mut warnings = Vec::new();
    for (line, words) in it {
        if words[0] != "set" {
            return err(line, format!("expected `set`, got `{}`", words[0]));
        }
        let mut s: Set = 0;
        for w in &words[1..] {
            s |= bits::bit(number(line, w, ground)?);
        }
        if sets.contains(&s) {
            warnings.push(format!("line {line}: duplicate set {} dropped", bits::show(s)));
        } else {
            sets.push(s);
        }
    }
    Ok(ParsedFamily { family: Family::new(ground, sets)?, warnings })
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let Some((l0, first)) = it.next() else { return err(1, "empty input") };
    let n = size_line(l0, &first, "poset")?;
    let mut covers = Vec::new();
    for (line, words) in it {
        match words.as_slice() {
            ["cover", i, j] => covers.push((number(line, i, n)?, number(line, j, n)?)),
            _ => return err(line, "expected `cover <i> <j>`"),
        }
    }
    Poset::new(n, &covers)
}

/// Members in the family's (numeric) order.
pub fn write_family(f: &Family) -> String {
    let mut out = format!("family {}\n", f.ground());
    for &m in f.members() {
        let e: Vec<String> = elems(m).map(|i| i.to_string()).collect();
        out.push_str(&if e.is_empty() { "set\n".to_string() } else { format!("set {}\n", e.join(" ")) });
    }
    out
}

/// Cover pairs, sorted.
pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.len());
    for (i, j) in p.covers() {
        out.push_str(&format!("cover {i} {j}\n"));
    }
    out
}
