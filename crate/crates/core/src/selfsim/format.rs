//! Group-definition file format.
//!
//! ```text
//! # comment
//! alphabet 2
//! gen a inv (1,2) 1 1
//! gen b inv ()    a c
//! gen c inv ()    a d
//! gen d inv ()    1 b
//! ```
//!
//! One `gen` line per generator: name, `inv` or `-`, root permutation in
//! cycle notation on 1-based letters (`()` is the identity), then exactly q
//! section words over the generator names with `'` for inverse and `1` for
//! the empty word. Involutive flags are validated on load (`g^2 = 1` at
//! levels up to 8).

use crate::error::{Error, Result};
use crate::selfsim::{Alphabet, Generator, GroupWord, WreathRecursion};

pub fn parse_group_file(name: &str, text: &str) -> Result<WreathRecursion> {
    let mut alphabet: Option<usize> = None;
    // first pass: collect generator names so section words can be parsed
    let mut raw: Vec<(String, bool, String, Vec<String>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("alphabet") => {
                let q: usize = toks
                    .next()
                    .ok_or_else(|| perr(lineno, "alphabet needs a size"))?
                    .parse()
                    .map_err(|_| perr(lineno, "bad alphabet size"))?;
                alphabet = Some(q);
            }
            Some("gen") => {
                let gname = toks
                    .next()
                    .ok_or_else(|| perr(lineno, "gen needs a name"))?
                    .to_string();
                let flag = toks
                    .next()
                    .ok_or_else(|| perr(lineno, "gen needs an involutive flag (inv or -)"))?;
                let involutive = match flag {
                    "inv" => true,
                    "-" => false,
                    other => return Err(perr(lineno, &format!("bad flag {other:?}"))),
                };
                let cycles = toks
                    .next()
                    .ok_or_else(|| perr(lineno, "gen needs a permutation"))?
                    .to_string();
                let sections: Vec<String> = toks.map(str::to_string).collect();
                raw.push((gname, involutive, cycles, sections));
            }
            Some(other) => return Err(perr(lineno, &format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    let q = alphabet.ok_or_else(|| Error::Parse("missing alphabet line".into()))?;
    let alphabet = Alphabet::new(q)?;
    let names: Vec<String> = raw.iter().map(|r| r.0.clone()).collect();
    let mut gens = Vec::new();
    for (gname, involutive, cycles, sections) in &raw {
        if sections.len() != q {
            return Err(Error::Parse(format!(
                "generator {gname}: expected {q} section words, got {}",
                sections.len()
            )));
        }
        let perm = parse_cycles(cycles, q)?;
        let sections = sections
            .iter()
            .map(|s| parse_section(s, &names, &raw))
            .collect::<Result<Vec<_>>>()?;
        gens.push(Generator {
            name: gname.clone(),
            involutive: *involutive,
            perm,
            sections,
        });
    }
    let rec = WreathRecursion::new(name, alphabet, gens)?;
    rec.validate_involutive(8.min(validation_level_cap(q)))?;
    Ok(rec)
}

/// Keep involutivity validation under the default degree cap.
fn validation_level_cap(q: usize) -> usize {
    let mut n = 0;
    let mut deg = 1usize;
    while deg.saturating_mul(q) <= 6561 {
        deg *= q;
        n += 1;
    }
    n
}

fn perr(lineno: usize, msg: &str) -> Error {
    Error::Parse(format!("line {}: {msg}", lineno + 1))
}

/// Cycle notation on 1-based letters: "(1,2)(3,4)" or "()".
fn parse_cycles(s: &str, q: usize) -> Result<Vec<u8>> {
    let mut perm: Vec<u8> = (0..q as u8).collect();
    let s = s.trim();
    if s == "()" {
        return Ok(perm);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
    let mut used = vec![false; q];
    for cyc in inner.split(")(") {
        let pts: Vec<usize> = cyc
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad cycle {cyc:?}")))?;
        if pts.iter().any(|&p| p == 0 || p > q) {
            return Err(Error::Parse(format!("cycle {cyc:?} out of range 1..{q}")));
        }
        for &p in &pts {
            if std::mem::replace(&mut used[p - 1], true) {
                return Err(Error::Parse(format!("letter {p} repeated in cycles {s:?}")));
            }
        }
        for i in 0..pts.len() {
            let from = pts[i] - 1;
            let to = pts[(i + 1) % pts.len()] - 1;
            perm[from] = to as u8;
        }
    }
    Ok(perm)
}

fn parse_section(
    s: &str,
    names: &[String],
    raw: &[(String, bool, String, Vec<String>)],
) -> Result<GroupWord> {
    let mut symbols = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('1') {
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('.') {
            rest = r;
            continue;
        }
        let mut hit: Option<(usize, usize)> = None;
        for (i, n) in names.iter().enumerate() {
            if rest.starts_with(n.as_str()) && hit.map_or(true, |(_, l)| n.len() > l) {
                hit = Some((i, n.len()));
            }
        }
        let (gi, l) = hit.ok_or_else(|| Error::Parse(format!("unknown generator in {s:?}")))?;
        rest = &rest[l..];
        let mut inverse = false;
        if let Some(r) = rest.strip_prefix('\'') {
            inverse = true;
            rest = r;
        }
        if raw[gi].1 {
            inverse = false;
        }
        symbols.push(crate::selfsim::GeneratorSymbol {
            index: gi as u16,
            inverse,
        });
    }
    Ok(GroupWord { symbols })
}

/// Serializes a recursion in the documented format (byte-stable; this is
/// what the golden zoo files contain).
pub fn serialize_group_file(rec: &WreathRecursion) -> String {
    let mut out = String::new();
    out.push_str(&format!("alphabet {}\n", rec.alphabet().size()));
    for g in rec.generators() {
        let flag = if g.involutive { "inv" } else { "-" };
        let mut cycles = cycles_of(&g.perm);
        if cycles.is_empty() {
            cycles = "()".to_string();
        }
        let sections: Vec<String> = g
            .sections
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.symbols()
                        .iter()
                        .map(|s| {
                            let mut t = rec.generators()[s.index as usize].name.clone();
                            if s.inverse {
                                t.push('\'');
                            }
                            t
                        })
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect();
        out.push_str(&format!(
            "gen {} {} {} {}\n",
            g.name,
            flag,
            cycles,
            sections.join(" ")
        ));
    }
    out
}

fn cycles_of(perm: &[u8]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = perm[start] as usize;
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = perm[cur] as usize;
        }
        out.push('(');
        out.push_str(
            &cyc.iter()
                .map(|&x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push(')');
    }
    out
}
