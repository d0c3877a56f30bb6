use crate::error::{Error, Result};
use crate::selfsim::{Alphabet, GeneratorSymbol, GroupWord, Vertex};

/// One generator of a wreath recursion: a permutation of the alphabet at
/// the root and one section word per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub involutive: bool,
    /// Root permutation as a mapping array: `x^pi = perm[x]` (0-based).
    pub perm: Vec<u8>,
    /// `sections[x] = g@x`.
    pub sections: Vec<GroupWord>,
}

/// A self-similar group presented by its decomposition map on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathRecursion {
    name: String,
    alphabet: Alphabet,
    gens: Vec<Generator>,
    /// Inverse root permutations, precomputed.
    inv_perms: Vec<Vec<u8>>,
}

impl WreathRecursion {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, gens: Vec<Generator>) -> Result<Self> {
        let q = alphabet.size();
        if gens.is_empty() {
            return Err(Error::invalid("a recursion needs at least one generator"));
        }
        if q > 256 {
            return Err(Error::invalid("alphabet size capped at 256"));
        }
        for g in &gens {
            if g.perm.len() != q || g.sections.len() != q {
                return Err(Error::invalid(format!(
                    "generator {}: permutation and section count must equal alphabet size {q}",
                    g.name
                )));
            }
            let mut seen = vec![false; q];
            for &img in &g.perm {
                alphabet.check_letter(img)?;
                if std::mem::replace(&mut seen[img as usize], true) {
                    return Err(Error::invalid(format!(
                        "generator {}: root permutation is not a bijection",
                        g.name
                    )));
                }
            }
            for w in &g.sections {
                for s in w.symbols() {
                    if s.index as usize >= gens.len() {
                        return Err(Error::invalid(format!(
                            "generator {}: section references undeclared generator index {}",
                            g.name, s.index
                        )));
                    }
                }
            }
        }
        let inv_perms = gens
            .iter()
            .map(|g| {
                let mut inv = vec![0u8; q];
                for (x, &y) in g.perm.iter().enumerate() {
                    inv[y as usize] = x as u8;
                }
                inv
            })
            .collect();
        let rec = WreathRecursion {
            name: name.into(),
            alphabet,
            gens,
            inv_perms,
        };
        // section words must respect the involutive normalization
        for g in &rec.gens {
            for w in &g.sections {
                for s in w.symbols() {
                    if s.inverse && rec.gens[s.index as usize].involutive {
                        return Err(Error::invalid(format!(
                            "generator {}: section uses an inverse of involutive generator {}",
                            g.name, rec.gens[s.index as usize].name
                        )));
                    }
                }
            }
        }
        Ok(rec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn is_involutive(&self, index: u16) -> bool {
        self.gens[index as usize].involutive
    }

    // ---- word operations (free reduction lives here because it needs the
    // involutive flags) ----

    /// Pushes a symbol onto a word, cancelling against the last symbol when
    /// they form an `s s^-1` pair (or `s s` for involutive `s`).
    pub fn push_reduced(&self, word: &mut GroupWord, mut sym: GeneratorSymbol) {
        if self.is_involutive(sym.index) {
            sym.inverse = false;
        }
        if let Some(&last) = word.symbols.last() {
            if last.index == sym.index
                && (self.is_involutive(sym.index) || last.inverse != sym.inverse)
            {
                word.symbols.pop();
                return;
            }
        }
        word.symbols.push(sym);
    }

    pub fn word_from_symbols(&self, syms: impl IntoIterator<Item = GeneratorSymbol>) -> GroupWord {
        let mut w = GroupWord::identity();
        for s in syms {
            self.push_reduced(&mut w, s);
        }
        w
    }

    pub fn mul_words(&self, a: &GroupWord, b: &GroupWord) -> GroupWord {
        let mut out = a.clone();
        for &s in b.symbols() {
            self.push_reduced(&mut out, s);
        }
        out
    }

    pub fn inverse_word(&self, w: &GroupWord) -> GroupWord {
        let mut out = GroupWord::identity();
        for &s in w.symbols().iter().rev() {
            let inv = GeneratorSymbol {
                index: s.index,
                inverse: !s.inverse && !self.is_involutive(s.index),
            };
            self.push_reduced(&mut out, inv);
        }
        out
    }

    /// Parses a word: generator names in sequence, `'` for inverse, `*` or
    /// whitespace as optional separators, `1` for the identity. Multi-char
    /// names require separators.
    pub fn parse_word(&self, input: &str) -> Result<GroupWord> {
        let mut out = GroupWord::identity();
        let mut rest = input.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix(['*', ' ', '\t']) {
                rest = r;
                continue;
            }
            if let Some(r) = rest.strip_prefix('1') {
                rest = r;
                continue;
            }
            // longest generator-name match
            let mut hit: Option<(usize, usize)> = None; // (gen index, name len)
            for (i, g) in self.gens.iter().enumerate() {
                if rest.starts_with(&g.name) && hit.map_or(true, |(_, l)| g.name.len() > l) {
                    hit = Some((i, g.name.len()));
                }
            }
            let (gi, namelen) =
                hit.ok_or_else(|| Error::Parse(format!("unknown generator at {rest:?}")))?;
            rest = &rest[namelen..];
            let inverse = if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                true
            } else {
                false
            };
            self.push_reduced(
                &mut out,
                GeneratorSymbol {
                    index: gi as u16,
                    inverse,
                },
            );
        }
        Ok(out)
    }

    pub fn word_to_string(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let multi = self.gens.iter().any(|g| g.name.len() > 1);
        let mut parts = Vec::with_capacity(w.len());
        for s in w.symbols() {
            let mut t = self.gens[s.index as usize].name.clone();
            if s.inverse {
                t.push('\'');
            }
            parts.push(t);
        }
        parts.join(if multi { "*" } else { "" })
    }

    // ---- the bimodule calculus ----

    fn symbol_act(&self, sym: GeneratorSymbol, x: u8) -> u8 {
        if sym.inverse {
            self.inv_perms[sym.index as usize][x as usize]
        } else {
            self.gens[sym.index as usize].perm[x as usize]
        }
    }

    fn symbol_section(&self, sym: GeneratorSymbol, x: u8) -> GroupWord {
        if sym.inverse {
            // (g^-1)@x = (g@(x^(pi^-1)))^-1
            let y = self.inv_perms[sym.index as usize][x as usize];
            self.inverse_word(&self.gens[sym.index as usize].sections[y as usize])
        } else {
            self.gens[sym.index as usize].sections[x as usize].clone()
        }
    }

    /// Section at a single letter, built with the product rule
    /// `(gh)@x = (g@x)(h@(x^g))`.
    pub fn section_letter(&self, w: &GroupWord, x: u8) -> GroupWord {
        let mut out = GroupWord::identity();
        let mut cur = x;
        for &s in w.symbols() {
            for &t in self.symbol_section(s, cur).symbols() {
                self.push_reduced(&mut out, t);
            }
            cur = self.symbol_act(s, cur);
        }
        out
    }

    /// Image of a single letter under the word's root action.
    pub fn act_letter(&self, w: &GroupWord, x: u8) -> u8 {
        w.symbols().iter().fold(x, |c, &s| self.symbol_act(s, c))
    }

    /// The freely reduced section `w@v`, via `(g@v)@u = g@(vu)`.
    pub fn section(&self, w: &GroupWord, v: &Vertex) -> Result<GroupWord> {
        let mut cur = w.clone();
        for &x in v.letters() {
            self.alphabet.check_letter(x)?;
            cur = self.section_letter(&cur, x);
        }
        Ok(cur)
    }

    /// The image `v^w` under the right action.
    pub fn act(&self, w: &GroupWord, v: &Vertex) -> Result<Vertex> {
        let mut out = Vec::with_capacity(v.level());
        let mut cur = w.clone();
        for &x in v.letters() {
            self.alphabet.check_letter(x)?;
            out.push(self.act_letter(&cur, x));
            cur = self.section_letter(&cur, x);
        }
        Ok(Vertex::new(out))
    }

    /// Checks `g^2 = 1` at levels `1..=max_level` for every generator
    /// flagged involutive. Zoo entries hold this by construction; call it
    /// when loading user definitions.
    pub fn validate_involutive(&self, max_level: usize) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            if !g.involutive {
                continue;
            }
            let sym = GeneratorSymbol::new(i as u16);
            // square without reduction: reduction would cancel g g to 1
            let square = GroupWord {
                symbols: vec![sym, sym],
            };
            for n in 1..=max_level {
                let perm = crate::permgrp::level_permutation(self, &square, n)?;
                if !perm.is_identity() {
                    return Err(Error::invalid(format!(
                        "generator {} is flagged involutive but g^2 acts nontrivially at level {n}",
                        g.name
                    )));
                }
            }
        }
        Ok(())
    }
}
