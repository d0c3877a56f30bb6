use std::fmt;

use crate::error::{Error, Result};

/// Alphabet `X = {1, .., q}` of the regular rooted tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::invalid(format!("alphabet size {size} < 2")));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn check_letter(&self, letter: u8) -> Result<()> {
        if (letter as usize) < self.size {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "letter {} out of range 1..{}",
                letter as usize + 1,
                self.size
            )))
        }
    }
}

/// Vertex of the tree: a finite word over the alphabet (empty = root).
/// Letters are stored 0-based; all textual formats are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vertex {
    letters: Vec<u8>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex::default()
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Vertex { letters }
    }

    /// Parses 1-based letters, either comma separated ("1,2,1") or as a
    /// digit string ("121"). Empty input is the root.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut letters = Vec::new();
        if s.is_empty() {
            return Ok(Vertex::root());
        }
        if s.contains(',') {
            for part in s.split(',') {
                let v: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex component {part:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("vertex letters are 1-based".into()));
                }
                letters.push((v - 1) as u8);
            }
        } else {
            for c in s.chars() {
                let v = c
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad vertex letter {c:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("vertex letters are 1-based".into()));
                }
                letters.push((v - 1) as u8);
            }
        }
        Ok(Vertex { letters })
    }

    pub fn level(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Lexicographic index of this vertex within its level (first letter
    /// most significant, letter 1 smallest).
    pub fn index(&self, q: usize) -> usize {
        self.letters.iter().fold(0, |acc, &x| acc * q + x as usize)
    }

    pub fn from_index(mut idx: usize, q: usize, level: usize) -> Self {
        let mut letters = vec![0u8; level];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % q) as u8;
            idx /= q;
        }
        Vertex { letters }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "\u{03b5}");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&x| (x as usize + 1).to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A signed reference into a recursion's generator table.
///
/// Involutive generators are normalized to `inverse = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub index: u16,
    pub inverse: bool,
}

impl GeneratorSymbol {
    pub fn new(index: u16) -> Self {
        GeneratorSymbol {
            index,
            inverse: false,
        }
    }
}

/// A freely reduced word in the generators: no adjacent `s s^-1` pair and
/// no adjacent `s s` pair for involutive `s`. The empty word is the
/// identity. Reduction is maintained by the recursion's word operations,
/// which know the involutive flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord {
    pub(crate) symbols: Vec<GeneratorSymbol>,
}

impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.index, self.inverse).cmp(&(other.index, other.inverse))
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}
