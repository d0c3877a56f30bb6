use crate::error::Result;
use crate::selfsim::{GroupWord, WreathRecursion};

/// The permutation a word induces on `X^n`, as a mapping array over
/// lexicographic vertex indices: `index(v^w) = mapping[index(v)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelPermutation {
    level: usize,
    mapping: Vec<u32>,
}

impl LevelPermutation {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn into_mapping(self) -> Vec<u32> {
        self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycle_lengths(&self) -> Vec<u64> {
        let mut seen = vec![false; self.mapping.len()];
        let mut out = Vec::new();
        for start in 0..self.mapping.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.mapping[cur] as usize;
            }
            out.push(len);
        }
        out
    }
}

/// Computes `pi^n(w)` by walking the tree once, carrying the section word
/// along each branch; consistent with `act` on every vertex.
pub fn level_permutation(
    rec: &WreathRecursion,
    w: &GroupWord,
    n: usize,
) -> Result<LevelPermutation> {
    let q = rec.alphabet().size();
    let degree = q.pow(n as u32);
    let mut mapping = vec![0u32; degree];
    // stack of (prefix index, depth, section word at the prefix, image prefix)
    let mut stack: Vec<(usize, usize, GroupWord, usize)> = vec![(0, 0, w.clone(), 0)];
    while let Some((idx, depth, word, img)) = stack.pop() {
        if depth == n {
            mapping[idx] = img as u32;
            continue;
        }
        for x in 0..q as u8 {
            let y = rec.act_letter(&word, x) as usize;
            stack.push((
                idx * q + x as usize,
                depth + 1,
                rec.section_letter(&word, x),
                img * q + y,
            ));
        }
    }
    Ok(LevelPermutation {
        level: n,
        mapping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::{builtin_group, Vertex};

    #[test]
    fn identity_word_gives_identity() {
        let rec = builtin_group("grigorchuk").unwrap();
        let p = level_permutation(&rec, &GroupWord::identity(), 4).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn grigorchuk_a_at_level_2() {
        // a swaps the top letter: (11 <-> 21), (12 <-> 22)
        let rec = builtin_group("grigorchuk").unwrap();
        let a = rec.parse_word("a").unwrap();
        let p = level_permutation(&rec, &a, 2).unwrap();
        assert_eq!(p.mapping(), &[2, 3, 0, 1]);
        let mut lens = p.cycle_lengths();
        lens.sort();
        assert_eq!(lens, vec![2, 2]);
    }

    #[test]
    fn odometer_is_a_full_cycle() {
        let rec = builtin_group("odometer").unwrap();
        let tau = rec.parse_word("tau").unwrap();
        for n in 1..=6 {
            let p = level_permutation(&rec, &tau, n).unwrap();
            assert_eq!(p.cycle_lengths(), vec![1u64 << n]);
        }
    }

    #[test]
    fn consistent_with_act() {
        let rec = builtin_group("gupta_sidki").unwrap();
        let w = rec.parse_word("x*gamma*x'*gamma").unwrap();
        let n = 3;
        let p = level_permutation(&rec, &w, n).unwrap();
        let q = rec.alphabet().size();
        for idx in 0..p.degree() {
            let v = Vertex::from_index(idx, q, n);
            let img = rec.act(&w, &v).unwrap();
            assert_eq!(p.mapping()[idx] as usize, img.index(q));
        }
    }
}
