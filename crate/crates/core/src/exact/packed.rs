/// Bit-packed GF(2) vector: 64 field elements per machine word.
///
/// Semantics agree with [`Scalar`](super::Scalar) over GF(2); addition is
/// XOR. The algebra kernels build their matrices and echelon rows on this
/// type, which is what makes span closure at level 7 (rows of 16384 bits)
/// workable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// In-place addition over GF(2).
    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the first set bit, if any.
    pub fn leading(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// First set bit at position >= from.
    pub fn leading_from(&self, from: usize) -> Option<usize> {
        let mut k = from / 64;
        if k >= self.words.len() {
            return None;
        }
        let mut w = self.words[k] & (!0u64 << (from % 64));
        loop {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
            k += 1;
            if k >= self.words.len() {
                return None;
            }
            w = self.words[k];
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{FieldSpec, Scalar};

    #[test]
    fn packed_matches_scalar_semantics() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = FieldSpec::Gf(2);
        let n = 130;
        for _ in 0..100 {
            let a: Vec<Scalar> = (0..n)
                .map(|_| Scalar::from_integer(rng.gen_range(0..2), f))
                .collect();
            let b: Vec<Scalar> = (0..n)
                .map(|_| Scalar::from_integer(rng.gen_range(0..2), f))
                .collect();
            let mut pa = Gf2Vec::zeros(n);
            let mut pb = Gf2Vec::zeros(n);
            for i in 0..n {
                pa.set(i, !a[i].is_zero());
                pb.set(i, !b[i].is_zero());
            }
            pa.xor_assign(&pb);
            for i in 0..n {
                assert_eq!(pa.get(i), !a[i].add(&b[i]).is_zero());
            }
        }
    }

    #[test]
    fn leading_and_iter() {
        let mut v = Gf2Vec::zeros(200);
        assert_eq!(v.leading(), None);
        v.set(67, true);
        v.set(130, true);
        assert_eq!(v.leading(), Some(67));
        assert_eq!(v.leading_from(68), Some(130));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![67, 130]);
    }
}
