use num_traits::One;

use crate::exact::BigCount;

type Perm = Vec<u32>;

fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// `x^(a b) = b[a[x]]` (right action); compose(a, b) applies a first.
fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut out = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

struct StabLevel {
    base_point: u32,
    /// Strong generators fixing the base points of all earlier levels.
    gens: Vec<Perm>,
    /// Orbit of the base point under `gens`, in BFS discovery order.
    orbit: Vec<u32>,
    /// Schreier vector: `tree[p] = (gen index, parent)` with
    /// `parent^gen = p`; the base point maps to itself.
    tree: Vec<Option<(u32, u32)>>,
}

impl StabLevel {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut tree = vec![None; degree];
        tree[base_point as usize] = Some((u32::MAX, base_point));
        StabLevel {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            tree,
        }
    }

    fn rebuild_orbit(&mut self) {
        for t in self.tree.iter_mut() {
            *t = None;
        }
        self.tree[self.base_point as usize] = Some((u32::MAX, self.base_point));
        self.orbit.clear();
        self.orbit.push(self.base_point);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let q = g[p as usize];
                if self.tree[q as usize].is_none() {
                    self.tree[q as usize] = Some((gi as u32, p));
                    self.orbit.push(q);
                }
            }
        }
    }

    /// Coset representative `u` with `base^u = p`, or None if p is outside
    /// the orbit.
    fn coset_rep(&self, p: u32, degree: usize) -> Option<Perm> {
        self.tree[p as usize]?;
        let mut path = Vec::new();
        let mut cur = p;
        while cur != self.base_point {
            let (gi, parent) = self.tree[cur as usize].unwrap();
            path.push(gi);
            cur = parent;
        }
        let mut u: Perm = (0..degree as u32).collect();
        for &gi in path.iter().rev() {
            u = compose(&u, &self.gens[gi as usize]);
        }
        Some(u)
    }
}

/// A permutation group given by generators, carrying a base and strong
/// generating set.
///
/// Deterministic Schreier-Sims: BFS orbits, base points chosen greedily as
/// the smallest moved point, external generators installed at every level
/// they fix into, Schreier residues only below the level that produced
/// them (they are products of that level's generators already).
pub struct PermGroupHandle {
    degree: usize,
    levels: Vec<StabLevel>,
}

impl PermGroupHandle {
    pub fn new(gens: Vec<Vec<u32>>) -> Self {
        let degree = gens.first().map_or(1, Vec::len);
        let mut handle = PermGroupHandle {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.len(), degree, "mixed degrees");
            let (res, stall) = handle.sift(0, g);
            if !is_identity(&res) {
                handle.add_strong(res, 0, stall);
            }
        }
        handle
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Product of the stabilizer-chain orbit sizes.
    pub fn order(&self) -> BigCount {
        let mut order = BigCount::one();
        for level in &self.levels {
            order *= BigCount::from(level.orbit.len());
        }
        order
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, perm: &[u32]) -> bool {
        let (res, _) = self.sift(0, perm.to_vec());
        is_identity(&res)
    }

    /// Sifts from `start`, returning the residue and the level at which it
    /// stalled (levels.len() if it passed every level).
    fn sift(&self, start: usize, mut g: Perm) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            if is_identity(&g) {
                return (g, l);
            }
            let p = g[level.base_point as usize];
            match level.coset_rep(p, self.degree) {
                None => return (g, l),
                Some(u) => {
                    g = compose(&g, &invert(&u));
                }
            }
        }
        (g, self.levels.len())
    }

    /// Installs a strong generator that fixes the bases of levels `< stall`
    /// into levels `lo..=stall`, then re-verifies those levels deepest
    /// first.
    fn add_strong(&mut self, h: Perm, lo: usize, stall: usize) {
        debug_assert!(stall <= self.levels.len() && lo <= stall);
        let top = if stall == self.levels.len() {
            let base_point = (0..self.degree as u32)
                .find(|&x| h[x as usize] != x)
                .expect("non-identity strong generator");
            self.levels.push(StabLevel::new(base_point, self.degree));
            stall
        } else {
            stall
        };
        for t in lo..=top {
            self.levels[t].gens.push(h.clone());
            self.levels[t].rebuild_orbit();
        }
        for t in (lo..=top).rev() {
            self.verify_level(t);
        }
    }

    /// Ensures every Schreier generator of `level` sifts to the identity
    /// through the chain below. Installs only happen strictly below
    /// `level`, so this level's orbit and generators are fixed during the
    /// scan.
    fn verify_level(&mut self, level: usize) {
        let mut k = 0;
        while k < self.levels[level].orbit.len() {
            let p = self.levels[level].orbit[k];
            let up = self.levels[level]
                .coset_rep(p, self.degree)
                .expect("orbit point");
            let mut gi = 0;
            while gi < self.levels[level].gens.len() {
                let s = self.levels[level].gens[gi].clone();
                let target = s[p as usize];
                let ut = self.levels[level]
                    .coset_rep(target, self.degree)
                    .expect("orbit closed under gens");
                let schreier = compose(&compose(&up, &s), &invert(&ut));
                let (res, stall) = self.sift(level + 1, schreier);
                if !is_identity(&res) {
                    self.add_strong(res, level + 1, stall);
                }
                gi += 1;
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn handle_of(gens: &[&[u32]]) -> PermGroupHandle {
        PermGroupHandle::new(gens.iter().map(|g| g.to_vec()).collect())
    }

    fn exhaustive(gens: &[&[u32]]) -> usize {
        let id: Perm = (0..gens[0].len() as u32).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut work = vec![id];
        while let Some(e) = work.pop() {
            for g in gens {
                let c = compose(&e, &g.to_vec());
                if seen.insert(c.clone()) {
                    work.push(c);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn symmetric_and_cyclic_groups() {
        let h = handle_of(&[&[1, 0, 2, 3], &[1, 2, 3, 0]]);
        assert_eq!(h.order(), BigCount::from(24u32));
        let h = handle_of(&[&[1, 2, 3, 4, 5, 0]]);
        assert_eq!(h.order(), BigCount::from(6u32));
        let h = handle_of(&[&[0, 1, 2]]);
        assert_eq!(h.order(), BigCount::from(1u32));
    }

    #[test]
    fn membership() {
        let h = handle_of(&[&[1, 0, 2, 3], &[1, 2, 3, 0]]);
        assert!(h.contains(&[3, 2, 1, 0]));
        // A4 from two 3-cycles: odd permutations excluded
        let h = handle_of(&[&[1, 2, 0, 3], &[0, 2, 3, 1]]);
        assert_eq!(h.order(), BigCount::from(12u32));
        assert!(!h.contains(&[1, 0, 2, 3]));
        assert!(h.contains(&[1, 0, 3, 2]));
    }

    #[test]
    fn random_small_groups_match_exhaustive_closure() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for degree in [4usize, 5, 6, 7] {
            for _ in 0..20 {
                let mut g1: Perm = (0..degree as u32).collect();
                let mut g2: Perm = (0..degree as u32).collect();
                g1.shuffle(&mut rng);
                g2.shuffle(&mut rng);
                let gens: Vec<&[u32]> = vec![&g1, &g2];
                assert_eq!(
                    handle_of(&gens).order(),
                    BigCount::from(exhaustive(&gens)),
                    "gens {g1:?} {g2:?}"
                );
            }
        }
    }

    #[test]
    fn deterministic_base() {
        let h = handle_of(&[&[1, 2, 3, 0]]);
        assert_eq!(h.base(), vec![0]);
    }
}
