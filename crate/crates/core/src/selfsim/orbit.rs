use crate::error::{Error, Result};
use crate::selfsim::{GeneratorSymbol, GroupWord, Vertex, WreathRecursion};

/// Orbit growth of a basepoint at level m: `f(n)` counts the distinct
/// images of the basepoint under products of at most `n` generators.
///
/// The breadth-first search multiplies by the generators only (no inverse
/// symbols); with the zoo's one-generator odometer this gives exactly
/// `min(n+1, 2^m)`.
pub fn orbit_growth(
    rec: &WreathRecursion,
    basepoint: &Vertex,
    radius: usize,
) -> Result<Vec<u64>> {
    let m = basepoint.level();
    if m == 0 {
        return Err(Error::invalid("basepoint must be at level >= 1"));
    }
    let q = rec.alphabet().size();
    let degree = q
        .checked_pow(m as u32)
        .filter(|&d| d <= 1 << 24)
        .ok_or_else(|| Error::resource(format!("degree q^{m} too large for orbit BFS")))?;
    for &x in basepoint.letters() {
        rec.alphabet().check_letter(x)?;
    }

    let perms: Vec<Vec<u32>> = (0..rec.generators().len())
        .map(|i| {
            let w = GroupWord {
                symbols: vec![GeneratorSymbol::new(i as u16)],
            };
            crate::permgrp::level_permutation(rec, &w, m).map(|p| p.into_mapping())
        })
        .collect::<Result<_>>()?;

    let mut seen = vec![false; degree];
    let start = basepoint.index(q);
    seen[start] = true;
    let mut frontier = vec![start as u32];
    let mut counts = Vec::with_capacity(radius + 1);
    counts.push(1u64);
    let mut total = 1u64;
    for _ in 0..radius {
        let mut next = Vec::new();
        for &x in &frontier {
            for p in &perms {
                let y = p[x as usize];
                if !std::mem::replace(&mut seen[y as usize], true) {
                    total += 1;
                    next.push(y);
                }
            }
        }
        counts.push(total);
        frontier = next;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::builtin_group;

    #[test]
    fn radius_zero_is_singleton() {
        let rec = builtin_group("grigorchuk").unwrap();
        let counts = orbit_growth(&rec, &Vertex::new(vec![0, 0]), 0).unwrap();
        assert_eq!(counts, vec![1]);
    }

    #[test]
    fn odometer_counts() {
        let rec = builtin_group("odometer").unwrap();
        for m in [3usize, 5, 8] {
            let counts = orbit_growth(&rec, &Vertex::new(vec![0; m]), 12).unwrap();
            let expect: Vec<u64> = (0..=12).map(|n| (n + 1).min(1 << m) as u64).collect();
            assert_eq!(counts, expect, "m = {m}");
        }
    }

    #[test]
    fn grigorchuk_orbit_is_linear() {
        // frozen oracle: from 1^8 the orbit grows by exactly 2 per step
        let rec = builtin_group("grigorchuk").unwrap();
        let counts = orbit_growth(&rec, &Vertex::new(vec![0; 8]), 40).unwrap();
        let expect: Vec<u64> = (0..=40).map(|n| 2 * n + 1).collect();
        assert_eq!(counts, expect);
        assert!(counts[40] <= 1 + 4 * 40);
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn root_basepoint_rejected() {
        let rec = builtin_group("odometer").unwrap();
        assert!(orbit_growth(&rec, &Vertex::root(), 3).is_err());
    }
}
