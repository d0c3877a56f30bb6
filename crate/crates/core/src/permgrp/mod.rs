//! Level-n permutation images of a self-similar group: exact orders via a
//! base and strong generating set, element orders, level-transitivity, and
//! group Hausdorff-dimension sequences.

mod bsgs;
mod perm;

pub use bsgs::PermGroupHandle;
pub use perm::{level_permutation, LevelPermutation};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::BigCount;
use crate::selfsim::{GeneratorSymbol, GroupWord, WreathRecursion};

/// Degree guard for level computations; `3^8 = 6561` by default.
#[derive(Debug, Clone, Copy)]
pub struct LevelCaps {
    pub max_degree: usize,
}

impl Default for LevelCaps {
    fn default() -> Self {
        LevelCaps { max_degree: 6561 }
    }
}

pub(crate) fn checked_degree(rec: &WreathRecursion, n: usize, caps: &LevelCaps) -> Result<usize> {
    let q = rec.alphabet().size();
    let degree = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::resource(format!("degree {q}^{n} overflows")))?;
    if degree > caps.max_degree {
        return Err(Error::resource(format!(
            "degree {q}^{n} = {degree} exceeds the cap {} (estimated {} bytes per permutation)",
            caps.max_degree,
            degree * 4
        )));
    }
    Ok(degree)
}

fn generator_perms(
    rec: &WreathRecursion,
    n: usize,
    caps: &LevelCaps,
) -> Result<Vec<LevelPermutation>> {
    checked_degree(rec, n, caps)?;
    (0..rec.generators().len())
        .map(|i| {
            let w = GroupWord {
                symbols: vec![GeneratorSymbol::new(i as u16)],
            };
            level_permutation(rec, &w, n)
        })
        .collect()
}

/// Builds the BSGS handle for `pi^n(G)`.
pub fn level_group(rec: &WreathRecursion, n: usize, caps: &LevelCaps) -> Result<PermGroupHandle> {
    let perms = generator_perms(rec, n, caps)?;
    Ok(PermGroupHandle::new(
        perms.into_iter().map(|p| p.into_mapping()).collect(),
    ))
}

/// Exact order of `pi^n(G)`.
pub fn group_order_at_level(
    rec: &WreathRecursion,
    n: usize,
    caps: &LevelCaps,
) -> Result<BigCount> {
    if n == 0 {
        return Ok(BigCount::from(1u32));
    }
    Ok(level_group(rec, n, caps)?.order())
}

/// Order of `pi^n(w)`: the lcm of its cycle lengths.
pub fn element_order_at_level(
    rec: &WreathRecursion,
    w: &GroupWord,
    n: usize,
    caps: &LevelCaps,
) -> Result<BigCount> {
    checked_degree(rec, n, caps)?;
    let perm = level_permutation(rec, w, n)?;
    let mut order = BigCount::one();
    for len in perm.cycle_lengths() {
        order = num_integer::lcm(order, BigCount::from(len));
    }
    Ok(order)
}

/// True iff the orbit of `1^n` under `pi^n(G)` is all of `X^n`.
pub fn is_level_transitive(rec: &WreathRecursion, n: usize, caps: &LevelCaps) -> Result<bool> {
    let degree = checked_degree(rec, n, caps)?;
    if n == 0 {
        return Ok(true);
    }
    let perms = generator_perms(rec, n, caps)?;
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut frontier = vec![0u32];
    let mut count = 1usize;
    while let Some(x) = frontier.pop() {
        for p in &perms {
            let y = p.mapping()[x as usize];
            if !std::mem::replace(&mut seen[y as usize], true) {
                count += 1;
                frontier.push(y);
            }
        }
    }
    Ok(count == degree)
}

/// The relative Hausdorff-dimension sequence in `W_p`:
/// `log_p(#pi^n(G)) * (p-1) / (p^n - 1)` for `n = 1..=n_max`.
///
/// Requires `q = p` prime and every level quotient of p-power order
/// (orbit sizes in the stabilizer chain are checked to be p-powers).
pub fn group_hausdorff_sequence(
    rec: &WreathRecursion,
    p: u64,
    n_max: usize,
    caps: &LevelCaps,
) -> Result<Vec<BigRational>> {
    if !crate::exact::is_prime(p) {
        return Err(Error::invalid(format!("p = {p} is not prime")));
    }
    if rec.alphabet().size() as u64 != p {
        return Err(Error::invalid(format!(
            "alphabet size {} does not match p = {p}",
            rec.alphabet().size()
        )));
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let handle = level_group(rec, n, caps)?;
        let mut log_p: u64 = 0;
        for orbit in handle.orbit_sizes() {
            let mut m = orbit as u64;
            while m % p == 0 {
                m /= p;
                log_p += 1;
            }
            if m != 1 {
                return Err(Error::invalid(format!(
                    "#pi^{n}(G) is not a power of {p}: the group does not live in W_{p}"
                )));
            }
        }
        let p_big = num_bigint::BigInt::from(p);
        let denom = num_traits::pow::pow(p_big, n) - num_bigint::BigInt::one();
        let numer = num_bigint::BigInt::from(log_p) * num_bigint::BigInt::from(p - 1);
        out.push(BigRational::new(numer, denom));
    }
    Ok(out)
}

/// Exhaustive closure order, for cross-checking BSGS on small groups.
/// Fails with a resource error if the closure exceeds `max_elements`.
pub fn exhaustive_order(
    rec: &WreathRecursion,
    n: usize,
    max_elements: usize,
    caps: &LevelCaps,
) -> Result<BigCount> {
    let perms = generator_perms(rec, n, caps)?;
    let mut seen = std::collections::HashSet::new();
    let degree = checked_degree(rec, n, caps)?;
    let id: Vec<u32> = (0..degree as u32).collect();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(cur) = frontier.pop() {
        for p in &perms {
            let composed: Vec<u32> = cur.iter().map(|&x| p.mapping()[x as usize]).collect();
            if seen.insert(composed.clone()) {
                if seen.len() > max_elements {
                    return Err(Error::resource(format!(
                        "closure exceeded {max_elements} elements"
                    )));
                }
                frontier.push(composed);
            }
        }
    }
    Ok(BigCount::from(seen.len()))
}
