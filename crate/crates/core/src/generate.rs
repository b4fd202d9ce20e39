//! Instance generation: the tight worst-case family, seeded random
//! sampling, and exhaustive enumeration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;
use crate::{Error, Result};

/// The family achieving the worst-case LD ratio exactly: `n = 3m` jobs with
/// `m - 1` zero-time jobs, one job of length `m`, lengths `m..2m-1`, and
/// lengths `2m-1..3m-2`. Its LD makespan is `5m - 2` against an optimal
/// (rectangular) makespan of `4m - 1`.
pub fn tight_family(machines: usize) -> Result<Instance> {
    if machines < 2 {
        return Err(Error::MachineCount {
            min: 2,
            got: machines,
        });
    }
    let m = machines as u64;
    let mut times = Vec::with_capacity(3 * machines);
    times.extend(std::iter::repeat_n(0, machines - 1));
    times.push(m);
    times.extend((m + 1..=2 * m).map(|j| j - 1));
    times.extend((2 * m + 1..=3 * m).map(|j| j - 2));
    Instance::normalize(machines, &times)
}

/// `m * k` independent uniform draws from `0..=p_max`, normalized. The
/// generator is ChaCha8 seeded with `seed` via `seed_from_u64`, so a seed
/// reproduces the same instance on every platform.
pub fn random_instance(machines: usize, ranks: usize, p_max: u64, seed: u64) -> Result<Instance> {
    if machines == 0 {
        return Err(Error::MachineCount { min: 1, got: 0 });
    }
    if ranks == 0 {
        return Err(Error::EmptyTimes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<u64> = (0..machines * ranks)
        .map(|_| rng.gen_range(0..=p_max))
        .collect();
    Instance::normalize(machines, &raw)
}

/// Default cap on how many instances [`enumerate_instances`] may yield.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Number of nonincreasing sequences of length `len` over `0..=p_max`,
/// i.e. multisets of size `len` from `p_max + 1` values.
pub fn enumeration_count(machines: usize, ranks: usize, p_max: u64) -> Option<u128> {
    let len = (machines * ranks) as u128;
    // C(p_max + len, len) via the multiplicative formula
    let mut count: u128 = 1;
    for i in 1..=len {
        count = count.checked_mul(p_max as u128 + i)?;
        count /= i;
    }
    Some(count)
}

/// Streams every instance with `m * k` nonincreasing times over `0..=p_max`
/// exactly once, in lexicographic order of the time vector.
pub fn enumerate_instances(
    machines: usize,
    ranks: usize,
    p_max: u64,
) -> Result<InstanceEnumeration> {
    enumerate_instances_capped(machines, ranks, p_max, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_instances`] with an explicit cap on the instance count.
pub fn enumerate_instances_capped(
    machines: usize,
    ranks: usize,
    p_max: u64,
    cap: u128,
) -> Result<InstanceEnumeration> {
    if machines == 0 {
        return Err(Error::MachineCount { min: 1, got: 0 });
    }
    if ranks == 0 {
        return Err(Error::EmptyTimes);
    }
    let count = enumeration_count(machines, ranks, p_max).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    Ok(InstanceEnumeration {
        machines,
        p_max,
        current: Some(vec![0; machines * ranks]),
    })
}

/// Iterator over all nonincreasing time vectors; see
/// [`enumerate_instances`].
#[derive(Clone, Debug)]
pub struct InstanceEnumeration {
    machines: usize,
    p_max: u64,
    current: Option<Vec<u64>>,
}

impl Iterator for InstanceEnumeration {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        let cur = self.current.take()?;
        let inst = Instance::normalize(self.machines, &cur).expect("enumerated vector is valid");
        // successor: bump the rightmost position that can still grow while
        // keeping the vector nonincreasing, zero everything after it
        let mut next = cur;
        let mut bump = None;
        for i in (0..next.len()).rev() {
            let ceil = if i == 0 { self.p_max } else { next[i - 1] };
            if next[i] < ceil {
                bump = Some(i);
                break;
            }
        }
        self.current = bump.map(|i| {
            next[i] += 1;
            for v in next[i + 1..].iter_mut() {
                *v = 0;
            }
            next
        });
        Some(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_known_members() {
        assert_eq!(
            tight_family(3).unwrap().times(),
            &[7, 6, 5, 5, 4, 3, 3, 0, 0]
        );
        assert_eq!(tight_family(2).unwrap().times(), &[4, 3, 3, 2, 2, 0]);
        assert_eq!(
            tight_family(4).unwrap().times(),
            &[10, 9, 8, 7, 7, 6, 5, 4, 4, 0, 0, 0]
        );
        assert!(matches!(
            tight_family(1),
            Err(Error::MachineCount { min: 2, .. })
        ));
    }

    #[test]
    fn family_total_time() {
        // total processing time is m * (4m - 1), the area of the optimum
        for m in 2..=8u64 {
            let inst = tight_family(m as usize).unwrap();
            assert_eq!(inst.total_time(), m * (4 * m - 1));
        }
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = random_instance(3, 3, 9, 7).unwrap();
        let b = random_instance(3, 3, 9, 7).unwrap();
        assert_eq!(a, b);
        let zeroes = random_instance(2, 2, 0, 123).unwrap();
        assert_eq!(zeroes.times(), &[0, 0, 0, 0]);
    }

    #[test]
    fn random_seeds_differ() {
        let mut distinct = 0;
        for s in 0..100u64 {
            if random_instance(2, 3, 5, 2 * s).unwrap()
                != random_instance(2, 3, 5, 2 * s + 1).unwrap()
            {
                distinct += 1;
            }
        }
        assert!(distinct >= 95, "only {distinct} of 100 seed pairs differed");
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let seq: Vec<Vec<u64>> = enumerate_instances(1, 1, 1)
            .unwrap()
            .map(|i| i.times().to_vec())
            .collect();
        assert_eq!(seq, vec![vec![0], vec![1]]);

        let seq: Vec<Vec<u64>> = enumerate_instances(2, 1, 1)
            .unwrap()
            .map(|i| i.times().to_vec())
            .collect();
        assert_eq!(seq, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);

        let all: Vec<Vec<u64>> = enumerate_instances(2, 2, 2)
            .unwrap()
            .map(|i| i.times().to_vec())
            .collect();
        assert_eq!(all.len(), 15);
        assert_eq!(enumeration_count(2, 2, 2), Some(15));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len(), "duplicate instance enumerated");
        // lexicographically increasing
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        assert!(matches!(
            enumerate_instances_capped(2, 2, 2, 10),
            Err(Error::EnumerationCap { count: 15, cap: 10 })
        ));
    }
}
