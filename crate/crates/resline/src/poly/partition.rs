//! Integer partitions with a largest-part constraint, partition counting,
//! and the generalized multinomial coefficient with rational top argument.

use num::{BigInt, One};

use crate::scalar::{falling_factorial, Rat};

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must decrease"
        );
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiplicities p_1, p_2, ..., p_w (index i = count of parts equal i).
    pub fn multiplicities(&self) -> Vec<u32> {
        let w = self.largest() as usize;
        let mut mult = vec![0u32; w + 1];
        for &p in &self.parts {
            mult[p as usize] += 1;
        }
        mult.remove(0);
        mult
    }
}

/// All partitions of `weight` whose largest part exceeds
/// `min_largest_exclusive`, in descending lexicographic order.
pub fn enumerate_partitions(weight: u32, min_largest_exclusive: u32) -> Vec<Partition> {
    assert!(weight >= 1);
    let mut out = vec![];
    let mut stack = vec![];
    descend(weight, weight, min_largest_exclusive, &mut stack, &mut out);
    out
}

fn descend(
    remaining: u32,
    cap: u32,
    min_first: u32,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::new(stack.clone()));
        return;
    }
    let lo = if stack.is_empty() { min_first + 1 } else { 1 };
    let hi = cap.min(remaining);
    if lo > hi {
        return;
    }
    for part in (lo..=hi).rev() {
        stack.push(part);
        descend(remaining - part, part, min_first, stack, out);
        stack.pop();
    }
}

/// Partition numbers p(0..=n) by the standard two-dimensional recurrence.
pub fn partition_counts(n: u32) -> Vec<BigInt> {
    // ways[w] = number of partitions of w using parts <= current k
    let n = n as usize;
    let mut ways = vec![BigInt::from(0); n + 1];
    ways[0] = BigInt::one();
    for k in 1..=n {
        for w in k..=n {
            let add = ways[w - k].clone();
            ways[w] += add;
        }
    }
    ways
}

/// Number of partitions of k with at most `max_len` parts.
pub fn partition_count_max_len(k: u32, max_len: u32) -> BigInt {
    // Conjugation: length <= n equals largest part <= n.
    let k = k as usize;
    let mut ways = vec![BigInt::from(0); k + 1];
    ways[0] = BigInt::one();
    for part in 1..=(max_len as usize).min(k.max(1)) {
        for w in part..=k {
            let add = ways[w - part].clone();
            ways[w] += add;
        }
    }
    ways[k].clone()
}

/// Generalized multinomial: alpha (alpha-1) ... (alpha-l+1) / (p_1! p_2! ...)
/// with l the sum of the multiplicities.
pub fn multinomial_general(alpha: &Rat, multiplicities: &[u32]) -> Rat {
    let len: u32 = multiplicities.iter().sum();
    let mut denom = BigInt::one();
    for &m in multiplicities {
        for i in 2..=m as u64 {
            denom *= BigInt::from(i);
        }
    }
    falling_factorial(alpha, len) / Rat::from_integer(denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_binomial, rat_int};

    #[test]
    fn enumerate_small() {
        let ps = enumerate_partitions(2, 0);
        assert_eq!(
            ps,
            vec![Partition::new(vec![2]), Partition::new(vec![1, 1])]
        );
        assert_eq!(enumerate_partitions(4, 0).len(), 5);
        assert_eq!(enumerate_partitions(3, 2), vec![Partition::new(vec![3])]);
    }

    #[test]
    fn counts_match_enumeration() {
        let table = partition_counts(40);
        for w in 1..=40u32 {
            assert_eq!(
                BigInt::from(enumerate_partitions(w, 0).len()),
                table[w as usize],
                "count mismatch at weight {w}"
            );
        }
        // Known values p(10) = 42, p(40) = 37338.
        assert_eq!(table[10], BigInt::from(42));
        assert_eq!(table[40], BigInt::from(37338));
    }

    #[test]
    fn bounded_length_counts() {
        // Partitions of 5 with at most 2 parts: (5), (4,1), (3,2).
        assert_eq!(partition_count_max_len(5, 2), BigInt::from(3));
        assert_eq!(partition_count_max_len(5, 1), BigInt::from(1));
        assert_eq!(partition_count_max_len(0, 3), BigInt::from(1));
        for k in 0..=10 {
            assert_eq!(
                partition_count_max_len(k, k),
                partition_counts(k)[k as usize]
            );
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_general(&rat(1, 2), &[2]), rat(-1, 8));
        assert_eq!(multinomial_general(&rat(1, 2), &[0, 1]), rat(1, 2));
        assert_eq!(multinomial_general(&rat_int(3), &[4]), rat_int(0));
    }

    #[test]
    fn multinomial_reduces_to_binomial() {
        for num in [-3i64, 1, 5] {
            for den in [1i64, 2, 3] {
                let alpha = rat(num, den);
                for l in 0..=12u32 {
                    assert_eq!(multinomial_general(&alpha, &[l]), rat_binomial(&alpha, l));
                }
            }
        }
    }

    #[test]
    fn multiplicities_round_trip() {
        let p = Partition::new(vec![3, 2, 2, 1]);
        assert_eq!(p.weight(), 8);
        assert_eq!(p.len(), 4);
        assert_eq!(p.multiplicities(), vec![1, 2, 1]);
    }
}
