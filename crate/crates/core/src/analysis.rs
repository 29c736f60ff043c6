//! Closed-form estimates for accidental blade equality.
//!
//! Under ideal conditions (no two chunks of a sentence coincide up to sign) a
//! memory item has a nonzero inner product with a noisy answer exactly when
//! they share a blade. Counting the probability of such shared blades over a
//! memory partitioned into the subsets `S_k` of `k`-blade items gives the
//! expected number of potential answers.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Counts `|S_k|` of memory items having `k` blades, plus the blade width `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryProfile {
    dimension: u32,
    counts: BTreeMap<usize, u64>,
}

impl MemoryProfile {
    /// Zero counts are dropped.
    pub fn new(dimension: u32, counts: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in counts {
            if c > 0 {
                *map.entry(k).or_insert(0) += c;
            }
        }
        Self {
            dimension,
            counts: map,
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Same counts at another blade width.
    pub fn with_dimension(&self, dimension: u32) -> Self {
        Self {
            dimension,
            counts: self.counts.clone(),
        }
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    /// `ω(V)`, the largest `k` with `|S_k| > 0` (0 for an empty memory).
    pub fn max_blades(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Potential answers known a priori (`p_k` per subset) and the blade count `L`
/// of the noisy answer `S ♯ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerProfile {
    pub known: BTreeMap<usize, u64>,
    pub answer_blades: u32,
}

impl AnswerProfile {
    pub fn new(known: impl IntoIterator<Item = (usize, u64)>, answer_blades: u32) -> Self {
        Self {
            known: known.into_iter().filter(|&(_, p)| p > 0).collect(),
            answer_blades,
        }
    }

    pub fn known_in(&self, k: usize) -> u64 {
        self.known.get(&k).copied().unwrap_or(0)
    }

    /// `p = Σ p_k`.
    pub fn total_known(&self) -> u64 {
        self.known.values().sum()
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Probability that the `2K` blades of an answer split into exactly `K` plus
/// and `K` minus signs, i.e. that their similarities cancel completely:
/// `C(2K, K) / 2^{2K}`.
///
/// Exact for `K <= 60`.
pub fn cancellation_probability(k: u32) -> Ratio<u128> {
    assert!((1..=60).contains(&k), "K must be in 1..=60");
    Ratio::new(binomial(2 * k, k), 1u128 << (2 * k))
}

/// Expected `|𝒜|` for an answer with one meaningful atom blade and
/// `noise_blades` noisy blades:
/// `1 + (|S_1|-1)(L+1)/2^N + Σ_{k≥2} |S_k| (1 - (1 - (L+1)/2^N)^k)`.
pub fn expected_potential_answers_simple(profile: &MemoryProfile, noise_blades: u32) -> Result<f64> {
    if profile.count(1) == 0 {
        return Err(Error::NoAtoms);
    }
    let hit = f64::from(noise_blades + 1) / 2f64.powi(profile.dimension as i32);
    let mut total = 1.0 + (profile.count(1) - 1) as f64 * hit;
    for (&k, &c) in profile.counts.range(2..) {
        total += c as f64 * (1.0 - (1.0 - hit).powi(k as i32));
    }
    Ok(total)
}

/// General estimate
/// `p + (|S_1| - p_1) L/2^N + Σ_{k≥2} (|S_k| - p_k)(1 - (1 - L/2^N)^k)`.
///
/// Exact for appropriate-hand-side reversed questions; an upper bound for
/// right-hand-side questions, where even answers may cancel.
pub fn expected_potential_answers_general(
    profile: &MemoryProfile,
    answer: &AnswerProfile,
) -> Result<f64> {
    for (&k, &p) in &answer.known {
        let count = profile.count(k);
        if p > count {
            return Err(Error::ProfileViolation { k, p, count });
        }
    }
    let hit = f64::from(answer.answer_blades) / 2f64.powi(profile.dimension as i32);
    let mut total =
        answer.total_known() as f64 + (profile.count(1) - answer.known_in(1)) as f64 * hit;
    for (&k, &c) in profile.counts.range(2..) {
        let remaining = (c - answer.known_in(k)) as f64;
        total += remaining * (1.0 - (1.0 - hit).powi(k as i32));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_profile(n: u32) -> MemoryProfile {
        MemoryProfile::new(
            n,
            [
                (1, 42),
                (2, 2),
                (3, 2),
                (4, 3),
                (5, 2),
                (6, 1),
                (7, 1),
                (8, 3),
                (9, 2),
                (10, 2),
                (11, 1),
            ],
        )
    }

    fn complement(k: u32) -> f64 {
        let p = cancellation_probability(k);
        1.0 - *p.numer() as f64 / *p.denom() as f64
    }

    #[test]
    fn cancellation_values() {
        assert_eq!(cancellation_probability(1), Ratio::new(1, 2));
        assert_eq!(cancellation_probability(2), Ratio::new(3, 8));
        assert!((complement(2) - 0.625).abs() < 1e-12);
        assert!((complement(4) - 0.726563).abs() < 5e-7);
        assert!((complement(5) - 0.753906).abs() < 5e-7);
    }

    #[test]
    fn cancellation_matches_enumeration() {
        for k in 1..=6u32 {
            let n = 2 * k;
            let balanced = (0u32..1 << n).filter(|s| s.count_ones() == k).count() as u128;
            assert_eq!(cancellation_probability(k), Ratio::new(balanced, 1 << n));
        }
    }

    #[test]
    fn profile_accessors() {
        let p = table_profile(10);
        assert_eq!(p.max_blades(), 11);
        assert_eq!(p.total(), 61);
        assert_eq!(p.with_dimension(4).dimension(), 4);
        assert_eq!(MemoryProfile::new(4, []).max_blades(), 0);
    }

    #[test]
    fn simple_estimator_requires_atoms() {
        let p = MemoryProfile::new(8, [(3, 2)]);
        assert_eq!(expected_potential_answers_simple(&p, 3), Err(Error::NoAtoms));
    }

    #[test]
    fn general_specialises_to_simple() {
        for n in [4, 7, 10, 16, 20] {
            let p = table_profile(n);
            let simple = expected_potential_answers_simple(&p, 3).unwrap();
            let general =
                expected_potential_answers_general(&p, &AnswerProfile::new([(1, 1)], 4)).unwrap();
            assert_eq!(simple, general);
        }
    }

    #[test]
    fn general_rejects_oversized_profile() {
        let p = table_profile(10);
        let err = expected_potential_answers_general(&p, &AnswerProfile::new([(6, 2)], 4));
        assert_eq!(
            err,
            Err(Error::ProfileViolation {
                k: 6,
                p: 2,
                count: 1
            })
        );
    }

    #[test]
    fn estimators_nonincreasing_in_dimension() {
        let answer = AnswerProfile::new([(2, 1), (4, 1), (8, 1)], 4);
        let mut last = f64::INFINITY;
        for n in 2..40 {
            let p = table_profile(n);
            let v = expected_potential_answers_general(&p, &answer).unwrap();
            assert!(v <= last && v >= 3.0);
            last = v;
        }
        assert!((last - 3.0).abs() < 1e-6);
    }
}
