//! Seeded random inputs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MultiIndex, Polynomial, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct weights `c_i` in `(0, 1)` with `|c| <= 4/5`.
pub fn random_weights<R: Rng>(rng: &mut R, d: usize) -> Vec<Rational> {
    loop {
        let den: i64 = rng.gen_range(5..=24) * d as i64;
        let budget = den * 4 / 5;
        if budget < d as i64 {
            continue;
        }
        let mut nums: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=budget)).collect();
        nums.sort_unstable();
        nums.dedup();
        if nums.len() != d || nums.iter().sum::<i64>() > budget {
            continue;
        }
        // shuffle so the largest weight is not always last
        for i in (1..d).rev() {
            let j = rng.gen_range(0..=i);
            nums.swap(i, j);
        }
        return nums
            .into_iter()
            .map(|n| Rational::new(n.into(), den.into()))
            .collect();
    }
}

/// Polynomial of total degree `<= max_degree` with small rational
/// coefficients on a random subset of monomials.
pub fn random_polynomial<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for e in MultiIndex::graded(dim, max_degree) {
        if rng.gen_bool(0.6) {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=5);
            p.add_term(e, Rational::new(num.into(), den.into()));
        }
    }
    p
}

/// `count` random polynomials from a fixed seed.
pub fn random_polynomials(seed: u64, dim: usize, max_degree: u32, count: usize) -> Vec<Polynomial> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| random_polynomial(&mut r, dim, max_degree))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::in_unit_interval;
    use num_traits::One;

    #[test]
    fn weights_are_summable_and_distinct() {
        let mut r = rng(7);
        for d in 1..=4 {
            for _ in 0..20 {
                let c = random_weights(&mut r, d);
                assert_eq!(c.len(), d);
                assert!(c.iter().all(in_unit_interval));
                assert!(c.iter().sum::<Rational>() < Rational::one());
            }
        }
    }

    #[test]
    fn polynomials_are_reproducible() {
        assert_eq!(random_polynomials(3, 2, 4, 5), random_polynomials(3, 2, 4, 5));
        assert!(random_polynomials(3, 2, 4, 5)
            .iter()
            .all(|p| p.total_degree().unwrap_or(0) <= 4));
    }
}
