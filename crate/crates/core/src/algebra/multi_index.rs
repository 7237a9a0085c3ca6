use std::fmt;

use serde::{Deserialize, Serialize};

use super::{factorial, Scalar};

/// Element of `N_0^d`: degrees, lattice points and series exponents.
///
/// Ordering is lexicographic on the entries, which is the order polynomial
/// terms are stored and serialized in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The unit vector `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|n| = n_1 + ... + n_d`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `n! = n_1! ... n_d!`.
    pub fn factorial<T: Scalar>(&self) -> T {
        self.0
            .iter()
            .fold(T::one(), |acc, &k| acc * factorial::<T>(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + shift`, or `None` when a coordinate would leave `N_0`.
    pub fn offset(&self, shift: &[i32]) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), shift.len());
        self.0
            .iter()
            .zip(shift)
            .map(|(&a, &s)| u32::try_from(i64::from(a) + i64::from(s)).ok())
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Entries as signed integers, for points that may sit off the lattice.
    pub fn signed(&self) -> Vec<i64> {
        self.0.iter().map(|&k| i64::from(k)).collect()
    }

    /// Every index with `|n| = total`, in descending lexicographic order.
    pub fn with_total(dim: usize, total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fill_total(&mut cur, 0, total, &mut out);
        out
    }

    /// Every index with `|n| <= max_total`, graded: by `|n|` first, then
    /// descending lexicographic within a degree (so `(1,0)` precedes `(0,1)`).
    pub fn graded(dim: usize, max_total: u32) -> Vec<MultiIndex> {
        (0..=max_total)
            .flat_map(|s| MultiIndex::with_total(dim, s))
            .collect()
    }

    /// The box `{0, ..., max}^dim` in lexicographic order.
    pub fn cube(dim: usize, max: u32) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity((max as usize + 1).pow(dim as u32));
        let mut cur = vec![0u32; dim];
        loop {
            out.push(MultiIndex(cur.clone()));
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if cur[axis] < max {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = 0;
            }
        }
    }
}

fn fill_total(cur: &mut Vec<u32>, axis: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if axis + 1 == cur.len() {
        cur[axis] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for k in (0..=remaining).rev() {
        cur[axis] = k;
        fill_total(cur, axis + 1, remaining - k, out);
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};

    #[test]
    fn total_and_factorial() {
        let n = MultiIndex::from([2, 0, 3]);
        assert_eq!(n.total(), 5);
        assert_eq!(n.factorial::<Rational>(), int(12));
        assert!(MultiIndex::zero(3).is_zero());
    }

    #[test]
    fn graded_order() {
        let g = MultiIndex::graded(2, 2);
        let want: Vec<MultiIndex> = vec![
            [0, 0].into(),
            [1, 0].into(),
            [0, 1].into(),
            [2, 0].into(),
            [1, 1].into(),
            [0, 2].into(),
        ];
        assert_eq!(g, want);
        // binom(4 + 3, 3)
        assert_eq!(MultiIndex::graded(3, 4).len(), 35);
    }

    #[test]
    fn cube_enumerates_box() {
        let c = MultiIndex::cube(2, 2);
        assert_eq!(c.len(), 9);
        assert_eq!(c[0], MultiIndex::from([0, 0]));
        assert_eq!(c[1], MultiIndex::from([0, 1]));
        assert_eq!(c[8], MultiIndex::from([2, 2]));
    }

    #[test]
    fn offset_leaves_lattice() {
        let n = MultiIndex::from([0, 2]);
        assert_eq!(n.offset(&[1, -1]), Some(MultiIndex::from([1, 1])));
        assert_eq!(n.offset(&[-1, 0]), None);
    }

    #[test]
    fn json_is_plain_array() {
        let n = MultiIndex::from([1, 0, 4]);
        assert_eq!(serde_json::to_string(&n).unwrap(), "[1,0,4]");
    }
}
