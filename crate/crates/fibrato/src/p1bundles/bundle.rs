use std::fmt;

use itertools::Itertools;
use serde::Serialize;

/// Direct sum of line bundles on the projective line, degrees sorted descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitBundle { degrees }
    }

    /// `O(d)`.
    pub fn line(d: i64) -> Self {
        SplitBundle { degrees: vec![d] }
    }

    /// `O(d)^n`.
    pub fn repeated(d: i64, n: usize) -> Self {
        SplitBundle { degrees: vec![d; n] }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn twist(&self, m: i64) -> Self {
        SplitBundle { degrees: self.degrees.iter().map(|d| d + m).collect() }
    }

    pub fn dual(&self) -> Self {
        Self::new(self.degrees.iter().map(|d| -d).collect())
    }

    pub fn det(&self) -> Self {
        Self::line(self.degree())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.degrees.iter().chain(&other.degrees).copied().collect())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::new(self.degrees.iter().cartesian_product(&other.degrees).map(|(a, b)| a + b).collect())
    }

    pub fn sym_power(&self, n: usize) -> Self {
        Self::new(sym_degrees(&self.degrees, n))
    }

    pub fn wedge_power(&self, k: usize) -> Self {
        Self::new(wedge_degrees(&self.degrees, k))
    }

    /// `h^0(E(m))`.
    pub fn h0(&self, m: i64) -> usize {
        self.degrees.iter().map(|d| (d + m + 1).max(0) as usize).sum()
    }

    /// `h^1(E(m))`.
    pub fn h1(&self, m: i64) -> usize {
        self.degrees.iter().map(|d| (-d - m - 1).max(0) as usize).sum()
    }

    /// Multiplicity of `O(d)`.
    pub fn count(&self, d: i64) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.last().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.first().copied()
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .degrees
            .iter()
            .dedup_with_count()
            .map(|(n, d)| if n == 1 { format!("O({d})") } else { format!("O({d})^{n}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degrees of `S^n` in the basis of sorted index multisets (lex order).
pub fn sym_degrees(degrees: &[i64], n: usize) -> Vec<i64> {
    sym_basis(degrees.len(), n).iter().map(|ix| ix.iter().map(|&i| degrees[i]).sum()).collect()
}

/// Degrees of `Λ^k` in the basis of increasing index sets (lex order).
pub fn wedge_degrees(degrees: &[i64], k: usize) -> Vec<i64> {
    wedge_basis(degrees.len(), k).iter().map(|ix| ix.iter().map(|&i| degrees[i]).sum()).collect()
}

/// Sorted multisets of size `n` from `0..r`, lex order.
pub fn sym_basis(r: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..r).combinations_with_replacement(n).collect()
}

/// Increasing `k`-subsets of `0..r`, lex order.
pub fn wedge_basis(r: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..r).combinations(k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_operations() {
        let v1 = SplitBundle::repeated(2, 3);
        assert_eq!(v1.sym_power(2), SplitBundle::repeated(4, 6));
        assert_eq!(v1.wedge_power(2), SplitBundle::repeated(4, 3));
        assert_eq!(v1.det(), SplitBundle::line(6));
        assert_eq!(v1.sym_power(3).rank(), 10);
        assert_eq!(SplitBundle::repeated(4, 6).twist(-6), SplitBundle::repeated(-2, 6));
        assert_eq!(v1.wedge_power(4).rank(), 0);
    }

    #[test]
    fn s2_of_mixed_bundle() {
        let v2 = SplitBundle::new(vec![5, 4, 4, 4, 4, 4]);
        let s2 = v2.sym_power(2);
        assert_eq!((s2.count(10), s2.count(9), s2.count(8)), (1, 5, 15));
    }

    #[test]
    fn cohomology_counts() {
        assert_eq!(SplitBundle::line(2).h0(0), 3);
        assert_eq!(SplitBundle::line(-2).h1(0), 1);
        assert_eq!(SplitBundle::repeated(2, 21).h0(0), 63);
        assert_eq!(format!("{}", SplitBundle::new(vec![1, 3, 3])), "O(3)^2 + O(1)");
    }
}
