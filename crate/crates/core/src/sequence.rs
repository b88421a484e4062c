//! Degree sequences of trees with boundary and the prefix-sum order `⊴`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::TreeWithBoundary;

/// Interior degrees (each ≥ 2, non-decreasing) plus a count of boundary 1s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegreeSequence {
    interior: Vec<usize>,
    boundary: usize,
}

impl DegreeSequence {
    /// Interior degrees are sorted; entries equal to 1 are moved to the boundary part.
    pub fn new(interior: impl IntoIterator<Item = usize>, boundary: usize) -> Result<Self> {
        let mut degrees: Vec<usize> = interior.into_iter().collect();
        if degrees.contains(&0) {
            return Err(Error::ZeroDegree);
        }
        let ones = degrees.iter().filter(|&&d| d == 1).count();
        degrees.retain(|&d| d >= 2);
        degrees.sort_unstable();
        Ok(DegreeSequence { interior: degrees, boundary: boundary + ones })
    }

    /// Builds the sequence from all vertex degrees, boundary 1s included.
    pub fn from_entries(entries: &[usize]) -> Result<Self> {
        Self::new(entries.iter().copied(), 0)
    }

    pub fn of(tree: &TreeWithBoundary) -> Self {
        let degrees = tree.degrees();
        Self::new(degrees, 0).expect("tree degrees are positive")
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    pub fn n(&self) -> usize {
        self.interior.len() + self.boundary
    }

    pub fn k(&self) -> usize {
        self.interior.len()
    }

    pub fn sum(&self) -> usize {
        self.interior.iter().sum::<usize>() + self.boundary
    }

    /// Interior degrees in non-decreasing order followed by the boundary 1s.
    pub fn entries(&self) -> Vec<usize> {
        let mut e = self.interior.clone();
        e.extend(std::iter::repeat(1).take(self.boundary));
        e
    }

    /// Harary's characterization: all entries positive and summing to `2(n-1)`.
    pub fn is_tree_sequence(&self) -> bool {
        self.n() >= 2 && self.sum() == 2 * (self.n() - 1)
    }

    /// All tree sequences on `n` vertices with at least one interior vertex,
    /// in lexicographic order of their interior parts.
    pub fn all_tree_sequences(n: usize) -> Vec<DegreeSequence> {
        let mut out = Vec::new();
        if n < 3 {
            return out;
        }
        // k interior degrees ≥ 2 summing to n + k - 2.
        for k in 1..=n - 2 {
            let total = n + k - 2;
            let mut parts = Vec::with_capacity(k);
            partitions(total, k, 2, &mut parts, &mut |p| {
                out.push(DegreeSequence { interior: p.to_vec(), boundary: n - k });
            });
        }
        out.sort();
        out
    }

    /// Prefix-sum comparison `self ⊴ other` over full sequences.
    pub fn compare(&self, other: &DegreeSequence) -> Result<Majorization> {
        compare_sequences(self, other)
    }
}

/// Non-decreasing sequences of `parts` integers ≥ `min` summing to `total`.
fn partitions(
    total: usize,
    parts: usize,
    min: usize,
    acc: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if parts == 0 {
        if total == 0 {
            emit(acc);
        }
        return;
    }
    let mut d = min;
    while d * parts <= total {
        acc.push(d);
        partitions(total - d, parts - 1, d, acc, emit);
        acc.pop();
        d += 1;
    }
}

/// Outcome of a `⊴` comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Majorization {
    pub leq: bool,
    /// First rank whose prefix sum violates the order.
    pub witness: Option<usize>,
}

pub fn compare_sequences(a: &DegreeSequence, b: &DegreeSequence) -> Result<Majorization> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch(a.n(), b.n()));
    }
    let (mut sa, mut sb) = (0, 0);
    for (r, (x, y)) in a.entries().into_iter().zip(b.entries()).enumerate() {
        sa += x;
        sb += y;
        if sa > sb {
            return Ok(Majorization { leq: false, witness: Some(r) });
        }
    }
    Ok(Majorization { leq: true, witness: None })
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// Space- or comma-separated positive integers, boundary 1s included.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Malformed {
                    line: 1,
                    reason: format!("bad degree {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Malformed { line: 1, reason: "empty degree sequence".into() });
        }
        Self::from_entries(&entries)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(interior: &[usize], boundary: usize) -> DegreeSequence {
        DegreeSequence::new(interior.iter().copied(), boundary).unwrap()
    }

    #[test]
    fn tree_sequence_examples() {
        assert!(seq(&[2], 2).is_tree_sequence());
        assert!(seq(&[3], 3).is_tree_sequence());
        assert!(!seq(&[2, 2], 1).is_tree_sequence());
    }

    #[test]
    fn parse_and_display() {
        let s: DegreeSequence = "3 1, 1,1".parse().unwrap();
        assert_eq!(s, seq(&[3], 3));
        assert_eq!(s.to_string(), "3 1 1 1");
        let unsorted: DegreeSequence = "1 4 2 1 1 1".parse().unwrap();
        assert_eq!(unsorted.interior(), &[2, 4]);
        assert_eq!("2 0 1".parse::<DegreeSequence>(), Err(Error::ZeroDegree));
        assert!("".parse::<DegreeSequence>().is_err());
        assert!("2 x".parse::<DegreeSequence>().is_err());
    }

    #[test]
    fn of_tree() {
        let p3 = TreeWithBoundary::path(3).unwrap();
        assert_eq!(DegreeSequence::of(&p3), seq(&[2], 2));
    }

    #[test]
    fn prefix_comparison() {
        let a = seq(&[2, 2, 3], 3);
        let b = seq(&[2, 3, 3], 3);
        assert_eq!(a.compare(&b).unwrap(), Majorization { leq: true, witness: None });
        assert_eq!(b.compare(&a).unwrap(), Majorization { leq: false, witness: Some(1) });
        assert!(a.compare(&a).unwrap().leq);
        assert_eq!(a.compare(&seq(&[2], 2)), Err(Error::LengthMismatch(6, 3)));
    }

    #[test]
    fn enumerates_tree_sequences() {
        let six = DegreeSequence::all_tree_sequences(6);
        let interiors: Vec<&[usize]> = six.iter().map(|s| s.interior()).collect();
        assert_eq!(interiors, vec![&[2, 2, 2, 2][..], &[2, 2, 3], &[2, 4], &[3, 3], &[5]]);
        assert!(six.iter().all(DegreeSequence::is_tree_sequence));
        assert!(DegreeSequence::all_tree_sequences(2).is_empty());
    }
}
