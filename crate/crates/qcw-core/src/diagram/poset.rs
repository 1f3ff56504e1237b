use std::fmt;

use crate::error::{Error, Result};

/// A finite partially ordered set with named elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the order generated by `relations` (pairs `a <= b`), taking the
    /// reflexive-transitive closure and rejecting cycles.
    pub fn new(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate element {a}")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Invalid(format!(
                        "relations are not antisymmetric: {} <= {} <= {}",
                        labels[i], labels[j], labels[i]
                    )));
                }
            }
        }
        Ok(Self { labels, leq })
    }

    /// Checks that a relation set is already reflexive, antisymmetric and transitive.
    pub fn validate_order(n: usize, pairs: &[(usize, usize)]) -> Vec<String> {
        let mut rel = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            rel[a][b] = true;
        }
        let mut problems = Vec::new();
        for (i, row) in rel.iter().enumerate() {
            if !row[i] {
                problems.push(format!("not reflexive at {i}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && rel[i][j] && rel[j][i] {
                    problems.push(format!("not antisymmetric at ({i}, {j})"));
                }
                for k in 0..n {
                    if rel[i][j] && rel[j][k] && !rel[i][k] {
                        problems.push(format!("not transitive at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        problems
    }

    /// The chain 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(labels, &rel).expect("a chain is a poset")
    }

    /// n pairwise incomparable elements.
    pub fn discrete(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), &[]).expect("an antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// All strict pairs i < j.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Covering pairs: i < j with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// Elements in an order compatible with the partial order, ties by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| ((0..self.len()).filter(|&k| self.lt(k, i)).count(), i));
        order
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.leq(u, v)))
    }

    pub fn join_all(&self, items: &[usize]) -> Option<usize> {
        let (&first, rest) = items.split_first()?;
        rest.iter().try_fold(first, |acc, &k| self.join(acc, k))
    }

    pub fn is_upper_semilattice(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.join(i, j).is_some()))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|i| self.leq(i, t)))
    }

    /// Maximal chains of covers from i to j (all Hasse paths).
    pub fn hasse_paths(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        if i == j {
            return vec![vec![i]];
        }
        let covers = self.covers();
        let mut out = Vec::new();
        for &(a, b) in &covers {
            if a == i && self.leq(b, j) {
                for mut tail in self.hasse_paths(b, j) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> FinitePoset {
        FinitePoset::new(vec!["u0".into(), "u1".into(), "u01".into()], &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn closure_and_joins() {
        let c = FinitePoset::chain(3);
        assert!(c.leq(0, 2));
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        let p = p1();
        assert_eq!(p.join(0, 1), Some(2));
        assert!(p.is_upper_semilattice());
        assert_eq!(p.top(), Some(2));
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(FinitePoset::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn order_validation() {
        assert!(FinitePoset::validate_order(2, &[(0, 0), (1, 1), (0, 1)]).is_empty());
        assert!(!FinitePoset::validate_order(2, &[(0, 1)]).is_empty());
    }
}
