use std::fmt;

use num_bigint::BigInt;

use super::radical::{prime_factors, square_free_split};
use super::ScalarError;

/// Maximum number of independent square roots adjoined to the rationals.
pub const MAX_TOWER_DEPTH: usize = 4;

/// `Q(sqrt(d1), ..., sqrt(dk))` described by independent square-free radicands.
///
/// Two towers are equal when they generate the same field; the radicand list is
/// a canonical basis of the multiplicative group of square classes they span.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldTower {
    radicands: Vec<u64>,
}

/// Reduced echelon basis over GF(2) of square classes, each class a set of
/// primes. Pivot is the largest prime of each row.
fn echelon(classes: impl IntoIterator<Item = u64>) -> Result<Vec<Vec<u64>>, ScalarError> {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for d in classes {
        let mut row = prime_factors(d);
        // existing rows have distinct pivots that appear in no other row
        for existing in &rows {
            let pivot = existing.last().expect("rows are nonempty");
            if row.binary_search(pivot).is_ok() {
                row = symmetric_difference(&row, existing);
            }
        }
        if row.is_empty() {
            continue;
        }
        let pivot = *row.last().unwrap();
        for r in rows.iter_mut() {
            if r.binary_search(&pivot).is_ok() {
                *r = symmetric_difference(r, &row);
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn symmetric_difference(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .filter(|p| b.binary_search(p).is_err())
        .chain(b.iter().filter(|p| a.binary_search(p).is_err()))
        .copied()
        .collect();
    out.sort_unstable();
    out
}

impl FieldTower {
    /// The rationals.
    pub fn rationals() -> Self {
        Self::default()
    }

    /// Tower generated by the square roots of the given positive integers.
    pub fn new(generators: Vec<u64>) -> Result<Self, ScalarError> {
        let tower = Self::spanned_by(generators.iter().copied())?;
        if tower.depth() > MAX_TOWER_DEPTH {
            return Err(ScalarError::TowerDepthExceeded(format!("{generators:?}")));
        }
        Ok(tower)
    }

    /// Like [`FieldTower::new`] without the depth cap.
    pub(crate) fn spanned_by(generators: impl IntoIterator<Item = u64>) -> Result<Self, ScalarError> {
        let mut gens = Vec::new();
        for g in generators {
            if g == 0 {
                return Err(ScalarError::NegativeRadicand("0".into()));
            }
            let (_, free) = square_free_split(&BigInt::from(g)).expect("u64 always splits");
            gens.push(free);
        }
        let rows = echelon(gens)?;
        let mut radicands: Vec<u64> = rows
            .iter()
            .map(|r| r.iter().try_fold(1u64, |acc, p| acc.checked_mul(*p)))
            .collect::<Option<_>>()
            .ok_or_else(|| ScalarError::TowerDepthExceeded("radicand overflow".into()))?;
        radicands.sort_unstable();
        Ok(Self { radicands })
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands
    }

    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    /// Degree of the tower over the rationals.
    pub fn degree(&self) -> usize {
        1 << self.depth()
    }

    /// Smallest tower containing both.
    pub fn join(&self, other: &Self) -> Result<Self, ScalarError> {
        let joined = Self::spanned_by(self.radicands.iter().chain(&other.radicands).copied())?;
        if joined.depth() > MAX_TOWER_DEPTH {
            return Err(ScalarError::IncompatibleTowers(self.to_string(), other.to_string()));
        }
        Ok(joined)
    }

    pub fn adjoin(&self, d: u64) -> Result<Self, ScalarError> {
        let t = Self::spanned_by(self.radicands.iter().copied().chain([d]))?;
        if t.depth() > MAX_TOWER_DEPTH {
            return Err(ScalarError::TowerDepthExceeded(format!("sqrt({d}) over {self}")));
        }
        Ok(t)
    }

    /// Whether `sqrt(d)` already lies in this tower.
    pub fn contains_sqrt(&self, d: u64) -> bool {
        Self::spanned_by(self.radicands.iter().copied().chain([d]))
            .map(|t| t.depth() == self.depth())
            .unwrap_or(false)
    }

    /// Whether `other` embeds into this tower.
    pub fn contains(&self, other: &Self) -> bool {
        other.radicands.iter().all(|d| self.contains_sqrt(*d))
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicands.is_empty() {
            return f.write_str("Q");
        }
        f.write_str("Q(")?;
        for (n, d) in self.radicands.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "sqrt({d})")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_generators() {
        let a = FieldTower::new(vec![2, 3]).unwrap();
        let b = FieldTower::new(vec![6, 3]).unwrap();
        let c = FieldTower::new(vec![2, 6, 3, 8]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.depth(), 2);
        assert_eq!(a.degree(), 4);
        assert!(a.contains_sqrt(6));
        assert!(a.contains_sqrt(24));
        assert!(!a.contains_sqrt(5));
        assert_eq!(FieldTower::new(vec![4, 9]).unwrap(), FieldTower::rationals());
    }

    #[test]
    fn join_respects_cap() {
        let a = FieldTower::new(vec![2, 3]).unwrap();
        let b = FieldTower::new(vec![5, 7]).unwrap();
        let ab = a.join(&b).unwrap();
        assert_eq!(ab.depth(), 4);
        assert!(ab.contains(&a) && ab.contains(&b));
        assert!(matches!(ab.adjoin(11), Err(ScalarError::TowerDepthExceeded(_))));
        assert!(matches!(
            ab.join(&FieldTower::new(vec![11]).unwrap()),
            Err(ScalarError::IncompatibleTowers(_, _))
        ));
        assert_eq!(ab.adjoin(35).unwrap(), ab);
    }

    #[test]
    fn display() {
        assert_eq!(FieldTower::new(vec![2]).unwrap().to_string(), "Q(sqrt(2))");
        assert_eq!(FieldTower::rationals().to_string(), "Q");
    }
}
