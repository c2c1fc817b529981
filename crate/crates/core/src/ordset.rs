//! Ordered multisets and elementwise dominance.
//!
//! `A >= B` holds when `a_i >= b_i` for every index present in both sets
//! (both taken in non-decreasing order). Adding `a` to `A` and `b <= a` to
//! `B` preserves dominance provided `b` does not exceed the current maximum
//! of `B` or `A` is no longer than `B`; the same condition covers adding
//! only `b` to `B`.

use crate::{Error, Result};

/// A multiset kept in non-decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSet<T> {
    elems: Vec<T>,
}

impl<T: Ord + Clone> Default for OrderedSet<T> {
    fn default() -> Self {
        OrderedSet { elems: Vec::new() }
    }
}

impl<T: Ord + Clone> FromIterator<T> for OrderedSet<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut elems: Vec<T> = iter.into_iter().collect();
        elems.sort();
        OrderedSet { elems }
    }
}

impl<T: Ord + Clone> OrderedSet<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn max(&self) -> Option<&T> {
        self.elems.last()
    }

    /// Inserts `x` after any equal elements.
    pub fn insert(&mut self, x: T) {
        let at = self.elems.partition_point(|e| *e <= x);
        self.elems.insert(at, x);
    }

    pub fn with(&self, x: T) -> Self {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    /// Elementwise dominance over the common prefix.
    pub fn dominates(&self, other: &Self) -> bool {
        self.elems.iter().zip(&other.elems).all(|(a, b)| a >= b)
    }
}

/// `b <= max(B)` or `|A| <= |B|`.
fn growth_allowed<T: Ord + Clone>(a_set: &OrderedSet<T>, b_set: &OrderedSet<T>, b: &T) -> bool {
    b_set.max().is_some_and(|m| b <= m) || a_set.len() <= b_set.len()
}

/// Returns `(A ∪ {a}, B ∪ {b})`, which still satisfy `A' >= B'`.
pub fn insert_pair<T: Ord + Clone>(
    a_set: &OrderedSet<T>,
    b_set: &OrderedSet<T>,
    a: T,
    b: T,
) -> Result<(OrderedSet<T>, OrderedSet<T>)> {
    if !a_set.dominates(b_set) {
        return Err(Error::Contract("insert_pair: A does not dominate B".into()));
    }
    if a < b {
        return Err(Error::Contract("insert_pair: a < b".into()));
    }
    if !growth_allowed(a_set, b_set, &b) {
        return Err(Error::Contract(
            "insert_pair: need b <= max(B) or |A| <= |B|".into(),
        ));
    }
    Ok((a_set.with(a), b_set.with(b)))
}

/// Returns `B ∪ {b}`, which is still dominated by `A`.
pub fn insert_single<T: Ord + Clone>(
    a_set: &OrderedSet<T>,
    b_set: &OrderedSet<T>,
    b: T,
) -> Result<OrderedSet<T>> {
    if !a_set.dominates(b_set) {
        return Err(Error::Contract("insert_single: A does not dominate B".into()));
    }
    if !growth_allowed(a_set, b_set, &b) {
        return Err(Error::Contract(
            "insert_single: need b <= max(B) or |A| <= |B|".into(),
        ));
    }
    Ok(b_set.with(b))
}
