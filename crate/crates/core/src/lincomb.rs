//! Finite ℚ-linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use crate::rational::Q;

/// A finite formal sum `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Q> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), -v);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Linear extension of a basis map; colliding images are summed.
    pub fn map_basis<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Linear extension of a map from basis elements to combinations.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_scaled(&f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Q);
    type IntoIter = btree_map::Iter<'a, K, Q>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: Self) -> LinComb<K> {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl<K: Ord + Clone + std::fmt::Debug> std::fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut a = LinComb::term("x", Q::from_int(2));
        a.add_term("x", Q::from_int(-2));
        assert!(a.is_zero());
        assert_eq!(a, LinComb::zero());
    }

    #[test]
    fn arithmetic() {
        let a: LinComb<u8> = [(1, Q::one()), (2, Q::new(1, 2))].into_iter().collect();
        let b = LinComb::term(2u8, Q::new(1, 2));
        let d = &a - &b;
        assert_eq!(d, LinComb::basis(1));
        assert_eq!((&a + &(-&a)).len(), 0);
        assert_eq!(a.scale(&Q::from_int(2)).coeff(&2), Q::one());
    }
}
