//! The complete lattice of ideals of a small ring, with interned ids and a
//! precomputed `I + (x)` table. Content ideals and generator-bounded ideal
//! enumeration become table lookups.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::ideal::{principal_set, sum_sets};
use crate::ring::{Code, Ring};

pub struct IdealLattice {
    n: usize,
    ideals: Vec<BitSet>,
    join: Vec<u32>,
}

impl IdealLattice {
    pub fn new(ring: &Ring) -> Self {
        let n = ring.order();
        let principals: Vec<BitSet> = ring.elements().map(|x| principal_set(ring, x)).collect();
        let zero = BitSet::from_iter_with_len(n, [0]);
        let mut ideals = vec![zero.clone()];
        let mut index: HashMap<BitSet, u32> = HashMap::from([(zero, 0)]);
        let mut join: Vec<u32> = Vec::new();
        let mut next = 0;
        while next < ideals.len() {
            let current = ideals[next].clone();
            for x in 0..n {
                let id = if current.contains(x) {
                    next as u32
                } else {
                    let s = sum_sets(ring, &current, &principals[x]);
                    match index.get(&s) {
                        Some(&id) => id,
                        None => {
                            let id = ideals.len() as u32;
                            index.insert(s.clone(), id);
                            ideals.push(s);
                            id
                        }
                    }
                };
                join.push(id);
            }
            next += 1;
        }
        IdealLattice { n, ideals, join }
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[BitSet] {
        &self.ideals
    }

    pub fn set(&self, id: usize) -> &BitSet {
        &self.ideals[id]
    }

    #[inline]
    pub fn join(&self, id: usize, x: Code) -> usize {
        self.join[id * self.n + x as usize] as usize
    }

    #[inline]
    pub fn principal(&self, x: Code) -> usize {
        self.join(0, x)
    }

    #[inline]
    pub fn contains(&self, id: usize, x: Code) -> bool {
        self.ideals[id].contains(x as usize)
    }

    pub fn span(&self, xs: &[Code]) -> usize {
        xs.iter().fold(0, |id, &x| self.join(id, x))
    }

    /// Ids of the ideals generated by at most `k` elements.
    pub fn generated_by_at_most(&self, k: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut level = vec![0usize];
        let mut all = vec![0usize];
        for _ in 0..k {
            let mut next = Vec::new();
            for &id in &level {
                for x in 0..self.n as Code {
                    let j = self.join(id, x);
                    if !seen[j] {
                        seen[j] = true;
                        next.push(j);
                        all.push(j);
                    }
                }
            }
            level = next;
        }
        all.sort_unstable();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Ideal;

    #[test]
    fn z12_has_six_ideals() {
        let r = Ring::zmod(12).unwrap();
        let l = IdealLattice::new(&r);
        assert_eq!(l.len(), 6);
        assert_eq!(l.set(l.span(&[4, 6])), Ideal::span(&r, &[2]).set());
        assert_eq!(l.generated_by_at_most(1).len(), 6);
    }

    #[test]
    fn f2xy_needs_two_generators_for_the_maximal_ideal() {
        let f2 = Ring::zmod(2).unwrap();
        let a = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let b = Ring::poly_quot(&a, "y", &[0, 0, 1]).unwrap();
        let l = IdealLattice::new(&b);
        let m = l.span(&[2, 4]);
        assert!(!l.generated_by_at_most(1).contains(&m));
        assert!(l.generated_by_at_most(2).contains(&m));
    }
}
