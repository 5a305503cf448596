//! Small concrete permutation groups, enumerated element by element.
//!
//! These act as ground truth for the presentation machinery: orders, normal
//! closures and words are computed by brute force in the group itself.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::fpgroup::{GroupPresentation, Letter, Word};

/// Images of `0..degree`.
pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `a` then `b`, matching the left-to-right reading of words.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = alloc::vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// `x ↦ g⁻¹ x g`.
pub fn conjugate(x: &[u32], g: &[u32]) -> Perm {
    compose(&compose(&inverse(g), x), g)
}

/// A permutation group together with its full element list. Element `0` is
/// the identity and elements appear in breadth-first order over the
/// generators, each with a shortest word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    words: Vec<Word>,
    index: BTreeMap<Perm, usize>,
}

impl PermGroup {
    /// Enumerates the group generated by `generators`. Returns `None` when
    /// it has more than `max_order` elements.
    pub fn generate(degree: usize, generators: Vec<Perm>, max_order: usize) -> Option<PermGroup> {
        let id = identity(degree);
        let mut elements = alloc::vec![id.clone()];
        let mut words = alloc::vec![Word::identity()];
        let mut index = BTreeMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (g, gen) in generators.iter().enumerate() {
                let next = compose(&elements[e], gen);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() == max_order {
                    return None;
                }
                let mut w = words[e].clone();
                w.push(Letter::new(g, false));
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        Some(PermGroup {
            degree,
            generators,
            elements,
            words,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.index.contains_key(p)
    }

    /// A shortest word over the generators representing `p`.
    pub fn word_of(&self, p: &[u32]) -> Option<&Word> {
        self.index.get(p).map(|&i| &self.words[i])
    }

    /// The element represented by a word over the generators.
    pub fn evaluate(&self, w: &Word) -> Perm {
        w.letters().iter().fold(identity(self.degree), |acc, l| {
            let g = &self.generators[l.generator];
            if l.inverse {
                compose(&acc, &inverse(g))
            } else {
                compose(&acc, g)
            }
        })
    }

    /// Presentation read off the Cayley graph: for every element `e` and
    /// generator `g`, the relator `w_e · g · w_{eg}⁻¹` unless it is freely
    /// trivial.
    pub fn presentation(&self, names: Vec<String>) -> GroupPresentation {
        let mut relators = Vec::new();
        for (e, w) in self.words.iter().enumerate() {
            for (g, gen) in self.generators.iter().enumerate() {
                let target = self.index[&compose(&self.elements[e], gen)];
                let mut r = w.clone();
                r.push(Letter::new(g, false));
                let r = r.mul(&self.words[target].inverse());
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        GroupPresentation::new(names, relators).expect("one name per generator")
    }

    /// Smallest normal subgroup containing `elements`: the conjugates of
    /// `elements` by every group element, closed under products by
    /// fixed-point iteration.
    pub fn normal_closure(&self, elements: &[Perm]) -> BTreeSet<Perm> {
        let mut closure: BTreeSet<Perm> = BTreeSet::from([identity(self.degree)]);
        let mut conjugates: BTreeSet<Perm> = BTreeSet::new();
        for x in elements {
            for g in &self.elements {
                conjugates.insert(conjugate(x, g));
            }
        }
        closure.extend(conjugates.iter().cloned());
        loop {
            let mut fresh = Vec::new();
            for a in &closure {
                for c in &conjugates {
                    let p = compose(a, c);
                    if !closure.contains(&p) {
                        fresh.push(p);
                    }
                }
            }
            if fresh.is_empty() {
                return closure;
            }
            closure.extend(fresh);
        }
    }
}
