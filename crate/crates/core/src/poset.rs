//! Finite posets as models of specialization posets, their subdivisions and
//! order complexes.
//!
//! The order `a < b` reads "a is a specialization of b": closed points are
//! minimal, generic points maximal.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::fpgroup::{GroupPresentation, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate cover pair ({0}, {1})")]
    DuplicateCover(String, String),
    #[error("covers imply a cycle through `{0}`")]
    Cycle(String),
    #[error("cover ({lower}, {upper}) is implied by transitivity through `{via}`")]
    RedundantCover {
        lower: String,
        upper: String,
        via: String,
    },
    #[error("the poset is empty")]
    EmptyPoset,
}

/// A finite strict partial order given by its cover relation. The full
/// order is computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    covers: Vec<(usize, usize)>,
    /// `less[a][b]` iff `a < b`.
    less: Vec<Vec<bool>>,
}

/// A nonempty chain, members in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    members: Vec<usize>,
}

impl Chain {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &Chain) -> bool {
        self.members.iter().all(|m| other.members.contains(m))
    }
}

impl FinitePoset {
    /// Builds a poset from element ids and cover pairs `(lower, upper)`.
    /// Rejects cycles and cover pairs implied by other covers.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let ids: Vec<String> = elements.iter().map(|s| String::from(s.as_ref())).collect();
        let index = build_index(&ids)?;
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(String::from(s)))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        FinitePoset::from_cover_indices(ids, &pairs)
    }

    /// Same as [`FinitePoset::from_covers`] with covers given by index.
    pub fn from_cover_indices(ids: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let index = build_index(&ids)?;
        let n = ids.len();
        let mut set = BTreeSet::new();
        for &(a, b) in covers {
            if a == b {
                return Err(PosetError::Cycle(ids[a].clone()));
            }
            if !set.insert((a, b)) {
                return Err(PosetError::DuplicateCover(ids[a].clone(), ids[b].clone()));
            }
        }
        let less = transitive_closure(n, covers);
        if let Some(a) = (0..n).find(|&a| less[a][a]) {
            return Err(PosetError::Cycle(ids[a].clone()));
        }
        for &(a, b) in covers {
            if let Some(c) = (0..n).find(|&c| less[a][c] && less[c][b]) {
                return Err(PosetError::RedundantCover {
                    lower: ids[a].clone(),
                    upper: ids[b].clone(),
                    via: ids[c].clone(),
                });
            }
        }
        let covers = set.into_iter().collect();
        Ok(FinitePoset {
            ids,
            index,
            covers,
            less,
        })
    }

    /// Builds a poset from any set of strict relations `(a, b)` meaning
    /// `a < b`; the cover relation is the transitive reduction.
    pub fn from_relation(ids: Vec<String>, relation: &[(usize, usize)]) -> Result<Self, PosetError> {
        let index = build_index(&ids)?;
        let n = ids.len();
        let less = transitive_closure(n, relation);
        if let Some(a) = (0..n).find(|&a| less[a][a]) {
            return Err(PosetError::Cycle(ids[a].clone()));
        }
        let covers = reduction(&less);
        Ok(FinitePoset {
            ids,
            index,
            covers,
            less,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.less[a][b]))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.less[b][a]))
            .collect()
    }

    /// The maximum, if the poset has one.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le(b, a)))
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le(a, b)))
    }

    /// Every pair has a common upper bound.
    pub fn is_directed(&self) -> Result<bool, PosetError> {
        if self.is_empty() {
            return Err(PosetError::EmptyPoset);
        }
        let n = self.len();
        Ok((0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.le(a, c) && self.le(b, c)))))
    }

    /// Every pair has a common lower bound.
    pub fn is_codirected(&self) -> Result<bool, PosetError> {
        if self.is_empty() {
            return Err(PosetError::EmptyPoset);
        }
        let n = self.len();
        Ok((0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.le(c, a) && self.le(c, b)))))
    }

    /// Classes of the equivalence generated by comparability, each sorted,
    /// ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for b in 0..n {
                    if comp[b] == usize::MAX && (self.less[a][b] || self.less[b][a]) {
                        comp[b] = id;
                        members.push(b);
                        queue.push_back(b);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Every connected component has exactly one minimal element.
    pub fn is_w_local(&self) -> bool {
        let minimal = self.minimal_elements();
        self.connected_components()
            .iter()
            .all(|c| c.iter().filter(|a| minimal.contains(a)).count() == 1)
    }

    /// All nonempty chains, ordered by length, then by members.
    pub fn chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for a in 0..self.len() {
            stack.push(a);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.members.cmp(&y.members)));
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
        out.push(Chain {
            members: stack.clone(),
        });
        let top = *stack.last().unwrap();
        for b in 0..self.len() {
            if self.less[top][b] {
                stack.push(b);
                self.extend_chains(stack, out);
                stack.pop();
            }
        }
    }

    /// Chain from members in any order; `None` unless pairwise comparable
    /// and distinct.
    pub fn chain(&self, members: &[usize]) -> Option<Chain> {
        let mut m = members.to_vec();
        m.sort_by(|&a, &b| {
            if self.lt(a, b) {
                core::cmp::Ordering::Less
            } else if self.lt(b, a) {
                core::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        if m.is_empty() || m.windows(2).any(|w| !self.lt(w[0], w[1])) {
            return None;
        }
        Some(Chain { members: m })
    }

    /// Ascending member ids joined by `<`.
    pub fn chain_key(&self, chain: &Chain) -> String {
        let mut key = String::new();
        for (i, &m) in chain.members.iter().enumerate() {
            if i > 0 {
                key.push('<');
            }
            key.push_str(&self.ids[m]);
        }
        key
    }

    /// Chains keyed by [`FinitePoset::chain_key`].
    pub fn chain_by_key(&self, key: &str) -> Option<Chain> {
        let members = key
            .split('<')
            .map(|id| self.index_of(id))
            .collect::<Option<Vec<_>>>()?;
        let chain = self.chain(&members)?;
        (self.chain_key(&chain) == key).then_some(chain)
    }

    /// Nonempty chains ordered by containment. Element `i` of the result is
    /// `chains()[i]`, with its chain key as id.
    pub fn subdivision(&self) -> FinitePoset {
        let chains = self.chains();
        let ids: Vec<String> = chains.iter().map(|c| self.chain_key(c)).collect();
        let mut covers = Vec::new();
        for (j, big) in chains.iter().enumerate() {
            for (i, small) in chains.iter().enumerate() {
                if small.len() + 1 == big.len() && small.is_subset_of(big) {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        let n = ids.len();
        let less = transitive_closure(n, &covers);
        let index = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        FinitePoset {
            ids,
            index,
            covers,
            less,
        }
    }

    pub fn order_complex(&self) -> OrderComplex {
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for c in self.chains() {
            let d = c.len() - 1;
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(c.members);
        }
        OrderComplex {
            vertex_ids: self.ids.clone(),
            simplices,
        }
    }
}

fn build_index(ids: &[String]) -> Result<BTreeMap<String, usize>, PosetError> {
    let mut index = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(id.clone()));
        }
    }
    Ok(index)
}

fn transitive_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut less = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        less[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if less[i][k] {
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    less
}

fn reduction(less: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = less.len();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if less[a][b] && !(0..n).any(|c| less[a][c] && less[c][b]) {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// The nerve of a poset: one simplex per nonempty chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComplex {
    vertex_ids: Vec<String>,
    /// `simplices[d]` lists the `d`-simplices as ascending vertex lists.
    simplices: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("complex is disconnected: basepoint `{basepoint}` reaches {reached} of {total} vertices")]
    Disconnected {
        basepoint: String,
        reached: usize,
        total: usize,
    },
}

impl OrderComplex {
    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.simplices.get(dim).map_or(&[], |s| s.as_slice())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Edge-path presentation of the fundamental group at `basepoint`: one
    /// generator per edge outside a breadth-first spanning tree (neighbours
    /// in lexicographic id order), one relator per triangle.
    pub fn edge_path_group(&self, basepoint: &str) -> Result<GroupPresentation, ComplexError> {
        let n = self.num_vertices();
        let base = self
            .vertex_ids
            .iter()
            .position(|v| v == basepoint)
            .ok_or_else(|| ComplexError::UnknownVertex(String::from(basepoint)))?;

        let mut neighbours = vec![Vec::new(); n];
        for e in self.simplices(1) {
            neighbours[e[0]].push(e[1]);
            neighbours[e[1]].push(e[0]);
        }
        for list in neighbours.iter_mut() {
            list.sort_by(|&a, &b| self.vertex_ids[a].cmp(&self.vertex_ids[b]));
        }

        let mut seen = vec![false; n];
        let mut tree = BTreeSet::new();
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &neighbours[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    tree.insert((v.min(w), v.max(w)));
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(ComplexError::Disconnected {
                basepoint: String::from(basepoint),
                reached,
                total: n,
            });
        }

        let mut names = Vec::new();
        let mut generator_of = BTreeMap::new();
        // simplices list vertices in poset order, the tree by index order
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        for e in self.simplices(1) {
            let key = key(e[0], e[1]);
            if !tree.contains(&key) {
                generator_of.insert(key, names.len());
                names.push(alloc::format!("[{},{}]", self.vertex_ids[e[0]], self.vertex_ids[e[1]]));
            }
        }
        let edge = |a: usize, b: usize| -> Word {
            generator_of
                .get(&key(a, b))
                .map_or_else(Word::identity, |&g| Word::from_letters([Letter::new(g, false)]))
        };
        let relators = self
            .simplices(2)
            .iter()
            .map(|t| edge(t[0], t[1]).mul(&edge(t[1], t[2])).mul(&edge(t[0], t[2]).inverse()))
            .collect();
        Ok(GroupPresentation::new(names, relators).expect("edge names are distinct"))
    }
}
