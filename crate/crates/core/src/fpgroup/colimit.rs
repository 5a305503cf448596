//! Diagrams of groups indexed by finite posets and their colimits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::coset::{todd_coxeter, CosetTable};
use super::hom::GroupHom;
use super::presentation::GroupPresentation;
use super::word::{Letter, Word};
use super::Effort;
use crate::poset::FinitePoset;

/// Direction of the arrow attached to a cover pair `a ⋖ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `a → b`.
    Covariant,
    /// `b → a`.
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("expected {expected} node groups, found {found}")]
    NodeCount { expected: usize, found: usize },
    #[error("missing edge homomorphism {from} -> {to}")]
    MissingEdgeHom { from: String, to: String },
    #[error("({lower}, {upper}) is not a cover pair of the index")]
    NotACover { lower: String, upper: String },
    #[error("edge homomorphism {from} -> {to} does not match the node groups")]
    EndpointMismatch { from: String, to: String },
}

/// A functor from a finite poset (or its opposite) to presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDiagram {
    index: FinitePoset,
    orientation: Orientation,
    nodes: Vec<GroupPresentation>,
    /// Keyed by the cover pair `(lower, upper)`.
    edges: BTreeMap<(usize, usize), GroupHom>,
}

/// Result of [`GroupDiagram::check_commutativity`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommutativityReport {
    /// Pairs `(from, to)` joined by at least two arrow paths.
    pub checked: Vec<(String, String)>,
    /// Pairs whose composites provably differ.
    pub failures: Vec<(String, String)>,
    /// Pairs whose target could not be enumerated within budget.
    pub unverified: Vec<(String, String)>,
}

/// A colimit presentation together with the cocone on generators: generator
/// `j` of node `i` is generator `offsets[i] + j` of the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    pub presentation: GroupPresentation,
    pub offsets: Vec<usize>,
}

impl Colimit {
    /// Image of a word over node `i` in the colimit.
    pub fn cocone(&self, node: usize, w: &Word) -> Word {
        let shift = self.offsets[node];
        Word::from_letters(
            w.letters()
                .iter()
                .map(|l| Letter::new(l.generator + shift, l.inverse)),
        )
    }
}

impl GroupDiagram {
    /// Edge homomorphisms may be missing (reported by [`colimit`]) but must
    /// sit on cover pairs and match the node groups.
    pub fn new(
        index: FinitePoset,
        orientation: Orientation,
        nodes: Vec<GroupPresentation>,
        edges: BTreeMap<(usize, usize), GroupHom>,
    ) -> Result<Self, DiagramError> {
        if nodes.len() != index.len() {
            return Err(DiagramError::NodeCount {
                expected: index.len(),
                found: nodes.len(),
            });
        }
        let d = GroupDiagram {
            index,
            orientation,
            nodes,
            edges,
        };
        for (&(lo, hi), hom) in &d.edges {
            if d.index.covers().binary_search(&(lo, hi)).is_err() {
                return Err(DiagramError::NotACover {
                    lower: String::from(d.index.id(lo)),
                    upper: String::from(d.index.id(hi)),
                });
            }
            let (from, to) = d.arrow(lo, hi);
            if hom.source() != &d.nodes[from] || hom.target() != &d.nodes[to] {
                return Err(DiagramError::EndpointMismatch {
                    from: String::from(d.index.id(from)),
                    to: String::from(d.index.id(to)),
                });
            }
        }
        Ok(d)
    }

    pub fn index(&self) -> &FinitePoset {
        &self.index
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn nodes(&self) -> &[GroupPresentation] {
        &self.nodes
    }

    pub fn edge(&self, lower: usize, upper: usize) -> Option<&GroupHom> {
        self.edges.get(&(lower, upper))
    }

    /// `(from, to)` of the arrow on the cover pair `lower ⋖ upper`.
    pub fn arrow(&self, lower: usize, upper: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Covariant => (lower, upper),
            Orientation::Contravariant => (upper, lower),
        }
    }

    pub fn missing_edges(&self) -> Vec<(usize, usize)> {
        self.index
            .covers()
            .iter()
            .filter(|c| !self.edges.contains_key(c))
            .copied()
            .collect()
    }

    /// Outgoing arrows `(to, hom)` of each node.
    fn out_arrows(&self) -> Vec<Vec<(usize, &GroupHom)>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (&(lo, hi), hom) in &self.edges {
            let (from, to) = self.arrow(lo, hi);
            out[from].push((to, hom));
        }
        out
    }

    /// Nodes in an order where every arrow goes forward.
    fn arrow_order(&self) -> Vec<usize> {
        let n = self.index.len();
        let mut order: Vec<usize> = (0..n).collect();
        // number of elements strictly below is a linear extension
        let height = |a: usize| (0..n).filter(|&b| self.index.lt(b, a)).count();
        order.sort_by_key(|&a| (height(a), a));
        if self.orientation == Orientation::Contravariant {
            order.reverse();
        }
        order
    }

    /// Checks that composites along different arrow paths between the same
    /// endpoints agree on generators. Equality is decided in a faithful
    /// permutation representation of the target; targets whose enumeration
    /// overflows are reported as unverified.
    pub fn check_commutativity(&self, effort: &Effort) -> CommutativityReport {
        let n = self.nodes.len();
        let out = self.out_arrows();
        let order = self.arrow_order();
        let position: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &a) in order.iter().enumerate() {
                p[a] = i;
            }
            p
        };
        let mut tables: Vec<Option<Option<CosetTable>>> = vec![None; n];
        let mut report = CommutativityReport::default();
        let mut failures = BTreeSet::new();
        let mut unverified = BTreeSet::new();

        for &s in &order {
            // composite images of s's generators at every reachable node
            let mut comp: Vec<Option<Vec<Word>>> = vec![None; n];
            let mut paths = vec![0usize; n];
            comp[s] = Some((0..self.nodes[s].num_generators()).map(Word::generator).collect());
            paths[s] = 1;
            for &u in order.iter().skip(position[s]) {
                let Some(images) = comp[u].clone() else {
                    continue;
                };
                for &(t, hom) in &out[u] {
                    let candidate: Vec<Word> = images.iter().map(|w| hom.apply(w)).collect();
                    paths[t] += paths[u];
                    match &comp[t] {
                        None => comp[t] = Some(candidate),
                        Some(existing) => {
                            let table = tables[t]
                                .get_or_insert_with(|| todd_coxeter(&self.nodes[t], &[], effort.max_cosets).ok());
                            match table {
                                None => {
                                    unverified.insert(self.pair(s, t));
                                }
                                Some(table) => {
                                    let same = existing
                                        .iter()
                                        .zip(&candidate)
                                        .all(|(a, b)| table.acts_trivially(&a.mul(&b.inverse())));
                                    if !same {
                                        failures.insert(self.pair(s, t));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for t in 0..n {
                if t != s && paths[t] >= 2 {
                    report.checked.push(self.pair(s, t));
                }
            }
        }
        report.failures = failures.into_iter().collect();
        report.unverified = unverified.into_iter().collect();
        report
    }

    fn pair(&self, a: usize, b: usize) -> (String, String) {
        (String::from(self.index.id(a)), String::from(self.index.id(b)))
    }
}

/// Colimit presentation: generators of every node (renamed `name@node`),
/// all node relators, and `g · φ(g)⁻¹` for every edge hom `φ` and generator
/// `g` of its source.
pub fn colimit(d: &GroupDiagram) -> Result<GroupPresentation, DiagramError> {
    colimit_with_basepoint(d, None).map(|c| c.presentation)
}

/// As [`colimit`], with the basepoint node's generators listed first and
/// keeping their original names.
pub fn colimit_with_basepoint(d: &GroupDiagram, basepoint: Option<usize>) -> Result<Colimit, DiagramError> {
    if let Some(&(lo, hi)) = d.missing_edges().first() {
        let (from, to) = d.arrow(lo, hi);
        return Err(DiagramError::MissingEdgeHom {
            from: String::from(d.index.id(from)),
            to: String::from(d.index.id(to)),
        });
    }
    let n = d.nodes.len();
    let mut node_order: Vec<usize> = Vec::with_capacity(n);
    node_order.extend(basepoint);
    node_order.extend((0..n).filter(|&i| Some(i) != basepoint));

    let mut offsets = vec![0; n];
    let mut names: Vec<String> = Vec::new();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for &i in &node_order {
        offsets[i] = names.len();
        for g in d.nodes[i].generators() {
            let mut name = if Some(i) == basepoint {
                g.clone()
            } else {
                alloc::format!("{}@{}", g, d.index.id(i))
            };
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            names.push(name);
        }
    }
    let colim = Colimit {
        presentation: GroupPresentation::trivial(),
        offsets,
    };

    let mut relators = Vec::new();
    for &i in &node_order {
        relators.extend(d.nodes[i].relators().iter().map(|r| colim.cocone(i, r)));
    }
    for (&(lo, hi), hom) in &d.edges {
        let (from, to) = d.arrow(lo, hi);
        for (g, img) in hom.images().iter().enumerate() {
            let lhs = colim.cocone(from, &Word::generator(g));
            let rhs = colim.cocone(to, img);
            relators.push(lhs.mul(&rhs.inverse()));
        }
    }
    Ok(Colimit {
        presentation: GroupPresentation::from_parts_unchecked(names, relators),
        offsets: colim.offsets,
    })
}
