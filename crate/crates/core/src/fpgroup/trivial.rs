//! Tri-state triviality checks with re-checkable evidence.

use alloc::vec;
use alloc::vec::Vec;

use super::coset::todd_coxeter;
use super::presentation::GroupPresentation;
use super::snf::AbelianInvariants;
use super::word::Word;
use super::{abelianization, Effort};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Trivial,
    NonTrivial,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Coset enumeration over the trivial subgroup closed with one coset.
    SingleCoset { max_cosets: usize, total_defined: usize },
    /// Nontrivial abelianization.
    Abelianization(AbelianInvariants),
    /// A transitive action on `degree ≥ 2` points satisfying every relator,
    /// i.e. a surjection onto a nontrivial permutation group. `images[g]` is
    /// the permutation of generator `g`.
    PermutationAction { degree: usize, images: Vec<Vec<u32>> },
    /// Nothing conclusive within the budget.
    BudgetExhausted { max_cosets: usize, max_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl TrivialityCertificate {
    /// Re-checks the evidence against `g` independently of how it was found.
    pub fn recheck(&self, g: &GroupPresentation) -> bool {
        match (&self.verdict, &self.evidence) {
            (Verdict::Trivial, Evidence::SingleCoset { max_cosets, .. }) => {
                todd_coxeter(g, &[], *max_cosets).is_ok_and(|t| t.index() == 1)
            }
            (Verdict::NonTrivial, Evidence::Abelianization(a)) => {
                !a.is_trivial() && abelianization(g) == *a
            }
            (Verdict::NonTrivial, Evidence::PermutationAction { degree, images }) => {
                *degree >= 2 && action_is_valid(g, *degree, images) && action_is_nontrivial(images)
            }
            (Verdict::Unknown, Evidence::BudgetExhausted { .. }) => true,
            _ => false,
        }
    }
}

fn apply_word(images: &[Vec<u32>], point: usize, w: &Word) -> usize {
    w.letters().iter().fold(point, |p, l| {
        let perm = &images[l.generator];
        if l.inverse {
            perm.iter().position(|&q| q as usize == p).unwrap()
        } else {
            perm[p] as usize
        }
    })
}

fn action_is_valid(g: &GroupPresentation, degree: usize, images: &[Vec<u32>]) -> bool {
    if images.len() != g.num_generators() {
        return false;
    }
    for perm in images {
        if perm.len() != degree {
            return false;
        }
        let mut seen = vec![false; degree];
        for &q in perm {
            if q as usize >= degree || core::mem::replace(&mut seen[q as usize], true) {
                return false;
            }
        }
    }
    g.relators()
        .iter()
        .all(|r| (0..degree).all(|p| apply_word(images, p, r) == p))
}

fn action_is_nontrivial(images: &[Vec<u32>]) -> bool {
    images
        .iter()
        .any(|perm| perm.iter().enumerate().any(|(i, &q)| q as usize != i))
}

/// Decides triviality where the budget allows, with evidence either way.
///
/// Tries, in order: a nontrivial abelianization; a coset enumeration over
/// the trivial subgroup; a search for a transitive action of degree
/// `2..=effort.max_degree`.
pub fn is_trivial(g: &GroupPresentation, effort: &Effort) -> TrivialityCertificate {
    let ab = abelianization(g);
    if !ab.is_trivial() {
        return TrivialityCertificate {
            verdict: Verdict::NonTrivial,
            evidence: Evidence::Abelianization(ab),
        };
    }
    if let Ok(table) = todd_coxeter(g, &[], effort.max_cosets) {
        if table.index() == 1 {
            return TrivialityCertificate {
                verdict: Verdict::Trivial,
                evidence: Evidence::SingleCoset {
                    max_cosets: effort.max_cosets,
                    total_defined: table.total_defined,
                },
            };
        }
        let images = (0..g.num_generators()).map(|i| table.permutation(i)).collect();
        return TrivialityCertificate {
            verdict: Verdict::NonTrivial,
            evidence: Evidence::PermutationAction {
                degree: table.index(),
                images,
            },
        };
    }
    if let Some(images) = find_transitive_action(g, effort.max_degree, effort.search_nodes) {
        return TrivialityCertificate {
            verdict: Verdict::NonTrivial,
            evidence: Evidence::PermutationAction {
                degree: images.first().map_or(0, Vec::len),
                images,
            },
        };
    }
    TrivialityCertificate {
        verdict: Verdict::Unknown,
        evidence: Evidence::BudgetExhausted {
            max_cosets: effort.max_cosets,
            max_degree: effort.max_degree,
        },
    }
}

const NONE: u32 = u32::MAX;

/// Searches for a transitive action of `g` on `2..=max_degree` points by
/// backtracking over partial coset tables (the low-index procedure without
/// canonicity pruning). Stops after `node_budget` search nodes.
pub fn find_transitive_action(
    g: &GroupPresentation,
    max_degree: usize,
    node_budget: usize,
) -> Option<Vec<Vec<u32>>> {
    let ngens = g.num_generators();
    if ngens == 0 || max_degree < 2 {
        return None;
    }
    let relators: Vec<Vec<usize>> = g
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    let mut search = ActionSearch {
        cols: 2 * ngens,
        max_degree: 2,
        relators,
        nodes: 0,
        node_budget,
    };
    // smallest degree first
    for degree in 2..=max_degree {
        search.max_degree = degree;
        let table = vec![NONE; degree * 2 * ngens];
        if let Some((found, used)) = search.dfs(table, 1) {
            return Some(
                (0..ngens)
                    .map(|gen| (0..used).map(|p| found[p * search.cols + 2 * gen]).collect())
                    .collect(),
            );
        }
        if search.nodes > search.node_budget {
            return None;
        }
    }
    None
}

struct ActionSearch {
    cols: usize,
    max_degree: usize,
    relators: Vec<Vec<usize>>,
    nodes: usize,
    node_budget: usize,
}

impl ActionSearch {
    fn dfs(&mut self, table: Vec<u32>, used: usize) -> Option<(Vec<u32>, usize)> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return None;
        }
        let cols = self.cols;
        let gap = (0..used * cols).find(|&i| table[i] == NONE);
        let Some(gap) = gap else {
            return (used >= 2).then_some((table, used));
        };
        let (p, c) = (gap / cols, gap % cols);
        let limit = (used + 1).min(self.max_degree);
        for q in 0..limit {
            if table[q * cols + (c ^ 1)] != NONE {
                continue;
            }
            let mut t = table.clone();
            t[p * cols + c] = q as u32;
            t[q * cols + (c ^ 1)] = p as u32;
            let new_used = used.max(q + 1);
            if self.propagate(&mut t, new_used) {
                if let Some(found) = self.dfs(t, new_used) {
                    return Some(found);
                }
            }
            if self.nodes > self.node_budget {
                return None;
            }
        }
        None
    }

    /// Scans every relator from every point, filling single gaps. Returns
    /// false on a contradiction.
    fn propagate(&self, t: &mut [u32], used: usize) -> bool {
        let cols = self.cols;
        loop {
            let mut progress = false;
            for p in 0..used {
                for r in &self.relators {
                    if r.is_empty() {
                        continue;
                    }
                    let (mut f, mut i) = (p as u32, 0usize);
                    while i < r.len() && t[f as usize * cols + r[i]] != NONE {
                        f = t[f as usize * cols + r[i]];
                        i += 1;
                    }
                    if i == r.len() {
                        if f as usize != p {
                            return false;
                        }
                        continue;
                    }
                    let (mut b, mut j) = (p as u32, r.len());
                    while j > i && t[b as usize * cols + (r[j - 1] ^ 1)] != NONE {
                        b = t[b as usize * cols + (r[j - 1] ^ 1)];
                        j -= 1;
                    }
                    if j == i + 1 {
                        let col = r[i];
                        let fwd = f as usize * cols + col;
                        let back = b as usize * cols + (col ^ 1);
                        if t[back] != NONE {
                            return false;
                        }
                        t[fwd] = b;
                        t[back] = f;
                        progress = true;
                    }
                }
            }
            if !progress {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_of_order_two_is_nontrivial() {
        let g = GroupPresentation::parse(&["a"], &["a^2"]).unwrap();
        let c = is_trivial(&g, &Effort::default());
        assert_eq!(c.verdict, Verdict::NonTrivial);
        assert_eq!(c.evidence, Evidence::Abelianization(AbelianInvariants::from_u64(&[2]).unwrap()));
        assert!(c.recheck(&g));
    }

    #[test]
    fn killed_generator_is_trivial() {
        let g = GroupPresentation::parse(&["a"], &["a"]).unwrap();
        let c = is_trivial(&g, &Effort::default());
        assert_eq!(c.verdict, Verdict::Trivial);
        assert!(c.recheck(&g));
    }

    #[test]
    fn perfect_but_trivial() {
        let g = GroupPresentation::parse(&["a", "b"], &["b*a*b^-1*a^-2", "a*b*a^-1*b^-2"]).unwrap();
        assert!(abelianization(&g).is_trivial());
        let c = is_trivial(&g, &Effort::default());
        assert_eq!(c.verdict, Verdict::Trivial);
        assert!(c.recheck(&g));
    }

    #[test]
    fn perfect_nontrivial_via_enumeration() {
        // A5 = <a,b | a^2, b^3, (ab)^5>, perfect
        let g = GroupPresentation::parse(&["a", "b"], &["a^2", "b^3", "(a*b)^5"]).unwrap();
        let c = is_trivial(&g, &Effort::default());
        assert_eq!(c.verdict, Verdict::NonTrivial);
        assert!(matches!(c.evidence, Evidence::PermutationAction { degree: 60, .. }));
        assert!(c.recheck(&g));
    }

    #[test]
    fn perfect_nontrivial_via_action_search() {
        // A5 again with an enumeration budget too small to finish
        let g = GroupPresentation::parse(&["a", "b"], &["a^2", "b^3", "(a*b)^5"]).unwrap();
        let effort = Effort {
            max_cosets: 20,
            ..Effort::default()
        };
        let c = is_trivial(&g, &effort);
        assert_eq!(c.verdict, Verdict::NonTrivial);
        let Evidence::PermutationAction { degree, .. } = c.evidence else {
            panic!("expected an action");
        };
        assert_eq!(degree, 5);
        assert!(c.recheck(&g));
    }

    #[test]
    fn infinite_perfect_group_may_be_unknown() {
        // <a,b | a^2, b^3, (ab)^7> is infinite and perfect; its smallest
        // nontrivial quotient (PSL(2,7)) acts on 7 points
        let g = GroupPresentation::parse(&["a", "b"], &["a^2", "b^3", "(a*b)^7"]).unwrap();
        let effort = Effort {
            max_cosets: 500,
            ..Effort::default()
        };
        let c = is_trivial(&g, &effort);
        assert_eq!(c.verdict, Verdict::Unknown);
        let effort = Effort {
            max_cosets: 500,
            max_degree: 7,
            ..Effort::default()
        };
        let c = is_trivial(&g, &effort);
        assert_eq!(c.verdict, Verdict::NonTrivial);
        assert!(c.recheck(&g));
    }

    #[test]
    fn forged_evidence_fails_recheck() {
        let g = GroupPresentation::parse(&["a"], &["a^3"]).unwrap();
        let forged = TrivialityCertificate {
            verdict: Verdict::NonTrivial,
            evidence: Evidence::PermutationAction {
                degree: 2,
                images: vec![vec![1, 0]],
            },
        };
        assert!(!forged.recheck(&g));
    }
}
