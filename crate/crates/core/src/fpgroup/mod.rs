//! Finitely presented groups.
//!
//! Everything here works on explicit presentations. The word problem is
//! undecidable in general, so any claim about equality of elements is backed
//! by a completed coset enumeration or reported as unverified.

mod colimit;
mod coset;
mod hom;
mod parse;
mod presentation;
mod snf;
mod tietze;
mod trivial;
mod word;

use alloc::string::String;
use alloc::vec::Vec;

pub use colimit::{colimit, colimit_with_basepoint, Colimit, CommutativityReport, DiagramError, GroupDiagram, Orientation};
pub use coset::{todd_coxeter, CosetTable, Overflow};
pub use hom::{GroupHom, HomError, HomStatus};
pub use parse::{parse_word, ParseError};
pub use presentation::GroupPresentation;
pub use snf::{invariants_of_i64_relations, invariants_of_relations, smith_diagonal, AbelianInvariants};
pub use tietze::{tietze_simplify, tietze_simplify_tracked, TietzeResult};
pub use trivial::{find_transitive_action, is_trivial, Evidence, TrivialityCertificate, Verdict};
pub use word::{Letter, Word, WordDisplay};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {relator} references generator index {generator} out of range")]
    InvalidGenerator { relator: usize, generator: usize },
    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
}

/// Explicit effort budgets for semi-decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Effort {
    /// Maximum number of coset-table rows.
    pub max_cosets: usize,
    /// Largest permutation degree tried when searching for a nontrivial
    /// finite quotient.
    pub max_degree: usize,
    /// Node budget of that search.
    pub search_nodes: usize,
    pub tietze_passes: usize,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            max_cosets: 100_000,
            max_degree: 6,
            search_nodes: 200_000,
            tietze_passes: 10,
        }
    }
}

/// `G * H`. Names are kept when they do not collide; otherwise every name
/// gets the suffix `@0` (from `G`) or `@1` (from `H`).
pub fn free_product(g: &GroupPresentation, h: &GroupPresentation) -> GroupPresentation {
    let collide = g.generators().iter().any(|n| h.generators().contains(n));
    let mut names: Vec<String> = Vec::new();
    let suffix = |n: &String, s: &str| -> String {
        if collide {
            alloc::format!("{}@{}", n, s)
        } else {
            n.clone()
        }
    };
    names.extend(g.generators().iter().map(|n| suffix(n, "0")));
    names.extend(h.generators().iter().map(|n| suffix(n, "1")));
    let shift = g.num_generators();
    let mut relators = g.relators().to_vec();
    relators.extend(h.relators().iter().map(|r| {
        Word::from_letters(
            r.letters()
                .iter()
                .map(|l| Letter::new(l.generator + shift, l.inverse)),
        )
    }));
    GroupPresentation::from_parts_unchecked(names, relators)
}

/// `G / ⟨⟨words⟩⟩`: the presentation of `G` extended by `words`.
pub fn quotient_by_normal_closure(
    g: &GroupPresentation,
    words: &[Word],
) -> Result<GroupPresentation, GroupError> {
    g.with_relators(words)
}

/// Invariant factors of the abelianization, via Smith normal form of the
/// exponent-sum matrix.
pub fn abelianization(g: &GroupPresentation) -> AbelianInvariants {
    let n = g.num_generators();
    let rows: Vec<Vec<i64>> = g.relators().iter().map(|r| r.exponent_sums(n)).collect();
    invariants_of_i64_relations(&rows, n)
}

/// Order of the group if a coset enumeration over the trivial subgroup
/// completes within `max_cosets`.
pub fn order(g: &GroupPresentation, max_cosets: usize) -> Result<usize, Overflow> {
    todd_coxeter(g, &[], max_cosets).map(|t| t.index())
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;
    use alloc::vec;

    fn s3() -> GroupPresentation {
        GroupPresentation::parse(&["s", "t"], &["s^2", "t^3", "(s*t)^2"]).unwrap()
    }

    #[test]
    fn free_product_of_cyclics() {
        let a = GroupPresentation::parse(&["a"], &["a^2"]).unwrap();
        let b = GroupPresentation::parse(&["b"], &["b^3"]).unwrap();
        let p = free_product(&a, &b);
        assert_eq!(p.generators(), &["a".to_string(), "b".to_string()]);
        assert_eq!(abelianization(&p).to_u64().unwrap(), vec![6]);
    }

    #[test]
    fn free_product_with_trivial() {
        let g = s3();
        assert_eq!(free_product(&g, &GroupPresentation::trivial()), g);
        let t = free_product(&GroupPresentation::trivial(), &GroupPresentation::trivial());
        assert_eq!(t.num_generators(), 0);
    }

    #[test]
    fn free_product_renames_on_collision() {
        let g = s3();
        let p = free_product(&g, &g);
        assert_eq!(p.generators()[2], "s@1");
        assert_eq!(p.num_generators(), 4);
    }

    #[test]
    fn quotient_of_s3_by_transposition_is_trivial() {
        let g = s3();
        let s = g.word("s").unwrap();
        let q = quotient_by_normal_closure(&g, &[s]).unwrap();
        assert_eq!(order(&q, 1000).unwrap(), 1);
        assert_eq!(quotient_by_normal_closure(&g, &[]).unwrap(), g);
    }

    #[test]
    fn commutator_quotient_of_free_group() {
        let f = GroupPresentation::free(vec!["a".into(), "b".into()]).unwrap();
        let c = f.word("a*b*a^-1*b^-1").unwrap();
        let q = quotient_by_normal_closure(&f, &[c]).unwrap();
        assert_eq!(abelianization(&q).to_u64().unwrap(), vec![0, 0]);
    }

    #[test]
    fn abelianization_examples() {
        let c5 = GroupPresentation::parse(&["a"], &["a^5"]).unwrap();
        assert_eq!(abelianization(&c5).to_u64().unwrap(), vec![5]);
        let f2 = GroupPresentation::free(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(abelianization(&f2).to_u64().unwrap(), vec![0, 0]);
        assert_eq!(abelianization(&s3()).to_u64().unwrap(), vec![2]);
    }
}
