use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::coset::{todd_coxeter, CosetTable, Overflow};
use super::presentation::GroupPresentation;
use super::word::Word;
use super::{Effort, GroupError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomStatus {
    /// Every source relator maps to the identity of the target.
    Verified,
    Unverified,
}

/// A map of presentations given by generator images. It is a homomorphism
/// only once its status is [`HomStatus::Verified`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: GroupPresentation,
    target: GroupPresentation,
    images: Vec<Word>,
    status: HomStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("not a homomorphism: relator {relator} does not map to the identity")]
    NotAHomomorphism { index: usize, relator: String },
    #[error("verification budget exhausted: {0}")]
    BudgetExhausted(Overflow),
}

impl GroupHom {
    /// An unverified map. Every image must be a word over the target.
    pub fn new(
        source: GroupPresentation,
        target: GroupPresentation,
        images: Vec<Word>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.num_generators() {
            return Err(GroupError::ArityMismatch {
                expected: source.num_generators(),
                found: images.len(),
            });
        }
        for (i, w) in images.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= target.num_generators()) {
                return Err(GroupError::InvalidGenerator {
                    relator: i,
                    generator: w.max_generator().unwrap(),
                });
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
            status: HomStatus::Unverified,
        })
    }

    /// Map given by `(source generator, target word)` pairs in the relator
    /// grammar. Every source generator must be listed exactly once.
    pub fn from_named(
        source: GroupPresentation,
        target: GroupPresentation,
        pairs: &[(&str, &str)],
    ) -> Result<Self, GroupError> {
        let mut images: Vec<Option<Word>> = alloc::vec![None; source.num_generators()];
        for (g, w) in pairs {
            let i = source
                .generator_index(g)
                .ok_or_else(|| GroupError::UnknownGenerator(String::from(*g)))?;
            images[i] = Some(target.word(w)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| GroupError::UnknownGenerator(source.generators()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        GroupHom::new(source, target, images)
    }

    /// Generators sent to the same-named generators of the target.
    pub fn identity_on_names(
        source: GroupPresentation,
        target: GroupPresentation,
    ) -> Result<Self, GroupError> {
        let images = source
            .generators()
            .iter()
            .map(|n| {
                target
                    .generator_index(n)
                    .map(Word::generator)
                    .ok_or_else(|| GroupError::UnknownGenerator(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupHom::new(source, target, images)
    }

    pub fn source(&self) -> &GroupPresentation {
        &self.source
    }

    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn status(&self) -> HomStatus {
        self.status
    }

    pub fn is_verified(&self) -> bool {
        self.status == HomStatus::Verified
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        let images = self.images.iter().map(|w| other.apply(w)).collect();
        let status = if self.is_verified() && other.is_verified() {
            HomStatus::Verified
        } else {
            HomStatus::Unverified
        };
        GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            status,
        }
    }

    /// Source relators whose images are not evidently trivial, i.e. neither
    /// freely trivial nor a cyclic conjugate of a target relator or its
    /// inverse.
    fn nonobvious_relators(&self) -> Vec<(usize, Word)> {
        let known: BTreeSet<Word> = self
            .target
            .relators()
            .iter()
            .map(Word::cyclic_canonical)
            .collect();
        self.source
            .relators()
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let img = self.apply(r).cyclically_reduced();
                if img.is_empty() || known.contains(&img.cyclic_canonical()) {
                    None
                } else {
                    Some((i, img))
                }
            })
            .collect()
    }

    /// Verifies against a completed coset table of the target over the
    /// trivial subgroup (a faithful permutation representation).
    pub fn verify_with_table(&self, table: &CosetTable) -> Result<GroupHom, HomError> {
        for (i, img) in self.nonobvious_relators() {
            if !table.acts_trivially(&img) {
                return Err(self.failure(i));
            }
        }
        Ok(self.clone().mark_verified())
    }

    /// Checks every source relator. Relators whose images are evidently
    /// trivial need no enumeration, so maps into infinite targets can still
    /// be verified.
    pub fn verify(&self, effort: &Effort) -> Result<GroupHom, HomError> {
        let pending = self.nonobvious_relators();
        if pending.is_empty() {
            return Ok(self.clone().mark_verified());
        }
        let table = todd_coxeter(&self.target, &[], effort.max_cosets).map_err(HomError::BudgetExhausted)?;
        for (i, img) in pending {
            if !table.acts_trivially(&img) {
                return Err(self.failure(i));
            }
        }
        Ok(self.clone().mark_verified())
    }

    fn failure(&self, index: usize) -> HomError {
        HomError::NotAHomomorphism {
            index,
            relator: alloc::format!("{}", self.source.relators()[index].display(self.source.generators())),
        }
    }

    fn mark_verified(mut self) -> Self {
        self.status = HomStatus::Verified;
        self
    }
}
