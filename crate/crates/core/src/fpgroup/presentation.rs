use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::word::Word;
use super::GroupError;

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relators are kept freely reduced; empty relators are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = BTreeSet::new();
        for name in &generators {
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(GroupError::InvalidGenerator {
                        relator: i,
                        generator: g,
                    });
                }
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation from generator names and relators in the
    /// relator grammar (see [`super::parse_word`]).
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let names: Vec<String> = generators.iter().map(|s| String::from(*s)).collect();
        let mut words = Vec::with_capacity(relators.len());
        for r in relators {
            words.push(super::parse_word(r, &names)?);
        }
        GroupPresentation::new(names, words)
    }

    pub fn trivial() -> Self {
        GroupPresentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Free group on the given names.
    pub fn free(generators: Vec<String>) -> Result<Self, GroupError> {
        GroupPresentation::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word, GroupError> {
        Ok(super::parse_word(text, &self.generators)?)
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Same group, generators renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.generators.len() {
            return Err(GroupError::ArityMismatch {
                expected: self.generators.len(),
                found: names.len(),
            });
        }
        GroupPresentation::new(names, self.relators.clone())
    }

    /// Adds relators without revalidating the existing ones.
    pub fn with_relators(&self, extra: &[Word]) -> Result<Self, GroupError> {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().cloned());
        GroupPresentation::new(self.generators.clone(), relators)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<String>, relators: Vec<Word>) -> Self {
        debug_assert!(GroupPresentation::new(generators.clone(), relators.clone()).is_ok());
        GroupPresentation {
            generators,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(g)?;
        }
        f.write_str(" | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(" >")
    }
}
