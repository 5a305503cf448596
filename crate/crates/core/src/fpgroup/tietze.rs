//! Tietze simplification.
//!
//! Each pass cyclically reduces relators, drops duplicates up to rotation and
//! inversion, then walks the generators from the highest index down and
//! eliminates every generator that occurs exactly once in some relator,
//! substituting its expression everywhere. Low-index generators are therefore
//! the ones that survive; callers that care about names order them first.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::presentation::GroupPresentation;
use super::word::{Letter, Word};

/// Output of [`tietze_simplify_tracked`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeResult {
    pub presentation: GroupPresentation,
    /// Image of each original generator as a word in the new generators.
    pub forward: Vec<Word>,
    /// New generator `i` is original generator `kept[i]`.
    pub kept: Vec<usize>,
}

impl TietzeResult {
    /// Image of each new generator as a word in the original generators.
    pub fn backward(&self) -> Vec<Word> {
        self.kept.iter().map(|&g| Word::generator(g)).collect()
    }
}

pub fn tietze_simplify(g: &GroupPresentation, passes: usize) -> GroupPresentation {
    tietze_simplify_tracked(g, passes).presentation
}

pub fn tietze_simplify_tracked(g: &GroupPresentation, passes: usize) -> TietzeResult {
    let n = g.num_generators();
    let mut relators: Vec<Word> = g.relators().to_vec();
    let mut alive = alloc::vec![true; n];
    let mut forward: Vec<Word> = (0..n).map(Word::generator).collect();
    let budget = 4 * g.total_relator_length() + 256;

    clean(&mut relators);
    for _ in 0..passes {
        let mut changed = false;
        for gen in (0..n).rev() {
            if !alive[gen] {
                continue;
            }
            let Some((ri, expr)) = elimination_candidate(&relators, gen) else {
                continue;
            };
            let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
            images[gen] = expr;
            let substituted: Vec<Word> = relators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, r)| r.substitute(&images).cyclically_reduced())
                .collect();
            if substituted.iter().map(Word::len).sum::<usize>() > budget {
                continue;
            }
            relators = substituted;
            for f in forward.iter_mut() {
                *f = f.substitute(&images);
            }
            alive[gen] = false;
            clean(&mut relators);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut renumber = alloc::vec![usize::MAX; n];
    for (new, &old) in kept.iter().enumerate() {
        renumber[old] = new;
    }
    let rename = |w: &Word| {
        Word::from_letters(
            w.letters()
                .iter()
                .map(|l| Letter::new(renumber[l.generator], l.inverse)),
        )
    };
    let names = kept.iter().map(|&i| g.generators()[i].clone()).collect();
    let relators = relators.iter().map(rename).collect();
    let forward = forward.iter().map(rename).collect();
    TietzeResult {
        presentation: GroupPresentation::from_parts_unchecked(names, relators),
        forward,
        kept,
    }
}

/// Cyclically reduces, drops empty relators and duplicates up to rotation and
/// inversion, keeping first occurrences in order.
fn clean(relators: &mut Vec<Word>) {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(relators.len());
    for r in relators.drain(..) {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.cyclic_canonical()) {
            out.push(r);
        }
    }
    *relators = out;
}

/// Shortest relator (first among equals) in which `gen` occurs exactly once,
/// with the expression for `gen` it yields.
fn elimination_candidate(relators: &[Word], gen: usize) -> Option<(usize, Word)> {
    let (ri, r) = relators
        .iter()
        .enumerate()
        .filter(|(_, r)| r.occurrences(gen) == 1)
        .min_by_key(|(i, r)| (r.len(), *i))?;
    let k = r.letters().iter().position(|l| l.generator == gen).unwrap();
    let rotated = r.rotate(k);
    let head = rotated.letters()[0];
    // rotated = gen^±1 · rest, so gen^±1 = rest⁻¹
    let rest = Word::from_letters(rotated.letters()[1..].iter().copied());
    let expr = if head.inverse { rest } else { rest.inverse() };
    Some((ri, expr))
}
