//! Todd–Coxeter coset enumeration, HLT strategy with lookahead.
//!
//! Relators are scanned in input order and cosets are processed in creation
//! order, so identical inputs yield identical tables. When the table is full,
//! a lookahead pass scans every live coset under every relator without
//! defining new cosets, processes the resulting deductions and coincidences,
//! then compacts the table. Enumeration overflows only when lookahead frees
//! no rows.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::presentation::GroupPresentation;
use super::word::{Letter, Word};

const UNDEF: u32 = u32::MAX;

/// A completed coset table. Row `c`, column `2g` holds `c·g`; column
/// `2g + 1` holds `c·g⁻¹`. Coset `0` is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetTable {
    num_generators: usize,
    rows: Vec<Vec<u32>>,
    /// Total number of coset definitions made during the enumeration.
    pub total_defined: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("coset enumeration overflowed {max_cosets} cosets ({total_defined} definitions made)")]
pub struct Overflow {
    pub max_cosets: usize,
    pub total_defined: usize,
}

impl CosetTable {
    /// Index of the subgroup, i.e. the number of cosets.
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    #[inline]
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset][letter.column()] as usize
    }

    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters()
            .iter()
            .fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by generator `g`.
    pub fn permutation(&self, g: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[2 * g]).collect()
    }

    /// Permutation of the cosets induced by a word.
    pub fn word_permutation(&self, word: &Word) -> Vec<u32> {
        (0..self.index()).map(|c| self.trace(c, word) as u32).collect()
    }

    /// Whether the word fixes every coset. Over the trivial subgroup the
    /// action is regular, so this decides whether the word is the identity.
    pub fn acts_trivially(&self, word: &Word) -> bool {
        (0..self.index()).all(|c| self.trace(c, word) == c)
    }

    /// For every coset `c`, a word `w` with `0·w = c`, read off a
    /// breadth-first spanning tree (columns in order).
    pub fn schreier_words(&self) -> Vec<Word> {
        let n = self.index();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let base = words[c].clone().unwrap();
            for col in 0..2 * self.num_generators {
                let d = self.rows[c][col] as usize;
                if words[d].is_none() {
                    let mut w = base.clone();
                    w.push(Letter::new(col / 2, col % 2 == 1));
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("coset table is connected")).collect()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in `group`, using at most
/// `max_cosets` rows at any time.
pub fn todd_coxeter(
    group: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, Overflow> {
    let to_cols = |w: &Word| -> Vec<u32> { w.letters().iter().map(|l| l.column() as u32).collect() };
    let relators: Vec<Vec<u32>> = group.relators().iter().map(to_cols).collect();
    let subgroup: Vec<Vec<u32>> = subgroup.iter().map(to_cols).collect();
    let mut e = Enumerator::new(2 * group.num_generators(), max_cosets.max(1));

    let mut alpha = 0usize;
    let mut sub_done = 0usize;
    loop {
        match e.drive(&relators, &subgroup, &mut alpha, &mut sub_done) {
            Ok(()) => {
                if e.is_complete() {
                    break;
                }
                alpha = 0;
            }
            Err(Full) => {
                e.lookahead(&relators);
                if !e.compact(&mut alpha) {
                    return Err(Overflow {
                        max_cosets,
                        total_defined: e.total_defined,
                    });
                }
            }
        }
    }
    e.compact(&mut alpha);
    let cols = e.cols;
    let rows = if cols == 0 {
        vec![Vec::new(); e.len()]
    } else {
        e.table.chunks(cols).map(|r| r.to_vec()).collect()
    };
    Ok(CosetTable {
        num_generators: group.num_generators(),
        rows,
        total_defined: e.total_defined,
    })
}

struct Full;

struct Enumerator {
    cols: usize,
    max_rows: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    total_defined: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cols: usize, max_rows: usize) -> Self {
        Enumerator {
            cols,
            max_rows,
            table: vec![UNDEF; cols],
            parent: vec![0],
            total_defined: 1,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.cols + col] = v;
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), Full> {
        if self.len() >= self.max_rows {
            return Err(Full);
        }
        let d = self.len();
        self.table.extend(core::iter::repeat_n(UNDEF, self.cols));
        self.parent.push(d as u32);
        self.total_defined += 1;
        self.set(c, col, d as u32);
        self.set(d, col ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k != l {
            let (mu, nu) = if k < l { (k, l) } else { (l, k) };
            self.parent[nu as usize] = mu;
            self.queue.push(nu);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d as usize, x ^ 1, UNDEF);
                let mu = self.rep(g as u32) as usize;
                let nu = self.rep(d) as usize;
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu as u32, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu as u32, nu_inv);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, x ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    /// Scans `w` at `a`, defining cosets to close gaps. With `fill == false`
    /// only deductions and coincidences are recorded.
    fn scan(&mut self, a: usize, w: &[u32], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a as u32;
        let mut b = a as u32;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.get(f as usize, w[i as usize] as usize);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let prev = self.get(b as usize, (w[j as usize] ^ 1) as usize);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = w[i as usize] as usize;
                self.set(f as usize, col, b);
                self.set(b as usize, col ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f as usize, w[i as usize] as usize)?;
        }
    }

    fn drive(
        &mut self,
        relators: &[Vec<u32>],
        subgroup: &[Vec<u32>],
        alpha: &mut usize,
        sub_done: &mut usize,
    ) -> Result<(), Full> {
        while *sub_done < subgroup.len() {
            self.scan(0, &subgroup[*sub_done], true)?;
            *sub_done += 1;
        }
        while *alpha < self.len() {
            let a = *alpha;
            for r in relators {
                if !self.live(a) {
                    break;
                }
                self.scan(a, r, true)?;
            }
            if self.live(a) {
                for col in 0..self.cols {
                    if self.get(a, col) == UNDEF {
                        self.define(a, col)?;
                    }
                }
            }
            *alpha += 1;
        }
        Ok(())
    }

    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut c = 0;
        while c < self.len() {
            for r in relators {
                if !self.live(c) {
                    break;
                }
                // scanning without filling never needs a new row
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    fn is_complete(&self) -> bool {
        (0..self.len())
            .filter(|&c| self.live(c))
            .all(|c| (0..self.cols).all(|x| self.get(c, x) != UNDEF))
    }

    /// Drops dead rows, preserving order. Returns whether any row was freed.
    fn compact(&mut self, alpha: &mut usize) -> bool {
        let n = self.len();
        let mut new_index = vec![UNDEF; n];
        let mut live = 0u32;
        let mut new_alpha = None;
        for c in 0..n {
            if self.live(c) {
                if new_alpha.is_none() && c >= *alpha {
                    new_alpha = Some(live as usize);
                }
                new_index[c] = live;
                live += 1;
            }
        }
        *alpha = new_alpha.unwrap_or(live as usize);
        if live as usize == n {
            return false;
        }
        let cols = self.cols;
        let mut table = Vec::with_capacity(live as usize * cols);
        for c in 0..n {
            if new_index[c] == UNDEF {
                continue;
            }
            for x in 0..cols {
                let v = self.get(c, x);
                table.push(if v == UNDEF {
                    UNDEF
                } else {
                    new_index[self.rep(v) as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..live).collect();
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> GroupPresentation {
        GroupPresentation::parse(&["s", "t"], &["s^2", "t^3", "(s*t)^2"]).unwrap()
    }

    #[test]
    fn s3_order_six() {
        let t = todd_coxeter(&s3(), &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
    }

    #[test]
    fn s3_over_transposition() {
        let g = s3();
        let s = g.word("s").unwrap();
        let t = todd_coxeter(&g, &[s], 1000).unwrap();
        assert_eq!(t.index(), 3);
    }

    #[test]
    fn free_group_overflows() {
        let g = GroupPresentation::parse(&["a", "b"], &[]).unwrap();
        let err = todd_coxeter(&g, &[], 10_000).unwrap_err();
        assert_eq!(err.max_cosets, 10_000);
    }

    #[test]
    fn zero_generators() {
        let t = todd_coxeter(&GroupPresentation::trivial(), &[], 10).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let r = alloc::format!("a^{}", n);
            let g = GroupPresentation::parse(&["a"], &[&r]).unwrap();
            assert_eq!(todd_coxeter(&g, &[], 100).unwrap().index(), n);
        }
    }

    #[test]
    fn lookahead_rescues_tight_budgets() {
        // the 120-element group <a,b,c | a^2, b^2, c^2, (ab)^3, (bc)^5, (ac)^2>
        let g = GroupPresentation::parse(
            &["a", "b", "c"],
            &["a^2", "b^2", "c^2", "(a*b)^3", "(b*c)^5", "(a*c)^2"],
        )
        .unwrap();
        let roomy = todd_coxeter(&g, &[], 100_000).unwrap();
        assert_eq!(roomy.index(), 120);
        let tight = todd_coxeter(&g, &[], 200).unwrap();
        assert_eq!(tight.index(), 120);
    }

    #[test]
    fn deterministic_tables() {
        let g = s3();
        let a = todd_coxeter(&g, &[], 100).unwrap();
        let b = todd_coxeter(&g, &[], 100).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_is_consistent() {
        let g = s3();
        let t = todd_coxeter(&g, &[], 100).unwrap();
        for r in g.relators() {
            assert!(t.acts_trivially(r));
        }
        for c in 0..t.index() {
            for col in 0..4 {
                let d = t.rows()[c][col] as usize;
                assert_eq!(t.rows()[d][col ^ 1] as usize, c);
            }
        }
        let words = t.schreier_words();
        for (c, w) in words.iter().enumerate() {
            assert_eq!(t.trace(0, w), c);
        }
    }
}
