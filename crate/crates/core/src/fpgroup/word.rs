use alloc::vec::Vec;
use core::fmt;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2g` for `g`, `2g + 1` for `g⁻¹`.
    #[inline]
    pub const fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group on generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(alloc::vec![Letter::new(g, false)])
    }

    /// Builds a word from letters, freely reducing on the way.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Shorthand for tests and fixtures: `+(g+1)` is `g`, `-(g+1)` is `g⁻¹`.
    pub fn from_signed(letters: &[i32]) -> Self {
        Word::from_letters(letters.iter().map(|&s| {
            assert!(s != 0, "signed letter 0 is not a generator");
            Letter::new(s.unsigned_abs() as usize - 1, s < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends one letter, cancelling against the last letter when possible.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.mul_assign(other);
        w
    }

    pub fn mul_assign(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Exponent sum of every generator, indexed by generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; num_generators];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    /// Cyclic reduction: strips matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Cyclic rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word::from_letters(v)
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            let img = &images[l.generator];
            if l.inverse {
                out.mul_assign(&img.inverse());
            } else {
                out.mul_assign(img);
            }
        }
        out
    }

    /// Lexicographically least rotation of the word and of its inverse.
    /// Two cyclically reduced relators define the same normal closure when
    /// their canonical forms agree.
    pub fn cyclic_canonical(&self) -> Word {
        let r = self.cyclically_reduced();
        let n = r.len();
        let mut best = r.clone();
        let inv = r.inverse();
        for cand in [&r, &inv] {
            for k in 0..n {
                let rot = cand.rotate(k);
                // rotations of a cyclically reduced word stay reduced
                if rot.0 < best.0 {
                    best = rot;
                }
            }
        }
        best
    }

    pub fn display<'a>(&'a self, names: &'a [alloc::string::String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Renders a word in the relator grammar, grouping runs into powers.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [alloc::string::String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = &self.names[l.generator];
            let exp = run as i64 * l.sign();
            if exp == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{}^{}", name, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}
