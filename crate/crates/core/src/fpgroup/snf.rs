//! Smith normal form over arbitrary-precision integers and the invariant
//! factors of finitely generated abelian groups.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors `d₁ | d₂ | … | dₖ` of a finitely generated abelian group,
/// torsion first, then one `0` per infinite cyclic factor. No factor is `1`;
/// the trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    factors: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            factors: Vec::new(),
        }
    }

    /// Accepts factors already in canonical form; returns `None` otherwise.
    pub fn new(factors: Vec<BigUint>) -> Option<Self> {
        let mut seen_zero = false;
        for (i, f) in factors.iter().enumerate() {
            if f.is_one() {
                return None;
            }
            if f.is_zero() {
                seen_zero = true;
                continue;
            }
            if seen_zero {
                return None;
            }
            if i + 1 < factors.len() {
                let next = &factors[i + 1];
                if !next.is_zero() && !(next % f).is_zero() {
                    return None;
                }
            }
        }
        Some(AbelianInvariants { factors })
    }

    pub fn from_u64(factors: &[u64]) -> Option<Self> {
        AbelianInvariants::new(factors.iter().map(|&f| BigUint::from(f)).collect())
    }

    /// Invariant factors of `⊕ Z/nᵢ` for arbitrary cyclic orders (`0` for `Z`).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = alloc::vec![alloc::vec![BigInt::zero(); n]; n];
        for (i, &o) in orders.iter().enumerate() {
            m[i][i] = BigInt::from(o);
        }
        invariants_of_relations(m, n)
    }

    pub fn factors(&self) -> &[BigUint] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of infinite cyclic factors.
    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_zero()).count()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.factors.iter().fold(BigUint::one(), |acc, f| acc * f))
    }

    /// Factors as machine integers, when they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.factors
            .iter()
            .map(|f| u64::try_from(f).ok())
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        f.write_str("(")?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", d)?;
        }
        f.write_str(")")
    }
}

/// Diagonal of the Smith normal form of `m` (`rows × cols`). The returned
/// vector has length `min(rows, cols)`, entries non-negative and each one
/// dividing the next nonzero one; zeros come last.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let k = rows.min(cols);
    let mut diag = Vec::with_capacity(k);

    for t in 0..k {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = smallest_entry(&m, t, cols) else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let v = &m[i][t] * &q;
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            let (pr, pc) = smallest_entry_in_cross(&m, t, rows, cols);
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(m[t][t].abs());
    }
    diag.resize(k, BigInt::zero());
    diag
}

fn smallest_entry(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.magnitude() < m[bi][bj].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_entry_in_cross(m: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let v = &m[i][j];
        if v.is_zero() {
            return;
        }
        let b = &m[best.0][best.1];
        if b.is_zero() || v.magnitude() < b.magnitude() {
            *best = (i, j);
        }
    };
    for i in t..rows {
        consider(i, t, &mut best);
    }
    for j in t..cols {
        consider(t, j, &mut best);
    }
    best
}

type SparseRow = Vec<(usize, BigInt)>;

/// `a + q·b` for sorted sparse rows.
fn add_multiple(a: &SparseRow, q: &BigInt, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, va + q * vb)
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, va.clone())
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va.clone())
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, q * vb)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Eliminates generators that some relation expresses through the others:
/// a row with a `±1` entry in column `c` is used to clear column `c`, then
/// both are dropped. The cokernel is unchanged. Returns the remaining rows
/// as a dense matrix over the remaining columns.
fn eliminate_unit_pivots(m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, usize) {
    let mut rows: Vec<SparseRow> = m
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect::<SparseRow>())
        .filter(|r| !r.is_empty())
        .collect();
    let mut alive = vec![true; cols];
    loop {
        // shortest row with a unit entry keeps fill-in low
        let pivot = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.iter().find(|(_, v)| v.magnitude().is_one()).map(|(c, _)| (r.len(), i, *c)))
            .min();
        let Some((_, pr, pc)) = pivot else { break };
        let p = rows.swap_remove(pr);
        let unit = &p[p.binary_search_by_key(&pc, |(c, _)| *c).unwrap()].1;
        for r in rows.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&pc, |(c, _)| *c) {
                // unit is ±1, so -v/unit = -v·unit
                let q = -(&r[k].1 * unit);
                *r = add_multiple(r, &q, &p);
            }
        }
        rows.retain(|r| !r.is_empty());
        alive[pc] = false;
    }
    let remap: Vec<Option<usize>> = alive
        .iter()
        .scan(0, |next, &a| {
            Some(a.then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();
    let width = alive.iter().filter(|&&a| a).count();
    let dense = rows
        .into_iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); width];
            for (c, v) in r {
                d[remap[c].expect("eliminated columns are cleared")] = v;
            }
            d
        })
        .collect();
    (dense, width)
}

/// Invariant factors of the cokernel `Z^cols / rowspace(m)`.
pub fn invariants_of_relations(m: Vec<Vec<BigInt>>, cols: usize) -> AbelianInvariants {
    let (m, cols) = eliminate_unit_pivots(m, cols);
    let diag = smith_diagonal(m, cols);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let mut factors: Vec<BigUint> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    factors.extend(core::iter::repeat_n(BigUint::zero(), cols - rank));
    debug_assert!(AbelianInvariants::new(factors.clone()).is_some());
    AbelianInvariants { factors }
}

/// Same as [`invariants_of_relations`] for machine-integer matrices.
pub fn invariants_of_i64_relations(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let m = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    invariants_of_relations(m, cols)
}
