//! Unit groups `(Z/m)×` and their quotients by inertia factors.
//!
//! The Chinese remainder theorem splits `(Z/m)×` into the unit groups of its
//! prime-power parts; the inertia group at `p` is the `p`-part. Quotienting
//! by the parts at a set `S` of primes leaves the unit group of `m` with its
//! `S`-parts removed, which [`unit_group_invariants`] computes independently
//! by counting elements of `Z/n` directly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::fpgroup::{invariants_of_i64_relations, AbelianInvariants};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomicError {
    #[error("modulus {0} is below 3")]
    ModulusTooSmall(u64),
    #[error("{prime} does not divide {modulus}")]
    PrimeNotDividing { prime: u64, modulus: u64 },
}

/// A cyclic factor of `(Z/m)×` attached to one prime power of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFactor {
    pub prime: u64,
    /// The prime power `p^a` exactly dividing `m`.
    pub prime_power: u64,
    pub order: u64,
    /// A residue mod `m` of exactly this order, congruent to 1 away from
    /// `p^a`.
    pub generator: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicLevel {
    modulus: u64,
    factors: Vec<CyclicFactor>,
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
fn inv_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

/// Smallest primitive root modulo an odd prime power.
fn primitive_root(p: u64, a: u32) -> u64 {
    let q: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| q.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1);
    if a == 1 || pow_mod(g, p - 1, p * p) != 1 {
        g
    } else {
        g + p
    }
}

impl CyclotomicLevel {
    pub fn new(modulus: u64) -> Result<Self, CyclotomicError> {
        if modulus < 3 {
            return Err(CyclotomicError::ModulusTooSmall(modulus));
        }
        let mut factors = Vec::new();
        for (p, a) in factorize(modulus) {
            let pa = p.pow(a);
            let rest = modulus / pa;
            // lift x mod p^a to the residue ≡ x mod p^a, ≡ 1 mod rest
            let lift = |x: u64| -> u64 {
                let t = mul_mod((x + pa - 1) % pa, inv_mod(rest % pa, pa), pa);
                (1 + mul_mod(t, rest, modulus)) % modulus
            };
            let mut push = |order: u64, residue: u64| {
                factors.push(CyclicFactor {
                    prime: p,
                    prime_power: pa,
                    order,
                    generator: lift(residue),
                })
            };
            match (p, a) {
                (2, 1) => {}
                (2, 2) => push(2, 3),
                (2, _) => {
                    push(2, pa - 1);
                    push(pa / 4, 5);
                }
                _ => push(pa / p * (p - 1), primitive_root(p, a)),
            }
        }
        Ok(CyclotomicLevel { modulus, factors })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    /// Distinct primes dividing the modulus.
    pub fn support(&self) -> Vec<u64> {
        factorize(self.modulus).into_iter().map(|(p, _)| p).collect()
    }

    /// Invariant factors of the quotient by the factors at the primes in
    /// `s`.
    pub fn quotient(&self, s: &[u64]) -> Result<AbelianInvariants, CyclotomicError> {
        if let Some(&prime) = s.iter().find(|&&p| !is_prime(p) || !self.modulus.is_multiple_of(p)) {
            return Err(CyclotomicError::PrimeNotDividing {
                prime,
                modulus: self.modulus,
            });
        }
        let cols = self.factors.len();
        let mut rows = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let mut order_row = vec![0i64; cols];
            order_row[i] = f.order as i64;
            rows.push(order_row);
            if s.contains(&f.prime) {
                let mut kill = vec![0i64; cols];
                kill[i] = 1;
                rows.push(kill);
            }
        }
        Ok(invariants_of_i64_relations(&rows, cols))
    }
}

/// `cyclotomic_quotient(m, S)`: `(Z/m)×` modulo the inertia factors at `S`.
pub fn cyclotomic_quotient(m: u64, s: &[u64]) -> Result<AbelianInvariants, CyclotomicError> {
    CyclotomicLevel::new(m)?.quotient(s)
}

/// Invariant factors of `(Z/n)×` by brute force: for each prime `p`, the
/// number of units with `x^(p^j) = 1` determines the `p`-primary part.
pub fn unit_group_invariants(n: u64) -> AbelianInvariants {
    if n <= 2 {
        return AbelianInvariants::trivial();
    }
    let units: Vec<u64> = (1..n).filter(|&x| x.gcd(&n) == 1).collect();
    let order = units.len() as u64;
    let mut elementary: Vec<u64> = Vec::new();
    for (p, e) in factorize(order) {
        // s_j = log_p #{x : x^(p^j) = 1}; s_j - s_{j-1} counts cyclic
        // p-factors of order at least p^j
        let mut s = vec![0u32];
        for j in 1..=e {
            let pj = p.pow(j);
            let count = units.iter().filter(|&&x| pow_mod(x, pj, n) == 1).count() as u64;
            s.push(count.ilog(p));
        }
        let at_least: Vec<u32> = (1..s.len()).map(|j| s[j] - s[j - 1]).collect();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[j] - next) {
                elementary.push(p.pow(j as u32 + 1));
            }
        }
    }
    AbelianInvariants::from_cyclic_orders(&elementary)
}

/// One row of [`cyclotomic_consistency`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyRow {
    pub primes: Vec<u64>,
    pub quotient: AbelianInvariants,
    /// `m` with its parts at `primes` removed.
    pub reduced_modulus: u64,
    pub oracle: AbelianInvariants,
}

impl ConsistencyRow {
    pub fn consistent(&self) -> bool {
        self.quotient == self.oracle
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub modulus: u64,
    pub rows: Vec<ConsistencyRow>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(ConsistencyRow::consistent)
    }
}

/// `m` with the prime powers at `s` divided out.
pub fn reduced_modulus(m: u64, s: &[u64]) -> u64 {
    factorize(m)
        .into_iter()
        .filter(|(p, _)| !s.contains(p))
        .map(|(p, a)| p.pow(a))
        .product()
}

/// Compares the quotient with the unit group of the reduced modulus for
/// every subset of the support of `m`.
pub fn cyclotomic_consistency(m: u64) -> Result<ConsistencyReport, CyclotomicError> {
    let level = CyclotomicLevel::new(m)?;
    let support = level.support();
    let mut rows = Vec::new();
    let mut oracle_cache = BTreeMap::new();
    for mask in 0u32..(1 << support.len()) {
        let primes: Vec<u64> = (0..support.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i])
            .collect();
        let reduced = reduced_modulus(m, &primes);
        let oracle = oracle_cache
            .entry(reduced)
            .or_insert_with(|| unit_group_invariants(reduced))
            .clone();
        rows.push(ConsistencyRow {
            quotient: level.quotient(&primes)?,
            primes,
            reduced_modulus: reduced,
            oracle,
        });
    }
    Ok(ConsistencyReport { modulus: m, rows })
}
