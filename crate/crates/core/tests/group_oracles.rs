use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratpi_core::fpgroup::{
    abelianization, colimit, invariants_of_i64_relations, order, quotient_by_normal_closure, smith_diagonal,
    tietze_simplify, todd_coxeter, AbelianInvariants, GroupDiagram, GroupHom, GroupPresentation, Letter,
    Orientation, Word,
};
use stratpi_core::sample::{random_dedekind_model, random_diagram, random_word};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_presentation(r: &mut ChaCha8Rng, max_gens: usize, max_rels: usize, max_len: usize) -> GroupPresentation {
    let k = r.gen_range(0..=max_gens);
    let names = (0..k).map(|i| format!("g{i}")).collect();
    let rels = (0..r.gen_range(0..=max_rels)).map(|_| random_word(r, k, max_len)).collect();
    GroupPresentation::new(names, rels).unwrap()
}

/// Abelianized colimit assembled straight from the diagram: one column per
/// node generator, node relators as exponent vectors, and for every edge
/// `φ: G_from → G_to` and generator `g` the row `e_g − ab(φ(g))`.
fn pushout_matrix_oracle(d: &GroupDiagram) -> AbelianInvariants {
    let mut offsets = Vec::new();
    let mut cols = 0;
    for g in d.nodes() {
        offsets.push(cols);
        cols += g.num_generators();
    }
    let mut rows = Vec::new();
    for (i, g) in d.nodes().iter().enumerate() {
        for r in g.relators() {
            let mut row = vec![0i64; cols];
            for l in r.letters() {
                row[offsets[i] + l.generator] += l.sign();
            }
            rows.push(row);
        }
    }
    for &(lo, hi) in d.index().covers() {
        let (from, to) = d.arrow(lo, hi);
        let hom = d.edge(lo, hi).unwrap();
        for (g, img) in hom.images().iter().enumerate() {
            let mut row = vec![0i64; cols];
            row[offsets[from] + g] += 1;
            for l in img.letters() {
                row[offsets[to] + l.generator] -= l.sign();
            }
            rows.push(row);
        }
    }
    invariants_of_i64_relations(&rows, cols)
}

fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = entry * determinant(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k × k` minors and the `k`-th factor is `D_k / D_{k−1}`.
fn determinantal_divisors(m: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn colimit_abelianization_matches_pushout_oracle(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 5, 4);
        let c = colimit(&d).unwrap();
        prop_assert_eq!(abelianization(&c), pushout_matrix_oracle(&d));
    }

    #[test]
    fn smith_diagonal_matches_determinantal_divisors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rows = r.gen_range(1..=4);
        let cols = r.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-6..=6)).collect()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let diag: Vec<BigInt> = smith_diagonal(big, cols).into_iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        prop_assert_eq!(diag, determinantal_divisors(&m, cols));
    }

    #[test]
    fn relation_invariants_match_dense_smith_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rows = r.gen_range(0..=12);
        let cols = r.gen_range(0..=9);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if r.gen_bool(0.6) { 0 } else { r.gen_range(-3..=3) }).collect())
            .collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let diag = smith_diagonal(big, cols);
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let mut expected: Vec<u64> = diag.iter().filter(|d| !d.is_zero()).map(|d| u64::try_from(d.abs()).unwrap()).collect();
        expected.retain(|&d| d != 1);
        expected.extend(std::iter::repeat_n(0, cols - rank));
        prop_assert_eq!(invariants_of_i64_relations(&m, cols), AbelianInvariants::from_u64(&expected).unwrap());
    }

    #[test]
    fn free_reduction_laws(letters in proptest::collection::vec((0usize..3, any::<bool>()), 0..24)) {
        let w = Word::from_letters(letters.iter().map(|&(g, i)| Letter::new(g, i)));
        prop_assert!(w.len() <= letters.len());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert_eq!(&Word::from_letters(w.letters().iter().copied()), &w);
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert!(w.inverse().mul(&w).is_empty());
    }

    #[test]
    fn tietze_preserves_abelianization(seed in any::<u64>()) {
        let g = random_presentation(&mut rng(seed), 4, 4, 6);
        let s = tietze_simplify(&g, 10);
        prop_assert_eq!(abelianization(&s), abelianization(&g));
        prop_assert!(s.num_generators() <= g.num_generators());
    }

    #[test]
    fn tietze_preserves_finite_order(seed in any::<u64>()) {
        let g = random_dedekind_model(&mut rng(seed), 24).model.g_k().clone();
        let s = tietze_simplify(&g, 10);
        prop_assert_eq!(order(&s, 10_000).unwrap(), order(&g, 10_000).unwrap());
    }

    #[test]
    fn todd_coxeter_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_presentation(&mut r, 3, 4, 6);
        let h: Vec<Word> = (0..r.gen_range(0..=2)).map(|_| random_word(&mut r, g.num_generators(), 3)).collect();
        prop_assert_eq!(todd_coxeter(&g, &h, 2000), todd_coxeter(&g, &h, 2000));
    }

    #[test]
    fn quotient_map_verifies(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dedekind_model(&mut r, 24).model.g_k().clone();
        let words: Vec<Word> = (0..r.gen_range(0..=2)).map(|_| random_word(&mut r, g.num_generators(), 4)).collect();
        let q = quotient_by_normal_closure(&g, &words).unwrap();
        let hom = GroupHom::identity_on_names(g.clone(), q).unwrap();
        prop_assert!(hom.verify(&Default::default()).unwrap().is_verified());
    }
}

#[test]
fn pushout_over_trivial_group() {
    use std::collections::BTreeMap;
    use stratpi_core::poset::FinitePoset;
    let p = FinitePoset::from_covers(&["l", "r", "m"], &[("l", "m"), ("r", "m")]).unwrap();
    let a = GroupPresentation::parse(&["a"], &["a^2"]).unwrap();
    let b = GroupPresentation::parse(&["b"], &["b^3"]).unwrap();
    let one = GroupPresentation::trivial();
    let mut edges = BTreeMap::new();
    edges.insert((0, 2), GroupHom::new(one.clone(), a.clone(), vec![]).unwrap());
    edges.insert((1, 2), GroupHom::new(one.clone(), b.clone(), vec![]).unwrap());
    let d = GroupDiagram::new(p, Orientation::Contravariant, vec![a, b, one], edges).unwrap();
    let expected = AbelianInvariants::from_u64(&[6]).unwrap();
    assert_eq!(abelianization(&colimit(&d).unwrap()), expected);
    assert_eq!(pushout_matrix_oracle(&d), expected);
}
