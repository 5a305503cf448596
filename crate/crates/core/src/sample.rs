//! Random instances for property tests and batch verification. Every
//! sampler takes the generator from the caller, so seeded generators give
//! reproducible instances.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{DedekindModel, PrimeData};
use crate::fincat::{FiniteCategory, Morphism};
use crate::fpgroup::{GroupDiagram, GroupHom, GroupPresentation, Letter, Orientation, Word};
use crate::perm::{Perm, PermGroup};
use crate::poset::FinitePoset;

/// A poset on `n` elements named `x0, x1, …`: each pair `i < j` of a random
/// linear order is related with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut relation = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                relation.push((order[i], order[j]));
            }
        }
    }
    let ids = (0..n).map(|i| alloc::format!("x{i}")).collect();
    FinitePoset::from_relation(ids, &relation).expect("a linear extension exists")
}

pub fn random_word<R: Rng>(rng: &mut R, generators: usize, max_len: usize) -> Word {
    if generators == 0 {
        return Word::identity();
    }
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5))))
}

/// A diagram over a random poset with at most `max_nodes` nodes, at most
/// `max_generators` generators per node, random relators and random
/// generator images. The edge maps need not be homomorphisms.
pub fn random_diagram<R: Rng>(rng: &mut R, max_nodes: usize, max_generators: usize) -> GroupDiagram {
    let n = rng.gen_range(1..=max_nodes);
    let index = random_poset(rng, n, 0.5);
    let nodes: Vec<GroupPresentation> = (0..n)
        .map(|i| {
            let k = rng.gen_range(0..=max_generators);
            let names = (0..k).map(|g| alloc::format!("g{g}n{i}")).collect();
            let relators = (0..rng.gen_range(0..=3)).map(|_| random_word(rng, k, 4)).collect();
            GroupPresentation::new(names, relators).expect("distinct names")
        })
        .collect();
    let orientation = if rng.gen_bool(0.5) {
        Orientation::Contravariant
    } else {
        Orientation::Covariant
    };
    let mut edges = BTreeMap::new();
    for &(lo, hi) in index.covers() {
        let (from, to) = match orientation {
            Orientation::Covariant => (lo, hi),
            Orientation::Contravariant => (hi, lo),
        };
        let images = (0..nodes[from].num_generators())
            .map(|_| random_word(rng, nodes[to].num_generators(), 3))
            .collect();
        let hom = GroupHom::new(nodes[from].clone(), nodes[to].clone(), images).expect("words over target");
        edges.insert((lo, hi), hom);
    }
    GroupDiagram::new(index, orientation, nodes, edges).expect("edges on covers")
}

/// A category on a random poset of at most `max_objects` objects whose
/// hom-sets are subgroups of a cyclic group `Z/n`, composed by addition.
/// Hom-sets start random and are enlarged until closed under composition;
/// samples exceeding `max_morphisms` are rejected.
pub fn random_category<R: Rng>(rng: &mut R, max_objects: usize, max_morphisms: usize) -> FiniteCategory {
    loop {
        let k = rng.gen_range(1..=max_objects);
        let p = random_poset(rng, k, 0.5);
        let n: usize = rng.gen_range(1..=4);
        let divisors: Vec<usize> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
        // hom[x][y] = Some(d): the subgroup dZ/n; None: empty
        let mut hom = vec![vec![None; k]; k];
        for x in 0..k {
            for y in 0..k {
                if x == y || (p.lt(x, y) && rng.gen_bool(0.7)) {
                    hom[x][y] = Some(*divisors.choose(rng).unwrap());
                }
            }
        }
        loop {
            let mut changed = false;
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        if let (Some(a), Some(b)) = (hom[x][y], hom[y][z]) {
                            let joined = hom[x][z].map_or(a.gcd(&b), |c: usize| c.gcd(&a.gcd(&b)));
                            if hom[x][z] != Some(joined) {
                                hom[x][z] = Some(joined);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let count: usize = hom.iter().flatten().flatten().map(|d| n / d).sum();
        if count > max_morphisms {
            continue;
        }
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        let mut identities = vec![0; k];
        for x in 0..k {
            for y in 0..k {
                let Some(d) = hom[x][y] else { continue };
                for v in (0..n).step_by(d) {
                    if x == y && v == 0 {
                        identities[x] = morphisms.len();
                    }
                    index.insert((x, y, v), morphisms.len());
                    morphisms.push(Morphism {
                        id: alloc::format!("{}>{}#{}", p.id(x), p.id(y), v),
                        src: x,
                        tgt: y,
                    });
                }
            }
        }
        let mut composites = BTreeMap::new();
        for (&(x, y, v), &f) in &index {
            for (&(y2, z, w), &g) in index.range((y, 0, 0)..(y + 1, 0, 0)) {
                debug_assert_eq!(y, y2);
                composites.insert((f, g), index[&(x, z, (v + w) % n)]);
            }
        }
        let objects = p.ids().to_vec();
        if let Ok(c) = FiniteCategory::new(objects, morphisms, identities, &composites) {
            return c;
        }
    }
}

/// A random Dedekind model with a concrete permutation realization, and
/// the order of the expected quotient computed by brute force in it.
#[derive(Debug, Clone)]
pub struct SampledModel {
    pub model: DedekindModel,
    pub group: PermGroup,
    /// Inertia generators of every prime, as permutations.
    pub inertia: Vec<Perm>,
    /// `|G| / |⟨⟨inertia⟩⟩|`, with the normal closure taken by conjugation
    /// closure in `group`.
    pub oracle_order: usize,
}

fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Perm {
    let mut p: Perm = (0..degree as u32).collect();
    p.shuffle(rng);
    p
}

/// Samples `G_K` generated by one or two random permutations of degree 3 to
/// 5 with `2 ≤ |G_K| ≤ max_order`, then one to three primes whose
/// decomposition groups are generated by one or two random elements and
/// whose inertia groups by up to two random elements of those.
pub fn random_dedekind_model<R: Rng>(rng: &mut R, max_order: usize) -> SampledModel {
    let group = loop {
        let degree = rng.gen_range(3..=5);
        let gens = (0..rng.gen_range(1..=2)).map(|_| random_perm(rng, degree)).collect();
        if let Some(g) = PermGroup::generate(degree, gens, max_order) {
            if g.order() >= 2 {
                break g;
            }
        }
    };
    let g_names: Vec<String> = ["a", "b"][..group.generators().len()].iter().map(|s| String::from(*s)).collect();
    let g_k = group.presentation(g_names);
    let mut primes = Vec::new();
    let mut inertia_perms = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let d_gens: Vec<Perm> = (0..rng.gen_range(1..=2))
            .map(|_| group.elements().choose(rng).unwrap().clone())
            .collect();
        let d = PermGroup::generate(group.degree(), d_gens.clone(), group.order()).expect("subgroup of G");
        let d_names = (0..d_gens.len()).map(|j| alloc::format!("d{}", j + 1)).collect();
        let decomposition = d.presentation(d_names);
        let images = d_gens.iter().map(|x| group.word_of(x).unwrap().clone()).collect();
        let inclusion = GroupHom::new(decomposition.clone(), g_k.clone(), images).expect("words over G_K");
        let mut inertia = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let x = d.elements().choose(rng).unwrap().clone();
            inertia.push(d.word_of(&x).unwrap().clone());
            inertia_perms.push(x);
        }
        primes.push(PrimeData {
            name: alloc::format!("p{}", i + 1),
            decomposition,
            inclusion,
            inertia,
        });
    }
    let oracle_order = group.order() / group.normal_closure(&inertia_perms).len();
    SampledModel {
        model: DedekindModel::new(g_k, primes).expect("sampled names are distinct"),
        group,
        inertia: inertia_perms,
        oracle_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{order, Effort};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_categories_are_small_and_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_category(&mut rng, 4, 12);
            assert!(c.objects().len() <= 4 && c.morphisms().len() <= 12);
        }
    }

    #[test]
    fn sampled_models_present_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let s = random_dedekind_model(&mut rng, 24);
            assert_eq!(order(s.model.g_k(), 1000).unwrap(), s.group.order());
            let verified = s.model.verified(&Effort::default()).unwrap();
            assert!(verified.primes().iter().all(|p| p.inclusion.is_verified()));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = random_poset(&mut ChaCha8Rng::seed_from_u64(3), 6, 0.4);
        let b = random_poset(&mut ChaCha8Rng::seed_from_u64(3), 6, 0.4);
        assert_eq!(a, b);
    }
}
