//! Dedekind-domain models with finite surrogate Galois data.
//!
//! A model is a group `G_K` together with, for each prime `p`, a group
//! `D_p`, a map `D_p → G_K` and words generating `I_p` inside `D_p`. Its
//! site lives on the star poset `p₁, …, pₙ < eta`: `G_K` on `eta`, `D_p` on
//! the link `p<eta`, and `D_p / ⟨⟨I_p⟩⟩` on `p`. The fundamental group of
//! that site should be `G_K` modulo the normal closure of all inertia
//! images; [`verify_formula`] checks this per instance.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::decollage::{classifying_pi1, site_from_diagram, Pi1, Pi1Error, StratifiedSite};
use crate::fpgroup::{
    quotient_by_normal_closure, todd_coxeter, CosetTable, Effort, GroupError, GroupHom, GroupPresentation,
    HomError, Overflow, Word,
};
use crate::poset::FinitePoset;

/// Id of the generic point in the star poset.
pub const GENERIC_POINT: &str = "eta";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeData {
    pub name: String,
    pub decomposition: GroupPresentation,
    /// `D_p → G_K`.
    pub inclusion: GroupHom,
    /// Generators of the inertia group, as words over `D_p`.
    pub inertia: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindModel {
    g_k: GroupPresentation,
    primes: Vec<PrimeData>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("duplicate prime `{0}`")]
    DuplicatePrime(String),
    #[error("prime name `{0}` is reserved or contains `<`")]
    BadPrimeName(String),
    #[error("inclusion at `{0}` does not run from D_p to G_K")]
    InclusionEndpoints(String),
    #[error("inertia word {index} at `{prime}` uses a generator outside D_p")]
    InertiaWord { prime: String, index: usize },
    #[error("inclusion at `{prime}`: {source}")]
    Inclusion { prime: String, source: HomError },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl DedekindModel {
    pub fn new(g_k: GroupPresentation, primes: Vec<PrimeData>) -> Result<Self, ModelError> {
        for (i, p) in primes.iter().enumerate() {
            if p.name == GENERIC_POINT || p.name.contains('<') || p.name.is_empty() {
                return Err(ModelError::BadPrimeName(p.name.clone()));
            }
            if primes[..i].iter().any(|q| q.name == p.name) {
                return Err(ModelError::DuplicatePrime(p.name.clone()));
            }
            if p.inclusion.source() != &p.decomposition || p.inclusion.target() != &g_k {
                return Err(ModelError::InclusionEndpoints(p.name.clone()));
            }
            let n = p.decomposition.num_generators();
            if let Some(index) = p.inertia.iter().position(|w| w.max_generator().is_some_and(|g| g >= n)) {
                return Err(ModelError::InertiaWord {
                    prime: p.name.clone(),
                    index,
                });
            }
        }
        Ok(DedekindModel { g_k, primes })
    }

    pub fn g_k(&self) -> &GroupPresentation {
        &self.g_k
    }

    pub fn primes(&self) -> &[PrimeData] {
        &self.primes
    }

    /// Verifies every inclusion. Inclusions whose check runs out of budget
    /// stay unverified; non-homomorphisms are errors.
    pub fn verified(&self, effort: &Effort) -> Result<DedekindModel, ModelError> {
        let mut m = self.clone();
        for p in &mut m.primes {
            match p.inclusion.verify(effort) {
                Ok(h) => p.inclusion = h,
                Err(HomError::BudgetExhausted(_)) => {}
                Err(source) => {
                    return Err(ModelError::Inclusion {
                        prime: p.name.clone(),
                        source,
                    })
                }
            }
        }
        Ok(m)
    }

    /// Same model with every decomposition group moved to its conjugate by
    /// `c`: each inclusion becomes `d ↦ c⁻¹ · incl(d) · c`.
    pub fn conjugate_by(&self, c: &Word) -> DedekindModel {
        let mut m = self.clone();
        let c_inv = c.inverse();
        for p in &mut m.primes {
            let images = p.inclusion.images().iter().map(|w| c_inv.conjugate(w)).collect();
            p.inclusion = GroupHom::new(p.decomposition.clone(), self.g_k.clone(), images).expect("same arity");
        }
        m
    }

    /// All inertia generators pushed into `G_K`.
    pub fn inertia_images(&self) -> Vec<Word> {
        self.primes
            .iter()
            .flat_map(|p| p.inertia.iter().map(|w| p.inclusion.apply(w)))
            .collect()
    }

    /// The star poset `p₁, …, pₙ < eta`.
    pub fn star_poset(&self) -> FinitePoset {
        let mut ids: Vec<&str> = self.primes.iter().map(|p| p.name.as_str()).collect();
        ids.push(GENERIC_POINT);
        let covers: Vec<(&str, &str)> = self.primes.iter().map(|p| (p.name.as_str(), GENERIC_POINT)).collect();
        FinitePoset::from_covers(&ids, &covers).expect("names checked at construction")
    }
}

/// The site of the model on the star poset. Inclusions are verified
/// (or left unverified when the budget runs out).
pub fn build_site(m: &DedekindModel, effort: &Effort) -> Result<StratifiedSite, ModelError> {
    let m = m.verified(effort)?;
    let mut strata = BTreeMap::new();
    let mut maps = BTreeMap::new();
    strata.insert(String::from(GENERIC_POINT), m.g_k.clone());
    for p in &m.primes {
        let link = alloc::format!("{}<{}", p.name, GENERIC_POINT);
        let residue = quotient_by_normal_closure(&p.decomposition, &p.inertia)?;
        let quotient = GroupHom::identity_on_names(p.decomposition.clone(), residue.clone())?
            .verify(effort)
            .expect("relators of D_p are relators of the quotient");
        strata.insert(p.name.clone(), residue);
        strata.insert(link.clone(), p.decomposition.clone());
        maps.insert((link.clone(), p.name.clone()), quotient);
        maps.insert((link, String::from(GENERIC_POINT)), p.inclusion.clone());
    }
    Ok(site_from_diagram(m.star_poset(), strata, maps).expect("keys are chains of the star poset"))
}

/// `G_K / ⟨⟨incl_p(I_p) for all p⟩⟩`.
pub fn expected_pi1(m: &DedekindModel) -> GroupPresentation {
    quotient_by_normal_closure(&m.g_k, &m.inertia_images()).expect("images are words over G_K")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Match,
    Mismatch,
    Inconclusive,
}

/// Everything [`verify_formula`] established. `forward` runs from the
/// computed group to the expected one and `backward` the other way; both
/// are induced by the cocone on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub outcome: Outcome,
    pub computed: GroupPresentation,
    pub expected: GroupPresentation,
    pub computed_order: Option<usize>,
    pub expected_order: Option<usize>,
    /// Coset definitions made by each enumeration.
    pub computed_cosets_defined: Option<usize>,
    pub expected_cosets_defined: Option<usize>,
    pub forward: Option<GroupHom>,
    pub backward: Option<GroupHom>,
    /// Both composites fix every generator.
    pub round_trip: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
}

/// Computes the fundamental group of the model's site at `eta`, compares
/// orders with the expected quotient, and checks that the canonical maps in
/// both directions are mutually inverse homomorphisms.
pub fn verify_formula(m: &DedekindModel, effort: &Effort) -> Result<VerificationReport, VerifyError> {
    let site = build_site(m, effort)?;
    let pi = classifying_pi1(&site, Some(GENERIC_POINT), effort, false)?;
    let expected = expected_pi1(m);
    let mut report = VerificationReport {
        outcome: Outcome::Inconclusive,
        computed: pi.presentation.clone(),
        expected: expected.clone(),
        computed_order: None,
        expected_order: None,
        computed_cosets_defined: None,
        expected_cosets_defined: None,
        forward: None,
        backward: None,
        round_trip: false,
        detail: String::new(),
    };
    let enumerate = |g: &GroupPresentation| todd_coxeter(g, &[], effort.max_cosets);
    let (table_a, table_b) = match (enumerate(&pi.presentation), enumerate(&expected)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            report.computed_order = a.as_ref().ok().map(CosetTable::index);
            report.expected_order = b.as_ref().ok().map(CosetTable::index);
            let overflow: Overflow = a.err().or(b.err()).unwrap();
            report.detail = alloc::format!("{overflow}");
            return Ok(report);
        }
    };
    report.computed_order = Some(table_a.index());
    report.expected_order = Some(table_b.index());
    report.computed_cosets_defined = Some(table_a.total_defined);
    report.expected_cosets_defined = Some(table_b.total_defined);
    if table_a.index() != table_b.index() {
        report.outcome = Outcome::Mismatch;
        report.detail = alloc::format!("orders differ: {} vs {}", table_a.index(), table_b.index());
        return Ok(report);
    }

    let forward_images = generator_images(m, &site, &pi);
    let forward = GroupHom::new(pi.presentation.clone(), expected.clone(), forward_images).expect("words over G_K");
    let backward_images = (0..m.g_k.num_generators())
        .map(|g| pi.image(GENERIC_POINT, &Word::generator(g)).expect("eta is a chain"))
        .collect();
    let backward = GroupHom::new(expected.clone(), pi.presentation.clone(), backward_images)
        .expect("words over the computed group");
    let (forward, backward) = match (forward.verify_with_table(&table_b), backward.verify_with_table(&table_a)) {
        (Ok(f), Ok(b)) => (f, b),
        (f, b) => {
            report.outcome = Outcome::Mismatch;
            let e = f.err().or(b.err()).unwrap();
            report.detail = alloc::format!("canonical map fails: {e}");
            return Ok(report);
        }
    };
    let fixes_generators = |h1: &GroupHom, h2: &GroupHom, table: &CosetTable| {
        (0..h1.source().num_generators()).all(|g| {
            let there_and_back = h2.apply(&h1.apply(&Word::generator(g)));
            table.acts_trivially(&there_and_back.mul(&Word::generator(g).inverse()))
        })
    };
    report.round_trip = fixes_generators(&forward, &backward, &table_a) && fixes_generators(&backward, &forward, &table_b);
    report.forward = Some(forward);
    report.backward = Some(backward);
    if report.round_trip {
        report.outcome = Outcome::Match;
        report.detail = alloc::format!("order {} on both sides; canonical maps are mutually inverse", table_a.index());
    } else {
        report.outcome = Outcome::Mismatch;
        report.detail = String::from("canonical maps are not mutually inverse");
    }
    Ok(report)
}

/// Image in the expected quotient of every generator of the simplified
/// colimit. Generators on `eta` and on a link go through the inclusion;
/// generators on `p` go through the inclusion of the matching generator of
/// `D_p` (they are the same names in the quotient).
fn generator_images(m: &DedekindModel, site: &StratifiedSite, pi: &Pi1) -> Vec<Word> {
    let mut owner = alloc::vec![(0, 0); pi.colimit.presentation.num_generators()];
    for (node, key) in pi.chain_keys.iter().enumerate() {
        let n = site.stratum(key).expect("every chain has a group").num_generators();
        for local in 0..n {
            owner[pi.colimit.offsets[node] + local] = (node, local);
        }
    }
    pi.tietze
        .kept
        .iter()
        .map(|&raw| {
            let (node, local) = owner[raw];
            let key = &pi.chain_keys[node];
            if key == GENERIC_POINT {
                return Word::generator(local);
            }
            let prime = key.split('<').next().unwrap();
            let p = m.primes.iter().find(|p| p.name == prime).unwrap();
            p.inclusion.apply(&Word::generator(local))
        })
        .collect()
}
