//! Stratified sites: a finite poset with a group on every chain and a
//! restriction map for every chain containment, running from the larger
//! chain's group to the smaller chain's group.
//!
//! The fundamental group of the classifying space is the colimit of this
//! diagram over the opposite of the subdivision poset, which is computed
//! here only when the order complex of the base is certified simply
//! connected (or the caller overrides the check).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::fpgroup::{
    colimit_with_basepoint, is_trivial, tietze_simplify_tracked, Colimit, DiagramError, Effort, GroupDiagram,
    GroupHom, GroupPresentation, HomError, HomStatus, Orientation, TietzeResult, TrivialityCertificate, Verdict,
    Word,
};
use crate::poset::{ComplexError, FinitePoset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SiteError {
    #[error("`{0}` is not a chain key of the base poset")]
    UnknownChainKey(String),
}

/// A group on every chain of `base` plus maps `(big, small) ↦ G_big → G_small`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedSite {
    base: FinitePoset,
    strata: BTreeMap<String, GroupPresentation>,
    maps: BTreeMap<(String, String), GroupHom>,
}

/// Assembles a site, checking only that every key names a chain of `p`.
/// Everything else is left to [`validate_site`].
pub fn site_from_diagram(
    p: FinitePoset,
    strata: BTreeMap<String, GroupPresentation>,
    maps: BTreeMap<(String, String), GroupHom>,
) -> Result<StratifiedSite, SiteError> {
    let known = |key: &str| p.chain_by_key(key).is_some_and(|c| p.chain_key(&c) == key);
    let keys = strata.keys().chain(maps.keys().flat_map(|(a, b)| [a, b]));
    for key in keys {
        if !known(key) {
            return Err(SiteError::UnknownChainKey(key.clone()));
        }
    }
    Ok(StratifiedSite {
        base: p,
        strata,
        maps,
    })
}

impl StratifiedSite {
    /// The same group on every chain with identity maps.
    pub fn constant(base: FinitePoset, g: &GroupPresentation) -> StratifiedSite {
        let sub = base.subdivision();
        let strata = sub.ids().iter().map(|k| (k.clone(), g.clone())).collect();
        let maps = sub
            .covers()
            .iter()
            .map(|&(small, big)| {
                let id = GroupHom::identity_on_names(g.clone(), g.clone()).expect("same generators");
                ((sub.id(big).into(), sub.id(small).into()), id)
            })
            .collect();
        StratifiedSite { base, strata, maps }
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn strata(&self) -> &BTreeMap<String, GroupPresentation> {
        &self.strata
    }

    pub fn maps(&self) -> &BTreeMap<(String, String), GroupHom> {
        &self.maps
    }

    pub fn stratum(&self, key: &str) -> Option<&GroupPresentation> {
        self.strata.get(key)
    }

    pub fn map(&self, big: &str, small: &str) -> Option<&GroupHom> {
        self.maps.get(&(String::from(big), String::from(small)))
    }

    /// The diagram over the subdivision poset, contravariant in containment.
    /// Missing maps are allowed and show up as missing edges.
    pub fn diagram(&self) -> Result<GroupDiagram, SiteIssue> {
        let sub = self.base.subdivision();
        let mut nodes = Vec::with_capacity(sub.len());
        for key in sub.ids() {
            let g = self.strata.get(key).ok_or_else(|| SiteIssue::MissingStratum(key.clone()))?;
            nodes.push(g.clone());
        }
        let mut edges = BTreeMap::new();
        for ((big, small), hom) in &self.maps {
            let (b, s) = (sub.index_of(big).unwrap(), sub.index_of(small).unwrap());
            edges.insert((s, b), hom.clone());
        }
        GroupDiagram::new(sub, Orientation::Contravariant, nodes, edges).map_err(|e| match e {
            DiagramError::NotACover { lower, upper } => SiteIssue::NotACover {
                big: upper,
                small: lower,
            },
            DiagramError::EndpointMismatch { from, to } => SiteIssue::EndpointMismatch { big: from, small: to },
            other => unreachable!("diagram assembled from every chain: {other}"),
        })
    }
}

/// A hard failure found by [`validate_site`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, thiserror::Error)]
pub enum SiteIssue {
    #[error("no group on chain `{0}`")]
    MissingStratum(String),
    #[error("missing map `{big} -> {small}`")]
    MissingEdgeHom { big: String, small: String },
    #[error("map `{big} -> {small}` is not along a chain cover")]
    NotACover { big: String, small: String },
    #[error("map `{big} -> {small}` does not match the groups on its chains")]
    EndpointMismatch { big: String, small: String },
    #[error("map `{big} -> {small}` is not a homomorphism: relator {relator} fails")]
    NotAHomomorphism { big: String, small: String, relator: String },
    #[error("composites `{big} -> {small}` along different paths disagree")]
    CompositesDisagree { big: String, small: String },
}

/// Something that could not be decided within budget.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SiteWarning {
    HomUnverified { big: String, small: String },
    CompositeUnverified { big: String, small: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<SiteIssue>,
    pub warnings: Vec<SiteWarning>,
    /// Maps proven to be homomorphisms.
    pub verified_maps: usize,
    /// Chain pairs joined by two or more containment paths.
    pub composites_checked: usize,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects every hard failure and warning of a site.
pub fn validate_site(s: &StratifiedSite, effort: &Effort) -> ValidationReport {
    let mut report = ValidationReport::default();
    let sub = s.base.subdivision();
    for key in sub.ids() {
        if !s.strata.contains_key(key) {
            report.failures.push(SiteIssue::MissingStratum(key.clone()));
        }
    }
    for &(small, big) in sub.covers() {
        let key = (String::from(sub.id(big)), String::from(sub.id(small)));
        if !s.maps.contains_key(&key) {
            report.failures.push(SiteIssue::MissingEdgeHom {
                big: key.0,
                small: key.1,
            });
        }
    }
    if !report.failures.is_empty() {
        return report;
    }
    let diagram = match s.diagram() {
        Ok(d) => d,
        Err(issue) => {
            report.failures.push(issue);
            return report;
        }
    };
    for ((big, small), hom) in &s.maps {
        let names = || (big.clone(), small.clone());
        if hom.status() == HomStatus::Verified {
            report.verified_maps += 1;
            continue;
        }
        match hom.verify(effort) {
            Ok(_) => report.verified_maps += 1,
            Err(HomError::NotAHomomorphism { relator, .. }) => {
                let (big, small) = names();
                report.failures.push(SiteIssue::NotAHomomorphism { big, small, relator });
            }
            Err(HomError::BudgetExhausted(_)) => {
                let (big, small) = names();
                report.warnings.push(SiteWarning::HomUnverified { big, small });
            }
        }
    }
    let composites = diagram.check_commutativity(effort);
    report.composites_checked = composites.checked.len();
    for (big, small) in composites.failures {
        report.failures.push(SiteIssue::CompositesDisagree { big, small });
    }
    for (big, small) in composites.unverified {
        report.warnings.push(SiteWarning::CompositeUnverified { big, small });
    }
    report
}

/// Number of connected components of the classifying space.
pub fn classifying_pi0(s: &StratifiedSite) -> usize {
    s.base.connected_components().len()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pi1Error {
    #[error("base poset has {components} connected components")]
    Disconnected { components: usize },
    #[error("order complex of the base is not certified simply connected ({verdict:?})")]
    IndexNotSimplyConnected {
        verdict: Verdict,
        certificate: TrivialityCertificate,
    },
    #[error("base has no maximum; a basepoint is required")]
    BasepointRequired,
    #[error("unknown basepoint `{0}`")]
    UnknownBasepoint(String),
    #[error(transparent)]
    Site(#[from] SiteIssue),
}

/// Output of [`classifying_pi1`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1 {
    pub basepoint: String,
    /// Simplified presentation.
    pub presentation: GroupPresentation,
    /// Raw colimit over the subdivision poset, nodes indexed as in
    /// `chain_keys`.
    pub colimit: Colimit,
    pub chain_keys: Vec<String>,
    pub tietze: TietzeResult,
    /// Simple-connectivity certificate for the base, absent when the check
    /// was overridden.
    pub index_certificate: Option<TrivialityCertificate>,
}

impl Pi1 {
    /// Image in `presentation` of a word over the group on `chain_key`.
    pub fn image(&self, chain_key: &str, w: &Word) -> Option<Word> {
        let node = self.chain_keys.iter().position(|k| k == chain_key)?;
        Some(self.colimit.cocone(node, w).substitute(&self.tietze.forward))
    }
}

/// Fundamental group of the classifying space of `s` at `basepoint`
/// (defaulting to the maximum of the base). The generators of the group on
/// the basepoint keep their names.
pub fn classifying_pi1(
    s: &StratifiedSite,
    basepoint: Option<&str>,
    effort: &Effort,
    override_index_check: bool,
) -> Result<Pi1, Pi1Error> {
    let components = classifying_pi0(s);
    if components != 1 {
        return Err(Pi1Error::Disconnected { components });
    }
    let bp = match basepoint {
        Some(b) => s.base.index_of(b).ok_or_else(|| Pi1Error::UnknownBasepoint(String::from(b)))?,
        None => s.base.maximum().ok_or(Pi1Error::BasepointRequired)?,
    };
    let bp_id = String::from(s.base.id(bp));
    let index_certificate = if override_index_check {
        None
    } else {
        let group = s.base.order_complex().edge_path_group(&bp_id).map_err(|e| match e {
            ComplexError::Disconnected { .. } | ComplexError::UnknownVertex(_) => {
                Pi1Error::Disconnected { components }
            }
        })?;
        let certificate = is_trivial(&group, effort);
        if certificate.verdict != Verdict::Trivial {
            return Err(Pi1Error::IndexNotSimplyConnected {
                verdict: certificate.verdict,
                certificate,
            });
        }
        Some(certificate)
    };
    let diagram = s.diagram()?;
    if let Some(&(small, big)) = diagram.missing_edges().first() {
        let sub = diagram.index();
        return Err(SiteIssue::MissingEdgeHom {
            big: sub.id(big).into(),
            small: sub.id(small).into(),
        }
        .into());
    }
    let chain_keys = diagram.index().ids().to_vec();
    let bp_node = diagram.index().index_of(&bp_id);
    let colimit = colimit_with_basepoint(&diagram, bp_node).expect("no missing edges");
    let tietze = tietze_simplify_tracked(&colimit.presentation, effort.tietze_passes);
    Ok(Pi1 {
        basepoint: bp_id,
        presentation: tietze.presentation.clone(),
        colimit,
        chain_keys,
        tietze,
        index_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, order, AbelianInvariants};
    use alloc::string::ToString;

    fn s3() -> GroupPresentation {
        GroupPresentation::parse(&["s", "t"], &["s^2", "t^3", "(s*t)^2"]).unwrap()
    }

    fn chain2() -> FinitePoset {
        FinitePoset::from_covers(&["p", "eta"], &[("p", "eta")]).unwrap()
    }

    /// Chain p < eta with G on eta, D on the link, D/I on p.
    fn dvr(inertia: &[&str]) -> StratifiedSite {
        let d = GroupPresentation::parse(&["d"], &["d^2"]).unwrap();
        let q = d.with_relators(&inertia.iter().map(|w| d.word(w).unwrap()).collect::<Vec<_>>()).unwrap();
        let mut strata = BTreeMap::new();
        strata.insert("eta".to_string(), s3());
        strata.insert("p<eta".to_string(), d.clone());
        strata.insert("p".to_string(), q.clone());
        let mut maps = BTreeMap::new();
        maps.insert(
            ("p<eta".to_string(), "eta".to_string()),
            GroupHom::from_named(d.clone(), s3(), &[("d", "s")]).unwrap(),
        );
        maps.insert(
            ("p<eta".to_string(), "p".to_string()),
            GroupHom::identity_on_names(d, q).unwrap(),
        );
        site_from_diagram(chain2(), strata, maps).unwrap()
    }

    #[test]
    fn dvr_site_is_accepted() {
        let r = validate_site(&dvr(&["d"]), &Effort::default());
        assert!(r.accepted(), "{:?}", r.failures);
        assert_eq!(r.verified_maps, 2);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn full_inertia_kills_everything() {
        let pi = classifying_pi1(&dvr(&["d"]), None, &Effort::default(), false).unwrap();
        assert_eq!(pi.basepoint, "eta");
        assert_eq!(order(&pi.presentation, 1000).unwrap(), 1);
        assert_eq!(pi.index_certificate.unwrap().verdict, Verdict::Trivial);
    }

    #[test]
    fn trivial_inertia_keeps_the_group() {
        let pi = classifying_pi1(&dvr(&[]), None, &Effort::default(), false).unwrap();
        assert_eq!(order(&pi.presentation, 1000).unwrap(), 6);
        // the basepoint generators survive simplification
        assert_eq!(pi.presentation.generators()[..2], ["s".to_string(), "t".to_string()]);
        let img = pi.image("p<eta", &Word::generator(0)).unwrap();
        assert_eq!(img, Word::generator(0));
    }

    #[test]
    fn missing_map_is_reported() {
        let mut s = dvr(&["d"]);
        s.maps.remove(&("p<eta".to_string(), "p".to_string()));
        let r = validate_site(&s, &Effort::default());
        assert_eq!(
            r.failures,
            [SiteIssue::MissingEdgeHom {
                big: "p<eta".into(),
                small: "p".into()
            }]
        );
        let e = classifying_pi1(&s, None, &Effort::default(), false).unwrap_err();
        assert!(matches!(e, Pi1Error::Site(SiteIssue::MissingEdgeHom { .. })));
    }

    #[test]
    fn order_mismatched_inclusion_is_not_a_homomorphism() {
        let mut s = dvr(&["d"]);
        let d = s.stratum("p<eta").unwrap().clone();
        s.maps.insert(
            ("p<eta".to_string(), "eta".to_string()),
            GroupHom::from_named(d, s3(), &[("d", "t")]).unwrap(),
        );
        let r = validate_site(&s, &Effort::default());
        assert!(matches!(r.failures[..], [SiteIssue::NotAHomomorphism { .. }]));
    }

    #[test]
    fn unknown_chain_key() {
        let strata = BTreeMap::from([("eta<p".to_string(), s3())]);
        let e = site_from_diagram(chain2(), strata, BTreeMap::new()).unwrap_err();
        assert_eq!(e, SiteError::UnknownChainKey("eta<p".into()));
    }

    #[test]
    fn pi0_counts_components() {
        let two = FinitePoset::from_covers(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
        let s = StratifiedSite::constant(two, &GroupPresentation::trivial());
        assert_eq!(classifying_pi0(&s), 2);
        let e = classifying_pi1(&s, Some("a"), &Effort::default(), false).unwrap_err();
        assert_eq!(e, Pi1Error::Disconnected { components: 2 });
        let empty = StratifiedSite::constant(FinitePoset::from_covers::<&str>(&[], &[]).unwrap(), &s3());
        assert_eq!(classifying_pi0(&empty), 0);
    }

    #[test]
    fn singleton_site_returns_its_group() {
        let p = FinitePoset::from_covers::<&str>(&["x"], &[]).unwrap();
        let pi = classifying_pi1(&StratifiedSite::constant(p, &s3()), None, &Effort::default(), false).unwrap();
        assert_eq!(pi.presentation, s3());
    }

    #[test]
    fn constant_site_over_three_chain() {
        let p = FinitePoset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = StratifiedSite::constant(p, &s3());
        let r = validate_site(&s, &Effort::default());
        assert!(r.accepted());
        assert!(r.composites_checked > 0);
        let pi = classifying_pi1(&s, None, &Effort::default(), false).unwrap();
        assert_eq!(pi.presentation.generators(), s3().generators());
        assert_eq!(order(&pi.presentation, 1000).unwrap(), 6);
    }

    #[test]
    fn crown_needs_override() {
        let crown = FinitePoset::from_covers(
            &["a", "b", "x", "y"],
            &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")],
        )
        .unwrap();
        let s = StratifiedSite::constant(crown, &GroupPresentation::trivial());
        assert_eq!(
            classifying_pi1(&s, None, &Effort::default(), false).unwrap_err(),
            Pi1Error::BasepointRequired
        );
        let e = classifying_pi1(&s, Some("x"), &Effort::default(), false).unwrap_err();
        assert!(matches!(e, Pi1Error::IndexNotSimplyConnected { verdict: Verdict::NonTrivial, .. }));
        let pi = classifying_pi1(&s, Some("x"), &Effort::default(), true).unwrap();
        assert!(pi.index_certificate.is_none());
        // the strict colimit of trivial groups is trivial even though the
        // nerve has a loop; this is what the precondition guards against
        assert_eq!(abelianization(&pi.presentation), AbelianInvariants::trivial());
    }

    #[test]
    fn disagreeing_composites_are_caught() {
        // on a 2-chain no two containment paths exist, so use a 3-chain
        // with a twisted map on one face
        let p = FinitePoset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let mut s = StratifiedSite::constant(p, &s3());
        let twist = GroupHom::from_named(s3(), s3(), &[("s", "t*s*t^-1"), ("t", "t")]).unwrap();
        s.maps.insert(("a<b<c".to_string(), "a<c".to_string()), twist);
        let r = validate_site(&s, &Effort::default());
        assert!(r.failures.iter().any(|f| matches!(f, SiteIssue::CompositesDisagree { .. })));
    }
}
