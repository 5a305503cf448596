//! JSON input formats for posets, groups, categories, sites and Dedekind
//! models, with conversion into the core types and back.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use stratpi_core::arith::{DedekindModel, ModelError, PrimeData};
use stratpi_core::decollage::{site_from_diagram, SiteError, StratifiedSite};
use stratpi_core::fincat::{CategoryError, FiniteCategory};
use stratpi_core::fpgroup::{GroupError, GroupHom, GroupPresentation, Word};
use stratpi_core::poset::{FinitePoset, PosetError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("poset: {0}")]
    Poset(#[from] PosetError),
    #[error("{context}: {source}")]
    Group { context: String, source: GroupError },
    #[error("category: {0}")]
    Category(#[from] CategoryError),
    #[error("site: {0}")]
    Site(#[from] SiteError),
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("map key `{0}` is not of the form `<bigchain> -> <smallchain>`")]
    MapKey(String),
    #[error("map `{0}` refers to a chain without a group")]
    MapWithoutStratum(String),
}

fn group_err(context: impl Into<String>) -> impl FnOnce(GroupError) -> InputError {
    let context = context.into();
    move |source| InputError::Group { context, source }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn build(&self) -> Result<FinitePoset, InputError> {
        let covers: Vec<(&str, &str)> = self.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        Ok(FinitePoset::from_covers(&elements, &covers)?)
    }
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            elements: p.ids().to_vec(),
            covers: p.covers().iter().map(|&(a, b)| [p.id(a).into(), p.id(b).into()]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

impl GroupJson {
    /// Parses every relator; errors name the relator and the byte offset.
    pub fn build(&self, context: &str) -> Result<GroupPresentation, InputError> {
        let free = GroupPresentation::free(self.generators.clone()).map_err(group_err(context))?;
        let mut words = Vec::with_capacity(self.relators.len());
        for (i, r) in self.relators.iter().enumerate() {
            words.push(free.word(r).map_err(group_err(format!("{context}, relator {i} `{r}`")))?);
        }
        free.with_relators(&words).map_err(group_err(context))
    }
}

impl From<&GroupPresentation> for GroupJson {
    fn from(g: &GroupPresentation) -> Self {
        GroupJson {
            generators: g.generators().to_vec(),
            relators: g.relators().iter().map(|r| r.display(g.generators()).to_string()).collect(),
        }
    }
}

pub fn word_text(g: &GroupPresentation, w: &Word) -> String {
    w.display(g.generators()).to_string()
}

/// A map given as `{"generator": "image word", ...}`.
pub type HomJson = BTreeMap<String, String>;

fn build_hom(
    source: &GroupPresentation,
    target: &GroupPresentation,
    images: &HomJson,
    context: &str,
) -> Result<GroupHom, InputError> {
    let pairs: Vec<(&str, &str)> = images.iter().map(|(g, w)| (g.as_str(), w.as_str())).collect();
    GroupHom::from_named(source.clone(), target.clone(), &pairs).map_err(group_err(context))
}

pub fn hom_json(h: &GroupHom) -> HomJson {
    h.source()
        .generators()
        .iter()
        .zip(h.images())
        .map(|(g, w)| (g.clone(), word_text(h.target(), w)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    /// `[f, g, h]` means `g ∘ f = h`.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

impl CategoryJson {
    pub fn build(&self) -> Result<FiniteCategory, InputError> {
        let objects: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        let morphisms: Vec<(&str, &str, &str)> =
            self.morphisms.iter().map(|m| (m.id.as_str(), m.src.as_str(), m.tgt.as_str())).collect();
        let identities: Vec<(&str, &str)> = self.identities.iter().map(|(o, m)| (o.as_str(), m.as_str())).collect();
        let compose: Vec<(&str, &str, &str)> =
            self.compose.iter().map(|[f, g, h]| (f.as_str(), g.as_str(), h.as_str())).collect();
        Ok(FiniteCategory::from_named(&objects, &morphisms, &identities, &compose)?)
    }
}

impl From<&FiniteCategory> for CategoryJson {
    fn from(c: &FiniteCategory) -> Self {
        let name = |f: usize| c.morphisms()[f].id.clone();
        CategoryJson {
            objects: c.objects().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismJson {
                    id: m.id.clone(),
                    src: c.objects()[m.src].clone(),
                    tgt: c.objects()[m.tgt].clone(),
                })
                .collect(),
            identities: (0..c.objects().len()).map(|x| (c.objects()[x].clone(), name(c.identity(x)))).collect(),
            compose: c.composition_table().into_iter().map(|(f, g, h)| [name(f), name(g), name(h)]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteJson {
    pub poset: PosetJson,
    pub strata: BTreeMap<String, GroupJson>,
    /// Keyed by `"<bigchain> -> <smallchain>"`.
    #[serde(default)]
    pub maps: BTreeMap<String, HomJson>,
}

pub fn map_key(big: &str, small: &str) -> String {
    format!("{big} -> {small}")
}

fn split_map_key(key: &str) -> Result<(&str, &str), InputError> {
    let (big, small) = key.split_once("->").ok_or_else(|| InputError::MapKey(key.into()))?;
    let (big, small) = (big.trim(), small.trim());
    if big.is_empty() || small.is_empty() || small.contains("->") {
        return Err(InputError::MapKey(key.into()));
    }
    Ok((big, small))
}

impl SiteJson {
    pub fn build(&self) -> Result<StratifiedSite, InputError> {
        let base = self.poset.build()?;
        let mut strata = BTreeMap::new();
        for (key, g) in &self.strata {
            strata.insert(key.clone(), g.build(&format!("stratum `{key}`"))?);
        }
        let mut maps = BTreeMap::new();
        for (key, images) in &self.maps {
            let (big, small) = split_map_key(key)?;
            let (Some(source), Some(target)) = (strata.get(big), strata.get(small)) else {
                return Err(InputError::MapWithoutStratum(key.clone()));
            };
            let hom = build_hom(source, target, images, &format!("map `{key}`"))?;
            maps.insert((big.to_string(), small.to_string()), hom);
        }
        Ok(site_from_diagram(base, strata, maps)?)
    }
}

impl From<&StratifiedSite> for SiteJson {
    fn from(s: &StratifiedSite) -> Self {
        SiteJson {
            poset: s.base().into(),
            strata: s.strata().iter().map(|(k, g)| (k.clone(), g.into())).collect(),
            maps: s.maps().iter().map(|((b, sm), h)| (map_key(b, sm), hom_json(h))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeJson {
    pub name: String,
    #[serde(rename = "D")]
    pub decomposition: GroupJson,
    /// Images in `G_K` of the generators of `D`.
    pub incl: HomJson,
    /// Inertia generators as words over `D`.
    #[serde(default)]
    pub inertia: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    #[serde(rename = "G_K")]
    pub g_k: GroupJson,
    pub primes: Vec<PrimeJson>,
}

impl ModelJson {
    pub fn build(&self) -> Result<DedekindModel, InputError> {
        let g_k = self.g_k.build("G_K")?;
        let mut primes = Vec::with_capacity(self.primes.len());
        for p in &self.primes {
            let ctx = |what: &str| format!("prime `{}`, {what}", p.name);
            let decomposition = p.decomposition.build(&ctx("D"))?;
            let inclusion = build_hom(&decomposition, &g_k, &p.incl, &ctx("incl"))?;
            let mut inertia = Vec::with_capacity(p.inertia.len());
            for (i, w) in p.inertia.iter().enumerate() {
                inertia.push(decomposition.word(w).map_err(group_err(ctx(&format!("inertia {i} `{w}`"))))?);
            }
            primes.push(PrimeData {
                name: p.name.clone(),
                decomposition,
                inclusion,
                inertia,
            });
        }
        Ok(DedekindModel::new(g_k, primes)?)
    }
}

impl From<&DedekindModel> for ModelJson {
    fn from(m: &DedekindModel) -> Self {
        ModelJson {
            g_k: m.g_k().into(),
            primes: m
                .primes()
                .iter()
                .map(|p| PrimeJson {
                    name: p.name.clone(),
                    decomposition: (&p.decomposition).into(),
                    incl: hom_json(&p.inclusion),
                    inertia: p.inertia.iter().map(|w| word_text(&p.decomposition, w)).collect(),
                })
                .collect(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}
