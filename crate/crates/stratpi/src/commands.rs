//! One function per subcommand, each turning parsed input into a
//! [`Report`].

use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stratpi_core::arith::cyclotomic::reduced_modulus;
use stratpi_core::arith::{
    unit_group_invariants, verify_formula, CyclotomicLevel, DedekindModel, ModelError, Outcome, VerificationReport,
    VerifyError,
};
use stratpi_core::decollage::{classifying_pi1, validate_site, Pi1Error, StratifiedSite};
use stratpi_core::fincat::FiniteCategory;
use stratpi_core::fpgroup::{
    abelianization, is_trivial, tietze_simplify_tracked, todd_coxeter, Effort, GroupError, GroupPresentation,
    HomError, Verdict, Word,
};
use stratpi_core::poset::FinitePoset;
use stratpi_core::sample::random_dedekind_model;

use crate::format::word_text;
use crate::report::{
    certificate_json, evidence_text, group_json, hom_report, invariants_json, verdict_name, Exit, Report,
};

/// Largest `|G_K|` drawn by the batch sampler.
pub const BATCH_MAX_ORDER: usize = 24;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub effort: Effort,
    pub json: bool,
    pub seed: u64,
    pub override_index_check: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            effort: Effort::default(),
            json: false,
            seed: DEFAULT_SEED,
            override_index_check: false,
        }
    }
}

fn ids(p: &FinitePoset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&i| p.id(i).to_string()).collect()
}

fn list_or_none(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.join(", ")
    }
}

/// The full subposet on `members`.
fn restrict(p: &FinitePoset, members: &[usize]) -> FinitePoset {
    let mut relation = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if p.lt(a, b) {
                relation.push((i, j));
            }
        }
    }
    FinitePoset::from_relation(ids(p, members), &relation).expect("suborder of a partial order")
}

pub fn cmd_poset(p: &FinitePoset, cfg: &RunConfig) -> Report {
    let mut r = Report::new("poset");
    let maximal = ids(p, &p.maximal_elements());
    let minimal = ids(p, &p.minimal_elements());
    let directed = p.is_directed().unwrap_or(false);
    let codirected = p.is_codirected().unwrap_or(false);
    let components = p.connected_components();
    let subdivision = p.subdivision().len();

    r.line(format!("elements: {}", p.len()));
    r.line(format!("maximal: {}", list_or_none(&maximal)));
    r.line(format!("minimal: {}", list_or_none(&minimal)));
    r.line(format!("directed: {directed}{}", if directed { " (irreducible model)" } else { "" }));
    r.line(format!("codirected: {codirected}{}", if codirected { " (local model)" } else { "" }));
    r.line(format!("w-local: {}", p.is_w_local()));
    r.line(format!("components: {}", components.len()));
    r.line(format!("subdivision: {subdivision} chains"));

    let mut complex = Vec::new();
    for members in &components {
        let q = restrict(p, members);
        let g = q.order_complex().edge_path_group(q.id(0)).expect("connected by construction");
        let cert = is_trivial(&g, &cfg.effort);
        r.line(format!(
            "order-complex pi1 at {}: {} ({})",
            q.id(0),
            verdict_name(cert.verdict),
            evidence_text(&cert.evidence)
        ));
        if cert.verdict == Verdict::Unknown {
            r.exit = r.exit.max(Exit::Budget);
        }
        complex.push(json!({
            "basepoint": q.id(0),
            "elements": q.ids(),
            "edge_path_group": group_json(&g),
            "certificate": certificate_json(&cert),
        }));
    }
    r.set("poset", serde_json::to_value(crate::format::PosetJson::from(p)).unwrap());
    r.set("maximal", maximal);
    r.set("minimal", minimal);
    r.set("maximum", p.maximum().map(|i| p.id(i).to_string()));
    r.set("minimum", p.minimum().map(|i| p.id(i).to_string()));
    r.set("directed", directed);
    r.set("codirected", codirected);
    r.set("irreducible_model", directed);
    r.set("local_model", codirected);
    r.set("w_local", p.is_w_local());
    r.set("components", components.iter().map(|c| ids(p, c)).collect::<Vec<_>>());
    r.set("subdivision_size", subdivision);
    r.set("order_complex_pi1", complex);
    r
}

/// Order of a presentation: `Some(None)` for infinite, `None` when the
/// budget ran out.
fn order_json(g: &GroupPresentation, effort: &Effort) -> (Value, Option<Option<usize>>) {
    let ab = abelianization(g);
    if ab.free_rank() > 0 {
        return (json!({"value": "infinite", "reason": "abelianization has a free part"}), Some(None));
    }
    match todd_coxeter(g, &[], effort.max_cosets) {
        Ok(t) => (json!({"value": t.index(), "cosets_defined": t.total_defined}), Some(Some(t.index()))),
        Err(o) => (
            json!({"value": null, "budget_exhausted": {"max_cosets": o.max_cosets, "total_defined": o.total_defined}}),
            None,
        ),
    }
}

fn describe_group(g: &GroupPresentation, order: Option<Option<usize>>) -> String {
    match order {
        Some(Some(1)) => "trivial (order 1)".into(),
        Some(Some(n)) => format!("{g} (order {n})"),
        Some(None) => format!("{g} (infinite)"),
        None => format!("{g} (order unknown within budget)"),
    }
}

pub fn cmd_pi1(s: &StratifiedSite, basepoint: Option<&str>, cfg: &RunConfig) -> Report {
    let mut r = Report::new("pi1");
    let validation = validate_site(s, &cfg.effort);
    r.set(
        "validation",
        json!({
            "failures": validation.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "warnings": validation.warnings.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>(),
            "verified_maps": validation.verified_maps,
            "composites_checked": validation.composites_checked,
        }),
    );
    if !validation.accepted() {
        for f in &validation.failures {
            r.line(format!("invalid site: {f}"));
        }
        r.fail(Exit::Input, "invalid_site", validation.failures[0].to_string());
        return r;
    }
    for w in &validation.warnings {
        r.line(format!("warning: {w:?}"));
    }
    let pi = match classifying_pi1(s, basepoint, &cfg.effort, cfg.override_index_check) {
        Ok(pi) => pi,
        Err(e) => {
            let (exit, kind) = match &e {
                Pi1Error::Disconnected { .. } => (Exit::Precondition, "Disconnected"),
                Pi1Error::IndexNotSimplyConnected { verdict: Verdict::Unknown, .. } => {
                    (Exit::Budget, "IndexNotSimplyConnected")
                }
                Pi1Error::IndexNotSimplyConnected { .. } => (Exit::Precondition, "IndexNotSimplyConnected"),
                Pi1Error::BasepointRequired => (Exit::Precondition, "BasepointRequired"),
                Pi1Error::UnknownBasepoint(_) => (Exit::Input, "UnknownBasepoint"),
                Pi1Error::Site(_) => (Exit::Input, "InvalidSite"),
            };
            if let Pi1Error::IndexNotSimplyConnected { certificate, .. } = &e {
                r.set("index_certificate", certificate_json(certificate));
            }
            r.fail(exit, kind, e.to_string());
            return r;
        }
    };
    let ab = abelianization(&pi.presentation);
    let cert = is_trivial(&pi.presentation, &cfg.effort);
    let (order, known) = order_json(&pi.presentation, &cfg.effort);
    r.line(format!("basepoint: {}", pi.basepoint));
    r.line(format!("pi1: {}", describe_group(&pi.presentation, known)));
    r.line(format!("abelianization: {ab}"));
    r.line(format!("certificate: {} ({})", verdict_name(cert.verdict), evidence_text(&cert.evidence)));
    match &pi.index_certificate {
        Some(c) => r.line(format!("base simply connected: {}", evidence_text(&c.evidence))),
        None => r.line("base simple-connectivity check overridden"),
    }
    r.set("basepoint", pi.basepoint.clone());
    r.set("presentation", group_json(&pi.presentation));
    r.set(
        "colimit",
        json!({
            "generators": pi.colimit.presentation.num_generators(),
            "relators": pi.colimit.presentation.relators().len(),
            "chains": pi.chain_keys,
        }),
    );
    r.set("abelianization", invariants_json(&ab));
    r.set("certificate", certificate_json(&cert));
    r.set("order", order);
    r.set("index_certificate", pi.index_certificate.as_ref().map(certificate_json));
    r.set("override_index_check", cfg.override_index_check);
    if known.is_none() {
        r.fail(Exit::Budget, "budget_exhausted", "group order not determined within the coset budget");
    }
    r
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Match => "match",
        Outcome::Mismatch => "mismatch",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn outcome_exit(o: Outcome) -> Exit {
    match o {
        Outcome::Match => Exit::Ok,
        Outcome::Mismatch => Exit::Mismatch,
        Outcome::Inconclusive => Exit::Budget,
    }
}

fn verification_json(v: &VerificationReport) -> Value {
    json!({
        "outcome": outcome_name(v.outcome),
        "computed": group_json(&v.computed),
        "expected": group_json(&v.expected),
        "computed_order": v.computed_order,
        "expected_order": v.expected_order,
        "computed_cosets_defined": v.computed_cosets_defined,
        "expected_cosets_defined": v.expected_cosets_defined,
        "forward": v.forward.as_ref().map(hom_report),
        "backward": v.backward.as_ref().map(hom_report),
        "round_trip": v.round_trip,
        "detail": v.detail,
    })
}

/// Kind tag of a model or verification failure.
fn verify_error_kind(e: &VerifyError) -> (Exit, &'static str) {
    match e {
        VerifyError::Model(ModelError::Inclusion {
            source: HomError::NotAHomomorphism { .. },
            ..
        }) => (Exit::Input, "NotAHomomorphism"),
        VerifyError::Model(ModelError::Inclusion {
            source: HomError::BudgetExhausted(_),
            ..
        }) => (Exit::Budget, "BudgetExhausted"),
        VerifyError::Model(_) => (Exit::Input, "InvalidModel"),
        VerifyError::Pi1(_) => (Exit::Precondition, "Pi1"),
    }
}

pub fn cmd_dedekind_verify(m: &DedekindModel, cfg: &RunConfig) -> Report {
    let mut r = Report::new("dedekind verify");
    match verify_formula(m, &cfg.effort) {
        Ok(v) => {
            r.line(format!("outcome: {}", outcome_name(v.outcome)));
            r.line(format!("computed pi1: {}", v.computed));
            r.line(format!("expected quotient: {}", v.expected));
            if let (Some(a), Some(b)) = (v.computed_order, v.expected_order) {
                r.line(format!("orders: {a} vs {b}"));
            }
            if v.forward.is_some() {
                r.line(format!("canonical maps verified; mutually inverse: {}", v.round_trip));
            }
            if !v.detail.is_empty() {
                r.line(format!("detail: {}", v.detail));
            }
            r.exit = outcome_exit(v.outcome);
            r.set("verification", verification_json(&v));
        }
        Err(e) => {
            let (exit, kind) = verify_error_kind(&e);
            r.fail(exit, kind, e.to_string());
        }
    }
    r
}

/// Result for one sampled instance.
struct BatchItem {
    group_order: usize,
    primes: usize,
    oracle_order: usize,
    result: Result<VerificationReport, VerifyError>,
}

/// Samples `n` models from `cfg.seed` and verifies them on worker threads.
/// Instances are drawn sequentially, so results depend only on the seed.
pub fn cmd_dedekind_batch(n: usize, cfg: &RunConfig) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples: Vec<_> = (0..n).map(|_| random_dedekind_model(&mut rng, BATCH_MAX_ORDER)).collect();
    let workers = thread::available_parallelism().map_or(1, |k| k.get()).min(n.max(1));
    let mut results: Vec<Option<BatchItem>> = (0..n).map(|_| None).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let samples = &samples;
                let effort = cfg.effort;
                scope.spawn(move || {
                    (w..samples.len())
                        .step_by(workers)
                        .map(|i| {
                            let s = &samples[i];
                            let item = BatchItem {
                                group_order: s.group.order(),
                                primes: s.model.primes().len(),
                                oracle_order: s.oracle_order,
                                result: verify_formula(&s.model, &effort),
                            };
                            (i, item)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, item) in h.join().expect("worker panicked") {
                results[i] = Some(item);
            }
        }
    });

    let mut r = Report::new("dedekind verify");
    let mut instances = Vec::with_capacity(n);
    let (mut matches, mut mismatches, mut inconclusive, mut errors) = (0, 0, 0, 0);
    let mut exit = Exit::Ok;
    for (i, item) in results.into_iter().enumerate() {
        let item = item.expect("every index assigned");
        let mut entry = json!({
            "index": i,
            "group_order": item.group_order,
            "primes": item.primes,
            "oracle_order": item.oracle_order,
        });
        match &item.result {
            Ok(v) => {
                let mut outcome = v.outcome;
                if outcome == Outcome::Match && v.computed_order != Some(item.oracle_order) {
                    outcome = Outcome::Mismatch;
                }
                match outcome {
                    Outcome::Match => matches += 1,
                    Outcome::Mismatch => mismatches += 1,
                    Outcome::Inconclusive => inconclusive += 1,
                }
                exit = exit.max(outcome_exit(outcome));
                r.line(format!(
                    "instance {i}: {} (|G_K| = {}, order {}, oracle {})",
                    outcome_name(outcome),
                    item.group_order,
                    v.computed_order.map_or("?".into(), |o| o.to_string()),
                    item.oracle_order
                ));
                entry["outcome"] = outcome_name(outcome).into();
                entry["computed_order"] = v.computed_order.into();
                entry["expected_order"] = v.expected_order.into();
                entry["computed_cosets_defined"] = v.computed_cosets_defined.into();
                entry["expected_cosets_defined"] = v.expected_cosets_defined.into();
                entry["round_trip"] = v.round_trip.into();
            }
            Err(e) => {
                errors += 1;
                let (e_exit, kind) = verify_error_kind(e);
                exit = exit.max(e_exit);
                r.line(format!("instance {i}: error ({kind}): {e}"));
                entry["outcome"] = "error".into();
                entry["error"] = json!({"kind": kind, "message": e.to_string()});
            }
        }
        instances.push(entry);
    }
    r.line(format!("{matches}/{n} match (seed {})", cfg.seed));
    r.exit = exit;
    r.set("seed", cfg.seed);
    r.set("batch", n);
    r.set("max_group_order", BATCH_MAX_ORDER);
    r.set("instances", instances);
    r.set(
        "summary",
        json!({"match": matches, "mismatch": mismatches, "inconclusive": inconclusive, "error": errors}),
    );
    r
}

pub fn cmd_cyclotomic(modulus: u64, primes: &[u64]) -> Report {
    let mut r = Report::new("cyclotomic");
    let level = match CyclotomicLevel::new(modulus) {
        Ok(l) => l,
        Err(e) => return Report::failure("cyclotomic", Exit::Input, "bad_arguments", e.to_string()),
    };
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let quotient = match level.quotient(&primes) {
        Ok(q) => q,
        Err(e) => return Report::failure("cyclotomic", Exit::Input, "bad_arguments", e.to_string()),
    };
    let reduced = reduced_modulus(modulus, &primes);
    let oracle = unit_group_invariants(reduced);
    let consistent = quotient == oracle;
    r.line(format!(
        "{quotient}  [= (Z/{reduced})×: {}]",
        if consistent { "consistent" } else { "INCONSISTENT" }
    ));
    if !consistent {
        r.fail(Exit::Mismatch, "inconsistent", format!("oracle gives {oracle}"));
    }
    r.set("modulus", modulus);
    r.set("primes", primes);
    r.set(
        "factors",
        level
            .factors()
            .iter()
            .map(|f| json!({"prime": f.prime, "prime_power": f.prime_power, "order": f.order, "generator": f.generator}))
            .collect::<Vec<_>>(),
    );
    r.set("quotient", invariants_json(&quotient));
    r.set("reduced_modulus", reduced);
    r.set("oracle", invariants_json(&oracle));
    r.set("consistent", consistent);
    r
}

pub fn cmd_cat(c: &FiniteCategory) -> Report {
    let mut r = Report::new("cat");
    let name = |x: Option<usize>| x.map(|i| c.objects()[i].clone());
    let names = |xs: Vec<usize>| xs.into_iter().map(|i| c.objects()[i].clone()).collect::<Vec<_>>();
    let terminal = name(c.has_terminal());
    let initial = name(c.has_initial());
    let weakly_terminal = names(c.weakly_terminal());
    let weakly_initial = names(c.weakly_initial());
    let rigidity = c.rigidity_check();
    let show = |x: &Option<String>| x.clone().unwrap_or_else(|| "none".into());

    r.line(format!("objects: {}; morphisms: {}", c.objects().len(), c.morphisms().len()));
    r.line(format!("terminal: {}", show(&terminal)));
    r.line(format!("initial: {}", show(&initial)));
    r.line(format!("weakly terminal: {}", list_or_none(&weakly_terminal)));
    r.line(format!("weakly initial: {}", list_or_none(&weakly_initial)));
    r.line(format!("filtered: {}", c.is_filtered()));
    r.line(format!("cofiltered: {}", c.is_cofiltered()));
    r.line(format!(
        "rigidity: hypothesis {}; witness {}; counterexample {}",
        rigidity.hypothesis,
        show(&name(rigidity.witness)),
        rigidity.counterexample
    ));
    r.set("terminal", terminal);
    r.set("initial", initial);
    r.set("weakly_terminal", weakly_terminal);
    r.set("weakly_initial", weakly_initial);
    r.set("filtered", c.is_filtered());
    r.set("cofiltered", c.is_cofiltered());
    r.set(
        "rigidity",
        json!({
            "filtered": rigidity.filtered,
            "witness": name(rigidity.witness),
            "hypothesis": rigidity.hypothesis,
            "terminal": name(rigidity.terminal),
            "counterexample": rigidity.counterexample,
        }),
    );
    if rigidity.counterexample {
        r.fail(Exit::Mismatch, "rigidity_counterexample", "hypothesis holds without a terminal object");
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOp {
    Abelianize,
    Simplify,
    Tc,
    IsTrivial,
}

pub fn cmd_group(op: GroupOp, g: &GroupPresentation, subgroup: &[String], cfg: &RunConfig) -> Report {
    let mut r = Report::new(match op {
        GroupOp::Abelianize => "group abelianize",
        GroupOp::Simplify => "group simplify",
        GroupOp::Tc => "group tc",
        GroupOp::IsTrivial => "group istrivial",
    });
    r.set("input", group_json(g));
    match op {
        GroupOp::Abelianize => {
            let a = abelianization(g);
            r.line(a.to_string());
            r.set("abelianization", invariants_json(&a));
        }
        GroupOp::Simplify => {
            let t = tietze_simplify_tracked(g, cfg.effort.tietze_passes);
            r.line(t.presentation.to_string());
            r.set("presentation", group_json(&t.presentation));
            let forward: serde_json::Map<String, Value> = g
                .generators()
                .iter()
                .zip(&t.forward)
                .map(|(n, w)| (n.clone(), word_text(&t.presentation, w).into()))
                .collect();
            r.set("forward", forward);
        }
        GroupOp::Tc => {
            let words: Result<Vec<Word>, GroupError> = subgroup.iter().map(|w| g.word(w)).collect();
            let words = match words {
                Ok(w) => w,
                Err(e) => {
                    r.fail(Exit::Input, "parse", e.to_string());
                    return r;
                }
            };
            r.set("subgroup", subgroup.to_vec());
            match todd_coxeter(g, &words, cfg.effort.max_cosets) {
                Ok(t) => {
                    r.line(format!("index {}", t.index()));
                    r.line(format!("cosets defined: {}", t.total_defined));
                    r.set("index", t.index());
                    r.set("cosets_defined", t.total_defined);
                    r.set(
                        "permutations",
                        (0..g.num_generators()).map(|i| t.permutation(i)).collect::<Vec<_>>(),
                    );
                }
                Err(o) => {
                    r.set("budget", json!({"max_cosets": o.max_cosets, "total_defined": o.total_defined}));
                    r.fail(Exit::Budget, "overflow", o.to_string());
                }
            }
        }
        GroupOp::IsTrivial => {
            let c = is_trivial(g, &cfg.effort);
            r.line(format!("{} ({})", verdict_name(c.verdict), evidence_text(&c.evidence)));
            r.set("certificate", certificate_json(&c));
            r.set("recheck", c.recheck(g));
            if c.verdict == Verdict::Unknown {
                r.exit = Exit::Budget;
            }
        }
    }
    r
}
