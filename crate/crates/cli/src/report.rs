//! JSON documents for each subcommand.
//!
//! `serde_json::Map` keeps keys sorted, so equal inputs give equal bytes.
//! Elements of rank-one groups are plain integers, other elements are
//! coordinate arrays; both re-parse through the CLI element syntax.
//! Matrix indices are 1-based.

use gradedpi_core::{
    canonical_form, equiv_canonical_z, AlmostNondegeneracy, ClassificationResult, DegeneracyReason, DegreeWord,
    ElementaryGrading, FamilyMatch, GoodSequenceVerdict, GroupElement, IdentityReport, MinimalIdentitySet, Witness,
};
use serde_json::{json, Value};

fn element(e: &GroupElement) -> Value {
    match e.coords() {
        [c] => json!(c),
        cs => json!(cs),
    }
}

fn elements(es: &[GroupElement]) -> Value {
    Value::Array(es.iter().map(element).collect())
}

fn word(w: &DegreeWord) -> Value {
    elements(w.letters())
}

fn grading(g: &ElementaryGrading) -> Value {
    json!({
        "group": g.descriptor().to_string(),
        "tuple": elements(g.tuple().entries()),
    })
}

pub fn analyze(g: &ElementaryGrading) -> Value {
    let components: Vec<Value> = g
        .components()
        .map(|(degree, c)| {
            let pairs: Vec<[usize; 2]> = c.pairs().iter().map(|&(p, q)| [p + 1, q + 1]).collect();
            json!({ "degree": element(degree), "dim": c.dim(), "pairs": pairs })
        })
        .collect();
    let profile = g
        .difference_profile()
        .ok()
        .map(|p| json!({ "steps": elements(&p.steps), "palindromic": p.palindromic }));
    let almost = gradedpi_core::is_almost_nondegenerate(g);
    let nondeg = gradedpi_core::is_nondegenerate(g);
    let reason = nondeg.reason.as_ref().map(|r| match r {
        DegeneracyReason::InfiniteGroup => "infinite_group",
        DegeneracyReason::SupportNotWholeGroup => "support_not_whole_group",
        DegeneracyReason::Identity(_) => "identity",
    });
    json!({
        "group": g.descriptor().to_string(),
        "tuple": elements(g.tuple().entries()),
        "n": g.size(),
        "distinct_entries": g.distinct_entries(),
        "reduced_tuple": elements(g.reduce_distinct().tuple().entries()),
        "canonical_form": elements(canonical_form(g.tuple()).entries()),
        "support": elements(g.support()),
        "components": components,
        "difference_profile": profile,
        "equiv_canonical_z": equiv_canonical_z(g).ok(),
        "almost_nondegenerate": almost.almost_nondegenerate,
        "witness": almost.witness.as_ref().map(word),
        "nondegenerate": nondeg.nondegenerate,
        "degeneracy_reason": reason,
    })
}

pub fn check(g: &ElementaryGrading, r: &IdentityReport) -> Value {
    let verdict = match (r.is_identity, r.is_trivial) {
        (true, false) => "nontrivial_identity",
        (true, true) => "trivial_identity",
        (false, _) => "not_identity",
    };
    let (kind, witness) = match &r.witness {
        Witness::NonIdentityChain(chain) => ("chain", json!(chain.iter().map(|i| i + 1).collect::<Vec<_>>())),
        Witness::TrivialInterval { start, end } => ("trivial_interval", json!([start + 1, end + 1])),
        Witness::None => ("none", Value::Null),
    };
    json!({
        "group": g.descriptor().to_string(),
        "tuple": elements(g.tuple().entries()),
        "word": word(&r.word),
        "identity": r.is_identity,
        "trivial": r.is_trivial,
        "verdict": verdict,
        "witness_kind": kind,
        "witness": witness,
    })
}

pub fn enumerate(g: &ElementaryGrading, set: &MinimalIdentitySet, verdict: &AlmostNondegeneracy) -> Value {
    json!({
        "grading": grading(g),
        "max_len": set.max_len,
        "minimal_identities": set.identities.iter().map(word).collect::<Vec<_>>(),
        "almost_nondegenerate": verdict.almost_nondegenerate,
        "witness": verdict.witness.as_ref().map(word),
    })
}

pub fn classify(r: &ClassificationResult) -> Value {
    let mut canonical = Vec::new();
    let mut n4 = Vec::new();
    let mut n5 = Vec::new();
    for s in &r.survivors {
        match s.family {
            FamilyMatch::CanonicalZ { step } => canonical.push(json!({ "tuple": s.tuple, "step": step })),
            FamilyMatch::FamilyN4 { a, b } => n4.push(json!({ "tuple": s.tuple, "a": a, "b": b })),
            FamilyMatch::FamilyN5 { a, b } => n5.push(json!({ "tuple": s.tuple, "a": a, "b": b })),
            FamilyMatch::Unmatched => {}
        }
    }
    json!({
        "n": r.n,
        "bound": r.bound,
        "pruned": r.pruned,
        "examined": r.examined,
        "survivors": r.survivor_tuples(),
        "families": { "canonical_z": canonical, "family_n4": n4, "family_n5": n5 },
        "unmatched": r.unmatched(),
    })
}

pub fn goodseq(v: &GoodSequenceVerdict) -> Value {
    json!({
        "tuple": v.tuple,
        "max_len": v.max_len,
        "good_up_to_L": v.good_up_to_len,
        "violation": v.violation,
    })
}

pub fn reduce(g: &ElementaryGrading) -> Value {
    let reduced = g.reduce_distinct();
    json!({
        "group": g.descriptor().to_string(),
        "tuple": elements(g.tuple().entries()),
        "distinct_entries": g.distinct_entries(),
        "reduced": elements(reduced.tuple().entries()),
        "canonical_form": elements(canonical_form(reduced.tuple()).entries()),
    })
}
