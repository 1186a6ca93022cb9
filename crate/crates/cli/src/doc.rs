//! JSON documents emitted by the CLI.

use distrep_core::graph::pairs;
use distrep_core::{
    ClassLabel, EmbedError, Embedding, MixedTriple, Outcome, Representation, Source, TriplePattern,
    VerificationReport, Violation,
};
use serde_json::{json, Value};

fn label(l: &ClassLabel) -> Value {
    match l {
        ClassLabel::Edge => json!("edge"),
        ClassLabel::NonEdge => json!("non-edge"),
        ClassLabel::Color(c) => json!(c),
    }
}

pub fn input(source: &Source) -> Value {
    match source {
        Source::Graph(g) => json!({
            "kind": "graph",
            "n": g.n(),
            "p": g.color_partition().p(),
            "edges": g.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        }),
        Source::Colored(c) => json!({
            "kind": "colored",
            "n": c.n(),
            "p": c.color_count(),
            "pairs": pairs(c.n()).map(|(u, v)| json!([u, v, c.color(u, v)])).collect::<Vec<_>>(),
        }),
    }
}

fn triple(t: &MixedTriple) -> Value {
    let (u, v, w) = t.vertices;
    let pattern = match t.pattern {
        TriplePattern::H => json!("H"),
        TriplePattern::K => json!("K"),
        TriplePattern::Colored { colors, repeated } => json!({ "colors": colors, "repeated": repeated }),
    };
    json!({ "vertices": [u, v, w], "pattern": pattern })
}

fn pipeline(r: &Representation) -> Value {
    let h = &r.homotopy;
    json!({
        "classes": r.family.labels().iter().map(label).collect::<Vec<_>>(),
        "mixed_triple": triple(&r.triple),
        "seed_weights": r.raw_seed.weights,
        "seed_q": r.raw_seed.q,
        "distinct_seed_weights": r.seed.weights,
        "distinct_seed_q": r.seed.q,
        "tau": h.tau,
        "final_weights": h.final_weights,
        "final_lengths": h.final_lengths,
        "q_at_root": h.psi_tau,
        "q_trace": h.q_trace.iter().map(|&(t, q)| json!([t, q])).collect::<Vec<_>>(),
    })
}

pub fn embedding(e: &Embedding) -> Value {
    json!({
        "dim": e.dim,
        "coords": e.coords,
        "gram_eigenvalues": e.gram_eigenvalues,
    })
}

fn violation(v: &Violation) -> Value {
    match v {
        Violation::Spread { u, v, label: l, distance, median } => json!({
            "kind": "spread", "pair": [u, v], "class": label(l), "distance": distance, "median": median,
        }),
        Violation::Separation { first, second, first_mean, second_mean } => json!({
            "kind": "separation",
            "classes": [label(first), label(second)],
            "means": [first_mean, second_mean],
        }),
        Violation::Dimension { method, found, bound } => json!({
            "kind": "dimension", "method": method, "found": found, "bound": bound,
        }),
    }
}

pub fn report(r: &VerificationReport) -> Value {
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "class": label(&c.label),
                "pairs": c.pairs,
                "mean": c.mean,
                "min": c.min,
                "max": c.max,
                "spread": c.spread,
            })
        })
        .collect();
    json!({
        "passed": r.passed,
        "rel_tol": r.rel_tol,
        "classes": classes,
        "min_separation": if r.min_separation.is_finite() { json!(r.min_separation) } else { Value::Null },
        "gram_floor": r.gram_floor,
        "gram_rank": r.gram_rank,
        "cayley_menger_dimension": r.cayley_menger_dimension,
        "dimension_bound": r.dimension_bound,
        "violations": r.violations.iter().map(violation).collect::<Vec<_>>(),
    })
}

pub fn outcome(source: &Source, out: &Outcome) -> Value {
    let emb = out.embedding();
    let certification = emb.report.as_ref().map_or(Value::Null, report);
    match out {
        Outcome::Represented(r) => json!({
            "status": "ok",
            "input": input(source),
            "pipeline": pipeline(r),
            "embedding": embedding(emb),
            "certification": certification,
            "note": null,
        }),
        Outcome::Fallback { reason, .. } => json!({
            "status": "fallback",
            "input": input(source),
            "pipeline": null,
            "embedding": embedding(emb),
            "certification": certification,
            "note": reason.note(),
        }),
    }
}

pub fn error(stage: &str, message: &str, line: Option<usize>, q_trace: &[(f64, f64)]) -> Value {
    json!({
        "status": "error",
        "error": {
            "stage": stage,
            "message": message,
            "line": line,
            "q_trace": q_trace.iter().map(|&(t, q)| json!([t, q])).collect::<Vec<_>>(),
        },
    })
}

pub fn embed_error(e: &EmbedError) -> Value {
    match e {
        EmbedError::Stage { stage, source, q_trace } => error(stage.name(), &source.to_string(), None, q_trace),
        other => error("embed", &other.to_string(), None, &[]),
    }
}
