//! Rendered views of analysis results: Graphviz DOT for Auslander-Reiten
//! quivers (irreducible maps as solid edges, the translate as dashed edges,
//! projectives as boxes) and the certificate JSON consumed by scripts.
//!
//! Certificate JSON schema (all keys always present):
//!
//! ```json
//! {
//!   "verdict": "short-cycle-free" | "has-short-cycle",
//!   "witness": null | {"x": "P(1)", "y": "P(4)", "x_dims": [..], "y_dims": [..],
//!                       "forward_image_dims": [..] | null,
//!                       "backward_image_dims": [..] | null},
//!   "witnesses": [ .. same shape .. ],
//!   "slice": null | {"nodes": ["M12", ..], "arrows": [["M12","M17"], ..]},
//!   "ideal_dim": null | int,
//!   "residual_idempotents": null | [int, ..]   // 1-based vertices
//!   "hereditary_type": null | "A3",
//!   "checks": [{"name": str, "ok": bool}, ..]
//! }
//! ```
//!
//! Key order is alphabetical (serde_json's default map), so identical
//! inputs produce byte-identical output.

use serde_json::{Map, Value};

use crate::analysis::{Certificate, CycleWitness, Verdict};
use crate::artheory::ARQuiver;

/// Stable display name of a node: seeded projectives print as `P(v)`,
/// everything else as `M{id}`.
pub fn node_name(ar: &ARQuiver, i: usize) -> String {
    if ar.nodes[i].projective && i < ar.alg.n_vertices {
        format!("P({})", i + 1)
    } else {
        format!("M{i}")
    }
}

/// One-line rendering of a short cycle, e.g. `P(1) -> P(4) -> P(1)`.
pub fn witness_text(ar: &ARQuiver, w: &CycleWitness) -> String {
    format!(
        "{} -> {} -> {}",
        node_name(ar, w.x),
        node_name(ar, w.y),
        node_name(ar, w.x)
    )
}

fn dims_text(dims: &[usize]) -> String {
    let inner = dims
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("[{inner}]")
}

/// Graphviz DOT for an Auslander-Reiten quiver: solid edges for the
/// irreducible-map arrows (labelled with the multiplicity when above one),
/// dashed constraint-free edges from each node to its translate, boxes for
/// projectives.
pub fn ar_quiver_dot(ar: &ARQuiver) -> String {
    let mut out = String::from("digraph ar_quiver {\n  rankdir=LR;\n");
    for (i, node) in ar.nodes.iter().enumerate() {
        let shape = if node.projective { "box" } else { "ellipse" };
        out.push_str(&format!(
            "  n{i} [label=\"{}\\n{}\", shape={shape}];\n",
            node_name(ar, i),
            dims_text(&node.module.dims)
        ));
    }
    for a in &ar.arrows {
        if a.mult > 1 {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                a.src, a.tgt, a.mult
            ));
        } else {
            out.push_str(&format!("  n{} -> n{};\n", a.src, a.tgt));
        }
    }
    for (x, t) in ar.tau.iter().enumerate() {
        if let Some(t) = t {
            out.push_str(&format!(
                "  n{x} -> n{t} [style=dashed, constraint=false];\n"
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn dims_json(dims: &[usize]) -> Value {
    Value::Array(dims.iter().map(|&d| Value::from(d)).collect())
}

fn witness_json(ar: Option<&ARQuiver>, w: &CycleWitness) -> Value {
    let name = |i: usize| match ar {
        Some(ar) => node_name(ar, i),
        None => format!("node{i}"),
    };
    let mut m = Map::new();
    m.insert("x".into(), Value::String(name(w.x)));
    m.insert("y".into(), Value::String(name(w.y)));
    m.insert("x_dims".into(), dims_json(&w.x_dims));
    m.insert("y_dims".into(), dims_json(&w.y_dims));
    m.insert(
        "forward_image_dims".into(),
        w.forward_image.as_deref().map_or(Value::Null, dims_json),
    );
    m.insert(
        "backward_image_dims".into(),
        w.backward_image.as_deref().map_or(Value::Null, dims_json),
    );
    Value::Object(m)
}

/// The certificate as JSON. The Auslander-Reiten quiver, when supplied,
/// provides display names for witness and slice nodes.
pub fn certificate_json(cert: &Certificate, ar: Option<&ARQuiver>) -> Value {
    let name = |i: usize| match ar {
        Some(ar) => node_name(ar, i),
        None => format!("node{i}"),
    };
    let mut m = Map::new();
    m.insert(
        "verdict".into(),
        Value::String(
            match cert.verdict {
                Verdict::ShortCycleFree => "short-cycle-free",
                Verdict::HasShortCycle => "has-short-cycle",
            }
            .into(),
        ),
    );
    m.insert(
        "witness".into(),
        cert.witnesses
            .first()
            .map_or(Value::Null, |w| witness_json(ar, w)),
    );
    m.insert(
        "witnesses".into(),
        Value::Array(cert.witnesses.iter().map(|w| witness_json(ar, w)).collect()),
    );
    let mut checks: Vec<(String, bool)> = cert.checks.clone();
    match &cert.pipeline {
        None => {
            m.insert("slice".into(), Value::Null);
            m.insert("ideal_dim".into(), Value::Null);
            m.insert("residual_idempotents".into(), Value::Null);
            m.insert("hereditary_type".into(), Value::Null);
        }
        Some(rec) => {
            let mut s = Map::new();
            s.insert(
                "nodes".into(),
                Value::Array(
                    rec.slice
                        .iter()
                        .map(|&x| Value::String(name(x)))
                        .collect(),
                ),
            );
            // Slice arrows are re-read from the quiver when available.
            let arrows: Vec<Value> = match ar {
                Some(arq) => arq
                    .arrows
                    .iter()
                    .filter(|a| rec.slice.contains(&a.src) && rec.slice.contains(&a.tgt))
                    .map(|a| {
                        Value::Array(vec![
                            Value::String(name(a.src)),
                            Value::String(name(a.tgt)),
                        ])
                    })
                    .collect(),
                None => Vec::new(),
            };
            s.insert("arrows".into(), Value::Array(arrows));
            m.insert("slice".into(), Value::Object(s));
            m.insert("ideal_dim".into(), Value::from(rec.ideal_dim));
            m.insert(
                "residual_idempotents".into(),
                Value::Array(
                    rec.residual_idempotents
                        .iter()
                        .map(|&v| Value::from(v + 1))
                        .collect(),
                ),
            );
            m.insert(
                "hereditary_type".into(),
                Value::String(rec.hereditary_type.clone()),
            );
            checks.extend(rec.checks.iter().cloned());
        }
    }
    m.insert(
        "checks".into(),
        Value::Array(
            checks
                .into_iter()
                .map(|(name, ok)| {
                    let mut c = Map::new();
                    c.insert("name".into(), Value::String(name));
                    c.insert("ok".into(), Value::Bool(ok));
                    Value::Object(c)
                })
                .collect(),
        ),
    );
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{short_cycles, theorem_check};
    use crate::artheory::{knit, Budgets};
    use crate::field::FieldSpec;
    use crate::zoo;
    use std::sync::Arc;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn dot_marks_projectives_and_translates() {
        let a = Arc::new(zoo::nakayama_selfinjective(3, 2, q()).unwrap());
        let ar = knit(&a, &Budgets::default()).unwrap();
        let dot = ar_quiver_dot(&ar);
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert_eq!(dot.matches("shape=ellipse").count(), 3);
        assert_eq!(dot.matches("style=dashed").count(), 3);
        assert!(dot.starts_with("digraph ar_quiver {"));
        assert!(dot.contains("n0 [label=\"P(1)\\n[1,1,0]\", shape=box];"));
        // Deterministic: a second knit renders the identical bytes.
        let ar2 = knit(&a, &Budgets::default()).unwrap();
        assert_eq!(ar_quiver_dot(&ar2), dot);
    }

    #[test]
    fn dot_of_semisimple_has_isolated_nodes() {
        let a = Arc::new(zoo::hereditary_nakayama(1, q()).unwrap());
        let ar = knit(&a, &Budgets::default()).unwrap();
        let dot = ar_quiver_dot(&ar);
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches("shape=box").count(), 1);
    }

    #[test]
    fn certificate_json_shapes() {
        // Cycle-free with a full pipeline record.
        let a = Arc::new(zoo::nakayama_selfinjective(6, 3, q()).unwrap());
        let cert = theorem_check(&a, &Budgets::default()).unwrap();
        let ar = knit(&a, &Budgets::default()).unwrap();
        let v = certificate_json(&cert, Some(&ar));
        assert_eq!(v["verdict"], "short-cycle-free");
        assert_eq!(v["witness"], Value::Null);
        assert_eq!(v["hereditary_type"], "A2");
        assert_eq!(v["ideal_dim"], 15);
        assert_eq!(v["residual_idempotents"], serde_json::json!([2, 3]));
        assert!(v["checks"].as_array().unwrap().len() > 5);
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["ok"].as_bool().unwrap()));
        assert!(!v["slice"]["nodes"].as_array().unwrap().is_empty());

        // Witness side.
        let b = Arc::new(zoo::nakayama_selfinjective(2, 2, q()).unwrap());
        let cert = short_cycles(&b, &Budgets::default(), true).unwrap();
        let br = knit(&b, &Budgets::default()).unwrap();
        let v = certificate_json(&cert, Some(&br));
        assert_eq!(v["verdict"], "has-short-cycle");
        assert_eq!(v["witness"]["x"], "P(1)");
        assert_eq!(v["witness"]["y"], "P(2)");
        assert_eq!(v["slice"], Value::Null);
        assert_eq!(witness_text(&br, &cert.witnesses[0]), "P(1) -> P(2) -> P(1)");

        // Serialization is deterministic.
        let v2 = certificate_json(&short_cycles(&b, &Budgets::default(), true).unwrap(), Some(&br));
        assert_eq!(
            serde_json::to_string_pretty(&v).unwrap(),
            serde_json::to_string_pretty(&v2).unwrap()
        );
    }
}
