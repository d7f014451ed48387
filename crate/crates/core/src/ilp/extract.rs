use super::IlpModel;
use crate::error::{Error, Result};
use crate::token_graph::{LayeredGraph, Stability, SINK, SOURCE};
use crate::tokens::{Base, TokenSet};
use crate::tree_search::{Pairwise, Provenance, TagSet, TokenMode};

/// Decomposes an integral solution into s-t paths and spells one tag per path.
///
/// Paths are traced from s along the lowest-numbered arc that still carries
/// flow. A path entering a C2 token one layer late gets a leading `A`.
pub fn extract_tags(
    m: &IlpModel,
    values: &[f64],
    g: &LayeredGraph,
    tokens: &TokenSet,
) -> Result<TagSet> {
    let y = m
        .arc_values(values)
        .ok_or_else(|| Error::Contract("model was not built from a layered graph".into()))?;
    let mut flow = Vec::with_capacity(y.len());
    for (e, &v) in y.iter().enumerate() {
        let r = v.round();
        if (v - r).abs() > 1e-6 || !(0.0..=1.0).contains(&r) {
            return Err(Error::Contract(format!("arc {e} carries non-binary flow {v}")));
        }
        flow.push(r as u8);
    }

    let mut set = TagSet::new(tokens.c(), g.mode, Pairwise::C, TokenMode::Unique);
    let next_arc = |flow: &[u8], v| g.out_arcs(v).iter().copied().find(|&e| flow[e] > 0);
    while let Some(first) = next_arc(&flow, SOURCE) {
        flow[first] -= 1;
        let entry = g.arcs[first].to;
        let lv = g.vertex(entry).expect("s points at token vertices");
        let tok = tokens.get(lv.token);
        let entry_layer = match g.mode {
            Stability::Length(_) => tok.len() as u32,
            Stability::Weight(_) => tok.weight,
        };
        let mut tag: Vec<Base> = Vec::new();
        if lv.layer == entry_layer + 1 {
            tag.push(Base::A);
        }
        tag.extend_from_slice(tok.text.bases());
        let mut v = entry;
        while v != SINK {
            let e = next_arc(&flow, v).ok_or_else(|| {
                Error::Contract(format!("flow stops at vertex {v} before reaching t"))
            })?;
            flow[e] -= 1;
            if let Some(b) = g.arcs[e].label {
                tag.push(b);
            }
            v = g.arcs[e].to;
        }
        set.push(tag.into(), Provenance::Ilp);
    }
    if let Some(e) = flow.iter().position(|&f| f > 0) {
        return Err(Error::Contract(format!("arc {e} carries flow off any s-t path")));
    }
    Ok(set)
}
