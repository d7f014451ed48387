//! The token transition graph and the layered s-t graphs behind the ILPs.

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{param, Result};
use crate::tokens::{Base, TokenClass, TokenId, TokenSet};

/// How tag stability is specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stability {
    /// Every tag has exactly this many letters.
    Length(u32),
    /// Every tag has weight at least this, reached only at its last letter.
    Weight(u32),
}

impl Stability {
    pub fn value(self) -> u32 {
        match self {
            Stability::Length(v) | Stability::Weight(v) => v,
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Length(l) => write!(f, "l={l}"),
            Stability::Weight(h) => write!(f, "h={h}"),
        }
    }
}

/// H_c: one vertex per token, one arc per (token, base).
#[derive(Clone, Debug)]
pub struct TokenGraph {
    pub c: u32,
    pub num_vertices: usize,
    pub arcs: Vec<(TokenId, Base, TokenId)>,
}

pub fn build_token_graph(tokens: &TokenSet) -> TokenGraph {
    let arcs = tokens
        .iter()
        .flat_map(|(u, _)| Base::ALL.map(|b| (u, b, tokens.next(u, b))))
        .collect();
    TokenGraph {
        c: tokens.c(),
        num_vertices: tokens.len(),
        arcs,
    }
}

impl TokenGraph {
    pub fn write_edge_list(&self, tokens: &TokenSet, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "#vertices {} #arcs {}", self.num_vertices, self.arcs.len())?;
        for &(u, b, v) in &self.arcs {
            writeln!(
                out,
                "{} {} {}",
                tokens.get(u).text,
                tokens.get(v).text,
                b.to_char()
            )?;
        }
        Ok(())
    }
}

pub type VertexId = usize;
pub type ArcId = usize;

pub const SOURCE: VertexId = 0;
pub const SINK: VertexId = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayerVertex {
    pub token: TokenId,
    pub layer: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayerArc {
    pub from: VertexId,
    pub to: VertexId,
    /// Appended base for token-to-token arcs; `None` on arcs touching s or t.
    pub label: Option<Base>,
}

/// Layered s-t graph. Vertices 0 and 1 are s and t; every other vertex is
/// `v_i^k` for token `i` and layer `k`.
#[derive(Clone, Debug)]
pub struct LayeredGraph {
    pub c: u32,
    pub mode: Stability,
    vertices: Vec<Option<LayerVertex>>,
    pub arcs: Vec<LayerArc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
    pub v_first: Vec<VertexId>,
    groups: Vec<Vec<VertexId>>,
}

impl LayeredGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: VertexId) -> Option<LayerVertex> {
        self.vertices[v]
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// V_i for token `i`.
    pub fn group(&self, token: TokenId) -> &[VertexId] {
        &self.groups[token.index()]
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match v {
            SOURCE => "s".into(),
            SINK => "t".into(),
            _ => format!("{v}"),
        }
    }

    pub fn write_edge_list(&self, tokens: &TokenSet, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "#vertices {} #arcs {}", self.num_vertices(), self.arcs.len())?;
        for (v, info) in self.vertices.iter().enumerate() {
            if let Some(lv) = info {
                writeln!(out, "#vertex {v} {} {}", tokens.get(lv.token).text, lv.layer)?;
            }
        }
        for a in &self.arcs {
            let label = a.label.map_or('-', Base::to_char);
            writeln!(
                out,
                "{} {} {label}",
                self.vertex_name(a.from),
                self.vertex_name(a.to)
            )?;
        }
        Ok(())
    }
}

struct Builder<'a> {
    tokens: &'a TokenSet,
    lo: Vec<u32>,
    hi: Vec<u32>,
    start: Vec<VertexId>,
    vertices: Vec<Option<LayerVertex>>,
    arcs: Vec<LayerArc>,
}

impl<'a> Builder<'a> {
    fn new(tokens: &'a TokenSet, range: impl Fn(TokenId) -> (u32, u32)) -> Self {
        let mut b = Builder {
            tokens,
            lo: Vec::with_capacity(tokens.len()),
            hi: Vec::with_capacity(tokens.len()),
            start: Vec::with_capacity(tokens.len()),
            vertices: vec![None, None],
            arcs: Vec::new(),
        };
        for (id, _) in tokens.iter() {
            let (lo, hi) = range(id);
            b.lo.push(lo);
            b.hi.push(hi);
            b.start.push(b.vertices.len());
            for layer in lo..=hi {
                b.vertices.push(Some(LayerVertex { token: id, layer }));
            }
        }
        b
    }

    fn vertex(&self, token: TokenId, layer: u32) -> Option<VertexId> {
        let i = token.index();
        (self.lo[i] <= layer && layer <= self.hi[i])
            .then(|| self.start[i] + (layer - self.lo[i]) as usize)
    }

    fn add_first(&mut self, entry: impl Fn(TokenId) -> u32) -> Vec<VertexId> {
        let mut first = Vec::new();
        for (id, tok) in self.tokens.iter() {
            let k = entry(id);
            if tok.class != TokenClass::C0 {
                first.extend(self.vertex(id, k));
            }
            if tok.class == TokenClass::C2 {
                first.extend(self.vertex(id, k + 1));
            }
        }
        for &v in &first {
            self.arcs.push(LayerArc {
                from: SOURCE,
                to: v,
                label: None,
            });
        }
        first
    }

    fn finish(self, c: u32, mode: Stability, v_first: Vec<VertexId>) -> LayeredGraph {
        let n = self.vertices.len();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (e, a) in self.arcs.iter().enumerate() {
            out_arcs[a.from].push(e);
            in_arcs[a.to].push(e);
        }
        let groups = (0..self.tokens.len())
            .map(|i| (self.start[i]..self.start[i] + (self.hi[i] + 1 - self.lo[i]) as usize).collect())
            .collect();
        LayeredGraph {
            c,
            mode,
            vertices: self.vertices,
            arcs: self.arcs,
            out_arcs,
            in_arcs,
            v_first,
            groups,
        }
    }
}

/// Fixed-length tags: layer = number of letters so far.
pub fn build_layered_length(tokens: &TokenSet, l: u32) -> Result<LayeredGraph> {
    let c = tokens.c();
    if c > l {
        return param(format!("c={c} exceeds tag length l={l}"));
    }
    // A c-token has at most c letters, so lo <= l.
    let mut b = Builder::new(tokens, |id| (tokens.get(id).len() as u32, l));
    let first = b.add_first(|id| tokens.get(id).len() as u32);
    for v in 2..b.vertices.len() {
        let lv = b.vertices[v].expect("token vertex");
        if lv.layer < l {
            for base in Base::ALL {
                let j = tokens.next(lv.token, base);
                if let Some(to) = b.vertex(j, lv.layer + 1) {
                    b.arcs.push(LayerArc {
                        from: v,
                        to,
                        label: Some(base),
                    });
                }
            }
        } else {
            b.arcs.push(LayerArc {
                from: v,
                to: SINK,
                label: None,
            });
        }
    }
    Ok(b.finish(c, Stability::Length(l), first))
}

/// Minimum-weight tags: layer = weight so far, capped at `h_i`.
pub fn build_layered_weight(tokens: &TokenSet, h: u32) -> Result<LayeredGraph> {
    let c = tokens.c();
    if c > h {
        return param(format!("c={c} exceeds minimum weight h={h}"));
    }
    let cap = |id: TokenId| if tokens.get(id).tail() == 1 { h } else { h + 1 };
    let mut b = Builder::new(tokens, |id| (tokens.get(id).weight, cap(id)));
    let first = b.add_first(|id| tokens.get(id).weight);
    for v in 2..b.vertices.len() {
        let lv = b.vertices[v].expect("token vertex");
        for base in Base::ALL {
            let j = tokens.next(lv.token, base);
            if let Some(to) = b.vertex(j, lv.layer + base.weight()) {
                b.arcs.push(LayerArc {
                    from: v,
                    to,
                    label: Some(base),
                });
            }
        }
        let hi = cap(lv.token);
        if hi - tokens.get(lv.token).tail() < lv.layer {
            b.arcs.push(LayerArc {
                from: v,
                to: SINK,
                label: None,
            });
        }
    }
    Ok(b.finish(c, Stability::Weight(h), first))
}

pub fn build_layered(tokens: &TokenSet, mode: Stability) -> Result<LayeredGraph> {
    match mode {
        Stability::Length(l) => build_layered_length(tokens, l),
        Stability::Weight(h) => build_layered_weight(tokens, h),
    }
}
