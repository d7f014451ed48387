//! Integer programs over layered graphs: one unit of flow per tag, at most
//! one unit through each token's vertex group.
//!
//! Three formulations are built from the same graph:
//!
//! * `Full` keeps a vertex variable per vertex next to the arc variables.
//! * `Reduced` substitutes every vertex variable by its inflow.
//! * `Presolved` additionally drops arcs between two vertices of the same
//!   group, eliminates terminal arcs and single-entry C0 vertices, and drops
//!   the C0 group rows that the paired cuts dominate. All three have the same
//!   integer optimum; the reductions are undone by [`IlpModel::arc_values`].

mod bnb;
mod extract;
mod lp_format;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::token_graph::{ArcId, LayeredGraph, VertexId, SINK, SOURCE};
use crate::tokens::{Base, TokenClass, TokenSet};

pub use bnb::{solve_ilp, solve_lp, IlpSolution, IlpStatus, LpSolution, LpStatus};
pub use extract::extract_tags;
pub use lp_format::{export_lp, parse_lp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Formulation {
    Full,
    Reduced,
    Presolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObjSense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowOp {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Var {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub binary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    /// Sorted by variable index, no zero entries.
    pub terms: Vec<(usize, f64)>,
    pub op: RowOp,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Arc(ArcId),
    Vertex(VertexId),
}

/// How model columns map back onto graph arcs.
#[derive(Clone, Debug)]
struct GraphLink {
    columns: Vec<Column>,
    num_arcs: usize,
    /// Eliminated arcs with their defining expression over arcs, in order.
    eliminated: Vec<(ArcId, Vec<(ArcId, f64)>)>,
}

#[derive(Clone, Debug)]
pub struct IlpModel {
    pub sense: ObjSense,
    pub vars: Vec<Var>,
    pub objective: Vec<(usize, f64)>,
    pub rows: Vec<Row>,
    link: Option<GraphLink>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModelSize {
    pub rows: usize,
    pub vars: usize,
    pub nonzeros: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelOptions {
    pub cut5: bool,
    pub formulation: Formulation,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            cut5: true,
            formulation: Formulation::Presolved,
        }
    }
}

impl IlpModel {
    pub fn empty(sense: ObjSense) -> Self {
        IlpModel {
            sense,
            vars: Vec::new(),
            objective: Vec::new(),
            rows: Vec::new(),
            link: None,
        }
    }

    pub fn size(&self) -> ModelSize {
        ModelSize {
            rows: self.rows.len(),
            vars: self.vars.len(),
            nonzeros: self.rows.iter().map(|r| r.terms.len()).sum(),
        }
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Largest violation of any row or bound by `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| {
            let lhs: f64 = r.terms.iter().map(|&(j, a)| a * x[j]).sum();
            match r.op {
                RowOp::Le => (lhs - r.rhs).max(0.0),
                RowOp::Ge => (r.rhs - lhs).max(0.0),
                RowOp::Eq => (lhs - r.rhs).abs(),
            }
        });
        let bounds = self
            .vars
            .iter()
            .zip(x)
            .map(|(v, &xi)| (v.lower - xi).max(xi - v.upper).max(0.0));
        rows.chain(bounds).fold(0.0, f64::max)
    }

    /// Flow on every graph arc for a column assignment `x`. `None` for models
    /// that were not built from a graph.
    pub fn arc_values(&self, x: &[f64]) -> Option<Vec<f64>> {
        let link = self.link.as_ref()?;
        let mut y = vec![0.0; link.num_arcs];
        for (col, &v) in link.columns.iter().zip(x) {
            if let Column::Arc(e) = *col {
                y[e] = v;
            }
        }
        for (e, expr) in link.eliminated.iter().rev() {
            y[*e] = expr.iter().map(|&(f, a)| a * y[f]).sum();
        }
        Some(y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RowKind {
    Flow(VertexId),
    Group(TokenClass),
    Other,
}

struct WorkRow {
    kind: RowKind,
    name: String,
    terms: BTreeMap<usize, i32>,
    op: RowOp,
    rhs: i32,
    alive: bool,
}

fn arc_name(g: &LayeredGraph, e: ArcId) -> String {
    let a = g.arcs[e];
    format!("y_{}_{}", g.vertex_name(a.from), g.vertex_name(a.to))
}

/// Swaps a final A with T and vice versa.
fn swap_last_weak(text: &[Base]) -> Vec<Base> {
    let mut v = text.to_vec();
    if let Some(last) = v.last_mut() {
        *last = match *last {
            Base::A => Base::T,
            Base::T => Base::A,
            b => b,
        };
    }
    v
}

pub fn build_model(g: &LayeredGraph, tokens: &TokenSet, opts: ModelOptions) -> IlpModel {
    let presolve = opts.formulation == Formulation::Presolved;
    let token_of = |v: VertexId| g.vertex(v).map(|lv| lv.token);

    let mut arc_alive = vec![true; g.arcs.len()];
    let mut eliminated: Vec<(ArcId, Vec<(ArcId, f64)>)> = Vec::new();
    if presolve {
        // A path cannot visit one group twice.
        for (e, a) in g.arcs.iter().enumerate() {
            if let (Some(u), Some(v)) = (token_of(a.from), token_of(a.to)) {
                if u == v {
                    arc_alive[e] = false;
                    eliminated.push((e, Vec::new()));
                }
            }
        }
    }
    let live = |arcs: &[ArcId]| -> Vec<ArcId> {
        arcs.iter().copied().filter(|&e| arc_alive[e]).collect()
    };
    let in_lists: Vec<Vec<ArcId>> = (0..g.num_vertices()).map(|v| live(g.in_arcs(v))).collect();
    let out_lists: Vec<Vec<ArcId>> = (0..g.num_vertices()).map(|v| live(g.out_arcs(v))).collect();
    let ins = |v: VertexId| in_lists[v].clone();
    let outs = |v: VertexId| out_lists[v].clone();
    let incident: Vec<bool> = (0..g.num_vertices())
        .map(|v| v != SOURCE && v != SINK && (!ins(v).is_empty() || !outs(v).is_empty()))
        .collect();

    let full = opts.formulation == Formulation::Full;
    let num_arcs = g.arcs.len();
    // Work columns: arcs first, then vertex variables in the full form.
    let xcol = |v: VertexId| num_arcs + v;

    let mut rows: Vec<WorkRow> = Vec::new();
    for v in (0..g.num_vertices()).filter(|&v| incident[v]) {
        let inflow: Vec<(usize, i32)> = ins(v).into_iter().map(|e| (e, 1)).collect();
        let outflow: Vec<(usize, i32)> = outs(v).into_iter().map(|e| (e, -1)).collect();
        if full {
            let mut r: BTreeMap<usize, i32> = inflow.into_iter().collect();
            r.insert(xcol(v), -1);
            rows.push(work_row(RowKind::Flow(v), format!("in_{v}"), r, RowOp::Eq, 0));
            let mut r: BTreeMap<usize, i32> = outflow.into_iter().collect();
            r.insert(xcol(v), 1);
            rows.push(work_row(RowKind::Other, format!("out_{v}"), r, RowOp::Eq, 0));
        } else {
            let r = inflow.into_iter().chain(outflow).collect();
            rows.push(work_row(RowKind::Flow(v), format!("flow_{v}"), r, RowOp::Eq, 0));
        }
    }
    let group_terms = |token_ids: &[usize]| -> BTreeMap<usize, i32> {
        let mut r = BTreeMap::new();
        for &i in token_ids {
            for &v in g.group(crate::tokens::TokenId(i as u32)) {
                if !incident[v] {
                    continue;
                }
                if full {
                    r.insert(xcol(v), 1);
                } else {
                    for e in ins(v) {
                        r.insert(e, 1);
                    }
                }
            }
        }
        r
    };
    for (id, tok) in tokens.iter() {
        let r = group_terms(&[id.index()]);
        if !r.is_empty() {
            let name = format!("grp_{}", tok.text);
            rows.push(work_row(RowKind::Group(tok.class), name, r, RowOp::Le, 1));
        }
    }
    if opts.cut5 {
        for (id, tok) in tokens.iter() {
            if tok.class != TokenClass::C0 {
                continue;
            }
            let hat = tokens
                .id(&swap_last_weak(tok.text.bases()))
                .expect("swapping the final weak base keeps a token");
            if id < hat {
                let r = group_terms(&[id.index(), hat.index()]);
                if !r.is_empty() {
                    let name = format!("cut_{}_{}", tok.text, tokens.get(hat).text);
                    rows.push(work_row(RowKind::Other, name, r, RowOp::Le, 1));
                }
            }
        }
    }

    let mut objective: BTreeMap<usize, i32> = g.out_arcs(SOURCE).iter().map(|&e| (e, 1)).collect();

    if presolve {
        if opts.cut5 {
            for r in rows.iter_mut() {
                if r.kind == RowKind::Group(TokenClass::C0) {
                    r.alive = false;
                }
            }
        }
        let flow_row: BTreeMap<VertexId, usize> = rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| match r.kind {
                RowKind::Flow(v) => Some((v, i)),
                _ => None,
            })
            .collect();
        for (&v, &ri) in &flow_row {
            let o = outs(v);
            if o.len() == 1 && g.arcs[o[0]].to == SINK {
                eliminate(&mut rows, &mut objective, ri, o[0], &mut eliminated);
                arc_alive[o[0]] = false;
            }
        }
        for (&v, &ri) in &flow_row {
            if !rows[ri].alive {
                continue;
            }
            let i = ins(v);
            let is_c0 = token_of(v).is_some_and(|t| tokens.get(t).class == TokenClass::C0);
            if is_c0 && i.len() == 1 {
                eliminate(&mut rows, &mut objective, ri, i[0], &mut eliminated);
                arc_alive[i[0]] = false;
            }
        }
    }

    // Number the surviving columns.
    let mut columns = Vec::new();
    let mut index = vec![usize::MAX; num_arcs + if full { g.num_vertices() } else { 0 }];
    let mut vars = Vec::new();
    for e in (0..num_arcs).filter(|&e| arc_alive[e]) {
        index[e] = columns.len();
        columns.push(Column::Arc(e));
        vars.push(binary(arc_name(g, e)));
    }
    if full {
        for v in (0..g.num_vertices()).filter(|&v| incident[v]) {
            index[xcol(v)] = columns.len();
            columns.push(Column::Vertex(v));
            vars.push(binary(format!("x_{v}")));
        }
    }
    let remap = |terms: &BTreeMap<usize, i32>| -> Vec<(usize, f64)> {
        let mut t: Vec<(usize, f64)> = terms
            .iter()
            .map(|(&j, &a)| {
                debug_assert_ne!(index[j], usize::MAX, "row references an eliminated column");
                (index[j], a as f64)
            })
            .collect();
        t.sort_by_key(|&(j, _)| j);
        t
    };
    let out_rows = rows
        .iter()
        .filter(|r| r.alive && !r.terms.is_empty())
        .map(|r| Row {
            name: r.name.clone(),
            terms: remap(&r.terms),
            op: r.op,
            rhs: r.rhs as f64,
        })
        .collect();
    IlpModel {
        sense: ObjSense::Maximize,
        vars,
        objective: remap(&objective),
        rows: out_rows,
        link: Some(GraphLink {
            columns,
            num_arcs,
            eliminated,
        }),
    }
}

fn binary(name: String) -> Var {
    Var {
        name,
        lower: 0.0,
        upper: 1.0,
        binary: true,
    }
}

fn work_row(
    kind: RowKind,
    name: String,
    terms: BTreeMap<usize, i32>,
    op: RowOp,
    rhs: i32,
) -> WorkRow {
    WorkRow {
        kind,
        name,
        terms,
        op,
        rhs,
        alive: true,
    }
}

/// Solves equality row `ri` for arc `e` and substitutes it everywhere.
fn eliminate(
    rows: &mut [WorkRow],
    objective: &mut BTreeMap<usize, i32>,
    ri: usize,
    e: ArcId,
    log: &mut Vec<(ArcId, Vec<(ArcId, f64)>)>,
) {
    let row = &mut rows[ri];
    debug_assert!(row.op == RowOp::Eq && row.rhs == 0);
    let ae = row.terms[&e];
    debug_assert!(ae == 1 || ae == -1);
    // a_e y_e + sum a_f y_f = 0  =>  y_e = sum (-a_f a_e) y_f
    let expr: Vec<(usize, i32)> = row
        .terms
        .iter()
        .filter(|&(&f, _)| f != e)
        .map(|(&f, &af)| (f, -af * ae))
        .collect();
    row.alive = false;
    let substitute = |terms: &mut BTreeMap<usize, i32>| {
        if let Some(coef) = terms.remove(&e) {
            for &(f, cf) in &expr {
                let entry = terms.entry(f).or_insert(0);
                *entry += coef * cf;
                if *entry == 0 {
                    terms.remove(&f);
                }
            }
        }
    };
    for r in rows.iter_mut().filter(|r| r.alive) {
        substitute(&mut r.terms);
    }
    substitute(objective);
    log.push((e, expr.iter().map(|&(f, a)| (f, a as f64)).collect()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token_graph::{build_layered_length, build_layered_weight};

    fn sizes(c: u32, l: u32, opts: ModelOptions) -> ModelSize {
        let tokens = TokenSet::new(c).unwrap();
        let g = build_layered_length(&tokens, l).unwrap();
        build_model(&g, &tokens, opts).size()
    }

    #[test]
    fn presolved_sizes_close_to_reference() {
        let s = sizes(4, 10, ModelOptions::default());
        assert_eq!((s.rows, s.vars, s.nonzeros), (416, 1900, 5944));
    }

    #[test]
    fn coefficients_are_unit() {
        let tokens = TokenSet::new(3).unwrap();
        let g = build_layered_weight(&tokens, 9).unwrap();
        for formulation in [Formulation::Full, Formulation::Reduced, Formulation::Presolved] {
            for cut5 in [false, true] {
                let m = build_model(&g, &tokens, ModelOptions { cut5, formulation });
                for r in &m.rows {
                    assert!(!r.terms.is_empty());
                    for &(j, a) in &r.terms {
                        assert!(j < m.vars.len());
                        assert!(a == 1.0 || a == -1.0, "{} has {a}", r.name);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_vector_maps_to_zero_flow() {
        let tokens = TokenSet::new(2).unwrap();
        let g = build_layered_length(&tokens, 3).unwrap();
        let m = build_model(&g, &tokens, ModelOptions::default());
        let y = m.arc_values(&vec![0.0; m.vars.len()]).unwrap();
        assert!(y.iter().all(|&v| v == 0.0));
        assert_eq!(m.max_violation(&vec![0.0; m.vars.len()]), 0.0);
    }
}
