//! Reduction from MAX-2-SAT-3 to vertex-disjoint cycle packing.
//!
//! Every variable `x_i` occurring `m_i` times gets a core cycle
//! `c_0 -> c_1 -> ... -> c_{4m_i-1} -> c_0` and, for each core arc
//! `c_j -> c_{j+1}`, a labeled vertex `l_j` closing the triangle
//! `c_j -> c_{j+1} -> l_j -> c_j`. Labels alternate `x_i` (even `j`) and
//! `~x_i` (odd `j`). A clause literal `L` claims a fresh vertex labeled
//! `~L`: a unary clause puts a loop on it, a binary clause joins its two
//! claimed vertices to a new hub `w` with two 2-cycles.
//!
//! Setting `x_i` true selects the `2m_i` triangles through `x_i`-labeled
//! vertices, which leaves every `~x_i`-labeled vertex free, so a clause whose
//! literal `x_i` is true can take its gadget cycle there.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    /// 0-based.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn negate(self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = if self.positive { "" } else { "~" };
        write!(f, "{neg}x_{}", self.var + 1)
    }
}

pub const MAX_OCCURRENCES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Max2Sat3 {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl Max2Sat3 {
    /// Checks clause sizes (1 or 2 literals, distinct variables), variable
    /// ranges and the three-occurrence limit.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut occ = vec![0usize; num_vars];
        for (k, cl) in clauses.iter().enumerate() {
            if cl.is_empty() || cl.len() > 2 {
                return Err(Error::InvalidInput(format!(
                    "clause {} has {} literals; 1 or 2 are allowed",
                    k + 1,
                    cl.len()
                )));
            }
            if cl.len() == 2 && cl[0].var == cl[1].var {
                return Err(Error::InvalidInput(format!(
                    "clause {} repeats variable x_{}",
                    k + 1,
                    cl[0].var + 1
                )));
            }
            for lit in cl {
                if lit.var >= num_vars {
                    return Err(Error::InvalidInput(format!(
                        "clause {} uses x_{} but only {num_vars} variables exist",
                        k + 1,
                        lit.var + 1
                    )));
                }
                occ[lit.var] += 1;
                if occ[lit.var] > MAX_OCCURRENCES {
                    return Err(Error::InvalidInput(format!(
                        "x_{} occurs more than {MAX_OCCURRENCES} times",
                        lit.var + 1
                    )));
                }
            }
        }
        Ok(Max2Sat3 { num_vars, clauses })
    }

    /// m_i for each variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars];
        for lit in self.clauses.iter().flatten() {
            occ[lit.var] += 1;
        }
        occ
    }

    pub fn total_occurrences(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn num_satisfied(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|cl| cl.iter().any(|l| l.holds(assignment)))
            .count()
    }
}

/// Parses DIMACS CNF with at most two literals per clause.
pub fn parse_dimacs(text: &str) -> Result<Max2Sat3> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        let err = |msg: String| Error::Input { line: n + 1, msg };
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let f: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(err("expected a single `p cnf <vars> <clauses>` line".into()));
            }
            let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad number {s:?}")));
            header = Some((parse(f[2])?, parse(f[3])?));
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(err("clause before the `p cnf` header".into()));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| err(format!("bad literal {tok:?}")))?;
            if v == 0 {
                if current.len() > 2 {
                    return Err(err(format!("clause with {} literals", current.len())));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = v.unsigned_abs() as usize;
            if var > nv {
                return Err(err(format!("variable {var} exceeds declared {nv}")));
            }
            current.push(Literal {
                var: var - 1,
                positive: v > 0,
            });
        }
    }
    let Some((nv, nc)) = header else {
        return Err(Error::InvalidInput("missing `p cnf` header".into()));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != nc {
        return Err(Error::InvalidInput(format!(
            "header declares {nc} clauses, found {}",
            clauses.len()
        )));
    }
    Max2Sat3::new(nv, clauses)
}

pub fn write_dimacs(phi: &Max2Sat3, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    writeln!(out, "p cnf {} {}", phi.num_vars, phi.clauses.len())?;
    for cl in &phi.clauses {
        for l in cl {
            let v = l.var as i64 + 1;
            write!(out, "{} ", if l.positive { v } else { -v })?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}

/// A random instance with `num_vars` variables. Clauses are drawn until no
/// variable has spare occurrences or the clause target is met.
pub fn random_instance(num_vars: usize, seed: u64) -> Max2Sat3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spare = vec![MAX_OCCURRENCES; num_vars];
    let target = if num_vars == 0 {
        0
    } else {
        rng.gen_range(0..=(MAX_OCCURRENCES * num_vars) / 2 + 1)
    };
    let mut clauses = Vec::new();
    while clauses.len() < target {
        let mut open: Vec<usize> = (0..num_vars).filter(|&v| spare[v] > 0).collect();
        if open.is_empty() {
            break;
        }
        open.shuffle(&mut rng);
        let size = if open.len() >= 2 && rng.gen_bool(0.75) { 2 } else { 1 };
        let clause: Vec<Literal> = open[..size]
            .iter()
            .map(|&var| {
                spare[var] -= 1;
                Literal {
                    var,
                    positive: rng.gen_bool(0.5),
                }
            })
            .collect();
        clauses.push(clause);
    }
    Max2Sat3::new(num_vars, clauses).expect("generator respects the limits")
}

/// Reads an assignment as signed DIMACS literals (`1 -2 3`, optionally
/// prefixed by `v` and ended by `0`). Lines starting with `c` or `s` are
/// skipped; variables that are not listed are false.
pub fn parse_assignment(text: &str, num_vars: usize) -> Result<Vec<bool>> {
    let mut a = vec![false; num_vars];
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let err = |msg: String| Error::Input { line: n + 1, msg };
            let v: i64 = tok.parse().map_err(|_| err(format!("bad literal {tok:?}")))?;
            if v == 0 {
                continue;
            }
            let var = v.unsigned_abs() as usize;
            if var > num_vars {
                return Err(err(format!("variable {var} exceeds {num_vars}")));
            }
            a[var - 1] = v > 0;
        }
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    Core { var: usize, j: usize },
    Labeled { var: usize, j: usize, label: Literal },
    Hub { clause: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gadget {
    Loop { vertex: usize },
    Hub { hub: usize, ends: [usize; 2] },
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionGraph {
    pub roles: Vec<Role>,
    pub arcs: Vec<(usize, usize)>,
    /// Per variable: core vertices in cycle order, then the labeled vertex of each core arc.
    pub core: Vec<Vec<usize>>,
    pub labeled: Vec<Vec<usize>>,
    /// Per clause: the gadget and the claimed vertex of each literal.
    pub gadgets: Vec<Gadget>,
    pub claimed: Vec<Vec<usize>>,
    /// Arcs added by [`ReductionGraph::pad_to_regular`]; zero on a fresh graph.
    pub padding_arcs: usize,
}

impl ReductionGraph {
    pub fn num_vertices(&self) -> usize {
        self.roles.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_set().contains(&(u, v))
    }

    fn arc_set(&self) -> HashSet<(usize, usize)> {
        self.arcs.iter().copied().collect()
    }

    pub fn label(&self, v: usize) -> Option<Literal> {
        match self.roles[v] {
            Role::Labeled { label, .. } => Some(label),
            _ => None,
        }
    }

    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut din = vec![0; self.num_vertices()];
        let mut dout = vec![0; self.num_vertices()];
        for &(u, v) in &self.arcs {
            dout[u] += 1;
            din[v] += 1;
        }
        (din, dout)
    }

    /// Labeled vertices that no clause claimed.
    pub fn free_labeled(&self) -> Vec<usize> {
        let claimed: HashSet<usize> = self.claimed.iter().flatten().copied().collect();
        self.labeled
            .iter()
            .flatten()
            .copied()
            .filter(|v| !claimed.contains(v))
            .collect()
    }

    /// Threads one extra cycle through all free labeled vertices, which are
    /// exactly the vertices below in- and out-degree 2. This adds cycles, so
    /// the packing bounds of the reduction apply to the unpadded graph only.
    pub fn pad_to_regular(&mut self) {
        let free = self.free_labeled();
        if free.is_empty() || self.padding_arcs > 0 {
            return;
        }
        for k in 0..free.len() {
            self.arcs.push((free[k], free[(k + 1) % free.len()]));
        }
        self.padding_arcs = free.len();
    }

    pub fn write_edge_list(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "#vertices {} #arcs {}", self.num_vertices(), self.arcs.len())?;
        if self.padding_arcs > 0 {
            writeln!(
                out,
                "#padding {} arcs forming one cycle through the free labeled vertices",
                self.padding_arcs
            )?;
        } else {
            writeln!(out, "#padding none; free labeled vertices have in/out degree 1")?;
        }
        for v in 0..self.num_vertices() {
            if let Some(l) = self.label(v) {
                writeln!(out, "#label {v} {l}")?;
            }
        }
        for &(u, v) in &self.arcs {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

pub fn build_reduction(phi: &Max2Sat3) -> ReductionGraph {
    let occ = phi.occurrences();
    let mut roles = Vec::new();
    let mut arcs = Vec::new();
    let mut core = Vec::with_capacity(phi.num_vars);
    let mut labeled = Vec::with_capacity(phi.num_vars);
    for (var, &m) in occ.iter().enumerate() {
        let len = 4 * m;
        let cs: Vec<usize> = (0..len)
            .map(|j| {
                roles.push(Role::Core { var, j });
                roles.len() - 1
            })
            .collect();
        let ls: Vec<usize> = (0..len)
            .map(|j| {
                let label = Literal {
                    var,
                    positive: j % 2 == 0,
                };
                roles.push(Role::Labeled { var, j, label });
                roles.len() - 1
            })
            .collect();
        for j in 0..len {
            let next = cs[(j + 1) % len];
            arcs.push((cs[j], next));
            arcs.push((next, ls[j]));
            arcs.push((ls[j], cs[j]));
        }
        core.push(cs);
        labeled.push(ls);
    }

    // Next unclaimed labeled vertex per (variable, polarity), in cycle order.
    let mut cursor: HashMap<Literal, usize> = HashMap::new();
    let mut claim = |lit: Literal| -> usize {
        let label = lit.negate();
        let start = if label.positive { 0 } else { 1 };
        let k = cursor.entry(label).or_insert(start);
        let v = labeled[lit.var][*k];
        *k += 2;
        v
    };
    let mut gadgets = Vec::with_capacity(phi.clauses.len());
    let mut claimed = Vec::with_capacity(phi.clauses.len());
    for (clause, cl) in phi.clauses.iter().enumerate() {
        let ends: Vec<usize> = cl.iter().map(|&l| claim(l)).collect();
        match ends[..] {
            [v] => {
                arcs.push((v, v));
                gadgets.push(Gadget::Loop { vertex: v });
            }
            [a, b] => {
                roles.push(Role::Hub { clause });
                let w = roles.len() - 1;
                arcs.extend([(a, w), (w, a), (b, w), (w, b)]);
                gadgets.push(Gadget::Hub { hub: w, ends: [a, b] });
            }
            _ => unreachable!("clauses hold one or two literals"),
        }
        claimed.push(ends);
    }
    ReductionGraph {
        roles,
        arcs,
        core,
        labeled,
        gadgets,
        claimed,
        padding_arcs: 0,
    }
}

/// A directed cycle as its vertex sequence; the closing arc is implicit.
pub type Cycle = Vec<usize>;

/// Checks that every cycle is a simple directed cycle of `g` and that the
/// cycles are pairwise vertex-disjoint.
pub fn check_disjoint_cycles(g: &ReductionGraph, cycles: &[Cycle]) -> Result<()> {
    let arcs = g.arc_set();
    let mut seen = HashSet::new();
    for (k, cyc) in cycles.iter().enumerate() {
        if cyc.is_empty() {
            return Err(Error::InvalidInput(format!("cycle {} is empty", k + 1)));
        }
        for (i, &u) in cyc.iter().enumerate() {
            let v = cyc[(i + 1) % cyc.len()];
            if u >= g.num_vertices() || !arcs.contains(&(u, v)) {
                return Err(Error::InvalidInput(format!(
                    "cycle {} uses missing arc {u} -> {v}",
                    k + 1
                )));
            }
            if !seen.insert(u) {
                return Err(Error::InvalidInput(format!(
                    "vertex {u} is used twice (cycle {})",
                    k + 1
                )));
            }
        }
    }
    Ok(())
}

fn triangle(g: &ReductionGraph, var: usize, j: usize) -> Cycle {
    let cs = &g.core[var];
    vec![cs[j], cs[(j + 1) % cs.len()], g.labeled[var][j]]
}

/// The packing of the forward direction: `2m_i` triangles per variable plus
/// one gadget cycle per satisfied clause.
pub fn assignment_to_cycles(phi: &Max2Sat3, g: &ReductionGraph, assignment: &[bool]) -> Vec<Cycle> {
    assert_eq!(assignment.len(), phi.num_vars, "one value per variable");
    let mut cycles = Vec::new();
    for (var, &value) in assignment.iter().enumerate() {
        let start = if value { 0 } else { 1 };
        for j in (start..g.core[var].len()).step_by(2) {
            cycles.push(triangle(g, var, j));
        }
    }
    for (k, cl) in phi.clauses.iter().enumerate() {
        if let Some(i) = cl.iter().position(|l| l.holds(assignment)) {
            let v = g.claimed[k][i];
            cycles.push(match g.gadgets[k] {
                Gadget::Loop { .. } => vec![v],
                Gadget::Hub { hub, .. } => vec![v, hub],
            });
        }
    }
    cycles
}

/// Rewrites a disjoint packing into triangles, loops and hub 2-cycles only,
/// without changing the number of cycles.
pub fn normalize_cycles(g: &ReductionGraph, cycles: &[Cycle]) -> Result<Vec<Cycle>> {
    check_disjoint_cycles(g, cycles)?;
    let mut out: Vec<Option<Cycle>> = vec![None; cycles.len()];
    let mut core_only = Vec::new();
    for (k, cyc) in cycles.iter().enumerate() {
        let arcs: Vec<(usize, usize)> = (0..cyc.len())
            .map(|i| (cyc[i], cyc[(i + 1) % cyc.len()]))
            .collect();
        if cyc.len() == 1 {
            out[k] = Some(cyc.clone());
            continue;
        }
        let hub_arc = arcs.iter().find_map(|&(u, v)| match (g.roles[u], g.roles[v]) {
            (Role::Hub { .. }, _) => Some(vec![v, u]),
            (_, Role::Hub { .. }) => Some(vec![u, v]),
            _ => None,
        });
        if let Some(two) = hub_arc {
            out[k] = Some(two);
            continue;
        }
        // A labeled vertex is entered from c_{j+1} and left to c_j: both are
        // arcs of triangle j.
        let tri = cyc.iter().find_map(|&v| match g.roles[v] {
            Role::Labeled { var, j, .. } => Some(triangle(g, var, j)),
            _ => None,
        });
        if let Some(t) = tri {
            out[k] = Some(t);
            continue;
        }
        core_only.push(k);
    }
    let mut used: HashSet<usize> = out.iter().flatten().flatten().copied().collect();
    for k in core_only {
        let var = match g.roles[cycles[k][0]] {
            Role::Core { var, .. } => var,
            _ => unreachable!("only core cycles remain"),
        };
        let j = (0..g.labeled[var].len())
            .find(|&j| !used.contains(&g.labeled[var][j]))
            .ok_or_else(|| Error::Contract(format!("no free labeled vertex for x_{}", var + 1)))?;
        let t = triangle(g, var, j);
        used.extend(t.iter().copied());
        out[k] = Some(t);
    }
    Ok(out.into_iter().map(|c| c.expect("every cycle rewritten")).collect())
}

/// The literal a normalized cycle stands for.
fn asserted(g: &ReductionGraph, cyc: &Cycle) -> Option<(Literal, bool)> {
    // (literal, from a gadget)
    cyc.iter().find_map(|&v| match g.roles[v] {
        Role::Labeled { label, .. } if cyc.len() == 3 => Some((label, false)),
        Role::Labeled { label, .. } => Some((label.negate(), true)),
        _ => None,
    })
}

/// Reads an assignment off a disjoint packing. Core cycles and multi-arc
/// cycles are first rewritten into triangles and gadget cycles; a variable
/// claimed by both polarities takes the one backed by more gadget cycles.
/// Variables nothing speaks for are set false.
pub fn cycles_to_assignment(phi: &Max2Sat3, g: &ReductionGraph, cycles: &[Cycle]) -> Result<Vec<bool>> {
    let normal = normalize_cycles(g, cycles)?;
    // Per variable and polarity: (gadget cycles, triangles).
    let mut votes = vec![[(0usize, 0usize); 2]; phi.num_vars];
    for cyc in &normal {
        if let Some((lit, gadget)) = asserted(g, cyc) {
            let slot = &mut votes[lit.var][lit.positive as usize];
            if gadget {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    Ok(votes
        .iter()
        .map(|&[neg, pos]| {
            // Lexicographic on (gadgets, triangles); ties go to false.
            pos > neg
        })
        .collect())
}

/// Shortest-cycle-first greedy packing of vertex-disjoint cycles. Ties go to
/// the cycle found from the lowest start vertex.
pub fn greedy_disjoint_cycles(num_vertices: usize, arcs: &[(usize, usize)]) -> Vec<Cycle> {
    let mut adj = vec![Vec::new(); num_vertices];
    for &(u, v) in arcs {
        adj[u].push(v);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut alive = vec![true; num_vertices];
    let mut out = Vec::new();
    loop {
        let mut best: Option<Cycle> = None;
        for s in (0..num_vertices).filter(|&s| alive[s]) {
            if let Some(c) = shortest_cycle_through(&adj, &alive, s, best.as_ref().map(Vec::len)) {
                best = Some(c);
                if best.as_ref().is_some_and(|b| b.len() == 1) {
                    break;
                }
            }
        }
        match best {
            Some(c) => {
                for &v in &c {
                    alive[v] = false;
                }
                out.push(c);
            }
            None => break,
        }
    }
    out
}

fn shortest_cycle_through(
    adj: &[Vec<usize>],
    alive: &[bool],
    s: usize,
    shorter_than: Option<usize>,
) -> Option<Cycle> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        if shorter_than.is_some_and(|l| dist[u] + 1 >= l) {
            return None;
        }
        for &v in &adj[u] {
            if !alive[v] {
                continue;
            }
            if v == s {
                let mut cyc = vec![u];
                let mut x = u;
                while x != s {
                    x = parent[x];
                    cyc.push(x);
                }
                cyc.reverse();
                return Some(cyc);
            }
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal {
            var: v.unsigned_abs() as usize - 1,
            positive: v > 0,
        }
    }

    #[test]
    fn single_unary_clause() {
        let phi = Max2Sat3::new(1, vec![vec![lit(-1)]]).unwrap();
        let g = build_reduction(&phi);
        assert_eq!(g.core[0].len(), 4);
        assert_eq!(g.labeled[0].len(), 4);
        let Gadget::Loop { vertex } = g.gadgets[0] else {
            panic!("unary clause builds a loop")
        };
        assert!(g.has_arc(vertex, vertex));
        assert_eq!(g.label(vertex), Some(lit(1)));
    }

    #[test]
    fn empty_formula() {
        let phi = Max2Sat3::new(0, vec![]).unwrap();
        let g = build_reduction(&phi);
        assert_eq!(g.num_vertices(), 0);
        assert!(assignment_to_cycles(&phi, &g, &[]).is_empty());
    }

    #[test]
    fn binary_gadget() {
        let phi = Max2Sat3::new(2, vec![vec![lit(1), lit(2)]]).unwrap();
        let g = build_reduction(&phi);
        let Gadget::Hub { hub, ends: [a, b] } = g.gadgets[0] else {
            panic!("binary clause builds a hub")
        };
        for (u, v) in [(a, hub), (hub, a), (b, hub), (hub, b)] {
            assert!(g.has_arc(u, v));
        }
        assert_eq!(g.label(a), Some(lit(-1)));
        assert_eq!(g.label(b), Some(lit(-2)));
        let cycles = assignment_to_cycles(&phi, &g, &[true, true]);
        check_disjoint_cycles(&g, &cycles).unwrap();
        assert_eq!(cycles.len(), 1 + 4);
    }

    #[test]
    fn unsatisfied_unary() {
        let phi = Max2Sat3::new(1, vec![vec![lit(1)]]).unwrap();
        let g = build_reduction(&phi);
        let cycles = assignment_to_cycles(&phi, &g, &[false]);
        check_disjoint_cycles(&g, &cycles).unwrap();
        assert_eq!(cycles.len(), 2);
    }

    #[test]
    fn single_gadget_cycle_gives_satisfying_assignment() {
        let phi = Max2Sat3::new(2, vec![vec![lit(1), lit(-2)]]).unwrap();
        let g = build_reduction(&phi);
        let Gadget::Hub { hub, ends: [_, b] } = g.gadgets[0] else {
            panic!()
        };
        let a = cycles_to_assignment(&phi, &g, &[vec![b, hub]]).unwrap();
        assert_eq!(phi.num_satisfied(&a), 1);
    }

    #[test]
    fn core_cycle_is_rewritten() {
        let phi = Max2Sat3::new(1, vec![vec![lit(1)]]).unwrap();
        let g = build_reduction(&phi);
        let normal = normalize_cycles(&g, &[g.core[0].clone()]).unwrap();
        assert_eq!(normal.len(), 1);
        assert_eq!(normal[0].len(), 3);
        check_disjoint_cycles(&g, &normal).unwrap();
    }

    #[test]
    fn rejects_overlap() {
        let phi = Max2Sat3::new(1, vec![vec![lit(1)]]).unwrap();
        let g = build_reduction(&phi);
        let t = triangle(&g, 0, 0);
        assert!(cycles_to_assignment(&phi, &g, &[t.clone(), t]).is_err());
        assert!(cycles_to_assignment(&phi, &g, &[vec![g.core[0][0], g.core[0][2]]]).is_err());
    }

    #[test]
    fn input_limits() {
        assert!(Max2Sat3::new(3, vec![vec![lit(1), lit(2), lit(3)]]).is_err());
        let four = vec![vec![lit(1)]; 4];
        assert!(Max2Sat3::new(1, four).is_err());
        assert!(Max2Sat3::new(1, vec![vec![lit(2)]]).is_err());
        assert!(Max2Sat3::new(1, vec![vec![lit(1), lit(-1)]]).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let phi = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n3 0\n").unwrap();
        assert_eq!(phi.clauses, vec![vec![lit(1), lit(-2)], vec![lit(3)]]);
        let mut buf = Vec::new();
        write_dimacs(&phi, &mut buf).unwrap();
        assert_eq!(parse_dimacs(std::str::from_utf8(&buf).unwrap()).unwrap(), phi);
        assert!(parse_dimacs("p cnf 3 1\n1 2 3 0\n").is_err());
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 x 0\n"),
            Err(Error::Input { line: 2, .. })
        ));
    }

    #[test]
    fn assignment_file() {
        let a = parse_assignment("c model\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 4).unwrap();
        assert_eq!(a, vec![true, false, true, false]);
        assert!(parse_assignment("5", 4).is_err());
    }

    #[test]
    fn degrees_and_padding() {
        let phi = random_instance(8, 7);
        let mut g = build_reduction(&phi);
        let free: HashSet<usize> = g.free_labeled().into_iter().collect();
        let (din, dout) = g.degrees();
        for v in 0..g.num_vertices() {
            let want = if free.contains(&v) { 1 } else { 2 };
            assert_eq!((din[v], dout[v]), (want, want), "vertex {v}");
        }
        assert!(free.len() >= 2 * phi.total_occurrences());
        g.pad_to_regular();
        let (din, dout) = g.degrees();
        assert!(din.iter().chain(&dout).all(|&d| d == 2));
    }

    #[test]
    fn greedy_on_small_graph() {
        // Two triangles sharing vertex 0 plus a loop.
        let arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (5, 5)];
        let cycles = greedy_disjoint_cycles(6, &arcs);
        assert_eq!(cycles, vec![vec![5], vec![0, 1, 2]]);
    }
}
