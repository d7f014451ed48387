//! LP relaxation via microlp's simplex and a depth-first branch-and-bound.

use std::time::{Duration, Instant};

use microlp::{ComparisonOp, OptimizationDirection, Problem, Solution, SolveOutcome, Variable};
use serde::Serialize;

use super::{IlpModel, ObjSense, RowOp};
use crate::error::{Error, Result};

const INT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IlpStatus {
    Optimal,
    /// Stopped by the time limit; the incumbent is feasible.
    TimeLimit,
    Infeasible,
}

#[derive(Clone, Debug, Serialize)]
pub struct IlpSolution {
    pub status: IlpStatus,
    pub objective: f64,
    /// Best proven bound on the optimum.
    pub bound: f64,
    pub values: Vec<f64>,
    pub nodes: u64,
    pub root_lp: f64,
}

fn to_problem(m: &IlpModel) -> (Problem, Vec<Variable>) {
    let dir = match m.sense {
        ObjSense::Maximize => OptimizationDirection::Maximize,
        ObjSense::Minimize => OptimizationDirection::Minimize,
    };
    let mut p = Problem::new(dir);
    let mut obj = vec![0.0; m.vars.len()];
    for &(j, a) in &m.objective {
        obj[j] += a;
    }
    let vars: Vec<Variable> = m
        .vars
        .iter()
        .zip(&obj)
        .map(|(v, &c)| p.add_var(c, (v.lower, v.upper)))
        .collect();
    for r in &m.rows {
        let terms: Vec<(Variable, f64)> = r.terms.iter().map(|&(j, a)| (vars[j], a)).collect();
        let op = match r.op {
            RowOp::Le => ComparisonOp::Le,
            RowOp::Eq => ComparisonOp::Eq,
            RowOp::Ge => ComparisonOp::Ge,
        };
        p.add_constraint(terms.as_slice(), op, r.rhs);
    }
    (p, vars)
}

fn values(sol: &Solution, vars: &[Variable]) -> Vec<f64> {
    vars.iter().map(|&v| sol.var_value(v)).collect()
}

fn solver_err(e: microlp::Error) -> Error {
    Error::Solver(e.to_string())
}

/// Solves the continuous relaxation of `m`.
pub fn solve_lp(m: &IlpModel, time_limit: Option<Duration>) -> Result<LpSolution> {
    let (mut p, vars) = to_problem(m);
    if let Some(t) = time_limit {
        p.set_time_limit(t);
    }
    match p.solve() {
        Ok(SolveOutcome::Solution(sol)) => Ok(LpSolution {
            status: LpStatus::Optimal,
            objective: sol.objective(),
            values: values(&sol, &vars),
        }),
        Ok(SolveOutcome::Interrupted(_)) => Ok(LpSolution {
            status: LpStatus::IterationLimit,
            objective: f64::NAN,
            values: Vec::new(),
        }),
        Err(microlp::Error::Infeasible) => Ok(LpSolution {
            status: LpStatus::Infeasible,
            objective: f64::NAN,
            values: Vec::new(),
        }),
        Err(e) => Err(solver_err(e)),
    }
}

struct Search<'a> {
    vars: &'a [Variable],
    binary: Vec<bool>,
    maximize: bool,
    integral_objective: bool,
    incumbent: Option<(f64, Vec<f64>)>,
    deadline: Instant,
    timed_out: bool,
    nodes: u64,
}

impl Search<'_> {
    /// Objective in maximization terms.
    fn score(&self, obj: f64) -> f64 {
        if self.maximize {
            obj
        } else {
            -obj
        }
    }

    fn can_prune(&self, bound: f64) -> bool {
        let Some((inc, _)) = &self.incumbent else {
            return false;
        };
        let inc = self.score(*inc);
        if self.integral_objective {
            (bound + INT_TOL).floor() <= inc + INT_TOL
        } else {
            bound <= inc + INT_TOL
        }
    }

    fn branch_var(&self, x: &[f64]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (j, &v) in x.iter().enumerate() {
            if !self.binary[j] {
                continue;
            }
            let frac = v - v.floor();
            let dist = frac.min(1.0 - frac);
            if dist > INT_TOL && best.is_none_or(|(_, d)| dist > d) {
                best = Some((j, dist));
            }
        }
        best.map(|(j, _)| j)
    }

    fn dfs(&mut self, sol: Solution) -> Result<()> {
        self.nodes += 1;
        if Instant::now() >= self.deadline {
            self.timed_out = true;
            return Ok(());
        }
        let bound = self.score(sol.objective());
        if self.can_prune(bound) {
            return Ok(());
        }
        let x = values(&sol, self.vars);
        let Some(j) = self.branch_var(&x) else {
            let rounded: Vec<f64> = x
                .iter()
                .zip(&self.binary)
                .map(|(&v, &b)| if b { v.round() } else { v })
                .collect();
            let obj = if self.integral_objective {
                sol.objective().round()
            } else {
                sol.objective()
            };
            if self
                .incumbent
                .as_ref()
                .is_none_or(|(inc, _)| self.score(obj) > self.score(*inc))
            {
                self.incumbent = Some((obj, rounded));
            }
            return Ok(());
        };
        let var = self.vars[j];
        for val in [1.0, 0.0] {
            if self.timed_out {
                break;
            }
            match sol.clone().fix_var(var, val) {
                Ok(SolveOutcome::Solution(child)) => self.dfs(child)?,
                Ok(SolveOutcome::Interrupted(_)) => self.timed_out = true,
                Err(microlp::Error::Infeasible) => {}
                Err(e) => return Err(solver_err(e)),
            }
        }
        Ok(())
    }
}

/// Exact branch-and-bound on the binary variables of `m`: depth first, up
/// branch first, branching on the most fractional variable (lowest index on
/// ties).
pub fn solve_ilp(m: &IlpModel, time_limit: Duration) -> Result<IlpSolution> {
    let start = Instant::now();
    let (mut p, vars) = to_problem(m);
    p.set_time_limit(time_limit);
    let binary: Vec<bool> = m.vars.iter().map(|v| v.binary).collect();
    let integral_objective = m.objective.iter().all(|&(j, a)| binary[j] && a.fract() == 0.0);
    let root = match p.solve() {
        Ok(SolveOutcome::Solution(sol)) => sol,
        Ok(SolveOutcome::Interrupted(_)) => {
            return Err(Error::Solver("time limit reached in the root relaxation".into()))
        }
        Err(microlp::Error::Infeasible) => {
            return Ok(IlpSolution {
                status: IlpStatus::Infeasible,
                objective: f64::NAN,
                bound: f64::NAN,
                values: Vec::new(),
                nodes: 1,
                root_lp: f64::NAN,
            })
        }
        Err(e) => return Err(solver_err(e)),
    };
    let root_lp = root.objective();
    let mut search = Search {
        vars: &vars,
        binary,
        maximize: m.sense == ObjSense::Maximize,
        integral_objective,
        incumbent: None,
        deadline: start + time_limit,
        timed_out: false,
        nodes: 0,
    };
    search.dfs(root)?;
    let (timed_out, nodes) = (search.timed_out, search.nodes);
    let maximize = search.maximize;
    let root_bound = if integral_objective {
        if maximize {
            (root_lp + INT_TOL).floor()
        } else {
            (root_lp - INT_TOL).ceil()
        }
    } else {
        root_lp
    };
    match search.incumbent {
        Some((obj, values)) => Ok(IlpSolution {
            status: if timed_out { IlpStatus::TimeLimit } else { IlpStatus::Optimal },
            objective: obj,
            bound: if timed_out { root_bound } else { obj },
            values,
            nodes,
            root_lp,
        }),
        None if timed_out => Err(Error::Solver(
            "time limit reached before any integer solution was found".into(),
        )),
        None => Ok(IlpSolution {
            status: IlpStatus::Infeasible,
            objective: f64::NAN,
            bound: f64::NAN,
            values: Vec::new(),
            nodes,
            root_lp,
        }),
    }
}
