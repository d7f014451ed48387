//! CPLEX-style LP text files. Writing is done here; reading goes through
//! `lp_parser_rs` so that files are checked by an independent parser.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;

use lp_parser_rs::model::{ComparisonOp, Constraint, Sense, VariableKind};
use lp_parser_rs::problem::LpProblem;

use super::{IlpModel, ObjSense, Row, RowOp, Var};
use crate::error::{Error, Result};

const WRAP: usize = 200;

fn write_expr(line: &mut String, out: &mut String, terms: &[(usize, f64)], vars: &[Var]) {
    for &(j, a) in terms {
        let term = if a == 1.0 {
            format!(" + {}", vars[j].name)
        } else if a == -1.0 {
            format!(" - {}", vars[j].name)
        } else if a < 0.0 {
            format!(" - {} {}", -a, vars[j].name)
        } else {
            format!(" + {} {}", a, vars[j].name)
        };
        if line.len() + term.len() > WRAP {
            out.push_str(line);
            out.push('\n');
            line.clear();
            line.push_str("   ");
        }
        line.push_str(&term);
    }
}

fn fmt_num(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

/// Writes `m` with rows in build order and variables in index order.
pub fn export_lp(m: &IlpModel, sink: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    let size = m.size();
    let mut out = String::new();
    writeln!(
        out,
        "\\ tag design model: {} rows, {} columns, {} nonzeros",
        size.rows, size.vars, size.nonzeros
    )
    .unwrap();
    if m.vars.is_empty() && m.rows.is_empty() {
        out.push_str("End\n");
        return sink.write_all(out.as_bytes());
    }
    out.push_str(match m.sense {
        ObjSense::Maximize => "Maximize\n",
        ObjSense::Minimize => "Minimize\n",
    });
    let mut line = String::from(" obj:");
    if m.objective.is_empty() {
        if let Some(v) = m.vars.first() {
            write!(line, " 0 {}", v.name).unwrap();
        }
    }
    write_expr(&mut line, &mut out, &m.objective, &m.vars);
    out.push_str(&line);
    out.push('\n');

    out.push_str("Subject To\n");
    for r in &m.rows {
        let mut line = format!(" {}:", r.name);
        write_expr(&mut line, &mut out, &r.terms, &m.vars);
        let op = match r.op {
            RowOp::Le => "<=",
            RowOp::Eq => "=",
            RowOp::Ge => ">=",
        };
        write!(line, " {op} {}", fmt_num(r.rhs)).unwrap();
        out.push_str(&line);
        out.push('\n');
    }

    let bounded: Vec<&Var> = m
        .vars
        .iter()
        .filter(|v| !v.binary && !(v.lower == 0.0 && v.upper == f64::INFINITY))
        .collect();
    if !bounded.is_empty() {
        out.push_str("Bounds\n");
        for v in bounded {
            if v.lower == f64::NEG_INFINITY && v.upper == f64::INFINITY {
                writeln!(out, " {} free", v.name).unwrap();
            } else {
                writeln!(out, " {} <= {} <= {}", fmt_num(v.lower), v.name, fmt_num(v.upper)).unwrap();
            }
        }
    }
    let binaries: Vec<&Var> = m.vars.iter().filter(|v| v.binary).collect();
    if !binaries.is_empty() {
        out.push_str("Binary\n");
        for v in binaries {
            writeln!(out, " {}", v.name).unwrap();
        }
    }
    out.push_str("End\n");
    sink.write_all(out.as_bytes())
}

fn lp_err(msg: impl Into<String>) -> Error {
    Error::LpParse(msg.into())
}

/// Reads an LP file into a model with no graph link.
pub fn parse_lp(text: &str) -> Result<IlpModel> {
    let p = LpProblem::parse(text).map_err(|e| lp_err(e.to_string()))?;
    let sense = match p.sense {
        Sense::Maximize => ObjSense::Maximize,
        Sense::Minimize => ObjSense::Minimize,
    };
    let mut m = IlpModel::empty(sense);
    let mut index: HashMap<String, usize> = HashMap::new();
    for v in p.variables.values() {
        let name = p.resolve(v.name).to_string();
        let binary = match v.kind {
            VariableKind::Continuous => false,
            VariableKind::Binary => true,
            VariableKind::Integer | VariableKind::General => {
                let lo = v.bounds.lower.unwrap_or(0.0);
                let hi = v.bounds.upper.unwrap_or(f64::INFINITY);
                if lo < 0.0 || hi > 1.0 {
                    return Err(lp_err(format!(
                        "{name}: only 0/1 integer variables are supported"
                    )));
                }
                true
            }
            other => return Err(lp_err(format!("{name}: unsupported variable kind {other}"))),
        };
        let (lower, upper) = if v.kind == VariableKind::Binary {
            (
                v.bounds.lower.unwrap_or(0.0).max(0.0),
                v.bounds.upper.unwrap_or(1.0).min(1.0),
            )
        } else {
            (
                v.bounds.lower.unwrap_or(0.0),
                v.bounds.upper.unwrap_or(f64::INFINITY),
            )
        };
        index.insert(name.clone(), m.vars.len());
        m.vars.push(Var {
            name,
            lower,
            upper,
            binary,
        });
    }
    let lookup = |id| -> Result<usize> {
        let name = p.resolve(id);
        index
            .get(name)
            .copied()
            .ok_or_else(|| lp_err(format!("undeclared variable {name}")))
    };
    let collect = |coefs: &[lp_parser_rs::model::Coefficient]| -> Result<Vec<(usize, f64)>> {
        let mut acc: Vec<(usize, f64)> = Vec::with_capacity(coefs.len());
        for c in coefs {
            acc.push((lookup(c.name)?, c.value));
        }
        acc.sort_by_key(|&(j, _)| j);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(acc.len());
        for (j, a) in acc {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0.0);
        Ok(merged)
    };

    match p.objectives.len() {
        0 => {}
        1 => {
            let obj = p.objectives.values().next().expect("one objective");
            if obj.constant != 0.0 {
                return Err(lp_err("objective constants are not supported"));
            }
            m.objective = collect(&obj.coefficients)?;
        }
        n => return Err(lp_err(format!("{n} objectives; exactly one is supported"))),
    }
    for con in p.constraints.values() {
        match con {
            Constraint::Standard {
                name,
                coefficients,
                operator,
                rhs,
                ..
            } => {
                let op = match operator {
                    ComparisonOp::LT | ComparisonOp::LTE => RowOp::Le,
                    ComparisonOp::GT | ComparisonOp::GTE => RowOp::Ge,
                    ComparisonOp::EQ => RowOp::Eq,
                };
                m.rows.push(Row {
                    name: p.resolve(*name).to_string(),
                    terms: collect(coefficients)?,
                    op,
                    rhs: *rhs,
                });
            }
            Constraint::SOS { .. } => return Err(lp_err("SOS constraints are not supported")),
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_model_is_header_and_end() {
        let mut buf = Vec::new();
        export_lp(&IlpModel::empty(ObjSense::Maximize), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with('\\'));
        assert_eq!(lines[1], "End");
    }

    #[test]
    fn round_trip_small() {
        let text = "Maximize\n obj: 3 x + 2 y\nSubject To\n c1: x + y <= 1.5\n c2: x - y >= -1\nBounds\n 0 <= y <= 4\nBinary\n x\nEnd\n";
        let m = parse_lp(text).unwrap();
        assert_eq!(m.vars.len(), 2);
        assert_eq!(m.rows.len(), 2);
        let mut buf = Vec::new();
        export_lp(&m, &mut buf).unwrap();
        let again = parse_lp(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(again.rows, m.rows);
        assert_eq!(again.vars, m.vars);
        assert_eq!(again.objective, m.objective);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_lp("Maximize\n obj: x +\nSubject To\n").is_err());
    }
}
