//! Feasibility checking and tag-set statistics.
//!
//! Only the string-level token functions are used here, so the checks stay
//! independent from the availability bookkeeping of the designers.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::token_graph::Stability;
use crate::tokens::{tokens_of_string, weight, DnaString};
use crate::tree_search::{Pairwise, Provenance, TagSet, TokenMode};

/// Tag indices are 0-based positions in the input list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    WrongLength { tag: usize, len: usize, expected: u32 },
    WrongWeight { tag: usize, weight: u32, min: u32 },
    /// The weight threshold is already reached before the last letter.
    ThresholdBeforeEnd { tag: usize },
    SharedToken { token: DnaString, tags: (usize, usize) },
    /// `token` is in tag `tags.0` and in the antitag of `tags.1`.
    SharedWithAntitag { token: DnaString, tags: (usize, usize) },
    RepeatedToken { token: DnaString, tag: usize },
    /// A token and its reverse complement both occur in one tag.
    ComplementInTag { token: DnaString, tag: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { tag, len, expected } => {
                write!(f, "tag {}: length {len}, expected {expected}", tag + 1)
            }
            Violation::WrongWeight { tag, weight, min } => {
                write!(f, "tag {}: weight {weight}, expected {min} or {}", tag + 1, min + 1)
            }
            Violation::ThresholdBeforeEnd { tag } => {
                write!(f, "tag {}: minimum weight reached before the last letter", tag + 1)
            }
            Violation::SharedToken { token, tags } => {
                write!(f, "token {token} in tags {} and {}", tags.0 + 1, tags.1 + 1)
            }
            Violation::SharedWithAntitag { token, tags } => {
                write!(f, "token {token} in tag {} and in antitag {}", tags.0 + 1, tags.1 + 1)
            }
            Violation::RepeatedToken { token, tag } => {
                write!(f, "token {token} repeated in tag {}", tag + 1)
            }
            Violation::ComplementInTag { token, tag } => {
                write!(
                    f,
                    "token {token} and its reverse complement both in tag {}",
                    tag + 1
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

fn token_set(s: &DnaString, c: u32) -> BTreeSet<DnaString> {
    tokens_of_string(s.bases(), c).into_iter().map(|(_, t)| t).collect()
}

pub fn verify_tagset(
    tags: &[DnaString],
    c: u32,
    stability: Stability,
    pairwise: Pairwise,
    token_mode: TokenMode,
) -> Report {
    let mut violations = Vec::new();

    for (i, t) in tags.iter().enumerate() {
        match stability {
            Stability::Length(l) => {
                if t.len() != l as usize {
                    violations.push(Violation::WrongLength {
                        tag: i,
                        len: t.len(),
                        expected: l,
                    });
                }
            }
            Stability::Weight(h) => {
                let w = t.weight();
                if w < h || w > h + 1 {
                    violations.push(Violation::WrongWeight {
                        tag: i,
                        weight: w,
                        min: h,
                    });
                } else if weight(&t.bases()[..t.len() - 1]) >= h {
                    violations.push(Violation::ThresholdBeforeEnd { tag: i });
                }
            }
        }
    }

    let sets: Vec<BTreeSet<DnaString>> = tags.iter().map(|t| token_set(t, c)).collect();
    let mut holders: HashMap<&DnaString, Vec<usize>> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        for x in s {
            holders.entry(x).or_default().push(i);
        }
    }
    let mut reported = HashSet::new();
    for (i, s) in sets.iter().enumerate() {
        for x in s {
            for &j in &holders[x] {
                if j > i && reported.insert((x.clone(), i, j)) {
                    violations.push(Violation::SharedToken {
                        token: x.clone(),
                        tags: (i, j),
                    });
                }
            }
        }
    }

    if pairwise == Pairwise::Cbar {
        for (j, t) in tags.iter().enumerate() {
            for x in token_set(&t.reverse_complement(), c) {
                for &i in holders.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                    if i != j {
                        violations.push(Violation::SharedWithAntitag {
                            token: x.clone(),
                            tags: (i, j),
                        });
                    }
                }
            }
        }
    }

    if token_mode == TokenMode::Unique {
        for (i, t) in tags.iter().enumerate() {
            let mut seen = HashSet::new();
            for (_, x) in tokens_of_string(t.bases(), c) {
                if !seen.insert(x.clone()) {
                    violations.push(Violation::RepeatedToken { token: x, tag: i });
                }
            }
            if pairwise == Pairwise::Cbar {
                for x in &sets[i] {
                    let rc = x.reverse_complement();
                    if &rc != x && x < &rc && sets[i].contains(&rc) {
                        violations.push(Violation::ComplementInTag {
                            token: x.clone(),
                            tag: i,
                        });
                    }
                }
            }
        }
    }

    Report { violations }
}

/// The summary columns of a design run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub tags: usize,
    pub c_tokens: usize,
    pub pct_cyclic: f64,
}

pub fn stats(set: &TagSet) -> Stats {
    let provenance: Vec<Provenance> = set.tags.iter().map(|t| t.provenance).collect();
    let seqs: Vec<DnaString> = set.sequences().cloned().collect();
    stats_of(&seqs, &provenance, set.c)
}

pub fn stats_of(tags: &[DnaString], provenance: &[Provenance], c: u32) -> Stats {
    let distinct: HashSet<DnaString> = tags.iter().flat_map(|t| token_set(t, c)).collect();
    let cyclic = provenance
        .iter()
        .filter(|&&p| p == Provenance::CyclePacking)
        .count();
    let pct_cyclic = if tags.is_empty() {
        0.0
    } else {
        (1000.0 * cyclic as f64 / tags.len() as f64).round() / 10.0
    };
    Stats {
        tags: tags.len(),
        c_tokens: distinct.len(),
        pct_cyclic,
    }
}

/// Shortest `p < |t|` such that `t` is a prefix of `t[..p]` repeated.
pub fn shortest_period(t: &DnaString) -> Option<usize> {
    let b = t.bases();
    (1..b.len()).find(|&p| (p..b.len()).all(|i| b[i] == b[i - p]))
}

/// Parses a tag file: one tag per line, optionally followed by a provenance
/// word (`tree`, `cycle` or `ilp`). Blank lines and `#` comments are skipped.
pub fn parse_tags(text: &str) -> Result<Vec<(DnaString, Option<Provenance>)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let seq = fields.next().expect("non-empty line");
        let seq: DnaString = seq.parse().map_err(|e| Error::Input {
            line: n + 1,
            msg: match e {
                Error::InvalidInput(m) => m,
                other => other.to_string(),
            },
        })?;
        let prov = match fields.next() {
            None => None,
            Some("tree") => Some(Provenance::TreeSearch),
            Some("cycle") => Some(Provenance::CyclePacking),
            Some("ilp") => Some(Provenance::Ilp),
            Some(other) => {
                return Err(Error::Input {
                    line: n + 1,
                    msg: format!("unknown provenance {other:?}"),
                })
            }
        };
        if let Some(extra) = fields.next() {
            return Err(Error::Input {
                line: n + 1,
                msg: format!("unexpected field {extra:?}"),
            });
        }
        out.push((seq, prov));
    }
    Ok(out)
}

pub fn provenance_word(p: Provenance) -> &'static str {
    match p {
        Provenance::TreeSearch => "tree",
        Provenance::CyclePacking => "cycle",
        Provenance::Ilp => "ilp",
    }
}
