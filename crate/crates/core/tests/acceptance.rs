//! Acceptance checks. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any line fails.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tagforge::cycle_packing::{combined_design, DEFAULT_MAX_PERIOD};
use tagforge::hardness::{
    assignment_to_cycles, build_reduction, cycles_to_assignment, random_instance, ReductionGraph,
};
use tagforge::ilp::{
    build_model, extract_tags, solve_ilp, solve_lp, IlpStatus, LpStatus, ModelOptions, ModelSize,
};
use tagforge::token_graph::{build_layered, Stability};
use tagforge::tokens::{TokenClass, TokenSet};
use tagforge::tree_search::{tree_search, Availability, Pairwise, TagSet, TokenMode};
use tagforge::verify::{stats, verify_tagset};

use Stability::{Length, Weight};

/// LP reference values carry two decimals.
const LP_TOL: f64 = 0.01;
/// Model sizes may differ by counting convention.
const SIZE_TOL: f64 = 0.05;
/// Tag-count slack for the combined design.
const COMBINED_TAG_TOL: usize = 1;
const MIN_COMBINED_GAIN: f64 = 1.4;
/// Relative slack for the unique-mode tree search.
const UNIQUE_TOL: f64 = 0.15;
/// Floating-point slack for comparing solver objectives.
const EPS: f64 = 1e-6;
const ILP_BUDGET: Duration = Duration::from_secs(600);
const TOKENS_BUDGET: Duration = Duration::from_secs(1);
const HARDNESS_BUDGET: Duration = Duration::from_secs(10);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome {
            ok: true,
            detail: summary,
        }
    } else {
        Outcome {
            ok: false,
            detail: format!("{summary}; {}", problems.join("; ")),
        }
    }
}

// ---- independent string-level oracles (bytes over "ACGT") ----

fn w(b: u8) -> u32 {
    match b {
        b'A' | b'T' => 1,
        b'C' | b'G' => 2,
        _ => panic!("not a base"),
    }
}

fn is_token(s: &[u8], c: u32) -> bool {
    let total: u32 = s.iter().map(|&b| w(b)).sum();
    total >= c && (1..s.len()).all(|k| s[k..].iter().map(|&b| w(b)).sum::<u32>() < c)
}

/// Tokens ending at each position, in order.
fn oracle_tokens(s: &[u8], c: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for p in 1..=s.len() {
        let mut acc = 0;
        for q in (0..p).rev() {
            acc += w(s[q]);
            if acc >= c {
                out.push(s[q..p].to_vec());
                break;
            }
        }
    }
    out
}

fn rc(s: &[u8]) -> Vec<u8> {
    s.iter()
        .rev()
        .map(|&b| match b {
            b'A' => b'T',
            b'T' => b'A',
            b'C' => b'G',
            b'G' => b'C',
            _ => unreachable!(),
        })
        .collect()
}

fn all_strings(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..4usize.pow(len as u32)).map(move |mut n| {
        let mut s = vec![0u8; len];
        for slot in s.iter_mut().rev() {
            *slot = b"ACGT"[n % 4];
            n /= 4;
        }
        s
    })
}

/// Feasibility bookkeeping of one tag set under a pairwise rule and token mode.
struct Oracle {
    c: u32,
    pairwise: Pairwise,
    mode: TokenMode,
    tag_tokens: HashSet<Vec<u8>>,
    anti_tokens: HashSet<Vec<u8>>,
}

impl Oracle {
    fn new(c: u32, pairwise: Pairwise, mode: TokenMode) -> Self {
        Oracle {
            c,
            pairwise,
            mode,
            tag_tokens: HashSet::new(),
            anti_tokens: HashSet::new(),
        }
    }

    fn internally_ok(&self, toks: &[Vec<u8>]) -> bool {
        if self.mode == TokenMode::Multiple {
            return true;
        }
        let set: HashSet<&Vec<u8>> = toks.iter().collect();
        if set.len() != toks.len() {
            return false;
        }
        self.pairwise == Pairwise::C
            || toks.iter().all(|x| {
                let r = rc(x);
                r == *x || !set.contains(&r)
            })
    }

    fn can_add(&self, t: &[u8]) -> bool {
        let toks = oracle_tokens(t, self.c);
        if !self.internally_ok(&toks) {
            return false;
        }
        if toks.iter().any(|x| self.tag_tokens.contains(x)) {
            return false;
        }
        if self.pairwise == Pairwise::Cbar {
            if toks.iter().any(|x| self.anti_tokens.contains(x)) {
                return false;
            }
            if oracle_tokens(&rc(t), self.c)
                .iter()
                .any(|x| self.tag_tokens.contains(x))
            {
                return false;
            }
        }
        true
    }

    fn add(&mut self, t: &[u8]) -> bool {
        let ok = self.can_add(t);
        self.tag_tokens.extend(oracle_tokens(t, self.c));
        self.anti_tokens.extend(oracle_tokens(&rc(t), self.c));
        ok
    }
}

fn texts(set: &TagSet) -> Vec<Vec<u8>> {
    set.sequences().map(|s| s.to_string().into_bytes()).collect()
}

/// Checks a design with the oracle; returns the first offending tag.
fn oracle_feasible(set: &TagSet, len: Option<usize>) -> Result<(), String> {
    let mut o = Oracle::new(set.c, set.pairwise, set.token_mode);
    for (i, t) in texts(set).iter().enumerate() {
        if len.is_some_and(|l| t.len() != l) || !o.add(t) {
            return Err(format!("tag {} ({}) breaks the constraints", i + 1, String::from_utf8_lossy(t)));
        }
    }
    Ok(())
}

fn library_feasible(set: &TagSet) -> bool {
    let seqs: Vec<_> = set.sequences().cloned().collect();
    verify_tagset(&seqs, set.c, set.stability, set.pairwise, set.token_mode).is_feasible()
}

fn design_tree(c: u32, st: Stability, pw: Pairwise, mode: TokenMode) -> TagSet {
    let tokens = TokenSet::new(c).unwrap();
    let mut avail = Availability::new(&tokens, pw);
    tree_search(&tokens, st, pw, mode, &mut avail)
}

// ---- criteria ----

fn criterion_1() -> Outcome {
    let mut problems = Vec::new();
    let start = Instant::now();
    let sets: Vec<TokenSet> = (1..=8).map(|c| TokenSet::new(c).unwrap()).collect();
    let elapsed = start.elapsed();
    if elapsed > TOKENS_BUDGET {
        problems.push(format!("enumeration took {elapsed:?}"));
    }
    let mut counts = Vec::new();
    for (set, c) in sets.iter().zip(1u32..) {
        // A token has weight at most c + 1, so at most c + 1 letters.
        let brute: BTreeSet<Vec<u8>> = (1..=c as usize + 1)
            .flat_map(all_strings)
            .filter(|s| is_token(s, c))
            .collect();
        let got: BTreeSet<Vec<u8>> = set.iter().map(|(_, t)| t.text.to_string().into_bytes()).collect();
        if got != brute || got.len() != set.len() {
            problems.push(format!("c={c}: {} tokens, brute force {}", set.len(), brute.len()));
        }
        for (_, t) in set.iter() {
            let s = t.text.to_string().into_bytes();
            let weight: u32 = s.iter().map(|&b| w(b)).sum();
            let strong_end = matches!(s.last(), Some(b'C' | b'G'));
            let class = match (weight - c, strong_end) {
                (1, false) => TokenClass::C0,
                (0, true) => TokenClass::C2,
                _ => TokenClass::Other,
            };
            if t.weight != weight || !(c..=c + 1).contains(&weight) || t.class != class {
                problems.push(format!("c={c}: token {} has bad weight or class", t.text));
            }
        }
        counts.push(set.len());
    }
    if counts[..3] != [4, 10, 28] {
        problems.push(format!("counts for c=1..3 are {:?}", &counts[..3]));
    }
    outcome(
        problems,
        format!("token counts c=1..8 {counts:?} match brute force, enumerated in {elapsed:.2?}"),
    )
}

struct IlpRun {
    c: u32,
    st: Stability,
    size: ModelSize,
    lp: f64,
    ilp: f64,
    status: IlpStatus,
    lp_no_cut: f64,
    ilp_no_cut: f64,
    status_no_cut: IlpStatus,
    seconds: f64,
    extracted_ok: Result<usize, String>,
}

fn run_ilp(c: u32, st: Stability, with_no_cut: bool) -> IlpRun {
    let tokens = TokenSet::new(c).unwrap();
    let g = build_layered(&tokens, st).unwrap();
    let start = Instant::now();
    let m = build_model(&g, &tokens, ModelOptions::default());
    let lp = solve_lp(&m, None).unwrap();
    assert_eq!(lp.status, LpStatus::Optimal);
    let sol = solve_ilp(&m, ILP_BUDGET).unwrap();
    let seconds = start.elapsed().as_secs_f64();
    let extracted_ok = extract_tags(&m, &sol.values, &g, &tokens)
        .map_err(|e| e.to_string())
        .and_then(|set| {
            if set.len() as f64 != sol.objective {
                return Err(format!("{} paths for objective {}", set.len(), sol.objective));
            }
            let len = match st {
                Length(l) => Some(l as usize),
                Weight(_) => None,
            };
            oracle_feasible(&set, len)?;
            if !library_feasible(&set) {
                return Err("verifier rejects the extracted tags".into());
            }
            Ok(set.len())
        });
    let (lp_no_cut, ilp_no_cut, status_no_cut) = if with_no_cut {
        let m = build_model(
            &g,
            &tokens,
            ModelOptions {
                cut5: false,
                ..ModelOptions::default()
            },
        );
        let lp = solve_lp(&m, None).unwrap();
        let sol = solve_ilp(&m, ILP_BUDGET).unwrap();
        (lp.objective, sol.objective, sol.status)
    } else {
        (f64::NAN, f64::NAN, IlpStatus::Optimal)
    };
    IlpRun {
        c,
        st,
        size: m.size(),
        lp: lp.objective,
        ilp: sol.objective,
        status: sol.status,
        lp_no_cut,
        ilp_no_cut,
        status_no_cut,
        seconds,
        extracted_ok,
    }
}

fn criterion_2(runs: &[IlpRun]) -> Outcome {
    let expected = [
        (4, Length(10), 8.0, 8.57),
        (5, Length(10), 28.0, 28.00),
        (4, Weight(15), 7.0, 7.00),
        (5, Weight(15), 21.0, 21.09),
    ];
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (c, st, ilp, lp) in expected {
        let r = runs.iter().find(|r| r.c == c && r.st == st).expect("instance solved");
        parts.push(format!("c={c} {st}: ILP {} LP {:.2} in {:.1}s", r.ilp, r.lp, r.seconds));
        if r.status != IlpStatus::Optimal || r.ilp != ilp {
            problems.push(format!("c={c} {st}: ILP {} ({:?}), expected {ilp}", r.ilp, r.status));
        }
        if (r.lp - lp).abs() > LP_TOL {
            problems.push(format!("c={c} {st}: LP {:.4}, expected {lp}", r.lp));
        }
        if r.seconds > ILP_BUDGET.as_secs_f64() {
            problems.push(format!("c={c} {st}: {:.0}s over budget", r.seconds));
        }
        if let Err(e) = &r.extracted_ok {
            problems.push(format!("c={c} {st}: extraction: {e}"));
        }
    }
    outcome(problems, parts.join(", "))
}

fn criterion_3(runs: &[IlpRun]) -> Outcome {
    let r = runs.iter().find(|r| r.c == 4 && r.st == Length(10)).unwrap();
    let want = [(r.size.rows, 406.0, "rows"), (r.size.vars, 1878.0, "vars"), (r.size.nonzeros, 6004.0, "nonzeros")];
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (got, target, name) in want {
        let dev = (got as f64 - target) / target;
        parts.push(format!("{name} {got} ({:+.1}%)", 100.0 * dev));
        if dev.abs() > SIZE_TOL {
            problems.push(format!("{name} {got} outside ±5% of {target}"));
        }
    }
    outcome(problems, format!("c=4 l=10: {}", parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let cases = [
        (4, Pairwise::C, 14, 59),
        (5, Pairwise::C, 31, 165),
        (6, Pairwise::C, 53, 433),
        (4, Pairwise::Cbar, 10, 35),
    ];
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (c, pw, tags, toks) in cases {
        let set = design_tree(c, Length(20), pw, TokenMode::Multiple);
        let s = stats(&set);
        parts.push(format!("c={c} {pw}: {}/{}", s.tags, s.c_tokens));
        if (s.tags, s.c_tokens) != (tags, toks) {
            problems.push(format!("c={c} {pw}: expected {tags}/{toks}"));
        }
        if let Err(e) = oracle_feasible(&set, Some(20)) {
            problems.push(format!("c={c} {pw}: {e}"));
        }
    }
    outcome(problems, format!("l=20 multiple mode {}", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    let expected = [
        (4, Pairwise::C, 17, 40, 100.0),
        (5, Pairwise::C, 40, 140, 100.0),
        (4, Pairwise::Cbar, 10, 25, 100.0),
    ];
    for (c, pw, tags, toks, pct) in expected {
        let tokens = TokenSet::new(c).unwrap();
        let (set, _) = combined_design(&tokens, Length(20), pw, DEFAULT_MAX_PERIOD);
        let s = stats(&set);
        parts.push(format!("c={c} {pw}: {}/{}/{:.1}", s.tags, s.c_tokens, s.pct_cyclic));
        if s.tags.abs_diff(tags) > COMBINED_TAG_TOL {
            problems.push(format!("c={c} {pw}: {} tags, expected {tags} ± {COMBINED_TAG_TOL}", s.tags));
        }
        if (s.c_tokens, s.pct_cyclic) != (toks, pct) {
            parts.push(format!("(reference {toks}/{pct:.1})"));
        }
        if let Err(e) = oracle_feasible(&set, Some(20)) {
            problems.push(format!("c={c} {pw}: {e}"));
        }
    }
    // The gain over the unique-mode tree search, on every instance above and
    // the other reported settings.
    let mut gains = Vec::new();
    for (c, st) in [(4, Length(20)), (5, Length(20)), (6, Length(20)), (4, Weight(28)), (5, Weight(28)), (6, Weight(28))] {
        for pw in [Pairwise::C, Pairwise::Cbar] {
            let tokens = TokenSet::new(c).unwrap();
            let combined = combined_design(&tokens, st, pw, DEFAULT_MAX_PERIOD).0.len();
            let unique = design_tree(c, st, pw, TokenMode::Unique).len();
            gains.push(format!("{combined}/{unique}"));
            if (combined as f64) < MIN_COMBINED_GAIN * unique as f64 {
                problems.push(format!("c={c} {st} {pw}: combined {combined} < 1.4 x unique {unique}"));
            }
        }
    }
    outcome(
        problems,
        format!("l=20 {}; combined/unique {}", parts.join(", "), gains.join(" ")),
    )
}

fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (c, l, want) in [(4, 20, 3usize), (4, 10, 7)] {
        let set = design_tree(c, Length(l), Pairwise::C, TokenMode::Unique);
        parts.push(format!("c={c} l={l}: {}", set.len()));
        if (set.len() as f64 - want as f64).abs() > UNIQUE_TOL * want as f64 {
            problems.push(format!("c={c} l={l}: {} tags, expected {want}", set.len()));
        } else if set.len() != want {
            parts.push(format!("(within tolerance of {want}, not exact)"));
        }
        if let Err(e) = oracle_feasible(&set, Some(l as usize)) {
            problems.push(e);
        }
    }
    outcome(problems, format!("unique mode {}", parts.join(", ")))
}

/// Largest set of pairwise token-disjoint length-`l` strings without
/// repeated tokens, by exhaustive search.
fn brute_force_max(c: u32, l: usize) -> usize {
    let all: Vec<Vec<u8>> = (1..=c as usize + 1).flat_map(all_strings).filter(|s| is_token(s, c)).collect();
    let index: HashMap<Vec<u8>, usize> = all.iter().cloned().zip(0..).collect();
    assert!(all.len() <= 64);
    let masks: Vec<u64> = all_strings(l)
        .filter_map(|s| {
            let toks = oracle_tokens(&s, c);
            let mut m = 0u64;
            for t in &toks {
                let bit = 1u64 << index[t];
                if m & bit != 0 {
                    return None;
                }
                m |= bit;
            }
            Some(m)
        })
        .collect();
    fn best(masks: &[u64], i: usize, used: u64, memo: &mut HashMap<(usize, u64), usize>) -> usize {
        if i == masks.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, used)) {
            return v;
        }
        let mut v = best(masks, i + 1, used, memo);
        if masks[i] & used == 0 {
            v = v.max(1 + best(masks, i + 1, used | masks[i], memo));
        }
        memo.insert((i, used), v);
        v
    }
    best(&masks, 0, 0, &mut HashMap::new())
}

/// Strings the oracle would still accept after `set`.
fn missed_addition(set: &TagSet, l: usize) -> Option<Vec<u8>> {
    let mut o = Oracle::new(set.c, set.pairwise, set.token_mode);
    for t in texts(set) {
        o.add(&t);
    }
    all_strings(l).find(|s| o.can_add(s))
}

fn criterion_7(runs: &mut Vec<IlpRun>) -> Outcome {
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for l in [2u32, 3] {
        let brute = brute_force_max(2, l as usize);
        let r = run_ilp(2, Length(l), true);
        parts.push(format!("c=2 l={l}: ILP {} brute force {brute}", r.ilp));
        if r.ilp != brute as f64 {
            problems.push(format!("c=2 l={l}: ILP {} != {brute}", r.ilp));
        }
        if let Err(e) = &r.extracted_ok {
            problems.push(format!("c=2 l={l}: {e}"));
        }
        runs.push(r);
    }
    if brute_force_max(2, 2) != 6 {
        problems.push("brute force at c=2 l=2 is not 6".into());
    }
    let mut checked = 0;
    for c in 2..=4u32 {
        for l in c..=10 {
            for pw in [Pairwise::C, Pairwise::Cbar] {
                for mode in [TokenMode::Multiple, TokenMode::Unique] {
                    let set = design_tree(c, Length(l), pw, mode);
                    if let Err(e) = oracle_feasible(&set, Some(l as usize)) {
                        problems.push(format!("c={c} l={l} {pw} {mode}: {e}"));
                    }
                    if let Some(s) = missed_addition(&set, l as usize) {
                        problems.push(format!(
                            "c={c} l={l} {pw} {mode}: {} could still be added",
                            String::from_utf8_lossy(&s)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    parts.push(format!("tree search maximal on {checked} settings (c<=4, l<=10)"));
    outcome(problems, parts.join(", "))
}

fn criterion_8(runs: &[IlpRun]) -> Outcome {
    let mut problems = Vec::new();
    for r in runs {
        let tag = format!("c={} {}", r.c, r.st);
        if r.status != IlpStatus::Optimal || r.status_no_cut != IlpStatus::Optimal {
            problems.push(format!("{tag}: not solved to optimality"));
            continue;
        }
        if r.ilp > r.lp + EPS {
            problems.push(format!("{tag}: ILP {} above LP {}", r.ilp, r.lp));
        }
        if r.lp - r.ilp >= 1.0 {
            problems.push(format!("{tag}: gap {} not below 1", r.lp - r.ilp));
        }
        if r.ilp_no_cut != r.ilp {
            problems.push(format!("{tag}: cut changes ILP {} -> {}", r.ilp_no_cut, r.ilp));
        }
        if r.lp > r.lp_no_cut + EPS {
            problems.push(format!("{tag}: cut raises LP {} -> {}", r.lp_no_cut, r.lp));
        }
    }
    let gaps: Vec<String> = runs
        .iter()
        .map(|r| format!("c={} {} {:.3}", r.c, r.st, r.lp - r.ilp))
        .collect();
    outcome(
        problems,
        format!("{} instances, LP-ILP gaps [{}]", runs.len(), gaps.join(", ")),
    )
}

/// Vertex-disjointness and arc membership, checked independently.
fn disjoint_in_graph(g: &ReductionGraph, cycles: &[Vec<usize>]) -> bool {
    let arcs: HashSet<(usize, usize)> = g.arcs.iter().copied().collect();
    let mut seen = HashSet::new();
    cycles.iter().all(|cyc| {
        !cyc.is_empty()
            && (0..cyc.len()).all(|i| arcs.contains(&(cyc[i], cyc[(i + 1) % cyc.len()])))
            && cyc.iter().all(|&v| seen.insert(v))
    })
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total_clauses = 0;
    for seed in 0..100u64 {
        let n = rng.gen_range(1..=20);
        let phi = random_instance(n, seed);
        total_clauses += phi.clauses.len();
        let a: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let k = phi.num_satisfied(&a);
        let m2: usize = 2 * phi.clauses.iter().map(Vec::len).sum::<usize>();
        let g = build_reduction(&phi);
        let cycles = assignment_to_cycles(&phi, &g, &a);
        if !disjoint_in_graph(&g, &cycles) {
            problems.push(format!("seed {seed}: packing is not vertex-disjoint"));
            continue;
        }
        if cycles.len() < k + m2 {
            problems.push(format!("seed {seed}: {} cycles < {k} + {m2}", cycles.len()));
        }
        match cycles_to_assignment(&phi, &g, &cycles) {
            Ok(back) if phi.num_satisfied(&back) >= k => {}
            Ok(back) => problems.push(format!(
                "seed {seed}: recovered {} < {k}",
                phi.num_satisfied(&back)
            )),
            Err(e) => problems.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > HARDNESS_BUDGET {
        problems.push(format!("took {elapsed:?}"));
    }
    outcome(
        problems,
        format!("100 instances ({total_clauses} clauses) round-tripped in {elapsed:.2?}"),
    )
}

fn main() {
    // `cargo test -- <filter>` passes arguments; a filter that does not name
    // this suite skips it.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }

    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "token model", criterion_1()));
    let mut runs: Vec<IlpRun> = [(4, Length(10)), (5, Length(10)), (4, Weight(15)), (5, Weight(15))]
        .into_iter()
        .map(|(c, st)| run_ilp(c, st, true))
        .collect();
    results.push((2, "ILP optima", criterion_2(&runs)));
    results.push((3, "model size", criterion_3(&runs)));
    results.push((4, "tree search", criterion_4()));
    results.push((5, "combined design", criterion_5()));
    results.push((6, "unique tree search", criterion_6()));
    results.push((7, "oracle equivalence", criterion_7(&mut runs)));
    for (c, st) in [(3, Length(6)), (3, Length(8)), (3, Weight(8)), (4, Length(6)), (4, Weight(10))] {
        runs.push(run_ilp(c, st, true));
    }
    results.push((8, "LP/ILP structure", criterion_8(&runs)));
    results.push((9, "hardness round trip", criterion_9()));

    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, name, o) in &results {
        println!(
            "criterion {n} ({name}): {} - {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
