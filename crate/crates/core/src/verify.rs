//! Named verification suites and the manifest that records a run.
//!
//! Randomised checks draw from a ChaCha stream seeded by the caller, so a
//! `(suite, seed)` pair always produces the same list of checks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bigraph::{
    adjacency, census_avoiding_graphs, contract, fiber_bound_sum, fiber_partition_total,
    fiber_size, graph_of_pattern, graph_of_word, ordered_contains, BipartiteGraph, CensusOptions,
    ContractionPlan,
};
use crate::enumeration::{
    catalan, count_avoiders_with, count_multiset_avoiders_with, stirling_approx, stirling_count,
    stirling_product, total_words, CountOptions,
};
use crate::error::Error;
use crate::matrix::{extremal_f, matrix_contains, perm_to_matrix, BinaryMatrix, ExtremalLimits};
use crate::reference;
use crate::word::{canonicalize, contained_patterns, CompiledPattern, MultisetSpec, Word};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Catalan,
    Stirling,
    Matrix,
    Contraction,
    ProofChain,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "core",
        "catalan",
        "stirling",
        "matrix",
        "contraction",
        "proof-chain",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Catalan => "catalan",
            Suite::Stirling => "stirling",
            Suite::Matrix => "matrix",
            Suite::Contraction => "contraction",
            Suite::ProofChain => "proof-chain",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "core" => Suite::Core,
            "catalan" => Suite::Catalan,
            "stirling" => Suite::Stirling,
            "matrix" => Suite::Matrix,
            "contraction" => Suite::Contraction,
            "proof-chain" => Suite::ProofChain,
            "all" => Suite::All,
            other => {
                return Err(Error::UnknownSuite(format!(
                    "{other}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Record of one command invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub outcome: String,
    pub checks: Vec<Check>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        seed: u64,
        checks: Vec<Check>,
    ) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        let outcome = if failed == 0 {
            format!("pass ({} checks)", checks.len())
        } else {
            format!("fail ({failed} of {} checks)", checks.len())
        };
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            outcome,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs one suite (or all of them) and returns its checks in a fixed order.
pub fn run_suite(suite: Suite, seed: u64, workers: usize) -> Vec<Check> {
    let ctx = Ctx { seed, workers };
    match suite {
        Suite::Core => ctx.core(),
        Suite::Catalan => ctx.catalan(),
        Suite::Stirling => ctx.stirling(),
        Suite::Matrix => ctx.matrix(),
        Suite::Contraction => ctx.contraction(),
        Suite::ProofChain => ctx.proof_chain(),
        Suite::All => [
            ctx.core(),
            ctx.catalan(),
            ctx.stirling(),
            ctx.matrix(),
            ctx.contraction(),
            ctx.proof_chain(),
        ]
        .concat(),
    }
}

pub fn manifest_for(suite: Suite, seed: u64, workers: usize) -> RunManifest {
    let mut params = BTreeMap::new();
    params.insert("suite".to_string(), suite.to_string());
    params.insert("workers".to_string(), workers.to_string());
    RunManifest::new("verify", params, seed, run_suite(suite, seed, workers))
}

/// A random gap-free word: length and alphabet drawn from the given ranges,
/// values drawn uniformly, then reduced to dense ranks.
pub fn random_word<R: Rng>(
    rng: &mut R,
    len: RangeInclusive<usize>,
    alphabet: RangeInclusive<u32>,
) -> Word {
    let len = rng.gen_range(len);
    let alphabet = rng.gen_range(alphabet).max(1);
    let raw: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=alphabet)).collect();
    canonicalize(&raw)
}

pub fn random_permutation<R: Rng>(rng: &mut R, len: RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(len);
    let raw: Vec<u32> = (0..len).map(|_| rng.gen()).collect();
    canonicalize(&raw)
}

pub fn random_graph<R: Rng>(
    rng: &mut R,
    left: usize,
    right: usize,
    density: f64,
) -> BipartiteGraph {
    let mut g = BipartiteGraph::empty(left, right).expect("nonzero sizes");
    for i in 1..=left {
        for j in 1..=right {
            if rng.gen_bool(density) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn all_permutations(n: usize) -> Vec<Word> {
    (1..=n as u32)
        .permutations(n)
        .map(|p| Word::new(p).expect("permutation"))
        .collect()
}

struct Ctx {
    seed: u64,
    workers: usize,
}

impl Ctx {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn count_options(&self) -> CountOptions {
        CountOptions::default().with_workers(self.workers)
    }

    fn census_options(&self) -> CensusOptions {
        CensusOptions {
            workers: self.workers,
            ..Default::default()
        }
    }

    fn core(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let p = word("23718465");
        let has = |w: &Word, q: &str| {
            CompiledPattern::new(&word(q))
                .unwrap()
                .occurs_in(w.entries())
        };
        checks.push(Check::new("core/23718465 contains 312", has(&p, "312"), ""));
        checks.push(Check::new(
            "core/23718465 contains 2134",
            has(&p, "2134"),
            "",
        ));
        checks.push(Check::new(
            "core/23718465 avoids 4321",
            !has(&p, "4321"),
            "",
        ));
        let threes = contained_patterns(&p, 3).unwrap();
        checks.push(Check::new(
            "core/23718465 contains all six 3-patterns",
            threes.len() == 6 && threes.iter().all(Word::is_permutation),
            format!("{} patterns", threes.len()),
        ));
        let multi = word("1214324");
        let expected = [("122", true), ("123", true), ("321", true), ("211", false)];
        let ok = expected.iter().all(|&(q, c)| has(&multi, q) == c);
        checks.push(Check::new(
            "core/1214324 contains 122,123,321 and avoids 211",
            ok,
            "",
        ));

        let mut rng = self.rng(1);
        let mut bad = 0;
        for _ in 0..300 {
            let w = random_word(&mut rng, 1..=8, 1..=8);
            if !has(&w, &w.to_string()) {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "core/reflexivity",
            bad == 0,
            format!("{bad} violations in 300 words"),
        ));

        let mut bad = 0;
        let mut premises = 0;
        for _ in 0..500 {
            let w = random_word(&mut rng, 1..=10, 1..=10);
            let q = random_word(&mut rng, 1..=4, 1..=4);
            let pat = CompiledPattern::new(&q).unwrap();
            if pat.occurs_in(w.entries()) {
                premises += 1;
                let extra = rng.gen_range(1..=w.max_value() + 1);
                if !pat.occurs_in(&w.appended(extra)) {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "core/monotonicity under appending",
            bad == 0,
            format!("{bad} violations in {premises} containing pairs"),
        ));

        let mut bad = 0;
        let mut premises = 0;
        for _ in 0..500 {
            let w = random_word(&mut rng, 1..=8, 1..=6);
            let u = if rng.gen_bool(0.7) {
                random_subword(&mut rng, &w, 6)
            } else {
                random_word(&mut rng, 1..=6, 1..=4)
            };
            let q = if rng.gen_bool(0.7) {
                random_subword(&mut rng, &u, 4)
            } else {
                random_word(&mut rng, 1..=4, 1..=3)
            };
            if has(&w, &u.to_string()) && has(&u, &q.to_string()) {
                premises += 1;
                if !has(&w, &q.to_string()) {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "core/transitivity",
            bad == 0,
            format!("{bad} violations in {premises} chains"),
        ));

        let mut bad = 0;
        for _ in 0..400 {
            let w = random_word(&mut rng, 1..=8, 1..=6);
            let q = random_word(&mut rng, 1..=4, 1..=4);
            let base = has(&w, &q.to_string());
            let rev = has(&w.reverse(), &q.reverse().to_string());
            let comp = has(&w.complement(), &q.complement().to_string());
            if base != rev || base != comp {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "core/reverse and complement equivariance",
            bad == 0,
            format!("{bad} violations in 400 pairs"),
        ));

        let mut bad = 0;
        for _ in 0..600 {
            let w = random_word(&mut rng, 1..=8, 1..=8);
            let q = random_word(&mut rng, 1..=4, 1..=4);
            let fast = has(&w, &q.to_string());
            if fast != reference::contains_by_subsequences(w.entries(), q.entries()) {
                bad += 1;
            }
            let k = q.len().min(w.len());
            let via_patterns = contained_patterns(&w, k).unwrap().contains(&q);
            if q.len() <= w.len() && via_patterns != fast {
                bad += 1;
            }
            if canonicalize(w.entries()) != w {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "core/backtracking agrees with brute force",
            bad == 0,
            format!("{bad} disagreements in 600 pairs"),
        ));
        checks
    }

    fn catalan(&self) -> Vec<Check> {
        let opts = self.count_options();
        let mut checks = Vec::new();
        let formula_ok = (0..=12).all(|n| catalan::<u64>(n) == reference::catalan_by_recurrence(n));
        checks.push(Check::new(
            "catalan/closed form matches recurrence",
            formula_ok,
            "n <= 12",
        ));
        for q in all_permutations(3) {
            let mut mismatches = Vec::new();
            for n in 1..=8 {
                let got = count_avoiders_with(n, &q, &opts).unwrap().count;
                if got != catalan::<BigUint>(n) {
                    mismatches.push(format!("n={n}: {got}"));
                }
            }
            checks.push(Check::new(
                format!("catalan/S_n({q}) = c_n for n = 1..8"),
                mismatches.is_empty(),
                mismatches.join("; "),
            ));
        }
        let mut bad = 0;
        for q in all_permutations(3).into_iter().chain(all_permutations(4)) {
            for n in 1..=6 {
                let c = |p: &Word| count_avoiders_with(n, p, &opts).unwrap().count;
                let base = c(&q);
                if base != c(&q.reverse()) || base != c(&q.complement()) {
                    bad += 1;
                }
            }
        }
        for (n, m) in [(2, 2), (3, 2), (2, 3)] {
            let spec = MultisetSpec::regular(n, m).unwrap();
            for q in ["212", "112", "1212", "123", "21"].map(word) {
                let c = |p: &Word| count_multiset_avoiders_with(&spec, p, &opts).unwrap().count;
                let base = c(&q);
                if base != c(&q.reverse()) || base != c(&q.complement()) {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "catalan/counts invariant under reverse and complement",
            bad == 0,
            format!("{bad} violations"),
        ));
        let s1234 = count_avoiders_with(6, &word("1234"), &opts).unwrap().count;
        let s1342 = count_avoiders_with(6, &word("1342"), &opts).unwrap().count;
        checks.push(Check::new(
            "catalan/S_6(1234) differs from S_6(1342)",
            s1234 != s1342,
            format!("{s1234} vs {s1342}"),
        ));
        checks
    }

    fn stirling(&self) -> Vec<Check> {
        let opts = self.count_options();
        let mut checks = Vec::new();
        let mut mismatches = Vec::new();
        for n in 1..=4 {
            for m in 1..=3 {
                let spec = MultisetSpec::regular(n, m).unwrap();
                let counted = count_multiset_avoiders_with(&spec, &word("212"), &opts)
                    .unwrap()
                    .count;
                let formula = stirling_count::<BigUint>(n, m).unwrap();
                if counted != formula {
                    mismatches.push(format!("({n},{m}): {counted} vs {formula}"));
                }
            }
        }
        checks.push(Check::new(
            "stirling/212-avoiders on [n]_m match the closed form",
            mismatches.is_empty(),
            mismatches.join("; "),
        ));
        let identity_ok = (1..=10).all(|n| {
            (1..=5).all(|m| {
                stirling_count::<BigUint>(n, m).unwrap() == stirling_product::<BigUint>(n, m)
            })
        });
        checks.push(Check::new(
            "stirling/rational form equals prod (m i + 1)",
            identity_ok,
            "n <= 10, m <= 5",
        ));
        let roots: Vec<f64> = (2..=8)
            .map(|n| crate::scalar::root::<BigUint, f64>(&stirling_count(n, 2).unwrap(), 2 * n))
            .collect();
        let increasing = roots.windows(2).all(|w| w[1] > w[0]);
        checks.push(Check::new(
            "stirling/per-symbol growth of 2-Stirling counts increases for n = 2..8",
            increasing,
            roots.iter().map(|r| format!("{r:.4}")).join(", "),
        ));

        let mut bad = Vec::new();
        let mut specs = 0;
        for l in 1..=8 {
            for spec in compositions(l) {
                specs += 1;
                let spec = MultisetSpec::new(spec).unwrap();
                let listed = reference::arrangements(&spec).len() as u64;
                if total_words::<u64>(&spec) != listed {
                    bad.push(spec.to_string());
                }
            }
        }
        checks.push(Check::new(
            "stirling/multinomial totals match exhaustive generation for l <= 8",
            bad.is_empty(),
            format!("{specs} specs; mismatches: {}", bad.join(" ")),
        ));
        let a22 = total_words::<u64>(&MultisetSpec::regular(2, 2).unwrap());
        checks.push(Check::new(
            "stirling/A_{2,2} = 6",
            a22 == 6,
            a22.to_string(),
        ));

        let ratios: Vec<f64> = (2..=15)
            .map(|n| {
                let total = total_words::<BigUint>(&MultisetSpec::regular(n, 2).unwrap());
                let total = num_traits::ToPrimitive::to_f64(&total).unwrap();
                total / stirling_approx::<f64>(n, 2)
            })
            .collect();
        let dominated = ratios.iter().all(|&r| r >= 1.0) && ratios.windows(2).all(|w| w[1] > w[0]);
        checks.push(Check::new(
            "stirling/A_{n,2} dominates f(n,2) with increasing ratio for n = 2..15",
            dominated,
            format!("ratio at n=15: {:.3e}", ratios.last().unwrap()),
        ));

        let mut bad = 0;
        for spec in [vec![2, 1], vec![1, 2, 1], vec![3], vec![2, 2]] {
            let spec = MultisetSpec::new(spec).unwrap();
            let q: Word = (1..=spec.total_length() as u32 + 1)
                .collect::<Vec<_>>()
                .try_into()
                .unwrap();
            let r = count_multiset_avoiders_with(&spec, &q, &opts).unwrap();
            if r.count != r.total {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "stirling/patterns longer than the word are always avoided",
            bad == 0,
            format!("{bad} violations"),
        ));
        checks
    }

    fn matrix(&self) -> Vec<Check> {
        let limits = ExtremalLimits {
            workers: self.workers,
            ..Default::default()
        };
        let mut checks = Vec::new();
        let id = BinaryMatrix::identity(2).unwrap();
        let records: Vec<_> = (1..=5)
            .map(|n| extremal_f(n, &id, &limits).unwrap())
            .collect();
        let values: Vec<usize> = records.iter().map(|r| r.value).collect();
        checks.push(Check::new(
            "matrix/f(n, I_2) = 2n - 1 for n = 1..5",
            values
                .iter()
                .enumerate()
                .all(|(i, &v)| v == 2 * (i + 1) - 1),
            values.iter().join(", "),
        ));
        let invalid = records.iter().filter(|r| !r.witness_is_valid()).count();
        checks.push(Check::new(
            "matrix/witnesses avoid the pattern and attain the value",
            invalid == 0,
            format!("{invalid} invalid witnesses"),
        ));
        let two = Ratio::from_integer(2);
        checks.push(Check::new(
            "matrix/slopes f(n, I_2)/n stay at most 2",
            records.iter().all(|r| r.slope <= two),
            records.iter().map(|r| r.slope.to_string()).join(", "),
        ));
        let refs: Vec<usize> = (1..=4)
            .map(|n| reference::extremal_by_exhaustion(n, &id))
            .collect();
        checks.push(Check::new(
            "matrix/branch-and-bound matches exhaustive search for n <= 4",
            refs == values[..4],
            refs.iter().join(", "),
        ));

        let mut bad = 0;
        for n in 1..=6 {
            for p in all_permutations(n) {
                let pm = perm_to_matrix(&p).unwrap();
                for k in 1..=3.min(n) {
                    for q in all_permutations(k) {
                        let via_words = CompiledPattern::new(&q).unwrap().occurs_in(p.entries());
                        if via_words != matrix_contains(&pm, &perm_to_matrix(&q).unwrap()) {
                            bad += 1;
                        }
                    }
                }
            }
        }
        checks.push(Check::new(
            "matrix/word and matrix containment agree (|p| <= 6, |q| <= 3)",
            bad == 0,
            format!("{bad} disagreements"),
        ));

        let mut rng = self.rng(2);
        let mut bad = 0;
        for _ in 0..400 {
            let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let p = adjacency(&random_graph(&mut rng, r, c, 0.5));
            let (qr, qc) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let q = adjacency(&random_graph(&mut rng, qr, qc, 0.5));
            if matrix_contains(&p, &q) != reference::matrix_contains_by_submatrices(&p, &q) {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "matrix/containment agrees with submatrix enumeration",
            bad == 0,
            format!("{bad} disagreements in 400 pairs"),
        ));

        let mut table: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut patterns = all_permutations(2);
        patterns.extend(all_permutations(3));
        for q in &patterns {
            let qm = perm_to_matrix(q).unwrap();
            let vals: Vec<usize> = (1..=4)
                .map(|n| extremal_f(n, &qm, &limits).unwrap().value)
                .collect();
            table.insert(q.to_string(), vals);
        }
        let mut bad = 0;
        for q in &patterns {
            let qm = perm_to_matrix(q).unwrap();
            let key = |m: &BinaryMatrix| {
                let w = matrix_to_perm(m);
                table[&w.to_string()].clone()
            };
            let base = &table[&q.to_string()];
            if key(&qm.reverse_rows()) != *base || key(&qm.reverse_cols()) != *base {
                bad += 1;
            }
            if base
                .windows(2)
                .enumerate()
                .any(|(i, w)| w[1] < w[0] || w[1] > w[0] + 2 * (i + 1) + 1)
            {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "matrix/f(n, Q) invariant under row and column reversal, monotone with bounded steps",
            bad == 0,
            table
                .iter()
                .map(|(k, v)| format!("{k}: {}", v.iter().join(" ")))
                .join("; "),
        ));
        let three: Vec<&Vec<usize>> = table
            .iter()
            .filter(|(k, _)| k.len() == 3)
            .map(|(_, v)| v)
            .collect();
        checks.push(Check::new(
            "matrix/all 3x3 permutation patterns share f(n, Q) for n <= 4",
            three.windows(2).all(|w| w[0] == w[1]),
            "reported, not assumed",
        ));
        checks
    }

    fn contraction(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let g1212 = graph_of_pattern(&word("1212")).unwrap();
        let g111 = graph_of_pattern(&word("111")).unwrap();
        let c1212 = contract(&g1212, &ContractionPlan::regular(2, 2).unwrap()).unwrap();
        let c111 = contract(&g111, &ContractionPlan::regular(1, 3).unwrap()).unwrap();
        checks.push(Check::new(
            "contraction/G_1212 avoids G_111",
            !ordered_contains(&g1212, &g111),
            "",
        ));
        checks.push(Check::new(
            "contraction/contracted G_1212 contains contracted G_111",
            ordered_contains(&c1212, &c111),
            format!("{} edges vs {} edge", c1212.edge_count(), c111.edge_count()),
        ));

        let patterns = ["12", "21", "123", "321"].map(word);
        let gqs: Vec<BipartiteGraph> = patterns
            .iter()
            .map(|q| graph_of_pattern(q).unwrap())
            .collect();
        let mut violations = 0;
        let mut avoiding = 0;
        for (n, m) in [(2, 1), (2, 2), (3, 1)] {
            let plan = ContractionPlan::regular(n, m).unwrap();
            let cells = n * m * n;
            for bits in 0u64..1 << cells {
                let g = BipartiteGraph::from_cell_bits(n * m, n, bits).unwrap();
                let c = contract(&g, &plan).unwrap();
                for gq in &gqs {
                    if !ordered_contains(&g, gq) {
                        avoiding += 1;
                        if ordered_contains(&c, gq) {
                            violations += 1;
                        }
                    }
                }
            }
        }
        checks.push(Check::new(
            "contraction/avoidance inherited, exhaustive over (2,1), (2,2), (3,1)",
            violations == 0,
            format!("{violations} violations among {avoiding} avoiding cases"),
        ));

        let mut rng = self.rng(3);
        let mut violations = 0;
        let mut avoiding = 0;
        for t in 0..10_000 {
            let (n, m) = [(3, 2), (3, 3), (4, 2), (2, 4)][t % 4];
            let density = rng.gen_range(0.05..0.5);
            let g = random_graph(&mut rng, n * m, n, density);
            let c = contract(&g, &ContractionPlan::regular(n, m).unwrap()).unwrap();
            let gq = &gqs[t % gqs.len()];
            if !ordered_contains(&g, gq) {
                avoiding += 1;
                if ordered_contains(&c, gq) {
                    violations += 1;
                }
            }
        }
        checks.push(Check::new(
            "contraction/avoidance inherited on 10000 random larger graphs",
            violations == 0,
            format!("{violations} violations among {avoiding} avoiding graphs"),
        ));

        let mut bad = 0;
        for _ in 0..500 {
            let w = random_word(&mut rng, 1..=8, 1..=6);
            let q = random_permutation(&mut rng, 1..=3);
            let gw = graph_of_word(&w, &w.spec().unwrap()).unwrap();
            let gq = graph_of_word(&q, &MultisetSpec::unit(q.len()).unwrap()).unwrap();
            let words = CompiledPattern::new(&q).unwrap().occurs_in(w.entries());
            if words != ordered_contains(&gw, &gq) {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "contraction/word containment equals graph containment",
            bad == 0,
            format!("{bad} disagreements in 500 pairs"),
        ));

        let mut bad = 0;
        for _ in 0..500 {
            let (pl, pr) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let p = random_graph(&mut rng, pl, pr, 0.5);
            let (ql, qr) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let q = random_graph(&mut rng, ql, qr, 0.4);
            let fast = ordered_contains(&p, &q);
            if fast != matrix_contains(&adjacency(&p), &adjacency(&q))
                || fast != reference::ordered_contains_by_injections(&p, &q)
            {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "contraction/graph containment agrees with matrices and injections",
            bad == 0,
            format!("{bad} disagreements in 500 pairs"),
        ));
        checks
    }

    fn proof_chain(&self) -> Vec<Check> {
        let opts = self.census_options();
        let mut checks = Vec::new();
        for (n, m) in [(1, 2), (2, 2), (2, 3)] {
            let plan = ContractionPlan::regular(n, m).unwrap();
            let total: BigUint = fiber_partition_total(&plan, n, &opts).unwrap();
            let expected = BigUint::one() << (m * n * n);
            checks.push(Check::new(
                format!(
                    "proof-chain/fibers partition all 2^{} graphs for (n,m)=({n},{m})",
                    m * n * n
                ),
                total == expected,
                total.to_string(),
            ));
        }
        let edge = BipartiteGraph::complete(1, 1).unwrap();
        let single: u64 = fiber_size(&edge, &ContractionPlan::regular(1, 2).unwrap()).unwrap();
        checks.push(Check::new(
            "proof-chain/single edge with m = 2 has fiber 3",
            single == 3,
            single.to_string(),
        ));

        let plan = ContractionPlan::regular(2, 2).unwrap();
        let mut bad = 0;
        for bits in 0u64..16 {
            let gp = BipartiteGraph::from_cell_bits(2, 2, bits).unwrap();
            if fiber_size::<u64>(&gp, &plan).unwrap() != reference::fiber_by_inversion(&gp, &plan) {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "proof-chain/fiber formula matches exhaustive inversion on ([4],[2])",
            bad == 0,
            format!("{bad} mismatches over 16 contracted graphs"),
        ));

        let count_opts = CountOptions::default().with_workers(self.workers);
        for (n, m) in [(2, 1), (2, 2), (3, 1)] {
            for q in ["12", "21"].map(word) {
                let s = count_multiset_avoiders_with(
                    &MultisetSpec::regular(n, m).unwrap(),
                    &q,
                    &count_opts,
                )
                .unwrap()
                .count;
                let g: BigUint = census_avoiding_graphs(n, m, &q, &opts).unwrap();
                let f: BigUint = fiber_bound_sum(n, m, &q, &opts).unwrap();
                checks.push(Check::new(
                    format!("proof-chain/S <= G <= fiber sum for (n,m)=({n},{m}), q={q}"),
                    s <= g && g <= f,
                    format!("{s} <= {g} <= {f}"),
                ));
            }
        }
        checks
    }
}

/// All compositions of `l` into positive parts.
pub fn compositions(l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=l {
        for mut rest in compositions(l - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_subword<R: Rng>(rng: &mut R, w: &Word, max_len: usize) -> Word {
    let len = rng.gen_range(1..=w.len().min(max_len));
    let mut idx: Vec<usize> = (0..w.len()).collect();
    for i in (1..idx.len()).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    let mut picked: Vec<usize> = idx.into_iter().take(len).collect();
    picked.sort_unstable();
    let raw: Vec<u32> = picked.iter().map(|&i| w.entries()[i]).collect();
    canonicalize(&raw)
}

/// Inverse of [`perm_to_matrix`].
fn matrix_to_perm(m: &BinaryMatrix) -> Word {
    let entries = (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .find(|&r| m.get(r, c))
                .expect("permutation matrix") as u32
                + 1
        })
        .collect();
    Word::new(entries).expect("permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(1), vec![vec![1]]);
    }

    #[test]
    fn contraction_suite_passes_and_is_reproducible() {
        let a = manifest_for(Suite::Contraction, 7, 1);
        assert!(a.passed(), "{:#?}", a.checks);
        assert!(a
            .checks
            .iter()
            .any(|c| c.name.contains("G_1212 avoids G_111")));
        let b = manifest_for(Suite::Contraction, 7, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn core_suite_passes() {
        let checks = run_suite(Suite::Core, DEFAULT_SEED, 1);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }
}
