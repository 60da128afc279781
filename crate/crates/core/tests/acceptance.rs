//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Expected values marked "frozen" were produced by an independent
//! brute-force program and are not recomputed by this crate.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use patlab::bigraph::{fiber_bound_sum, fiber_partition_total, graph_of_pattern, CensusOptions};
use patlab::enumeration::{count_avoiders, count_multiset_avoiders, total_words};
use patlab::matrix::ExtremalLimits;
use patlab::reference;
use patlab::verify::compositions;
use patlab::word::contained_patterns;
use patlab::{
    catalan, census_avoiding_graphs, contains, contract, extremal_f, fiber_size, ordered_contains,
    stirling_count, BinaryMatrix, BipartiteGraph, ContractionPlan, MultisetSpec, Word,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn w(s: &str) -> Word {
    s.parse().expect("valid word")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn catalan_reproduction() -> Outcome {
    let start = Instant::now();
    for q in ["123", "132", "213", "231", "312", "321"] {
        for n in 1..=8 {
            let got = count_avoiders(n, &w(q)).map_err(|e| e.to_string())?.count;
            let want: BigUint = catalan(n);
            ensure(got == want, format!("S_{n}({q}) = {got}, expected {want}"))?;
        }
    }
    let c8: BigUint = catalan(8);
    ensure(c8 == BigUint::from(1430u32), format!("c_8 = {c8}"))?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("6 patterns x n=1..8, c_8 = 1430, {:.2?}", elapsed))
}

fn worked_examples() -> Outcome {
    let long = w("23718465");
    let cases = [
        (&long, "312", true),
        (&long, "2134", true),
        (&long, "4321", false),
    ];
    for (word, q, want) in cases {
        ensure(
            contains(word, &w(q)).unwrap() == want,
            format!("{word} vs {q}"),
        )?;
    }
    let threes = contained_patterns(&long, 3).map_err(|e| e.to_string())?;
    ensure(
        threes.len() == 6,
        format!("{} length-3 patterns", threes.len()),
    )?;
    let short = w("1214324");
    for (q, want) in [("122", true), ("123", true), ("321", true), ("211", false)] {
        ensure(
            contains(&short, &w(q)).unwrap() == want,
            format!("1214324 vs {q}"),
        )?;
    }
    Ok("8 exact booleans".into())
}

fn stirling_permutations() -> Outcome {
    // frozen
    let table: [[u64; 3]; 4] = [[1, 1, 1], [2, 3, 4], [6, 15, 28], [24, 105, 280]];
    for n in 1..=4 {
        for m in 1..=3 {
            let spec = MultisetSpec::regular(n, m).unwrap();
            let counted = count_multiset_avoiders(&spec, &w("212")).unwrap().count;
            let closed: BigUint = stirling_count(n, m).map_err(|e| e.to_string())?;
            let want = BigUint::from(table[n - 1][m - 1]);
            ensure(
                counted == want && closed == want,
                format!(
                    "(n,m)=({n},{m}): counted {counted}, closed form {closed}, expected {want}"
                ),
            )?;
        }
    }
    let roots: Vec<f64> = (2..=8)
        .map(|n| {
            let c: BigUint = stirling_count(n, 2).unwrap();
            patlab::scalar::root::<BigUint, f64>(&c, 2 * n)
        })
        .collect();
    ensure(
        roots.windows(2).all(|p| p[1] > p[0]),
        format!("roots not increasing: {roots:?}"),
    )?;
    Ok(format!(
        "12 counts match; 2n-th roots {:.4} .. {:.4} strictly increasing",
        roots[0],
        roots[roots.len() - 1]
    ))
}

fn multinomial_totals() -> Outcome {
    let mut specs = 0;
    for l in 1..=8 {
        for parts in compositions(l) {
            let spec = MultisetSpec::new(parts).unwrap();
            let formula: BigUint = total_words(&spec);
            let generated = reference::arrangements(&spec).len();
            ensure(
                formula == BigUint::from(generated),
                format!("{spec}: {formula} vs {generated}"),
            )?;
            specs += 1;
        }
    }
    let a22: BigUint = total_words(&MultisetSpec::regular(2, 2).unwrap());
    ensure(a22 == BigUint::from(6u32), format!("A_2,2 = {a22}"))?;
    Ok(format!("{specs} specs with l <= 8; A_2,2 = 6"))
}

fn furedi_hajnal() -> Outcome {
    let start = Instant::now();
    let q = BinaryMatrix::identity(2).unwrap();
    let limits = ExtremalLimits::default();
    // frozen for n <= 4
    let exhaustive = [1usize, 3, 5, 7];
    let mut values = Vec::new();
    for n in 1..=5 {
        let r = extremal_f(n, &q, &limits).map_err(|e| e.to_string())?;
        ensure(r.value == 2 * n - 1, format!("f({n}, I_2) = {}", r.value))?;
        if n <= exhaustive.len() {
            ensure(
                r.value == exhaustive[n - 1],
                format!("n={n} disagrees with frozen value"),
            )?;
        }
        ensure(r.witness_is_valid(), format!("n={n} witness rejected"))?;
        ensure(
            r.witness.count_ones() == r.value
                && !reference::matrix_contains_by_submatrices(&r.witness, &q),
            format!("n={n} witness fails re-validation"),
        )?;
        ensure(
            r.value <= 2 * n && r.slope <= num_rational::Ratio::from_integer(2),
            format!("n={n} slope {}", r.slope),
        )?;
        values.push(r.value.to_string());
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(300),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "f = {}; witnesses valid; {:.2?}",
        values.join(","),
        elapsed
    ))
}

fn contraction_counterexample() -> Outcome {
    let (p, q) = (w("1212"), w("111"));
    let gp = graph_of_pattern(&p).unwrap();
    let gq = graph_of_pattern(&q).unwrap();
    ensure(!ordered_contains(&gp, &gq), "G_1212 contains G_111")?;
    let cp = contract(&gp, &ContractionPlan::new(&p.spec().unwrap())).unwrap();
    let cq = contract(&gq, &ContractionPlan::new(&q.spec().unwrap())).unwrap();
    ensure(
        ordered_contains(&cp, &cq),
        "contracted G_1212 avoids contracted G_111",
    )?;
    Ok("avoids before contraction, contains after".into())
}

fn avoidance_inheritance() -> Outcome {
    let mut avoiding = 0u64;
    for (n, m) in [(2, 1), (2, 2), (3, 1)] {
        let plan = ContractionPlan::regular(n, m).unwrap();
        for q in ["12", "21", "123", "321"] {
            let gq = graph_of_pattern(&w(q)).unwrap();
            for bits in 0u64..1 << (m * n * n) {
                let g = BipartiteGraph::from_cell_bits(n * m, n, bits).unwrap();
                if ordered_contains(&g, &gq) {
                    continue;
                }
                avoiding += 1;
                let c = contract(&g, &plan).unwrap();
                ensure(
                    !ordered_contains(&c, &gq),
                    format!("(n,m)=({n},{m}) q={q} graph bits {bits:#x}"),
                )?;
            }
        }
    }
    Ok(format!("0 violations among {avoiding} avoiding graphs"))
}

fn fiber_accounting() -> Outcome {
    let options = CensusOptions::default();
    for (n, m) in [(1, 2), (2, 2), (2, 3)] {
        let plan = ContractionPlan::regular(n, m).unwrap();
        let total: BigUint =
            fiber_partition_total(&plan, n, &options).map_err(|e| e.to_string())?;
        let want = BigUint::from(1u64) << (m * n * n);
        ensure(total == want, format!("(n,m)=({n},{m}): {total} vs {want}"))?;
    }
    let edge = BipartiteGraph::from_edges(1, 1, &[(1, 1)]).unwrap();
    let single: BigUint = fiber_size(&edge, &ContractionPlan::regular(1, 2).unwrap()).unwrap();
    ensure(
        single == BigUint::from(3u32),
        format!("single edge fiber {single}"),
    )?;
    Ok("totals 4, 256, 4096; single edge 3".into())
}

fn proof_chain() -> Outcome {
    let options = CensusOptions::default();
    // frozen: (n, m, G, fiber sum)
    let expected = [(2, 1, 12u64, 12u64), (2, 2, 80, 112)];
    let mut parts = Vec::new();
    for (n, m, g_want, f_want) in expected {
        for q in ["12", "21"] {
            let q = w(q);
            let s = count_multiset_avoiders(&MultisetSpec::regular(n, m).unwrap(), &q)
                .unwrap()
                .count;
            let g: BigUint =
                census_avoiding_graphs(n, m, &q, &options).map_err(|e| e.to_string())?;
            let f: BigUint = fiber_bound_sum(n, m, &q, &options).map_err(|e| e.to_string())?;
            ensure(
                g == BigUint::from(g_want) && f == BigUint::from(f_want),
                format!("(n,m)=({n},{m}) q={q}: G={g} fiber sum={f}"),
            )?;
            ensure(
                s <= g && g <= f,
                format!("(n,m)=({n},{m}) q={q}: {s} <= {g} <= {f} fails"),
            )?;
            parts.push(format!("{s}<={g}<={f}"));
        }
    }
    Ok(parts.join(", "))
}

fn wilf_separation() -> Outcome {
    let spec = MultisetSpec::unit(6).unwrap();
    // frozen
    let want = [("1234", 513u64), ("1342", 512u64)];
    let mut got = Vec::new();
    for (q, value) in want {
        let oracle = reference::count_avoiders_unpruned(&spec, w(q).entries());
        let pruned = count_avoiders(6, &w(q)).unwrap().count;
        ensure(
            oracle == value && pruned == BigUint::from(oracle),
            format!("S_6({q}): oracle {oracle}, pruned {pruned}, expected {value}"),
        )?;
        got.push(oracle);
    }
    ensure(got[0] != got[1], "classes not separated")?;
    Ok(format!("S_6(1234) = {} != S_6(1342) = {}", got[0], got[1]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("catalan reproduction", catalan_reproduction),
        ("worked examples", worked_examples),
        ("stirling permutations", stirling_permutations),
        ("multinomial totals", multinomial_totals),
        ("furedi-hajnal at small n", furedi_hajnal),
        ("contraction counterexample", contraction_counterexample),
        ("avoidance inheritance", avoidance_inheritance),
        ("fiber accounting", fiber_accounting),
        ("proof-chain inequalities", proof_chain),
        ("wilf-class separation", wilf_separation),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
