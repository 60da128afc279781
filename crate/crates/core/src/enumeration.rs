//! Exact avoider counts and the closed forms they are compared against.
//!
//! Counting walks the arrangements of a multiset in lexicographic order and
//! abandons a prefix as soon as it contains the pattern. Containment is
//! monotone under extension, so no avoider is ever cut. Each new letter only
//! needs the occurrences that end on it to be checked, because the shorter
//! prefix is already known to avoid the pattern.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{root, Exact, Real};
use crate::word::{CompiledPattern, MultisetSpec, Word};

/// Default ceiling on the number of arrangements a single count may range over.
pub const DEFAULT_ARRANGEMENT_BUDGET: u64 = 1 << 34;

#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Worker threads; `1` (the default) runs on the calling thread.
    pub workers: usize,
    /// Refuse specs whose total arrangement count exceeds this.
    pub max_arrangements: BigUint,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            workers: 1,
            max_arrangements: BigUint::from(DEFAULT_ARRANGEMENT_BUDGET),
        }
    }
}

impl CountOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// One exact count of pattern avoiders over a multiset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub n: usize,
    pub spec: MultisetSpec,
    pub pattern: Word,
    #[serde(with = "crate::scalar::decimal_string")]
    pub count: BigUint,
    #[serde(with = "crate::scalar::decimal_string")]
    pub total: BigUint,
    /// `count^(1/l)` for the total word length `l`.
    pub growth: f64,
}

impl CountRecord {
    pub fn new(spec: MultisetSpec, pattern: Word, count: BigUint, total: BigUint) -> Self {
        let growth = root::<BigUint, f64>(&count, spec.total_length());
        CountRecord {
            n: spec.n(),
            spec,
            pattern,
            count,
            total,
            growth,
        }
    }

    /// Total word length of the ground multiset.
    pub fn length(&self) -> usize {
        self.spec.total_length()
    }
}

/// The binomial coefficient `C(n, k)`.
pub fn binomial<C: Exact>(n: usize, k: usize) -> C {
    if k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let mut acc = C::one();
    for i in 0..k {
        acc = acc * C::from_count(n - i) / C::from_count(i + 1);
    }
    acc
}

pub fn factorial<C: Exact>(n: usize) -> C {
    (1..=n).fold(C::one(), |acc, i| acc * C::from_count(i))
}

/// The Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan<C: Exact>(n: usize) -> C {
    binomial::<C>(2 * n, n) / C::from_count(n + 1)
}

/// Number of distinct arrangements, `l! / (m_1! .. m_n!)`.
pub fn total_words<C: Exact>(spec: &MultisetSpec) -> C {
    let mut placed = 0;
    let mut acc = C::one();
    for &m in spec.multiplicities() {
        placed += m;
        acc = acc * binomial::<C>(placed, m);
    }
    acc
}

/// The m-Stirling permutation count `n! m^n C(n - 1 + 1/m, n)`, evaluated with
/// exact rationals.
pub fn stirling_count<C: Exact>(n: usize, m: usize) -> Result<C> {
    let value = stirling_rational::<C>(n, m);
    if value.denom().is_one() {
        Ok(value.to_integer())
    } else {
        Err(Error::NotIntegral(format!(
            "stirling_count({n}, {m}) = {value}"
        )))
    }
}

/// The same quantity as a rational, before the integrality check.
pub fn stirling_rational<C: Exact>(n: usize, m: usize) -> Ratio<C> {
    let m_c = C::from_count(m);
    // upper argument of the generalized binomial: ((n - 1) m + 1) / m
    let top = Ratio::new(C::from_count((n.saturating_sub(1)) * m + 1), m_c.clone());
    let mut falling = Ratio::<C>::one();
    for j in 0..n {
        falling = falling * (top.clone() - Ratio::from_integer(C::from_count(j)));
    }
    let binom = falling / Ratio::from_integer(factorial::<C>(n));
    Ratio::from_integer(factorial::<C>(n) * m_c.pow(n)) * binom
}

/// `f(n, m) = sqrt(2 pi m n) (n^m / (sqrt(2 pi m) e))^n`.
pub fn stirling_approx<R: Real>(n: usize, m: usize) -> R {
    let two_pi = R::PI() + R::PI();
    let n_r = R::from_count(n);
    let m_r = R::from_count(m);
    let inner = n_r.powi(m as i32) / ((two_pi * m_r).sqrt() * R::E());
    (two_pi * m_r * n_r).sqrt() * inner.powi(n as i32)
}

/// Exact number of arrangements of `spec` avoiding `q`, in any exact scalar.
pub fn count_avoiding_arrangements<C: Exact>(
    spec: &MultisetSpec,
    q: &Word,
    options: &CountOptions,
) -> Result<C> {
    let pattern = CompiledPattern::new(q)?;
    let total: BigUint = total_words(spec);
    if total > options.max_arrangements {
        return Err(Error::BudgetExceeded(format!(
            "{spec} has {total} arrangements, above the budget of {}",
            options.max_arrangements
        )));
    }
    let length = spec.total_length();
    let firsts: Vec<usize> = (0..spec.n()).collect();
    let count_from = |first: usize| -> C {
        let mut remaining = spec.multiplicities().to_vec();
        remaining[first] -= 1;
        let mut prefix = Vec::with_capacity(length);
        prefix.push(first as u32 + 1);
        let mut acc = C::zero();
        if !pattern.occurs_ending_at_last(&prefix) {
            extend(&pattern, &mut prefix, &mut remaining, length, &mut acc);
        }
        acc
    };
    let parts: Vec<C> = if options.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::BudgetExceeded(format!("worker pool: {e}")))?;
        pool.install(|| firsts.par_iter().map(|&f| count_from(f)).collect())
    } else {
        firsts.iter().map(|&f| count_from(f)).collect()
    };
    Ok(parts.into_iter().fold(C::zero(), |a, b| a + b))
}

fn extend<C: Exact>(
    pattern: &CompiledPattern,
    prefix: &mut Vec<u32>,
    remaining: &mut [usize],
    length: usize,
    acc: &mut C,
) {
    if prefix.len() == length {
        *acc = acc.clone() + C::one();
        return;
    }
    for v in 0..remaining.len() {
        if remaining[v] == 0 {
            continue;
        }
        remaining[v] -= 1;
        prefix.push(v as u32 + 1);
        if !pattern.occurs_ending_at_last(prefix) {
            extend(pattern, prefix, remaining, length, acc);
        }
        prefix.pop();
        remaining[v] += 1;
    }
}

/// `S_n(q)`: permutations of `[n]` avoiding the ordinary permutation `q`.
pub fn count_avoiders(n: usize, q: &Word) -> Result<CountRecord> {
    count_avoiders_with(n, q, &CountOptions::default())
}

pub fn count_avoiders_with(n: usize, q: &Word, options: &CountOptions) -> Result<CountRecord> {
    if !q.is_permutation() {
        return Err(Error::NotAPermutation(q.to_string()));
    }
    count_multiset_avoiders_with(&MultisetSpec::unit(n)?, q, options)
}

/// `S_{n,m}(q)` and its irregular generalisation.
pub fn count_multiset_avoiders(spec: &MultisetSpec, q: &Word) -> Result<CountRecord> {
    count_multiset_avoiders_with(spec, q, &CountOptions::default())
}

pub fn count_multiset_avoiders_with(
    spec: &MultisetSpec,
    q: &Word,
    options: &CountOptions,
) -> Result<CountRecord> {
    let count = count_avoiding_arrangements::<BigUint>(spec, q, options)?;
    Ok(CountRecord::new(
        spec.clone(),
        q.clone(),
        count,
        total_words(spec),
    ))
}

/// Counts over `[n]_m` for `n = 1..=n_max`, each computed from scratch.
pub fn sequence(q: &Word, n_max: usize, m: usize) -> Result<Vec<CountRecord>> {
    sequence_with(q, n_max, m, &CountOptions::default())
}

pub fn sequence_with(
    q: &Word,
    n_max: usize,
    m: usize,
    options: &CountOptions,
) -> Result<Vec<CountRecord>> {
    if n_max == 0 {
        return Err(Error::LengthOutOfRange { k: 0, len: 0 });
    }
    (1..=n_max)
        .map(|n| count_multiset_avoiders_with(&MultisetSpec::regular(n, m)?, q, options))
        .collect()
}

/// `m^n` times the falling product of `1/m` shifted by `0..n`, i.e.
/// `prod_{i<n} (m i + 1)`. Integer-only companion of [`stirling_count`].
pub fn stirling_product<C: Exact>(n: usize, m: usize) -> C {
    (0..n).fold(C::one(), |acc, i| acc * C::from_count(m * i + 1))
}

/// True when `count` is no larger than `total`, as every record must satisfy.
pub fn within_total(record: &CountRecord) -> bool {
    record.count <= record.total && (record.count.is_zero() || record.growth >= 1.0 - 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan::<u64>(0), 1);
        assert_eq!(catalan::<u64>(4), 14);
        assert_eq!(catalan::<u64>(8), 1430);
        assert_eq!(catalan::<BigUint>(8), big(1430));
    }

    #[test]
    fn multinomial_totals() {
        let s = |v: Vec<usize>| MultisetSpec::new(v).unwrap();
        assert_eq!(total_words::<u64>(&s(vec![2, 2])), 6);
        assert_eq!(total_words::<u64>(&s(vec![3, 3])), 20);
        assert_eq!(total_words::<u64>(&s(vec![1; 5])), 120);
        assert_eq!(total_words::<u64>(&s(vec![2, 1, 3])), 60);
    }

    #[test]
    fn stirling_exact() {
        assert_eq!(stirling_count::<u64>(2, 2).unwrap(), 3);
        assert_eq!(stirling_count::<u64>(3, 2).unwrap(), 15);
        for m in 1..6 {
            assert_eq!(stirling_count::<u64>(1, m).unwrap(), 1);
        }
        for n in 1..8 {
            for m in 1..5 {
                assert_eq!(
                    stirling_count::<BigUint>(n, m).unwrap(),
                    stirling_product::<BigUint>(n, m)
                );
            }
        }
    }

    #[test]
    fn stirling_approximation_values() {
        let a: f64 = stirling_approx(1, 1);
        assert!((a - (-1.0f64).exp()).abs() < 1e-9);
        let pi = std::f64::consts::PI;
        let expected = (8.0 * pi).sqrt() * (4.0 / (2.0 * pi.sqrt() * std::f64::consts::E)).powi(2);
        let b: f64 = stirling_approx(2, 2);
        assert!((b - expected).abs() < 1e-9);
        let c: f32 = stirling_approx(3, 2);
        assert!(c > 0.0);
    }

    #[test]
    fn small_avoider_counts() {
        assert_eq!(count_avoiders(4, &w("123")).unwrap().count, big(14));
        assert_eq!(count_avoiders(1, &w("21")).unwrap().count, big(1));
        assert_eq!(count_avoiders(1, &w("312")).unwrap().count, big(1));
        let r =
            count_multiset_avoiders(&MultisetSpec::new(vec![2, 2]).unwrap(), &w("212")).unwrap();
        assert_eq!(r.count, big(3));
        assert_eq!(r.total, big(6));
        let single = MultisetSpec::new(vec![4]).unwrap();
        assert_eq!(
            count_multiset_avoiders(&single, &w("12")).unwrap().count,
            big(1)
        );
    }

    #[test]
    fn multiset_patterns_rejected_for_permutation_counter() {
        assert!(matches!(
            count_avoiders(3, &w("212")),
            Err(Error::NotAPermutation(_))
        ));
    }

    #[test]
    fn budget_refusal() {
        let opts = CountOptions {
            workers: 1,
            max_arrangements: big(100),
        };
        let err = count_avoiders_with(6, &w("123"), &opts).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn sequence_values() {
        let seq = sequence(&w("132"), 5, 1).unwrap();
        let counts: Vec<u64> = seq.iter().map(|r| (&r.count).try_into().unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
        let ones = sequence(&w("12"), 6, 1).unwrap();
        assert!(ones.iter().all(|r| r.count == big(1)));
        let stir = sequence(&w("212"), 4, 2).unwrap();
        let counts: Vec<u64> = stir
            .iter()
            .map(|r| (&r.count).try_into().unwrap())
            .collect();
        assert_eq!(counts, vec![1, 3, 15, 105]);
        assert!(sequence(&w("12"), 0, 1).is_err());
    }

    #[test]
    fn generic_counter_agrees() {
        let spec = MultisetSpec::regular(3, 2).unwrap();
        let q = w("132");
        let a = count_avoiding_arrangements::<u64>(&spec, &q, &CountOptions::default()).unwrap();
        let b =
            count_avoiding_arrangements::<BigUint>(&spec, &q, &CountOptions::default()).unwrap();
        assert_eq!(big(a), b);
    }

    #[test]
    fn workers_do_not_change_totals() {
        let q = w("1342");
        let serial = count_avoiders(7, &q).unwrap();
        let parallel =
            count_avoiders_with(7, &q, &CountOptions::default().with_workers(4)).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn record_growth() {
        let r = count_avoiders(4, &w("123")).unwrap();
        assert!((r.growth - 14f64.powf(0.25)).abs() < 1e-12);
        assert!(within_total(&r));
    }
}
