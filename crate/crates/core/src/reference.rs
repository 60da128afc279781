//! Brute-force reference implementations.
//!
//! Nothing here shares code with the search routines it is compared against:
//! every subsequence, injection pair, submatrix, and arrangement is visited
//! explicitly. Intended for inputs of length at most eight or so.

use itertools::Itertools;

use crate::bigraph::{contract, BipartiteGraph, ContractionPlan};
use crate::matrix::BinaryMatrix;
use crate::word::MultisetSpec;

/// Subsequence test straight from the definition: some index set makes every
/// pairwise comparison agree with the pattern.
pub fn contains_by_subsequences(w: &[u32], q: &[u32]) -> bool {
    let k = q.len();
    if k == 0 || k > w.len() {
        return false;
    }
    (0..w.len())
        .combinations(k)
        .any(|idx| (0..k).all(|a| (0..k).all(|b| (w[idx[a]] < w[idx[b]]) == (q[a] < q[b]))))
}

/// Every distinct arrangement of the multiset, in lexicographic order.
pub fn arrangements(spec: &MultisetSpec) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = spec.sorted_word().entries().to_vec();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Classic in-place successor; false once the last arrangement is reached.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Avoider count with no pruning: test every arrangement.
pub fn count_avoiders_unpruned(spec: &MultisetSpec, q: &[u32]) -> u64 {
    arrangements(spec)
        .iter()
        .filter(|w| !contains_by_subsequences(w, q))
        .count() as u64
}

/// Ordered-subgraph test over all pairs of order-preserving injections.
pub fn ordered_contains_by_injections(p: &BipartiteGraph, q: &BipartiteGraph) -> bool {
    let (k, kk) = (q.left_size(), q.right_size());
    if k > p.left_size() || kk > p.right_size() {
        return false;
    }
    let q_edges = q.edges();
    (1..=p.left_size()).combinations(k).any(|f| {
        (1..=p.right_size())
            .combinations(kk)
            .any(|g| q_edges.iter().all(|&(v, u)| p.has_edge(f[v - 1], g[u - 1])))
    })
}

/// Submatrix test over all row and column subsets.
pub fn matrix_contains_by_submatrices(p: &BinaryMatrix, q: &BinaryMatrix) -> bool {
    if q.rows() > p.rows() || q.cols() > p.cols() {
        return false;
    }
    (0..p.rows()).combinations(q.rows()).any(|rows| {
        (0..p.cols()).combinations(q.cols()).any(|cols| {
            (0..q.rows()).all(|i| (0..q.cols()).all(|j| !q.get(i, j) || p.get(rows[i], cols[j])))
        })
    })
}

/// `f(n, Q)` by scanning all `2^{n^2}` matrices. Only for `n <= 4`.
pub fn extremal_by_exhaustion(n: usize, q: &BinaryMatrix) -> usize {
    assert!(
        n * n <= 16,
        "exhaustive extremal search is limited to n <= 4"
    );
    let mut best = 0;
    for bits in 0u32..(1 << (n * n)) {
        let ones = bits.count_ones() as usize;
        if ones <= best {
            continue;
        }
        let mut m = BinaryMatrix::zeros(n, n).expect("n >= 1");
        for cell in 0..n * n {
            if bits >> cell & 1 == 1 {
                m.set(cell / n, cell % n, true);
            }
        }
        if !matrix_contains_by_submatrices(&m, q) {
            best = ones;
        }
    }
    best
}

/// Number of graphs on `([l], [right])` whose contraction equals `gp`, found by
/// contracting every one of them.
pub fn fiber_by_inversion(gp: &BipartiteGraph, plan: &ContractionPlan) -> u64 {
    let left = plan.total_length();
    let right = gp.right_size();
    let cells = left * right;
    assert!(cells <= 24, "inversion limited to 24 cells");
    (0u64..1 << cells)
        .filter(|&bits| {
            let g = BipartiteGraph::from_cell_bits(left, right, bits).expect("valid sizes");
            contract(&g, plan).expect("sizes match") == *gp
        })
        .count() as u64
}

/// Catalan numbers from the convolution recurrence.
pub fn catalan_by_recurrence(n: usize) -> u64 {
    let mut c = vec![1u64; n + 1];
    for i in 1..=n {
        c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
    }
    c[n]
}
