//! Words over `[n]`, multiset specifications, and order-isomorphic pattern
//! containment.
//!
//! A [`Word`] covers both ordinary permutations (every value used once) and
//! multiset permutations. Containment follows the classical definition: `w`
//! contains `q` when some subsequence of `w` is order-isomorphic to `q`, and
//! repeated letters of `q` must be matched by repeated values of `w`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers whose value set is `{1, .., max}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word, rejecting zero entries and gaps in the value set.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidWord("entries must be positive".into()));
        }
        let max = entries.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; max];
        for &v in &entries {
            seen[v as usize - 1] = true;
        }
        if let Some(gap) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidWord(format!(
                "value {} is missing below the maximum {}",
                gap + 1,
                max
            )));
        }
        Ok(Word(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest value, which equals the number of distinct values.
    pub fn max_value(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_permutation(&self) -> bool {
        self.max_value() as usize == self.0.len()
    }

    /// Multiplicity of each value `1..=max`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_value() as usize];
        for &v in &self.0 {
            counts[v as usize - 1] += 1;
        }
        counts
    }

    /// The multiset this word is an arrangement of.
    pub fn spec(&self) -> Result<MultisetSpec> {
        MultisetSpec::new(self.multiplicities())
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Word {
        let top = self.max_value() + 1;
        Word(self.0.iter().map(|&v| top - v).collect())
    }

    /// Reverse and complement in one call.
    pub fn symmetries(&self) -> (Word, Word) {
        (self.reverse(), self.complement())
    }

    /// Extends the word by one entry; the result may have gaps and is
    /// therefore returned as a raw sequence.
    pub fn appended(&self, value: u32) -> Vec<u32> {
        let mut out = self.0.clone();
        out.push(value);
        out
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Word::new(entries)
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts contiguous digits (`23718465`) or comma-separated decimals
    /// (`10,2,3`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidWord("empty input".into()));
        }
        let entries = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidWord(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidWord(format!("bad character {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(entries)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_value() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Multiplicities `(m_1, .., m_n)` of the ground multiset `{1^m_1, .., n^m_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultisetSpec(Vec<usize>);

impl MultisetSpec {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidSpec("at least one value is required".into()));
        }
        if let Some(i) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::InvalidSpec(format!(
                "multiplicity of {} is zero",
                i + 1
            )));
        }
        Ok(MultisetSpec(multiplicities))
    }

    /// The regular multiset `[n]_m`.
    pub fn regular(n: usize, m: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    /// The set `[n]`, i.e. `[n]_1`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::regular(n, 1)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }

    /// Number of distinct values.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Total word length `l = m_1 + .. + m_n`.
    pub fn total_length(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The common multiplicity of a regular spec.
    pub fn regular_multiplicity(&self) -> Option<usize> {
        self.is_regular().then(|| self.0[0])
    }

    pub fn max_multiplicity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// The lexicographically smallest arrangement, `1^m_1 2^m_2 ..`.
    pub fn sorted_word(&self) -> Word {
        let entries = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i as u32 + 1, m))
            .collect();
        Word(entries)
    }

    /// Short label: the multiplicity for regular specs, otherwise `m1;m2;..`.
    pub fn label(&self) -> String {
        match self.regular_multiplicity() {
            Some(m) => m.to_string(),
            None => {
                let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
                parts.join(";")
            }
        }
    }
}

impl From<MultisetSpec> for Vec<usize> {
    fn from(s: MultisetSpec) -> Self {
        s.0
    }
}

impl TryFrom<Vec<usize>> for MultisetSpec {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        MultisetSpec::new(v)
    }
}

impl fmt::Display for MultisetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{}^{}", i + 1, m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// True iff value `i` occurs exactly `m_i` times in `w` for every `i`.
pub fn validate_word(w: &Word, spec: &MultisetSpec) -> bool {
    w.multiplicities() == spec.multiplicities()
}

/// Dense-rank reduction: the unique gap-free word order-isomorphic to `seq`.
pub fn canonicalize(seq: &[u32]) -> Word {
    let distinct: BTreeSet<u32> = seq.iter().copied().collect();
    let ranks: Vec<u32> = distinct.into_iter().collect();
    Word(
        seq.iter()
            .map(|v| ranks.binary_search(v).expect("value present") as u32 + 1)
            .collect(),
    )
}

/// A pattern preprocessed for repeated containment queries.
///
/// For every pattern position `a` it records the earlier positions holding the
/// nearest smaller value, the nearest larger value, and an equal value. Those
/// three neighbours bound the value window a candidate entry must fall in.
#[derive(Debug, Clone)]
pub struct CompiledPattern {
    letters: Vec<u32>,
    floor: Vec<Option<usize>>,
    ceil: Vec<Option<usize>>,
    equal: Vec<Option<usize>>,
}

impl CompiledPattern {
    pub fn new(q: &Word) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let letters = q.entries().to_vec();
        let k = letters.len();
        let mut floor = vec![None; k];
        let mut ceil = vec![None; k];
        let mut equal = vec![None; k];
        for a in 0..k {
            let qa = letters[a];
            for b in 0..a {
                let qb = letters[b];
                if qb == qa {
                    equal[a].get_or_insert(b);
                } else if qb < qa {
                    if floor[a].is_none_or(|f: usize| letters[f] < qb) {
                        floor[a] = Some(b);
                    }
                } else if ceil[a].is_none_or(|c: usize| letters[c] > qb) {
                    ceil[a] = Some(b);
                }
            }
        }
        Ok(CompiledPattern {
            letters,
            floor,
            ceil,
            equal,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// First embedding in lexicographic order of positions, 0-indexed.
    pub fn find(&self, w: &[u32]) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.len());
        self.search(w, 0, false, &mut chosen).then_some(chosen)
    }

    pub fn occurs_in(&self, w: &[u32]) -> bool {
        let mut chosen = Vec::with_capacity(self.len());
        self.search(w, 0, false, &mut chosen)
    }

    /// Whether some occurrence uses the final entry of `w`.
    ///
    /// When `w[..len-1]` is already known to avoid the pattern this decides
    /// containment for `w` at a fraction of the cost.
    pub fn occurs_ending_at_last(&self, w: &[u32]) -> bool {
        if w.len() < self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(self.len());
        self.search(w, 0, true, &mut chosen)
    }

    fn fits(&self, a: usize, value: u32, w: &[u32], chosen: &[usize]) -> bool {
        if let Some(e) = self.equal[a] {
            return value == w[chosen[e]];
        }
        if let Some(f) = self.floor[a] {
            if value <= w[chosen[f]] {
                return false;
            }
        }
        if let Some(c) = self.ceil[a] {
            if value >= w[chosen[c]] {
                return false;
            }
        }
        true
    }

    fn search(&self, w: &[u32], start: usize, anchored: bool, chosen: &mut Vec<usize>) -> bool {
        let a = chosen.len();
        let k = self.len();
        if a == k {
            return true;
        }
        let remaining = k - a;
        if w.len() < start + remaining {
            return false;
        }
        let (lo, hi) = if anchored && a + 1 == k {
            // the final letter must sit on the last entry
            (w.len() - 1, w.len() - 1)
        } else {
            (start, w.len() - remaining)
        };
        for i in lo..=hi {
            if !self.fits(a, w[i], w, chosen) {
                continue;
            }
            chosen.push(i);
            if self.search(w, i + 1, anchored, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Whether `w` contains the pattern `q`.
pub fn contains(w: &Word, q: &Word) -> Result<bool> {
    Ok(CompiledPattern::new(q)?.occurs_in(w.entries()))
}

pub fn avoids(w: &Word, q: &Word) -> Result<bool> {
    contains(w, q).map(|c| !c)
}

/// One occurrence of `q` in `w` as 0-indexed positions, if any.
pub fn find_embedding(w: &Word, q: &Word) -> Result<Option<Vec<usize>>> {
    Ok(CompiledPattern::new(q)?.find(w.entries()))
}

/// Every canonical pattern of length `k` occurring in `w`.
pub fn contained_patterns(w: &Word, k: usize) -> Result<BTreeSet<Word>> {
    if k == 0 || k > w.len() {
        return Err(Error::LengthOutOfRange { k, len: w.len() });
    }
    let mut found = BTreeSet::new();
    let mut picked = Vec::with_capacity(k);
    collect_subsequences(w.entries(), k, 0, &mut picked, &mut found);
    Ok(found)
}

fn collect_subsequences(
    w: &[u32],
    k: usize,
    start: usize,
    picked: &mut Vec<u32>,
    out: &mut BTreeSet<Word>,
) {
    if picked.len() == k {
        out.insert(canonicalize(picked));
        return;
    }
    let need = k - picked.len();
    for i in start..=(w.len() - need) {
        picked.push(w[i]);
        collect_subsequences(w, k, i + 1, picked, out);
        picked.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("23718465").entries(), &[2, 3, 7, 1, 8, 4, 6, 5]);
        let long = w("10,2,3,4,5,6,7,8,9,1");
        assert_eq!(long.max_value(), 10);
        assert_eq!(long.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert_eq!(w("1212").to_string(), "1212");
        assert!("13".parse::<Word>().is_err());
        assert!("1a".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn validate_against_spec() {
        let s22 = MultisetSpec::new(vec![2, 2]).unwrap();
        assert!(validate_word(&w("1212"), &s22));
        assert!(validate_word(
            &w("111"),
            &MultisetSpec::new(vec![3]).unwrap()
        ));
        assert!(!validate_word(&w("112"), &s22));
        assert!(MultisetSpec::new(vec![2, 0]).is_err());
        assert!(MultisetSpec::new(vec![]).is_err());
    }

    #[test]
    fn spec_accessors() {
        let s = MultisetSpec::new(vec![2, 1, 3]).unwrap();
        assert_eq!(s.total_length(), 6);
        assert!(!s.is_regular());
        assert_eq!(s.label(), "2;1;3");
        assert_eq!(s.sorted_word(), w("112333"));
        let r = MultisetSpec::regular(3, 2).unwrap();
        assert_eq!(r.regular_multiplicity(), Some(2));
        assert_eq!(r.total_length(), 6);
    }

    #[test]
    fn worked_example_containment() {
        let p = w("23718465");
        assert!(contains(&p, &w("312")).unwrap());
        assert!(!contains(&p, &w("4321")).unwrap());
        assert!(contains(&p, &w("2134")).unwrap());
        let e = find_embedding(&p, &w("2134")).unwrap().unwrap();
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn multiset_containment() {
        let p = w("1214324");
        assert!(contains(&p, &w("122")).unwrap());
        assert!(contains(&p, &w("123")).unwrap());
        assert!(contains(&p, &w("321")).unwrap());
        assert!(!contains(&p, &w("211")).unwrap());
        assert!(!contains(&w("1212"), &w("111")).unwrap());
        assert!(contains(&w("1212"), &w("1212")).unwrap());
    }

    #[test]
    fn empty_pattern_rejected() {
        assert_eq!(
            contains(&w("12"), &Word::default()),
            Err(Error::EmptyPattern)
        );
    }

    #[test]
    fn pattern_longer_than_word() {
        assert!(!contains(&w("1"), &w("12")).unwrap());
    }

    #[test]
    fn anchored_search() {
        let q = CompiledPattern::new(&w("12")).unwrap();
        assert!(q.occurs_ending_at_last(&[2, 1, 3]));
        assert!(!q.occurs_ending_at_last(&[1, 3, 2, 1]));
        assert!(q.occurs_ending_at_last(&[1, 3, 2]));
        let q = CompiledPattern::new(&w("1")).unwrap();
        assert!(q.occurs_ending_at_last(&[5]));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(&[7, 1, 4]), w("312"));
        assert_eq!(canonicalize(&[1, 4, 4]), w("122"));
        assert_eq!(canonicalize(&[5]), w("1"));
    }

    #[test]
    fn patterns_of_length_three() {
        let all = contained_patterns(&w("23718465"), 3).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(Word::is_permutation));
        let inc = contained_patterns(&w("123"), 3).unwrap();
        assert_eq!(inc.into_iter().collect::<Vec<_>>(), vec![w("123")]);
        let multi = contained_patterns(&w("1214324"), 3).unwrap();
        for q in ["122", "123", "321"] {
            assert!(multi.contains(&w(q)));
        }
        assert!(!multi.contains(&w("211")));
        assert!(contained_patterns(&w("12"), 3).is_err());
        assert!(contained_patterns(&w("12"), 0).is_err());
    }

    #[test]
    fn symmetry_maps() {
        let (r, c) = w("312").symmetries();
        assert_eq!(r, w("213"));
        assert_eq!(c, w("132"));
        assert_eq!(w("1212").reverse(), w("2121"));
    }
}
