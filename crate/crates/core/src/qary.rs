//! Strings over `{0, .., q-1}` and the set-valued operations on them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{domain, Result};

/// An immutable q-ary string with its run count cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QaryString {
    q: u8,
    symbols: Vec<u8>,
    runs: usize,
}

fn count_runs(symbols: &[u8]) -> usize {
    if symbols.is_empty() {
        return 0;
    }
    1 + symbols.windows(2).filter(|w| w[0] != w[1]).count()
}

impl QaryString {
    pub fn new(q: u8, symbols: Vec<u8>) -> Result<Self> {
        if q < 2 {
            return domain(format!("alphabet size must be at least 2, got {q}"));
        }
        if let Some(&bad) = symbols.iter().find(|&&c| c >= q) {
            return domain(format!("symbol {bad} outside alphabet of size {q}"));
        }
        Ok(Self::from_trusted(q, symbols))
    }

    pub(crate) fn from_trusted(q: u8, symbols: Vec<u8>) -> Self {
        let runs = count_runs(&symbols);
        QaryString { q, symbols, runs }
    }

    pub fn empty(q: u8) -> Self {
        Self::from_trusted(q, Vec::new())
    }

    /// Parses a digit string such as `"120010"`.
    pub fn parse(q: u8, text: &str) -> Result<Self> {
        let symbols = text
            .trim()
            .chars()
            .map(|c| match c.to_digit(36) {
                Some(d) => Ok(d as u8),
                None => domain(format!("'{c}' is not a digit")),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(q, symbols)
    }

    /// The string of length `n` whose base-`q` value (most significant first) is `rank`.
    pub fn from_rank(q: u8, n: usize, mut rank: u64) -> Self {
        let mut symbols = vec![0u8; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (rank % q as u64) as u8;
            rank /= q as u64;
        }
        Self::from_trusted(q, symbols)
    }

    /// Lexicographic rank among strings of the same length.
    pub fn rank(&self) -> u64 {
        rank_of(self.q, &self.symbols)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of maximal blocks of equal symbols; 0 for the empty string.
    pub fn runs(&self) -> usize {
        self.runs
    }

    /// Run lengths paired with their symbol, left to right.
    pub fn run_profile(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::with_capacity(self.runs);
        for &c in &self.symbols {
            match out.last_mut() {
                Some((sym, len)) if *sym == c => *len += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        QaryString { q: self.q, symbols, runs: self.runs }
    }

    /// Applies a symbol permutation given as an image table.
    pub fn relabeled(&self, perm: &[u8]) -> Self {
        let symbols = self.symbols.iter().map(|&c| perm[c as usize]).collect();
        QaryString { q: self.q, symbols, runs: self.runs }
    }
}

pub(crate) fn rank_of(q: u8, symbols: &[u8]) -> u64 {
    symbols.iter().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
}

impl Ord for QaryString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.symbols
            .len()
            .cmp(&other.symbols.len())
            .then_with(|| self.symbols.cmp(&other.symbols))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl PartialOrd for QaryString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.symbols {
            let ch = std::char::from_digit(c as u32, 36).unwrap_or('?');
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"/q{}", self.q)
    }
}

/// A sorted, duplicate-free collection of strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StringSet {
    members: Vec<QaryString>,
}

impl StringSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[QaryString] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<QaryString> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, QaryString> {
        self.members.iter()
    }

    pub fn contains(&self, x: &QaryString) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &QaryString) -> Option<usize> {
        self.members.binary_search(x).ok()
    }

    pub fn union(&self, other: &StringSet) -> StringSet {
        self.iter().chain(other.iter()).cloned().collect()
    }

    pub fn intersects(&self, other: &StringSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().any(|x| large.contains(x))
    }

    /// Common length of the members, if they agree on one.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members.iter().all(|x| x.len() == first).then_some(first)
    }

    /// Newline-delimited digit strings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in &self.members {
            out.push_str(&x.to_string());
            out.push('\n');
        }
        out
    }

    /// Reads newline-delimited digit strings; blank lines and `#` comments are skipped.
    pub fn from_text(q: u8, text: &str) -> Result<StringSet> {
        let mut members = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            members.push(QaryString::parse(q, line).map_err(|e| crate::Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?);
        }
        Ok(members.into_iter().collect())
    }
}

impl FromIterator<QaryString> for StringSet {
    fn from_iter<I: IntoIterator<Item = QaryString>>(iter: I) -> Self {
        let mut members: Vec<QaryString> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        StringSet { members }
    }
}

impl<'a> IntoIterator for &'a StringSet {
    type Item = &'a QaryString;
    type IntoIter = std::slice::Iter<'a, QaryString>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// r(x). The empty string has zero runs.
pub fn run_count(x: &QaryString) -> usize {
    x.runs()
}

fn single_deletions(symbols: &[u8], out: &mut HashSet<Vec<u8>>) {
    // deleting any symbol of a run gives the same result, so delete run heads only
    for i in 0..symbols.len() {
        if i > 0 && symbols[i] == symbols[i - 1] {
            continue;
        }
        let mut y = Vec::with_capacity(symbols.len() - 1);
        y.extend_from_slice(&symbols[..i]);
        y.extend_from_slice(&symbols[i + 1..]);
        out.insert(y);
    }
}

/// D_s(x): all distinct subsequences of length |x| - s.
pub fn deletion_set(x: &QaryString, s: usize) -> Result<StringSet> {
    if s > x.len() {
        return domain(format!("cannot delete {s} symbols from a string of length {}", x.len()));
    }
    let mut frontier: HashSet<Vec<u8>> = HashSet::from([x.symbols.clone()]);
    for _ in 0..s {
        let mut next = HashSet::with_capacity(frontier.len() * 2);
        for y in &frontier {
            single_deletions(y, &mut next);
        }
        frontier = next;
    }
    Ok(frontier.into_iter().map(|v| QaryString::from_trusted(x.q, v)).collect())
}

/// I_s(x): all distinct supersequences of length |x| + s.
pub fn insertion_set(x: &QaryString, s: usize) -> StringSet {
    let mut frontier: HashSet<Vec<u8>> = HashSet::from([x.symbols.clone()]);
    for _ in 0..s {
        let mut next = HashSet::new();
        for y in &frontier {
            for i in 0..=y.len() {
                for c in 0..x.q {
                    let mut z = Vec::with_capacity(y.len() + 1);
                    z.extend_from_slice(&y[..i]);
                    z.push(c);
                    z.extend_from_slice(&y[i..]);
                    next.insert(z);
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().map(|v| QaryString::from_trusted(x.q, v)).collect()
}

/// True iff `y` can be obtained from `x` by deletions.
pub fn is_subsequence(y: &QaryString, x: &QaryString) -> bool {
    let mut it = x.symbols.iter();
    y.symbols.iter().all(|c| it.any(|d| d == c))
}

pub fn lcs_len(a: &[u8], b: &[u8]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Insert/delete edit distance, |x| + |y| - 2 LCS(x, y).
pub fn edit_distance(x: &QaryString, y: &QaryString) -> usize {
    x.len() + y.len() - 2 * lcs_len(&x.symbols, &y.symbols)
}

/// |D_s(x)| by the distinct-subsequence recurrence, without materializing the set.
pub fn deletion_set_size(x: &QaryString, s: usize) -> Result<u64> {
    if s > x.len() {
        return domain(format!("cannot delete {s} symbols from a string of length {}", x.len()));
    }
    Ok(distinct_subsequences(&x.symbols, x.len() - s))
}

pub(crate) fn distinct_subsequences(sym: &[u8], target: usize) -> u64 {
    let n = sym.len();
    // dp[i][k]: distinct subsequences of length k in sym[..i]
    let mut dp = vec![vec![0u64; target + 1]; n + 1];
    let mut last = [usize::MAX; 256];
    for row in dp.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=n {
        let c = sym[i - 1] as usize;
        for k in 1..=target {
            let mut v = dp[i - 1][k] + dp[i - 1][k - 1];
            if last[c] != usize::MAX {
                v -= dp[last[c]][k - 1];
            }
            dp[i][k] = v;
        }
        last[c] = i - 1;
    }
    dp[n][target]
}

/// All strings of length `n`, in lexicographic order.
pub fn all_strings(q: u8, n: usize) -> impl Iterator<Item = QaryString> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |r| QaryString::from_rank(q, n, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u8, t: &str) -> QaryString {
        QaryString::parse(q, t).unwrap()
    }

    fn brute_deletions(x: &QaryString, k: usize) -> StringSet {
        let n = x.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == n - k)
            .map(|m| {
                let v = (0..n).filter(|i| m >> i & 1 == 1).map(|i| x.symbols()[i]).collect();
                QaryString::from_trusted(x.q(), v)
            })
            .collect()
    }

    #[test]
    fn runs_of_examples() {
        assert_eq!(run_count(&s(3, "120010")), 5);
        assert_eq!(run_count(&s(2, "0000")), 1);
        assert_eq!(run_count(&s(2, "0101")), 4);
        assert_eq!(run_count(&QaryString::empty(2)), 0);
    }

    #[test]
    fn deletion_set_of_worked_example() {
        let got = deletion_set(&s(3, "120010"), 1).unwrap();
        let want: StringSet =
            ["20010", "10010", "12010", "12000", "12001"].iter().map(|t| s(3, t)).collect();
        assert_eq!(got, want);
        assert_eq!(deletion_set(&s(2, "000"), 1).unwrap().len(), 1);
        assert!(deletion_set(&s(2, "01"), 3).is_err());
        assert_eq!(deletion_set(&s(2, "01"), 0).unwrap().members(), &[s(2, "01")]);
    }

    #[test]
    fn deletion_set_matches_position_subsets() {
        for n in 0..=8 {
            for x in all_strings(2, n) {
                for k in 0..=n.min(3) {
                    let fast = deletion_set(&x, k).unwrap();
                    assert_eq!(fast, brute_deletions(&x, k), "{x:?} s={k}");
                    assert_eq!(deletion_set_size(&x, k).unwrap(), fast.len() as u64);
                }
            }
        }
    }

    #[test]
    fn insertion_set_small() {
        let got = insertion_set(&s(2, "01"), 1);
        let want: StringSet = ["001", "010", "011", "101"].iter().map(|t| s(2, t)).collect();
        assert_eq!(got, want);
        let e = insertion_set(&QaryString::empty(2), 1);
        assert_eq!(e.members(), &[s(2, "0"), s(2, "1")]);
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance(&s(2, "0110"), &s(2, "0110")), 0);
        assert_eq!(edit_distance(&s(2, "00"), &s(2, "11")), 4);
        assert_eq!(edit_distance(&s(2, "000"), &s(2, "001")), 2);
        assert!(is_subsequence(&s(2, "01"), &s(2, "010")));
        assert!(!is_subsequence(&s(2, "11"), &s(2, "010")));
    }

    #[test]
    fn rank_roundtrip_and_order() {
        let xs: Vec<_> = all_strings(3, 4).collect();
        for (i, x) in xs.iter().enumerate() {
            assert_eq!(x.rank(), i as u64);
        }
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_rejects_out_of_alphabet() {
        assert!(QaryString::parse(2, "012").is_err());
        assert!(QaryString::new(1, vec![]).is_err());
    }
}
