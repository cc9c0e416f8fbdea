//! Known single-deletion codes and a codebook checker.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::bounds::{checked_count, DEFAULT_MAX_STRINGS};
use crate::error::{domain, Error, Result};
use crate::qary::{all_strings, deletion_set, edit_distance, QaryString, StringSet};

/// Largest codebook for which verification also compares deletion sets.
pub const CROSS_CHECK_MAX: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Vt { a: u64 },
    Tenengolts { beta: u64, gamma: u64 },
    Witness,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Vt { a } => write!(f, "vt({a})"),
            Provenance::Tenengolts { beta, gamma } => write!(f, "tenengolts({beta},{gamma})"),
            Provenance::Witness => f.write_str("witness"),
            Provenance::User => f.write_str("user"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    pub q: u8,
    pub n: usize,
    pub s: usize,
    pub members: StringSet,
    pub provenance: Provenance,
}

impl Codebook {
    /// Wraps a set of equal-length strings; does not check the code property.
    pub fn new(q: u8, s: usize, members: StringSet, provenance: Provenance) -> Result<Self> {
        let n = match members.uniform_length() {
            Some(n) => n,
            None if members.is_empty() => 0,
            None => return domain("codebook members have mixed lengths"),
        };
        if members.iter().any(|x| x.q() != q) {
            return domain("codebook members use different alphabets");
        }
        Ok(Codebook { q, n, s, members, provenance })
    }

    pub fn from_text(q: u8, s: usize, text: &str) -> Result<Self> {
        Self::new(q, s, StringSet::from_text(q, text)?, Provenance::User)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeCheck {
    pub valid: bool,
    /// First pair (in sorted order) at edit distance at most 2s.
    pub violation: Option<(QaryString, QaryString)>,
}

/// Checks that all pairs are at edit distance more than 2s; small codebooks are
/// cross-checked by looking for a shared s-deletion.
pub fn verify_codebook(c: &Codebook) -> Result<CodeCheck> {
    let m = c.members.members();
    if m.iter().any(|x| x.len() != c.n || x.q() != c.q) {
        return domain("codebook members have mixed lengths or alphabets");
    }
    let mut violation = None;
    'outer: for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            if edit_distance(a, b) <= 2 * c.s {
                violation = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    if m.len() <= CROSS_CHECK_MAX && c.s <= c.n {
        let mut owner: HashMap<QaryString, usize> = HashMap::new();
        let mut clash = false;
        for (i, x) in m.iter().enumerate() {
            for y in deletion_set(x, c.s)?.iter() {
                if let Some(&j) = owner.get(y) {
                    clash |= j != i;
                } else {
                    owner.insert(y.clone(), i);
                }
            }
        }
        if clash != violation.is_some() {
            return Err(Error::Internal("edit distance and deletion sets disagree".into()));
        }
    }
    Ok(CodeCheck { valid: violation.is_none(), violation })
}

fn vt_residue(x: &QaryString) -> u64 {
    x.symbols().iter().enumerate().map(|(i, &b)| (i as u64 + 1) * b as u64).sum::<u64>() % (x.len() as u64 + 1)
}

/// VT_a(n) = { x binary : sum of i*x_i = a mod n+1 }.
pub fn vt_code(n: usize, a: u64) -> Result<Codebook> {
    if n == 0 || a > n as u64 {
        return domain(format!("need n >= 1 and 0 <= a <= n, got n={n} a={a}"));
    }
    checked_count(2, n as u64, DEFAULT_MAX_STRINGS)?;
    let members: StringSet = all_strings(2, n).filter(|x| vt_residue(x) == a).collect();
    Codebook::new(2, 1, members, Provenance::Vt { a })
}

/// Tenengolts parameters of a q-ary string: the auxiliary binary sequence
/// alpha_1 = 1, alpha_i = [x_i >= x_{i-1}] gives gamma = sum (i-1) alpha_i mod n,
/// and beta = sum x_i mod q.
fn tenengolts_residues(x: &QaryString) -> (u64, u64) {
    let s = x.symbols();
    let n = s.len() as u64;
    let gamma = (1..s.len()).filter(|&i| s[i] >= s[i - 1]).map(|i| i as u64).sum::<u64>() % n;
    let beta = s.iter().map(|&v| v as u64).sum::<u64>() % x.q() as u64;
    (beta, gamma)
}

/// The Tenengolts code with parameters (beta, gamma); verified before returning.
pub fn tenengolts_code(q: u8, n: usize, beta: u64, gamma: u64) -> Result<Codebook> {
    if q < 2 || n == 0 || beta >= q as u64 || gamma >= n as u64 {
        return domain(format!("need q >= 2, n >= 1, beta < q, gamma < n; got q={q} n={n} beta={beta} gamma={gamma}"));
    }
    checked_count(q as u64, n as u64, DEFAULT_MAX_STRINGS)?;
    let members: StringSet = all_strings(q, n).filter(|x| tenengolts_residues(x) == (beta, gamma)).collect();
    let code = Codebook::new(q, 1, members, Provenance::Tenengolts { beta, gamma })?;
    match verify_codebook(&code)? {
        CodeCheck { valid: true, .. } => Ok(code),
        CodeCheck { violation, .. } => {
            let (a, b) = violation.expect("invalid code has a violating pair");
            Err(Error::Construction(format!("tenengolts({beta},{gamma}) for q={q} n={n} contains {a} and {b}")))
        }
    }
}

/// Sizes of every member of the Tenengolts family, indexed [beta][gamma].
pub fn tenengolts_family_sizes(q: u8, n: usize) -> Result<Vec<Vec<u64>>> {
    if q < 2 || n == 0 {
        return domain("need q >= 2 and n >= 1");
    }
    checked_count(q as u64, n as u64, DEFAULT_MAX_STRINGS)?;
    let mut sizes = vec![vec![0u64; n]; q as usize];
    for x in all_strings(q, n) {
        let (b, g) = tenengolts_residues(&x);
        sizes[b as usize][g as usize] += 1;
    }
    Ok(sizes)
}

/// Largest code in the Tenengolts family; ties go to the smallest (beta, gamma).
pub fn tenengolts_family_max(q: u8, n: usize) -> Result<Codebook> {
    let sizes = tenengolts_family_sizes(q, n)?;
    let (mut beta, mut gamma, mut top) = (0, 0, 0);
    for (b, row) in sizes.iter().enumerate() {
        for (g, &c) in row.iter().enumerate() {
            if c > top {
                (beta, gamma, top) = (b as u64, g as u64, c);
            }
        }
    }
    tenengolts_code(q, n, beta, gamma)
}

/// Size of the best known single-deletion code used for comparison tables.
pub fn best_known_size(q: u8, n: usize) -> Result<(u64, Provenance)> {
    if !(2..=5).contains(&q) {
        return domain(format!("best known codes are tabulated for q in 2..=5, got {q}"));
    }
    let code = if q == 2 { vt_code(n, 0)? } else { tenengolts_family_max(q, n)? };
    if q == 2 && !verify_codebook(&code)?.valid {
        return Err(Error::Construction(format!("VT_0({n}) failed verification")));
    }
    Ok((code.len() as u64, code.provenance))
}
