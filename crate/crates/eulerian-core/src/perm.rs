//! Permutations over finite ground sets and their statistics.
//!
//! Linear statistics (descents, inversions, major index, admissible
//! inversions, the peak/valley/double-ascent/double-descent classification,
//! vincular patterns, foremaxima) are defined on any word with distinct
//! letters. Statistics that compare values against positions or use cycle
//! structure (excedances, drops, fixed points, cycle classifications,
//! crossings, nestings) require the ground set `[n]`.
//!
//! The local classification uses the boundary convention
//! `σ_0 = σ_{n+1} = +∞`; `dd` counts only non-initial double descents, and
//! `χ(σ_1 < σ_2)` is true for `n = 1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("duplicate letter {0}")]
    DuplicateLetter(u32),
    #[error("letters must be positive")]
    ZeroLetter,
    #[error("ground set must be [n] for position and cycle statistics")]
    NotNatural,
    #[error("letter {0} is not in the ground set")]
    UnknownLetter(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("orbit has {candidates} members free of double descents; expected exactly one")]
    OrbitRepresentativeNotUnique { candidates: usize },
}

/// A permutation in one-line notation over a finite set of distinct positive
/// integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

const INF: u64 = u64::MAX;

/// Local classification of a letter under the `+∞` boundary convention.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LetterClass {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Permutation, PermError> {
        let mut seen = BTreeSet::new();
        for &w in &word {
            if w == 0 {
                return Err(PermError::ZeroLetter);
            }
            if !seen.insert(w) {
                return Err(PermError::DuplicateLetter(w));
            }
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// Parses `"63157248"` (digit string, n ≤ 9), `"10,2,1,..."`
    /// (comma-separated), or cycle form `"(1 4 6 2)(3)(5 7)"`.
    pub fn parse(s: &str) -> Result<Permutation, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Parse("empty permutation".into()));
        }
        if s.starts_with('(') {
            return Permutation::from_cycle_str(s);
        }
        if s.contains(',') {
            let word = s
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| PermError::Parse(format!("bad letter `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Permutation::new(word);
        }
        let word = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .ok_or_else(|| PermError::Parse(format!("bad digit `{c}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(word)
    }

    /// Builds a permutation of `[n]` from its cycle form. Every letter of
    /// `[n]` must appear exactly once (fixed points as singleton cycles).
    pub fn from_cycles(cycles: &[Vec<u32>]) -> Result<Permutation, PermError> {
        let mut letters = BTreeSet::new();
        for cycle in cycles {
            for &x in cycle {
                if x == 0 {
                    return Err(PermError::ZeroLetter);
                }
                if !letters.insert(x) {
                    return Err(PermError::DuplicateLetter(x));
                }
            }
        }
        let n = letters.len();
        if letters.iter().next_back() != Some(&(n as u32)) && n > 0 {
            return Err(PermError::NotNatural);
        }
        let mut word = vec![0u32; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let image = cycle[(i + 1) % cycle.len()];
                word[(x - 1) as usize] = image;
            }
        }
        Permutation::new(word)
    }

    fn from_cycle_str(s: &str) -> Result<Permutation, PermError> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(PermError::Parse("expected `(`".into()));
            }
            let end = rest
                .find(')')
                .ok_or_else(|| PermError::Parse("unbalanced parentheses".into()))?;
            let inner = &rest[1..end];
            let cycle = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| PermError::Parse(format!("bad letter `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cycle.is_empty() {
                return Err(PermError::Parse("empty cycle".into()));
            }
            cycles.push(cycle);
            rest = rest[end + 1..].trim_start();
        }
        Permutation::from_cycles(&cycles)
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// True iff the ground set is exactly `[n]`.
    pub fn is_natural(&self) -> bool {
        let n = self.word.len() as u32;
        self.word.iter().all(|&w| w <= n)
    }

    fn at(&self, i: isize) -> u64 {
        if i < 0 || i as usize >= self.word.len() {
            INF
        } else {
            self.word[i as usize] as u64
        }
    }

    /// Classification of the letter at 0-based position `i`.
    pub fn classify(&self, i: usize) -> LetterClass {
        let x = self.word[i] as u64;
        let left = self.at(i as isize - 1);
        let right = self.at(i as isize + 1);
        match (left < x, x < right) {
            (true, true) => LetterClass::DoubleAscent,
            (false, false) => LetterClass::DoubleDescent,
            (true, false) => LetterClass::Peak,
            (false, true) => LetterClass::Valley,
        }
    }

    // ----- linear statistics (any ground set) -----

    pub fn des(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn asc(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn inv(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn maj(&self) -> usize {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .sum()
    }

    /// Admissible inversions: inversion pairs `(π_i, π_j)` with either a rise
    /// immediately before `i`, or some larger letter strictly between the two
    /// positions.
    pub fn ai(&self) -> usize {
        let w = &self.word;
        let n = w.len();
        let mut count = 0;
        for i in 0..n {
            let rise_before = i > 0 && w[i - 1] < w[i];
            // first position after i holding a letter above w[i]
            let mut blocker = n;
            for (k, &wk) in w.iter().enumerate().skip(i + 1) {
                if wk > w[i] {
                    blocker = k;
                    break;
                }
            }
            for j in i + 1..n {
                if w[i] > w[j] && (rise_before || blocker < j) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn peak(&self) -> usize {
        (0..self.word.len())
            .filter(|&i| self.classify(i) == LetterClass::Peak)
            .count()
    }

    pub fn valley(&self) -> usize {
        (0..self.word.len())
            .filter(|&i| self.classify(i) == LetterClass::Valley)
            .count()
    }

    pub fn da(&self) -> usize {
        (0..self.word.len())
            .filter(|&i| self.classify(i) == LetterClass::DoubleAscent)
            .count()
    }

    /// Non-initial double descents.
    pub fn dd(&self) -> usize {
        (1..self.word.len())
            .filter(|&i| self.classify(i) == LetterClass::DoubleDescent)
            .count()
    }

    /// True iff `σ_1 > σ_2`, i.e. position 1 is the initial double descent.
    pub fn has_initial_dd(&self) -> bool {
        !self.word.is_empty() && self.classify(0) == LetterClass::DoubleDescent
    }

    /// `χ(σ_1 < σ_2)` under the boundary convention (true when `n = 1`).
    pub fn first_two_ascend(&self) -> bool {
        !self.word.is_empty() && (self.at(0) < self.at(1))
    }

    pub fn da_star(&self) -> usize {
        self.da() + usize::from(self.first_two_ascend())
    }

    pub fn valley_star(&self) -> usize {
        self.valley() - usize::from(self.first_two_ascend())
    }

    /// Foremaxima: left-to-right maxima that are also ascent bottoms
    /// (`σ_i < σ_{i+1}`, with `σ_{n+1} = +∞`).
    pub fn fmax(&self) -> usize {
        let mut best = 0u32;
        let mut count = 0;
        for i in 0..self.word.len() {
            if self.word[i] > best {
                best = self.word[i];
                if (self.word[i] as u64) < self.at(i as isize + 1) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Occurrences of the vincular pattern 2–31.
    pub fn p231(&self) -> usize {
        let w = &self.word;
        let n = w.len();
        let mut count = 0;
        for j in 1..n.saturating_sub(1) {
            for i in 0..j {
                if w[j + 1] < w[i] && w[i] < w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Occurrences of the vincular pattern 31–2.
    pub fn p312(&self) -> usize {
        let w = &self.word;
        let n = w.len();
        let mut count = 0;
        for i in 1..n {
            for j in i + 1..n {
                if w[i] < w[j] && w[j] < w[i - 1] {
                    count += 1;
                }
            }
        }
        count
    }

    // ----- position and cycle statistics (ground set [n]) -----

    fn require_natural(&self) -> Result<(), PermError> {
        if self.is_natural() {
            Ok(())
        } else {
            Err(PermError::NotNatural)
        }
    }

    /// Positions as a function: `apply(i) = σ(i)` for 1-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.word[(i - 1) as usize]
    }

    fn inverse_table(&self) -> Vec<u32> {
        let n = self.word.len();
        let mut inv = vec![0u32; n + 1];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize] = (i + 1) as u32;
        }
        inv
    }

    pub fn exc(&self) -> Result<usize, PermError> {
        self.require_natural()?;
        Ok(self
            .word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize > i + 1)
            .count())
    }

    pub fn drops(&self) -> Result<usize, PermError> {
        self.require_natural()?;
        Ok(self
            .word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| (v as usize) < i + 1)
            .count())
    }

    pub fn fix(&self) -> Result<usize, PermError> {
        self.require_natural()?;
        Ok(self
            .word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize == i + 1)
            .count())
    }

    /// Cycle classification counts `(cpeak, cvalley, cdrise, cdfall, fix)`,
    /// comparing `σ⁻¹(i), i, σ(i)` for each `i`.
    pub fn cycle_stats(&self) -> Result<(usize, usize, usize, usize, usize), PermError> {
        self.require_natural()?;
        let inv = self.inverse_table();
        let (mut cpeak, mut cvalley, mut cdrise, mut cdfall, mut fix) = (0, 0, 0, 0, 0);
        for i in 1..=self.word.len() as u32 {
            let prev = inv[i as usize];
            let next = self.apply(i);
            match (prev < i, i < next) {
                _ if prev == i => fix += 1,
                (true, false) => cpeak += 1,
                (false, true) => cvalley += 1,
                (true, true) => cdrise += 1,
                (false, false) => cdfall += 1,
            }
        }
        Ok((cpeak, cvalley, cdrise, cdfall, fix))
    }

    pub fn cdfall(&self) -> Result<usize, PermError> {
        Ok(self.cycle_stats()?.3)
    }

    /// Crossings: pairs with `i < j ≤ σ_i < σ_j` or `i > j > σ_i > σ_j`.
    pub fn cros(&self) -> Result<usize, PermError> {
        self.require_natural()?;
        let n = self.word.len() as u32;
        let mut count = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (si, sj) = (self.apply(i), self.apply(j));
                if (i < j && j <= si && si < sj) || (i > j && j > si && si > sj) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Nestings: pairs with `i < j ≤ σ_j < σ_i` or `i > j > σ_j > σ_i`.
    pub fn nest(&self) -> Result<usize, PermError> {
        self.require_natural()?;
        let n = self.word.len() as u32;
        let mut count = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (si, sj) = (self.apply(i), self.apply(j));
                if (i < j && j <= sj && sj < si) || (i > j && j > sj && sj > si) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Writes the cycles in standard form (largest element first, cycles by
    /// increasing largest element) and erases the parentheses.
    pub fn foata_first(&self) -> Result<Permutation, PermError> {
        self.require_natural()?;
        let n = self.word.len();
        let mut seen = vec![false; n + 1];
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            let top = cycle.iter().position(|&v| v == *cycle.iter().max().unwrap()).unwrap();
            cycle.rotate_left(top);
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c[0]);
        Ok(Permutation {
            word: cycles.concat(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.iter().all(|&w| w <= 9) {
            for &w in &self.word {
                write!(f, "{w}")?;
            }
            Ok(())
        } else {
            let toks: Vec<String> = self.word.iter().map(|w| w.to_string()).collect();
            f.write_str(&toks.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// All statistics of a permutation of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatBundle {
    pub des: usize,
    pub asc: usize,
    pub exc: usize,
    pub inv: usize,
    pub maj: usize,
    pub ai: usize,
    pub dd: usize,
    pub da: usize,
    pub da_star: usize,
    pub peak: usize,
    pub valley: usize,
    pub valley_star: usize,
    pub cpeak: usize,
    pub cvalley: usize,
    pub cdrise: usize,
    pub cdfall: usize,
    pub fix: usize,
    pub cros: usize,
    pub nest: usize,
    #[serde(rename = "drop")]
    pub drop_count: usize,
    pub p231: usize,
    pub p312: usize,
    pub fmax: usize,
}

impl StatBundle {
    pub fn compute(p: &Permutation) -> Result<StatBundle, PermError> {
        let (cpeak, cvalley, cdrise, cdfall, fix) = p.cycle_stats()?;
        Ok(StatBundle {
            des: p.des(),
            asc: p.asc(),
            exc: p.exc()?,
            inv: p.inv(),
            maj: p.maj(),
            ai: p.ai(),
            dd: p.dd(),
            da: p.da(),
            da_star: p.da_star(),
            peak: p.peak(),
            valley: p.valley(),
            valley_star: p.valley_star(),
            cpeak,
            cvalley,
            cdrise,
            cdfall,
            fix,
            cros: p.cros()?,
            nest: p.nest()?,
            drop_count: p.drops()?,
            p231: p.p231(),
            p312: p.p312(),
            fmax: p.fmax(),
        })
    }
}

/// True iff the first ascent, if any, occurs at the minimum letter.
pub fn is_prw(p: &Permutation) -> bool {
    let w = p.word();
    let min = match w.iter().min() {
        Some(&m) => m,
        None => return true,
    };
    match w.windows(2).position(|pair| pair[0] < pair[1]) {
        None => true,
        Some(i) => w[i] == min,
    }
}

fn next_permutation(w: &mut [u32]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Lexicographic iterator over all permutations of a ground set.
pub struct Perms {
    next: Option<Vec<u32>>,
}

impl Iterator for Perms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut advanced = cur.clone();
        if next_permutation(&mut advanced) {
            self.next = Some(advanced);
        }
        Some(Permutation { word: cur })
    }
}

/// All permutations of `[n]` in lexicographic order.
pub fn gen_sn(n: usize) -> Perms {
    gen_sn_on(&(1..=n as u32).collect::<Vec<_>>())
}

/// All permutations of an arbitrary ground set in lexicographic order.
pub fn gen_sn_on(ground: &[u32]) -> Perms {
    let mut start = ground.to_vec();
    start.sort_unstable();
    Perms { next: Some(start) }
}

/// Permutations of `[n]` whose first ascent occurs at the letter 1.
pub fn gen_prw(n: usize) -> impl Iterator<Item = Permutation> {
    gen_sn(n).filter(is_prw)
}

/// PRW permutations of an arbitrary ground set (first ascent at the minimum).
pub fn gen_prw_on(ground: &[u32]) -> impl Iterator<Item = Permutation> {
    gen_sn_on(ground).filter(is_prw)
}

/// `Γ_{n,k}`: no double descents at all, `σ_1 < σ_2`, `des = k`.
/// Empty for `n = 1` by convention.
pub fn gen_gamma(n: usize, k: usize) -> Box<dyn Iterator<Item = Permutation>> {
    if n < 2 {
        return Box::new(std::iter::empty());
    }
    Box::new(gen_sn(n).filter(move |p| {
        p.dd() == 0 && p.word()[0] < p.word()[1] && p.des() == k
    }))
}

/// `Γ̃_{n,k}`: no non-initial double descents, `des = k`.
pub fn gen_tilde_gamma(n: usize, k: usize) -> impl Iterator<Item = Permutation> {
    gen_sn(n).filter(move |p| p.dd() == 0 && p.des() == k)
}

/// `Γ̂_{n,k}`: no cycle double falls, `drop = k`.
pub fn gen_hat_gamma(n: usize, k: usize) -> impl Iterator<Item = Permutation> {
    gen_sn(n).filter(move |p| p.cdfall().unwrap() == 0 && p.drops().unwrap() == k)
}

// ---------------------------------------------------------------------------
// Modified Foata–Strehl action
// ---------------------------------------------------------------------------

/// The raw hop `φ_x`: in the x-factorization `σ = w1 w2 x w3 w4` (with
/// `w2`/`w3` the maximal contiguous subwords adjacent to `x` whose letters
/// are all smaller than `x`), returns `w1 w3 x w2 w4`.
pub fn mfs_hop(p: &Permutation, x: u32) -> Result<Permutation, PermError> {
    let w = p.word();
    let pos = w
        .iter()
        .position(|&v| v == x)
        .ok_or(PermError::UnknownLetter(x))?;
    let mut lo = pos;
    while lo > 0 && w[lo - 1] < x {
        lo -= 1;
    }
    let mut hi = pos;
    while hi + 1 < w.len() && w[hi + 1] < x {
        hi += 1;
    }
    let mut word = Vec::with_capacity(w.len());
    word.extend_from_slice(&w[..lo]);
    word.extend_from_slice(&w[pos + 1..=hi]);
    word.push(x);
    word.extend_from_slice(&w[lo..pos]);
    word.extend_from_slice(&w[hi + 1..]);
    Ok(Permutation { word })
}

/// The modified hop `φ'_x`: applies `φ_x` iff `x` is a double ascent or a
/// double descent (the initial double descent included); peaks and valleys
/// are fixed.
pub fn mfs_hop_prime(p: &Permutation, x: u32) -> Result<Permutation, PermError> {
    let pos = p
        .word()
        .iter()
        .position(|&v| v == x)
        .ok_or(PermError::UnknownLetter(x))?;
    match p.classify(pos) {
        LetterClass::Peak | LetterClass::Valley => Ok(p.clone()),
        LetterClass::DoubleAscent | LetterClass::DoubleDescent => mfs_hop(p, x),
    }
}

/// An orbit of the MFS action together with its canonical representative:
/// the unique member with no double descents at all (initial one included).
#[derive(Clone, Debug)]
pub struct Orbit {
    pub members: Vec<Permutation>,
    pub representative: Permutation,
    /// The common `ai` value when the statistic is constant on the orbit.
    pub shared_ai: Option<usize>,
}

/// Closure of `σ` under all modified hops.
pub fn mfs_orbit(p: &Permutation) -> Result<Orbit, PermError> {
    let letters: Vec<u32> = p.word().to_vec();
    let mut members = BTreeSet::new();
    let mut queue = vec![p.clone()];
    members.insert(p.clone());
    while let Some(cur) = queue.pop() {
        for &x in &letters {
            let next = mfs_hop_prime(&cur, x)?;
            if members.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let members: Vec<Permutation> = members.into_iter().collect();
    let reps: Vec<&Permutation> = members
        .iter()
        .filter(|m| m.dd() == 0 && !m.has_initial_dd())
        .collect();
    if reps.len() != 1 {
        return Err(PermError::OrbitRepresentativeNotUnique {
            candidates: reps.len(),
        });
    }
    let representative = reps[0].clone();
    let ai0 = members[0].ai();
    let shared_ai = members.iter().all(|m| m.ai() == ai0).then_some(ai0);
    Ok(Orbit {
        members,
        representative,
        shared_ai,
    })
}

/// All MFS orbits of a family of permutations (each orbit listed once, keyed
/// by its lexicographically smallest member).
pub fn mfs_orbits<I: IntoIterator<Item = Permutation>>(perms: I) -> Result<Vec<Orbit>, PermError> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in perms {
        if seen.contains(&p) {
            continue;
        }
        let orbit = mfs_orbit(&p)?;
        for m in &orbit.members {
            seen.insert(m.clone());
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn admissible_inversions_examples() {
        assert_eq!(perm("3142").ai(), 2);
        // hand enumeration: 321 has inversions (3,2),(3,1),(2,1), none admissible
        let p = perm("321");
        assert_eq!(p.des(), 2);
        assert_eq!(p.inv(), 3);
        assert_eq!(p.maj(), 3);
        assert_eq!(p.exc().unwrap(), 1);
        assert_eq!(p.ai(), 0);
    }

    #[test]
    fn vincular_and_arc_statistics() {
        let p = perm("42513");
        // cros = 2 by the displayed definition: (1,3) above and (5,4) below
        assert_eq!(p.cros().unwrap(), 2);
        assert_eq!(p.nest().unwrap(), 1);
        assert_eq!(p.drops().unwrap(), 2);
        assert_eq!(p.p231(), 2);
        assert_eq!(p.p312(), 2);
        assert_eq!(p.fmax(), 0);
        assert_eq!(p.fix().unwrap(), 1);
        assert_eq!(p.exc().unwrap(), 2);
    }

    #[test]
    fn cycle_form_example() {
        let p = Permutation::parse("(1 4 6 2)(3)(5 7)").unwrap();
        assert_eq!(p.word(), &[4, 1, 3, 6, 7, 2, 5]);
        let (cpeak, cvalley, cdrise, cdfall, fix) = p.cycle_stats().unwrap();
        assert_eq!((cpeak, cvalley, cdrise, cdfall, fix), (2, 2, 1, 1, 1));
    }

    #[test]
    fn boundary_convention_n1() {
        let p = perm("1");
        assert_eq!(p.des(), 0);
        assert_eq!(p.valley(), 1);
        assert_eq!(p.fmax(), 1);
        assert_eq!(p.peak(), 0);
        assert_eq!(p.da(), 0);
        assert!(p.first_two_ascend());
        assert_eq!(p.da_star(), 1);
        assert_eq!(p.valley_star(), 0);
    }

    #[test]
    fn classification_partition() {
        for n in 1..=7 {
            for p in gen_sn(n) {
                let total = p.peak()
                    + p.valley()
                    + p.da()
                    + p.dd()
                    + usize::from(p.has_initial_dd());
                assert_eq!(total, n);
                let (cpeak, cvalley, cdrise, _, _) = p.cycle_stats().unwrap();
                assert_eq!(cpeak, cvalley);
                assert_eq!(p.exc().unwrap(), cvalley + cdrise);
            }
        }
    }

    #[test]
    fn prw_membership() {
        let prw3: Vec<String> = gen_prw(3).map(|p| p.to_string()).collect();
        assert_eq!(prw3, vec!["123", "132", "213", "312", "321"]);
        let prw2: Vec<String> = gen_prw(2).map(|p| p.to_string()).collect();
        assert_eq!(prw2, vec!["12", "21"]);
        assert!(is_prw(&perm("213")));
        assert!(!is_prw(&perm("231")));
        assert!(is_prw(&perm("21")));
        assert!(is_prw(&perm("4312")));
    }

    #[test]
    fn prw4_descent_slice() {
        let members: BTreeSet<String> = gen_prw(4)
            .filter(|p| p.des() == 2)
            .map(|p| p.to_string())
            .collect();
        let expect: BTreeSet<String> = ["1432", "3142", "4132", "2143", "4312", "4213", "3214"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(members, expect);
        assert_eq!(members.len(), 7);
    }

    #[test]
    fn tilde_gamma_small() {
        let g21: Vec<String> = gen_tilde_gamma(2, 1).map(|p| p.to_string()).collect();
        assert_eq!(g21, vec!["21"]);
        let g20: Vec<String> = gen_tilde_gamma(2, 0).map(|p| p.to_string()).collect();
        assert_eq!(g20, vec!["12"]);
    }

    #[test]
    fn gamma_counts_sum_to_factorial() {
        // Σ_k |Γ_{n,k}|·2^{n-1-2k} = n! (γ-expansion of A_n(t) at t = 1)
        for n in 2..=8usize {
            let mut total = 0usize;
            for k in 0..=(n - 1) / 2 {
                let count = gen_gamma(n, k).count();
                total += count << (n - 1 - 2 * k);
            }
            let factorial: usize = (1..=n).product();
            assert_eq!(total, factorial, "n={n}");
        }
        assert_eq!(gen_gamma(1, 0).count(), 0);
    }

    #[test]
    fn mfs_hop_worked_example() {
        let sigma = perm("63157248");
        assert_eq!(mfs_hop(&sigma, 5).unwrap().to_string(), "65317248");
        // raw hop on the minimum letter never moves anything
        assert_eq!(mfs_hop(&sigma, 1).unwrap(), sigma);
        // involution
        let once = mfs_hop(&sigma, 5).unwrap();
        assert_eq!(mfs_hop(&once, 5).unwrap(), sigma);
    }

    #[test]
    fn mfs_hop_prime_classification() {
        let sigma = perm("63157248");
        // 5 is a double ascent (1 < 5 < 7): moves
        assert_eq!(mfs_hop_prime(&sigma, 5).unwrap().to_string(), "65317248");
        // 7 is a peak (5 < 7 > 2): fixed
        assert_eq!(mfs_hop_prime(&sigma, 7).unwrap(), sigma);
        // involution on every letter
        for &x in sigma.word() {
            let once = mfs_hop_prime(&sigma, x).unwrap();
            assert_eq!(mfs_hop_prime(&once, x).unwrap(), sigma, "x={x}");
        }
    }

    #[test]
    fn orbit_of_123() {
        let orbit = mfs_orbit(&perm("123")).unwrap();
        let words: Vec<String> = orbit.members.iter().map(|p| p.to_string()).collect();
        assert_eq!(words, vec!["123", "213", "312", "321"]);
        assert_eq!(orbit.representative.to_string(), "123");
        assert_eq!(orbit.members.len(), 1 << orbit.representative.da());
        assert_eq!(orbit.shared_ai, Some(0));
    }

    #[test]
    fn orbit_of_rigid_permutation() {
        // no double ascents or descents anywhere: singleton orbit
        let orbit = mfs_orbit(&perm("132")).unwrap();
        assert_eq!(orbit.members, vec![perm("132")]);
        assert_eq!(orbit.representative, perm("132"));
    }

    #[test]
    fn ai_constant_on_prw5_orbits() {
        for orbit in mfs_orbits(gen_prw(5)).unwrap() {
            assert!(orbit.shared_ai.is_some(), "orbit of {}", orbit.members[0]);
        }
    }

    #[test]
    fn prw_closed_under_hops() {
        for n in 2..=6 {
            for p in gen_prw(n) {
                for x in 1..=n as u32 {
                    assert!(is_prw(&mfs_hop_prime(&p, x).unwrap()));
                }
            }
        }
    }

    #[test]
    fn foata_first_examples() {
        for n in 1..=6 {
            let id = Permutation::identity(n);
            assert_eq!(id.foata_first().unwrap(), id);
        }
        // (1462)(3)(57) in standard form: (3)(6214)(75) -> 3621475
        let p = Permutation::parse("(1 4 6 2)(3)(5 7)").unwrap();
        assert_eq!(p.foata_first().unwrap().to_string(), "3621475");
    }

    #[test]
    fn foata_first_bijective() {
        for n in 1..=7 {
            let images: BTreeSet<Permutation> =
                gen_sn(n).map(|p| p.foata_first().unwrap()).collect();
            let factorial: usize = (1..=n).product();
            assert_eq!(images.len(), factorial);
        }
    }

    #[test]
    fn foata_first_maps_hat_gamma_onto_tilde_gamma() {
        for n in 1..=6 {
            for k in 0..=n / 2 {
                let image: BTreeSet<Permutation> = gen_hat_gamma(n, k)
                    .map(|p| p.foata_first().unwrap())
                    .collect();
                let tilde: BTreeSet<Permutation> = gen_tilde_gamma(n, k).collect();
                assert_eq!(image, tilde, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn eulerian_and_mahonian_equidistribution() {
        for n in 1..=9usize {
            let mut by_des = vec![0usize; n];
            let mut by_exc = vec![0usize; n];
            for p in gen_sn(n) {
                by_des[p.des()] += 1;
                by_exc[p.exc().unwrap()] += 1;
            }
            assert_eq!(by_des, by_exc, "n={n}");
        }
        use crate::poly::{q_factorial, vars, Monomial, MultiPoly};
        use num_bigint::BigInt;
        use num_traits::One;
        for n in 1..=8usize {
            let mut by_inv = MultiPoly::zero();
            let mut by_maj = MultiPoly::zero();
            for p in gen_sn(n) {
                by_inv.add_term(Monomial::var_pow(vars::Q, p.inv() as u16), BigInt::one());
                by_maj.add_term(Monomial::var_pow(vars::Q, p.maj() as u16), BigInt::one());
            }
            let expect = q_factorial(n);
            assert_eq!(by_inv, expect, "inv n={n}");
            assert_eq!(by_maj, expect, "maj n={n}");
        }
    }

    #[test]
    fn prw_cardinality() {
        use num_bigint::BigInt;
        // |PRW_{n+1}| = Ã_n(1) = 1 + Σ_m C(n,m)·m!
        for n in 1..=8usize {
            let count = gen_prw(n + 1).count();
            let mut expect = 1usize;
            for m in 1..=n {
                let mut c = 1usize;
                for i in 0..m {
                    c = c * (n - i) / (i + 1);
                }
                let fact: usize = (1..=m).product();
                expect += c * fact;
            }
            assert_eq!(count, expect, "n={n}");
            let tilde_at_one = crate::families::tilde_a_t(n)
                .eval_at(crate::poly::vars::T, &BigInt::from(1))
                .as_integer()
                .unwrap();
            assert_eq!(tilde_at_one, BigInt::from(expect), "n={n}");
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("63157248").to_string(), "63157248");
        let long = Permutation::new(vec![10, 2, 1, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(long.to_string(), "10,2,1,3,4,5,6,7,8,9");
        assert_eq!(Permutation::parse("10,2,1").unwrap().word(), &[10, 2, 1]);
        assert!(Permutation::parse("1231").is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::parse("(1 2)(4)").is_err()); // 3 missing
    }

    #[test]
    fn stat_bundle_requires_natural() {
        let p = Permutation::new(vec![4, 2, 5]).unwrap();
        assert!(StatBundle::compute(&p).is_err());
        assert_eq!(p.des(), 1); // linear statistics still fine
        let bundle = StatBundle::compute(&perm("42513")).unwrap();
        assert_eq!(bundle.drop_count, 2);
        assert_eq!(bundle.asc + bundle.des, 4);
    }
}
