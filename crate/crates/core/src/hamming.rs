//! Implicit Hamming graphs `H_{k,a}`: length-`k` strings over an `a`-letter
//! alphabet, adjacent when they differ in one position. Distances are
//! mismatch counts, so nothing here ever builds the graph.
//!
//! Resolving sets can be verified exhaustively (every vertex, streamed in
//! lexicographic label order) or by sampling random vertex pairs, and can be
//! lifted from `H_{k,a}` to `H_{k+1,a}` at a cost of at most `⌊a/2⌋` extra
//! vertices with [`augment`].
//!
//! For hypercubes `β(Q_k)` grows like `2k / log k`; only the exact small
//! values in [`hypercube_reference`] are used here.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::RngSeed;
use crate::partition::Refiner;

pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1_000_000;
pub const DEFAULT_SAMPLED_PAIRS: u64 = 1_000_000;

const CANONICAL_SYMBOLS: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Mismatch count of two equal-length strings.
pub fn hamming_distance(u: &str, v: &str) -> Result<usize> {
    let (lu, lv) = (u.chars().count(), v.chars().count());
    if lu != lv {
        return Err(Error::LengthMismatch(lu, lv));
    }
    Ok(u.chars().zip(v.chars()).filter(|(x, y)| x != y).count())
}

fn word_distance(u: &[u8], v: &[u8]) -> usize {
    u.iter().zip(v).filter(|(x, y)| x != y).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HammingSpace {
    k: usize,
    alphabet: Vec<char>,
}

impl HammingSpace {
    /// Space with the canonical alphabet `0, 1, …, 9, a, …` of size `a`.
    pub fn new(k: usize, a: usize) -> Result<Self> {
        if a > CANONICAL_SYMBOLS.len() {
            return Err(Error::InvalidParameter(format!(
                "no canonical alphabet of size {a}; supply the symbols"
            )));
        }
        Self::with_alphabet(k, CANONICAL_SYMBOLS.chars().take(a).collect())
    }

    pub fn with_alphabet(k: usize, alphabet: Vec<char>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("string length k must be at least 1".into()));
        }
        if alphabet.len() < 2 || alphabet.len() > 256 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {} outside 2..=256",
                alphabet.len()
            )));
        }
        let mut sorted = alphabet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::InvalidParameter("alphabet symbols must be distinct".into()));
        }
        Ok(HammingSpace { k, alphabet })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// `a^k`, or `None` if it overflows `u64`.
    pub fn vertex_count(&self) -> Option<u64> {
        (self.a() as u64).checked_pow(self.k as u32)
    }

    /// The same alphabet one position longer.
    pub fn extended(&self) -> HammingSpace {
        HammingSpace {
            k: self.k + 1,
            alphabet: self.alphabet.clone(),
        }
    }

    fn symbol_index(&self, c: char) -> Result<u8> {
        self.alphabet
            .iter()
            .position(|&s| s == c)
            .map(|i| i as u8)
            .ok_or(Error::ForeignSymbol(c))
    }

    pub fn encode(&self, label: &str) -> Result<Vec<u8>> {
        let word = label
            .chars()
            .map(|c| self.symbol_index(c))
            .collect::<Result<Vec<u8>>>()?;
        if word.len() != self.k {
            return Err(Error::LengthMismatch(word.len(), self.k));
        }
        Ok(word)
    }

    pub fn decode(&self, word: &[u8]) -> String {
        word.iter().map(|&i| self.alphabet[i as usize]).collect()
    }

    /// Mismatch count, rejecting symbols outside the alphabet.
    pub fn distance(&self, u: &str, v: &str) -> Result<usize> {
        Ok(word_distance(&self.encode(u)?, &self.encode(v)?))
    }

    /// Word at lexicographic rank `index` (position 0 most significant).
    pub fn word_at(&self, mut index: u64) -> Vec<u8> {
        let a = self.a() as u64;
        let mut word = vec![0u8; self.k];
        for slot in word.iter_mut().rev() {
            *slot = (index % a) as u8;
            index /= a;
        }
        word
    }

    pub fn rank(&self, word: &[u8]) -> u64 {
        word.iter().fold(0, |acc, &s| acc * self.a() as u64 + s as u64)
    }

    fn random_word<R: Rng>(&self, rng: &mut R) -> Vec<u8> {
        (0..self.k).map(|_| rng.gen_range(0..self.a()) as u8).collect()
    }
}

impl fmt::Display for HammingSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.k, self.a())
    }
}

/// `β(H_{2,a}) = ⌊2(2a - 1)/3⌋`.
pub fn beta_h2(a: usize) -> Result<usize> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {a} < 2")));
    }
    Ok(2 * (2 * a - 1) / 3)
}

/// Known `β(Q_k)`: exact for `k ≤ 10`, best known upper bounds for `11..=17`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypercubeValue {
    pub k: usize,
    pub value: usize,
    pub exact: bool,
}

const HYPERCUBE_TABLE: [usize; 17] = [1, 2, 3, 4, 4, 5, 6, 6, 7, 7, 8, 8, 8, 9, 9, 10, 10];

pub fn hypercube_reference(k: usize) -> Result<HypercubeValue> {
    if !(1..=HYPERCUBE_TABLE.len()).contains(&k) {
        return Err(Error::InvalidParameter(format!("no reference value for k = {k}")));
    }
    Ok(HypercubeValue {
        k,
        value: HYPERCUBE_TABLE[k - 1],
        exact: k <= 10,
    })
}

/// How a verdict was (or is to be) obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    /// Every vertex; refused above `cap` vertices.
    Exhaustive { cap: u64 },
    /// `pairs` uniformly random distinct vertex pairs.
    Sampled { pairs: u64, seed: RngSeed },
}

impl Default for VerifyMode {
    fn default() -> Self {
        VerifyMode::Exhaustive {
            cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verification {
    Exhaustive,
    Sampled { pairs: u64, seed: RngSeed },
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Verdict {
    Resolving,
    /// Two distinct vertices with identical signatures. In exhaustive mode
    /// this is the lexicographically smallest such pair.
    Counterexample { u: String, v: String },
    /// No collision among the sampled pairs; not a proof.
    SampledPass { pairs: u64 },
}

/// Resolving-set candidate over a Hamming space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HammingResolvingSet {
    pub space: HammingSpace,
    pub vertices: Vec<String>,
    pub verification: Verification,
}

impl HammingResolvingSet {
    /// Validate labels against the space; the result is unverified.
    pub fn new(space: HammingSpace, vertices: Vec<String>) -> Result<Self> {
        for v in &vertices {
            space.encode(v)?;
        }
        Ok(HammingResolvingSet {
            space,
            vertices,
            verification: Verification::Unverified,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn words(&self) -> Vec<Vec<u8>> {
        self.vertices
            .iter()
            .map(|v| self.space.encode(v).expect("validated on construction"))
            .collect()
    }

    /// Distances from `label` to each member, in order.
    pub fn signature(&self, label: &str) -> Result<Vec<usize>> {
        let w = self.space.encode(label)?;
        Ok(self.words().iter().map(|r| word_distance(&w, r)).collect())
    }

    /// Verify and record how, returning the verdict alongside.
    pub fn verified(mut self, mode: VerifyMode) -> Result<(Self, Verdict)> {
        let verdict = verify_hamming_resolving(&self, mode)?;
        self.verification = match (&verdict, mode) {
            (Verdict::Resolving, _) => Verification::Exhaustive,
            (Verdict::SampledPass { .. }, VerifyMode::Sampled { pairs, seed }) => {
                Verification::Sampled { pairs, seed }
            }
            _ => Verification::Unverified,
        };
        Ok((self, verdict))
    }

    /// Plain-text form: a `k=… a=… alphabet=…` header, then one label per line.
    pub fn to_text(&self) -> String {
        let alphabet: String = self.space.alphabet.iter().collect();
        let mut out = format!("k={} a={} alphabet={}\n", self.space.k, self.space.a(), alphabet);
        for v in &self.vertices {
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let bad = |msg: String| Error::Parse { line: hline, msg };
        let (mut k, mut a, mut alphabet) = (None, None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {field:?}")))?;
            match key {
                "k" => k = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "a" => a = Some(value.parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "alphabet" => alphabet = Some(value.chars().collect::<Vec<char>>()),
                other => return Err(bad(format!("unknown header field {other:?}"))),
            }
        }
        let k = k.ok_or_else(|| bad("header lacks k".into()))?;
        let space = match (a, alphabet) {
            (Some(a), Some(sym)) if sym.len() != a => {
                return Err(bad(format!("alphabet has {} symbols, a = {a}", sym.len())))
            }
            (_, Some(sym)) => HammingSpace::with_alphabet(k, sym),
            (Some(a), None) => HammingSpace::new(k, a),
            (None, None) => return Err(bad("header lacks a and alphabet".into())),
        }
        .map_err(|e| bad(e.to_string()))?;
        let mut vertices = Vec::new();
        for (line, label) in lines {
            space.encode(label).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            vertices.push(label.to_string());
        }
        Ok(HammingResolvingSet {
            space,
            vertices,
            verification: Verification::Unverified,
        })
    }
}

/// Check whether `set` resolves its space without materializing the graph.
pub fn verify_hamming_resolving(set: &HammingResolvingSet, mode: VerifyMode) -> Result<Verdict> {
    let words = set.words();
    match mode {
        VerifyMode::Exhaustive { cap } => {
            let total = set
                .space
                .vertex_count()
                .filter(|&n| n <= cap)
                .ok_or(Error::CapExceeded {
                    n: set.space.vertex_count().unwrap_or(u64::MAX) as usize,
                    cap: cap as usize,
                })?;
            Ok(match smallest_collision(&set.space, &words, total) {
                None => Verdict::Resolving,
                Some((u, v)) => Verdict::Counterexample {
                    u: set.space.decode(&set.space.word_at(u)),
                    v: set.space.decode(&set.space.word_at(v)),
                },
            })
        }
        VerifyMode::Sampled { pairs, seed } => {
            let mut rng = seed.rng();
            for _ in 0..pairs {
                let u = set.space.random_word(&mut rng);
                let v = loop {
                    let v = set.space.random_word(&mut rng);
                    if v != u {
                        break v;
                    }
                };
                if words.iter().all(|r| word_distance(&u, r) == word_distance(&v, r)) {
                    let (u, v) = if u < v { (u, v) } else { (v, u) };
                    return Ok(Verdict::Counterexample {
                        u: set.space.decode(&u),
                        v: set.space.decode(&v),
                    });
                }
            }
            Ok(Verdict::SampledPass { pairs })
        }
    }
}

/// Lexicographically smallest pair of vertex ranks with equal signatures.
fn smallest_collision(space: &HammingSpace, members: &[Vec<u8>], total: u64) -> Option<(u64, u64)> {
    if total < 2 {
        return None;
    }
    let width = members.len();
    if width == 0 {
        return Some((0, 1));
    }
    let n = total as usize;
    let mut sigs = vec![0u16; n * width];
    sigs.par_chunks_mut(width).enumerate().for_each(|(i, row)| {
        let w = space.word_at(i as u64);
        for (slot, r) in row.iter_mut().zip(members) {
            *slot = word_distance(&w, r) as u16;
        }
    });
    let sig = |i: usize| &sigs[i * width..(i + 1) * width];
    let mut order: Vec<usize> = (0..n).collect();
    order.par_sort_unstable_by(|&x, &y| sig(x).cmp(sig(y)).then(x.cmp(&y)));
    order
        .windows(2)
        .filter(|p| sig(p[0]) == sig(p[1]))
        .map(|p| (p[0] as u64, p[1] as u64))
        .min()
}

/// Strategy for picking the vertices added when lifting a resolving set to
/// one more position. [`augment_with`] enforces the size budget and
/// verification whatever the engine proposes.
pub trait AugmentEngine {
    /// Vertices of `target` to add to the lifted members `base`.
    fn additions(
        &self,
        source: &HammingResolvingSet,
        target: &HammingSpace,
        base: &[Vec<u8>],
        budget: usize,
        mode: VerifyMode,
    ) -> Result<Vec<Vec<u8>>>;
}

/// Greedy entropy engine. Candidates are `z·c` for `z` among the source
/// members and the all-first-symbol word, `c` over the alphabet. Each round
/// adds the candidate that most increases the entropy of the signature
/// partition (ties to the earliest candidate) until it is discrete.
#[derive(Debug, Clone, Copy)]
pub struct GreedyAugment {
    /// Vertices scored per round when the target is too large to enumerate.
    pub sample_vertices: usize,
}

impl Default for GreedyAugment {
    fn default() -> Self {
        GreedyAugment {
            sample_vertices: 100_000,
        }
    }
}

impl AugmentEngine for GreedyAugment {
    fn additions(
        &self,
        source: &HammingResolvingSet,
        target: &HammingSpace,
        base: &[Vec<u8>],
        budget: usize,
        mode: VerifyMode,
    ) -> Result<Vec<Vec<u8>>> {
        let points: Vec<Vec<u8>> = match (mode, target.vertex_count()) {
            (VerifyMode::Exhaustive { cap }, Some(n)) if n <= cap => {
                (0..n).map(|i| target.word_at(i)).collect()
            }
            (VerifyMode::Exhaustive { cap }, n) => {
                return Err(Error::CapExceeded {
                    n: n.unwrap_or(u64::MAX) as usize,
                    cap: cap as usize,
                })
            }
            (VerifyMode::Sampled { seed, .. }, _) => {
                let mut rng = seed.stream(1);
                let mut pts: Vec<Vec<u8>> =
                    (0..self.sample_vertices).map(|_| target.random_word(&mut rng)).collect();
                pts.sort_unstable();
                pts.dedup();
                pts
            }
        };

        let mut pool: Vec<Vec<u8>> = source.words();
        pool.push(vec![0; source.space.k()]);
        let mut candidates: Vec<Vec<u8>> = Vec::new();
        for z in &pool {
            for c in 0..target.a() as u8 {
                let mut w = z.clone();
                w.push(c);
                if !base.contains(&w) && !candidates.contains(&w) {
                    candidates.push(w);
                }
            }
        }

        let n = points.len();
        let range = target.k() + 1;
        let mut refiner = Refiner::new(n, range);
        let mut labels = vec![0u32; n];
        let mut scratch = vec![0u32; n];
        let mut classes = 1;
        for b in base {
            classes = refiner.refine(&labels.clone(), |i| word_distance(&points[i], b) as u32, &mut labels);
        }
        let mut added = Vec::new();
        while classes < n {
            if added.len() == budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let mut best: Option<(usize, f64, usize)> = None;
            for (ci, cand) in candidates.iter().enumerate() {
                if added.contains(cand) {
                    continue;
                }
                let k = refiner.refine(&labels, |i| word_distance(&points[i], cand) as u32, &mut scratch);
                let score = partition_entropy(&refiner.sizes, n);
                if best.is_none_or(|(_, s, _)| score > s + 1e-12) {
                    best = Some((ci, score, k));
                }
            }
            match best {
                Some((ci, _, k)) if k > classes => {
                    let cand = candidates[ci].clone();
                    let prev = labels.clone();
                    classes = refiner.refine(&prev, |i| word_distance(&points[i], &cand) as u32, &mut labels);
                    added.push(cand);
                }
                _ => return Err(Error::BudgetExceeded { budget }),
            }
        }
        Ok(added)
    }
}

fn partition_entropy(sizes: &[u32], total: usize) -> f64 {
    let n = total as f64;
    let weighted: f64 = sizes
        .iter()
        .filter(|&&c| c > 1)
        .map(|&c| c as f64 * (c as f64).log2())
        .sum();
    n.log2() - weighted / n
}

/// Lift a verified resolving set of `H_{k,a}` (size `s`) to a resolving set
/// of `H_{k+1,a}` of size at most `s + ⌊a/2⌋`, using [`GreedyAugment`].
pub fn augment(set: &HammingResolvingSet, mode: VerifyMode) -> Result<HammingResolvingSet> {
    augment_with(&GreedyAugment::default(), set, mode)
}

pub fn augment_with<E: AugmentEngine + ?Sized>(
    engine: &E,
    set: &HammingResolvingSet,
    mode: VerifyMode,
) -> Result<HammingResolvingSet> {
    if set.verification == Verification::Unverified {
        return Err(Error::Unverified);
    }
    let target = set.space.extended();
    let budget = set.space.a() / 2;
    let base: Vec<Vec<u8>> = set
        .words()
        .into_iter()
        .map(|mut w| {
            w.push(0);
            w
        })
        .collect();
    let added = engine.additions(set, &target, &base, budget, mode)?;
    if added.len() > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let vertices = base.iter().chain(&added).map(|w| target.decode(w)).collect();
    let lifted = HammingResolvingSet::new(target, vertices)?;
    let (lifted, verdict) = lifted.verified(mode)?;
    match verdict {
        Verdict::Counterexample { u, v } => Err(Error::InvalidParameter(format!(
            "augmented set fails to separate {u} and {v}"
        ))),
        _ => Ok(lifted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(k: usize, a: usize, labels: &[&str]) -> HammingResolvingSet {
        let space = HammingSpace::new(k, a).unwrap();
        HammingResolvingSet::new(space, labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance("000", "000").unwrap(), 0);
        assert_eq!(hamming_distance("010", "011").unwrap(), 1);
        assert_eq!(hamming_distance("ACGT", "AGGA").unwrap(), 2);
        assert_eq!(hamming_distance("AC", "ACG"), Err(Error::LengthMismatch(2, 3)));
        let space = HammingSpace::new(3, 2).unwrap();
        assert_eq!(space.distance("012", "000"), Err(Error::ForeignSymbol('2')));
    }

    #[test]
    fn ranks_round_trip() {
        let space = HammingSpace::new(3, 3).unwrap();
        for i in 0..27 {
            assert_eq!(space.rank(&space.word_at(i)), i);
        }
        assert_eq!(space.decode(&space.word_at(5)), "012");
    }

    #[test]
    fn beta_h2_values() {
        assert_eq!(beta_h2(2).unwrap(), 2);
        assert_eq!(beta_h2(3).unwrap(), 3);
        assert_eq!(beta_h2(5).unwrap(), 6);
        assert!(beta_h2(1).is_err());
    }

    #[test]
    fn reference_table() {
        assert_eq!(hypercube_reference(4).unwrap(), HypercubeValue { k: 4, value: 4, exact: true });
        assert_eq!(hypercube_reference(10).unwrap().value, 7);
        assert_eq!(
            hypercube_reference(17).unwrap(),
            HypercubeValue { k: 17, value: 10, exact: false }
        );
        assert!(hypercube_reference(0).is_err());
        assert!(hypercube_reference(18).is_err());
    }

    #[test]
    fn cube_basis_verifies() {
        let r = set(3, 2, &["000", "011", "101"]);
        assert_eq!(verify_hamming_resolving(&r, VerifyMode::default()).unwrap(), Verdict::Resolving);
    }

    #[test]
    fn symmetric_pair_is_reported() {
        let r = set(2, 2, &["00"]);
        assert_eq!(
            verify_hamming_resolving(&r, VerifyMode::default()).unwrap(),
            Verdict::Counterexample { u: "01".into(), v: "10".into() }
        );
    }

    #[test]
    fn full_vertex_set_resolves() {
        let all: Vec<String> = (0..9).map(|i| {
            let s = HammingSpace::new(2, 3).unwrap();
            s.decode(&s.word_at(i))
        }).collect();
        let refs: Vec<&str> = all.iter().map(String::as_str).collect();
        assert_eq!(
            verify_hamming_resolving(&set(2, 3, &refs), VerifyMode::default()).unwrap(),
            Verdict::Resolving
        );
    }

    #[test]
    fn exhaustive_cap_refuses() {
        let r = set(8, 20, &[]);
        let space = HammingSpace::new(8, 20);
        assert!(space.is_ok());
        assert!(matches!(
            verify_hamming_resolving(&r, VerifyMode::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sampled_modes() {
        let r = set(3, 2, &["000", "011", "101"]);
        let mode = VerifyMode::Sampled { pairs: 500, seed: RngSeed(1) };
        assert_eq!(verify_hamming_resolving(&r, mode).unwrap(), Verdict::SampledPass { pairs: 500 });
        let bad = set(3, 2, &["000"]);
        assert!(matches!(
            verify_hamming_resolving(&bad, mode).unwrap(),
            Verdict::Counterexample { .. }
        ));
    }

    #[test]
    fn augment_edge_to_square() {
        let (r, _) = set(1, 2, &["0"]).verified(VerifyMode::default()).unwrap();
        let lifted = augment(&r, VerifyMode::default()).unwrap();
        assert_eq!(lifted.len(), 2);
        assert_eq!(lifted.verification, Verification::Exhaustive);
    }

    #[test]
    fn augment_requires_verified_input() {
        assert_eq!(augment(&set(1, 2, &["0"]), VerifyMode::default()), Err(Error::Unverified));
    }

    #[test]
    fn set_file_round_trip() {
        let r = set(3, 2, &["000", "011", "101"]);
        let text = r.to_text();
        assert_eq!(text, "k=3 a=2 alphabet=01\n000\n011\n101\n");
        assert_eq!(HammingResolvingSet::from_text(&text).unwrap(), r);
        let dna = HammingResolvingSet::from_text("# dna\nk=2 alphabet=ACGT\nAC\nGT\n").unwrap();
        assert_eq!(dna.space.a(), 4);
        let err = HammingResolvingSet::from_text("k=2 a=2\n00\n0x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
