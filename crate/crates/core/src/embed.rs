//! Sequence embedding through resolving sets of Hamming graphs.
//!
//! Each k-mer of a sequence is a vertex of `H_{k,a}`; its feature vector is
//! the list of Hamming distances to the members of a resolving set `R`, so
//! distinct k-mers always get distinct vectors in `ℤ^{|R|}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{HammingResolvingSet, HammingSpace, Verification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphabetName {
    Dna,
    Protein,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceAlphabet {
    pub name: AlphabetName,
    pub symbols: Vec<char>,
}

/// The 20 standard amino acids by one-letter code, alphabetically.
pub const PROTEIN_SYMBOLS: &str = "ACDEFGHIKLMNPQRSTVWY";

impl SequenceAlphabet {
    pub fn dna() -> Self {
        SequenceAlphabet {
            name: AlphabetName::Dna,
            symbols: "ACGT".chars().collect(),
        }
    }

    pub fn protein() -> Self {
        SequenceAlphabet {
            name: AlphabetName::Protein,
            symbols: PROTEIN_SYMBOLS.chars().collect(),
        }
    }

    pub fn custom(symbols: &str) -> Result<Self> {
        let alphabet = SequenceAlphabet {
            name: AlphabetName::Custom,
            symbols: symbols.chars().collect(),
        };
        alphabet.space(1)?;
        Ok(alphabet)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "dna" => Ok(Self::dna()),
            "protein" => Ok(Self::protein()),
            other => Self::custom(other),
        }
    }

    pub fn a(&self) -> usize {
        self.symbols.len()
    }

    pub fn index_of(&self, c: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .ok_or(Error::ForeignSymbol(c))
    }

    /// `H_{k,a}` labelled with this alphabet.
    pub fn space(&self, k: usize) -> Result<HammingSpace> {
        HammingSpace::with_alphabet(k, self.symbols.clone())
    }
}

/// Sliding windows of length `k`, stride 1.
pub fn kmers(sequence: &str, k: usize, alphabet: &SequenceAlphabet) -> Result<Vec<String>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let chars: Vec<char> = sequence.chars().collect();
    for &c in &chars {
        alphabet.index_of(c)?;
    }
    if chars.len() < k {
        return Err(Error::ShortSequence { len: chars.len(), k });
    }
    Ok(chars.windows(k).map(|w| w.iter().collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddedSequence {
    pub source: String,
    pub k: usize,
    /// One vector per k-mer, in sequence order.
    pub vectors: Vec<Vec<usize>>,
}

pub fn embed_sequence(
    source: &str,
    sequence: &str,
    k: usize,
    alphabet: &SequenceAlphabet,
    set: &HammingResolvingSet,
) -> Result<EmbeddedSequence> {
    let space = alphabet.space(k)?;
    if space != set.space {
        return Err(Error::SpaceMismatch {
            expected_k: set.space.k(),
            expected_a: set.space.a(),
            k,
            a: alphabet.a(),
        });
    }
    if set.verification == Verification::Unverified {
        return Err(Error::Unverified);
    }
    let vectors = kmers(sequence, k, alphabet)?
        .iter()
        .map(|m| set.signature(m))
        .collect::<Result<_>>()?;
    Ok(EmbeddedSequence {
        source: source.to_string(),
        k,
        vectors,
    })
}

/// Records from FASTA-like text. Without any `>` header the whole text is
/// one record named `sequence`. Whitespace inside sequences is dropped.
pub fn parse_records(text: &str) -> Vec<(String, String)> {
    let mut records: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(header) = line.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            records.push((id, String::new()));
        } else if !line.is_empty() {
            if records.is_empty() {
                records.push(("sequence".to_string(), String::new()));
            }
            let seq = &mut records.last_mut().expect("non-empty").1;
            seq.extend(line.chars().filter(|c| !c.is_whitespace()));
        }
    }
    records
}

/// One row per k-mer: `source,offset,<one column per member of R>`.
pub fn to_csv(set: &HammingResolvingSet, embedded: &[EmbeddedSequence]) -> String {
    let mut out = String::from("source,offset");
    for v in &set.vertices {
        out.push(',');
        out.push_str(v);
    }
    out.push('\n');
    for e in embedded {
        for (offset, vec) in e.vectors.iter().enumerate() {
            out.push_str(&e.source);
            out.push(',');
            out.push_str(&offset.to_string());
            for x in vec {
                out.push(',');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
    }
    out
}
