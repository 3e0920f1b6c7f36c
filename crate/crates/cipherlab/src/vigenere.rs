//! The repeating-keyword polyalphabetic cipher.
//!
//! Letter values are zero-based (A=0 .. Z=25). Encryption adds the keyword
//! letter's value position by position, `c = (p + k) mod 26`; decryption adds
//! the complement, `p = (c + (26 - k)) mod 26`, which is the same residue as
//! plain subtraction. The cipher has two equivalent presentations - the
//! modular formula and a 26x26 lookup square - and both are implemented so
//! each can serve as the other's oracle.

use crate::textcodec::{index_to_letter, letter_to_index, normalize, Indexing, NormalizedText,
                       ALPHABET_LEN};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VigenereError {
    #[error("the key must contain at least one letter")]
    EmptyKey,
}

impl VigenereError {
    pub fn name(&self) -> &'static str {
        match self {
            VigenereError::EmptyKey => "EmptyKey",
        }
    }
}

/// A nonempty keyword of letters.
///
/// Construction normalizes the input (uppercases, drops non-letters); a key
/// with no letters at all is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VigenereKey(NormalizedText);

impl VigenereKey {
    pub fn new(keyword: &str) -> Result<VigenereKey, VigenereError> {
        let normalized = normalize(keyword);
        if normalized.is_empty() {
            return Err(VigenereError::EmptyKey);
        }
        Ok(VigenereKey(normalized))
    }

    /// Build from per-position zero-based shifts. Used by the column attack.
    pub fn from_shifts(shifts: &[u8]) -> Result<VigenereKey, VigenereError> {
        if shifts.is_empty() {
            return Err(VigenereError::EmptyKey);
        }
        let word: String = shifts
            .iter()
            .map(|&s| index_to_letter(s % ALPHABET_LEN, Indexing::ZeroBased).unwrap())
            .collect();
        Ok(VigenereKey(NormalizedText::from_letters(word)))
    }

    pub fn word(&self) -> &NormalizedText {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one letter
    }

    /// Zero-based shift values of the keyword letters.
    fn shifts(&self) -> Vec<u8> {
        self.0.bytes().iter().map(|b| b - b'A').collect()
    }
}

impl fmt::Display for VigenereKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The keyword repeated cyclically and truncated to exactly `length` letters.
pub fn expand_key(key: &VigenereKey, length: usize) -> NormalizedText {
    let word = key.word().bytes();
    let expanded: String = (0..length).map(|i| word[i % word.len()] as char).collect();
    NormalizedText::from_letters(expanded)
}

/// One position of a keyword-cipher derivation. `sum` is the raw value before
/// reduction (`p + k` when encrypting, `c + (26 - k)` when decrypting), kept
/// so the wraparound rows are visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VigenereTraceStep {
    pub key_letter: char,
    pub key_value: u8,
    pub input: char,
    pub input_value: u8,
    pub sum: u8,
    pub output_value: u8,
    pub output: char,
}

impl fmt::Display for VigenereTraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) + {}({}) -> {} -> {} {}",
            self.input,
            self.input_value,
            self.key_letter,
            self.key_value,
            self.sum,
            self.output_value,
            self.output
        )
    }
}

fn combine(text: &NormalizedText, key: &VigenereKey, decrypting: bool) -> Vec<VigenereTraceStep> {
    let shifts = key.shifts();
    let word = key.word().bytes();
    text.letters()
        .enumerate()
        .map(|(i, letter)| {
            let input_value = letter_to_index(letter, Indexing::ZeroBased)
                .expect("normalized text contains only A-Z");
            let k = shifts[i % shifts.len()];
            let addend = if decrypting { ALPHABET_LEN - k } else { k };
            let sum = input_value + addend;
            let output_value = sum % ALPHABET_LEN;
            VigenereTraceStep {
                key_letter: word[i % word.len()] as char,
                key_value: k,
                input: letter,
                input_value,
                sum,
                output_value,
                output: index_to_letter(output_value, Indexing::ZeroBased).unwrap(),
            }
        })
        .collect()
}

fn collect_output(steps: Vec<VigenereTraceStep>) -> NormalizedText {
    NormalizedText::from_letters(steps.into_iter().map(|s| s.output).collect())
}

/// Encrypt with `c = (p + k) mod 26` position by position.
pub fn encrypt(plain: &NormalizedText, key: &VigenereKey) -> NormalizedText {
    collect_output(combine(plain, key, false))
}

/// Decrypt with `p = (c + (26 - k)) mod 26`; exact inverse of [`encrypt`].
pub fn decrypt(cipher: &NormalizedText, key: &VigenereKey) -> NormalizedText {
    collect_output(combine(cipher, key, true))
}

/// Per-position derivation of [`encrypt`].
pub fn encrypt_trace(plain: &NormalizedText, key: &VigenereKey) -> Vec<VigenereTraceStep> {
    combine(plain, key, false)
}

/// Per-position derivation of [`decrypt`].
pub fn decrypt_trace(cipher: &NormalizedText, key: &VigenereKey) -> Vec<VigenereTraceStep> {
    combine(cipher, key, true)
}

/// The 26x26 lookup square: row i is the alphabet rotated left by i, so every
/// row and every column is a permutation of A-Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VigenereSquare {
    rows: [[u8; 26]; 26],
}

/// Build the square. Row A is the plain alphabet and each row is shifted one
/// letter relative to the row above it.
pub fn build_square() -> VigenereSquare {
    let mut rows = [[0u8; 26]; 26];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = b'A' + ((i + j) % 26) as u8;
        }
    }
    VigenereSquare { rows }
}

impl VigenereSquare {
    /// The cell at (row letter, column letter).
    pub fn lookup(&self, row: char, col: char) -> char {
        let r = letter_to_index(row, Indexing::ZeroBased).expect("row must be A-Z");
        let c = letter_to_index(col, Indexing::ZeroBased).expect("column must be A-Z");
        self.rows[r as usize][c as usize] as char
    }

    /// One row as a 26-letter string.
    pub fn row(&self, row: char) -> String {
        let r = letter_to_index(row, Indexing::ZeroBased).expect("row must be A-Z");
        self.rows[r as usize].iter().map(|&b| b as char).collect()
    }
}

impl fmt::Display for VigenereSquare {
    /// 26 lines of 26 letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for &b in row {
                write!(f, "{}", b as char)?;
            }
        }
        Ok(())
    }
}

/// Table-lookup encryption: start at the row of the plaintext letter and read
/// the cell under the key letter's column. Equals [`encrypt`] on every input.
pub fn square_encrypt(plain: &NormalizedText, key: &VigenereKey) -> NormalizedText {
    let square = build_square();
    let expanded = expand_key(key, plain.len());
    let out: String = plain
        .letters()
        .zip(expanded.letters())
        .map(|(p, k)| square.lookup(p, k))
        .collect();
    NormalizedText::from_letters(out)
}
