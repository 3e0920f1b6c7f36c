//! The fixed-shift substitution cipher.
//!
//! Encryption maps each letter value m to `(m + k) mod 26`, decryption to
//! `(m - k) mod 26`. Letter values are one-based (A=1 .. Z=26) so the trace
//! output reproduces the classical worked derivations; the residue 0 decodes
//! to Z, which is how the cycle "the letter after Z is A" falls out of the
//! arithmetic. The letter-to-letter mapping is identical to the zero-based
//! formulation, so ciphertexts are unaffected by the convention.

use crate::textcodec::{index_to_letter, letter_to_index, Indexing, NormalizedText, ALPHABET_LEN};
use std::fmt;

/// A shift amount, stored reduced to 0..=25.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaesarKey(u8);

impl CaesarKey {
    /// Any integer shift; values outside 0..=25 (including negatives) are
    /// reduced mod 26, since the cipher arithmetic only sees residues.
    pub fn new(shift: i64) -> CaesarKey {
        CaesarKey(shift.rem_euclid(i64::from(ALPHABET_LEN)) as u8)
    }

    pub fn shift(self) -> u8 {
        self.0
    }
}

impl From<i64> for CaesarKey {
    fn from(shift: i64) -> CaesarKey {
        CaesarKey::new(shift)
    }
}

/// One letter of a Caesar derivation: the input letter and its one-based
/// value, and the residue `(value ± k) mod 26` with the letter it decodes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaesarTraceStep {
    pub input: char,
    pub input_value: u8,
    pub output_value: u8,
    pub output: char,
}

impl fmt::Display for CaesarTraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} {}",
            self.input, self.input_value, self.output_value, self.output
        )
    }
}

fn shift_letter(letter: char, amount: u8) -> CaesarTraceStep {
    let input_value = letter_to_index(letter, Indexing::OneBased)
        .expect("normalized text contains only A-Z");
    let output_value = (input_value + amount) % ALPHABET_LEN;
    let output = index_to_letter(output_value, Indexing::OneBased)
        .expect("residues 0..=25 always decode one-based");
    CaesarTraceStep {
        input: letter,
        input_value,
        output_value,
        output,
    }
}

/// Encrypt: each letter independently becomes `(m + k) mod 26`.
pub fn encrypt(plain: &NormalizedText, key: CaesarKey) -> NormalizedText {
    NormalizedText::from_letters(
        plain
            .letters()
            .map(|c| shift_letter(c, key.shift()).output)
            .collect(),
    )
}

/// Decrypt: exact inverse of [`encrypt`] with the same key.
pub fn decrypt(cipher: &NormalizedText, key: CaesarKey) -> NormalizedText {
    let inverse = (ALPHABET_LEN - key.shift()) % ALPHABET_LEN;
    NormalizedText::from_letters(
        cipher
            .letters()
            .map(|c| shift_letter(c, inverse).output)
            .collect(),
    )
}

/// Per-letter derivation of [`encrypt`].
pub fn encrypt_trace(plain: &NormalizedText, key: CaesarKey) -> Vec<CaesarTraceStep> {
    plain.letters().map(|c| shift_letter(c, key.shift())).collect()
}

/// Per-letter derivation of [`decrypt`].
pub fn decrypt_trace(cipher: &NormalizedText, key: CaesarKey) -> Vec<CaesarTraceStep> {
    let inverse = (ALPHABET_LEN - key.shift()) % ALPHABET_LEN;
    cipher.letters().map(|c| shift_letter(c, inverse)).collect()
}
