//! Letter/integer mapping and text normalization.
//!
//! The classical sources this library reproduces disagree about whether the
//! alphabet starts counting at 0 or at 1, so both conventions live here and
//! every cipher module states which one it uses. Shift arithmetic works on
//! residues mod 26 either way; only the intermediate values differ.

use std::fmt;
use thiserror::Error;

/// Number of letters in the alphabet.
pub const ALPHABET_LEN: u8 = 26;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("'{0}' is not an uppercase Latin letter")]
    InvalidLetter(char),
    #[error("value {value} is not a letter position under {indexing:?} indexing")]
    InvalidIndex { value: i64, indexing: Indexing },
}

impl CodecError {
    pub fn name(&self) -> &'static str {
        match self {
            CodecError::InvalidLetter(_) => "InvalidLetter",
            CodecError::InvalidIndex { .. } => "InvalidIndex",
        }
    }
}

/// Which integer the letter A maps to.
///
/// `ZeroBased` maps A..Z onto 0..=25, `OneBased` onto 1..=26. Decoding under
/// `OneBased` additionally accepts 0 as Z: residues mod 26 land in 0..=25,
/// and 26 ≡ 0, so the cyclic "letter after Z is A" rule forces that alias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Indexing {
    ZeroBased,
    OneBased,
}

/// An uppercase, letters-only string (possibly empty).
///
/// This is the only text type the ciphers operate on; build one with
/// [`normalize`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalizedText(String);

impl NormalizedText {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterate over the letters as `char`s.
    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.0.chars()
    }

    /// The underlying ASCII bytes (each in `b'A'..=b'Z'`).
    pub fn bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Build from letters known to be uppercase A-Z.
    ///
    /// Internal constructor for cipher output paths; debug builds verify the
    /// invariant.
    pub(crate) fn from_letters(letters: String) -> Self {
        debug_assert!(letters.bytes().all(|b| b.is_ascii_uppercase()));
        NormalizedText(letters)
    }
}

impl fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<NormalizedText> for String {
    fn from(t: NormalizedText) -> String {
        t.0
    }
}

/// Uppercase ASCII letters and drop everything else, preserving order.
///
/// An empty result is legal; the ciphers treat it as the empty message.
pub fn normalize(text: &str) -> NormalizedText {
    NormalizedText(
        text.chars()
            .filter(char::is_ascii_alphabetic)
            .map(|c| c.to_ascii_uppercase())
            .collect(),
    )
}

/// Position of an uppercase letter under the given convention.
pub fn letter_to_index(letter: char, indexing: Indexing) -> Result<u8, CodecError> {
    if !letter.is_ascii_uppercase() {
        return Err(CodecError::InvalidLetter(letter));
    }
    let zero_based = letter as u8 - b'A';
    Ok(match indexing {
        Indexing::ZeroBased => zero_based,
        Indexing::OneBased => zero_based + 1,
    })
}

/// Inverse of [`letter_to_index`] on its valid range.
///
/// Valid values are 0..=25 for `ZeroBased` and 1..=26 for `OneBased`; under
/// `OneBased` the value 0 also decodes, to Z (the residue of 26 mod 26).
pub fn index_to_letter(value: u8, indexing: Indexing) -> Result<char, CodecError> {
    let zero_based = match (indexing, value) {
        (Indexing::ZeroBased, 0..=25) => value,
        (Indexing::OneBased, 1..=26) => value - 1,
        (Indexing::OneBased, 0) => 25, // 26 ≡ 0 (mod 26) decodes to Z
        _ => {
            return Err(CodecError::InvalidIndex {
                value: i64::from(value),
                indexing,
            })
        }
    };
    Ok((b'A' + zero_based) as char)
}
