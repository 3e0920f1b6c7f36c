//! cipherlab: classical ciphers, textbook RSA, and the attacks that break them.
//!
//! Everything is built on a shared number-theory kernel and a single letter
//! codec, so the shift cipher, the keyword cipher, and per-letter RSA all
//! agree about what "the value of a letter" means.
//!
//! # Modules
//! - [`textcodec`] - letter/integer mapping and text normalization
//! - [`numtheory`] - gcd, extended Euclid, modular inverse/exponentiation, primality
//! - [`caesar`] - fixed-shift substitution cipher
//! - [`vigenere`] - repeating-keyword polyalphabetic cipher (formula and square forms)
//! - [`rsa`] - textbook RSA keygen, value mode, and per-letter text mode
//! - [`cryptanalysis`] - frequency attack, key-length estimation, column attack, factoring

pub mod caesar;
pub mod cryptanalysis;
pub mod numtheory;
pub mod rsa;
pub mod textcodec;
pub mod vigenere;

pub use caesar::CaesarKey;
pub use cryptanalysis::{CrackReport, FrequencyTable};
pub use rsa::{RsaKeyPair, RsaPrivateKey, RsaPublicKey};
pub use textcodec::{Indexing, NormalizedText};
pub use vigenere::{VigenereKey, VigenereSquare};

use thiserror::Error;

/// Umbrella error for callers that do not care which subsystem failed.
///
/// Each wrapped error keeps a stable short name (see [`Error::name`]) so
/// front ends can report which domain rule was violated.
#[derive(Error, Debug)]
pub enum Error {
    #[error(transparent)]
    Codec(#[from] textcodec::CodecError),
    #[error(transparent)]
    NumTheory(#[from] numtheory::NumTheoryError),
    #[error(transparent)]
    Vigenere(#[from] vigenere::VigenereError),
    #[error(transparent)]
    Rsa(#[from] rsa::RsaError),
    #[error(transparent)]
    Cryptanalysis(#[from] cryptanalysis::CryptanalysisError),
}

impl Error {
    /// Stable identifier of the underlying error variant, e.g. `"LetterOutOfRange"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Codec(e) => e.name(),
            Error::NumTheory(e) => e.name(),
            Error::Vigenere(e) => e.name(),
            Error::Rsa(e) => e.name(),
            Error::Cryptanalysis(e) => e.name(),
        }
    }
}
