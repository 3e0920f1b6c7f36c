//! Textbook RSA over caller-supplied primes.
//!
//! Key generation follows the classical five steps: choose primes p and q,
//! form n = p*q, form phi = (p-1)(q-1), pick e with 1 < e < phi and
//! gcd(e, phi) = 1, then take d as the inverse of e modulo phi. Values
//! encrypt as `c = m^e mod n` and decrypt as `m = c^d mod n`.
//!
//! Text mode encodes each letter by its one-based alphabet value (B = 2) and
//! encrypts the values independently. That makes it a glorified substitution
//! cipher - identical plaintext letters produce identical ciphertext values,
//! and tiny moduli can be factored outright (see [`crate::cryptanalysis`]) -
//! but it is the classroom construction this library reproduces, and the
//! weakness is the interesting part.
//!
//! No padding, no block encoding, no signatures: values and single letters
//! only. All arithmetic is arbitrary precision.

use crate::numtheory;
use crate::textcodec::{index_to_letter, letter_to_index, Indexing, NormalizedText};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RsaError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("p and q must be distinct primes")]
    DistinctPrimesRequired,
    #[error("invalid public exponent {e}: {reason}")]
    InvalidPublicExponent { e: BigUint, reason: String },
    #[error("invalid private exponent {d}: e*d mod phi must be 1")]
    InvalidPrivateExponent { d: BigUint },
    #[error("message value {m} is not less than the modulus {n}")]
    MessageOutOfRange { m: BigUint, n: BigUint },
    #[error("letter '{letter}' has value {value}, which is not less than the modulus {n}")]
    LetterOutOfRange { letter: char, value: u8, n: BigUint },
    #[error("decrypted value {0} is not a letter value in 1..=26")]
    DecodedValueNotALetter(BigUint),
    #[error("malformed key file: {0}")]
    MalformedKeyFile(String),
    #[error("malformed ciphertext stream: {0}")]
    MalformedCiphertext(String),
}

impl RsaError {
    pub fn name(&self) -> &'static str {
        match self {
            RsaError::NotPrime(_) => "NotPrime",
            RsaError::DistinctPrimesRequired => "DistinctPrimesRequired",
            RsaError::InvalidPublicExponent { .. } => "InvalidPublicExponent",
            RsaError::InvalidPrivateExponent { .. } => "InvalidPrivateExponent",
            RsaError::MessageOutOfRange { .. } => "MessageOutOfRange",
            RsaError::LetterOutOfRange { .. } => "LetterOutOfRange",
            RsaError::DecodedValueNotALetter(_) => "DecodedValueNotALetter",
            RsaError::MalformedKeyFile(_) => "MalformedKeyFile",
            RsaError::MalformedCiphertext(_) => "MalformedCiphertext",
        }
    }
}

/// The published half: (e, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPublicKey {
    pub e: BigUint,
    pub n: BigUint,
}

/// The held half: (d, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPrivateKey {
    pub d: BigUint,
    pub n: BigUint,
}

/// Full record of a key generation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaKeyPair {
    pub p: BigUint,
    pub q: BigUint,
    pub n: BigUint,
    pub phi: BigUint,
    pub public: RsaPublicKey,
    pub private: RsaPrivateKey,
}

/// Generate a keypair from two distinct primes.
///
/// When `e` is omitted the smallest valid exponent above 1 is chosen; when
/// `d` is omitted it is the least positive inverse of e mod phi. Supplied
/// values are validated instead: any d in the right residue class works, so
/// alternative exponents from the same class are accepted.
pub fn generate_keypair(
    p: &BigUint,
    q: &BigUint,
    e: Option<&BigUint>,
    d: Option<&BigUint>,
) -> Result<RsaKeyPair, RsaError> {
    for candidate in [p, q] {
        if !numtheory::is_prime(candidate) {
            return Err(RsaError::NotPrime(candidate.clone()));
        }
    }
    if p == q {
        return Err(RsaError::DistinctPrimesRequired);
    }
    let n = p * q;
    let phi = numtheory::totient_semiprime(p, q).expect("validated distinct primes");

    let one = BigUint::one();
    let e = match e {
        Some(e) => {
            if *e <= one || *e >= phi {
                return Err(RsaError::InvalidPublicExponent {
                    e: e.clone(),
                    reason: format!("must satisfy 1 < e < {phi}"),
                });
            }
            if !numtheory::are_coprime(e, &phi) {
                return Err(RsaError::InvalidPublicExponent {
                    e: e.clone(),
                    reason: format!("gcd(e, {phi}) must be 1"),
                });
            }
            e.clone()
        }
        None => smallest_public_exponent(&phi)?,
    };

    let d = match d {
        Some(d) => {
            if (d * &e) % &phi != one {
                return Err(RsaError::InvalidPrivateExponent { d: d.clone() });
            }
            d.clone()
        }
        None => numtheory::mod_inverse(&e, &phi).expect("e was checked coprime to phi"),
    };

    let pair = RsaKeyPair {
        p: p.clone(),
        q: q.clone(),
        n: n.clone(),
        phi,
        public: RsaPublicKey { e, n: n.clone() },
        private: RsaPrivateKey { d, n },
    };
    debug_assert!(pair.invariants_hold());
    Ok(pair)
}

fn smallest_public_exponent(phi: &BigUint) -> Result<BigUint, RsaError> {
    let mut e = BigUint::from(2u32);
    while e < *phi {
        if numtheory::are_coprime(&e, phi) {
            return Ok(e);
        }
        e += BigUint::one();
    }
    Err(RsaError::InvalidPublicExponent {
        e: BigUint::from(2u32),
        reason: format!("no exponent satisfies 1 < e < {phi}"),
    })
}

impl RsaKeyPair {
    /// All structural key invariants: n = p*q, phi = (p-1)(q-1), e in range
    /// and coprime to phi, and e*d ≡ 1 (mod phi).
    pub fn invariants_hold(&self) -> bool {
        let one = BigUint::one();
        self.n == &self.p * &self.q
            && self.phi == (&self.p - &one) * (&self.q - &one)
            && self.public.e > one
            && self.public.e < self.phi
            && numtheory::are_coprime(&self.public.e, &self.phi)
            && (&self.public.e * &self.private.d) % &self.phi == one
            && self.public.n == self.n
            && self.private.n == self.n
    }
}

/// `m^e mod n` for a value already in 0..n.
pub fn encrypt_value(m: &BigUint, key: &RsaPublicKey) -> Result<BigUint, RsaError> {
    if *m >= key.n {
        return Err(RsaError::MessageOutOfRange {
            m: m.clone(),
            n: key.n.clone(),
        });
    }
    Ok(numtheory::mod_pow(m, &key.e, &key.n).expect("modulus of a valid key is nonzero"))
}

/// `c^d mod n` for a value already in 0..n.
pub fn decrypt_value(c: &BigUint, key: &RsaPrivateKey) -> Result<BigUint, RsaError> {
    if *c >= key.n {
        return Err(RsaError::MessageOutOfRange {
            m: c.clone(),
            n: key.n.clone(),
        });
    }
    Ok(numtheory::mod_pow(c, &key.d, &key.n).expect("modulus of a valid key is nonzero"))
}

/// Encrypt text letter by letter through the one-based letter values.
///
/// Every letter value must be below n; with a toy modulus like 14 only A..M
/// are encryptable, and larger letters are rejected rather than wrapped,
/// because wrapped residues would decrypt to the wrong letter.
pub fn encrypt_text(plain: &NormalizedText, key: &RsaPublicKey) -> Result<Vec<BigUint>, RsaError> {
    plain
        .letters()
        .map(|letter| {
            let value = letter_to_index(letter, Indexing::OneBased)
                .expect("normalized text contains only A-Z");
            let m = BigUint::from(value);
            if m >= key.n {
                return Err(RsaError::LetterOutOfRange {
                    letter,
                    value,
                    n: key.n.clone(),
                });
            }
            encrypt_value(&m, key)
        })
        .collect()
}

/// Decrypt a sequence of values back to text through the one-based codec.
pub fn decrypt_text(cipher: &[BigUint], key: &RsaPrivateKey) -> Result<NormalizedText, RsaError> {
    let letters = cipher
        .iter()
        .map(|c| {
            let value = decrypt_value(c, key)?;
            // Strict 1..=26 here: the encoder never produces the residue 0,
            // so the usual 0 -> Z alias would mask a wrong key.
            match value.to_u64().filter(|v| (1..=26).contains(v)) {
                Some(v) => Ok(index_to_letter(v as u8, Indexing::OneBased).unwrap()),
                None => Err(RsaError::DecodedValueNotALetter(value)),
            }
        })
        .collect::<Result<String, RsaError>>()?;
    Ok(NormalizedText::from_letters(letters))
}

const PUBLIC_TAG: &str = "rsa-public";
const PRIVATE_TAG: &str = "rsa-private";

impl RsaPublicKey {
    /// Key file contents: `rsa-public <e> <n>` with a trailing newline.
    pub fn to_key_file(&self) -> String {
        format!("{PUBLIC_TAG} {} {}\n", self.e, self.n)
    }
}

impl RsaPrivateKey {
    /// Key file contents: `rsa-private <d> <n>` with a trailing newline.
    pub fn to_key_file(&self) -> String {
        format!("{PRIVATE_TAG} {} {}\n", self.d, self.n)
    }
}

/// Either kind of key, as read from a key file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsaKeyFile {
    Public(RsaPublicKey),
    Private(RsaPrivateKey),
}

impl RsaKeyFile {
    /// Parse the line-oriented key format written by
    /// [`RsaPublicKey::to_key_file`] / [`RsaPrivateKey::to_key_file`].
    pub fn parse(contents: &str) -> Result<RsaKeyFile, RsaError> {
        let line = contents.trim_end_matches('\n');
        if line.contains('\n') {
            return Err(RsaError::MalformedKeyFile(
                "expected a single line".to_string(),
            ));
        }
        let fields: Vec<&str> = line.split(' ').collect();
        let [tag, first, second] = fields.as_slice() else {
            return Err(RsaError::MalformedKeyFile(format!(
                "expected '<tag> <exponent> <modulus>', got {} field(s)",
                fields.len()
            )));
        };
        let parse_int = |text: &str, what: &str| {
            text.parse::<BigUint>()
                .map_err(|_| RsaError::MalformedKeyFile(format!("{what} '{text}' is not a decimal integer")))
        };
        match *tag {
            PUBLIC_TAG => Ok(RsaKeyFile::Public(RsaPublicKey {
                e: parse_int(first, "exponent")?,
                n: parse_int(second, "modulus")?,
            })),
            PRIVATE_TAG => Ok(RsaKeyFile::Private(RsaPrivateKey {
                d: parse_int(first, "exponent")?,
                n: parse_int(second, "modulus")?,
            })),
            other => Err(RsaError::MalformedKeyFile(format!(
                "unknown key tag '{other}'"
            ))),
        }
    }
}

/// Ciphertext stream format: decimal values separated by single spaces.
pub fn format_ciphertext(values: &[BigUint]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse the stream format produced by [`format_ciphertext`]. Any whitespace
/// separation is accepted on input.
pub fn parse_ciphertext(text: &str) -> Result<Vec<BigUint>, RsaError> {
    text.split_whitespace()
        .map(|token| {
            token.parse::<BigUint>().map_err(|_| {
                RsaError::MalformedCiphertext(format!("'{token}' is not a decimal integer"))
            })
        })
        .collect()
}

impl fmt::Display for RsaPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.e, self.n)
    }
}

impl fmt::Display for RsaPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.n)
    }
}
