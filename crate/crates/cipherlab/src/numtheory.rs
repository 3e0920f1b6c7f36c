//! The arithmetic kernel behind RSA.
//!
//! Euclidean remainder chains, the extended form with Bézout coefficients,
//! least-positive modular inverses, square-and-multiply exponentiation, the
//! totient of a product of two distinct primes, and deterministic primality
//! by trial division. Everything takes arbitrary-precision integers; trial
//! division keeps a machine-word fast path for desk-scale inputs.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("{e} has no inverse modulo {m} (gcd is {g}, not 1)")]
    NoInverse { e: BigUint, m: BigUint, g: BigUint },
    #[error("modulus must be {at_least} or greater, got {got}")]
    InvalidModulus { at_least: u8, got: BigUint },
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("the two primes must be distinct")]
    DistinctPrimesRequired,
}

impl NumTheoryError {
    pub fn name(&self) -> &'static str {
        match self {
            NumTheoryError::UndefinedGcd => "UndefinedGcd",
            NumTheoryError::NoInverse { .. } => "NoInverse",
            NumTheoryError::InvalidModulus { .. } => "InvalidModulus",
            NumTheoryError::NotPrime(_) => "NotPrime",
            NumTheoryError::DistinctPrimesRequired => "DistinctPrimesRequired",
        }
    }
}

/// One division step `dividend = divisor * quotient + remainder` of a
/// Euclidean remainder chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidStep {
    pub dividend: BigUint,
    pub divisor: BigUint,
    pub quotient: BigUint,
    pub remainder: BigUint,
}

/// Result of the extended Euclidean algorithm: `g = gcd(a, b)` together with
/// signed coefficients satisfying `a*x + b*y = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutTriple {
    pub g: BigUint,
    pub x: BigInt,
    pub y: BigInt,
}

/// Greatest common divisor by the Euclidean remainder chain.
pub fn gcd(a: &BigUint, b: &BigUint) -> Result<BigUint, NumTheoryError> {
    let (steps, g) = gcd_trace(a, b)?;
    drop(steps);
    Ok(g)
}

/// Like [`gcd`], but also returns every division step of the chain.
///
/// The last step has remainder 0 and its divisor is the gcd; when `b = 0`
/// the chain is empty and the gcd is `a` directly.
pub fn gcd_trace(a: &BigUint, b: &BigUint) -> Result<(Vec<EuclidStep>, BigUint), NumTheoryError> {
    if a.is_zero() && b.is_zero() {
        return Err(NumTheoryError::UndefinedGcd);
    }
    let mut steps = Vec::new();
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let quotient = &x / &y;
        let remainder = &x % &y;
        steps.push(EuclidStep {
            dividend: x.clone(),
            divisor: y.clone(),
            quotient,
            remainder: remainder.clone(),
        });
        x = y;
        y = remainder;
    }
    Ok((steps, x))
}

/// Extended Euclidean algorithm.
pub fn extended_gcd(a: &BigUint, b: &BigUint) -> Result<BezoutTriple, NumTheoryError> {
    if a.is_zero() && b.is_zero() {
        return Err(NumTheoryError::UndefinedGcd);
    }
    // Iterative form tracking (r, x, y) so that a*x + b*y = r at every step.
    let mut r0 = BigInt::from(a.clone());
    let mut r1 = BigInt::from(b.clone());
    let (mut x0, mut x1) = (BigInt::one(), BigInt::zero());
    let (mut y0, mut y1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let x2 = &x0 - &q * &x1;
        let y2 = &y0 - &q * &y1;
        r0 = std::mem::replace(&mut r1, r2);
        x0 = std::mem::replace(&mut x1, x2);
        y0 = std::mem::replace(&mut y1, y2);
    }
    let g = r0.to_biguint().expect("gcd of nonnegative inputs is nonnegative");
    Ok(BezoutTriple { g, x: x0, y: y0 })
}

/// Least positive `d` with `e * d ≡ 1 (mod m)`.
pub fn mod_inverse(e: &BigUint, m: &BigUint) -> Result<BigUint, NumTheoryError> {
    if m < &BigUint::from(2u32) {
        return Err(NumTheoryError::InvalidModulus {
            at_least: 2,
            got: m.clone(),
        });
    }
    let triple = extended_gcd(e, m)?;
    if !triple.g.is_one() {
        return Err(NumTheoryError::NoInverse {
            e: e.clone(),
            m: m.clone(),
            g: triple.g,
        });
    }
    let m_signed = BigInt::from(m.clone());
    let least = ((triple.x % &m_signed) + &m_signed) % &m_signed;
    Ok(least.to_biguint().expect("reduced representative is nonnegative"))
}

/// `base^exp mod m` by square-and-multiply, never materializing `base^exp`.
pub fn mod_pow(base: &BigUint, exp: &BigUint, m: &BigUint) -> Result<BigUint, NumTheoryError> {
    if m.is_zero() {
        return Err(NumTheoryError::InvalidModulus {
            at_least: 1,
            got: m.clone(),
        });
    }
    let mut result = BigUint::one() % m; // 0 when m = 1
    let mut square = base % m;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = &result * &square % m;
        }
        square = &square * &square % m;
    }
    Ok(result)
}

/// `(p - 1) * (q - 1)` for distinct primes p, q.
pub fn totient_semiprime(p: &BigUint, q: &BigUint) -> Result<BigUint, NumTheoryError> {
    for candidate in [p, q] {
        if !is_prime(candidate) {
            return Err(NumTheoryError::NotPrime(candidate.clone()));
        }
    }
    if p == q {
        // (p-1)(q-1) does not count the coprime residues of p^2.
        return Err(NumTheoryError::DistinctPrimesRequired);
    }
    let one = BigUint::one();
    Ok((p - &one) * (q - &one))
}

/// Deterministic primality by trial division up to the square root.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n),
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut i = 5u64;
    while i * i <= n {
        if n % i == 0 || n % (i + 2) == 0 {
            return false;
        }
        i += 6;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    // Only reached above u64::MAX; correct but impractical there, which is
    // the point of the factoring-based security argument.
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if (n % &two).is_zero() || (n % &three).is_zero() {
        return false;
    }
    let six = BigUint::from(6u32);
    let mut i = BigUint::from(5u32);
    while &i * &i <= *n {
        if (n % &i).is_zero() || (n % (&i + &two)).is_zero() {
            return false;
        }
        i += &six;
    }
    true
}

/// True iff `gcd(a, b) = 1`.
pub fn are_coprime(a: &BigUint, b: &BigUint) -> bool {
    match gcd(a, b) {
        Ok(g) => g.is_one(),
        Err(_) => false, // gcd(0, 0) is undefined, so certainly not 1
    }
}
