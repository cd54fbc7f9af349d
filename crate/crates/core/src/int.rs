//! Arbitrary-precision integer helpers shared by the whole crate.
//!
//! Every quantity that can leave the 64-bit range (indexes of sublattices,
//! generator-count bounds, HNF pivots of iterated products) is a [`Int`].
//! JSON encoding: numbers that fit in an `i64` are emitted as JSON numbers,
//! everything else as decimal strings; both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub type Int = BigInt;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Binomial coefficient `C(n, k)` for possibly negative `n` (the polynomial
/// extension `n(n-1)...(n-k+1)/k!`), exact.
pub fn binomial(n: &Int, k: u64) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= n - int(i as i64);
        den *= int((i + 1) as i64);
    }
    // den always divides num for integer n
    num / den
}

pub fn serialize_int<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(n) => s.serialize_i64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(i64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(n) => Ok(Int::from(n)),
        Raw::Str(s) => s.parse::<Int>().map_err(D::Error::custom),
    }
}

pub mod int_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match x.to_i64() {
                Some(n) => seq.serialize_element(&n)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        let raw = Vec::<Raw>::deserialize(d)?;
        raw.into_iter()
            .map(|r| match r {
                Raw::Num(n) => Ok(Int::from(n)),
                Raw::Str(s) => s.parse::<Int>().map_err(D::Error::custom),
            })
            .collect()
    }
}

/// Rounds a big integer to two significant decimal digits and reports the
/// pair `(leading, exponent)` meaning `0.<leading> * 10^exponent`, e.g.
/// `1.2e20` comes back as `(12, 21)`.
pub fn two_digit_scientific(v: &Int) -> (u32, usize) {
    assert!(v.is_positive(), "scientific form expects a positive value");
    let digits = v.to_string();
    let exp = digits.len();
    let lead: u32 = digits[..3.min(digits.len())].parse().unwrap();
    // round the first three digits to two
    let rounded = if digits.len() >= 3 { (lead + 5) / 10 } else { lead };
    if rounded >= 100 {
        (rounded / 10, exp + 1)
    } else {
        (rounded, exp)
    }
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}
