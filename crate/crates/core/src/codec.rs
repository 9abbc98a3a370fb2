//! Extremum encoding: the encoder sends the index of its largest sample as a
//! k-bit, most-significant-bit-first message.

use std::fmt;
use std::str::FromStr;

use crate::estimators::OpCounter;
use crate::{Error, Result};

/// Largest supported message size.
pub const MAX_BITS: u32 = 63;

/// A k-bit message. Dumps as a k-character '0'/'1' string, MSB first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtremumMessage {
    bits: Vec<bool>,
}

impl ExtremumMessage {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        check_k(bits.len() as u32)?;
        Ok(Self { bits })
    }

    /// Parse a dump, requiring exactly `k` characters.
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        let msg: Self = text.parse()?;
        if msg.k() != k {
            return Err(Error::MessageLength {
                expected: k,
                got: msg.bits.len(),
            });
        }
        Ok(msg)
    }

    pub fn k(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl FromStr for ExtremumMessage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }
}

impl fmt::Display for ExtremumMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 || k > MAX_BITS {
        Err(Error::BadMessageSize(k))
    } else {
        Ok(())
    }
}

/// Big-endian k-bit representation of `index`.
pub fn encode_index(index: u64, k: u32) -> Result<ExtremumMessage> {
    check_k(k)?;
    if index >> k != 0 {
        return Err(Error::IndexNotRepresentable {
            n: index as usize + 1,
            k,
        });
    }
    let bits = (0..k).rev().map(|b| (index >> b) & 1 == 1).collect();
    Ok(ExtremumMessage { bits })
}

/// Index of the largest sample, ties resolved toward the smallest index.
pub fn argmax_index(samples: &[f64]) -> Result<usize> {
    argmax_index_counted(samples, &mut ())
}

pub fn argmax_index_counted<C: OpCounter>(samples: &[f64], ops: &mut C) -> Result<usize> {
    let (first, rest) = samples.split_first().ok_or(Error::Empty("encoder samples"))?;
    if !first.is_finite() {
        return Err(Error::NonFinite(0));
    }
    let mut best = (0, *first);
    for (i, &v) in rest.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite(i + 1));
        }
        if v > best.1 {
            best = (i + 1, v);
        }
    }
    ops.add(samples.len() as u64);
    Ok(best.0)
}

/// Encode the argmax of `samples` into a `k`-bit message. Requires
/// `1 <= samples.len() <= 2^k`.
pub fn encode_max_index(samples: &[f64], k: u32) -> Result<ExtremumMessage> {
    check_k(k)?;
    if samples.len() as u128 > 1u128 << k {
        return Err(Error::IndexNotRepresentable {
            n: samples.len(),
            k,
        });
    }
    encode_index(argmax_index(samples)? as u64, k)
}

/// Big-endian value of the message.
pub fn decode_index(msg: &ExtremumMessage) -> u64 {
    msg.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}
