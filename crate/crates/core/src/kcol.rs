//! The `kcol` text format for two-colorings.
//!
//! ```text
//! <n>\n
//! <hex>\n
//! ```
//!
//! `<hex>` has exactly `ceil(C(n,2)/4)` hex digits and is the big-endian
//! rendering of the red mask: bit 0 (least significant) is the pair `(0,1)`,
//! then `(0,2)`, ..., `(n-2,n-1)` in row-major order.

use crate::coloring::{pair_count, TwoColoring};
use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;

pub fn encode(c: &TwoColoring) -> String {
    let bits = pair_count(c.n());
    let digits = bits.div_ceil(4);
    let words = c.mask_words();
    let mut hex = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let bit = d * 4;
        let nibble = (words[bit / 64] >> (bit % 64)) & 0xf;
        hex.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    format!("{}\n{}\n", c.n(), hex)
}

pub fn decode(text: &str) -> Result<TwoColoring> {
    let bytes = text.as_bytes();
    let Some(nl) = text.find('\n') else {
        return Err(Error::parse(bytes.len(), "missing newline after vertex count"));
    };
    let header = &text[..nl];
    if header.is_empty() {
        return Err(Error::parse(0, "empty vertex-count line"));
    }
    if let Some(pos) = header.bytes().position(|b| !b.is_ascii_digit()) {
        return Err(Error::parse(pos, format!("unexpected byte {:?} in vertex count", bytes[pos] as char)));
    }
    let n: usize = header.parse().map_err(|_| Error::parse(0, "vertex count does not fit"))?;
    if n > MAX_VERTICES {
        return Err(Error::parse(0, format!("vertex count {n} exceeds maximum {MAX_VERTICES}")));
    }

    let body_start = nl + 1;
    let rest = &text[body_start..];
    let line_end = rest.find('\n');
    let hex = match line_end {
        Some(i) => &rest[..i],
        None => rest,
    };
    let bits = pair_count(n);
    let digits = bits.div_ceil(4);
    if let Some(pos) = hex.bytes().position(|b| !b.is_ascii_hexdigit()) {
        let off = body_start + pos;
        return Err(Error::parse(off, format!("non-hex byte {:?}", bytes[off] as char)));
    }
    if hex.len() != digits {
        let off = body_start + hex.len().min(digits);
        return Err(Error::parse(off, format!("expected {digits} hex digits for n = {n}, found {}", hex.len())));
    }
    if line_end.is_none() {
        return Err(Error::parse(text.len(), "missing newline after mask"));
    }
    let trailing_start = body_start + hex.len() + 1;
    if let Some(pos) = text[trailing_start..].bytes().position(|b| !b.is_ascii_whitespace()) {
        return Err(Error::parse(trailing_start + pos, "unexpected data after mask line"));
    }

    let mut words = vec![0u64; bits.div_ceil(64)];
    for (i, ch) in hex.chars().enumerate() {
        let nibble = ch.to_digit(16).unwrap() as u64;
        let bit = (digits - 1 - i) * 4;
        if nibble == 0 {
            continue;
        }
        for b in 0..4 {
            if (nibble >> b) & 1 == 1 {
                let idx = bit + b;
                if idx >= bits {
                    return Err(Error::parse(body_start + i, format!("bit {idx} set but only {bits} pairs exist")));
                }
                words[idx / 64] |= 1u64 << (idx % 64);
            }
        }
    }
    TwoColoring::from_mask_words(n, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Color;

    #[test]
    fn triangle_formats() {
        assert_eq!(encode(&TwoColoring::all_red(3).unwrap()), "3\n7\n");
        assert_eq!(encode(&TwoColoring::all_blue(3).unwrap()), "3\n0\n");
        assert_eq!(decode("3\n7\n").unwrap(), TwoColoring::all_red(3).unwrap());
    }

    #[test]
    fn digit_order_is_big_endian() {
        // K_5 has 10 pairs -> 3 digits; pair (0,1) is bit 0, pair (3,4) is bit 9.
        let mut c = TwoColoring::all_blue(5).unwrap();
        c.set(3, 4, Color::Red);
        assert_eq!(encode(&c), "5\n200\n");
        c.set(0, 1, Color::Red);
        assert_eq!(encode(&c), "5\n201\n");
    }

    #[test]
    fn tiny_boards() {
        assert_eq!(encode(&TwoColoring::all_blue(1).unwrap()), "1\n\n");
        assert_eq!(decode("0\n\n").unwrap().n(), 0);
    }

    #[test]
    fn errors_name_offsets() {
        let truncated = decode("5\n20");
        assert!(matches!(truncated, Err(Error::Parse { offset: 4, .. })), "{truncated:?}");
        assert!(matches!(decode("5\n2g0\n"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(decode("x\n0\n"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(decode("5"), Err(Error::Parse { offset: 1, .. })));
        // 10 pairs: top digit may only use bits 8..9
        assert!(matches!(decode("5\n400\n"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(decode("3\n7\nextra"), Err(Error::Parse { offset: 4, .. })));
    }
}
