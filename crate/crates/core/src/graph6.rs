//! graph6 encoding (header-free).
//!
//! Bits of the upper triangle are taken column by column:
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed six to a byte and offset by 63.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SmallGraph;

const OFFSET: u8 = 63;

/// Encode `g` as graph6. Graphs with 63 or 64 vertices use the 4-byte size
/// header (`~` followed by 18 bits).
pub fn encode(g: &SmallGraph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + OFFSET));
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + OFFSET);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decode header-free graph6 text. Errors carry the offending byte offset.
pub fn decode(text: &str) -> Result<SmallGraph> {
    let bytes = text.as_bytes();
    let err = |offset, reason| Error::Graph6 { offset, reason };
    let sextet = |i: usize| -> Result<u8> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok(b - OFFSET),
            Some(_) => Err(err(i, "byte outside 63..=126")),
            None => Err(err(i, "unexpected end of input")),
        }
    };
    let first = sextet(0)?;
    let (n, header_len) = if first < 63 {
        (first as usize, 1)
    } else {
        if bytes.get(1) == Some(&126) {
            return Err(err(1, "8-byte size header exceeds 64 vertices"));
        }
        let n = (sextet(1)? as usize) << 12 | (sextet(2)? as usize) << 6 | sextet(3)? as usize;
        (n, 4)
    };
    if n > SmallGraph::MAX_VERTICES {
        return Err(err(0, "more than 64 vertices"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = header_len + bits.div_ceil(6);
    if bytes.len() < expected {
        return Err(err(bytes.len(), "payload too short"));
    }
    if bytes.len() > expected {
        return Err(err(expected, "trailing bytes after payload"));
    }
    let mut g = SmallGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(header_len + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = header_len + bits / 6;
        let pad = 6 - bits % 6;
        if sextet(last)? & ((1 << pad) - 1) != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    }
    Ok(g)
}
