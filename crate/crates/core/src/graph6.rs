//! graph6 encoding (McKay's format): size header followed by the upper
//! triangle of the adjacency matrix in column order, six bits per byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn sixbits(b: u8) -> Result<u64> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as u64)
    } else {
        Err(Error::Graph6(format!("byte {b} outside 63..=126")))
    }
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sixbits(bytes[0])? as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = (n << 6) | sixbits(b)?;
        }
        (n as usize, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = (n << 6) | sixbits(b)?;
        }
        (n as usize, 4)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos < need {
        return Err(Error::Graph6(format!(
            "truncated bit stream: need {need} bytes, have {}",
            bytes.len() - pos
        )));
    }
    if bytes.len() - pos > need {
        return Err(Error::Graph6("trailing bytes after bit stream".into()));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    let mut cur = 0u64;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = sixbits(bytes[pos])?;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    // padding bytes still have to be legal characters
    while pos < bytes.len() {
        sixbits(bytes[pos])?;
        pos += 1;
    }
    Ok(g)
}
