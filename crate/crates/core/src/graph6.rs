//! graph6 text encoding.
//!
//! One header byte `n + 63` (orders up to 62), followed by the upper triangle
//! of the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`)
//! packed six bits per byte, most significant first, each byte offset by 63.
//! The final group is zero-padded.

use crate::graph::Graph;
use crate::{Error, Result, MAX_ORDER};

pub(crate) fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Format("empty string".into()))?;
    if header == b'~' {
        return Err(Error::Capacity(format!(
            "graph6 orders above 62 exceed the maximum of {MAX_ORDER}"
        )));
    }
    if !(63..=125).contains(&header) {
        return Err(Error::Format(format!("invalid header byte {header:#04x}")));
    }
    let n = (header - 63) as usize;
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "order {n} exceeds the maximum of {MAX_ORDER}"
        )));
    }
    if body.len() != body_len(n) {
        return Err(Error::Format(format!(
            "order {n} needs {} body bytes, found {}",
            body_len(n),
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut bits = body.iter().flat_map(|&b| {
        let v = b.wrapping_sub(63);
        (0..6).rev().map(move |k| (b, (v >> k) & 1))
    });
    for j in 1..n {
        for i in 0..j {
            let (b, bit) = bits.next().expect("length checked");
            if !(63..=126).contains(&b) {
                return Err(Error::Format(format!("invalid body byte {b:#04x}")));
            }
            if bit == 1 {
                g.add_edge(i, j);
            }
        }
    }
    for (b, bit) in bits {
        if !(63..=126).contains(&b) {
            return Err(Error::Format(format!("invalid body byte {b:#04x}")));
        }
        if bit != 0 {
            return Err(Error::Format("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
