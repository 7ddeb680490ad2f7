//! graph6 encoding (short form only, n <= 62). One printable byte `n + 63`,
//! then the upper-triangle adjacency bits in column-major order, six bits per
//! byte, each offset by 63. Matches the format used by nauty/geng, so corpora
//! produced there can be piped straight in.

use crate::error::{GraphError, Result};
use crate::graph::Graph;

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > 62 {
        return Err(GraphError::TooManyVertices { n, max: 62 });
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    let mut buf: u8 = 0;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            buf <<= 1;
            if g.has_edge(u, v) {
                buf |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push((buf + 63) as char);
                buf = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        buf <<= 6 - filled;
        out.push((buf + 63) as char);
    }
    Ok(out)
}

pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Graph6 { offset: 0, reason: "empty input".into() });
    }
    if bytes[0] == b'~' {
        return Err(GraphError::Graph6 {
            offset: 0,
            reason: "long-form size prefix '~' is not supported (n > 62)".into(),
        });
    }
    if !(63..=126).contains(&bytes[0]) {
        return Err(GraphError::Graph6 {
            offset: 0,
            reason: format!("size byte 0x{:02x} outside printable range 63..=126", bytes[0]),
        });
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(GraphError::Graph6 {
            offset: bytes.len().min(1 + nbytes),
            reason: format!(
                "expected {} data bytes for n={}, found {}",
                nbytes,
                n,
                bytes.len() - 1
            ),
        });
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for (i, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(GraphError::Graph6 {
                offset: 1 + i,
                reason: format!("data byte 0x{b:02x} outside printable range 63..=126"),
            });
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push((v >> k) & 1 == 1);
        }
    }
    // Padding bits beyond the triangle must be zero; anything else signals a
    // corrupted or misframed string.
    if let Some(pos) = bits[nbits..].iter().position(|&b| b) {
        return Err(GraphError::Graph6 {
            offset: 1 + (nbits + pos) / 6,
            reason: "nonzero padding bits".into(),
        });
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges)
}
