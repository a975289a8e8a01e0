//! graph6 encoding and decoding, bit-exact to the published byte layout:
//! a size header N(n), then the upper triangle of the adjacency matrix in
//! column-major order packed into 6-bit groups offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder};

/// Largest order the format can express (36-bit size field).
pub const MAX_N: u64 = 68_719_476_735;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("graph order {0} exceeds the graph6 limit")]
    TooLarge(u64),
    #[error("empty input")]
    Empty,
    #[error("byte {0:#x} at position {1} is outside the graph6 alphabet")]
    BadByte(u8, usize),
    #[error("input truncated: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after {0} payload bytes")]
    TrailingData(usize),
    #[error("padding bits are not zero")]
    DirtyPadding,
}

/// Encodes a graph as graph6 bytes (printable ASCII, no newline).
pub fn encode(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.n() as u64;
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::new();
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
    let mut group = 0u8;
    let mut filled = 0u8;
    for v in 1..g.n() {
        for u in 0..v {
            group = (group << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(out)
}

pub fn encode_string(g: &Graph) -> Result<String, Graph6Error> {
    Ok(String::from_utf8(encode(g)?).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 value; the input must contain exactly one graph
/// (a trailing newline is tolerated).
pub fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let bytes = match bytes {
        [head @ .., b'\n'] => head,
        other => other,
    };
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let check = |pos: usize| -> Result<u64, Graph6Error> {
        let b = *bytes.get(pos).ok_or(Graph6Error::Truncated {
            expected: pos + 1,
            found: bytes.len(),
        })?;
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte(b, pos));
        }
        Ok((b - 63) as u64)
    };
    let (n, header) = if bytes[0] != 126 {
        (check(0)?, 1)
    } else if bytes.len() > 1 && bytes[1] != 126 {
        let mut n = 0;
        for pos in 1..4 {
            n = (n << 6) | check(pos)?;
        }
        (n, 4)
    } else {
        let mut n = 0;
        for pos in 2..8 {
            n = (n << 6) | check(pos)?;
        }
        (n, 8)
    };
    if n > MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    // sizes near the format limit overflow usize arithmetic; compare the
    // implied payload length in u128 before trusting it
    let bit_count = n as u128 * (n as u128).saturating_sub(1) / 2;
    let payload = bit_count.div_ceil(6);
    let expected = header as u128 + payload;
    if (bytes.len() as u128) < expected {
        return Err(Graph6Error::Truncated {
            expected: usize::try_from(expected).unwrap_or(usize::MAX),
            found: bytes.len(),
        });
    }
    let n = n as usize;
    let payload = payload as usize;
    if bytes.len() > header + payload {
        return Err(Graph6Error::TrailingData(header + payload));
    }
    let mut b = GraphBuilder::new(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let group = check(header + bit / 6)?;
            if group >> (5 - bit % 6) & 1 == 1 {
                b.add_edge(u, v);
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let group = check(header + bit / 6)?;
        let mask = (1u64 << (6 - bit % 6)) - 1;
        if group & mask != 0 {
            return Err(Graph6Error::DirtyPadding);
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_graph_is_question_mark() {
        assert_eq!(encode_string(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(decode(b"?").unwrap().n(), 0);
    }

    #[test]
    fn k2_is_a_underscore() {
        // hand-encoded: n=2 -> 'A'; single upper-triangle bit 1 -> 100000 -> '_'
        assert_eq!(encode_string(&Graph::complete(2)).unwrap(), "A_");
        assert_eq!(decode(b"A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn five_cycle_known_encoding() {
        // C5 hand-encoded: triangle bits 101001,100100 -> 'h','c'
        assert_eq!(encode_string(&Graph::cycle(5)).unwrap(), "Dhc");
    }

    #[test]
    fn known_five_vertex_encoding() {
        // published example: edges 02,04,13,34 encode as "DQc"
        let mut b = GraphBuilder::new(5);
        for (u, v) in [(0, 2), (0, 4), (1, 3), (3, 4)] {
            b.add_edge(u, v);
        }
        assert_eq!(encode_string(&b.build()).unwrap(), "DQc");
    }

    #[test]
    fn long_form_header() {
        // n=63 needs the three-byte size field: 126 then 6-bit groups 0,0,63
        let g = Graph::empty(63);
        let enc = encode(&g).unwrap();
        assert_eq!(&enc[..4], &[126, 63, 63, 126]);
        assert_eq!(decode(&enc).unwrap().n(), 63);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decode(b""), Err(Graph6Error::Empty));
        assert!(matches!(decode(b"D"), Err(Graph6Error::Truncated { .. })));
        assert!(matches!(decode(b"A_X"), Err(Graph6Error::TrailingData(_))));
        assert!(matches!(decode(&[0x20, 0x20]), Err(Graph6Error::BadByte(0x20, 0))));
        // an 8-byte header claiming the maximal order must not overflow
        let huge = [126, 126, 126, 126, 126, 126, 126, 126];
        assert!(matches!(decode(&huge), Err(Graph6Error::Truncated { .. })));
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(n in 0usize..80, edges in proptest::collection::vec(any::<bool>(), 80 * 79 / 2)) {
            let mut i = 0;
            let g = Graph::from_fn(n, |_, _| {
                let bit = edges[i];
                i += 1;
                bit
            });
            let enc = encode(&g).unwrap();
            prop_assert_eq!(decode(&enc).unwrap(), g);
        }
    }
}
