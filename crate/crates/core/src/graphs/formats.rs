//! graph6 (short form) and the lexicographic edge-bitstring format.

use super::{Graph, GraphError};

const MAX_GRAPH6_VERTICES: usize = 62;

fn parse_err(offset: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        msg: msg.into(),
    }
}

/// Parses one graph6 record. Edges come out in graph6 bit order
/// `(1,2), (1,3), (2,3), (1,4), ...` and are numbered in that order.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(parse_err(0, "empty record"));
    };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(parse_err(
            pos,
            format!("byte 0x{:02x} is not a graph6 character", bytes[pos]),
        ));
    }
    if first == 126 {
        return Err(parse_err(
            0,
            "long-form header (more than 62 vertices) is unsupported",
        ));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(parse_err(0, "graph with no vertices"));
    }
    let nbits = n * (n - 1) / 2;
    let want = 1 + nbits.div_ceil(6);
    if bytes.len() < want {
        return Err(parse_err(
            bytes.len(),
            format!("record too short for {n} vertices"),
        ));
    }
    if bytes.len() > want {
        return Err(parse_err(want, "trailing bytes after the adjacency field"));
    }
    let bit = |k: usize| (bytes[1 + k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i + 1, j + 1));
            }
            k += 1;
        }
    }
    for pad in nbits..(want - 1) * 6 {
        if bit(pad) {
            return Err(parse_err(1 + pad / 6, "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

fn require_simple(g: &Graph) -> Result<(), GraphError> {
    if !g.is_simple() {
        return Err(GraphError::Unsupported(
            "graph has loops or parallel edges".into(),
        ));
    }
    Ok(())
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    require_simple(g)?;
    let n = g.vertex_count();
    if n > MAX_GRAPH6_VERTICES {
        return Err(GraphError::Unsupported(format!(
            "{n} vertices exceed the short form"
        )));
    }
    let adj = adjacency(g);
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 2..=n {
        for i in 1..j {
            bits.push(adj[i][j]);
        }
    }
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (pos, &b) in chunk.iter().enumerate() {
            v |= (b as u8) << (5 - pos);
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

/// Parses a `C(n,2)`-character 0/1 string over the pairs `(1,2), (1,3), ...,
/// (n-1,n)` in lexicographic order. Spaces are ignored.
pub fn parse_edge_bits(text: &str, vertex_count: usize) -> Result<Graph, GraphError> {
    if vertex_count == 0 {
        return Err(parse_err(0, "vertex count must be positive"));
    }
    let text = text.trim_end_matches(['\n', '\r']);
    let pairs: Vec<(usize, usize)> = (1..=vertex_count)
        .flat_map(|u| (u + 1..=vertex_count).map(move |v| (u, v)))
        .collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for (offset, ch) in text.char_indices() {
        match ch {
            ' ' => continue,
            '0' | '1' => {
                if k == pairs.len() {
                    return Err(parse_err(
                        offset,
                        format!("more than {} digits", pairs.len()),
                    ));
                }
                if ch == '1' {
                    edges.push(pairs[k]);
                }
                k += 1;
            }
            _ => return Err(parse_err(offset, format!("illegal character {ch:?}"))),
        }
    }
    if k != pairs.len() {
        return Err(parse_err(
            text.len(),
            format!(
                "expected {} digits for {vertex_count} vertices, found {k}",
                pairs.len()
            ),
        ));
    }
    Graph::new(vertex_count, edges)
}

/// Inverse of [`parse_edge_bits`], with a space after every ten digits.
pub fn emit_edge_bits(g: &Graph) -> Result<String, GraphError> {
    require_simple(g)?;
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut out = String::new();
    let mut k = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if k > 0 && k % 10 == 0 {
                out.push(' ');
            }
            out.push(if adj[u][v] { '1' } else { '0' });
            k += 1;
        }
    }
    Ok(out)
}

/// Non-empty lines that do not start with `#`, with 1-based line numbers.
pub fn read_records(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small_records() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edges(), &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(parse_graph6("A_").unwrap().edges(), &[(1, 2)]);
        assert!(parse_graph6("B?").unwrap().edges().is_empty());
        assert_eq!(emit_graph6(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(emit_graph6(&Graph::complete(2)).unwrap(), "A_");
        assert_eq!(emit_graph6(&Graph::empty(3)).unwrap(), "B?");
    }

    #[test]
    fn graph6_errors_name_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(GraphError::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_graph6("Bww"),
            Err(GraphError::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("C"),
            Err(GraphError::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("B\x07"),
            Err(GraphError::Parse { offset: 1, .. })
        ));
        // Bits beyond the three pairs of a 3-vertex graph must be zero.
        assert!(matches!(parse_graph6("B~"), Err(GraphError::Parse { .. })));
        let multi = Graph::new(2, vec![(1, 2), (1, 2)]).unwrap();
        assert!(matches!(
            emit_graph6(&multi),
            Err(GraphError::Unsupported(_))
        ));
    }

    #[test]
    fn edge_bits_examples() {
        let g = parse_edge_bits("0001111001 1110010100 11001000", 8).unwrap();
        let want = [
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 8),
            (2, 5),
            (2, 6),
            (2, 7),
            (2, 8),
            (3, 6),
            (3, 8),
            (4, 7),
            (4, 8),
            (5, 8),
        ];
        assert_eq!(g.edges(), &want);
        assert_eq!(
            emit_edge_bits(&g).unwrap(),
            "0001111001 1110010100 11001000"
        );
        assert_eq!(parse_edge_bits("111", 3).unwrap(), Graph::complete(3));
        assert!(parse_edge_bits("000000", 4).unwrap().edges().is_empty());
        let path = Graph::new(4, vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(emit_edge_bits(&path).unwrap(), "100101");
        assert!(matches!(
            parse_edge_bits("11", 3),
            Err(GraphError::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_edge_bits("1x1", 3),
            Err(GraphError::Parse { offset: 1, .. })
        ));
    }

    #[test]
    fn records_skip_comments() {
        let recs = read_records("# corpus\nBw\n\n  A_ \n");
        assert_eq!(recs, vec![(2, "Bw"), (4, "A_")]);
    }
}
