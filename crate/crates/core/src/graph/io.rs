use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Vertex};

/// On-disk graph: `{"n": .., "edges": [[u, v], ..], "labels": {"id": "name"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        let labels = if g.labels().is_empty() {
            None
        } else {
            Some(g.labels().iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
        };
        GraphFile { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(), labels }
    }

    pub fn into_graph(self) -> Result<Graph, GraphError> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::new(self.n, &edges)?;
        match self.labels {
            None => Ok(g),
            Some(labels) => {
                let mut parsed = BTreeMap::new();
                for (k, v) in labels {
                    let id = k.parse::<usize>().map_err(|_| GraphError::Parse(format!("bad label key {k:?}")))?;
                    parsed.insert(id, v);
                }
                g.with_labels(parsed)
            }
        }
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from_graph(self)).expect("graph serializes")
    }

    /// Parses Graph JSON, or plain text with a first line `n m` followed by
    /// one `u v` pair per line.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let file: GraphFile =
                serde_json::from_str(trimmed).map_err(|e| GraphError::Parse(e.to_string()))?;
            return file.into_graph();
        }
        let mut lines = trimmed
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse(format!("header announces {m} edges, found {}", edges.len())));
        }
        Graph::new(n, &edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse(format!("expected two integers, got {line:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_labels() {
        let g = Graph::new(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_labels(BTreeMap::from([(0, "s".to_string())]))
            .unwrap();
        let back = Graph::parse(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("3 1\n0 x\n").is_err());
    }
}
