use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// On-disk graph: `{"n": 4, "edges": [[0, 1], [1, 2]]}` with `i < j < n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = GraphError;

    fn try_from(f: GraphFile) -> Result<Self, GraphError> {
        for &[i, j] in &f.edges {
            if i >= j {
                return Err(GraphError::Parse {
                    line: 0,
                    column: 0,
                    msg: format!("edge [{i}, {j}] must satisfy i < j"),
                });
            }
        }
        let edges: Vec<(usize, usize)> = f.edges.iter().map(|&[i, j]| (i, j)).collect();
        Graph::from_edges(f.n, &edges)
    }
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        Graph::try_from(f).map_err(serde::de::Error::custom)
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph, GraphError> {
    let f: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    Graph::try_from(f)
}

/// Line format: the vertex count on the first non-blank line, then one
/// `i j` pair per line. `#` starts a comment.
pub fn parse_graph_lines(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let parse = |k: usize| -> Result<usize, GraphError> {
            fields[k].parse().map_err(|_| GraphError::Parse {
                line,
                column: raw.find(fields[k]).map_or(1, |c| c + 1),
                msg: format!("expected a non-negative integer, found {:?}", fields[k]),
            })
        };
        match (n, fields.len()) {
            (None, 1) => n = Some(parse(0)?),
            (None, _) => {
                return Err(GraphError::Parse {
                    line,
                    column: 1,
                    msg: "first line must hold the vertex count".into(),
                })
            }
            (Some(_), 2) => {
                let (i, j) = (parse(0)?, parse(1)?);
                edges.push((i, j, line));
            }
            (Some(_), _) => {
                return Err(GraphError::Parse {
                    line,
                    column: 1,
                    msg: format!("expected \"i j\", found {body:?}"),
                })
            }
        }
    }
    let n = n.ok_or(GraphError::Parse {
        line: 1,
        column: 1,
        msg: "empty graph file".into(),
    })?;
    if n > super::MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let mut g = Graph::empty(n);
    for (i, j, line) in edges {
        let problem = if i >= n || j >= n {
            Some(GraphError::VertexOutOfRange {
                vertex: i.max(j),
                n,
            })
        } else if i == j {
            Some(GraphError::SelfLoop(i))
        } else if g.has_edge(i, j) {
            Some(GraphError::DuplicateEdge(i.min(j), i.max(j)))
        } else {
            None
        };
        if let Some(e) = problem {
            return Err(GraphError::Parse {
                line,
                column: 1,
                msg: e.to_string(),
            });
        }
        g.add_edge_unchecked(i, j);
    }
    Ok(g)
}

/// Dispatches on the first non-blank character: `{` means JSON.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_lines(text)
    }
}
