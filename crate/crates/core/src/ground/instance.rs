//! Ground-set instances and their JSON file format.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::graph::OrientedGraph;
use super::linalg::{self, is_prime, is_totally_unimodular, Matrix, Scalars};
use crate::error::{Error, Result};

/// Largest integer matrix whose total unimodularity is checked exhaustively.
pub const TU_CHECK_MAX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Rows are vertices; flows are tensions of the graph.
    Vertex,
    /// Rows are (fundamental) cycles; flows are graph flows.
    Cycle,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Vertex => Side::Cycle,
            Side::Cycle => Side::Vertex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Graph {
        graph: OrientedGraph,
        side: Side,
    },
    /// Totally unimodular integer matrix.
    IntTu,
    /// Matrix over GF(p).
    Gfp(u32),
}

impl Representation {
    pub fn label(&self) -> String {
        match self {
            Representation::Graph {
                side: Side::Vertex, ..
            } => "graph-vertex-side".into(),
            Representation::Graph {
                side: Side::Cycle, ..
            } => "graph-cycle-side".into(),
            Representation::IntTu => "tu-int-matrix".into(),
            Representation::Gfp(p) => format!("gfp-matrix(p={p})"),
        }
    }
}

/// A ground set `E` (the matrix columns) with a linear representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub representation: Representation,
    pub matrix: Matrix,
    pub scalars: Scalars,
    pub rank: usize,
}

impl Instance {
    pub fn from_graph(name: impl Into<String>, graph: OrientedGraph, side: Side) -> Self {
        let matrix = match side {
            Side::Vertex => graph.vertex_edge_matrix(),
            Side::Cycle => graph.fundamental_cycle_matrix(),
        };
        let rank = linalg::rank(&matrix, Scalars::Integer);
        Instance {
            name: name.into(),
            representation: Representation::Graph { graph, side },
            matrix,
            scalars: Scalars::Integer,
            rank,
        }
    }

    /// Integer matrix instance. Total unimodularity is verified when the
    /// matrix is small enough; larger matrices need `trust_tu`.
    pub fn from_tu_matrix(name: impl Into<String>, matrix: Matrix, trust_tu: bool) -> Result<Self> {
        for (i, row) in matrix.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(Error::InvalidInstance {
                        location: format!("rows[{i}][{j}]"),
                        message: format!("entry {v} not in {{-1,0,1}}"),
                    });
                }
            }
        }
        if matrix.row_count() <= TU_CHECK_MAX && matrix.cols <= TU_CHECK_MAX {
            if !is_totally_unimodular(&matrix) {
                return Err(Error::InvalidInstance {
                    location: "rows".into(),
                    message: "matrix is not totally unimodular".into(),
                });
            }
        } else if !trust_tu {
            return Err(Error::InvalidInstance {
                location: "rows".into(),
                message: format!(
                    "matrix larger than {TU_CHECK_MAX}x{TU_CHECK_MAX}; total unimodularity must be asserted with the trust flag"
                ),
            });
        }
        let rank = linalg::rank(&matrix, Scalars::Integer);
        Ok(Instance {
            name: name.into(),
            representation: Representation::IntTu,
            matrix,
            scalars: Scalars::Integer,
            rank,
        })
    }

    pub fn from_gfp_matrix(name: impl Into<String>, p: u32, matrix: Matrix) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidInstance {
                location: "ring.p".into(),
                message: format!("{p} is not prime"),
            });
        }
        let scalars = Scalars::Prime(p);
        let matrix = Matrix::new(
            matrix.cols,
            matrix
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| scalars.normalize(v)).collect())
                .collect(),
        );
        let rank = linalg::rank(&matrix, scalars);
        Ok(Instance {
            name: name.into(),
            representation: Representation::Gfp(p),
            matrix,
            scalars,
            rank,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.matrix.cols
    }

    pub fn graph(&self) -> Option<&OrientedGraph> {
        match &self.representation {
            Representation::Graph { graph, .. } => Some(graph),
            _ => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match &self.representation {
            Representation::Graph { side, .. } => Some(*side),
            _ => None,
        }
    }

    pub fn prime(&self) -> Option<u32> {
        match self.representation {
            Representation::Gfp(p) => Some(p),
            _ => None,
        }
    }

    /// Graph or TU integer matrix: flows exist over every finite abelian group.
    pub fn is_unimodular(&self) -> bool {
        matches!(
            self.representation,
            Representation::Graph { .. } | Representation::IntTu
        )
    }

    /// Binary instance: a GF(2) matrix, or a TU matrix read over GF(2).
    pub fn is_binary(&self) -> bool {
        self.is_unimodular() || self.prime() == Some(2)
    }

    /// Ternary instance: a GF(3) matrix, or a TU matrix read over GF(3).
    pub fn is_ternary(&self) -> bool {
        self.is_unimodular() || self.prime() == Some(3)
    }

    /// An instance whose matrix is an orthogonal dual of this one. Graphs
    /// swap sides; matrices use a null-space basis (over the integers this
    /// relies on total unimodularity).
    pub fn orthogonal_dual(&self) -> Result<Instance> {
        let name = format!("{}-dual", self.name);
        match &self.representation {
            Representation::Graph { graph, side } => {
                Ok(Instance::from_graph(name, graph.clone(), side.opposite()))
            }
            Representation::IntTu => {
                let matrix = linalg::null_space(&self.matrix, Scalars::Integer)?;
                let rank = matrix.row_count();
                Ok(Instance {
                    name,
                    representation: Representation::IntTu,
                    matrix,
                    scalars: Scalars::Integer,
                    rank,
                })
            }
            Representation::Gfp(p) => {
                let matrix = linalg::null_space(&self.matrix, self.scalars)?;
                Instance::from_gfp_matrix(name, *p, matrix)
            }
        }
    }

    /// Columns permuted: new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Instance {
        let matrix = self.matrix.select_columns(perm);
        let representation = match &self.representation {
            Representation::Graph { graph, side } => Representation::Graph {
                graph: OrientedGraph::new(
                    graph.vertex_count,
                    perm.iter().map(|&j| graph.edges[j]).collect(),
                ),
                side: *side,
            },
            other => other.clone(),
        };
        let mut inst = self.clone();
        inst.name = format!("{}-perm", self.name);
        inst.representation = representation;
        inst.matrix = if let Representation::Graph { graph, side } = &inst.representation {
            match side {
                Side::Vertex => graph.vertex_edge_matrix(),
                Side::Cycle => graph.fundamental_cycle_matrix(),
            }
        } else {
            matrix
        };
        inst
    }

    /// Column `j` negated (for graphs: edge `j` reversed).
    pub fn flip_column(&self, j: usize) -> Instance {
        let mut inst = self.clone();
        inst.name = format!("{}-flip{j}", self.name);
        match &self.representation {
            Representation::Graph { graph, side } => {
                let g = graph.reorient(j);
                inst.matrix = match side {
                    Side::Vertex => g.vertex_edge_matrix(),
                    Side::Cycle => g.fundamental_cycle_matrix(),
                };
                inst.representation = Representation::Graph {
                    graph: g,
                    side: *side,
                };
            }
            _ => {
                for row in &mut inst.matrix.rows {
                    row[j] = self.scalars.normalize(-row[j]);
                }
            }
        }
        inst
    }

    pub fn to_json(&self) -> Value {
        match &self.representation {
            Representation::Graph { graph, side } => json!({
                "kind": "graph",
                "vertices": graph.vertex_count,
                "edges": graph.edges.iter().map(|&(t, h)| [t, h]).collect::<Vec<_>>(),
                "side": side,
            }),
            Representation::IntTu => json!({
                "kind": "matrix",
                "ring": {"type": "int-tu"},
                "columns": self.matrix.cols,
                "rows": self.matrix.rows,
            }),
            Representation::Gfp(p) => json!({
                "kind": "matrix",
                "ring": {"type": "gfp", "p": p},
                "columns": self.matrix.cols,
                "rows": self.matrix.rows,
            }),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum InstanceFile {
    Graph {
        vertices: i64,
        edges: Vec<Vec<i64>>,
        side: Side,
        #[serde(default)]
        name: Option<String>,
    },
    Matrix {
        ring: RingSpec,
        rows: Vec<Vec<i64>>,
        /// Only needed for matrices with no rows.
        #[serde(default)]
        columns: Option<usize>,
        #[serde(default)]
        name: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum RingSpec {
    IntTu,
    Gfp { p: i64 },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept integer matrices too large for the exhaustive TU check.
    pub trust_tu: bool,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with(text, ParseOptions::default())
}

pub fn parse_instance_with(text: &str, opts: ParseOptions) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match file {
        InstanceFile::Graph {
            vertices,
            edges,
            side,
            name,
        } => {
            if vertices < 0 {
                return Err(Error::InvalidInstance {
                    location: "vertices".into(),
                    message: "vertex count must be nonnegative".into(),
                });
            }
            let n = vertices as usize;
            let mut list = Vec::with_capacity(edges.len());
            for (i, e) in edges.iter().enumerate() {
                if e.len() != 2 {
                    return Err(Error::InvalidInstance {
                        location: format!("edges[{i}]"),
                        message: format!("expected [tail, head], got {} entries", e.len()),
                    });
                }
                for (k, &v) in e.iter().enumerate() {
                    if v < 0 || v as usize >= n {
                        return Err(Error::InvalidInstance {
                            location: format!("edges[{i}][{k}]"),
                            message: format!("vertex index {v} out of range 0..{n}"),
                        });
                    }
                }
                list.push((e[0] as usize, e[1] as usize));
            }
            let graph = OrientedGraph::new(n, list);
            Ok(Instance::from_graph(
                name.unwrap_or_else(|| "graph".into()),
                graph,
                side,
            ))
        }
        InstanceFile::Matrix {
            ring,
            rows,
            columns,
            name,
        } => {
            let cols = match (rows.first(), columns) {
                (Some(r), _) => r.len(),
                (None, Some(c)) => c,
                (None, None) => 0,
            };
            if let Some(c) = columns {
                if c != cols {
                    return Err(Error::InvalidInstance {
                        location: "columns".into(),
                        message: format!("declared {c} columns but rows have {cols}"),
                    });
                }
            }
            for (i, r) in rows.iter().enumerate() {
                if r.len() != cols {
                    return Err(Error::InvalidInstance {
                        location: format!("rows[{i}]"),
                        message: format!("row has {} entries, expected {cols}", r.len()),
                    });
                }
            }
            let matrix = Matrix::new(cols, rows);
            let name = name.unwrap_or_else(|| "matrix".into());
            match ring {
                RingSpec::IntTu => Instance::from_tu_matrix(name, matrix, opts.trust_tu),
                RingSpec::Gfp { p } => {
                    if p < 2 || p > u32::MAX as i64 || !is_prime(p as u64) {
                        return Err(Error::InvalidInstance {
                            location: "ring.p".into(),
                            message: format!("{p} is not prime"),
                        });
                    }
                    Instance::from_gfp_matrix(name, p as u32, matrix)
                }
            }
        }
    }
}
