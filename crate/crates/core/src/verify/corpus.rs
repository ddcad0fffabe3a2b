//! Built-in instances.

use crate::error::{Error, Result};
use crate::ground::{Instance, Matrix, OrientedGraph, Side};

fn graph(n: usize, edges: &[(usize, usize)]) -> OrientedGraph {
    OrientedGraph::new(n, edges.to_vec())
}

fn cycle(n: usize) -> OrientedGraph {
    graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

fn k4() -> OrientedGraph {
    graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

fn k23() -> OrientedGraph {
    graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
}

fn bowtie() -> OrientedGraph {
    graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
}

/// Two triangles joined by a bridge.
fn bridged_triangles() -> OrientedGraph {
    graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
}

fn gfp(name: &str, p: u32, rows: &[&[i64]]) -> Instance {
    let cols = rows[0].len();
    Instance::from_gfp_matrix(
        name,
        p,
        Matrix::new(cols, rows.iter().map(|r| r.to_vec()).collect()),
    )
    .expect("built-in matrix is valid")
}

fn identity(name: &str, p: u32, k: usize) -> Instance {
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    Instance::from_gfp_matrix(name, p, Matrix::new(k, rows)).expect("identity is valid")
}

const NAMES: [&str; 18] = [
    "single-edge-vertex",
    "loop-cycle",
    "triangle-vertex",
    "triangle-cycle",
    "c4-cycle",
    "c5-vertex",
    "k4-vertex",
    "k4-cycle",
    "k23-vertex",
    "bowtie-cycle",
    "bridge-cycle",
    "fano",
    "hamming74",
    "ternary-2x4",
    "ternary-whirl",
    "identity-gf3",
    "identity-gf5",
    "tu-interval",
];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// A built-in instance by name.
pub fn builtin(name: &str) -> Result<Instance> {
    let g = |graph: OrientedGraph, side| Ok(Instance::from_graph(name, graph, side));
    match name {
        "single-edge-vertex" => g(graph(2, &[(0, 1)]), Side::Vertex),
        "loop-cycle" => g(graph(1, &[(0, 0)]), Side::Cycle),
        "triangle-vertex" => g(cycle(3), Side::Vertex),
        "triangle-cycle" => g(cycle(3), Side::Cycle),
        "c4-cycle" => g(cycle(4), Side::Cycle),
        "c5-vertex" => g(cycle(5), Side::Vertex),
        "k4-vertex" => g(k4(), Side::Vertex),
        "k4-cycle" => g(k4(), Side::Cycle),
        "k23-vertex" => g(k23(), Side::Vertex),
        "bowtie-cycle" => g(bowtie(), Side::Cycle),
        "bridge-cycle" => g(bridged_triangles(), Side::Cycle),
        "fano" => Ok(gfp(
            name,
            2,
            &[
                &[1, 0, 0, 1, 1, 0, 1],
                &[0, 1, 0, 1, 0, 1, 1],
                &[0, 0, 1, 0, 1, 1, 1],
            ],
        )),
        "hamming74" => Ok(gfp(
            name,
            2,
            &[
                &[1, 0, 0, 0, 1, 1, 0],
                &[0, 1, 0, 0, 1, 0, 1],
                &[0, 0, 1, 0, 0, 1, 1],
                &[0, 0, 0, 1, 1, 1, 1],
            ],
        )),
        "ternary-2x4" => Ok(gfp(name, 3, &[&[1, 0, 1, 1], &[0, 1, 1, 2]])),
        "ternary-whirl" => Ok(gfp(
            name,
            3,
            &[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 2], &[0, 0, 1, 1, 1]],
        )),
        "identity-gf3" => Ok(identity(name, 3, 3)),
        "identity-gf5" => Ok(identity(name, 5, 2)),
        "tu-interval" => Instance::from_tu_matrix(
            name,
            Matrix::new(
                4,
                vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
            ),
            false,
        ),
        _ => Err(Error::Params(format!(
            "unknown built-in instance `{name}` (known: {})",
            NAMES.join(", ")
        ))),
    }
}

/// Every built-in instance, in a fixed order.
pub fn corpus() -> Vec<Instance> {
    NAMES
        .iter()
        .map(|n| builtin(n).expect("built-in"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::Matroid;
    use crate::poly::char_value;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.len() >= 14);
        let k4c = builtin("k4-cycle").unwrap();
        assert_eq!(k4c.rank, 3);
        assert_eq!(builtin("k4-vertex").unwrap().rank, 3);
        assert_eq!(builtin("fano").unwrap().rank, 3);
        assert_eq!(builtin("hamming74").unwrap().rank, 4);
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn bridge_has_no_nowhere_zero_flow() {
        let m = Matroid::from_instance(&builtin("bridge-cycle").unwrap());
        for q in 2..6 {
            assert_eq!(char_value(&m, q).unwrap(), 0.into());
        }
    }
}
