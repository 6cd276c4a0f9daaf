//! 1-dimensional simplicial complexes: vertices, edges, isolated vertices,
//! connectivity, and the deterministic edge peeling that drives the
//! certificate recursion.
//!
//! Vertex indices are 1-based in the public interface. Edges are stored as
//! pairs `(i, j)` with `i < j`, sorted lexicographically.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    NoVertices,
    SelfLoop { vertex: usize },
    DuplicateEdge { edge: (usize, usize) },
    VertexOutOfRange { vertex: usize, m: usize },
    /// `peel` requires a connected complex.
    NotConnected,
    /// `peel` requires at least two edges.
    TooFewEdges { edges: usize },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::NoVertices => write!(f, "malformed complex: vertex count must be positive"),
            ComplexError::SelfLoop { vertex } => {
                write!(f, "malformed complex: self-loop at vertex {vertex}")
            }
            ComplexError::DuplicateEdge { edge } => {
                write!(f, "malformed complex: duplicate edge ({}, {})", edge.0, edge.1)
            }
            ComplexError::VertexOutOfRange { vertex, m } => {
                write!(f, "malformed complex: vertex {vertex} out of range 1..={m}")
            }
            ComplexError::NotConnected => write!(f, "peel requires a connected complex"),
            ComplexError::TooFewEdges { edges } => {
                write!(f, "peel requires at least two edges, found {edges}")
            }
        }
    }
}

impl std::error::Error for ComplexError {}

/// A finite 1-dimensional simplicial complex.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex1D {
    m: usize,
    edges: Vec<(usize, usize)>,
    isolated: Vec<usize>,
    incident: Vec<Vec<usize>>,
}

impl fmt::Debug for Complex1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex1D(m={}, edges={:?})", self.m, self.edges)
    }
}

/// Relabeling of a sub-complex into its parent: local vertex `v` (1-based)
/// corresponds to parent vertex `to_parent[v-1]`. All maps produced here are
/// strictly increasing, so edge orientation is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    to_parent: Vec<usize>,
}

impl VertexMap {
    pub fn identity(m: usize) -> VertexMap {
        VertexMap {
            to_parent: (1..=m).collect(),
        }
    }

    pub fn from_sorted(to_parent: Vec<usize>) -> VertexMap {
        debug_assert!(to_parent.windows(2).all(|w| w[0] < w[1]));
        VertexMap { to_parent }
    }

    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }

    pub fn to_parent(&self, v: usize) -> usize {
        self.to_parent[v - 1]
    }

    pub fn edge_to_parent(&self, (i, j): (usize, usize)) -> (usize, usize) {
        (self.to_parent(i), self.to_parent(j))
    }

    /// Local index of a parent vertex, if it lies in the image.
    pub fn from_parent(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok().map(|k| k + 1)
    }
}

/// How many vertices the peeled edge shares with the rest of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharedVertices {
    /// Exactly one endpoint (its parent index) lies in the remainder.
    One(usize),
    /// Both endpoints lie in the remainder.
    Two,
}

/// Result of splitting off the lexicographically smallest edge.
#[derive(Clone, Debug)]
pub struct Peeling {
    pub edge: (usize, usize),
    pub delta1: Complex1D,
    pub delta1_map: VertexMap,
    pub delta2: Complex1D,
    pub delta2_map: VertexMap,
    pub shared: SharedVertices,
}

impl Complex1D {
    /// Validates a raw vertex count and edge list into canonical form.
    /// Pairs may be given in either order; self-loops, duplicates, and
    /// out-of-range indices are rejected.
    pub fn new(m: usize, raw_edges: &[(usize, usize)]) -> Result<Complex1D, ComplexError> {
        if m == 0 {
            return Err(ComplexError::NoVertices);
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(a, b) in raw_edges {
            if a == b {
                return Err(ComplexError::SelfLoop { vertex: a });
            }
            for v in [a, b] {
                if v == 0 || v > m {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, m });
                }
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateEdge { edge: w[0] });
        }
        let mut incident = vec![Vec::new(); m];
        for (idx, &(i, j)) in edges.iter().enumerate() {
            incident[i - 1].push(idx);
            incident[j - 1].push(idx);
        }
        let isolated = (1..=m).filter(|&v| incident[v - 1].is_empty()).collect();
        Ok(Complex1D {
            m,
            edges,
            isolated,
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn isolated(&self) -> &[usize] {
        &self.isolated
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.incident[v - 1].is_empty()
    }

    /// Position of an isolated vertex in the isolated list.
    pub fn isolated_index(&self, v: usize) -> Option<usize> {
        self.isolated.binary_search(&v).ok()
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }

    /// Indices into `edges()` of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v - 1]
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.m];
        let mut count = 0;
        for start in 0..self.m {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = count;
            while let Some(v) = stack.pop() {
                for &e in &self.incident[v] {
                    let (i, j) = self.edges[e];
                    for u in [i - 1, j - 1] {
                        if label[u] == usize::MAX {
                            label[u] = count;
                            stack.push(u);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Splits into connected components, each with the strictly increasing
    /// relabeling of its vertices back into this complex.
    pub fn components(&self) -> Vec<(Complex1D, VertexMap)> {
        let (label, count) = self.component_labels();
        let mut vertices: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 1..=self.m {
            vertices[label[v - 1]].push(v);
        }
        let mut out = Vec::with_capacity(count);
        for verts in vertices {
            let map = VertexMap::from_sorted(verts);
            let local_edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .filter(|&&(i, _)| map.from_parent(i).is_some())
                .map(|&(i, j)| (map.from_parent(i).unwrap(), map.from_parent(j).unwrap()))
                .collect();
            let comp = Complex1D::new(map.len(), &local_edges)
                .expect("component of a valid complex is valid");
            out.push((comp, map));
        }
        out
    }

    /// Splits off the lexicographically smallest edge. `delta2` is the
    /// closure of the remaining edges and never contains isolated vertices.
    pub fn peel(&self) -> Result<Peeling, ComplexError> {
        if !self.is_connected() {
            return Err(ComplexError::NotConnected);
        }
        if self.edges.len() < 2 {
            return Err(ComplexError::TooFewEdges {
                edges: self.edges.len(),
            });
        }
        let edge = self.edges[0];
        let delta1 = Complex1D::new(2, &[(1, 2)]).unwrap();
        let delta1_map = VertexMap::from_sorted(vec![edge.0, edge.1]);

        let rest = &self.edges[1..];
        let mut verts: Vec<usize> = rest.iter().flat_map(|&(i, j)| [i, j]).collect();
        verts.sort_unstable();
        verts.dedup();
        let delta2_map = VertexMap::from_sorted(verts);
        let local_edges: Vec<(usize, usize)> = rest
            .iter()
            .map(|&(i, j)| {
                (
                    delta2_map.from_parent(i).unwrap(),
                    delta2_map.from_parent(j).unwrap(),
                )
            })
            .collect();
        let delta2 = Complex1D::new(delta2_map.len(), &local_edges).unwrap();

        let in2 = (
            delta2_map.from_parent(edge.0).is_some(),
            delta2_map.from_parent(edge.1).is_some(),
        );
        let shared = match in2 {
            (true, true) => SharedVertices::Two,
            (true, false) => SharedVertices::One(edge.0),
            (false, true) => SharedVertices::One(edge.1),
            (false, false) => return Err(ComplexError::NotConnected),
        };
        Ok(Peeling {
            edge,
            delta1,
            delta1_map,
            delta2,
            delta2_map,
            shared,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Complex1D {
        Complex1D::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_boundary_is_valid() {
        let c = triangle();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.isolated_count(), 0);
        assert!(c.is_connected());
    }

    #[test]
    fn two_isolated_points() {
        let c = Complex1D::new(2, &[]).unwrap();
        assert_eq!(c.isolated_count(), 2);
        assert_eq!(c.isolated(), &[1, 2]);
        assert!(!c.is_connected());
    }

    #[test]
    fn self_loop_rejected() {
        let err = Complex1D::new(3, &[(1, 2), (2, 2)]).unwrap_err();
        assert_eq!(err, ComplexError::SelfLoop { vertex: 2 });
    }

    #[test]
    fn reversed_and_duplicate_edges() {
        let c = Complex1D::new(3, &[(2, 1)]).unwrap();
        assert_eq!(c.edges(), &[(1, 2)]);
        let err = Complex1D::new(3, &[(1, 2), (2, 1)]).unwrap_err();
        assert_eq!(err, ComplexError::DuplicateEdge { edge: (1, 2) });
    }

    #[test]
    fn components_of_path_and_split() {
        let path = Complex1D::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.components().len(), 1);

        let split = Complex1D::new(4, &[(1, 2), (3, 4)]).unwrap();
        let comps = split.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].1.to_parent(2), 2);
        assert_eq!(comps[1].1.to_parent(1), 3);

        let points = Complex1D::new(2, &[]).unwrap();
        assert_eq!(points.components().len(), 2);
    }

    #[test]
    fn components_partition_vertices_and_edges() {
        let c = Complex1D::new(7, &[(1, 5), (2, 3), (5, 7)]).unwrap();
        let comps = c.components();
        let mut vertex_total = 0;
        let mut edge_total = 0;
        let mut isolated_total = 0;
        for (comp, _) in &comps {
            vertex_total += comp.vertex_count();
            edge_total += comp.edge_count();
            isolated_total += comp.isolated_count();
        }
        assert_eq!(vertex_total, 7);
        assert_eq!(edge_total, 3);
        assert_eq!(isolated_total, c.isolated_count());
    }

    #[test]
    fn peel_triangle_shares_two() {
        let p = triangle().peel().unwrap();
        assert_eq!(p.edge, (1, 2));
        assert_eq!(p.delta2.edge_count(), 2);
        assert_eq!(p.shared, SharedVertices::Two);
        // adjacency oracle: remaining edges form the path 1-3-2
        assert_eq!(p.delta2.edges(), &[(1, 3), (2, 3)]);
        assert_eq!(p.delta2_map.to_parent(3), 3);
    }

    #[test]
    fn peel_path_shares_one() {
        let path = Complex1D::new(3, &[(1, 2), (2, 3)]).unwrap();
        let p = path.peel().unwrap();
        assert_eq!(p.edge, (1, 2));
        assert_eq!(p.shared, SharedVertices::One(2));
        assert_eq!(p.delta2.edge_count(), 1);
    }

    #[test]
    fn peel_star_shares_center() {
        let star = Complex1D::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let p = star.peel().unwrap();
        assert_eq!(p.edge, (1, 2));
        assert_eq!(p.shared, SharedVertices::One(1));
    }

    #[test]
    fn peel_reunion_reproduces_edges() {
        let c = Complex1D::new(5, &[(1, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let p = c.peel().unwrap();
        let mut edges: Vec<(usize, usize)> = p
            .delta2
            .edges()
            .iter()
            .map(|&e| p.delta2_map.edge_to_parent(e))
            .collect();
        edges.push(p.edge);
        edges.sort_unstable();
        assert_eq!(edges.as_slice(), c.edges());
    }

    #[test]
    fn peel_preconditions() {
        let split = Complex1D::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(split.peel().unwrap_err(), ComplexError::NotConnected);
        let single = Complex1D::new(2, &[(1, 2)]).unwrap();
        assert_eq!(
            single.peel().unwrap_err(),
            ComplexError::TooFewEdges { edges: 1 }
        );
    }
}
