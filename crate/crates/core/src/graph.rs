//! Finite simple graphs and the neighbourhood preorder on their vertices.
//!
//! Vertices are numbered `1..=n`. Edges keep the order in which they were
//! given: edge `α` (0-based position) is the one whose bracket produces the
//! central generator `z_{α+1}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The worked example: `K₄ ⊔ K₃ ⊔ K₂ ⊔ K₂ ⊔ K₁` with the edge order of its
/// bracket table.
pub const EXAMPLE_GRAPH: &str = "\
# K4 + K3 + K2 + K2 + K1
12
1 2
2 3
1 3
1 4
2 4
3 4
5 6
6 7
5 7
8 9
10 11
";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    index: HashMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        Graph::new(doc.vertices, &doc.edges)
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            vertices: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Validates vertex range, loops and duplicates. Edge endpoints are stored
    /// with the smaller vertex first.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let invalid = |message: String| Error::Parse { line: 0, message };
        if n == 0 {
            return Err(invalid("graph needs at least one vertex".into()));
        }
        let mut g = Graph {
            n,
            edges: Vec::with_capacity(edges.len()),
            index: HashMap::new(),
        };
        for &(a, b) in edges {
            g.push_edge(a, b).map_err(invalid)?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, a: usize, b: usize) -> std::result::Result<(), String> {
        if a == b {
            return Err(format!("loop at vertex {a}"));
        }
        for v in [a, b] {
            if v == 0 || v > self.n {
                return Err(format!("vertex {v} out of range 1..={}", self.n));
            }
        }
        let key = (a.min(b), a.max(b));
        if self.index.contains_key(&key) {
            return Err(format!("duplicate edge {}-{}", key.0, key.1));
        }
        self.index.insert(key, self.edges.len());
        self.edges.push(key);
        Ok(())
    }

    /// Parse the line format: vertex count, then one `i j` pair per line.
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    let [count] = fields[..] else {
                        return Err(err(format!("expected a vertex count, found {line:?}")));
                    };
                    let n: usize = count
                        .parse()
                        .map_err(|_| err(format!("invalid vertex count {count:?}")))?;
                    if n == 0 {
                        return Err(err("graph needs at least one vertex".into()));
                    }
                    graph = Some(Graph {
                        n,
                        edges: Vec::new(),
                        index: HashMap::new(),
                    });
                }
                Some(g) => {
                    let [a, b] = fields[..] else {
                        return Err(err(format!("expected an edge `i j`, found {line:?}")));
                    };
                    let a: usize = a.parse().map_err(|_| err(format!("invalid vertex {a:?}")))?;
                    let b: usize = b.parse().map_err(|_| err(format!("invalid vertex {b:?}")))?;
                    g.push_edge(a, b).map_err(err)?;
                }
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            message: "empty graph file".into(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    pub fn example() -> Self {
        Self::parse(EXAMPLE_GRAPH).expect("embedded example graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        Self::new(n, &edges).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges).expect("path graph")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, &[]).expect("edgeless graph")
    }

    /// Disjoint union, relabelling `other`'s vertices after `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        Graph::new(self.n + other.n, &edges).expect("union of valid graphs")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// 0-based position of the edge `{a, b}`.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        !self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    /// `Ω′_i`: the neighbours of `i`.
    pub open: BTreeSet<usize>,
    /// `Ω_i = Ω′_i ∪ {i}`.
    pub closed: BTreeSet<usize>,
}

/// Indexed by `vertex - 1`.
pub fn neighborhoods(g: &Graph) -> Vec<Neighborhood> {
    g.vertices()
        .map(|i| {
            let open: BTreeSet<usize> = g
                .edges
                .iter()
                .filter_map(|&(a, b)| match (a == i, b == i) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .collect();
            let mut closed = open.clone();
            closed.insert(i);
            Neighborhood { open, closed }
        })
        .collect()
}

/// `i ⪯ j` iff `Ω′_i ⊆ Ω_j`.
pub fn preceq(g: &Graph, i: usize, j: usize) -> bool {
    let hoods = neighborhoods(g);
    hoods[i - 1].open.is_subset(&hoods[j - 1].closed)
}

/// The full `⪯` table, `table[i-1][j-1] = (i ⪯ j)`.
pub fn preceq_table(g: &Graph) -> Vec<Vec<bool>> {
    let hoods = neighborhoods(g);
    hoods
        .iter()
        .map(|hi| hoods.iter().map(|hj| hi.open.is_subset(&hj.closed)).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    Complete,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub vertices: Vec<usize>,
    pub kind: ClassKind,
}

/// The `∼`-classes of the vertex set and the partial order `⪯` induced on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartition {
    /// Sorted by smallest vertex.
    pub classes: Vec<VertexClass>,
    /// Strict relations `(a, b)`: class `a` precedes class `b`.
    pub order: Vec<(usize, usize)>,
}

impl ClassPartition {
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.vertices.contains(&v))
            .expect("every vertex lies in a class")
    }
}

/// Classes of `i ∼ j ⟺ i ⪯ j ∧ j ⪯ i`, each tagged Complete or Empty.
///
/// Singleton classes are tagged Empty. Panics if some class induces a subgraph
/// that is neither complete nor edgeless, which the preorder rules out.
pub fn equivalence_classes(g: &Graph) -> ClassPartition {
    let table = preceq_table(g);
    let n = g.vertex_count();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let members: Vec<usize> = (i..n)
            .filter(|&j| table[i][j] && table[j][i])
            .inspect(|&j| assigned[j] = true)
            .map(|j| j + 1)
            .collect();
        let pairs = members.len() * (members.len() - 1) / 2;
        let inside = members
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| members[k + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| g.adjacent(a, b))
            .count();
        let kind = if members.len() > 1 && inside == pairs {
            ClassKind::Complete
        } else if inside == 0 {
            ClassKind::Empty
        } else {
            panic!(
                "equivalence class {members:?} induces a subgraph with {inside} of {pairs} \
                 possible edges; classes must be complete or edgeless"
            );
        };
        classes.push(VertexClass {
            vertices: members,
            kind,
        });
    }
    let mut order = Vec::new();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if a != b && table[ca.vertices[0] - 1][cb.vertices[0] - 1] {
                order.push((a, b));
            }
        }
    }
    ClassPartition { classes, order }
}

/// Connected-component view of a graph as a disjoint union of cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDecomposition {
    pub is_cluster: bool,
    /// `𝒞₀`: isolated vertices.
    pub isolated: Vec<usize>,
    /// `𝒞₁ … 𝒞_p`: components with at least two vertices, ordered by smallest
    /// vertex. Only meaningful when `is_cluster`.
    pub cliques: Vec<Vec<usize>>,
    /// An edge whose endpoints are not `∼`-equivalent, when one exists.
    pub witness_edge: Option<(usize, usize)>,
}

impl ClusterDecomposition {
    pub fn clique_of(&self, v: usize) -> Option<usize> {
        self.cliques.iter().position(|c| c.contains(&v))
    }
}

/// Whether every connected component is a complete graph.
pub fn is_cluster_graph(g: &Graph) -> ClusterDecomposition {
    let n = g.vertex_count();
    let hoods = neighborhoods(g);
    let mut component = vec![usize::MAX; n + 1];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        component[start] = id;
        let mut k = 0;
        while k < members.len() {
            for &w in &hoods[members[k] - 1].open {
                if component[w] == usize::MAX {
                    component[w] = id;
                    members.push(w);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    let is_cluster = components.iter().all(|c| {
        c.iter()
            .all(|&v| hoods[v - 1].open.len() == c.len() - 1)
    });
    let table = preceq_table(g);
    let witness_edge = g
        .edges()
        .iter()
        .copied()
        .find(|&(a, b)| !(table[a - 1][b - 1] && table[b - 1][a - 1]));
    let (isolated, cliques): (Vec<_>, Vec<_>) = components.into_iter().partition(|c| c.len() == 1);
    ClusterDecomposition {
        is_cluster,
        isolated: isolated.into_iter().flatten().collect(),
        cliques,
        witness_edge,
    }
}
