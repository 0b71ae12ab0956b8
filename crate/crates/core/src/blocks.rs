//! Blocks of the envelope graph and the factorization they induce.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::Alphabet;
use crate::envelope::{
    automaton_language, build_envelope_capped, dot_escape, to_transition_system, EnvelopeSpace,
    TransitionSystem, DEFAULT_MAX_POINTS,
};
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::upset::UpSet;

/// A simple undirected graph; loops are left implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    /// Pairs `(p, q)` with `p < q`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let edges = edges
            .into_iter()
            .filter(|(p, q)| p != q)
            .map(|(p, q)| (p.min(q), p.max(q)))
            .collect();
        Graph { vertices, edges }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![vec![]; self.vertices];
        for &(p, q) in &self.edges {
            adj[p].push(q);
            adj[q].push(p);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Edge `{p, q}` whenever some letter leads from `p` to `q ≠ p`.
pub fn graph_of(m: &TransitionSystem) -> Graph {
    Graph::new(m.states, m.trans.iter().map(|&(p, _, q)| (p, q)))
}

/// Biconnected components as vertex sets, each sorted; isolated vertices
/// form their own block.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    struct Dfs {
        adj: Vec<Vec<usize>>,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<usize>>,
    }

    impl Dfs {
        fn visit(&mut self, u: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for i in 0..self.adj[u].len() {
                let v = self.adj[u][i];
                if self.disc[v] == 0 {
                    self.stack.push((u, v));
                    self.visit(v, Some(u));
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = self.stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        self.blocks.push(block.into_iter().collect());
                    }
                } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }

    let n = g.vertices;
    let mut dfs = Dfs {
        adj: g.adjacency(),
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: vec![],
        blocks: vec![],
    };
    for v in 0..n {
        if dfs.disc[v] == 0 {
            if dfs.adj[v].is_empty() {
                dfs.disc[v] = usize::MAX;
                dfs.blocks.push(vec![v]);
            } else {
                dfs.visit(v, None);
            }
        }
    }
    dfs.blocks.sort();
    dfs.blocks
}

/// Vertices lying in more than one block.
pub fn cut_vertices(g: &Graph) -> BTreeSet<usize> {
    let mut count = vec![0usize; g.vertices];
    for block in biconnected_components(g) {
        for v in block {
            count[v] += 1;
        }
    }
    (0..g.vertices).filter(|&v| count[v] > 1).collect()
}

/// Blocks `C_0 … C_{n-1}` from `x` to `y`, with `cuts[i] = C_i ∩ C_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPath {
    pub blocks: Vec<Vec<usize>>,
    pub cuts: Vec<usize>,
}

impl BlockPath {
    /// Entry and exit vertex of each block.
    pub fn ends(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        (0..self.blocks.len())
            .map(|i| {
                let from = if i == 0 { x } else { self.cuts[i - 1] };
                let to = if i + 1 == self.blocks.len() {
                    y
                } else {
                    self.cuts[i]
                };
                (from, to)
            })
            .collect()
    }
}

/// Orders the blocks of a connected graph along the path from `x` to `y`.
///
/// Fails unless the blocks form a path whose end blocks hold `x` and `y`,
/// neither of which may be a cut vertex.
pub fn block_decomposition(g: &Graph, x: usize, y: usize) -> Result<BlockPath> {
    if x >= g.vertices || y >= g.vertices {
        return Err(Error::Precondition("endpoint outside the graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected(format!(
            "graph on {} vertices is not connected",
            g.vertices
        )));
    }
    let blocks = biconnected_components(g);
    let cuts = cut_vertices(g);
    let violation = |what: &str| Error::Invariant(format!("envelope structure violation: {what}"));
    if cuts.contains(&x) || cuts.contains(&y) {
        return Err(violation("an endpoint is a cut vertex"));
    }
    let holding = |v: usize| blocks.iter().position(|b| b.contains(&v)).expect("covered");
    let (start, goal) = (holding(x), holding(y));

    let mut prev = vec![usize::MAX; blocks.len()];
    let mut seen = vec![false; blocks.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for (c, other) in blocks.iter().enumerate() {
            if !seen[c]
                && blocks[b]
                    .iter()
                    .any(|v| cuts.contains(v) && other.contains(v))
            {
                seen[c] = true;
                prev[c] = b;
                queue.push_back(c);
            }
        }
    }
    let mut order = vec![goal];
    while *order.last().expect("nonempty") != start {
        order.push(prev[*order.last().expect("nonempty")]);
    }
    order.reverse();
    if order.len() != blocks.len() {
        return Err(violation("blocks do not form a path between the endpoints"));
    }
    let path: Vec<Vec<usize>> = order.iter().map(|&b| blocks[b].clone()).collect();
    let mut shared = vec![];
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            let common: Vec<usize> = path[i]
                .iter()
                .filter(|v| path[j].contains(v))
                .copied()
                .collect();
            match (j == i + 1, common.len()) {
                (true, 1) => shared.push(common[0]),
                (false, 0) => {}
                _ => return Err(violation("blocks overlap off the path")),
            }
        }
    }
    Ok(BlockPath {
        blocks: path,
        cuts: shared,
    })
}

/// Factors of `F` read off the blocks of its envelope graph.
pub fn factorize_via_blocks(alphabet: &Alphabet, f: &UpSet) -> Result<Factorization> {
    factorize_via_blocks_capped(alphabet, f, DEFAULT_MAX_POINTS)
}

pub fn factorize_via_blocks_capped(
    alphabet: &Alphabet,
    f: &UpSet,
    max_points: usize,
) -> Result<Factorization> {
    if f.is_empty() {
        return Err(Error::EmptySegment("empty segment has no factorization"));
    }
    if f.is_all() {
        return Err(Error::Precondition("A* has no blocks to factor".into()));
    }
    let s = build_envelope_capped(alphabet, f, max_points)?;
    let m = to_transition_system(alphabet, &s);
    let path = block_decomposition(&graph_of(&m), s.x, s.y)?;
    Ok(factors_from_blocks(alphabet, &s, &m, &path))
}

/// The language of each block automaton, from its entry to its exit vertex.
pub fn factors_from_blocks(
    alphabet: &Alphabet,
    s: &EnvelopeSpace,
    m: &TransitionSystem,
    path: &BlockPath,
) -> Factorization {
    if path.blocks.len() == 1 {
        return Factorization {
            factors: vec![s.segment().clone()],
        };
    }
    let factors = path
        .blocks
        .iter()
        .zip(path.ends(s.x, s.y))
        .map(|(block, (from, to))| {
            let local = m.restrict(alphabet, block);
            let at = |v: usize| block.iter().position(|&b| b == v).expect("in block");
            automaton_language(alphabet, &local, at(from), at(to))
        })
        .collect();
    Factorization { factors }
}

/// The envelope graph in DOT: one color per block, cut vertices boxed.
pub fn blocks_dot(alphabet: &Alphabet, s: &EnvelopeSpace, g: &Graph, path: &BlockPath) -> String {
    const COLORS: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];
    let mut out = String::from("graph blocks {\n");
    for (i, p) in s.points.iter().enumerate() {
        let shape = if path.cuts.contains(&i) {
            "box"
        } else if i == s.x || i == s.y {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!(
            "  {i} [label=\"{}\", shape={shape}];\n",
            dot_escape(&p.display(alphabet).to_string())
        ));
    }
    for &(p, q) in &g.edges {
        let block = path
            .blocks
            .iter()
            .position(|b| b.contains(&p) && b.contains(&q))
            .unwrap_or(0);
        out.push_str(&format!(
            "  {p} -- {q} [color={}];\n",
            COLORS[block % COLORS.len()]
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::build_envelope;
    use crate::factor::{factorize, is_irreducible};

    fn ab() -> Alphabet {
        Alphabet::discrete(&["a", "b"]).unwrap()
    }

    fn up(al: &Alphabet, ws: &[&str]) -> UpSet {
        UpSet::parse(al, ws).unwrap()
    }

    #[test]
    fn graphs_of_small_envelopes() {
        let al = ab();
        let m = to_transition_system(&al, &build_envelope(&al, &up(&al, &["ab"])));
        assert_eq!(graph_of(&m), Graph::new(3, [(0, 1), (1, 2)]));
        let m = to_transition_system(&al, &build_envelope(&al, &UpSet::all()));
        assert_eq!(graph_of(&m), Graph::new(1, []));
        let m = to_transition_system(&al, &build_envelope(&al, &UpSet::empty()));
        let g = graph_of(&m);
        assert_eq!(g, Graph::new(2, []));
        assert!(matches!(
            block_decomposition(&g, 1, 0),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn block_examples() {
        let path3 = Graph::new(3, [(0, 1), (1, 2)]);
        assert_eq!(
            block_decomposition(&path3, 0, 2).unwrap(),
            BlockPath {
                blocks: vec![vec![0, 1], vec![1, 2]],
                cuts: vec![1]
            }
        );
        let triangle = Graph::new(3, [(0, 1), (1, 2), (0, 2)]);
        let bp = block_decomposition(&triangle, 0, 2).unwrap();
        assert_eq!(bp.blocks, vec![vec![0, 1, 2]]);
        assert!(bp.cuts.is_empty());
        let path4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            block_decomposition(&path4, 0, 3).unwrap(),
            BlockPath {
                blocks: vec![vec![0, 1], vec![1, 2], vec![2, 3]],
                cuts: vec![1, 2]
            }
        );
        assert_eq!(
            block_decomposition(&path4, 3, 0).unwrap().blocks,
            vec![vec![2, 3], vec![1, 2], vec![0, 1]]
        );
        let single = Graph::new(1, []);
        assert_eq!(
            block_decomposition(&single, 0, 0).unwrap().blocks,
            vec![vec![0]]
        );
    }

    #[test]
    fn non_path_block_trees_are_rejected() {
        // A star: the centre is a cut vertex shared by three blocks.
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]);
        assert!(matches!(
            block_decomposition(&star, 1, 2),
            Err(Error::Invariant(_))
        ));
        let path3 = Graph::new(3, [(0, 1), (1, 2)]);
        assert!(matches!(
            block_decomposition(&path3, 1, 2),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(cut_vertices(&g), BTreeSet::from([2]));
        let bp = block_decomposition(&g, 0, 4).unwrap();
        assert_eq!(bp.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let edges: usize = bp
            .blocks
            .iter()
            .map(|b| {
                g.edges
                    .iter()
                    .filter(|(p, q)| b.contains(p) && b.contains(q))
                    .count()
            })
            .sum();
        assert_eq!(edges, g.edges.len());
    }

    #[test]
    fn factorization_examples() {
        let al = ab();
        assert_eq!(
            factorize_via_blocks(&al, &up(&al, &["ab"]))
                .unwrap()
                .factors,
            vec![up(&al, &["a"]), up(&al, &["b"])]
        );
        assert_eq!(
            factorize_via_blocks(&al, &up(&al, &["aa", "bb"]))
                .unwrap()
                .factors,
            vec![up(&al, &["aa", "bb"])]
        );
        assert_eq!(
            factorize_via_blocks(&al, &up(&al, &["abb"]))
                .unwrap()
                .factors,
            vec![up(&al, &["a"]), up(&al, &["b"]), up(&al, &["b"])]
        );
        assert!(factorize_via_blocks(&al, &UpSet::all()).is_err());
        assert!(factorize_via_blocks(&al, &UpSet::empty()).is_err());
    }

    #[test]
    fn blocks_agree_with_split_search_on_small_segments() {
        let al = Alphabet::discrete(&["a", "b", "c"]).unwrap();
        for gens in [
            vec!["ab", "ba"],
            vec!["abc", "cba"],
            vec!["aab", "abb"],
            vec!["acb", "bcb"],
            vec!["abab"],
            vec!["ca", "cb", "ac", "bc"],
        ] {
            let f = up(&al, &gens);
            let blocks = factorize_via_blocks(&al, &f).unwrap();
            assert_eq!(blocks, factorize(&al, &f).unwrap(), "{gens:?}");
            let s = build_envelope(&al, &f);
            let g = graph_of(&to_transition_system(&al, &s));
            assert_eq!(
                cut_vertices(&g).is_empty(),
                is_irreducible(&al, &f),
                "{gens:?}"
            );
        }
    }

    #[test]
    fn dot_marks_cut_vertices() {
        let al = ab();
        let s = build_envelope(&al, &up(&al, &["ab"]));
        let g = graph_of(&to_transition_system(&al, &s));
        let bp = block_decomposition(&g, s.x, s.y).unwrap();
        let dot = blocks_dot(&al, &s, &g, &bp);
        assert!(dot.contains("1 [label=\"↑{a}\", shape=box]"));
        assert!(dot.contains("0 -- 1 [color=blue]"));
        assert!(dot.contains("1 -- 2 [color=red]"));
    }
}
