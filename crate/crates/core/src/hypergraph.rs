//! Hypergraph primitives: vertices, k-uniform edges, colorings, and
//! monochromatic-clique detection.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 1-based vertex index; vertex `i` is revealed at round `i`.
pub type VertexId = u32;

/// 1-based color index in `[q]`.
pub type Color = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("uniformity must be at least 2, got {0}")]
    UniformityTooSmall(usize),
    #[error("at least one color is required")]
    NoColors,
    #[error("at most 255 colors are supported, got {0}")]
    TooManyColors(usize),
    #[error("target t_{color} = {target} is below the uniformity k = {k}")]
    TargetBelowUniformity { color: usize, target: u32, k: usize },
}

/// Game parameters: uniformity `k`, target clique sizes `t_1..t_q`.
///
/// The color count `q` is the number of targets. `t_c = k` is admitted
/// (a single edge of color `c` already forms a monochromatic clique).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameParams {
    uniformity: usize,
    targets: Vec<u32>,
}

impl GameParams {
    pub fn new(uniformity: usize, targets: Vec<u32>) -> Result<Self, ParamsError> {
        if uniformity < 2 {
            return Err(ParamsError::UniformityTooSmall(uniformity));
        }
        if targets.is_empty() {
            return Err(ParamsError::NoColors);
        }
        if targets.len() > 255 {
            return Err(ParamsError::TooManyColors(targets.len()));
        }
        for (i, &t) in targets.iter().enumerate() {
            if (t as usize) < uniformity {
                return Err(ParamsError::TargetBelowUniformity {
                    color: i + 1,
                    target: t,
                    k: uniformity,
                });
            }
        }
        Ok(GameParams {
            uniformity,
            targets,
        })
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn num_colors(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    /// Target clique size for a 1-based color.
    pub fn target(&self, color: Color) -> u32 {
        self.targets[color as usize - 1]
    }

    pub fn color_in_range(&self, color: Color) -> bool {
        color >= 1 && (color as usize) <= self.targets.len()
    }

    /// Iterator over all colors `1..=q`.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (1..=self.targets.len() as u8).map(|c| c as Color)
    }

    /// Parameters one level down: uniformity k-1, every target reduced by one.
    /// This is the instance the recursive builder plays as a sub-game.
    pub fn sub_params(&self) -> Result<Self, ParamsError> {
        GameParams::new(
            self.uniformity - 1,
            self.targets.iter().map(|t| t - 1).collect(),
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeError {
    #[error("edge has {got} vertices, expected uniformity {expected}")]
    WrongArity { got: usize, expected: usize },
    #[error("duplicate vertex {0} in edge")]
    DuplicateVertex(VertexId),
    #[error("vertex indices are 1-based; got 0")]
    NonPositiveVertex,
}

/// A k-uniform edge in canonical form: strictly increasing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Canonicalizes `indices` into a sorted edge of the given uniformity.
    pub fn new(indices: &[VertexId], uniformity: usize) -> Result<Self, EdgeError> {
        if indices.len() != uniformity {
            return Err(EdgeError::WrongArity {
                got: indices.len(),
                expected: uniformity,
            });
        }
        if indices.contains(&0) {
            return Err(EdgeError::NonPositiveVertex);
        }
        let mut v = indices.to_vec();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(EdgeError::DuplicateVertex(w[0]));
            }
        }
        Ok(Edge(v))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// The largest vertex; with 1-at-a-time revelation this is the edge's
    /// "current round" vertex.
    pub fn max_vertex(&self) -> VertexId {
        *self.0.last().expect("edges are never empty")
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0} already present")]
    DuplicateEdge(Edge),
    #[error("edge {edge} uses vertex {vertex} but only {revealed} vertices are revealed")]
    VertexNotRevealed {
        edge: Edge,
        vertex: VertexId,
        revealed: u32,
    },
    #[error("color {0} out of range")]
    ColorOutOfRange(Color),
    #[error(transparent)]
    Edge(#[from] EdgeError),
}

/// A partially built, edge-colored k-uniform hypergraph on an ordered
/// vertex set. This is the shared board both players see.
#[derive(Debug, Clone)]
pub struct ColoredHypergraph {
    params: GameParams,
    edge_colors: HashMap<Edge, Color>,
    revealed: u32,
    // (k-1)-subset + color -> vertices w such that subset ∪ {w} is an edge of
    // that color. Drives incremental clique detection.
    extensions: HashMap<(Vec<VertexId>, Color), BTreeSet<VertexId>>,
}

impl ColoredHypergraph {
    pub fn new(params: GameParams) -> Self {
        ColoredHypergraph {
            params,
            edge_colors: HashMap::new(),
            revealed: 0,
            extensions: HashMap::new(),
        }
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn revealed(&self) -> u32 {
        self.revealed
    }

    pub fn reveal_next(&mut self) -> VertexId {
        self.revealed += 1;
        self.revealed
    }

    pub fn num_edges(&self) -> usize {
        self.edge_colors.len()
    }

    pub fn color_of(&self, edge: &Edge) -> Option<Color> {
        self.edge_colors.get(edge).copied()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edge_colors.contains_key(edge)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Edge, Color)> {
        self.edge_colors.iter().map(|(e, &c)| (e, c))
    }

    pub fn insert_edge(&mut self, edge: Edge, color: Color) -> Result<(), GraphError> {
        if !self.params.color_in_range(color) {
            return Err(GraphError::ColorOutOfRange(color));
        }
        if edge.len() != self.params.uniformity() {
            return Err(EdgeError::WrongArity {
                got: edge.len(),
                expected: self.params.uniformity(),
            }
            .into());
        }
        if edge.max_vertex() > self.revealed {
            return Err(GraphError::VertexNotRevealed {
                vertex: edge.max_vertex(),
                revealed: self.revealed,
                edge,
            });
        }
        if self.edge_colors.contains_key(&edge) {
            return Err(GraphError::DuplicateEdge(edge));
        }
        let vs = edge.vertices().to_vec();
        for_each_k_subset(&vs, vs.len() - 1, |sub| {
            let w = vs.iter().copied().find(|v| !sub.contains(v)).unwrap();
            self.extensions
                .entry((sub.to_vec(), color))
                .or_default()
                .insert(w);
        });
        self.edge_colors.insert(edge, color);
        Ok(())
    }

    /// True iff `vertices` spans a monochromatic clique of the given color:
    /// every k-subset is an edge colored `color`.
    pub fn is_mono_clique(&self, color: Color, vertices: &[VertexId]) -> bool {
        let k = self.params.uniformity();
        if vertices.len() < k {
            return false;
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return false;
        }
        let mut ok = true;
        for_each_k_subset(&sorted, k, |sub| {
            if ok {
                let e = Edge(sub.to_vec());
                if self.edge_colors.get(&e) != Some(&color) {
                    ok = false;
                }
            }
        });
        ok
    }

    /// Searches for a monochromatic target clique: a color `c` and `t_c`
    /// vertices all of whose k-subsets are edges colored `c`.
    ///
    /// With `newest` given, only cliques containing that edge are searched
    /// (the incremental mode used after each build); `None` scans everything.
    pub fn find_mono_clique(&self, newest: Option<&Edge>) -> Option<(Color, Vec<VertexId>)> {
        match newest {
            Some(e) => {
                let c = self.color_of(e)?;
                self.find_clique_through(c, e)
            }
            None => {
                for c in self.params.colors() {
                    if let Some(hit) = self.find_clique_full(c) {
                        return Some((c, hit));
                    }
                }
                None
            }
        }
    }

    fn find_clique_through(&self, color: Color, edge: &Edge) -> Option<(Color, Vec<VertexId>)> {
        let k = self.params.uniformity();
        let t = self.params.target(color) as usize;
        if t == k {
            return Some((color, edge.vertices().to_vec()));
        }
        let pool = self.common_extensions(color, edge);
        let need = t - k;
        if pool.len() < need {
            return None;
        }
        let mut found: Option<Vec<VertexId>> = None;
        for_each_k_subset(&pool, need, |extra| {
            if found.is_some() {
                return;
            }
            let mut all = edge.vertices().to_vec();
            all.extend_from_slice(extra);
            all.sort_unstable();
            if self.is_mono_clique(color, &all) {
                found = Some(all);
            }
        });
        found.map(|v| (color, v))
    }

    /// Vertices `w` such that every k-subset of `edge ∪ {w}` containing `w`
    /// is an edge of the given color.
    fn common_extensions(&self, color: Color, edge: &Edge) -> Vec<VertexId> {
        let vs = edge.vertices();
        let mut subs: Vec<Vec<VertexId>> = Vec::with_capacity(vs.len());
        for_each_k_subset(vs, vs.len() - 1, |sub| subs.push(sub.to_vec()));
        let mut sets = Vec::with_capacity(subs.len());
        for sub in &subs {
            match self.extensions.get(&(sub.clone(), color)) {
                Some(s) => sets.push(s),
                None => return Vec::new(),
            }
        }
        sets.sort_by_key(|s| s.len());
        let (first, rest) = sets.split_first().expect("k >= 2 gives k >= 2 subsets");
        first
            .iter()
            .copied()
            .filter(|w| !edge.contains(*w) && rest.iter().all(|s| s.contains(w)))
            .collect()
    }

    fn find_clique_full(&self, color: Color) -> Option<Vec<VertexId>> {
        let k = self.params.uniformity();
        let t = self.params.target(color) as usize;
        if t == k {
            return self
                .edge_colors
                .iter()
                .filter(|(_, &c)| c == color)
                .map(|(e, _)| e.vertices().to_vec())
                .min();
        }
        // Only vertices with enough incident edges of this color can be in a
        // t-clique: each clique member lies in C(t-1, k-1) of its edges.
        let mut degree: HashMap<VertexId, usize> = HashMap::new();
        for (e, &c) in &self.edge_colors {
            if c == color {
                for &v in e.vertices() {
                    *degree.entry(v).or_default() += 1;
                }
            }
        }
        let min_deg = binomial_usize(t - 1, k - 1);
        let mut candidates: Vec<VertexId> = degree
            .iter()
            .filter(|(_, &d)| d >= min_deg)
            .map(|(&v, _)| v)
            .collect();
        candidates.sort_unstable();
        if candidates.len() < t {
            return None;
        }
        let mut chosen = Vec::with_capacity(t);
        self.extend_clique(color, t, &candidates, 0, &mut chosen)
    }

    fn extend_clique(
        &self,
        color: Color,
        t: usize,
        candidates: &[VertexId],
        from: usize,
        chosen: &mut Vec<VertexId>,
    ) -> Option<Vec<VertexId>> {
        let k = self.params.uniformity();
        if chosen.len() == t {
            return Some(chosen.clone());
        }
        for i in from..candidates.len() {
            let v = candidates[i];
            let compatible = if chosen.len() < k - 1 {
                true
            } else {
                let mut ok = true;
                for_each_k_subset(chosen, k - 1, |sub| {
                    if ok {
                        let mut e = sub.to_vec();
                        e.push(v);
                        e.sort_unstable();
                        if self.edge_colors.get(&Edge(e)) != Some(&color) {
                            ok = false;
                        }
                    }
                });
                ok
            };
            if compatible {
                chosen.push(v);
                if let Some(hit) = self.extend_clique(color, t, candidates, i + 1, chosen) {
                    return Some(hit);
                }
                chosen.pop();
            }
        }
        None
    }
}

/// Visits every size-`k` subset of `items` in lexicographic order.
pub fn for_each_k_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    fn rec<T: Copy>(items: &[T], k: usize, from: usize, acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let remaining = k - acc.len();
        for i in from..=items.len().saturating_sub(remaining) {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    if k > items.len() {
        return;
    }
    let mut acc = Vec::with_capacity(k);
    rec(items, k, 0, &mut acc, &mut f);
}

pub(crate) fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: usize, targets: &[u32]) -> GameParams {
        GameParams::new(k, targets.to_vec()).unwrap()
    }

    #[test]
    fn make_edge_canonicalizes() {
        let e = Edge::new(&[3, 1, 2], 3).unwrap();
        assert_eq!(e.vertices(), &[1, 2, 3]);
        assert_eq!(e.max_vertex(), 3);
    }

    #[test]
    fn make_edge_rejects_duplicates() {
        assert_eq!(
            Edge::new(&[1, 1, 2], 3),
            Err(EdgeError::DuplicateVertex(1))
        );
    }

    #[test]
    fn make_edge_rejects_wrong_arity() {
        assert_eq!(
            Edge::new(&[1, 2], 3),
            Err(EdgeError::WrongArity {
                got: 2,
                expected: 3
            })
        );
    }

    #[test]
    fn make_edge_rejects_zero_index() {
        assert_eq!(Edge::new(&[0, 1], 2), Err(EdgeError::NonPositiveVertex));
    }

    #[test]
    fn params_validation() {
        assert!(GameParams::new(2, vec![3, 3]).is_ok());
        assert_eq!(GameParams::new(2, vec![]), Err(ParamsError::NoColors));
        assert!(matches!(
            GameParams::new(3, vec![4, 2]),
            Err(ParamsError::TargetBelowUniformity { color: 2, .. })
        ));
        assert!(matches!(
            GameParams::new(1, vec![3]),
            Err(ParamsError::UniformityTooSmall(1))
        ));
    }

    fn graph_with(k: usize, targets: &[u32], n: u32, edges: &[(&[VertexId], Color)]) -> ColoredHypergraph {
        let mut g = ColoredHypergraph::new(params(k, targets));
        for _ in 0..n {
            g.reveal_next();
        }
        for (vs, c) in edges {
            g.insert_edge(Edge::new(vs, k).unwrap(), *c).unwrap();
        }
        g
    }

    #[test]
    fn single_edge_is_a_k2_clique() {
        let g = graph_with(2, &[2, 2], 2, &[(&[1, 2], 1)]);
        let e = Edge::new(&[1, 2], 2).unwrap();
        assert_eq!(g.find_mono_clique(Some(&e)), Some((1, vec![1, 2])));
    }

    #[test]
    fn mixed_triangle_is_not_monochromatic() {
        let g = graph_with(
            2,
            &[3, 3],
            3,
            &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 2)],
        );
        assert_eq!(g.find_mono_clique(None), None);
    }

    #[test]
    fn full_k4_three_uniform_clique_detected() {
        let g = graph_with(
            3,
            &[4, 4],
            4,
            &[
                (&[1, 2, 3], 1),
                (&[1, 2, 4], 1),
                (&[1, 3, 4], 1),
                (&[2, 3, 4], 1),
            ],
        );
        let newest = Edge::new(&[2, 3, 4], 3).unwrap();
        assert_eq!(
            g.find_mono_clique(Some(&newest)),
            Some((1, vec![1, 2, 3, 4]))
        );
        assert_eq!(g.find_mono_clique(None), Some((1, vec![1, 2, 3, 4])));
    }

    #[test]
    fn insert_rejects_unrevealed_vertex() {
        let mut g = ColoredHypergraph::new(params(2, &[3, 3]));
        g.reveal_next();
        let e = Edge::new(&[1, 2], 2).unwrap();
        assert!(matches!(
            g.insert_edge(e, 1),
            Err(GraphError::VertexNotRevealed { vertex: 2, .. })
        ));
    }

    #[test]
    fn insert_rejects_duplicate_and_bad_color() {
        let mut g = graph_with(2, &[3, 3], 3, &[(&[1, 2], 1)]);
        let e = Edge::new(&[1, 2], 2).unwrap();
        assert!(matches!(
            g.insert_edge(e.clone(), 2),
            Err(GraphError::DuplicateEdge(_))
        ));
        let f = Edge::new(&[1, 3], 2).unwrap();
        assert_eq!(g.insert_edge(f, 3), Err(GraphError::ColorOutOfRange(3)));
    }

    #[test]
    fn subset_visitor_matches_binomial() {
        let items: Vec<u32> = (1..=6).collect();
        let mut count = 0;
        for_each_k_subset(&items, 3, |_| count += 1);
        assert_eq!(count, 20);
        assert_eq!(binomial_usize(6, 3), 20);
    }
}
