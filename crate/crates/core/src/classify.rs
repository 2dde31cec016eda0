//! Interior-vertex taxonomy, recognition of almost triangle-free graphs, and
//! closed-form values of v(G) for the graph classes where it is known.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::solver::{self, SolveError, SolveOptions};

/// Membership of one vertex in `L(G)`, `I(G)`, `Int`, `Int_s`, `Int_e` and
/// `Int_es`. The extremal flags are `None` when the solve deciding them ran
/// out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFlags {
    pub leaf: bool,
    pub isolated: bool,
    pub interior: bool,
    pub strongly_interior: bool,
    pub extremal_interior: Option<bool>,
    pub extremal_strongly_interior: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClassification {
    pub vertices: Vec<VertexFlags>,
}

impl VertexClassification {
    fn collect(&self, pick: impl Fn(&VertexFlags) -> bool) -> VertexSet {
        (0..self.vertices.len())
            .filter(|&v| pick(&self.vertices[v]))
            .collect()
    }

    pub fn interior(&self) -> VertexSet {
        self.collect(|f| f.interior)
    }

    pub fn strongly_interior(&self) -> VertexSet {
        self.collect(|f| f.strongly_interior)
    }

    /// `Int_e(G)`; unknown flags count as absent.
    pub fn extremal_interior(&self) -> VertexSet {
        self.collect(|f| f.extremal_interior == Some(true))
    }

    pub fn extremal_strongly_interior(&self) -> VertexSet {
        self.collect(|f| f.extremal_strongly_interior == Some(true))
    }

    pub fn is_complete(&self) -> bool {
        self.vertices.iter().all(|f| f.extremal_interior.is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("budget exceeded while deciding extremal interior vertices")]
    BudgetExceeded { partial: VertexClassification },
}

/// Flags that need no search: leaf, isolated, interior, strongly interior.
pub fn interior_flags(g: &Graph) -> VertexClassification {
    let vertices = (0..g.n())
        .map(|x| {
            let d = g.degree(x);
            let interior = g.is_clique(g.nbrs(x));
            VertexFlags {
                leaf: d == 1,
                isolated: d == 0,
                interior,
                strongly_interior: interior && d > 1,
                extremal_interior: (!interior).then_some(false),
                extremal_strongly_interior: (!interior).then_some(false),
            }
        })
        .collect();
    VertexClassification { vertices }
}

/// Full classification. An interior vertex `x` is extremal when some minimum
/// cover contains its closed neighborhood as one clique; this is decided by
/// forcing that clique and re-solving.
pub fn classify_vertices(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<VertexClassification, ClassifyError> {
    let mut cls = interior_flags(g);
    let needs_solve = (0..g.n()).any(|x| cls.vertices[x].strongly_interior);
    let v = if needs_solve {
        match solver::linear_intersection_number(g, opts) {
            Ok(r) => Some(r.value),
            Err(_) => return Err(ClassifyError::BudgetExceeded { partial: cls }),
        }
    } else {
        None
    };
    let mut exhausted = false;
    for x in 0..g.n() {
        let f = &mut cls.vertices[x];
        if !f.interior {
            continue;
        }
        let extremal = if !f.strongly_interior {
            // The only clique through a leaf's edge is that edge; an isolated
            // vertex is always two singletons.
            Some(true)
        } else {
            let closed = g.nbrs(x).with(x);
            match solver::forced_cover_within(g, closed, v.unwrap(), &opts.budget) {
                Ok(b) => Some(b),
                Err(SolveError::BudgetExceeded { .. }) => {
                    exhausted = true;
                    None
                }
                Err(e) => panic!("unexpected solver error: {e}"),
            }
        };
        f.extremal_interior = extremal;
        f.extremal_strongly_interior = extremal.map(|e| e && f.strongly_interior);
    }
    if exhausted {
        Err(ClassifyError::BudgetExceeded { partial: cls })
    } else {
        Ok(cls)
    }
}

/// Whether `x` is an extremal interior vertex, given `v = v(G)`.
pub fn is_extremal_interior(
    g: &Graph,
    x: usize,
    v: usize,
    opts: &SolveOptions,
) -> Result<bool, SolveError> {
    g.check_vertex(x)?;
    if !g.is_clique(g.nbrs(x)) {
        return Ok(false);
    }
    if g.degree(x) <= 1 {
        return Ok(true);
    }
    solver::forced_cover_within(g, g.nbrs(x).with(x), v, &opts.budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedTriangle {
    pub attachment: usize,
    /// The two triangle vertices outside the base graph.
    pub outer: (usize, usize),
}

/// Witness that a graph is a triangle-free base with triangles glued at
/// single base vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtfDecomposition {
    pub base: VertexSet,
    pub base_edges: Vec<(usize, usize)>,
    pub triangles: Vec<GluedTriangle>,
    pub extremal_vertices: VertexSet,
}

/// Structural recognition. In such a graph the two outer vertices of a glued
/// triangle have degree 2, so every triangle must contain at least two
/// degree-2 vertices. With exactly two the third is the attachment; with
/// three the triangle is a component and the smallest vertex is taken as the
/// attachment. Outer vertices are extremal unless their triangle is the only
/// one glued at a vertex that is isolated in the base.
pub fn is_almost_triangle_free(g: &Graph) -> Option<AtfDecomposition> {
    let mut triangles = Vec::new();
    let mut outer_all = VertexSet::EMPTY;
    for t in g.triangles() {
        let low: Vec<usize> = t.iter().filter(|&v| g.degree(v) == 2).collect();
        let attachment = match low.len() {
            3 => low[0],
            2 => t.difference(VertexSet::from_iter(low)).min().unwrap(),
            _ => return None,
        };
        let rest = t.without(attachment).to_vec();
        outer_all = outer_all.union(t.without(attachment));
        triangles.push(GluedTriangle {
            attachment,
            outer: (rest[0], rest[1]),
        });
    }
    let base = g.vertices().difference(outer_all);
    let base_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| base.contains(a) && base.contains(b))
        .collect();
    debug_assert!(!g.induced(base).has_triangle());
    let mut extremal_vertices = VertexSet::EMPTY;
    for t in &triangles {
        let at_same = triangles
            .iter()
            .filter(|u| u.attachment == t.attachment)
            .count();
        let isolated_in_base = g.nbrs(t.attachment).intersection(base).is_empty();
        if !(isolated_in_base && at_same == 1) {
            extremal_vertices.insert(t.outer.0);
            extremal_vertices.insert(t.outer.1);
        }
    }
    Some(AtfDecomposition {
        base,
        base_edges,
        triangles,
        extremal_vertices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Complete,
    Cycle,
    Tree,
    TriangleFree,
    AlmostTriangleFree,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::Complete => "complete",
            ClassTag::Cycle => "cycle",
            ClassTag::Tree => "tree",
            ClassTag::TriangleFree => "triangle-free",
            ClassTag::AlmostTriangleFree => "almost triangle-free",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentForm {
    pub vertices: VertexSet,
    pub tag: ClassTag,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub value: usize,
    pub components: Vec<ComponentForm>,
}

impl ClosedForm {
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}={}", c.tag, c.value))
            .collect();
        format!("{} ({})", self.value, parts.join(" + "))
    }
}

/// Sum of per-component closed forms when every component is complete, a
/// cycle, a tree, triangle-free or almost triangle-free.
pub fn closed_form_v(g: &Graph) -> Option<ClosedForm> {
    let mut components = Vec::new();
    for comp in g.components() {
        let h = g.induced(comp);
        let (n, m) = (h.n(), h.m());
        let p = h.degree_profile();
        let edge_bound = m + p.leaf_count() + 2 * p.isolated_count();
        let (tag, value) = if m == n * (n - 1) / 2 {
            let value = match n {
                1 => 2,
                2 => 3,
                _ => n,
            };
            (ClassTag::Complete, value)
        } else if (0..n).all(|v| h.degree(v) == 2) {
            (ClassTag::Cycle, n)
        } else if m + 1 == n {
            (ClassTag::Tree, n + p.leaf_count() - 1)
        } else if !h.has_triangle() {
            (ClassTag::TriangleFree, edge_bound)
        } else if is_almost_triangle_free(&h).is_some() {
            (ClassTag::AlmostTriangleFree, edge_bound)
        } else {
            return None;
        };
        components.push(ComponentForm {
            vertices: comp,
            tag,
            value,
        });
    }
    let value = components.iter().map(|c| c.value).sum();
    Some(ClosedForm { value, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn classify(g: &Graph) -> VertexClassification {
        classify_vertices(g, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn complete_graphs_have_no_extremal_vertices() {
        for n in 3..=6 {
            let c = classify(&complete(n));
            assert_eq!(c.interior(), VertexSet::full(n));
            assert!(c.extremal_interior().is_empty());
        }
    }

    #[test]
    fn paw_outer_vertices() {
        let c = classify(&paw());
        assert_eq!(c.extremal_strongly_interior().to_vec(), vec![0, 1]);
        assert_eq!(c.extremal_interior().to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn cycles_have_no_interior_vertices() {
        for n in 4..=7 {
            assert!(classify(&cycle(n)).interior().is_empty());
        }
    }

    #[test]
    fn strongly_interior_excludes_leaves_and_isolated() {
        let g = paw().disjoint_sum(&empty(1)).unwrap();
        let c = interior_flags(&g);
        let p = g.degree_profile();
        assert_eq!(
            c.strongly_interior(),
            c.interior().difference(p.leaves.union(p.isolated))
        );
    }

    #[test]
    fn budget_exhaustion_keeps_cheap_flags() {
        let g = complete(6);
        let opts = SolveOptions::with_budget(solver::Budget::nodes(0));
        match classify_vertices(&g, &opts) {
            Err(ClassifyError::BudgetExceeded { partial }) => {
                assert_eq!(partial.interior(), VertexSet::full(6));
                assert!(!partial.is_complete());
            }
            Ok(_) => panic!("expected budget exhaustion"),
        }
    }

    #[test]
    fn atf_recognition() {
        let d = is_almost_triangle_free(&paw()).unwrap();
        assert_eq!(d.base.to_vec(), vec![2, 3]);
        assert_eq!(
            d.triangles,
            vec![GluedTriangle {
                attachment: 2,
                outer: (0, 1)
            }]
        );
        assert_eq!(d.extremal_vertices.to_vec(), vec![0, 1]);
        assert!(is_almost_triangle_free(&diamond()).is_none());
        let d = is_almost_triangle_free(&petersen()).unwrap();
        assert!(d.triangles.is_empty());
        assert_eq!(d.base, VertexSet::full(10));
        let d = is_almost_triangle_free(&complete(3)).unwrap();
        assert_eq!(d.triangles[0].attachment, 0);
        assert!(d.extremal_vertices.is_empty());
        let d = is_almost_triangle_free(&bowtie()).unwrap();
        assert_eq!(d.extremal_vertices.to_vec(), vec![1, 2, 3, 4]);
        assert!(is_almost_triangle_free(&complete(4)).is_none());
    }

    #[test]
    fn closed_forms() {
        let g = complete(6).disjoint_sum(&cycle(5)).unwrap();
        assert_eq!(closed_form_v(&g).unwrap().value, 11);
        let cf = closed_form_v(&star(4)).unwrap();
        assert_eq!((cf.value, cf.components[0].tag), (8, ClassTag::Tree));
        let g = paw().disjoint_sum(&complete(2)).unwrap();
        let cf = closed_form_v(&g).unwrap();
        assert_eq!(cf.value, 8);
        assert_eq!(cf.components[0].tag, ClassTag::AlmostTriangleFree);
        assert!(closed_form_v(&diamond()).is_none());
        assert_eq!(closed_form_v(&empty(3)).unwrap().value, 6);
        assert_eq!(closed_form_v(&empty(0)).unwrap().value, 0);
    }
}
