//! The weighted-graph output layer: merging realized vertices, suppressing
//! bivalent vertices, building the 2-dimensional weighted fan in Z^n,
//! checking balancing, f-vectors and serialization.

use crate::arith::{rat_parse, rat_to_string, Int, Rat};
use crate::complex::{refine_planar, Cone, WeightedFan};
use crate::error::{Error, Result};
use crate::lattice::{primitive_vector, quotient_map, IntVector};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexKind {
    /// e_i for a coordinate curve
    Curve,
    /// toric divisor of the refined fan
    Toric,
    /// the strict transform of the line at infinity
    Infinity,
    /// exceptional divisor of a blow-up
    Exceptional,
}

impl VertexKind {
    fn as_str(&self) -> &'static str {
        match self {
            VertexKind::Curve => "curve",
            VertexKind::Toric => "toric",
            VertexKind::Infinity => "infinity",
            VertexKind::Exceptional => "exceptional",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "curve" => VertexKind::Curve,
            "toric" => VertexKind::Toric,
            "infinity" => VertexKind::Infinity,
            "exceptional" => VertexKind::Exceptional,
            other => return Err(Error::InvalidInput(format!("unknown vertex kind `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub label: String,
    pub point: IntVector,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rat,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Meta {
    pub delta: u64,
    pub pipeline: String,
    pub seed: u64,
    pub forced: bool,
    pub notes: Vec<String>,
}

/// Weighted graph of lattice points in Z^n; the cone over it is the tropical
/// surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalGraph {
    pub ambient: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub meta: Meta,
}

impl TropicalGraph {
    pub fn new(ambient: usize, meta: Meta) -> Self {
        TropicalGraph { ambient, vertices: Vec::new(), edges: Vec::new(), meta }
    }

    pub fn add_vertex(&mut self, label: &str, point: IntVector, kind: VertexKind) -> usize {
        debug_assert_eq!(point.dim(), self.ambient);
        let id = self.vertices.len();
        self.vertices.push(Vertex { id, label: label.to_string(), point, kind });
        id
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rat, zero: bool) {
        debug_assert!(u != v);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(Edge { u, v, weight, zero });
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| !e.zero && e.weight.is_positive())
    }

    fn sort_edges(&mut self) {
        self.edges.sort_by_key(|a| (a.u, a.v));
    }

    pub fn find_vertex(&self, point: &IntVector) -> Option<usize> {
        self.vertices.iter().find(|v| &v.point == point).map(|v| v.id)
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<&Rat> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().find(|e| e.u == u && e.v == v).map(|e| &e.weight)
    }
}

/// Merges vertices with identical realization points (labels concatenated),
/// drops zero-point vertices with their edges, sums the weights of parallel
/// duplicate edges, and drops zero-weight edges.
pub fn merge_realized(g: &TropicalGraph) -> TropicalGraph {
    let mut out = TropicalGraph::new(g.ambient, g.meta.clone());
    let mut by_point: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
    let mut remap: Vec<Option<usize>> = vec![None; g.vertices.len()];
    for v in &g.vertices {
        if v.point.is_zero() {
            continue;
        }
        let key = v.point.0.clone();
        match by_point.get(&key) {
            Some(&id) => {
                remap[v.id] = Some(id);
                let label = &mut out.vertices[id].label;
                label.push('=');
                label.push_str(&v.label);
            }
            None => {
                let id = out.add_vertex(&v.label, v.point.clone(), v.kind);
                by_point.insert(key, id);
                remap[v.id] = Some(id);
            }
        }
    }
    let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for e in &g.edges {
        if e.zero || !e.weight.is_positive() {
            continue;
        }
        let (Some(u), Some(v)) = (remap[e.u], remap[e.v]) else {
            continue;
        };
        if u == v {
            continue; // endpoints collapsed: no 2-cone survives
        }
        let key = if u < v { (u, v) } else { (v, u) };
        *acc.entry(key).or_insert_with(Rat::zero) += &e.weight;
    }
    for ((u, v), w) in acc {
        out.add_edge(u, v, w, false);
    }
    out.sort_edges();
    out
}

/// Removes degree-2 vertices whose incident weights agree and whose point
/// lies in the relative interior of the cone spanned by the two neighbours,
/// fusing the edges; repeated until a fixed point. Parallel duplicates
/// created by a fusion are summed.
pub fn suppress_bivalent(g: &TropicalGraph) -> TropicalGraph {
    let mut g = merge_realized(g);
    'outer: loop {
        let mut degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, e) in g.edges.iter().enumerate() {
            degree.entry(e.u).or_default().push(i);
            degree.entry(e.v).or_default().push(i);
        }
        let mut ids: Vec<usize> = g.vertices.iter().map(|v| v.id).collect();
        ids.sort();
        for vid in ids {
            let Some(incident) = degree.get(&vid) else {
                continue;
            };
            if incident.len() != 2 {
                continue;
            }
            let e1 = &g.edges[incident[0]];
            let e2 = &g.edges[incident[1]];
            if e1.weight != e2.weight {
                continue;
            }
            let n1 = if e1.u == vid { e1.v } else { e1.u };
            let n2 = if e2.u == vid { e2.v } else { e2.u };
            if n1 == n2 {
                continue;
            }
            let p = &g.vertex(vid).point;
            let a = &g.vertex(n1).point;
            let b = &g.vertex(n2).point;
            if a.is_parallel(b) {
                continue;
            }
            // p = alpha*a + beta*b with alpha, beta > 0 exactly
            let Some((alpha, beta)) = rational_combination(a, b, p) else {
                continue;
            };
            if !(alpha.is_positive() && beta.is_positive()) {
                continue;
            }
            let w = e1.weight.clone();
            let keep: Vec<Edge> = g
                .edges
                .iter()
                .filter(|e| e.u != vid && e.v != vid)
                .cloned()
                .collect();
            let mut next = TropicalGraph::new(g.ambient, g.meta.clone());
            let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
            for v in &g.vertices {
                if v.id == vid {
                    continue;
                }
                let nid = next.add_vertex(&v.label, v.point.clone(), v.kind);
                remap.insert(v.id, nid);
            }
            let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
            for e in keep {
                let (u, v) = (remap[&e.u], remap[&e.v]);
                let key = if u < v { (u, v) } else { (v, u) };
                *acc.entry(key).or_insert_with(Rat::zero) += &e.weight;
            }
            let (u, v) = (remap[&n1], remap[&n2]);
            let key = if u < v { (u, v) } else { (v, u) };
            *acc.entry(key).or_insert_with(Rat::zero) += &w;
            for ((u, v), w) in acc {
                next.add_edge(u, v, w, false);
            }
            next.sort_edges();
            g = next;
            continue 'outer;
        }
        break;
    }
    g
}

/// Solves p = alpha*a + beta*b over the rationals, when a, b are independent
/// and p lies in their span.
fn rational_combination(a: &IntVector, b: &IntVector, p: &IntVector) -> Option<(Rat, Rat)> {
    let n = a.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let det = &a.0[i] * &b.0[j] - &a.0[j] * &b.0[i];
            if det.is_zero() {
                continue;
            }
            let det = Rat::from_integer(det);
            let na = Rat::from_integer(&p.0[i] * &b.0[j] - &p.0[j] * &b.0[i]);
            let nb = Rat::from_integer(&a.0[i] * &p.0[j] - &a.0[j] * &p.0[i]);
            let alpha = na / det.clone();
            let beta = nb / det;
            // verify on all coordinates
            for k in 0..n {
                let lhs = Rat::from_integer(p.0[k].clone());
                let rhs = alpha.clone() * Rat::from_integer(a.0[k].clone())
                    + beta.clone() * Rat::from_integer(b.0[k].clone());
                if lhs != rhs {
                    return None;
                }
            }
            return Some((alpha, beta));
        }
    }
    None
}

/// The weighted fan spanned by the positive edges of a merged graph: one
/// 2-cone per edge, refined so overlapping coplanar cones are subdivided at
/// interior rays with weights summed.
pub fn make_fan2d(g: &TropicalGraph) -> Result<WeightedFan> {
    let merged = merge_realized(g);
    let mut cones: Vec<(IntVector, IntVector, Rat)> = Vec::new();
    for e in merged.positive_edges() {
        let a = merged.vertex(e.u).point.clone();
        let b = merged.vertex(e.v).point.clone();
        if a.is_parallel(&b) {
            return Err(Error::ParallelEdge(a.to_string(), b.to_string()));
        }
        cones.push((a, b, e.weight.clone()));
    }
    let refined = refine_planar(&cones)?;
    let mut fan = WeightedFan {
        rank: merged.ambient,
        dim: 2,
        cones: Vec::new(),
        degenerate: Vec::new(),
    };
    for (a, b, w) in refined {
        if !w.denom().is_one() {
            return Err(Error::NonIntegralWeight {
                edge: format!("({a},{b})"),
                value: rat_to_string(&w),
            });
        }
        let pa = primitive_vector(&a)?;
        let pb = primitive_vector(&b)?;
        fan.cones.push(Cone { generators: vec![pa, pb], weight: w.numer().clone() });
    }
    fan.cones.sort_by(|a, b| a.generators.cmp(&b.generators));
    Ok(fan)
}

/// Balancing report for a 2-dimensional weighted fan.
#[derive(Debug, Clone)]
pub struct BalanceReport {
    pub balanced: bool,
    pub failures: Vec<BalanceFailure>,
}

#[derive(Debug, Clone)]
pub struct BalanceFailure {
    pub ray: IntVector,
    pub deficit: IntVector,
}

/// Checks the balancing condition at every ray of a 2-dimensional fan: the
/// weighted sum of the primitive classes of the second generators of the
/// incident cones must vanish in the quotient lattice Z^n / sat(Z ray).
/// The fan is refined to a genuine fan structure first.
pub fn check_balanced(fan: &WeightedFan) -> Result<BalanceReport> {
    if fan.dim != 2 {
        return Err(Error::DimensionMismatch(
            "balancing is checked for 2-dimensional fans".into(),
        ));
    }
    let cones: Vec<(IntVector, IntVector, Rat)> = fan
        .cones
        .iter()
        .map(|c| {
            (
                c.generators[0].clone(),
                c.generators[1].clone(),
                Rat::from_integer(c.weight.clone()),
            )
        })
        .collect();
    let refined = refine_planar(&cones)?;
    let mut rays: BTreeMap<Vec<Int>, Vec<(IntVector, Rat)>> = BTreeMap::new();
    for (a, b, w) in &refined {
        let pa = primitive_vector(a)?;
        let pb = primitive_vector(b)?;
        rays.entry(pa.0.clone()).or_default().push((b.clone(), w.clone()));
        rays.entry(pb.0.clone()).or_default().push((a.clone(), w.clone()));
    }
    let mut failures = Vec::new();
    for (ray, stars) in rays {
        let ray = IntVector(ray);
        let q = quotient_map(&ray)?;
        let mut sum = IntVector::zero(ray.dim() - 1);
        for (other, w) in stars {
            let img = q.mul_vec(&other);
            let class = primitive_vector(&img)?;
            debug_assert!(w.denom().is_one());
            sum = sum.add(&class.scale(w.numer()));
        }
        if !sum.is_zero() {
            failures.push(BalanceFailure { ray, deficit: sum });
        }
    }
    Ok(BalanceReport { balanced: failures.is_empty(), failures })
}

/// Vertex and positive-edge counts after merging realized vertices.
pub fn f_vector(g: &TropicalGraph) -> (usize, usize) {
    let m = merge_realized(g);
    (m.vertices.len(), m.positive_edges().count())
}

// ---------------------------------------------------------------------------
// Serialization

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "json" => Format::Json,
            "dot" => Format::Dot,
            "svg" => Format::Svg,
            other => return Err(Error::UnknownFormat(other.to_string())),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDto {
    ambient: usize,
    vertices: Vec<VertexDto>,
    edges: Vec<EdgeDto>,
    meta: MetaDto,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDto {
    id: usize,
    label: String,
    point: Vec<i64>,
    kind: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDto {
    u: usize,
    v: usize,
    weight: String,
    zero: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaDto {
    delta: u64,
    pipeline: String,
    seed: u64,
    forced: bool,
    notes: Vec<String>,
}

pub fn graph_to_json(g: &TropicalGraph) -> Result<String> {
    let dto = GraphDto {
        ambient: g.ambient,
        vertices: g
            .vertices
            .iter()
            .map(|v| {
                Ok(VertexDto {
                    id: v.id,
                    label: v.label.clone(),
                    point: v
                        .point
                        .0
                        .iter()
                        .map(|x| {
                            crate::arith::int_to_i64(x).ok_or_else(|| {
                                Error::InvalidInput("point entry exceeds i64".into())
                            })
                        })
                        .collect::<Result<_>>()?,
                    kind: v.kind.as_str().to_string(),
                })
            })
            .collect::<Result<_>>()?,
        edges: g
            .edges
            .iter()
            .map(|e| EdgeDto {
                u: e.u,
                v: e.v,
                weight: rat_to_string(&e.weight),
                zero: e.zero,
            })
            .collect(),
        meta: MetaDto {
            delta: g.meta.delta,
            pipeline: g.meta.pipeline.clone(),
            seed: g.meta.seed,
            forced: g.meta.forced,
            notes: g.meta.notes.clone(),
        },
    };
    serde_json::to_string_pretty(&dto).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn graph_from_json(s: &str) -> Result<TropicalGraph> {
    let dto: GraphDto = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut g = TropicalGraph::new(
        dto.ambient,
        Meta {
            delta: dto.meta.delta,
            pipeline: dto.meta.pipeline,
            seed: dto.meta.seed,
            forced: dto.meta.forced,
            notes: dto.meta.notes,
        },
    );
    for v in dto.vertices {
        if v.id != g.vertices.len() {
            return Err(Error::InvalidInput("vertex ids must be consecutive".into()));
        }
        if v.point.len() != dto.ambient {
            return Err(Error::DimensionMismatch("vertex point length".into()));
        }
        g.add_vertex(&v.label, IntVector::from_i64(&v.point), VertexKind::parse(&v.kind)?);
    }
    for e in dto.edges {
        if e.u >= g.vertices.len() || e.v >= g.vertices.len() {
            return Err(Error::InvalidInput("edge endpoint out of range".into()));
        }
        let w = rat_parse(&e.weight).map_err(Error::InvalidInput)?;
        g.add_edge(e.u, e.v, w, e.zero);
    }
    Ok(g)
}

pub fn graph_to_dot(g: &TropicalGraph) -> String {
    let mut out = String::from("graph tropical {\n");
    for v in &g.vertices {
        out.push_str(&format!(
            "  v{} [label=\"{} {}\"];\n",
            v.id, v.label, v.point
        ));
    }
    for e in &g.edges {
        let style = if e.zero { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  v{} -- v{} [label=\"{}\"{}];\n",
            e.u,
            e.v,
            rat_to_string(&e.weight),
            style
        ));
    }
    out.push_str("}\n");
    out
}

/// A 2D projection of the vertex points for human inspection: a seeded
/// unimodular mix followed by dropping to the first two coordinates, so
/// collinearities in Z^n generically stay visible.
#[allow(clippy::needless_range_loop)]
pub fn graph_to_svg(g: &TropicalGraph, seed: u64) -> String {
    use rand::SeedableRng;
    let n = g.ambient.max(2);
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5667_7075);
    // random unimodular mix: products of elementary row additions
    let mut mix: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if i == j {
            j = (j + 1) % n;
        }
        let c: i64 = rng.gen_range(-2..=2);
        for k in 0..n {
            mix[i][k] += c * mix[j][k];
        }
    }
    let project = |p: &IntVector| -> (f64, f64) {
        let coord = |row: &Vec<i64>| -> f64 {
            row.iter()
                .zip(&p.0)
                .map(|(&m, x)| m as f64 * crate::arith::int_to_i64(x).unwrap_or(0) as f64)
                .sum()
        };
        (coord(&mix[0]), coord(&mix[1]))
    };
    let pts: Vec<(f64, f64)> = g.vertices.iter().map(|v| project(&v.point)).collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let w = 640.0;
    let h = 640.0;
    let sx = (w - 80.0) / (max_x - min_x).max(1e-9);
    let sy = (h - 80.0) / (max_y - min_y).max(1e-9);
    let map = |(x, y): (f64, f64)| -> (f64, f64) {
        (40.0 + (x - min_x) * sx, h - 40.0 - (y - min_y) * sy)
    };
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    for e in &g.edges {
        let (x1, y1) = map(pts[e.u]);
        let (x2, y2) = map(pts[e.v]);
        let dash = if e.zero { " stroke-dasharray=\"6,4\"" } else { "" };
        svg.push_str(&format!(
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\"{dash}/>\n"
        ));
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        svg.push_str(&format!(
            "  <text x=\"{mx:.1}\" y=\"{my:.1}\" font-size=\"11\" fill=\"gray\">{}</text>\n",
            rat_to_string(&e.weight)
        ));
    }
    for v in &g.vertices {
        let (x, y) = map(pts[v.id]);
        svg.push_str(&format!(
            "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"black\"/>\n  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\">{} {}</text>\n",
            x + 6.0,
            y - 6.0,
            v.label,
            v.point
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Serializes a graph in the requested format.
pub fn serialize_graph(g: &TropicalGraph, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Json => graph_to_json(g)?.into_bytes(),
        Format::Dot => graph_to_dot(g).into_bytes(),
        Format::Svg => graph_to_svg(g, g.meta.seed).into_bytes(),
    })
}

/// Serializes a fan: JSON natively; DOT and SVG render the ray adjacency of
/// its 2-cones.
pub fn serialize_fan(fan: &WeightedFan, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => Ok(fan.to_json()?.into_bytes()),
        Format::Dot | Format::Svg => {
            let mut g = TropicalGraph::new(fan.rank, Meta::default());
            let mut ids: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
            for c in &fan.cones {
                for gen in &c.generators {
                    if !ids.contains_key(&gen.0) {
                        let id = g.add_vertex(
                            &format!("r{}", ids.len() + 1),
                            gen.clone(),
                            VertexKind::Toric,
                        );
                        ids.insert(gen.0.clone(), id);
                    }
                }
                if c.generators.len() == 2 {
                    let u = ids[&c.generators[0].0];
                    let v = ids[&c.generators[1].0];
                    g.add_edge(u, v, Rat::from_integer(c.weight.clone()), false);
                }
            }
            serialize_graph(&g, format)
        }
    }
}

/// Shared planar-cone consistency check: after merging and fanning, deleting
/// weight-zero edges must not disconnect any positively weighted component.
pub fn zero_edges_redundant(g: &TropicalGraph) -> bool {
    // vertices incident to positive edges must stay connected (within their
    // component) using positive edges only
    let pos: Vec<(usize, usize)> = g.positive_edges().map(|e| (e.u, e.v)).collect();
    let all: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|e| !e.weight.is_negative())
        .map(|e| (e.u, e.v))
        .collect();
    let comp = |edges: &[(usize, usize)]| -> BTreeMap<usize, usize> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = *parent.get(&x).unwrap_or(&x);
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent.insert(ru, rv);
            }
        }
        let keys: Vec<usize> = g_vertices_incident(edges);
        keys.into_iter()
            .map(|k| {
                let r = find(&mut parent, k);
                (k, r)
            })
            .collect()
    };
    let pos_comp = comp(&pos);
    let all_comp = comp(&all);
    // any two positively-incident vertices connected with zero edges allowed
    // must already be connected positively
    let verts: Vec<usize> = g_vertices_incident(&pos);
    for (i, &a) in verts.iter().enumerate() {
        for &b in verts.iter().skip(i + 1) {
            if all_comp.get(&a) == all_comp.get(&b) && pos_comp.get(&a) != pos_comp.get(&b) {
                return false;
            }
        }
    }
    true
}

fn g_vertices_incident(edges: &[(usize, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    v.sort();
    v.dedup();
    v
}
