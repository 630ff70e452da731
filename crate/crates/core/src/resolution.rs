//! The non-generic pipeline: compactify the curve arrangement in the
//! projective plane, blow up every point lying on three or more boundary
//! divisors until none remain, accumulate pull-back multiplicities and the
//! pairwise intersection table, and emit the tropical graph.
//!
//! Intersection numbers are maintained by the blow-up calculus: the table
//! starts from Bezout in the plane and every blow-up at a center p updates
//! C'.D' = C.D - m_p(C) m_p(D), with the new exceptional divisor meeting each
//! strict transform in its multiplicity at p. This sees conjugate irrational
//! intersection points that no rational point enumeration could visit.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::generic::GenericInput;
use crate::graph::{Meta, TropicalGraph, VertexKind};
use crate::lattice::{gcd_minors2, IntMatrix, IntVector};
use crate::poly::bipoly::BiPoly;
use crate::poly::homog::{Chart, HomPoly, ProjPoint};
use crate::poly::intersect::affine_triple_points;
use crate::poly::{LaurentPoly, UniPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Compactified curve arrangement in the projective plane: the
/// homogenizations of the coordinates plus the line at infinity.
#[derive(Debug, Clone)]
pub struct ProjArrangement {
    pub curves: Vec<HomPoly>,
    pub degrees: Vec<u32>,
}

impl ProjArrangement {
    /// Homogenizes the input coordinates. Laurent inputs must be cleared of
    /// denominators first; monomial scaling does not change the image closure
    /// in the torus.
    pub fn from_input(input: &GenericInput) -> Result<Self> {
        let mut curves = Vec::new();
        let mut degrees = Vec::new();
        for f in &input.polys {
            let (h, d) = HomPoly::homogenize(f)?;
            curves.push(h);
            degrees.push(d);
        }
        Ok(ProjArrangement { curves, degrees })
    }
}

pub type DivId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone)]
struct ChartData {
    label: String,
    eqs: BTreeMap<DivId, BiPoly>,
    /// the exceptional divisor whose line this chart carries, and on which axis
    exceptional: Option<(DivId, Axis)>,
    /// local centers already blown up in this chart
    blown: Vec<(Rat, Rat)>,
}

/// Where an excess point lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExcessLocation {
    Projective(ProjPoint),
    OnExceptional { exceptional: usize, chart: usize, point: (Rat, Rat) },
}

impl std::fmt::Display for ExcessLocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExcessLocation::Projective(p) => write!(f, "{p}"),
            ExcessLocation::OnExceptional { exceptional, chart, point } => write!(
                f,
                "E{} chart {} at ({},{})",
                exceptional + 1,
                chart,
                crate::arith::rat_to_string(&point.0),
                crate::arith::rat_to_string(&point.1)
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExcessPoint {
    pub location: ExcessLocation,
    pub divisors: Vec<DivId>,
}

#[derive(Debug, Clone)]
pub struct BlowupStep {
    pub center: ExcessLocation,
    pub chart: usize,
    /// multiplicity of every current boundary divisor at the center
    pub mults: BTreeMap<DivId, u32>,
    pub forced: bool,
}

/// The evolving blown-up model of the plane with its boundary divisors.
#[derive(Debug, Clone)]
pub struct ResolutionModel {
    n: usize,
    degrees: Vec<u32>,
    curves: Vec<HomPoly>,
    charts: Vec<ChartData>,
    pub steps: Vec<BlowupStep>,
    /// pull-back coefficients of the n+1 original divisors along the chain
    pullbacks: Vec<Vec<Int>>,
    /// symmetric intersection matrix over all current divisors
    intersections: Vec<Vec<Int>>,
    blown_proj: Vec<ProjPoint>,
    num_exceptional: usize,
}

impl ResolutionModel {
    #[allow(clippy::needless_range_loop)]
    pub fn new(arr: &ProjArrangement) -> Result<Self> {
        let n = arr.curves.len();
        // pairwise coprime check
        for i in 0..n {
            for j in (i + 1)..n {
                let a = arr.curves[i].dehomogenize(Chart::U);
                let b = arr.curves[j].dehomogenize(Chart::U);
                if !crate::poly::bipoly::coprime_bipoly(&a, &b) {
                    return Err(Error::CommonFactor(format!(
                        "curves {} and {} share a component",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let infinity = HomPoly::coordinate_u();
        let mut charts = Vec::new();
        for (chart, label) in [(Chart::U, "u=1"), (Chart::T, "t=1"), (Chart::S, "s=1")] {
            let mut eqs: BTreeMap<DivId, BiPoly> = BTreeMap::new();
            for (i, c) in arr.curves.iter().enumerate() {
                eqs.insert(i, c.dehomogenize(chart));
            }
            let inf = infinity.dehomogenize(chart);
            if !inf.is_constant() {
                eqs.insert(n, inf);
            }
            charts.push(ChartData {
                label: label.to_string(),
                eqs,
                exceptional: None,
                blown: Vec::new(),
            });
        }
        let mut intersections = vec![vec![Int::zero(); n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                let di = if i == n { Int::one() } else { Int::from(arr.degrees[i]) };
                let dj = if j == n { Int::one() } else { Int::from(arr.degrees[j]) };
                intersections[i][j] = di * dj;
            }
        }
        Ok(ResolutionModel {
            n,
            degrees: arr.degrees.clone(),
            curves: arr.curves.clone(),
            charts,
            steps: Vec::new(),
            pullbacks: vec![Vec::new(); n + 1],
            intersections,
            blown_proj: Vec::new(),
            num_exceptional: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_exceptional(&self) -> usize {
        self.num_exceptional
    }

    pub fn num_divisors(&self) -> usize {
        self.n + 1 + self.num_exceptional
    }

    pub fn divisor_label(&self, d: DivId) -> String {
        if d < self.n {
            format!("F{}", d + 1)
        } else if d == self.n {
            "Finf".to_string()
        } else {
            format!("E{}", d - self.n)
        }
    }

    pub fn intersection(&self, a: DivId, b: DivId) -> &Int {
        &self.intersections[a][b]
    }

    /// Pull-back coefficient of exceptional j in the total transform of the
    /// original divisor `orig` (0..n-1 the curves, n the line at infinity).
    pub fn pullback_coeff(&self, orig: usize, j: usize) -> &Int {
        &self.pullbacks[orig][j]
    }

    /// Valuation vector of a final boundary divisor in Z^n.
    pub fn divisor_point(&self, d: DivId) -> IntVector {
        if d < self.n {
            IntVector::unit(self.n, d)
        } else if d == self.n {
            IntVector((0..self.n).map(|i| -Int::from(self.degrees[i])).collect())
        } else {
            let j = d - self.n - 1;
            IntVector(
                (0..self.n)
                    .map(|i| {
                        &self.pullbacks[i][j]
                            - &self.pullbacks[self.n][j] * Int::from(self.degrees[i])
                    })
                    .collect(),
            )
        }
    }

    fn chart_of_proj(&self, p: &ProjPoint) -> (usize, (Rat, Rat)) {
        let (chart, coords) = p.chart_coords();
        let idx = match chart {
            Chart::U => 0,
            Chart::T => 1,
            Chart::S => 2,
        };
        (idx, coords)
    }

    /// Blows up a rational point of the current model. Records the step; a
    /// step whose center lies on fewer than three divisors is marked forced.
    pub fn blow_up_at(&mut self, location: &ExcessLocation) -> Result<usize> {
        let (chart_id, point) = match location {
            ExcessLocation::Projective(p) => self.chart_of_proj(p),
            ExcessLocation::OnExceptional { chart, point, .. } => (*chart, point.clone()),
        };
        if chart_id >= self.charts.len() {
            return Err(Error::PointNotInCharts(format!("{location}")));
        }
        let translated: BTreeMap<DivId, BiPoly> = self.charts[chart_id]
            .eqs
            .iter()
            .map(|(&d, eq)| (d, eq.translate(&point.0, &point.1)))
            .collect();
        let mut mults: BTreeMap<DivId, u32> = BTreeMap::new();
        for (&d, eq) in &translated {
            let m = eq.multiplicity_at_origin().unwrap_or(0);
            if m > 0 {
                mults.insert(d, m);
            }
        }
        let forced = mults.len() < 3;
        let new_div = self.num_divisors();
        // pull-back coefficients compose through the chain
        for orig in 0..=self.n {
            let mut c = Int::from(*mults.get(&orig).unwrap_or(&0));
            for j in 0..self.num_exceptional {
                let m_ej = Int::from(*mults.get(&(self.n + 1 + j)).unwrap_or(&0));
                c += &self.pullbacks[orig][j] * m_ej;
            }
            self.pullbacks[orig].push(c);
        }
        // intersection table update
        let total = self.num_divisors();
        for a in 0..total {
            for b in 0..total {
                let ma = Int::from(*mults.get(&a).unwrap_or(&0));
                let mb = Int::from(*mults.get(&b).unwrap_or(&0));
                self.intersections[a][b] -= ma * mb;
            }
        }
        let mut new_row: Vec<Int> = (0..total)
            .map(|d| Int::from(*mults.get(&d).unwrap_or(&0)))
            .collect();
        new_row.push(-Int::one());
        for (d, row) in self.intersections.iter_mut().enumerate() {
            row.push(new_row[d].clone());
        }
        self.intersections.push(new_row);
        // two new charts
        let mut eqs0: BTreeMap<DivId, BiPoly> = BTreeMap::new();
        let mut eqs1: BTreeMap<DivId, BiPoly> = BTreeMap::new();
        for (&d, eq) in &translated {
            let (s0, _) = eq.blowup_chart0();
            let (s1, _) = eq.blowup_chart1();
            if !s0.is_constant() || s0.is_zero() {
                eqs0.insert(d, s0);
            }
            if !s1.is_constant() || s1.is_zero() {
                eqs1.insert(d, s1);
            }
        }
        eqs0.insert(new_div, BiPoly::from_i64_terms(&[(1, 0, 1)]));
        eqs1.insert(new_div, BiPoly::from_i64_terms(&[(0, 1, 1)]));
        let j = self.num_exceptional;
        self.charts.push(ChartData {
            label: format!("E{}.a", j + 1),
            eqs: eqs0,
            exceptional: Some((new_div, Axis::X)),
            blown: Vec::new(),
        });
        self.charts.push(ChartData {
            label: format!("E{}.b", j + 1),
            eqs: eqs1,
            exceptional: Some((new_div, Axis::Y)),
            blown: Vec::new(),
        });
        self.charts[chart_id].blown.push(point.clone());
        if let ExcessLocation::Projective(p) = location {
            if !self.blown_proj.contains(p) {
                self.blown_proj.push(p.clone());
            }
        }
        self.num_exceptional += 1;
        self.steps.push(BlowupStep {
            center: location.clone(),
            chart: chart_id,
            mults,
            forced,
        });
        Ok(new_div)
    }

    /// Divisors of the original arrangement passing through a projective point.
    fn divisors_through_proj(&self, p: &ProjPoint) -> Vec<DivId> {
        let mut out = Vec::new();
        for (i, c) in self.curves.iter().enumerate() {
            if c.eval_is_zero(p) {
                out.push(i);
            }
        }
        if p.0[2].is_zero() {
            out.push(self.n);
        }
        out
    }

    /// All points of the current model lying on three or more boundary
    /// divisors. Rational detection is exact; a possibly-irrational such
    /// point aborts with a diagnostic.
    pub fn find_excess_points(&self) -> Result<Vec<ExcessPoint>> {
        let mut level0: Vec<ExcessPoint> = Vec::new();
        let ids: Vec<DivId> = (0..=self.n).collect();
        let infinity = HomPoly::coordinate_u();
        let hom = |d: DivId| -> &HomPoly {
            if d < self.n {
                &self.curves[d]
            } else {
                &infinity
            }
        };
        let mut seen: Vec<ProjPoint> = Vec::new();
        for a in 0..ids.len() {
            for b in (a + 1)..ids.len() {
                for c in (b + 1)..ids.len() {
                    let trio = [hom(ids[a]), hom(ids[b]), hom(ids[c])];
                    for p in projective_triple_points(trio)? {
                        if self.blown_proj.contains(&p) || seen.contains(&p) {
                            continue;
                        }
                        seen.push(p.clone());
                        let divisors = self.divisors_through_proj(&p);
                        debug_assert!(divisors.len() >= 3);
                        level0.push(ExcessPoint {
                            location: ExcessLocation::Projective(p),
                            divisors,
                        });
                    }
                }
            }
        }
        level0.sort_by(|x, y| match (&x.location, &y.location) {
            (ExcessLocation::Projective(p), ExcessLocation::Projective(q)) => p.cmp(q),
            _ => std::cmp::Ordering::Equal,
        });
        let mut out = level0;
        // points on exceptional divisors, scanned in their creation charts
        for (chart_id, chart) in self.charts.iter().enumerate() {
            let Some((e_div, axis)) = chart.exceptional else {
                continue;
            };
            let restrict = |p: &BiPoly| -> UniPoly {
                match axis {
                    Axis::X => p.restrict_x0(),
                    Axis::Y => p.restrict_y0(),
                }
            };
            match axis {
                Axis::X => {
                    // full exceptional line: common roots of pairs of other
                    // divisors restricted to x = 0
                    let others: Vec<(DivId, UniPoly)> = chart
                        .eqs
                        .iter()
                        .filter(|(&d, _)| d != e_div)
                        .map(|(&d, eq)| (d, restrict(eq)))
                        .collect();
                    let mut points: Vec<Rat> = Vec::new();
                    for i in 0..others.len() {
                        for j in (i + 1)..others.len() {
                            let (ri, rj) = (&others[i].1, &others[j].1);
                            if ri.is_zero() || rj.is_zero() {
                                return Err(Error::IrrationalExcessPoint(format!(
                                    "divisor contains the exceptional line in chart {}",
                                    chart.label
                                )));
                            }
                            let g = ri.gcd(rj);
                            if g.deg() == Some(0) {
                                continue;
                            }
                            let mut rest = g.clone();
                            for (y0, mult) in g.rational_roots() {
                                let lin = UniPoly::from_coeffs(vec![
                                    -y0.clone(),
                                    Rat::from_integer(1.into()),
                                ]);
                                for _ in 0..mult {
                                    rest = rest.exact_div(&lin).unwrap();
                                }
                                points.push(y0);
                            }
                            if rest.deg().unwrap_or(0) >= 1 {
                                return Err(Error::IrrationalExcessPoint(rest.to_string()));
                            }
                        }
                    }
                    points.sort();
                    points.dedup();
                    for y0 in points {
                        let pt = (Rat::zero(), y0.clone());
                        if chart.blown.contains(&pt) {
                            continue;
                        }
                        let mut divisors = vec![e_div];
                        for (d, r) in &others {
                            if r.eval(&y0).is_zero() {
                                divisors.push(*d);
                            }
                        }
                        divisors.sort();
                        out.push(ExcessPoint {
                            location: ExcessLocation::OnExceptional {
                                exceptional: e_div - self.n - 1,
                                chart: chart_id,
                                point: pt,
                            },
                            divisors,
                        });
                    }
                }
                Axis::Y => {
                    // only the origin is new in the second chart
                    let pt = (Rat::zero(), Rat::zero());
                    if chart.blown.contains(&pt) {
                        continue;
                    }
                    let zero = Rat::zero();
                    let mut divisors: Vec<DivId> = chart
                        .eqs
                        .iter()
                        .filter(|(_, eq)| eq.eval(&zero, &zero).is_zero())
                        .map(|(&d, _)| d)
                        .collect();
                    divisors.sort();
                    if divisors.len() >= 3 {
                        out.push(ExcessPoint {
                            location: ExcessLocation::OnExceptional {
                                exceptional: e_div - self.n - 1,
                                chart: chart_id,
                                point: pt,
                            },
                            divisors,
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Rational common points of three projective curves; errors when a common
/// point of all three is suspected to be irrational.
fn projective_triple_points(trio: [&HomPoly; 3]) -> Result<Vec<ProjPoint>> {
    let mut out: Vec<ProjPoint> = Vec::new();
    // affine part in the u = 1 chart
    let affs: Vec<BiPoly> = trio.iter().map(|h| h.dehomogenize(Chart::U)).collect();
    if affs.iter().all(|p| !p.is_zero()) {
        let scan = affine_triple_points(&affs[0], &affs[1], &affs[2])?;
        if scan.irrational_exists {
            return Err(Error::IrrationalExcessPoint(
                scan.witness.map(|w| w.to_string()).unwrap_or_else(|| "affine scan".into()),
            ));
        }
        for (s, t) in scan.rational {
            out.push(ProjPoint::affine(s, t));
        }
    }
    // points at infinity: common roots of the binary forms; the line at
    // infinity restricts to nothing and participates vacuously
    let forms: Vec<(UniPoly, u32)> =
        trio.iter().filter_map(|h| h.restrict_infinity()).collect();
    if forms.len() >= 2 {
        let mut g = forms[0].0.clone();
        for f in &forms[1..] {
            g = g.gcd(&f.0);
        }
        if g.is_zero() {
            return Err(Error::IrrationalExcessPoint(
                "common component at infinity".into(),
            ));
        }
        let mut rest = g.clone();
        for (s0, mult) in g.rational_roots() {
            let lin = UniPoly::from_coeffs(vec![-s0.clone(), Rat::from_integer(1.into())]);
            for _ in 0..mult {
                rest = rest.exact_div(&lin).unwrap();
            }
            out.push(ProjPoint::new(s0, Rat::one(), Rat::zero()).unwrap());
        }
        if rest.deg().unwrap_or(0) >= 1 {
            return Err(Error::IrrationalExcessPoint(rest.to_string()));
        }
        // the direction (1:0:0)
        if forms.iter().all(|(_, tmult)| *tmult >= 1) {
            out.push(ProjPoint::from_i64(1, 0, 0));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ResolutionOptions {
    pub max_steps: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions { max_steps: 64 }
    }
}

/// Summary view of a finished resolution.
#[derive(Debug, Clone)]
pub struct ResolutionDiagram {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub num_exceptional: usize,
    pub steps: Vec<BlowupStep>,
    /// coefficients b_j of the exceptionals in the pull-back of the line at
    /// infinity
    pub b_infinity: Vec<Int>,
    /// coefficients b_ij of the exceptionals in the pull-back of curve i
    pub b_curves: Vec<Vec<Int>>,
    /// intersection numbers of final boundary divisors, pairs (a < b) only
    pub intersection_table: BTreeMap<(DivId, DivId), Int>,
}

/// Iterates excess-point detection and blow-ups until none remain.
pub fn resolve_arrangement(
    arr: &ProjArrangement,
    opts: &ResolutionOptions,
) -> Result<(ResolutionModel, ResolutionDiagram)> {
    let mut model = ResolutionModel::new(arr)?;
    loop {
        let excess = model.find_excess_points()?;
        let Some(first) = excess.first() else {
            break;
        };
        if model.steps.len() >= opts.max_steps {
            return Err(Error::StepLimitExceeded(opts.max_steps));
        }
        model.blow_up_at(&first.location.clone())?;
    }
    let diagram = diagram_of(&model);
    Ok((model, diagram))
}

pub fn diagram_of(model: &ResolutionModel) -> ResolutionDiagram {
    let mut table = BTreeMap::new();
    let total = model.num_divisors();
    for a in 0..total {
        for b in (a + 1)..total {
            let v = model.intersection(a, b).clone();
            debug_assert!(!v.is_negative(), "distinct boundary divisors meet nonnegatively");
            if !v.is_zero() {
                table.insert((a, b), v);
            }
        }
    }
    ResolutionDiagram {
        n: model.n,
        degrees: model.degrees.clone(),
        num_exceptional: model.num_exceptional,
        steps: model.steps.clone(),
        b_infinity: model.pullbacks[model.n].clone(),
        b_curves: (0..model.n).map(|i| model.pullbacks[i].clone()).collect(),
        intersection_table: table,
    }
}

/// Builds the tropical graph of the non-generic pipeline from a completed
/// resolution: vertices are the valuation vectors of the final boundary
/// divisors, and an edge is present exactly when its weight
/// i(v,w) * gcd(2x2 minors) / delta is positive.
pub fn build_nongeneric_graph(
    model: &ResolutionModel,
    delta: u64,
    seed: u64,
) -> Result<TropicalGraph> {
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let n = model.n;
    let delta_int = Int::from(delta);
    let meta = Meta {
        delta,
        pipeline: "nongeneric".into(),
        seed,
        forced: false,
        notes: Vec::new(),
    };
    let mut g = TropicalGraph::new(n, meta);
    let total = model.num_divisors();
    let mut vertex_of: Vec<usize> = Vec::with_capacity(total);
    for d in 0..total {
        let kind = if d < n {
            VertexKind::Curve
        } else if d == n {
            VertexKind::Infinity
        } else {
            VertexKind::Exceptional
        };
        let label = if d < n {
            format!("e{}", d + 1)
        } else {
            model.divisor_label(d)
        };
        vertex_of.push(g.add_vertex(&label, model.divisor_point(d), kind));
    }
    for a in 0..total {
        for b in (a + 1)..total {
            let i_ab = model.intersection(a, b);
            if i_ab.is_zero() {
                continue;
            }
            let pa = g.vertex(vertex_of[a]).point.clone();
            let pb = g.vertex(vertex_of[b]).point.clone();
            if pa.is_zero() || pb.is_zero() {
                continue;
            }
            let cols = IntMatrix::from_columns(&[pa, pb]);
            let minors = gcd_minors2(&cols)?;
            if minors.is_zero() {
                continue;
            }
            let num = i_ab * minors;
            let (q, r) = num.div_rem(&delta_int);
            if !r.is_zero() {
                return Err(Error::NonIntegralWeight {
                    edge: format!(
                        "({},{})",
                        model.divisor_label(a),
                        model.divisor_label(b)
                    ),
                    value: format!("{num}/{delta_int}"),
                });
            }
            if q.is_zero() {
                continue;
            }
            g.add_edge(vertex_of[a], vertex_of[b], Rat::from_integer(q), false);
        }
    }
    g.edges.sort_by_key(|a| (a.u, a.v));
    Ok(g)
}

/// Replaces a coordinate by a user-declared factorization, returning the
/// extended parameterization and the exponent matrix of the monomial map
/// recombining it to the original.
pub fn split_reducible(
    input: &GenericInput,
    index: usize,
    factors: &[LaurentPoly],
) -> Result<(GenericInput, IntMatrix)> {
    if index >= input.polys.len() {
        return Err(Error::InvalidInput(format!("no coordinate {index}")));
    }
    if factors.len() < 2 {
        return Err(Error::InvalidInput("a split needs at least two factors".into()));
    }
    if factors.iter().any(|f| f.term_count() < 2) {
        return Err(Error::UnitFactor);
    }
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = prod.mul(f);
    }
    if prod != input.polys[index] {
        return Err(Error::FactorMismatch);
    }
    let n = input.polys.len();
    let k = factors.len();
    let mut polys = Vec::with_capacity(n + k - 1);
    polys.extend_from_slice(&input.polys[..index]);
    polys.extend_from_slice(factors);
    polys.extend_from_slice(&input.polys[index + 1..]);
    let mut beta = IntMatrix::zero(n, n + k - 1);
    for i in 0..n {
        match i.cmp(&index) {
            std::cmp::Ordering::Less => *beta.at_mut(i, i) = Int::one(),
            std::cmp::Ordering::Equal => {
                for c in 0..k {
                    *beta.at_mut(i, index + c) = Int::one();
                }
            }
            std::cmp::Ordering::Greater => *beta.at_mut(i, i + k - 1) = Int::one(),
        }
    }
    Ok((GenericInput::new(polys, input.delta)?, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::graph::f_vector;

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_i64_terms(terms)
    }

    /// f1 = -1 - s + t, f2 = -1 + t - s^2, f3 = 2 - st
    fn special_line_conics_input() -> GenericInput {
        GenericInput::new(
            vec![
                lp(&[(0, 0, -1), (1, 0, -1), (0, 1, 1)]),
                lp(&[(0, 0, -1), (0, 1, 1), (2, 0, -1)]),
                lp(&[(0, 0, 2), (1, 1, -1)]),
            ],
            1,
        )
        .unwrap()
    }

    /// f1 = s^2-s^3-t^2, f2 = t^2-t^3-s^2, f3 = 4st-s^3-t^3-3st^2-3s^2t
    fn special_nodal_cubics_input() -> GenericInput {
        GenericInput::new(
            vec![
                lp(&[(2, 0, 1), (3, 0, -1), (0, 2, -1)]),
                lp(&[(0, 2, 1), (0, 3, -1), (2, 0, -1)]),
                lp(&[(1, 1, 4), (3, 0, -1), (0, 3, -1), (1, 2, -3), (2, 1, -3)]),
            ],
            1,
        )
        .unwrap()
    }

    #[test]
    fn excess_points_of_line_conics() {
        let arr = ProjArrangement::from_input(&special_line_conics_input()).unwrap();
        let model = ResolutionModel::new(&arr).unwrap();
        let pts = model.find_excess_points().unwrap();
        let locs: Vec<String> = pts.iter().map(|p| p.location.to_string()).collect();
        assert_eq!(locs.len(), 2);
        assert!(locs.contains(&"(0:1:0)".to_string()));
        assert!(locs.contains(&"(1:2:1)".to_string()));
    }

    #[test]
    fn excess_points_of_transverse_lines() {
        // three lines in general position: no excess
        let input = GenericInput::new(
            vec![
                lp(&[(1, 0, 1), (0, 0, -1)]),
                lp(&[(0, 1, 1), (0, 0, -1)]),
                lp(&[(1, 0, 1), (0, 1, 1), (0, 0, -5)]),
            ],
            1,
        )
        .unwrap();
        let arr = ProjArrangement::from_input(&input).unwrap();
        let model = ResolutionModel::new(&arr).unwrap();
        // the three lines meet F_inf at three distinct points and each other
        // pairwise at distinct affine points
        assert!(model.find_excess_points().unwrap().is_empty());
    }

    #[test]
    fn line_conics_resolution_matches_expected_table() {
        let arr = ProjArrangement::from_input(&special_line_conics_input()).unwrap();
        let (model, diagram) = resolve_arrangement(&arr, &Default::default()).unwrap();
        assert_eq!(diagram.num_exceptional, 3);
        let n = model.n();
        // valuation vectors
        assert_eq!(model.divisor_point(n), IntVector::from_i64(&[-1, -2, -2]));
        let e_points: Vec<IntVector> =
            (0..3).map(|j| model.divisor_point(n + 1 + j)).collect();
        assert!(e_points.contains(&IntVector::from_i64(&[-1, -1, -1])));
        assert!(e_points.contains(&IntVector::from_i64(&[1, 1, 1])));
        assert!(e_points.contains(&IntVector::from_i64(&[-2, -2, -3])));
        // intersection table: F2.F3 = 2 through a conjugate pair
        assert_eq!(*model.intersection(1, 2), Int::from(2));
        assert_eq!(*model.intersection(0, 1), Int::one());
        assert_eq!(*model.intersection(0, 2), Int::one());
        // graph
        let g = build_nongeneric_graph(&model, 1, 0).unwrap();
        assert_eq!(f_vector(&g), (7, 12));
        let two: Vec<_> = g
            .positive_edges()
            .filter(|e| e.weight == rat_int(2))
            .map(|e| (g.vertex(e.u).label.clone(), g.vertex(e.v).label.clone()))
            .collect();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn projection_formula_on_fixtures() {
        for input in [special_line_conics_input(), special_nodal_cubics_input()] {
            let arr = ProjArrangement::from_input(&input).unwrap();
            let (model, diagram) = resolve_arrangement(&arr, &Default::default()).unwrap();
            let n = model.n();
            for i in 0..=n {
                for j in (i + 1)..=n {
                    let mut total = model.intersection(i, j).clone();
                    for step in &diagram.steps {
                        let mi = Int::from(*step.mults.get(&i).unwrap_or(&0));
                        let mj = Int::from(*step.mults.get(&j).unwrap_or(&0));
                        total += mi * mj;
                    }
                    let di = if i == n { Int::one() } else { Int::from(model.degrees[i]) };
                    let dj = if j == n { Int::one() } else { Int::from(model.degrees[j]) };
                    assert_eq!(total, di * dj, "pair ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn nodal_cubics_resolution_needs_four_blowups() {
        let arr = ProjArrangement::from_input(&special_nodal_cubics_input()).unwrap();
        let (model, diagram) = resolve_arrangement(&arr, &Default::default()).unwrap();
        assert_eq!(diagram.num_exceptional, 4);
        // pull-back of the first coordinate: exceptional coefficients
        // {2,3,3,4} and -3 at infinity
        let mut coeffs: Vec<i64> = (0..4)
            .map(|j| crate::arith::int_to_i64(model.pullback_coeff(0, j)).unwrap())
            .collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![2, 3, 3, 4]);
        assert_eq!(model.divisor_point(3), IntVector::from_i64(&[-3, -3, -3]));
        let mut pts: Vec<Vec<i64>> = (0..4)
            .map(|j| {
                model
                    .divisor_point(4 + j)
                    .0
                    .iter()
                    .map(|x| crate::arith::int_to_i64(x).unwrap())
                    .collect()
            })
            .collect();
        pts.sort();
        assert_eq!(
            pts,
            vec![vec![2, 2, 2], vec![3, 3, 2], vec![3, 3, 2], vec![4, 4, 2]]
        );
        // merged and suppressed graph: six vertices, twelve edges
        let g = build_nongeneric_graph(&model, 1, 0).unwrap();
        let s = crate::graph::suppress_bivalent(&g);
        assert_eq!(f_vector(&s), (6, 12));
    }

    #[test]
    fn blow_up_of_smooth_point_and_free_point() {
        // y - x^2 blown up at the origin: multiplicity 1, strict transform
        // smooth and transverse to E
        let input = GenericInput::new(
            vec![
                lp(&[(0, 1, 1), (2, 0, -1)]),
                lp(&[(0, 0, 1), (1, 0, 1)]),
                lp(&[(0, 0, 1), (0, 1, 1)]),
            ],
            1,
        )
        .unwrap();
        let arr = ProjArrangement::from_input(&input).unwrap();
        let mut model = ResolutionModel::new(&arr).unwrap();
        let origin = ExcessLocation::Projective(ProjPoint::from_i64(0, 0, 1));
        let e = model.blow_up_at(&origin).unwrap();
        let step = model.steps.last().unwrap();
        assert!(step.forced); // only one curve passes
        assert_eq!(step.mults.get(&0), Some(&1));
        assert_eq!(*model.intersection(0, e), Int::one());
        // blow up a point on none of the divisors: all multiplicities zero
        let free = ExcessLocation::Projective(ProjPoint::from_i64(5, 7, 1));
        let e2 = model.blow_up_at(&free).unwrap();
        let step = model.steps.last().unwrap();
        assert!(step.forced);
        assert!(step.mults.is_empty());
        for d in 0..model.num_divisors() {
            if d != e2 {
                assert!(model.intersection(d, e2).is_zero());
            }
        }
    }

    #[test]
    fn split_and_beta_matrix() {
        let g = lp(&[(1, 0, 1), (0, 1, -1)]); // s - t
        let h = lp(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]); // s + t + 1
        let f1 = g.mul(&h);
        let input = GenericInput::new(
            vec![f1, lp(&[(0, 0, 1), (1, 0, 2), (0, 1, 3)]), lp(&[(0, 0, 1), (1, 1, 5)])],
            1,
        )
        .unwrap();
        let (split, beta) = split_reducible(&input, 0, &[g.clone(), h.clone()]).unwrap();
        assert_eq!(split.polys.len(), 4);
        assert_eq!(split.polys[0], g);
        assert_eq!(split.polys[1], h);
        assert_eq!(beta.rows, 3);
        assert_eq!(beta.cols, 4);
        assert_eq!(
            beta,
            IntMatrix::from_rows_i64(&[
                vec![1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ])
        );
        // unit factor rejected
        assert!(matches!(
            split_reducible(&input, 0, &[input.polys[0].clone(), lp(&[(0, 0, 1)])]),
            Err(Error::UnitFactor)
        ));
        // wrong product rejected
        assert!(matches!(
            split_reducible(&input, 0, &[g.clone(), g.clone()]),
            Err(Error::FactorMismatch)
        ));
        // s^2 - t^2 = (s-t)(s+t)
        let a = lp(&[(1, 0, 1), (0, 1, -1)]);
        let b = lp(&[(1, 0, 1), (0, 1, 1)]);
        let input = GenericInput::new(
            vec![a.mul(&b), lp(&[(0, 0, 1), (1, 0, 2), (0, 1, 3)]), lp(&[(0, 0, 1), (1, 1, 5)])],
            1,
        )
        .unwrap();
        let (split, _) = split_reducible(&input, 0, &[a, b]).unwrap();
        assert_eq!(split.polys.len(), 4);
    }
}
