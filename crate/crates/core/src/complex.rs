//! Weighted boundary complexes and weighted fans: realization in the
//! cocharacter lattice, push-forward along monomial maps, exact planar
//! refinement of 2-dimensional fans, and weighted-set equality.

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{
    hnf_rows, lattice_index, plane_coords, primitive_vector, saturation_basis, IntMatrix,
    IntVector,
};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A maximal cone of a weighted fan: `dim` many generators and a positive
/// integer weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<IntVector>,
    pub weight: Int,
}

/// A cell excluded from the fan, kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateCell {
    pub generators: Vec<IntVector>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedFan {
    pub rank: usize,
    pub dim: usize,
    pub cones: Vec<Cone>,
    pub degenerate: Vec<DegenerateCell>,
}

/// Abstract weighted boundary complex: divisors carry valuation vectors and
/// the maximal cells carry intersection numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryComplexInput {
    pub rank: usize,
    pub dimension: usize,
    pub divisors: Vec<BoundaryDivisor>,
    pub cells: Vec<ComplexCell>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDivisor {
    pub name: String,
    pub valuation: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexCell {
    pub divisors: Vec<usize>,
    pub intersection_number: u64,
}

/// Realizes a weighted boundary complex as a weighted fan: a cell with
/// intersection number c > 0 and independent valuations becomes the cone they
/// span, weighted by c times the lattice index of their span in its
/// saturation. Rank-deficient or zero-number cells are recorded as
/// degenerate, never silently dropped.
pub fn realize_weighted_complex(input: &BoundaryComplexInput) -> Result<WeightedFan> {
    let s = input.dimension;
    let mut fan = WeightedFan { rank: input.rank, dim: s, cones: Vec::new(), degenerate: Vec::new() };
    for div in &input.divisors {
        if div.valuation.len() != input.rank {
            return Err(Error::DimensionMismatch(format!(
                "valuation of {} has length {}, expected rank {}",
                div.name,
                div.valuation.len(),
                input.rank
            )));
        }
    }
    for cell in &input.cells {
        if cell.divisors.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "cell {:?} has {} divisors, expected {}",
                cell.divisors,
                cell.divisors.len(),
                s
            )));
        }
        let vals: Vec<IntVector> = cell
            .divisors
            .iter()
            .map(|&i| {
                input
                    .divisors
                    .get(i)
                    .map(|d| IntVector::from_i64(&d.valuation))
                    .ok_or_else(|| Error::InvalidInput(format!("divisor index {i} out of range")))
            })
            .collect::<Result<_>>()?;
        if cell.intersection_number == 0 {
            fan.degenerate.push(DegenerateCell {
                generators: vals,
                reason: "zero intersection number".into(),
            });
            continue;
        }
        let idx = lattice_index(&vals)?;
        if idx.is_zero() {
            fan.degenerate.push(DegenerateCell {
                generators: vals,
                reason: "valuations are linearly dependent (rank drop)".into(),
            });
            continue;
        }
        let gens: Vec<IntVector> =
            vals.iter().map(primitive_vector).collect::<Result<_>>()?;
        fan.cones.push(Cone {
            generators: gens,
            weight: Int::from(cell.intersection_number) * idx,
        });
    }
    canonicalize_fan(&mut fan);
    Ok(fan)
}

fn ccw_cmp_big(a: &(Int, Int), b: &(Int, Int)) -> Ordering {
    let half = |p: &(Int, Int)| -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = &a.0 * &b.1 - &a.1 * &b.0;
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn primitive_pair(p: (Int, Int)) -> (Int, Int) {
    use num_integer::Integer;
    let g = p.0.gcd(&p.1);
    if g.is_zero() {
        p
    } else {
        (&p.0 / &g, &p.1 / &g)
    }
}

/// A 2-plane in Z^n with its canonical saturated basis; the key is the
/// Hermite form of the basis, unique per plane.
fn plane_of(a: &IntVector, b: &IntVector) -> Option<(Vec<Int>, IntVector, IntVector)> {
    let sat = saturation_basis(&[a.clone(), b.clone()]);
    if sat.len() != 2 {
        return None;
    }
    let m = IntMatrix::from_columns(&sat);
    // rows of the HNF of the transpose span the same lattice, canonically
    let mut t = IntMatrix::zero(2, a.dim());
    for i in 0..2 {
        for j in 0..a.dim() {
            *t.at_mut(i, j) = m.at(j, i).clone();
        }
    }
    let h = hnf_rows(&t);
    let b1 = h.row(0);
    let b2 = h.row(1);
    let mut key = Vec::with_capacity(2 * a.dim());
    for i in 0..2 {
        for j in 0..a.dim() {
            key.push(h.at(i, j).clone());
        }
    }
    Some((key, b1, b2))
}

/// A weighted angular sector in in-plane coordinates, counterclockwise.
type Sector = ((Int, Int), (Int, Int), Rat);

struct PlaneData {
    basis: (IntVector, IntVector),
    /// cones in in-plane coordinates, oriented counterclockwise
    cones: Vec<Sector>,
}

/// Groups 2-cones (given by ambient generator pairs with rational weights)
/// by the plane they span, producing in-plane coordinates.
fn group_by_plane(
    cones: &[(IntVector, IntVector, Rat)],
) -> Result<BTreeMap<Vec<Int>, PlaneData>> {
    let mut planes: BTreeMap<Vec<Int>, PlaneData> = BTreeMap::new();
    for (a, b, w) in cones {
        let Some((key, b1, b2)) = plane_of(a, b) else {
            return Err(Error::ParallelEdge(a.to_string(), b.to_string()));
        };
        let ca = plane_coords(&b1, &b2, a).expect("generator lies in its plane");
        let cb = plane_coords(&b1, &b2, b).expect("generator lies in its plane");
        let mut ca = primitive_pair(ca);
        let mut cb = primitive_pair(cb);
        let cross = &ca.0 * &cb.1 - &ca.1 * &cb.0;
        if cross.is_zero() {
            return Err(Error::ParallelEdge(a.to_string(), b.to_string()));
        }
        if cross.is_negative() {
            std::mem::swap(&mut ca, &mut cb);
        }
        planes
            .entry(key)
            .or_insert_with(|| PlaneData { basis: (b1, b2), cones: Vec::new() })
            .cones
            .push((ca, cb, w.clone()));
    }
    Ok(planes)
}

/// The sector decomposition of one plane: circularly sorted rays, and per
/// consecutive sector the accumulated weight of all cones covering it.
fn sectors(data: &PlaneData) -> Vec<Sector> {
    let mut rays: Vec<(Int, Int)> = Vec::new();
    for (a, b, _) in &data.cones {
        rays.push(a.clone());
        rays.push(b.clone());
    }
    rays.sort_by(ccw_cmp_big);
    rays.dedup();
    let m = rays.len();
    let pos = |r: &(Int, Int)| rays.binary_search_by(|x| ccw_cmp_big(x, r)).unwrap();
    let mut weights = vec![Rat::zero(); m];
    for (a, b, w) in &data.cones {
        let pa = pos(a);
        let pb = pos(b);
        // the cone sweeps counterclockwise from a to b (cross(a,b) > 0)
        let mut i = pa;
        while i != pb {
            weights[i] += w;
            i = (i + 1) % m;
        }
    }
    let mut out = Vec::new();
    for i in 0..m {
        if !weights[i].is_zero() {
            out.push((rays[i].clone(), rays[(i + 1) % m].clone(), weights[i].clone()));
        }
    }
    out
}

fn ambient(basis: &(IntVector, IntVector), c: &(Int, Int)) -> IntVector {
    basis.0.scale(&c.0).add(&basis.1.scale(&c.1))
}

/// Refines a family of weighted 2-cones in Z^n to a common fan structure:
/// within each plane, cones are subdivided at all interior rays and
/// overlapping pieces get summed weights.
pub(crate) fn refine_planar(
    cones: &[(IntVector, IntVector, Rat)],
) -> Result<Vec<(IntVector, IntVector, Rat)>> {
    let planes = group_by_plane(cones)?;
    let mut out = Vec::new();
    for data in planes.values() {
        for (a, b, w) in sectors(data) {
            out.push((ambient(&data.basis, &a), ambient(&data.basis, &b), w));
        }
    }
    Ok(out)
}

/// Canonical merged form of a 2-dimensional weighted fan, for weighted-set
/// equality: per plane, maximal constant-weight arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
enum PlaneForm {
    Arcs(Vec<Sector>),
    FullCircle(Rat),
}

fn merged_form(data: &PlaneData) -> PlaneForm {
    let secs = sectors(data);
    if secs.is_empty() {
        return PlaneForm::Arcs(Vec::new());
    }
    // merge consecutive sectors with matching boundary ray and equal weight
    let mut arcs: Vec<Sector> = Vec::new();
    for (a, b, w) in secs {
        if let Some(last) = arcs.last_mut() {
            if last.1 == a && last.2 == w {
                last.1 = b;
                continue;
            }
        }
        arcs.push((a, b, w));
    }
    // wrap-around merge
    if arcs.len() > 1 {
        let first = arcs.first().unwrap().clone();
        let last = arcs.last().unwrap().clone();
        if last.1 == first.0 && last.2 == first.2 {
            arcs.last_mut().unwrap().1 = first.1;
            arcs.remove(0);
        }
    }
    if arcs.len() == 1 && arcs[0].0 == arcs[0].1 {
        return PlaneForm::FullCircle(arcs[0].2.clone());
    }
    arcs.sort_by(|x, y| ccw_cmp_big(&x.0, &y.0));
    PlaneForm::Arcs(arcs)
}

fn fan_canonical_2d(fan: &WeightedFan) -> Result<BTreeMap<Vec<Int>, PlaneForm>> {
    let cones: Vec<(IntVector, IntVector, Rat)> = fan
        .cones
        .iter()
        .map(|c| {
            if c.generators.len() != 2 {
                return Err(Error::DimensionMismatch(
                    "2-dimensional fan expected".into(),
                ));
            }
            Ok((
                c.generators[0].clone(),
                c.generators[1].clone(),
                Rat::from_integer(c.weight.clone()),
            ))
        })
        .collect::<Result<_>>()?;
    let planes = group_by_plane(&cones)?;
    let mut out = BTreeMap::new();
    for (key, data) in planes {
        let form = merged_form(&data);
        if !matches!(&form, PlaneForm::Arcs(a) if a.is_empty()) {
            out.insert(key, form);
        }
    }
    Ok(out)
}

/// Weighted-set equality of fans. Two-dimensional fans are compared through
/// their maximal constant-weight arc decompositions; other dimensions compare
/// canonicalized cone lists directly.
pub fn fans_equivalent(a: &WeightedFan, b: &WeightedFan) -> Result<bool> {
    if a.rank != b.rank || a.dim != b.dim {
        return Ok(false);
    }
    if a.dim == 2 {
        return Ok(fan_canonical_2d(a)? == fan_canonical_2d(b)?);
    }
    Ok(canonical_cones(a) == canonical_cones(b))
}

fn canonical_cones(f: &WeightedFan) -> Vec<(Vec<IntVector>, Int)> {
    let mut cones: Vec<(Vec<IntVector>, Int)> = f
        .cones
        .iter()
        .map(|c| {
            let mut gens: Vec<IntVector> = c
                .generators
                .iter()
                .map(|g| primitive_vector(g).unwrap_or_else(|_| g.clone()))
                .collect();
            gens.sort();
            (gens, c.weight.clone())
        })
        .collect();
    cones.sort();
    // merge identical cones
    let mut merged: Vec<(Vec<IntVector>, Int)> = Vec::new();
    for (g, w) in cones {
        if let Some(last) = merged.last_mut() {
            if last.0 == g {
                last.1 += w;
                continue;
            }
        }
        merged.push((g, w));
    }
    merged
}

fn canonicalize_fan(fan: &mut WeightedFan) {
    for c in &mut fan.cones {
        for g in &mut c.generators {
            if let Ok(p) = primitive_vector(g) {
                *g = p;
            }
        }
    }
    fan.cones.sort_by(|a, b| a.generators.cmp(&b.generators).then(a.weight.cmp(&b.weight)));
}

/// Push-forward of a weighted fan along the monomial map with matrix `a`
/// (rank columns, n rows): each cone maps to the cone over the images of its
/// generators, weighted by the source weight times the index of the image of
/// the cone's saturated lattice inside its own saturation, summed over all
/// source cones landing on the same target and divided by the map degree.
/// Cones whose image drops rank are excluded and recorded.
pub fn pushforward_fan(fan: &WeightedFan, a: &IntMatrix, delta: u64) -> Result<WeightedFan> {
    if a.cols != fan.rank {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns, fan rank is {}",
            a.cols, fan.rank
        )));
    }
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let n = a.rows;
    let s = fan.dim;
    let mut degenerate: Vec<DegenerateCell> = Vec::new();
    let mut images: Vec<(Vec<IntVector>, Int)> = Vec::new();
    for cone in &fan.cones {
        let sat = saturation_basis(&cone.generators);
        if sat.len() != s {
            degenerate.push(DegenerateCell {
                generators: cone.generators.clone(),
                reason: "source cone is rank-deficient".into(),
            });
            continue;
        }
        let image_basis: Vec<IntVector> = sat.iter().map(|v| a.mul_vec(v)).collect();
        let idx = lattice_index(&image_basis)?;
        if idx.is_zero() {
            degenerate.push(DegenerateCell {
                generators: cone.generators.clone(),
                reason: "image cone drops rank".into(),
            });
            continue;
        }
        let gens: Vec<IntVector> = cone.generators.iter().map(|g| a.mul_vec(g)).collect();
        images.push((gens, &cone.weight * idx));
    }
    let delta_int = Int::from(delta);
    let divide = |w: Int, what: &str| -> Result<Int> {
        use num_integer::Integer;
        let (q, r) = w.div_rem(&delta_int);
        if !r.is_zero() {
            return Err(Error::NonIntegralWeight {
                edge: what.to_string(),
                value: format!("{w}/{delta_int}"),
            });
        }
        Ok(q)
    };
    let mut out = WeightedFan { rank: n, dim: s, cones: Vec::new(), degenerate };
    match s {
        1 => {
            let mut acc: BTreeMap<IntVector, Int> = BTreeMap::new();
            for (gens, w) in images {
                let r = primitive_vector(&gens[0])?;
                *acc.entry(r).or_insert_with(Int::zero) += w;
            }
            for (r, w) in acc {
                let w = divide(w, &r.to_string())?;
                if !w.is_zero() {
                    out.cones.push(Cone { generators: vec![r], weight: w });
                }
            }
        }
        2 => {
            let cones: Vec<(IntVector, IntVector, Rat)> = images
                .into_iter()
                .map(|(g, w)| (g[0].clone(), g[1].clone(), Rat::from_integer(w)))
                .collect();
            for (ga, gb, w) in refine_planar(&cones)? {
                let wi = w.numer().clone();
                debug_assert!(w.denom().is_one());
                let wi = divide(wi, &format!("({ga},{gb})"))?;
                if !wi.is_zero() {
                    out.cones.push(Cone { generators: vec![ga, gb], weight: wi });
                }
            }
        }
        _ => {
            // accept only images that already form a fan: group identical
            // cones, refuse distinct cones spanning the same subspace
            let mut acc: BTreeMap<Vec<IntVector>, Int> = BTreeMap::new();
            let mut spans: Vec<(Vec<Int>, Vec<IntVector>)> = Vec::new();
            for (gens, w) in images {
                let mut key: Vec<IntVector> =
                    gens.iter().map(primitive_vector).collect::<Result<_>>()?;
                key.sort();
                let sat = saturation_basis(&key);
                let m = IntMatrix::from_columns(&sat);
                let mut t = IntMatrix::zero(sat.len(), n);
                for i in 0..sat.len() {
                    for j in 0..n {
                        *t.at_mut(i, j) = m.at(j, i).clone();
                    }
                }
                let h = hnf_rows(&t);
                let mut span_key = Vec::new();
                for i in 0..sat.len() {
                    for j in 0..n {
                        span_key.push(h.at(i, j).clone());
                    }
                }
                for (sk, kg) in &spans {
                    if *sk == span_key && *kg != key {
                        return Err(Error::NotRefinable(s));
                    }
                }
                spans.push((span_key, key.clone()));
                *acc.entry(key).or_insert_with(Int::zero) += w;
            }
            for (gens, w) in acc {
                let w = divide(w, "cone")?;
                if !w.is_zero() {
                    out.cones.push(Cone { generators: gens, weight: w });
                }
            }
        }
    }
    canonicalize_fan(&mut out);
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON data transfer

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDto {
    rank: usize,
    dimension: usize,
    cones: Vec<ConeDto>,
    #[serde(default)]
    degenerate: Vec<DegenerateDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeDto {
    generators: Vec<Vec<i64>>,
    weight: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegenerateDto {
    generators: Vec<Vec<i64>>,
    reason: String,
}

fn vec_to_i64(v: &IntVector) -> Result<Vec<i64>> {
    v.0.iter()
        .map(|x| {
            crate::arith::int_to_i64(x)
                .ok_or_else(|| Error::InvalidInput(format!("entry {x} exceeds i64")))
        })
        .collect()
}

impl WeightedFan {
    pub fn to_json(&self) -> Result<String> {
        let dto = FanDto {
            rank: self.rank,
            dimension: self.dim,
            cones: self
                .cones
                .iter()
                .map(|c| {
                    Ok(ConeDto {
                        generators: c
                            .generators
                            .iter()
                            .map(vec_to_i64)
                            .collect::<Result<_>>()?,
                        weight: crate::arith::int_to_i64(&c.weight)
                            .filter(|&w| w >= 0)
                            .ok_or_else(|| {
                                Error::InvalidInput("cone weight out of range".into())
                            })? as u64,
                    })
                })
                .collect::<Result<_>>()?,
            degenerate: self
                .degenerate
                .iter()
                .map(|d| {
                    Ok(DegenerateDto {
                        generators: d
                            .generators
                            .iter()
                            .map(vec_to_i64)
                            .collect::<Result<_>>()?,
                        reason: d.reason.clone(),
                    })
                })
                .collect::<Result<_>>()?,
        };
        serde_json::to_string_pretty(&dto).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dto: FanDto =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let mut fan = WeightedFan {
            rank: dto.rank,
            dim: dto.dimension,
            cones: Vec::new(),
            degenerate: Vec::new(),
        };
        for c in dto.cones {
            if c.weight == 0 {
                return Err(Error::InvalidInput("cone weight must be positive".into()));
            }
            let gens: Vec<IntVector> = c.generators.iter().map(|g| IntVector::from_i64(g)).collect();
            if gens.iter().any(|g| g.dim() != dto.rank) {
                return Err(Error::DimensionMismatch("generator length != rank".into()));
            }
            if gens.len() != dto.dimension {
                return Err(Error::DimensionMismatch(
                    "generator count != fan dimension".into(),
                ));
            }
            fan.cones.push(Cone { generators: gens, weight: Int::from(c.weight) });
        }
        for d in dto.degenerate {
            fan.degenerate.push(DegenerateCell {
                generators: d.generators.iter().map(|g| IntVector::from_i64(g)).collect(),
                reason: d.reason,
            });
        }
        Ok(fan)
    }
}

/// Parses a monomial-map matrix from JSON {"rows": n, "cols": r, "entries": [[..]]}.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixDto {
    pub fn to_matrix(&self) -> Result<IntMatrix> {
        if self.entries.len() != self.rows
            || self.entries.iter().any(|r| r.len() != self.cols)
        {
            return Err(Error::DimensionMismatch("matrix entries shape".into()));
        }
        Ok(IntMatrix::from_rows_i64(&self.entries))
    }
}
