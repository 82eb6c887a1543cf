//! Deformed Coxeter arrangements: Catalan, semi-Catalan, Shi and semi-Shi,
//! their characteristic polynomials, and the bijection between short
//! antichains and dominant regions of the semi-Catalan arrangement.
//!
//! The primary engine counts points of the complement over several prime
//! fields and interpolates the (monic, degree = rank) characteristic
//! polynomial exactly; a Whitney-style intersection-poset engine provides an
//! independent cross-check at low rank.

use std::collections::BTreeMap;

use num::rational::Ratio;
use num::{One, Zero};
use serde::Serialize;

use crate::affine::{minimal_from_ideal, s_maximal_antichain, AffineRoot, AffineWeylElement};
use crate::error::{Error, Result};
use crate::halfspace::{Constraint, Rel};
use crate::linalg::{rat_int, Rat};
use crate::poly::IntPolynomial;
use crate::posets::{enumerate_antichains, Antichain, AntichainFilter};
use crate::rootsys::{RootSystem, SubsystemSelector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArrangementKind {
    Coxeter,
    Catalan,
    SemiCatalan,
    Shi,
    SemiShi,
}

impl ArrangementKind {
    pub fn label(self) -> &'static str {
        match self {
            ArrangementKind::Coxeter => "coxeter",
            ArrangementKind::Catalan => "cat",
            ArrangementKind::SemiCatalan => "cat-s",
            ArrangementKind::Shi => "shi",
            ArrangementKind::SemiShi => "shi-s",
        }
    }

    pub fn parse(s: &str) -> Result<ArrangementKind> {
        match s {
            "coxeter" => Ok(ArrangementKind::Coxeter),
            "cat" => Ok(ArrangementKind::Catalan),
            "cat-s" => Ok(ArrangementKind::SemiCatalan),
            "shi" => Ok(ArrangementKind::Shi),
            "shi-s" => Ok(ArrangementKind::SemiShi),
            other => Err(Error::invalid(format!(
                "unknown arrangement kind `{other}`"
            ))),
        }
    }
}

/// A finite list of hyperplanes `(x, mu) = k` with `mu` a positive root.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub kind: ArrangementKind,
    pub m: usize,
    /// Pairs (positive root index, level), deduplicated and sorted.
    pub hyperplanes: Vec<(usize, i64)>,
    pub w_invariant: bool,
}

pub fn build_arrangement(rs: &RootSystem, kind: ArrangementKind, m: usize) -> Result<Arrangement> {
    let semi = matches!(
        kind,
        ArrangementKind::SemiCatalan | ArrangementKind::SemiShi
    );
    if semi && !rs.two_lengths() {
        return Err(Error::SimplyLaced {
            op: "build_arrangement(semi kind)",
            system: rs.id().to_string(),
        });
    }
    if kind == ArrangementKind::Coxeter && m != 0 {
        return Err(Error::invalid(
            "the Coxeter arrangement has no level parameter; use m=0",
        ));
    }
    if matches!(kind, ArrangementKind::Shi | ArrangementKind::SemiShi) && m == 0 {
        return Err(Error::invalid("Shi arrangements need m >= 1"));
    }
    let mi = m as i64;
    let levels_for = |short: bool| -> Vec<i64> {
        match kind {
            ArrangementKind::Coxeter => vec![0],
            ArrangementKind::Catalan => (-mi..=mi).collect(),
            ArrangementKind::SemiCatalan => {
                if short {
                    (-mi..=mi).collect()
                } else {
                    vec![0]
                }
            }
            ArrangementKind::Shi => (-mi + 1..=mi).collect(),
            ArrangementKind::SemiShi => {
                if short {
                    (-mi + 1..=mi).collect()
                } else {
                    vec![0]
                }
            }
        }
    };
    let mut hyperplanes = Vec::new();
    for idx in 0..rs.num_positive_roots() {
        for k in levels_for(rs.is_short(idx)) {
            hyperplanes.push((idx, k));
        }
    }
    hyperplanes.sort_unstable();
    hyperplanes.dedup();
    let w_invariant = matches!(
        kind,
        ArrangementKind::Coxeter | ArrangementKind::Catalan | ArrangementKind::SemiCatalan
    );
    Ok(Arrangement {
        kind,
        m,
        hyperplanes,
        w_invariant,
    })
}

// ---------------------------------------------------------------------------
// Finite-field engine
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    pub max_rank: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { max_rank: 5 }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primes_above(bound: i64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut q = bound.max(2) as u64 + 1;
    while out.len() < count {
        if is_prime(q) {
            out.push(q);
        }
        q += 1;
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

/// Count points of `(Z_q)^p` avoiding every hyperplane `a·y = k (mod q)`.
/// Scans prefixes with incremental partial sums; a hyperplane whose support
/// ends at coordinate `j` either kills the prefix at depth `j` or, at the
/// last coordinate, stamps its unique forbidden residue.
fn count_complement_mod_q(p: usize, forms: &[(Vec<i64>, i64)], q: u64) -> u64 {
    struct H {
        a: Vec<u64>,
        k: u64,
        last: usize,
        inv_last: u64,
    }
    let hs: Vec<H> = forms
        .iter()
        .map(|(a, k)| {
            let a: Vec<u64> = a.iter().map(|&x| x.rem_euclid(q as i64) as u64).collect();
            let last = a
                .iter()
                .rposition(|&x| x != 0)
                .expect("hyperplane form vanishes mod q; the prime bound is wrong");
            let inv_last = pow_mod(a[last], q - 2, q);
            H {
                k: k.rem_euclid(q as i64) as u64,
                a,
                last,
                inv_last,
            }
        })
        .collect();
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); p];
    for (i, h) in hs.iter().enumerate() {
        by_last[h.last].push(i);
    }

    // scratch[d] holds, per hyperplane, the partial sum over coordinates < d;
    // the level-d loop maintains scratch[d+1] = scratch[d] + a_d * y_d.
    struct State<'a> {
        q: u64,
        hs: &'a [H],
        by_last: &'a [Vec<usize>],
        scratch: Vec<Vec<u64>>,
        stamp: Vec<u64>,
        generation: u64,
        total: u64,
    }

    fn rec(depth: usize, p: usize, st: &mut State<'_>) {
        let q = st.q;
        if depth == p - 1 {
            // Last coordinate: stamp the forbidden residues.
            st.generation += 1;
            let gen = st.generation;
            let mut forbidden = 0u64;
            for &i in &st.by_last[depth] {
                let h = &st.hs[i];
                let partial = st.scratch[depth][i];
                let f = (h.k + q - partial) % q * h.inv_last % q;
                if st.stamp[f as usize] != gen {
                    st.stamp[f as usize] = gen;
                    forbidden += 1;
                }
            }
            st.total += q - forbidden;
            return;
        }
        {
            let (head, tail) = st.scratch.split_at_mut(depth + 1);
            tail[0].copy_from_slice(&head[depth]);
        }
        for _y in 0..q {
            let dead = st.by_last[depth]
                .iter()
                .any(|&i| st.scratch[depth + 1][i] == st.hs[i].k);
            if !dead {
                rec(depth + 1, p, st);
            }
            let child = &mut st.scratch[depth + 1];
            for (i, h) in st.hs.iter().enumerate() {
                let v = child[i] + h.a[depth];
                child[i] = if v >= q { v - q } else { v };
            }
        }
    }

    let mut st = State {
        q,
        hs: &hs,
        by_last: &by_last,
        scratch: (0..=p).map(|_| vec![0u64; hs.len()]).collect(),
        stamp: vec![0u64; q as usize],
        generation: 0,
        total: 0,
    };
    rec(0, p, &mut st);
    st.total
}

/// Lagrange interpolation of the integer polynomial through the sample
/// points, exact over rationals.
fn interpolate(points: &[(u64, u64)]) -> Result<IntPolynomial> {
    type Q = Ratio<i128>;
    let n = points.len();
    let mut acc = vec![Q::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // numerator polynomial prod_{j != i} (t - x_j), denominator prod (x_i - x_j)
        let mut num = vec![Q::zero(); n];
        num[0] = Q::one();
        let mut deg = 0usize;
        let mut den = Q::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            den *= Q::from_integer(xi as i128 - xj as i128);
            // multiply num by (t - xj)
            for k in (0..=deg).rev() {
                let c = num[k];
                num[k + 1] += c;
                num[k] = -Q::from_integer(xj as i128) * c;
            }
            deg += 1;
        }
        let w = Q::from_integer(yi as i128) / den;
        for k in 0..n {
            acc[k] += w * num[k];
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(Error::Engine {
                detail: "interpolated coefficients are not integral".to_string(),
            });
        }
        let v = c.to_integer();
        let v64 = i64::try_from(v).map_err(|_| Error::Engine {
            detail: "coefficient out of range".to_string(),
        })?;
        coeffs.push(v64);
    }
    Ok(IntPolynomial::new(coeffs))
}

pub fn char_poly_with(
    rs: &RootSystem,
    arr: &Arrangement,
    opts: &EngineOptions,
) -> Result<IntPolynomial> {
    let p = rs.rank();
    if p > opts.max_rank {
        return Err(Error::RankGuard {
            rank: p,
            max: opts.max_rank,
            what: "finite-field engine",
        });
    }
    // Integer forms in coroot coordinates: a_j = <mu, alpha_j^vee>.
    let forms: Vec<(Vec<i64>, i64)> = arr
        .hyperplanes
        .iter()
        .map(|&(idx, k)| (rs.pairing_vector(rs.root_coeffs(idx)), k))
        .collect();
    let max_coef = forms
        .iter()
        .flat_map(|(a, _)| a.iter().map(|&x| x.abs()))
        .max()
        .unwrap_or(1)
        .max(1);
    let mut bound = 2 * (arr.m as i64 + 1) * rs.coxeter_number() as i64 * max_coef;
    for _attempt in 0..2 {
        let primes = primes_above(bound, p + 2);
        let forms_ref = &forms;
        let counts: Vec<u64> = std::thread::scope(|scope| {
            let handles: Vec<_> = primes
                .iter()
                .map(|&q| scope.spawn(move || count_complement_mod_q(p, forms_ref, q)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("counting thread"))
                .collect()
        });
        let samples: Vec<(u64, u64)> = primes.iter().copied().zip(counts.iter().copied()).collect();
        if let Ok(poly) = interpolate(&samples[..p + 1]) {
            let (vq, vc) = (samples[p + 1].0, samples[p + 1].1);
            let monic = poly.degree() == p && poly.coeffs[p] == 1;
            if monic && poly.eval(vq as i64) == vc as i64 {
                return Ok(poly);
            }
        }
        bound *= 2;
    }
    Err(Error::Engine {
        detail: format!(
            "verification prime disagreed twice for {} {} m={}",
            rs.id(),
            arr.kind.label(),
            arr.m
        ),
    })
}

pub fn char_poly(rs: &RootSystem, arr: &Arrangement) -> Result<IntPolynomial> {
    char_poly_with(rs, arr, &EngineOptions::default())
}

// ---------------------------------------------------------------------------
// Whitney / intersection-poset engine (rank <= 3)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Flat {
    /// Reduced row echelon form of the defining equations `[A | b]`.
    eqs: Vec<Vec<Rat>>,
    /// A point of the flat.
    point: Vec<Rat>,
    /// Basis of the direction space.
    dirs: Vec<Vec<Rat>>,
}

impl Flat {
    fn dim(&self, ambient: usize) -> usize {
        ambient - self.eqs.len()
    }

    fn contains_point(&self, point: &[Rat]) -> bool {
        let n = point.len();
        self.eqs.iter().all(|eq| {
            let lhs: Rat = (0..n).map(|j| eq[j] * point[j]).sum();
            lhs == eq[n]
        })
    }

    fn contains_direction(&self, dir: &[Rat]) -> bool {
        let n = dir.len();
        self.eqs.iter().all(|eq| {
            let lhs: Rat = (0..n).map(|j| eq[j] * dir[j]).sum();
            lhs.is_zero()
        })
    }

    /// Does this flat contain the other one (as sets of points)?
    fn contains_flat(&self, other: &Flat) -> bool {
        self.contains_point(&other.point) && other.dirs.iter().all(|d| self.contains_direction(d))
    }

    /// Solve the RREF system for a particular point and direction basis.
    fn from_eqs(mut eqs: Vec<Vec<Rat>>, ambient: usize) -> Option<Flat> {
        let pivots = crate::linalg::rref(&mut eqs);
        if pivots.contains(&ambient) {
            return None; // inconsistent
        }
        let mut point = vec![Rat::zero(); ambient];
        for (row, &col) in eqs.iter().zip(&pivots) {
            point[col] = row[ambient];
        }
        let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        let dirs: Vec<Vec<Rat>> = free
            .iter()
            .map(|&fc| {
                let mut d = vec![Rat::zero(); ambient];
                d[fc] = Rat::one();
                for (row, &col) in eqs.iter().zip(&pivots) {
                    d[col] = -row[fc];
                }
                d
            })
            .collect();
        Some(Flat { eqs, point, dirs })
    }
}

/// Characteristic polynomial from the intersection poset and its recursive
/// Mobius values. Exponential in the arrangement size; guarded to rank <= 3.
pub fn char_poly_whitney(rs: &RootSystem, arr: &Arrangement) -> Result<IntPolynomial> {
    let p = rs.rank();
    if p > 3 {
        return Err(Error::RankGuard {
            rank: p,
            max: 3,
            what: "intersection-poset engine",
        });
    }
    let rows: Vec<Vec<Rat>> = arr
        .hyperplanes
        .iter()
        .map(|&(idx, k)| {
            let mut row: Vec<Rat> = rs
                .pairing_vector(rs.root_coeffs(idx))
                .into_iter()
                .map(rat_int)
                .collect();
            row.push(rat_int(k));
            row
        })
        .collect();

    // Flats by increasing codimension; key on the canonical RREF.
    let mut flats: Vec<Flat> = Vec::new();
    let mut seen: BTreeMap<Vec<Vec<Rat>>, usize> = BTreeMap::new();
    let mut frontier: Vec<usize> = Vec::new();
    for row in &rows {
        if let Some(flat) = Flat::from_eqs(vec![row.clone()], p) {
            if !seen.contains_key(&flat.eqs) {
                seen.insert(flat.eqs.clone(), flats.len());
                frontier.push(flats.len());
                flats.push(flat);
            }
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            for row in &rows {
                let mut eqs = flats[fi].eqs.clone();
                eqs.push(row.clone());
                let Some(flat) = Flat::from_eqs(eqs, p) else {
                    continue;
                };
                if flat.eqs.len() == flats[fi].eqs.len() {
                    continue; // hyperplane contained the flat
                }
                if !seen.contains_key(&flat.eqs) {
                    seen.insert(flat.eqs.clone(), flats.len());
                    next.push(flats.len());
                    flats.push(flat);
                }
            }
        }
        frontier = next;
    }

    // Mobius recursion from the whole space down, by decreasing dimension.
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(flats[i].dim(p)));
    let mut mobius = vec![0i64; flats.len()];
    for &i in &order {
        let mut m = -1i64; // contribution of the whole space
        for &j in &order {
            if flats[j].dim(p) > flats[i].dim(p) && flats[j].contains_flat(&flats[i]) {
                m -= mobius[j];
            }
        }
        mobius[i] = m;
    }
    let mut coeffs = vec![0i64; p + 1];
    coeffs[p] = 1;
    for (i, flat) in flats.iter().enumerate() {
        coeffs[flat.dim(p)] += mobius[i];
    }
    Ok(IntPolynomial::new(coeffs))
}

// ---------------------------------------------------------------------------
// Zaslavsky counts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionCounts {
    pub regions: i64,
    pub bounded: i64,
}

/// Region counts from the characteristic polynomial: all regions are the
/// alternating evaluation at -1, bounded regions the absolute value at 1.
pub fn zaslavsky_counts(chi: &IntPolynomial, rank: usize) -> RegionCounts {
    let sign = if rank.is_multiple_of(2) { 1 } else { -1 };
    RegionCounts {
        regions: sign * chi.eval(-1),
        bounded: chi.eval(1).abs(),
    }
}

// ---------------------------------------------------------------------------
// Dominant regions
// ---------------------------------------------------------------------------

/// A dominant region of the (semi-)Catalan arrangement, cut out by a sign
/// choice at level 1 for every (short) positive root, plus dominance.
#[derive(Debug, Clone)]
pub struct DominantRegion {
    pub antichain: Antichain,
    /// True for the semi-Catalan region map (short roots only).
    pub semi: bool,
    pub constraints: Vec<Constraint>,
    /// A rational point satisfying every constraint strictly: the barycenter
    /// of the alcove nearest the origin inside the region.
    pub sample: Vec<Rat>,
}

fn region_with(
    rs: &RootSystem,
    gamma: &Antichain,
    constrained: &[usize],
    semi: bool,
) -> Result<DominantRegion> {
    let ideal = gamma.closure(rs);
    let mut constraints = Vec::new();
    for i in 0..rs.rank() {
        constraints.push(Constraint {
            root: rs.simple_index(i),
            rel: Rel::Gt,
            bound: rat_int(0),
        });
    }
    for &idx in constrained {
        constraints.push(Constraint {
            root: idx,
            rel: if ideal.contains(idx) {
                Rel::Gt
            } else {
                Rel::Lt
            },
            bound: rat_int(1),
        });
    }
    let w = minimal_from_ideal(rs, &ideal)?;
    let barycenter = rs.alcove_geometry().barycenter;
    let sample = w.act_point_inverse(rs, &barycenter);
    for c in &constraints {
        let v = rs.point_root_pairing(&sample, rs.root_coeffs(c.root));
        if !c.holds(v) {
            return Err(Error::internal(format!(
                "sample point violates {:?} for antichain {:?}",
                c,
                gamma.coeff_vectors(rs)
            )));
        }
    }
    Ok(DominantRegion {
        antichain: gamma.clone(),
        semi,
        constraints,
        sample,
    })
}

/// The dominant Catalan region attached to an antichain: above level 1
/// exactly at the roots of the generated ideal.
pub fn catalan_region(rs: &RootSystem, gamma: &Antichain) -> Result<DominantRegion> {
    let all: Vec<usize> = (0..rs.num_positive_roots()).collect();
    region_with(rs, gamma, &all, false)
}

/// The dominant semi-Catalan region attached to a short antichain: the sign
/// pattern constrains the short roots only.
pub fn semi_catalan_region(rs: &RootSystem, gamma: &Antichain) -> Result<DominantRegion> {
    if let Some(&bad) = gamma.members().iter().find(|&&i| !rs.is_short(i)) {
        return Err(Error::NotShort {
            root: rs.root_coeffs(bad).to_vec(),
        });
    }
    let shorts = rs.short_positive_indices();
    region_with(rs, gamma, &shorts, true)
}

/// Boundedness of a dominant region, decided two independent ways: the
/// combinatorial criterion on the antichain, and a recession test (there is
/// an unbounded coweight direction iff some coordinate's constrained roots
/// all sit in the ideal). The two must agree.
pub fn region_is_bounded(rs: &RootSystem, region: &DominantRegion) -> Result<bool> {
    let combinatorial = if region.semi {
        region.antichain.is_strictly_s_positive(rs)?
    } else {
        region.antichain.closure(rs).is_strictly_positive(rs)
    };
    let ideal = region.antichain.closure(rs);
    let relevant: Vec<usize> = if region.semi {
        rs.short_positive_indices()
    } else {
        (0..rs.num_positive_roots()).collect()
    };
    let mut unbounded = false;
    for j in 0..rs.rank() {
        let escape = relevant
            .iter()
            .filter(|&&idx| rs.root_coeffs(idx)[j] > 0)
            .all(|&idx| ideal.contains(idx));
        if escape {
            unbounded = true;
            break;
        }
    }
    let geometric = !unbounded;
    if combinatorial != geometric {
        return Err(Error::internal(format!(
            "boundedness tests disagree on {:?}: combinatorial={combinatorial}, geometric={geometric}",
            region.antichain.coeff_vectors(rs)
        )));
    }
    Ok(geometric)
}

/// Census of dominant regions of the Catalan (`semi = false`) or semi-Catalan
/// (`semi = true`) arrangement at m = 1, cross-checked three ways.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub system: String,
    pub kind: &'static str,
    pub dominant_enumerated: u64,
    pub dominant_via_chi: u64,
    pub bounded_enumerated: u64,
    pub bounded_via_chi: u64,
    pub samples_valid: bool,
    pub consistent: bool,
}

pub fn dominant_region_census(rs: &RootSystem, semi: bool) -> Result<CensusReport> {
    let (kind, filter, bounded_filter) = if semi {
        (
            ArrangementKind::SemiCatalan,
            AntichainFilter::Short,
            AntichainFilter::StrictlySPositive,
        )
    } else {
        (
            ArrangementKind::Catalan,
            AntichainFilter::All,
            AntichainFilter::StrictlyPositive,
        )
    };
    let antichains = enumerate_antichains(rs, filter)?;
    let mut samples_valid = true;
    let mut bounded_enumerated = 0u64;
    for gamma in &antichains {
        let region = if semi {
            semi_catalan_region(rs, gamma)
        } else {
            catalan_region(rs, gamma)
        };
        match region {
            Ok(region) => {
                if region_is_bounded(rs, &region)? {
                    bounded_enumerated += 1;
                }
            }
            Err(_) => samples_valid = false,
        }
    }
    let chi = char_poly(rs, &build_arrangement(rs, kind, 1)?)?;
    let counts = zaslavsky_counts(&chi, rs.rank());
    let w = rs.weyl_order() as i64;
    if counts.regions % w != 0 || counts.bounded % w != 0 {
        return Err(Error::internal(format!(
            "region counts {counts:?} not divisible by the Weyl order {w}"
        )));
    }
    let dominant_via_chi = (counts.regions / w) as u64;
    let bounded_via_chi = (counts.bounded / w) as u64;
    let bounded_direct = enumerate_antichains(rs, bounded_filter)?.len() as u64;
    let consistent = samples_valid
        && dominant_via_chi == antichains.len() as u64
        && bounded_via_chi == bounded_enumerated
        && bounded_direct == bounded_enumerated;
    Ok(CensusReport {
        system: rs.id().to_string(),
        kind: kind.label(),
        dominant_enumerated: antichains.len() as u64,
        dominant_via_chi,
        bounded_enumerated,
        bounded_via_chi,
        samples_valid,
        consistent,
    })
}

// ---------------------------------------------------------------------------
// Most-distant alcove check for s-maximal elements
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct MostDistantReport {
    pub region_ok: bool,
    pub walls_ok: bool,
    pub failures: Vec<String>,
}

impl MostDistantReport {
    pub fn ok(&self) -> bool {
        self.region_ok && self.walls_ok
    }
}

/// Verify that the alcove of an s-maximal element sits inside its region as
/// the most distant alcove: (a) the alcove barycenter image satisfies the
/// region constraints; (b) every alcove wall not separating it from the
/// origin is a chamber wall or a level-1 short hyperplane.
pub fn most_distant_alcove_check(
    rs: &RootSystem,
    w: &AffineWeylElement,
) -> Result<MostDistantReport> {
    if w.classify(rs).s_maximal != Some(true) {
        return Err(Error::WrongClass {
            required: "s-maximal",
        });
    }
    let gamma = s_maximal_antichain(rs, w)?;
    let region = semi_catalan_region(rs, &gamma)?;
    let barycenter = rs.alcove_geometry().barycenter;
    let image = w.act_point_inverse(rs, &barycenter);
    let mut failures = Vec::new();
    let region_ok = region
        .constraints
        .iter()
        .all(|c| c.holds(rs.point_root_pairing(&image, rs.root_coeffs(c.root))));
    if !region_ok {
        failures.push("alcove barycenter image escapes the region".to_string());
    }
    // Walls not separating from the origin carry positive w^{-1}(alpha).
    let winv = w.inverse(rs);
    let mut walls_ok = true;
    let simples: Vec<AffineRoot> = std::iter::once(AffineRoot::affine_simple(rs))
        .chain((0..rs.rank()).map(|i| AffineRoot::finite_simple(rs, i)))
        .collect();
    for alpha in &simples {
        let beta = winv.apply(rs, alpha);
        if !beta.is_positive() {
            continue; // separating wall
        }
        let fine = match beta.level {
            0 => beta.finite.iter().all(|&c| c >= 0), // chamber wall (x, mu) = 0
            1 => {
                // hyperplane (x, mu') = 1 with mu' = -finite a short positive root
                let neg: Vec<i64> = beta.finite.iter().map(|&c| -c).collect();
                rs.index_of(&neg).is_some_and(|idx| rs.is_short(idx))
            }
            _ => false,
        };
        if !fine {
            walls_ok = false;
            failures.push(format!(
                "wall image {beta:?} is neither chamber wall nor level-1 short"
            ));
        }
    }
    Ok(MostDistantReport {
        region_ok,
        walls_ok,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Semi-Shi conjecture report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SemiShiReport {
    pub system: String,
    pub m: usize,
    pub computed: IntPolynomial,
    pub conjectured: IntPolynomial,
    pub matches: bool,
    pub runtime_ms: u128,
}

/// Compare the semi-Shi characteristic polynomial against the conjectured
/// product over the long subsystem's exponents shifted by m times the dual
/// system's short coordinate sum. Reports; never asserts.
pub fn semi_shi_conjecture_report(rs: &RootSystem, m: usize) -> Result<SemiShiReport> {
    let start = std::time::Instant::now();
    let arr = build_arrangement(rs, ArrangementKind::SemiShi, m)?;
    let computed = char_poly(rs, &arr)?;
    let g_dual = rs.dual().short_coordinate_sum()? as i64;
    let long_exponents = rs
        .subsystem(SubsystemSelector::LongRoots)?
        .exponents()
        .to_vec();
    let roots: Vec<i64> = long_exponents
        .iter()
        .map(|&e| m as i64 * g_dual + e as i64)
        .collect();
    let conjectured = IntPolynomial::from_roots(&roots);
    let matches = computed == conjectured;
    Ok(SemiShiReport {
        system: rs.id().to_string(),
        m,
        computed,
        conjectured,
        matches,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, SystemId};

    fn sys(label: &str) -> RootSystem {
        let id = SystemId::parse(label).unwrap();
        build_root_system(id.letter, id.rank).unwrap()
    }

    fn chi(rs: &RootSystem, kind: ArrangementKind, m: usize) -> IntPolynomial {
        char_poly(rs, &build_arrangement(rs, kind, m).unwrap()).unwrap()
    }

    #[test]
    fn arrangement_shapes() {
        let rs = sys("C2");
        let cox = build_arrangement(&rs, ArrangementKind::Coxeter, 0).unwrap();
        assert_eq!(cox.hyperplanes.len(), 4);
        let cat_s = build_arrangement(&rs, ArrangementKind::SemiCatalan, 1).unwrap();
        assert_eq!(cat_s.hyperplanes.len(), 8);
        let shi_s = build_arrangement(&rs, ArrangementKind::SemiShi, 1).unwrap();
        assert_eq!(shi_s.hyperplanes.len(), 6);
        assert!(cat_s.w_invariant);
        assert!(!shi_s.w_invariant);
        assert!(build_arrangement(&rs, ArrangementKind::Shi, 0).is_err());
        assert!(build_arrangement(&sys("A2"), ArrangementKind::SemiCatalan, 1).is_err());
    }

    #[test]
    fn coxeter_char_polys() {
        for label in ["A2", "C2", "G2", "B3"] {
            let rs = sys(label);
            let expect: Vec<i64> = rs.exponents().iter().map(|&e| e as i64).collect();
            assert_eq!(
                chi(&rs, ArrangementKind::Coxeter, 0),
                IntPolynomial::from_roots(&expect),
                "{label}"
            );
        }
    }

    #[test]
    fn catalan_char_polys() {
        let c2 = sys("C2");
        assert_eq!(
            chi(&c2, ArrangementKind::Catalan, 1),
            IntPolynomial::from_roots(&[5, 7])
        );
        let g2 = sys("G2");
        assert_eq!(
            chi(&g2, ArrangementKind::Catalan, 1),
            IntPolynomial::from_roots(&[7, 11])
        );
    }

    #[test]
    fn semi_catalan_char_polys() {
        let c2 = sys("C2");
        assert_eq!(
            chi(&c2, ArrangementKind::SemiCatalan, 1),
            IntPolynomial::from_roots(&[3, 5])
        );
        let g2 = sys("G2");
        assert_eq!(
            chi(&g2, ArrangementKind::SemiCatalan, 1),
            IntPolynomial::from_roots(&[5, 7])
        );
        assert_eq!(
            chi(&g2, ArrangementKind::SemiCatalan, 2),
            IntPolynomial::from_roots(&[7, 11])
        );
    }

    #[test]
    fn shi_char_polys_classical() {
        // chi(Shi^m) = (t - mh)^p, a classical engine sanity check.
        let c2 = sys("C2");
        assert_eq!(
            chi(&c2, ArrangementKind::Shi, 1),
            IntPolynomial::from_roots(&[4, 4])
        );
        let g2 = sys("G2");
        assert_eq!(
            chi(&g2, ArrangementKind::Shi, 2),
            IntPolynomial::from_roots(&[12, 12])
        );
    }

    #[test]
    fn semi_shi_reports() {
        let c2 = sys("C2");
        for m in 1..=3 {
            let rep = semi_shi_conjecture_report(&c2, m).unwrap();
            let expected = IntPolynomial::from_roots(&[2 * m as i64 + 1, 2 * m as i64 + 1]);
            assert_eq!(rep.computed, expected, "m={m}");
            assert!(rep.matches);
        }
        let g2 = sys("G2");
        let rep = semi_shi_conjecture_report(&g2, 3).unwrap();
        assert_eq!(rep.computed, IntPolynomial::from_roots(&[10, 11]));
        assert!(rep.matches);
    }

    #[test]
    fn whitney_agrees_with_finite_field() {
        let c2 = sys("C2");
        for (kind, m) in [
            (ArrangementKind::Coxeter, 0),
            (ArrangementKind::Catalan, 1),
            (ArrangementKind::SemiCatalan, 1),
            (ArrangementKind::SemiCatalan, 2),
            (ArrangementKind::SemiShi, 1),
        ] {
            let arr = build_arrangement(&c2, kind, m).unwrap();
            assert_eq!(
                char_poly_whitney(&c2, &arr).unwrap(),
                char_poly(&c2, &arr).unwrap(),
                "{kind:?} m={m}"
            );
        }
        // rank guard
        let f4 = sys("F4");
        let arr = build_arrangement(&f4, ArrangementKind::Coxeter, 0).unwrap();
        assert!(matches!(
            char_poly_whitney(&f4, &arr),
            Err(Error::RankGuard { .. })
        ));
    }

    /// Independent rank-2 oracle: total regions by incremental line
    /// insertion (a line crossing k existing intersection points adds k+1
    /// regions), bounded regions by the planar Euler formula on the graph of
    /// bounded segments (B = E - V + C).
    fn rank2_region_counts(rs: &RootSystem, arr: &Arrangement) -> (i64, i64) {
        use crate::linalg::{rat, Rat};
        assert_eq!(rs.rank(), 2);
        // Work in the pairing plane n = (n_1, n_2), a linear change of
        // coordinates; the line of (root m, level k) is m.n = k.
        let lines: Vec<(i64, i64, i64)> = arr
            .hyperplanes
            .iter()
            .map(|&(idx, k)| {
                let m = rs.root_coeffs(idx);
                (m[0], m[1], k)
            })
            .collect();
        let meet = |a: (i64, i64, i64), b: (i64, i64, i64)| -> Option<(Rat, Rat)> {
            let det = a.0 * b.1 - a.1 * b.0;
            if det == 0 {
                return None;
            }
            Some((
                rat(a.2 * b.1 - a.1 * b.2, det),
                rat(a.0 * b.2 - a.2 * b.0, det),
            ))
        };
        // Total regions, adding lines one at a time.
        let mut regions = 1i64;
        for (j, &lj) in lines.iter().enumerate() {
            let mut crossings: Vec<(Rat, Rat)> =
                lines[..j].iter().filter_map(|&li| meet(li, lj)).collect();
            crossings.sort();
            crossings.dedup();
            regions += crossings.len() as i64 + 1;
        }
        // Bounded regions via Euler on the bounded-segment graph.
        let mut vertices: Vec<(Rat, Rat)> = Vec::new();
        for (i, &li) in lines.iter().enumerate() {
            for &lj in &lines[..i] {
                if let Some(p) = meet(li, lj) {
                    vertices.push(p);
                }
            }
        }
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return (regions, 0);
        }
        let vid = |p: &(Rat, Rat)| vertices.binary_search(p).unwrap();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let mut edges = 0i64;
        for &l in &lines {
            let mut on_line: Vec<(Rat, Rat)> = vertices
                .iter()
                .filter(|p| rat(l.0, 1) * p.0 + rat(l.1, 1) * p.1 == rat(l.2, 1))
                .cloned()
                .collect();
            on_line.sort();
            for pair in on_line.windows(2) {
                edges += 1;
                let (a, b) = (vid(&pair[0]), vid(&pair[1]));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let components = {
            let n = vertices.len();
            let mut roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len() as i64
        };
        let bounded = edges - vertices.len() as i64 + components;
        (regions, bounded)
    }

    #[test]
    fn zaslavsky_agrees_with_geometric_oracle_rank2() {
        for label in ["B2", "C2", "G2"] {
            let rs = sys(label);
            let cases: Vec<(ArrangementKind, usize)> = vec![
                (ArrangementKind::Coxeter, 0),
                (ArrangementKind::Catalan, 1),
                (ArrangementKind::Catalan, 2),
                (ArrangementKind::SemiCatalan, 1),
                (ArrangementKind::SemiCatalan, 2),
                (ArrangementKind::SemiCatalan, 3),
                (ArrangementKind::Shi, 1),
                (ArrangementKind::Shi, 2),
                (ArrangementKind::SemiShi, 1),
                (ArrangementKind::SemiShi, 2),
                (ArrangementKind::SemiShi, 3),
            ];
            for (kind, m) in cases {
                let arr = build_arrangement(&rs, kind, m).unwrap();
                let chi = char_poly(&rs, &arr).unwrap();
                let counts = zaslavsky_counts(&chi, 2);
                let (regions, bounded) = rank2_region_counts(&rs, &arr);
                assert_eq!(
                    (counts.regions, counts.bounded),
                    (regions, bounded),
                    "{label} {kind:?} m={m}"
                );
            }
        }
    }

    #[test]
    fn zaslavsky_examples() {
        let chi = IntPolynomial::from_roots(&[3, 5]);
        let counts = zaslavsky_counts(&chi, 2);
        assert_eq!(counts.regions, 24);
        assert_eq!(counts.bounded, 8);
        let cox = IntPolynomial::from_roots(&[1, 3]);
        let counts = zaslavsky_counts(&cox, 2);
        assert_eq!(counts.regions, 8);
        assert_eq!(counts.bounded, 0);
    }

    #[test]
    fn census_c2() {
        let rs = sys("C2");
        let rep = dominant_region_census(&rs, true).unwrap();
        assert_eq!(rep.dominant_enumerated, 3);
        assert_eq!(rep.bounded_enumerated, 1);
        assert!(rep.consistent);
        let rep = dominant_region_census(&rs, false).unwrap();
        assert_eq!(rep.dominant_enumerated, 6);
        assert_eq!(rep.bounded_enumerated, 3);
        assert!(rep.consistent);
    }

    #[test]
    fn census_g2() {
        let rs = sys("G2");
        let rep = dominant_region_census(&rs, true).unwrap();
        assert_eq!(rep.dominant_enumerated, 4);
        assert_eq!(rep.bounded_enumerated, 2);
        assert!(rep.consistent);
    }

    #[test]
    fn region_construction_examples() {
        let rs = sys("C2");
        let a1 = rs.index_of(&[1, 0]).unwrap();
        let gamma = Antichain::new(&rs, vec![a1]).unwrap();
        let region = semi_catalan_region(&rs, &gamma).unwrap();
        // (x, alpha_1) > 1 and (x, alpha_1 + alpha_2) > 1 among the constraints.
        let above: Vec<usize> = region
            .constraints
            .iter()
            .filter(|c| c.rel == Rel::Gt && c.bound == rat_int(1))
            .map(|c| c.root)
            .collect();
        assert_eq!(above.len(), 2);
        assert!(!region_is_bounded(&rs, &region).unwrap());

        let empty = semi_catalan_region(&rs, &Antichain::empty()).unwrap();
        assert!(region_is_bounded(&rs, &empty).unwrap());

        // long input rejected
        let long = Antichain::new(&rs, vec![rs.index_of(&[0, 1]).unwrap()]).unwrap();
        assert!(semi_catalan_region(&rs, &long).is_err());
    }

    #[test]
    fn bounded_g2_strictly_s_positive() {
        let rs = sys("G2");
        let gamma = Antichain::new(&rs, vec![rs.index_of(&[2, 1]).unwrap()]).unwrap();
        let region = semi_catalan_region(&rs, &gamma).unwrap();
        assert!(region_is_bounded(&rs, &region).unwrap());
    }

    #[test]
    fn most_distant_alcove() {
        let rs = sys("C2");
        let id = AffineWeylElement::identity(&rs);
        assert!(most_distant_alcove_check(&rs, &id).is_err()); // identity is not s-maximal
        let s0 = AffineWeylElement::simple(&rs, 0);
        let rep = most_distant_alcove_check(&rs, &s0).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);

        let g2 = sys("G2");
        for gamma in enumerate_antichains(&g2, AntichainFilter::StrictlySPositive).unwrap() {
            let w = crate::affine::s_maximal_from_antichain(&g2, &gamma).unwrap();
            let rep = most_distant_alcove_check(&g2, &w).unwrap();
            assert!(rep.ok(), "{:?}", rep.failures);
        }
    }
}
