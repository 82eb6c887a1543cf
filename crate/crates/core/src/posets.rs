//! The positive-root poset: ideals, antichains, their enumeration, and the
//! closed counting formulas they satisfy.
//!
//! Roots are ordered by `mu <= gamma` iff `gamma - mu` has nonnegative
//! coordinates. An ideal is an upward-closed subset; its minimal elements
//! form an antichain and every antichain arises that way.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poly::BivariatePolynomial;
use crate::rootsys::{RootSystem, SubsystemSelector};

/// Pairwise incomparable set of positive roots, stored as sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain {
    members: Vec<usize>,
}

/// Upward-closed set of positive roots, stored as sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal {
    members: Vec<usize>,
}

/// `mu <= gamma` in the root order: the difference is a nonnegative vector.
pub fn leq(rs: &RootSystem, mu: usize, gamma: usize) -> bool {
    rs.root_coeffs(mu)
        .iter()
        .zip(rs.root_coeffs(gamma))
        .all(|(a, b)| a <= b)
}

/// Root-level comparison, rejecting anything but positive roots of this system.
pub fn leq_roots(
    rs: &RootSystem,
    mu: &crate::rootsys::Root,
    gamma: &crate::rootsys::Root,
) -> Result<bool> {
    for r in [mu, gamma] {
        if r.system() != rs.id() {
            return Err(Error::MixedSystems {
                a: r.system().to_string(),
                b: rs.id().to_string(),
            });
        }
        if !rs.is_positive_root(r.coeffs()) {
            return Err(Error::NotPositive {
                coeffs: r.coeffs().to_vec(),
            });
        }
    }
    Ok(mu.coeffs().iter().zip(gamma.coeffs()).all(|(a, b)| a <= b))
}

pub fn comparable(rs: &RootSystem, a: usize, b: usize) -> bool {
    leq(rs, a, b) || leq(rs, b, a)
}

impl Antichain {
    pub fn new(rs: &RootSystem, mut members: Vec<usize>) -> Result<Antichain> {
        members.sort_unstable();
        members.dedup();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if comparable(rs, a, b) {
                    return Err(Error::NotAntichain {
                        a: rs.root_coeffs(a).to_vec(),
                        b: rs.root_coeffs(b).to_vec(),
                    });
                }
            }
        }
        Ok(Antichain { members })
    }

    pub fn empty() -> Antichain {
        Antichain {
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_short(&self, rs: &RootSystem) -> bool {
        self.members.iter().all(|&i| rs.is_short(i))
    }

    pub fn is_long(&self, rs: &RootSystem) -> bool {
        self.members.iter().all(|&i| !rs.is_short(i))
    }

    /// No simple roots among the members.
    pub fn is_strictly_positive(&self, rs: &RootSystem) -> bool {
        let simples: Vec<usize> = (0..rs.rank()).map(|i| rs.simple_index(i)).collect();
        self.members.iter().all(|i| !simples.contains(i))
    }

    /// Short, and avoiding the simple roots of the short subsystem.
    pub fn is_strictly_s_positive(&self, rs: &RootSystem) -> Result<bool> {
        let sub_simples = rs.short_subsystem_simple_indices()?;
        Ok(self.is_short(rs) && self.members.iter().all(|i| !sub_simples.contains(i)))
    }

    /// Short, and avoiding the short simple roots of the parent.
    pub fn avoids_short_simples(&self, rs: &RootSystem) -> Result<bool> {
        if !rs.two_lengths() {
            return Err(Error::SimplyLaced {
                op: "avoids_short_simples",
                system: rs.id().to_string(),
            });
        }
        let short_simples: Vec<usize> = rs
            .short_simple_indices()
            .iter()
            .map(|&i| rs.simple_index(i))
            .collect();
        Ok(self.is_short(rs) && self.members.iter().all(|i| !short_simples.contains(i)))
    }

    /// Every simple root lies below some member.
    pub fn covers_simples(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| {
            let si = rs.simple_index(i);
            self.members.iter().any(|&m| leq(rs, si, m))
        })
    }

    /// Upward closure: the ideal generated by this antichain.
    pub fn closure(&self, rs: &RootSystem) -> Ideal {
        let members: Vec<usize> = (0..rs.num_positive_roots())
            .filter(|&m| self.members.iter().any(|&g| leq(rs, g, m)))
            .collect();
        Ideal { members }
    }

    pub fn coeff_vectors(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.members
            .iter()
            .map(|&i| rs.root_coeffs(i).to_vec())
            .collect()
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        serde_json::json!(self.coeff_vectors(rs))
    }
}

impl Ideal {
    pub fn new(rs: &RootSystem, mut members: Vec<usize>) -> Result<Ideal> {
        members.sort_unstable();
        members.dedup();
        let set: BTreeSet<usize> = members.iter().copied().collect();
        for &m in &members {
            for above in 0..rs.num_positive_roots() {
                if leq(rs, m, above) && !set.contains(&above) {
                    return Err(Error::NotIdeal {
                        missing: rs.root_coeffs(above).to_vec(),
                    });
                }
            }
        }
        Ok(Ideal { members })
    }

    pub fn empty() -> Ideal {
        Ideal {
            members: Vec::new(),
        }
    }

    pub fn full(rs: &RootSystem) -> Ideal {
        Ideal {
            members: (0..rs.num_positive_roots()).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_strictly_positive(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| !self.contains(rs.simple_index(i)))
    }

    /// Minimal members: the generating antichain.
    pub fn generators(&self, rs: &RootSystem) -> Antichain {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&m| !self.members.iter().any(|&o| o != m && leq(rs, o, m)))
            .collect();
        Antichain { members }
    }

    /// Maximal elements of the complement.
    pub fn complement_maxima(&self, rs: &RootSystem) -> Antichain {
        let complement: Vec<usize> = (0..rs.num_positive_roots())
            .filter(|i| !self.contains(*i))
            .collect();
        let members: Vec<usize> = complement
            .iter()
            .copied()
            .filter(|&m| !complement.iter().any(|&o| o != m && leq(rs, m, o)))
            .collect();
        Antichain { members }
    }
}

/// Which antichains to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntichainFilter {
    All,
    Short,
    Long,
    /// No simple roots.
    StrictlyPositive,
    /// Short, avoiding the simple roots of the short subsystem.
    StrictlySPositive,
    /// Short, avoiding the short simple roots of the parent.
    ShortAvoidingShortSimples,
    /// Covers every simple root (the complement-maxima of strictly positive ideals).
    CoversSimples,
}

impl AntichainFilter {
    pub fn parse(s: &str) -> Result<AntichainFilter> {
        match s {
            "all" => Ok(AntichainFilter::All),
            "short" => Ok(AntichainFilter::Short),
            "long" => Ok(AntichainFilter::Long),
            "strictly-positive" => Ok(AntichainFilter::StrictlyPositive),
            "strictly-s-positive" => Ok(AntichainFilter::StrictlySPositive),
            "ss" => Ok(AntichainFilter::ShortAvoidingShortSimples),
            "covers" => Ok(AntichainFilter::CoversSimples),
            other => Err(Error::invalid(format!("unknown filter `{other}`"))),
        }
    }
}

/// Depth-first enumeration of the antichains supported on `candidates`
/// (indices in ascending order, which is a linear extension of the root
/// order), pruning on comparability.
pub(crate) fn enumerate_on(rs: &RootSystem, candidates: &[usize]) -> Vec<Antichain> {
    let n = rs.num_positive_roots();
    // comparability[a*n + b] for a, b positive-root indices.
    let mut cmp = vec![false; n * n];
    for &a in candidates {
        for &b in candidates {
            cmp[a * n + b] = comparable(rs, a, b);
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec(
        cands: &[usize],
        from: usize,
        cmp: &[bool],
        n: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Antichain>,
    ) {
        out.push(Antichain {
            members: current.clone(),
        });
        for k in from..cands.len() {
            let c = cands[k];
            if current.iter().all(|&m| !cmp[m * n + c]) {
                current.push(c);
                rec(cands, k + 1, cmp, n, current, out);
                current.pop();
            }
        }
    }
    rec(candidates, 0, &cmp, n, &mut current, &mut out);
    out.sort();
    out
}

pub fn enumerate_antichains(rs: &RootSystem, filter: AntichainFilter) -> Result<Vec<Antichain>> {
    let all: Vec<usize> = (0..rs.num_positive_roots()).collect();
    let candidates: Vec<usize> = match filter {
        AntichainFilter::All | AntichainFilter::CoversSimples => all,
        AntichainFilter::Short => {
            if !rs.two_lengths() {
                return Err(Error::SimplyLaced {
                    op: "enumerate_antichains(short)",
                    system: rs.id().to_string(),
                });
            }
            rs.short_positive_indices()
        }
        AntichainFilter::Long => {
            if !rs.two_lengths() {
                return Err(Error::SimplyLaced {
                    op: "enumerate_antichains(long)",
                    system: rs.id().to_string(),
                });
            }
            rs.long_positive_indices()
        }
        AntichainFilter::StrictlyPositive => {
            let simples: BTreeSet<usize> = (0..rs.rank()).map(|i| rs.simple_index(i)).collect();
            all.into_iter().filter(|i| !simples.contains(i)).collect()
        }
        AntichainFilter::StrictlySPositive => {
            let sub: BTreeSet<usize> = rs
                .short_subsystem_simple_indices()?
                .iter()
                .copied()
                .collect();
            rs.short_positive_indices()
                .into_iter()
                .filter(|i| !sub.contains(i))
                .collect()
        }
        AntichainFilter::ShortAvoidingShortSimples => {
            if !rs.two_lengths() {
                return Err(Error::SimplyLaced {
                    op: "enumerate_antichains(ss)",
                    system: rs.id().to_string(),
                });
            }
            let short_simples: BTreeSet<usize> = rs
                .short_simple_indices()
                .iter()
                .map(|&i| rs.simple_index(i))
                .collect();
            rs.short_positive_indices()
                .into_iter()
                .filter(|i| !short_simples.contains(i))
                .collect()
        }
    };
    let mut list = enumerate_on(rs, &candidates);
    if filter == AntichainFilter::CoversSimples {
        list.retain(|a| a.covers_simples(rs));
    }
    Ok(list)
}

/// Antichains of the sub-root system spanned by the long simple roots,
/// with the order inherited from the parent.
pub fn enumerate_antichains_in_long_span(rs: &RootSystem) -> Result<Vec<Antichain>> {
    let sub = rs.subsystem(SubsystemSelector::SpanOfLongSimples)?;
    Ok(enumerate_on(rs, sub.positive()))
}

// ---------------------------------------------------------------------------
// Closed-form counts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CountKind {
    All,
    StrictlyPositive,
    Short,
    StrictlySPositive,
    Long,
    ShortAvoidingShortSimples,
    /// The alternative product for the short count running over the first
    /// `#short simples` exponents; covers G2 as well.
    ShortUnified,
}

impl CountKind {
    pub fn label(self) -> &'static str {
        match self {
            CountKind::All => "all",
            CountKind::StrictlyPositive => "strictly-positive",
            CountKind::Short => "short",
            CountKind::StrictlySPositive => "strictly-s-positive",
            CountKind::Long => "long",
            CountKind::ShortAvoidingShortSimples => "ss",
            CountKind::ShortUnified => "short-unified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Value(u64),
    /// The product formula does not apply; `stated` carries a directly
    /// stated count when one exists (the G2 short cases).
    NotApplicable {
        stated: Option<u64>,
    },
}

#[derive(Debug, Clone)]
pub struct CountTable {
    pub rows: Vec<(CountKind, Prediction)>,
}

impl CountTable {
    pub fn get(&self, kind: CountKind) -> Option<Prediction> {
        self.rows.iter().find(|(k, _)| *k == kind).map(|&(_, p)| p)
    }
}

/// Product of (num_i / den_i), which must come out integral.
fn integral_product(terms: impl Iterator<Item = (u64, u64)>) -> Result<u64> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (n, d) in terms {
        num *= n as u128;
        den *= d as u128;
    }
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::internal(format!(
            "count formula is not integral: {num}/{den}"
        )));
    }
    Ok((num / den) as u64)
}

fn product_over_exponents(exps: &[usize], shift: i64) -> Result<u64> {
    integral_product(exps.iter().map(|&e| {
        let n = shift + e as i64;
        assert!(n > 0, "formula numerator must be positive");
        (n as u64, (e + 1) as u64)
    }))
}

/// Predicted antichain counts from the product formulas. For G2 the short
/// and strictly-s-positive products do not apply; those rows carry the
/// directly stated values 4 and 2 instead.
pub fn closed_form_counts(rs: &RootSystem) -> Result<CountTable> {
    let exps = rs.exponents();
    let h = rs.coxeter_number() as i64;
    let mut rows = Vec::new();

    rows.push((
        CountKind::All,
        Prediction::Value(product_over_exponents(exps, h + 1)?),
    ));
    rows.push((
        CountKind::StrictlyPositive,
        Prediction::Value(product_over_exponents(exps, h - 1)?),
    ));

    if rs.two_lengths() {
        let g = rs.short_coordinate_sum()? as i64;
        let is_g2 = rs.id().letter == crate::rootsys::TypeLetter::G;
        let n_short = rs.short_simple_indices().len();
        if is_g2 {
            rows.push((
                CountKind::Short,
                Prediction::NotApplicable { stated: Some(4) },
            ));
            rows.push((
                CountKind::StrictlySPositive,
                Prediction::NotApplicable { stated: Some(2) },
            ));
            rows.push((CountKind::Long, Prediction::NotApplicable { stated: None }));
        } else {
            rows.push((
                CountKind::Short,
                Prediction::Value(product_over_exponents(exps, g + 1)?),
            ));
            rows.push((
                CountKind::StrictlySPositive,
                Prediction::Value(product_over_exponents(exps, g - 1)?),
            ));
            rows.push((
                CountKind::Long,
                Prediction::Value(product_over_exponents(exps, h - g + 1)?),
            ));
        }
        // These two run over the first n exponents (ascending) and hold for
        // every two-length system, G2 included.
        rows.push((
            CountKind::ShortUnified,
            Prediction::Value(product_over_exponents(&exps[..n_short], h + 1)?),
        ));
        rows.push((
            CountKind::ShortAvoidingShortSimples,
            Prediction::Value(product_over_exponents(&exps[..n_short], h - 1)?),
        ));
    }
    Ok(CountTable { rows })
}

// ---------------------------------------------------------------------------
// Decomposition numbers and ideal powers
// ---------------------------------------------------------------------------

/// Minimal number of summands expressing `mu` as a sum of positive roots
/// outside the (strictly positive) ideal.
pub fn decomposition_number(rs: &RootSystem, mu: usize, ideal: &Ideal) -> Result<usize> {
    if let Some(i) = (0..rs.rank()).find(|&i| ideal.contains(rs.simple_index(i))) {
        return Err(Error::NotStrictlyPositive {
            op: "decomposition_number",
            simple: rs.root_coeffs(rs.simple_index(i)).to_vec(),
        });
    }
    let n = rs.num_positive_roots();
    // Process by increasing height; every non-simple positive root drops to a
    // positive root by subtracting some simple root.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| rs.root_coeffs(i).iter().sum::<i64>());
    let mut k = vec![usize::MAX; n];
    for &idx in &order {
        if !ideal.contains(idx) {
            k[idx] = 1;
            continue;
        }
        let coeffs = rs.root_coeffs(idx);
        let mut best = usize::MAX;
        for nu in 0..n {
            if ideal.contains(nu) {
                continue;
            }
            let diff: Vec<i64> = coeffs
                .iter()
                .zip(rs.root_coeffs(nu))
                .map(|(a, b)| a - b)
                .collect();
            if let Some(rest) = rs.index_of(&diff) {
                if k[rest] != usize::MAX {
                    best = best.min(1 + k[rest]);
                }
            }
        }
        if best == usize::MAX {
            return Err(Error::internal(format!(
                "no decomposition found for {coeffs:?}"
            )));
        }
        k[idx] = best;
    }
    Ok(k[mu])
}

/// `power(I, k)`: the roots expressible as a sum of k members of the ideal,
/// defined inductively as ((k-1)-th power + I) intersected with the roots.
pub fn ideal_power(rs: &RootSystem, ideal: &Ideal, k: usize) -> Vec<usize> {
    assert!(k >= 1, "ideal power needs k >= 1");
    let mut cur: BTreeSet<usize> = ideal.members().iter().copied().collect();
    for _ in 1..k {
        let mut next = BTreeSet::new();
        for &a in &cur {
            for &b in ideal.members() {
                let sum: Vec<i64> = rs
                    .root_coeffs(a)
                    .iter()
                    .zip(rs.root_coeffs(b))
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(idx) = rs.index_of(&sum) {
                    next.insert(idx);
                }
            }
        }
        cur = next;
    }
    cur.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Weight sets, generating functions, case checks
// ---------------------------------------------------------------------------

/// Weights of the nilpotent Borel-stable subspace attached to a short
/// antichain: the short part of the generated ideal. Its minimal elements
/// recover the antichain; the subspace dimension is the set's size.
pub fn bstable_weight_set(rs: &RootSystem, gamma: &Antichain) -> Result<Vec<usize>> {
    if let Some(&bad) = gamma.members().iter().find(|&&i| !rs.is_short(i)) {
        return Err(Error::NotShort {
            root: rs.root_coeffs(bad).to_vec(),
        });
    }
    let closure = gamma.closure(rs);
    Ok(closure
        .members()
        .iter()
        .copied()
        .filter(|&i| rs.is_short(i))
        .collect())
}

pub fn bivariate_generating_function(rs: &RootSystem) -> Result<BivariatePolynomial> {
    if !rs.two_lengths() {
        return Err(Error::SimplyLaced {
            op: "bivariate_generating_function",
            system: rs.id().to_string(),
        });
    }
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for a in enumerate_antichains(rs, AntichainFilter::All)? {
        let short = a.members().iter().filter(|&&i| rs.is_short(i)).count();
        let long = a.len() - short;
        *counts.entry((short, long)).or_insert(0) += 1;
    }
    Ok(BivariatePolynomial::from_counts(counts))
}

/// The natural map from antichains to short antichains: minimal elements of
/// the short part of the generated ideal.
pub fn shorten_antichain(rs: &RootSystem, gamma: &Antichain) -> Antichain {
    let closure = gamma.closure(rs);
    let shorts: Vec<usize> = closure
        .members()
        .iter()
        .copied()
        .filter(|&i| rs.is_short(i))
        .collect();
    let members: Vec<usize> = shorts
        .iter()
        .copied()
        .filter(|&m| !shorts.iter().any(|&o| o != m && leq(rs, o, m)))
        .collect();
    Antichain { members }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CpRefinements {
    /// a_{k,0} = C(p,k) * C(p-1,k) for all k.
    pub short_counts_binomial: bool,
    /// a_{p-1-k,1} = a_{k,0} for all k.
    pub involution: bool,
    /// #ss-antichains = C(2p-2, p-1).
    pub ss_central_binomial: bool,
    /// number of k-element ss-antichains = C(p-1,k)^2.
    pub ss_k_refinement: bool,
    /// every antichain has at most one long member.
    pub at_most_one_long: bool,
    /// every fibre of the shortening map has exactly two elements.
    pub fibres_all_two: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ProductReport {
    pub system: String,
    pub antichains: u64,
    pub short_antichains: u64,
    pub long_span_antichains: u64,
    pub product_holds: bool,
    /// Histogram of fibre sizes of the shortening map.
    pub fibre_histogram: BTreeMap<usize, u64>,
    /// The extra identities that hold in type C.
    pub cp: Option<CpRefinements>,
}

/// Checks the product factorization of the antichain count through the
/// long-simple span, and the type-C refinements. Reports, never asserts.
pub fn product_factorization_report(rs: &RootSystem) -> Result<ProductReport> {
    let all = enumerate_antichains(rs, AntichainFilter::All)?;
    let shorts = enumerate_antichains(rs, AntichainFilter::Short)?;
    let long_span = enumerate_antichains_in_long_span(rs)?;
    let product_holds = all.len() as u64 == shorts.len() as u64 * long_span.len() as u64;

    let mut fibres: BTreeMap<Antichain, u64> = BTreeMap::new();
    for a in &all {
        *fibres.entry(shorten_antichain(rs, a)).or_insert(0) += 1;
    }
    let mut fibre_histogram: BTreeMap<usize, u64> = BTreeMap::new();
    for &count in fibres.values() {
        *fibre_histogram.entry(count as usize).or_insert(0) += 1;
    }

    let cp = if rs.id().letter == crate::rootsys::TypeLetter::C {
        let p = rs.rank() as u64;
        let gf = bivariate_generating_function(rs)?;
        let short_counts_binomial =
            (0..p).all(|k| gf.coefficient(k as usize, 0) == binomial(p, k) * binomial(p - 1, k));
        let involution = (0..p)
            .all(|k| gf.coefficient((p - 1 - k) as usize, 1) == gf.coefficient(k as usize, 0));
        let ss = enumerate_antichains(rs, AntichainFilter::ShortAvoidingShortSimples)?;
        let ss_central_binomial = ss.len() as u64 == binomial(2 * p - 2, p - 1);
        let ss_k_refinement = (0..p).all(|k| {
            let have = ss.iter().filter(|a| a.len() == k as usize).count() as u64;
            have == binomial(p - 1, k) * binomial(p - 1, k)
        });
        let at_most_one_long = all
            .iter()
            .all(|a| a.members().iter().filter(|&&i| !rs.is_short(i)).count() <= 1);
        let fibres_all_two = fibre_histogram.keys().all(|&k| k == 2);
        Some(CpRefinements {
            short_counts_binomial,
            involution,
            ss_central_binomial,
            ss_k_refinement,
            at_most_one_long,
            fibres_all_two,
        })
    } else {
        None
    };

    Ok(ProductReport {
        system: rs.id().to_string(),
        antichains: all.len() as u64,
        short_antichains: shorts.len() as u64,
        long_span_antichains: long_span.len() as u64,
        product_holds,
        fibre_histogram,
        cp,
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

    fn idx(rs: &RootSystem, coeffs: &[i64]) -> usize {
        rs.index_of(coeffs).unwrap()
    }

    /// Brute-force oracle: filter all subsets for pairwise incomparability.
    fn antichains_by_subsets(rs: &RootSystem, candidates: &[usize]) -> Vec<Vec<usize>> {
        let n = candidates.len();
        assert!(n <= 20, "oracle is exponential");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| candidates[i])
                .collect();
            let ok = subset
                .iter()
                .enumerate()
                .all(|(i, &a)| subset[i + 1..].iter().all(|&b| !comparable(rs, a, b)));
            if ok {
                out.push(subset);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn leq_examples() {
        let c2 = sys("C2");
        assert!(leq(&c2, idx(&c2, &[1, 0]), idx(&c2, &[1, 1])));
        assert!(!leq(&c2, idx(&c2, &[0, 1]), idx(&c2, &[1, 0])));
        let g2 = sys("G2");
        assert!(leq(&g2, idx(&g2, &[1, 1]), idx(&g2, &[3, 2])));
    }

    #[test]
    fn leq_rejects_bad_roots() {
        let c2 = sys("C2");
        let pos = c2.root_from_coeffs(&[1, 0]).unwrap();
        let neg = c2.root_from_coeffs(&[-1, 0]).unwrap();
        assert!(leq_roots(&c2, &pos, &c2.root_from_coeffs(&[1, 1]).unwrap()).unwrap());
        assert!(matches!(
            leq_roots(&c2, &neg, &pos),
            Err(Error::NotPositive { .. })
        ));
        let b2 = sys("B2");
        let other = b2.root_from_coeffs(&[1, 0]).unwrap();
        assert!(matches!(
            leq_roots(&c2, &other, &pos),
            Err(Error::MixedSystems { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let c2 = sys("C2");
        let gamma = Antichain::new(&c2, vec![idx(&c2, &[1, 0])]).unwrap();
        let ideal = gamma.closure(&c2);
        let coords: Vec<&[i64]> = ideal.members().iter().map(|&i| c2.root_coeffs(i)).collect();
        assert_eq!(coords, vec![&[1, 0][..], &[1, 1], &[2, 1]]);
        assert_eq!(ideal.generators(&c2), gamma);

        assert!(Antichain::empty().closure(&c2).is_empty());

        let g2 = sys("G2");
        let gamma = Antichain::new(&g2, vec![idx(&g2, &[2, 1])]).unwrap();
        let ideal = gamma.closure(&g2);
        let coords: Vec<&[i64]> = ideal.members().iter().map(|&i| g2.root_coeffs(i)).collect();
        assert_eq!(coords, vec![&[2, 1][..], &[3, 1], &[3, 2]]);
    }

    #[test]
    fn comparable_pair_rejected() {
        let c2 = sys("C2");
        let bad = Antichain::new(&c2, vec![idx(&c2, &[1, 0]), idx(&c2, &[1, 1])]);
        assert!(matches!(bad, Err(Error::NotAntichain { .. })));
    }

    #[test]
    fn ideal_validation() {
        let c2 = sys("C2");
        let ok = Ideal::new(&c2, vec![idx(&c2, &[2, 1])]).unwrap();
        assert_eq!(ok.len(), 1);
        let bad = Ideal::new(&c2, vec![idx(&c2, &[1, 0])]);
        assert!(matches!(bad, Err(Error::NotIdeal { .. })));
    }

    #[test]
    fn upward_closed_matches_root_addition() {
        // Upward closure in the coordinate order is the same as closure under
        // adding positive roots inside the root system.
        for label in ["C2", "B3", "G2"] {
            let rs = sys(label);
            for a in enumerate_antichains(&rs, AntichainFilter::All).unwrap() {
                let ideal = a.closure(&rs);
                for &g in ideal.members() {
                    for mu in rs.positive_roots() {
                        let sum: Vec<i64> = rs
                            .root_coeffs(g)
                            .iter()
                            .zip(mu)
                            .map(|(x, y)| x + y)
                            .collect();
                        if let Some(s) = rs.index_of(&sum) {
                            assert!(ideal.contains(s), "{label}: ideal not closed");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_matches_subset_oracle() {
        for label in ["A2", "C2", "B3", "G2"] {
            let rs = sys(label);
            let all: Vec<usize> = (0..rs.num_positive_roots()).collect();
            let expect = antichains_by_subsets(&rs, &all);
            let got: Vec<Vec<usize>> = enumerate_antichains(&rs, AntichainFilter::All)
                .unwrap()
                .into_iter()
                .map(|a| a.members().to_vec())
                .collect();
            assert_eq!(got, expect, "{label}");
        }
    }

    #[test]
    fn enumerate_counts() {
        let c2 = sys("C2");
        assert_eq!(
            enumerate_antichains(&c2, AntichainFilter::All)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_antichains(&c2, AntichainFilter::Short)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_antichains(&c2, AntichainFilter::Long)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_antichains(&c2, AntichainFilter::StrictlySPositive)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_antichains(&c2, AntichainFilter::ShortAvoidingShortSimples)
                .unwrap()
                .len(),
            2
        );

        let g2 = sys("G2");
        assert_eq!(
            enumerate_antichains(&g2, AntichainFilter::All)
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            enumerate_antichains(&g2, AntichainFilter::Short)
                .unwrap()
                .len(),
            4
        );
        let ssp = enumerate_antichains(&g2, AntichainFilter::StrictlySPositive).unwrap();
        assert_eq!(ssp.len(), 2);
        assert_eq!(ssp[1].coeff_vectors(&g2), vec![vec![2, 1]]);

        let f4 = sys("F4");
        assert_eq!(
            enumerate_antichains(&f4, AntichainFilter::All)
                .unwrap()
                .len(),
            105
        );
    }

    #[test]
    fn simply_laced_filters_rejected() {
        let a3 = sys("A3");
        assert!(enumerate_antichains(&a3, AntichainFilter::Short).is_err());
        assert!(enumerate_antichains(&a3, AntichainFilter::All).is_ok());
    }

    #[test]
    fn only_antichain_of_full_cardinality_is_the_simples() {
        for label in ["A3", "B3", "C3", "B4", "C4", "D4", "F4", "G2"] {
            let rs = sys(label);
            let full: Vec<Antichain> = enumerate_antichains(&rs, AntichainFilter::All)
                .unwrap()
                .into_iter()
                .filter(|a| a.len() == rs.rank())
                .collect();
            assert_eq!(full.len(), 1, "{label}");
            let mut simples: Vec<usize> = (0..rs.rank()).map(|i| rs.simple_index(i)).collect();
            simples.sort_unstable();
            assert_eq!(full[0].members(), &simples[..], "{label}");
        }
    }

    #[test]
    fn complement_maxima_injective_on_strictly_positive_ideals() {
        for label in ["C2", "B3", "C3", "G2"] {
            let rs = sys(label);
            let mut seen = BTreeSet::new();
            for a in enumerate_antichains(&rs, AntichainFilter::StrictlyPositive).unwrap() {
                let xi = a.closure(&rs).complement_maxima(&rs);
                assert!(seen.insert(xi), "{label}: complement maxima repeated");
            }
        }
    }

    #[test]
    fn covers_equals_complement_maxima_of_strictly_positive() {
        for label in ["C2", "B3", "C3", "G2", "A3"] {
            let rs = sys(label);
            let covers: BTreeSet<Antichain> =
                enumerate_antichains(&rs, AntichainFilter::CoversSimples)
                    .unwrap()
                    .into_iter()
                    .collect();
            let mut xi_sets: BTreeSet<Antichain> = BTreeSet::new();
            for a in enumerate_antichains(&rs, AntichainFilter::StrictlyPositive).unwrap() {
                xi_sets.insert(a.closure(&rs).complement_maxima(&rs));
            }
            assert_eq!(covers, xi_sets, "{label}");
        }
    }

    #[test]
    fn closed_form_counts_match_enumeration() {
        for label in ["B2", "B3", "C2", "C3", "C4", "F4"] {
            let rs = sys(label);
            let table = closed_form_counts(&rs).unwrap();
            let count = |f| enumerate_antichains(&rs, f).unwrap().len() as u64;
            let assert_row = |kind: CountKind, expect: u64| match table.get(kind).unwrap() {
                Prediction::Value(v) => assert_eq!(v, expect, "{label} {:?}", kind),
                other => panic!("{label} {kind:?} unexpectedly {other:?}"),
            };
            assert_row(CountKind::All, count(AntichainFilter::All));
            assert_row(
                CountKind::StrictlyPositive,
                count(AntichainFilter::StrictlyPositive),
            );
            assert_row(CountKind::Short, count(AntichainFilter::Short));
            assert_row(
                CountKind::StrictlySPositive,
                count(AntichainFilter::StrictlySPositive),
            );
            assert_row(CountKind::Long, count(AntichainFilter::Long));
            assert_row(
                CountKind::ShortAvoidingShortSimples,
                count(AntichainFilter::ShortAvoidingShortSimples),
            );
            assert_row(CountKind::ShortUnified, count(AntichainFilter::Short));
        }
    }

    #[test]
    fn g2_count_exceptions() {
        let g2 = sys("G2");
        let table = closed_form_counts(&g2).unwrap();
        assert_eq!(
            table.get(CountKind::Short).unwrap(),
            Prediction::NotApplicable { stated: Some(4) }
        );
        assert_eq!(
            table.get(CountKind::StrictlySPositive).unwrap(),
            Prediction::NotApplicable { stated: Some(2) }
        );
        // The unified product does cover G2: (h+e_1+1)/(e_1+1) = 8/2 = 4.
        assert_eq!(
            table.get(CountKind::ShortUnified).unwrap(),
            Prediction::Value(4)
        );
        assert_eq!(
            table.get(CountKind::ShortAvoidingShortSimples).unwrap(),
            Prediction::Value(3)
        );
        assert_eq!(table.get(CountKind::All).unwrap(), Prediction::Value(8));
        assert_eq!(
            table.get(CountKind::StrictlyPositive).unwrap(),
            Prediction::Value(5)
        );
    }

    /// Lattice-walk oracle for decomposition numbers: breadth-first search on
    /// coordinate vectors dominated by mu, independent of the root-chain DP.
    fn decomposition_number_oracle(rs: &RootSystem, mu: usize, ideal: &Ideal) -> usize {
        let target = rs.root_coeffs(mu).to_vec();
        let parts: Vec<Vec<i64>> = (0..rs.num_positive_roots())
            .filter(|i| !ideal.contains(*i))
            .map(|i| rs.root_coeffs(i).to_vec())
            .collect();
        let mut dist: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let zero = vec![0i64; rs.rank()];
        dist.insert(zero.clone(), 0);
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                let d = dist[&x];
                for part in &parts {
                    let y: Vec<i64> = x.iter().zip(part).map(|(a, b)| a + b).collect();
                    if y.iter().zip(&target).all(|(a, b)| a <= b) && !dist.contains_key(&y) {
                        dist.insert(y.clone(), d + 1);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist[&target]
    }

    #[test]
    fn decomposition_numbers() {
        let c2 = sys("C2");
        let ideal = Ideal::new(&c2, vec![idx(&c2, &[2, 1])]).unwrap();
        assert_eq!(
            decomposition_number(&c2, idx(&c2, &[1, 0]), &ideal).unwrap(),
            1
        );
        assert_eq!(
            decomposition_number(&c2, idx(&c2, &[2, 1]), &ideal).unwrap(),
            2
        );

        let g2 = sys("G2");
        let gamma = Antichain::new(&g2, vec![idx(&g2, &[2, 1])]).unwrap();
        let ideal = gamma.closure(&g2);
        assert_eq!(
            decomposition_number(&g2, idx(&g2, &[3, 2]), &ideal).unwrap(),
            3
        );

        // Cross-check against the lattice-walk oracle on every strictly
        // positive ideal of the rank-2 systems.
        for label in ["C2", "G2"] {
            let rs = sys(label);
            for a in enumerate_antichains(&rs, AntichainFilter::StrictlyPositive).unwrap() {
                let ideal = a.closure(&rs);
                for mu in 0..rs.num_positive_roots() {
                    assert_eq!(
                        decomposition_number(&rs, mu, &ideal).unwrap(),
                        decomposition_number_oracle(&rs, mu, &ideal),
                        "{label}: mu={:?} ideal={:?}",
                        rs.root_coeffs(mu),
                        a.coeff_vectors(&rs)
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_number_needs_strictly_positive() {
        let c2 = sys("C2");
        let gamma = Antichain::new(&c2, vec![idx(&c2, &[1, 0])]).unwrap();
        let ideal = gamma.closure(&c2);
        assert!(matches!(
            decomposition_number(&c2, idx(&c2, &[2, 1]), &ideal),
            Err(Error::NotStrictlyPositive { .. })
        ));
    }

    #[test]
    fn ideal_powers() {
        let c2 = sys("C2");
        let full = Ideal::full(&c2);
        let coords = |v: &[usize]| -> Vec<Vec<i64>> {
            v.iter().map(|&i| c2.root_coeffs(i).to_vec()).collect()
        };
        assert_eq!(ideal_power(&c2, &full, 1), full.members());
        assert_eq!(
            coords(&ideal_power(&c2, &full, 2)),
            vec![vec![1, 1], vec![2, 1]]
        );
        assert_eq!(coords(&ideal_power(&c2, &full, 3)), vec![vec![2, 1]]);
        assert!(ideal_power(&c2, &full, 4).is_empty());

        let theta_only = Ideal::new(&c2, vec![idx(&c2, &[2, 1])]).unwrap();
        assert!(ideal_power(&c2, &theta_only, 2).is_empty());
    }

    #[test]
    fn bstable_weights() {
        let c2 = sys("C2");
        let gamma = Antichain::new(&c2, vec![idx(&c2, &[1, 0])]).unwrap();
        let w = bstable_weight_set(&c2, &gamma).unwrap();
        let coords: Vec<&[i64]> = w.iter().map(|&i| c2.root_coeffs(i)).collect();
        assert_eq!(coords, vec![&[1, 0][..], &[1, 1]]);

        assert!(bstable_weight_set(&c2, &Antichain::empty())
            .unwrap()
            .is_empty());

        let g2 = sys("G2");
        let gamma = Antichain::new(&g2, vec![idx(&g2, &[1, 1])]).unwrap();
        let w = bstable_weight_set(&g2, &gamma).unwrap();
        let coords: Vec<&[i64]> = w.iter().map(|&i| g2.root_coeffs(i)).collect();
        assert_eq!(coords, vec![&[1, 1][..], &[2, 1]]);

        // minimal elements of the weight set recover the antichain
        for label in ["C2", "B3", "F4", "G2"] {
            let rs = sys(label);
            for gamma in enumerate_antichains(&rs, AntichainFilter::Short).unwrap() {
                let w = bstable_weight_set(&rs, &gamma).unwrap();
                let mins: Vec<usize> = w
                    .iter()
                    .copied()
                    .filter(|&m| !w.iter().any(|&o| o != m && leq(&rs, o, m)))
                    .collect();
                assert_eq!(mins, gamma.members(), "{label}");
            }
        }

        // long roots rejected
        let long = Antichain::new(&c2, vec![idx(&c2, &[0, 1])]).unwrap();
        assert!(matches!(
            bstable_weight_set(&c2, &long),
            Err(Error::NotShort { .. })
        ));
    }

    #[test]
    fn generating_functions() {
        let g2 = sys("G2");
        let f = bivariate_generating_function(&g2).unwrap();
        assert_eq!(f.to_string(), "1+3t+3u+tu");

        let c2 = sys("C2");
        let f = bivariate_generating_function(&c2).unwrap();
        assert_eq!(f.to_string(), "1+2t+2u+tu");
        assert_eq!(f.eval_ones(), 6);

        let f4 = sys("F4");
        let f = bivariate_generating_function(&f4).unwrap();
        assert_eq!(
            f.to_string(),
            "1+12t+12u+8t^2+39tu+8u^2+12t^2u+12tu^2+t^2u^2"
        );
        assert_eq!(f.eval_ones(), 105);
    }

    #[test]
    fn product_theorem() {
        let f4 = sys("F4");
        let rep = product_factorization_report(&f4).unwrap();
        assert_eq!(rep.antichains, 105);
        assert_eq!(rep.short_antichains, 21);
        assert_eq!(rep.long_span_antichains, 5);
        assert!(rep.product_holds);

        let c3 = sys("C3");
        let rep = product_factorization_report(&c3).unwrap();
        assert_eq!(
            (
                rep.antichains,
                rep.short_antichains,
                rep.long_span_antichains
            ),
            (20, 10, 2)
        );
        assert!(rep.product_holds);
        let cp = rep.cp.unwrap();
        assert!(cp.short_counts_binomial);
        assert!(cp.involution);
        assert!(cp.ss_central_binomial);
        assert!(cp.ss_k_refinement);
        assert!(cp.at_most_one_long);
        assert!(cp.fibres_all_two);

        let g2 = sys("G2");
        let rep = product_factorization_report(&g2).unwrap();
        assert_eq!(
            (
                rep.antichains,
                rep.short_antichains,
                rep.long_span_antichains
            ),
            (8, 4, 2)
        );
        assert!(rep.product_holds);
        // G2 fibres are not all the same size.
        assert!(rep.fibre_histogram.len() > 1);
    }

    #[test]
    fn c2_involution_identities() {
        let c2 = sys("C2");
        let f = bivariate_generating_function(&c2).unwrap();
        assert_eq!(f.coefficient(0, 1), f.coefficient(1, 0));
        assert_eq!(f.coefficient(1, 1), f.coefficient(0, 0));
    }

    #[test]
    fn generating_function_marginals() {
        // Summing out one variable recovers the filtered counts.
        for label in ["C2", "B3", "F4", "G2"] {
            let rs = sys(label);
            let f = bivariate_generating_function(&rs).unwrap();
            let all_short: u64 = (0..=rs.rank()).map(|k| f.coefficient(k, 0)).sum();
            assert_eq!(
                all_short,
                enumerate_antichains(&rs, AntichainFilter::Short)
                    .unwrap()
                    .len() as u64,
                "{label}"
            );
            let all_long: u64 = (0..=rs.rank()).map(|m| f.coefficient(0, m)).sum();
            assert_eq!(
                all_long,
                enumerate_antichains(&rs, AntichainFilter::Long)
                    .unwrap()
                    .len() as u64,
                "{label}"
            );
            assert_eq!(f.coefficient(0, 0), 1, "{label}");
        }
    }

    #[test]
    fn c6_antichains_have_at_most_one_long_root() {
        let c6 = sys("C6");
        for a in enumerate_antichains(&c6, AntichainFilter::All).unwrap() {
            assert!(a.members().iter().filter(|&&i| !c6.is_short(i)).count() <= 1);
        }
    }

    #[test]
    fn rank_eight_enumeration_scales() {
        // The enumerator has to cope with the largest B/C systems.
        let c8 = sys("C8");
        let all = enumerate_antichains(&c8, AntichainFilter::All).unwrap();
        assert_eq!(all.len(), 12870); // central binomial C(16,8)
        let b8 = sys("B8");
        assert_eq!(
            enumerate_antichains(&b8, AntichainFilter::All)
                .unwrap()
                .len(),
            12870
        );
        match closed_form_counts(&c8)
            .unwrap()
            .get(CountKind::All)
            .unwrap()
        {
            Prediction::Value(v) => assert_eq!(v, 12870),
            other => panic!("unexpected {other:?}"),
        }
    }
}
