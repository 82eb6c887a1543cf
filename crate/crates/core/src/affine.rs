//! Affine Weyl group elements, inversion sets, and the four classes of
//! dominant elements attached to ideals and short antichains.
//!
//! An element is stored in its unique form `w = v·t_r` with `v` a finite Weyl
//! element (exact integer action on root coordinates) and `r` an integer
//! vector over the simple coroots. The linear action on affine roots is
//! `w(mu + k·delta) = v(mu) + (k - (mu, r))·delta`, and the affine action on
//! points is `w*x = v(x) + v(r)`; everything below is computed from these
//! closed forms, never by unwinding words.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::posets::{self, Antichain, Ideal};
use crate::rootsys::RootSystem;

// ---------------------------------------------------------------------------
// Finite Weyl elements
// ---------------------------------------------------------------------------

/// A finite Weyl group element, stored as the integer matrices of its action
/// (and its inverse's action) on simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    mat: Vec<Vec<i64>>,
    inv: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> WeylElement {
        let id = linalg::identity_i64(rs.rank());
        WeylElement {
            mat: id.clone(),
            inv: id,
        }
    }

    /// The simple reflection through `alpha_i`.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> WeylElement {
        let p = rs.rank();
        // s_i(alpha_j) = alpha_j - <alpha_j, alpha_i^vee> alpha_i
        let mut mat = linalg::identity_i64(p);
        for j in 0..p {
            mat[i][j] -= rs.cartan()[j][i];
        }
        WeylElement {
            inv: mat.clone(),
            mat,
        }
    }

    /// The reflection through an arbitrary root.
    pub fn reflection(rs: &RootSystem, coeffs: &[i64]) -> Result<WeylElement> {
        if !rs.is_root(coeffs) {
            return Err(Error::NotARoot {
                coeffs: coeffs.to_vec(),
            });
        }
        let p = rs.rank();
        let mu_len2 = rs.root_len2(coeffs);
        let mut mat = linalg::identity_i64(p);
        for j in 0..p {
            // <alpha_j, mu^vee> = 2(alpha_j, mu)/(mu, mu)
            let mut v = vec![0i64; p];
            v[j] = 1;
            let aj: Vec<Rat> = (0..p).map(|k| linalg::rat_int(v[k])).collect();
            let mu: Vec<Rat> = coeffs.iter().map(|&c| linalg::rat_int(c)).collect();
            let pairing = linalg::rat_int(2) * rs.inner_coeffs(&aj, &mu) / mu_len2;
            assert!(pairing.is_integer(), "root pairings are integral");
            let pairing = pairing.to_integer();
            for k in 0..p {
                mat[k][j] -= pairing * coeffs[k];
            }
        }
        Ok(WeylElement {
            inv: mat.clone(),
            mat,
        })
    }

    /// Composition: `(self ∘ other)` applies `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            mat: linalg::mat_mul_i64(&self.mat, &other.mat),
            inv: linalg::mat_mul_i64(&other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == linalg::identity_i64(self.mat.len())
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mat
    }

    pub fn apply_root(&self, coeffs: &[i64]) -> Vec<i64> {
        linalg::mat_vec_i64(&self.mat, coeffs)
    }

    pub fn apply_inv_root(&self, coeffs: &[i64]) -> Vec<i64> {
        linalg::mat_vec_i64(&self.inv, coeffs)
    }

    /// Action on a vector in coroot coordinates: `v(alpha_j^vee) = v(alpha_j)^vee`.
    pub fn apply_coroot(&self, rs: &RootSystem, r: &[i64]) -> Vec<i64> {
        let p = r.len();
        let mut out = vec![0i64; p];
        for (j, &rj) in r.iter().enumerate() {
            if rj == 0 {
                continue;
            }
            let mut col = vec![0i64; p];
            col[j] = 1;
            let image = self.apply_root(&col);
            let image_coroot = rs.coroot_coords(&image);
            for (o, c) in out.iter_mut().zip(&image_coroot) {
                *o += rj * c;
            }
        }
        out
    }

    /// Same action on a rational point in coroot coordinates.
    pub fn apply_coroot_rat(&self, rs: &RootSystem, point: &[Rat]) -> Vec<Rat> {
        let p = point.len();
        let mut out = vec![Rat::default(); p];
        for (j, &yj) in point.iter().enumerate() {
            let mut col = vec![0i64; p];
            col[j] = 1;
            let image_coroot = rs.coroot_coords(&self.apply_root(&col));
            for (o, &c) in out.iter_mut().zip(&image_coroot) {
                *o += yj * linalg::rat_int(c);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Affine roots
// ---------------------------------------------------------------------------

/// A real affine root `mu + k·delta`, with `mu` a nonzero finite root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRoot {
    pub level: i64,
    pub finite: Vec<i64>,
}

impl AffineRoot {
    pub fn new(rs: &RootSystem, finite: Vec<i64>, level: i64) -> Result<AffineRoot> {
        if !rs.is_root(&finite) {
            return Err(Error::NotARoot { coeffs: finite });
        }
        Ok(AffineRoot { level, finite })
    }

    /// Positive iff the level is at least 1, or the level is 0 and the
    /// finite part is positive.
    pub fn is_positive(&self) -> bool {
        self.level >= 1 || (self.level == 0 && self.finite.iter().all(|&c| c >= 0))
    }

    /// The affine simple root `alpha_0 = delta - theta`.
    pub fn affine_simple(rs: &RootSystem) -> AffineRoot {
        AffineRoot {
            level: 1,
            finite: rs.highest_root_coords().iter().map(|&c| -c).collect(),
        }
    }

    pub fn finite_simple(rs: &RootSystem, i: usize) -> AffineRoot {
        let mut v = vec![0i64; rs.rank()];
        v[i] = 1;
        AffineRoot {
            level: 0,
            finite: v,
        }
    }

    /// Index into the affine simple system, if this is one of
    /// `alpha_0, ..., alpha_p`.
    pub fn simple_index(&self, rs: &RootSystem) -> Option<usize> {
        if *self == AffineRoot::affine_simple(rs) {
            return Some(0);
        }
        if self.level == 0 {
            let ones: Vec<usize> = self
                .finite
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i)
                .collect();
            if ones.len() == 1 && self.finite[ones[0]] == 1 {
                return Some(ones[0] + 1);
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Affine Weyl group elements
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    v: WeylElement,
    /// Translation part in coroot coordinates.
    r: Vec<i64>,
}

/// Membership flags for the dominant element classes. The short-sensitive
/// flags are `None` for simply laced systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub dominant: bool,
    pub minimal: bool,
    pub maximal: bool,
    pub s_minimal: Option<bool>,
    pub s_maximal: Option<bool>,
}

impl AffineWeylElement {
    pub fn identity(rs: &RootSystem) -> AffineWeylElement {
        AffineWeylElement {
            v: WeylElement::identity(rs),
            r: vec![0; rs.rank()],
        }
    }

    /// The affine simple reflection `s_i`, `0 <= i <= p`; `s_0` is the
    /// reflection through the highest root composed with the translation by
    /// its negative coroot.
    pub fn simple(rs: &RootSystem, i: usize) -> AffineWeylElement {
        if i == 0 {
            let theta = rs.highest_root_coords().to_vec();
            let v = WeylElement::reflection(rs, &theta).expect("theta is a root");
            let r: Vec<i64> = rs.coroot_coords(&theta).iter().map(|&c| -c).collect();
            AffineWeylElement { v, r }
        } else {
            AffineWeylElement {
                v: WeylElement::simple_reflection(rs, i - 1),
                r: vec![0; rs.rank()],
            }
        }
    }

    pub fn from_parts(v: WeylElement, r: Vec<i64>) -> AffineWeylElement {
        AffineWeylElement { v, r }
    }

    pub fn finite_part(&self) -> &WeylElement {
        &self.v
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.r
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_identity() && self.r.iter().all(|&c| c == 0)
    }

    /// `(self ∘ other)`: apply `other` first.
    pub fn compose(&self, rs: &RootSystem, other: &AffineWeylElement) -> AffineWeylElement {
        // v1 t_{r1} v2 t_{r2} = (v1 v2) t_{v2^{-1}(r1) + r2}
        let v = self.v.compose(&other.v);
        let mut r = other.v.inverse().apply_coroot(rs, &self.r);
        for (a, b) in r.iter_mut().zip(&other.r) {
            *a += b;
        }
        AffineWeylElement { v, r }
    }

    pub fn inverse(&self, rs: &RootSystem) -> AffineWeylElement {
        // (v t_r)^{-1} = v^{-1} t_{-v(r)}
        let vr = self.v.apply_coroot(rs, &self.r);
        AffineWeylElement {
            v: self.v.inverse(),
            r: vr.into_iter().map(|c| -c).collect(),
        }
    }

    /// Linear action on an affine root.
    pub fn apply(&self, rs: &RootSystem, root: &AffineRoot) -> AffineRoot {
        let pairing = rs.pairing_with_coroot(&root.finite, &self.r);
        AffineRoot {
            finite: self.v.apply_root(&root.finite),
            level: root.level - pairing,
        }
    }

    /// Affine action on a rational point in coroot coordinates:
    /// `w * x = v(x) + v(r)`.
    pub fn act_point(&self, rs: &RootSystem, point: &[Rat]) -> Vec<Rat> {
        let mut out = self.v.apply_coroot_rat(rs, point);
        let vr = self.v.apply_coroot(rs, &self.r);
        for (o, &c) in out.iter_mut().zip(&vr) {
            *o += linalg::rat_int(c);
        }
        out
    }

    /// `w^{-1} * x = v^{-1}(x) - r`.
    pub fn act_point_inverse(&self, rs: &RootSystem, point: &[Rat]) -> Vec<Rat> {
        let mut out = self.v.inverse().apply_coroot_rat(rs, point);
        for (o, &c) in out.iter_mut().zip(&self.r) {
            *o -= linalg::rat_int(c);
        }
        out
    }

    /// The image `v(r)` classifying the element among the dominant ones.
    pub fn v_of_r(&self, rs: &RootSystem) -> Vec<i64> {
        self.v.apply_coroot(rs, &self.r)
    }

    /// Inversion set `N(w)`: the positive affine roots sent negative,
    /// computed from the closed-form action. `mu + k·delta` is inverted iff
    /// `k < (mu, r)`, or `k = (mu, r)` and `v(mu) < 0`.
    pub fn inversion_set(&self, rs: &RootSystem) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        let mut push_for = |finite: &[i64]| {
            let positive = finite.iter().all(|&c| c >= 0);
            let k_min = if positive { 0 } else { 1 };
            let c = rs.pairing_with_coroot(finite, &self.r);
            for k in k_min..c {
                out.push(AffineRoot {
                    level: k,
                    finite: finite.to_vec(),
                });
            }
            if c >= k_min {
                let image = self.v.apply_root(finite);
                if image.iter().all(|&x| x <= 0) {
                    out.push(AffineRoot {
                        level: c,
                        finite: finite.to_vec(),
                    });
                }
            }
        };
        for mu in rs.positive_roots() {
            push_for(mu);
            let neg: Vec<i64> = mu.iter().map(|&c| -c).collect();
            push_for(&neg);
        }
        out.sort();
        out
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.inversion_set(rs).len()
    }

    /// Dominant: every finite simple root stays positive.
    pub fn is_dominant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| {
            let alpha = AffineRoot::finite_simple(rs, i);
            self.apply(rs, &alpha).is_positive()
        })
    }

    /// Levels of `w^{-1}(alpha)` for the affine simple roots
    /// `alpha_0, ..., alpha_p`, from which all class flags read off.
    fn inverse_simple_levels(&self, rs: &RootSystem) -> Vec<i64> {
        let vr = self.v_of_r(rs);
        let mut ks = Vec::with_capacity(rs.rank() + 1);
        let theta = rs.highest_root_coords();
        ks.push(1 - rs.pairing_with_coroot(theta, &vr));
        for i in 0..rs.rank() {
            let mut alpha = vec![0i64; rs.rank()];
            alpha[i] = 1;
            ks.push(rs.pairing_with_coroot(&alpha, &vr));
        }
        ks
    }

    pub fn classify(&self, rs: &RootSystem) -> ClassFlags {
        let dominant = self.is_dominant(rs);
        let ks = self.inverse_simple_levels(rs);
        let k0 = ks[0];
        let minimal = dominant && k0 >= -1 && (1..ks.len()).all(|i| ks[i] >= -1);
        let maximal = dominant && k0 <= 1 && (1..ks.len()).all(|i| ks[i] <= 1);
        let (s_minimal, s_maximal) = if rs.two_lengths() {
            let short = rs.short_simple_indices();
            let smin = dominant
                && k0 >= 0
                && (0..rs.rank()).all(|i| {
                    let bound = if short.contains(&i) { -1 } else { 0 };
                    ks[i + 1] >= bound
                });
            let smax = dominant
                && k0 <= 0
                && (0..rs.rank()).all(|i| {
                    let bound = if short.contains(&i) { 1 } else { 0 };
                    ks[i + 1] <= bound
                });
            (Some(smin), Some(smax))
        } else {
            (None, None)
        };
        ClassFlags {
            dominant,
            minimal,
            maximal,
            s_minimal,
            s_maximal,
        }
    }

    /// First layer ideal of a dominant element: the positive roots `mu` with
    /// `delta - mu` inverted.
    pub fn first_layer_ideal(&self, rs: &RootSystem) -> Result<Ideal> {
        if !self.is_dominant(rs) {
            return Err(Error::WrongClass {
                required: "dominant",
            });
        }
        let members: Vec<usize> = (0..rs.num_positive_roots())
            .filter(|&i| {
                let neg: Vec<i64> = rs.root_coeffs(i).iter().map(|&c| -c).collect();
                !self
                    .apply(
                        rs,
                        &AffineRoot {
                            level: 1,
                            finite: neg,
                        },
                    )
                    .is_positive()
            })
            .collect();
        Ideal::new(rs, members)
    }

    /// Reduced word over `s_0..s_p`, recovered by peeling the inversion set;
    /// the element is the product of the letters read left to right.
    pub fn reduced_word(&self, rs: &RootSystem) -> Result<Vec<usize>> {
        let (_, mut word) = peel(rs, self.inversion_set(rs))?;
        word.reverse();
        Ok(word)
    }

    pub fn to_json(&self, rs: &RootSystem) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "word": self.reduced_word(rs)?,
            "v_matrix": self.v.matrix(),
            "r": self.r,
        }))
    }
}

// ---------------------------------------------------------------------------
// Bi-convexity and the peel algorithm
// ---------------------------------------------------------------------------

fn root_sum(a: &AffineRoot, b: &AffineRoot) -> (Vec<i64>, i64) {
    (
        a.finite.iter().zip(&b.finite).map(|(x, y)| x + y).collect(),
        a.level + b.level,
    )
}

/// Is the finite set of positive affine roots bi-convex: closed under
/// addition, with every decomposition of a member into two positive affine
/// roots meeting the set?
pub fn is_biconvex(rs: &RootSystem, set: &[AffineRoot]) -> bool {
    let members: BTreeSet<&AffineRoot> = set.iter().collect();
    if set.iter().any(|a| !a.is_positive()) {
        return false;
    }
    // (a) closure under addition
    for a in set {
        for b in set {
            let (finite, level) = root_sum(a, b);
            if rs.is_root(&finite) {
                let sum = AffineRoot { level, finite };
                if !members.contains(&sum) {
                    return false;
                }
            }
        }
    }
    // (b) complement closure: each member's decompositions hit the set
    let mut all_finite: Vec<Vec<i64>> = rs.positive_roots().to_vec();
    all_finite.extend(
        rs.positive_roots()
            .iter()
            .map(|r| r.iter().map(|&c| -c).collect::<Vec<i64>>()),
    );
    for gamma in set {
        for nu in &all_finite {
            let rest: Vec<i64> = gamma.finite.iter().zip(nu).map(|(g, n)| g - n).collect();
            if !rs.is_root(&rest) {
                continue;
            }
            for j in 0..=gamma.level {
                let a = AffineRoot {
                    level: j,
                    finite: nu.clone(),
                };
                let b = AffineRoot {
                    level: gamma.level - j,
                    finite: rest.clone(),
                };
                if a.is_positive()
                    && b.is_positive()
                    && !members.contains(&a)
                    && !members.contains(&b)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Peel a finite bi-convex set down to the identity: repeatedly remove a
/// simple affine root and reflect the rest. Returns the letters in peel
/// order (first letter = rightmost factor) together with the element.
fn peel(rs: &RootSystem, set: Vec<AffineRoot>) -> Result<(AffineWeylElement, Vec<usize>)> {
    let mut remaining: BTreeSet<AffineRoot> = set.into_iter().collect();
    let mut letters = Vec::new();
    let simples: Vec<AffineRoot> = std::iter::once(AffineRoot::affine_simple(rs))
        .chain((0..rs.rank()).map(|i| AffineRoot::finite_simple(rs, i)))
        .collect();
    while !remaining.is_empty() {
        let Some(i) = (0..=rs.rank()).find(|&i| remaining.contains(&simples[i])) else {
            return Err(Error::NotBiconvex {
                detail: "nonempty set without a simple affine root".to_string(),
            });
        };
        let s = AffineWeylElement::simple(rs, i);
        remaining.remove(&simples[i]);
        let mut next = BTreeSet::new();
        for root in remaining {
            let image = s.apply(rs, &root);
            if !image.is_positive() {
                return Err(Error::NotBiconvex {
                    detail: format!("reflection of {root:?} left the positive roots"),
                });
            }
            next.insert(image);
        }
        remaining = next;
        letters.push(i);
    }
    let mut w = AffineWeylElement::identity(rs);
    for &l in &letters {
        w = AffineWeylElement::simple(rs, l).compose(rs, &w);
    }
    Ok((w, letters))
}

/// The unique element whose inversion set is the given finite bi-convex set.
pub fn element_from_biconvex(rs: &RootSystem, set: Vec<AffineRoot>) -> Result<AffineWeylElement> {
    let (w, _) = peel(rs, set)?;
    Ok(w)
}

// ---------------------------------------------------------------------------
// Elements attached to ideals and antichains
// ---------------------------------------------------------------------------

/// The minimal dominant element whose first layer is the given ideal: its
/// inversion set stacks the ideal powers layer by layer.
pub fn minimal_from_ideal(rs: &RootSystem, ideal: &Ideal) -> Result<AffineWeylElement> {
    let mut set = Vec::new();
    let mut k = 1usize;
    loop {
        let layer = posets::ideal_power(rs, ideal, k);
        if layer.is_empty() {
            break;
        }
        for idx in layer {
            set.push(AffineRoot {
                level: k as i64,
                finite: rs.root_coeffs(idx).iter().map(|&c| -c).collect(),
            });
        }
        k += 1;
    }
    let w = element_from_biconvex(rs, set)?;
    debug_assert_eq!(&w.first_layer_ideal(rs).unwrap(), ideal);
    Ok(w)
}

/// The maximal dominant element of a strictly positive ideal: its inversion
/// set keeps `m·delta - gamma` for `1 <= m < k(gamma, I)`.
pub fn maximal_from_ideal(rs: &RootSystem, ideal: &Ideal) -> Result<AffineWeylElement> {
    if let Some(i) = (0..rs.rank()).find(|&i| ideal.contains(rs.simple_index(i))) {
        return Err(Error::NotStrictlyPositive {
            op: "maximal_from_ideal",
            simple: rs.root_coeffs(rs.simple_index(i)).to_vec(),
        });
    }
    let mut set = Vec::new();
    for &gamma in ideal.members() {
        let k = posets::decomposition_number(rs, gamma, ideal)?;
        for m in 1..k {
            set.push(AffineRoot {
                level: m as i64,
                finite: rs.root_coeffs(gamma).iter().map(|&c| -c).collect(),
            });
        }
    }
    let w = element_from_biconvex(rs, set)?;
    debug_assert_eq!(&w.first_layer_ideal(rs).unwrap(), ideal);
    Ok(w)
}

/// Generators of the first layer ideal read off the action: the positive
/// roots whose shifted negative lands on a negative affine simple root.
pub fn generators_via_action(rs: &RootSystem, w: &AffineWeylElement) -> Vec<usize> {
    (0..rs.num_positive_roots())
        .filter(|&i| {
            let neg: Vec<i64> = rs.root_coeffs(i).iter().map(|&c| -c).collect();
            let image = w.apply(
                rs,
                &AffineRoot {
                    level: 1,
                    finite: neg,
                },
            );
            let flipped = AffineRoot {
                level: -image.level,
                finite: image.finite.iter().map(|&c| -c).collect(),
            };
            flipped.simple_index(rs).is_some()
        })
        .collect()
}

/// Complement maxima read off the action: the positive roots whose shifted
/// negative lands on an affine simple root.
pub fn complement_maxima_via_action(rs: &RootSystem, w: &AffineWeylElement) -> Vec<usize> {
    (0..rs.num_positive_roots())
        .filter(|&i| {
            let neg: Vec<i64> = rs.root_coeffs(i).iter().map(|&c| -c).collect();
            w.apply(
                rs,
                &AffineRoot {
                    level: 1,
                    finite: neg,
                },
            )
            .simple_index(rs)
            .is_some()
        })
        .collect()
}

/// Short antichain attached to an s-maximal element: the minimal elements of
/// the short part of its first layer ideal.
pub fn s_maximal_antichain(rs: &RootSystem, w: &AffineWeylElement) -> Result<Antichain> {
    if w.classify(rs).s_maximal != Some(true) {
        return Err(Error::WrongClass {
            required: "s-maximal",
        });
    }
    let ideal = w.first_layer_ideal(rs)?;
    let shorts: Vec<usize> = ideal
        .members()
        .iter()
        .copied()
        .filter(|&i| rs.is_short(i))
        .collect();
    let members: Vec<usize> = shorts
        .iter()
        .copied()
        .filter(|&m| !shorts.iter().any(|&o| o != m && posets::leq(rs, o, m)))
        .collect();
    Antichain::new(rs, members)
}

/// Inverse construction: the s-maximal element attached to a strictly
/// s-positive antichain. The complement maxima are the maximal short roots
/// outside the generated ideal; they cover the simple roots and so determine
/// a strictly positive ideal, whose maximal element is the answer.
pub fn s_maximal_from_antichain(rs: &RootSystem, gamma: &Antichain) -> Result<AffineWeylElement> {
    if !gamma.is_strictly_s_positive(rs)? {
        let bad = gamma
            .members()
            .iter()
            .copied()
            .find(|&i| !rs.is_short(i) || rs.short_subsystem_simple_indices().unwrap().contains(&i))
            .unwrap_or(0);
        return Err(Error::NotStrictlySPositive {
            root: rs.root_coeffs(bad).to_vec(),
        });
    }
    let closure = gamma.closure(rs);
    let outside_shorts: Vec<usize> = rs
        .short_positive_indices()
        .into_iter()
        .filter(|&i| !closure.contains(i))
        .collect();
    let xi: Vec<usize> = outside_shorts
        .iter()
        .copied()
        .filter(|&m| {
            !outside_shorts
                .iter()
                .any(|&o| o != m && posets::leq(rs, m, o))
        })
        .collect();
    let xi = Antichain::new(rs, xi)?;
    if !xi.covers_simples(rs) {
        return Err(Error::internal(
            "maximal short roots outside the ideal fail to cover the simples",
        ));
    }
    // The strictly positive ideal with these complement maxima.
    let down: BTreeSet<usize> = (0..rs.num_positive_roots())
        .filter(|&i| xi.members().iter().any(|&x| posets::leq(rs, i, x)))
        .collect();
    let members: Vec<usize> = (0..rs.num_positive_roots())
        .filter(|i| !down.contains(i))
        .collect();
    let ideal = Ideal::new(rs, members)?;
    debug_assert_eq!(ideal.complement_maxima(rs), xi);
    let w = maximal_from_ideal(rs, &ideal)?;
    if w.classify(rs).s_maximal != Some(true) {
        return Err(Error::internal("constructed element is not s-maximal"));
    }
    Ok(w)
}

/// BFS over the affine Weyl group by word length; `levels[k]` holds the
/// elements of length `k` in deterministic order.
pub fn bfs_elements(rs: &RootSystem, max_len: usize) -> Vec<Vec<AffineWeylElement>> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct Key(Vec<i64>, Vec<i64>);
    let key = |w: &AffineWeylElement| {
        Key(
            w.v.matrix().iter().flatten().copied().collect(),
            w.r.clone(),
        )
    };
    let gens: Vec<AffineWeylElement> = (0..=rs.rank())
        .map(|i| AffineWeylElement::simple(rs, i))
        .collect();
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let id = AffineWeylElement::identity(rs);
    seen.insert(key(&id));
    let mut levels = vec![vec![id]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in levels.last().unwrap() {
            for s in &gens {
                let ws = w.compose(rs, s);
                if seen.insert(key(&ws)) {
                    next.push(ws);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

// ---------------------------------------------------------------------------
// Correspondence with lattice points
// ---------------------------------------------------------------------------

/// Reconstruct the dominant element with `v(r)` equal to the given coroot
/// lattice point: `v` is the finite element carrying the shifted alcove back
/// to the dominant chamber (found by dominance-sorting its barycenter),
/// and `r = v^{-1}(point)`.
pub fn dominant_from_v_of_r(rs: &RootSystem, point: &[i64]) -> Result<AffineWeylElement> {
    let barycenter = rs.alcove_geometry().barycenter;
    let mut z: Vec<Rat> = barycenter
        .iter()
        .zip(point)
        .map(|(b, &k)| b - linalg::rat_int(k))
        .collect();
    let mut u = WeylElement::identity(rs);
    loop {
        let pairings = rs.point_pairings(&z);
        let Some(i) = pairings.iter().position(|x| x < &Rat::default()) else {
            break;
        };
        let s = WeylElement::simple_reflection(rs, i);
        z = s.apply_coroot_rat(rs, &z);
        u = s.compose(&u);
    }
    // Interior points never sit on a wall, so the sort is strict.
    if rs.point_pairings(&z).iter().any(|x| x == &Rat::default()) {
        return Err(Error::internal("alcove barycenter landed on a wall"));
    }
    let v = u.inverse();
    let r = u.apply_coroot(rs, point);
    let w = AffineWeylElement::from_parts(v, r);
    debug_assert!(w.is_dominant(rs));
    debug_assert_eq!(w.v_of_r(rs), point);
    Ok(w)
}

/// Inverse of the `v(r)` correspondence restricted to a simplex: from a
/// coroot-lattice point of the simplex, rebuild the element of the matching
/// class. Rejects points outside; the class flag is a theorem and failing it
/// is an internal error.
pub fn element_from_simplex_point(
    rs: &RootSystem,
    point: &[i64],
    kind: crate::halfspace::SimplexKind,
) -> Result<AffineWeylElement> {
    let s = crate::halfspace::simplex(rs, kind)?;
    let coords: Vec<Rat> = point.iter().map(|&c| linalg::rat_int(c)).collect();
    if !s.contains(rs, &coords) {
        return Err(Error::OutsidePoint {
            name: s.name.clone(),
        });
    }
    let w = dominant_from_v_of_r(rs, point)?;
    let flags = w.classify(rs);
    let ok = match kind {
        crate::halfspace::SimplexKind::Minimal => flags.minimal,
        crate::halfspace::SimplexKind::Maximal => flags.maximal,
        crate::halfspace::SimplexKind::ShortMinimal => flags.s_minimal == Some(true),
        crate::halfspace::SimplexKind::ShortMaximal => flags.s_maximal == Some(true),
    };
    if !ok {
        return Err(Error::internal(format!(
            "element built from a `{}` point does not have the class flag",
            s.name
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::AntichainFilter;
    use crate::rootsys::{build_root_system, SystemId};

    fn sys(label: &str) -> RootSystem {
        let id = SystemId::parse(label).unwrap();
        build_root_system(id.letter, id.rank).unwrap()
    }

    fn idx(rs: &RootSystem, coeffs: &[i64]) -> usize {
        rs.index_of(coeffs).unwrap()
    }

    /// Word-based oracle for inversion sets:
    /// N(s_{i1}...s_{ik}) = { s_{ik}...s_{ij+1}(alpha_{ij}) }.
    fn inversion_set_from_word(rs: &RootSystem, word: &[usize]) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for (j, &letter) in word.iter().enumerate() {
            let alpha = if letter == 0 {
                AffineRoot::affine_simple(rs)
            } else {
                AffineRoot::finite_simple(rs, letter - 1)
            };
            let mut root = alpha;
            for &l in word[j + 1..].iter() {
                root = AffineWeylElement::simple(rs, l).apply(rs, &root);
            }
            out.push(root);
        }
        out.sort();
        out
    }

    fn from_word(rs: &RootSystem, word: &[usize]) -> AffineWeylElement {
        let mut w = AffineWeylElement::identity(rs);
        for &l in word {
            w = w.compose(rs, &AffineWeylElement::simple(rs, l));
        }
        w
    }

    #[test]
    fn identity_has_empty_inversion_set() {
        let rs = sys("C2");
        let id = AffineWeylElement::identity(&rs);
        assert!(id.inversion_set(&rs).is_empty());
        assert!(is_biconvex(&rs, &[]));
    }

    #[test]
    fn s0_inversion_set() {
        let rs = sys("C2");
        let s0 = AffineWeylElement::simple(&rs, 0);
        let n = s0.inversion_set(&rs);
        assert_eq!(n, vec![AffineRoot::affine_simple(&rs)]);
        assert_eq!(s0.length(&rs), 1);
    }

    #[test]
    fn inversion_sets_match_word_oracle() {
        for label in ["C2", "G2"] {
            let rs = sys(label);
            // all words of length <= 5 over the affine generators
            let gens: Vec<usize> = (0..=rs.rank()).collect();
            let mut words: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..5 {
                let mut next = Vec::new();
                for w in &words {
                    for &g in &gens {
                        let mut w2 = w.clone();
                        w2.push(g);
                        next.push(w2);
                    }
                }
                words.extend(next.clone());
                words.retain(|w| w.len() <= 5);
            }
            words.dedup();
            for word in words.iter().filter(|w| w.len() <= 4) {
                let w = from_word(&rs, word);
                let closed = w.inversion_set(&rs);
                // The word formula requires a reduced word; use the peel word.
                if closed.len() == word.len() {
                    assert_eq!(
                        closed,
                        inversion_set_from_word(&rs, word),
                        "{label}: word {word:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn biconvexity_examples() {
        let rs = sys("C2");
        let delta_minus_theta = AffineRoot::affine_simple(&rs);
        assert!(is_biconvex(&rs, &[delta_minus_theta]));
        // delta - alpha_1 alone: decomposes as (delta - theta) + (alpha_1 + alpha_2),
        // neither part present.
        let bad = AffineRoot {
            level: 1,
            finite: vec![-1, 0],
        };
        assert!(!is_biconvex(&rs, &[bad]));
    }

    #[test]
    fn peel_round_trip_on_bfs() {
        for label in ["C2", "G2"] {
            let rs = sys(label);
            let levels = bfs_elements(&rs, 6);
            for (len, ws) in levels.iter().enumerate() {
                for w in ws {
                    let n = w.inversion_set(&rs);
                    assert_eq!(n.len(), len, "{label}: length = depth");
                    assert!(is_biconvex(&rs, &n), "{label}: biconvex");
                    let rebuilt = element_from_biconvex(&rs, n).unwrap();
                    assert_eq!(&rebuilt, w, "{label}: peel round trip");
                }
            }
        }
    }

    #[test]
    fn element_from_garbage_rejected() {
        let rs = sys("C2");
        let bad = vec![AffineRoot {
            level: 1,
            finite: vec![-1, 0],
        }];
        assert!(matches!(
            element_from_biconvex(&rs, bad),
            Err(Error::NotBiconvex { .. })
        ));
    }

    #[test]
    fn classify_identity() {
        let rs = sys("C2");
        let id = AffineWeylElement::identity(&rs);
        let f = id.classify(&rs);
        assert!(f.dominant && f.minimal && f.maximal);
        assert_eq!(f.s_minimal, Some(true));
        // w^{-1}(alpha_0) has level 1, so the identity is not s-maximal.
        assert_eq!(f.s_maximal, Some(false));
    }

    #[test]
    fn classify_s0() {
        let rs = sys("C2");
        let s0 = AffineWeylElement::simple(&rs, 0);
        let f = s0.classify(&rs);
        assert!(f.dominant && f.minimal && f.maximal);
        // w^{-1}(alpha_0) = -alpha_0 has level -1 < 0: not s-minimal.
        assert_eq!(f.s_minimal, Some(false));
        assert_eq!(f.s_maximal, Some(true));
        // The first layer {theta} is not short, consistent with the above.
        let ideal = s0.first_layer_ideal(&rs).unwrap();
        assert_eq!(ideal.members(), &[idx(&rs, &[2, 1])]);
    }

    #[test]
    fn classify_full_ideal_minimal() {
        let rs = sys("C2");
        let w = minimal_from_ideal(&rs, &Ideal::full(&rs)).unwrap();
        assert_eq!(w.length(&rs), 7);
        let f = w.classify(&rs);
        assert!(f.minimal);
        // Generators are the simples, which include the long alpha_2.
        assert_eq!(f.s_minimal, Some(false));
    }

    #[test]
    fn minimal_from_ideal_examples() {
        let rs = sys("C2");
        assert!(minimal_from_ideal(&rs, &Ideal::empty())
            .unwrap()
            .is_identity());
        let theta_only = Ideal::new(&rs, vec![idx(&rs, &[2, 1])]).unwrap();
        let w = minimal_from_ideal(&rs, &theta_only).unwrap();
        assert_eq!(w.length(&rs), 1);
        assert_eq!(w, AffineWeylElement::simple(&rs, 0));
    }

    #[test]
    fn maximal_from_ideal_examples() {
        let rs = sys("C2");
        let theta_only = Ideal::new(&rs, vec![idx(&rs, &[2, 1])]).unwrap();
        let w = maximal_from_ideal(&rs, &theta_only).unwrap();
        assert_eq!(w.inversion_set(&rs), vec![AffineRoot::affine_simple(&rs)]);

        let upper = Ideal::new(&rs, vec![idx(&rs, &[1, 1]), idx(&rs, &[2, 1])]).unwrap();
        let w = maximal_from_ideal(&rs, &upper).unwrap();
        let n = w.inversion_set(&rs);
        let expect = vec![
            AffineRoot {
                level: 1,
                finite: vec![-2, -1],
            },
            AffineRoot {
                level: 1,
                finite: vec![-1, -1],
            },
            AffineRoot {
                level: 2,
                finite: vec![-2, -1],
            },
        ];
        let mut expect = expect;
        expect.sort();
        assert_eq!(n, expect);

        let with_simple = Antichain::new(&rs, vec![idx(&rs, &[1, 0])])
            .unwrap()
            .closure(&rs);
        assert!(matches!(
            maximal_from_ideal(&rs, &with_simple),
            Err(Error::NotStrictlyPositive { .. })
        ));
    }

    #[test]
    fn generator_and_maxima_recovery() {
        for label in ["C2", "B3", "G2"] {
            let rs = sys(label);
            for gamma in enumerate_antichains_all(&rs) {
                let ideal = gamma.closure(&rs);
                let w = minimal_from_ideal(&rs, &ideal).unwrap();
                assert_eq!(
                    generators_via_action(&rs, &w),
                    gamma.members(),
                    "{label}: generators via action"
                );
                if ideal.is_strictly_positive(&rs) {
                    let w = maximal_from_ideal(&rs, &ideal).unwrap();
                    assert_eq!(
                        complement_maxima_via_action(&rs, &w),
                        ideal.complement_maxima(&rs).members(),
                        "{label}: complement maxima via action"
                    );
                    // The minimal inversion set sits inside the maximal one.
                    let min_n: BTreeSet<AffineRoot> = minimal_from_ideal(&rs, &ideal)
                        .unwrap()
                        .inversion_set(&rs)
                        .into_iter()
                        .collect();
                    let max_n: BTreeSet<AffineRoot> = w.inversion_set(&rs).into_iter().collect();
                    assert!(min_n.is_subset(&max_n), "{label}");
                }
            }
        }
    }

    fn enumerate_antichains_all(rs: &RootSystem) -> Vec<Antichain> {
        crate::posets::enumerate_antichains(rs, AntichainFilter::All).unwrap()
    }

    #[test]
    fn s_maximal_bijection_g2() {
        let rs = sys("G2");
        let gammas =
            crate::posets::enumerate_antichains(&rs, AntichainFilter::StrictlySPositive).unwrap();
        assert_eq!(gammas.len(), 2);
        let mut points = Vec::new();
        for gamma in &gammas {
            let w = s_maximal_from_antichain(&rs, gamma).unwrap();
            assert_eq!(&s_maximal_antichain(&rs, &w).unwrap(), gamma);
            points.push(w.v_of_r(&rs));
        }
        points.sort();
        points.dedup();
        assert_eq!(points.len(), 2);
    }

    #[test]
    fn s_maximal_identity_case() {
        // The unique s-maximal element of C2 carries the empty antichain.
        let rs = sys("C2");
        let w = s_maximal_from_antichain(&rs, &Antichain::empty()).unwrap();
        assert_eq!(w, AffineWeylElement::simple(&rs, 0));
        assert!(s_maximal_antichain(&rs, &w).unwrap().is_empty());
        // Non-strictly-s-positive input is rejected.
        let bad = Antichain::new(&rs, vec![idx(&rs, &[1, 0])]).unwrap();
        assert!(s_maximal_from_antichain(&rs, &bad).is_err());
    }

    #[test]
    fn closed_forms_match_direct_action() {
        // The level formulas behind classify() and the first-layer ideal are
        // read off v(r); check them against literally acting with w^{-1} on
        // the affine simple roots and filtering the inversion set.
        for label in ["C2", "G2"] {
            let rs = sys(label);
            for ws in bfs_elements(&rs, 8) {
                for w in ws {
                    let winv = w.inverse(&rs);
                    let vr = w.v_of_r(&rs);
                    let theta = rs.highest_root_coords();
                    let direct_k0 = winv.apply(&rs, &AffineRoot::affine_simple(&rs)).level;
                    assert_eq!(direct_k0, 1 - rs.pairing_with_coroot(theta, &vr), "{label}");
                    for i in 0..rs.rank() {
                        let alpha = AffineRoot::finite_simple(&rs, i);
                        let mut unit = vec![0i64; rs.rank()];
                        unit[i] = 1;
                        assert_eq!(
                            winv.apply(&rs, &alpha).level,
                            rs.pairing_with_coroot(&unit, &vr),
                            "{label}"
                        );
                    }
                    if w.is_dominant(&rs) {
                        let by_form = w.first_layer_ideal(&rs).unwrap();
                        let by_nset: Vec<usize> = (0..rs.num_positive_roots())
                            .filter(|&idx| {
                                let neg: Vec<i64> =
                                    rs.root_coeffs(idx).iter().map(|&c| -c).collect();
                                w.inversion_set(&rs).contains(&AffineRoot {
                                    level: 1,
                                    finite: neg,
                                })
                            })
                            .collect();
                        assert_eq!(by_form.members(), &by_nset[..], "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_criteria_agree() {
        // w dominant iff N(w) avoids level 0 iff the shifted barycenter is
        // strictly dominant.
        for label in ["C2", "G2"] {
            let rs = sys(label);
            let barycenter = rs.alcove_geometry().barycenter;
            for ws in bfs_elements(&rs, 6) {
                for w in ws {
                    let by_action = w.is_dominant(&rs);
                    let by_nset = w
                        .inversion_set(&rs)
                        .iter()
                        .all(|a| a.level >= 1 && a.finite.iter().all(|&c| c <= 0));
                    let img = w.act_point_inverse(&rs, &barycenter);
                    let by_chamber = rs.point_pairings(&img).iter().all(|x| x > &Rat::default());
                    assert_eq!(by_action, by_nset, "{label}");
                    assert_eq!(by_action, by_chamber, "{label}");
                }
            }
        }
    }

    #[test]
    fn v_of_r_round_trip() {
        let rs = sys("C2");
        for gamma in enumerate_antichains_all(&rs) {
            let ideal = gamma.closure(&rs);
            let w = minimal_from_ideal(&rs, &ideal).unwrap();
            let point = w.v_of_r(&rs);
            let back = dominant_from_v_of_r(&rs, &point).unwrap();
            assert_eq!(back, w);
        }
        // kappa = 0 gives the identity.
        let id = dominant_from_v_of_r(&rs, &[0, 0]).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn dominant_elements_cover_the_coroot_lattice() {
        // Every coroot lattice point has a unique dominant preimage, and the
        // translation part of a dominant element pairs nonpositively with
        // the simple roots.
        for label in ["C2", "G2", "B3"] {
            let rs = sys(label);
            let range = 3i64;
            let mut kappa = vec![0i64; rs.rank()];
            fn walk(rs: &RootSystem, depth: usize, range: i64, kappa: &mut Vec<i64>, label: &str) {
                if depth == kappa.len() {
                    let w = dominant_from_v_of_r(rs, kappa).unwrap();
                    assert!(w.is_dominant(rs), "{label}");
                    assert_eq!(&w.v_of_r(rs), kappa, "{label}");
                    for i in 0..rs.rank() {
                        let mut alpha = vec![0i64; rs.rank()];
                        alpha[i] = 1;
                        assert!(
                            rs.pairing_with_coroot(&alpha, w.translation_part()) <= 0,
                            "{label}: translation part escapes the antidominant cone"
                        );
                    }
                    return;
                }
                for v in -range..=range {
                    kappa[depth] = v;
                    walk(rs, depth + 1, range, kappa, label);
                }
            }
            walk(&rs, 0, range, &mut kappa, label);
        }
    }

    #[test]
    fn composition_and_inverse() {
        let rs = sys("G2");
        let w = from_word(&rs, &[0, 1, 2, 0, 1]);
        let winv = w.inverse(&rs);
        assert!(w.compose(&rs, &winv).is_identity());
        assert!(winv.compose(&rs, &w).is_identity());
        // The affine action of the inverse is the inverse map on points.
        let b = rs.alcove_geometry().barycenter;
        let moved = w.act_point(&rs, &b);
        let back = winv.act_point(&rs, &moved);
        assert_eq!(back, b);
        let back2 = w.act_point_inverse(&rs, &moved);
        assert_eq!(back2, b);
    }

    #[test]
    fn simplex_point_outside_rejected() {
        let rs = sys("C2");
        // theta^vee = (1,1) sits in the s-maximal simplex but not in the
        // s-minimal one.
        let theta_vee = rs.coroot_coords(rs.highest_root_coords());
        assert!(element_from_simplex_point(
            &rs,
            &theta_vee,
            crate::halfspace::SimplexKind::ShortMaximal
        )
        .is_ok());
        assert!(matches!(
            element_from_simplex_point(
                &rs,
                &theta_vee,
                crate::halfspace::SimplexKind::ShortMinimal
            ),
            Err(Error::OutsidePoint { .. })
        ));
    }

    #[test]
    fn reflection_requires_a_root() {
        let rs = sys("C2");
        assert!(matches!(
            WeylElement::reflection(&rs, &[1, 2]),
            Err(Error::NotARoot { .. })
        ));
        let s = WeylElement::reflection(&rs, &[2, 1]).unwrap();
        assert!(s.compose(&s).is_identity());
    }

    #[test]
    fn reduced_words_recompose() {
        let rs = sys("C2");
        for ws in bfs_elements(&rs, 5) {
            for w in ws {
                let word = w.reduced_word(&rs).unwrap();
                assert_eq!(&from_word(&rs, &word), &w);
                assert_eq!(word.len(), w.length(&rs));
            }
        }
    }
}
