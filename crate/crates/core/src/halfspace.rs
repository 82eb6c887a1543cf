//! Half-space systems (simplices) and exact lattice-point enumeration.
//!
//! Every linear form is the pairing with an explicit positive root, so a
//! constraint is exactly checkable at rational points. Lattice points are
//! enumerated through their integer pairing vector with the simple roots,
//! which parametrizes the coweight lattice; coroot-lattice membership is an
//! exact integral solve against the Cartan matrix.

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat};
use crate::rootsys::{coprime_with_theta_coords, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Gt,
    Le,
    Lt,
}

/// One constraint `(x, mu) rel bound`, with `mu` a positive root given by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub root: usize,
    pub rel: Rel,
    pub bound: Rat,
}

impl Constraint {
    pub fn holds(&self, value: Rat) -> bool {
        match self.rel {
            Rel::Ge => value >= self.bound,
            Rel::Gt => value > self.bound,
            Rel::Le => value <= self.bound,
            Rel::Lt => value < self.bound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HalfSpaceSystem {
    pub name: String,
    pub constraints: Vec<Constraint>,
}

/// The simplices attached to the four dominant element classes, plus dilated
/// alcoves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexKind {
    /// Pairings with the simples at least -1, pairing with the highest root
    /// at most 2: parametrizes minimal elements.
    Minimal,
    /// Pairings at most 1, highest-root pairing at least 0: maximal elements.
    Maximal,
    /// Short simples at least -1, long simples at least 0, highest root at
    /// most 1: s-minimal elements.
    ShortMinimal,
    /// Short simples at most 1, long simples at most 0, highest root at
    /// least 1: s-maximal elements.
    ShortMaximal,
}

impl SimplexKind {
    pub fn name(self) -> &'static str {
        match self {
            SimplexKind::Minimal => "minimal",
            SimplexKind::Maximal => "maximal",
            SimplexKind::ShortMinimal => "s-minimal",
            SimplexKind::ShortMaximal => "s-maximal",
        }
    }
}

pub fn simplex(rs: &RootSystem, kind: SimplexKind) -> Result<HalfSpaceSystem> {
    let theta = rs.highest_root();
    let mut constraints = Vec::new();
    let simple = |i: usize| rs.simple_index(i);
    match kind {
        SimplexKind::Minimal => {
            for i in 0..rs.rank() {
                constraints.push(Constraint {
                    root: simple(i),
                    rel: Rel::Ge,
                    bound: rat_int(-1),
                });
            }
            constraints.push(Constraint {
                root: theta,
                rel: Rel::Le,
                bound: rat_int(2),
            });
        }
        SimplexKind::Maximal => {
            for i in 0..rs.rank() {
                constraints.push(Constraint {
                    root: simple(i),
                    rel: Rel::Le,
                    bound: rat_int(1),
                });
            }
            constraints.push(Constraint {
                root: theta,
                rel: Rel::Ge,
                bound: rat_int(0),
            });
        }
        SimplexKind::ShortMinimal | SimplexKind::ShortMaximal => {
            if !rs.two_lengths() {
                return Err(Error::SimplyLaced {
                    op: "simplex(short variant)",
                    system: rs.id().to_string(),
                });
            }
            let short = rs.short_simple_indices();
            for i in 0..rs.rank() {
                let (rel, bound) = match kind {
                    SimplexKind::ShortMinimal => (
                        Rel::Ge,
                        if short.contains(&i) {
                            rat_int(-1)
                        } else {
                            rat_int(0)
                        },
                    ),
                    _ => (
                        Rel::Le,
                        if short.contains(&i) {
                            rat_int(1)
                        } else {
                            rat_int(0)
                        },
                    ),
                };
                constraints.push(Constraint {
                    root: simple(i),
                    rel,
                    bound,
                });
            }
            constraints.push(match kind {
                SimplexKind::ShortMinimal => Constraint {
                    root: theta,
                    rel: Rel::Le,
                    bound: rat_int(1),
                },
                _ => Constraint {
                    root: theta,
                    rel: Rel::Ge,
                    bound: rat_int(1),
                },
            });
        }
    }
    Ok(HalfSpaceSystem {
        name: kind.name().to_string(),
        constraints,
    })
}

/// The alcove dilated by `t >= 0`, closed or open.
pub fn dilated_alcove(rs: &RootSystem, t: i64, closed: bool) -> HalfSpaceSystem {
    let (low, high) = if closed {
        (Rel::Ge, Rel::Le)
    } else {
        (Rel::Gt, Rel::Lt)
    };
    let mut constraints = Vec::new();
    for i in 0..rs.rank() {
        constraints.push(Constraint {
            root: rs.simple_index(i),
            rel: low,
            bound: rat_int(0),
        });
    }
    constraints.push(Constraint {
        root: rs.highest_root(),
        rel: high,
        bound: rat_int(t),
    });
    HalfSpaceSystem {
        name: format!("{t}-alcove-{}", if closed { "closed" } else { "open" }),
        constraints,
    }
}

impl HalfSpaceSystem {
    pub fn contains(&self, rs: &RootSystem, point: &[Rat]) -> bool {
        self.constraints
            .iter()
            .all(|c| c.holds(rs.point_root_pairing(point, rs.root_coeffs(c.root))))
    }

    /// Number of defining constraints tight at a point of the (closed)
    /// system; the simplices here are simple, so this is the codimension of
    /// the smallest face containing the point.
    pub fn face_codimension(&self, rs: &RootSystem, point: &[Rat]) -> Result<usize> {
        if !self.contains(rs, point) {
            return Err(Error::OutsidePoint {
                name: self.name.clone(),
            });
        }
        Ok(self
            .constraints
            .iter()
            .filter(|c| rs.point_root_pairing(point, rs.root_coeffs(c.root)) == c.bound)
            .count())
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .map(|c| {
                serde_json::json!({
                    "root": rs.root_coeffs(c.root),
                    "rel": match c.rel { Rel::Ge => ">=", Rel::Gt => ">", Rel::Le => "<=", Rel::Lt => "<" },
                    "bound": c.bound.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "name": self.name, "constraints": rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    /// The coroot lattice (integral coroot coordinates).
    Coroot,
    /// The coweight lattice (integral pairings with the simple roots).
    Coweight,
}

/// A lattice point found by enumeration: its pairing vector with the simple
/// roots and its coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    pub pairings: Vec<i64>,
    pub coords: Vec<Rat>,
}

/// Integer form of a constraint on the pairing vector `n`:
/// `sum coeffs[i] * n_i (>= | <=) bound`.
struct IntConstraint {
    coeffs: Vec<i64>,
    lower: bool,
    bound: i64,
}

fn to_int_constraint(rs: &RootSystem, c: &Constraint) -> IntConstraint {
    let coeffs = rs.root_coeffs(c.root).to_vec();
    // The form has integer values on the coweight lattice, so strict
    // inequalities round to the next integer.
    match c.rel {
        Rel::Ge => IntConstraint {
            coeffs,
            lower: true,
            bound: c.bound.ceil().to_integer(),
        },
        Rel::Gt => IntConstraint {
            coeffs,
            lower: true,
            bound: c.bound.floor().to_integer() + 1,
        },
        Rel::Le => IntConstraint {
            coeffs,
            lower: false,
            bound: c.bound.floor().to_integer(),
        },
        Rel::Lt => IntConstraint {
            coeffs,
            lower: false,
            bound: c.bound.ceil().to_integer() - 1,
        },
    }
}

/// Exhaustive lattice-point enumeration: derive a bounding box for the
/// pairing vector by interval propagation (root coordinates are nonnegative,
/// so one pass per constraint direction tightens monotonically), scan it,
/// filter by the constraints and the lattice. Deterministic order.
pub fn lattice_points(
    rs: &RootSystem,
    system: &HalfSpaceSystem,
    lattice: LatticeKind,
) -> Result<Vec<LatticePoint>> {
    let p = rs.rank();
    let ints: Vec<IntConstraint> = system
        .constraints
        .iter()
        .map(|c| to_int_constraint(rs, c))
        .collect();

    let mut lo: Vec<Option<i64>> = vec![None; p];
    let mut hi: Vec<Option<i64>> = vec![None; p];
    // Interval propagation to a fixpoint; every form has nonnegative
    // coefficients, so lower bounds feed upper bounds and vice versa.
    for _ in 0..(p + 2) * (ints.len() + 1) {
        let mut changed = false;
        for c in &ints {
            for i in 0..p {
                if c.coeffs[i] == 0 {
                    continue;
                }
                let mut rest_ok = true;
                let mut rest = 0i64;
                for j in 0..p {
                    if j == i || c.coeffs[j] == 0 {
                        continue;
                    }
                    // For an upper bound on n_i we need lower bounds on the
                    // other coordinates (and dually).
                    let side = if c.lower { hi[j] } else { lo[j] };
                    match side {
                        Some(v) => rest += c.coeffs[j] * v,
                        None => {
                            rest_ok = false;
                            break;
                        }
                    }
                }
                if !rest_ok {
                    continue;
                }
                let slack = c.bound - rest;
                if c.lower {
                    // coeffs[i] * n_i >= slack
                    let b = slack.div_euclid(c.coeffs[i])
                        + if slack.rem_euclid(c.coeffs[i]) != 0 {
                            1
                        } else {
                            0
                        };
                    if lo[i].is_none_or(|cur| b > cur) {
                        lo[i] = Some(b);
                        changed = true;
                    }
                } else {
                    let b = slack.div_euclid(c.coeffs[i]);
                    if hi[i].is_none_or(|cur| b < cur) {
                        hi[i] = Some(b);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let boxes: Vec<(i64, i64)> = (0..p)
        .map(|i| match (lo[i], hi[i]) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Unbounded {
                name: system.name.clone(),
            }),
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut n = vec![0i64; p];
    scan_box(&boxes, &ints, 0, &mut n, &mut |n| {
        let coords = rs.point_from_pairings(n);
        let keep = match lattice {
            LatticeKind::Coweight => true,
            LatticeKind::Coroot => rs.in_coroot_lattice(&coords),
        };
        if keep {
            out.push(LatticePoint {
                pairings: n.to_vec(),
                coords,
            });
        }
    });
    Ok(out)
}

fn scan_box(
    boxes: &[(i64, i64)],
    ints: &[IntConstraint],
    depth: usize,
    n: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if depth == boxes.len() {
        let ok = ints.iter().all(|c| {
            let v: i64 = c.coeffs.iter().zip(n.iter()).map(|(a, b)| a * b).sum();
            if c.lower {
                v >= c.bound
            } else {
                v <= c.bound
            }
        });
        if ok {
            emit(n);
        }
        return;
    }
    let (a, b) = boxes[depth];
    for v in a..=b {
        n[depth] = v;
        scan_box(boxes, ints, depth + 1, n, emit);
    }
}

/// Coroot-lattice points as integer coordinate vectors.
pub fn coroot_points(rs: &RootSystem, system: &HalfSpaceSystem) -> Result<Vec<Vec<i64>>> {
    Ok(lattice_points(rs, system, LatticeKind::Coroot)?
        .into_iter()
        .map(|pt| pt.coords.iter().map(|c| c.to_integer()).collect())
        .collect())
}

/// Count of coroot-lattice points in the closed dilated alcove, with the
/// product formula when `t` is coprime to the highest-root coordinates and
/// to the connection index. (On two-length systems the first condition
/// implies the second; in type A it does not, and the product is not even
/// integral without it.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlcoveCount {
    /// The formula applies; both values are returned so callers can compare.
    Formula {
        predicted: u64,
        direct: u64,
    },
    NotApplicable {
        direct: u64,
    },
}

pub fn alcove_point_count(rs: &RootSystem, t: i64) -> Result<AlcoveCount> {
    assert!(t >= 0);
    let direct = coroot_points(rs, &dilated_alcove(rs, t, true))?.len() as u64;
    let coprime_f = num::integer::gcd(t.unsigned_abs(), rs.connection_index() as u64) == 1;
    if t >= 1 && coprime_with_theta_coords(rs, t) && coprime_f {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for &e in rs.exponents() {
            num *= (t as u128) + e as u128;
            den *= 1 + e as u128;
        }
        if !num.is_multiple_of(den) {
            return Err(Error::internal(format!(
                "alcove count formula not integral at t={t}"
            )));
        }
        Ok(AlcoveCount::Formula {
            predicted: (num / den) as u64,
            direct,
        })
    } else {
        Ok(AlcoveCount::NotApplicable { direct })
    }
}
