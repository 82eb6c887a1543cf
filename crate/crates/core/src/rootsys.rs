//! Irreducible reduced root systems of types A–G (rank at most 8).
//!
//! A system is built from its Cartan matrix in Bourbaki numbering; the
//! positive roots are generated by the standard root-string closure, and all
//! scalar invariants (exponents, Coxeter number, connection index, the short
//! coordinate sum of the highest root) are computed rather than tabulated.
//! Root coordinates are integers over the simple-root basis and all geometry
//! is exact rational, normalized so the highest root has squared length 2.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, rat_int, Rat};
use num::integer::gcd;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<TypeLetter> {
        match c.to_ascii_uppercase() {
            'A' => Some(TypeLetter::A),
            'B' => Some(TypeLetter::B),
            'C' => Some(TypeLetter::C),
            'D' => Some(TypeLetter::D),
            'E' => Some(TypeLetter::E),
            'F' => Some(TypeLetter::F),
            'G' => Some(TypeLetter::G),
            _ => None,
        }
    }
}

/// Cheap identity of a root system; two independently built systems of the
/// same type are interchangeable, so identity is just (letter, rank).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SystemId {
    pub letter: TypeLetter,
    pub rank: usize,
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.rank)
    }
}

impl SystemId {
    /// Parse a label such as `"C2"` or `"F4"`.
    pub fn parse(s: &str) -> Result<SystemId> {
        let mut chars = s.chars();
        let letter = chars
            .next()
            .and_then(TypeLetter::from_char)
            .ok_or_else(|| Error::invalid(format!("cannot parse system label `{s}`")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::invalid(format!("cannot parse system label `{s}`")))?;
        Ok(SystemId { letter, rank })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthClass {
    Short,
    Long,
}

/// A root, stored as its integer coordinate vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    sys: SystemId,
    coeffs: Vec<i64>,
}

impl Root {
    pub fn system(&self) -> SystemId {
        self.sys
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// Selector for the sub-root systems the theory needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsystemSelector {
    /// All short roots (a root system in its own right, not closed in the parent).
    ShortRoots,
    /// All long roots.
    LongRoots,
    /// Roots supported on the long simple roots only.
    SpanOfLongSimples,
}

/// A subset of the parent's roots carrying its own simple roots, heights and
/// exponents. May be reducible (e.g. the long roots of C2 form A1 x A1).
#[derive(Debug, Clone)]
pub struct SubRootSystem {
    parent: SystemId,
    positive: Vec<usize>,
    simples: Vec<usize>,
    heights: Vec<usize>,
    height_distribution: Vec<usize>,
    exponents: Vec<usize>,
}

impl SubRootSystem {
    pub fn parent(&self) -> SystemId {
        self.parent
    }

    /// Indices (into the parent's positive roots) of this subsystem's positive part.
    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    /// Indices of the subsystem's simple roots: its indecomposable positive elements.
    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    /// Height of each positive member over the subsystem's own simple roots,
    /// in the order of `positive()`.
    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// `height_distribution()[k-1]` = number of members of height `k`.
    pub fn height_distribution(&self) -> &[usize] {
        &self.height_distribution
    }

    /// Exponents as the conjugate partition of the height distribution
    /// (for reducible subsystems this is the multiset union over components).
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }
}

/// Exact data of the closed fundamental alcove.
#[derive(Debug, Clone)]
pub struct AlcoveGeometry {
    /// Vertices in coroot coordinates: the origin and the scaled fundamental coweights.
    pub vertices: Vec<Vec<Rat>>,
    pub barycenter: Vec<Rat>,
    /// Fundamental coweights in coroot coordinates (columns of the inverse Cartan matrix).
    pub fundamental_coweights: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    id: SystemId,
    cartan: Vec<Vec<i64>>,
    /// Half squared length of each simple root, normalized so the highest root
    /// has squared length 2.
    d: Vec<Rat>,
    /// Inner products of simple roots.
    sym: Vec<Vec<Rat>>,
    /// Positive roots in lexicographic coordinate order.
    positive: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    length: Vec<LengthClass>,
    theta: usize,
    theta_s: usize,
    exponents: Vec<usize>,
    coxeter_number: usize,
    connection_index: usize,
    cartan_inv: Vec<Vec<Rat>>,
    /// Simple indices by length; `short_simples` is empty iff simply laced.
    short_simples: Vec<usize>,
    long_simples: Vec<usize>,
    /// Positive-root indices of the short subsystem's simple roots (two lengths only).
    short_subsystem_simples: Option<Vec<usize>>,
}

fn cartan_matrix(letter: TypeLetter, rank: usize) -> Result<Vec<Vec<i64>>> {
    let p = rank;
    let valid = match letter {
        TypeLetter::A => (1..=8).contains(&p),
        TypeLetter::B | TypeLetter::C => (2..=8).contains(&p),
        TypeLetter::D => (4..=8).contains(&p),
        TypeLetter::E => (6..=8).contains(&p),
        TypeLetter::F => p == 4,
        TypeLetter::G => p == 2,
    };
    if !valid {
        return Err(Error::InvalidSystem {
            letter: letter.as_char(),
            rank: p,
        });
    }
    // c[i][j] = <alpha_i, alpha_j^vee>, Bourbaki numbering.
    let mut c = vec![vec![0i64; p]; p];
    for i in 0..p {
        c[i][i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match letter {
        TypeLetter::A => {
            for i in 0..p - 1 {
                chain(i, i + 1);
            }
        }
        TypeLetter::B => {
            for i in 0..p - 1 {
                chain(i, i + 1);
            }
            // alpha_p is short: <alpha_{p-1}, alpha_p^vee> = -2
            c[p - 2][p - 1] = -2;
        }
        TypeLetter::C => {
            for i in 0..p - 1 {
                chain(i, i + 1);
            }
            // alpha_p is long: <alpha_p, alpha_{p-1}^vee> = -2
            c[p - 1][p - 2] = -2;
        }
        TypeLetter::D => {
            for i in 0..p - 2 {
                chain(i, i + 1);
            }
            chain(p - 3, p - 1);
        }
        TypeLetter::E => {
            // Bourbaki: chain 1-3-4-5-...-p with node 2 attached to 4.
            chain(0, 2);
            for i in 2..p - 1 {
                chain(i, i + 1);
            }
            chain(1, 3);
        }
        TypeLetter::F => {
            chain(0, 1);
            chain(2, 3);
            // alpha_3, alpha_4 short: <alpha_2, alpha_3^vee> = -2
            c[1][2] = -2;
            c[2][1] = -1;
        }
        TypeLetter::G => {
            // alpha_1 short: <alpha_2, alpha_1^vee> = -3
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    Ok(c)
}

/// Conjugate partition of a height distribution, smallest part first.
/// `dist[k-1]` counts roots of height `k`.
pub(crate) fn conjugate_partition(dist: &[usize]) -> Vec<usize> {
    let mut exps = Vec::new();
    for k in (1..=dist.len()).rev() {
        let here = dist[k - 1];
        let above = if k == dist.len() { 0 } else { dist[k] };
        for _ in 0..here.saturating_sub(above) {
            exps.push(k);
        }
    }
    exps.sort_unstable();
    exps
}

/// Build a root system from its type. This is the entry point of the crate.
pub fn build_root_system(letter: TypeLetter, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(letter, rank)?;
    RootSystem::from_cartan(SystemId { letter, rank }, cartan)
}

impl RootSystem {
    fn from_cartan(id: SystemId, cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let p = id.rank;

        // Symmetrizer: d_j * c[i][j] = d_i * c[j][i]; propagate along the diagram.
        let mut d = vec![Rat::zero(); p];
        d[0] = Rat::one();
        let mut queue = vec![0usize];
        while let Some(i) = queue.pop() {
            for j in 0..p {
                if j != i && cartan[i][j] != 0 && d[j].is_zero() {
                    d[j] = d[i] * linalg::rat(cartan[j][i], cartan[i][j]);
                    queue.push(j);
                }
            }
        }
        if d.iter().any(Rat::is_zero) {
            return Err(Error::internal(format!("{id}: disconnected Cartan matrix")));
        }

        // Positive roots by root-string closure, level by level in height.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for i in 0..p {
            let mut v = vec![0i64; p];
            v[i] = 1;
            seen.insert(v.clone(), roots.len());
            roots.push(v);
        }
        let mut frontier: Vec<Vec<i64>> = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..p {
                    // q = p - <beta, alpha_i^vee> where p counts the steps
                    // down the alpha_i-string that stay roots.
                    let pairing: i64 = (0..p).map(|k| beta[k] * cartan[k][i]).sum();
                    let mut down = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if probe.iter().all(|&c| c == 0) || !seen.contains_key(&probe) {
                            break;
                        }
                        down += 1;
                    }
                    if down - pairing >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !seen.contains_key(&up) {
                            seen.insert(up.clone(), usize::MAX);
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }

        // Canonical storage: lexicographic coordinate order (a linear
        // extension of the root order, since bigger roots dominate).
        roots.sort();
        let index: BTreeMap<Vec<i64>, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();

        // Highest root: unique root of maximal height.
        let max_h = roots.iter().map(|r| r.iter().sum::<i64>()).max().unwrap();
        let tallest: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().sum::<i64>() == max_h)
            .map(|(i, _)| i)
            .collect();
        if tallest.len() != 1 {
            return Err(Error::internal(format!("{id}: highest root not unique")));
        }
        let theta = tallest[0];

        // Normalize the inner product so (theta, theta) = 2.
        let len2 = |coeffs: &[i64], d: &[Rat], cartan: &[Vec<i64>]| -> Rat {
            let mut s = Rat::zero();
            for i in 0..p {
                for j in 0..p {
                    s += rat_int(coeffs[i]) * rat_int(coeffs[j]) * d[j] * rat_int(cartan[i][j]);
                }
            }
            s
        };
        let theta_len2 = len2(&roots[theta], &d, &cartan);
        let scale = rat_int(2) / theta_len2;
        for x in d.iter_mut() {
            *x *= scale;
        }
        let sym: Vec<Vec<Rat>> = (0..p)
            .map(|i| (0..p).map(|j| d[j] * rat_int(cartan[i][j])).collect())
            .collect();

        let length: Vec<LengthClass> = roots
            .iter()
            .map(|r| {
                if len2(r, &d, &cartan) == rat_int(2) {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                }
            })
            .collect();

        // Height distribution and derived invariants.
        let mut dist = vec![0usize; max_h as usize];
        for r in &roots {
            dist[r.iter().sum::<i64>() as usize - 1] += 1;
        }
        let exponents = conjugate_partition(&dist);
        let coxeter_number = max_h as usize + 1;

        let connection_index = linalg::det_i64(&cartan);
        if connection_index <= 0 {
            return Err(Error::internal(format!("{id}: Cartan matrix not positive")));
        }

        let cartan_rat: Vec<Vec<Rat>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let cartan_inv = linalg::invert_rat(&cartan_rat)
            .ok_or_else(|| Error::internal(format!("{id}: singular Cartan matrix")))?;

        let short_simples: Vec<usize> = (0..p)
            .filter(|&i| {
                let idx = index[&{
                    let mut v = vec![0i64; p];
                    v[i] = 1;
                    v
                }];
                length[idx] == LengthClass::Short
            })
            .collect();
        let long_simples: Vec<usize> = (0..p).filter(|i| !short_simples.contains(i)).collect();

        // Unique short dominant root (equals theta when simply laced).
        let theta_s = if short_simples.is_empty() {
            theta
        } else {
            let dominant_short: Vec<usize> = (0..roots.len())
                .filter(|&i| length[i] == LengthClass::Short)
                .filter(|&i| {
                    (0..p).all(|j| (0..p).map(|k| roots[i][k] * cartan[k][j]).sum::<i64>() >= 0)
                })
                .collect();
            if dominant_short.len() != 1 {
                return Err(Error::internal(format!(
                    "{id}: expected one short dominant root, found {}",
                    dominant_short.len()
                )));
            }
            dominant_short[0]
        };

        let mut rs = RootSystem {
            id,
            cartan,
            d,
            sym,
            positive: roots,
            index,
            length,
            theta,
            theta_s,
            exponents,
            coxeter_number,
            connection_index: connection_index as usize,
            cartan_inv,
            short_simples,
            long_simples,
            short_subsystem_simples: None,
        };
        if rs.two_lengths() {
            let sub = rs.subsystem(SubsystemSelector::ShortRoots)?;
            rs.short_subsystem_simples = Some(sub.simples().to_vec());
        }
        Ok(rs)
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rat>] {
        &self.cartan_inv
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// Positive root coordinate vectors in canonical (lexicographic) order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn positive_root(&self, idx: usize) -> Root {
        Root {
            sys: self.id,
            coeffs: self.positive[idx].clone(),
        }
    }

    pub fn root_coeffs(&self, idx: usize) -> &[i64] {
        &self.positive[idx]
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0i64; self.rank()];
        v[i] = 1;
        Root {
            sys: self.id,
            coeffs: v,
        }
    }

    /// Index of the simple root `alpha_i` among the positive roots.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut v = vec![0i64; self.rank()];
        v[i] = 1;
        self.index[&v]
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_positive_root(&self, coeffs: &[i64]) -> bool {
        self.index.contains_key(coeffs)
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        if self.index.contains_key(coeffs) {
            return true;
        }
        let neg: Vec<i64> = coeffs.iter().map(|&c| -c).collect();
        self.index.contains_key(&neg)
    }

    pub fn root_from_coeffs(&self, coeffs: &[i64]) -> Result<Root> {
        if !self.is_root(coeffs) {
            return Err(Error::NotARoot {
                coeffs: coeffs.to_vec(),
            });
        }
        Ok(Root {
            sys: self.id,
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn length_class(&self, idx: usize) -> LengthClass {
        self.length[idx]
    }

    pub fn is_short(&self, idx: usize) -> bool {
        self.length[idx] == LengthClass::Short
    }

    pub fn two_lengths(&self) -> bool {
        !self.short_simples.is_empty()
    }

    fn require_two_lengths(&self, op: &'static str) -> Result<()> {
        if self.two_lengths() {
            Ok(())
        } else {
            Err(Error::SimplyLaced {
                op,
                system: self.id.to_string(),
            })
        }
    }

    /// Index of the highest root.
    pub fn highest_root(&self) -> usize {
        self.theta
    }

    /// Index of the short dominant root (equals the highest root when simply laced).
    pub fn short_dominant_root(&self) -> usize {
        self.theta_s
    }

    /// Coordinates of the highest root over the simple roots.
    pub fn highest_root_coords(&self) -> &[i64] {
        &self.positive[self.theta]
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    /// Index of connection: [coweight lattice : coroot lattice] = det(Cartan).
    pub fn connection_index(&self) -> usize {
        self.connection_index
    }

    pub fn weyl_order(&self) -> u64 {
        self.exponents.iter().map(|&e| (e + 1) as u64).product()
    }

    /// Simple indices whose roots are short; empty iff simply laced.
    pub fn short_simple_indices(&self) -> &[usize] {
        &self.short_simples
    }

    pub fn long_simple_indices(&self) -> &[usize] {
        &self.long_simples
    }

    /// Sum of the coordinates of the highest root over the short simple roots.
    /// Rejected for simply laced systems, where no convention applies.
    pub fn short_coordinate_sum(&self) -> Result<usize> {
        self.require_two_lengths("short_coordinate_sum")?;
        let theta = self.highest_root_coords();
        Ok(self.short_simples.iter().map(|&i| theta[i] as usize).sum())
    }

    /// Positive-root indices of the simple roots of the short subsystem.
    pub fn short_subsystem_simple_indices(&self) -> Result<&[usize]> {
        self.require_two_lengths("short_subsystem_simple_indices")?;
        Ok(self.short_subsystem_simples.as_deref().unwrap())
    }

    pub fn short_positive_indices(&self) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&i| self.is_short(i))
            .collect()
    }

    pub fn long_positive_indices(&self) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&i| !self.is_short(i))
            .collect()
    }

    // ------------------------------------------------------------------
    // Inner product and pairings
    // ------------------------------------------------------------------

    /// `<mu, alpha_j^vee>` for `mu` given by root coordinates. Always an integer.
    pub fn pairing(&self, coeffs: &[i64], j: usize) -> i64 {
        (0..self.rank())
            .map(|k| coeffs[k] * self.cartan[k][j])
            .sum()
    }

    /// Pairing vector `(<mu, alpha_1^vee>, ..., <mu, alpha_p^vee>)`.
    pub fn pairing_vector(&self, coeffs: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|j| self.pairing(coeffs, j)).collect()
    }

    /// `(mu, r)` for a root `mu` and `r` in coroot coordinates.
    pub fn pairing_with_coroot(&self, coeffs: &[i64], r: &[i64]) -> i64 {
        (0..self.rank())
            .map(|j| self.pairing(coeffs, j) * r[j])
            .sum()
    }

    /// Inner product of two rational vectors given over the simple-root basis.
    pub fn inner_coeffs(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let p = self.rank();
        let mut s = Rat::zero();
        for i in 0..p {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..p {
                s += a[i] * b[j] * self.sym[i][j];
            }
        }
        s
    }

    /// Inner product of two roots; rejects operands from another system.
    pub fn inner(&self, a: &Root, b: &Root) -> Result<Rat> {
        if a.sys != self.id || b.sys != self.id {
            return Err(Error::MixedSystems {
                a: a.sys.to_string(),
                b: b.sys.to_string(),
            });
        }
        let ar: Vec<Rat> = a.coeffs.iter().map(|&c| rat_int(c)).collect();
        let br: Vec<Rat> = b.coeffs.iter().map(|&c| rat_int(c)).collect();
        Ok(self.inner_coeffs(&ar, &br))
    }

    pub fn root_len2(&self, coeffs: &[i64]) -> Rat {
        let r: Vec<Rat> = coeffs.iter().map(|&c| rat_int(c)).collect();
        self.inner_coeffs(&r, &r)
    }

    /// `(x, mu)` for a point `x` in coroot coordinates and a root `mu`.
    pub fn point_root_pairing(&self, point: &[Rat], coeffs: &[i64]) -> Rat {
        let mut s = Rat::zero();
        for (j, &y) in point.iter().enumerate() {
            if !y.is_zero() {
                s += y * rat_int(self.pairing(coeffs, j));
            }
        }
        s
    }

    /// Coordinates of the coroot `mu^vee` over the simple coroots.
    pub fn coroot_coords(&self, coeffs: &[i64]) -> Vec<i64> {
        let d_mu = self.root_len2(coeffs) / rat_int(2);
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let c = rat_int(m) * self.d[i] / d_mu;
                // to_integer() truncates, so a silent non-integral value here
                // would corrupt every lattice computation downstream.
                assert!(c.is_integer(), "coroot coordinates must be integral");
                c.to_integer()
            })
            .collect()
    }

    /// Half squared length of the simple root `alpha_i`.
    pub fn simple_half_len2(&self, i: usize) -> Rat {
        self.d[i]
    }

    // ------------------------------------------------------------------
    // Lattices and the alcove
    // ------------------------------------------------------------------

    /// Is the point (coroot coordinates) in the coroot lattice?
    pub fn in_coroot_lattice(&self, point: &[Rat]) -> bool {
        point.iter().all(Rat::is_integer)
    }

    /// Is the point (coroot coordinates) in the coweight lattice, i.e. are all
    /// pairings with the simple roots integral?
    pub fn in_coweight_lattice(&self, point: &[Rat]) -> bool {
        (0..self.rank()).all(|i| {
            let mut s = Rat::zero();
            for j in 0..self.rank() {
                s += rat_int(self.cartan[i][j]) * point[j];
            }
            s.is_integer()
        })
    }

    /// Pairing vector of a rational point: `n_i = (x, alpha_i)`.
    pub fn point_pairings(&self, point: &[Rat]) -> Vec<Rat> {
        (0..self.rank())
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.rank() {
                    s += rat_int(self.cartan[i][j]) * point[j];
                }
                s
            })
            .collect()
    }

    /// Coroot coordinates of the point with integer pairing vector `n`
    /// (i.e. the coweight lattice point `sum n_i varpi_i^vee`).
    pub fn point_from_pairings(&self, n: &[i64]) -> Vec<Rat> {
        linalg::mat_vec_rat_i(&self.cartan_inv, n)
    }

    pub fn alcove_geometry(&self) -> AlcoveGeometry {
        let p = self.rank();
        let coweights: Vec<Vec<Rat>> = (0..p)
            .map(|i| (0..p).map(|j| self.cartan_inv[j][i]).collect())
            .collect();
        let theta = self.highest_root_coords();
        let mut vertices = vec![vec![Rat::zero(); p]];
        for (i, w) in coweights.iter().enumerate() {
            let c = rat_int(theta[i]);
            vertices.push(w.iter().map(|x| x / c).collect());
        }
        let mut barycenter = vec![Rat::zero(); p];
        for v in &vertices {
            for (b, x) in barycenter.iter_mut().zip(v) {
                *b += x;
            }
        }
        let n = rat_int(vertices.len() as i64);
        for b in barycenter.iter_mut() {
            *b /= n;
        }
        AlcoveGeometry {
            vertices,
            barycenter,
            fundamental_coweights: coweights,
        }
    }

    /// Number of coweight classes modulo the coroot lattice, by closure of the
    /// fundamental coweights under addition mod 1. Equals the connection index.
    pub fn coweight_class_count(&self) -> usize {
        let p = self.rank();
        let frac = |v: &[Rat]| -> Vec<Rat> { v.iter().map(|x| x - x.floor()).collect() };
        let geometry = self.alcove_geometry();
        let mut classes: std::collections::BTreeSet<Vec<Rat>> = std::collections::BTreeSet::new();
        classes.insert(vec![Rat::zero(); p]);
        let mut frontier: Vec<Vec<Rat>> = vec![vec![Rat::zero(); p]];
        while let Some(x) = frontier.pop() {
            for w in &geometry.fundamental_coweights {
                let next = frac(&x.iter().zip(w).map(|(a, b)| a + b).collect::<Vec<_>>());
                if classes.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        classes.len()
    }

    // ------------------------------------------------------------------
    // Duality
    // ------------------------------------------------------------------

    pub fn dual_type(&self) -> SystemId {
        let letter = match self.id.letter {
            TypeLetter::B => TypeLetter::C,
            TypeLetter::C => TypeLetter::B,
            other => other,
        };
        SystemId {
            letter,
            rank: self.id.rank,
        }
    }

    /// The dual root system in its own standard numbering.
    pub fn dual(&self) -> RootSystem {
        let dual_id = self.dual_type();
        build_root_system(dual_id.letter, dual_id.rank).expect("dual of a valid system is valid")
    }

    /// The dual system together with the simple-index correspondence: the
    /// coroot of the simple root `i` here is the dual's simple root
    /// `map[i]`. The transposed Cartan matrix equals the dual's only up to a
    /// diagram permutation (G2 swaps its two nodes, F4 reverses), so the map
    /// is found by matching matrices.
    pub fn dual_with_map(&self) -> (RootSystem, Vec<usize>) {
        let dual = self.dual();
        let p = self.rank();
        let mut perm: Vec<usize> = (0..p).collect();
        let matches = |perm: &[usize]| {
            (0..p).all(|i| (0..p).all(|j| dual.cartan[perm[i]][perm[j]] == self.cartan[j][i]))
        };
        let map = permutations(&mut perm, 0, &matches)
            .expect("dual Cartan matrix is a permuted transpose");
        (dual, map)
    }

    /// Coordinates of `mu^vee` in the dual system's simple-root basis, using
    /// the correspondence from `dual_with_map`.
    pub fn dual_root_coeffs(&self, map: &[usize], coeffs: &[i64]) -> Vec<i64> {
        let own = self.coroot_coords(coeffs);
        let mut out = vec![0i64; own.len()];
        for (i, &c) in own.iter().enumerate() {
            out[map[i]] = c;
        }
        out
    }

    // ------------------------------------------------------------------
    // Subsystems
    // ------------------------------------------------------------------

    pub fn subsystem(&self, selector: SubsystemSelector) -> Result<SubRootSystem> {
        let members: Vec<usize> = match selector {
            SubsystemSelector::ShortRoots => {
                self.require_two_lengths("subsystem(short)")?;
                self.short_positive_indices()
            }
            SubsystemSelector::LongRoots => {
                self.require_two_lengths("subsystem(long)")?;
                self.long_positive_indices()
            }
            SubsystemSelector::SpanOfLongSimples => {
                self.require_two_lengths("subsystem(span of long simples)")?;
                (0..self.positive.len())
                    .filter(|&i| {
                        self.positive[i]
                            .iter()
                            .enumerate()
                            .all(|(j, &c)| c == 0 || self.long_simples.contains(&j))
                    })
                    .collect()
            }
        };
        self.subsystem_from_members(members)
    }

    fn subsystem_from_members(&self, members: Vec<usize>) -> Result<SubRootSystem> {
        let member_set: std::collections::BTreeSet<&[i64]> = members
            .iter()
            .map(|&i| self.positive[i].as_slice())
            .collect();
        // Simple roots: members that are not the sum of two members.
        let simples: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&m| {
                !members.iter().any(|&a| {
                    let diff: Vec<i64> = self.positive[m]
                        .iter()
                        .zip(&self.positive[a])
                        .map(|(x, y)| x - y)
                        .collect();
                    diff != vec![0; self.rank()] && member_set.contains(diff.as_slice())
                })
            })
            .collect();

        // Heights: solve for the coordinates over the subsystem simples.
        let basis: Vec<Vec<Rat>> = (0..self.rank())
            .map(|row| {
                simples
                    .iter()
                    .map(|&s| rat_int(self.positive[s][row]))
                    .collect()
            })
            .collect();
        let mut heights = Vec::with_capacity(members.len());
        for &m in &members {
            let rhs: Vec<Rat> = self.positive[m].iter().map(|&c| rat_int(c)).collect();
            let sol = linalg::solve_unique(&basis, &rhs).ok_or_else(|| {
                Error::internal(format!(
                    "{}: member {:?} not in the span of subsystem simples",
                    self.id, self.positive[m]
                ))
            })?;
            let mut h = 0i64;
            for c in &sol {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::internal(format!(
                        "{}: member {:?} is not a nonnegative integral combination of subsystem simples",
                        self.id, self.positive[m]
                    )));
                }
                h += c.to_integer();
            }
            heights.push(h as usize);
        }

        let max_h = heights.iter().copied().max().unwrap_or(0);
        let mut dist = vec![0usize; max_h];
        for &h in &heights {
            dist[h - 1] += 1;
        }
        for w in dist.windows(2) {
            if w[1] > w[0] {
                return Err(Error::internal(format!(
                    "{}: subsystem height distribution is not weakly decreasing",
                    self.id
                )));
            }
        }
        let exponents = conjugate_partition(&dist);
        Ok(SubRootSystem {
            parent: self.id,
            positive: members,
            simples,
            heights,
            height_distribution: dist,
            exponents,
        })
    }

    /// The short subsystem's simple roots built by the diagram-string rule:
    /// each long simple root is replaced by the sum of the simple roots on the
    /// path to the nearest short simple root. Used as a cross-check against
    /// the indecomposability computation.
    pub fn short_subsystem_simples_by_strings(&self) -> Result<Vec<Vec<i64>>> {
        self.require_two_lengths("short_subsystem_simples_by_strings")?;
        let p = self.rank();
        let adjacent = |i: usize, j: usize| -> bool { i != j && self.cartan[i][j] != 0 };
        let mut out: Vec<Vec<i64>> = Vec::new();
        for i in 0..p {
            if self.short_simples.contains(&i) {
                let mut v = vec![0i64; p];
                v[i] = 1;
                out.push(v);
                continue;
            }
            // BFS from the long simple root to the nearest short one.
            let mut prev: Vec<Option<usize>> = vec![None; p];
            let mut queue = std::collections::VecDeque::from([i]);
            let mut visited = vec![false; p];
            visited[i] = true;
            let mut target = None;
            'search: while let Some(u) = queue.pop_front() {
                for v in 0..p {
                    if adjacent(u, v) && !visited[v] {
                        visited[v] = true;
                        prev[v] = Some(u);
                        if self.short_simples.contains(&v) {
                            target = Some(v);
                            break 'search;
                        }
                        queue.push_back(v);
                    }
                }
            }
            let mut v = vec![0i64; p];
            let mut cur = target.ok_or_else(|| {
                Error::internal(format!("{}: no short simple reachable", self.id))
            })?;
            v[cur] = 1;
            while let Some(u) = prev[cur] {
                v[u] = 1;
                cur = u;
            }
            out.push(v);
        }
        out.sort();
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Canonical serialization (golden-file format)
    // ------------------------------------------------------------------

    pub fn canonical_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "system {}", self.id).unwrap();
        writeln!(s, "rank {}", self.rank()).unwrap();
        writeln!(s, "cartan").unwrap();
        for row in &self.cartan {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
        writeln!(s, "positive_roots").unwrap();
        for (i, r) in self.positive.iter().enumerate() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            let class = match self.length[i] {
                LengthClass::Short => "short",
                LengthClass::Long => "long",
            };
            writeln!(s, "{} {}", cells.join(" "), class).unwrap();
        }
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(s, "theta {}", join(&self.positive[self.theta])).unwrap();
        writeln!(s, "theta_s {}", join(&self.positive[self.theta_s])).unwrap();
        let exps: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        writeln!(s, "exponents {}", exps.join(" ")).unwrap();
        writeln!(s, "h {}", self.coxeter_number).unwrap();
        writeln!(s, "f {}", self.connection_index).unwrap();
        match self.short_coordinate_sum() {
            Ok(g) => writeln!(s, "g {g}").unwrap(),
            Err(_) => writeln!(s, "g undefined").unwrap(),
        }
        s
    }
}

/// First permutation (in the lexicographic generation order) satisfying the
/// predicate, by in-place enumeration.
fn permutations(
    perm: &mut Vec<usize>,
    fixed: usize,
    ok: &impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if fixed == perm.len() {
        return ok(perm).then(|| perm.clone());
    }
    for i in fixed..perm.len() {
        perm.swap(fixed, i);
        if let Some(found) = permutations(perm, fixed + 1, ok) {
            return Some(found);
        }
        perm.swap(fixed, i);
    }
    None
}

/// Check that `t` is relatively prime with all coordinates of the highest root.
pub fn coprime_with_theta_coords(rs: &RootSystem, t: i64) -> bool {
    rs.highest_root_coords()
        .iter()
        .all(|&c| gcd(t.unsigned_abs(), c.unsigned_abs()) == 1)
}
