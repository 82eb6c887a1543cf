//! Integer polynomials (characteristic polynomials) and the bivariate
//! antichain generating function.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Univariate polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntPolynomial {
    pub coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> IntPolynomial {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: vec![0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[i64]) -> IntPolynomial {
        let mut out: Vec<i128> = vec![1];
        for &r in roots {
            let mut next = vec![0i128; out.len() + 1];
            for (i, &c) in out.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= (r as i128) * c;
            }
            out = next;
        }
        IntPolynomial::new(
            out.into_iter()
                .map(|c| i64::try_from(c).expect("coefficient fits i64"))
                .collect(),
        )
    }

    pub fn eval(&self, t: i64) -> i64 {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t as i128 + c as i128;
        }
        i64::try_from(acc).expect("polynomial value fits i64")
    }

    /// Integer roots with multiplicity (ascending), or `None` if the
    /// polynomial does not split over the integers.
    pub fn integer_roots(&self) -> Option<Vec<i64>> {
        let mut roots = Vec::new();
        let mut cur: Vec<i64> = self.coeffs.clone();
        while cur.len() > 1 {
            let deg = cur.len() - 1;
            let lead = cur[deg];
            if lead != 1 {
                return None; // only monic polynomials are factored here
            }
            // Candidate roots divide the constant term.
            let c0 = cur[0];
            let mut found = None;
            let mut candidates: Vec<i64> = if c0 == 0 {
                vec![0]
            } else {
                let mut divs = Vec::new();
                let a = c0.abs();
                let mut d = 1;
                while d * d <= a {
                    if a % d == 0 {
                        divs.extend([d, -d, a / d, -(a / d)]);
                    }
                    d += 1;
                }
                divs
            };
            candidates.sort_unstable();
            candidates.dedup();
            for r in candidates {
                // Synthetic division check.
                let mut acc: i128 = 0;
                for &c in cur.iter().rev() {
                    acc = acc * r as i128 + c as i128;
                }
                if acc == 0 {
                    found = Some(r);
                    break;
                }
            }
            let r = found?;
            roots.push(r);
            // Synthetic division by (t - r); the eval above proved remainder 0.
            let mut quo = vec![0i64; deg];
            let mut carry: i128 = 0;
            for i in (0..deg).rev() {
                carry = cur[i + 1] as i128 + carry * r as i128;
                quo[i] = i64::try_from(carry).ok()?;
            }
            cur = quo;
        }
        roots.sort_unstable();
        Some(roots)
    }

    /// Factored rendering like `(t-3)(t-5)` when the roots are integers.
    pub fn factored_string(&self) -> Option<String> {
        let roots = self.integer_roots()?;
        if roots.is_empty() {
            return Some("1".to_string());
        }
        let mut s = String::new();
        for r in roots {
            use std::fmt::Write;
            match r.cmp(&0) {
                std::cmp::Ordering::Greater => write!(s, "(t-{r})").unwrap(),
                std::cmp::Ordering::Equal => s.push('t'),
                std::cmp::Ordering::Less => write!(s, "(t+{})", -r).unwrap(),
            }
        }
        Some(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.factored_string() {
            return write!(f, "{s}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && self.degree() > 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            let term = match k {
                0 => format!("{a}"),
                1 if a == 1 => "t".to_string(),
                1 => format!("{a}t"),
                _ if a == 1 => format!("t^{k}"),
                _ => format!("{a}t^{k}"),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Generating function counting antichains by (number of short members,
/// number of long members).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(usize, usize), u64>,
}

impl BivariatePolynomial {
    pub fn from_counts(coeffs: BTreeMap<(usize, usize), u64>) -> BivariatePolynomial {
        let coeffs = coeffs.into_iter().filter(|&(_, c)| c != 0).collect();
        BivariatePolynomial { coeffs }
    }

    pub fn coefficient(&self, short: usize, long: usize) -> u64 {
        self.coeffs.get(&(short, long)).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.coeffs
    }

    /// Total mass, i.e. the evaluation at t = u = 1.
    pub fn eval_ones(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(&(k, m), &c)| serde_json::json!({ "short": k, "long": m, "count": c }))
            .collect();
        serde_json::Value::Array(rows)
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ordered by total degree, then short degree: 1 + 3t + 3u + tu.
        let mut terms: Vec<(&(usize, usize), &u64)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(&(k, m), _)| (k + m, m, k));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(k, m), &c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if c != 1 || (k == 0 && m == 0) {
                write!(f, "{c}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
            match m {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_roots_and_eval() {
        let p = IntPolynomial::from_roots(&[3, 5]);
        assert_eq!(p.coeffs, vec![15, -8, 1]);
        assert_eq!(p.eval(-1), 24);
        assert_eq!(p.eval(1), 8);
        assert_eq!(p.eval(3), 0);
    }

    #[test]
    fn factored_rendering() {
        let p = IntPolynomial::from_roots(&[3, 5]);
        assert_eq!(p.factored_string().unwrap(), "(t-3)(t-5)");
        assert_eq!(p.to_string(), "(t-3)(t-5)");
        let q = IntPolynomial::from_roots(&[0, 4]);
        assert_eq!(q.factored_string().unwrap(), "t(t-4)");
        let irred = IntPolynomial::new(vec![1, 1, 1]);
        assert!(irred.factored_string().is_none());
        assert_eq!(irred.to_string(), "t^2+t+1");
    }

    #[test]
    fn repeated_roots() {
        let p = IntPolynomial::from_roots(&[5, 5]);
        assert_eq!(p.coeffs, vec![25, -10, 1]);
        assert_eq!(p.integer_roots().unwrap(), vec![5, 5]);
        assert_eq!(p.to_string(), "(t-5)(t-5)");
    }

    #[test]
    fn bivariate_display() {
        let mut m = BTreeMap::new();
        m.insert((0, 0), 1);
        m.insert((1, 0), 3);
        m.insert((0, 1), 3);
        m.insert((1, 1), 1);
        let f = BivariatePolynomial::from_counts(m);
        assert_eq!(f.to_string(), "1+3t+3u+tu");
        assert_eq!(f.eval_ones(), 8);
    }
}
