//! Integer polynomials and truncated power series in one variable.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly::new(vec![1])
    }

    /// `a + b t`
    pub fn linear(a: i64, b: i64) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::new(Vec::new());
        }
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, c| acc * t + c)
    }

    /// Exact division by `t - r`; `None` if it leaves a remainder.
    pub fn div_by_root(&self, r: i64) -> Option<Poly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(self.clone());
        }
        let mut q = vec![0i64; n - 1];
        let mut carry = 0i64;
        for i in (0..n).rev() {
            let v = self.coeffs[i] + carry;
            if i == 0 {
                if v != 0 {
                    return None;
                }
            } else {
                q[i - 1] = v;
                carry = v * r;
            }
        }
        Some(Poly::new(q))
    }

    /// Exact division by `1 + t`.
    pub fn div_one_plus_t(&self) -> Option<Poly> {
        self.div_by_root(-1)
    }

    /// `t^deg p(-1/t)` for `deg >= degree(p)`.
    pub fn reciprocal_negated(&self, deg: usize) -> Poly {
        let mut c = vec![0i64; deg + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            assert!(j <= deg);
            c[deg - j] = if j % 2 == 1 { -a } else { *a };
        }
        Poly::new(c)
    }

    pub fn scale(&self, k: i64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Coefficients of `self / (1 - t)^n` up to `t^trunc`.
    pub fn over_one_minus_t_pow(&self, n: usize, trunc: usize) -> Vec<i64> {
        let mut s: Vec<i64> = (0..=trunc).map(|i| self.coeff(i)).collect();
        for _ in 0..n {
            for i in 1..=trunc {
                s[i] += s[i - 1];
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Poly::new(vec![2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(Poly::new(vec![-1, 0, 0, 1]).to_string(), "t^3 - 1");
        assert_eq!(Poly::new(vec![]).to_string(), "0");
    }

    #[test]
    fn expansions() {
        // (2 - t)/(1 - t)^2
        assert_eq!(Poly::new(vec![2, -1]).over_one_minus_t_pow(2, 4), vec![2, 3, 4, 5, 6]);
        // (3 - 3t + t^2)/(1 - t)^3
        assert_eq!(Poly::new(vec![3, -3, 1]).over_one_minus_t_pow(3, 4), vec![3, 6, 10, 15, 21]);
        assert_eq!(Poly::new(vec![1, -2, 1]).over_one_minus_t_pow(2, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn division() {
        let p = Poly::linear(1, 1).mul(&Poly::linear(1, 2));
        assert_eq!(p.div_one_plus_t(), Some(Poly::linear(1, 2)));
        assert_eq!(Poly::new(vec![1, 3, 3]).div_one_plus_t(), None);
        let chi = Poly::new(vec![3, -3, 1]).mul(&Poly::linear(-1, 1));
        assert_eq!(chi.div_by_root(1), Some(Poly::new(vec![3, -3, 1])));
    }

    #[test]
    fn reciprocal() {
        // pi = 1 + 3t + 2t^2 -> chi = t^2 - 3t + 2
        assert_eq!(Poly::new(vec![1, 3, 2]).reciprocal_negated(2), Poly::new(vec![2, -3, 1]));
    }
}
