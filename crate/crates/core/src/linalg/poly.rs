use std::fmt;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let f = &rem[top] * &lead_inv;
            if !f.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    rem[top - dd + k] -= &f * c;
                }
                quot[top - dd] = f;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(A)` by Horner's scheme.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Largest `k` with `λ^k` dividing `self`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `self / λ^k` where `k` is the multiplicity of the root `0`.
    pub fn strip_zero_roots(&self) -> Self {
        Self::new(self.coeffs[self.zero_root_multiplicity()..].to_vec())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", rational::format(&abs))?;
            }
            match k {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(λI − A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        m = a.mul(&m);
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let t = a.mul(&m).trace();
        coeffs[n - k] = -t / rational::int(k as i64);
    }
    Ok(Polynomial::new(coeffs))
}

/// `gcd(p, p′)` is constant.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_generator() {
        let j = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(char_poly(&j).unwrap(), Polynomial::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn zero_matrix() {
        let p = char_poly(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[0, 0, 0, 1]));
        assert_eq!(p.zero_root_multiplicity(), 3);
        assert!(char_poly(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn squarefree_cases() {
        let p = Polynomial::from_i64(&[1, 0, 1]);
        assert!(is_squarefree(&p).unwrap());
        assert!(!is_squarefree(&p.mul(&p)).unwrap());
        assert!(is_squarefree(&Polynomial::from_i64(&[5])).unwrap());
        assert_eq!(is_squarefree(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division() {
        let a = Polynomial::from_i64(&[-1, 0, 1]);
        let b = Polynomial::from_i64(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_i64(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Polynomial::from_i64(&[1, 1])), Polynomial::from_i64(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_i64(&[1, 0, -2, 0, 1]).to_string(), "λ^4 - 2λ^2 + 1");
        assert_eq!(Polynomial::from_i64(&[0, 3]).to_string(), "3λ");
    }
}
