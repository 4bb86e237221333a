//! Multivariate polynomials with explicit term lists, plus a small parser
//! for CLI input like `"x^2 - 0.5*x + 1"` or `"x0*x1^2"`.

use crate::{Error, Result};

/// A polynomial Σ c · x^α with multi-index exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("polynomial dim must be >= 1".into()));
        }
        for (c, e) in &terms {
            if !c.is_finite() {
                return Err(Error::InvalidParameter("non-finite coefficient".into()));
            }
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.len(),
                });
            }
        }
        Ok(Polynomial { dim, terms })
    }

    /// The constant polynomial c.
    pub fn constant(dim: usize, c: f64) -> Self {
        Polynomial {
            dim,
            terms: vec![(c, vec![0; dim])],
        }
    }

    /// The monomial x_axis^k.
    pub fn monomial(dim: usize, axis: usize, k: u32) -> Self {
        let mut e = vec![0; dim];
        e[axis] = k;
        Polynomial {
            dim,
            terms: vec![(1.0, e)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(c, e)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&k, &xi)| xi.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Parse expressions like `"2*x^3 - x + 1"` (vars `x` in dimension one,
    /// `x0`, `x1`, `x2` otherwise).
    pub fn parse(input: &str, dim: usize) -> Result<Self> {
        let cleaned: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Spec("empty polynomial".into()));
        }
        // split into signed terms at top-level + / -
        let mut terms: Vec<(f64, Vec<u32>)> = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut start = 0;
        let mut idx = 0;
        let mut chunks: Vec<&str> = Vec::new();
        while idx < bytes.len() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && idx > 0 {
                let prev = bytes[idx - 1] as char;
                // not part of an exponent like "e-3"
                if prev != 'e' && prev != 'E' && prev != '^' && prev != '*' {
                    chunks.push(&cleaned[start..idx]);
                    start = idx;
                }
            }
            idx += 1;
        }
        chunks.push(&cleaned[start..]);
        for chunk in chunks {
            if chunk.is_empty() {
                continue;
            }
            terms.push(Self::parse_term(chunk, dim)?);
        }
        Polynomial::new(dim, terms)
    }

    fn parse_term(term: &str, dim: usize) -> Result<(f64, Vec<u32>)> {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1.0, rest),
            None => (1.0, term.strip_prefix('+').unwrap_or(term)),
        };
        let mut coeff = sign;
        let mut expo = vec![0u32; dim];
        if body.is_empty() {
            return Err(Error::Spec(format!("empty term in polynomial: {term:?}")));
        }
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Spec(format!("bad factor in term {term:?}")));
            }
            if factor.starts_with('x') {
                let (axis, pow_part) = Self::parse_var(factor, dim)?;
                let k = match pow_part {
                    Some(p) => p
                        .parse::<u32>()
                        .map_err(|_| Error::Spec(format!("bad exponent in {factor:?}")))?,
                    None => 1,
                };
                expo[axis] += k;
            } else {
                let v: f64 = factor
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad coefficient {factor:?}")))?;
                coeff *= v;
            }
        }
        Ok((coeff, expo))
    }

    fn parse_var(factor: &str, dim: usize) -> Result<(usize, Option<&str>)> {
        let (var, pow) = match factor.find('^') {
            Some(i) => (&factor[..i], Some(&factor[i + 1..])),
            None => (factor, None),
        };
        let axis = if var == "x" {
            0
        } else {
            var[1..]
                .parse::<usize>()
                .map_err(|_| Error::Spec(format!("unknown variable {var:?}")))?
        };
        if axis >= dim {
            return Err(Error::Spec(format!(
                "variable {var:?} out of range for dimension {dim}"
            )));
        }
        Ok((axis, pow))
    }
}
