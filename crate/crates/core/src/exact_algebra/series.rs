use num_traits::{One, Zero};

use super::poly::PolyQ;
use super::rat::{render_rat, Rat};
use super::AlgebraError;

/// Order used for series that are exact (finite Laurent polynomials).
const EXACT_ORDER: i64 = i64::MAX / 4;

/// Truncated Laurent series with exact rational coefficients:
/// `sum coeffs[i] * z^(base + i) + O(z^order)`.
///
/// Stored in canonical form: no zero coefficient at either end, and a
/// zero series has `base == order` with no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesQ {
    base: i64,
    coeffs: Vec<Rat>,
    order: i64,
}

impl SeriesQ {
    pub fn new(base: i64, mut coeffs: Vec<Rat>, order: i64) -> Self {
        let keep = (order - base).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = SeriesQ { base, coeffs, order };
        s.canonicalize();
        s
    }

    /// The zero series known modulo `z^order`.
    pub fn zero(order: i64) -> Self {
        SeriesQ {
            base: order,
            coeffs: Vec::new(),
            order,
        }
    }

    /// Exact Laurent polynomial `p(z) * z^shift`.
    pub fn from_poly(p: &PolyQ, shift: i64) -> Self {
        Self::new(shift, p.coeffs().to_vec(), EXACT_ORDER)
    }

    pub fn monomial(c: Rat, exp: i64) -> Self {
        Self::new(exp, vec![c], EXACT_ORDER)
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.base += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.base = self.order;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT_ORDER / 2
    }

    /// Lowest exponent with a nonzero coefficient, or the order if none is
    /// known (the true valuation is then at least the order).
    pub fn valuation(&self) -> i64 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        if exp < self.base {
            return Rat::zero();
        }
        self.coeffs
            .get((exp - self.base) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.base + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self::new(self.base, self.coeffs.clone(), order)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() && other.is_zero() {
            return Self::zero(order);
        }
        let lo = if self.is_zero() {
            other.base
        } else if other.is_zero() {
            self.base
        } else {
            self.base.min(other.base)
        };
        if lo >= order {
            return Self::zero(order);
        }
        let len = (order - lo) as usize;
        let hi = (self.base + self.coeffs.len() as i64)
            .max(other.base + other.coeffs.len() as i64)
            .min(order);
        let len = len.min((hi - lo).max(0) as usize);
        let mut out = vec![Rat::zero(); len];
        for (e, c) in self.terms() {
            if e < lo + len as i64 {
                out[(e - lo) as usize] += c;
            }
        }
        for (e, c) in other.terms() {
            if e < lo + len as i64 {
                if negate {
                    out[(e - lo) as usize] -= c;
                } else {
                    out[(e - lo) as usize] += c;
                }
            }
        }
        Self::new(lo, out, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Cauchy product. The result is valid modulo
    /// `z^min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self
            .order
            .saturating_add(other.base)
            .min(other.order.saturating_add(self.base))
            .min(EXACT_ORDER);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let lowest = self.base + other.base;
        let len = (order - lowest).max(0) as usize;
        let len = len.min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(lowest, out, order)
    }

    /// Fails when the series is not known up to (excluding) `z^needed`.
    pub fn ensure_order(&self, needed: i64) -> Result<&Self, AlgebraError> {
        if self.order < needed {
            return Err(AlgebraError::TruncationTooShort {
                order: self.order,
                lowest: needed,
            });
        }
        Ok(self)
    }

    /// Multiplies by `z^k`; both the exponents and the order move by `k`.
    pub fn shift(&self, k: i64) -> Self {
        SeriesQ {
            base: self.base + k,
            coeffs: self.coeffs.clone(),
            order: if self.is_exact() { self.order } else { self.order + k },
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        SeriesQ {
            base: self.base,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Formal derivative; loses one order.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_integer((self.base + i as i64).into()))
            .collect();
        let order = if self.is_exact() { self.order } else { self.order - 1 };
        Self::new(self.base - 1, coeffs, order)
    }

    /// Human-readable rendering, e.g. `z - 1/6*z^3 + O(z^5)`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let neg = c < &Rat::zero();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if neg { -c } else { c.clone() };
            let v = match e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if v.is_empty() {
                out.push_str(&render_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&v);
            } else {
                out.push_str(&format!("{}*{}", render_rat(&mag), v));
            }
        }
        if !self.is_exact() {
            if out.is_empty() {
                out.push_str(&format!("O({var}^{})", self.order));
            } else {
                out.push_str(&format!(" + O({var}^{})", self.order));
            }
        } else if out.is_empty() {
            out.push('0');
        }
        out
    }
}
