//! Laurent polynomials in the single variable `p` with big-integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense Laurent polynomial `sum c_i p^(min + i)`.
///
/// Canonical form: the coefficient vector has no leading or trailing zeros and
/// the zero polynomial is `min = 0, coeffs = []`, so structural equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentP {
    min: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentP {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_parts(0, vec![c.into()])
    }

    /// `c * p^e`
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        Self::from_parts(e, vec![c.into()])
    }

    /// `p^e`
    pub fn p_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// The variable `p`.
    pub fn p() -> Self {
        Self::p_pow(1)
    }

    pub fn from_parts(min: i32, coeffs: Vec<BigInt>) -> Self {
        let mut out = LaurentP { min, coeffs };
        out.normalize();
        out
    }

    /// Builds from small integer coefficients, lowest power first.
    pub fn from_i64s(min: i32, coeffs: &[i64]) -> Self {
        Self::from_parts(min, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min += lead as i32;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Units of `Z[p, 1/p]` are exactly `±p^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].magnitude().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i32 {
        self.min
    }

    /// Highest exponent with a nonzero coefficient (`None` for zero).
    pub fn max_exp(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.min + self.coeffs.len() as i32 - 1)
        }
    }

    /// Coefficients from `p^min_exp()` upward.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let i = e - self.min;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs of the nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min + i as i32, c))
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentP {
            min: self.min + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn shift_in_place(&mut self, k: i32) {
        if !self.is_zero() {
            self.min += k;
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentP {
            min: self.min,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The substitution `p -> 1/p`.
    pub fn invert_p(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(max) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentP { min: -max, coeffs }
            }
        }
    }

    /// Substitute `p := value` in the ring of Laurent polynomials.
    /// Negative exponents require `value` to be a unit.
    pub fn substitute(&self, value: &LaurentP) -> Result<LaurentP> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Horner from the top, in terms of p^min * poly(p).
        let mut acc = LaurentP::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + &LaurentP::constant(c.clone());
        }
        let scale = if self.min >= 0 {
            value.pow(self.min as u32)
        } else {
            if !value.is_unit() {
                return Err(Error::Usage(format!(
                    "cannot substitute non-unit {value} into a negative power of p"
                )));
            }
            value.unit_inverse().pow((-self.min) as u32)
        };
        Ok(&acc * &scale)
    }

    /// Inverse of a unit `±p^k`; panics otherwise.
    pub fn unit_inverse(&self) -> LaurentP {
        assert!(self.is_unit(), "unit_inverse of non-unit {self}");
        LaurentP::monomial(self.coeffs[0].clone(), -self.min)
    }

    /// Evaluate at an integer point; `None` when a negative power is not integral.
    pub fn eval_int(&self, x: &BigInt) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.min >= 0 {
            Some(acc * num_traits::pow(x.clone(), self.min as usize))
        } else {
            let d = num_traits::pow(x.clone(), (-self.min) as usize);
            let (q, r) = acc.div_rem(&d);
            r.is_zero().then_some(q)
        }
    }

    /// Exact division in `Z[p, 1/p]`. Returns `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &LaurentP) -> Option<LaurentP> {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.is_monomial() {
            let d = &other.coeffs[0];
            let mut coeffs = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                coeffs.push(q);
            }
            return Some(LaurentP {
                min: self.min - other.min,
                coeffs,
            });
        }
        // Both are p^min * (poly with nonzero constant term); divide the polynomial parts.
        let q = poly_div_exact(&self.coeffs, &other.coeffs)?;
        Some(LaurentP::from_parts(self.min - other.min, q))
    }

    /// Total number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Canonical text form `[minexp; c0,c1,...]`.
    pub fn to_canonical(&self) -> String {
        let mut s = format!("[{};", self.min);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i == 0 {
                s.push(' ');
            } else {
                s.push(',');
            }
            s.push_str(&c.to_string());
        }
        s.push(']');
        s
    }

    /// `{"min": m, "coeffs": [..]}`; coefficients beyond `i64` become strings.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|v| match v.to_i64() {
                Some(x) => serde_json::json!(x),
                None => serde_json::json!(v.to_string()),
            })
            .collect();
        serde_json::json!({"min": self.min, "coeffs": coeffs})
    }

    pub fn parse_canonical(text: &str) -> Result<LaurentP> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("p-poly must be bracketed: {t:?}")))?;
        let (min, rest) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("p-poly missing ';': {t:?}")))?;
        let min: i32 = min
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad min exponent {min:?}: {e}")))?;
        let rest = rest.trim();
        let coeffs = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(format!("bad coefficient {c:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let out = LaurentP { min, coeffs };
        let mut check = out.clone();
        check.normalize();
        if check != out {
            return Err(Error::Parse(format!("p-poly not in canonical form: {t:?}")));
        }
        Ok(out)
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    fn add_scaled(&mut self, other: &LaurentP, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -other } else { other.clone() };
            return;
        }
        let lo = self.min.min(other.min);
        let hi = (self.min + self.coeffs.len() as i32).max(other.min + other.coeffs.len() as i32);
        if lo < self.min {
            let pad = (self.min - lo) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.min = lo;
        }
        let len = (hi - lo) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigInt::zero());
        }
        let off = (other.min - self.min) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[off + i] -= c;
            } else {
                self.coeffs[off + i] += c;
            }
        }
        self.normalize();
    }

    /// `self += a * b` without materializing the product.
    pub fn add_product(&mut self, a: &LaurentP, b: &LaurentP) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = a * b;
            return;
        }
        let lo = self.min.min(a.min + b.min);
        let hi = (self.min + self.coeffs.len() as i32)
            .max(a.min + b.min + (a.coeffs.len() + b.coeffs.len() - 1) as i32);
        if lo < self.min {
            let pad = (self.min - lo) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.min = lo;
        }
        let len = (hi - lo) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigInt::zero());
        }
        let off = (a.min + b.min - self.min) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    self.coeffs[off + i + j] += x * y;
                }
            }
        }
        self.normalize();
    }
}

/// Exact division of dense integer polynomials (lowest degree first).
/// `den` must have a nonzero constant term or be tested from the top; we divide
/// from the leading coefficient and require a zero remainder.
pub(crate) fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    if num.is_empty() {
        return Some(Vec::new());
    }
    if den.len() > num.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = num.to_vec();
    let dl = den.len();
    let lead = den.last().unwrap();
    let qlen = num.len() - dl + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + dl - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[k + j] -= &c * d;
            }
        }
        q[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

impl From<i64> for LaurentP {
    fn from(c: i64) -> Self {
        LaurentP::constant(c)
    }
}

impl From<BigInt> for LaurentP {
    fn from(c: BigInt) -> Self {
        LaurentP::constant(c)
    }
}

impl Add for &LaurentP {
    type Output = LaurentP;
    fn add(self, rhs: &LaurentP) -> LaurentP {
        let mut out = self.clone();
        out.add_scaled(rhs, false);
        out
    }
}

impl Sub for &LaurentP {
    type Output = LaurentP;
    fn sub(self, rhs: &LaurentP) -> LaurentP {
        let mut out = self.clone();
        out.add_scaled(rhs, true);
        out
    }
}

impl Add for LaurentP {
    type Output = LaurentP;
    fn add(mut self, rhs: LaurentP) -> LaurentP {
        self.add_scaled(&rhs, false);
        self
    }
}

impl Sub for LaurentP {
    type Output = LaurentP;
    fn sub(mut self, rhs: LaurentP) -> LaurentP {
        self.add_scaled(&rhs, true);
        self
    }
}

impl AddAssign<&LaurentP> for LaurentP {
    fn add_assign(&mut self, rhs: &LaurentP) {
        self.add_scaled(rhs, false);
    }
}

impl SubAssign<&LaurentP> for LaurentP {
    fn sub_assign(&mut self, rhs: &LaurentP) {
        self.add_scaled(rhs, true);
    }
}

impl Neg for &LaurentP {
    type Output = LaurentP;
    fn neg(self) -> LaurentP {
        LaurentP {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentP {
    type Output = LaurentP;
    fn neg(mut self) -> LaurentP {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &LaurentP {
    type Output = LaurentP;
    fn mul(self, rhs: &LaurentP) -> LaurentP {
        if self.is_zero() || rhs.is_zero() {
            return LaurentP::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentP::from_parts(self.min + rhs.min, coeffs)
    }
}

impl Mul for LaurentP {
    type Output = LaurentP;
    fn mul(self, rhs: LaurentP) -> LaurentP {
        &self * &rhs
    }
}

impl PartialOrd for LaurentP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order (used only for deterministic sorting).
impl Ord for LaurentP {
    fn cmp(&self, other: &Self) -> Ordering {
        self.min
            .cmp(&other.min)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for LaurentP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentP({self})")
    }
}

/// Human-readable form, highest power first: `3*p^4 - p + 2 - p^-1`.
impl fmt::Display for LaurentP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min + i as i32;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "p")?,
                (1, false) => write!(f, "{mag}*p")?,
                (_, true) => write!(f, "p^{e}")?,
                (_, false) => write!(f, "{mag}*p^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min: i32, c: &[i64]) -> LaurentP {
        LaurentP::from_i64s(min, c)
    }

    #[test]
    fn canonical_zero_and_trimming() {
        assert_eq!(lp(3, &[0, 0]), LaurentP::zero());
        assert_eq!(lp(-2, &[0, 1, 0]), LaurentP::p_pow(-1));
        assert!(LaurentP::zero().is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = lp(-1, &[1, 1]); // p^-1 + 1
        let b = lp(0, &[-1, 1]); // p - 1
        assert_eq!(&a * &b, lp(-1, &[-1, 0, 1]));
        assert_eq!(&a - &a, LaurentP::zero());
        assert_eq!(&a + &b, lp(-1, &[1, 0, 1]));
        assert_eq!(b.pow(2), lp(0, &[1, -2, 1]));
    }

    #[test]
    fn exact_division() {
        let num = lp(0, &[-1, 0, 1]); // p^2 - 1
        let den = lp(0, &[-1, 1]);
        assert_eq!(num.div_exact(&den), Some(lp(0, &[1, 1])));
        assert_eq!(lp(0, &[1, 1]).div_exact(&den), None);
        assert_eq!(
            lp(3, &[2]).div_exact(&lp(5, &[2])),
            Some(LaurentP::p_pow(-2))
        );
        assert_eq!(lp(0, &[3]).div_exact(&lp(0, &[2])), None);
    }

    #[test]
    fn invert_and_substitute() {
        let a = lp(-2, &[1, 0, 3]); // p^-2 + 3
        assert_eq!(a.invert_p(), lp(0, &[3, 0, 1]));
        let v = a.substitute(&LaurentP::p_pow(2)).unwrap();
        assert_eq!(v, lp(-4, &[1, 0, 0, 0, 3]));
        assert_eq!(
            lp(0, &[1, 1]).eval_int(&BigInt::from(2)),
            Some(BigInt::from(3))
        );
        assert_eq!(lp(-1, &[1]).eval_int(&BigInt::from(2)), None);
    }

    #[test]
    fn canonical_text_round_trip() {
        for a in [LaurentP::zero(), lp(-9, &[-1, 1]), lp(4, &[1, 0, 2])] {
            let t = a.to_canonical();
            assert_eq!(LaurentP::parse_canonical(&t).unwrap(), a, "{t}");
        }
        assert_eq!(lp(-9, &[-1, 1]).to_canonical(), "[-9; -1,1]");
        assert!(LaurentP::parse_canonical("[0; 0,1]").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lp(-9, &[-1, 1]).to_string(), "p^-8 - p^-9");
        assert_eq!(lp(0, &[2, -1, 3]).to_string(), "3*p^2 - p + 2");
        assert_eq!(LaurentP::p_pow(-3).to_string(), "p^-3");
    }

    #[test]
    fn add_product_matches_mul() {
        let a = lp(-1, &[1, 2]);
        let b = lp(2, &[3, 0, -1]);
        let mut acc = lp(0, &[5]);
        acc.add_product(&a, &b);
        assert_eq!(acc, &lp(0, &[5]) + &(&a * &b));
    }
}
