//! Reduced rational functions in `p` over the integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{poly_div_exact, LaurentP};

/// Dense integer polynomial helpers; coefficient vectors are lowest degree first.
mod zpoly {
    use super::*;

    pub fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn content(v: &[BigInt]) -> BigInt {
        v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] += y;
        }
        trim(out)
    }

    pub fn scale_div(v: &[BigInt], d: &BigInt) -> Vec<BigInt> {
        v.iter().map(|c| c / d).collect()
    }

    /// Pseudo-remainder of `a` by `b` (deg a >= deg b).
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            let shift = dr - db;
            for (j, y) in b.iter().enumerate() {
                r[shift + j] -= &lr * y;
            }
            r = trim(r);
        }
        r
    }

    /// Greatest common divisor in `Z[p]`, positive leading coefficient.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() {
            return normalize_sign(primitive_scaled(b, content(b)));
        }
        if b.is_empty() {
            return normalize_sign(primitive_scaled(a, content(a)));
        }
        let ca = content(a);
        let cb = content(b);
        let g = ca.gcd(&cb);
        let mut x = primitive_scaled(a, ca);
        let mut y = primitive_scaled(b, cb);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = prem(&x, &y);
            x = y;
            y = if r.is_empty() {
                r
            } else {
                let c = content(&r);
                primitive_scaled(&r, c)
            };
        }
        let x = normalize_sign(x);
        x.iter().map(|c| c * &g).collect()
    }

    fn primitive_scaled(v: &[BigInt], c: BigInt) -> Vec<BigInt> {
        if c.is_zero() || c.is_one() {
            v.to_vec()
        } else {
            scale_div(v, &c)
        }
    }

    pub fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
        if v.last().is_some_and(|c| c.is_negative()) {
            v.into_iter().map(|c| -c).collect()
        } else {
            v
        }
    }
}

/// `numerator / denominator` with integer polynomial parts, always reduced:
/// gcd 1 (including integer content), positive leading denominator coefficient,
/// and zero represented as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFnP {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl RatFnP {
    pub fn zero() -> Self {
        RatFnP {
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()], vec![BigInt::one()])
    }

    /// The variable `p`.
    pub fn p() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()], vec![BigInt::one()])
    }

    /// Builds `num / den` from coefficient vectors (lowest degree first).
    pub fn new(num: Vec<BigInt>, den: Vec<BigInt>) -> Self {
        let num = zpoly::trim(num);
        let den = zpoly::trim(den);
        assert!(!den.is_empty(), "RatFnP with zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let g = zpoly::gcd(&num, &den);
        let mut num = poly_div_exact(&num, &g).expect("gcd divides numerator");
        let mut den = poly_div_exact(&den, &g).expect("gcd divides denominator");
        if den.last().unwrap().is_negative() {
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
            den.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        RatFnP {
            num: zpoly::trim(num),
            den: zpoly::trim(den),
        }
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Self {
        Self::new(
            num.iter().map(|&c| BigInt::from(c)).collect(),
            den.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// True when the value lies in `Z[p, 1/p]`.
    pub fn is_laurent(&self) -> bool {
        !self.den.is_empty()
            && self.den[..self.den.len() - 1].iter().all(|c| c.is_zero())
            && self.den.last().unwrap().is_one()
    }

    /// True when the denominator is exactly 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1 && self.den[0].is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentP> {
        if !self.is_laurent() {
            return None;
        }
        let shift = (self.den.len() - 1) as i32;
        Some(LaurentP::from_parts(-shift, self.num.clone()))
    }

    pub fn from_laurent(l: &LaurentP) -> Self {
        if l.is_zero() {
            return Self::zero();
        }
        let min = l.min_exp();
        if min >= 0 {
            let mut num = vec![BigInt::zero(); min as usize];
            num.extend(l.coeffs().iter().cloned());
            Self::new(num, vec![BigInt::one()])
        } else {
            let mut den = vec![BigInt::zero(); (-min) as usize];
            den.push(BigInt::one());
            Self::new(l.coeffs().to_vec(), den)
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluate at an integer point where the denominator does not vanish.
    pub fn eval_int(&self, x: &BigInt) -> Option<(BigInt, BigInt)> {
        let ev = |v: &[BigInt]| v.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
        let n = ev(&self.num);
        let d = ev(&self.den);
        if d.is_zero() {
            return None;
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }
}

impl Add for &RatFnP {
    type Output = RatFnP;
    fn add(self, rhs: &RatFnP) -> RatFnP {
        if self.den == rhs.den {
            return RatFnP::new(zpoly::add(&self.num, &rhs.num), self.den.clone());
        }
        RatFnP::new(
            zpoly::add(
                &zpoly::mul(&self.num, &rhs.den),
                &zpoly::mul(&rhs.num, &self.den),
            ),
            zpoly::mul(&self.den, &rhs.den),
        )
    }
}

impl Neg for &RatFnP {
    type Output = RatFnP;
    fn neg(self) -> RatFnP {
        RatFnP {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFnP {
    type Output = RatFnP;
    fn sub(self, rhs: &RatFnP) -> RatFnP {
        self + &(-rhs)
    }
}

impl Mul for &RatFnP {
    type Output = RatFnP;
    fn mul(self, rhs: &RatFnP) -> RatFnP {
        RatFnP::new(
            zpoly::mul(&self.num, &rhs.num),
            zpoly::mul(&self.den, &rhs.den),
        )
    }
}

impl Div for &RatFnP {
    type Output = RatFnP;
    fn div(self, rhs: &RatFnP) -> RatFnP {
        assert!(!rhs.is_zero(), "RatFnP division by zero");
        RatFnP::new(
            zpoly::mul(&self.num, &rhs.den),
            zpoly::mul(&self.den, &rhs.num),
        )
    }
}

fn fmt_poly(v: &[BigInt]) -> String {
    LaurentP::from_parts(0, v.to_vec()).to_string()
}

impl fmt::Display for RatFnP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

impl fmt::Debug for RatFnP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFnP({self})")
    }
}
