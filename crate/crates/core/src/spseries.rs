//! The `Sp_n` side: images of the Hecke generators, the truncated numerator
//! sum, the subset products giving the images of `F(X)` and `E(X)`, and the
//! direct coefficients of the image of `D(X)`.
//!
//! The variable `x_0` is never stored: in every series built here its degree
//! equals the degree in `X`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::glhecke::{lp, DeltaTuple, OmegaTable, PiLabel};
use crate::kernel::{
    check_arity, sym_from_multi, sym_mul, Exps, LaurentP, MultiPoly, SymPoly, MAX_VARS,
};

/// A generator of the Hecke ring of `Sp_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    /// `T(p)`
    T,
    /// `T_i(p^2)`, `1 <= i <= n - 1`
    Ti(usize),
    /// `[p] = T_n(p^2)`
    Scalar,
}

impl Generator {
    /// All `n + 1` generators in the order `T, T_1, .., T_{n-1}, [p]`.
    pub fn all(n: usize) -> Vec<Generator> {
        let mut v = vec![Generator::T];
        v.extend((1..n).map(Generator::Ti));
        v.push(Generator::Scalar);
        v
    }

    /// Position in a monomial exponent vector `(a, b_1, .., b_{n-1}, e)`.
    pub fn index(&self, n: usize) -> usize {
        match *self {
            Generator::T => 0,
            Generator::Ti(i) => i,
            Generator::Scalar => n,
        }
    }

    pub fn x0_degree(&self) -> u32 {
        match self {
            Generator::T => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T => write!(f, "T(p)"),
            Generator::Ti(i) => write!(f, "T{i}(p^2)"),
            Generator::Scalar => write!(f, "[p]"),
        }
    }
}

/// Spherical image of one generator, with `x_0^{x0_degree}` implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorImage {
    pub generator: Generator,
    pub x0_degree: u32,
    pub image: SymPoly,
}

/// `Omega(T(p)) = x_0 prod (1 + x_i)` and
/// `Omega(T_i(p^2)) = sum_{a >= i, a + b <= n} p^{b(a+b+1)} l_p(a-i, a) x_0^2 omega(pi_{a,b})`.
pub fn generator_images(n: usize, omegas: &OmegaTable) -> Result<Vec<GeneratorImage>> {
    check_arity(n)?;
    let mut out = Vec::with_capacity(n + 1);
    for g in Generator::all(n) {
        let image = match g {
            Generator::T => {
                let mut s = SymPoly::zero(n);
                for k in 0..=n {
                    s = &s + &SymPoly::elementary(n, k);
                }
                s
            }
            Generator::Ti(i) => t_square_image(n, i, omegas)?,
            Generator::Scalar => t_square_image(n, n, omegas)?,
        };
        out.push(GeneratorImage {
            generator: g,
            x0_degree: g.x0_degree(),
            image,
        });
    }
    Ok(out)
}

fn t_square_image(n: usize, i: usize, omegas: &OmegaTable) -> Result<SymPoly> {
    let mut acc = SymPoly::zero(n);
    for a in i..=n {
        for b in 0..=(n - a) {
            let w = omegas.get(&PiLabel::new(n, a, b)?.delta())?;
            let c = lp(a - i, a)?.shift((b * (a + b + 1)) as i32);
            acc = &acc + &w.scale(&c);
        }
    }
    Ok(acc)
}

/// Truncated power series in `X` with symmetric coefficients; coefficient `k`
/// carries an implicit `x_0^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymSeries {
    n: usize,
    coeffs: Vec<SymPoly>,
}

impl SymSeries {
    pub fn zero(n: usize, bound: usize) -> Self {
        SymSeries {
            n,
            coeffs: vec![SymPoly::zero(n); bound + 1],
        }
    }

    pub fn one(n: usize, bound: usize) -> Self {
        let mut s = Self::zero(n, bound);
        s.coeffs[0] = SymPoly::one(n);
        s
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<SymPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("series needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(Error::ArityMismatch {
                left: n,
                right: c.nvars(),
            });
        }
        Ok(SymSeries { n, coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Truncation bound: the largest stored `X`-degree.
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &SymPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    /// Largest `k` with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, bound: usize) -> SymSeries {
        let mut coeffs: Vec<SymPoly> = self.coeffs.iter().take(bound + 1).cloned().collect();
        coeffs.resize(bound + 1, SymPoly::zero(self.n));
        SymSeries { n: self.n, coeffs }
    }

    /// Product truncated at `bound`. Output degrees are computed in parallel,
    /// each summed in fixed index order.
    pub fn mul_truncated(&self, other: &SymSeries, bound: usize) -> Result<SymSeries> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let coeffs = (0..=bound)
            .into_par_iter()
            .map(|k| {
                let mut acc = SymPoly::zero(self.n);
                for i in 0..=k.min(self.bound()) {
                    let j = k - i;
                    if j > other.bound() || self.coeffs[i].is_zero() || other.coeffs[j].is_zero() {
                        continue;
                    }
                    acc = &acc + &sym_mul(&self.coeffs[i], &other.coeffs[j])?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymSeries { n: self.n, coeffs })
    }

    /// Multiplicative inverse up to `bound`; the constant term must be 1.
    pub fn inverse(&self, bound: usize) -> Result<SymSeries> {
        if self.coeffs[0] != SymPoly::one(self.n) {
            return Err(Error::Usage("series inverse needs constant term 1".into()));
        }
        let mut inv = vec![SymPoly::one(self.n)];
        for k in 1..=bound {
            let mut acc = SymPoly::zero(self.n);
            for i in 1..=k.min(self.bound()) {
                if !self.coeffs[i].is_zero() {
                    acc = &acc - &sym_mul(&self.coeffs[i], &inv[k - i])?;
                }
            }
            inv.push(acc);
        }
        Ok(SymSeries {
            n: self.n,
            coeffs: inv,
        })
    }

    /// Multiplies by `1 / (1 - c X)` up to the current bound.
    pub fn div_geometric(&self, c: &SymPoly) -> Result<SymSeries> {
        let mut out = self.coeffs.clone();
        for k in 1..out.len() {
            let carry = sym_mul(&out[k - 1], c)?;
            out[k] = &out[k] + &carry;
        }
        Ok(SymSeries {
            n: self.n,
            coeffs: out,
        })
    }

    /// Text form: a header line, then per `X`-degree a `# X^k` line followed
    /// by the canonical lines of the coefficient.
    pub fn to_canonical(&self) -> String {
        let mut s = format!("series n={} bound={}\n", self.n, self.bound());
        for (k, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("# X^{k}\n"));
            s.push_str(&c.to_canonical());
        }
        s
    }

    pub fn parse_canonical(text: &str) -> Result<SymSeries> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty series text".into()))?;
        let bad = || Error::Parse(format!("bad series header {header:?}"));
        let mut fields = header.split_whitespace();
        if fields.next() != Some("series") {
            return Err(bad());
        }
        let n: usize = fields
            .next()
            .and_then(|f| f.strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let bound: usize = fields
            .next()
            .and_then(|f| f.strip_prefix("bound="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let mut blocks: Vec<String> = Vec::new();
        for line in lines {
            if let Some(k) = line.strip_prefix("# X^") {
                if k.parse::<usize>().ok() != Some(blocks.len()) {
                    return Err(Error::Parse(format!("unexpected block {line:?}")));
                }
                blocks.push(String::new());
            } else {
                let b = blocks
                    .last_mut()
                    .ok_or_else(|| Error::Parse("term before first block".into()))?;
                b.push_str(line);
                b.push('\n');
            }
        }
        if blocks.len() != bound + 1 {
            return Err(Error::Parse(format!(
                "expected {} blocks, found {}",
                bound + 1,
                blocks.len()
            )));
        }
        let coeffs = blocks
            .iter()
            .map(|b| SymPoly::parse_canonical(n, b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(n, coeffs)
    }
}

impl std::ops::Sub for &SymSeries {
    type Output = SymSeries;
    fn sub(self, rhs: &SymSeries) -> SymSeries {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = SymPoly::zero(self.n);
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = rhs.coeffs.get(k).unwrap_or(&zero);
                a - b
            })
            .collect();
        SymSeries { n: self.n, coeffs }
    }
}

impl fmt::Debug for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical())
    }
}

/// `sum over primitive delta with delta_n = k` of `p^{weight(delta)} omega(t(p^delta))`
/// at `X^k`, for `k <= bound`.
pub fn numerator_sum(n: usize, bound: usize, omegas: &OmegaTable) -> Result<SymSeries> {
    check_arity(n)?;
    let tuples = DeltaTuple::primitive_bounded(n, bound as u16);
    omegas.fill(&tuples)?;
    let mut out = SymSeries::zero(n, bound);
    for d in &tuples {
        let k = d.deltas()[n - 1] as usize;
        let w = omegas.get(d)?.scale(&LaurentP::p_pow(d.weight() as i32));
        out.coeffs[k] = &out.coeffs[k] + &w;
    }
    Ok(out)
}

/// `prod_{|S| = size} (1 - x_S X)` truncated at `bound`.
pub fn subset_product(n: usize, size: usize, bound: usize) -> Result<SymSeries> {
    check_arity(n)?;
    let mut series: Vec<MultiPoly> = vec![MultiPoly::zero(n); bound + 1];
    series[0] = MultiPoly::one(n);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let mut e: Exps = [0; MAX_VARS];
        for (i, x) in e.iter_mut().enumerate().take(n) {
            *x = ((mask >> i) & 1) as u16;
        }
        let xs = MultiPoly::term(n, e, LaurentP::one());
        for k in (1..=bound).rev() {
            if series[k - 1].is_zero() {
                continue;
            }
            let t = &series[k - 1] * &xs;
            series[k] = &series[k] - &t;
        }
    }
    let coeffs = series
        .iter()
        .map(sym_from_multi)
        .collect::<Result<Vec<_>>>()?;
    SymSeries::from_coeffs(n, coeffs)
}

/// Image of `F(X)`: `prod_{S subset of {1..n}} (1 - x_0 x_S X)`, degree `2^n`.
pub fn f_image(n: usize) -> Result<SymSeries> {
    check_arity(n)?;
    let bound = 1usize << n;
    let mut acc = SymSeries::one(n, bound);
    for size in 0..=n {
        acc = acc.mul_truncated(&subset_product(n, size, bound)?, bound)?;
    }
    Ok(acc)
}

/// Image of `E(X)`: the numerator sum times the `2^n - 2` subset factors other
/// than `S = {}` and `S = {1..n}`, truncated at `2^n - 2`.
pub fn e_image(n: usize, omegas: &OmegaTable) -> Result<SymSeries> {
    e_image_to(n, (1usize << n) - 2, omegas)
}

/// [`e_image`] truncated at `bound`.
pub fn e_image_to(n: usize, bound: usize, omegas: &OmegaTable) -> Result<SymSeries> {
    let mut acc = numerator_sum(n, bound, omegas)?;
    for size in 1..n {
        acc = acc.mul_truncated(&subset_product(n, size, bound)?, bound)?;
    }
    Ok(acc)
}

/// `Omega(T(p^k))` with `x_0^k` implicit, summed directly over all tuples
/// `0 <= delta_1 <= .. <= delta_n <= k`.
pub fn d_coefficient_direct(n: usize, k: usize, omegas: &OmegaTable) -> Result<SymPoly> {
    check_arity(n)?;
    let tuples = DeltaTuple::all_bounded(n, k as u16);
    omegas.fill(&tuples)?;
    let mut acc = SymPoly::zero(n);
    for d in &tuples {
        let w = omegas.get(d)?.scale(&LaurentP::p_pow(d.weight() as i32));
        acc = &acc + &w;
    }
    Ok(acc)
}

/// Image of `D(X)` as `numerator_sum / ((1 - X)(1 - x_1..x_n X))` up to `bound`.
pub fn d_geometric(n: usize, bound: usize, omegas: &OmegaTable) -> Result<SymSeries> {
    numerator_sum(n, bound, omegas)?
        .div_geometric(&SymPoly::one(n))?
        .div_geometric(&SymPoly::elementary(n, n))
}

/// Image of `D(X)` as `Omega(E) * Omega(F)^{-1}` up to `bound`.
pub fn d_quotient(e: &SymSeries, f: &SymSeries, bound: usize) -> Result<SymSeries> {
    e.mul_truncated(&f.inverse(bound)?, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym4(parts: &[u16]) -> SymPoly {
        SymPoly::sym(4, parts)
    }

    fn sum(v: &[SymPoly]) -> SymPoly {
        v.iter().fold(SymPoly::zero(v[0].nvars()), |a, b| &a + b)
    }

    #[test]
    fn generator_order_and_degrees() {
        let g = Generator::all(4);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0].x0_degree(), 1);
        assert_eq!(g[4], Generator::Scalar);
        assert_eq!(Generator::Ti(2).index(4), 2);
        assert_eq!(Generator::Scalar.index(4), 4);
    }

    #[test]
    fn t3_and_scalar_images_n4() {
        let table = OmegaTable::new();
        let imgs = generator_images(4, &table).unwrap();
        let t3 = &sum(&[
            sym4(&[1, 1, 1, 1]).scale(&LaurentP::from_i64s(0, &[-1, 0, 0, 0, 1])),
            sym4(&[2, 1, 1, 1]).scale(&LaurentP::p_pow(4)),
            sym4(&[1, 1, 1]).scale(&LaurentP::p_pow(4)),
        ])
        .scale(&LaurentP::p_pow(-10));
        assert_eq!(imgs[3].image, *t3);
        assert_eq!(
            imgs[4].image,
            sym4(&[1, 1, 1, 1]).scale(&LaurentP::p_pow(-10))
        );
    }

    #[test]
    fn scalar_image_n3() {
        let imgs = generator_images(3, &OmegaTable::new()).unwrap();
        assert_eq!(
            imgs[3].image,
            SymPoly::sym(3, &[1, 1, 1]).scale(&LaurentP::p_pow(-6))
        );
    }

    #[test]
    fn numerator_low_coefficients() {
        let table = OmegaTable::new();
        let s = numerator_sum(4, 2, &table).unwrap();
        assert_eq!(*s.coeff(0), SymPoly::one(4));
        assert_eq!(
            *s.coeff(1),
            sum(&[sym4(&[1]), sym4(&[1, 1]), sym4(&[1, 1, 1])])
        );
    }

    #[test]
    fn f_image_ends() {
        let f = f_image(3).unwrap();
        assert_eq!(f.degree(), Some(8));
        let t = sum(&(0..=3)
            .map(|k| SymPoly::elementary(3, k))
            .collect::<Vec<_>>());
        assert_eq!(*f.coeff(1), -&t);
        assert_eq!(*f.coeff(8), SymPoly::sym(3, &[4, 4, 4]));
    }

    #[test]
    fn series_inverse_round_trip() {
        let f = f_image(2).unwrap();
        let prod = f.mul_truncated(&f.inverse(6).unwrap(), 6).unwrap();
        assert_eq!(prod, SymSeries::one(2, 6));
    }

    #[test]
    fn canonical_round_trip() {
        let f = f_image(2).unwrap();
        let text = f.to_canonical();
        assert_eq!(SymSeries::parse_canonical(&text).unwrap(), f);
    }

    #[test]
    fn e_image_genus_one_and_two() {
        let table = OmegaTable::new();
        let e1 = e_image(1, &table).unwrap();
        assert_eq!(e1, SymSeries::one(1, 0));
        let e2 = e_image(2, &table).unwrap();
        assert_eq!(e2.bound(), 2);
        assert!(e2.coeff(1).is_zero());
        // Omega(1 - p^2 [p] X^2) = 1 - p^{-1} x_1 x_2 X^2
        assert_eq!(
            *e2.coeff(2),
            SymPoly::sym(2, &[1, 1]).scale(&LaurentP::monomial(-1, -1))
        );
    }
}
