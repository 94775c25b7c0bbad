//! From spherical images back to Hecke coordinates: monomials in the
//! generators, their images, and exact solving for the coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{sym_mul, LaurentP, Partition, RatFnP, SymPoly};
use crate::spseries::{Generator, GeneratorImage};

/// `T(p)^a T_1(p^2)^{b_1} .. T_{n-1}(p^2)^{b_{n-1}} [p]^e`, stored as
/// `(a, b_1, .., b_{n-1}, e)`.
///
/// Ordered graded-lexicographically: `x_0`-degree first, then the exponent
/// vector lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenMonomial {
    exps: Vec<u32>,
}

impl GenMonomial {
    pub fn one(n: usize) -> Self {
        GenMonomial {
            exps: vec![0; n + 1],
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() < 2 {
            return Err(Error::Usage(format!(
                "monomial exponent vector {exps:?} needs at least 2 entries"
            )));
        }
        Ok(GenMonomial {
            exps: exps.to_vec(),
        })
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let mut m = Self::one(n);
        m.exps[g.index(n)] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn x0_degree(&self) -> u32 {
        self.exps[0] + 2 * self.exps[1..].iter().sum::<u32>()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &GenMonomial) -> GenMonomial {
        assert_eq!(self.exps.len(), other.exps.len(), "genus mismatch");
        GenMonomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Power of `[p]`.
    pub fn scalar_power(&self) -> u32 {
        self.exps[self.n()]
    }

    pub fn with_scalar_power(&self, e: u32) -> GenMonomial {
        let mut m = self.clone();
        let n = m.n();
        m.exps[n] = e;
        m
    }
}

impl Ord for GenMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x0_degree()
            .cmp(&other.x0_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for GenMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `T^2*T3*[p]`, or `1` for the empty product.
impl fmt::Display for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = match i {
                0 => "T".to_string(),
                i if i == n => "[p]".to_string(),
                i => format!("T{i}"),
            };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// All monomials of `x_0`-degree `k`, in ascending order.
pub fn enumerate_monomials(n: usize, k: u32) -> Vec<GenMonomial> {
    let mut out = Vec::new();
    let mut rest = vec![0u32; n];
    fn fill(pos: usize, left: u32, rest: &mut Vec<u32>, a: u32, out: &mut Vec<GenMonomial>) {
        if pos == rest.len() - 1 {
            rest[pos] = left;
            let mut exps = vec![a];
            exps.extend_from_slice(rest);
            out.push(GenMonomial { exps });
            return;
        }
        for v in 0..=left {
            rest[pos] = v;
            fill(pos + 1, left - v, rest, a, out);
        }
    }
    for a in (k % 2..=k).step_by(2) {
        fill(0, (k - a) / 2, &mut rest, a, &mut out);
    }
    out.sort();
    out
}

/// Polynomial in the Hecke generators with Laurent coefficients in `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckePoly {
    n: usize,
    terms: BTreeMap<GenMonomial, LaurentP>,
}

impl HeckePoly {
    pub fn zero(n: usize) -> Self {
        HeckePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::term(GenMonomial::one(n), LaurentP::one())
    }

    pub fn term(m: GenMonomial, c: LaurentP) -> Self {
        let mut h = Self::zero(m.n());
        h.add_term(m, &c);
        h
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        Self::term(GenMonomial::generator(n, g), LaurentP::one())
    }

    pub fn constant(n: usize, c: LaurentP) -> Self {
        Self::term(GenMonomial::one(n), c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&GenMonomial, &LaurentP)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &GenMonomial) -> LaurentP {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: GenMonomial, c: &LaurentP) {
        assert_eq!(m.n(), self.n, "genus mismatch");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &LaurentP) -> HeckePoly {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> HeckePoly {
        (0..e).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Distinct `x_0`-degrees of the monomials present.
    pub fn x0_degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.x0_degree()).collect()
    }

    /// Spherical image, with `x_0^k` implicit; fails if the terms are not all
    /// of one `x_0`-degree.
    pub fn image(&self, table: &ImageTable) -> Result<SymPoly> {
        if self.x0_degrees().len() > 1 {
            return Err(Error::Usage(format!(
                "mixed x0-degrees {:?} in {self}",
                self.x0_degrees()
            )));
        }
        let mut acc = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            acc = &acc + &table.image(m)?.scale(c);
        }
        Ok(acc)
    }

    /// One term per line, graded-lex descending: `a,b1,..,e -> [min; c..]`.
    pub fn to_canonical(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let ex: Vec<String> = m.exps.iter().map(|e| e.to_string()).collect();
            s.push_str(&ex.join(","));
            s.push_str(" -> ");
            s.push_str(&c.to_canonical());
            s.push('\n');
        }
        s
    }

    pub fn parse_canonical(n: usize, text: &str) -> Result<HeckePoly> {
        let mut out = Self::zero(n);
        let mut prev: Option<GenMonomial> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("missing '->' in {line:?}")))?;
            let exps = lhs
                .trim()
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad exponent {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != n + 1 {
                return Err(Error::Parse(format!(
                    "monomial {lhs:?} does not have {} exponents",
                    n + 1
                )));
            }
            let m = GenMonomial { exps };
            if prev.as_ref().is_some_and(|p| *p <= m) {
                return Err(Error::Parse(format!(
                    "terms out of canonical order at {line:?}"
                )));
            }
            let c = LaurentP::parse_canonical(rhs)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient in {line:?}")));
            }
            prev = Some(m.clone());
            out.terms.insert(m, c);
        }
        Ok(out)
    }

    /// JSON mirror of [`HeckePoly::to_canonical`], terms in the same order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"gen": m.exps, "p": c.to_json()}))
            .collect();
        Value::Array(terms)
    }
}

impl std::ops::Add for &HeckePoly {
    type Output = HeckePoly;
    fn add(self, rhs: &HeckePoly) -> HeckePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl std::ops::Sub for &HeckePoly {
    type Output = HeckePoly;
    fn sub(self, rhs: &HeckePoly) -> HeckePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl std::ops::Neg for &HeckePoly {
    type Output = HeckePoly;
    fn neg(self) -> HeckePoly {
        self.scale(&LaurentP::from(-1))
    }
}

impl std::ops::Mul for &HeckePoly {
    type Output = HeckePoly;
    fn mul(self, rhs: &HeckePoly) -> HeckePoly {
        assert_eq!(self.n, rhs.n, "genus mismatch");
        let mut out = HeckePoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Debug for HeckePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckePoly(n={}) {{\n{}}}", self.n, self.to_canonical())
    }
}

/// `(p^5 + p^4) * T*T3 + p^4 * T*[p]`, highest monomial first.
impl fmt::Display for HeckePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.term_count() == 1 && c.terms().any(|(_, v)| v.is_negative());
            let c = if negative { -c } else { c.clone() };
            match (i > 0, negative) {
                (true, true) => write!(f, " - ")?,
                (true, false) => write!(f, " + ")?,
                (false, true) => write!(f, "-")?,
                (false, false) => {}
            }
            match (m.is_one(), c.term_count() > 1) {
                (true, _) => write!(f, "{c}")?,
                (false, false) if c.is_one() => write!(f, "{m}")?,
                (false, false) => write!(f, "{c} * {m}")?,
                (false, true) => write!(f, "({c}) * {m}")?,
            }
        }
        Ok(())
    }
}

/// Generator images together with a memo of monomial images.
pub struct ImageTable {
    n: usize,
    generators: Vec<GeneratorImage>,
    memo: Mutex<HashMap<GenMonomial, SymPoly>>,
}

impl ImageTable {
    pub fn new(n: usize, generators: Vec<GeneratorImage>) -> Result<Self> {
        if generators.len() != n + 1 {
            return Err(Error::Usage(format!(
                "expected {} generator images, got {}",
                n + 1,
                generators.len()
            )));
        }
        Ok(ImageTable {
            n,
            generators,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[GeneratorImage] {
        &self.generators
    }

    /// Image of a monomial: the product of generator images. Powers of `[p]`
    /// are applied as a shift of every part.
    pub fn image(&self, m: &GenMonomial) -> Result<SymPoly> {
        if m.n() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: m.n(),
            });
        }
        let e = m.scalar_power();
        if e > 0 {
            let base = self.image(&m.with_scalar_power(0))?;
            let shift = -((self.n * (self.n + 1) / 2) as i32) * e as i32;
            return Ok(base.mul_en_power(e as u16).scale(&LaurentP::p_pow(shift)));
        }
        if m.is_one() {
            return Ok(SymPoly::one(self.n));
        }
        if let Some(v) = self.memo.lock().unwrap().get(m) {
            return Ok(v.clone());
        }
        let i = m.exps.iter().rposition(|&x| x > 0).expect("not one");
        let mut rest = m.clone();
        rest.exps[i] -= 1;
        let v = sym_mul(&self.image(&rest)?, &self.generators[i].image)?;
        self.memo.lock().unwrap().insert(m.clone(), v.clone());
        Ok(v)
    }
}

/// Size of one solved system.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SolveStats {
    pub rows: usize,
    pub cols: usize,
    /// Power of `[p]` divided out before solving.
    pub scalar_power: u32,
}

fn bareiss_step(
    piv: &LaurentP,
    prev: &LaurentP,
    a: &LaurentP,
    lead: &LaurentP,
    b: &LaurentP,
) -> Result<LaurentP> {
    let num = if lead.is_zero() {
        piv * a
    } else {
        &(piv * a) - &(lead * b)
    };
    num.div_exact(prev)
        .ok_or_else(|| Error::InexactDivision(format!("Bareiss step: ({num}) / ({prev})")))
}

/// Fraction-free elimination on an integral system.
///
/// Pivot choice per column: the first row (in the given order) whose entry
/// is a unit `+-p^k`, otherwise the row with the fewest terms. Each update is
/// divided exactly by the previous pivot.
fn solve_laurent(mut rows: Vec<Vec<LaurentP>>, labels: &[String]) -> Result<Vec<RatFnP>> {
    let nrows = rows.len();
    let cols = rows.first().map(|r| r.len() - 1).unwrap_or(0);
    if nrows < cols {
        return Err(Error::LinearDependence { rank: nrows, cols });
    }
    let mut order: Vec<usize> = (0..nrows).collect();
    let mut prev = LaurentP::one();
    for k in 0..cols {
        let candidates = (k..nrows).filter(|&r| !rows[r][k].is_zero());
        let piv_row = candidates
            .clone()
            .find(|&r| rows[r][k].is_unit())
            .or_else(|| candidates.min_by_key(|&r| rows[r][k].term_count()))
            .ok_or(Error::LinearDependence { rank: k, cols })?;
        rows.swap(k, piv_row);
        order.swap(k, piv_row);
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let piv = pivot_row[k].clone();
        let trivial = piv == prev;
        tail.par_iter_mut().try_for_each(|row| -> Result<()> {
            let lead = std::mem::take(&mut row[k]);
            if lead.is_zero() && trivial {
                return Ok(());
            }
            for j in k + 1..=cols {
                if lead.is_zero() || pivot_row[j].is_zero() {
                    if !row[j].is_zero() {
                        row[j] =
                            bareiss_step(&piv, &prev, &row[j], &LaurentP::zero(), &pivot_row[j])?;
                    }
                } else {
                    row[j] = bareiss_step(&piv, &prev, &row[j], &lead, &pivot_row[j])?;
                }
            }
            Ok(())
        })?;
        prev = piv;
    }
    if let Some(r) = (cols..nrows).find(|&r| !rows[r][cols].is_zero()) {
        let row = labels
            .get(order[r])
            .cloned()
            .unwrap_or_else(|| format!("row {}", order[r]));
        return Err(Error::NotInImage { row });
    }
    let mut x: Vec<RatFnP> = vec![RatFnP::zero(); cols];
    for k in (0..cols).rev() {
        let mut acc = RatFnP::from_laurent(&rows[k][cols]);
        for j in k + 1..cols {
            if !rows[k][j].is_zero() && !x[j].is_zero() {
                acc = &acc - &(&RatFnP::from_laurent(&rows[k][j]) * &x[j]);
            }
        }
        x[k] = &acc / &RatFnP::from_laurent(&rows[k][k]);
    }
    Ok(x)
}

/// Solves `matrix * x = rhs` exactly for the unique solution.
///
/// Rows are cleared of denominators first, then eliminated fraction-free.
/// Errors: `LinearDependence` when the columns are dependent, `NotInImage`
/// when the system is inconsistent.
pub fn solve_exact(matrix: &[Vec<RatFnP>], rhs: &[RatFnP]) -> Result<Vec<RatFnP>> {
    if matrix.len() != rhs.len() {
        return Err(Error::Usage(format!(
            "{} rows but {} right-hand sides",
            matrix.len(),
            rhs.len()
        )));
    }
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let mut rows = Vec::with_capacity(matrix.len());
    for (r, b) in matrix.iter().zip(rhs) {
        if r.len() != cols {
            return Err(Error::Usage("ragged matrix".into()));
        }
        let mut scale = RatFnP::one();
        for v in r.iter().chain(std::iter::once(b)) {
            let s = v * &scale;
            if !s.is_laurent() {
                scale = &scale * &RatFnP::new(s.denominator().to_vec(), vec![1.into()]);
            }
        }
        let row = r
            .iter()
            .chain(std::iter::once(b))
            .map(|v| (v * &scale).to_laurent().expect("denominators cleared"))
            .collect();
        rows.push(row);
    }
    solve_laurent(rows, &[])
}

/// Writes `target = sum K_j Omega(m_j)` over all monomials `m_j` of
/// `x_0`-degree `k` and returns `sum K_j m_j`, checking the residual exactly.
pub fn invert_coefficient(
    target: &SymPoly,
    k: u32,
    table: &ImageTable,
) -> Result<(HeckePoly, SolveStats)> {
    let n = table.n();
    let monos = enumerate_monomials(n, k);
    if target.is_zero() {
        // Images of distinct monomials are independent, so zero has only the zero preimage.
        let stats = SolveStats {
            rows: 0,
            cols: monos.len(),
            scalar_power: 0,
        };
        return Ok((HeckePoly::zero(n), stats));
    }
    let images = monos
        .iter()
        .map(|m| table.image(m))
        .collect::<Result<Vec<_>>>()?;
    let mut partitions: BTreeSet<Partition> = target.terms().map(|(l, _)| *l).collect();
    for img in &images {
        partitions.extend(img.terms().map(|(l, _)| *l));
    }
    let partitions: Vec<Partition> = partitions.into_iter().rev().collect();
    let rows: Vec<Vec<LaurentP>> = partitions
        .iter()
        .map(|l| {
            let mut row: Vec<LaurentP> = images.iter().map(|img| img.coeff(l)).collect();
            row.push(target.coeff(l));
            row
        })
        .collect();
    let labels: Vec<String> = partitions.iter().map(|l| format!("{l:?}")).collect();
    let stats = SolveStats {
        rows: rows.len(),
        cols: monos.len(),
        scalar_power: 0,
    };
    let x = solve_laurent(rows, &labels)?;
    let mut out = HeckePoly::zero(n);
    let mut check = SymPoly::zero(n);
    for ((m, img), kj) in monos.iter().zip(&images).zip(&x) {
        let c = kj
            .to_laurent()
            .ok_or_else(|| Error::ResidualDenominator(format!("coefficient of {m} is {kj}")))?;
        check = &check + &img.scale(&c);
        out.add_term(m.clone(), &c);
    }
    if check != *target {
        let diff = &check - target;
        let (l, _) = diff.leading().expect("nonzero difference");
        return Err(Error::NotInImage {
            row: format!("{l:?}"),
        });
    }
    if out.terms().any(|(m, _)| m.x0_degree() != k) {
        return Err(Error::Usage(format!(
            "solution for degree {k} is not homogeneous"
        )));
    }
    Ok((out, stats))
}

/// Divides by `(p^{-n(n+1)/2} x_1..x_n)^m`, the `[p]^m` factor of the image.
pub fn divide_out_scalar(target: &SymPoly, m: u32) -> Result<SymPoly> {
    let n = target.nvars();
    let mut out = SymPoly::zero(n);
    let shift = (m as usize * n * (n + 1) / 2) as i32;
    for (l, c) in target.terms() {
        let parts = l.parts(n);
        if (parts[n - 1] as u32) < m {
            return Err(Error::NotDivisible {
                partition: format!("{l:?}"),
                power: m,
            });
        }
        let reduced: Vec<u16> = parts.iter().map(|&x| x - m as u16).collect();
        out.add_term(Partition::new(&reduced)?, &c.shift(shift));
    }
    Ok(out)
}

/// Largest `m` such that every partition of `target` has all parts `>= m`.
pub fn max_scalar_power(target: &SymPoly) -> u32 {
    let n = target.nvars();
    target
        .terms()
        .map(|(l, _)| l.parts(n)[n - 1] as u32)
        .min()
        .unwrap_or(0)
}

/// Inverts after dividing out `[p]^m` and multiplies the result back by `[p]^m`.
pub fn invert_with_scalar(
    target: &SymPoly,
    k: u32,
    m: u32,
    table: &ImageTable,
) -> Result<(HeckePoly, SolveStats)> {
    if 2 * m > k {
        return Err(Error::Usage(format!(
            "cannot divide [p]^{m} out of degree {k}"
        )));
    }
    let reduced = divide_out_scalar(target, m)?;
    let (h, mut stats) = invert_coefficient(&reduced, k - 2 * m, table)?;
    let n = table.n();
    let mut out = HeckePoly::zero(n);
    for (mono, c) in h.terms() {
        out.add_term(mono.with_scalar_power(mono.scalar_power() + m), c);
    }
    stats.scalar_power = m;
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glhecke::OmegaTable;
    use crate::spseries::generator_images;

    fn table(n: usize) -> ImageTable {
        ImageTable::new(n, generator_images(n, &OmegaTable::new()).unwrap()).unwrap()
    }

    fn mono(e: &[u32]) -> GenMonomial {
        GenMonomial::new(e).unwrap()
    }

    #[test]
    fn enumerate_small_degrees() {
        assert_eq!(enumerate_monomials(4, 0), vec![GenMonomial::one(4)]);
        assert_eq!(enumerate_monomials(4, 1), vec![mono(&[1, 0, 0, 0, 0])]);
        let three = enumerate_monomials(4, 3);
        assert_eq!(three.len(), 5);
        assert!(three.contains(&mono(&[3, 0, 0, 0, 0])));
        assert!(three.iter().all(|m| m.x0_degree() == 3));
        assert_eq!(enumerate_monomials(4, 8).len(), 70);
    }

    #[test]
    fn monomial_images() {
        let t = table(4);
        assert_eq!(t.image(&GenMonomial::one(4)).unwrap(), SymPoly::one(4));
        assert_eq!(
            t.image(&mono(&[0, 0, 0, 0, 2])).unwrap(),
            SymPoly::sym(4, &[2, 2, 2, 2]).scale(&LaurentP::p_pow(-20))
        );
        let expect = [
            [2u16, 2, 2, 2],
            [2, 2, 2, 1],
            [2, 2, 1, 1],
            [2, 1, 1, 1],
            [1, 1, 1, 1],
        ]
        .iter()
        .fold(SymPoly::zero(4), |a, l| &a + &SymPoly::sym(4, l))
        .scale(&LaurentP::p_pow(-10));
        assert_eq!(t.image(&mono(&[1, 0, 0, 0, 1])).unwrap(), expect);
    }

    #[test]
    fn solve_exact_examples() {
        let one = RatFnP::one();
        let zero = RatFnP::zero();
        let v = vec![RatFnP::p(), RatFnP::from_int(3)];
        let id = vec![vec![one.clone(), zero.clone()], vec![zero, one]];
        assert_eq!(solve_exact(&id, &v).unwrap(), v);

        let a = RatFnP::from_ints(&[-1, 0, 1], &[1]);
        let b = RatFnP::from_ints(&[-1, -1, 1, 1], &[1]);
        assert_eq!(
            solve_exact(&[vec![a]], &[b]).unwrap(),
            vec![RatFnP::from_ints(&[1, 1], &[1])]
        );
    }

    #[test]
    fn solve_exact_rejects_bad_systems() {
        let p = RatFnP::p();
        let dep = vec![
            vec![p.clone(), p.clone()],
            vec![RatFnP::one(), RatFnP::one()],
        ];
        assert!(matches!(
            solve_exact(&dep, &[p.clone(), RatFnP::one()]),
            Err(Error::LinearDependence { .. })
        ));
        let inconsistent = vec![vec![RatFnP::one()], vec![RatFnP::one()]];
        assert!(matches!(
            solve_exact(&inconsistent, &[p, RatFnP::one()]),
            Err(Error::NotInImage { .. })
        ));
    }

    #[test]
    fn solve_exact_with_fractions() {
        // x / (p - 1) = 1 / (p^2 - 1)  =>  x = 1 / (p + 1)
        let m = vec![vec![RatFnP::from_ints(&[1], &[-1, 1])]];
        let r = vec![RatFnP::from_ints(&[1], &[-1, 0, 1])];
        assert_eq!(
            solve_exact(&m, &r).unwrap(),
            vec![RatFnP::from_ints(&[1], &[1, 1])]
        );
    }

    #[test]
    fn invert_generator_images() {
        let t = table(3);
        for g in Generator::all(3) {
            let m = GenMonomial::generator(3, g);
            let img = t.image(&m).unwrap();
            let (h, _) = invert_coefficient(&img, g.x0_degree(), &t).unwrap();
            assert_eq!(h, HeckePoly::generator(3, g));
        }
    }

    #[test]
    fn divide_out_examples() {
        let s = SymPoly::sym(4, &[2, 2, 2, 2]);
        assert_eq!(
            divide_out_scalar(&s, 1).unwrap(),
            SymPoly::sym(4, &[1, 1, 1, 1]).scale(&LaurentP::p_pow(10))
        );
        let s = &SymPoly::sym(4, &[1, 1, 1, 1]) + &SymPoly::sym(4, &[2, 1, 1, 1]);
        assert_eq!(
            divide_out_scalar(&s, 1).unwrap(),
            (&SymPoly::one(4) + &SymPoly::sym(4, &[1])).scale(&LaurentP::p_pow(10))
        );
        assert!(matches!(
            divide_out_scalar(&SymPoly::sym(4, &[1, 1, 1]), 1),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(max_scalar_power(&SymPoly::sym(4, &[3, 2, 2, 2])), 2);
    }

    #[test]
    fn canonical_and_json_order_agree() {
        let h = &HeckePoly::generator(4, Generator::T).pow(2)
            + &HeckePoly::generator(4, Generator::Scalar).scale(&LaurentP::p_pow(3));
        let text = h.to_canonical();
        assert_eq!(HeckePoly::parse_canonical(4, &text).unwrap(), h);
        let first_line = text.lines().next().unwrap();
        assert!(first_line.starts_with("2,0,0,0,0"));
        assert_eq!(h.to_json()[0]["gen"], json!([2, 0, 0, 0, 0]));
    }
}
