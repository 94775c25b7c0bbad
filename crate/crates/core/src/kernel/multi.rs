//! Sparse polynomials in `x_1..x_n` with Laurent-in-`p` coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::laurent::LaurentP;

/// Upper bound on the number of `x` variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector; positions `n..MAX_VARS` are always zero.
///
/// The derived `Ord` is lexicographic with `x_1` most significant.
pub type Exps = [u16; MAX_VARS];

pub fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        Err(Error::Usage(format!(
            "variable count {n} outside 1..={MAX_VARS}"
        )))
    } else {
        Ok(())
    }
}

pub fn degree(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Graded-lexicographic comparison (total degree first, then lex).
pub fn grlex_cmp(a: &Exps, b: &Exps) -> std::cmp::Ordering {
    degree(a).cmp(&degree(b)).then_with(|| a.cmp(b))
}

pub(crate) fn fmt_exps(e: &Exps, n: usize) -> String {
    e[..n]
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exps, LaurentP>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, LaurentP::one())
    }

    pub fn constant(n: usize, c: LaurentP) -> Self {
        Self::term(n, [0; MAX_VARS], c)
    }

    pub fn term(n: usize, e: Exps, c: LaurentP) -> Self {
        let mut out = Self::zero(n);
        out.add_term(e, &c);
        out
    }

    /// `x_i` with 0-based index.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::term(n, e, LaurentP::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exps, LaurentP)>) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &LaurentP)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> Option<&LaurentP> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: Exps, c: &LaurentP) {
        debug_assert!(e[self.n..].iter().all(|&x| x == 0));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sub_term(&mut self, e: Exps, c: &LaurentP) {
        self.add_term(e, &-c);
    }

    pub fn scale(&self, c: &LaurentP) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Applies the variable permutation `x_k -> x_{perm[k]}`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(permute_exps(e, perm), c);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }

    /// Substitute `x_i := values[i]` completely.
    pub fn evaluate(&self, values: &[LaurentP]) -> Result<LaurentP> {
        if values.len() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: values.len(),
            });
        }
        let mut powers: Vec<Vec<LaurentP>> = vec![vec![LaurentP::one()]; self.n];
        let mut acc = LaurentP::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.n {
                let k = e[i] as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k];
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact division; see [`multi_divexact`].
    pub fn div_exact(&self, den: &MultiPoly) -> Result<MultiPoly> {
        multi_divexact(self, den)
    }

    /// One term per line, graded-lex descending: `e1 e2 .. en -> [min; c..]`.
    pub fn to_canonical(&self) -> String {
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(b, a));
        let mut s = String::new();
        for e in keys {
            s.push_str(&fmt_exps(e, self.n));
            s.push_str(" -> ");
            s.push_str(&self.terms[e].to_canonical());
            s.push('\n');
        }
        s
    }
}

pub(crate) fn permute_exps(e: &Exps, perm: &[usize]) -> Exps {
    let mut out = [0; MAX_VARS];
    for (k, &w) in perm.iter().enumerate() {
        out[w] = e[k];
    }
    out
}

/// Exact division `num / den` in `Z[p,1/p][x_1..x_n]` by lexicographic
/// leading-term reduction. Fails with `InexactDivision` on a nonzero remainder.
pub fn multi_divexact(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly> {
    if num.n != den.n {
        return Err(Error::ArityMismatch {
            left: num.n,
            right: den.n,
        });
    }
    let (lead_e, lead_c) = match den.terms.iter().next_back() {
        Some((e, c)) => (*e, c.clone()),
        None => return Err(Error::InexactDivision("division by zero polynomial".into())),
    };
    let mut rem = num.terms.clone();
    let mut quot = MultiPoly::zero(num.n);
    while let Some((e, c)) = rem.pop_last() {
        let mut qe = [0u16; MAX_VARS];
        for i in 0..num.n {
            if e[i] < lead_e[i] {
                return Err(Error::InexactDivision(format!(
                    "remainder term x^[{}] not divisible by leading term x^[{}]",
                    fmt_exps(&e, num.n),
                    fmt_exps(&lead_e, num.n)
                )));
            }
            qe[i] = e[i] - lead_e[i];
        }
        let qc = c.div_exact(&lead_c).ok_or_else(|| {
            Error::InexactDivision(format!("coefficient {c} not divisible by {lead_c}"))
        })?;
        for (de, dc) in den.terms.iter().rev().skip(1) {
            let mut te = qe;
            for i in 0..num.n {
                te[i] += de[i];
            }
            let t = &qc * dc;
            match rem.entry(te) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(-t);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() -= &t;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        quot.add_term(qe, &qc);
    }
    Ok(quot)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.sub_term(*e, c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut acc: BTreeMap<Exps, LaurentP> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..self.n {
                    e[i] += eb[i];
                }
                acc.entry(e).or_default().add_product(ca, cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            n: self.n,
            terms: acc,
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly(n={}) {{\n{}}}", self.n, self.to_canonical())
    }
}
