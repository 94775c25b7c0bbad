//! Symmetric polynomials in the monomial-symmetric (partition) basis.
//!
//! `sym[i1,..,in]` is the orbit sum of `x_1^i1 .. x_n^in` under all variable
//! permutations, each distinct monomial counted once.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::laurent::LaurentP;
use super::multi::{check_arity, degree, fmt_exps, grlex_cmp, Exps, MultiPoly, MAX_VARS};

/// Non-increasing exponent vector of length `n` (padded with zeros).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Exps);

impl Partition {
    pub fn new(parts: &[u16]) -> Result<Self> {
        if parts.len() > MAX_VARS {
            return Err(Error::Usage(format!("partition {parts:?} too long")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Usage(format!(
                "partition {parts:?} is not non-increasing"
            )));
        }
        let mut e = [0; MAX_VARS];
        e[..parts.len()].copy_from_slice(parts);
        Ok(Partition(e))
    }

    /// Sorts an arbitrary exponent vector into partition form.
    pub fn from_exps(e: &Exps, n: usize) -> Self {
        let mut s = *e;
        s[..n].sort_unstable_by(|a, b| b.cmp(a));
        Partition(s)
    }

    pub fn zero() -> Self {
        Partition([0; MAX_VARS])
    }

    pub fn exps(&self) -> &Exps {
        &self.0
    }

    pub fn parts(&self, n: usize) -> &[u16] {
        &self.0[..n]
    }

    pub fn degree(&self) -> u32 {
        degree(&self.0)
    }

    pub fn largest(&self) -> u16 {
        self.0[0]
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&x| x > 0).count()
    }

    /// Size of the stabilizer of `x^self` in `S_n`: product of factorials of
    /// the multiplicities of each value among the first `n` entries.
    pub fn stabilizer_order(&self, n: usize) -> u64 {
        let mut out = 1u64;
        let mut run = 1u64;
        for i in 1..n {
            if self.0[i] == self.0[i - 1] {
                run += 1;
                out *= run;
            } else {
                run = 1;
            }
        }
        out
    }

    /// All distinct permutations of the first `n` entries.
    pub fn orbit(&self, n: usize) -> Vec<Exps> {
        let mut cur: Vec<u16> = self.0[..n].to_vec();
        cur.reverse(); // ascending, the first permutation in lex order
        let mut out = Vec::new();
        loop {
            let mut e = [0; MAX_VARS];
            e[..n].copy_from_slice(&cur);
            out.push(e);
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }

    pub(crate) fn fmt_parts(&self, n: usize) -> String {
        self.0[..n]
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.length().max(1);
        write!(f, "sym[{}]", self.fmt_parts(len))
    }
}

fn next_permutation(v: &mut [u16]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Symmetric polynomial over `Z[p,1/p]` in the partition basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    n: usize,
    terms: BTreeMap<Partition, LaurentP>,
}

impl SymPoly {
    pub fn zero(n: usize) -> Self {
        SymPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, LaurentP::one())
    }

    pub fn constant(n: usize, c: LaurentP) -> Self {
        Self::term(n, Partition::zero(), c)
    }

    pub fn term(n: usize, lambda: Partition, c: LaurentP) -> Self {
        let mut out = Self::zero(n);
        out.add_term(lambda, &c);
        out
    }

    /// `sym[parts]` with coefficient 1; `parts` is padded to `n` entries.
    pub fn sym(n: usize, parts: &[u16]) -> Self {
        assert!(parts.len() <= n, "partition longer than variable count");
        Self::term(
            n,
            Partition::new(parts).expect("valid partition"),
            LaurentP::one(),
        )
    }

    /// Elementary symmetric polynomial `e_k = sym[1^k]`.
    pub fn elementary(n: usize, k: usize) -> Self {
        assert!(k <= n);
        let parts = vec![1u16; k];
        Self::sym(n, &parts)
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &LaurentP)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentP {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    /// Lexicographically largest partition and its coefficient.
    pub fn leading(&self) -> Option<(&Partition, &LaurentP)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &LaurentP) {
        debug_assert!(lambda.0[self.n..].iter().all(|&x| x == 0));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
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

    pub fn scale(&self, c: &LaurentP) -> SymPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SymPoly {
            n: self.n,
            terms: self.terms.iter().map(|(l, v)| (*l, v * c)).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&LaurentP) -> LaurentP) -> SymPoly {
        let mut out = Self::zero(self.n);
        for (l, c) in &self.terms {
            out.add_term(*l, &f(c));
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|l| l.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|l| l.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Multiply by `(x_1 .. x_n)^k`: every part increases by `k`.
    pub fn mul_en_power(&self, k: u16) -> SymPoly {
        let mut out = Self::zero(self.n);
        for (l, c) in &self.terms {
            let mut e = l.0;
            for x in e[..self.n].iter_mut() {
                *x += k;
            }
            out.terms.insert(Partition(e), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<SymPoly> {
        let mut acc = SymPoly::one(self.n);
        for _ in 0..e {
            acc = sym_mul(&acc, self)?;
        }
        Ok(acc)
    }

    /// Expands to plain monomials.
    pub fn expand(&self) -> MultiPoly {
        sym_expand(self)
    }

    /// One term per line, graded-lex descending: `i1 i2 .. in -> [min; c..]`.
    pub fn to_canonical(&self) -> String {
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let mut s = String::new();
        for l in keys {
            s.push_str(&fmt_exps(&l.0, self.n));
            s.push_str(" -> ");
            s.push_str(&self.terms[l].to_canonical());
            s.push('\n');
        }
        s
    }

    /// JSON mirror of the canonical form: `[{"partition": [..], "p": {..}}, ..]`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let terms: Vec<serde_json::Value> = keys
            .into_iter()
            .map(
                |l| serde_json::json!({"partition": l.parts(self.n), "p": self.terms[l].to_json()}),
            )
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn parse_canonical(n: usize, text: &str) -> Result<SymPoly> {
        check_arity(n)?;
        let mut out = SymPoly::zero(n);
        let mut prev: Option<Partition> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("missing '->' in {line:?}")))?;
            let parts = lhs
                .split_whitespace()
                .map(|t| {
                    t.parse::<u16>()
                        .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if parts.len() != n {
                return Err(Error::Parse(format!(
                    "partition {lhs:?} does not have {n} parts"
                )));
            }
            let lambda = Partition::new(&parts)?;
            let c = LaurentP::parse_canonical(rhs)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient in {line:?}")));
            }
            if let Some(pv) = prev {
                if grlex_cmp(&pv.0, &lambda.0) != std::cmp::Ordering::Greater {
                    return Err(Error::Parse(format!(
                        "terms out of canonical order at {line:?}"
                    )));
                }
            }
            prev = Some(lambda);
            out.terms.insert(lambda, c);
        }
        Ok(out)
    }
}

/// Expands a symmetric polynomial into the monomial representation.
pub fn sym_expand(s: &SymPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(s.n);
    for (l, c) in &s.terms {
        for e in l.orbit(s.n) {
            out.add_term(e, c);
        }
    }
    out
}

/// Collects a symmetric `MultiPoly` into the partition basis, checking that
/// every monomial carries the same coefficient as its sorted representative.
pub fn sym_from_multi(m: &MultiPoly) -> Result<SymPoly> {
    let n = m.nvars();
    let mut out = SymPoly::zero(n);
    let mut seen: usize = 0;
    for (e, c) in m.terms() {
        let lambda = Partition::from_exps(e, n);
        if lambda.0 == *e {
            out.terms.insert(lambda, c.clone());
        }
    }
    for (e, c) in m.terms() {
        let lambda = Partition::from_exps(e, n);
        match out.terms.get(&lambda) {
            Some(rep) if rep == c => seen += 1,
            _ => {
                return Err(Error::SymmetryViolation {
                    monomial: format!("x^[{}]", fmt_exps(e, n)),
                })
            }
        }
    }
    let expected: usize = out.terms.keys().map(|l| l.orbit(n).len()).sum();
    if seen != expected {
        return Err(Error::SymmetryViolation {
            monomial: "orbit incomplete".into(),
        });
    }
    Ok(out)
}

/// Product in the partition basis.
///
/// For each term `mu` of the smaller operand the orbit of `mu` is expanded
/// once; for a partition `lambda` of the larger operand,
/// `m_lambda * m_mu = sum_beta |Stab(lambda+beta)| / |Stab(lambda)| * m_sort(lambda+beta)`
/// over `beta` in the orbit of `mu`.
pub fn sym_mul(a: &SymPoly, b: &SymPoly) -> Result<SymPoly> {
    if a.n != b.n {
        return Err(Error::ArityMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let n = a.n;
    if a.is_zero() || b.is_zero() {
        return Ok(SymPoly::zero(n));
    }
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let orbits: Vec<(Vec<Exps>, &LaurentP)> =
        small.terms.iter().map(|(m, c)| (m.orbit(n), c)).collect();
    let mut acc: HashMap<Partition, LaurentP> = HashMap::new();
    let mut weights: Vec<(Partition, u64)> = Vec::new();
    for (lambda, cl) in &big.terms {
        let stab_l = lambda.stabilizer_order(n);
        for (orbit, cm) in &orbits {
            weights.clear();
            for beta in orbit {
                let mut g = lambda.0;
                for i in 0..n {
                    g[i] += beta[i];
                }
                let nu = Partition::from_exps(&g, n);
                let w = nu.stabilizer_order(n);
                match weights.iter_mut().find(|(p, _)| *p == nu) {
                    Some((_, acc_w)) => *acc_w += w,
                    None => weights.push((nu, w)),
                }
            }
            let prod = cl * *cm;
            for (nu, w) in &weights {
                debug_assert_eq!(w % stab_l, 0);
                let k = w / stab_l;
                let entry = acc.entry(*nu).or_default();
                if k == 1 {
                    *entry += &prod;
                } else {
                    *entry += &prod.scale(&BigInt::from(k));
                }
            }
        }
    }
    let terms: BTreeMap<Partition, LaurentP> =
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(SymPoly { n, terms })
}

/// Exact evaluation at `x_i := values[i]`.
pub fn sym_substitute(s: &SymPoly, values: &[LaurentP]) -> Result<LaurentP> {
    if values.len() != s.n {
        return Err(Error::ArityMismatch {
            left: s.n,
            right: values.len(),
        });
    }
    sym_expand(s).evaluate(values)
}

/// Sets `x_n := 0`, producing a symmetric polynomial in `n - 1` variables.
/// Partitions with `n` nonzero parts vanish; the rest drop their last (zero) part.
pub fn sym_set_last_zero(s: &SymPoly) -> Result<SymPoly> {
    if s.n < 2 {
        return Err(Error::Usage("cannot drop the only variable".into()));
    }
    let m = s.n - 1;
    let mut out = SymPoly::zero(m);
    for (l, c) in &s.terms {
        if l.0[m] == 0 {
            out.terms.insert(*l, c.clone());
        }
    }
    Ok(out)
}

/// The simultaneous substitution `p -> 1/p`, `x_i -> 1/x_i`, followed by
/// multiplication with `(x_1..x_n)^c`. Fails when a negative power of some
/// `x_i` would survive.
pub fn sym_reflect(s: &SymPoly, c: u16) -> Result<SymPoly> {
    let n = s.n;
    let mut out = SymPoly::zero(n);
    for (l, coeff) in &s.terms {
        if l.largest() > c {
            return Err(Error::Usage(format!(
                "reflection through {c} leaves a negative exponent at {:?}",
                l
            )));
        }
        let mut e = [0u16; MAX_VARS];
        for (i, x) in e.iter_mut().take(n).enumerate() {
            *x = c - l.0[n - 1 - i];
        }
        out.terms.insert(Partition(e), coeff.invert_p());
    }
    Ok(out)
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(*l, c);
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(*l, &-c);
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            n: self.n,
            terms: self.terms.iter().map(|(l, c)| (*l, -c)).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        sym_mul(self, rhs).expect("variable count mismatch")
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly(n={}) {{\n{}}}", self.n, self.to_canonical())
    }
}

/// Human-readable form: `p^-3 * sym[1,1,0,0] + (p - 1) * sym[2,1,1,1]`.
impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        for (i, l) in keys.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[l];
            let is_const = l.degree() == 0;
            match (c.term_count() > 1, is_const) {
                (_, true) => write!(f, "{c}")?,
                (false, false) if c.is_one() => write!(f, "sym[{}]", l.fmt_parts(self.n))?,
                (false, false) => write!(f, "{c} * sym[{}]", l.fmt_parts(self.n))?,
                (true, false) => write!(f, "({c}) * sym[{}]", l.fmt_parts(self.n))?,
            }
        }
        Ok(())
    }
}

/// Multiplicity-weighted count of monomials: number of plain monomials in the expansion.
pub fn expanded_len(s: &SymPoly) -> usize {
    s.terms.keys().map(|l| l.orbit(s.n).len()).sum()
}
