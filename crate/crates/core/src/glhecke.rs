//! The `GL_n` Hecke algebra side: `phi` products, symmetric-matrix rank
//! counts `l_p(r, a)`, the spherical images `omega(t(p^delta))` and the
//! product rule for the generators `pi_i`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{
    check_arity, multi_divexact, permute_exps, sym_from_multi, Exps, LaurentP, MultiPoly, RatFnP,
    SymPoly, MAX_VARS,
};

/// Exponents `delta_1 <= .. <= delta_n` of the diagonal coset `t(p^delta)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaTuple {
    deltas: Vec<u16>,
}

impl DeltaTuple {
    pub fn new(deltas: &[u16]) -> Result<Self> {
        check_arity(deltas.len())?;
        if deltas.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Usage(format!(
                "delta {deltas:?} must be non-decreasing"
            )));
        }
        Ok(DeltaTuple {
            deltas: deltas.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.deltas.len()
    }

    pub fn deltas(&self) -> &[u16] {
        &self.deltas
    }

    pub fn is_primitive(&self) -> bool {
        self.deltas[0] == 0
    }

    pub fn sum(&self) -> u32 {
        self.deltas.iter().map(|&d| d as u32).sum()
    }

    /// `sum_i (n + 1 - i) delta_i` (1-based `i`): the exponent of `p` that
    /// weights this tuple in the series, and minus the exponent of the
    /// normalizing power of `p` in its image.
    pub fn weight(&self) -> i64 {
        let n = self.n();
        self.deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| (n - i) as i64 * d as i64)
            .sum()
    }

    /// Multiplicities `(k_1, .., k_t)` of the distinct values, in order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &d in &self.deltas {
            if prev == Some(d) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = Some(d);
            }
        }
        out
    }

    /// Splits into the primitive tuple and the common shift `delta_1`.
    pub fn primitive_part(&self) -> (DeltaTuple, u16) {
        let c = self.deltas[0];
        (
            DeltaTuple {
                deltas: self.deltas.iter().map(|&d| d - c).collect(),
            },
            c,
        )
    }

    pub fn shifted(&self, c: u16) -> DeltaTuple {
        DeltaTuple {
            deltas: self.deltas.iter().map(|&d| d + c).collect(),
        }
    }

    /// All non-decreasing tuples of length `n` with entries in `0..=max`.
    pub fn all_bounded(n: usize, max: u16) -> Vec<DeltaTuple> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec(pos: usize, lo: u16, max: u16, cur: &mut Vec<u16>, out: &mut Vec<DeltaTuple>) {
            if pos == cur.len() {
                out.push(DeltaTuple {
                    deltas: cur.clone(),
                });
                return;
            }
            for v in lo..=max {
                cur[pos] = v;
                rec(pos + 1, v, max, cur, out);
            }
        }
        rec(0, 0, max, &mut cur, &mut out);
        out
    }

    /// Primitive tuples (`delta_1 = 0`) with `delta_n <= max`.
    pub fn primitive_bounded(n: usize, max: u16) -> Vec<DeltaTuple> {
        Self::all_bounded(n, max)
            .into_iter()
            .filter(|d| d.is_primitive())
            .collect()
    }
}

impl fmt::Debug for DeltaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}", self.deltas)
    }
}

impl fmt::Display for DeltaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.deltas.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Positive roots `alpha_ij = e_i - e_j`, `i < j`.
#[derive(Clone, Debug)]
pub struct RootSet {
    n: usize,
    roots: Vec<(usize, usize)>,
}

impl RootSet {
    pub fn new(n: usize) -> Self {
        let roots = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        RootSet { n, roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[(usize, usize)] {
        &self.roots
    }

    /// `prod_{i<j} (p x_j - x_i)`: the numerator of the kernel `c(x)` after
    /// clearing `p^{n(n-1)/2} prod (x_j - x_i)`.
    pub fn kernel_numerator(&self) -> MultiPoly {
        self.roots
            .iter()
            .fold(MultiPoly::one(self.n), |acc, &(i, j)| {
                let f =
                    &MultiPoly::var(self.n, j).scale(&LaurentP::p()) - &MultiPoly::var(self.n, i);
                &acc * &f
            })
    }

    /// The Vandermonde factors `x_j - x_i`.
    pub fn vandermonde_factors(&self) -> Vec<MultiPoly> {
        self.roots
            .iter()
            .map(|&(i, j)| &MultiPoly::var(self.n, j) - &MultiPoly::var(self.n, i))
            .collect()
    }
}

/// Label of the double coset `pi_{alpha,beta} = (diag(1^{n-a-b}, p^a, (p^2)^b))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PiLabel {
    pub n: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl PiLabel {
    pub fn new(n: usize, alpha: usize, beta: usize) -> Result<Self> {
        if alpha + beta > n {
            return Err(Error::Usage(format!(
                "pi label ({alpha},{beta}) exceeds n = {n}"
            )));
        }
        Ok(PiLabel { n, alpha, beta })
    }

    pub fn delta(&self) -> DeltaTuple {
        let mut d = vec![0u16; self.n - self.alpha - self.beta];
        d.extend(std::iter::repeat_n(1, self.alpha));
        d.extend(std::iter::repeat_n(2, self.beta));
        DeltaTuple { deltas: d }
    }
}

/// `phi_i(x) = (x - 1)(x^2 - 1)..(x^i - 1)`, `phi_0 = 1`.
pub fn phi(i: usize, at: &RatFnP) -> RatFnP {
    let one = RatFnP::one();
    let mut acc = RatFnP::one();
    let mut power = RatFnP::one();
    for _ in 0..i {
        power = &power * at;
        acc = &acc * &(&power - &one);
    }
    acc
}

/// `phi_i(p)` as a polynomial.
pub fn phi_p(i: usize) -> LaurentP {
    let mut acc = LaurentP::one();
    for k in 1..=i {
        acc = &acc * &(&LaurentP::p_pow(k as i32) - &LaurentP::one());
    }
    acc
}

/// Largest number of symmetric matrices [`lp_oracle`] will enumerate.
pub const LP_ORACLE_BUDGET: u64 = 10_000_000;

/// Counts symmetric `a x a` matrices over `F_p` by rank, by enumeration.
/// Entry `r` of the result is the number of matrices of rank `r`.
pub fn lp_oracle(p: u64, a: usize) -> Result<Vec<u64>> {
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    let cells = a * (a + 1) / 2;
    let total = (p as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if total > LP_ORACLE_BUDGET as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} symmetric {a}x{a} matrices over F_{p} exceed {LP_ORACLE_BUDGET}"
        )));
    }
    let inv: Vec<u64> = (0..p)
        .map(|x| (1..p).find(|y| x * y % p == 1).unwrap_or(0))
        .collect();
    let mut counts = vec![0u64; a + 1];
    let mut digits = vec![0u64; cells];
    let mut m = vec![0u64; a * a];
    for _ in 0..total as u64 {
        let mut k = 0;
        for i in 0..a {
            for j in i..a {
                m[i * a + j] = digits[k];
                m[j * a + i] = digits[k];
                k += 1;
            }
        }
        counts[rank_mod_p(&mut m, a, p, &inv)] += 1;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(counts)
}

fn rank_mod_p(m: &mut [u64], a: usize, p: u64, inv: &[u64]) -> usize {
    let mut rank = 0;
    for col in 0..a {
        let Some(piv) = (rank..a).find(|&r| m[r * a + col] != 0) else {
            continue;
        };
        for c in 0..a {
            m.swap(piv * a + c, rank * a + c);
        }
        let iv = inv[m[rank * a + col] as usize];
        for r in 0..a {
            if r != rank && m[r * a + col] != 0 {
                let f = m[r * a + col] * iv % p;
                for c in col..a {
                    let sub = f * m[rank * a + c] % p;
                    m[r * a + c] = (m[r * a + c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `l_p(r, r) = p^{r(r+1)/2} prod_{odd j <= r} (1 - p^{-j})`.
fn lp_diagonal(r: usize) -> RatFnP {
    let p = RatFnP::p();
    let one = RatFnP::one();
    let mut acc = p.pow((r * (r + 1) / 2) as u32);
    for j in (1..=r).step_by(2) {
        acc = &acc * &(&one - &(&one / &p.pow(j as u32)));
    }
    acc
}

fn lp_formula(r: usize, a: usize) -> Result<LaurentP> {
    if r > a {
        return Err(Error::Usage(format!("rank {r} exceeds size {a}")));
    }
    let p = RatFnP::p();
    let q = &(&lp_diagonal(r) * &phi(a, &p)) / &(&phi(r, &p) * &phi(a - r, &p));
    if !q.is_polynomial() {
        return Err(Error::ResidualDenominator(format!("l_p({r},{a}) = {q}")));
    }
    Ok(q.to_laurent().expect("polynomial"))
}

/// Gate outcome per matrix size.
static LP_GATE: [OnceLock<std::result::Result<(), String>>; LP_GATE_MAX_SIZE + 1] =
    [const { OnceLock::new() }; LP_GATE_MAX_SIZE + 1];

/// Primes and sizes at which the closed form must agree with enumeration.
pub const LP_GATE_PRIMES: [u64; 3] = [2, 3, 5];
pub const LP_GATE_MAX_SIZE: usize = 4;

/// Compares the closed form for `l_p(., a)` with [`lp_oracle`] at every gate prime.
pub fn lp_gate_check_size(a: usize) -> Result<()> {
    for &p in &LP_GATE_PRIMES {
        let counts = lp_oracle(p, a)?;
        for (r, &count) in counts.iter().enumerate() {
            let f = lp_formula(r, a)?;
            let v = f.eval_int(&BigInt::from(p));
            if v != Some(BigInt::from(count)) {
                return Err(Error::LpOracleMismatch {
                    p,
                    a,
                    r,
                    formula: f.to_string(),
                    count,
                });
            }
        }
    }
    Ok(())
}

/// [`lp_gate_check_size`] over the whole gate grid.
pub fn lp_gate_check() -> Result<()> {
    (0..=LP_GATE_MAX_SIZE).try_for_each(lp_gate_check_size)
}

/// Sizes up to `a` must have passed; sizes beyond the grid need the whole grid.
fn ensure_lp_gate(a: usize) -> Result<()> {
    for (size, gate) in LP_GATE.iter().enumerate().take(a.min(LP_GATE_MAX_SIZE) + 1) {
        gate.get_or_init(|| lp_gate_check_size(size).map_err(|e| e.to_string()))
            .clone()
            .map_err(|msg| {
                Error::Usage(format!("l_p closed form rejected by oracle gate: {msg}"))
            })?;
    }
    Ok(())
}

/// Number of symmetric `a x a` matrices of rank `r` over `F_p`, as a
/// polynomial in `p`. The closed form is only released after it has matched
/// brute-force enumeration for every size up to `a` (the whole gate grid
/// once `a` is beyond it).
pub fn lp(r: usize, a: usize) -> Result<LaurentP> {
    ensure_lp_gate(a)?;
    lp_formula(r, a)
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| cur[i] > cur[j])
            .count();
        out.push((cur.clone(), inversions % 2 == 1));
        // next permutation
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Diagnostics of one `omega_t` evaluation.
#[derive(Clone, Debug, Default)]
pub struct OmegaStats {
    /// Number of permutation terms accumulated into the antisymmetrized numerator.
    pub permutation_terms: usize,
    /// Monomials of the numerator before division.
    pub numerator_terms: usize,
    /// Monomials of the symmetric quotient.
    pub quotient_terms: usize,
}

/// `p^{-sum (n+1-i) delta_i - n(n-1)/2} * phi_1(1/p)^n / prod_j phi_{k_j}(1/p)`
/// split as `(numerator, denominator)` with the denominator a polynomial with
/// nonzero constant term.
fn omega_scalar(d: &DeltaTuple) -> (LaurentP, LaurentP) {
    let n = d.n();
    let inv_p = &RatFnP::one() / &RatFnP::p();
    let mut s = phi(1, &inv_p).pow(n as u32);
    for k in d.multiplicities() {
        s = &s / &phi(k, &inv_p);
    }
    let num = LaurentP::from_parts(0, s.numerator().to_vec());
    let den_coeffs = s.denominator();
    let zeros = den_coeffs.iter().take_while(|c| c.is_zero()).count();
    let den = LaurentP::from_parts(0, den_coeffs[zeros..].to_vec());
    let shift = -(d.weight() as i32) - (n * (n - 1) / 2) as i32 - zeros as i32;
    (num.shift(shift), den)
}

/// Spherical image `omega(t(p^delta))` as a symmetric polynomial in `x_1..x_n`.
///
/// The alternating sum `sum_w sgn(w) w(x^delta prod_{i<j} (p x_j - x_i))` is
/// divided exactly by the Vandermonde product, and the result is scaled by
/// the normalization in [`DeltaTuple::weight`] together with `1/P^{(k)}(1/p)`.
pub fn omega_t(d: &DeltaTuple) -> Result<SymPoly> {
    omega_t_with_stats(d).map(|(s, _)| s)
}

pub fn omega_t_with_stats(d: &DeltaTuple) -> Result<(SymPoly, OmegaStats)> {
    let n = d.n();
    let roots = RootSet::new(n);
    let mut xd: Exps = [0; MAX_VARS];
    xd[..n].copy_from_slice(d.deltas());
    let base = &MultiPoly::term(n, xd, LaurentP::one()) * &roots.kernel_numerator();

    let mut stats = OmegaStats::default();
    let mut alt = MultiPoly::zero(n);
    for (perm, odd) in permutations_with_sign(n) {
        stats.permutation_terms += 1;
        for (e, c) in base.terms() {
            let pe = permute_exps(e, &perm);
            if odd {
                alt.add_term(pe, &-c);
            } else {
                alt.add_term(pe, c);
            }
        }
    }
    stats.numerator_terms = alt.len();

    let mut quot = alt;
    for f in roots.vandermonde_factors() {
        quot = multi_divexact(&quot, &f)?;
    }
    stats.quotient_terms = quot.len();
    let sym = sym_from_multi(&quot)?;

    let (num, den) = omega_scalar(d);
    let mut out = SymPoly::zero(n);
    for (lambda, c) in sym.terms() {
        let scaled = &num * c;
        let v = scaled.div_exact(&den).ok_or_else(|| {
            Error::ResidualDenominator(format!(
                "omega({d}) coefficient of {lambda:?}: ({scaled}) / ({den})"
            ))
        })?;
        out.add_term(*lambda, &v);
    }
    Ok((out, stats))
}

/// Applies the scalar-shift law
/// `omega(t(p^{delta + c})) = (p^{-n(n+1)/2} x_1..x_n)^c omega(t(p^delta))`.
pub fn apply_scalar_shift(image: &SymPoly, c: u16) -> SymPoly {
    if c == 0 {
        return image.clone();
    }
    let n = image.nvars();
    let shift = -((n * (n + 1) / 2) as i32) * c as i32;
    image.mul_en_power(c).scale(&LaurentP::p_pow(shift))
}

/// Memo table for `omega_t`, keyed by primitive tuples.
///
/// Non-primitive tuples are served through [`apply_scalar_shift`]. Safe to share
/// between threads; concurrent inserts for one key store identical values.
#[derive(Default)]
pub struct OmegaTable {
    table: RwLock<HashMap<DeltaTuple, SymPoly>>,
    evaluations: std::sync::atomic::AtomicUsize,
}

impl OmegaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of `omega_t` evaluations performed (cache misses).
    pub fn evaluations(&self) -> usize {
        self.evaluations.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, d: DeltaTuple, value: SymPoly) {
        debug_assert!(d.is_primitive());
        self.table.write().unwrap().insert(d, value);
    }

    pub fn get_cached(&self, d: &DeltaTuple) -> Option<SymPoly> {
        let (prim, c) = d.primitive_part();
        self.table
            .read()
            .unwrap()
            .get(&prim)
            .map(|v| apply_scalar_shift(v, c))
    }

    pub fn get(&self, d: &DeltaTuple) -> Result<SymPoly> {
        if let Some(v) = self.get_cached(d) {
            return Ok(v);
        }
        let (prim, c) = d.primitive_part();
        let v = omega_t(&prim)?;
        self.evaluations
            .fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        self.insert(prim, v.clone());
        Ok(apply_scalar_shift(&v, c))
    }

    /// Evaluates every missing primitive tuple of `tuples` in parallel.
    pub fn fill(&self, tuples: &[DeltaTuple]) -> Result<()> {
        let missing: Vec<DeltaTuple> = {
            let t = self.table.read().unwrap();
            tuples
                .iter()
                .map(|d| d.primitive_part().0)
                .filter(|d| !t.contains_key(d))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        let computed: Vec<(DeltaTuple, SymPoly)> = missing
            .into_par_iter()
            .map(|d| omega_t(&d).map(|v| (d, v)))
            .collect::<Result<_>>()?;
        self.evaluations
            .fetch_add(computed.len(), std::sync::atomic::Ordering::Relaxed);
        let mut t = self.table.write().unwrap();
        for (d, v) in computed {
            t.insert(d, v);
        }
        Ok(())
    }

    /// Snapshot of the primitive entries, sorted by key.
    pub fn entries(&self) -> Vec<(DeltaTuple, SymPoly)> {
        let t = self.table.read().unwrap();
        let mut v: Vec<_> = t.iter().map(|(k, s)| (k.clone(), s.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Known misprint in the published example table, if `d` is the affected tuple.
pub fn omega_erratum(d: &DeltaTuple) -> Option<&'static str> {
    (d.deltas() == [0, 1, 1, 1]).then_some(
        "erratum: the published example table prints p^-3 * sym[1,1,1,0] for t(1,p,p,p); \
         the normalization that reproduces the other published examples gives p^-6",
    )
}

pub fn omega_pi(lbl: &PiLabel) -> Result<SymPoly> {
    omega_t(&lbl.delta())
}

/// Expansion of `pi_i * pi_j` into double cosets `pi_{alpha,beta}`:
/// the sum over `0 <= a <= n-j`, `0 <= b <= j`, `a + b = i` of
/// `phi_{a+j-b}(p) / (phi_a(p) phi_{j-b}(p)) * pi_{a+j-b, b}`.
pub fn pi_product(i: usize, j: usize, n: usize) -> Result<Vec<(LaurentP, PiLabel)>> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Usage(format!(
            "pi_product needs 1 <= i, j <= n (got i={i}, j={j}, n={n})"
        )));
    }
    let p = RatFnP::p();
    let mut out = Vec::new();
    for b in 0..=j {
        if b > i {
            break;
        }
        let a = i - b;
        if a > n - j {
            continue;
        }
        let q = &phi(a + j - b, &p) / &(&phi(a, &p) * &phi(j - b, &p));
        if !q.is_polynomial() {
            return Err(Error::InexactDivision(format!(
                "phi quotient for (a,b)=({a},{b}) is {q}"
            )));
        }
        out.push((
            q.to_laurent().expect("polynomial"),
            PiLabel::new(n, a + j - b, b)?,
        ));
    }
    Ok(out)
}

/// Number of primitive tuples of length `n` with `delta_n <= max`.
pub fn primitive_count(n: usize, max: u16) -> usize {
    // choose(max + n - 1, n - 1)
    let k = n - 1;
    let top = max as u128 + k as u128;
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (top - i) / (i + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Partition;

    fn d(v: &[u16]) -> DeltaTuple {
        DeltaTuple::new(v).unwrap()
    }

    fn sym4(parts: &[u16]) -> SymPoly {
        SymPoly::sym(4, parts)
    }

    #[test]
    fn delta_tuple_basics() {
        assert!(DeltaTuple::new(&[1, 0]).is_err());
        let t = d(&[0, 1, 1, 3]);
        assert_eq!(t.multiplicities(), vec![1, 2, 1]);
        assert!(t.is_primitive());
        assert_eq!(t.weight(), 3 + 2 + 3);
        assert_eq!(d(&[2, 3]).primitive_part(), (d(&[0, 1]), 2));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0, &RatFnP::from_int(7)), RatFnP::one());
        assert_eq!(phi(1, &RatFnP::p()), RatFnP::from_ints(&[-1, 1], &[1]));
        assert_eq!(phi(2, &RatFnP::from_int(2)), RatFnP::from_int(3));
        assert_eq!(phi_p(2), LaurentP::from_i64s(0, &[1, -1, -1, 1]));
    }

    #[test]
    fn lp_oracle_examples() {
        assert_eq!(lp_oracle(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(lp_oracle(2, 2).unwrap(), vec![1, 3, 4]);
        assert_eq!(lp_oracle(3, 2).unwrap(), vec![1, 8, 18]);
        assert!(matches!(lp_oracle(7, 4), Err(Error::BudgetExceeded(_))));
        assert!(lp_oracle(4, 2).is_err());
    }

    #[test]
    fn lp_examples() {
        for a in 0..5 {
            assert_eq!(lp(0, a).unwrap(), LaurentP::one());
        }
        assert_eq!(lp(1, 1).unwrap(), LaurentP::from_i64s(0, &[-1, 1]));
        assert_eq!(lp(1, 4).unwrap(), LaurentP::from_i64s(0, &[-1, 0, 0, 0, 1]));
        assert!(lp(3, 2).is_err());
    }

    #[test]
    fn omega_examples_n4() {
        assert_eq!(omega_t(&d(&[0, 0, 0, 0])).unwrap(), SymPoly::one(4));
        assert_eq!(
            omega_t(&d(&[0, 0, 0, 1])).unwrap(),
            sym4(&[1]).scale(&LaurentP::p_pow(-1))
        );
        assert_eq!(
            omega_t(&d(&[0, 0, 1, 1])).unwrap(),
            sym4(&[1, 1]).scale(&LaurentP::p_pow(-3))
        );
        assert_eq!(
            omega_t(&d(&[0, 1, 1, 1])).unwrap(),
            sym4(&[1, 1, 1]).scale(&LaurentP::p_pow(-6))
        );
        let pm1 = LaurentP::from_i64s(0, &[-1, 1]);
        let expect = &(&sym4(&[3, 1, 1]).scale(&LaurentP::p()) + &sym4(&[2, 2, 1]).scale(&pm1))
            + &sym4(&[2, 1, 1, 1]).scale(&pm1.scale(&BigInt::from(3)));
        assert_eq!(
            omega_t(&d(&[0, 1, 1, 3])).unwrap(),
            expect.scale(&LaurentP::p_pow(-9))
        );
    }

    #[test]
    fn omega_stats_count_permutations() {
        let (_, stats) = omega_t_with_stats(&d(&[0, 1, 2, 4])).unwrap();
        assert_eq!(stats.permutation_terms, 24);
    }

    #[test]
    fn omega_degree_and_leading_term() {
        for t in DeltaTuple::primitive_bounded(4, 3) {
            let w = omega_t(&t).unwrap();
            assert!(w.is_homogeneous());
            assert_eq!(w.max_degree().unwrap_or(0), t.sum());
            let mut rev = t.deltas().to_vec();
            rev.reverse();
            let (lead, c) = w.leading().unwrap();
            assert_eq!(*lead, Partition::new(&rev).unwrap(), "{t:?}");
            assert!(c.is_unit(), "{t:?}: leading coefficient {c}");
        }
    }

    #[test]
    fn scalar_shift_law() {
        for t in [d(&[0, 1, 1, 3]), d(&[0, 0, 2, 2]), d(&[0, 1])] {
            let base = omega_t(&t).unwrap();
            for c in 1..3 {
                assert_eq!(
                    omega_t(&t.shifted(c)).unwrap(),
                    apply_scalar_shift(&base, c)
                );
            }
        }
    }

    #[test]
    fn omega_table_uses_primitive_keys() {
        let table = OmegaTable::new();
        let v = table.get(&d(&[2, 3, 3])).unwrap();
        assert_eq!(v, omega_t(&d(&[2, 3, 3])).unwrap());
        assert_eq!(table.len(), 1);
        table.get(&d(&[0, 1, 1])).unwrap();
        assert_eq!(table.evaluations(), 1);
    }

    #[test]
    fn omega_pi_examples() {
        assert_eq!(
            omega_pi(&PiLabel::new(4, 0, 0).unwrap()).unwrap(),
            SymPoly::one(4)
        );
        assert_eq!(
            omega_pi(&PiLabel::new(4, 3, 0).unwrap()).unwrap(),
            sym4(&[1, 1, 1]).scale(&LaurentP::p_pow(-6))
        );
        assert_eq!(
            omega_pi(&PiLabel::new(4, 4, 0).unwrap()).unwrap(),
            sym4(&[1, 1, 1, 1]).scale(&LaurentP::p_pow(-10))
        );
    }

    #[test]
    fn pi_product_examples() {
        let prod = pi_product(1, 1, 1).unwrap();
        assert_eq!(
            prod,
            vec![(LaurentP::one(), PiLabel::new(1, 0, 1).unwrap())]
        );
        let mut prod = pi_product(1, 1, 2).unwrap();
        prod.sort_by_key(|(_, l)| (l.alpha, l.beta));
        assert_eq!(
            prod,
            vec![
                (LaurentP::one(), PiLabel::new(2, 0, 1).unwrap()),
                (
                    LaurentP::from_i64s(0, &[1, 1]),
                    PiLabel::new(2, 2, 0).unwrap()
                ),
            ]
        );
        let prod = pi_product(1, 4, 4).unwrap();
        assert_eq!(
            prod,
            vec![(LaurentP::one(), PiLabel::new(4, 3, 1).unwrap())]
        );
    }

    #[test]
    fn primitive_table_size() {
        assert_eq!(DeltaTuple::primitive_bounded(4, 14).len(), 680);
        assert_eq!(primitive_count(4, 14), 680);
    }
}
