//! Executable identity checks over computed pipeline data, plus the fixture,
//! oracle and erratum gates.
//!
//! Every check function takes its inputs explicitly so that perturbed data can
//! be fed in as a negative control; [`run_check`] wires them to a
//! [`Workspace`] that computes and memoizes the pipelines on demand.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::{
    genus_fixture_text, Fixture, Provenance, E3_IMAGE_N4, GENERATOR_IMAGES_N4, OMEGA_EXAMPLES_N4,
};
use crate::glhecke::{
    lp, lp_oracle, omega_erratum, omega_pi, omega_t, pi_product, DeltaTuple, OmegaTable, PiLabel,
    LP_GATE_MAX_SIZE, LP_GATE_PRIMES,
};
use crate::inversion::{
    enumerate_monomials, invert_coefficient, GenMonomial, HeckePoly, ImageTable,
};
use crate::kernel::{sym_reflect, sym_set_last_zero, sym_substitute, LaurentP, SymPoly};
use crate::pipeline::{run_theorem, scaled_scalar_power, TheoremResult};
use crate::spseries::{
    d_coefficient_direct, d_geometric, d_quotient, Generator, GeneratorImage, SymSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Passes once a documented correction to a displayed value is applied.
    ErratumNoted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ErratumNoted => "erratum-noted",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    /// First difference found; always present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            status: Status::Pass,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Records a failure; only the first witness is kept.
    fn fail(&mut self, witness: String) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness);
        }
    }

    fn erratum(&mut self, note: String) {
        if self.status == Status::Pass {
            self.status = Status::ErratumNoted;
        }
        self.notes.push(note);
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// `status check-id [witness]` followed by indented notes.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.check)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        Ok(())
    }
}

pub const CHECK_IDS: [&str; 14] = [
    "golden-1",
    "golden-2",
    "golden-3",
    "golden-4",
    "omega-examples",
    "generator-images",
    "omega-hom",
    "lp-oracle",
    "functional-eq",
    "denom-symmetry",
    "satake",
    "genus-reduction",
    "series-crosscheck",
    "inversion-e3",
];

/// Lazily computed pipeline data shared by the checks.
pub struct Workspace {
    omegas: Vec<Arc<OmegaTable>>,
    theorems: Vec<Mutex<Option<Arc<TheoremResult>>>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new()
    }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace {
            omegas: (0..=4).map(|_| Arc::new(OmegaTable::new())).collect(),
            theorems: (0..=4).map(|_| Mutex::new(None)).collect(),
        }
    }

    fn slot(n: usize) -> Result<usize> {
        if (1..=4).contains(&n) {
            Ok(n)
        } else {
            Err(Error::Usage(format!("checks cover genus 1..4, not {n}")))
        }
    }

    pub fn omegas(&self, n: usize) -> Result<&OmegaTable> {
        Ok(&self.omegas[Self::slot(n)?])
    }

    /// Uses an externally computed result (e.g. loaded through the cache).
    pub fn insert_theorem(&self, r: TheoremResult) -> Result<()> {
        let n = Self::slot(r.n)?;
        *self.theorems[n].lock().expect("poisoned") = Some(Arc::new(r));
        Ok(())
    }

    pub fn theorem(&self, n: usize) -> Result<Arc<TheoremResult>> {
        let slot = Self::slot(n)?;
        let mut guard = self.theorems[slot].lock().expect("poisoned");
        if let Some(r) = guard.as_ref() {
            return Ok(r.clone());
        }
        let r = Arc::new(run_theorem(n, &self.omegas[slot])?);
        *guard = Some(r.clone());
        Ok(r)
    }
}

pub fn run_check(id: &str, ws: &Workspace) -> Result<CheckReport> {
    let theorem = |n| ws.theorem(n);
    match id {
        "golden-1" | "golden-2" | "golden-3" | "golden-4" => {
            let n: usize = id[7..].parse().expect("id digit");
            let r = theorem(n)?;
            golden_report(n, &r.e, &r.f)
        }
        "omega-examples" => omega_examples_report(),
        "generator-images" => Ok(generator_images_report(&theorem(4)?.generator_images)),
        "omega-hom" => omega_hom_report(4),
        "lp-oracle" => lp_report(),
        "functional-eq" => {
            let lower = (2..=3)
                .map(|n| theorem(n).map(|r| r.e_series.clone()))
                .collect::<Result<Vec<_>>>()?;
            functional_equation_report(&theorem(4)?.e_series, &lower)
        }
        "denom-symmetry" => {
            let mut rep = CheckReport::new(id);
            for n in 1..=4 {
                let r = theorem(n)?;
                let sub = denominator_symmetry_report(&r)?;
                merge(&mut rep, &format!("genus {n}"), sub);
            }
            Ok(rep)
        }
        "satake" => {
            let lower = (2..=3)
                .map(|n| theorem(n).map(|r| r.e_series.clone()))
                .collect::<Result<Vec<_>>>()?;
            satake_report(&theorem(4)?.e_series, &lower)
        }
        "genus-reduction" => {
            let mut rep = CheckReport::new(id);
            for n in (2..=4).rev() {
                let sub = genus_reduction_report(&*theorem(n)?, &*theorem(n - 1)?)?;
                merge(&mut rep, &format!("genus {n} -> {}", n - 1), sub);
            }
            Ok(rep)
        }
        "series-crosscheck" => {
            let mut rep = CheckReport::new(id);
            for n in 2..=4 {
                let r = theorem(n)?;
                let sub = series_crosscheck_report(&r.e_series, &r.f_series, 3, ws.omegas(n)?)?;
                merge(&mut rep, &format!("genus {n}"), sub);
            }
            Ok(rep)
        }
        "inversion-e3" => {
            let r = theorem(4)?;
            let table = ImageTable::new(4, r.generator_images.clone())?;
            inversion_e3_report(r.e_series.coeff(3), &table)
        }
        _ => Err(Error::Usage(format!(
            "unknown check {id:?}; valid checks: {}",
            CHECK_IDS.join(", ")
        ))),
    }
}

/// Runs the checks in parallel; reports come back in request order.
pub fn run_checks(ids: &[String], ws: &Workspace) -> Result<Vec<CheckReport>> {
    if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
        return Err(Error::Usage(format!(
            "unknown check {bad:?}; valid checks: {}",
            CHECK_IDS.join(", ")
        )));
    }
    ids.par_iter().map(|id| run_check(id, ws)).collect()
}

fn merge(into: &mut CheckReport, label: &str, sub: CheckReport) {
    match sub.status {
        Status::Fail => into.fail(format!("{label}: {}", sub.witness.unwrap_or_default())),
        Status::ErratumNoted if into.status == Status::Pass => into.status = Status::ErratumNoted,
        _ => {}
    }
    into.notes
        .extend(sub.notes.into_iter().map(|n| format!("{label}: {n}")));
}

fn differ(what: &str, expected: &impl fmt::Display, got: &impl fmt::Display) -> String {
    format!("{what}: expected {expected}, computed {got}")
}

/// Computed `E`, `F` coefficients against the genus fixture. Entries with a
/// correction must match the corrected value and differ from the displayed one.
pub fn golden_report(n: usize, e: &[HeckePoly], f: &[HeckePoly]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(&format!("golden-{n}"));
    let fx: Fixture<HeckePoly> = Fixture::parse(genus_fixture_text(n)?)?;
    let mut counts: HashMap<Provenance, usize> = HashMap::new();
    for (prefix, computed) in [("e", e), ("f", f)] {
        let expected = fx.sequence(prefix);
        if expected.len() != computed.len() {
            rep.fail(format!(
                "{prefix}: {} fixture coefficients, {} computed",
                expected.len(),
                computed.len()
            ));
        }
        for (k, entry) in expected.iter().enumerate() {
            *counts.entry(entry.provenance).or_default() += 1;
            let Some(c) = computed.get(k) else { continue };
            if c.to_canonical() != entry.value.to_canonical() {
                rep.fail(differ(
                    &format!("{} ({})", entry.key, entry.provenance),
                    &entry.value,
                    c,
                ));
                continue;
            }
            if entry.provenance == Provenance::Corrected {
                let printed = fx
                    .get(&format!("{}@printed", entry.key))
                    .ok_or_else(|| Error::Parse(format!("{} lacks a printed form", entry.key)))?;
                if printed.value == *c {
                    rep.fail(format!(
                        "{}: computed value equals the printed form",
                        entry.key
                    ));
                } else {
                    rep.erratum(format!(
                        "erratum: {} as displayed differs from the computed value by {}",
                        entry.key,
                        c - &printed.value
                    ));
                }
            }
        }
    }
    let mut summary: Vec<String> = [
        Provenance::Printed,
        Provenance::Corrected,
        Provenance::Derived,
    ]
    .iter()
    .filter_map(|p| counts.get(p).map(|c| format!("{c} {p}")))
    .collect();
    summary.sort();
    rep.notes
        .push(format!("coefficients compared: {}", summary.join(", ")));
    Ok(rep)
}

fn tuple_from_key(key: &str) -> Result<DeltaTuple> {
    let digits = key
        .strip_prefix('d')
        .ok_or_else(|| Error::Parse(format!("omega fixture key {key:?}")))?;
    let d: Vec<u16> = digits.bytes().map(|b| (b - b'0') as u16).collect();
    DeltaTuple::new(&d)
}

/// The displayed `omega(t)` examples for genus 4, including the corrected one.
pub fn omega_examples_report() -> Result<CheckReport> {
    let mut rep = CheckReport::new("omega-examples");
    let fx: Fixture<SymPoly> = Fixture::parse(OMEGA_EXAMPLES_N4)?;
    for entry in fx.entries.iter().filter(|e| !e.key.contains('@')) {
        let d = tuple_from_key(&entry.key)?;
        let got = omega_t(&d)?;
        if got != entry.value {
            rep.fail(differ(&format!("omega(t({d}))"), &entry.value, &got));
            continue;
        }
        if entry.provenance == Provenance::Corrected {
            let note = omega_erratum(&d).ok_or_else(|| {
                Error::Usage(format!("corrected example {d} has no erratum diagnostic"))
            })?;
            rep.erratum(format!("omega(t({d})) = {got}; {note}"));
        }
    }
    Ok(rep)
}

/// Genus-4 generator images against the displayed formulas, by canonical text.
pub fn generator_images_report(images: &[GeneratorImage]) -> CheckReport {
    let mut rep = CheckReport::new("generator-images");
    let fx: Fixture<SymPoly> = match Fixture::parse(GENERATOR_IMAGES_N4) {
        Ok(f) => f,
        Err(e) => {
            rep.fail(format!("fixture: {e}"));
            return rep;
        }
    };
    for img in images {
        let key = match img.generator {
            Generator::T => "T".to_string(),
            Generator::Ti(i) => format!("T{i}"),
            Generator::Scalar => "P".to_string(),
        };
        match fx.get(&key) {
            Some(e) if e.value.to_canonical() == img.image.to_canonical() => {}
            Some(e) => rep.fail(differ(
                &format!("Omega({})", img.generator),
                &e.value,
                &img.image,
            )),
            None => rep.fail(format!("no fixture for {}", img.generator)),
        }
    }
    if images.len() != fx.entries.len() {
        rep.fail(format!(
            "{} images for {} fixtures",
            images.len(),
            fx.entries.len()
        ));
    }
    rep
}

/// `omega(pi_i) omega(pi_j)` against the image of the double-coset expansion of
/// `pi_i pi_j`, for all genera up to `max_n`.
pub fn omega_hom_report(max_n: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("omega-hom");
    let mut pairs = 0;
    for n in 1..=max_n {
        for i in 1..=n {
            for j in 1..=n {
                pairs += 1;
                let lhs = &omega_pi(&PiLabel::new(n, i, 0)?)? * &omega_pi(&PiLabel::new(n, j, 0)?)?;
                let mut rhs = SymPoly::zero(n);
                for (c, lbl) in pi_product(i, j, n)? {
                    rhs = &rhs + &omega_pi(&lbl)?.scale(&c);
                }
                if lhs != rhs {
                    rep.fail(differ(&format!("n={n} pi_{i} pi_{j}"), &rhs, &lhs));
                }
            }
        }
    }
    rep.notes.push(format!("{pairs} products checked"));
    Ok(rep)
}

/// Closed-form `l_p(r, a)` against brute-force counts, and the total count
/// `sum_r l_p(r, a) = p^{a(a+1)/2}` as a polynomial identity.
pub fn lp_report() -> Result<CheckReport> {
    let mut rep = CheckReport::new("lp-oracle");
    for a in 0..=LP_GATE_MAX_SIZE {
        let mut total = LaurentP::zero();
        for r in 0..=a {
            total += &lp(r, a)?;
        }
        let expect = LaurentP::p_pow((a * (a + 1) / 2) as i32);
        if total != expect {
            rep.fail(differ(&format!("sum_r l_p(r,{a})"), &expect, &total));
        }
        for &p in &LP_GATE_PRIMES {
            let counts = lp_oracle(p, a)?;
            for (r, &count) in counts.iter().enumerate() {
                let formula = lp(r, a)?.eval_int(&BigInt::from(p));
                if formula != Some(BigInt::from(count)) {
                    rep.fail(format!(
                        "l_{p}({r},{a}): formula {formula:?}, brute force {count}"
                    ));
                }
            }
        }
    }
    rep.notes
        .push(format!("p in {LP_GATE_PRIMES:?}, a <= {LP_GATE_MAX_SIZE}"));
    Ok(rep)
}

/// `N = 2^{n-1} - 1`, the centre of the numerator.
fn numerator_centre(n: usize) -> usize {
    (1 << (n - 1)) - 1
}

/// Right-hand side of the numerator functional equation for the `X^k`
/// coefficient `s` (implicit `x_0^k`):
/// `(-1)^{n-1} p^{-n(n-1)/2} (x_1..x_n)^N s(1/p; 1/x_1, .., 1/x_n)`.
/// The `x_0` powers cancel, so the result is the predicted `X^{2N-k}`
/// coefficient.
pub fn functional_transform(s: &SymPoly, k: usize, n: usize) -> Result<SymPoly> {
    if s.nvars() != n {
        return Err(Error::ArityMismatch {
            left: n,
            right: s.nvars(),
        });
    }
    let centre = numerator_centre(n);
    if k > 2 * centre {
        return Err(Error::Usage(format!(
            "X^{k} is beyond the numerator degree {}",
            2 * centre
        )));
    }
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let c = LaurentP::monomial(sign, -((n * (n - 1) / 2) as i32));
    Ok(sym_reflect(s, centre as u16)?.scale(&c))
}

fn functional_equation_holds(e: &SymSeries, rep: &mut CheckReport, label: &str) -> Result<()> {
    let n = e.nvars();
    let top = 2 * numerator_centre(n);
    if e.bound() < top {
        rep.fail(format!("{label}: series stops at X^{}", e.bound()));
        return Ok(());
    }
    for k in 0..=top {
        let t = functional_transform(e.coeff(k), k, n)?;
        if t != *e.coeff(top - k) {
            rep.fail(differ(
                &format!("{label}: X^{} vs transformed X^{k}", top - k),
                e.coeff(top - k),
                &t,
            ));
            return Ok(());
        }
        if functional_transform(&t, top - k, n)? != *e.coeff(k) {
            rep.fail(format!("{label}: transform is not an involution at X^{k}"));
            return Ok(());
        }
    }
    Ok(())
}

/// The genus-4 relation decides the status; `lower` genera are reported as notes.
pub fn functional_equation_report(e4: &SymSeries, lower: &[SymSeries]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("functional-eq");
    functional_equation_holds(e4, &mut rep, "genus 4")?;
    for e in lower {
        let mut sub = CheckReport::new("");
        functional_equation_holds(e, &mut sub, &format!("genus {}", e.nvars()))?;
        rep.notes.push(match sub.witness {
            None => format!("genus {} analogue holds (informational)", e.nvars()),
            Some(w) => format!("genus {} analogue fails (informational): {w}", e.nvars()),
        });
    }
    Ok(rep)
}

fn x_poly_mul(a: &[LaurentP], b: &[LaurentP]) -> Vec<LaurentP> {
    let mut out = vec![LaurentP::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_product(x, y);
        }
    }
    out
}

/// Expansion in `X` of the product form of the numerator under
/// `(x_0, .., x_4) = (1, p, .., p^4)`.
pub fn satake_product_n4() -> Vec<LaurentP> {
    let lin = |c: i64, e: i32| vec![LaurentP::one(), LaurentP::monomial(c, e)];
    let mut factors = vec![
        lin(-1, 1),
        lin(-1, 2),
        lin(-1, 3),
        lin(-1, 3),
        lin(-1, 4),
        lin(1, 5),
        lin(-1, 5),
        lin(-1, 5),
        lin(-1, 6),
        lin(-1, 6),
        lin(-1, 7),
        lin(-1, 8),
    ];
    factors.push(vec![
        LaurentP::one(),
        LaurentP::from_i64s(1, &[1, 1, 2, 1, 1, 2, 1, 1]),
        LaurentP::p_pow(9),
    ]);
    factors
        .iter()
        .fold(vec![LaurentP::one()], |acc, f| x_poly_mul(&acc, f))
}

/// Each coefficient of `e` with `x_i := p^i` and the implicit `x_0 := 1`.
pub fn satake_specialize(e: &SymSeries) -> Result<Vec<LaurentP>> {
    let n = e.nvars();
    let values: Vec<LaurentP> = (1..=n).map(|i| LaurentP::p_pow(i as i32)).collect();
    e.coeffs()
        .iter()
        .map(|s| sym_substitute(s, &values))
        .collect()
}

/// `c_{2N-k} = (-1)^{n-1} p^{-n(n-1)/2} p^{N n(n+1)/2} c_k(1/p)` and exact
/// degree `2N`, for the specialization of a genus-`n` numerator.
fn satake_self_consistent(e: &SymSeries) -> Result<Option<String>> {
    let n = e.nvars();
    let top = 2 * numerator_centre(n);
    let c = satake_specialize(e)?;
    if c.len() <= top || c[top].is_zero() || c[top + 1..].iter().any(|x| !x.is_zero()) {
        return Ok(Some(format!("degree is not {top}")));
    }
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let shift = (numerator_centre(n) * n * (n + 1) / 2) as i32 - (n * (n - 1) / 2) as i32;
    for k in 0..=top {
        let predicted = c[k].invert_p().scale(&BigInt::from(sign)).shift(shift);
        if predicted != c[top - k] {
            return Ok(Some(differ(
                &format!("X^{}", top - k),
                &c[top - k],
                &predicted,
            )));
        }
    }
    Ok(None)
}

/// Genus 4 against the product expansion; `lower` genera only for
/// palindromy and degree.
pub fn satake_report(e4: &SymSeries, lower: &[SymSeries]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("satake");
    if e4.nvars() != 4 {
        return Err(Error::Usage("satake product is stated for genus 4".into()));
    }
    let got = satake_specialize(e4)?;
    let expect = satake_product_n4();
    if got.len() != expect.len() {
        rep.fail(format!(
            "{} coefficients, product has {}",
            got.len(),
            expect.len()
        ));
    }
    for (k, (g, x)) in got.iter().zip(&expect).enumerate() {
        if g != x {
            rep.fail(differ(&format!("X^{k}"), x, g));
            break;
        }
    }
    for e in lower {
        rep.notes.push(match satake_self_consistent(e)? {
            None => format!(
                "genus {} specialization is palindromic of full degree",
                e.nvars()
            ),
            Some(w) => format!("genus {} specialization inconsistent: {w}", e.nvars()),
        });
    }
    Ok(rep)
}

/// `f_i` for `i > 2^{n-1}` against the denominator image, and the image-side
/// relation `s_i = s_{2^n - i} (x_1..x_n)^{i - 2^{n-1}}`.
pub fn denominator_symmetry_report(r: &TheoremResult) -> Result<CheckReport> {
    let mut rep = CheckReport::new("denom-symmetry");
    let n = r.n;
    let half = 1usize << (n - 1);
    let top = 1usize << n;
    let fs = &r.f_series;
    if fs.bound() < top || r.f.len() != top + 1 {
        rep.fail(format!("denominator data stops before X^{top}"));
        return Ok(rep);
    }
    for i in half + 1..=top {
        let lhs = fs.coeff(top - i).mul_en_power((i - half) as u16);
        if lhs != *fs.coeff(i) {
            rep.fail(differ(&format!("image X^{i}"), fs.coeff(i), &lhs));
        }
    }
    let table = ImageTable::new(n, r.generator_images.clone())?;
    for i in half + 1..=top {
        let rule = &r.f[top - i] * &scaled_scalar_power(n, (i - half) as u32);
        if rule != r.f[i] {
            rep.fail(differ(
                &format!("f{i} by the symmetry rule"),
                &rule,
                &r.f[i],
            ));
        }
        let img = r.f[i].image(&table)?;
        if img != *fs.coeff(i) {
            rep.fail(format!(
                "f{i}: image of the Hecke form differs from the series coefficient"
            ));
        }
    }
    Ok(rep)
}

/// Siegel operator on Hecke polynomials: `[p]_n -> 0`, `T -> T`,
/// `T_i -> T_i` with `T_{n-1}^{(n)} -> [p]_{n-1}`.
pub fn genus_reduce_hecke(h: &HeckePoly) -> Result<HeckePoly> {
    let n = h.n();
    if n < 2 {
        return Err(Error::Usage("genus reduction needs genus >= 2".into()));
    }
    let mut out = HeckePoly::zero(n - 1);
    for (m, c) in h.terms() {
        if m.scalar_power() > 0 {
            continue;
        }
        out.add_term(GenMonomial::new(&m.exps()[..n])?, c);
    }
    Ok(out)
}

fn padded(v: &[HeckePoly], k: usize, n: usize) -> HeckePoly {
    v.get(k).cloned().unwrap_or_else(|| HeckePoly::zero(n))
}

/// Genus `n` data reduced to genus `n - 1`: Hecke coefficients, the spherical
/// series with `x_n := 0` (through `X^6` for `D`), and the generator images.
pub fn genus_reduction_report(upper: &TheoremResult, lower: &TheoremResult) -> Result<CheckReport> {
    let mut rep = CheckReport::new("genus-reduction");
    let n = upper.n;
    if lower.n + 1 != n {
        return Err(Error::Usage(format!(
            "cannot reduce genus {n} to {}",
            lower.n
        )));
    }
    for (name, up, low) in [("e", &upper.e, &lower.e), ("f", &upper.f, &lower.f)] {
        for k in 0..up.len().max(low.len()) {
            let got = genus_reduce_hecke(&padded(up, k, n))?;
            let want = padded(low, k, n - 1);
            if got != want {
                rep.fail(differ(&format!("reduced {name}{k}"), &want, &got));
            }
        }
    }

    let reduce_series = |s: &SymSeries, bound: usize| -> Result<Vec<SymPoly>> {
        s.truncate(bound)
            .coeffs()
            .iter()
            .map(sym_set_last_zero)
            .collect()
    };
    let d_bound = 6;
    let d_up = d_quotient(&upper.e_series, &upper.f_series, d_bound)?;
    let d_low = d_quotient(&lower.e_series, &lower.f_series, d_bound)?;
    let pairs = [
        ("D", reduce_series(&d_up, d_bound)?, d_low.coeffs().to_vec()),
        (
            "E",
            reduce_series(&upper.e_series, upper.e_series.bound())?,
            lower
                .e_series
                .truncate(upper.e_series.bound())
                .coeffs()
                .to_vec(),
        ),
        (
            "F",
            reduce_series(&upper.f_series, upper.f_series.bound())?,
            lower
                .f_series
                .truncate(upper.f_series.bound())
                .coeffs()
                .to_vec(),
        ),
    ];
    for (name, got, want) in &pairs {
        if let Some(k) = (0..got.len()).find(|&k| got[k] != want[k]) {
            rep.fail(differ(
                &format!("Omega({name}) at X^{k} with x_{n} = 0"),
                &want[k],
                &got[k],
            ));
        }
    }

    for img in &upper.generator_images {
        let got = sym_set_last_zero(&img.image)?;
        let target = match img.generator {
            Generator::Scalar => None,
            Generator::Ti(i) if i == n - 1 => Some(Generator::Scalar),
            g => Some(g),
        };
        let want = match target {
            None => SymPoly::zero(n - 1),
            Some(g) => lower
                .generator_images
                .iter()
                .find(|x| x.generator == g)
                .map(|x| x.image.clone())
                .ok_or_else(|| Error::Usage(format!("no genus-{} image for {g}", n - 1)))?,
        };
        if got != want {
            rep.fail(differ(
                &format!("Omega({}) with x_{n} = 0", img.generator),
                &want,
                &got,
            ));
        }
    }
    Ok(rep)
}

/// `Omega(T(p^k))` summed directly, against `Omega(E)/Omega(F)` and the
/// geometric split, for `k <= max_k`.
pub fn series_crosscheck_report(
    e: &SymSeries,
    f: &SymSeries,
    max_k: usize,
    omegas: &OmegaTable,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("series-crosscheck");
    let n = e.nvars();
    let quotient = d_quotient(e, f, max_k)?;
    let geometric = d_geometric(n, max_k, omegas)?;
    for k in 0..=max_k {
        let direct = d_coefficient_direct(n, k, omegas)?;
        if quotient.coeff(k) != &direct {
            rep.fail(differ(
                &format!("X^{k} quotient"),
                &direct,
                quotient.coeff(k),
            ));
        }
        if geometric.coeff(k) != &direct {
            rep.fail(differ(
                &format!("X^{k} geometric"),
                &direct,
                geometric.coeff(k),
            ));
        }
    }
    Ok(rep)
}

/// Solves the genus-4 `X^3` numerator coefficient and compares with the
/// displayed image and the known solution, including the zero coefficient of
/// `T^3`.
pub fn inversion_e3_report(target: &SymPoly, table: &ImageTable) -> Result<CheckReport> {
    let mut rep = CheckReport::new("inversion-e3");
    let fx: Fixture<SymPoly> = Fixture::parse(E3_IMAGE_N4)?;
    let displayed = &fx.get("e3").expect("fixture key").value;
    if displayed != target {
        rep.fail(differ("Omega(e3)", displayed, target));
    }
    let monos = enumerate_monomials(4, 3);
    let (sol, stats) = invert_coefficient(target, 3, table)?;
    let t = |exps: &[u32]| GenMonomial::new(exps).expect("valid");
    let expect: Vec<(GenMonomial, LaurentP)> = vec![
        (t(&[1, 0, 0, 1, 0]), LaurentP::from_i64s(4, &[1, 1])),
        (
            t(&[1, 0, 0, 0, 1]),
            // p^4 (p+1)(p^2+1)(p^3-p^2+1)
            LaurentP::from_i64s(4, &[1, 1, 0, 1, 0, 0, 1]),
        ),
    ];
    for m in &monos {
        let want = expect
            .iter()
            .find(|(x, _)| x == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default();
        let got = sol.coeff(m);
        if got != want {
            rep.fail(differ(&format!("K({m})"), &want, &got));
        }
    }
    if !monos.contains(&t(&[3, 0, 0, 0, 0])) {
        rep.fail("T^3 missing from the enumerated columns".into());
    }
    rep.notes.push(format!(
        "{} columns ({}), {} rows; solution {sol}",
        stats.cols,
        monos
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        stats.rows
    ));
    Ok(rep)
}

pub fn reports_json(reports: &[CheckReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_of_zero_and_top() {
        assert!(functional_transform(&SymPoly::zero(4), 3, 4)
            .unwrap()
            .is_zero());
        // X^14 coefficient -p^-6 sym7777 maps to 1, the X^0 coefficient.
        let top = SymPoly::sym(4, &[7, 7, 7, 7]).scale(&LaurentP::monomial(-1, -6));
        assert_eq!(functional_transform(&top, 14, 4).unwrap(), SymPoly::one(4));
        assert!(functional_transform(&top, 15, 4).is_err());
    }

    #[test]
    fn satake_product_ends() {
        let c = satake_product_n4();
        assert_eq!(c.len(), 15);
        assert_eq!(c[0], LaurentP::one());
        // eleven of the linear factors contribute a negative leading term
        let top_exp = 1 + 2 + 3 + 3 + 4 + 5 + 5 + 5 + 6 + 6 + 7 + 8 + 9;
        assert_eq!(c[14], LaurentP::monomial(-1, top_exp));
    }

    #[test]
    fn reduce_drops_scalar_terms() {
        let env = HashMap::new();
        let h: HeckePoly = crate::fixtures::eval_formula(4, "p^2 T3^4 + T P - T", &env).unwrap();
        let want: HeckePoly = crate::fixtures::eval_formula(3, "p^2 P^4 - T", &env).unwrap();
        assert_eq!(genus_reduce_hecke(&h).unwrap(), want);
    }

    #[test]
    fn unknown_check_lists_valid_ids() {
        let err = run_checks(&["nope".to_string()], &Workspace::new()).unwrap_err();
        assert!(err.to_string().contains("golden-4"));
    }

    #[test]
    fn report_display_and_json() {
        let mut r = CheckReport::new("x");
        r.fail("w1".into());
        r.fail("w2".into());
        assert_eq!(r.to_string(), "fail x: w1");
        let j = reports_json(&[r]);
        assert_eq!(j[0]["status"], "fail");
        assert_eq!(j[0]["witness"], "w1");
    }
}
