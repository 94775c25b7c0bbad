//! End-to-end computation of `E(X)` and `F(X)` in Hecke coordinates.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::glhecke::OmegaTable;
use crate::inversion::{
    invert_coefficient, invert_with_scalar, max_scalar_power, HeckePoly, ImageTable, SolveStats,
};
use crate::kernel::{check_arity, LaurentP};
use crate::spseries::{
    e_image_to, f_image, generator_images, Generator, GeneratorImage, SymSeries,
};

/// Everything the theorem computation produces.
#[derive(Clone, Debug)]
pub struct TheoremResult {
    pub n: usize,
    pub generator_images: Vec<GeneratorImage>,
    pub e_series: SymSeries,
    pub f_series: SymSeries,
    /// `e_0 .. e_{2^n - 2}`, or fewer for a truncated run.
    pub e: Vec<HeckePoly>,
    /// `f_0 .. f_{2^n}`, or fewer for a truncated run.
    pub f: Vec<HeckePoly>,
    pub e_stats: Vec<SolveStats>,
    /// Stats for the directly solved `f_0 .. f_{2^{n-1}}`.
    pub f_stats: Vec<SolveStats>,
    pub omega_evaluations: usize,
    /// `(stage, seconds)` in execution order.
    pub timings: Vec<(String, f64)>,
}

/// `(p^{n(n+1)/2} [p])^j`.
pub fn scaled_scalar_power(n: usize, j: u32) -> HeckePoly {
    HeckePoly::generator(n, Generator::Scalar)
        .scale(&LaurentP::p_pow((n * (n + 1) / 2) as i32))
        .pow(j)
}

/// `f_i = f_{2^n - i} (p^{n(n+1)/2} [p])^{i - 2^{n-1}}` for the upper half.
pub fn f_upper_from_lower(n: usize, lower: &[HeckePoly]) -> Vec<HeckePoly> {
    let half = 1usize << (n - 1);
    let top = 1usize << n;
    (half + 1..=top)
        .map(|i| &lower[top - i] * &scaled_scalar_power(n, (i - half) as u32))
        .collect()
}

/// Solves one numerator coefficient. Above the middle degree the maximal
/// power of `[p]` is divided out first; smaller powers are tried if the
/// reduced target is not an image.
pub fn invert_numerator_coefficient(
    target: &crate::kernel::SymPoly,
    k: u32,
    middle: u32,
    table: &ImageTable,
) -> Result<(HeckePoly, SolveStats)> {
    if k <= middle {
        return invert_coefficient(target, k, table);
    }
    let max_m = max_scalar_power(target).min(k / 2);
    let mut last_err = None;
    for m in (0..=max_m).rev() {
        match invert_with_scalar(target, k, m, table) {
            Ok(r) => return Ok(r),
            Err(e @ Error::NotInImage { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least m = 0 was tried"))
}

pub fn run_theorem(n: usize, omegas: &OmegaTable) -> Result<TheoremResult> {
    run_theorem_to(n, omegas, None)
}

/// As [`run_theorem`], but only solves coefficients up to `X^max_degree` when
/// given. Series are truncated accordingly.
pub fn run_theorem_to(
    n: usize,
    omegas: &OmegaTable,
    max_degree: Option<usize>,
) -> Result<TheoremResult> {
    check_arity(n)?;
    let mut timings = Vec::new();
    let t = Instant::now();
    let images = generator_images(n, omegas)?;
    let table = ImageTable::new(n, images.clone())?;
    timings.push(("generator_images".to_string(), t.elapsed().as_secs_f64()));

    let e_top = (1usize << n) - 2;
    let f_top = 1usize << n;
    let e_bound = max_degree.map_or(e_top, |d| d.min(e_top));
    let f_bound = max_degree.map_or(f_top, |d| d.min(f_top));

    let t = Instant::now();
    let e_series = e_image_to(n, e_bound, omegas)?;
    timings.push(("e_image".to_string(), t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let f_series = f_image(n)?.truncate(f_bound);
    timings.push(("f_image".to_string(), t.elapsed().as_secs_f64()));

    let middle = (1u32 << (n - 1)) - 1;
    let t = Instant::now();
    let e_solved = (0..=e_series.bound())
        .into_par_iter()
        .map(|k| {
            invert_numerator_coefficient(e_series.coeff(k), k as u32, middle, &table).map_err(|e| {
                Error::Solve {
                    coefficient: format!("e_{k}"),
                    reason: e.to_string(),
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    timings.push(("invert_e".to_string(), t.elapsed().as_secs_f64()));

    let half = 1usize << (n - 1);
    let t = Instant::now();
    let f_solved = (0..=half.min(f_bound))
        .into_par_iter()
        .map(|k| {
            invert_coefficient(f_series.coeff(k), k as u32, &table).map_err(|e| Error::Solve {
                coefficient: format!("f_{k}"),
                reason: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    timings.push(("invert_f".to_string(), t.elapsed().as_secs_f64()));

    let (e, e_stats): (Vec<_>, Vec<_>) = e_solved.into_iter().unzip();
    let (mut f, f_stats): (Vec<_>, Vec<_>) = f_solved.into_iter().unzip();
    if f_bound > half {
        let upper = f_upper_from_lower(n, &f);
        f.extend(upper.into_iter().take(f_bound - half));
    }

    Ok(TheoremResult {
        n,
        generator_images: images,
        e_series,
        f_series,
        e,
        f,
        e_stats,
        f_stats,
        omega_evaluations: omegas.evaluations(),
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one() {
        let r = run_theorem(1, &OmegaTable::new()).unwrap();
        assert_eq!(r.e, vec![HeckePoly::one(1)]);
        let t = HeckePoly::generator(1, Generator::T);
        let s = HeckePoly::generator(1, Generator::Scalar).scale(&LaurentP::p());
        assert_eq!(r.f, vec![HeckePoly::one(1), -&t, s]);
    }

    #[test]
    fn truncated_run_is_a_prefix() {
        let full = run_theorem(2, &OmegaTable::new()).unwrap();
        for d in [0, 1, 3] {
            let part = run_theorem_to(2, &OmegaTable::new(), Some(d)).unwrap();
            assert_eq!(part.e, full.e[..=d.min(2)]);
            assert_eq!(part.f, full.f[..=d]);
        }
    }

    #[test]
    fn upper_half_from_symmetry() {
        let lower = vec![HeckePoly::one(1), HeckePoly::generator(1, Generator::T)];
        let up = f_upper_from_lower(1, &lower);
        assert_eq!(up.len(), 1);
        assert_eq!(up[0], scaled_scalar_power(1, 1));
    }
}
