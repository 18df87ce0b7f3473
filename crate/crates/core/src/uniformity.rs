//! DDT spectra: per-direction preimage counts of D_αf, the full differential
//! uniformity scan, and CSV rendering. The data-parallel paths live behind
//! the `parallel` feature with sequential equivalents always available.

use crate::error::{Error, Result};
use crate::gf2n::{FieldContext, FieldElement};
use crate::poly::{d_alpha, Poly};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Row guard: 2^n table cells, overridable per call.
pub const DEFAULT_ROW_GUARD_BITS: u32 = 24;
/// Full-scan guard: 2^n rows of 2^n cells each.
pub const DELTA_FULL_MAX_N: u32 = 14;

/// One DDT row: preimage counts of D_αf with zero counts omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub alpha: FieldElement,
    /// degree of D_αf
    pub d_degree: usize,
    /// (β, #{x : D_αf(x) = β}) ascending in β, zero counts omitted
    pub counts: Vec<(FieldElement, u64)>,
    /// max count in the row
    pub delta_alpha: u64,
    /// β whose count reaches deg(D_αf), i.e. D_αf - β splits completely
    pub split_betas: Vec<FieldElement>,
}

fn histogram_seq(ctx: &FieldContext, d: &Poly) -> Vec<u8> {
    let mut dense = vec![0u8; ctx.order() as usize];
    for x in 0..ctx.order() {
        dense[d.eval(ctx, x) as usize] += 1;
    }
    dense
}

#[cfg(feature = "parallel")]
fn histogram_par(ctx: &FieldContext, d: &Poly) -> Vec<u8> {
    let order = ctx.order();
    let blocks = (rayon::current_num_threads().max(1) as u64).min(order);
    let chunk = order.div_ceil(blocks);
    let partials: Vec<Vec<u8>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut dense = vec![0u8; order as usize];
            for x in b * chunk..((b + 1) * chunk).min(order) {
                dense[d.eval(ctx, x) as usize] += 1;
            }
            dense
        })
        .collect();
    let mut dense = vec![0u8; order as usize];
    for p in partials {
        for (acc, part) in dense.iter_mut().zip(p) {
            *acc += part;
        }
    }
    dense
}

fn guard_checks(ctx: &FieldContext, f: &Poly, alpha: FieldElement, guard_bits: u32) -> Result<()> {
    if ctx.n() > guard_bits {
        return Err(Error::Guard(format!(
            "DDT row over GF(2^{}) exceeds the 2^{} cell budget; raise --guard-bits to allow it",
            ctx.n(),
            guard_bits
        )));
    }
    if alpha == 0 || !ctx.contains(alpha) {
        return Err(Error::InvalidInput(
            "row direction alpha must be a nonzero field element".into(),
        ));
    }
    if f.degree().unwrap_or(0) > 255 {
        return Err(Error::Guard(
            "byte counters cap preimage counts at 255; degree must stay below 256".into(),
        ));
    }
    Ok(())
}

fn row_from_histogram(
    ctx: &FieldContext,
    alpha: FieldElement,
    d_degree: usize,
    dense: &[u8],
) -> SpectrumRow {
    let mut counts = Vec::new();
    let mut delta_alpha = 0u64;
    let mut split_betas = Vec::new();
    for (beta, &c) in dense.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c as u64;
        counts.push((beta as u64, c));
        delta_alpha = delta_alpha.max(c);
        if c as usize == d_degree {
            split_betas.push(beta as u64);
        }
    }
    debug_assert_eq!(counts.iter().map(|&(_, c)| c).sum::<u64>(), ctx.order());
    debug_assert!(counts.iter().all(|&(_, c)| c % 2 == 0), "x and x + alpha pair up");
    SpectrumRow {
        alpha,
        d_degree,
        counts,
        delta_alpha,
        split_betas,
    }
}

fn constant_row(ctx: &FieldContext, alpha: FieldElement, d: &Poly) -> SpectrumRow {
    SpectrumRow {
        alpha,
        d_degree: 0,
        counts: vec![(d.coeff(0), ctx.order())],
        delta_alpha: ctx.order(),
        split_betas: Vec::new(),
    }
}

pub fn ddt_row_seq(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<SpectrumRow> {
    ddt_row_guarded_seq(ctx, f, alpha, DEFAULT_ROW_GUARD_BITS)
}

fn ddt_row_guarded_seq(
    ctx: &FieldContext,
    f: &Poly,
    alpha: FieldElement,
    guard_bits: u32,
) -> Result<SpectrumRow> {
    guard_checks(ctx, f, alpha, guard_bits)?;
    let d = d_alpha(ctx, f, alpha)?;
    if d.degree().unwrap_or(0) == 0 {
        return Ok(constant_row(ctx, alpha, &d));
    }
    let dense = histogram_seq(ctx, &d);
    Ok(row_from_histogram(ctx, alpha, d.degree().unwrap(), &dense))
}

#[cfg(feature = "parallel")]
pub fn ddt_row_par(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<SpectrumRow> {
    ddt_row_guarded_par(ctx, f, alpha, DEFAULT_ROW_GUARD_BITS)
}

#[cfg(feature = "parallel")]
fn ddt_row_guarded_par(
    ctx: &FieldContext,
    f: &Poly,
    alpha: FieldElement,
    guard_bits: u32,
) -> Result<SpectrumRow> {
    guard_checks(ctx, f, alpha, guard_bits)?;
    let d = d_alpha(ctx, f, alpha)?;
    if d.degree().unwrap_or(0) == 0 {
        return Ok(constant_row(ctx, alpha, &d));
    }
    let dense = histogram_par(ctx, &d);
    Ok(row_from_histogram(ctx, alpha, d.degree().unwrap(), &dense))
}

/// One DDT row with the default 2^24 guard.
pub fn ddt_row(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<SpectrumRow> {
    ddt_row_with_guard(ctx, f, alpha, DEFAULT_ROW_GUARD_BITS)
}

pub fn ddt_row_with_guard(
    ctx: &FieldContext,
    f: &Poly,
    alpha: FieldElement,
    guard_bits: u32,
) -> Result<SpectrumRow> {
    #[cfg(feature = "parallel")]
    {
        ddt_row_guarded_par(ctx, f, alpha, guard_bits)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ddt_row_guarded_seq(ctx, f, alpha, guard_bits)
    }
}

/// δ(f) together with the first (α, β) attaining it: smallest α, then β.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaSummary {
    pub delta: u64,
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

/// (delta, alpha, beta) for one row: max count and the smallest β reaching it.
fn row_extreme(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<(u64, u64, u64)> {
    let d = d_alpha(ctx, f, alpha)?;
    if d.degree().unwrap_or(0) == 0 {
        return Ok((ctx.order(), alpha, d.coeff(0)));
    }
    let dense = histogram_seq(ctx, &d);
    let mut best = (0u64, alpha, 0u64);
    for (beta, &c) in dense.iter().enumerate() {
        if (c as u64) > best.0 {
            best = (c as u64, alpha, beta as u64);
        }
    }
    Ok(best)
}

fn better(a: (u64, u64, u64), b: (u64, u64, u64)) -> (u64, u64, u64) {
    if a.0 != b.0 {
        return if a.0 > b.0 { a } else { b };
    }
    if a.1 <= b.1 {
        a
    } else {
        b
    }
}

fn delta_guard(ctx: &FieldContext, f: &Poly, max_n: u32) -> Result<()> {
    if ctx.n() > max_n {
        return Err(Error::Guard(format!(
            "full differential scan is limited to n <= {max_n}; raise --full-max-n or analyze single rows"
        )));
    }
    if f.degree().unwrap_or(0) > 255 {
        return Err(Error::Guard(
            "byte counters cap preimage counts at 255; degree must stay below 256".into(),
        ));
    }
    Ok(())
}

fn delta_scan_seq(ctx: &FieldContext, f: &Poly) -> Result<DeltaSummary> {
    let mut best: Option<(u64, u64, u64)> = None;
    for alpha in 1..=ctx.mask() {
        let cand = row_extreme(ctx, f, alpha)?;
        best = Some(match best {
            None => cand,
            Some(cur) => better(cur, cand),
        });
    }
    let (delta, alpha, beta) = best.expect("at least one direction");
    Ok(DeltaSummary { delta, alpha, beta })
}

#[cfg(feature = "parallel")]
fn delta_scan_par(ctx: &FieldContext, f: &Poly) -> Result<DeltaSummary> {
    let extremes: Vec<(u64, u64, u64)> = (1..=ctx.mask())
        .into_par_iter()
        .map(|alpha| row_extreme(ctx, f, alpha))
        .collect::<Result<_>>()?;
    let (delta, alpha, beta) = extremes
        .into_iter()
        .reduce(better)
        .expect("at least one direction");
    Ok(DeltaSummary { delta, alpha, beta })
}

pub fn delta_full_seq(ctx: &FieldContext, f: &Poly) -> Result<DeltaSummary> {
    delta_guard(ctx, f, DELTA_FULL_MAX_N)?;
    delta_scan_seq(ctx, f)
}

#[cfg(feature = "parallel")]
pub fn delta_full_par(ctx: &FieldContext, f: &Poly) -> Result<DeltaSummary> {
    delta_guard(ctx, f, DELTA_FULL_MAX_N)?;
    delta_scan_par(ctx, f)
}

/// Differential uniformity over all α != 0, under an explicit size guard.
pub fn delta_full_with_guard(ctx: &FieldContext, f: &Poly, max_n: u32) -> Result<DeltaSummary> {
    delta_guard(ctx, f, max_n)?;
    #[cfg(feature = "parallel")]
    {
        delta_scan_par(ctx, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        delta_scan_seq(ctx, f)
    }
}

/// Differential uniformity over all α != 0; n <= 14 only.
pub fn delta_full(ctx: &FieldContext, f: &Poly) -> Result<DeltaSummary> {
    delta_full_with_guard(ctx, f, DELTA_FULL_MAX_N)
}

/// `alpha_hex,beta_hex,count` lines with a header; zero counts omitted.
pub fn row_to_csv(ctx: &FieldContext, row: &SpectrumRow) -> String {
    let mut out = String::from("alpha_hex,beta_hex,count\n");
    let alpha = ctx.fmt_element(row.alpha);
    for &(beta, count) in &row.counts {
        out.push_str(&alpha);
        out.push(',');
        out.push_str(&ctx.fmt_element(beta));
        out.push(',');
        out.push_str(&count.to_string());
        out.push('\n');
    }
    out
}
