//! Top-level checkers: the γ-trace/Morse criterion giving δ ≥ 6, the
//! split-quartic criterion giving δ = 8, the effective Chebotarev threshold
//! calculator, and sampled factorization statistics for the monodromy groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2n::{FieldContext, FieldElement};
use crate::poly::{factorization_type, l_alpha, roots_by_gcd, Degree10Coeffs, Poly};
use crate::quartic::{klein_check, reduce_quartic, williams_parts, CubicPattern};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Threshold above which the δ ≥ 6 conclusion is certified.
pub const THM_MAIN_MIN_N: u32 = 13;
/// Threshold above which the δ = 8 conclusion is certified.
pub const THM2_MIN_N: u32 = 15;
pub const DEFAULT_STATS_SEED: u64 = 42;
pub const DEFAULT_STATS_SAMPLES: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    Main,
    A1A3Zero,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Main => "main",
            TheoremId::A1A3Zero => "a1a3zero",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    DeltaGe6,
    DeltaEq8,
    Inapplicable,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::DeltaGe6 => "delta_ge_6",
            Conclusion::DeltaEq8 => "delta_eq_8",
            Conclusion::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    pub witness: String,
}

/// Outcome of a theorem check; conclusion != inapplicable exactly when every
/// condition passes and n >= min_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub theorem: TheoremId,
    pub n: u32,
    pub modulus: u64,
    pub conditions: Vec<Condition>,
    pub alpha_used: Option<FieldElement>,
    pub min_n: u32,
    pub conclusion: Conclusion,
}

fn hex_el(n: u32, v: u64) -> String {
    format!("{:0width$x}", v, width = n.div_ceil(4) as usize)
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    fn sealed(self) -> ConditionReport {
        let applicable = self.all_pass() && self.n >= self.min_n;
        debug_assert_eq!(applicable, self.conclusion != Conclusion::Inapplicable);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem.as_str(),
            "field": {"n": self.n, "modulus": format!("{:x}", self.modulus)},
            "conditions": self.conditions.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "alpha": self.alpha_used.map(|a| hex_el(self.n, a)),
            "min_n": self.min_n,
            "conclusion": self.conclusion.as_str(),
        })
    }
}

/// δ ≥ 6 check: a_1a_3 != 0, Tr((a_1a_4+a_5)/(a_1^2 a_3)) = 0, and the
/// critical value certificate nonzero; the input is normalized monic first.
pub fn thm_main_check(ctx: &FieldContext, coeffs: &Degree10Coeffs) -> Result<ConditionReport> {
    let monic = coeffs.monic(ctx)?;
    let a = monic.a;
    let i_pass = a[1] != 0 && a[3] != 0;
    let cond_i = Condition {
        name: "a1a3_nonzero",
        pass: i_pass,
        witness: format!(
            "a_1 = {}, a_3 = {}",
            hex_el(ctx.n(), a[1]),
            hex_el(ctx.n(), a[3])
        ),
    };
    let cond_ii = if i_pass {
        let gamma = ctx.div(ctx.mul(a[1], a[4]) ^ a[5], ctx.mul(ctx.sqr(a[1]), a[3]))?;
        let t = ctx.trace(gamma);
        Condition {
            name: "critical_trace_zero",
            pass: t == 0,
            witness: format!("Tr({}) = {t}", hex_el(ctx.n(), gamma)),
        }
    } else {
        Condition {
            name: "critical_trace_zero",
            pass: false,
            witness: "undefined (a_1 a_3 = 0)".into(),
        }
    };
    let morse = crate::quartic::morse_check(ctx, &monic)?;
    debug_assert_eq!(morse.applicable, i_pass);
    let cond_iii = if morse.applicable {
        Condition {
            name: "morse_nondegenerate",
            pass: morse.nondegenerate,
            witness: format!("certificate = {}", hex_el(ctx.n(), morse.value)),
        }
    } else {
        Condition {
            name: "morse_nondegenerate",
            pass: false,
            witness: "undefined (a_1 a_3 = 0)".into(),
        }
    };
    let all = cond_i.pass && cond_ii.pass && cond_iii.pass;
    let conclusion = if all && ctx.n() >= THM_MAIN_MIN_N {
        Conclusion::DeltaGe6
    } else {
        Conclusion::Inapplicable
    };
    Ok(ConditionReport {
        theorem: TheoremId::Main,
        n: ctx.n(),
        modulus: ctx.modulus(),
        conditions: vec![cond_i, cond_ii, cond_iii],
        alpha_used: (a[1] != 0).then_some(a[1]),
        min_n: THM_MAIN_MIN_N,
        conclusion,
    }
    .sealed())
}

/// Kernel constants u of the additive part: the roots of u^3 + bu + c, equal
/// to c/r for each root r of the resolvent cubic.
fn kernel_roots(ctx: &FieldContext, c: FieldElement, r3_roots: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let mut us = Vec::with_capacity(r3_roots.len());
    for &r in r3_roots {
        us.push(ctx.div(c, r)?);
    }
    us.sort_unstable();
    Ok(us)
}

/// Fast sweep predicate: same conditions as the full report, no root-finder
/// cross-checks and no report allocation.
fn thm2_passes(ctx: &FieldContext, monic: &Degree10Coeffs, alpha: FieldElement) -> Result<bool> {
    let a = &monic.a;
    let inv_a = ctx.inv(alpha)?;
    let b = ctx.pow(alpha, 4) ^ a[4] ^ ctx.mul(a[5], inv_a);
    let c = ctx.mul(a[5], alpha) ^ ctx.mul(a[7], inv_a);
    if c == 0 {
        return Ok(false);
    }
    let ia2 = ctx.inv(ctx.sqr(alpha))?;
    if ctx.trace(ctx.mul(b, ia2)) != 0 {
        return Ok(false);
    }
    let parts = williams_parts(ctx, b, c)?;
    if parts.pattern != CubicPattern::ThreeRoots {
        return Ok(false);
    }
    let cubic = Poly::new(vec![ctx.sqr(c), 0, b, 1]);
    let roots = roots_by_gcd(ctx, &cubic)?;
    if roots.len() != 3 {
        return Err(Error::Internal(
            "Williams predicted a split cubic but the root finder disagrees".into(),
        ));
    }
    for u in kernel_roots(ctx, c, &roots)? {
        if ctx.trace(ctx.mul(u, ia2)) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn thm2_at_alpha(
    ctx: &FieldContext,
    monic: &Degree10Coeffs,
    alpha: FieldElement,
) -> Result<ConditionReport> {
    if alpha == 0 {
        return Err(Error::InvalidInput("alpha must be nonzero".into()));
    }
    let quartic = reduce_quartic(ctx, monic, alpha)?;
    let klein = klein_check(ctx, &quartic)?;
    let n = ctx.n();
    let mut conditions = Vec::with_capacity(6);
    conditions.push(Condition {
        name: "c_nonzero",
        pass: klein.c_nonzero,
        witness: format!("c = {}", hex_el(n, klein.c)),
    });
    if klein.c_nonzero {
        let tr_val = ctx.trace(ctx.div(ctx.pow(klein.b, 6), ctx.pow(klein.c, 4))?);
        conditions.push(Condition {
            name: "r3_trace_condition",
            pass: klein.trace_condition,
            witness: format!("Tr(b^6/c^4) = {tr_val}, Tr(1) = {}", ctx.trace(1)),
        });
        conditions.push(Condition {
            name: "q_roots_are_cubes",
            pass: klein.q_roots_are_cubes,
            witness: format!(
                "Q = T^2 + {}T + {}",
                hex_el(n, ctx.sqr(klein.c)),
                hex_el(n, ctx.pow(klein.b, 6))
            ),
        });
        conditions.push(Condition {
            name: "r3_splits",
            pass: klein.r3_split,
            witness: format!(
                "roots of x^3+bx^2+c^2 in field: [{}]",
                klein
                    .r3_roots
                    .iter()
                    .map(|&r| hex_el(n, r))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    } else {
        for name in ["r3_trace_condition", "q_roots_are_cubes", "r3_splits"] {
            conditions.push(Condition {
                name,
                pass: false,
                witness: "undefined (c = 0)".into(),
            });
        }
    }
    let ia2 = ctx.inv(ctx.sqr(alpha))?;
    let b_over = ctx.mul(quartic.b, ia2);
    let second_floor_pass = ctx.trace(b_over) == 0;
    conditions.push(Condition {
        name: "second_floor_trace_zero",
        pass: second_floor_pass,
        witness: format!("Tr(b/alpha^2) = Tr({}) = {}", hex_el(n, b_over), ctx.trace(b_over)),
    });
    if klein.r3_split {
        let us = kernel_roots(ctx, klein.c, &klein.r3_roots)?;
        let traces: Vec<u8> = us.iter().map(|&u| ctx.trace(ctx.mul(u, ia2))).collect();
        conditions.push(Condition {
            name: "kernel_traces_zero",
            pass: traces.iter().all(|&t| t == 0),
            witness: format!(
                "Tr(u/alpha^2) = {:?} for kernel roots [{}]",
                traces,
                us.iter().map(|&u| hex_el(n, u)).collect::<Vec<_>>().join(", ")
            ),
        });
        if conditions.iter().all(|c| c.pass) {
            // Hilbert-90 consistency: all the certified traces are zero, so
            // the corresponding Artin-Schreier equations must solve
            assert!(ctx.solve_artin_schreier(alpha, quartic.b)?.is_some());
            for &u in &us {
                assert!(ctx.solve_artin_schreier(alpha, u)?.is_some());
            }
        }
    } else {
        conditions.push(Condition {
            name: "kernel_traces_zero",
            pass: false,
            witness: "undefined (resolvent cubic does not split)".into(),
        });
    }
    let all = conditions.iter().all(|c| c.pass);
    let conclusion = if all && n >= THM2_MIN_N {
        Conclusion::DeltaEq8
    } else {
        Conclusion::Inapplicable
    };
    Ok(ConditionReport {
        theorem: TheoremId::A1A3Zero,
        n,
        modulus: ctx.modulus(),
        conditions,
        alpha_used: Some(alpha),
        min_n: THM2_MIN_N,
        conclusion,
    }
    .sealed())
}

fn sweep_failure_report(ctx: &FieldContext, candidates: u64) -> ConditionReport {
    ConditionReport {
        theorem: TheoremId::A1A3Zero,
        n: ctx.n(),
        modulus: ctx.modulus(),
        conditions: vec![Condition {
            name: "passing_alpha_exists",
            pass: false,
            witness: format!("no alpha among the first {candidates} nonzero directions passed"),
        }],
        alpha_used: None,
        min_n: THM2_MIN_N,
        conclusion: Conclusion::Inapplicable,
    }
    .sealed()
}

/// δ = 8 check for a_1 = a_3 = 0: with an explicit α it reports the split and
/// trace conditions there; without one it sweeps α by increasing bit value and
/// reports the first direction passing everything.
pub fn thm2_check(
    ctx: &FieldContext,
    coeffs: &Degree10Coeffs,
    alpha: Option<FieldElement>,
    sweep_cap: Option<u64>,
) -> Result<ConditionReport> {
    let monic = coeffs.monic(ctx)?;
    if monic.a[1] != 0 || monic.a[3] != 0 {
        return Err(Error::InvalidInput(
            "a_1 or a_3 is nonzero after normalization; this family belongs to the main-theorem checker".into(),
        ));
    }
    if let Some(alpha) = alpha {
        return thm2_at_alpha(ctx, &monic, alpha);
    }
    let sweep_max = if ctx.n() > 20 {
        sweep_cap
            .ok_or_else(|| {
                Error::Guard(format!(
                    "sweeping all 2^{} - 1 directions needs an explicit bound; pass --sweep-cap",
                    ctx.n()
                ))
            })?
            .min(ctx.mask())
    } else {
        sweep_cap.map_or(ctx.mask(), |c| c.min(ctx.mask()))
    };
    let found = find_first_passing(ctx, &monic, sweep_max);
    match found {
        Some(alpha) => {
            let report = thm2_at_alpha(ctx, &monic, alpha)?;
            if !report.all_pass() {
                return Err(Error::Internal(
                    "sweep predicate and full report disagree".into(),
                ));
            }
            Ok(report)
        }
        None => Ok(sweep_failure_report(ctx, sweep_max)),
    }
}

#[cfg(feature = "parallel")]
fn find_first_passing(
    ctx: &FieldContext,
    monic: &Degree10Coeffs,
    sweep_max: u64,
) -> Option<FieldElement> {
    (1..=sweep_max)
        .into_par_iter()
        .find_first(|&a| thm2_passes(ctx, monic, a).expect("sweep predicate"))
}

#[cfg(not(feature = "parallel"))]
fn find_first_passing(
    ctx: &FieldContext,
    monic: &Degree10Coeffs,
    sweep_max: u64,
) -> Option<FieldElement> {
    (1..=sweep_max).find(|&a| thm2_passes(ctx, monic, a).expect("sweep predicate"))
}

/// Genus bound, the least n certifying at least one split specialization, and
/// the exact value lower bound at that n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebotarevParams {
    /// n at which v_lower_bound is evaluated; equals min_n
    pub n: u32,
    pub d_omega: u64,
    pub deg_d_poly: u64,
    pub g_bound: u64,
    /// reduced fraction (2^n - 2g·ceil(2^{n/2}) - 2g - 2d)/d at n = min_n
    pub v_lower_bound: (BigInt, BigInt),
    pub min_n: u32,
}

impl ChebotarevParams {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d_omega": self.d_omega,
            "deg_d_poly": self.deg_d_poly,
            "g_bound": self.g_bound,
            "v_lower_bound": format!("{}/{}", self.v_lower_bound.0, self.v_lower_bound.1),
            "min_n": self.min_n,
        })
    }
}

/// Smallest integer at least 2^{n/2}, exactly.
fn ceil_sqrt_pow2(n: u32) -> BigInt {
    if n % 2 == 0 {
        BigInt::from(1) << (n / 2)
    } else {
        // 2^n is never a perfect square for odd n, so ceil = floor + 1
        (BigInt::from(1u8) << n).sqrt() + 1
    }
}

/// g = (deg-3)·d/2 + 1, then the least n with 2^n - 2g·2^{n/2} - 2g - 3d > 0;
/// the irrational comparison is decided exactly via A > 0 and A^2 > 4g^2·2^n
/// with A = 2^n - 2g - 3d.
pub fn chebotarev_threshold(d_omega: u64, deg_d_poly: u64) -> Result<ChebotarevParams> {
    if d_omega < 1 {
        return Err(Error::InvalidInput("d_omega must be at least 1".into()));
    }
    if deg_d_poly < 3 {
        return Err(Error::InvalidInput(
            "deg_d_poly must be at least 3 (the bound subtracts 3)".into(),
        ));
    }
    let prod = (deg_d_poly - 3)
        .checked_mul(d_omega)
        .ok_or_else(|| Error::InvalidInput("genus bound overflows".into()))?;
    if prod % 2 != 0 {
        return Err(Error::InvalidInput(
            "(deg_d_poly - 3)·d_omega must be even for the genus bound".into(),
        ));
    }
    let g_bound = prod / 2 + 1;
    let g = BigInt::from(g_bound);
    let d = BigInt::from(d_omega);
    let mut min_n = None;
    for n in 1u32..=10_000 {
        let pow = BigInt::from(1u8) << n;
        let a = &pow - 2 * &g - 3 * &d;
        if a > BigInt::from(0) && &a * &a > 4 * &g * &g * &pow {
            min_n = Some(n);
            break;
        }
    }
    let min_n = min_n.expect("2^n eventually dominates");
    let pow = BigInt::from(1u8) << min_n;
    let num: BigInt = &pow - 2 * &g * ceil_sqrt_pow2(min_n) - 2 * &g - 2 * &d;
    let shared = num.gcd(&d);
    let v_lower_bound = (&num / &shared, &d / &shared);
    Ok(ChebotarevParams {
        n: min_n,
        d_omega,
        deg_d_poly,
        g_bound,
        v_lower_bound,
        min_n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatsMode {
    CubicS3,
    QuarticKlein,
}

impl StatsMode {
    pub fn as_str(self) -> &'static str {
        match self {
            StatsMode::CubicS3 => "cubic_s3",
            StatsMode::QuarticKlein => "quartic_klein",
        }
    }
}

/// Chebotarev density of a factorization pattern under the mode's group.
pub fn expected_density(mode: StatsMode, pattern: &[u32]) -> Option<f64> {
    match (mode, pattern) {
        (StatsMode::CubicS3, [1, 1, 1]) => Some(1.0 / 6.0),
        (StatsMode::CubicS3, [1, 2]) => Some(0.5),
        (StatsMode::CubicS3, [3]) => Some(1.0 / 3.0),
        (StatsMode::QuarticKlein, [1, 1, 1, 1]) => Some(0.25),
        (StatsMode::QuarticKlein, [2, 2]) => Some(0.75),
        _ => None,
    }
}

/// Observed factorization patterns of g(x) - t_0 over sampled t_0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeHistogram {
    pub counts: BTreeMap<Vec<u32>, u64>,
    pub samples: u64,
    /// non-squarefree specializations skipped
    pub excluded: u64,
}

impl TypeHistogram {
    pub fn frequency(&self, pattern: &[u32]) -> f64 {
        let kept = self.samples - self.excluded;
        if kept == 0 {
            return 0.0;
        }
        *self.counts.get(pattern).unwrap_or(&0) as f64 / kept as f64
    }

    pub fn to_json(&self, mode: StatsMode) -> Value {
        json!({
            "mode": mode.as_str(),
            "samples": self.samples,
            "excluded": self.excluded,
            "patterns": self.counts.iter().map(|(p, c)| json!({
                "pattern": p.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
                "count": c,
                "frequency": self.frequency(p),
                "expected": expected_density(mode, p),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The polynomial whose specializations get factored in each mode.
fn stats_base_poly(
    ctx: &FieldContext,
    coeffs: &Degree10Coeffs,
    alpha: FieldElement,
    mode: StatsMode,
) -> Result<Poly> {
    let monic = coeffs.monic(ctx)?;
    match mode {
        StatsMode::CubicS3 => {
            if monic.a[1] == 0 || monic.a[3] == 0 {
                return Err(Error::InvalidInput(
                    "cubic_s3 mode needs a_1 a_3 != 0".into(),
                ));
            }
            if alpha != monic.a[1] {
                return Err(Error::InvalidInput(
                    "cubic_s3 mode requires alpha = a_1 after normalization".into(),
                ));
            }
            let pair = l_alpha(ctx, &monic.to_poly(), alpha)?;
            if pair.d != 3 {
                return Err(Error::Internal("companion is not cubic at alpha = a_1".into()));
            }
            Ok(pair.l_poly)
        }
        StatsMode::QuarticKlein => {
            if monic.a[1] != 0 || monic.a[3] != 0 {
                return Err(Error::InvalidInput(
                    "quartic_klein mode needs a_1 = a_3 = 0".into(),
                ));
            }
            let quartic = reduce_quartic(ctx, &monic, alpha)?;
            let report = klein_check(ctx, &quartic)?;
            if !report.verdict {
                return Err(Error::InvalidInput(
                    "quartic_klein mode requires the split verdict to hold at alpha".into(),
                ));
            }
            Ok(quartic.to_poly())
        }
    }
}

fn classify(ctx: &FieldContext, g: &Poly, t0: u64, mode: StatsMode) -> Result<Option<Vec<u32>>> {
    let spec = g.add(&Poly::constant(t0));
    match factorization_type(ctx, &spec) {
        Ok(pattern) => {
            let legal = match mode {
                StatsMode::CubicS3 => {
                    matches!(pattern.as_slice(), [1, 1, 1] | [1, 2] | [3])
                }
                StatsMode::QuarticKlein => {
                    matches!(pattern.as_slice(), [1, 1, 1, 1] | [2, 2])
                }
            };
            if !legal {
                return Err(Error::Internal(format!(
                    "forbidden splitting pattern {pattern:?} falsifies the group verdict"
                )));
            }
            Ok(Some(pattern))
        }
        Err(Error::NotSquarefree { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn draw_t0s(ctx: &FieldContext, samples: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| rng.next_u64() & ctx.mask()).collect()
}

fn tally(samples: u64, outcomes: Vec<Option<Vec<u32>>>) -> TypeHistogram {
    let mut counts = BTreeMap::new();
    let mut excluded = 0;
    for o in outcomes {
        match o {
            Some(p) => *counts.entry(p).or_insert(0) += 1,
            None => excluded += 1,
        }
    }
    let hist = TypeHistogram {
        counts,
        samples,
        excluded,
    };
    debug_assert_eq!(
        hist.counts.values().sum::<u64>() + hist.excluded,
        hist.samples
    );
    hist
}

pub fn monodromy_stats_seq(
    ctx: &FieldContext,
    coeffs: &Degree10Coeffs,
    alpha: FieldElement,
    mode: StatsMode,
    samples: u64,
    seed: u64,
) -> Result<TypeHistogram> {
    let g = stats_base_poly(ctx, coeffs, alpha, mode)?;
    let outcomes = draw_t0s(ctx, samples, seed)
        .into_iter()
        .map(|t0| classify(ctx, &g, t0, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(tally(samples, outcomes))
}

#[cfg(feature = "parallel")]
pub fn monodromy_stats_par(
    ctx: &FieldContext,
    coeffs: &Degree10Coeffs,
    alpha: FieldElement,
    mode: StatsMode,
    samples: u64,
    seed: u64,
) -> Result<TypeHistogram> {
    let g = stats_base_poly(ctx, coeffs, alpha, mode)?;
    let outcomes = draw_t0s(ctx, samples, seed)
        .into_par_iter()
        .map(|t0| classify(ctx, &g, t0, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(tally(samples, outcomes))
}

/// Sampled factorization statistics of g(x) - t_0; deterministic for a fixed
/// seed regardless of the execution schedule.
pub fn monodromy_stats(
    ctx: &FieldContext,
    coeffs: &Degree10Coeffs,
    alpha: FieldElement,
    mode: StatsMode,
    samples: u64,
    seed: u64,
) -> Result<TypeHistogram> {
    #[cfg(feature = "parallel")]
    {
        monodromy_stats_par(ctx, coeffs, alpha, mode, samples, seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        monodromy_stats_seq(ctx, coeffs, alpha, mode, samples, seed)
    }
}
