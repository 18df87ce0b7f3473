//! Polynomials over GF(2^n): evaluation, the directional derivative D_αf,
//! its half-degree companion L_αf, Hasse-Schmidt derivatives, root finding,
//! and factorization degree patterns.

use crate::error::{Error, Result};
use crate::gf2n::{FieldContext, FieldElement};

/// Dense coefficients, index k = coefficient of x^k, top entry nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Poly {
        Poly::new(vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = vec![0; self.coeffs.len().max(other.coeffs.len())];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(k) ^ other.coeff(k);
        }
        Poly::new(out)
    }

    pub fn scale(&self, ctx: &FieldContext, c: FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldContext, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= ctx.mul(a, b);
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, ctx: &FieldContext, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::InvalidInput("polynomial division by zero".into()));
        }
        let dd = divisor.degree().unwrap();
        let linv = ctx.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let lead = rem[k];
            if lead != 0 {
                let q = ctx.mul(lead, linv);
                quo[k - dd] = q;
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + j] ^= ctx.mul(q, dc);
                }
            }
            rem.pop();
        }
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, ctx: &FieldContext, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(ctx, divisor)?.1)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(ctx: &FieldContext, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let linv = ctx.inv(a.leading()).expect("nonzero leading coefficient");
            a.scale(ctx, linv)
        }
    }

    pub fn pow(&self, ctx: &FieldContext, k: usize) -> Poly {
        let mut acc = Poly::constant(1);
        for _ in 0..k {
            acc = acc.mul(ctx, self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldContext, x: FieldElement) -> FieldElement {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.mul(acc, x) ^ c;
        }
        acc
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, ctx: &FieldContext, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(ctx, inner);
            acc = acc.add(&Poly::constant(c));
        }
        acc
    }

    /// Leading-first comma-separated hex, the CLI text convention.
    pub fn fmt(&self, ctx: &FieldContext) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|&c| ctx.fmt_element(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the leading-first comma-separated hex convention.
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            coeffs.push(ctx.parse_element(part)?);
        }
        coeffs.reverse();
        Ok(Poly::new(coeffs))
    }
}

/// x^{2^m} mod f by repeated squaring, staying reduced mod f.
fn frobenius_pow_mod(ctx: &FieldContext, f: &Poly, m: u32) -> Result<Poly> {
    let mut h = Poly::x().rem(ctx, f)?;
    for _ in 0..m {
        h = h.mul(ctx, &h).rem(ctx, f)?;
    }
    Ok(h)
}

/// The eleven coefficients of f = Σ_{i=0}^{10} a_{10-i} x^i, a_0 leading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree10Coeffs {
    pub a: [FieldElement; 11],
}

impl Degree10Coeffs {
    pub fn new(a: [FieldElement; 11]) -> Result<Degree10Coeffs> {
        if a[0] == 0 {
            return Err(Error::InvalidInput(
                "degree-10 coefficients need a_0 != 0".into(),
            ));
        }
        Ok(Degree10Coeffs { a })
    }

    pub fn from_poly(f: &Poly) -> Result<Degree10Coeffs> {
        if f.degree() != Some(10) {
            return Err(Error::InvalidInput(format!(
                "expected degree exactly 10, got {:?}",
                f.degree()
            )));
        }
        let mut a = [0; 11];
        for (i, slot) in a.iter_mut().enumerate() {
            *slot = f.coeff(10 - i);
        }
        Degree10Coeffs::new(a)
    }

    pub fn to_poly(self) -> Poly {
        let mut coeffs = self.a;
        coeffs.reverse();
        Poly::new(coeffs.to_vec())
    }

    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Degree10Coeffs> {
        let p = Poly::parse(ctx, s)?;
        let parts = s.split(',').count();
        if parts != 11 {
            return Err(Error::InvalidInput(format!(
                "degree-10 input needs 11 comma-separated coefficients, got {parts}"
            )));
        }
        Degree10Coeffs::from_poly(&p)
    }

    pub fn is_monic(&self) -> bool {
        self.a[0] == 1
    }

    /// Divides through by a_0.
    pub fn monic(&self, ctx: &FieldContext) -> Result<Degree10Coeffs> {
        let inv = ctx.inv(self.a[0])?;
        let mut a = self.a;
        for slot in a.iter_mut() {
            *slot = ctx.mul(*slot, inv);
        }
        Degree10Coeffs::new(a)
    }
}

/// α, D_αf, L_αf, and d = degree(L_αf).
#[derive(Clone, Debug)]
pub struct DerivedPair {
    pub alpha: FieldElement,
    pub d_poly: Poly,
    pub l_poly: Poly,
    pub d: usize,
}

/// D_αf = f(x+α) + f(x) by binomial expansion over GF(2).
pub fn d_alpha(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<Poly> {
    if alpha == 0 {
        return Err(Error::InvalidInput(
            "derivative direction alpha must be nonzero".into(),
        ));
    }
    let deg = match f.degree() {
        None | Some(0) => return Ok(Poly::zero()),
        Some(d) => d,
    };
    let mut apow = vec![1u64; deg + 1];
    for i in 1..=deg {
        apow[i] = ctx.mul(apow[i - 1], alpha);
    }
    let mut out = vec![0u64; deg + 1];
    for m in 0..=deg {
        let am = f.coeff(m);
        if am == 0 {
            continue;
        }
        // (x+α)^m = Σ_{k ⊆ m} α^{m-k} x^k by Lucas; the k = m term cancels f.
        for (k, slot) in out.iter_mut().enumerate().take(m) {
            if k & m == k {
                *slot ^= ctx.mul(am, apow[m - k]);
            }
        }
    }
    let d = Poly::new(out);
    if deg == 10 {
        let c = Degree10Coeffs::from_poly(f)?;
        assert_eq!(d, d_alpha_closed_form(ctx, &c, alpha));
    }
    Ok(d)
}

/// Coefficientwise closed form of D_αf for degree-10 inputs.
fn d_alpha_closed_form(ctx: &FieldContext, c: &Degree10Coeffs, alpha: FieldElement) -> Poly {
    let a = &c.a;
    let mut ap = [1u64; 11];
    for i in 1..=10 {
        ap[i] = ctx.mul(ap[i - 1], alpha);
    }
    let m = |x, y| ctx.mul(x, y);
    let constant = (1..=10).fold(0, |acc, i| acc ^ m(a[10 - i], ap[i]));
    Poly::new(vec![
        constant,
        m(a[1], ap[8]) ^ m(a[3], ap[6]) ^ m(a[5], ap[4]) ^ m(a[7], ap[2]),
        m(a[0], ap[8]) ^ m(a[3], ap[5]) ^ m(a[4], ap[4]) ^ m(a[7], ap[1]),
        m(a[3], ap[4]),
        m(a[3], ap[3]) ^ m(a[4], ap[2]) ^ m(a[5], ap[1]),
        m(a[3], ap[2]),
        m(a[3], ap[1]),
        0,
        m(a[0], ap[2]) ^ m(a[1], ap[1]),
    ])
}

/// Coefficientwise closed form of L_αf for degree-10 inputs.
fn l_alpha_closed_form(ctx: &FieldContext, c: &Degree10Coeffs, alpha: FieldElement) -> Poly {
    let a = &c.a;
    let mut ap = [1u64; 11];
    for i in 1..=10 {
        ap[i] = ctx.mul(ap[i - 1], alpha);
    }
    let m = |x, y| ctx.mul(x, y);
    let constant = (1..=10).fold(0, |acc, i| acc ^ m(a[10 - i], ap[i]));
    Poly::new(vec![
        constant,
        m(a[1], ap[7]) ^ m(a[3], ap[5]) ^ m(a[5], ap[3]) ^ m(a[7], ap[1]),
        m(a[0], ap[6]) ^ m(a[1], ap[5]) ^ m(a[4], ap[2]) ^ m(a[5], ap[1]),
        m(a[3], ap[1]),
        m(a[0], ap[2]) ^ m(a[1], ap[1]),
    ])
}

/// The unique L with L(x(x+α)) = D_αf(x), found by greedy leading-term
/// reduction in y = x^2 + αx.
pub fn l_alpha(ctx: &FieldContext, f: &Poly, alpha: FieldElement) -> Result<DerivedPair> {
    let d_poly = d_alpha(ctx, f, alpha)?;
    if d_poly.is_zero() {
        return Err(Error::InvalidInput(
            "D_alpha f is the zero polynomial; no companion exists".into(),
        ));
    }
    let y = Poly::new(vec![0, alpha, 1]);
    let mut rest = d_poly.clone();
    let mut l = vec![0u64; d_poly.degree().unwrap() / 2 + 1];
    loop {
        match rest.degree() {
            None => break,
            Some(0) => {
                l[0] = rest.coeff(0);
                break;
            }
            Some(d) if d % 2 == 1 => {
                return Err(Error::Internal(format!(
                    "odd degree {d} while reducing D_alpha f; shift invariance broken"
                )));
            }
            Some(d) => {
                let k = d / 2;
                let lead = rest.leading();
                l[k] = lead;
                rest = rest.add(&y.pow(ctx, k).scale(ctx, lead));
                if rest.degree() >= Some(d) {
                    return Err(Error::Internal(
                        "leading-term reduction failed to lower the degree".into(),
                    ));
                }
            }
        }
    }
    let l_poly = Poly::new(l);
    assert_eq!(l_poly.compose(ctx, &y), d_poly);
    if f.degree() == Some(10) {
        let c = Degree10Coeffs::from_poly(f)?;
        assert_eq!(l_poly, l_alpha_closed_form(ctx, &c, alpha));
    }
    let d = l_poly.degree().unwrap_or(0);
    assert_eq!(d_poly.degree().unwrap_or(0), 2 * d);
    Ok(DerivedPair {
        alpha,
        d_poly,
        l_poly,
        d,
    })
}

/// k-th Hasse-Schmidt derivative: coefficient m survives into x^{m-k}
/// exactly when binomial(m, k) is odd, i.e. k is a submask of m.
pub fn hasse_schmidt(f: &Poly, k: usize) -> Poly {
    if k == 0 {
        return f.clone();
    }
    let Some(deg) = f.degree() else {
        return Poly::zero();
    };
    if deg < k {
        return Poly::zero();
    }
    let mut out = vec![0u64; deg - k + 1];
    for m in k..=deg {
        if m & k == k {
            out[m - k] = f.coeff(m);
        }
    }
    Poly::new(out)
}

const EXHAUSTIVE_ROOT_LIMIT: u64 = 1 << 20;

/// Distinct in-field roots with multiplicities, sorted by root value;
/// exhaustive scan up to 2^20 elements, Frobenius-gcd splitting beyond.
pub fn roots_in_field(ctx: &FieldContext, f: &Poly) -> Result<Vec<(FieldElement, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "root finding needs a nonzero polynomial".into(),
        ));
    }
    let distinct = if ctx.order() <= EXHAUSTIVE_ROOT_LIMIT {
        roots_exhaustive(ctx, f)
    } else {
        roots_by_gcd(ctx, f)?
    };
    let mut out = Vec::with_capacity(distinct.len());
    for r in distinct {
        let linear = Poly::new(vec![r, 1]);
        let mut mult = 0u32;
        let mut rest = f.clone();
        loop {
            let (q, rem) = rest.divrem(ctx, &linear)?;
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            rest = q;
        }
        debug_assert!(mult >= 1);
        out.push((r, mult));
    }
    Ok(out)
}

fn roots_exhaustive(ctx: &FieldContext, f: &Poly) -> Vec<FieldElement> {
    (0..ctx.order()).filter(|&x| f.eval(ctx, x) == 0).collect()
}

/// Distinct roots without the exhaustive-scan shortcut; any field size.
pub(crate) fn roots_by_gcd(ctx: &FieldContext, f: &Poly) -> Result<Vec<FieldElement>> {
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let frob = frobenius_pow_mod(ctx, f, ctx.n())?;
    let linear_part = Poly::gcd(ctx, f, &frob.add(&Poly::x().rem(ctx, f)?));
    let mut roots = Vec::new();
    split_linear_product(ctx, &linear_part, &mut roots)?;
    roots.sort_unstable();
    Ok(roots)
}

/// Recursively splits a squarefree product of distinct linear factors using
/// gcds with trace polynomials over the basis directions; deterministic.
fn split_linear_product(
    ctx: &FieldContext,
    g: &Poly,
    out: &mut Vec<FieldElement>,
) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(ctx.div(g.coeff(0), g.coeff(1))?);
            return Ok(());
        }
        _ => {}
    }
    for j in 0..ctx.n() {
        let beta = 1u64 << j;
        let mut term = Poly::new(vec![0, beta]).rem(ctx, g)?;
        let mut tr = term.clone();
        for _ in 1..ctx.n() {
            term = term.mul(ctx, &term).rem(ctx, g)?;
            tr = tr.add(&term);
        }
        let h = Poly::gcd(ctx, g, &tr);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < g.degree().unwrap() {
            split_linear_product(ctx, &h, out)?;
            let (q, r) = g.divrem(ctx, &h)?;
            debug_assert!(r.is_zero());
            split_linear_product(ctx, &q, out)?;
            return Ok(());
        }
    }
    Err(Error::Internal(
        "trace splitting failed to separate distinct roots".into(),
    ))
}

/// Distinct-degree pieces: (k, product of the irreducible degree-k factors),
/// for monic squarefree input.
fn ddf(ctx: &FieldContext, f: &Poly) -> Result<Vec<(u32, Poly)>> {
    let mut work = f.clone();
    let mut pieces = Vec::new();
    let mut h = Poly::x().rem(ctx, &work)?;
    let mut k = 0u32;
    while let Some(dw) = work.degree() {
        if dw == 0 {
            break;
        }
        k += 1;
        if 2 * k as usize > dw {
            pieces.push((dw as u32, work.clone()));
            break;
        }
        for _ in 0..ctx.n() {
            h = h.mul(ctx, &h).rem(ctx, &work)?;
        }
        let g = Poly::gcd(ctx, &work, &h.add(&Poly::x().rem(ctx, &work)?));
        if g.degree().unwrap_or(0) > 0 {
            pieces.push((k, g.clone()));
            let (q, r) = work.divrem(ctx, &g)?;
            debug_assert!(r.is_zero());
            work = q;
            h = h.rem(ctx, &work)?;
        }
    }
    Ok(pieces)
}

/// Multiset of irreducible-factor degrees, ascending; squarefree input of
/// degree at most 8 only.
pub fn factorization_type(ctx: &FieldContext, f: &Poly) -> Result<Vec<u32>> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("cannot factor the zero polynomial".into()))?;
    if deg == 0 {
        return Err(Error::InvalidInput("cannot factor a constant".into()));
    }
    if deg > 8 {
        return Err(Error::InvalidInput(format!(
            "factorization pattern is limited to degree <= 8, got {deg}"
        )));
    }
    let deriv = hasse_schmidt(f, 1);
    if deriv.is_zero() {
        // all odd coefficients vanish, so f is the square of its even part
        let half: Vec<FieldElement> = (0..=deg / 2).map(|k| ctx.sqrt(f.coeff(2 * k))).collect();
        let root = Poly::new(half);
        return Err(Error::NotSquarefree {
            factor: root.fmt(ctx),
            degree: root.degree().unwrap_or(0),
        });
    }
    let g = Poly::gcd(ctx, f, &deriv);
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree {
            factor: g.fmt(ctx),
            degree: g.degree().unwrap(),
        });
    }
    let monic = f.scale(ctx, ctx.inv(f.leading())?);
    let mut pattern = Vec::new();
    for (k, piece) in ddf(ctx, &monic)? {
        let copies = piece.degree().unwrap() as u32 / k;
        for _ in 0..copies {
            pattern.push(k);
        }
    }
    pattern.sort_unstable();
    debug_assert_eq!(pattern.iter().sum::<u32>() as usize, deg);
    Ok(pattern)
}
