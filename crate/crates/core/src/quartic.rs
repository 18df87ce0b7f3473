//! Reduction of the degree-10 derivative problem to a normalized quartic
//! T^4 + bT^2 + cT + d, its resolvent polynomials, Williams root-counting
//! for the resolvent cubic, and the Morse nondegeneracy certificate.

use crate::error::{Error, Result};
use crate::gf2n::{FieldContext, FieldElement};
use crate::poly::{hasse_schmidt, l_alpha, roots_in_field, Degree10Coeffs, Poly};

/// The quartic T^4 + bT^2 + cT + d obtained from (1/α^2)·L_αf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarticNormal {
    pub alpha: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl QuarticNormal {
    pub fn to_poly(self) -> Poly {
        Poly::new(vec![self.d, self.c, self.b, 0, 1])
    }
}

/// Normalizes L_αf to a monic quartic; needs a monic input with a_1 = a_3 = 0.
pub fn reduce_quartic(
    ctx: &FieldContext,
    f: &Degree10Coeffs,
    alpha: FieldElement,
) -> Result<QuarticNormal> {
    if f.a[0] != 1 {
        return Err(Error::InvalidInput(
            "quartic reduction needs a monic input (a_0 = 1)".into(),
        ));
    }
    if f.a[1] != 0 {
        return Err(Error::InvalidInput(
            "quartic reduction needs a_1 = 0, otherwise L_alpha f has a cubic term".into(),
        ));
    }
    if f.a[3] != 0 {
        return Err(Error::InvalidInput(
            "quartic reduction needs a_3 = 0, otherwise L_alpha f has a cubic term".into(),
        ));
    }
    if alpha == 0 {
        return Err(Error::InvalidInput(
            "quartic reduction needs a nonzero alpha".into(),
        ));
    }
    let a = &f.a;
    let inv_a = ctx.inv(alpha)?;
    let b = ctx.pow(alpha, 4) ^ a[4] ^ ctx.mul(a[5], inv_a);
    let c = ctx.mul(a[5], alpha) ^ ctx.mul(a[7], inv_a);
    let d = ctx.pow(alpha, 8)
        ^ ctx.mul(a[2], ctx.pow(alpha, 6))
        ^ ctx.mul(a[4], ctx.pow(alpha, 4))
        ^ ctx.mul(a[5], ctx.pow(alpha, 3))
        ^ ctx.mul(a[6], ctx.sqr(alpha))
        ^ ctx.mul(a[7], alpha)
        ^ a[8]
        ^ ctx.mul(a[9], inv_a);
    let quartic = QuarticNormal { alpha, b, c, d };
    let pair = l_alpha(ctx, &f.to_poly(), alpha)?;
    let scaled = pair.l_poly.scale(ctx, ctx.inv(ctx.sqr(alpha))?);
    assert_eq!(scaled, quartic.to_poly());
    Ok(quartic)
}

/// Resolvent polynomials of T^4 + bT^2 + cT + d; none of them involve d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventSet {
    /// x^2 + c^2 x + (b^3 + c^2) c^2
    pub r2: Poly,
    /// x^3 + b x^2 + c^2
    pub r3: Poly,
    /// T^2 + c^2 T + b^6
    pub q: Poly,
    /// z^3 + b^2 z + c^2, the resolvent cubic shifted by b
    pub depressed: Poly,
}

pub fn resolvents(ctx: &FieldContext, quartic: &QuarticNormal) -> Result<ResolventSet> {
    if quartic.c == 0 {
        return Err(Error::InvalidInput(
            "resolvent construction needs c != 0; with c = 0 the quartic is a perfect square"
                .into(),
        ));
    }
    let b = quartic.b;
    let c2 = ctx.sqr(quartic.c);
    let set = ResolventSet {
        r2: Poly::new(vec![ctx.mul(ctx.pow(b, 3) ^ c2, c2), c2, 1]),
        r3: Poly::new(vec![c2, 0, b, 1]),
        q: Poly::new(vec![ctx.pow(b, 6), c2, 1]),
        depressed: Poly::new(vec![c2, ctx.sqr(b), 0, 1]),
    };
    let shifted = set.r3.compose(ctx, &Poly::new(vec![b, 1]));
    assert_eq!(shifted, set.depressed);
    Ok(set)
}

/// Number of roots of the squarefree resolvent cubic in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicPattern {
    NoRoots,
    OneRoot,
    ThreeRoots,
}

impl CubicPattern {
    pub fn root_count(self) -> usize {
        match self {
            CubicPattern::NoRoots => 0,
            CubicPattern::OneRoot => 1,
            CubicPattern::ThreeRoots => 3,
        }
    }
}

/// Intermediate quantities of the Williams classification of x^3 + bx^2 + c^2.
#[derive(Clone, Copy, Debug)]
pub struct WilliamsParts {
    /// Tr(b^6 / c^4)
    pub trace_value: u8,
    /// trace_value equals Tr(1)
    pub trace_condition: bool,
    /// both roots of T^2 + c^2 T + b^6 are cubes where they live
    pub q_roots_are_cubes: bool,
    pub pattern: CubicPattern,
}

/// Root-count classification: one root iff Tr(b^6/c^4) != Tr(1); three roots
/// iff the traces agree and the roots of Q are cubes; no roots otherwise.
pub fn williams_parts(ctx: &FieldContext, b: FieldElement, c: FieldElement) -> Result<WilliamsParts> {
    if c == 0 {
        return Err(Error::InvalidInput(
            "Williams classification needs c != 0 so the cubic is squarefree".into(),
        ));
    }
    let c2 = ctx.sqr(c);
    let b6 = ctx.pow(b, 6);
    let trace_value = ctx.trace(ctx.div(b6, ctx.sqr(c2))?);
    let trace_condition = trace_value == ctx.trace(1);
    let ext = ctx.quadratic_extension();
    let q_roots_are_cubes = if trace_value == 0 {
        let (t1, t2) = ctx
            .solve_artin_schreier(c2, b6)?
            .ok_or_else(|| Error::Internal("trace-zero Artin-Schreier must solve".into()))?;
        let s1 = ext.is_cube(ext.lift(t1));
        let s2 = ext.is_cube(ext.lift(t2));
        if b != 0 {
            // the product of the roots is b^6, a cube, so statuses agree
            debug_assert_eq!(s1, s2);
        }
        s1 && s2
    } else {
        let roots = ext.quad_roots(c2, b6)?;
        let s1 = ext.is_cube(roots[0]);
        let s2 = ext.is_cube(roots[1]);
        debug_assert_eq!(s1, s2); // conjugate roots share cube status
        s1 && s2
    };
    let pattern = if !trace_condition {
        CubicPattern::OneRoot
    } else if q_roots_are_cubes {
        CubicPattern::ThreeRoots
    } else {
        CubicPattern::NoRoots
    };
    Ok(WilliamsParts {
        trace_value,
        trace_condition,
        q_roots_are_cubes,
        pattern,
    })
}

pub fn cubic_pattern_williams(
    ctx: &FieldContext,
    b: FieldElement,
    c: FieldElement,
) -> Result<CubicPattern> {
    Ok(williams_parts(ctx, b, c)?.pattern)
}

/// Whether the resolvent cubic splits completely, with the contributing
/// conditions; verdict = c_nonzero && r3_split.
#[derive(Clone, Debug)]
pub struct KleinReport {
    pub alpha: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub c_nonzero: bool,
    pub trace_condition: bool,
    pub q_roots_are_cubes: bool,
    pub r3_split: bool,
    pub verdict: bool,
    /// roots of x^3 + bx^2 + c^2 in the base field, ascending
    pub r3_roots: Vec<FieldElement>,
}

pub fn klein_check(ctx: &FieldContext, quartic: &QuarticNormal) -> Result<KleinReport> {
    if quartic.c == 0 {
        return Ok(KleinReport {
            alpha: quartic.alpha,
            b: quartic.b,
            c: 0,
            c_nonzero: false,
            trace_condition: false,
            q_roots_are_cubes: false,
            r3_split: false,
            verdict: false,
            r3_roots: Vec::new(),
        });
    }
    let parts = williams_parts(ctx, quartic.b, quartic.c)?;
    let set = resolvents(ctx, quartic)?;
    let roots = roots_in_field(ctx, &set.r3)?;
    for &(_, mult) in &roots {
        debug_assert_eq!(mult, 1, "resolvent cubic is squarefree when c != 0");
    }
    if roots.len() != parts.pattern.root_count() {
        return Err(Error::Internal(format!(
            "Williams predicts {} roots of the resolvent cubic, root finding returned {}",
            parts.pattern.root_count(),
            roots.len()
        )));
    }
    let r3_split = parts.pattern == CubicPattern::ThreeRoots;
    if r3_split {
        // a fully split resolvent cubic forces the quadratic resolvent to split
        let ratio = ctx.div(ctx.pow(quartic.b, 3) ^ ctx.sqr(quartic.c), ctx.sqr(quartic.c))?;
        assert_eq!(ctx.trace(ratio), 0);
    }
    Ok(KleinReport {
        alpha: quartic.alpha,
        b: quartic.b,
        c: quartic.c,
        c_nonzero: true,
        trace_condition: parts.trace_condition,
        q_roots_are_cubes: parts.q_roots_are_cubes,
        r3_split,
        verdict: r3_split,
        r3_roots: roots.into_iter().map(|(r, _)| r).collect(),
    })
}

/// Nondegeneracy certificate for the critical point of the cubic companion.
#[derive(Clone, Copy, Debug)]
pub struct MorseReport {
    /// a_1 a_3 != 0, so the companion at α = a_1/a_0 is a genuine cubic
    pub applicable: bool,
    pub value: FieldElement,
    pub nondegenerate: bool,
}

/// Closed-form certificate value; when applicable it is cross-checked against
/// the derivative of the cubic companion at its inflection root.
pub fn morse_check(ctx: &FieldContext, f: &Degree10Coeffs) -> Result<MorseReport> {
    let a = &f.a;
    let value = ctx.mul(ctx.mul(ctx.pow(a[0], 4), ctx.sqr(a[1])), ctx.sqr(a[4]))
        ^ ctx.mul(ctx.pow(a[0], 6), ctx.sqr(a[5]))
        ^ ctx.mul(ctx.pow(a[1], 7), a[3])
        ^ ctx.mul(ctx.mul(ctx.sqr(a[0]), ctx.pow(a[1], 4)), ctx.sqr(a[3]))
        ^ ctx.mul(
            ctx.mul(ctx.pow(a[0], 4), ctx.sqr(a[1])),
            ctx.mul(a[3], a[5]),
        )
        ^ ctx.mul(ctx.pow(a[0], 6), ctx.mul(a[3], a[7]));
    let applicable = a[1] != 0 && a[3] != 0;
    if applicable {
        let alpha = ctx.div(a[1], a[0])?;
        let pair = l_alpha(ctx, &f.to_poly(), alpha)?;
        assert_eq!(pair.d, 3);
        let g = &pair.l_poly;
        let inflection = hasse_schmidt(g, 2);
        let x0 = ctx.div(inflection.coeff(0), inflection.coeff(1))?;
        let x0_closed = ctx.div(
            ctx.mul(a[0], a[5]) ^ ctx.mul(a[1], a[4]),
            ctx.mul(a[0], a[3]),
        )?;
        assert_eq!(x0, x0_closed);
        let slope = hasse_schmidt(g, 1).eval(ctx, x0);
        assert_eq!(
            ctx.mul(value, a[1]),
            ctx.mul(slope, ctx.mul(ctx.pow(a[0], 7), a[3]))
        );
    }
    Ok(MorseReport {
        applicable,
        value,
        nondegenerate: applicable && value != 0,
    })
}
