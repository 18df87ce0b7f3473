//! GF(2^n) arithmetic in polynomial basis: bit-packed elements, trace,
//! Artin-Schreier solving, cube tests, and the quadratic extension GF(2^{2n}).

use crate::error::{Error, Result};

/// One field element, coordinates in the basis 1, θ, ..., θ^{n-1} packed as bits.
pub type FieldElement = u64;

/// Lexicographically smallest irreducible polynomial of degree n over GF(2),
/// index n, coefficient bits packed with the leading bit set.
pub const SMALLEST_IRREDUCIBLE: [u64; 33] = [
    0, 0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805,
    0x1009, 0x201b, 0x4021, 0x8003, 0x1002b, 0x20009, 0x40009, 0x80027,
    0x100009, 0x200005, 0x400003, 0x800021, 0x100001b, 0x2000009, 0x400001b,
    0x8000027, 0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008d,
];

// ---- GF(2)[x] on bit-packed coefficients (modulus validation only) ----

fn p2_deg(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn p2_mul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let a = a as u128;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    acc
}

fn p2_rem(mut a: u128, m: u64) -> u64 {
    let dm = p2_deg(m as u128);
    while p2_deg(a) >= dm {
        a ^= (m as u128) << (p2_deg(a) - dm);
    }
    a as u64
}

fn p2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = p2_rem(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over GF(2) by gcd with x^{2^k} - x; Err carries the degree
/// of the smallest nontrivial factor.
fn p2_irreducible(f: u64, n: u32) -> std::result::Result<(), u32> {
    let mut h = 2u64; // the polynomial x
    for k in 1..=n / 2 {
        h = p2_rem(p2_mul(h, h), f);
        if p2_gcd(f, h ^ 2) != 1 {
            return Err(k);
        }
    }
    Ok(())
}

fn factor_u64(mut m: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
}

#[derive(Debug)]
struct MulTables {
    log: Vec<u32>,
    alog: Vec<u64>, // doubled length so log[a]+log[b] indexes directly
}

/// A concrete GF(2^n): modulus, generator, trace mask, optional mul tables.
#[derive(Debug)]
pub struct FieldContext {
    n: u32,
    modulus: u64,
    mask: u64,
    generator: FieldElement,
    trace_mask: u64,
    tables: Option<MulTables>,
}

impl FieldContext {
    /// Builds a validated field; `modulus` defaults to the smallest irreducible.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<FieldContext> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidInput(format!(
                "extension degree n = {n} out of supported range 1..=32"
            )));
        }
        let modulus = modulus.unwrap_or(SMALLEST_IRREDUCIBLE[n as usize]);
        if p2_deg(modulus as u128) != n as i32 {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:#x} does not have degree exactly {n}"
            )));
        }
        if let Err(k) = p2_irreducible(modulus, n) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:#x} is reducible: it has a factor of degree {k}"
            )));
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut ctx = FieldContext {
            n,
            modulus,
            mask,
            generator: 1,
            trace_mask: 0,
            tables: None,
        };
        let mut trace_mask = 0u64;
        for j in 0..n {
            if ctx.trace_slow(1 << j) == 1 {
                trace_mask |= 1 << j;
            }
        }
        ctx.trace_mask = trace_mask;
        ctx.generator = ctx.find_generator();
        if n <= 16 {
            let order = ctx.mask as usize;
            let mut alog = vec![0u64; 2 * order.max(1)];
            let mut log = vec![0u32; order + 1];
            let mut x = 1u64;
            for (i, slot) in alog.iter_mut().take(order).enumerate() {
                *slot = x;
                log[x as usize] = i as u32;
                x = ctx.mul_raw(x, ctx.generator);
            }
            debug_assert_eq!(x, 1);
            for i in 0..order {
                alog[order + i] = alog[i];
            }
            ctx.tables = Some(MulTables { log, alog });
        }
        Ok(ctx)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of field elements, 2^n.
    pub fn order(&self) -> u64 {
        self.mask + 1
    }

    /// All-ones element mask; also the multiplicative group order 2^n - 1.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a <= self.mask
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a ^ b
    }

    /// Carryless shift-xor product reduced by the modulus; no table.
    pub fn mul_raw(&self, mut a: FieldElement, mut b: FieldElement) -> FieldElement {
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.n) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.alog[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_raw(a, b),
        }
    }

    pub fn sqr(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        if self.mask == 1 {
            return Ok(1);
        }
        Ok(self.pow(a, self.mask - 1))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return a;
        }
        self.pow(a, 1u64 << (self.n - 1))
    }

    /// Absolute trace to GF(2) via the precomputed linear mask.
    pub fn trace(&self, a: FieldElement) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// Trace by its definition, Σ a^{2^k}; table-free reference path.
    pub fn trace_slow(&self, a: FieldElement) -> u8 {
        let mut acc = 0u64;
        let mut x = a;
        for _ in 0..self.n {
            acc ^= x;
            x = self.mul_raw(x, x);
        }
        debug_assert!(acc <= 1);
        acc as u8
    }

    fn find_generator(&self) -> FieldElement {
        let group = self.mask;
        if group == 1 {
            return 1;
        }
        let primes = factor_u64(group);
        for g in 2..=self.mask {
            if primes.iter().all(|&p| self.pow(g, group / p) != 1) {
                return g;
            }
        }
        unreachable!("every finite field has a multiplicative generator");
    }

    /// Solves x^2 + alpha·x = b; Some((x, x+alpha)) sorted, None when the
    /// trace obstruction Tr(b/alpha^2) = 1 blocks it.
    pub fn solve_artin_schreier(
        &self,
        alpha: FieldElement,
        b: FieldElement,
    ) -> Result<Option<(FieldElement, FieldElement)>> {
        if alpha == 0 {
            return Err(Error::InvalidInput(
                "artin-schreier solve needs alpha != 0".into(),
            ));
        }
        let a2 = self.sqr(alpha);
        if self.trace(self.div(b, a2)?) == 1 {
            return Ok(None);
        }
        let n = self.n as usize;
        // Rows of the GF(2)-linear system for x ↦ x^2 + alpha·x = b,
        // low n bits = coefficients, bit n = augmented column.
        let mut rows = vec![0u128; n];
        for j in 0..n {
            let e = 1u64 << j;
            let img = self.sqr(e) ^ self.mul(alpha, e);
            for (r, row) in rows.iter_mut().enumerate() {
                *row |= (((img >> r) & 1) as u128) << j;
            }
        }
        for (r, row) in rows.iter_mut().enumerate() {
            *row |= (((b >> r) & 1) as u128) << n;
        }
        let x = solve_gf2(&mut rows, n).ok_or_else(|| {
            Error::Internal("trace said solvable but elimination found no solution".into())
        })?;
        let x = x as u64;
        assert_eq!(self.sqr(x) ^ self.mul(alpha, x), b);
        let y = x ^ alpha;
        Ok(Some((x.min(y), x.max(y))))
    }

    /// Cube test; base field needs 3 | 2^n - 1 (n even), otherwise use the
    /// quadratic-extension form the criterion is stated in.
    pub fn is_cube(&self, a: FieldElement, in_quadratic_extension: bool) -> Result<bool> {
        if in_quadratic_extension {
            let ext = self.quadratic_extension();
            return Ok(ext.is_cube(ext.lift(a)));
        }
        if self.n % 2 == 1 {
            return Err(Error::InvalidInput(
                "3 does not divide 2^n - 1 for odd n; request the quadratic-extension cube test"
                    .into(),
            ));
        }
        if a == 0 {
            return Ok(true);
        }
        Ok(self.pow(a, self.mask / 3) == 1)
    }

    /// GF(2^{2n}) as base[w]/(w^2 + w + δ), δ the smallest trace-1 element.
    pub fn quadratic_extension(&self) -> ExtensionContext<'_> {
        let delta = (0..=self.mask)
            .find(|&d| self.trace(d) == 1)
            .expect("trace is surjective onto GF(2)");
        ExtensionContext { base: self, delta }
    }

    /// Lowercase hex, zero-padded to ceil(n/4) digits.
    pub fn fmt_element(&self, a: FieldElement) -> String {
        format!("{:01$x}", a, (self.n as usize + 3) / 4)
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let a = u64::from_str_radix(s.trim().trim_start_matches("0x"), 16)
            .map_err(|e| Error::InvalidInput(format!("bad element hex {s:?}: {e}")))?;
        if !self.contains(a) {
            return Err(Error::InvalidInput(format!(
                "element {s:?} out of range for GF(2^{})",
                self.n
            )));
        }
        Ok(a)
    }

    /// Modulus as a most-significant-bit-first hex string, e.g. "19" for X^4+X^3+1.
    pub fn modulus_hex(&self) -> String {
        format!("{:x}", self.modulus)
    }
}

/// Gauss-Jordan over GF(2); rows pack `cols` coefficient bits plus the
/// augmented bit at `cols`. Returns one solution with free variables zeroed.
fn solve_gf2(rows: &mut [u128], cols: usize) -> Option<u128> {
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut next = 0usize;
    for col in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| (rows[r] >> col) & 1 == 1) else {
            continue;
        };
        rows.swap(next, p);
        for r in 0..rows.len() {
            if r != next && (rows[r] >> col) & 1 == 1 {
                rows[r] ^= rows[next];
            }
        }
        pivot_of_col[col] = next;
        next += 1;
    }
    if rows[next..].iter().any(|&r| r != 0) {
        return None; // 0 = 1 row left over
    }
    let mut x = 0u128;
    for col in 0..cols {
        if pivot_of_col[col] != usize::MAX {
            x |= ((rows[pivot_of_col[col]] >> cols) & 1) << col;
        }
    }
    Some(x)
}

/// Element of GF(2^{2n}) as a + b·w.
pub type ExtElement = (FieldElement, FieldElement);

/// Quadratic extension of a base field, modulus w^2 + w + δ with Tr(δ) = 1.
pub struct ExtensionContext<'a> {
    base: &'a FieldContext,
    pub delta: FieldElement,
}

impl ExtensionContext<'_> {
    pub fn lift(&self, a: FieldElement) -> ExtElement {
        (a, 0)
    }

    pub fn one(&self) -> ExtElement {
        (1, 0)
    }

    pub fn add(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        (x.0 ^ y.0, x.1 ^ y.1)
    }

    pub fn mul(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = self.base;
        let cross = f.mul(x.0, y.1) ^ f.mul(x.1, y.0);
        let bd = f.mul(x.1, y.1);
        (f.mul(x.0, y.0) ^ f.mul(bd, self.delta), cross ^ bd)
    }

    pub fn sqr(&self, x: ExtElement) -> ExtElement {
        let f = self.base;
        let b2 = f.sqr(x.1);
        (f.sqr(x.0) ^ f.mul(b2, self.delta), b2)
    }

    pub fn pow(&self, x: ExtElement, mut e: u64) -> ExtElement {
        let mut base = x;
        let mut acc = self.one();
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// Cube test with exponent (2^{2n} - 1)/3; 3 always divides that order.
    pub fn is_cube(&self, x: ExtElement) -> bool {
        if x == (0, 0) {
            return true;
        }
        let e = ((1u128 << (2 * self.base.n)) - 1) / 3;
        self.pow(x, e as u64) == self.one()
    }

    /// Both roots of T^2 + B·T + C for base-field B, C; always lands in the
    /// extension (double root when B = 0).
    pub fn quad_roots(&self, b: FieldElement, c: FieldElement) -> Result<[ExtElement; 2]> {
        let f = self.base;
        if b == 0 {
            let s = self.lift(f.sqrt(c));
            return Ok([s, s]);
        }
        let e = f.mul(c, f.sqr(f.inv(b)?));
        let s = self.solve_x2_plus_x(e)?;
        let lb = self.lift(b);
        let roots = [self.mul(lb, s), self.mul(lb, self.add(s, self.one()))];
        for t in roots {
            let val = self.add(
                self.add(self.sqr(t), self.mul(self.lift(b), t)),
                self.lift(c),
            );
            assert_eq!(val, (0, 0));
        }
        Ok(roots)
    }

    /// Solves s^2 + s = e for base-field e; always solvable since the full
    /// trace of a base element over GF(2) vanishes in the extension.
    fn solve_x2_plus_x(&self, e: FieldElement) -> Result<ExtElement> {
        let f = self.base;
        let n = f.n as usize;
        let dim = 2 * n;
        let mut rows = vec![0u128; dim];
        for j in 0..dim {
            let v: ExtElement = if j < n { (1 << j, 0) } else { (0, 1 << (j - n)) };
            let img = self.add(self.sqr(v), v);
            for r in 0..n {
                rows[r] |= (((img.0 >> r) & 1) as u128) << j;
                rows[n + r] |= (((img.1 >> r) & 1) as u128) << j;
            }
        }
        for r in 0..n {
            rows[r] |= (((e >> r) & 1) as u128) << dim;
        }
        let s = solve_gf2(&mut rows, dim).ok_or_else(|| {
            Error::Internal("x^2 + x = e unsolvable in the quadratic extension".into())
        })?;
        let s = ((s as u64) & f.mask, ((s >> n) as u64) & f.mask);
        assert_eq!(self.add(self.sqr(s), s), self.lift(e));
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f16_paper() -> FieldContext {
        FieldContext::new(4, Some(0x19)).unwrap()
    }

    #[test]
    fn table_entries_are_smallest_irreducibles() {
        for n in 1..=32u32 {
            let f = SMALLEST_IRREDUCIBLE[n as usize];
            assert_eq!(p2_deg(f as u128), n as i32, "degree at n={n}");
            assert!(p2_irreducible(f, n).is_ok(), "irreducible at n={n}");
            for candidate in (1u64 << n)..f {
                assert!(
                    p2_irreducible(candidate, n).is_err(),
                    "missed smaller irreducible {candidate:#x} at n={n}"
                );
            }
        }
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert!(matches!(
            FieldContext::new(0, None),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            FieldContext::new(33, None),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            FieldContext::new(4, Some(0x19 << 1)),
            Err(Error::InvalidInput(_))
        ));
        // x^4 + 1 = (x+1)^4; the error names the degree-1 factor
        let err = FieldContext::new(4, Some(0x11)).unwrap_err();
        assert!(err.to_string().contains("degree 1"), "{err}");
    }

    #[test]
    fn paper_field_generator_powers() {
        let f = f16_paper();
        assert_eq!(f.generator(), 0x2);
        let expected = [
            0x1, 0x2, 0x4, 0x8, 0x9, 0xb, 0xf, 0x7, 0xe, 0x5, 0xa, 0xd, 0x3, 0x6, 0xc,
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(f.pow(0x2, i as u64), *want, "theta^{i}");
        }
        assert_eq!(f.pow(0x2, 15), 0x1);
        // theta^10 · theta^10 = theta^5
        assert_eq!(f.mul(0xa, 0xa), 0xb);
    }

    #[test]
    fn tiny_and_odd_fields() {
        let f1 = FieldContext::new(1, None).unwrap();
        assert_eq!(f1.order(), 2);
        assert_eq!(f1.mul(1, 1), 1);
        assert_eq!(f1.generator(), 1);
        assert_eq!(f1.trace(1), 1);

        let f8 = FieldContext::new(3, None).unwrap();
        assert_eq!(f8.order(), 8);
        for a in 1..8u64 {
            // every nonzero element has order dividing 7
            assert_eq!(f8.pow(a, 7), 1);
        }
        let zero_traces = (0..8u64).filter(|&a| f8.trace(a) == 0).count();
        assert_eq!(zero_traces, 4);
    }

    #[test]
    fn nonprimitive_modulus_still_gets_generator() {
        // x^4+x^3+x^2+x+1 is irreducible but its root has order 5
        let f = FieldContext::new(4, Some(0x1f)).unwrap();
        assert_eq!(f.pow(0x2, 5), 1);
        let g = f.generator();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..15 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [2u32, 5, 8, 13, 16, 21, 32] {
            let f = FieldContext::new(n, None).unwrap();
            for _ in 0..2_000 {
                let a = rng.gen::<u64>() & f.mask();
                let b = rng.gen::<u64>() & f.mask();
                let c = rng.gen::<u64>() & f.mask();
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                assert_eq!(f.mul(a, 0), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
            assert_eq!(f.inv(1).unwrap(), 1);
            assert!(f.inv(0).is_err());
        }
    }

    #[test]
    fn table_and_raw_mul_agree() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in [4u32, 8, 11, 16] {
            let f = FieldContext::new(n, None).unwrap();
            assert!(f.tables.is_some());
            for _ in 0..5_000 {
                let a = rng.gen::<u64>() & f.mask();
                let b = rng.gen::<u64>() & f.mask();
                assert_eq!(f.mul(a, b), f.mul_raw(a, b));
            }
        }
    }

    #[test]
    fn trace_linear_and_frobenius_invariant() {
        for n in 1..=8u32 {
            let f = FieldContext::new(n, None).unwrap();
            for a in 0..f.order() {
                assert_eq!(f.trace(a), f.trace_slow(a));
                assert_eq!(f.trace(f.sqr(a)), f.trace(a));
                for b in 0..f.order() {
                    assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
                }
            }
        }
    }

    #[test]
    fn paper_traces_in_f16() {
        let f = f16_paper();
        let trace_one: Vec<u64> = (0..16).filter(|&a| f.trace(a) == 1).collect();
        assert_eq!(trace_one, vec![0x2, 0x3, 0x4, 0x5, 0x8, 0x9, 0xe, 0xf]);
        assert_eq!(f.trace(f.pow(2, 10)), 0);
        assert_eq!(f.trace(f.pow(2, 5)), 0);
    }

    #[test]
    fn artin_schreier_matches_exhaustive() {
        for n in 1..=6u32 {
            let f = FieldContext::new(n, None).unwrap();
            for alpha in 1..f.order() {
                let a2 = f.sqr(alpha);
                for b in 0..f.order() {
                    let direct: Vec<u64> = (0..f.order())
                        .filter(|&x| f.sqr(x) ^ f.mul(alpha, x) == b)
                        .collect();
                    let got = f.solve_artin_schreier(alpha, b).unwrap();
                    match got {
                        Some((x, y)) => {
                            assert_eq!(direct, vec![x.min(y), x.max(y)]);
                            assert_eq!(f.trace(f.div(b, a2).unwrap()), 0);
                        }
                        None => {
                            assert!(direct.is_empty());
                            assert_eq!(f.trace(f.div(b, a2).unwrap()), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let f = f16_paper();
        assert_eq!(f.solve_artin_schreier(1, 0).unwrap(), Some((0, 1)));
        let theta5 = f.pow(2, 5);
        assert_eq!(f.solve_artin_schreier(1, theta5).unwrap(), Some((0x6, 0x7)));
        for b in 0..16u64 {
            if f.trace(b) == 1 {
                assert_eq!(f.solve_artin_schreier(1, b).unwrap(), None);
            }
        }
        assert!(f.solve_artin_schreier(0, 3).is_err());
    }

    #[test]
    fn cube_tests_match_exhaustive() {
        for n in 1..=8u32 {
            let f = FieldContext::new(n, None).unwrap();
            let ext = f.quadratic_extension();
            for a in 0..f.order() {
                let base_cubes: bool = (0..f.order()).any(|y| f.mul(f.sqr(y), y) == a);
                if n % 2 == 0 {
                    assert_eq!(f.is_cube(a, false).unwrap(), base_cubes, "n={n} a={a:#x}");
                } else {
                    assert!(f.is_cube(a, false).is_err());
                }
                // extension search via s = x + y·w over the pair space is only
                // affordable for tiny n; reuse the order argument instead:
                // a != 0 is an ext cube iff a^{(2^{2n}-1)/3} = 1.
                let e = ((1u128 << (2 * n)) - 1) / 3;
                let want = a == 0 || ext.pow(ext.lift(a), e as u64) == ext.one();
                assert_eq!(f.is_cube(a, true).unwrap(), want);
            }
        }
        // direct exhaustive cross-check of the extension exponent test, n <= 3
        for n in 1..=3u32 {
            let f = FieldContext::new(n, None).unwrap();
            let ext = f.quadratic_extension();
            for a0 in 0..f.order() {
                for a1 in 0..f.order() {
                    let x = (a0, a1);
                    let mut found = false;
                    'search: for y0 in 0..f.order() {
                        for y1 in 0..f.order() {
                            let y = (y0, y1);
                            if ext.mul(ext.sqr(y), y) == x {
                                found = true;
                                break 'search;
                            }
                        }
                    }
                    assert_eq!(ext.is_cube(x), found, "n={n} x={x:?}");
                }
            }
        }
    }

    #[test]
    fn paper_cubes_in_f16() {
        let f = f16_paper();
        let theta6 = f.pow(2, 6);
        assert!(f.is_cube(theta6, false).unwrap());
        assert!(f.is_cube(1, false).unwrap());
        assert!(!f.is_cube(0x2, false).unwrap());
    }

    #[test]
    fn extension_is_homomorphic_and_solves_quadratics() {
        let mut rng = StdRng::seed_from_u64(23);
        for n in [3u32, 4, 5, 8, 13] {
            let f = FieldContext::new(n, None).unwrap();
            let ext = f.quadratic_extension();
            assert_eq!(f.trace(ext.delta), 1);
            assert_eq!(ext.lift(0), (0, 0));
            assert_eq!(ext.lift(1), (1, 0));
            for a in 0..f.order().min(8) {
                for b in 0..f.order().min(8) {
                    assert_eq!(ext.lift(f.mul(a, b)), ext.mul(ext.lift(a), ext.lift(b)));
                }
            }
            for _ in 0..200 {
                let b = rng.gen::<u64>() & f.mask();
                let c = rng.gen::<u64>() & f.mask();
                let roots = ext.quad_roots(b, c).unwrap();
                assert_eq!(ext.mul(roots[0], roots[1]), ext.lift(c));
                assert_eq!(ext.add(roots[0], roots[1]), ext.lift(b));
            }
        }
    }

    #[test]
    fn booleans_are_modulus_independent() {
        // same n = 4 under two moduli: representation-free counts must agree
        let f1 = FieldContext::new(4, Some(0x13)).unwrap();
        let f2 = f16_paper();
        let count = |f: &FieldContext, p: &dyn Fn(&FieldContext, u64) -> bool| {
            (0..16u64).filter(|&a| p(f, a)).count()
        };
        assert_eq!(
            count(&f1, &|f, a| f.trace(a) == 0),
            count(&f2, &|f, a| f.trace(a) == 0)
        );
        assert_eq!(
            count(&f1, &|f, a| f.is_cube(a, false).unwrap()),
            count(&f2, &|f, a| f.is_cube(a, false).unwrap())
        );
        let solvable = |f: &FieldContext| {
            let mut c = 0usize;
            for alpha in 1..16u64 {
                for b in 0..16u64 {
                    if f.solve_artin_schreier(alpha, b).unwrap().is_some() {
                        c += 1;
                    }
                }
            }
            c
        };
        assert_eq!(solvable(&f1), solvable(&f2));
    }

    #[test]
    fn element_formatting_round_trips() {
        let f = FieldContext::new(13, None).unwrap();
        assert_eq!(f.fmt_element(0x1a), "001a");
        assert_eq!(f.parse_element("001a").unwrap(), 0x1a);
        assert_eq!(f.parse_element("1A").unwrap(), 0x1a);
        assert_eq!(f.parse_element("0x1a").unwrap(), 0x1a);
        assert!(f.parse_element("4000").is_err());
        assert_eq!(f.modulus_hex(), "201b");
        let f4 = f16_paper();
        assert_eq!(f4.modulus_hex(), "19");
        assert_eq!(f4.fmt_element(0xa), "a");
    }
}
