//! Exact arithmetic for the extension field F_{q^m}, the Frobenius
//! automorphism sigma(a) = a^q, primitive elements and conjugacy classes.
//!
//! Elements are canonical: a [`FieldElement`] wraps the integer encoding
//! e = sum_i c_i * q^i of its polynomial-basis coefficient vector
//! (c_0, ..., c_{m-1}) over F_q, so every field value has exactly one
//! representation. All operations go through a shared [`FieldParams`], which
//! is immutable after construction and safe to share across threads.

mod base;

pub(crate) use base::BaseField;

use crate::error::{Error, Result};
use base::{digits, factorize, poly_is_irreducible, undigits};
use rand::Rng;

/// Fields with order up to this bound get exp/log tables for O(1)
/// multiplication and inversion; larger fields fall back to dense
/// polynomial arithmetic.
const EXT_TABLE_LIMIT: u64 = 1 << 16;

/// An element of F_{q^m} in canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    /// The zero element; its encoding is 0 in every field.
    pub const ZERO: Self = FieldElement(0);

    /// The one element; its encoding is 1 in every field.
    pub const ONE: Self = FieldElement(1);

    /// The raw integer encoding e with coeffs[i] = (e / q^i) mod q.
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct ExpLog {
    /// exp[i] = gamma^i for i in [0, q^m - 1)
    exp: Vec<u64>,
    /// log[code] for code in [1, q^m)
    log: Vec<u64>,
}

/// Parameters of F_{q^m}: base field, modulus, primitive element, and the
/// precomputed data all arithmetic runs on.
pub struct FieldParams {
    base: BaseField,
    m: usize,
    order: u64,
    /// m + 1 base-field codes, little-endian, monic.
    modulus: Vec<u64>,
    gamma: FieldElement,
    /// x^{m+i} mod modulus for i in 0..m-1, as base coefficient vectors.
    xpow_red: Vec<Vec<u64>>,
    /// Prime factors of q^m - 1 (no multiplicities).
    order_prime_factors: Vec<u64>,
    /// q^i mod (q^m - 1) for i in 0..m.
    frob_exp: Vec<u64>,
    /// sigma^i images of the basis monomials, as base coefficient vectors;
    /// only built when no exp/log table is available.
    frob_mats: Vec<Vec<Vec<u64>>>,
    table: Option<ExpLog>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.base.q() == other.base.q()
            && self.m == other.m
            && self.modulus == other.modulus
            && self.gamma == other.gamma
    }
}

impl std::fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldParams")
            .field("q", &self.base.q())
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("gamma", &self.gamma.code())
            .finish()
    }
}

impl FieldParams {
    /// F_{q^m} with the default modulus: the lexicographically smallest monic
    /// irreducible polynomial of degree m over F_q whose residue class x is
    /// primitive, and gamma = x.
    pub fn new(q: u64, m: usize) -> Result<Self> {
        let base = BaseField::new(q)?;
        let order = checked_order(q, m)?;
        let order_prime_factors: Vec<u64> =
            factorize(order - 1).into_iter().map(|(p, _)| p).collect();
        for enc in 0..order {
            let mut modulus = digits(enc, q, m);
            modulus.push(1);
            if !poly_is_irreducible(&base, &modulus) {
                continue;
            }
            let params = Self::assemble(base.clone(), m, modulus, order, &order_prime_factors)?;
            let x = params.x_element();
            if params.is_primitive(x) {
                return params.with_gamma_element(x);
            }
        }
        unreachable!("a primitive polynomial of degree m exists over every F_q")
    }

    /// F_{q^m} with an explicit modulus; gamma is x when primitive, otherwise
    /// the primitive element of smallest encoding.
    pub fn with_modulus(q: u64, m: usize, modulus: &[u64]) -> Result<Self> {
        let params = Self::validated(q, m, modulus)?;
        let x = params.x_element();
        if params.is_primitive(x) {
            return params.with_gamma_element(x);
        }
        let gamma = params
            .elements()
            .find(|&a| params.is_primitive(a))
            .expect("every finite field has a primitive element");
        params.with_gamma_element(gamma)
    }

    /// F_{q^m} with an explicit modulus and primitive element, both verified.
    pub fn with_modulus_and_gamma(q: u64, m: usize, modulus: &[u64], gamma: u64) -> Result<Self> {
        let params = Self::validated(q, m, modulus)?;
        let gamma = params.element_from_code(gamma)?;
        if !params.is_primitive(gamma) {
            return Err(Error::NotPrimitive { code: gamma.code() });
        }
        params.with_gamma_element(gamma)
    }

    fn validated(q: u64, m: usize, modulus: &[u64]) -> Result<Self> {
        let base = BaseField::new(q)?;
        let order = checked_order(q, m)?;
        if modulus.len() != m + 1 || *modulus.last().unwrap_or(&0) != 1 {
            return Err(Error::BadModulusShape { m, got: modulus.len() });
        }
        for &c in modulus {
            if c >= q {
                return Err(Error::CoefficientOutOfRange { value: c, q });
            }
        }
        if !poly_is_irreducible(&base, modulus) {
            return Err(Error::ReducibleModulus { q });
        }
        let order_prime_factors: Vec<u64> =
            factorize(order - 1).into_iter().map(|(p, _)| p).collect();
        Self::assemble(base, m, modulus.to_vec(), order, &order_prime_factors)
    }

    /// Builds the params skeleton (no gamma-dependent data yet).
    fn assemble(
        base: BaseField,
        m: usize,
        modulus: Vec<u64>,
        order: u64,
        order_prime_factors: &[u64],
    ) -> Result<Self> {
        // x^m mod f = -(f - x^m); higher powers by shifting once more.
        let mut xpow_red = Vec::with_capacity(m);
        let first: Vec<u64> = modulus[..m].iter().map(|&c| base.neg(c)).collect();
        xpow_red.push(first);
        for i in 1..m {
            let prev = &xpow_red[i - 1];
            // multiply by x: shift, then reduce the overflowing x^m term
            let carry = prev[m - 1];
            let mut next = vec![0u64; m];
            for d in 1..m {
                next[d] = prev[d - 1];
            }
            for d in 0..m {
                next[d] = base.add(next[d], base.mul(carry, xpow_red[0][d]));
            }
            xpow_red.push(next);
        }
        let frob_exp = {
            let modulo = order - 1;
            let mut v = Vec::with_capacity(m);
            let mut acc = 1u64 % modulo.max(1);
            for _ in 0..m {
                v.push(acc);
                acc = ((acc as u128 * base.q() as u128) % modulo.max(1) as u128) as u64;
            }
            v
        };
        Ok(Self {
            base,
            m,
            order,
            modulus,
            gamma: FieldElement(0),
            xpow_red,
            order_prime_factors: order_prime_factors.to_vec(),
            frob_exp,
            frob_mats: Vec::new(),
            table: None,
        })
    }

    /// Installs gamma and builds the acceleration structures.
    fn with_gamma_element(mut self, gamma: FieldElement) -> Result<Self> {
        self.gamma = gamma;
        if self.order <= EXT_TABLE_LIMIT {
            let n1 = (self.order - 1) as usize;
            let mut exp = vec![0u64; n1];
            let mut log = vec![0u64; self.order as usize];
            let mut acc = FieldElement(1);
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = acc.code();
                log[acc.code() as usize] = i as u64;
                acc = self.mul_dense(acc, gamma);
            }
            debug_assert_eq!(acc.code(), 1, "gamma order must be q^m - 1");
            self.table = Some(ExpLog { exp, log });
        } else {
            // sigma^i(x^j) tables for matrix-vector Frobenius application
            let q = self.base.q();
            let x = self.x_element();
            let sigma_x = self.pow_dense(x, q);
            let mut first = Vec::with_capacity(self.m);
            let mut acc = FieldElement(1);
            for _ in 0..self.m {
                first.push(digits(acc.code(), q, self.m));
                acc = self.mul_dense(acc, sigma_x);
            }
            let mut mats: Vec<Vec<Vec<u64>>> = Vec::with_capacity(self.m);
            mats.push((0..self.m).map(|j| identity_column(q, self.m, j)).collect());
            if self.m > 1 {
                mats.push(first);
            }
            for i in 2..self.m {
                let prev: &Vec<Vec<u64>> = &mats[i - 1];
                let step: Vec<Vec<u64>> = mats[1]
                    .iter()
                    .map(|img| {
                        // sigma^{i-1} applied to sigma(x^j), linear over F_q
                        let mut out = vec![0u64; self.m];
                        for (d, &c) in img.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for t in 0..self.m {
                                out[t] = self.base.add(out[t], self.base.mul(c, prev[d][t]));
                            }
                        }
                        out
                    })
                    .collect();
                mats.push(step);
            }
            self.frob_mats = mats;
        }
        Ok(self)
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// q^m, the number of field elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, little-endian, length m + 1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The residue class of x, reduced (relevant when m = 1).
    fn x_element(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement(self.xpow_red[0][0])
        } else {
            FieldElement(self.base.q())
        }
    }

    pub fn element_from_code(&self, code: u64) -> Result<FieldElement> {
        if code < self.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::ElementOutOfRange { code, order: self.order })
        }
    }

    /// Embeds a base-field code as the constant polynomial.
    pub fn embed_base(&self, c: u64) -> Result<FieldElement> {
        if c < self.base.q() {
            Ok(FieldElement(c))
        } else {
            Err(Error::CoefficientOutOfRange { value: c, q: self.base.q() })
        }
    }

    /// Polynomial-basis coefficients of a, little-endian, length m.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        digits(a.code(), self.base.q(), self.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::ShapeMismatch {
                context: format!("expected {} coefficients, got {}", self.m, coeffs.len()),
            });
        }
        for &c in coeffs {
            if c >= self.base.q() {
                return Err(Error::CoefficientOutOfRange { value: c, q: self.base.q() });
            }
        }
        Ok(FieldElement(undigits(coeffs, self.base.q())))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let q = self.base.q();
        let (mut ca, mut cb) = (a.code(), b.code());
        let mut out = 0u64;
        let mut stride = 1u64;
        for _ in 0..self.m {
            out += self.base.add(ca % q, cb % q) * stride;
            stride = stride.wrapping_mul(q);
            ca /= q;
            cb /= q;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let q = self.base.q();
        let mut ca = a.code();
        let mut out = 0u64;
        let mut stride = 1u64;
        for _ in 0..self.m {
            out += self.base.neg(ca % q) * stride;
            stride = stride.wrapping_mul(q);
            ca /= q;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.table {
            if a.is_zero() || b.is_zero() {
                return FieldElement(0);
            }
            let i = t.log[a.code() as usize] + t.log[b.code() as usize];
            return FieldElement(t.exp[(i % (self.order - 1)) as usize]);
        }
        self.mul_dense(a, b)
    }

    fn mul_dense(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement(0);
        }
        let q = self.base.q();
        let da = digits(a.code(), q, self.m);
        let db = digits(b.code(), q, self.m);
        let mut conv = vec![0u64; 2 * self.m - 1];
        for (i, &ai) in da.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in db.iter().enumerate() {
                conv[i + j] = self.base.add(conv[i + j], self.base.mul(ai, bj));
            }
        }
        let mut out = conv[..self.m].to_vec();
        for i in self.m..2 * self.m - 1 {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            let red = &self.xpow_red[i - self.m];
            for d in 0..self.m {
                out[d] = self.base.add(out[d], self.base.mul(c, red[d]));
            }
        }
        FieldElement(undigits(&out, q))
    }

    /// Multiplicative inverse; error on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.table {
            let i = t.log[a.code() as usize];
            return Ok(FieldElement(t.exp[((self.order - 1 - i) % (self.order - 1)) as usize]));
        }
        self.inv_euclid(a)
    }

    /// Extended Euclid on coefficient polynomials over F_q.
    fn inv_euclid(&self, a: FieldElement) -> Result<FieldElement> {
        let q = self.base.q();
        let mut r0 = self.modulus.clone();
        let mut r1 = digits(a.code(), q, self.m);
        base::poly_trim(&mut r1);
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // r0 = qt * r1 + r2
            let (qt, r2) = poly_divmod(&self.base, &r0, &r1)?;
            let t2 = poly_sub(&self.base, &t0, &base::poly_mul(&self.base, &qt, &t1));
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd (a unit since the modulus is irreducible and a != 0)
        debug_assert_eq!(r0.len(), 1);
        let scale = self.base.inv(r0[0])?;
        let mut out: Vec<u64> = t0.iter().map(|&c| self.base.mul(c, scale)).collect();
        out.resize(self.m, 0);
        Ok(FieldElement(undigits(&out, q)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if let Some(t) = &self.table {
            if a.is_zero() {
                return if e == 0 { FieldElement(1) } else { FieldElement(0) };
            }
            let i = (t.log[a.code() as usize] as u128 * e as u128) % (self.order - 1) as u128;
            return FieldElement(t.exp[i as usize]);
        }
        self.pow_dense(a, e)
    }

    fn pow_dense(&self, mut a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_dense(acc, a);
            }
            a = self.mul_dense(a, a);
            e >>= 1;
        }
        acc
    }

    /// gamma^e for e >= 0.
    pub fn gamma_pow(&self, e: u64) -> FieldElement {
        if let Some(t) = &self.table {
            return FieldElement(t.exp[(e % (self.order - 1)) as usize]);
        }
        self.pow_dense(self.gamma, e)
    }

    /// sigma^i(a) = a^(q^(i mod m)); negative i selects inverse powers.
    pub fn frobenius(&self, a: FieldElement, i: i64) -> FieldElement {
        let i = i.rem_euclid(self.m as i64) as usize;
        if i == 0 || a.is_zero() {
            return a;
        }
        if let Some(t) = &self.table {
            let idx =
                (t.log[a.code() as usize] as u128 * self.frob_exp[i] as u128) % (self.order - 1) as u128;
            return FieldElement(t.exp[idx as usize]);
        }
        let q = self.base.q();
        let da = digits(a.code(), q, self.m);
        let mat = &self.frob_mats[i];
        let mut out = vec![0u64; self.m];
        for (j, &c) in da.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for d in 0..self.m {
                out[d] = self.base.add(out[d], self.base.mul(c, mat[j][d]));
            }
        }
        FieldElement(undigits(&out, q))
    }

    /// The conjugate a^c = sigma(c) * a * c^{-1}; error when c = 0.
    pub fn conjugate(&self, a: FieldElement, c: FieldElement) -> Result<FieldElement> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s = self.frobenius(c, 1);
        Ok(self.mul(self.mul(s, a), self.inv(c)?))
    }

    /// (gamma^0, ..., gamma^(ell-1)): representatives of ell pairwise distinct
    /// nontrivial conjugacy classes. Requires 1 <= ell <= q - 1.
    pub fn conjugacy_representatives(&self, ell: usize) -> Result<Vec<FieldElement>> {
        if ell == 0 {
            return Err(Error::EmptyBlockCount);
        }
        if ell as u64 > self.base.q() - 1 {
            return Err(Error::NotEnoughConjugacyClasses {
                requested: ell,
                available: self.base.q() - 1,
            });
        }
        Ok((0..ell as u64).map(|i| self.gamma_pow(i)).collect())
    }

    /// Whether a generates the multiplicative group.
    pub fn is_primitive(&self, a: FieldElement) -> bool {
        if a.is_zero() {
            return false;
        }
        self.order_prime_factors.iter().all(|&r| self.pow(a, (self.order - 1) / r).code() != 1)
    }
}

fn checked_order(q: u64, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::FieldTooLarge { q, m });
    }
    u32::try_from(m)
        .ok()
        .and_then(|m| q.checked_pow(m))
        .ok_or(Error::FieldTooLarge { q, m })
}

fn identity_column(q: u64, m: usize, j: usize) -> Vec<u64> {
    let mut v = digits(0, q, m);
    v[j] = 1;
    v
}

fn poly_sub(base: &BaseField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = base.sub(x, y);
    }
    base::poly_trim(&mut out);
    out
}

/// (quotient, remainder) of a by b over the base field; b nonzero.
fn poly_divmod(base: &BaseField, a: &[u64], b: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut r = a.to_vec();
    base::poly_trim(&mut r);
    let mut b = b.to_vec();
    base::poly_trim(&mut b);
    if b.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let lead_inv = base.inv(*b.last().unwrap())?;
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut quot = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = base.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - b.len();
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = base.sub(r[shift + i], base.mul(c, bi));
        }
        base::poly_trim(&mut r);
    }
    base::poly_trim(&mut quot);
    Ok((quot, r))
}
