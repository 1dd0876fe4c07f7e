//! Base field F_q arithmetic on integer codes, plus the small number-theory
//! helpers needed to construct fields deterministically.
//!
//! Elements of F_q are encoded as integers in [0, q). For prime q the code is
//! the residue itself; for q = p^e the code is read base-p, little-endian, as
//! the coefficient vector of the polynomial representation over F_p.

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n & 1 == 0 {
        return 2;
    }
    // Brent's cycle detection with deterministic restarts.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization of a 64-bit integer, sorted, with multiplicities.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            factors.push(p);
            n /= p;
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(v) = stack.pop() {
        if is_prime(v) {
            factors.push(v);
            continue;
        }
        let d = pollard_rho(v);
        stack.push(d);
        stack.push(v / d);
    }
    factors.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

/// Decomposes q as p^e with p prime; `None` if q is not a prime power (or < 2).
pub(crate) fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = factorize(q);
    if factors.len() == 1 {
        Some(factors[0])
    } else {
        None
    }
}

/// Largest q for which a prime-power (non-prime) base field is supported;
/// arithmetic for those goes through exp/log tables of size q.
const BASE_TABLE_LIMIT: u64 = 1 << 16;

/// Exact arithmetic for the base field F_q on integer codes.
///
/// Prime q uses direct modular arithmetic. Prime-power q uses discrete-log
/// tables over F_p[y]/(g) with g the irreducible polynomial of degree e whose
/// non-leading coefficient encoding is smallest.
#[derive(Clone)]
pub(crate) struct BaseField {
    p: u64,
    e: u32,
    q: u64,
    /// g's coefficient codes (length e+1, monic), empty for prime fields.
    modulus: Vec<u64>,
    /// exp[i] = code of g0^i for a fixed generator g0; empty for prime fields.
    exp: Vec<u32>,
    /// log[code] for code in [1, q); log[0] is unused.
    log: Vec<u32>,
}

impl BaseField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power_decompose(q).ok_or(Error::NotPrimePower { q })?;
        if e == 1 {
            return Ok(Self { p, e, q, modulus: Vec::new(), exp: Vec::new(), log: Vec::new() });
        }
        if q > BASE_TABLE_LIMIT {
            return Err(Error::BaseFieldTooLarge { q, limit: BASE_TABLE_LIMIT });
        }
        let prime = Self { p, e: 1, q: p, modulus: Vec::new(), exp: Vec::new(), log: Vec::new() };
        let modulus = smallest_irreducible(&prime, e as usize);
        let mut field =
            Self { p, e, q, modulus, exp: vec![0; (q - 1) as usize], log: vec![0; q as usize] };
        let g0 = field.find_generator();
        let mut acc = 1u64;
        for i in 0..(q - 1) as usize {
            field.exp[i] = acc as u32;
            field.log[acc as usize] = i as u32;
            acc = field.mul_raw(acc, g0);
        }
        debug_assert_eq!(acc, 1);
        Ok(field)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.q {
                s - self.q
            } else {
                s
            }
        } else {
            // digit-wise addition mod p
            let mut out = 0u64;
            let (mut a, mut b) = (a, b);
            let mut stride = 1u64;
            for _ in 0..self.e {
                let s = (a % self.p + b % self.p) % self.p;
                out += s * stride;
                stride *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.q - a
            }
        } else {
            let mut out = 0u64;
            let mut a = a;
            let mut stride = 1u64;
            for _ in 0..self.e {
                let d = a % self.p;
                out += if d == 0 { 0 } else { self.p - d } * stride;
                stride *= self.p;
                a /= self.p;
            }
            out
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            mul_mod(a, b, self.q)
        } else if a == 0 || b == 0 {
            0
        } else {
            let i = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            self.exp[(i % (self.q - 1)) as usize] as u64
        }
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.e == 1 {
            Ok(pow_mod(a, self.q - 2, self.q))
        } else {
            let i = self.log[a as usize] as u64;
            Ok(self.exp[((self.q - 1 - i) % (self.q - 1)) as usize] as u64)
        }
    }

    /// Multiplication by explicit polynomial arithmetic mod `modulus`; used to
    /// bootstrap the exp/log tables.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let prime = Self {
            p: self.p,
            e: 1,
            q: self.p,
            modulus: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let da = digits(a, self.p, self.e as usize);
        let db = digits(b, self.p, self.e as usize);
        let prod = poly_mul(&prime, &da, &db);
        let red = poly_rem(&prime, &prod, &self.modulus);
        undigits(&red, self.p)
    }

    fn find_generator(&self) -> u64 {
        let factors = factorize(self.q - 1);
        'candidate: for g in 2..self.q {
            for &(r, _) in &factors {
                if self.pow_raw(g, (self.q - 1) / r) == 1 {
                    continue 'candidate;
                }
            }
            return g;
        }
        unreachable!("every finite field has a multiplicative generator")
    }

    fn pow_raw(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, a);
            }
            a = self.mul_raw(a, a);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn digits(mut code: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = code % radix;
        code /= radix;
    }
    out
}

pub(crate) fn undigits(digits: &[u64], radix: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * radix + d;
    }
    out
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over a base field, little-endian coefficient codes.
// Only used during field construction (irreducibility, primitivity, tables).
// ---------------------------------------------------------------------------

pub(crate) fn poly_trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

pub(crate) fn poly_mul(f: &BaseField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial `m`.
pub(crate) fn poly_rem(f: &BaseField, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let deg_m = m.len() - 1;
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while r.len() > deg_m {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg_m;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(lead, mi));
        }
        poly_trim(&mut r);
    }
    r
}

pub(crate) fn poly_mulmod(f: &BaseField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    poly_rem(f, &poly_mul(f, a, b), m)
}

/// a^e mod m by square-and-multiply.
pub(crate) fn poly_powmod(f: &BaseField, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(f, &acc, &base, m);
        }
        base = poly_mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn poly_gcd(f: &BaseField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // reduce a mod b (b need not be monic: normalize first)
        let lead_inv = f.inv(*b.last().unwrap()).expect("nonzero leading coefficient");
        let monic: Vec<u64> = b.iter().map(|&c| f.mul(c, lead_inv)).collect();
        let r = poly_rem(f, &a, &monic);
        a = b;
        b = r;
    }
    a
}

/// x^(q^d) mod m, computed by d successive q-th powers.
fn poly_x_qpow(f: &BaseField, d: u32, m: &[u64]) -> Vec<u64> {
    let mut t = poly_rem(f, &[0, 1], m);
    for _ in 0..d {
        t = poly_powmod(f, &t, f.q(), m);
    }
    t
}

/// Rabin irreducibility test for a monic polynomial of degree >= 1 over F_q.
pub(crate) fn poly_is_irreducible(f: &BaseField, m: &[u64]) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // x^(q^deg) == x mod m
    let mut t = poly_x_qpow(f, deg as u32, m);
    t = poly_sub_x(f, t);
    if !t.is_empty() {
        return false;
    }
    for &(r, _) in factorize(deg as u64).iter() {
        let t = poly_x_qpow(f, (deg as u64 / r) as u32, m);
        let g = poly_gcd(f, &poly_sub_x(f, t), m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_sub_x(f: &BaseField, mut t: Vec<u64>) -> Vec<u64> {
    if t.len() < 2 {
        t.resize(2, 0);
    }
    t[1] = f.sub(t[1], 1);
    poly_trim(&mut t);
    t
}

/// The monic irreducible polynomial of degree `deg` whose non-leading
/// coefficient encoding (little-endian base q) is smallest.
pub(crate) fn smallest_irreducible(f: &BaseField, deg: usize) -> Vec<u64> {
    let q = f.q();
    let bound = q.checked_pow(deg as u32).expect("base modulus search space fits in u64");
    for enc in 0..bound {
        let mut m = digits(enc, q, deg);
        m.push(1);
        if poly_is_irreducible(f, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime((1 << 61) - 1)); // Mersenne prime M61
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(6_700_417 * 97));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(728), vec![(2, 3), (7, 1), (13, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(2u64.pow(32) - 1), vec![(3, 1), (5, 1), (17, 1), (257, 1), (65537, 1)]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_decompose(9), Some((3, 2)));
        assert_eq!(prime_power_decompose(729), Some((3, 6)));
        assert_eq!(prime_power_decompose(6), None);
        assert_eq!(prime_power_decompose(1), None);
    }

    #[test]
    fn prime_field_ops() {
        let f = BaseField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(5, 4), 6);
        assert_eq!(f.neg(0), 0);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn f4_tables() {
        // F_4 = F_2[y]/(y^2+y+1): codes 0,1,2=y,3=y+1
        let f = BaseField::new(4).unwrap();
        assert_eq!(f.modulus, vec![1, 1, 1]);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.mul(2, 2), 3); // y^2 = y+1
        assert_eq!(f.mul(2, 3), 1); // y(y+1) = y^2+y = 1
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn f8_field_axioms_exhaustive() {
        let f = BaseField::new(8).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..8 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        let f2 = BaseField::new(2).unwrap();
        assert!(poly_is_irreducible(&f2, &[1, 1, 1])); // y^2+y+1
        assert!(!poly_is_irreducible(&f2, &[1, 0, 1])); // (y+1)^2
        assert!(poly_is_irreducible(&f2, &[1, 1, 0, 0, 1])); // y^4+y+1
        assert!(!poly_is_irreducible(&f2, &[1, 1, 1, 1, 1, 1, 1])); // (y^3+y+1)(y^3+y^2+1)
        let f3 = BaseField::new(3).unwrap();
        assert!(poly_is_irreducible(&f3, &[2, 1, 1])); // y^2+y+2
        assert!(!poly_is_irreducible(&f3, &[1, 1, 1])); // has root 1
    }

    #[test]
    fn smallest_irreducible_known() {
        let f2 = BaseField::new(2).unwrap();
        assert_eq!(smallest_irreducible(&f2, 2), vec![1, 1, 1]);
        let f3 = BaseField::new(3).unwrap();
        assert_eq!(smallest_irreducible(&f3, 2), vec![1, 0, 1]); // y^2+1 has no root mod 3
    }
}
