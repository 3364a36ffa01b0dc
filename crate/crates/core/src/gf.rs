//! Table-driven arithmetic in `F_q`, `q = p^e` with `p` odd.
//!
//! Elements are packed as integers whose base-`p` digits are the coefficients
//! of the residue polynomial (digit `i` is the coefficient of `x^i`). Addition is
//! digit-wise mod `p`; multiplication and inversion go through exp/log tables
//! built from a fixed primitive element.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on `q` for table construction.
pub const DEFAULT_FIELD_LIMIT: u32 = 1 << 14;

/// A field element, stored as its canonical integer code in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fel(u32);

impl Fel {
    pub const ZERO: Fel = Fel(0);
    pub const ONE: Fel = Fel(1);

    /// Wraps a raw code. The caller is responsible for `code < q`.
    pub const fn from_code(code: u32) -> Fel {
        Fel(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable `F_{p^e}` context.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Fel,
    exp_table: Vec<Fel>,
    log_table: Vec<u32>,
    trace_table: Vec<u32>,
    neg_table: Vec<Fel>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` into `(p, e)` with `q = p^e`, `p` an odd prime.
pub fn odd_prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 3 {
        return Err(Error::NotOddPrimePower(q));
    }
    let factors = prime_factors(q);
    if factors.len() != 1 || factors[0] == 2 {
        return Err(Error::NotOddPrimePower(q));
    }
    let p = factors[0];
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Ok((p as u32, e))
}

/// Every odd prime power in `[3, max]`, ascending.
pub fn odd_prime_powers_up_to(max: u64) -> Vec<u64> {
    (3..=max).filter(|&q| odd_prime_power(q).is_ok()).collect()
}

// Dense polynomial helpers over F_p, coefficients low-degree-first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        n >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let coef = r[dr] * lead_inv % p;
        for (ri, &bi) in r[dr - db..].iter_mut().zip(b) {
            *ri = (*ri + p - coef * bi % p) % p;
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut m = n;
            for _ in 0..d {
                divisor.push((m % p as u64) as u32);
                m /= p as u64;
            }
            divisor.push(1);
            let r = poly_rem(poly, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e`, coefficients
/// compared from the constant term upwards.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for n in 0..count {
        // c_0 is the most significant digit of n so that n-order is lex order.
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut m = n;
        for i in (0..e as usize).rev() {
            coeffs[i] = (m % p as u64) as u32;
            m /= p as u64;
        }
        coeffs[e as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds `F_{p^e}` with the default size limit.
    pub fn new(p: u32, e: u32) -> Result<FieldSpec> {
        Self::with_limit(p, e, DEFAULT_FIELD_LIMIT)
    }

    /// Builds the field of order `q`, which must be an odd prime power.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        let (p, e) = odd_prime_power(q)?;
        Self::new(p, e)
    }

    pub fn with_limit(p: u32, e: u32, limit: u32) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic(2));
        }
        if e < 1 {
            return Err(Error::BadDegree(e));
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > limit as u64 {
            return Err(Error::FieldTooLarge {
                order,
                limit: limit as u64,
            });
        }
        let q = order as u32;
        let modulus = smallest_irreducible(p, e);

        let mut field = FieldSpec {
            p,
            e,
            q,
            modulus,
            primitive: Fel::ONE,
            exp_table: Vec::new(),
            log_table: Vec::new(),
            trace_table: Vec::new(),
            neg_table: Vec::new(),
        };
        field.neg_table = (0..q)
            .map(|c| {
                let digits = field.digits(Fel(c));
                field.from_digits(&digits.iter().map(|&d| (p - d) % p).collect::<Vec<_>>())
            })
            .collect();

        let group_order = (q - 1) as u64;
        let factors = prime_factors(group_order);
        let primitive = (1..q)
            .map(Fel)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&r| field.pow_slow(a, group_order / r) != Fel::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        field.primitive = primitive;

        let mut exp_table = Vec::with_capacity(q as usize - 1);
        let mut log_table = vec![u32::MAX; q as usize];
        let mut x = Fel::ONE;
        for i in 0..q - 1 {
            exp_table.push(x);
            log_table[x.0 as usize] = i;
            x = field.mul_slow(x, primitive);
        }
        debug_assert_eq!(x, Fel::ONE);
        field.exp_table = exp_table;
        field.log_table = log_table;

        let mut trace_table = Vec::with_capacity(q as usize);
        for c in 0..q {
            let mut acc = Fel::ZERO;
            let mut conj = Fel(c);
            for _ in 0..e {
                acc = field.add(acc, conj);
                conj = field.pow(conj, p as u64);
            }
            assert!(acc.0 < p, "trace must land in the prime subfield");
            trace_table.push(acc.0);
        }
        field.trace_table = trace_table;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low-degree-first (length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Fel {
        self.primitive
    }

    pub fn exp_table(&self) -> &[Fel] {
        &self.exp_table
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> + Clone {
        (0..self.q).map(Fel)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fel> + Clone {
        (1..self.q).map(Fel)
    }

    /// Converts a code, checking range.
    pub fn element(&self, code: u32) -> Result<Fel> {
        if code < self.q {
            Ok(Fel(code))
        } else {
            Err(Error::InvalidParameter(format!(
                "element code {code} out of range for q = {}",
                self.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fel {
        Fel(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, a: Fel) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut c = a.0;
        for _ in 0..self.e {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fel {
        Fel(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        if self.e == 1 {
            let s = a.0 + b.0;
            return Fel(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * scale;
            scale *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Fel(out)
    }

    pub fn neg(&self, a: Fel) -> Fel {
        self.neg_table[a.0 as usize]
    }

    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if a.is_zero() || b.is_zero() {
            return Fel::ZERO;
        }
        let n = self.q - 1;
        let s = self.log_table[a.0 as usize] + self.log_table[b.0 as usize];
        self.exp_table[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: Fel) -> Result<Fel> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log_table[a.0 as usize];
        Ok(self.exp_table[((n - l) % n) as usize])
    }

    /// `a / b`; errors when `b = 0`.
    pub fn div(&self, a: Fel, b: Fel) -> Result<Fel> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` with the convention `0^0 = 1`.
    pub fn pow(&self, a: Fel, n: u64) -> Fel {
        if n == 0 {
            return Fel::ONE;
        }
        if a.is_zero() {
            return Fel::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log_table[a.0 as usize] as u64;
        self.exp_table[((l * (n % order)) % order) as usize]
    }

    pub fn square(&self, a: Fel) -> Fel {
        self.mul(a, a)
    }

    /// Absolute trace `F_q -> F_p`, returned as a residue in `[0, p)`.
    pub fn trace(&self, a: Fel) -> u32 {
        self.trace_table[a.0 as usize]
    }

    /// Index `i` with `primitive^i = a`.
    pub fn dlog(&self, a: Fel) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroLog);
        }
        Ok(self.log_table[a.0 as usize])
    }

    pub fn is_square(&self, a: Fel) -> bool {
        a.is_zero() || self.log_table[a.0 as usize].is_multiple_of(2)
    }

    // Table-free multiplication, used while the tables are being built.
    fn mul_slow(&self, a: Fel, b: Fel) -> Fel {
        if self.e == 1 {
            return Fel(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn pow_slow(&self, a: Fel, mut n: u64) -> Fel {
        let mut result = Fel::ONE;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        result
    }
}
