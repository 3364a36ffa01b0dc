//! Additive and multiplicative characters of `F_q` and the exponential sums
//! built from them.
//!
//! `psi(a) = zeta^{tr(a)}` with `zeta = e^{2 pi i / p}` is the canonical additive
//! character. Multiplicative characters are indexed by `k in [0, q-1)` through the
//! field's fixed primitive element `g`: `chi_k(g^j) = e^{2 pi i k j / (q-1)}`,
//! with `chi_0(0) = 1` and `chi_k(0) = 0` otherwise. The quadratic character
//! `eta` is `chi_{(q-1)/2}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldSpec};

pub type CNum = Complex64;

/// Slack added to every Weil-type bound before comparing.
pub const WEIL_SLACK: f64 = 1e-9;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative character `chi_k` of `F_q^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultChar {
    k: u32,
    order: u32,
}

impl MultChar {
    pub fn new(k: u32, q: u32) -> Result<MultChar> {
        if k >= q - 1 {
            return Err(Error::InvalidParameter(format!(
                "character index {k} outside [0, {})",
                q - 1
            )));
        }
        Ok(MultChar {
            k,
            order: (q - 1) / gcd(k, q - 1),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    /// `chi(-1) = (-1)^{(q-1)/r}` for a character of order `r`.
    pub fn sign_at_minus_one(&self, q: u32) -> f64 {
        if ((q - 1) / self.order).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// A character sum together with the Weil-type bound it is expected to satisfy.
#[derive(Clone, Copy, Debug)]
pub struct WeilSum {
    pub value: CNum,
    pub bound: f64,
}

impl WeilSum {
    pub fn holds(&self) -> bool {
        self.value.norm() <= self.bound + WEIL_SLACK
    }
}

/// Unit-root tables and character evaluation over a fixed field.
pub struct CharTable<'f> {
    field: &'f FieldSpec,
    root_p: Vec<CNum>,
    root_q1: Vec<CNum>,
    sy2: CNum,
}

impl<'f> CharTable<'f> {
    pub fn new(field: &'f FieldSpec) -> CharTable<'f> {
        let p = field.p();
        let n = field.q() - 1;
        let root_p = (0..p)
            .map(|t| CNum::from_polar(1.0, 2.0 * PI * t as f64 / p as f64))
            .collect();
        let root_q1 = (0..n)
            .map(|t| CNum::from_polar(1.0, 2.0 * PI * t as f64 / n as f64))
            .collect();
        let sqrt_q = (field.q() as f64).sqrt();
        let e = field.e();
        let sy2 = if p % 4 == 1 {
            let sign = if (e - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
            CNum::new(sign * sqrt_q, 0.0)
        } else {
            // (-i)^{e+2}
            let unit = match (e + 2) % 4 {
                0 => CNum::new(1.0, 0.0),
                1 => CNum::new(0.0, -1.0),
                2 => CNum::new(-1.0, 0.0),
                _ => CNum::new(0.0, 1.0),
            };
            unit * sqrt_q
        };
        CharTable {
            field,
            root_p,
            root_q1,
            sy2,
        }
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `e^{2 pi i t / p}` for a residue `t`.
    pub fn zeta(&self, t: u32) -> CNum {
        self.root_p[(t % self.field.p()) as usize]
    }

    /// `psi(a) = zeta^{tr(a)}`.
    pub fn psi(&self, a: Fel) -> CNum {
        self.root_p[self.field.trace(a) as usize]
    }

    /// `zeta^{-tr(a)}`.
    pub fn psi_neg(&self, a: Fel) -> CNum {
        self.psi(self.field.neg(a))
    }

    pub fn chi(&self, k: u32, a: Fel) -> CNum {
        let n = self.field.q() - 1;
        assert!(k < n, "character index {k} outside [0, {n})");
        if a.is_zero() {
            return if k == 0 { CNum::new(1.0, 0.0) } else { CNum::new(0.0, 0.0) };
        }
        let l = self.field.dlog(a).expect("nonzero") as u64;
        self.root_q1[((k as u64 * l) % n as u64) as usize]
    }

    /// Quadratic character as an integer in `{-1, 0, 1}`.
    pub fn eta(&self, a: Fel) -> i32 {
        if a.is_zero() {
            0
        } else if self.field.is_square(a) {
            1
        } else {
            -1
        }
    }

    pub fn eta_index(&self) -> u32 {
        (self.field.q() - 1) / 2
    }

    /// Indices of the nontrivial multiplicative characters.
    pub fn nontrivial(&self) -> impl Iterator<Item = MultChar> + '_ {
        let q = self.q();
        (1..q - 1).map(move |k| MultChar::new(k, q).expect("in range"))
    }

    /// Closed form of `S_{y^2} = sum_a zeta^{tr(a^2)}`.
    pub fn sy2(&self) -> CNum {
        self.sy2
    }

    /// `sum_a zeta^{tr(b a + c)}` in closed form.
    pub fn linear_exp_sum(&self, b: Fel, c: Fel) -> CNum {
        if b.is_zero() {
            self.psi(c) * self.q() as f64
        } else {
            CNum::new(0.0, 0.0)
        }
    }

    pub fn linear_exp_sum_direct(&self, b: Fel, c: Fel) -> CNum {
        let f = self.field;
        f.elements().map(|a| self.psi(f.add(f.mul(b, a), c))).sum()
    }

    /// `sum_a zeta^{tr(g a^2)} = eta(g) S_{y^2}`.
    pub fn gauss_square_sum(&self, g: Fel) -> Result<CNum> {
        if g.is_zero() {
            return Err(Error::InvalidParameter("gauss sum needs g != 0".into()));
        }
        Ok(self.sy2 * self.eta(g) as f64)
    }

    pub fn gauss_square_sum_direct(&self, g: Fel) -> CNum {
        let f = self.field;
        f.elements().map(|a| self.psi(f.mul(g, f.square(a)))).sum()
    }

    /// `sum_{a != 0} eta(a^2 - 1)`, summed directly.
    pub fn eta_sq_minus_one_sum(&self) -> CNum {
        let f = self.field;
        let total: i64 = f
            .nonzero()
            .map(|a| self.eta(f.sub(f.square(a), Fel::ONE)) as i64)
            .sum();
        CNum::new(total as f64, 0.0)
    }

    /// `sum_t chi_k(t) eta(t^2 - 1) psi(c t)`, bounded by `(3 - delta_{0c}) sqrt q`.
    pub fn weil_sum_a(&self, k: u32, c: Fel) -> Result<WeilSum> {
        self.check_nontrivial(k)?;
        let f = self.field;
        let value = f
            .elements()
            .map(|t| {
                let eta = self.eta(f.sub(f.square(t), Fel::ONE));
                if eta == 0 || t.is_zero() {
                    CNum::new(0.0, 0.0)
                } else {
                    self.chi(k, t) * self.psi(f.mul(c, t)) * eta as f64
                }
            })
            .sum();
        let factor = if c.is_zero() { 2.0 } else { 3.0 };
        Ok(WeilSum {
            value,
            bound: factor * (self.q() as f64).sqrt(),
        })
    }

    /// `sum_{t != -1} chi_k(t) eta(t^2 - 1) zeta^{-tr(c (t-1)/(t+1))}`, bounded by `3 sqrt q`.
    pub fn weil_sum_b(&self, k: u32, c: Fel) -> Result<WeilSum> {
        self.check_nontrivial(k)?;
        if c.is_zero() {
            return Err(Error::InvalidParameter("weil_sum_b needs c != 0".into()));
        }
        let value = self.mobius_twisted_sum(k, c, |_| true);
        Ok(WeilSum {
            value,
            bound: 3.0 * (self.q() as f64).sqrt(),
        })
    }

    /// The same sum after substituting `s = (t-1)/(t+1)`:
    /// `sum_s chi_k(-(s-1)^{q-2}(s+1)) eta(s) zeta^{-tr(c s)}`.
    pub fn weil_sum_b_mobius(&self, k: u32, c: Fel) -> Result<CNum> {
        self.check_nontrivial(k)?;
        let f = self.field;
        let q = self.q() as u64;
        Ok(f.elements()
            .map(|s| {
                let arg = f.neg(f.mul(f.pow(f.sub(s, Fel::ONE), q - 2), f.add(s, Fel::ONE)));
                self.chi(k, arg) * self.eta(s) as f64 * self.psi_neg(f.mul(c, s))
            })
            .sum())
    }

    /// `sum_{t != -1, keep(t)} chi_k(t) eta(t^2-1) zeta^{-tr(c (t-1)/(t+1))}`.
    pub(crate) fn mobius_twisted_sum(&self, k: u32, c: Fel, keep: impl Fn(Fel) -> bool) -> CNum {
        let f = self.field;
        let minus_one = f.neg(Fel::ONE);
        f.elements()
            .filter(|&t| t != minus_one && !t.is_zero() && keep(t))
            .map(|t| {
                let eta = self.eta(f.sub(f.square(t), Fel::ONE));
                if eta == 0 {
                    return CNum::new(0.0, 0.0);
                }
                let ratio = f
                    .div(f.sub(t, Fel::ONE), f.add(t, Fel::ONE))
                    .expect("t != -1");
                self.chi(k, t) * eta as f64 * self.psi_neg(f.mul(c, ratio))
            })
            .sum()
    }

    fn check_nontrivial(&self, k: u32) -> Result<()> {
        if k == 0 || k >= self.q() - 1 {
            return Err(Error::InvalidParameter(format!(
                "character index {k} must be nontrivial and below {}",
                self.q() - 1
            )));
        }
        Ok(())
    }
}
