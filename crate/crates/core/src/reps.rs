//! Irreducible representations of `G`: the `q^3` linear characters
//! `chi_{a,b,c}(X) = zeta^{tr(a x1 + b x2 + c x3)}` and the two families of
//! `q`-dimensional representations `M_{alpha,beta,gamma}` and `N_{tau,mu}`.
//!
//! Both higher-dimensional families are permutation-phase matrices: row `j` has a
//! single nonzero entry in column `j + shift`, with a phase `psi(coef * j + constant)`.

use crate::chars::{CNum, CharTable};
use crate::error::{Error, Result};
use crate::gf::{Fel, FieldSpec};
use crate::graphs::{gen_set, GroupElt};
use crate::matrix::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MParams {
    alpha: Fel,
    beta: Fel,
    gamma: Fel,
}

impl MParams {
    pub fn new(alpha: Fel, beta: Fel, gamma: Fel) -> Result<MParams> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("M representation needs alpha != 0".into()));
        }
        Ok(MParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> Fel {
        self.alpha
    }

    pub fn beta(&self) -> Fel {
        self.beta
    }

    pub fn gamma(&self) -> Fel {
        self.gamma
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NParams {
    tau: Fel,
    mu: Fel,
}

impl NParams {
    pub fn new(tau: Fel, mu: Fel) -> Result<NParams> {
        if tau.is_zero() {
            return Err(Error::InvalidParameter("N representation needs tau != 0".into()));
        }
        Ok(NParams { tau, mu })
    }

    pub fn tau(&self) -> Fel {
        self.tau
    }

    pub fn mu(&self) -> Fel {
        self.mu
    }
}

/// One of the `q`-dimensional irreducible representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irrep {
    M(MParams),
    N(NParams),
}

/// Every `(alpha != 0, beta, gamma)`, in lexicographic code order.
pub fn all_m_params(field: &FieldSpec) -> Vec<MParams> {
    let mut out = Vec::new();
    for a in field.nonzero() {
        for b in field.elements() {
            for c in field.elements() {
                out.push(MParams { alpha: a, beta: b, gamma: c });
            }
        }
    }
    out
}

/// Every `(tau != 0, mu)`.
pub fn all_n_params(field: &FieldSpec) -> Vec<NParams> {
    let mut out = Vec::new();
    for t in field.nonzero() {
        for m in field.elements() {
            out.push(NParams { tau: t, mu: m });
        }
    }
    out
}

pub fn linear_char_value(ch: &CharTable, a: Fel, b: Fel, c: Fel, x: &GroupElt) -> CNum {
    let f = ch.field();
    let x = &x.0;
    ch.psi(f.add(f.add(f.mul(a, x[0]), f.mul(b, x[1])), f.mul(c, x[2])))
}

/// `chi_{a,b,c}(S) = q R - q` where `R` counts roots of `c t^2 + b t + a`.
pub fn linear_char_s(ch: &CharTable, a: Fel, b: Fel, c: Fel) -> CNum {
    let f = ch.field();
    let roots = f
        .elements()
        .filter(|&t| f.add(f.add(f.mul(c, f.square(t)), f.mul(b, t)), a).is_zero())
        .count() as f64;
    let q = f.q() as f64;
    CNum::new(q * roots - q, 0.0)
}

pub fn linear_char_s_direct(ch: &CharTable, a: Fel, b: Fel, c: Fel) -> CNum {
    gen_set(ch.field())
        .iter()
        .map(|s| linear_char_value(ch, a, b, c, s))
        .sum()
}

/// Row `j` maps to column `j + shift` with phase `psi(coef * j + constant)`.
#[derive(Clone, Copy, Debug)]
struct PermPhase {
    shift: Fel,
    coef: Fel,
    constant: Fel,
}

fn perm_phase(field: &FieldSpec, rep: &Irrep, x: &GroupElt) -> PermPhase {
    let f = field;
    let x = &x.0;
    let two = f.from_int(2);
    match rep {
        Irrep::M(p) => {
            let ratio = f.div(p.beta, p.alpha).expect("alpha != 0");
            PermPhase {
                shift: f.mul(two, f.mul(x[0], p.alpha)),
                coef: f.add(x[1], f.mul(ratio, x[2])),
                constant: f.add(
                    f.add(f.mul(p.alpha, x[3]), f.mul(p.beta, x[4])),
                    f.mul(p.gamma, x[2]),
                ),
            }
        }
        Irrep::N(p) => PermPhase {
            shift: f.mul(two, f.mul(x[0], p.tau)),
            coef: x[2],
            constant: f.add(f.mul(p.tau, x[4]), f.mul(p.mu, x[1])),
        },
    }
}

fn accumulate(ch: &CharTable, pp: PermPhase, into: &mut CMatrix) {
    let f = ch.field();
    for j in f.elements() {
        let k = f.add(j, pp.shift);
        into[(j.code() as usize, k.code() as usize)] += ch.psi(f.add(f.mul(pp.coef, j), pp.constant));
    }
}

/// Dense matrix of a representation at a group element.
pub fn rep_matrix(ch: &CharTable, rep: &Irrep, x: &GroupElt) -> CMatrix {
    let mut m = CMatrix::zeros(ch.q() as usize);
    accumulate(ch, perm_phase(ch.field(), rep, x), &mut m);
    m
}

/// `M_{alpha,beta,gamma}(X)`.
pub fn rep_m(ch: &CharTable, p: &MParams, x: &GroupElt) -> CMatrix {
    rep_matrix(ch, &Irrep::M(*p), x)
}

/// `N_{tau,mu}(X)`.
pub fn rep_n(ch: &CharTable, p: &NParams, x: &GroupElt) -> CMatrix {
    rep_matrix(ch, &Irrep::N(*p), x)
}

/// `rho(S) = sum_{s in S} rho(s)`, summed term by term.
pub fn rep_sum_direct(ch: &CharTable, rep: &Irrep) -> CMatrix {
    let mut m = CMatrix::zeros(ch.q() as usize);
    for s in gen_set(ch.field()) {
        accumulate(ch, perm_phase(ch.field(), rep, &s), &mut m);
    }
    m
}

/// Irreducible characters of `G` in closed trace form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrChar {
    Linear(Fel, Fel, Fel),
    /// Trace of `M_{alpha,beta,gamma}`.
    Psi(MParams),
    /// Trace of `N_{tau,mu}`.
    Phi(NParams),
}

impl IrrChar {
    pub fn value(&self, ch: &CharTable, x: &GroupElt) -> CNum {
        let f = ch.field();
        let q = ch.q() as f64;
        let v = &x.0;
        match self {
            IrrChar::Linear(a, b, c) => linear_char_value(ch, *a, *b, *c, x),
            IrrChar::Psi(p) => {
                let ratio = f.div(p.beta, p.alpha).expect("alpha != 0");
                if v[0].is_zero() && v[1] == f.neg(f.mul(ratio, v[2])) {
                    let arg = f.add(
                        f.add(f.mul(p.alpha, v[3]), f.mul(p.beta, v[4])),
                        f.mul(p.gamma, v[2]),
                    );
                    ch.psi(arg) * q
                } else {
                    CNum::new(0.0, 0.0)
                }
            }
            IrrChar::Phi(p) => {
                if v[0].is_zero() && v[2].is_zero() {
                    ch.psi(f.add(f.mul(p.tau, v[4]), f.mul(p.mu, v[1]))) * q
                } else {
                    CNum::new(0.0, 0.0)
                }
            }
        }
    }

    /// Group elements outside of which the character vanishes; `None` for
    /// linear characters, which vanish nowhere.
    fn support(&self, field: &FieldSpec) -> Option<Vec<GroupElt>> {
        let f = field;
        match self {
            IrrChar::Linear(..) => None,
            IrrChar::Psi(p) => {
                let ratio = f.div(p.beta, p.alpha).expect("alpha != 0");
                let mut out = Vec::new();
                for x3 in f.elements() {
                    let x2 = f.neg(f.mul(ratio, x3));
                    for x4 in f.elements() {
                        for x5 in f.elements() {
                            out.push(GroupElt([Fel::ZERO, x2, x3, x4, x5]));
                        }
                    }
                }
                Some(out)
            }
            IrrChar::Phi(_) => {
                let mut out = Vec::new();
                for x2 in f.elements() {
                    for x4 in f.elements() {
                        for x5 in f.elements() {
                            out.push(GroupElt([Fel::ZERO, x2, Fel::ZERO, x4, x5]));
                        }
                    }
                }
                Some(out)
            }
        }
    }
}

/// `[c1, c2]_G = q^{-5} sum_X c1(X) conj(c2(X))`, summed over a support of one of
/// the characters so that only `O(q^3)` terms are touched.
pub fn char_inner_product(ch: &CharTable, c1: &IrrChar, c2: &IrrChar) -> CNum {
    let f = ch.field();
    let q = ch.q() as f64;
    let term = |x: &GroupElt| c1.value(ch, x) * c2.value(ch, x).conj();
    let sum: CNum = match c1.support(f).or_else(|| c2.support(f)) {
        Some(points) => points.iter().map(term).sum(),
        None => {
            // Linear characters ignore x4, x5.
            let mut s = CNum::new(0.0, 0.0);
            for x1 in f.elements() {
                for x2 in f.elements() {
                    for x3 in f.elements() {
                        s += term(&GroupElt([x1, x2, x3, Fel::ZERO, Fel::ZERO]));
                    }
                }
            }
            s * q * q
        }
    };
    sum / q.powi(5)
}

/// `(q^3 - q) q^2 + q^3 = q^5`: the squared dimensions of the irreducibles add
/// up to the group order.
pub fn dim_check(q: u64) -> bool {
    let q = q as u128;
    (q * q * q - q) * q * q + q * q * q == q.pow(5)
}
