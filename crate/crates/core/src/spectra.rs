//! Spectrum of the point graph `Cay(G, S)` assembled block by block from the
//! irreducible representations of `G`, and its lift to `D(5,q)`.
//!
//! Each `M_{alpha,beta,gamma}(S)` reduces to `alpha = 1`. For `beta != 0` it is
//! similar to `S_{y^2}` times one of two `q x q` matrices:
//!
//! * `U_beta` when `gamma = 0`, entries `eta(-1) S_{y^2}` on `j = -k != 0` and
//!   `eta(beta (k^2 - j^2))` elsewhere;
//! * `W_{beta,gamma}` otherwise, entries `eta(beta (k^2 - j^2)) zeta^{-tr(c (k-j)/(k+j))}`
//!   with `c = gamma^2 / (4 beta^3)` and zero on `j^2 = k^2`.
//!
//! Every nontrivial multiplicative character `chi` gives an eigenvector
//! `(chi(j))_j` of either matrix, with eigenvalue a twisted character sum. The
//! two remaining eigenvectors have the form `(z, 1, ..., 1)`; writing `c` for the
//! trace constant (`c = 0` for `U_beta`) their eigenvalues solve
//!
//! ```text
//! lambda^2 - (eta(-1) S - eta(beta) zeta^{-tr c} - eta(-beta) zeta^{tr c}) lambda - eta(-1)(q - 1) = 0
//! ```
//!
//! with `z lambda = eta(beta) zeta^{-tr c} (q - 1)`. `N_{tau,mu}(S) / S_{y^2}` is
//! `U_tau` for `mu = 0` and the `W` form with `c = mu^2 / (4 tau)` otherwise. The
//! `beta = 0` blocks have no closed form here and go through the Hermitian
//! eigensolver.

use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{CNum, CharTable};
use crate::error::{Error, Result};
use crate::gf::{Fel, FieldSpec};
use crate::matrix::CMatrix;
use crate::oracle;
use crate::reps::{linear_char_s, MParams, NParams};

/// Default bucketing tolerance, `1e-6 * max(1, q)`.
pub fn default_bucket_tol(q: u32) -> f64 {
    1e-6 * (q as f64).max(1.0)
}

/// A real eigenvalue multiset, stored as strictly decreasing buckets.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    entries: Vec<(f64, u64)>,
    bucket_tol: f64,
}

impl Spectrum {
    pub fn from_values(values: impl IntoIterator<Item = f64>, bucket_tol: f64) -> Spectrum {
        Self::from_weighted(values.into_iter().map(|v| (v, 1)), bucket_tol)
    }

    /// Sorts descending and merges runs whose adjacent values differ by less
    /// than `bucket_tol`; a bucket is represented by its weighted mean.
    pub fn from_weighted(values: impl IntoIterator<Item = (f64, u64)>, bucket_tol: f64) -> Spectrum {
        let mut raw: Vec<(f64, u64)> = values.into_iter().filter(|&(_, m)| m > 0).collect();
        raw.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut entries: Vec<(f64, u64)> = Vec::new();
        // (last raw value, weighted sum, multiplicity) of the open bucket
        let mut run: Option<(f64, f64, u64)> = None;
        for (v, m) in raw {
            run = match run {
                Some((last, sum, mult)) if last - v < bucket_tol => Some((v, sum + v * m as f64, mult + m)),
                Some((_, sum, mult)) => {
                    entries.push((sum / mult as f64, mult));
                    Some((v, v * m as f64, m))
                }
                None => Some((v, v * m as f64, m)),
            };
        }
        if let Some((_, sum, mult)) = run {
            entries.push((sum / mult as f64, mult));
        }
        Spectrum {
            entries,
            bucket_tol,
        }
    }

    pub fn entries(&self) -> &[(f64, u64)] {
        &self.entries
    }

    pub fn bucket_tol(&self) -> f64 {
        self.bucket_tol
    }

    pub fn rebucket(&self, bucket_tol: f64) -> Spectrum {
        Self::from_weighted(self.entries.iter().copied(), bucket_tol)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn distinct_values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn top(&self) -> Option<(f64, u64)> {
        self.entries.first().copied()
    }

    /// Second element of the multiplicity-expanded descending list.
    pub fn lambda2(&self) -> Option<f64> {
        let (top, m) = self.top()?;
        if m > 1 {
            Some(top)
        } else {
            self.entries.get(1).map(|e| e.0)
        }
    }

    /// Largest value strictly below the top bucket.
    pub fn below_top(&self) -> Option<f64> {
        self.entries.get(1).map(|e| e.0)
    }

    /// `sum lambda^power * multiplicity`.
    pub fn moment(&self, power: i32) -> f64 {
        self.entries
            .iter()
            .map(|&(v, m)| v.powi(power) * m as f64)
            .sum()
    }

    /// `sum |lambda| * multiplicity`, the scale for the first-moment check.
    pub fn abs_moment(&self) -> f64 {
        self.entries.iter().map(|&(v, m)| v.abs() * m as f64).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigSource {
    ClosedForm,
    Numeric,
}

/// The `q` eigenvalues of one block, in no particular order.
#[derive(Clone, Debug)]
pub struct EigList {
    pub values: Vec<CNum>,
    pub source: EigSource,
}

impl EigList {
    pub fn scaled(&self, s: CNum) -> EigList {
        EigList {
            values: self.values.iter().map(|&v| v * s).collect(),
            source: self.source,
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn within(&self, bound: f64) -> bool {
        self.max_modulus() <= bound
    }
}

/// Value of `sum_a zeta^{tr(a F + a^2 G)}` by completing the square.
fn quadratic_exp_sum(ch: &CharTable, lin: Fel, quad: Fel) -> CNum {
    let f = ch.field();
    if !quad.is_zero() {
        let four_g = f.mul(f.from_int(4), quad);
        let shift = f.div(f.square(lin), four_g).expect("G != 0");
        ch.sy2() * ch.eta(quad) as f64 * ch.psi_neg(shift)
    } else if !lin.is_zero() {
        CNum::new(0.0, 0.0)
    } else {
        CNum::new(ch.q() as f64, 0.0)
    }
}

/// Entries of `M_{alpha,beta,gamma}(S)` from the completed-square evaluation:
/// with `x = (k - j) / (2 alpha)`, `F = x j + alpha x^2` and
/// `G = (beta/alpha) F + gamma x`.
pub fn m_matrix_entries(ch: &CharTable, p: &MParams) -> CMatrix {
    let f = ch.field();
    let two_alpha = f.mul(f.from_int(2), p.alpha());
    let ratio = f.div(p.beta(), p.alpha()).expect("alpha != 0");
    CMatrix::from_fn(f.q() as usize, |j, k| {
        if j == k {
            return CNum::new(0.0, 0.0);
        }
        let (jf, kf) = (Fel::from_code(j as u32), Fel::from_code(k as u32));
        let x = f.div(f.sub(kf, jf), two_alpha).expect("2 alpha != 0");
        let lin = f.add(f.mul(x, jf), f.mul(p.alpha(), f.square(x)));
        let quad = f.add(f.mul(ratio, lin), f.mul(p.gamma(), x));
        quadratic_exp_sum(ch, lin, quad)
    })
}

/// Entries of `N_{tau,mu}(S)`: `F = mu (k - j) / (2 tau)`, `G = (k^2 - j^2) / (4 tau)`.
pub fn n_matrix_entries(ch: &CharTable, p: &NParams) -> CMatrix {
    let f = ch.field();
    let two_tau = f.mul(f.from_int(2), p.tau());
    let four_tau = f.mul(f.from_int(4), p.tau());
    CMatrix::from_fn(f.q() as usize, |j, k| {
        if j == k {
            return CNum::new(0.0, 0.0);
        }
        let (jf, kf) = (Fel::from_code(j as u32), Fel::from_code(k as u32));
        let lin = f.div(f.mul(p.mu(), f.sub(kf, jf)), two_tau).expect("tau != 0");
        let quad = f
            .div(f.sub(f.square(kf), f.square(jf)), four_tau)
            .expect("tau != 0");
        quadratic_exp_sum(ch, lin, quad)
    })
}

/// `M_{alpha,beta,gamma}(S) = M_{1,beta,alpha gamma}(S)`.
pub fn reduce_m_params(field: &FieldSpec, p: &MParams) -> MParams {
    MParams::new(Fel::ONE, p.beta(), field.mul(p.alpha(), p.gamma())).expect("alpha = 1")
}

fn require_nonzero(a: Fel, what: &str) -> Result<()> {
    if a.is_zero() {
        Err(Error::InvalidParameter(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

pub fn u_matrix(ch: &CharTable, beta: Fel) -> Result<CMatrix> {
    require_nonzero(beta, "beta")?;
    let f = ch.field();
    let special = ch.sy2() * ch.eta(f.neg(Fel::ONE)) as f64;
    Ok(CMatrix::from_fn(f.q() as usize, |j, k| {
        let (jf, kf) = (Fel::from_code(j as u32), Fel::from_code(k as u32));
        if j != 0 && jf == f.neg(kf) {
            special
        } else {
            let d = f.sub(f.square(kf), f.square(jf));
            CNum::new(ch.eta(f.mul(beta, d)) as f64, 0.0)
        }
    }))
}

/// The matrix `eta(lead (k^2 - j^2)) zeta^{-tr(c (k-j)/(k+j))}`, zero on `j^2 = k^2`.
pub fn w_form_matrix(ch: &CharTable, lead: Fel, c: Fel) -> CMatrix {
    let f = ch.field();
    CMatrix::from_fn(f.q() as usize, |j, k| {
        let (jf, kf) = (Fel::from_code(j as u32), Fel::from_code(k as u32));
        let d = f.sub(f.square(kf), f.square(jf));
        if d.is_zero() {
            return CNum::new(0.0, 0.0);
        }
        let ratio = f.div(f.sub(kf, jf), f.add(kf, jf)).expect("k != -j");
        ch.psi_neg(f.mul(c, ratio)) * ch.eta(f.mul(lead, d)) as f64
    })
}

/// `gamma^2 / (4 beta^3)`.
pub fn w_constant(field: &FieldSpec, beta: Fel, gamma: Fel) -> Fel {
    let f = field;
    let denom = f.mul(f.from_int(4), f.pow(beta, 3));
    f.div(f.square(gamma), denom).expect("beta != 0")
}

/// `mu^2 / (4 tau)`.
pub fn n_constant(field: &FieldSpec, tau: Fel, mu: Fel) -> Fel {
    let f = field;
    f.div(f.square(mu), f.mul(f.from_int(4), tau)).expect("tau != 0")
}

pub fn w_matrix(ch: &CharTable, beta: Fel, gamma: Fel) -> Result<CMatrix> {
    require_nonzero(beta, "beta")?;
    require_nonzero(gamma, "gamma")?;
    Ok(w_form_matrix(ch, beta, w_constant(ch.field(), beta, gamma)))
}

/// Diagonal of `D` in `M_{1,beta,0}(S) = S_{y^2} D^* U_beta D`:
/// `D_jj = zeta^{-tr(j^2 / (16 beta))}`.
pub fn u_similarity_diag(ch: &CharTable, beta: Fel) -> Result<Vec<CNum>> {
    require_nonzero(beta, "beta")?;
    let f = ch.field();
    let sixteen_beta = f.mul(f.from_int(16), beta);
    Ok(f.elements()
        .map(|j| ch.psi_neg(f.div(f.square(j), sixteen_beta).expect("beta != 0")))
        .collect())
}

/// Diagonal of `D` in `M' = S_{y^2} D^* W D`, where `M'_{j,k} = M_{j - gamma/beta, k - gamma/beta}`:
/// `D_jj = zeta^{-tr(j^2/(16 beta) - gamma j/(4 beta^2))}`.
pub fn w_similarity_diag(ch: &CharTable, beta: Fel, gamma: Fel) -> Result<Vec<CNum>> {
    require_nonzero(beta, "beta")?;
    let f = ch.field();
    let a = f.inv(f.mul(f.from_int(16), beta))?;
    let b = f.div(gamma, f.mul(f.from_int(4), f.square(beta)))?;
    Ok(f.elements()
        .map(|j| ch.psi_neg(f.sub(f.mul(a, f.square(j)), f.mul(b, j))))
        .collect())
}

/// `M'_{j,k} = M_{j - s, k - s}`.
pub fn shift_indices(field: &FieldSpec, m: &CMatrix, s: Fel) -> CMatrix {
    m.permute(|j| field.sub(Fel::from_code(j as u32), s).code() as usize)
}

/// One of the two eigenpairs with eigenvector `(z, 1, ..., 1)`.
#[derive(Clone, Copy, Debug)]
pub struct SpecialVector {
    pub lambda: CNum,
    pub z: CNum,
}

impl SpecialVector {
    pub fn vector(&self, q: usize) -> Vec<CNum> {
        let mut v = vec![CNum::new(1.0, 0.0); q];
        v[0] = self.z;
        v
    }
}

/// Roots of the quadratic for the `(z, 1, ..., 1)` eigenvectors of the `W` form
/// with leading coefficient `lead` and trace constant `c` (`c = 0` gives `U_lead`).
pub fn special_vectors(ch: &CharTable, lead: Fel, c: Fel) -> [SpecialVector; 2] {
    let f = ch.field();
    let q1 = (ch.q() - 1) as f64;
    let eta_m1 = ch.eta(f.neg(Fel::ONE)) as f64;
    let eta_lead = ch.eta(lead) as f64;
    let eta_neg_lead = ch.eta(f.neg(lead)) as f64;
    let b = ch.sy2() * eta_m1 - ch.psi_neg(c) * eta_lead - ch.psi(c) * eta_neg_lead;
    let disc = (b * b + 4.0 * eta_m1 * q1).sqrt();
    let zlambda = ch.psi_neg(c) * eta_lead * q1;
    [(b + disc) / 2.0, (b - disc) / 2.0].map(|lambda| SpecialVector {
        lambda,
        z: zlambda / lambda,
    })
}

fn closed_u_form(ch: &CharTable, lead: Fel) -> EigList {
    let f = ch.field();
    let q = ch.q();
    let eta_lead = ch.eta(lead) as f64;
    let reflect = ch.sy2() * ch.eta(f.neg(Fel::ONE)) as f64;
    let mut values: Vec<CNum> = ch
        .nontrivial()
        .map(|chi| {
            let sum = ch.weil_sum_a(chi.k(), Fel::ZERO).expect("nontrivial").value;
            sum * eta_lead + reflect * chi.sign_at_minus_one(q)
        })
        .collect();
    values.extend(special_vectors(ch, lead, Fel::ZERO).iter().map(|s| s.lambda));
    EigList {
        values,
        source: EigSource::ClosedForm,
    }
}

fn closed_w_form(ch: &CharTable, lead: Fel, c: Fel) -> EigList {
    let eta_lead = ch.eta(lead) as f64;
    let mut values: Vec<CNum> = ch
        .nontrivial()
        .map(|chi| ch.mobius_twisted_sum(chi.k(), c, |_| true) * eta_lead)
        .collect();
    values.extend(special_vectors(ch, lead, c).iter().map(|s| s.lambda));
    EigList {
        values,
        source: EigSource::ClosedForm,
    }
}

/// Closed-form eigenvalues of `U_beta`; the first `q - 2` follow the order of
/// the nontrivial characters `chi_1, ..., chi_{q-2}`.
pub fn eig_closed_u(ch: &CharTable, beta: Fel) -> Result<EigList> {
    require_nonzero(beta, "beta")?;
    Ok(closed_u_form(ch, beta))
}

/// Closed-form eigenvalues of `W_{beta,gamma}`, ordered as in [`eig_closed_u`].
pub fn eig_closed_w(ch: &CharTable, beta: Fel, gamma: Fel) -> Result<EigList> {
    require_nonzero(beta, "beta")?;
    require_nonzero(gamma, "gamma")?;
    Ok(closed_w_form(ch, beta, w_constant(ch.field(), beta, gamma)))
}

/// Closed-form eigenvalues of `N_{tau,mu}(S) / S_{y^2}`.
pub fn eig_closed_n(ch: &CharTable, p: &NParams) -> EigList {
    if p.mu().is_zero() {
        closed_u_form(ch, p.tau())
    } else {
        closed_w_form(ch, p.tau(), n_constant(ch.field(), p.tau(), p.mu()))
    }
}

/// Eigenvalues of `M_{alpha,beta,gamma}(S)`.
pub fn eig_block_m(ch: &CharTable, p: &MParams) -> Result<EigList> {
    let reduced = reduce_m_params(ch.field(), p);
    let (beta, gamma) = (reduced.beta(), reduced.gamma());
    if beta.is_zero() {
        let values = oracle::hermitian_eigenvalues(&m_matrix_entries(ch, &reduced))?;
        Ok(EigList {
            values: values.into_iter().map(|v| CNum::new(v, 0.0)).collect(),
            source: EigSource::Numeric,
        })
    } else if gamma.is_zero() {
        Ok(closed_u_form(ch, beta).scaled(ch.sy2()))
    } else {
        Ok(closed_w_form(ch, beta, w_constant(ch.field(), beta, gamma)).scaled(ch.sy2()))
    }
}

/// Eigenvalues of `N_{tau,mu}(S)`.
pub fn eig_block_n(ch: &CharTable, p: &NParams) -> EigList {
    eig_closed_n(ch, p).scaled(ch.sy2())
}

fn push_real(
    out: &mut Vec<(f64, u64)>,
    values: &[CNum],
    multiplicity: u64,
    tol: f64,
) -> Result<()> {
    for v in values {
        if v.im.abs() > tol {
            return Err(Error::ImaginaryResidue {
                value: v.re,
                residue: v.im.abs(),
                tol,
            });
        }
        out.push((v.re, multiplicity));
    }
    Ok(())
}

/// Spectrum of the point graph `Cay(G, S)` from the representation blocks:
/// linear characters with multiplicity one, each `M(S)` eigenvalue with
/// multiplicity `q` per source triple (`q (q-1)` per reduced pair), and each
/// `N(S)` eigenvalue with multiplicity `q`.
pub fn assemble_point_spectrum(field: &FieldSpec, bucket_tol: f64) -> Result<Spectrum> {
    let ch = CharTable::new(field);
    let q = field.q() as u64;
    let imag_tol = 1e-8 * q as f64;
    let mut weighted = Vec::with_capacity((q * q * q) as usize + (2 * q * q * q) as usize);

    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                push_real(&mut weighted, &[linear_char_s(&ch, a, b, c)], 1, imag_tol)?;
            }
        }
    }

    let reduced: Vec<MParams> = field
        .elements()
        .flat_map(|b| {
            field
                .elements()
                .map(move |g| MParams::new(Fel::ONE, b, g).expect("alpha = 1"))
        })
        .collect();
    let m_blocks: Vec<Result<EigList>> = reduced.par_iter().map(|p| eig_block_m(&ch, p)).collect();
    for block in m_blocks {
        push_real(&mut weighted, &block?.values, q * (q - 1), imag_tol)?;
    }

    let n_params = crate::reps::all_n_params(field);
    let n_blocks: Vec<EigList> = n_params.par_iter().map(|p| eig_block_n(&ch, p)).collect();
    for block in n_blocks {
        push_real(&mut weighted, &block.values, q, imag_tol)?;
    }

    Ok(Spectrum::from_weighted(weighted, bucket_tol))
}

/// Bipartite spectrum of a `q`-regular C4-free graph from that of its halved
/// graph: `lambda -> +-sqrt(lambda + q)`, and `-q -> 0` with doubled multiplicity.
pub fn lift_to_bipartite(s: &Spectrum, q: u32) -> Result<Spectrum> {
    let qf = q as f64;
    let tol = s.bucket_tol();
    let mut out = Vec::with_capacity(2 * s.entries().len());
    for &(v, m) in s.entries() {
        if v < -qf - tol {
            return Err(Error::BelowRayleighBound { value: v, q });
        }
        if (v + qf).abs() <= tol {
            out.push((0.0, 2 * m));
        } else {
            let r = (v + qf).sqrt();
            out.push((r, m));
            out.push((-r, m));
        }
    }
    Ok(Spectrum::from_weighted(out, tol))
}

pub fn lambda2(s: &Spectrum) -> f64 {
    s.lambda2().expect("spectrum with at least two eigenvalues")
}

/// Expansion figures for a `degree`-regular graph with second eigenvalue `lambda2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Expansion {
    pub degree: f64,
    pub lambda2: f64,
    pub spectral_gap: f64,
    pub cheeger_lower: f64,
    pub cheeger_upper: f64,
}

impl Expansion {
    pub fn new(degree: f64, lambda2: f64) -> Expansion {
        Expansion {
            degree,
            lambda2,
            spectral_gap: degree - lambda2,
            cheeger_lower: (degree - lambda2) / 2.0,
            cheeger_upper: (degree * degree - lambda2 * lambda2).max(0.0).sqrt(),
        }
    }
}

/// Bound certification for `D(5,q)` through the representation pipeline.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub q: u32,
    pub lambda2: f64,
    pub below_top: f64,
    pub two_sqrt_q: f64,
    pub two_sqrt_q_minus_1: f64,
    pub spectral_gap: f64,
    pub cheeger_lower: f64,
    pub cheeger_upper: f64,
    pub bound_2sqrtq: bool,
    pub ramanujan: bool,
    pub point_lambda2: f64,
    pub point_bound_3q: bool,
}

impl BoundsReport {
    pub fn from_spectra(q: u32, point: &Spectrum, lifted: &Spectrum) -> BoundsReport {
        let qf = q as f64;
        let l2 = lambda2(lifted);
        let point_l2 = lambda2(point);
        let exp = Expansion::new(qf, l2);
        let slack = lifted.bucket_tol();
        BoundsReport {
            q,
            lambda2: l2,
            below_top: lifted.below_top().unwrap_or(f64::NAN),
            two_sqrt_q: 2.0 * qf.sqrt(),
            two_sqrt_q_minus_1: 2.0 * (qf - 1.0).sqrt(),
            spectral_gap: exp.spectral_gap,
            cheeger_lower: exp.cheeger_lower,
            cheeger_upper: exp.cheeger_upper,
            bound_2sqrtq: l2 <= 2.0 * qf.sqrt() + slack,
            ramanujan: l2 <= 2.0 * (qf - 1.0).sqrt() + slack,
            point_lambda2: point_l2,
            point_bound_3q: point_l2 <= 3.0 * qf + point.bucket_tol(),
        }
    }
}

pub fn bounds_report(field: &FieldSpec) -> Result<BoundsReport> {
    let tol = default_bucket_tol(field.q());
    let point = assemble_point_spectrum(field, tol)?;
    let lifted = lift_to_bipartite(&point, field.q())?;
    Ok(BoundsReport::from_spectra(field.q(), &point, &lifted))
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Which graph a spectrum belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// `D(k,q)`, `q`-regular.
    Bipartite { k: usize },
    /// The point graph of `D(5,q)`, `q(q-1)`-regular.
    Point,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Bipartite { .. } => "d-graph",
            GraphKind::Point => "point-graph",
        }
    }

    pub fn k(self) -> usize {
        match self {
            GraphKind::Bipartite { k } => k,
            GraphKind::Point => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenEntry {
    pub value: f64,
    pub multiplicity: u64,
}

/// Serialized form of a spectrum with its bound checks. For the point graph
/// the bound flags are the lifted conditions `lambda2 <= 3q` and
/// `sqrt(lambda2 + q) <= 2 sqrt(q - 1)`; gap and Cheeger figures use the
/// graph's own degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumExport {
    pub q: u32,
    pub k: usize,
    pub graph: String,
    pub method: String,
    pub eigenvalues: Vec<EigenEntry>,
    pub lambda2: f64,
    pub bound_2sqrtq: bool,
    pub ramanujan: bool,
    pub spectral_gap: f64,
    pub cheeger_lower: f64,
    pub cheeger_upper: f64,
}

impl SpectrumExport {
    pub fn new(s: &Spectrum, q: u32, kind: GraphKind, method: &str) -> SpectrumExport {
        let qf = q as f64;
        let l2 = s.lambda2().unwrap_or(f64::NAN);
        let slack = s.bucket_tol();
        let (degree, bound, ramanujan) = match kind {
            GraphKind::Bipartite { .. } => (
                qf,
                l2 <= 2.0 * qf.sqrt() + slack,
                l2 <= 2.0 * (qf - 1.0).sqrt() + slack,
            ),
            GraphKind::Point => (
                qf * (qf - 1.0),
                l2 <= 3.0 * qf + slack,
                l2 + qf <= 4.0 * (qf - 1.0) + slack,
            ),
        };
        let exp = Expansion::new(degree, l2);
        SpectrumExport {
            q,
            k: kind.k(),
            graph: kind.name().to_string(),
            method: method.to_string(),
            eigenvalues: s
                .entries()
                .iter()
                .map(|&(v, m)| EigenEntry {
                    value: round_sig12(v),
                    multiplicity: m,
                })
                .collect(),
            lambda2: round_sig12(l2),
            bound_2sqrtq: bound,
            ramanujan,
            spectral_gap: round_sig12(exp.spectral_gap),
            cheeger_lower: round_sig12(exp.cheeger_lower),
            cheeger_upper: round_sig12(exp.cheeger_upper),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# graph={} k={} q={} method={} lambda2={} bound_2sqrtq={} ramanujan={} spectral_gap={} cheeger_lower={} cheeger_upper={}\nvalue,multiplicity\n",
            self.graph,
            self.k,
            self.q,
            self.method,
            self.lambda2,
            self.bound_2sqrtq,
            self.ramanujan,
            self.spectral_gap,
            self.cheeger_lower,
            self.cheeger_upper
        );
        for e in &self.eigenvalues {
            out.push_str(&format!("{},{}\n", e.value, e.multiplicity));
        }
        out
    }
}
