//! Self-checking suites comparing closed forms against direct evaluation.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::chars::{CNum, CharTable, WEIL_SLACK};
use crate::error::{Error, Result};
use crate::gf::{Fel, FieldSpec};
use crate::graphs::{
    cayley_graph, components, d_graph, gen_set, girth, group_inv, group_mul, halved_graph,
    point_graph_direct, Graph, GroupElt, Side,
};
use crate::matrix::CMatrix;
use crate::oracle;
use crate::reps::{
    all_n_params, linear_char_s, linear_char_s_direct, rep_sum_direct, Irrep,
    MParams, NParams,
};
use crate::spectra::{self, EigList};

/// Largest `q` for which the brute-force spectral comparison runs.
pub const ORACLE_MAX_Q: u32 = 5;
/// Largest `q` for which representation sums are formed term by term.
pub const DIRECT_MAX_Q: u32 = 13;
/// Largest `q` the graphs suite builds `D(5,q)` for.
pub const GRAPHS_MAX_Q: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Field,
    Chars,
    Weil,
    Reps,
    Blocks,
    Assembly,
    Graphs,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Field,
        Suite::Chars,
        Suite::Weil,
        Suite::Reps,
        Suite::Blocks,
        Suite::Assembly,
        Suite::Graphs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Chars => "chars",
            Suite::Weil => "weil",
            Suite::Reps => "reps",
            Suite::Blocks => "blocks",
            Suite::Assembly => "assembly",
            Suite::Graphs => "graphs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub count: u64,
    pub worst_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub q: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Accumulates one named check.
struct Check {
    name: String,
    tol: f64,
    count: u64,
    worst: f64,
    failed: bool,
}

impl Check {
    fn new(name: &str, tol: f64) -> Check {
        Check {
            name: name.to_string(),
            tol,
            count: 0,
            worst: 0.0,
            failed: false,
        }
    }

    fn deviation(&mut self, d: f64) {
        self.count += 1;
        self.worst = self.worst.max(d);
        if d.is_nan() || d > self.tol {
            self.failed = true;
        }
    }

    fn truth(&mut self, ok: bool) {
        self.count += 1;
        if !ok {
            self.failed = true;
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: !self.failed,
            count: self.count,
            worst_deviation: self.worst,
        }
    }
}

pub fn run_suite(suite: Suite, field: &FieldSpec, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Field => field_suite(field, seed),
        Suite::Chars => chars_suite(field),
        Suite::Weil => weil_suite(field)?,
        Suite::Reps => reps_suite(field, seed),
        Suite::Blocks => blocks_suite(field)?,
        Suite::Assembly => assembly_suite(field)?,
        Suite::Graphs => graphs_suite(field)?,
    };
    Ok(SuiteReport {
        suite,
        q: field.q(),
        checks,
    })
}

fn sample(field: &FieldSpec, rng: &mut StdRng) -> Fel {
    Fel::from_code(rng.gen_range(0..field.q()))
}

fn field_suite(field: &FieldSpec, seed: u64) -> Vec<CheckResult> {
    let f = field;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut axioms = Check::new("ring axioms", 0.0);
    for _ in 0..2000 {
        let (a, b, c) = (sample(f, &mut rng), sample(f, &mut rng), sample(f, &mut rng));
        axioms.truth(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        axioms.truth(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        axioms.truth(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        axioms.truth(f.add(a, f.neg(a)) == Fel::ZERO);
    }
    let mut inverses = Check::new("inverses", 0.0);
    for a in f.nonzero() {
        inverses.truth(f.inv(a).map(|b| f.mul(a, b)) == Ok(Fel::ONE));
    }
    let mut logs = Check::new("exp/log bijection", 0.0);
    for a in f.nonzero() {
        logs.truth(f.dlog(a).map(|j| f.pow(f.primitive(), j as u64)) == Ok(a));
    }
    let mut trace = Check::new("trace fibers", 0.0);
    let mut counts = vec![0u32; f.p() as usize];
    for a in f.elements() {
        counts[f.trace(a) as usize] += 1;
        trace.truth(f.trace(f.pow(a, f.p() as u64)) == f.trace(a));
    }
    for c in counts {
        trace.truth(c == f.q() / f.p());
    }
    vec![axioms.finish(), inverses.finish(), logs.finish(), trace.finish()]
}

fn chars_suite(field: &FieldSpec) -> Vec<CheckResult> {
    let f = field;
    let ch = CharTable::new(f);
    let q = f.q() as f64;
    let tol = 1e-9 * q;
    let mut sy2 = Check::new("quadratic Gauss sum", tol);
    sy2.deviation((ch.sy2() - ch.gauss_square_sum_direct(Fel::ONE)).norm());
    sy2.deviation((ch.sy2().norm_sqr() - q).abs());
    let eta_m1 = ch.eta(f.neg(Fel::ONE)) as f64;
    sy2.deviation((ch.sy2() * eta_m1 - q / ch.sy2()).norm());
    let mut gauss = Check::new("completed squares", tol);
    for g in f.nonzero() {
        gauss.deviation((ch.gauss_square_sum(g).unwrap() - ch.gauss_square_sum_direct(g)).norm());
    }
    let mut linear = Check::new("linear exponential sums", tol);
    for b in f.elements() {
        for c in [Fel::ZERO, Fel::ONE] {
            linear.deviation((ch.linear_exp_sum(b, c) - ch.linear_exp_sum_direct(b, c)).norm());
        }
    }
    let mut orth = Check::new("multiplicative orthogonality", tol);
    for chi in ch.nontrivial() {
        let s: CNum = f.nonzero().map(|a| ch.chi(chi.k(), a)).sum();
        orth.deviation(s.norm());
        orth.deviation((ch.chi(chi.k(), f.neg(Fel::ONE)).re - chi.sign_at_minus_one(f.q())).abs());
    }
    let mut eta_sum = Check::new("eta(a^2 - 1) sum", tol);
    eta_sum.deviation((ch.eta_sq_minus_one_sum() - CNum::new(-1.0 - eta_m1, 0.0)).norm());
    vec![sy2.finish(), gauss.finish(), linear.finish(), orth.finish(), eta_sum.finish()]
}

fn weil_suite(field: &FieldSpec) -> Result<Vec<CheckResult>> {
    let f = field;
    let ch = CharTable::new(f);
    let tol = 1e-9 * f.q() as f64;
    let mut a_bound = Check::new("first sum within bound", WEIL_SLACK);
    let mut b_bound = Check::new("second sum within bound", WEIL_SLACK);
    let mut mobius = Check::new("second sum substitution", tol);
    for chi in ch.nontrivial() {
        for c in f.elements() {
            let a = ch.weil_sum_a(chi.k(), c)?;
            a_bound.deviation((a.value.norm() - a.bound).max(0.0));
            if !c.is_zero() {
                let b = ch.weil_sum_b(chi.k(), c)?;
                b_bound.deviation((b.value.norm() - b.bound).max(0.0));
                mobius.deviation((b.value - ch.weil_sum_b_mobius(chi.k(), c)?).norm());
            }
        }
    }
    Ok(vec![a_bound.finish(), b_bound.finish(), mobius.finish()])
}

fn random_elt(f: &FieldSpec, rng: &mut StdRng) -> GroupElt {
    GroupElt([0; 5].map(|_| sample(f, rng)))
}

fn random_irrep(f: &FieldSpec, rng: &mut StdRng) -> Irrep {
    let nz = |rng: &mut StdRng| Fel::from_code(rng.gen_range(1..f.q()));
    if rng.gen_bool(0.5) {
        Irrep::M(MParams::new(nz(rng), sample(f, rng), sample(f, rng)).expect("alpha != 0"))
    } else {
        Irrep::N(NParams::new(nz(rng), sample(f, rng)).expect("tau != 0"))
    }
}

fn reps_suite(field: &FieldSpec, seed: u64) -> Vec<CheckResult> {
    let f = field;
    let ch = CharTable::new(f);
    let mut rng = StdRng::seed_from_u64(seed);
    let tol = 1e-9 * f.q() as f64;
    let mut group = Check::new("group axioms", 0.0);
    let mut hom = Check::new("homomorphism", tol);
    let mut unitary = Check::new("unitarity", tol);
    for _ in 0..50 {
        let (x, y, z) = (random_elt(f, &mut rng), random_elt(f, &mut rng), random_elt(f, &mut rng));
        group.truth(group_mul(f, &group_mul(f, &x, &y), &z) == group_mul(f, &x, &group_mul(f, &y, &z)));
        group.truth(group_mul(f, &x, &group_inv(f, &x)) == GroupElt::IDENTITY);
        let rep = random_irrep(f, &mut rng);
        let lhs = crate::reps::rep_matrix(&ch, &rep, &group_mul(f, &x, &y));
        let rhs = &crate::reps::rep_matrix(&ch, &rep, &x) * &crate::reps::rep_matrix(&ch, &rep, &y);
        hom.deviation(lhs.max_abs_diff(&rhs));
        let m = crate::reps::rep_matrix(&ch, &rep, &x);
        unitary.deviation((&m * &m.adjoint()).max_abs_diff(&CMatrix::identity(m.dim())));
    }
    let mut linear = Check::new("linear characters on the generating set", tol);
    for _ in 0..20 {
        let (a, b, c) = (sample(f, &mut rng), sample(f, &mut rng), sample(f, &mut rng));
        linear.deviation((linear_char_s(&ch, a, b, c) - linear_char_s_direct(&ch, a, b, c)).norm());
    }
    let mut dims = Check::new("dimension count", 0.0);
    dims.truth(crate::reps::dim_check(f.q() as u64));
    vec![group.finish(), hom.finish(), unitary.finish(), linear.finish(), dims.finish()]
}

fn block_vectors_check(
    check: &mut Check,
    ch: &CharTable,
    m: &CMatrix,
    closed: &EigList,
    lead: Fel,
    c: Fel,
) {
    let f = ch.field();
    for (chi, &lambda) in ch.nontrivial().zip(&closed.values) {
        let v: Vec<CNum> = f.elements().map(|j| ch.chi(chi.k(), j)).collect();
        let mv = m.mul_vec(&v);
        let d = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        check.deviation(d);
    }
    for s in spectra::special_vectors(ch, lead, c) {
        let v = s.vector(f.q() as usize);
        let mv = m.mul_vec(&v);
        let d = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - s.lambda * b).norm())
            .fold(0.0, f64::max);
        check.deviation(d);
    }
}

fn blocks_suite(field: &FieldSpec) -> Result<Vec<CheckResult>> {
    let f = field;
    let ch = CharTable::new(f);
    let q = f.q() as f64;
    let tol = 1e-8 * q;
    let s = ch.sy2();
    let direct = f.q() <= DIRECT_MAX_Q;
    let mut entries = Check::new("block entries against direct sums", tol);
    let mut reduction = Check::new("alpha reduction", tol);
    let mut similarity = Check::new("similarity to U and W", tol);
    let mut vectors = Check::new("closed-form eigenvectors", tol);
    let mut numeric = Check::new("closed-form against numeric eigenvalues", tol);
    let mut bound = Check::new("block eigenvalues within 3 sqrt q", WEIL_SLACK);
    let bound3 = 3.0 * q.sqrt();

    for beta in f.elements() {
        for gamma in f.elements() {
            let p = MParams::new(Fel::ONE, beta, gamma)?;
            let m = spectra::m_matrix_entries(&ch, &p);
            if direct {
                entries.deviation(m.max_abs_diff(&rep_sum_direct(&ch, &Irrep::M(p))));
            }
            for alpha in f.nonzero().take(3) {
                let gamma_a = f.div(gamma, alpha)?;
                let pa = MParams::new(alpha, beta, gamma_a)?;
                reduction.deviation(spectra::m_matrix_entries(&ch, &pa).max_abs_diff(&m));
            }
            let block = spectra::eig_block_m(&ch, &p)?;
            bound.deviation((block.max_modulus() / q - 3.0).max(0.0));
            if beta.is_zero() {
                continue;
            }
            let (inner, diag, lead_c, shifted) = if gamma.is_zero() {
                (
                    spectra::u_matrix(&ch, beta)?,
                    spectra::u_similarity_diag(&ch, beta)?,
                    Fel::ZERO,
                    m.clone(),
                )
            } else {
                let shift = f.div(gamma, beta)?;
                (
                    spectra::w_matrix(&ch, beta, gamma)?,
                    spectra::w_similarity_diag(&ch, beta, gamma)?,
                    spectra::w_constant(f, beta, gamma),
                    spectra::shift_indices(f, &m, shift),
                )
            };
            let d = CMatrix::diagonal(&diag);
            let rebuilt = &(&d.adjoint() * &inner) * &d;
            similarity.deviation(shifted.max_abs_diff(&rebuilt.scale(s)));
            let closed = if gamma.is_zero() {
                spectra::eig_closed_u(&ch, beta)?
            } else {
                spectra::eig_closed_w(&ch, beta, gamma)?
            };
            block_vectors_check(&mut vectors, &ch, &inner, &closed, beta, lead_c);
            let found = oracle::complex_eigenvalues(&inner)?;
            numeric.deviation(oracle::match_complex(&closed.values, &found).unwrap_or(f64::INFINITY));
            bound.deviation((closed.max_modulus() - bound3).max(0.0));
        }
    }

    for p in all_n_params(f) {
        let n = spectra::n_matrix_entries(&ch, &p);
        if direct {
            entries.deviation(n.max_abs_diff(&rep_sum_direct(&ch, &Irrep::N(p))));
        }
        let inner = n.scale(s.inv());
        let closed = spectra::eig_closed_n(&ch, &p);
        let c = if p.mu().is_zero() {
            Fel::ZERO
        } else {
            spectra::n_constant(f, p.tau(), p.mu())
        };
        let lead_c = c;
        if p.mu().is_zero() {
            similarity.deviation(inner.max_abs_diff(&spectra::u_matrix(&ch, p.tau())?));
        } else {
            similarity.deviation(inner.max_abs_diff(&spectra::w_form_matrix(&ch, p.tau(), c)));
        }
        block_vectors_check(&mut vectors, &ch, &inner, &closed, p.tau(), lead_c);
        let found = oracle::complex_eigenvalues(&inner)?;
        numeric.deviation(oracle::match_complex(&closed.values, &found).unwrap_or(f64::INFINITY));
        bound.deviation((closed.max_modulus() - bound3).max(0.0));
    }

    let mut out = vec![reduction.finish(), similarity.finish(), vectors.finish(), numeric.finish(), bound.finish()];
    if direct {
        out.insert(0, entries.finish());
    }
    Ok(out)
}

fn assembly_suite(field: &FieldSpec) -> Result<Vec<CheckResult>> {
    let q = field.q();
    let qf = q as f64;
    let tol = spectra::default_bucket_tol(q);
    let point = spectra::assemble_point_spectrum(field, tol)?;
    let lifted = spectra::lift_to_bipartite(&point, q)?;
    let q5 = (q as u64).pow(5);

    let mut counts = Check::new("multiplicities", 0.0);
    counts.truth(point.total_multiplicity() == q5);
    counts.truth(lifted.total_multiplicity() == 2 * q5);
    counts.truth(point.top().map(|t| t.1) == Some(1));

    let mut top = Check::new("top eigenvalues", tol);
    top.deviation((point.top().unwrap().0 - qf * (qf - 1.0)).abs());
    top.deviation((lifted.top().unwrap().0 - qf).abs());

    let mut moments = Check::new("trace moments", 1e-6);
    moments.deviation(point.moment(1).abs() / point.abs_moment());
    let second = q5 as f64 * qf * (qf - 1.0);
    moments.deviation((point.moment(2) - second).abs() / second);

    let mut bounds = Check::new("second eigenvalue bounds", 0.0);
    let report = spectra::BoundsReport::from_spectra(q, &point, &lifted);
    bounds.truth(report.bound_2sqrtq);
    bounds.truth(report.point_bound_3q);

    let mut out = vec![counts.finish(), top.finish(), moments.finish(), bounds.finish()];
    if q <= ORACLE_MAX_Q {
        let mut brute = Check::new("brute-force spectrum", tol);
        let found = oracle::dense_spectrum(&cayley_graph(field)?, tol)?;
        let r = oracle::compare_spectra(&point, &found, tol);
        brute.truth(r.matched);
        brute.deviation(r.max_abs_deviation);
        out.push(brute.finish());
    }
    Ok(out)
}

fn graphs_suite(field: &FieldSpec) -> Result<Vec<CheckResult>> {
    let q = field.q();
    if q > GRAPHS_MAX_Q {
        return Err(Error::OracleTooLarge {
            size: (q as usize).pow(5),
            limit: (GRAPHS_MAX_Q as usize).pow(5),
        });
    }
    let g = d_graph(5, field)?;
    let mut regular = Check::new("D(5,q) regular", 0.0);
    regular.truth(g.regular_degree() == Some(q as usize));
    regular.truth(g.edges().len() == (q as usize).pow(5) * q as usize);

    let mut point = Check::new("point graph constructions agree", 0.0);
    let cay = cayley_graph(field)?;
    let direct = point_graph_direct(field)?;
    point.truth(cay == direct);
    point.truth(cay.regular_degree() == Some((q * (q - 1)) as usize));
    point.truth(gen_set(field).len() == (q * (q - 1)) as usize);
    if q <= ORACLE_MAX_Q {
        point.truth(halved_graph(&crate::graphs::gamma_graph(field), Side::Point)? == cay);
    }

    let mut connected = Check::new("connected", 0.0);
    connected.truth(components(&cay).len() == 1);

    let mut out = vec![regular.finish(), point.finish(), connected.finish()];
    if q <= ORACLE_MAX_Q {
        let mut girth_check = Check::new("girth of D(5,q) at least 10", 0.0);
        girth_check.truth(girth(&g).is_some_and(|n| n >= 10));
        out.push(girth_check.finish());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let f = FieldSpec::new(3, 1).unwrap();
        for s in Suite::ALL {
            let r = run_suite(s, &f, 7).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.checks);
        }
    }
}
