//! The identity registry: every theorem, equation, and conjecture check is a
//! named, parameterized test producing a structured [`Report`]. Checks
//! compare independent computation routes exactly and short-circuit on the
//! first failure with a witness.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cfrac;
use crate::families::{self, B7Interp, Route};
use crate::perm::{gen_hat_gamma, gen_prw, gen_sn, gen_tilde_gamma, mfs_orbits, Permutation};
use crate::poly::{self, q_binomial, vars, MultiPoly};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

macro_rules! identity_ids {
    ($(($variant:ident, $name:literal, $cap:expr, $conj:expr)),+ $(,)?) => {
        /// One key per in-scope identity, theorem, or conjecture.
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub enum IdentityId {
            $($variant),+
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name),+
                }
            }

            /// Default size cap (largest `n` the default suite runs).
            pub fn default_cap(self) -> usize {
                match self {
                    $(IdentityId::$variant => $cap),+
                }
            }

            /// Conjecture scans are labeled and never fail the theorem exit
            /// code unless strict mode asks for it.
            pub fn is_conjecture(self) -> bool {
                match self {
                    $(IdentityId::$variant => $conj),+
                }
            }
        }
    };
}

identity_ids![
    (Eq1_1, "eq_1_1", 8, false),
    (Eq1_2, "eq_1_2", 8, false),
    (Thm1_1, "thm_1_1", 7, false),
    (Thm1_2, "thm_1_2", 8, false),
    (Thm1_3, "thm_1_3", 14, false),
    (Thm1_4, "thm_1_4", 12, false),
    (Eq1_7, "eq_1_7", 8, false),
    (Lem2_1, "lem_2_1", 6, false),
    (Eq2_1, "eq_2_1", 12, false),
    (Eq2_3, "eq_2_3", 12, false),
    (Thm2_2, "thm_2_2", 8, false),
    (Cor2_3, "cor_2_3", 8, false),
    (Cor2_4, "cor_2_4", 12, false),
    (Eq2_5, "eq_2_5", 8, false),
    (Eq3_1, "eq_3_1", 8, false),
    (Claim3_2, "claim_3_2", 7, false),
    (MfsOrbitProps, "mfs_orbit_props", 7, false),
    (Rem3_1, "rem_3_1", 7, false),
    (Cor3_2, "cor_3_2", 12, false),
    (Eq4_3, "eq_4_3", 7, false),
    (Eq4_6, "eq_4_6", 12, false),
    (FracBino, "frac_bino", 12, false),
    (Lem4_3, "lem_4_3", 8, false),
    (Thm4_2, "thm_4_2", 9, false),
    (Eq4_8, "eq_4_8", 7, false),
    (Eq4_9, "eq_4_9", 7, false),
    (Thm4_6, "thm_4_6", 7, false),
    (Rem4_7, "rem_4_7_cardinality", 7, false),
    (Conj5_1, "conj_5_1", 7, true),
    (Conj5_2, "conj_5_2", 14, true),
];

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<IdentityId, VerifyError> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// First counterexample of a failed check.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub n: usize,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

/// Structured pass/fail record for one identity check.
#[derive(Clone, Debug)]
pub struct Report {
    pub id: IdentityId,
    pub n_range: (usize, usize),
    pub status: Status,
    pub witness: Option<Witness>,
    pub elapsed: f64,
    pub note: Option<String>,
}

impl Report {
    pub fn is_conjecture(&self) -> bool {
        self.id.is_conjecture()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Report", 7)?;
        s.serialize_field("id", &self.id)?;
        s.serialize_field("n_range", &self.n_range)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("witness", &self.witness)?;
        s.serialize_field("conjecture", &self.id.is_conjecture())?;
        s.serialize_field("note", &self.note)?;
        s.serialize_field("elapsed", &self.elapsed)?;
        s.end()
    }
}

/// Runs one identity check for every `n` up to `n_max` (exact comparisons,
/// first failure wins). `n_max` above the registry cap yields a skipped
/// report.
pub fn run(id: IdentityId, n_max: usize) -> Report {
    run_with_cap(id, n_max, id.default_cap())
}

/// [`run`] with an explicit skip threshold (used when the registry caps are
/// overridden from the environment).
pub fn run_with_cap(id: IdentityId, n_max: usize, cap: usize) -> Report {
    let start = Instant::now();
    if n_max > cap {
        return Report {
            id,
            n_range: (lo(id), n_max),
            status: Status::Skipped,
            witness: None,
            elapsed: start.elapsed().as_secs_f64(),
            note: Some(format!("n_max {n_max} above the registry cap {cap}")),
        };
    }
    if n_max < lo(id) {
        return Report {
            id,
            n_range: (lo(id), n_max),
            status: Status::Skipped,
            witness: None,
            elapsed: start.elapsed().as_secs_f64(),
            note: Some(format!("budget {} below the smallest case {}", n_max, lo(id))),
        };
    }
    let witness = check(id, n_max);
    Report {
        id,
        n_range: (lo(id), n_max),
        status: if witness.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        witness,
        elapsed: start.elapsed().as_secs_f64(),
        note: None,
    }
}

/// Runs the full suite with per-identity caps (`budget` overrides the
/// defaults; a budget of 0 skips the identity). Report order follows the
/// registry regardless of `jobs`.
pub fn run_all(budget: &BTreeMap<IdentityId, usize>, jobs: usize) -> Vec<Report> {
    let tasks: Vec<(IdentityId, usize)> = IdentityId::ALL
        .iter()
        .map(|&id| (id, *budget.get(&id).unwrap_or(&id.default_cap())))
        .collect();
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            tasks.par_iter().map(|&(id, cap)| run(id, cap)).collect()
        })
    } else {
        tasks.into_iter().map(|(id, cap)| run(id, cap)).collect()
    }
}

/// Exit-code semantics: 0 all pass, 1 any theorem check fails, 2 only
/// conjecture scans fail (1 in strict mode).
pub fn exit_code(reports: &[Report], strict_conjectures: bool) -> i32 {
    let theorem_fail = reports
        .iter()
        .any(|r| r.status == Status::Fail && !r.is_conjecture());
    let conjecture_fail = reports
        .iter()
        .any(|r| r.status == Status::Fail && r.is_conjecture());
    if theorem_fail || (strict_conjectures && conjecture_fail) {
        1
    } else if conjecture_fail {
        2
    } else {
        0
    }
}

/// Smallest `n` the check covers.
fn lo(id: IdentityId) -> usize {
    match id {
        IdentityId::Lem2_1 => 0,
        IdentityId::Claim3_2 => 2,
        IdentityId::Thm4_2 => 7,
        _ => 1,
    }
}

fn check(id: IdentityId, hi: usize) -> Option<Witness> {
    match id {
        IdentityId::Eq1_1 => eq_range(1, hi, families::eq_1_1_sides),
        IdentityId::Eq1_2 => eq_range(1, hi, |n| {
            (
                families::a_majexc(n, Route::Enumerate).unwrap(),
                families::a_majexc(n, Route::Interpretation).unwrap(),
            )
        }),
        IdentityId::Thm1_1 => eq_range(1, hi, |n| {
            (
                families::tilde_a(n, Route::Interpretation).unwrap(),
                families::tilde_a(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::Thm1_2 => eq_range(1, hi, |n| {
            (
                families::tilde_gamma_poly(n, Route::Enumerate).unwrap(),
                families::tilde_gamma_poly(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::Thm1_3 => pal_unimodal_range(1, hi, |n| {
            (families::tilde_a_signed(n, Route::Recursion).unwrap(), n)
        }),
        IdentityId::Thm1_4 => eq_range(1, hi, |n| {
            (
                families::tilde_a(n, Route::Recursion).unwrap(),
                families::tilde_a(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::Eq1_7 => eq_range(1, hi, |n| {
            (
                families::a_desinv(n, Route::Enumerate)
                    .unwrap()
                    .eval_at(vars::Q, &BigInt::from(-1)),
                families::desinv_signed_closed(n),
            )
        }),
        IdentityId::Lem2_1 => lem_2_1(hi),
        IdentityId::Eq2_1 => recursion_consistency(
            hi,
            |n| families::a_desinv(n, Route::Enumerate).unwrap(),
            |n| families::a_desinv(n, Route::Recursion).unwrap(),
            families::desinv_signed_closed,
        ),
        IdentityId::Eq2_3 => recursion_consistency(
            hi,
            |n| families::a_majexc(n, Route::Enumerate).unwrap(),
            |n| families::a_majexc(n, Route::Recursion).unwrap(),
            families::majexc_signed_closed,
        ),
        IdentityId::Thm2_2 => eq_range(1, hi, |n| {
            (
                families::a_majexc(n, Route::Enumerate)
                    .unwrap()
                    .eval_at(vars::Q, &BigInt::from(-1)),
                families::majexc_signed_closed(n),
            )
        }),
        IdentityId::Cor2_3 => eq_range(1, hi, |n| {
            (
                families::tilde_a(n, Route::Interpretation)
                    .unwrap()
                    .eval_at(vars::Q, &BigInt::from(-1)),
                families::tilde_signed_closed(n),
            )
        }),
        IdentityId::Cor2_4 => eq_range(1, hi, |n| {
            (
                families::tilde_a_signed(n, Route::Recursion).unwrap(),
                families::tilde_a_signed(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::Eq2_5 => eq_range(1, hi, families::eq_2_5_sides),
        IdentityId::Eq3_1 => eq_3_1(hi),
        IdentityId::Claim3_2 => claim_3_2(hi),
        IdentityId::MfsOrbitProps => mfs_orbit_props(hi),
        IdentityId::Rem3_1 => rem_3_1(hi),
        IdentityId::Cor3_2 => eq_range(1, hi, |n| {
            (
                families::tilde_gamma_poly(n, Route::Recursion).unwrap(),
                families::tilde_gamma_poly(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::Eq4_3 => eq_range(1, hi, |n| {
            (families::q5_enumerate(n), families::q5_cfrac(n))
        }),
        IdentityId::Eq4_6 => eq_range(1, hi, |n| {
            (
                families::a_star(n, Route::CFrac).unwrap(),
                families::a_star(n, Route::Transform).unwrap(),
            )
        }),
        IdentityId::FracBino => {
            let spec = cfrac::preset("CF_tildeA").unwrap();
            let mu = cfrac::moments(&spec, hi);
            eq_range(1, hi, |n| (mu[n].clone(), families::tilde_a_t(n)))
        }
        IdentityId::Lem4_3 => lem_4_3(hi),
        IdentityId::Thm4_2 => thm_4_2(hi),
        IdentityId::Eq4_8 => eq_4_8(hi),
        IdentityId::Eq4_9 => eq_4_9(hi),
        IdentityId::Thm4_6 => thm_4_6(hi),
        IdentityId::Rem4_7 => rem_4_7(hi),
        IdentityId::Conj5_1 => bool_range(1, hi, |n| {
            let poly = families::tilde_a(n, Route::Recursion).unwrap();
            if poly.is_q_log_concave(vars::T) {
                None
            } else {
                Some(Witness {
                    n,
                    lhs: poly,
                    rhs: MultiPoly::zero(),
                })
            }
        }),
        IdentityId::Conj5_2 => bool_range(1, hi, |n| {
            let poly = families::tilde_a_signed(n, Route::Recursion).unwrap();
            if poly.is_log_concave().unwrap() {
                None
            } else {
                Some(Witness {
                    n,
                    lhs: poly,
                    rhs: MultiPoly::zero(),
                })
            }
        }),
    }
}

fn eq_range<F: Fn(usize) -> (MultiPoly, MultiPoly)>(
    lo: usize,
    hi: usize,
    sides: F,
) -> Option<Witness> {
    for n in lo..=hi {
        let (lhs, rhs) = sides(n);
        if lhs != rhs {
            return Some(Witness { n, lhs, rhs });
        }
    }
    None
}

fn bool_range<F: Fn(usize) -> Option<Witness>>(lo: usize, hi: usize, f: F) -> Option<Witness> {
    (lo..=hi).find_map(f)
}

fn pal_unimodal_range<F: Fn(usize) -> (MultiPoly, usize)>(
    lo: usize,
    hi: usize,
    f: F,
) -> Option<Witness> {
    bool_range(lo, hi, |n| {
        let (poly, param) = f(n);
        let ok = poly.is_palindromic(vars::T, param) && poly.is_unimodal().unwrap_or(false);
        (!ok).then(|| Witness {
            n,
            lhs: poly,
            rhs: MultiPoly::zero(),
        })
    })
}

fn int_witness(n: usize, lhs: usize, rhs: usize) -> Witness {
    Witness {
        n,
        lhs: MultiPoly::int(lhs as i64),
        rhs: MultiPoly::int(rhs as i64),
    }
}

/// The q = -1 evaluation table for Gaussian binomials, all parities.
fn lem_2_1(m_max: usize) -> Option<Witness> {
    let minus_one = BigInt::from(-1);
    for m in 0..=m_max {
        let eval = |n: usize, k: usize| q_binomial(n, k).eval_at(vars::Q, &minus_one);
        for i in 0..=m {
            let want = MultiPoly::constant(poly::binomial(m, i));
            for (nn, kk) in [
                (2 * m, 2 * i),
                (2 * m + 1, 2 * i),
                (2 * m + 1, 2 * i + 1),
            ] {
                let got = eval(nn, kk);
                if got != want {
                    return Some(Witness {
                        n: m,
                        lhs: got,
                        rhs: want,
                    });
                }
            }
            if 2 * i + 1 <= 2 * m {
                let got = eval(2 * m, 2 * i + 1);
                if !got.is_zero() {
                    return Some(Witness {
                        n: m,
                        lhs: got,
                        rhs: MultiPoly::zero(),
                    });
                }
            }
        }
    }
    None
}

/// Enumeration agreement up to `S_7`, then closed-form consistency of the
/// recursion route (`q = 1` against the Eulerian polynomial, `q = -1`
/// against the sign-balance closed form).
fn recursion_consistency(
    hi: usize,
    enumerate: impl Fn(usize) -> MultiPoly,
    recurse: impl Fn(usize) -> MultiPoly,
    signed_closed: impl Fn(usize) -> MultiPoly,
) -> Option<Witness> {
    for n in 1..=hi.min(7) {
        let (lhs, rhs) = (enumerate(n), recurse(n));
        if lhs != rhs {
            return Some(Witness { n, lhs, rhs });
        }
    }
    for n in 8..=hi {
        let rec = recurse(n);
        let at_one = rec.eval_at(vars::Q, &BigInt::one());
        let eulerian = families::eulerian(n);
        if at_one != eulerian {
            return Some(Witness {
                n,
                lhs: at_one,
                rhs: eulerian,
            });
        }
        let at_minus_one = rec.eval_at(vars::Q, &BigInt::from(-1));
        let closed = signed_closed(n);
        if at_minus_one != closed {
            return Some(Witness {
                n,
                lhs: at_minus_one,
                rhs: closed,
            });
        }
    }
    None
}

/// `[n k]_q == Σ q^{inv(A,B)}` over ordered set partitions of `[n]`.
fn eq_3_1(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        for k in 0..=n {
            let mut sum = MultiPoly::zero();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let mut inv = 0u16;
                for a in 0..n {
                    if mask & (1 << a) == 0 {
                        continue;
                    }
                    for b in 0..a {
                        if mask & (1 << b) == 0 {
                            inv += 1; // (a+1, b+1) with a+1 in A, b+1 in B, a+1 > b+1
                        }
                    }
                }
                sum.add_term(crate::poly::Monomial::var_pow(vars::Q, inv), BigInt::one());
            }
            let expect = q_binomial(n, k);
            if sum != expect {
                return Some(Witness {
                    n,
                    lhs: sum,
                    rhs: expect,
                });
            }
        }
    }
    None
}

/// The PRW decomposition: with `B̃_{n,k} = Σ t^des q^ai` over permutations of
/// `PRW_{n+1}` whose letter at position `n+1-k` is `n+1`,
/// `B̃_{n,k} == t [n-1 k]_q q^k A_k(t,q) B̃_{n-1-k}` for `1 ≤ k ≤ n-1`.
fn claim_3_2(hi: usize) -> Option<Witness> {
    let tilde_b: Vec<MultiPoly> = (0..hi)
        .map(|m| families::tilde_a(m, Route::Interpretation).unwrap())
        .collect();
    for n in 2..=hi {
        for k in 1..=n - 1 {
            let mut lhs = MultiPoly::zero();
            for p in gen_prw(n + 1) {
                if p.word()[n - k] == (n + 1) as u32 {
                    let m = crate::poly::Monomial::var_pow(vars::T, p.des() as u16)
                        .times(&crate::poly::Monomial::var_pow(vars::Q, p.ai() as u16));
                    lhs.add_term(m, BigInt::one());
                }
            }
            let rhs = MultiPoly::var(vars::T)
                .mul(&q_binomial(n - 1, k))
                .mul(&MultiPoly::var_pow(vars::Q, k as u16))
                .mul(&families::a_majexc(k, Route::Interpretation).unwrap())
                .mul(&tilde_b[n - 1 - k]);
            if lhs != rhs {
                return Some(Witness { n, lhs, rhs });
            }
        }
    }
    None
}

/// Orbit structure of the MFS action on `PRW_{n+1}`: hops stay inside PRW,
/// each orbit has a unique double-descent-free representative with the
/// expected degree bookkeeping, `ai` is constant on orbits, orbit sizes are
/// `2^{da(rep)}`, and the orbit generating function reassembles `Ã_n(t)`.
fn mfs_orbit_props(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let members: Vec<Permutation> = gen_prw(n + 1).collect();
        let total = members.len();
        let orbits = match mfs_orbits(members) {
            Ok(o) => o,
            Err(_) => {
                return Some(int_witness(n, 0, 1)); // representative not unique
            }
        };
        let mut covered = 0usize;
        let mut reassembled = MultiPoly::zero();
        let one_plus_t = MultiPoly::parse("1+t").unwrap();
        for orbit in &orbits {
            covered += orbit.members.len();
            if orbit.members.iter().any(|m| !crate::perm::is_prw(m)) {
                return Some(int_witness(n, 0, 1));
            }
            if orbit.shared_ai.is_none() {
                return Some(int_witness(n, 0, 1));
            }
            let rep = &orbit.representative;
            let (peak, valley, da) = (rep.peak(), rep.valley(), rep.da());
            if rep.des() != peak || valley != peak + 1 || da != n + 1 - peak - valley {
                return Some(int_witness(n, rep.des(), peak));
            }
            if orbit.members.len() != 1 << da {
                return Some(int_witness(n, orbit.members.len(), 1 << da));
            }
            reassembled = reassembled.add(
                &MultiPoly::var_pow(vars::T, rep.des() as u16).mul(&one_plus_t.pow(da as u32)),
            );
        }
        if covered != total {
            return Some(int_witness(n, covered, total));
        }
        let expect = families::tilde_a_t(n);
        if reassembled != expect {
            return Some(Witness {
                n,
                lhs: reassembled,
                rhs: expect,
            });
        }
    }
    None
}

/// The dual representative count: permutations of `PRW_{n+1}` with no double
/// ascents and `asc = k` are counted by the γ̃-coefficient of `Ã_n(t)`.
fn rem_3_1(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let gammas = families::tilde_a_t(n)
            .gamma_expand(vars::T, n)
            .expect("tilde-A_n(t) is palindromic");
        let mut counts = vec![0usize; gammas.len()];
        for p in gen_prw(n + 1) {
            if p.da() == 0 {
                let k = p.asc();
                if k >= counts.len() {
                    return Some(int_witness(n, k, counts.len()));
                }
                counts[k] += 1;
            }
        }
        for (k, gamma) in gammas.iter().enumerate() {
            let expect = MultiPoly::int(counts[k] as i64);
            if *gamma != expect {
                return Some(Witness {
                    n: k,
                    lhs: expect,
                    rhs: gamma.clone(),
                });
            }
        }
    }
    None
}

/// Jacobi–Rogers closed sum equals the Motzkin-path moments for every preset.
fn lem_4_3(hi: usize) -> Option<Witness> {
    for name in cfrac::PRESET_NAMES {
        let spec = cfrac::preset(name).unwrap();
        let mu = cfrac::moments(&spec, hi);
        for n in 1..=hi {
            let jr = cfrac::jacobi_rogers(&spec, n);
            if jr != mu[n] {
                return Some(Witness {
                    n,
                    lhs: jr,
                    rhs: mu[n].clone(),
                });
            }
        }
    }
    None
}

/// 3-q-log-convexity of the univariate binomial-Eulerian sequences.
fn thm_4_2(len: usize) -> Option<Witness> {
    let tilde: Vec<MultiPoly> = (1..=len)
        .map(|n| families::tilde_a_t(n).rename_var(vars::T, vars::Q))
        .collect();
    let astar: Vec<MultiPoly> = (1..=len)
        .map(|n| {
            families::a_star(n, Route::Transform)
                .unwrap()
                .rename_var(vars::T, vars::Q)
        })
        .collect();
    for (which, seq) in [(0usize, &tilde), (1, &astar)] {
        match poly::k_q_log_convex(seq, 3) {
            Ok(true) => {}
            _ => {
                return Some(Witness {
                    n: which,
                    lhs: seq.last().unwrap().clone(),
                    rhs: MultiPoly::zero(),
                });
            }
        }
    }
    None
}

/// The Corteel interpretation and the pattern interpretation both equal the
/// continued-fraction definition of `Â_n(t,p,q)`.
fn eq_4_8(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let cf = families::hat_a(n, Route::CFrac).unwrap();
        let corteel = families::hat_a(n, Route::Enumerate).unwrap();
        if corteel != cf {
            return Some(Witness {
                n,
                lhs: corteel,
                rhs: cf,
            });
        }
        let pattern = families::hat_a(n, Route::Interpretation).unwrap();
        if pattern != cf {
            return Some(Witness {
                n,
                lhs: pattern,
                rhs: cf,
            });
        }
    }
    None
}

/// Cycle and linear interpretations of `B_n` agree with each other, with the
/// continued fraction, and specialize to `Â_n`.
fn eq_4_9(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let cycle = families::b7(n, B7Interp::Cycle);
        let linear = families::b7(n, B7Interp::Linear);
        if cycle != linear {
            return Some(Witness {
                n,
                lhs: cycle,
                rhs: linear,
            });
        }
        let cf = families::b7_cfrac(n);
        if cycle != cf {
            return Some(Witness {
                n,
                lhs: cycle,
                rhs: cf,
            });
        }
        let hat = families::b7_to_hat_a(&cycle);
        let hat_cf = families::hat_a(n, Route::CFrac).unwrap();
        if hat != hat_cf {
            return Some(Witness {
                n,
                lhs: hat,
                rhs: hat_cf,
            });
        }
    }
    None
}

/// γ̂-coefficients three ways: expansion of `Â_n`, the `Γ̂` (nest, cros)
/// enumeration, the `Γ̃` (2-31, 31-2) enumeration; and the `P_n` routes.
fn thm_4_6(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let gammas = families::hat_a(n, Route::CFrac)
            .unwrap()
            .gamma_expand(vars::T, n)
            .expect("hat-A_n is palindromic");
        for (k, gamma) in gammas.iter().enumerate() {
            let mut hat_route = MultiPoly::zero();
            for sigma in gen_hat_gamma(n, k) {
                let m = crate::poly::Monomial::var_pow(vars::P, sigma.nest().unwrap() as u16)
                    .times(&crate::poly::Monomial::var_pow(
                        vars::Q,
                        (sigma.cros().unwrap() + k) as u16,
                    ));
                hat_route.add_term(m, BigInt::one());
            }
            if hat_route != *gamma {
                return Some(Witness {
                    n,
                    lhs: hat_route,
                    rhs: gamma.clone(),
                });
            }
            let mut tilde_route = MultiPoly::zero();
            for sigma in gen_tilde_gamma(n, k) {
                let m = crate::poly::Monomial::var_pow(vars::P, sigma.p231() as u16)
                    .times(&crate::poly::Monomial::var_pow(
                        vars::Q,
                        (sigma.p312() + k) as u16,
                    ));
                tilde_route.add_term(m, BigInt::one());
            }
            if tilde_route != *gamma {
                return Some(Witness {
                    n,
                    lhs: tilde_route,
                    rhs: gamma.clone(),
                });
            }
        }
        // P_n: continued fraction vs specialization, and its y-coefficients
        // are the γ̂-list
        let p_cf = families::p3_cfrac(n);
        let p_tr = families::p3_transform(n);
        if p_cf != p_tr {
            return Some(Witness {
                n,
                lhs: p_cf,
                rhs: p_tr,
            });
        }
        let view = p_cf.uni_view(vars::Y);
        for (k, gamma) in gammas.iter().enumerate() {
            let got = view.coeff(k);
            if got != *gamma {
                return Some(Witness {
                    n,
                    lhs: got,
                    rhs: gamma.clone(),
                });
            }
        }
        if view.coeffs.len() > gammas.len() {
            return Some(int_witness(n, view.coeffs.len(), gammas.len()));
        }
    }
    None
}

/// Foata's first fundamental transformation is injective, and `Γ̂_{n,k}` and
/// `Γ̃_{n,k}` are equinumerous.
fn rem_4_7(hi: usize) -> Option<Witness> {
    for n in 1..=hi {
        let mut images = std::collections::BTreeSet::new();
        let mut count = 0usize;
        for p in gen_sn(n) {
            images.insert(p.foata_first().unwrap());
            count += 1;
        }
        if images.len() != count {
            return Some(int_witness(n, images.len(), count));
        }
        for k in 0..=n / 2 {
            let hat = gen_hat_gamma(n, k).count();
            let tilde = gen_tilde_gamma(n, k).count();
            if hat != tilde {
                return Some(int_witness(n, hat, tilde));
            }
        }
    }
    None
}
