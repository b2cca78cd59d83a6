//! The polynomial families, each constructible by several independent routes
//! for cross-verification:
//!
//! - `A`          Eulerian polynomials `A_n(t)`
//! - `A_majexc`   `A_n(t,q) = Σ t^exc q^{maj-exc}` (equivalently `Σ t^des q^ai`)
//! - `A_desinv`   `A_n^{des,inv}(t,q) = Σ t^des q^inv`
//! - `TildeA`     q-binomial-Eulerian `Ã_n(t,q)`
//! - `TildeA_signed` the signed specialization `Ã_n(t,-1)`
//! - `AStar`      `A*_n(t) = 1 + t Σ C(n,k)(1+t)^k A_k(t) = Ã_{2n}(t,-1)`
//! - `HatA`       the (p,q)-analog `Â_n(t,p,q)`
//! - `Q5`         cycle-statistic polynomial `Q_n(a,b,c,d,α)` (α stored as `e`)
//! - `B7`         the seven-variable crossing/nesting polynomial `B_n`
//! - `P3`         `P_n(p,q,y) = B_n(p,q,q,1,0,y,1)`
//! - `GammaPoly` / `TildeGammaPoly`  the γ-polynomials `Γ_n(y,q)`, `Γ̃_n(y,q)`
//!
//! Conventions: `A_0(t) = 1` everywhere except inside the Corollary-style
//! signed sums, which use `A_0(t) = 0`; `Ã_0 = A*_0 = Â_0 = Q_0 = B_0 = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::cfrac;
use crate::perm::{gen_prw, gen_sn, Permutation};
use crate::poly::{binomial, q_binomial, vars, Monomial, MultiPoly, Var};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown route `{0}`")]
    UnknownRouteName(String),
    #[error("route {route} is not implemented for family {family}")]
    UnknownRoute { family: FamilyId, route: Route },
    #[error("family {family} route {route} requires n >= {min}, got {n}")]
    BelowMin {
        family: FamilyId,
        route: Route,
        min: usize,
        n: usize,
    },
}

/// Tags for the polynomial families of the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum FamilyId {
    A,
    AMajExc,
    ADesInv,
    TildeA,
    TildeASigned,
    AStar,
    HatA,
    Q5,
    B7,
    P3,
    GammaPoly,
    TildeGammaPoly,
}

impl FamilyId {
    pub const ALL: [FamilyId; 12] = [
        FamilyId::A,
        FamilyId::AMajExc,
        FamilyId::ADesInv,
        FamilyId::TildeA,
        FamilyId::TildeASigned,
        FamilyId::AStar,
        FamilyId::HatA,
        FamilyId::Q5,
        FamilyId::B7,
        FamilyId::P3,
        FamilyId::GammaPoly,
        FamilyId::TildeGammaPoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::A => "A",
            FamilyId::AMajExc => "A_majexc",
            FamilyId::ADesInv => "A_desinv",
            FamilyId::TildeA => "TildeA",
            FamilyId::TildeASigned => "TildeA_signed",
            FamilyId::AStar => "AStar",
            FamilyId::HatA => "HatA",
            FamilyId::Q5 => "Q5",
            FamilyId::B7 => "B7",
            FamilyId::P3 => "P3",
            FamilyId::GammaPoly => "GammaPoly",
            FamilyId::TildeGammaPoly => "TildeGammaPoly",
        }
    }

    /// Variables the family's polynomials may use.
    pub fn variable_support(self) -> &'static [&'static str] {
        match self {
            FamilyId::A | FamilyId::TildeASigned | FamilyId::AStar => &["t"],
            FamilyId::AMajExc | FamilyId::ADesInv | FamilyId::TildeA => &["t", "q"],
            FamilyId::HatA => &["t", "p", "q"],
            FamilyId::Q5 => &["a", "b", "c", "d", "e"],
            FamilyId::B7 => &["p", "q", "t", "u", "v", "w", "y"],
            FamilyId::P3 => &["p", "q", "y"],
            FamilyId::GammaPoly | FamilyId::TildeGammaPoly => &["y", "q"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<FamilyId, FamilyError> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// Independent computation routes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Route {
    Enumerate,
    Recursion,
    Transform,
    CFrac,
    Interpretation,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Enumerate => "enumerate",
            Route::Recursion => "recursion",
            Route::Transform => "transform",
            Route::CFrac => "cfrac",
            Route::Interpretation => "interpretation",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Route, FamilyError> {
        [
            Route::Enumerate,
            Route::Recursion,
            Route::Transform,
            Route::CFrac,
            Route::Interpretation,
        ]
        .iter()
        .copied()
        .find(|r| r.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| FamilyError::UnknownRouteName(s.to_string()))
    }
}

/// One implemented (family, route) pair with its default size cap.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RegistryEntry {
    pub family: FamilyId,
    pub route: Route,
    pub min_n: usize,
    pub max_n: usize,
}

/// Every implemented (family, route) pair. Enumeration routes are capped at
/// desk scale; recursion/transform/continued-fraction routes run higher.
pub fn registry() -> Vec<RegistryEntry> {
    use FamilyId::*;
    use Route::*;
    let entry = |family, route, min_n, max_n| RegistryEntry {
        family,
        route,
        min_n,
        max_n,
    };
    vec![
        entry(A, Recursion, 0, 16),
        entry(A, Enumerate, 0, 10),
        entry(AMajExc, Recursion, 0, 16),
        entry(AMajExc, Enumerate, 0, 9),
        entry(AMajExc, Interpretation, 0, 9),
        entry(ADesInv, Recursion, 0, 16),
        entry(ADesInv, Enumerate, 0, 9),
        entry(TildeA, Recursion, 0, 16),
        entry(TildeA, Transform, 0, 16),
        entry(TildeA, Interpretation, 0, 8),
        entry(TildeASigned, Recursion, 0, 16),
        entry(TildeASigned, Transform, 0, 16),
        entry(AStar, Transform, 0, 16),
        entry(AStar, CFrac, 0, 16),
        entry(AStar, Recursion, 0, 8),
        entry(HatA, CFrac, 0, 12),
        entry(HatA, Enumerate, 0, 9),
        entry(HatA, Interpretation, 0, 9),
        entry(Q5, Enumerate, 0, 8),
        entry(Q5, CFrac, 0, 12),
        entry(B7, Enumerate, 0, 8),
        entry(B7, Interpretation, 0, 8),
        entry(B7, CFrac, 0, 12),
        entry(P3, Transform, 0, 8),
        entry(P3, CFrac, 0, 12),
        entry(GammaPoly, Transform, 0, 12),
        entry(GammaPoly, Enumerate, 2, 9),
        entry(TildeGammaPoly, Transform, 0, 12),
        entry(TildeGammaPoly, Enumerate, 1, 9),
        entry(TildeGammaPoly, Recursion, 0, 16),
    ]
}

/// Dispatches a (family, route, n) request.
pub fn family(id: FamilyId, route: Route, n: usize) -> Result<MultiPoly, FamilyError> {
    let implemented = registry()
        .into_iter()
        .find(|e| e.family == id && e.route == route)
        .ok_or(FamilyError::UnknownRoute { family: id, route })?;
    if n < implemented.min_n {
        return Err(FamilyError::BelowMin {
            family: id,
            route,
            min: implemented.min_n,
            n,
        });
    }
    Ok(match (id, route) {
        (FamilyId::A, Route::Recursion) => eulerian(n),
        (FamilyId::A, Route::Enumerate) => eulerian_by_des(n),
        (FamilyId::AMajExc, _) => a_majexc(n, route)?,
        (FamilyId::ADesInv, _) => a_desinv(n, route)?,
        (FamilyId::TildeA, _) => tilde_a(n, route)?,
        (FamilyId::TildeASigned, _) => tilde_a_signed(n, route)?,
        (FamilyId::AStar, _) => a_star(n, route)?,
        (FamilyId::HatA, _) => hat_a(n, route)?,
        (FamilyId::Q5, Route::Enumerate) => q5_enumerate(n),
        (FamilyId::Q5, Route::CFrac) => q5_cfrac(n),
        (FamilyId::B7, Route::Enumerate) => b7(n, B7Interp::Cycle),
        (FamilyId::B7, Route::Interpretation) => b7(n, B7Interp::Linear),
        (FamilyId::B7, Route::CFrac) => b7_cfrac(n),
        (FamilyId::P3, Route::Transform) => p3_transform(n),
        (FamilyId::P3, Route::CFrac) => p3_cfrac(n),
        (FamilyId::GammaPoly, _) => gamma_poly(n, route)?,
        (FamilyId::TildeGammaPoly, _) => tilde_gamma_poly(n, route)?,
        _ => unreachable!("registry and dispatcher disagree"),
    })
}

fn one_plus_t() -> MultiPoly {
    MultiPoly::one().add(&MultiPoly::var(vars::T))
}

fn t_pow(k: usize) -> MultiPoly {
    MultiPoly::var_pow(vars::T, k as u16)
}

fn weight2(v1: Var, e1: usize, v2: Var, e2: usize) -> MultiPoly {
    MultiPoly::monomial(
        Monomial::var_pow(v1, e1 as u16).times(&Monomial::var_pow(v2, e2 as u16)),
        BigInt::one(),
    )
}

fn sum_over_sn<F: Fn(&Permutation) -> MultiPoly>(n: usize, weight: F) -> MultiPoly {
    // partitioned on the first letter; merged by commutative addition, so the
    // total is independent of the partitioning
    let mut blocks: Vec<MultiPoly> = Vec::new();
    if n == 0 {
        return MultiPoly::one();
    }
    for first in 1..=n as u32 {
        let mut block = MultiPoly::zero();
        let rest: Vec<u32> = (1..=n as u32).filter(|&x| x != first).collect();
        for tail in crate::perm::gen_sn_on(&rest) {
            let mut word = Vec::with_capacity(n);
            word.push(first);
            word.extend_from_slice(tail.word());
            let p = Permutation::new(word).expect("distinct by construction");
            block = block.add(&weight(&p));
        }
        blocks.push(block);
    }
    blocks
        .into_iter()
        .fold(MultiPoly::zero(), |acc, b| acc.add(&b))
}

// ---------------------------------------------------------------------------
// Eulerian polynomials A_n(t)
// ---------------------------------------------------------------------------

/// `A_0..A_nmax` through the quadratic recursion
/// `A_{n+1} = (1+t)A_n + t Σ_{k=1}^{n-1} C(n,k) A_{n-k} A_k` (valid for
/// `n ≥ 1`; bases `A_0 = A_1 = 1`).
pub fn eulerian_upto(n_max: usize) -> Vec<MultiPoly> {
    let mut a = vec![MultiPoly::one()];
    if n_max >= 1 {
        a.push(MultiPoly::one());
    }
    for n in 1..n_max {
        let mut next = one_plus_t().mul(&a[n]);
        let mut tail = MultiPoly::zero();
        for k in 1..n {
            let c = MultiPoly::constant(binomial(n, k));
            tail = tail.add(&c.mul(&a[n - k]).mul(&a[k]));
        }
        next = next.add(&MultiPoly::var(vars::T).mul(&tail));
        a.push(next);
    }
    a
}

/// The Eulerian polynomial `A_n(t)` (recursion route). `A_0 = 1`.
pub fn eulerian(n: usize) -> MultiPoly {
    eulerian_upto(n).pop().unwrap()
}

pub fn eulerian_by_des(n: usize) -> MultiPoly {
    sum_over_sn(n, |p| t_pow(p.des()))
}

pub fn eulerian_by_exc(n: usize) -> MultiPoly {
    sum_over_sn(n, |p| t_pow(p.exc().unwrap()))
}

// ---------------------------------------------------------------------------
// (maj, exc)-Eulerian polynomials A_n(t,q)
// ---------------------------------------------------------------------------

/// `A_0..A_nmax(t,q)` through the quadratic recursion
/// `A_{n+1} = (1+t)A_n + t Σ_{k=1}^{n-1} [n k]_q q^k A_k A_{n-k}` (valid for
/// `n ≥ 1`; bases `A_0 = A_1 = 1`).
pub fn a_majexc_upto(n_max: usize) -> Vec<MultiPoly> {
    let mut a = vec![MultiPoly::one()];
    if n_max >= 1 {
        a.push(MultiPoly::one());
    }
    for n in 1..n_max {
        let mut next = one_plus_t().mul(&a[n]);
        let mut tail = MultiPoly::zero();
        for k in 1..n {
            let coeff = q_binomial(n, k).mul(&MultiPoly::var_pow(vars::Q, k as u16));
            tail = tail.add(&coeff.mul(&a[k]).mul(&a[n - k]));
        }
        next = next.add(&MultiPoly::var(vars::T).mul(&tail));
        a.push(next);
    }
    a
}

pub fn a_majexc(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Recursion => Ok(a_majexc_upto(n).pop().unwrap()),
        Route::Enumerate => Ok(sum_over_sn(n, |p| {
            weight2(vars::T, p.exc().unwrap(), vars::Q, p.maj() - p.exc().unwrap())
        })),
        Route::Interpretation => Ok(sum_over_sn(n, |p| weight2(vars::T, p.des(), vars::Q, p.ai()))),
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::AMajExc,
            route,
        }),
    }
}

// ---------------------------------------------------------------------------
// (des, inv)-Eulerian polynomials A_n^{des,inv}(t,q)
// ---------------------------------------------------------------------------

/// `A_0..A_nmax^{des,inv}` through Chow's recursion
/// `A_{n+1} = (1+tq^n)A_n + t Σ_{k=1}^{n-1} [n k]_q q^k A_{n-k} A_k` (valid
/// for `n ≥ 1`; bases `A_0 = A_1 = 1`).
pub fn a_desinv_upto(n_max: usize) -> Vec<MultiPoly> {
    let mut a = vec![MultiPoly::one()];
    if n_max >= 1 {
        a.push(MultiPoly::one());
    }
    for n in 1..n_max {
        let head = MultiPoly::one().add(&weight2(vars::T, 1, vars::Q, n));
        let mut next = head.mul(&a[n]);
        let mut tail = MultiPoly::zero();
        for k in 1..n {
            let coeff = q_binomial(n, k).mul(&MultiPoly::var_pow(vars::Q, k as u16));
            tail = tail.add(&coeff.mul(&a[n - k]).mul(&a[k]));
        }
        next = next.add(&MultiPoly::var(vars::T).mul(&tail));
        a.push(next);
    }
    a
}

pub fn a_desinv(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Recursion => Ok(a_desinv_upto(n).pop().unwrap()),
        Route::Enumerate => Ok(sum_over_sn(n, |p| weight2(vars::T, p.des(), vars::Q, p.inv()))),
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::ADesInv,
            route,
        }),
    }
}

// ---------------------------------------------------------------------------
// q-binomial-Eulerian polynomials Ã_n(t,q)
// ---------------------------------------------------------------------------

/// `Ã_0..Ã_nmax(t,q)` through the quadratic recursion
/// `Ã_{n+1} = (1+t)Ã_n + t Σ_{k=1}^n [n k]_q q^k A_k(t,q) Ã_{n-k}`.
pub fn tilde_a_upto(n_max: usize) -> Vec<MultiPoly> {
    let a = a_majexc_upto(n_max.saturating_sub(1).max(0));
    let mut tilde = vec![MultiPoly::one()];
    for n in 0..n_max {
        let mut next = one_plus_t().mul(&tilde[n]);
        let mut tail = MultiPoly::zero();
        for k in 1..=n {
            let coeff = q_binomial(n, k).mul(&MultiPoly::var_pow(vars::Q, k as u16));
            tail = tail.add(&coeff.mul(&a[k]).mul(&tilde[n - k]));
        }
        next = next.add(&MultiPoly::var(vars::T).mul(&tail));
        tilde.push(next);
    }
    tilde
}

pub fn tilde_a(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Recursion => Ok(tilde_a_upto(n).pop().unwrap()),
        Route::Transform => {
            // Ã_n = 1 + t Σ_{m=1}^n [n m]_q A_m(t,q)
            let a = a_majexc_upto(n);
            let mut sum = MultiPoly::zero();
            for m in 1..=n {
                sum = sum.add(&q_binomial(n, m).mul(&a[m]));
            }
            Ok(MultiPoly::one().add(&MultiPoly::var(vars::T).mul(&sum)))
        }
        Route::Interpretation => Ok(prw_des_ai(n)),
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::TildeA,
            route,
        }),
    }
}

/// The univariate binomial-Eulerian polynomial
/// `Ã_n(t) = 1 + t Σ_{m=1}^n C(n,m) A_m(t)`.
pub fn tilde_a_t(n: usize) -> MultiPoly {
    let a = eulerian_upto(n);
    let mut sum = MultiPoly::zero();
    for m in 1..=n {
        sum = sum.add(&MultiPoly::constant(binomial(n, m)).mul(&a[m]));
    }
    MultiPoly::one().add(&MultiPoly::var(vars::T).mul(&sum))
}

/// `Σ_{π ∈ PRW_{n+1}} t^des q^ai`.
fn prw_des_ai(n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for p in gen_prw(n + 1) {
        out = out.add(&weight2(vars::T, p.des(), vars::Q, p.ai()));
    }
    out
}

// ---------------------------------------------------------------------------
// Signed polynomials
// ---------------------------------------------------------------------------

/// Sign-balance closed form for `A_n^{des,inv}(t,-1)`:
/// `(1-t)^m A_m(t)` for `n = 2m`, `(1-t)^m A_{m+1}(t)` for `n = 2m+1`.
pub fn desinv_signed_closed(n: usize) -> MultiPoly {
    let m = n / 2;
    let base = MultiPoly::parse("1-t").unwrap().pow(m as u32);
    let a = eulerian_upto(m + 1);
    if n % 2 == 0 {
        base.mul(&a[m])
    } else {
        base.mul(&a[m + 1])
    }
}

/// Closed form of the major-balance identity for `A_n(t,-1)`:
/// `(1+t)^m A_m(t)` for `n = 2m`, `(1+t)^m A_{m+1}(t)` for `n = 2m+1`.
pub fn majexc_signed_closed(n: usize) -> MultiPoly {
    let m = n / 2;
    let base = one_plus_t().pow(m as u32);
    let a = eulerian_upto(m + 1);
    if n % 2 == 0 {
        base.mul(&a[m])
    } else {
        base.mul(&a[m + 1])
    }
}

/// Closed form for `Ã_n(t,-1)` (with the local convention `A_0(t) = 0`):
/// `1 + t Σ_{k=1}^m C(m,k)(1+t)^k A_k` for `n = 2m`,
/// `1 + t Σ_{k=0}^m C(m,k)(1+t)^k (A_k + A_{k+1})` for `n = 2m+1`.
pub fn tilde_signed_closed(n: usize) -> MultiPoly {
    let m = n / 2;
    let a = eulerian_upto(m + 1);
    let a_conv = |k: usize| {
        if k == 0 {
            MultiPoly::zero()
        } else {
            a[k].clone()
        }
    };
    let mut sum = MultiPoly::zero();
    if n % 2 == 0 {
        for k in 1..=m {
            let c = MultiPoly::constant(binomial(m, k));
            sum = sum.add(&c.mul(&one_plus_t().pow(k as u32)).mul(&a[k]));
        }
    } else {
        for k in 0..=m {
            let c = MultiPoly::constant(binomial(m, k));
            let pair = a_conv(k).add(&a[k + 1]);
            sum = sum.add(&c.mul(&one_plus_t().pow(k as u32)).mul(&pair));
        }
    }
    MultiPoly::one().add(&MultiPoly::var(vars::T).mul(&sum))
}

/// `Ã_0..Ã_nmax(t,-1)` through the pair of signed recursions
/// (odd: `Ã_{2n+1} = (1+t)Ã_{2n} + t Σ C(n,k) A_{2k}(t,-1) Ã_{2n-2k}`;
/// even: the same with the corrective odd-index sum subtracted), with the
/// signed `(maj,exc)` values supplied by the major-balance closed form.
pub fn tilde_signed_upto(n_max: usize) -> Vec<MultiPoly> {
    let a_signed = |j: usize| majexc_signed_closed(j);
    let mut tilde = vec![MultiPoly::one()];
    for m in 1..=n_max {
        let next = if m % 2 == 1 {
            let n = (m - 1) / 2;
            let mut acc = one_plus_t().mul(&tilde[2 * n]);
            let mut tail = MultiPoly::zero();
            for k in 1..=n {
                let c = MultiPoly::constant(binomial(n, k));
                tail = tail.add(&c.mul(&a_signed(2 * k)).mul(&tilde[2 * n - 2 * k]));
            }
            acc = acc.add(&MultiPoly::var(vars::T).mul(&tail));
            acc
        } else {
            let n = (m - 2) / 2;
            let mut acc = one_plus_t().mul(&tilde[2 * n + 1]);
            let mut plus = MultiPoly::zero();
            for k in 1..=n {
                let c = MultiPoly::constant(binomial(n, k));
                plus = plus.add(&c.mul(&a_signed(2 * k)).mul(&tilde[2 * n + 1 - 2 * k]));
            }
            let mut minus = MultiPoly::zero();
            for k in 0..=n {
                let c = MultiPoly::constant(binomial(n, k));
                minus = minus.add(&c.mul(&a_signed(2 * k + 1)).mul(&tilde[2 * n - 2 * k]));
            }
            acc = acc.add(&MultiPoly::var(vars::T).mul(&plus.sub(&minus)));
            acc
        };
        tilde.push(next);
    }
    tilde
}

pub fn tilde_a_signed(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Recursion => Ok(tilde_signed_upto(n).pop().unwrap()),
        Route::Transform => {
            Ok(tilde_a(n, Route::Recursion)?.eval_at(vars::Q, &BigInt::from(-1)))
        }
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::TildeASigned,
            route,
        }),
    }
}

/// q → -1 specialization of a bivariate family.
pub fn sign_balance(id: FamilyId, n: usize) -> Result<MultiPoly, FamilyError> {
    let poly = match id {
        FamilyId::ADesInv => a_desinv(n, Route::Recursion)?,
        FamilyId::AMajExc => a_majexc(n, Route::Recursion)?,
        FamilyId::TildeA => tilde_a(n, Route::Recursion)?,
        _ => {
            return Err(FamilyError::UnknownRoute {
                family: id,
                route: Route::Transform,
            })
        }
    };
    Ok(poly.eval_at(vars::Q, &BigInt::from(-1)))
}

// ---------------------------------------------------------------------------
// A*_n(t)
// ---------------------------------------------------------------------------

pub fn a_star(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Transform => {
            // A*_n = 1 + t Σ_{k=1}^n C(n,k)(1+t)^k A_k(t)
            let a = eulerian_upto(n);
            let mut sum = MultiPoly::zero();
            for k in 1..=n {
                let c = MultiPoly::constant(binomial(n, k));
                sum = sum.add(&c.mul(&one_plus_t().pow(k as u32)).mul(&a[k]));
            }
            Ok(MultiPoly::one().add(&MultiPoly::var(vars::T).mul(&sum)))
        }
        Route::CFrac => {
            let spec = cfrac::preset("CF_Astar").expect("built-in preset");
            Ok(cfrac::moments(&spec, n).pop().unwrap())
        }
        // signed binomial-Eulerian route: A*_n = Ã_{2n}(t,-1)
        Route::Recursion => Ok(tilde_signed_upto(2 * n).pop().unwrap()),
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::AStar,
            route,
        }),
    }
}

// ---------------------------------------------------------------------------
// Â_n(t,p,q)
// ---------------------------------------------------------------------------

pub fn hat_a(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::CFrac => {
            let spec = cfrac::preset("CF_hatA").expect("built-in preset");
            Ok(cfrac::moments(&spec, n).pop().unwrap())
        }
        Route::Enumerate => {
            // Corteel: Σ p^nest q^{cros+drop} (1+t)^fix t^exc
            let pow_1pt: Vec<MultiPoly> = (0..=n).map(|k| one_plus_t().pow(k as u32)).collect();
            Ok(sum_over_sn(n, |p| {
                let m = Monomial::var_pow(vars::P, p.nest().unwrap() as u16)
                    .times(&Monomial::var_pow(
                        vars::Q,
                        (p.cros().unwrap() + p.drops().unwrap()) as u16,
                    ))
                    .times(&Monomial::var_pow(vars::T, p.exc().unwrap() as u16));
                MultiPoly::monomial(m, BigInt::one()).mul(&pow_1pt[p.fix().unwrap()])
            }))
        }
        Route::Interpretation => {
            // pattern form: Σ p^(2-31) q^{(31-2)+des} (1+t)^fmax t^des
            let pow_1pt: Vec<MultiPoly> = (0..=n).map(|k| one_plus_t().pow(k as u32)).collect();
            Ok(sum_over_sn(n, |p| {
                let m = Monomial::var_pow(vars::P, p.p231() as u16)
                    .times(&Monomial::var_pow(vars::Q, (p.p312() + p.des()) as u16))
                    .times(&Monomial::var_pow(vars::T, p.des() as u16));
                MultiPoly::monomial(m, BigInt::one()).mul(&pow_1pt[p.fmax()])
            }))
        }
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::HatA,
            route,
        }),
    }
}

// ---------------------------------------------------------------------------
// Q_n(a,b,c,d,α) with α stored as `e`
// ---------------------------------------------------------------------------

pub fn q5_enumerate(n: usize) -> MultiPoly {
    sum_over_sn(n, |p| {
        let (cpeak, cvalley, cdrise, cdfall, fix) = p.cycle_stats().unwrap();
        let m = Monomial::var_pow(vars::A, cvalley as u16)
            .times(&Monomial::var_pow(vars::B, cpeak as u16))
            .times(&Monomial::var_pow(vars::C, cdfall as u16))
            .times(&Monomial::var_pow(vars::D, cdrise as u16))
            .times(&Monomial::var_pow(vars::E, fix as u16));
        MultiPoly::monomial(m, BigInt::one())
    })
}

pub fn q5_cfrac(n: usize) -> MultiPoly {
    let spec = cfrac::preset("CF_Q").expect("built-in preset");
    cfrac::moments(&spec, n).pop().unwrap()
}

// ---------------------------------------------------------------------------
// B_n(p,q,t,u,v,w,y)
// ---------------------------------------------------------------------------

/// The two displayed interpretations of `B_n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum B7Interp {
    /// `p^nest q^cros t^drop u^cdrise v^cdfall w^cvalley y^fix`
    Cycle,
    /// `p^(2-31) q^(31-2) t^des u^{da*-fmax} v^dd w^{valley*} y^fmax`
    Linear,
}

impl FromStr for B7Interp {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<B7Interp, FamilyError> {
        match s.to_ascii_lowercase().as_str() {
            "cycle" => Ok(B7Interp::Cycle),
            "linear" => Ok(B7Interp::Linear),
            other => Err(FamilyError::UnknownRouteName(other.to_string())),
        }
    }
}

pub fn b7(n: usize, interp: B7Interp) -> MultiPoly {
    sum_over_sn(n, |p| {
        let m = match interp {
            B7Interp::Cycle => {
                let (_, cvalley, cdrise, cdfall, fix) = p.cycle_stats().unwrap();
                Monomial::var_pow(vars::P, p.nest().unwrap() as u16)
                    .times(&Monomial::var_pow(vars::Q, p.cros().unwrap() as u16))
                    .times(&Monomial::var_pow(vars::T, p.drops().unwrap() as u16))
                    .times(&Monomial::var_pow(vars::U, cdrise as u16))
                    .times(&Monomial::var_pow(vars::V, cdfall as u16))
                    .times(&Monomial::var_pow(vars::W, cvalley as u16))
                    .times(&Monomial::var_pow(vars::Y, fix as u16))
            }
            B7Interp::Linear => Monomial::var_pow(vars::P, p.p231() as u16)
                .times(&Monomial::var_pow(vars::Q, p.p312() as u16))
                .times(&Monomial::var_pow(vars::T, p.des() as u16))
                .times(&Monomial::var_pow(vars::U, (p.da_star() - p.fmax()) as u16))
                .times(&Monomial::var_pow(vars::V, p.dd() as u16))
                .times(&Monomial::var_pow(vars::W, p.valley_star() as u16))
                .times(&Monomial::var_pow(vars::Y, p.fmax() as u16)),
        };
        MultiPoly::monomial(m, BigInt::one())
    })
}

pub fn b7_cfrac(n: usize) -> MultiPoly {
    let spec = cfrac::preset("CF_B").expect("built-in preset");
    cfrac::moments(&spec, n).pop().unwrap()
}

/// `Â_n(t,p,q) = B_n(p,q,q,t,1,t,1+t)` (simultaneous substitution).
pub fn b7_to_hat_a(b: &MultiPoly) -> MultiPoly {
    b.subst_all(&[
        (vars::T, MultiPoly::var(vars::Q)),
        (vars::U, MultiPoly::var(vars::T)),
        (vars::V, MultiPoly::one()),
        (vars::W, MultiPoly::var(vars::T)),
        (vars::Y, one_plus_t()),
    ])
}

/// `P_n(p,q,y) = B_n(p,q,q,1,0,y,1)` (simultaneous substitution).
pub fn b7_to_p3(b: &MultiPoly) -> MultiPoly {
    b.subst_all(&[
        (vars::T, MultiPoly::var(vars::Q)),
        (vars::U, MultiPoly::one()),
        (vars::V, MultiPoly::zero()),
        (vars::W, MultiPoly::var(vars::Y)),
        (vars::Y, MultiPoly::one()),
    ])
}

pub fn p3_transform(n: usize) -> MultiPoly {
    b7_to_p3(&b7(n, B7Interp::Cycle))
}

pub fn p3_cfrac(n: usize) -> MultiPoly {
    let spec = cfrac::preset("CF_P").expect("built-in preset");
    cfrac::moments(&spec, n).pop().unwrap()
}

// ---------------------------------------------------------------------------
// γ-polynomials
// ---------------------------------------------------------------------------

/// γ-coefficient lists of `A_n(t,q)` (parameter `n-1`) and `Ã_n(t,q)`
/// (parameter `n`), via the expansion route.
pub fn gamma_family(n: usize) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let a_side = if n == 0 {
        vec![MultiPoly::one()]
    } else {
        a_majexc(n, Route::Recursion)
            .unwrap()
            .gamma_expand(vars::T, n - 1)
            .expect("A_n(t,q) is palindromic with parameter n-1")
    };
    let tilde_side = tilde_a(n, Route::Recursion)
        .unwrap()
        .gamma_expand(vars::T, n)
        .expect("tilde-A_n(t,q) is palindromic with parameter n");
    (a_side, tilde_side)
}

fn gammas_to_y_poly(gammas: &[MultiPoly]) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (k, g) in gammas.iter().enumerate() {
        out = out.add(&g.mul(&MultiPoly::var_pow(vars::Y, k as u16)));
    }
    out
}

/// `Γ_n(y,q) = Σ_k γ_{n,k}(q) y^k`. The enumeration route requires `n ≥ 2`
/// (the `σ_1 < σ_2` clause needs a second letter); `Γ_0 = Γ_1 = 1` by the
/// expansion convention.
pub fn gamma_poly(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Transform => {
            if n <= 1 {
                return Ok(MultiPoly::one());
            }
            Ok(gammas_to_y_poly(&gamma_family(n).0))
        }
        Route::Enumerate => {
            if n < 2 {
                return Err(FamilyError::BelowMin {
                    family: FamilyId::GammaPoly,
                    route,
                    min: 2,
                    n,
                });
            }
            let mut out = MultiPoly::zero();
            for p in gen_sn(n) {
                if p.dd() == 0 && p.word()[0] < p.word()[1] {
                    out = out.add(&weight2(vars::Y, p.des(), vars::Q, p.inv()));
                }
            }
            Ok(out)
        }
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::GammaPoly,
            route,
        }),
    }
}

/// `Γ̃_0..Γ̃_nmax(y,q)` through the recursion
/// `Γ̃_{n+1} = Γ̃_n + y Σ_{k=1}^n [n k]_q q^k Γ_k Γ̃_{n-k}`, seeded with
/// `Γ̃_0 = 1` and `Γ_k` from the expansion of `A_k(t,q)`.
pub fn tilde_gamma_upto(n_max: usize) -> Vec<MultiPoly> {
    let gamma: Vec<MultiPoly> = (0..=n_max)
        .map(|k| gamma_poly(k, Route::Transform).unwrap())
        .collect();
    let mut tg = vec![MultiPoly::one()];
    for n in 0..n_max {
        let mut tail = MultiPoly::zero();
        for k in 1..=n {
            let coeff = q_binomial(n, k).mul(&MultiPoly::var_pow(vars::Q, k as u16));
            tail = tail.add(&coeff.mul(&gamma[k]).mul(&tg[n - k]));
        }
        tg.push(tg[n].add(&MultiPoly::var(vars::Y).mul(&tail)));
    }
    tg
}

/// `Γ̃_n(y,q) = Σ_k γ̃_{n,k}(q) y^k`.
pub fn tilde_gamma_poly(n: usize, route: Route) -> Result<MultiPoly, FamilyError> {
    match route {
        Route::Transform => Ok(gammas_to_y_poly(&gamma_family(n).1)),
        Route::Enumerate => {
            if n < 1 {
                return Err(FamilyError::BelowMin {
                    family: FamilyId::TildeGammaPoly,
                    route,
                    min: 1,
                    n,
                });
            }
            let mut out = MultiPoly::zero();
            for p in gen_sn(n) {
                if p.dd() == 0 {
                    out = out.add(&weight2(vars::Y, p.des(), vars::Q, p.inv()));
                }
            }
            Ok(out)
        }
        Route::Recursion => Ok(tilde_gamma_upto(n).pop().unwrap()),
        _ => Err(FamilyError::UnknownRoute {
            family: FamilyId::TildeGammaPoly,
            route,
        }),
    }
}

// ---------------------------------------------------------------------------
// Cross-multiplied series identities
// ---------------------------------------------------------------------------

/// Coefficient-level form of the q-exponential identity for `A_n(t,q)`:
/// `Σ_k [n k]_q A_k(t,q)(t^{n-k} - t) == 1 - t`.
pub fn eq_1_1_sides(n: usize) -> (MultiPoly, MultiPoly) {
    let a = a_majexc_upto(n);
    let mut lhs = MultiPoly::zero();
    for k in 0..=n {
        let factor = t_pow(n - k).sub(&MultiPoly::var(vars::T));
        lhs = lhs.add(&q_binomial(n, k).mul(&a[k]).mul(&factor));
    }
    (lhs, MultiPoly::parse("1-t").unwrap())
}

/// Coefficient-level form of the q-exponential identity for `Ã_n(t,q)`:
/// `Σ_k [n k]_q Ã_k(t,q)(t^{n-k} - t) == (1-t) Σ_k [n k]_q t^k`.
pub fn eq_2_5_sides(n: usize) -> (MultiPoly, MultiPoly) {
    let tilde = tilde_a_upto(n);
    let mut lhs = MultiPoly::zero();
    let mut rhs = MultiPoly::zero();
    for k in 0..=n {
        let factor = t_pow(n - k).sub(&MultiPoly::var(vars::T));
        lhs = lhs.add(&q_binomial(n, k).mul(&tilde[k]).mul(&factor));
        rhs = rhs.add(&q_binomial(n, k).mul(&t_pow(k)));
    }
    (lhs, MultiPoly::parse("1-t").unwrap().mul(&rhs))
}

/// Verifies both cross-multiplied q-exponential identities at order `n`.
pub fn qexp_identity_check(n: usize) -> bool {
    let (l1, r1) = eq_1_1_sides(n);
    let (l2, r2) = eq_2_5_sides(n);
    l1 == r1 && l2 == r2
}

/// Coefficient-level form of the Eulerian EGF:
/// `t·A_n(t) == Σ_k C(n,k)(t-1)^{n-k} A_k(t)` for `n ≥ 1`.
pub fn egf_cross_check_a(n: usize) -> bool {
    let a = eulerian_upto(n);
    let t_minus_1 = MultiPoly::parse("t-1").unwrap();
    let mut rhs = MultiPoly::zero();
    for k in 0..=n {
        let c = MultiPoly::constant(binomial(n, k));
        rhs = rhs.add(&c.mul(&t_minus_1.pow((n - k) as u32)).mul(&a[k]));
    }
    MultiPoly::var(vars::T).mul(&a[n]) == rhs
}

/// Coefficient-level form of the A* EGF:
/// `t·A*_n - Σ_k C(n,k)(t²-1)^{n-k} A*_k == (t-1) t^{2n}` for `n ≥ 1`.
pub fn egf_cross_check_astar(n: usize) -> bool {
    let astar: Vec<MultiPoly> = (0..=n).map(|k| a_star(k, Route::Transform).unwrap()).collect();
    let t2_minus_1 = MultiPoly::parse("t^2-1").unwrap();
    let mut sum = MultiPoly::zero();
    for k in 0..=n {
        let c = MultiPoly::constant(binomial(n, k));
        sum = sum.add(&c.mul(&t2_minus_1.pow((n - k) as u32)).mul(&astar[k]));
    }
    let lhs = MultiPoly::var(vars::T).mul(&astar[n]).sub(&sum);
    let rhs = MultiPoly::parse("t-1").unwrap().mul(&t_pow(2 * n));
    lhs == rhs
}
