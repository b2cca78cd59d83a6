//! J-fraction engine.
//!
//! A J-fraction `1/(1 - b_0 x - λ_1 x²/(1 - b_1 x - …))` is described by its
//! coefficient spectra `(b_n, λ_n)`. Series coefficients are computed as
//! weighted Motzkin-path sums (level step at height h weighs `b_h`, down step
//! from height h weighs `λ_h`, up steps weigh 1), and independently through
//! the Jacobi–Rogers closed-form sum over step-count compositions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poly::{binomial, pq_integer, vars, Monomial, MultiPoly};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CfracError {
    #[error("unknown J-fraction preset `{0}`")]
    UnknownPreset(String),
}

type SpectrumFn = Arc<dyn Fn(usize) -> MultiPoly + Send + Sync>;

/// A named pair of coefficient maps `n ↦ b_n`, `n ↦ λ_n` defining a
/// J-fraction (`λ_0` is unused).
#[derive(Clone)]
pub struct JSpec {
    name: String,
    b_fn: SpectrumFn,
    lam_fn: SpectrumFn,
}

impl JSpec {
    pub fn new<B, L>(name: &str, b: B, lam: L) -> JSpec
    where
        B: Fn(usize) -> MultiPoly + Send + Sync + 'static,
        L: Fn(usize) -> MultiPoly + Send + Sync + 'static,
    {
        JSpec {
            name: name.to_string(),
            b_fn: Arc::new(b),
            lam_fn: Arc::new(lam),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn b(&self, n: usize) -> MultiPoly {
        (self.b_fn)(n)
    }

    pub fn lam(&self, n: usize) -> MultiPoly {
        (self.lam_fn)(n)
    }
}

impl std::fmt::Debug for JSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "JSpec({})", self.name)
    }
}

/// Names of the built-in spectra.
pub const PRESET_NAMES: [&str; 6] = ["CF_Q", "CF_tildeA", "CF_Astar", "CF_hatA", "CF_B", "CF_P"];

/// The spectra used in this crate:
///
/// | name      | b_n                       | λ_n               |
/// |-----------|---------------------------|-------------------|
/// | CF_Q      | n(c+d) + e                | n² a b           |
/// | CF_tildeA | (n+1)(t+1)                | n² t              |
/// | CF_Astar  | n(t+1)² + 1 + t + t²      | n² t (1+t)²       |
/// | CF_hatA   | (1+t)[n+1]_{p,q}          | t q [n]²_{p,q}    |
/// | CF_B      | y pⁿ + (qu + tv)[n]_{p,q} | t w [n]²_{p,q}    |
/// | CF_P      | [n+1]_{p,q}               | y q [n]²_{p,q}    |
pub fn preset(name: &str) -> Result<JSpec, CfracError> {
    let int = |k: usize| MultiPoly::int(k as i64);
    let one_plus_t = || MultiPoly::one().add(&MultiPoly::var(vars::T));
    match name {
        "CF_Q" => Ok(JSpec::new(
            name,
            move |n| {
                let cd = MultiPoly::var(vars::C).add(&MultiPoly::var(vars::D));
                MultiPoly::int(n as i64).mul(&cd).add(&MultiPoly::var(vars::E))
            },
            move |n| {
                MultiPoly::int((n * n) as i64)
                    .mul(&MultiPoly::var(vars::A))
                    .mul(&MultiPoly::var(vars::B))
            },
        )),
        "CF_tildeA" => Ok(JSpec::new(
            name,
            move |n| int(n + 1).mul(&one_plus_t()),
            move |n| int(n * n).mul(&MultiPoly::var(vars::T)),
        )),
        "CF_Astar" => Ok(JSpec::new(
            name,
            move |n| {
                let sq = one_plus_t().pow(2);
                int(n)
                    .mul(&sq)
                    .add(&MultiPoly::parse("1+t+t^2").unwrap())
            },
            move |n| {
                int(n * n)
                    .mul(&MultiPoly::var(vars::T))
                    .mul(&one_plus_t().pow(2))
            },
        )),
        "CF_hatA" => Ok(JSpec::new(
            name,
            move |n| one_plus_t().mul(&pq_integer(n + 1)),
            move |n| {
                MultiPoly::var(vars::T)
                    .mul(&MultiPoly::var(vars::Q))
                    .mul(&pq_integer(n).pow(2))
            },
        )),
        "CF_B" => Ok(JSpec::new(
            name,
            move |n| {
                let head = MultiPoly::monomial(
                    Monomial::var_pow(vars::Y, 1).times(&Monomial::var_pow(vars::P, n as u16)),
                    BigInt::one(),
                );
                let qu = MultiPoly::var(vars::Q).mul(&MultiPoly::var(vars::U));
                let tv = MultiPoly::var(vars::T).mul(&MultiPoly::var(vars::V));
                head.add(&qu.add(&tv).mul(&pq_integer(n)))
            },
            move |n| {
                MultiPoly::var(vars::T)
                    .mul(&MultiPoly::var(vars::W))
                    .mul(&pq_integer(n).pow(2))
            },
        )),
        "CF_P" => Ok(JSpec::new(
            name,
            move |n| pq_integer(n + 1),
            move |n| {
                MultiPoly::var(vars::Y)
                    .mul(&MultiPoly::var(vars::Q))
                    .mul(&pq_integer(n).pow(2))
            },
        )),
        other => Err(CfracError::UnknownPreset(other.to_string())),
    }
}

/// `μ_0 .. μ_N` of the J-fraction: `μ_n` is the coefficient of `x^n`.
/// Computed by dynamic programming over weighted Motzkin-path prefixes; no
/// path of length ≤ N exceeds height ⌊N/2⌋.
pub fn moments(spec: &JSpec, n_max: usize) -> Vec<MultiPoly> {
    let hmax = n_max / 2;
    let b: Vec<MultiPoly> = (0..=hmax).map(|h| spec.b(h)).collect();
    let lam: Vec<MultiPoly> = (0..=hmax + 1).map(|h| spec.lam(h)).collect();
    let mut state = vec![MultiPoly::zero(); hmax + 1];
    state[0] = MultiPoly::one();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(MultiPoly::one());
    for _step in 1..=n_max {
        let mut next = vec![MultiPoly::zero(); hmax + 1];
        for (h, nh) in next.iter_mut().enumerate() {
            let mut acc = state[h].mul(&b[h]);
            if h > 0 {
                acc = acc.add(&state[h - 1]);
            }
            if h + 1 <= hmax {
                acc = acc.add(&state[h + 1].mul(&lam[h + 1]));
            }
            *nh = acc;
        }
        state = next;
        out.push(state[0].clone());
    }
    out
}

/// One composition term of the Jacobi–Rogers sum. `n_vec` holds the down-step
/// counts per λ-level (`n_0..n_h`, each ≥ 1; empty for the pure `b_0^n`
/// term), `m_vec` the level-step counts per height (`m_0..m_{h+1}`), and
/// `weight` the full contribution including the path-count multiplicity ρ.
#[derive(Clone, Debug)]
pub struct JRTerm {
    pub n_vec: Vec<usize>,
    pub m_vec: Vec<usize>,
    pub weight: MultiPoly,
}

impl JRTerm {
    /// Maximum path height represented by this term.
    pub fn height(&self) -> usize {
        self.n_vec.len()
    }

    /// `2·Σ n_vec + Σ m_vec`, the length of the represented paths.
    pub fn path_length(&self) -> usize {
        2 * self.n_vec.iter().sum::<usize>() + self.m_vec.iter().sum::<usize>()
    }
}

fn rho(n_vec: &[usize], m_vec: &[usize]) -> BigInt {
    let levels = n_vec.len();
    let n_at = |j: isize| -> usize {
        if j < 0 {
            1
        } else if (j as usize) >= levels {
            0
        } else {
            n_vec[j as usize]
        }
    };
    let mut r = BigInt::one();
    for j in 0..=levels {
        let nj = n_at(j as isize);
        let njm1 = n_at(j as isize - 1);
        r *= binomial(nj + njm1 - 1, njm1 - 1);
        r *= binomial(m_vec[j] + nj + njm1 - 1, m_vec[j]);
    }
    r
}

fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let reserve = min * (parts - 1);
        if total < min + reserve {
            return;
        }
        for v in min..=total - reserve {
            cur.push(v);
            rec(total - v, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, min, &mut Vec::new(), &mut out);
    out
}

/// Every composition term of the Jacobi–Rogers sum for `J_n`, with exact
/// weights; the weights sum to [`jacobi_rogers`]. Terms are ordered by
/// height, then lexicographically.
pub fn jr_terms(spec: &JSpec, n: usize) -> Vec<JRTerm> {
    let mut out = Vec::new();
    out.push(JRTerm {
        n_vec: Vec::new(),
        m_vec: vec![n],
        weight: spec.b(0).pow(n as u32),
    });
    for levels in 1..=n / 2 {
        for s in levels..=n / 2 {
            for n_vec in compositions(s, levels, 1) {
                let rem = n - 2 * s;
                for m_vec in compositions(rem, levels + 1, 0) {
                    let mut weight = MultiPoly::constant(rho(&n_vec, &m_vec));
                    for (j, &mj) in m_vec.iter().enumerate() {
                        if mj > 0 {
                            weight = weight.mul(&spec.b(j).pow(mj as u32));
                        }
                    }
                    for (j, &nj) in n_vec.iter().enumerate() {
                        weight = weight.mul(&spec.lam(j + 1).pow(nj as u32));
                    }
                    out.push(JRTerm {
                        n_vec: n_vec.clone(),
                        m_vec,
                        weight,
                    });
                }
            }
        }
    }
    out
}

/// The Jacobi–Rogers closed sum for the coefficient of `x^n`; equals
/// `moments(spec, n)[n]`.
pub fn jacobi_rogers(spec: &JSpec, n: usize) -> MultiPoly {
    jr_terms(spec, n)
        .into_iter()
        .fold(MultiPoly::zero(), |acc, term| acc.add(&term.weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn preset_spectra_values() {
        let astar = preset("CF_Astar").unwrap();
        assert_eq!(astar.b(0), p("1+t+t^2"));
        assert_eq!(astar.b(1), p("2+3t+2t^2"));
        let tilde = preset("CF_tildeA").unwrap();
        assert_eq!(tilde.lam(2), p("4t"));
        assert_eq!(tilde.b(0), p("1+t"));
        let b = preset("CF_B").unwrap();
        assert_eq!(b.b(1), p("yp+qu+tv"));
        assert_eq!(b.b(0), p("y"));
        let pn = preset("CF_P").unwrap();
        assert_eq!(pn.b(1), p("p+q"));
        assert_eq!(pn.lam(1), p("yq"));
        assert!(preset("CF_nope").is_err());
    }

    #[test]
    fn tilde_a_moments() {
        let spec = preset("CF_tildeA").unwrap();
        let mu = moments(&spec, 2);
        assert_eq!(mu[0], MultiPoly::one());
        assert_eq!(mu[1], p("1+t"));
        // μ_2 = b_0² + λ_1
        assert_eq!(mu[2], p("1+3t+t^2"));
    }

    #[test]
    fn q_moments_match_hand_expansion() {
        let spec = preset("CF_Q").unwrap();
        let mu = moments(&spec, 3);
        assert_eq!(mu[1], p("e"));
        assert_eq!(mu[2], p("e^2+ab"));
        // three Motzkin paths of length 3
        assert_eq!(mu[3], p("e^3+3abe+abc+abd"));
    }

    #[test]
    fn hat_a_moments_match_displayed_values() {
        let spec = preset("CF_hatA").unwrap();
        let mu = moments(&spec, 3);
        assert_eq!(mu[1], p("1+t"));
        assert_eq!(mu[2], p("1+2t+qt+t^2"));
        assert_eq!(mu[3], p("1+3t+2qt+q^2t+pqt+3t^2+2qt^2+q^2t^2+pqt^2+t^3"));
    }

    #[test]
    fn jacobi_rogers_base_cases() {
        for name in PRESET_NAMES {
            let spec = preset(name).unwrap();
            assert_eq!(jacobi_rogers(&spec, 1), spec.b(0), "{name}");
        }
        let astar = preset("CF_Astar").unwrap();
        // b_0² + λ_1 = (1+t+t²)² + t(1+t)²
        let expect = p("1+t+t^2").pow(2).add(&p("t").mul(&p("1+t").pow(2)));
        assert_eq!(jacobi_rogers(&astar, 2), expect);
        assert_eq!(expect, p("1+3t+5t^2+3t^3+t^4"));
    }

    #[test]
    fn jacobi_rogers_equals_moments() {
        for name in PRESET_NAMES {
            let spec = preset(name).unwrap();
            let mu = moments(&spec, 6);
            for n in 1..=6 {
                assert_eq!(jacobi_rogers(&spec, n), mu[n], "{name} n={n}");
            }
        }
    }

    #[test]
    fn jr_term_structure() {
        let spec = preset("CF_tildeA").unwrap();
        let terms = jr_terms(&spec, 2);
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].n_vec, Vec::<usize>::new());
        assert_eq!(terms[0].m_vec, vec![2]);
        assert_eq!(terms[0].weight, spec.b(0).pow(2));
        assert_eq!(terms[1].n_vec, vec![1]);
        assert_eq!(terms[1].weight, spec.lam(1));

        // n = 3: three composition terms whose ρ-multiplicities sum to the
        // Motzkin number M_3 = 4
        let terms = jr_terms(&spec, 3);
        assert_eq!(terms.len(), 3);
        let rho_sum: BigInt = terms
            .iter()
            .map(|t| rho(&t.n_vec, &t.m_vec))
            .sum();
        assert_eq!(rho_sum, BigInt::from(4));
        for t in &terms {
            assert_eq!(t.path_length(), 3);
        }
    }

    #[test]
    fn astar_term_weights_palindromic_unimodal() {
        let spec = preset("CF_Astar").unwrap();
        for n in 1..=5 {
            for term in jr_terms(&spec, n) {
                assert!(term.weight.is_palindromic(vars::T, 2 * n), "n={n}");
                assert!(term.weight.is_unimodal().unwrap(), "n={n}");
            }
        }
    }
}
