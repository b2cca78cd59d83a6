//! Exact sparse multivariate polynomials over arbitrary-precision integers,
//! plus the structural analyzers (palindromicity, unimodality, gamma-basis
//! expansion, log-concavity) used throughout the crate.
//!
//! Polynomials live over the fixed variable alphabet `t,q,p,y,u,v,w,a,b,c,d,e`
//! (the generating-function weight `α` is stored under the name `e`). The
//! series variable `x` is never a polynomial variable; series are handled as
//! coefficient lists. All arithmetic is exact; there is no floating point
//! anywhere in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Number of variables in the fixed alphabet.
pub const NVARS: usize = 12;

/// The fixed variable alphabet, in canonical order.
pub const ALPHABET: [&str; NVARS] = ["t", "q", "p", "y", "u", "v", "w", "a", "b", "c", "d", "e"];

/// Exact integer coefficient.
pub type Coeff = BigInt;

/// A variable of the fixed alphabet, identified by its index in [`ALPHABET`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u8);

impl Var {
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        ALPHABET[self.index()]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        ALPHABET
            .iter()
            .position(|v| *v == name)
            .map(|i| Var(i as u8))
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named constants for the alphabet.
pub mod vars {
    use super::Var;

    pub const T: Var = Var(0);
    pub const Q: Var = Var(1);
    pub const P: Var = Var(2);
    pub const Y: Var = Var(3);
    pub const U: Var = Var(4);
    pub const V: Var = Var(5);
    pub const W: Var = Var(6);
    pub const A: Var = Var(7);
    pub const B: Var = Var(8);
    pub const C: Var = Var(9);
    pub const D: Var = Var(10);
    /// The fixed-point weight `α` of the cycle-statistic polynomials.
    pub const E: Var = Var(11);
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not univariate with integer coefficients")]
    NotUnivariate,
    #[error("polynomial is not palindromic with parameter {0}")]
    NotPalindromic(usize),
    #[error("sequence of length {len} is too short (need at least {need})")]
    SequenceTooShort { len: usize, need: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A monomial: one exponent per alphabet variable. Absent variables have
/// exponent zero by construction. Ordering is lexicographic in alphabet order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var_pow(v: Var, e: u16) -> Monomial {
        let mut m = Monomial::default();
        m.exps[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of monomials (exponent-wise sum).
    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..NVARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m
    }

    fn without(&self, v: Var) -> Monomial {
        let mut m = *self;
        m.exps[v.index()] = 0;
        m
    }

    /// Variables with non-zero exponent, in alphabet order.
    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        (0..NVARS as u8)
            .map(Var)
            .filter(move |v| self.exps[v.index()] != 0)
    }
}

/// Exact sparse multivariate polynomial in canonical form: the term map never
/// contains a zero coefficient, and equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::int(1)
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(BigInt::from(n))
    }

    pub fn constant(c: Coeff) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::var_pow(v, e), BigInt::one());
        p
    }

    pub fn monomial(m: Monomial, c: Coeff) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Adds `c·m` in place, keeping canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (m, k) in &self.terms {
            out.terms.insert(*m, k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Substitutes the integer `value` for `v`, exactly.
    pub fn eval_at(&self, v: Var, value: &Coeff) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let scaled = if e == 0 { c.clone() } else { c * value.pow(e as u32) };
            out.add_term(m.without(v), scaled);
        }
        out
    }

    /// Simultaneous substitution of polynomials for variables. Variables not
    /// in the map are left alone.
    pub fn subst_all(&self, map: &[(Var, MultiPoly)]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = MultiPoly::constant(c.clone());
            for (v, img) in map {
                let e = rest.exp(*v);
                if e > 0 {
                    rest = rest.without(*v);
                    factor = factor.mul(&img.pow(e as u32));
                }
            }
            out = out.add(&factor.mul(&MultiPoly::monomial(rest, BigInt::one())));
        }
        out
    }

    /// Renames a variable. The target variable must not occur.
    pub fn rename_var(&self, from: Var, to: Var) -> MultiPoly {
        assert_eq!(self.deg(to), 0, "rename target already occurs");
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(from);
            let nm = m.without(from).times(&Monomial::var_pow(to, e));
            out.terms.insert(nm, c.clone());
        }
        out
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn deg(&self, v: Var) -> usize {
        self.terms
            .keys()
            .map(|m| m.exp(v) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) as usize == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Variables occurring with non-zero exponent, in alphabet order.
    pub fn support(&self) -> Vec<Var> {
        let mut present = [false; NVARS];
        for m in self.terms.keys() {
            for v in m.support() {
                present[v.index()] = true;
            }
        }
        (0..NVARS as u8)
            .map(Var)
            .filter(|v| present[v.index()])
            .collect()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_integer(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Dense coefficient list of an integer-univariate polynomial, together
    /// with its variable (None if constant). Errors if more than one variable
    /// occurs.
    pub fn as_univariate(&self) -> Result<(Option<Var>, Vec<Coeff>), PolyError> {
        let support = self.support();
        match support.len() {
            0 => {
                let c = self.as_integer().unwrap();
                if c.is_zero() {
                    Ok((None, Vec::new()))
                } else {
                    Ok((None, vec![c]))
                }
            }
            1 => {
                let v = support[0];
                let d = self.deg(v);
                let mut coeffs = vec![BigInt::zero(); d + 1];
                for (m, c) in &self.terms {
                    coeffs[m.exp(v) as usize] = c.clone();
                }
                Ok((Some(v), coeffs))
            }
            _ => Err(PolyError::NotUnivariate),
        }
    }

    /// True iff every coefficient is non-negative.
    pub fn coeffs_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Dense view in one variable: `coeffs[k]` is the coefficient of `v^k`.
    pub fn uni_view(&self, v: Var) -> UniView {
        let d = self.deg(v);
        let mut coeffs = vec![MultiPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        UniView { var: v, coeffs }
    }

    /// Palindromicity with parameter `m`: coefficient of `v^i` equals the
    /// coefficient of `v^{m-i}` (as polynomials) for all `i`.
    pub fn is_palindromic(&self, v: Var, m: usize) -> bool {
        if self.deg(v) > m {
            return false;
        }
        let view = self.uni_view(v);
        for i in 0..=m / 2 {
            let lo = view.coeff(i);
            let hi = view.coeff(m - i);
            if lo != hi {
                return false;
            }
        }
        true
    }

    /// Unimodality of an integer-univariate polynomial: the dense coefficient
    /// list rises then falls.
    pub fn is_unimodal(&self) -> Result<bool, PolyError> {
        let (_, h) = self.as_univariate()?;
        Ok(is_unimodal_seq(&h))
    }

    /// Log-concavity of an integer-univariate polynomial:
    /// `a_k^2 >= a_{k-1} a_{k+1}` for all internal `k`.
    pub fn is_log_concave(&self) -> Result<bool, PolyError> {
        let (_, h) = self.as_univariate()?;
        for k in 1..h.len().saturating_sub(1) {
            if &h[k] * &h[k] < &h[k - 1] * &h[k + 1] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// q-log-concavity along `outer`: with `a_k` the coefficient of
    /// `outer^k`, every `a_k^2 - a_{k-1} a_{k+1}` has non-negative
    /// coefficients.
    pub fn is_q_log_concave(&self, outer: Var) -> bool {
        let view = self.uni_view(outer);
        let a = &view.coeffs;
        for k in 1..a.len().saturating_sub(1) {
            let diff = a[k].mul(&a[k]).sub(&a[k - 1].mul(&a[k + 1]));
            if !diff.coeffs_nonneg() {
                return false;
            }
        }
        true
    }

    /// Expansion in the basis `{v^k (1+v)^{m-2k}}` by leading-coefficient
    /// peeling from `k = 0` upward. Errors unless the polynomial is
    /// palindromic with parameter `m`.
    pub fn gamma_expand(&self, v: Var, m: usize) -> Result<Vec<MultiPoly>, PolyError> {
        if !self.is_palindromic(v, m) {
            return Err(PolyError::NotPalindromic(m));
        }
        let one_plus_v = MultiPoly::one().add(&MultiPoly::var(v));
        let mut rem = self.clone();
        let mut gammas = Vec::with_capacity(m / 2 + 1);
        for k in 0..=m / 2 {
            let g = rem.coeff_of(v, k);
            let basis = MultiPoly::var_pow(v, k as u16).mul(&one_plus_v.pow((m - 2 * k) as u32));
            rem = rem.sub(&g.mul(&basis));
            gammas.push(g);
        }
        debug_assert!(rem.is_zero(), "gamma peeling left a non-zero remainder");
        Ok(gammas)
    }

    pub fn parse(input: &str) -> Result<MultiPoly, PolyError> {
        parse_poly(input)
    }

    /// Human-readable rendering with Unicode superscripts, terms in canonical
    /// (lexicographic) order.
    pub fn to_text(&self) -> String {
        self.render(RenderStyle::Unicode)
    }

    /// ASCII LaTeX-like rendering (`t^{2}` style exponents).
    pub fn to_latex(&self) -> String {
        self.render(RenderStyle::Latex)
    }

    fn render(&self, style: RenderStyle) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut body = String::new();
            if !abs.is_one() || m.is_one() {
                body.push_str(&abs.to_string());
            }
            for v in m.support() {
                body.push_str(v.name());
                let e = m.exp(v);
                if e > 1 {
                    match style {
                        RenderStyle::Unicode => body.push_str(&superscript(e)),
                        RenderStyle::Latex => body.push_str(&format!("^{{{e}}}")),
                    }
                }
            }
            out.push_str(&body);
        }
        out
    }
}

#[derive(Clone, Copy)]
enum RenderStyle {
    Unicode,
    Latex,
}

fn superscript(e: u16) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    e.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_latex())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Dense view of a polynomial in one distinguished variable. Reassembling
/// `Σ coeffs[k]·var^k` reproduces the original polynomial.
#[derive(Clone, Debug)]
pub struct UniView {
    pub var: Var,
    pub coeffs: Vec<MultiPoly>,
}

impl UniView {
    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn reassemble(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            out = out.add(&c.mul(&MultiPoly::var_pow(self.var, k as u16)));
        }
        out
    }
}

fn is_unimodal_seq(h: &[Coeff]) -> bool {
    let mut i = 0;
    while i + 1 < h.len() && h[i] <= h[i + 1] {
        i += 1;
    }
    while i + 1 < h.len() && h[i] >= h[i + 1] {
        i += 1;
    }
    i + 1 >= h.len()
}

/// The operator `L{f}_i = f_{i+1} f_{i-1} - f_i^2` over interior indices;
/// output `[j]` corresponds to input index `j+1`.
pub fn l_operator(seq: &[MultiPoly]) -> Result<Vec<MultiPoly>, PolyError> {
    if seq.len() < 3 {
        return Err(PolyError::SequenceTooShort {
            len: seq.len(),
            need: 3,
        });
    }
    Ok((1..seq.len() - 1)
        .map(|i| seq[i + 1].mul(&seq[i - 1]).sub(&seq[i].mul(&seq[i])))
        .collect())
}

/// k-q-log-convexity: after `k` applications of [`l_operator`] every entry
/// has non-negative coefficients. Requires `len >= 2k+1` so the final
/// sequence is non-empty.
pub fn k_q_log_convex(seq: &[MultiPoly], k: usize) -> Result<bool, PolyError> {
    if seq.len() < 2 * k + 1 {
        return Err(PolyError::SequenceTooShort {
            len: seq.len(),
            need: 2 * k + 1,
        });
    }
    let mut cur = seq.to_vec();
    for _ in 0..k {
        cur = l_operator(&cur)?;
    }
    Ok(cur.iter().all(MultiPoly::coeffs_nonneg))
}

/// Sanity utility: is `P·Q` palindromic and unimodal with parameter
/// `mp + mq`? Both inputs must be integer-univariate (in a common variable,
/// or constants).
pub fn product_palunimodal_closure_check(
    p: &MultiPoly,
    q: &MultiPoly,
    mp: usize,
    mq: usize,
) -> Result<bool, PolyError> {
    let prod = p.mul(q);
    let (var, _) = prod.as_univariate()?;
    let v = var.unwrap_or(vars::T);
    Ok(prod.is_palindromic(v, mp + mq) && prod.is_unimodal()?)
}

/// Exact binomial coefficient; `k > n` yields 0.
pub fn binomial(n: usize, k: usize) -> Coeff {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Gaussian polynomial `[n k]_q` via the recursion
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`; `k > n` yields 0.
pub fn q_binomial(n: usize, k: usize) -> MultiPoly {
    if k > n {
        return MultiPoly::zero();
    }
    // row[j] = [m j]_q, grown from m = 0 upward.
    let mut row: Vec<MultiPoly> = vec![MultiPoly::one()];
    for _m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(MultiPoly::one());
        for j in 1..row.len() {
            let shifted = MultiPoly::var_pow(vars::Q, j as u16).mul(&row[j]);
            next.push(row[j - 1].add(&shifted));
        }
        next.push(MultiPoly::one());
        row = next;
    }
    row[k].clone()
}

/// The (p,q)-integer `[n]_{p,q} = p^{n-1} + p^{n-2}q + … + q^{n-1}`; 0 for n=0.
pub fn pq_integer(n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 0..n {
        out.add_term(
            Monomial::var_pow(vars::P, (n - 1 - i) as u16).times(&Monomial::var_pow(vars::Q, i as u16)),
            BigInt::one(),
        );
    }
    out
}

/// `[n]_q! = Π_{i=1}^n (1 + q + … + q^{i-1})`.
pub fn q_factorial(n: usize) -> MultiPoly {
    let mut out = MultiPoly::one();
    for i in 1..=n {
        let mut f = MultiPoly::zero();
        for j in 0..i {
            f.add_term(Monomial::var_pow(vars::Q, j as u16), BigInt::one());
        }
        out = out.mul(&f);
    }
    out
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u16>,
    coef: String,
}

impl MultiPoly {
    fn to_schema(&self) -> PolyJson {
        let support = self.support();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exp: support.iter().map(|v| m.exp(*v)).collect(),
                coef: c.to_string(),
            })
            .collect();
        PolyJson {
            vars: support.iter().map(|v| v.name().to_string()).collect(),
            terms,
        }
    }

    fn from_schema(schema: &PolyJson) -> Result<MultiPoly, PolyError> {
        let mut vs = Vec::with_capacity(schema.vars.len());
        for name in &schema.vars {
            vs.push(Var::from_name(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?);
        }
        let mut out = MultiPoly::zero();
        for term in &schema.terms {
            if term.exp.len() != vs.len() {
                return Err(PolyError::Parse(format!(
                    "exponent vector length {} does not match {} vars",
                    term.exp.len(),
                    vs.len()
                )));
            }
            let mut m = Monomial::one();
            for (v, e) in vs.iter().zip(&term.exp) {
                m = m.times(&Monomial::var_pow(*v, *e));
            }
            let c: BigInt = term
                .coef
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient `{}`", term.coef)))?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_schema()).expect("schema serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<MultiPoly, PolyError> {
        let schema: PolyJson =
            serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        MultiPoly::from_schema(&schema)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_schema().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<MultiPoly, D::Error> {
        let schema = PolyJson::deserialize(deserializer)?;
        MultiPoly::from_schema(&schema).map_err(|e| D::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Text parser (sums of signed monomials, e.g. "1+3t+5t^2-2tq^3")
// ---------------------------------------------------------------------------

fn parse_poly(input: &str) -> Result<MultiPoly, PolyError> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut out = MultiPoly::zero();
    let mut i = 0;
    while i < s.len() {
        let mut sign = BigInt::one();
        while i < s.len() && (s[i] == '+' || s[i] == '-') {
            if s[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= s.len() {
            return Err(PolyError::Parse("dangling sign".into()));
        }
        let mut coef: Option<BigInt> = None;
        if s[i].is_ascii_digit() {
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = s[start..i].iter().collect();
            coef = Some(digits.parse().unwrap());
        }
        let mut m = Monomial::one();
        while i < s.len() && s[i] != '+' && s[i] != '-' {
            if s[i] == '*' {
                i += 1;
                continue;
            }
            let v = Var::from_name(&s[i].to_string())
                .ok_or_else(|| PolyError::Parse(format!("unknown symbol `{}`", s[i])))?;
            i += 1;
            let mut e: u16 = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(PolyError::Parse("missing exponent after ^".into()));
                }
                let digits: String = s[start..i].iter().collect();
                e = digits
                    .parse()
                    .map_err(|_| PolyError::Parse("exponent too large".into()))?;
            }
            m = m.times(&Monomial::var_pow(v, e));
        }
        let c = sign * coef.unwrap_or_else(BigInt::one);
        out.add_term(m, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn add_basics() {
        assert_eq!(p("1+t").add(&p("t")), p("1+2t"));
        let some = p("3t^2-q+7");
        assert_eq!(some.add(&MultiPoly::zero()), some);
        // oracle: expand (1+t)^3 by repeated multiplication
        let cube = p("1+t").mul(&p("1+t")).mul(&p("1+t"));
        assert_eq!(p("1+3t+3t^2+t^3").sub(&cube), MultiPoly::zero());
    }

    #[test]
    fn mul_basics() {
        assert_eq!(p("1+t").mul(&p("1-t")), p("1-t^2"));
        assert_eq!(p("1-t").mul(&p("1+t+t^2+t^3")), p("1-t^4"));
        assert_eq!(p("1+q").mul(&p("1+q+q^2")), p("1+2q+2q^2+q^3"));
    }

    #[test]
    fn eval_at_specializations() {
        let a2 = p("1+2t+qt+t^2"); // 1+(2+q)t+t^2
        assert_eq!(a2.eval_at(vars::Q, &BigInt::from(-1)), p("1+t+t^2"));
        // tilde-A_3(t,q) = 1+(3+2q+2q^2)t+(3+2q+2q^2)t^2+t^3 at q=1
        let a3 = p("1+3t+2qt+2q^2t+3t^2+2qt^2+2q^2t^2+t^3");
        assert_eq!(a3.eval_at(vars::Q, &BigInt::from(1)), p("1+7t+7t^2+t^3"));
        assert_eq!(
            p("q^2").eval_at(vars::Q, &BigInt::from(-1)),
            MultiPoly::one()
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        for n in 0..10 {
            assert_eq!(binomial(n, 0), BigInt::one());
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
        // oracle: Pascal recursion
        let mut pascal = vec![vec![BigInt::one()]];
        for n in 1..=9usize {
            let prev = &pascal[n - 1];
            let mut row = vec![BigInt::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            pascal.push(row);
        }
        assert_eq!(pascal[9][4], BigInt::from(126));
        assert_eq!(binomial(9, 4), BigInt::from(126));
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), pascal[n][k]);
            }
        }
    }

    #[test]
    fn q_binomial_values() {
        // oracle: (q;q)_2 / ((q;q)_1)^2 = (1-q^2)/(1-q) = 1+q
        assert_eq!(q_binomial(2, 1), p("1+q"));
        for n in 0..8 {
            assert_eq!(q_binomial(n, n), MultiPoly::one());
        }
        assert_eq!(q_binomial(2, 3), MultiPoly::zero());
        // Lemma instance: [4 2]_q at q = -1 equals C(2,1)
        let g = q_binomial(4, 2);
        assert_eq!(g, p("1+q+2q^2+q^3+q^4"));
        assert_eq!(
            g.eval_at(vars::Q, &BigInt::from(-1)),
            MultiPoly::constant(binomial(2, 1))
        );
    }

    #[test]
    fn q_binomial_symmetry_and_q1() {
        for n in 0..=12usize {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
                assert_eq!(
                    q_binomial(n, k).eval_at(vars::Q, &BigInt::one()),
                    MultiPoly::constant(binomial(n, k))
                );
            }
        }
    }

    #[test]
    fn q_binomial_sign_balance_table() {
        // eval at q = -1 for all classes, m and i up to 6
        for m in 0..=6usize {
            for i in 0..=m {
                let want = MultiPoly::constant(binomial(m, i));
                let at = |n: usize, k: usize| q_binomial(n, k).eval_at(vars::Q, &BigInt::from(-1));
                assert_eq!(at(2 * m, 2 * i), want, "[2m 2i] m={m} i={i}");
                assert_eq!(at(2 * m + 1, 2 * i), want, "[2m+1 2i] m={m} i={i}");
                assert_eq!(at(2 * m + 1, 2 * i + 1), want, "[2m+1 2i+1] m={m} i={i}");
                if 2 * i + 1 <= 2 * m {
                    assert_eq!(at(2 * m, 2 * i + 1), MultiPoly::zero(), "[2m 2i+1] m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn pq_integer_values() {
        assert_eq!(pq_integer(0), MultiPoly::zero());
        assert_eq!(pq_integer(1), MultiPoly::one());
        assert_eq!(pq_integer(2), p("p+q"));
        assert_eq!(pq_integer(3), p("p^2+pq+q^2"));
    }

    #[test]
    fn palindromic_checks() {
        assert!(p("1+3t+5t^2+3t^3+t^4").is_palindromic(vars::T, 4));
        assert!(!p("1+2t").is_palindromic(vars::T, 1));
        let a3 = p("1+3t+2qt+2q^2t+3t^2+2qt^2+2q^2t^2+t^3");
        assert!(a3.is_palindromic(vars::T, 3));
        // degree above the parameter can never be palindromic
        assert!(!p("1+t+t^2").is_palindromic(vars::T, 1));
    }

    #[test]
    fn unimodal_checks() {
        assert!(p("1+7t+19t^2+25t^3+19t^4+7t^5+t^6").is_unimodal().unwrap());
        assert!(!p("2-t+2t^2").is_unimodal().unwrap());
        assert!(p("1+t").pow(5).is_unimodal().unwrap());
        assert!(p("t+t^2").is_unimodal().unwrap());
        assert!(p("1+tq").is_unimodal().is_err());
    }

    #[test]
    fn gamma_expand_values() {
        let a3 = p("1+3t+2qt+2q^2t+3t^2+2qt^2+2q^2t^2+t^3");
        let gammas = a3.gamma_expand(vars::T, 3).unwrap();
        assert_eq!(gammas, vec![MultiPoly::one(), p("2q+2q^2")]);

        for m in 1..=6 {
            let g = p("1+t").pow(m as u32).gamma_expand(vars::T, m).unwrap();
            assert_eq!(g[0], MultiPoly::one());
            assert!(g[1..].iter().all(MultiPoly::is_zero));
        }

        let hat_a2 = p("1+2t+qt+t^2");
        assert_eq!(
            hat_a2.gamma_expand(vars::T, 2).unwrap(),
            vec![MultiPoly::one(), p("q")]
        );

        assert!(p("1+2t").gamma_expand(vars::T, 1).is_err());
    }

    #[test]
    fn gamma_expand_round_trip() {
        // palindromic input assembled from a gamma list round-trips
        let gammas = [p("1+q"), p("3-q"), p("2q^2")];
        let m = 5usize;
        let mut poly = MultiPoly::zero();
        for (k, g) in gammas.iter().enumerate() {
            let basis = MultiPoly::var_pow(vars::T, k as u16)
                .mul(&p("1+t").pow((m - 2 * k) as u32));
            poly = poly.add(&g.mul(&basis));
        }
        assert_eq!(poly.gamma_expand(vars::T, m).unwrap(), gammas.to_vec());
    }

    #[test]
    fn log_concave_checks() {
        // 9 >= 3 and 9 >= 3
        assert!(p("1+3t+3t^2+t^3").is_log_concave().unwrap());
        assert!(p("1+t+t^2").is_log_concave().unwrap());
        assert!(!p("3+t+3t^2").is_log_concave().unwrap());
    }

    #[test]
    fn q_log_concave_checks() {
        // (2+q)^2 - 1 = 3+4q+q^2 has non-negative coefficients
        assert!(p("1+2t+qt+t^2").is_q_log_concave(vars::T));
        assert!(p("5q^3t^2").is_q_log_concave(vars::T));
        assert!(!p("1+t+2t^2").is_q_log_concave(vars::T));
    }

    #[test]
    fn l_operator_values() {
        let out = l_operator(&[p("1"), p("1+t"), p("1+3t+t^2")]).unwrap();
        assert_eq!(out, vec![p("t")]);

        let c = p("7");
        let out = l_operator(&[c.clone(), c.clone(), c]).unwrap();
        assert_eq!(out, vec![MultiPoly::zero()]);

        // binomial-Eulerian values in q
        let out = l_operator(&[p("1+q"), p("1+3q+q^2"), p("1+7q+7q^2+q^3")]).unwrap();
        let expect = p("1+q")
            .mul(&p("1+7q+7q^2+q^3"))
            .sub(&p("1+3q+q^2").mul(&p("1+3q+q^2")));
        assert_eq!(out, vec![expect.clone()]);
        assert_eq!(expect, p("2q+3q^2+2q^3"));
        assert!(expect.coeffs_nonneg());

        assert!(l_operator(&[p("1"), p("2")]).is_err());
    }

    #[test]
    fn k_q_log_convex_checks() {
        let c = p("4+q");
        let seq: Vec<_> = (0..5).map(|_| c.clone()).collect();
        assert!(k_q_log_convex(&seq, 1).unwrap());

        assert!(!k_q_log_convex(&[p("1"), p("q"), p("1")], 1).unwrap());

        assert!(k_q_log_convex(&[p("1"), p("q"), p("1")], 2).is_err());
    }

    #[test]
    fn product_closure_examples() {
        let sq = p("1+t").pow(2);
        assert!(product_palunimodal_closure_check(&sq, &p("1+t+t^2"), 2, 2).unwrap());
        assert!(product_palunimodal_closure_check(&p("1"), &p("1+4t+t^2"), 0, 2).unwrap());
        assert!(
            product_palunimodal_closure_check(&p("1+t"), &p("1+3t+3t^2+t^3"), 1, 3).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let poly = p("1+2t+qt+t^2-5q^4");
        let s = poly.to_json_string();
        let back = MultiPoly::from_json_str(&s).unwrap();
        assert_eq!(poly, back);
        // byte-identical re-serialization
        assert_eq!(back.to_json_string(), s);
        // schema shape
        assert_eq!(
            p("1+qt").to_json_string(),
            r#"{"vars":["t","q"],"terms":[{"exp":[0,0],"coef":"1"},{"exp":[1,1],"coef":"1"}]}"#
        );
    }

    #[test]
    fn text_rendering() {
        assert_eq!(p("1+7t+15t^2+15t^3+7t^4+t^5").to_text(), "1+7t+15t²+15t³+7t⁴+t⁵");
        assert_eq!(p("1-t^2").to_latex(), "1-t^{2}");
        assert_eq!(MultiPoly::zero().to_text(), "0");
        assert_eq!(p("2q+2q^2").to_text(), "2q+2q²");
        assert_eq!(p("-3tq^2+1").to_text(), "1-3tq²");
    }

    #[test]
    fn uni_view_round_trip() {
        let poly = p("1+2t+qt+t^2+q^3");
        let view = poly.uni_view(vars::T);
        assert_eq!(view.coeffs.len(), 3);
        assert_eq!(view.coeff(1), p("2+q"));
        assert_eq!(view.reassemble(), poly);
    }
}
