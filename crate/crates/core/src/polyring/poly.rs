//! Sparse multivariate polynomials with exact coefficients, localized at the
//! single element `eps^2 - eps`.
//!
//! A [`Poly`] is a numerator polynomial together with a power `k` of the
//! denominator `(eps^2 - eps)`. The canonical form keeps `k` minimal, so two
//! elements are equal iff their stored data are equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::polyring::PolyError;
use crate::scalar::{Ring, Scalar};

/// Ordered list of indeterminate names. The order fixes the term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRegistry {
    names: Vec<String>,
    eps: Option<usize>,
}

impl VarRegistry {
    /// Builds a registry. A variable named `eps` (or `ε`) is the localization
    /// variable.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        if names.len() > u16::MAX as usize {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        let eps = names.iter().position(|n| n == "eps" || n == "ε");
        Ok(Arc::new(VarRegistry { names, eps }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn eps_index(&self) -> Option<usize> {
        self.eps
    }
}

/// Exponent vector with trailing zeros trimmed. Comparison is lexicographic
/// in registry order, which matches dense lexicographic comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut v = exps.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(index: usize, exp: u16) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial::from_exponents(&v)
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0.get(var).copied().unwrap_or(0)
    }

    /// Non-zero `(variable, exponent)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (i, *e))
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.exponent(i) + other.exponent(i));
        }
        Monomial(v)
    }

    fn with_exponent(&self, var: usize, exp: u16) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        Monomial::from_exponents(&v)
    }
}

/// An element of `K[x_1..x_n][(eps^2 - eps)^-1]`.
#[derive(Clone)]
pub struct Poly<C> {
    vars: Option<Arc<VarRegistry>>,
    terms: BTreeMap<Monomial, C>,
    denom: u32,
}

fn merge_vars(
    a: &Option<Arc<VarRegistry>>,
    b: &Option<Arc<VarRegistry>>,
) -> Result<Option<Arc<VarRegistry>>, PolyError> {
    match (a, b) {
        (None, x) | (x, None) => Ok(x.clone()),
        (Some(x), Some(y)) => {
            if Arc::ptr_eq(x, y) || x == y {
                Ok(Some(x.clone()))
            } else {
                Err(PolyError::RegistryMismatch)
            }
        }
    }
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            vars: None,
            terms: BTreeMap::new(),
            denom: 0,
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly {
            vars: None,
            terms,
            denom: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    /// The indeterminate `name` of `reg`.
    pub fn var(reg: &Arc<VarRegistry>, name: &str) -> Result<Self, PolyError> {
        let i = reg
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(reg, Monomial::var(i, 1), C::one()))
    }

    pub fn monomial(reg: &Arc<VarRegistry>, m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            vars: Some(reg.clone()),
            terms,
            denom: 0,
        }
    }

    /// Builds `numerator / (eps^2 - eps)^denom` and canonicalizes.
    pub fn from_terms<I>(reg: &Arc<VarRegistry>, terms: I, denom: u32) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        if denom > 0 && reg.eps_index().is_none() {
            return Err(PolyError::MissingEpsilon);
        }
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            add_term(&mut map, m, c);
        }
        let mut p = Poly {
            vars: Some(reg.clone()),
            terms: map,
            denom,
        };
        p.canonicalize();
        Ok(p)
    }

    /// `(eps^2 - eps)^-1` in `reg`.
    pub fn eps_unit_inverse(reg: &Arc<VarRegistry>) -> Result<Self, PolyError> {
        Self::from_terms(reg, [(Monomial::one(), C::one())], 1)
    }

    pub fn registry(&self) -> Option<&Arc<VarRegistry>> {
        self.vars.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Power `k` of the denominator `(eps^2 - eps)^k`.
    pub fn denom_power(&self) -> u32 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if `self` is a constant (no variables, no denominator).
    pub fn as_constant(&self) -> Option<C> {
        if self.denom != 0 {
            return None;
        }
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of `m` in the numerator.
    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let vars = merge_vars(&self.vars, &other.vars)?;
        let k = self.denom.max(other.denom);
        let a = self.lift_numerator(k, &vars)?;
        let b = other.lift_numerator(k, &vars)?;
        let mut terms = a;
        for (m, c) in b {
            add_term(&mut terms, m, c);
        }
        let mut p = Poly {
            vars,
            terms,
            denom: k,
        };
        p.canonicalize();
        Ok(p)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let vars = merge_vars(&self.vars, &other.vars)?;
        let mut p = Poly {
            vars,
            terms: mul_terms(&self.terms, &other.terms),
            denom: self.denom + other.denom,
        };
        p.canonicalize();
        Ok(p)
    }

    pub fn neg_ref(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
            denom: self.denom,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
            denom: self.denom,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(C::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by `eps^2 - eps`: increments the denominator power, then
    /// re-canonicalizes.
    pub fn localize_divide(&self) -> Result<Self, PolyError> {
        let reg = self.vars.as_ref().ok_or(PolyError::MissingEpsilon)?;
        if reg.eps_index().is_none() {
            return Err(PolyError::MissingEpsilon);
        }
        let mut p = self.clone();
        p.denom += 1;
        p.canonicalize();
        Ok(p)
    }

    /// Substitutes variables by polynomials over the same registry.
    ///
    /// When the element carries a denominator and `eps` is bound, the bound
    /// value must be a constant `c` with `c^2 - c` invertible.
    pub fn substitute(&self, bindings: &HashMap<usize, Poly<C>>) -> Result<Self, PolyError> {
        let eps = self.vars.as_ref().and_then(|r| r.eps_index());
        let eps_bound = eps.and_then(|e| bindings.get(&e));
        let mut denom_factor: Option<C> = None;
        if self.denom > 0 {
            if let Some(b) = eps_bound {
                let c = b.as_constant().ok_or(PolyError::NonScalarEpsilon)?;
                let d = c.clone() * c.clone() - c.clone();
                let inv = d.inverse().ok_or_else(|| PolyError::SingularEpsilon(c.to_string()))?;
                denom_factor = Some(inv);
            }
        }
        let mut vars = self.vars.clone();
        for b in bindings.values() {
            vars = merge_vars(&vars, &b.vars)?;
        }
        let mut power_cache: HashMap<(usize, u16), Poly<C>> = HashMap::new();
        let mut acc = Poly::<C>::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            term.vars = vars.clone();
            let mut rest = Monomial::one();
            for (var, e) in m.support() {
                if let Some(b) = bindings.get(&var) {
                    let pw = power_cache
                        .entry((var, e))
                        .or_insert_with(|| b.pow(e as u32))
                        .clone();
                    term = term.checked_mul(&pw)?;
                } else {
                    rest = rest.with_exponent(var, e);
                }
            }
            if !rest.is_one() {
                let mono = Poly {
                    vars: vars.clone(),
                    terms: BTreeMap::from([(rest, C::one())]),
                    denom: 0,
                };
                term = term.checked_mul(&mono)?;
            }
            acc = acc.checked_add(&term)?;
        }
        if self.denom > 0 {
            match denom_factor {
                Some(inv) => {
                    let mut f = C::one();
                    for _ in 0..self.denom {
                        f = f * inv.clone();
                    }
                    acc = acc.scale(&f);
                }
                None => {
                    let mut p = acc;
                    if p.vars.is_none() {
                        p.vars = self.vars.clone();
                    }
                    p.denom += self.denom;
                    p.canonicalize();
                    acc = p;
                }
            }
        }
        Ok(acc)
    }

    /// Substitutes by variable name.
    pub fn substitute_named(&self, bindings: &[(&str, Poly<C>)]) -> Result<Self, PolyError> {
        let reg = match &self.vars {
            Some(r) => r.clone(),
            None => return Ok(self.clone()),
        };
        let mut map = HashMap::new();
        for (name, p) in bindings {
            let i = reg
                .index(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            map.insert(i, p.clone());
        }
        self.substitute(&map)
    }

    /// Multiplies the numerator by `(eps^2-eps)^(k - denom)` so that it sits over `(eps^2-eps)^k`.
    fn lift_numerator(
        &self,
        k: u32,
        vars: &Option<Arc<VarRegistry>>,
    ) -> Result<BTreeMap<Monomial, C>, PolyError> {
        if k == self.denom {
            return Ok(self.terms.clone());
        }
        let eps = vars
            .as_ref()
            .and_then(|r| r.eps_index())
            .ok_or(PolyError::MissingEpsilon)?;
        let d = eps_sq_minus_eps::<C>(eps);
        let mut t = self.terms.clone();
        for _ in self.denom..k {
            t = mul_terms(&t, &d);
        }
        Ok(t)
    }

    /// Cancels common factors of `eps^2 - eps` between numerator and denominator.
    fn canonicalize(&mut self) {
        if self.terms.is_empty() {
            self.denom = 0;
            return;
        }
        if self.denom == 0 {
            return;
        }
        let eps = match self.vars.as_ref().and_then(|r| r.eps_index()) {
            Some(e) => e,
            None => return,
        };
        while self.denom > 0 {
            match divide_by_eps_sq_minus_eps(&self.terms, eps) {
                Some(q) => {
                    self.terms = q;
                    self.denom -= 1;
                }
                None => break,
            }
        }
    }
}

fn add_term<C: Scalar>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(x) => {
            let s = x.clone() + c;
            if s.is_zero() {
                map.remove(&m);
            } else {
                *x = s;
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

fn mul_terms<C: Scalar>(a: &BTreeMap<Monomial, C>, b: &BTreeMap<Monomial, C>) -> BTreeMap<Monomial, C> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, ma.mul(mb), ca.clone() * cb.clone());
        }
    }
    out
}

fn eps_sq_minus_eps<C: Scalar>(eps: usize) -> BTreeMap<Monomial, C> {
    let mut t = BTreeMap::new();
    t.insert(Monomial::var(eps, 2), C::one());
    t.insert(Monomial::var(eps, 1), -C::one());
    t
}

/// Exact quotient by `eps*(eps-1)` if it divides the numerator.
fn divide_by_eps_sq_minus_eps<C: Scalar>(
    terms: &BTreeMap<Monomial, C>,
    eps: usize,
) -> Option<BTreeMap<Monomial, C>> {
    // divisibility by eps
    if terms.keys().any(|m| m.exponent(eps) == 0) {
        return None;
    }
    // group by the eps-free part, then divide each group by (eps - 1)
    let mut groups: BTreeMap<Monomial, BTreeMap<u16, C>> = BTreeMap::new();
    for (m, c) in terms {
        let e = m.exponent(eps) - 1;
        groups
            .entry(m.with_exponent(eps, 0))
            .or_default()
            .insert(e, c.clone());
    }
    let mut out = BTreeMap::new();
    for (rest, coeffs) in groups {
        // sum of coefficients must vanish (value at eps = 1)
        let total = coeffs.values().fold(C::zero(), |a, c| a + c.clone());
        if !total.is_zero() {
            return None;
        }
        // synthetic division: q_{j-1} = sum_{i >= j} c_i
        let top = *coeffs.keys().next_back().unwrap();
        let mut suffix = C::zero();
        for j in (1..=top).rev() {
            if let Some(c) = coeffs.get(&j) {
                suffix = suffix + c.clone();
            }
            add_term(&mut out, rest.with_exponent(eps, j - 1), suffix.clone());
        }
    }
    Some(out)
}

impl<C: Scalar> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.denom == other.denom && self.terms == other.terms
    }
}

impl<C: Scalar> Eq for Poly<C> {}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_monomial(m: &Monomial, vars: Option<&Arc<VarRegistry>>) -> String {
    m.support()
        .map(|(i, e)| {
            let name = vars
                .and_then(|r| r.names().get(i).cloned())
                .unwrap_or_else(|| format!("x{}", i));
            if e == 1 {
                name
            } else {
                format!("{}^{}", name, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        // leading term first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, self.vars.as_ref());
            if mono.is_empty() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", mag, mono));
            }
        }
        if self.denom > 0 {
            let eps = self
                .vars
                .as_ref()
                .and_then(|r| r.eps_index().map(|i| r.names()[i].clone()))
                .unwrap_or_else(|| "eps".into());
            let d = if self.denom == 1 {
                format!("({eps}^2 - {eps})")
            } else {
                format!("({eps}^2 - {eps})^{}", self.denom)
            };
            write!(f, "({})/{}", s, d)
        } else {
            write!(f, "{}", s)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$checked(rhs).expect("polynomials over different registries")
            }
        }
        impl<C: Scalar> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Scalar> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Scalar> Ring for Poly<C> {
    fn from_int(n: i64) -> Self {
        Poly::from_int(n)
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        C::from_int(k).inverse().map(|inv| self.scale(&inv))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}
