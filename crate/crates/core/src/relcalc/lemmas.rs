use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{reduce_vec, Echelon};
use super::nmaps::rational_to_i64;
use super::{inverse_word, NMapTable, RelError, SplitRealization};
use crate::polyring::{Fp, VarRegistry};
use crate::rootcore::{add_coords, scale_coords, Series};
use crate::{QPoly, Rational, Ring, Scalar};

/// `X_A(u + u') = X_A(u) X_A(u') prod_{i >= 2} X_{iA}(u_i)`.
#[derive(Debug, Clone)]
pub struct SumFormulaReport {
    pub a: Vec<i32>,
    /// Variables `u0, ...` for `u` and `w0, ...` for `u'`.
    pub registry: std::sync::Arc<VarRegistry>,
    /// `(i, u_i)` for every multiple `iA` (`i >= 2`) that is a relative root.
    pub corrections: Vec<(u32, Vec<QPoly>)>,
}

impl SumFormulaReport {
    pub fn is_additive(&self) -> bool {
        self.corrections
            .iter()
            .all(|(_, w)| w.iter().all(|p| p.is_zero()))
    }
}

impl SplitRealization {
    pub fn check_sum_formula(&self, a: &[i32]) -> Result<SumFormulaReport, RelError> {
        let n = self.fiber(a)?.len();
        let mut names: Vec<String> = (0..n).map(|k| format!("u{k}")).collect();
        names.extend((0..n).map(|k| format!("w{k}")));
        let reg = VarRegistry::new(names).map_err(|e| RelError::Precondition(e.to_string()))?;
        let var = |s: String| QPoly::var(&reg, &s).expect("registered");
        let u: Vec<QPoly> = (0..n).map(|k| var(format!("u{k}"))).collect();
        let w: Vec<QPoly> = (0..n).map(|k| var(format!("w{k}"))).collect();
        let uw: Vec<QPoly> = u.iter().zip(&w).map(|(x, y)| x.add_ref(y)).collect();

        let multiples: Vec<u32> = (1..=4)
            .filter(|&i| self.rrs().contains(&scale_coords(i as i32, a)))
            .collect();
        let order: Vec<usize> = multiples
            .iter()
            .flat_map(|&i| self.fiber(&scale_coords(i as i32, a)).unwrap().to_vec())
            .collect();
        let xu = self.x_word(a, &u)?;
        let xw = self.x_word(a, &w)?;
        let mut word = inverse_word(&xw);
        word.extend(inverse_word(&xu));
        word.extend(self.x_word(a, &uw)?);
        let coeffs = self.cb().collect_with_order(&word, &order)?;

        let mut corrections = Vec::new();
        let mut pos = 0;
        for &i in &multiples {
            let m = self.fiber(&scale_coords(i as i32, a))?.len();
            let part = coeffs[pos..pos + m].to_vec();
            pos += m;
            if i == 1 {
                if part.iter().any(|p| !p.is_zero()) {
                    return Err(RelError::Precondition(format!(
                        "X_A is not additive modulo higher multiples for {a:?}"
                    )));
                }
            } else {
                corrections.push((i, part));
            }
        }

        // re-verify as a matrix identity
        let mut rhs = xu;
        rhs.extend(xw);
        for (i, part) in &corrections {
            rhs.extend(self.x_word(&scale_coords(*i as i32, a), part)?);
        }
        if self.cb().word_matrix(&self.x_word(a, &uw)?) != self.cb().word_matrix(&rhs) {
            return Err(RelError::Precondition(format!("sum formula fails for {a:?}")));
        }
        Ok(SumFormulaReport {
            a: a.to_vec(),
            registry: reg,
            corrections,
        })
    }
}

/// Hypotheses under which `N_{AB11}` is surjective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum N11Case {
    /// Every structure constant of the absolute system is a unit once the
    /// given primes are inverted.
    A { inverted_primes: Vec<u32> },
    /// `A != B` and `A - B` is not a relative root.
    B,
    /// Multiply laced and the fiber of `A + B` consists of short roots.
    C,
    /// Multiply laced and the fibers of `A`, `B` contain long roots with a
    /// root sum.
    D,
}

impl N11Case {
    pub fn label(&self) -> &'static str {
        match self {
            N11Case::A { .. } => "a",
            N11Case::B => "b",
            N11Case::C => "c",
            N11Case::D => "d",
        }
    }
}

/// `N_{AB11}(e_alpha, e_beta) = coefficient * e_gamma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N11Witness {
    pub gamma: Vec<i32>,
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N11Report {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub case: N11Case,
    pub witnesses: Vec<N11Witness>,
    /// Case (d): every long root over `A + B` is a sum of long roots over `A` and `B`.
    pub long_decomposition: Option<bool>,
}

fn prime_factors(mut n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p as u32);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

fn is_unit(c: i64, inverted: &[u32]) -> bool {
    c != 0
        && prime_factors(c.unsigned_abs())
            .iter()
            .all(|p| inverted.contains(p))
}

impl SplitRealization {
    fn absolute_coords(&self, fiber_root: usize) -> &[i32] {
        &self.rrs().root_system().root(fiber_root).coords
    }

    fn is_bcf(&self) -> bool {
        matches!(
            self.rrs().root_system().root_type().series,
            Series::B | Series::C | Series::F
        )
    }

    /// Primes dividing some structure constant `N_{alpha, beta}`.
    pub fn structure_constant_primes(&self) -> Vec<u32> {
        let n = self.rrs().root_system().len();
        let mut primes = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                let c = self.cb().n(x, y);
                if c != 0 {
                    primes.extend(prime_factors(c.unsigned_abs()));
                }
            }
        }
        primes.into_iter().collect()
    }

    /// Long roots `alpha` over `A`, `beta` over `B` with `alpha + beta` a root.
    fn long_pairs(&self, a: &[i32], b: &[i32]) -> Result<Vec<(usize, usize)>, RelError> {
        let rs = self.rrs().root_system();
        let mut out = Vec::new();
        for (ia, &x) in self.fiber(a)?.iter().enumerate() {
            for (ib, &y) in self.fiber(b)?.iter().enumerate() {
                if rs.root(x).is_long()
                    && rs.root(y).is_long()
                    && rs.contains(&add_coords(&rs.root(x).coords, &rs.root(y).coords))
                {
                    out.push((ia, ib));
                }
            }
        }
        Ok(out)
    }

    /// Checks the hypothesis of one case, describing the failure otherwise.
    pub fn n11_hypothesis(&self, a: &[i32], b: &[i32], case: &N11Case) -> Result<(), RelError> {
        let sum = add_coords(a, b);
        self.fiber(a)?;
        self.fiber(b)?;
        if !self.rrs().contains(&sum) {
            return Err(RelError::Precondition(format!("{a:?} + {b:?} is not a relative root")));
        }
        if Self::opposite_collinear(a, b) {
            return Err(RelError::OppositeCollinear(a.to_vec(), b.to_vec()));
        }
        let rs = self.rrs().root_system();
        let fail = |s: &str| Err(RelError::CaseNotApplicable(s.to_string()));
        match case {
            N11Case::A { inverted_primes } => {
                let bad: Vec<u32> = self
                    .structure_constant_primes()
                    .into_iter()
                    .filter(|p| !inverted_primes.contains(p))
                    .collect();
                if !bad.is_empty() {
                    return fail(&format!("structure constants divisible by {bad:?}"));
                }
            }
            N11Case::B => {
                let diff: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if a == b || self.rrs().contains(&diff) {
                    return fail("A = B or A - B is a relative root");
                }
            }
            N11Case::C => {
                if !self.is_bcf() {
                    return fail("absolute type is not B, C or F");
                }
                if self.fiber(&sum)?.iter().any(|&g| rs.root(g).is_long()) {
                    return fail("the fiber of A + B contains long roots");
                }
            }
            N11Case::D => {
                if !self.is_bcf() {
                    return fail("absolute type is not B, C or F");
                }
                if self.long_pairs(a, b)?.is_empty() {
                    return fail("no long roots over A and B with a root sum");
                }
            }
        }
        Ok(())
    }

    /// Cases whose hypotheses hold for `(A, B)`, with `inverted` used for case (a).
    pub fn applicable_n11_cases(&self, a: &[i32], b: &[i32], inverted: &[u32]) -> Vec<N11Case> {
        [
            N11Case::A {
                inverted_primes: inverted.to_vec(),
            },
            N11Case::B,
            N11Case::C,
            N11Case::D,
        ]
        .into_iter()
        .filter(|c| self.n11_hypothesis(a, b, c).is_ok())
        .collect()
    }

    /// For every root over `A + B`, a pair of basis vectors hit with a unit
    /// coefficient, re-verified by evaluating the computed map.
    pub fn check_n11_surjectivity(
        &self,
        a: &[i32],
        b: &[i32],
        case: N11Case,
    ) -> Result<N11Report, RelError> {
        self.n11_hypothesis(a, b, &case)?;
        let table = self.nmaps(a, b)?;
        self.check_n11_with_table(&table, case)
    }

    pub fn check_n11_with_table(&self, table: &NMapTable, case: N11Case) -> Result<N11Report, RelError> {
        let (a, b) = (&table.a, &table.b);
        let sum = add_coords(a, b);
        let entry = table
            .entry(1, 1)
            .ok_or_else(|| RelError::NoUnitWitness(sum.clone()))?;
        let inverted: Vec<u32> = match &case {
            N11Case::A { inverted_primes } => inverted_primes.clone(),
            _ => Vec::new(),
        };
        let rs = self.rrs().root_system();
        let fa = self.fiber(a)?;
        let fb = self.fiber(b)?;
        let u_basis = |k: usize, n: usize| -> Vec<QPoly> {
            (0..n).map(|x| QPoly::from_int((x == k) as i64)).collect()
        };
        let mut witnesses = Vec::new();
        for (k, &g) in self.fiber(&sum)?.iter().enumerate() {
            let gamma = &rs.root(g).coords;
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for ia in 0..fa.len() {
                for ib in 0..fb.len() {
                    if add_coords(self.absolute_coords(fa[ia]), self.absolute_coords(fb[ib])) == *gamma {
                        cands.push((ia, ib));
                    }
                }
            }
            if case == N11Case::D {
                // prefer long pairs, as in the Weyl group argument
                cands.sort_by_key(|&(ia, ib)| !(rs.root(fa[ia]).is_long() && rs.root(fb[ib]).is_long()));
            }
            let hit = cands.into_iter().find_map(|(ia, ib)| {
                let c = table.coefficient(entry, k, &[(ia, 1)], &[(ib, 1)]);
                is_unit(c, &inverted).then_some((ia, ib, c))
            });
            let (ia, ib, c) = hit.ok_or_else(|| RelError::NoUnitWitness(gamma.clone()))?;
            let value = table.evaluate(entry, &u_basis(ia, fa.len()), &u_basis(ib, fb.len()))?;
            let expected: Vec<QPoly> = (0..value.len())
                .map(|x| QPoly::from_int(if x == k { c } else { 0 }))
                .collect();
            if value != expected {
                return Err(RelError::Precondition(format!(
                    "witness for {gamma:?} does not re-evaluate"
                )));
            }
            witnesses.push(N11Witness {
                gamma: gamma.clone(),
                alpha: self.absolute_coords(fa[ia]).to_vec(),
                beta: self.absolute_coords(fb[ib]).to_vec(),
                coefficient: c,
            });
        }
        let long_decomposition = (case == N11Case::D).then(|| {
            let pairs = self.long_pairs(a, b).unwrap_or_default();
            self.fiber(&sum).unwrap().iter().all(|&g| {
                !rs.root(g).is_long()
                    || pairs.iter().any(|&(ia, ib)| {
                        add_coords(self.absolute_coords(fa[ia]), self.absolute_coords(fb[ib]))
                            == rs.root(g).coords
                    })
            })
        });
        if long_decomposition == Some(false) {
            return Err(RelError::Precondition(
                "a long root over A + B is not a sum of long roots".into(),
            ));
        }
        Ok(N11Report {
            a: a.clone(),
            b: b.clone(),
            case,
            witnesses,
            long_decomposition,
        })
    }
}

/// Rank of a family of vectors over one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub field: String,
    pub rank: usize,
    pub dim: usize,
    /// The evaluated vectors fell short and the monomial coefficients were added.
    pub fallback: bool,
}

impl SpanReport {
    pub fn is_full(&self) -> bool {
        self.rank == self.dim
    }
}

/// Spanning check for one pair `(A, B)` with `A - B`, `A + B` relative roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningReport {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    /// `2B` is not a relative root, so the middle summand vanishes.
    pub middle_empty: bool,
    pub fields: Vec<SpanReport>,
}

impl SpanningReport {
    pub fn is_full(&self) -> bool {
        self.fields.iter().all(SpanReport::is_full)
    }
}

/// Argument case for one root of the spanning target, with a unit coefficient
/// from the map the proof uses for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Case {
    pub gamma: Vec<i32>,
    pub case: String,
    pub monomial: String,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    pub l: usize,
    pub fields: Vec<SpanReport>,
    pub cases: Vec<Lemma3Case>,
}

impl Lemma3Report {
    pub fn is_full(&self) -> bool {
        self.fields.iter().all(SpanReport::is_full)
    }
}

/// Number of random parameter vectors per check.
const RANDOM_SAMPLES: usize = 100;

/// Value of `p` at rational points, `vals` indexed like the registry.
fn eval(p: &QPoly, vals: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (var, e) in m.support() {
            for _ in 0..e {
                t = t.mul_ref(&vals[var]);
            }
        }
        acc += t;
    }
    acc
}

/// `vals` for a table: `u` then `v`, `lam` and `mu` set to zero.
fn point(table: &NMapTable, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let mut vals: Vec<Rational> = u.iter().chain(v).cloned().collect();
    vals.resize(table.registry.len(), Rational::zero());
    vals
}

fn unit_vec(k: usize, n: usize) -> Vec<Rational> {
    (0..n).map(|x| Rational::from_int((x == k) as i64)).collect()
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::from_int(rng.gen_range(-9..=9))).collect()
}

/// Coefficient vectors, one per monomial, of the terms of `coords` that
/// contain the variable `var` to the first power.
fn monomial_vectors(coords: &[QPoly], var: usize) -> Vec<Vec<Rational>> {
    let mut monos = BTreeSet::new();
    for p in coords {
        for (m, _) in p.terms() {
            if m.exponent(var) == 1 {
                monos.insert(m.clone());
            }
        }
    }
    monos
        .iter()
        .map(|m| coords.iter().map(|p| p.coefficient(m)).collect())
        .collect()
}

fn rank_over<C: Scalar>(
    field: &str,
    dim: usize,
    primary: &[Vec<Rational>],
    fallback: &[Vec<Rational>],
) -> SpanReport {
    let mut e = Echelon::<C>::new(dim);
    for v in primary {
        if let Some(r) = reduce_vec::<C>(v) {
            e.insert(&r);
        }
    }
    let mut used_fallback = false;
    if !e.is_full() && !fallback.is_empty() {
        used_fallback = true;
        for v in fallback {
            if let Some(r) = reduce_vec::<C>(v) {
                e.insert(&r);
            }
        }
    }
    SpanReport {
        field: field.to_string(),
        rank: e.rank(),
        dim,
        fallback: used_fallback,
    }
}

/// Ranks over Q, F2, F3 and F5.
fn ranks(dim: usize, primary: &[Vec<Rational>], fallback: &[Vec<Rational>]) -> Vec<SpanReport> {
    vec![
        rank_over::<Rational>("Q", dim, primary, fallback),
        rank_over::<Fp<2>>("F2", dim, primary, fallback),
        rank_over::<Fp<3>>("F3", dim, primary, fallback),
        rank_over::<Fp<5>>("F5", dim, primary, fallback),
    ]
}

/// Values of a bilinear entry on all pairs of basis vectors.
fn basis_images(table: &NMapTable, i: u32, j: u32, pad_before: usize, pad_after: usize) -> Vec<Vec<Rational>> {
    let Some(e) = table.entry(i, j) else {
        return Vec::new();
    };
    let nu = table.u_vars().len();
    let nv = table.v_vars().len();
    let mut out = Vec::new();
    for x in 0..nu {
        for y in 0..nv {
            let vals = point(table, &unit_vec(x, nu), &unit_vec(y, nv));
            let mut vec = vec![Rational::zero(); pad_before];
            vec.extend(e.coords.iter().map(|p| eval(p, &vals)));
            vec.extend(std::iter::repeat_n(Rational::zero(), pad_after));
            out.push(vec);
        }
    }
    out
}

impl SplitRealization {
    /// `im N_{AB11} + im N_{A-B,2B,1,1} + sum_v im N_{A-B,B,1,2}(-, v)`
    /// compared with `V_{A+B}` over Q, F2, F3 and F5.
    pub fn check_spanning_lemma2_2(&self, a: &[i32], b: &[i32], seed: u64) -> Result<SpanningReport, RelError> {
        let sum = add_coords(a, b);
        let diff: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        if !self.rrs().contains(&sum) || !self.rrs().contains(&diff) {
            return Err(RelError::Precondition("A - B and A + B must be relative roots".into()));
        }
        let comp = self.rrs().component_of(a).expect("relative root");
        if self.rrs().classify(comp).map(|t| t.to_string()) == Ok("G2".to_string()) {
            return Err(RelError::Precondition("component of type G2".into()));
        }
        let dim = self.fiber(&sum)?.len();
        let mut primary = basis_images(&self.nmaps(a, b)?, 1, 1, 0, 0);
        let two_b = scale_coords(2, b);
        let middle_empty = !self.rrs().contains(&two_b);
        if !middle_empty {
            primary.extend(basis_images(&self.nmaps(&diff, &two_b)?, 1, 1, 0, 0));
        }
        let mut fallback = Vec::new();
        let t = self.nmaps(&diff, b)?;
        if let Some(e) = t.entry(1, 2) {
            let nu = t.u_vars().len();
            let nv = t.v_vars().len();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut vs: Vec<Vec<Rational>> = (0..nv).map(|k| unit_vec(k, nv)).collect();
            vs.extend((0..RANDOM_SAMPLES).map(|_| random_vec(&mut rng, nv)));
            for x in 0..nu {
                for v in &vs {
                    let vals = point(&t, &unit_vec(x, nu), v);
                    primary.push(e.coords.iter().map(|p| eval(p, &vals)).collect());
                }
                fallback.extend(monomial_vectors(&e.coords, x));
            }
        }
        Ok(SpanningReport {
            a: a.to_vec(),
            b: b.to_vec(),
            middle_empty,
            fields: ranks(dim, &primary, &fallback),
        })
    }

    /// Every pair satisfying the hypotheses of the spanning lemma; empty
    /// when they never hold.
    pub fn spanning_lemma2_2_all(&self, seed: u64) -> Result<Vec<SpanningReport>, RelError> {
        let mut out = Vec::new();
        for (a, b) in self.valid_pairs() {
            let sum = add_coords(&a, &b);
            let diff: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            if !self.rrs().contains(&sum) || !self.rrs().contains(&diff) {
                continue;
            }
            let comp = self.rrs().component_of(&a).expect("relative root");
            if self.rrs().classify(comp).map(|t| t.to_string()) == Ok("G2".to_string()) {
                continue;
            }
            out.push(self.check_spanning_lemma2_2(&a, &b, seed)?);
        }
        Ok(out)
    }
}

/// `C_l` with `J = {alpha_{l/2}, alpha_l}`: the sum
/// `im (0, N_{A1,A1+A2,11}) + sum_v im f_v` fills `V_{A1+A2} + V_{2A1+A2}`.
pub fn check_spanning_lemma3(l: usize, seed: u64) -> Result<Lemma3Report, RelError> {
    if l < 4 || !l.is_multiple_of(2) {
        return Err(RelError::Precondition(format!(
            "l = {l}: need an even l >= 4 so that 2i = l"
        )));
    }
    let spec = format!("C{l} gamma=trivial levi={},{l}", l / 2);
    let sr = SplitRealization::parse(&spec)?;
    let (a1, a2) = (vec![1, 0], vec![0, 1]);
    let (s1, s2) = (vec![1, 1], vec![2, 1]);
    let d1 = sr.fiber(&s1)?.len();
    let d2 = sr.fiber(&s2)?.len();
    let dim = d1 + d2;

    let t_long = sr.nmaps(&a1, &s1)?;
    let mut primary = basis_images(&t_long, 1, 1, d1, 0);
    let t = sr.nmaps(&a1, &a2)?;
    let n11 = t.entry(1, 1).ok_or_else(|| RelError::NoUnitWitness(s1.clone()))?;
    let n21 = t.entry(2, 1).ok_or_else(|| RelError::NoUnitWitness(s2.clone()))?;
    let nu = t.u_vars().len();
    let nv = t.v_vars().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vs: Vec<Vec<Rational>> = (0..nu).map(|k| unit_vec(k, nu)).collect();
    vs.extend((0..RANDOM_SAMPLES).map(|_| random_vec(&mut rng, nu)));
    let mut fallback = Vec::new();
    let both: Vec<QPoly> = n11.coords.iter().chain(&n21.coords).cloned().collect();
    for y in 0..nv {
        for v in &vs {
            let vals = point(&t, v, &unit_vec(y, nv));
            primary.push(both.iter().map(|p| eval(p, &vals)).collect());
        }
        fallback.extend(monomial_vectors(&both, nu + y));
    }
    let fields = ranks(dim, &primary, &fallback);

    let rs = sr.rrs().root_system();
    let mut cases = Vec::new();
    let alpha_l = rs.simple_root(l - 1);
    let fa2 = sr.fiber(&a2)?;
    // the v-variable of a monomial of N_{A1,A2,ij} is not the one of alpha_l
    let avoids_alpha_l = |m: &crate::polyring::Monomial| {
        m.support()
            .filter(|&(var, _)| var >= nu)
            .all(|(var, _)| rs.root(fa2[var - nu]).coords != alpha_l)
    };
    let unit_term = |p: &QPoly, reg: &std::sync::Arc<VarRegistry>, long: bool| -> Option<(String, i64)> {
        p.terms().find_map(|(m, c)| {
            let c = rational_to_i64(c);
            (c.abs() == 1 && (!long || avoids_alpha_l(m)))
                .then(|| (QPoly::monomial(reg, m.clone(), Rational::from_int(1)).to_string(), c))
        })
    };
    for (k, &g) in sr.fiber(&s2)?.iter().enumerate() {
        let gamma = rs.root(g).coords.clone();
        let (label, hit) = if rs.root(g).is_long() {
            // long gamma = 2 alpha + beta with beta over A2 other than alpha_l
            ("long over 2A1+A2", unit_term(&n21.coords[k], &t.registry, true))
        } else {
            (
                "short over 2A1+A2",
                unit_term(&t_long.entry(1, 1).expect("nonempty").coords[k], &t_long.registry, false),
            )
        };
        let (monomial, coefficient) = hit.ok_or_else(|| RelError::NoUnitWitness(gamma.clone()))?;
        cases.push(Lemma3Case {
            gamma,
            case: label.to_string(),
            monomial,
            coefficient,
        });
    }
    for (k, &g) in sr.fiber(&s1)?.iter().enumerate() {
        let gamma = rs.root(g).coords.clone();
        let (monomial, coefficient) =
            unit_term(&n11.coords[k], &t.registry, false).ok_or_else(|| RelError::NoUnitWitness(gamma.clone()))?;
        cases.push(Lemma3Case {
            gamma,
            case: "over A1+A2".to_string(),
            monomial,
            coefficient,
        });
    }
    Ok(Lemma3Report { l, fields, cases })
}
