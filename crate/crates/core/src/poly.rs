//! Sparse multivariate polynomials over `Q(i)` with named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;

/// Sort key of a variable name in the fixed global order
/// `x < y < z < t < w < s < u1 < u2 < ... < z1 < z2 < ... < others`.
pub fn var_rank(name: &str) -> (u8, u64, &str) {
    match name {
        "x" => return (0, 0, ""),
        "y" => return (0, 1, ""),
        "z" => return (0, 2, ""),
        "t" => return (0, 3, ""),
        "w" => return (0, 4, ""),
        "s" => return (0, 5, ""),
        _ => {}
    }
    for (group, prefix) in [(1u8, "u"), (2u8, "z")] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                if let Ok(k) = rest.parse::<u64>() {
                    return (group, k, "");
                }
            }
        }
    }
    (3, 0, name)
}

pub fn cmp_vars(a: &str, b: &str) -> Ordering {
    var_rank(a).cmp(&var_rank(b))
}

/// A polynomial `sum c_e * prod v_k^{e_k}`.
///
/// `vars` holds exactly the variables that occur, sorted by [`var_rank`];
/// `terms` never stores a zero coefficient. Both invariants make the derived
/// equality the mathematical one.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Q::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Q::one(), &[(name, 1)])
    }

    /// `c * prod v^e`. Repeated variables multiply.
    pub fn monomial(c: Q, powers: &[(&str, u32)]) -> Self {
        let mut vars: Vec<String> = Vec::new();
        for (v, e) in powers {
            if *e > 0 && !vars.iter().any(|w| w == v) {
                vars.push(v.to_string());
            }
        }
        vars.sort_by(|a, b| cmp_vars(a, b));
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            if let Some(k) = vars.iter().position(|w| w == v) {
                exps[k] += e;
            }
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { vars, terms }.normalized()
    }

    /// Builds from `(powers, coefficient)` pairs; like terms are summed.
    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<(&'a str, u32)>, Q)>,
    {
        let mut acc = MultiPoly::zero();
        for (powers, c) in terms {
            acc = &acc + &MultiPoly::monomial(c, &powers);
        }
        acc
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.vars.iter().any(|w| w == v)
    }

    /// The constant, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&k| k == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// Iterates terms as `(powers, coefficient)` in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Vec<(&str, u32)>, &Q)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let powers = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v.as_str(), k))
                .collect();
            (powers, c)
        })
    }

    /// Coefficient of an exact monomial.
    pub fn coeff(&self, powers: &[(&str, u32)]) -> Q {
        let m = MultiPoly::monomial(Q::one(), powers);
        let Some((key, _)) = m.terms.iter().next() else {
            return Q::zero();
        };
        let Some(full) = self.expand_key(&m.vars, key) else {
            return Q::zero();
        };
        self.terms.get(&full).cloned().unwrap_or_else(Q::zero)
    }

    fn expand_key(&self, vars: &[String], key: &[u32]) -> Option<Vec<u32>> {
        let mut out = vec![0u32; self.vars.len()];
        for (v, &e) in vars.iter().zip(key) {
            let k = self.vars.iter().position(|w| w == v)?;
            out[k] = e;
        }
        Some(out)
    }

    fn index_of(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        match self.index_of(v) {
            Some(k) => self.terms.keys().map(|e| e[k]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, v: &str) -> u32 {
        match self.index_of(v) {
            Some(k) => self.terms.keys().map(|e| e[k]).min().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Total degree counting only variables other than `skip`.
    pub fn total_degree_without(&self, skip: &str) -> u32 {
        let k = self.index_of(skip);
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|(j, _)| Some(*j) != k)
                    .map(|(_, &d)| d)
                    .sum::<u32>()
            })
            .max()
            .unwrap_or(0)
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|k| self.terms.keys().any(|e| e[k] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                let e2 = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(k, _)| k)
                    .collect();
                (e2, c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    /// Re-expresses the exponent vectors over the sorted union of variables.
    fn unify(a: &MultiPoly, b: &MultiPoly) -> (Vec<String>, Vec<usize>, Vec<usize>) {
        if a.vars == b.vars {
            let idx: Vec<usize> = (0..a.vars.len()).collect();
            return (a.vars.clone(), idx.clone(), idx);
        }
        let mut vars: Vec<String> = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort_by(|p, q| cmp_vars(p, q));
        let pos = |v: &String| vars.iter().position(|w| w == v).unwrap();
        let ia = a.vars.iter().map(pos).collect();
        let ib = b.vars.iter().map(pos).collect();
        (vars, ia, ib)
    }

    fn remap(e: &[u32], idx: &[usize], n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for (k, &d) in e.iter().enumerate() {
            out[idx[k]] = d;
        }
        out
    }

    fn combine(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        if self.vars == other.vars {
            let mut terms = self.terms.clone();
            for (e, c) in &other.terms {
                match terms.get_mut(e.as_slice()) {
                    Some(slot) if negate => *slot -= c,
                    Some(slot) => *slot += c,
                    None => {
                        terms.insert(e.clone(), if negate { -c } else { c.clone() });
                    }
                }
            }
            return MultiPoly {
                vars: self.vars.clone(),
                terms,
            }
            .normalized();
        }
        let (vars, ia, ib) = Self::unify(self, other);
        let n = vars.len();
        let mut terms: BTreeMap<Vec<u32>, Q> = self
            .terms
            .iter()
            .map(|(e, c)| (Self::remap(e, &ia, n), c.clone()))
            .collect();
        for (e, c) in &other.terms {
            let key = Self::remap(e, &ib, n);
            let slot = terms.entry(key).or_insert_with(Q::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        MultiPoly { vars, terms }.normalized()
    }

    fn product(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let (vars, ia, ib) = Self::unify(self, other);
        let n = vars.len();
        let a: Vec<(Vec<u32>, &Q)> = self
            .terms
            .iter()
            .map(|(e, c)| (Self::remap(e, &ia, n), c))
            .collect();
        let b: Vec<(Vec<u32>, &Q)> = other
            .terms
            .iter()
            .map(|(e, c)| (Self::remap(e, &ib, n), c))
            .collect();
        // exponents packed 16 bits per variable when the product fits
        let max_a = a.iter().flat_map(|(e, _)| e.iter()).max().copied().unwrap_or(0);
        let max_b = b.iter().flat_map(|(e, _)| e.iter()).max().copied().unwrap_or(0);
        if n <= 8 && max_a + max_b < 1 << 16 {
            let pack = |e: &[u32]| e.iter().fold(0u128, |k, &d| (k << 16) | d as u128);
            let pa: Vec<(u128, &Q)> = a.iter().map(|(e, c)| (pack(e), *c)).collect();
            let pb: Vec<(u128, &Q)> = b.iter().map(|(e, c)| (pack(e), *c)).collect();
            let mut acc: std::collections::HashMap<u128, Q> =
                std::collections::HashMap::with_capacity(pa.len() * pb.len() / 2 + 1);
            for (ka, ca) in &pa {
                for (kb, cb) in &pb {
                    let prod = *ca * *cb;
                    match acc.entry(ka + kb) {
                        std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &prod,
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(prod);
                        }
                    }
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let e = (0..n).map(|j| ((k >> (16 * (n - 1 - j))) & 0xffff) as u32).collect();
                    (e, c)
                })
                .collect();
            return MultiPoly { vars, terms }.normalized();
        }
        let mut acc: std::collections::HashMap<Vec<u32>, Q> =
            std::collections::HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = *ca * *cb;
                match acc.get_mut(&key) {
                    Some(slot) => *slot += &prod,
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        MultiPoly {
            vars,
            terms: acc.into_iter().collect(),
        }
        .normalized()
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Multiplies by `v^k`.
    pub fn shift_var(&self, v: &str, k: u32) -> MultiPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        self * &MultiPoly::monomial(Q::one(), &[(v, k)])
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: &str) -> MultiPoly {
        let Some(k) = self.index_of(v) else {
            return MultiPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[k] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[k] -= 1;
                (e2, c * &Q::from_int(e[k] as i64))
            })
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized()
    }

    /// Splits as `sum_k c_k * v^k` with `c_k` free of `v`.
    pub fn coefficients_in(&self, v: &str) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        let Some(k) = self.index_of(v) else {
            if !self.is_zero() {
                out.insert(0, self.clone());
            }
            return out;
        };
        let mut buckets: BTreeMap<u32, BTreeMap<Vec<u32>, Q>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[k];
            e2[k] = 0;
            buckets.entry(d).or_default().insert(e2, c.clone());
        }
        for (d, terms) in buckets {
            out.insert(
                d,
                MultiPoly {
                    vars: self.vars.clone(),
                    terms,
                }
                .normalized(),
            );
        }
        out
    }

    /// Coefficient polynomial of `v^k`.
    pub fn coefficient_of(&self, v: &str, k: u32) -> MultiPoly {
        self.coefficients_in(v).remove(&k).unwrap_or_default()
    }

    /// Drops every term whose `v`-exponent is at least `n` (reduction mod `v^n`).
    pub fn truncate(&self, v: &str, n: u32) -> MultiPoly {
        let Some(k) = self.index_of(v) else {
            return if n == 0 { MultiPoly::zero() } else { self.clone() };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[k] < n)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized()
    }

    /// Substitutes a constant for `v`.
    pub fn eval_var(&self, v: &str, value: &Q) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        let mut power = Q::one();
        let coeffs = self.coefficients_in(v);
        let mut last = 0u32;
        for (d, c) in coeffs {
            for _ in last..d {
                power = &power * value;
            }
            last = d;
            acc = &acc + &c.scale(&power);
        }
        acc
    }

    /// Evaluates a univariate polynomial (or any polynomial whose only
    /// variable is `v`) at a point.
    pub fn eval_univariate(&self, v: &str, value: &Q) -> Q {
        self.eval_var(v, value).constant_term()
    }

    /// Exact quotient by `v^k`.
    pub fn div_exact_var_power(&self, v: &str, k: u32) -> Result<MultiPoly> {
        if k == 0 {
            return Ok(self.clone());
        }
        let idx = self.index_of(v);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = idx.map(|j| e[j]).unwrap_or(0);
            if d < k {
                let witness = MultiPoly {
                    vars: self.vars.clone(),
                    terms: [(e.clone(), c.clone())].into_iter().collect(),
                };
                return Err(Error::NotDivisible {
                    k,
                    witness: witness.to_string(),
                });
            }
            let mut e2 = e.clone();
            e2[idx.unwrap()] -= k;
            terms.insert(e2, c.clone());
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized())
    }

    /// Exact quotient by `x^k`.
    pub fn div_exact_x_power(&self, k: u32) -> Result<MultiPoly> {
        self.div_exact_var_power("x", k)
    }

    /// Renames variables; the map must not merge two variables.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (powers, c) in self.terms() {
            let renamed: Vec<(&str, u32)> = powers
                .iter()
                .map(|(v, e)| (map.get(*v).map(|s| s.as_str()).unwrap_or(v), *e))
                .collect();
            acc = &acc + &MultiPoly::monomial(c.clone(), &renamed);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
        }
        .normalized()
    }

    /// Substitutes polynomials for variables simultaneously; variables not in
    /// `bindings` are left alone.
    pub fn compose(&self, bindings: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let laurent: BTreeMap<String, crate::laurent::XLaurent> = bindings
            .iter()
            .map(|(k, v)| (k.clone(), crate::laurent::XLaurent::from_poly(v.clone())))
            .collect();
        crate::laurent::substitute(self, &laurent)
            .to_poly()
            .expect("polynomial substitution stays polynomial")
    }

    /// Single-variable composition `p(v := q)`.
    pub fn compose_var(&self, v: &str, q: &MultiPoly) -> MultiPoly {
        let mut b = BTreeMap::new();
        b.insert(v.to_string(), q.clone());
        self.compose(&b)
    }

    /// Leading monomial in lex order (first variable in the global order most
    /// significant).
    pub fn leading_powers(&self) -> Option<Vec<(String, u32)>> {
        let (e, _) = self.terms.iter().next_back()?;
        Some(
            self.vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v.clone(), k))
                .collect(),
        )
    }

    /// Perturbs the coefficient of the `k`-th term (mod the term count) by `delta`.
    pub fn perturb_term(&self, k: usize, delta: &Q) -> MultiPoly {
        let mut out = self.clone();
        if out.terms.is_empty() {
            return MultiPoly::constant(delta.clone());
        }
        let key = out.terms.keys().nth(k % out.terms.len()).unwrap().clone();
        let slot = out.terms.get_mut(&key).unwrap();
        *slot += delta;
        out.normalized()
    }
}

impl From<Q> for MultiPoly {
    fn from(c: Q) -> Self {
        MultiPoly::constant(c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.combine(o, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.combine(o, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.product(o)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_power(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending lex order, e.g. `x*w^3 + 1/2*y*z - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (powers, c) in self.terms().rev() {
            let mono: Vec<String> = powers.iter().map(|(v, e)| fmt_power(v, *e)).collect();
            let mono = mono.join("*");
            // sign is pulled out for real and purely imaginary coefficients
            let neg = if c.is_real() {
                c.re().is_negative()
            } else {
                c.re().is_zero() && c.im().is_negative()
            };
            let mag = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                mag.to_expr_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", mag.to_expr_string(), mono)
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MultiPoly {
        MultiPoly::var("z")
    }

    #[test]
    fn add_constant() {
        let p = &z().pow(2) - &MultiPoly::int(1);
        assert_eq!(&p + &MultiPoly::int(1), z().pow(2));
        assert_eq!(p.to_string(), "z^2 - 1");
    }

    #[test]
    fn difference_of_squares() {
        let xw = &MultiPoly::var("x") * &MultiPoly::var("w");
        let p = &(&z() + &xw) * &(&z() - &xw);
        let expect = &z().pow(2) - &MultiPoly::monomial(Q::one(), &[("x", 2), ("w", 2)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let i = Q::i();
        let lin = |c: Q| &z() - &MultiPoly::constant(c);
        let p = lin(Q::one()) * lin(Q::from_int(-1)) * lin(i.clone()) * lin(-i);
        assert_eq!(p, &z().pow(4) - &MultiPoly::int(1));
    }

    #[test]
    fn derivative_examples() {
        // (3z - z^3)/2
        let g = (&z().scale(&Q::from_int(3)) - &z().pow(3)).scale(&Q::ratio(1, 2));
        let dg = g.derivative("z");
        let expect = (&MultiPoly::int(3) - &z().pow(2).scale(&Q::from_int(3))).scale(&Q::ratio(1, 2));
        assert_eq!(dg, expect);
        assert!(dg.eval_univariate("z", &Q::one()).is_zero());
        assert!(dg.eval_univariate("z", &Q::from_int(-1)).is_zero());
        assert!(MultiPoly::int(7).derivative("x").is_zero());
        let p = &z().pow(4) - &MultiPoly::int(1);
        assert_eq!(p.derivative("z"), z().pow(3).scale(&Q::from_int(4)));
    }

    #[test]
    fn exact_x_division() {
        let p = &MultiPoly::monomial(Q::one(), &[("x", 2), ("u", 1)])
            + &MultiPoly::monomial(Q::one(), &[("x", 3)]);
        let q = p.div_exact_x_power(2).unwrap();
        assert_eq!(q, &MultiPoly::var("u") + &MultiPoly::var("x"));
        let bad = &MultiPoly::var("x") + &MultiPoly::int(1);
        match bad.div_exact_x_power(1) {
            Err(Error::NotDivisible { k: 1, witness }) => assert_eq!(witness, "1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn taylor_of_simple_root() {
        // P(1 + x^2 u) with P = z^2 - 1 is x^2 (2u + x^2 u^2)
        let p = &z().pow(2) - &MultiPoly::int(1);
        let sub = &MultiPoly::int(1) + &MultiPoly::monomial(Q::one(), &[("x", 2), ("u1", 1)]);
        let q = p.compose_var("z", &sub).div_exact_x_power(2).unwrap();
        let expect = &MultiPoly::var("u1").scale(&Q::from_int(2))
            + &MultiPoly::monomial(Q::one(), &[("x", 2), ("u1", 2)]);
        assert_eq!(q, expect);
    }

    #[test]
    fn canonical_order() {
        let p = MultiPoly::from_terms(vec![
            (vec![("u1", 1)], Q::one()),
            (vec![("w", 2)], Q::one()),
            (vec![("x", 1)], Q::one()),
            (vec![("z2", 1)], Q::one()),
        ]);
        assert_eq!(p.vars(), &["x", "w", "u1", "z2"]);
        assert_eq!(p.to_string(), "x + w^2 + u1 + z2");
    }
}
