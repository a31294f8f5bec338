//! Polynomials that may carry negative powers of the distinguished variable `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::poly::MultiPoly;

pub const X: &str = "x";

/// `body * x^xshift`, normalized so that `x` never divides a nonzero body.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XLaurent {
    body: MultiPoly,
    xshift: i64,
}

pub type Bindings = BTreeMap<String, XLaurent>;

impl XLaurent {
    pub fn new(body: MultiPoly, xshift: i64) -> Self {
        if body.is_zero() {
            return XLaurent::default();
        }
        let k = body.min_degree_in(X);
        let body = body
            .div_exact_x_power(k)
            .expect("minimal x-degree always divides");
        XLaurent {
            body,
            xshift: xshift + k as i64,
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        XLaurent::new(p, 0)
    }

    pub fn zero() -> Self {
        XLaurent::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: &str) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    /// `x^k` for any integer `k`.
    pub fn x_power(k: i64) -> Self {
        XLaurent {
            body: MultiPoly::one(),
            xshift: k,
        }
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    pub fn xshift(&self) -> i64 {
        self.xshift
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.xshift >= 0
    }

    /// The ordinary polynomial, if no negative power of `x` remains.
    pub fn to_poly(&self) -> Result<MultiPoly> {
        if self.xshift >= 0 {
            Ok(self.body.shift_var(X, self.xshift as u32))
        } else {
            Err(Error::NotDivisible {
                k: (-self.xshift) as u32,
                witness: self.to_string(),
            })
        }
    }

    /// Multiplies by `x^k`.
    pub fn mul_x_power(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        XLaurent {
            body: self.body.clone(),
            xshift: self.xshift + k,
        }
    }

    pub fn div_x_power(&self, k: u32) -> Self {
        self.mul_x_power(-(k as i64))
    }

    pub fn scale(&self, c: &Q) -> Self {
        XLaurent::new(self.body.scale(c), self.xshift)
    }

    pub fn pow(&self, e: u32) -> Self {
        XLaurent::new(self.body.pow(e), self.xshift * e as i64)
    }

    /// Partial derivative; `x` is handled through the shift.
    pub fn derivative(&self, v: &str) -> Self {
        if v == X {
            let a = self.body.derivative(X);
            let b = self.body.scale(&Q::from_int(self.xshift));
            // d/dx (B x^k) = B' x^k + k B x^(k-1)
            &XLaurent::new(a, self.xshift) + &XLaurent::new(b, self.xshift - 1)
        } else {
            XLaurent::new(self.body.derivative(v), self.xshift)
        }
    }

    fn align(&self, o: &XLaurent) -> (MultiPoly, MultiPoly, i64) {
        let s = self.xshift.min(o.xshift);
        let a = self.body.shift_var(X, (self.xshift - s) as u32);
        let b = o.body.shift_var(X, (o.xshift - s) as u32);
        (a, b, s)
    }
}

impl From<MultiPoly> for XLaurent {
    fn from(p: MultiPoly) -> Self {
        XLaurent::from_poly(p)
    }
}

impl<'a> Add<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn add(self, o: &XLaurent) -> XLaurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, s) = self.align(o);
        XLaurent::new(&a + &b, s)
    }
}

impl<'a> Sub<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn sub(self, o: &XLaurent) -> XLaurent {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -o;
        }
        let (a, b, s) = self.align(o);
        XLaurent::new(&a - &b, s)
    }
}

impl<'a> Mul<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn mul(self, o: &XLaurent) -> XLaurent {
        XLaurent::new(&self.body * &o.body, self.xshift + o.xshift)
    }
}

impl Neg for &XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        XLaurent {
            body: -&self.body,
            xshift: self.xshift,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for XLaurent {
            type Output = XLaurent;
            fn $m(self, o: XLaurent) -> XLaurent {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a XLaurent> for XLaurent {
            type Output = XLaurent;
            fn $m(self, o: &XLaurent) -> XLaurent {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        -&self
    }
}

impl fmt::Display for XLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.xshift >= 0 {
            write!(f, "{}", self.to_poly().unwrap())
        } else if self.xshift == -1 {
            write!(f, "({})/x", self.body)
        } else {
            write!(f, "({})/x^{}", self.body, -self.xshift)
        }
    }
}

impl fmt::Debug for XLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Simultaneous substitution of Laurent values for variables of `p`.
/// Unbound variables pass through unchanged.
pub fn substitute(p: &MultiPoly, bindings: &Bindings) -> XLaurent {
    let bound: Vec<&String> = p
        .vars()
        .iter()
        .filter(|v| bindings.contains_key(v.as_str()))
        .collect();
    if bound.is_empty() {
        return XLaurent::from_poly(p.clone());
    }
    let mut cache: BTreeMap<String, Vec<XLaurent>> = BTreeMap::new();
    substitute_rec(p, &bound, bindings, &mut cache)
}

// Horner-style recursion: split on one bound variable at a time so powers of
// its image are shared across all terms.
fn substitute_rec(
    p: &MultiPoly,
    bound: &[&String],
    bindings: &Bindings,
    cache: &mut BTreeMap<String, Vec<XLaurent>>,
) -> XLaurent {
    let Some((v, rest)) = bound.split_first() else {
        return XLaurent::from_poly(p.clone());
    };
    if !p.contains_var(v) {
        return substitute_rec(p, rest, bindings, cache);
    }
    let image = &bindings[v.as_str()];
    let mut acc = XLaurent::zero();
    for (k, coeff) in p.coefficients_in(v) {
        let inner = substitute_rec(&coeff, rest, bindings, cache);
        if inner.is_zero() {
            continue;
        }
        let powers = cache
            .entry(v.to_string())
            .or_insert_with(|| vec![XLaurent::constant(Q::one())]);
        while powers.len() <= k as usize {
            let next = powers.last().unwrap() * image;
            powers.push(next);
        }
        acc = &acc + &(&inner * &powers[k as usize]);
    }
    acc
}

/// Convenience: bindings from `(name, value)` pairs.
pub fn bindings<I, S>(pairs: I) -> Bindings
where
    I: IntoIterator<Item = (S, XLaurent)>,
    S: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_x_out_of_body() {
        let p = MultiPoly::monomial(Q::one(), &[("x", 3), ("u1", 1)]);
        let l = XLaurent::new(p.clone(), -5);
        assert_eq!(l.xshift(), -2);
        assert_eq!(l.body(), &MultiPoly::var("u1"));
        assert!(XLaurent::new(p, -3).is_polynomial());
    }

    #[test]
    fn substitute_square() {
        let p = MultiPoly::var("z").pow(2);
        let img = &MultiPoly::var("z") + &(&MultiPoly::var("x") * &MultiPoly::var("w"));
        let r = substitute(&p, &bindings([("z", XLaurent::from_poly(img))]));
        let expect = MultiPoly::from_terms(vec![
            (vec![("z", 2)], Q::one()),
            (vec![("x", 1), ("z", 1), ("w", 1)], Q::from_int(2)),
            (vec![("x", 2), ("w", 2)], Q::one()),
        ]);
        assert_eq!(r.to_poly().unwrap(), expect);
    }

    #[test]
    fn substitute_transition() {
        // x*u1 with u1 -> u2 + 2/x gives x*u2 + 2
        let p = &MultiPoly::var("x") * &MultiPoly::var("u1");
        let img = &XLaurent::var("u2") + &XLaurent::x_power(-1).scale(&Q::from_int(2));
        let r = substitute(&p, &bindings([("u1", img)]));
        let expect = &(&MultiPoly::var("x") * &MultiPoly::var("u2")) + &MultiPoly::int(2);
        assert_eq!(r.to_poly().unwrap(), expect);
    }

    #[test]
    fn empty_substitution_is_identity() {
        let p = &(&MultiPoly::var("x") * &MultiPoly::var("y")) + &MultiPoly::var("z").pow(2);
        assert_eq!(substitute(&p, &Bindings::new()).to_poly().unwrap(), p);
    }

    #[test]
    fn derivative_in_x_tracks_shift() {
        // d/dx (1/x) = -1/x^2
        let d = XLaurent::x_power(-1).derivative("x");
        assert_eq!(d, XLaurent::x_power(-2).scale(&Q::from_int(-1)));
    }
}
