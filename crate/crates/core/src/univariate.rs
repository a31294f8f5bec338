//! Dense univariate helpers: Euclidean division, extended gcd, Lagrange
//! interpolation and exact Taylor shifts.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::poly::MultiPoly;

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dense(pub Vec<Q>);

impl Dense {
    pub fn trimmed(mut v: Vec<Q>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Dense(v)
    }

    /// Reads `p` as a polynomial in `v`; fails if another variable occurs.
    pub fn from_poly(p: &MultiPoly, v: &str) -> Result<Self> {
        if p.vars().iter().any(|w| w != v) {
            return Err(Error::PreconditionViolated(format!(
                "expected a univariate polynomial in {v}, got {p}"
            )));
        }
        let deg = p.degree_in(v) as usize;
        let mut out = vec![Q::zero(); deg + 1];
        for (k, c) in p.coefficients_in(v) {
            out[k as usize] = c.constant_term();
        }
        Ok(Dense::trimmed(out))
    }

    pub fn to_poly(&self, v: &str) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (k, c) in self.0.iter().enumerate() {
            acc = &acc + &MultiPoly::monomial(c.clone(), &[(v, k as u32)]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, at: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Dense {
        Dense::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Q::from_int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let n = self.0.len().max(o.0.len());
        Dense::trimmed(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(Q::zero);
                    let b = o.0.get(k).cloned().unwrap_or_else(Q::zero);
                    &a + &b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.scale(&Q::from_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> Dense {
        Dense::trimmed(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::default();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Dense::trimmed(out)
    }

    /// Euclidean division `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Dense) -> (Dense, Dense) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.0[dd].inv().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![Q::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = &r[k] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k - dd + j] -= &(&c * dc);
                }
                q[k - dd] = c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Dense::trimmed(q), Dense::trimmed(r))
    }

    /// Extended Euclid: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Dense, b: &Dense) -> (Dense, Dense, Dense) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Dense(vec![Q::one()]), Dense::default());
        let (mut t0, mut t1) = (Dense::default(), Dense(vec![Q::one()]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(d) = r0.degree() {
            let inv = r0.0[d].inv().unwrap();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    /// Lagrange interpolation through `(nodes[k], values[k])`.
    pub fn lagrange(nodes: &[Q], values: &[Q]) -> Result<Dense> {
        let mut acc = Dense::default();
        for (k, (nk, vk)) in nodes.iter().zip(values).enumerate() {
            let mut basis = Dense(vec![Q::one()]);
            let mut denom = Q::one();
            for (j, nj) in nodes.iter().enumerate() {
                if j == k {
                    continue;
                }
                let diff = nk - nj;
                if diff.is_zero() {
                    return Err(Error::DuplicateRoots);
                }
                denom = &denom * &diff;
                basis = basis.mul(&Dense(vec![-nj, Q::one()]));
            }
            acc = acc.add(&basis.scale(&(vk / &denom)));
        }
        Ok(acc)
    }

    /// `prod (v - r)` over the given roots.
    pub fn from_roots(roots: &[Q]) -> Dense {
        roots
            .iter()
            .fold(Dense(vec![Q::one()]), |acc, r| acc.mul(&Dense(vec![-r, Q::one()])))
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}

/// Expands `p(x, center + x*t)` exactly as a polynomial in `(x, t)` through
/// `sum_k (d^k p / dt^k)(x, center) / k! * x^k t^k`.
///
/// `p` may involve `x` as well as `t`; other variables ride along as
/// coefficients.
pub fn taylor_shift(p: &MultiPoly, center: &Q, x: &str, t: &str) -> MultiPoly {
    let deg = p.degree_in(t);
    let mut acc = MultiPoly::zero();
    let mut deriv = p.clone();
    for k in 0..=deg {
        let at_center = deriv.eval_var(t, center);
        let kf = Q::from_bigint(factorial(k));
        let term = at_center
            .scale(&kf.inv().unwrap())
            .shift_var(x, k)
            .shift_var(t, k);
        acc = &acc + &term;
        deriv = deriv.derivative(t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{bindings, substitute, XLaurent};

    fn t() -> MultiPoly {
        MultiPoly::var("t")
    }

    #[test]
    fn shift_of_square() {
        let s = taylor_shift(&t().pow(2), &Q::one(), "x", "t");
        let expect = MultiPoly::from_terms(vec![
            (vec![], Q::one()),
            (vec![("x", 1), ("t", 1)], Q::from_int(2)),
            (vec![("x", 2), ("t", 2)], Q::one()),
        ]);
        assert_eq!(s, expect);
    }

    #[test]
    fn shift_of_identity() {
        let r = Q::gaussian(2, -3);
        let s = taylor_shift(&t(), &r, "x", "t");
        assert_eq!(s, &MultiPoly::constant(r) + &(&MultiPoly::var("x") * &t()));
    }

    #[test]
    fn shift_of_g0_has_no_linear_x_term() {
        // g0(t) = t^2 - t^2 (t^4 - 1)/2 around the fourth roots of unity
        let g0 = &t().pow(2) - &(&t().pow(2) * &(&t().pow(4) - &MultiPoly::int(1))).scale(&Q::ratio(1, 2));
        let i = Q::i();
        for k in 1..=4 {
            let c = i.pow(k);
            let s = taylor_shift(&g0, &c, "x", "t");
            assert_eq!(s.coefficient_of("x", 0), MultiPoly::constant(i.pow(2 * k)));
            assert!(s.coefficient_of("x", 1).is_zero());
            // independent route: direct substitution
            let direct = substitute(
                &g0,
                &bindings([(
                    "t",
                    XLaurent::from_poly(&MultiPoly::constant(c.clone()) + &(&MultiPoly::var("x") * &t())),
                )]),
            );
            assert_eq!(direct.to_poly().unwrap(), s);
        }
    }

    #[test]
    fn ext_gcd_of_z2_minus_1() {
        let p = Dense(vec![Q::from_int(-1), Q::zero(), Q::one()]);
        let dp = p.derivative();
        let (g, s, tt) = Dense::ext_gcd(&p, &dp);
        assert_eq!(g, Dense(vec![Q::one()]));
        assert_eq!(s, Dense(vec![Q::from_int(-1)]));
        assert_eq!(tt, Dense(vec![Q::zero(), Q::ratio(1, 2)]));
    }

    #[test]
    fn lagrange_two_points() {
        let f = Dense::lagrange(&[Q::one(), Q::from_int(-1)], &[Q::zero(), Q::one()]).unwrap();
        assert_eq!(f, Dense(vec![Q::ratio(1, 2), Q::ratio(-1, 2)]));
    }
}
