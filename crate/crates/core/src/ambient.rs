//! Computations in ambient coordinate rings `C[x, ...]/(relations)`.
//!
//! Two tools live here:
//!
//! * [`AmbientRing`] divides by powers of `x` inside the quotient ring. It
//!   needs every relation `F` to restrict at `x = 0` to a univariate
//!   polynomial `-P(v)` in its own variable `v`, so that `P(v) = x * G` holds
//!   in the ring with `G = (F + P) / x`. This covers `x^n y = P(z)`, the
//!   iterated surface `xz = (xy + z^2)^2 - 1` and the pair
//!   `xy = z^2 - 1, xt = y^2 - 1`.
//! * [`Cascade`] solves relations of the shape `c x^e v = R(others)` one after
//!   another and maps the ring injectively into the Laurent ring in `x`, which
//!   turns ideal membership into an identity test.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::laurent::{substitute, Bindings, XLaurent, X};
use crate::poly::MultiPoly;

#[derive(Debug, Clone)]
struct Reducer {
    var: String,
    /// `P(var)`, univariate.
    p0: MultiPoly,
    /// `G` with `P = x * G` in the ring.
    g: MultiPoly,
}

#[derive(Debug, Clone)]
pub struct AmbientRing {
    relations: Vec<MultiPoly>,
    reducers: Vec<Reducer>,
}

impl AmbientRing {
    pub fn new(relations: &[MultiPoly]) -> Result<Self> {
        let mut reducers: Vec<Reducer> = Vec::new();
        for f in relations {
            let f0 = f.eval_var(X, &Q::zero());
            let [var] = f0.vars() else {
                return Err(Error::NotTriangular(format!(
                    "relation {f} does not restrict to a univariate polynomial at x = 0"
                )));
            };
            if reducers.iter().any(|r| &r.var == var) {
                return Err(Error::NotTriangular(format!(
                    "two relations reduce the same variable {var}"
                )));
            }
            let p0 = -&f0;
            let g = (f - &f0).div_exact_x_power(1)?;
            reducers.push(Reducer {
                var: var.clone(),
                p0,
                g,
            });
        }
        Ok(AmbientRing {
            relations: relations.to_vec(),
            reducers,
        })
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    /// A representative of `h / x^k` in the ring, or `NotDivisible` when `h`
    /// is not a multiple of `x^k` there.
    pub fn divide_by_x_power(&self, h: &MultiPoly, k: u32) -> Result<MultiPoly> {
        let mut h = h.clone();
        for step in 0..k {
            let h0 = h.eval_var(X, &Q::zero());
            let mut rem = h0.clone();
            let mut lifted = MultiPoly::zero();
            for r in &self.reducers {
                let (q, next) = div_rem_univariate(&rem, &r.p0, &r.var);
                lifted = &lifted + &(&q * &r.g);
                rem = next;
            }
            if !rem.is_zero() {
                return Err(Error::NotDivisible {
                    k: k - step,
                    witness: rem.to_string(),
                });
            }
            h = &lifted + &(&h - &h0).div_exact_x_power(1)?;
        }
        Ok(h)
    }
}

/// Division of `h` by a univariate `p` in `v` with polynomial coefficients:
/// `h = q p + r` with `deg_v r < deg_v p`.
pub fn div_rem_univariate(h: &MultiPoly, p: &MultiPoly, v: &str) -> (MultiPoly, MultiPoly) {
    let dp = p.degree_in(v);
    let lc_inv = p.coeff(&[(v, dp)]).inv().expect("nonzero leading coefficient");
    let mut q = MultiPoly::zero();
    let mut r = h.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < dp {
            break;
        }
        let lead = r.coefficient_of(v, dr).scale(&lc_inv).shift_var(v, dr - dp);
        r = &r - &(&lead * p);
        q = &q + &lead;
    }
    (q, r)
}

/// Relations solved one variable at a time, `v = R / (c x^e)`.
#[derive(Debug, Clone)]
pub struct Cascade {
    bindings: Bindings,
}

impl Cascade {
    pub fn from_relations(relations: &[MultiPoly]) -> Result<Self> {
        // candidate variables per relation: linear, with a pure c*x^e coefficient
        let candidates: Vec<Vec<(String, MultiPoly, MultiPoly)>> = relations
            .iter()
            .map(|f| {
                f.vars()
                    .iter()
                    .filter(|v| v.as_str() != X && f.degree_in(v) == 1)
                    .filter_map(|v| {
                        let coeff = f.coefficient_of(v, 1);
                        let rest = f.coefficient_of(v, 0);
                        let pure_x = coeff.len() == 1 && coeff.vars().iter().all(|w| w == X);
                        pure_x.then(|| (v.clone(), coeff, rest))
                    })
                    .collect()
            })
            .collect();
        let mut used = vec![false; relations.len()];
        let mut solved: Bindings = Bindings::new();
        while used.iter().any(|u| !u) {
            let pending: Vec<&str> = candidates
                .iter()
                .zip(&used)
                .filter(|(_, u)| !**u)
                .flat_map(|(c, _)| c.iter().map(|(v, _, _)| v.as_str()))
                .collect();
            let mut progress = false;
            for (k, cands) in candidates.iter().enumerate() {
                if used[k] {
                    continue;
                }
                let choice = cands.iter().find(|(v, _, rest)| {
                    !solved.contains_key(v)
                        && rest
                            .vars()
                            .iter()
                            .all(|w| !pending.contains(&w.as_str()) || solved.contains_key(w))
                });
                if let Some((v, coeff, rest)) = choice {
                    let e = coeff.degree_in(X);
                    let c = coeff.constant_term_of_x(e);
                    let value = substitute(rest, &solved)
                        .scale(&(-c.inv().unwrap()))
                        .div_x_power(e);
                    solved.insert(v.clone(), value);
                    used[k] = true;
                    progress = true;
                    break;
                }
            }
            if !progress {
                return Err(Error::NotTriangular(
                    "relations cannot be solved variable by variable".into(),
                ));
            }
        }
        Ok(Cascade { bindings: solved })
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    /// Image in the Laurent ring.
    pub fn reduce(&self, p: &MultiPoly) -> XLaurent {
        substitute(p, &self.bindings)
    }

    pub fn reduce_laurent(&self, p: &XLaurent) -> XLaurent {
        substitute(p.body(), &self.bindings).mul_x_power(p.xshift())
    }

    pub fn is_member(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }
}

impl MultiPoly {
    /// Coefficient of `x^e` assuming the polynomial is `c * x^e`.
    fn constant_term_of_x(&self, e: u32) -> Q {
        self.coeff(&[(X, e)])
    }
}

/// Membership of `p` in the ideal generated by cascade-solvable relations.
pub fn ideal_membership(p: &MultiPoly, relations: &[MultiPoly]) -> Result<bool> {
    Ok(Cascade::from_relations(relations)?.is_member(p))
}

/// Identity map bindings plus cascade values for the dependent variables.
pub fn cascade_env(relations: &[MultiPoly]) -> Result<Bindings> {
    Ok(Cascade::from_relations(relations)?.bindings.clone())
}

pub type PolyMap = BTreeMap<String, MultiPoly>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn membership_basics() {
        let rel = vec![p("x*y - (z^2 - 1)")];
        assert!(ideal_membership(&p("x*y - (z^2 - 1)"), &rel).unwrap());
        assert!(!ideal_membership(&p("z"), &rel).unwrap());
        assert!(ideal_membership(&p("(x*y - z^2 + 1)*(w + y^3)"), &rel).unwrap());
    }

    #[test]
    fn double_cascade() {
        let rel = vec![p("x*y - z^2 + 1"), p("x*t - y^2 + 1")];
        let c = Cascade::from_relations(&rel).unwrap();
        assert!(c.is_member(&p("x*t - y^2 + 1")));
        assert!(c.is_member(&p("x^2*t - x*y^2 + x")));
        assert!(!c.is_member(&p("t")));
    }

    #[test]
    fn iterated_relation_is_not_triangular() {
        let rel = vec![p("x*z - (x*y + z^2)^2 + 1")];
        assert!(matches!(
            Cascade::from_relations(&rel),
            Err(Error::NotTriangular(_))
        ));
        // but x-division still works there
        let ring = AmbientRing::new(&rel).unwrap();
        let q = ring.divide_by_x_power(&p("z^4 - 1"), 1).unwrap();
        assert!(ring
            .divide_by_x_power(&(&q.shift_var("x", 1) - &p("z^4 - 1")), 0)
            .is_ok());
        // z^4 - 1 = x (z - x y^2 - 2 y z^2) on the surface
        assert_eq!(q, p("z - x*y^2 - 2*y*z^2"));
    }

    #[test]
    fn russell_division_matches_printed_forms() {
        let ring = AmbientRing::new(&[p("x^2*y - (z^2 - 1)")]).unwrap();
        let num = p("z - (3*(z + x*w) - (z + x*w)^3)/2");
        let q = ring.divide_by_x_power(&num, 2).unwrap();
        assert_eq!(q, p("1/2*(y*z + 3*z*w^2 + 3*x*y*w + x*w^3)"));
        assert!(matches!(
            ring.divide_by_x_power(&p("z"), 1),
            Err(Error::NotDivisible { .. })
        ));
    }
}
