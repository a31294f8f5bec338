//! Exact univariate interpolation and lifting over `Q(i)`.
//!
//! Hermite interpolation with vanishing derivatives, the layered slice
//! polynomial `g(x, t) = sum_j g_j(t) x^j`, Newton lifting of roots modulo
//! `x^n`, and Bezout pairs for squarefree polynomials.

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::linalg::{solve, Solution, SparseRow};
use crate::poly::MultiPoly;
use crate::univariate::Dense;
use crate::verify;

/// Interpolation data: `p(nodes[k]) = values[k]` and
/// `p^(j)(nodes[k]) = 0` for `1 <= j <= vanish_orders[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteSpec {
    pub nodes: Vec<Q>,
    pub values: Vec<Q>,
    pub vanish_orders: Vec<u32>,
}

impl HermiteSpec {
    pub fn new(nodes: Vec<Q>, values: Vec<Q>, vanish_orders: Vec<u32>) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() != vanish_orders.len() {
            return Err(Error::PreconditionViolated(
                "hermite data lists differ in length".into(),
            ));
        }
        check_distinct(&nodes)?;
        Ok(HermiteSpec {
            nodes,
            values,
            vanish_orders,
        })
    }

    /// Same vanishing order at every node.
    pub fn uniform(nodes: Vec<Q>, values: Vec<Q>, order: u32) -> Result<Self> {
        let k = nodes.len();
        Self::new(nodes, values, vec![order; k])
    }

    fn unknowns(&self) -> usize {
        self.vanish_orders.iter().map(|&o| o as usize + 1).sum()
    }
}

pub(crate) fn check_distinct(values: &[Q]) -> Result<()> {
    for (i, a) in values.iter().enumerate() {
        if values[i + 1..].contains(a) {
            return Err(Error::DuplicateRoots);
        }
    }
    Ok(())
}

// m (m-1) ... (m-j+1)
fn falling(m: usize, j: usize) -> Q {
    (0..j).fold(Q::one(), |acc, k| &acc * &Q::from_int((m - k) as i64))
}

/// Unique polynomial in `var` of degree `< sum(order_k + 1)` meeting `spec`,
/// found by exact elimination on the confluent Vandermonde system.
pub fn hermite_interpolate_in(spec: &HermiteSpec, var: &str) -> Result<MultiPoly> {
    let n = spec.unknowns();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for ((node, value), &order) in spec.nodes.iter().zip(&spec.values).zip(&spec.vanish_orders) {
        for j in 0..=order as usize {
            let mut row = SparseRow::new();
            for m in j..n {
                let c = &falling(m, j) * &node.pow((m - j) as i64);
                if !c.is_zero() {
                    row.insert(m, c);
                }
            }
            rows.push(row);
            rhs.push(if j == 0 { value.clone() } else { Q::zero() });
        }
    }
    let coeffs = match solve(rows, rhs, n) {
        Solution::Unique(c) => c,
        _ => return Err(Error::SingularSystem),
    };
    let dense = Dense::trimmed(coeffs);
    verify_hermite(&dense, spec)?;
    Ok(dense.to_poly(var))
}

/// Hermite interpolation in the variable `t`.
pub fn hermite_interpolate(spec: &HermiteSpec) -> Result<MultiPoly> {
    hermite_interpolate_in(spec, "t")
}

fn verify_hermite(p: &Dense, spec: &HermiteSpec) -> Result<()> {
    for ((node, value), &order) in spec.nodes.iter().zip(&spec.values).zip(&spec.vanish_orders) {
        let mut d = p.clone();
        for j in 0..=order {
            let got = d.eval(node);
            let want = if j == 0 { value.clone() } else { Q::zero() };
            if got != want {
                return Err(Error::CheckFailed {
                    name: "hermite".into(),
                    chart: None,
                    residue: format!("derivative {j} at {node}: {got} != {want}"),
                });
            }
            d = d.derivative();
        }
    }
    Ok(())
}

/// Builds `g(x, t) = sum_{j<n} g_j(t) x^j` with
/// `g_j(r_i) = [x^j] sigma_i` and `g_j^(k)(r_i) = 0` for `1 <= k <= n-1-j`,
/// then checks `g(x, r_i + x t) = sigma_i(x) mod x^n` for every `i`.
pub fn build_g(sigmas: &[MultiPoly], roots: &[Q], n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be positive".into()));
    }
    if sigmas.len() != roots.len() {
        return Err(Error::PreconditionViolated(
            "sigma and root counts differ".into(),
        ));
    }
    for s in sigmas {
        if s.vars().iter().any(|v| v != "x") {
            return Err(Error::PreconditionViolated(format!(
                "sigma {s} is not a polynomial in x"
            )));
        }
        if !s.is_zero() && s.degree_in("x") >= n {
            return Err(Error::PreconditionViolated(format!(
                "deg sigma = {} is not < n = {n}",
                s.degree_in("x")
            )));
        }
    }
    for (i, s) in sigmas.iter().enumerate() {
        if sigmas[i + 1..].contains(s) {
            return Err(Error::PreconditionViolated("sigmas are not distinct".into()));
        }
    }
    check_distinct(roots).map_err(|_| Error::PreconditionViolated("roots are not distinct".into()))?;

    let mut g = MultiPoly::zero();
    for j in 0..n {
        let values: Vec<Q> = sigmas
            .iter()
            .map(|s| s.coeff(&[("x", j)]))
            .collect();
        let spec = HermiteSpec::uniform(roots.to_vec(), values, n - 1 - j)?;
        let gj = hermite_interpolate(&spec)?;
        g = &g + &gj.shift_var("x", j);
    }
    let report = verify::check_star_star(&g, sigmas, roots, n);
    if !report.passed {
        return Err(report.into_error());
    }
    Ok(g)
}

/// Lifts each simple root `r` of `Q(0, z)` to the unique `sigma(x)` of degree
/// `< n` with `sigma(0) = r` and `Q(x, sigma(x)) = 0 mod x^n`.
pub fn hensel_sigma(q: &MultiPoly, n: u32, roots: &[Q]) -> Result<Vec<MultiPoly>> {
    if q.vars().iter().any(|v| v != "x" && v != "z") {
        return Err(Error::PreconditionViolated(format!(
            "Q must be a polynomial in (x, z), got {q}"
        )));
    }
    let q0 = q.eval_var("x", &Q::zero());
    let dq0 = q0.derivative("z");
    roots
        .iter()
        .map(|r| {
            if !q0.eval_univariate("z", r).is_zero() || dq0.eval_univariate("z", r).is_zero() {
                return Err(Error::NotSimpleRoot {
                    root: r.to_string(),
                });
            }
            let inv = dq0.eval_univariate("z", r).inv().unwrap();
            let mut sigma = MultiPoly::constant(r.clone());
            // one Newton correction per power of x
            for k in 1..n {
                let val = q.compose_var("z", &sigma).truncate("x", k + 1);
                let c = val.coeff(&[("x", k)]);
                if !c.is_zero() {
                    sigma = &sigma - &MultiPoly::monomial(&c * &inv, &[("x", k)]);
                }
            }
            let residue = q.compose_var("z", &sigma).truncate("x", n);
            if !residue.is_zero() {
                return Err(Error::CheckFailed {
                    name: "hensel".into(),
                    chart: None,
                    residue: residue.to_string(),
                });
            }
            Ok(sigma)
        })
        .collect()
}

/// Bezout data for a squarefree univariate `P(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPair {
    /// `U` with `U P' + V P = 1`.
    pub u: MultiPoly,
    pub v: MultiPoly,
    /// `g(z) = z - P(z) U(z)`: fixes each root with vanishing derivative.
    pub g: MultiPoly,
}

/// Extended Euclid on `(P, P')`.
pub fn bezout_pair(p: &MultiPoly) -> Result<BezoutPair> {
    let var = p.vars().first().cloned().unwrap_or_else(|| "z".into());
    let pd = Dense::from_poly(p, &var)?;
    let dpd = pd.derivative();
    let (gcd, s, t) = Dense::ext_gcd(&pd, &dpd);
    if gcd.degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let u = t.to_poly(&var);
    let v = s.to_poly(&var);
    debug_assert_eq!(&(&u * &p.derivative(&var)) + &(&v * p), MultiPoly::one());
    let g = &MultiPoly::var(&var) - &(p * &u);
    Ok(BezoutPair { u, v, g })
}

/// The two Hermite polynomials in `z` exchanging root sets:
/// `f(b_i) = a_i` with `f^(k)(b_i) = 0` for `k < n`, and
/// `g(a_i) = b_i` with `g^(k)(a_i) = 0` for `k < m`.
pub fn prop5_fg(roots_p: &[Q], roots_q: &[Q], n: u32, m: u32) -> Result<(MultiPoly, MultiPoly)> {
    if roots_p.len() != roots_q.len() || n == 0 || m == 0 {
        return Err(Error::PreconditionViolated(
            "root lists must match in length and n, m must be positive".into(),
        ));
    }
    check_distinct(roots_p).map_err(|_| Error::PreconditionViolated("roots of P repeat".into()))?;
    check_distinct(roots_q).map_err(|_| Error::PreconditionViolated("roots of Q repeat".into()))?;
    let f = hermite_interpolate_in(
        &HermiteSpec::uniform(roots_q.to_vec(), roots_p.to_vec(), n - 1)?,
        "z",
    )?;
    let g = hermite_interpolate_in(
        &HermiteSpec::uniform(roots_p.to_vec(), roots_q.to_vec(), m - 1)?,
        "z",
    )?;
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{bindings, substitute, XLaurent};

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn t() -> MultiPoly {
        MultiPoly::var("t")
    }

    /// Oracle for `(3t - t^3)/2`: the general cubic `c0 + c1 t + c2 t^2 + c3 t^3`
    /// with p(1) = 1, p(-1) = -1, p'(1) = p'(-1) = 0 gives
    /// c0 + c2 = 0 (sum of values), c1 + c3 = 1, c1 + 3 c3 = 0, c2 = 0
    /// (difference of derivatives), hence c3 = -1/2, c1 = 3/2.
    #[test]
    fn hermite_cubic() {
        let spec = HermiteSpec::uniform(vec![q(1), q(-1)], vec![q(1), q(-1)], 1).unwrap();
        let p = hermite_interpolate(&spec).unwrap();
        let expect = (&t().scale(&q(3)) - &t().pow(3)).scale(&Q::ratio(1, 2));
        assert_eq!(p, expect);
    }

    #[test]
    fn lagrange_identity() {
        let spec = HermiteSpec::uniform(vec![q(1), q(-1)], vec![q(1), q(-1)], 0).unwrap();
        assert_eq!(hermite_interpolate(&spec).unwrap(), t());
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            HermiteSpec::uniform(vec![q(1), q(1)], vec![q(1), q(2)], 0),
            Err(Error::DuplicateRoots)
        );
    }

    #[test]
    fn degree_seven_at_fourth_roots() {
        let i = Q::i();
        let nodes = vec![q(1), i.clone(), -&i, q(-1)];
        let values = vec![q(1), q(-1), q(-1), q(1)];
        let spec = HermiteSpec::uniform(nodes.clone(), values.clone(), 1).unwrap();
        let p = hermite_interpolate(&spec).unwrap();
        assert!(p.degree_in("t") <= 7);
        let dp = p.derivative("t");
        for (n, v) in nodes.iter().zip(&values) {
            assert_eq!(&p.eval_univariate("t", n), v);
            assert!(dp.eval_univariate("t", n).is_zero());
        }
    }

    #[test]
    fn build_g_constant_sigmas_is_t() {
        let roots = vec![q(2), q(-1), q(5)];
        let sigmas: Vec<MultiPoly> = roots.iter().cloned().map(MultiPoly::constant).collect();
        assert_eq!(build_g(&sigmas, &roots, 1).unwrap(), t());
    }

    #[test]
    fn build_g_rejects_bad_degrees() {
        let sigmas = vec![MultiPoly::var("x"), MultiPoly::int(1)];
        assert!(matches!(
            build_g(&sigmas, &[q(1), q(-1)], 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn hensel_stationary_for_x_free() {
        let qq = &MultiPoly::var("z").pow(2) - &MultiPoly::int(1);
        let s = hensel_sigma(&qq, 3, &[q(1), q(-1)]).unwrap();
        assert_eq!(s, vec![MultiPoly::int(1), MultiPoly::int(-1)]);
    }

    #[test]
    fn hensel_one_newton_step() {
        // Q = z^2 - 1 - x z: sigma = 1 - Q(x,1)/Q_z(0,1) = 1 + x/2 mod x^2
        let z = MultiPoly::var("z");
        let qq = &(&z.pow(2) - &MultiPoly::int(1)) - &(&MultiPoly::var("x") * &z);
        let s = hensel_sigma(&qq, 2, &[q(1)]).unwrap();
        let expect = &MultiPoly::int(1) + &MultiPoly::var("x").scale(&Q::ratio(1, 2));
        assert_eq!(s, vec![expect]);
    }

    #[test]
    fn hensel_double_root() {
        let qq = MultiPoly::var("z").pow(2);
        assert!(matches!(
            hensel_sigma(&qq, 2, &[q(0)]),
            Err(Error::NotSimpleRoot { .. })
        ));
    }

    #[test]
    fn hensel_unique_solution_spot_check() {
        let z = MultiPoly::var("z");
        let x = MultiPoly::var("x");
        let qq = &(&z.pow(3) - &z) - &(&x * &z.pow(2));
        let sig = hensel_sigma(&qq, 3, &[q(1)]).unwrap().remove(0);
        for k in 0..3u32 {
            let bumped = &sig + &MultiPoly::monomial(Q::one(), &[("x", k)]);
            assert!(!qq.compose_var("z", &bumped).truncate("x", 3).is_zero());
        }
    }

    #[test]
    fn bezout_examples() {
        let z = MultiPoly::var("z");
        let p = &z.pow(2) - &MultiPoly::int(1);
        let b = bezout_pair(&p).unwrap();
        assert_eq!(b.u, z.scale(&Q::ratio(1, 2)));
        assert_eq!(b.v, MultiPoly::int(-1));
        let b = bezout_pair(&z).unwrap();
        assert_eq!((b.u, b.v), (MultiPoly::int(1), MultiPoly::zero()));
        assert_eq!(bezout_pair(&z.pow(2)), Err(Error::NotSquarefree));
    }

    #[test]
    fn bezout_g_fixes_roots_flatly() {
        let roots = [q(1), q(-1), q(0), Q::i()];
        let p = Dense::from_roots(&roots).to_poly("z");
        let b = bezout_pair(&p).unwrap();
        let dg = b.g.derivative("z");
        for r in &roots {
            assert_eq!(&b.g.eval_univariate("z", r), r);
            assert!(dg.eval_univariate("z", r).is_zero());
        }
    }

    #[test]
    fn prop5_examples() {
        let (f, g) = prop5_fg(&[q(1), q(-1)], &[q(1), q(-1)], 1, 2).unwrap();
        let z = MultiPoly::var("z");
        assert_eq!(f, z);
        assert_eq!(g, (&z.scale(&q(3)) - &z.pow(3)).scale(&Q::ratio(1, 2)));

        let (f, g) = prop5_fg(&[q(0), q(1)], &[q(1), q(-1)], 1, 1).unwrap();
        assert_eq!(f, (&MultiPoly::int(1) - &z).scale(&Q::ratio(1, 2)));
        assert_eq!(g, &MultiPoly::int(1) - &z.scale(&q(2)));

        let (f, g) = prop5_fg(&[q(3), q(-2), q(7)], &[q(3), q(-2), q(7)], 1, 1).unwrap();
        assert_eq!((f, g), (z.clone(), z));
    }

    #[test]
    fn build_g_congruence_independent_route() {
        // compare g(x, r + x t) mod x^n against sigma by direct substitution
        let i = Q::i();
        let roots: Vec<Q> = (1..=4).map(|k| i.pow(k)).collect();
        let sigmas: Vec<MultiPoly> = (1..=4i64)
            .map(|k| {
                &MultiPoly::constant(i.pow(2 * k))
                    + &MultiPoly::var("x").scale(&(&i.pow(-k) * &Q::ratio(1, 2)))
            })
            .collect();
        let g = build_g(&sigmas, &roots, 2).unwrap();
        for (r, s) in roots.iter().zip(&sigmas) {
            let arg = &MultiPoly::constant(r.clone()) + &(&MultiPoly::var("x") * &t());
            let shifted = substitute(&g, &bindings([("t", XLaurent::from_poly(arg))]))
                .to_poly()
                .unwrap();
            assert_eq!(&shifted.truncate("x", 2), s);
        }
    }
}
