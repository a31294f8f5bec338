//! Special Danielewski surfaces as glued charts.
//!
//! Chart `i` is the plane with coordinates `(x, u_i)`. On overlaps
//! `u_j = u_i + (sigma_i - sigma_j) / x^n`, and the global function `u`
//! restricts to `x^n u_i + sigma_i(x)` on chart `i`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::interpolation::{check_distinct, hensel_sigma};
use crate::laurent::{substitute, Bindings, XLaurent, X};
use crate::poly::MultiPoly;
use crate::univariate::Dense;
use crate::verify::{check_star, CheckReport};

/// Name of the cylinder coordinate on both sides of an isomorphism.
pub const CYLINDER_VAR: &str = "w";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub n: u32,
    pub sigmas: Vec<MultiPoly>,
    pub roots: Vec<Q>,
}

impl SurfaceSpec {
    pub fn new(n: u32, sigmas: Vec<MultiPoly>, roots: Vec<Q>) -> Result<Self> {
        if n == 0 {
            return Err(Error::PreconditionViolated("n must be positive".into()));
        }
        if sigmas.len() < 2 {
            return Err(Error::PreconditionViolated(
                "a Danielewski surface needs d >= 2 charts".into(),
            ));
        }
        if sigmas.len() != roots.len() {
            return Err(Error::PreconditionViolated(
                "sigma and root counts differ".into(),
            ));
        }
        for s in &sigmas {
            if s.vars().iter().any(|v| v != X) || (!s.is_zero() && s.degree_in(X) >= n) {
                return Err(Error::PreconditionViolated(format!(
                    "sigma {s} must be a polynomial in x of degree < {n}"
                )));
            }
        }
        for (i, s) in sigmas.iter().enumerate() {
            if sigmas[i + 1..].contains(s) {
                return Err(Error::PreconditionViolated("sigmas are not distinct".into()));
            }
        }
        check_distinct(&roots)?;
        Ok(SurfaceSpec { n, sigmas, roots })
    }

    pub fn d(&self) -> usize {
        self.sigmas.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub index: usize,
    pub label: String,
    /// Name of the chart coordinate `u_i`.
    pub coord: String,
    /// Ambient generators as polynomials in `(x, coord)`.
    pub param: BTreeMap<String, MultiPoly>,
}

/// One polynomial per chart, in `(x, u_i)` and possibly the cylinder variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalFunction {
    pub reps: Vec<MultiPoly>,
}

/// How a surface was produced; kept for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceOrigin {
    Classical { n: u32, roots: Vec<Q> },
    Hypersurface { n: u32, q: MultiPoly, roots: Vec<Q> },
    Iterated,
    Double,
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartedSurface {
    pub name: String,
    pub origin: SurfaceOrigin,
    pub spec: SurfaceSpec,
    pub charts: Vec<Chart>,
    pub ambient_vars: Vec<String>,
    pub relations: Vec<MultiPoly>,
    pub u_ambient: Option<MultiPoly>,
    /// Built-in separating function, if any.
    pub f: Option<GlobalFunction>,
    pub f_ambient: Option<MultiPoly>,
}

/// Derivation given by its values on chart coordinates; unlisted
/// coordinates (always `x`) map to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<BTreeMap<String, MultiPoly>>,
}

impl Derivation {
    pub fn apply(&self, chart: usize, p: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (v, img) in &self.images[chart] {
            if p.contains_var(v) {
                acc = &acc + &(img * &p.derivative(v));
            }
        }
        acc
    }

    pub fn apply_laurent(&self, chart: usize, p: &XLaurent) -> XLaurent {
        let mut acc = XLaurent::zero();
        for (v, img) in &self.images[chart] {
            acc = &acc + &(&XLaurent::from_poly(img.clone()) * &p.derivative(v));
        }
        acc
    }

    /// Applied chartwise to a global function.
    pub fn apply_global(&self, g: &GlobalFunction) -> GlobalFunction {
        GlobalFunction {
            reps: g
                .reps
                .iter()
                .enumerate()
                .map(|(i, r)| self.apply(i, r))
                .collect(),
        }
    }

    /// `D` computed in chart `i` agrees with `D` computed in chart `j` and
    /// transported, on every coordinate of chart `j`.
    pub fn check_transitions(&self, s: &ChartedSurface) -> CheckReport {
        let d = s.d();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let t = s.transition(i, j);
                for (v, img) in &self.images[j] {
                    let image_of_v = t.get(v).cloned().unwrap_or_else(|| XLaurent::var(v));
                    let lhs = self.apply_laurent(i, &image_of_v);
                    let rhs = substitute(img, &t);
                    let diff = &lhs - &rhs;
                    if !diff.is_zero() {
                        return CheckReport::fail(
                            "derivation-transitions",
                            Some(j),
                            format!("charts ({}, {}), {v}: {diff}", i + 1, j + 1),
                        );
                    }
                }
            }
        }
        CheckReport::pass("derivation-transitions")
    }
}

fn chart_coord(prefix: &str, i: usize) -> String {
    format!("{prefix}{}", i + 1)
}

impl ChartedSurface {
    pub fn d(&self) -> usize {
        self.spec.d()
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn coord(&self, i: usize) -> &str {
        &self.charts[i].coord
    }

    /// Bindings expressing chart-`j` coordinates in chart-`i` coordinates.
    pub fn transition(&self, i: usize, j: usize) -> Bindings {
        let mut b = Bindings::new();
        if i == j {
            return b;
        }
        let shift = XLaurent::from_poly(&self.spec.sigmas[i] - &self.spec.sigmas[j])
            .div_x_power(self.n());
        b.insert(
            self.coord(j).to_string(),
            &XLaurent::var(self.coord(i)) + &shift,
        );
        b
    }

    /// A chart-`j` polynomial rewritten in chart-`i` coordinates.
    pub fn pullback(&self, p: &MultiPoly, j: usize, i: usize) -> XLaurent {
        substitute(p, &self.transition(i, j))
    }

    /// Restriction of an ambient polynomial to chart `i`. Variables without a
    /// parametrization (the cylinder variable) pass through.
    pub fn restrict(&self, p: &MultiPoly, i: usize) -> Result<MultiPoly> {
        let b: Bindings = self.charts[i]
            .param
            .iter()
            .map(|(k, v)| (k.clone(), XLaurent::from_poly(v.clone())))
            .collect();
        substitute(p, &b).to_poly()
    }

    pub fn restrict_global(&self, p: &MultiPoly) -> Result<GlobalFunction> {
        Ok(GlobalFunction {
            reps: (0..self.d())
                .map(|i| self.restrict(p, i))
                .collect::<Result<_>>()?,
        })
    }

    /// `u` on chart `i`: `x^n u_i + sigma_i(x)`.
    pub fn u_function(&self) -> GlobalFunction {
        GlobalFunction {
            reps: (0..self.d())
                .map(|i| {
                    &MultiPoly::var(self.coord(i)).shift_var(X, self.n()) + &self.spec.sigmas[i]
                })
                .collect(),
        }
    }

    pub fn check_overlap_consistency(&self, g: &GlobalFunction) -> CheckReport {
        check_overlap_consistency(g, self)
    }

    /// Every structural invariant of the construction, one report each.
    pub fn verify_construction(&self) -> Vec<CheckReport> {
        let mut out = Vec::new();
        let d = self.d();
        out.push(if self.charts.len() == d {
            CheckReport::pass("chart-count")
        } else {
            CheckReport::fail("chart-count", None, self.charts.len())
        });
        if !self.ambient_vars.is_empty() {
            out.push(CheckReport::all(
                "chart-x",
                self.charts.iter().map(|c| {
                    let px = c.param.get(X).cloned().unwrap_or_default();
                    CheckReport::zero("chart-x", Some(c.index), &(&px - &MultiPoly::var(X)))
                }),
            ));
            let mut rel = Vec::new();
            for c in &self.charts {
                for r in &self.relations {
                    rel.push(match self.restrict(r, c.index) {
                        Ok(p) => CheckReport::zero("relations", Some(c.index), &p),
                        Err(e) => CheckReport::fail("relations", Some(c.index), e),
                    });
                }
            }
            out.push(CheckReport::all("relations", rel));
            for v in &self.ambient_vars {
                if let Ok(g) = self.restrict_global(&MultiPoly::var(v)) {
                    let mut r = check_overlap_consistency(&g, self);
                    r.name = format!("overlap-{v}");
                    out.push(r);
                }
            }
        }
        let u = self.u_function();
        out.push({
            let mut r = check_overlap_consistency(&u, self);
            r.name = "overlap-u".into();
            r
        });
        if let Some(ua) = &self.u_ambient {
            out.push(CheckReport::all(
                "u-restriction",
                (0..d).map(|i| match self.restrict(ua, i) {
                    Ok(p) => CheckReport::zero("u-restriction", Some(i), &(&p - &u.reps[i])),
                    Err(e) => CheckReport::fail("u-restriction", Some(i), e),
                }),
            ));
        }
        if let Some(f) = &self.f {
            out.push({
                let mut r = check_overlap_consistency(f, self);
                r.name = "overlap-f".into();
                r
            });
            out.push(check_star(f, self));
            if let Some(fa) = &self.f_ambient {
                out.push(CheckReport::all(
                    "f-restriction",
                    (0..d).map(|i| match self.restrict(fa, i) {
                        Ok(p) => CheckReport::zero("f-restriction", Some(i), &(&p - &f.reps[i])),
                        Err(e) => CheckReport::fail("f-restriction", Some(i), e),
                    }),
                ));
            }
        }
        out.extend(self.example_identities());
        out
    }

    /// The chart identities used to prove the chart maps are isomorphisms,
    /// recomputed from the parametrization.
    pub fn example_identities(&self) -> Vec<CheckReport> {
        match self.origin {
            SurfaceOrigin::Iterated => iterated_identities(self),
            SurfaceOrigin::Double => double_identities(self),
            _ => Vec::new(),
        }
    }

    /// The separating function: built-in if present, otherwise `L(u)` with
    /// `L(sigma_i(0)) = r_i`. Checks the line condition and `x | D(f)`.
    pub fn separating_function(&self) -> Result<GlobalFunction> {
        let f = match &self.f {
            Some(f) => f.clone(),
            None => generic_separating_function(self)?,
        };
        check_star(&f, self).into_result()?;
        let d = canonical_lnd(self);
        for (i, df) in d.apply_global(&f).reps.iter().enumerate() {
            df.div_exact_x_power(1).map_err(|_| Error::CheckFailed {
                name: "x-divides-Df".into(),
                chart: Some(i),
                residue: df.eval_var(X, &Q::zero()).to_string(),
            })?;
        }
        Ok(f)
    }
}

/// `L(u)` with `L(sigma_i(0)) = r_i`; requires distinct `sigma_i(0)`.
pub fn generic_separating_function(s: &ChartedSurface) -> Result<GlobalFunction> {
    let nodes: Vec<Q> = s.spec.sigmas.iter().map(|p| p.constant_term()).collect();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::CannotSeparate(i + 1, j + 1));
            }
        }
    }
    let l = Dense::lagrange(&nodes, &s.spec.roots)?.to_poly("u");
    let u = s.u_function();
    Ok(GlobalFunction {
        reps: u.reps.iter().map(|r| l.compose_var("u", r)).collect(),
    })
}

/// For all `i < j`, `reps[j]` transported to chart `i` equals `reps[i]`.
pub fn check_overlap_consistency(g: &GlobalFunction, s: &ChartedSurface) -> CheckReport {
    for i in 0..g.reps.len() {
        for j in i + 1..g.reps.len() {
            let diff = &s.pullback(&g.reps[j], j, i) - &XLaurent::from_poly(g.reps[i].clone());
            if !diff.is_zero() {
                return CheckReport::fail(
                    "overlap",
                    Some(j),
                    format!("charts ({}, {}): {diff}", i + 1, j + 1),
                );
            }
        }
    }
    CheckReport::pass("overlap")
}

/// `D(x) = 0`, `D(u_i) = 1`.
pub fn canonical_lnd(s: &ChartedSurface) -> Derivation {
    Derivation {
        images: (0..s.d())
            .map(|i| {
                let mut m = BTreeMap::new();
                m.insert(s.coord(i).to_string(), MultiPoly::one());
                m
            })
            .collect(),
    }
}

fn finish(s: ChartedSurface) -> Result<ChartedSurface> {
    let bad = s.verify_construction().into_iter().find(|r| !r.passed);
    match bad {
        Some(r) => Err(r.into_error()),
        None => Ok(s),
    }
}

/// `x^n y = P(z)` with `P = prod (z - r_i)`, chart coordinates `u1, u2, ...`.
pub fn make_classical(n: u32, roots: &[Q]) -> Result<ChartedSurface> {
    make_classical_with_prefix(n, roots, "u")
}

pub fn make_classical_with_prefix(n: u32, roots: &[Q], prefix: &str) -> Result<ChartedSurface> {
    check_distinct(roots)?;
    let p = Dense::from_roots(roots).to_poly("z");
    let sigmas: Vec<MultiPoly> = roots.iter().cloned().map(MultiPoly::constant).collect();
    let spec = SurfaceSpec::new(n, sigmas, roots.to_vec())?;
    let relation = &MultiPoly::var("y").shift_var(X, n) - &p;
    let charts = hypersurface_charts(&spec, &p, prefix)?;
    let z = MultiPoly::var("z");
    let mut s = ChartedSurface {
        name: format!("{} = {p}", MultiPoly::var("y").shift_var(X, n)),
        origin: SurfaceOrigin::Classical {
            n,
            roots: roots.to_vec(),
        },
        spec,
        charts,
        ambient_vars: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![relation],
        u_ambient: Some(z.clone()),
        f: None,
        f_ambient: Some(z.clone()),
    };
    s.f = Some(s.restrict_global(&z)?);
    finish(s)
}

// z = sigma_i + x^n u_i, y = Q(x, z) / x^n
fn hypersurface_charts(spec: &SurfaceSpec, q: &MultiPoly, prefix: &str) -> Result<Vec<Chart>> {
    (0..spec.d())
        .map(|i| {
            let coord = chart_coord(prefix, i);
            let z = &spec.sigmas[i] + &MultiPoly::var(&coord).shift_var(X, spec.n);
            let y = q
                .compose_var("z", &z)
                .div_exact_x_power(spec.n)
                .map_err(|e| match e {
                    Error::NotDivisible { k, witness } => Error::CheckFailed {
                        name: "y-divisibility".into(),
                        chart: Some(i),
                        residue: format!("x^{k} does not divide {witness}"),
                    },
                    e => e,
                })?;
            let mut param = BTreeMap::new();
            param.insert("x".to_string(), MultiPoly::var(X));
            param.insert("y".to_string(), y);
            param.insert("z".to_string(), z);
            Ok(Chart {
                index: i,
                label: (i + 1).to_string(),
                coord,
                param,
            })
        })
        .collect()
}

/// `x^n y = Q(x, z)` with the given simple roots of `Q(0, z)`.
pub fn make_hypersurface(n: u32, q: &MultiPoly, roots: &[Q]) -> Result<ChartedSurface> {
    let sigmas = hensel_sigma(q, n, roots)?;
    let spec = SurfaceSpec::new(n, sigmas, roots.to_vec())?;
    let charts = hypersurface_charts(&spec, q, "u")?;
    let z = MultiPoly::var("z");
    let mut s = ChartedSurface {
        name: format!("{} = {q}", MultiPoly::var("y").shift_var(X, n)),
        origin: SurfaceOrigin::Hypersurface {
            n,
            q: q.clone(),
            roots: roots.to_vec(),
        },
        spec,
        charts,
        ambient_vars: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![&MultiPoly::var("y").shift_var(X, n) - q],
        u_ambient: Some(z.clone()),
        f: None,
        f_ambient: Some(z.clone()),
    };
    s.f = Some(s.restrict_global(&z)?);
    finish(s)
}

fn eps_pow(k: i64) -> Q {
    Q::i().pow(k)
}

fn mp(s: &str) -> MultiPoly {
    crate::syntax::parse_poly(s).expect("built-in expression")
}

/// `xz = (xy + z^2)^2 - 1` with lines `z = i^k`, `n = 2`.
pub fn make_iterated_example() -> Result<ChartedSurface> {
    let mut sigmas = Vec::new();
    let mut roots = Vec::new();
    let mut charts = Vec::new();
    for k in 1..=4i64 {
        let e = eps_pow(k);
        let e2 = eps_pow(2 * k);
        let einv_half = &eps_pow(-k) * &Q::ratio(1, 2);
        sigmas.push(&MultiPoly::constant(e2.clone()) + &MultiPoly::var(X).scale(&einv_half));
        roots.push(e.clone());
        let coord = chart_coord("u", (k - 1) as usize);
        let u = MultiPoly::var(&coord);
        let x = MultiPoly::var(X);
        let alpha = &(&x * &u) + &MultiPoly::constant(einv_half);
        let beta = &u.scale(&(&e2 * &Q::from_int(2))) + &alpha.pow(2);
        let z = &MultiPoly::constant(e.clone()) + &(&x * &beta);
        let y = &(&alpha - &beta.scale(&(&e * &Q::from_int(2)))) - &(&x * &beta.pow(2));
        let mut param = BTreeMap::new();
        param.insert("x".to_string(), x);
        param.insert("y".to_string(), y);
        param.insert("z".to_string(), z);
        charts.push(Chart {
            index: (k - 1) as usize,
            label: k.to_string(),
            coord,
            param,
        });
    }
    let spec = SurfaceSpec::new(2, sigmas, roots)?;
    let z = MultiPoly::var("z");
    let mut s = ChartedSurface {
        name: "x*z = (x*y + z^2)^2 - 1".into(),
        origin: SurfaceOrigin::Iterated,
        spec,
        charts,
        ambient_vars: vec!["x".into(), "y".into(), "z".into()],
        relations: vec![mp("x*z - (x*y + z^2)^2 + 1")],
        u_ambient: Some(mp("x*y + z^2")),
        f: None,
        f_ambient: Some(z.clone()),
    };
    s.f = Some(s.restrict_global(&z)?);
    finish(s)
}

fn iterated_identities(s: &ChartedSurface) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let u = s.u_ambient.clone().expect("iterated surface has u");
    for i in 0..s.d() {
        let k = i as i64 + 1;
        let e = eps_pow(k);
        let e2 = eps_pow(2 * k);
        let ui = MultiPoly::var(s.coord(i));
        let x = MultiPoly::var(X);
        let on_chart = |p: &MultiPoly| s.restrict(p, i);
        let run = || -> Result<Vec<CheckReport>> {
            // alpha = (u - e^2)/x and beta = (z - e)/x, computed from the chart
            let u_c = on_chart(&u)?;
            let z_c = on_chart(&MultiPoly::var("z"))?;
            let y_c = on_chart(&MultiPoly::var("y"))?;
            let alpha = (&u_c - &MultiPoly::constant(e2.clone())).div_exact_x_power(1)?;
            let beta = (&z_c - &MultiPoly::constant(e.clone())).div_exact_x_power(1)?;
            let two_e2 = &e2 * &Q::from_int(2);
            let mut r = vec![
                CheckReport::zero(
                    "beta-minus-alpha-squared",
                    Some(i),
                    &(&(&beta - &alpha.pow(2)) - &ui.scale(&two_e2)),
                ),
                CheckReport::zero(
                    "alpha-affine-in-u",
                    Some(i),
                    &(&alpha
                        - &(&(&x * &ui) + &MultiPoly::constant(&eps_pow(-k) * &Q::ratio(1, 2)))),
                ),
                CheckReport::zero(
                    "y-from-alpha-beta",
                    Some(i),
                    &(&y_c
                        - &(&(&alpha - &beta.scale(&(&e * &Q::from_int(2)))) - &(&x * &beta.pow(2)))),
                ),
                // alpha = z / (u + e^2)
                CheckReport::zero(
                    "alpha-second-form",
                    Some(i),
                    &(&(&alpha * &(&u_c + &MultiPoly::constant(e2.clone()))) - &z_c),
                ),
            ];
            // beta = (z - x y^2 - 2 y z^2) / prod_{j != i} (z - e^j)
            let mut den = MultiPoly::one();
            for j in 1..=4i64 {
                if j != k {
                    den = &den * &(&z_c - &MultiPoly::constant(eps_pow(j)));
                }
            }
            let num = on_chart(&mp("z - x*y^2 - 2*y*z^2"))?;
            r.push(CheckReport::zero(
                "beta-second-form",
                Some(i),
                &(&(&beta * &den) - &num),
            ));
            Ok(r)
        };
        match run() {
            Ok(r) => out.extend(r),
            Err(e) => out.push(CheckReport::fail("chart-identities", Some(i), e)),
        }
    }
    out
}

/// Labels `(i, j)` of the double example, in chart order.
pub const DOUBLE_LABELS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// `xy = z^2 - 1, xt = y^2 - 1`, `n = 2`, lines labelled by `(y, z) = (i, j)`.
pub fn make_double_example() -> Result<ChartedSurface> {
    let mut sigmas = Vec::new();
    let mut charts = Vec::new();
    for (c, &(i, j)) in DOUBLE_LABELS.iter().enumerate() {
        sigmas.push(
            &MultiPoly::int(j) + &MultiPoly::var(X).scale(&Q::ratio(i * j, 2)),
        );
        let coord = chart_coord("u", c);
        let u = MultiPoly::var(&coord);
        let x = MultiPoly::var(X);
        let alpha = &(&x * &u) + &MultiPoly::constant(Q::ratio(i * j, 2));
        let beta = &u.scale(&Q::from_int(2 * j)) + &alpha.pow(2);
        let z = &MultiPoly::int(j) + &(&x * &alpha);
        let y = &MultiPoly::int(i) + &(&x * &beta);
        let t = &(&y + &MultiPoly::int(i)) * &beta;
        let mut param = BTreeMap::new();
        param.insert("x".to_string(), x);
        param.insert("y".to_string(), y);
        param.insert("z".to_string(), z);
        param.insert("t".to_string(), t);
        charts.push(Chart {
            index: c,
            label: format!("({i},{j})"),
            coord,
            param,
        });
    }
    let e = Q::i();
    let roots = vec![Q::one(), e.clone(), -&e, Q::from_int(-1)];
    let spec = SurfaceSpec::new(2, sigmas, roots)?;
    let f_ambient = mp("(z + y)/2 + i*(y - z)/2");
    let mut s = ChartedSurface {
        name: "x*y = z^2 - 1, x*t = y^2 - 1".into(),
        origin: SurfaceOrigin::Double,
        spec,
        charts,
        ambient_vars: vec!["x".into(), "y".into(), "z".into(), "t".into()],
        relations: vec![mp("x*y - z^2 + 1"), mp("x*t - y^2 + 1")],
        u_ambient: Some(MultiPoly::var("z")),
        f: None,
        f_ambient: Some(f_ambient.clone()),
    };
    s.f = Some(s.restrict_global(&f_ambient)?);
    finish(s)
}

fn double_identities(s: &ChartedSurface) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (c, &(i, j)) in DOUBLE_LABELS.iter().enumerate() {
        let run = || -> Result<Vec<CheckReport>> {
            let u = MultiPoly::var(s.coord(c));
            let z = s.restrict(&MultiPoly::var("z"), c)?;
            let y = s.restrict(&MultiPoly::var("y"), c)?;
            let t = s.restrict(&MultiPoly::var("t"), c)?;
            let alpha = (&z - &MultiPoly::int(j)).div_exact_x_power(1)?;
            let beta = (&y - &MultiPoly::int(i)).div_exact_x_power(1)?;
            Ok(vec![
                CheckReport::zero(
                    "beta-minus-alpha-squared",
                    Some(c),
                    &(&(&beta - &alpha.pow(2)) - &u.scale(&Q::from_int(2 * j))),
                ),
                // alpha = y / (z + j), beta = t / (y + i)
                CheckReport::zero(
                    "alpha-second-form",
                    Some(c),
                    &(&(&alpha * &(&z + &MultiPoly::int(j))) - &y),
                ),
                CheckReport::zero(
                    "beta-second-form",
                    Some(c),
                    &(&(&beta * &(&y + &MultiPoly::int(i))) - &t),
                ),
            ])
        };
        match run() {
            Ok(r) => out.extend(r),
            Err(e) => out.push(CheckReport::fail("chart-identities", Some(c), e)),
        }
    }
    out
}

/// A surface given only by gluing data: charts without an ambient
/// embedding. The separating function then comes from the generic path.
pub fn make_abstract(spec: SurfaceSpec) -> ChartedSurface {
    let charts = (0..spec.d())
        .map(|i| Chart {
            index: i,
            label: (i + 1).to_string(),
            coord: chart_coord("u", i),
            param: BTreeMap::new(),
        })
        .collect();
    ChartedSurface {
        name: "abstract".into(),
        origin: SurfaceOrigin::Raw,
        spec,
        charts,
        ambient_vars: Vec::new(),
        relations: Vec::new(),
        u_ambient: None,
        f: None,
        f_ambient: None,
    }
}

/// User-supplied charts, relations and functions; rejected unless every
/// construction invariant holds.
pub struct RawSurface {
    pub name: String,
    pub spec: SurfaceSpec,
    pub ambient_vars: Vec<String>,
    pub charts: Vec<BTreeMap<String, MultiPoly>>,
    pub relations: Vec<MultiPoly>,
    pub u_ambient: Option<MultiPoly>,
    pub f_ambient: Option<MultiPoly>,
    pub f_reps: Option<Vec<MultiPoly>>,
}

pub fn make_raw(raw: RawSurface) -> Result<ChartedSurface> {
    let d = raw.spec.d();
    if !raw.charts.is_empty() && raw.charts.len() != d {
        return Err(Error::PreconditionViolated(format!(
            "{} chart parametrizations for {d} sigmas",
            raw.charts.len()
        )));
    }
    let mut s = make_abstract(raw.spec);
    s.name = raw.name;
    s.ambient_vars = raw.ambient_vars;
    for (c, param) in s.charts.iter_mut().zip(raw.charts) {
        c.param = param;
    }
    s.relations = raw.relations;
    s.u_ambient = raw.u_ambient;
    s.f_ambient = raw.f_ambient.clone();
    s.f = match (raw.f_reps, &raw.f_ambient) {
        (Some(reps), _) => Some(GlobalFunction { reps }),
        (None, Some(fa)) => Some(s.restrict_global(fa)?),
        (None, None) => None,
    };
    finish(s)
}
