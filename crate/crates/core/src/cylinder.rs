//! Isomorphisms between cylinders `S x A^1` and `W_{1,P} x A^1`.
//!
//! For a special surface `S` with separating function `f` (`f = r_i` on the
//! line of chart `i`), chart `i` of the cylinder has coordinates
//! `(x, u_i, w)` and the map is
//!
//! ```text
//! x -> x,  z -> f + x w,  y -> P(f + x w) / x,  w -> (u - g(x, f + x w)) / x^n
//! ```
//!
//! with `g(x, r_i + x t) = sigma_i mod x^n`. The extended derivation
//! `D(u_i) = 1`, `D(w) = -D(f)/x` kills the images of `z` and `y` and sends
//! the image of `w` to 1.

use std::collections::BTreeMap;

use crate::ambient::AmbientRing;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::gaussian::GaussianRational as Q;
use crate::interpolation::{build_g, check_distinct, prop5_fg};
use crate::laurent::{bindings, XLaurent, X};
use crate::linalg::{solve, SparseRow};
use crate::poly::MultiPoly;
use crate::surface::{
    canonical_lnd, check_overlap_consistency, make_classical_with_prefix, ChartedSurface,
    Derivation, GlobalFunction, CYLINDER_VAR as W,
};
use crate::univariate::Dense;
use crate::verify::{check_locally_nilpotent, check_star, check_star_star, CheckReport};

/// Target generators, in printing order.
pub const GENERATORS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IsoCertificate {
    pub checks: Vec<CheckReport>,
    /// Checks that could not be decided (iteration caps).
    pub inconclusive: Vec<String>,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn valid(&self) -> bool {
        self.passed() && self.inconclusive.is_empty()
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, r: CheckReport) {
        self.checks.push(r);
    }
}

/// The map produced by the general construction, stored chart by chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremMap {
    pub surface: ChartedSurface,
    /// Roots of `P`, in target chart order.
    pub target_roots: Vec<Q>,
    pub f: GlobalFunction,
    /// In `(x, t)`.
    pub g: MultiPoly,
    /// Per source chart: images of `x, y, z, w` in `(x, u_i, w)`.
    pub chart_images: Vec<BTreeMap<String, MultiPoly>>,
    /// Source chart `i` lands in target chart `chart_pairing[i]`.
    pub chart_pairing: Vec<usize>,
    pub ambient_images: Option<BTreeMap<String, MultiPoly>>,
}

impl TheoremMap {
    pub fn p(&self) -> MultiPoly {
        Dense::from_roots(&self.target_roots).to_poly("z")
    }

    pub fn target(&self) -> Result<ChartedSurface> {
        make_classical_with_prefix(1, &self.target_roots, "z")
    }

    /// Unexpanded images of `x, y, z, w` on source chart `i`.
    pub fn formulas(&self, i: usize) -> BTreeMap<String, Formula> {
        let k = self.chart_pairing[i];
        chart_formulas(
            &self.surface,
            &self.f.reps[i],
            &self.g,
            &self.p(),
            i,
            &self.target_roots[k],
            &format!("z{}", k + 1),
        )
        .images
    }
}

/// A polynomial map between cylinders given by ambient closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientMap {
    pub source: String,
    pub target: String,
    pub source_relations: Vec<MultiPoly>,
    pub target_relations: Vec<MultiPoly>,
    /// Target generator -> polynomial in the source generators.
    pub images: BTreeMap<String, MultiPoly>,
    /// Unexpanded forms of the same images, when the construction is known.
    pub formulas: Option<BTreeMap<String, Formula>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop5Construction {
    pub roots_p: Vec<Q>,
    pub roots_q: Vec<Q>,
    pub n: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop5Pair {
    pub construction: Prop5Construction,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub p: MultiPoly,
    pub q: MultiPoly,
    /// `W_{n,P} x A^1 -> W_{m,Q} x A^1`.
    pub phi: AmbientMap,
    pub psi: AmbientMap,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderMap {
    Theorem(TheoremMap),
    AmbientPair {
        phi: AmbientMap,
        psi: AmbientMap,
        construction: Option<Prop5Construction>,
    },
}

fn not_divisible(name: &str, chart: usize, e: Error) -> Error {
    match e {
        Error::NotDivisible { k, witness } => Error::CheckFailed {
            name: name.into(),
            chart: Some(chart),
            residue: format!("x^{k} does not divide {witness}"),
        },
        e => e,
    }
}

/// `f|chart_i = r_i + x * f~_i`; returns the `f~_i`. The cylinder coordinate
/// `w` then satisfies `z = f + x w`, so `(z - f)/x` is regular on each chart.
pub fn build_alpha(s: &ChartedSurface, f: &GlobalFunction) -> Result<Vec<MultiPoly>> {
    f.reps
        .iter()
        .zip(&s.spec.roots)
        .enumerate()
        .map(|(i, (rep, r))| {
            (rep - &MultiPoly::constant(r.clone()))
                .div_exact_x_power(1)
                .map_err(|e| not_divisible("alpha-divisibility", i, e))
        })
        .collect()
}

/// `D(w) = -D(f)/x` on top of `d`; checks `D(f + x w) = D(P(f + x w)/x) = 0`.
pub fn extend_lnd(
    s: &ChartedSurface,
    d: &Derivation,
    f: &GlobalFunction,
    p: &MultiPoly,
) -> Result<Derivation> {
    let mut images = d.images.clone();
    for (i, img) in images.iter_mut().enumerate() {
        let df = d.apply(i, &f.reps[i]);
        let dw = -&df
            .div_exact_x_power(1)
            .map_err(|e| not_divisible("x-divides-Df", i, e))?;
        img.insert(W.to_string(), dw);
    }
    let ext = Derivation { images };
    for i in 0..s.d() {
        let z = phi_z(&f.reps[i]);
        let y = p
            .compose_var("z", &z)
            .div_exact_x_power(1)
            .map_err(|e| not_divisible("y-divisibility", i, e))?;
        for (name, v) in [("kernel-z", &z), ("kernel-y", &y)] {
            CheckReport::zero(name, Some(i), &ext.apply(i, v)).into_result()?;
        }
    }
    Ok(ext)
}

fn phi_z(f_i: &MultiPoly) -> MultiPoly {
    f_i + &(&MultiPoly::var(X) * &MultiPoly::var(W))
}

/// `s = (u - g(x, f + x w)) / x^n` chart by chart, with `D(s) = 1` checked.
pub fn build_slice(
    s: &ChartedSurface,
    f: &GlobalFunction,
    g: &MultiPoly,
    lnd: &Derivation,
) -> Result<GlobalFunction> {
    let u = s.u_function();
    let reps = (0..s.d())
        .map(|i| {
            let num = &u.reps[i] - &g.compose_var("t", &phi_z(&f.reps[i]));
            let rep = num
                .div_exact_x_power(s.n())
                .map_err(|e| not_divisible("slice-divisibility", i, e))?;
            CheckReport::zero("slice", Some(i), &(&lnd.apply(i, &rep) - &MultiPoly::one()))
                .into_result()?;
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GlobalFunction { reps })
}

/// Unexpanded chart formulas of the map and of its chartwise inverse.
struct ChartFormulas {
    images: BTreeMap<String, Formula>,
    /// Source chart coordinates -> target chart coordinate `z_k`.
    forward_z: Formula,
    /// Target chart coordinates -> source `u_i` and `w`.
    back_u: Formula,
    back_w: Formula,
    source_coord: String,
    target_coord: String,
}

fn chart_formulas(
    s: &ChartedSurface,
    f_i: &MultiPoly,
    g: &MultiPoly,
    p: &MultiPoly,
    i: usize,
    r_k: &Q,
    target_coord: &str,
) -> ChartFormulas {
    let n = s.n();
    let coord = s.coord(i).to_string();
    let u_rep = &MultiPoly::var(&coord).shift_var(X, n) + &s.spec.sigmas[i];
    let z = Formula::sum(vec![
        Formula::named("f", Formula::poly(f_i.clone())),
        Formula::poly(&MultiPoly::var(X) * &MultiPoly::var(W)),
    ]);
    let y = Formula::call("P", &["z"], p, vec![("z", z.clone())]).div_x(1);
    let w = Formula::sub(
        Formula::named("u", Formula::poly(u_rep)),
        Formula::call("g", &["x", "t"], g, vec![("t", z.clone())]),
    )
    .div_x(n);
    let forward_z = Formula::sum(vec![z.clone(), Formula::poly(MultiPoly::constant(-r_k))]).div_x(1);
    let z_k = &MultiPoly::constant(r_k.clone()) + &(&MultiPoly::var(X) * &MultiPoly::var(target_coord));
    let back_u = Formula::sum(vec![
        Formula::var(W),
        Formula::sum(vec![
            Formula::call("g", &["x", "t"], g, vec![("t", Formula::poly(z_k))]),
            Formula::poly(-&s.spec.sigmas[i]),
        ])
        .div_x(n),
    ]);
    let back_w = Formula::sub(
        Formula::var(target_coord),
        Formula::sum(vec![
            Formula::call("f", &["x", &coord], f_i, vec![(&coord, back_u.clone())]),
            Formula::poly(MultiPoly::constant(-r_k)),
        ])
        .div_x(1),
    );
    let mut images = BTreeMap::new();
    images.insert("x".to_string(), Formula::var(X));
    images.insert("y".to_string(), y);
    images.insert("z".to_string(), z);
    images.insert("w".to_string(), w);
    ChartFormulas {
        images,
        forward_z,
        back_u,
        back_w,
        source_coord: coord,
        target_coord: target_coord.to_string(),
    }
}

/// Chart `i` of `S` is paired with the target chart whose root is `r_i`.
pub fn chart_pairing(s: &ChartedSurface, target_roots: &[Q]) -> Result<Vec<usize>> {
    if target_roots.len() != s.d() {
        return Err(Error::PreconditionViolated(format!(
            "{} target roots for {} charts",
            target_roots.len(),
            s.d()
        )));
    }
    check_distinct(target_roots)?;
    s.spec
        .roots
        .iter()
        .map(|r| {
            target_roots.iter().position(|t| t == r).ok_or_else(|| {
                Error::PreconditionViolated(format!("line label {r} is not among the target roots"))
            })
        })
        .collect()
}

/// Builds the map for `S` onto `{xy = P(z)} x A^1`, `P` with roots
/// `target_roots`, and certifies it. Any failed check aborts.
pub fn build_theorem_phi(
    s: &ChartedSurface,
    target_roots: &[Q],
) -> Result<(TheoremMap, IsoCertificate)> {
    let pairing = chart_pairing(s, target_roots)?;
    let f = s.separating_function()?;
    let p = Dense::from_roots(target_roots).to_poly("z");
    let g = build_g(&s.spec.sigmas, &s.spec.roots, s.n())?;
    let lnd = extend_lnd(s, &canonical_lnd(s), &f, &p)?;
    let slice = build_slice(s, &f, &g, &lnd)?;
    let mut chart_images = Vec::new();
    for i in 0..s.d() {
        let z = phi_z(&f.reps[i]);
        let y = p
            .compose_var("z", &z)
            .div_exact_x_power(1)
            .map_err(|e| not_divisible("y-divisibility", i, e))?;
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), MultiPoly::var(X));
        m.insert("y".to_string(), y);
        m.insert("z".to_string(), z);
        m.insert("w".to_string(), slice.reps[i].clone());
        chart_images.push(m);
    }
    let ambient_images = theorem_ambient_images(s, &g, &p)?;
    let map = TheoremMap {
        surface: s.clone(),
        target_roots: target_roots.to_vec(),
        f,
        g,
        chart_images,
        chart_pairing: pairing,
        ambient_images,
    };
    let cert = certify_theorem_map(&map);
    if let Some(bad) = cert.first_failure() {
        return Err(bad.clone().into_error());
    }
    Ok((map, cert))
}

/// Closed forms in the ambient generators, when the surface is embedded and
/// `x` can be divided out in its coordinate ring.
fn theorem_ambient_images(
    s: &ChartedSurface,
    g: &MultiPoly,
    p: &MultiPoly,
) -> Result<Option<BTreeMap<String, MultiPoly>>> {
    let (Some(fa), Some(ua)) = (&s.f_ambient, &s.u_ambient) else {
        return Ok(None);
    };
    let Ok(ring) = AmbientRing::new(&s.relations) else {
        return Ok(None);
    };
    let z = phi_z(fa);
    let y = ring.divide_by_x_power(&p.compose_var("z", &z), 1)?;
    let w = ring.divide_by_x_power(&(ua - &g.compose_var("t", &z)), s.n())?;
    let mut m = BTreeMap::new();
    m.insert("x".to_string(), MultiPoly::var(X));
    m.insert("y".to_string(), y);
    m.insert("z".to_string(), z);
    m.insert("w".to_string(), w);
    Ok(Some(m))
}

fn laurent_residue(name: &str, chart: Option<usize>, diff: &XLaurent) -> CheckReport {
    if diff.is_zero() {
        CheckReport::pass(name)
    } else {
        CheckReport::fail(name, chart, diff)
    }
}

/// Recomputes every claim about `map` from its surface, `f`, `g` and the
/// target roots, and compares with the stored images.
pub fn certify_theorem_map(map: &TheoremMap) -> IsoCertificate {
    let mut cert = IsoCertificate::default();
    let s = &map.surface;
    let n = s.n();
    let d = s.d();
    let f = &map.f;
    let p = map.p();

    let pairing = match chart_pairing(s, &map.target_roots) {
        Ok(pr) => pr,
        Err(e) => {
            cert.push(CheckReport::fail("chart-pairing", None, e));
            return cert;
        }
    };
    cert.push(if pairing == map.chart_pairing {
        CheckReport::pass("chart-pairing")
    } else {
        CheckReport::fail("chart-pairing", None, format!("{:?}", map.chart_pairing))
    });
    if f.reps.len() != d || map.chart_images.len() != d {
        cert.push(CheckReport::fail("chart-count", None, "wrong number of charts"));
        return cert;
    }
    cert.checks.extend(s.verify_construction());
    cert.push(check_star(f, s));
    let mut ov = check_overlap_consistency(f, s);
    ov.name = "overlap-f".into();
    cert.push(ov);
    cert.push(check_star_star(&map.g, &s.spec.sigmas, &s.spec.roots, n));
    if !cert.passed() {
        return cert;
    }

    let alpha = build_alpha(s, f);
    cert.push(match &alpha {
        Ok(_) => CheckReport::pass("alpha-divisibility"),
        Err(e) => CheckReport::fail("alpha-divisibility", None, e),
    });
    let lnd = match extend_lnd(s, &canonical_lnd(s), f, &p) {
        Ok(l) => {
            cert.push(CheckReport::pass("kernel"));
            l
        }
        Err(e) => {
            cert.push(CheckReport::fail("kernel", None, e));
            return cert;
        }
    };
    cert.push(lnd.check_transitions(s));
    // the stored w-image is a slice; closed-forms below ties it to the formula
    let slice: Vec<CheckReport> = (0..d)
        .map(|i| {
            let w = map.chart_images[i].get(W).cloned().unwrap_or_default();
            CheckReport::zero("slice", Some(i), &(&lnd.apply(i, &w) - &MultiPoly::one()))
        })
        .collect();
    cert.push(CheckReport::all("slice", slice));
    for i in 0..d {
        match check_locally_nilpotent(
            &lnd,
            i,
            &[MultiPoly::var(s.coord(i)), MultiPoly::var(W)],
            None,
        ) {
            Ok(r) => cert.push(r.report),
            Err(Error::CapExceeded { generator, cap }) => cert
                .inconclusive
                .push(format!("locally-nilpotent on chart {i}: {generator} after {cap} steps")),
            Err(e) => cert.push(CheckReport::fail("locally-nilpotent", Some(i), e)),
        }
    }

    // stored images against the unexpanded construction
    let f_tilde = alpha.unwrap_or_default();
    let mut closed = Vec::new();
    let mut inverse = Vec::new();
    for i in 0..d {
        let k = pairing[i];
        let r_k = &map.target_roots[k];
        let cf = chart_formulas(s, &f.reps[i], &map.g, &p, i, r_k, &format!("z{}", k + 1));
        for v in GENERATORS {
            let stored = map.chart_images[i].get(v).cloned().unwrap_or_default();
            let value = cf.images[v].eval_identity();
            closed.push(laurent_residue(
                &format!("closed-form-{v}"),
                Some(i),
                &(&XLaurent::from_poly(stored) - &value),
            ));
        }
        let image_y = map.chart_images[i].get("y").cloned().unwrap_or_default();
        let image_z = map.chart_images[i].get("z").cloned().unwrap_or_default();
        let rel = &(&MultiPoly::var(X) * &image_y) - &p.compose_var("z", &image_z);
        closed.push(CheckReport::zero("well-defined", Some(i), &rel));
        if let Some(ft) = f_tilde.get(i) {
            let fz = cf.forward_z.eval_identity();
            closed.push(laurent_residue(
                "forward-z",
                Some(i),
                &(&fz - &XLaurent::from_poly(ft + &MultiPoly::var(W))),
            ));
        }
        inverse.extend(chart_inverse_checks(&cf, i));
    }
    cert.push(CheckReport::all("closed-forms", closed));
    cert.push(CheckReport::all("chart-inverse", inverse));
    for v in GENERATORS {
        let g = GlobalFunction {
            reps: map
                .chart_images
                .iter()
                .map(|m| m.get(v).cloned().unwrap_or_default())
                .collect(),
        };
        let mut r = check_overlap_consistency(&g, s);
        r.name = format!("overlap-image-{v}");
        cert.push(r);
    }
    if let Some(amb) = &map.ambient_images {
        let mut parts = Vec::new();
        for v in GENERATORS {
            let a = amb.get(v).cloned().unwrap_or_default();
            for i in 0..d {
                parts.push(match s.restrict(&a, i) {
                    Ok(rest) => CheckReport::zero(
                        &format!("ambient-{v}"),
                        Some(i),
                        &(&rest - &map.chart_images[i].get(v).cloned().unwrap_or_default()),
                    ),
                    Err(e) => CheckReport::fail(&format!("ambient-{v}"), Some(i), e),
                });
            }
        }
        cert.push(CheckReport::all("ambient-images", parts));
    }
    cert
}

/// Forward and backward chart maps are polynomial and compose to the
/// identity both ways.
fn chart_inverse_checks(cf: &ChartFormulas, i: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let fz = cf.forward_z.eval_identity();
    let fw = cf.images["w"].eval_identity();
    let bu = cf.back_u.eval_identity();
    let bw = cf.back_w.eval_identity();
    for (name, v) in [
        ("forward-regular", &fz),
        ("forward-regular", &fw),
        ("backward-regular", &bu),
        ("backward-regular", &bw),
    ] {
        if !v.is_polynomial() {
            out.push(CheckReport::fail(name, Some(i), v));
        }
    }
    let there = bindings([(cf.target_coord.as_str(), fz.clone()), (W, fw.clone())]);
    out.push(laurent_residue(
        "back-after-forward-u",
        Some(i),
        &(&cf.back_u.eval(&there) - &XLaurent::var(&cf.source_coord)),
    ));
    out.push(laurent_residue(
        "back-after-forward-w",
        Some(i),
        &(&cf.back_w.eval(&there) - &XLaurent::var(W)),
    ));
    let back = bindings([(cf.source_coord.as_str(), bu), (W, bw)]);
    out.push(laurent_residue(
        "forward-after-back-z",
        Some(i),
        &(&cf.forward_z.eval(&back) - &XLaurent::var(&cf.target_coord)),
    ));
    out.push(laurent_residue(
        "forward-after-back-w",
        Some(i),
        &(&cf.images["w"].eval(&back) - &XLaurent::var(W)),
    ));
    out
}

/// `w` of the source cylinder written on each chart of the target
/// `{xy = P(z)} x A^1`, indexed by target chart.
pub fn inverse_alpha(map: &TheoremMap) -> Result<GlobalFunction> {
    let s = &map.surface;
    let p = map.p();
    let f_tilde = build_alpha(s, &map.f)?;
    let _ = f_tilde;
    let mut reps = vec![MultiPoly::zero(); s.d()];
    for i in 0..s.d() {
        let k = map.chart_pairing[i];
        let cf = chart_formulas(
            s,
            &map.f.reps[i],
            &map.g,
            &p,
            i,
            &map.target_roots[k],
            &format!("z{}", k + 1),
        );
        reps[k] = cf.back_w.eval_identity().to_poly()?;
    }
    Ok(GlobalFunction { reps })
}

/// Default bound for [`globalize`]: `2 (n + d)`, or the value of the
/// environment variable `DANIELEWSKI_DEGREE_BOUND`.
pub fn default_degree_bound(s: &ChartedSurface) -> u32 {
    std::env::var("DANIELEWSKI_DEGREE_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(2 * (s.n() + s.d() as u32))
}

fn monomials(vars: &[String], degree: u32) -> Vec<Vec<u32>> {
    // all exponent vectors of total degree <= degree
    let mut out = vec![vec![]];
    for _ in vars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=degree - used {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Leading exponent vector under total degree, ties broken by lex.
fn graded_leading(p: &MultiPoly, vars: &[String]) -> Vec<u32> {
    let mut best: Option<(u32, Vec<u32>)> = None;
    for (powers, _) in p.terms() {
        let e: Vec<u32> = vars
            .iter()
            .map(|v| powers.iter().find(|(n, _)| n == v).map_or(0, |(_, k)| *k))
            .collect();
        let deg = e.iter().sum();
        if best.as_ref().is_none_or(|(bd, be)| (deg, &e) > (*bd, be)) {
            best = Some((deg, e));
        }
    }
    best.map(|(_, e)| e).unwrap_or_default()
}

/// Searches for an ambient polynomial in the generators of `s` (plus
/// `extra` variables that every chart leaves untouched) whose restriction
/// to chart `i` is `g.reps[i]`, trying total degrees `1..=bound`.
pub fn globalize(
    g: &GlobalFunction,
    s: &ChartedSurface,
    extra: &[&str],
    bound: u32,
) -> Result<Option<MultiPoly>> {
    if s.ambient_vars.is_empty() {
        return Err(Error::PreconditionViolated(
            "surface has no ambient embedding".into(),
        ));
    }
    let mut vars = s.ambient_vars.clone();
    vars.extend(extra.iter().map(|v| v.to_string()));
    // with one relation, monomials divisible by its graded leading term are
    // redundant and dropping them keeps the solution unique
    let excluded: Vec<Vec<u32>> = if s.relations.len() == 1 {
        vec![graded_leading(&s.relations[0], &vars)]
    } else {
        Vec::new()
    };
    for b in 0..=bound {
        let monos: Vec<Vec<u32>> = monomials(&vars, b)
            .into_iter()
            .filter(|e| {
                !excluded
                    .iter()
                    .any(|l| l.iter().zip(e).all(|(a, c)| c >= a))
            })
            .collect();
        let polys: Vec<MultiPoly> = monos
            .iter()
            .map(|e| {
                let powers: Vec<(&str, u32)> =
                    vars.iter().map(|v| v.as_str()).zip(e.iter().copied()).collect();
                MultiPoly::monomial(Q::one(), &powers)
            })
            .collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        let mut rhs = Vec::new();
        for (i, target) in g.reps.iter().enumerate() {
            // row per chart monomial
            let mut index: BTreeMap<String, usize> = BTreeMap::new();
            let mut chart_rows: Vec<SparseRow> = Vec::new();
            let mut chart_rhs: Vec<Q> = Vec::new();
            let mut slot = |key: String, rows: &mut Vec<SparseRow>, rhs: &mut Vec<Q>| -> usize {
                *index.entry(key).or_insert_with(|| {
                    rows.push(SparseRow::new());
                    rhs.push(Q::zero());
                    rows.len() - 1
                })
            };
            for (col, m) in polys.iter().enumerate() {
                let r = s.restrict(m, i)?;
                for (powers, c) in r.terms() {
                    let key = format!("{powers:?}");
                    let k = slot(key, &mut chart_rows, &mut chart_rhs);
                    chart_rows[k].insert(col, c.clone());
                }
            }
            for (powers, c) in target.terms() {
                let key = format!("{powers:?}");
                let k = slot(key, &mut chart_rows, &mut chart_rhs);
                chart_rhs[k] = c.clone();
            }
            rows.extend(chart_rows);
            rhs.extend(chart_rhs);
        }
        let Some(sol) = solve(rows, rhs, polys.len()).values().map(|v| v.to_vec()) else {
            continue;
        };
        let mut acc = MultiPoly::zero();
        for (c, m) in sol.iter().zip(&polys) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        // round trip
        let ok = (0..s.d()).all(|i| s.restrict(&acc, i).ok().as_ref() == Some(&g.reps[i]));
        if ok {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `xy - P(z)` and `G - lambda` in `(x, y, z, w)`.
    pub equations: Vec<MultiPoly>,
    /// The inverse image of the source cylinder coordinate.
    pub inverse_w: MultiPoly,
    pub lambda: Q,
    pub bound: u32,
}

/// `S` as the complete intersection `xy = P(z)`, `G(x, y, z, w) = lambda`
/// in `A^4`, where `G` is the source cylinder coordinate pulled back along
/// the inverse map.
pub fn embedding_equations(
    s: &ChartedSurface,
    target_roots: &[Q],
    lambda: &Q,
    bound: Option<u32>,
) -> Result<Embedding> {
    let (map, _) = build_theorem_phi(s, target_roots)?;
    let bound = bound.unwrap_or_else(|| default_degree_bound(s));
    let target = map.target()?;
    let reps = inverse_alpha(&map)?;
    let g = globalize(&reps, &target, &[W], bound)?.ok_or(Error::GlobalizationFailed(bound))?;
    let rel = target.relations[0].clone();
    Ok(Embedding {
        equations: vec![rel, &g - &MultiPoly::constant(lambda.clone())],
        inverse_w: g,
        lambda: lambda.clone(),
        bound,
    })
}

fn classical_relation(n: u32, p: &MultiPoly) -> MultiPoly {
    &MultiPoly::var("y").shift_var(X, n) - p
}

/// Closed forms and formulas of
/// `(x, y, z, w) -> (x, Q(g(z) + x^m w)/x^m, g(z) + x^m w, (z - f(g(z) + x^m w))/x^n)`
/// on `x^n y = P(z)`.
fn prop5_direction(
    f: &MultiPoly,
    g: &MultiPoly,
    q: &MultiPoly,
    n: u32,
    m: u32,
    ring: &AmbientRing,
    names: (&str, &str),
) -> Result<(BTreeMap<String, MultiPoly>, BTreeMap<String, Formula>)> {
    let inner_poly = g + &MultiPoly::var(W).shift_var(X, m);
    let inner = Formula::sum(vec![
        Formula::call(names.1, &["z"], g, vec![]),
        Formula::poly(MultiPoly::var(W).shift_var(X, m)),
    ]);
    let mut formulas = BTreeMap::new();
    formulas.insert("x".to_string(), Formula::var(X));
    formulas.insert("z".to_string(), inner.clone());
    formulas.insert(
        "y".to_string(),
        Formula::call("Q", &["z"], q, vec![("z", inner.clone())]).div_x(m),
    );
    formulas.insert(
        "w".to_string(),
        Formula::sub(
            Formula::var("z"),
            Formula::call(names.0, &["z"], f, vec![("z", inner)]),
        )
        .div_x(n),
    );
    let mut images = BTreeMap::new();
    images.insert("x".to_string(), MultiPoly::var(X));
    images.insert("z".to_string(), inner_poly.clone());
    images.insert(
        "y".to_string(),
        ring.divide_by_x_power(&q.compose_var("z", &inner_poly), m)?,
    );
    images.insert(
        "w".to_string(),
        ring.divide_by_x_power(&(&MultiPoly::var("z") - &f.compose_var("z", &inner_poly)), n)?,
    );
    Ok((images, formulas))
}

/// Checks `P(f(z))` divisible by `Q(z)^n` and
/// `z - g(f(z) + x^n w)` in the ideal `(Q(z), x^m)`.
fn prop5_divisibility(
    f: &MultiPoly,
    g: &MultiPoly,
    p: &MultiPoly,
    q: &MultiPoly,
    n: u32,
    m: u32,
    name: &str,
) -> Result<CheckReport> {
    let pf = Dense::from_poly(&p.compose_var("z", f), "z")?;
    let qn = Dense::from_poly(&q.pow(n), "z")?;
    let (_, r) = pf.div_rem(&qn);
    if !r.is_zero() {
        return Ok(CheckReport::fail(name, None, r.to_poly("z")));
    }
    let h = &MultiPoly::var("z")
        - &g.compose_var("z", &(f + &MultiPoly::var(W).shift_var(X, n)));
    let h = h.truncate(X, m);
    let (_, rem) = crate::ambient::div_rem_univariate(&h, q, "z");
    Ok(CheckReport::zero(name, None, &rem))
}

/// The explicit pair between `x^n y = P(z)` and `x^m y = Q(z)` cylinders.
pub fn build_prop5_pair(roots_p: &[Q], roots_q: &[Q], n: u32, m: u32) -> Result<Prop5Pair> {
    if roots_p.len() < 2 {
        return Err(Error::PreconditionViolated("need at least two roots".into()));
    }
    let (f, g) = prop5_fg(roots_p, roots_q, n, m)?;
    let p = Dense::from_roots(roots_p).to_poly("z");
    let q = Dense::from_roots(roots_q).to_poly("z");
    let rel_p = classical_relation(n, &p);
    let rel_q = classical_relation(m, &q);
    let ring_p = AmbientRing::new(std::slice::from_ref(&rel_p))?;
    let ring_q = AmbientRing::new(std::slice::from_ref(&rel_q))?;
    let checks = vec![
        prop5_divisibility(&f, &g, &p, &q, n, m, "P(f) divisible by Q^n")?,
        prop5_divisibility(&g, &f, &q, &p, m, n, "Q(g) divisible by P^m")?,
    ];
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(bad.clone().into_error());
    }
    let (phi_images, phi_formulas) = prop5_direction(&f, &g, &q, n, m, &ring_p, ("f", "g"))?;
    let (psi_images, psi_formulas) = prop5_direction(&g, &f, &p, m, n, &ring_q, ("g", "f"))?;
    let name_p = format!("{} = {p}", MultiPoly::var("y").shift_var(X, n));
    let name_q = format!("{} = {q}", MultiPoly::var("y").shift_var(X, m));
    let mut psi_formulas = psi_formulas;
    // the psi formulas call P, not Q
    if let Some(Formula::DivX(inner, k)) = psi_formulas.get("y").cloned() {
        if let Formula::Call { params, body, args, .. } = *inner {
            psi_formulas.insert(
                "y".into(),
                Formula::DivX(
                    Box::new(Formula::Call {
                        name: "P".into(),
                        params,
                        body,
                        args,
                    }),
                    k,
                ),
            );
        }
    }
    Ok(Prop5Pair {
        construction: Prop5Construction {
            roots_p: roots_p.to_vec(),
            roots_q: roots_q.to_vec(),
            n,
            m,
        },
        phi: AmbientMap {
            source: name_p.clone(),
            target: name_q.clone(),
            source_relations: vec![rel_p.clone()],
            target_relations: vec![rel_q.clone()],
            images: phi_images,
            formulas: Some(phi_formulas),
        },
        psi: AmbientMap {
            source: name_q,
            target: name_p,
            source_relations: vec![rel_q],
            target_relations: vec![rel_p],
            images: psi_images,
            formulas: Some(psi_formulas),
        },
        f,
        g,
        p,
        q,
        checks,
    })
}

/// Formulas for an ambient pair rebuilt from its construction data.
pub fn prop5_formulas(
    c: &Prop5Construction,
) -> Result<(BTreeMap<String, Formula>, BTreeMap<String, Formula>)> {
    let pair = build_prop5_pair(&c.roots_p, &c.roots_q, c.n, c.m)?;
    Ok((pair.phi.formulas.unwrap(), pair.psi.formulas.unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::make_classical;
    use crate::syntax::parse_poly;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn russell_pair_closed_forms() {
        let pair = build_prop5_pair(&[q(1), q(-1)], &[q(1), q(-1)], 2, 1).unwrap();
        assert_eq!(pair.phi.images["y"], parse_poly("x*y + 2*z*w + x*w^2").unwrap());
        assert_eq!(pair.phi.images["z"], parse_poly("z + x*w").unwrap());
        assert_eq!(
            pair.phi.images["w"],
            parse_poly("1/2*(y*z + 3*z*w^2 + 3*x*y*w + x*w^3)").unwrap()
        );
        assert_eq!(
            pair.psi.images["y"],
            parse_poly("x^2*w^2 + 2*w*(3*z - z^3)/2 + y^2*(1/4*z^2 - 1)").unwrap()
        );
        assert_eq!(pair.psi.images["w"], parse_poly("-x*w + 1/2*z*y").unwrap());
    }

    #[test]
    fn classical_self_map_is_relabeling() {
        let s = make_classical(1, &[q(1), q(-1), q(2)]).unwrap();
        let (map, cert) = build_theorem_phi(&s, &[q(1), q(-1), q(2)]).unwrap();
        assert!(cert.valid());
        let amb = map.ambient_images.unwrap();
        assert_eq!(amb["z"], parse_poly("z + x*w").unwrap());
        assert_eq!(amb["w"], parse_poly("-w").unwrap());
    }

    #[test]
    fn russell_embedding() {
        let s = make_classical(2, &[q(1), q(-1)]).unwrap();
        let e = embedding_equations(&s, &[q(1), q(-1)], &Q::zero(), None).unwrap();
        assert_eq!(e.inverse_w, parse_poly("-x*w + 1/2*z*y").unwrap());
    }
}
