//! Exact checkers. Every check returns a [`CheckReport`]; a failing report
//! carries a chart index (when one applies) and a nonzero residue.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ambient::Cascade;
use crate::cylinder::AmbientMap;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::laurent::{substitute, Bindings};
use crate::gaussian::GaussianRational as Q;
use crate::poly::MultiPoly;
use crate::surface::{ChartedSurface, Derivation, GlobalFunction};
use crate::univariate::taylor_shift;

pub use crate::ambient::ideal_membership;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub chart: Option<usize>,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: &str, chart: Option<usize>, residue: impl ToString) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: false,
            witness: Some(Witness {
                chart,
                residue: residue.to_string(),
            }),
        }
    }

    /// Passes when `residue` is zero.
    pub fn zero(name: &str, chart: Option<usize>, residue: &MultiPoly) -> Self {
        if residue.is_zero() {
            Self::pass(name)
        } else {
            Self::fail(name, chart, residue)
        }
    }

    /// First failure among `parts`, renamed to `name`.
    pub fn all(name: &str, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        for p in parts {
            if !p.passed {
                let mut w = p.witness.unwrap_or(Witness {
                    chart: None,
                    residue: String::new(),
                });
                w.residue = format!("{}: {}", p.name, w.residue);
                return CheckReport {
                    name: name.to_string(),
                    passed: false,
                    witness: Some(w),
                };
            }
        }
        Self::pass(name)
    }

    pub fn into_error(self) -> Error {
        let (chart, residue) = match self.witness {
            Some(w) => (w.chart, w.residue),
            None => (None, String::new()),
        };
        Error::CheckFailed {
            name: self.name,
            chart,
            residue,
        }
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed {
            Ok(())
        } else {
            Err(self.into_error())
        }
    }
}

/// `f` restricted to the line of chart `i` (x = 0) is the constant `r_i`.
pub fn check_star(f: &GlobalFunction, s: &ChartedSurface) -> CheckReport {
    for (i, (rep, r)) in f.reps.iter().zip(&s.spec.roots).enumerate() {
        let at0 = rep.eval_var("x", &Q::zero());
        let residue = &at0 - &MultiPoly::constant(r.clone());
        if !residue.is_zero() {
            return CheckReport::fail("star", Some(i), residue);
        }
    }
    CheckReport::pass("star")
}

/// `g(x, r_i + x t) = sigma_i(x) mod x^n` for every `i`.
pub fn check_star_star(g: &MultiPoly, sigmas: &[MultiPoly], roots: &[Q], n: u32) -> CheckReport {
    for (i, (sigma, r)) in sigmas.iter().zip(roots).enumerate() {
        let shifted = taylor_shift(g, r, "x", "t").truncate("x", n);
        let residue = &shifted - sigma;
        if !residue.is_zero() {
            return CheckReport::fail("star-star", Some(i), residue);
        }
    }
    CheckReport::pass("star-star")
}

/// Nilpotency indices per generator: the number of applications of `D`
/// needed to reach zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub report: CheckReport,
    pub indices: BTreeMap<String, usize>,
}

/// Default iteration cap for `gen` under `d` on `chart`.
pub fn default_nilpotency_cap(d: &Derivation, chart: usize, gen: &MultiPoly) -> usize {
    let deg = gen.total_degree_without("x") as usize;
    let img = d.images[chart]
        .values()
        .map(|p| p.total_degree() as usize)
        .max()
        .unwrap_or(0);
    (1 + deg) * (1 + img) + 4
}

/// Iterates `d` on each generator until it vanishes. Running past the cap
/// is `CapExceeded`, which is inconclusive rather than a failure.
pub fn check_locally_nilpotent(
    d: &Derivation,
    chart: usize,
    gens: &[MultiPoly],
    cap: Option<usize>,
) -> Result<NilpotencyReport> {
    let mut indices = BTreeMap::new();
    for gen in gens {
        let cap = cap.unwrap_or_else(|| default_nilpotency_cap(d, chart, gen));
        let mut cur = gen.clone();
        let mut k = 0;
        while !cur.is_zero() {
            if k >= cap {
                return Err(Error::CapExceeded {
                    generator: gen.to_string(),
                    cap,
                });
            }
            cur = d.apply(chart, &cur);
            k += 1;
        }
        indices.insert(gen.to_string(), k);
    }
    Ok(NilpotencyReport {
        report: CheckReport::pass("locally-nilpotent"),
        indices,
    })
}

/// Checks that `phi` and `psi` are well defined and mutually inverse.
///
/// Both sides are compared after eliminating variables with the relation
/// cascade of the source. When formulas are present they are evaluated
/// unexpanded, so nested compositions collapse before they grow; the stored
/// closed forms are then checked against the formulas.
pub fn verify_inverse_pair(phi: &AmbientMap, psi: &AmbientMap) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (label, map) in [("phi", phi), ("psi", psi)] {
        out.push(check_well_defined(label, map));
        if let Some(formulas) = &map.formulas {
            out.push(check_closed_vs_formula(label, map, formulas));
        }
    }
    out.push(check_composition("psi-after-phi", phi, psi));
    out.push(check_composition("phi-after-psi", psi, phi));
    out
}

fn source_cascade(name: &str, map: &AmbientMap) -> std::result::Result<Cascade, CheckReport> {
    Cascade::from_relations(&map.source_relations)
        .map_err(|e| CheckReport::fail(name, None, e))
}

fn check_well_defined(label: &str, map: &AmbientMap) -> CheckReport {
    let name = format!("{label}-well-defined");
    let cascade = match source_cascade(&name, map) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let env: Bindings = map
        .images
        .iter()
        .map(|(v, p)| (v.clone(), cascade.reduce(p)))
        .collect();
    for rel in &map.target_relations {
        let r = substitute(rel, &env);
        if !r.is_zero() {
            return CheckReport::fail(&name, None, r);
        }
    }
    CheckReport::pass(&name)
}

fn check_closed_vs_formula(
    label: &str,
    map: &AmbientMap,
    formulas: &BTreeMap<String, Formula>,
) -> CheckReport {
    let name = format!("{label}-closed-vs-formula");
    let cascade = match source_cascade(&name, map) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let keys: std::collections::BTreeSet<&String> =
        map.images.keys().chain(formulas.keys()).collect();
    for v in keys {
        let (Some(closed), Some(formula)) = (map.images.get(v), formulas.get(v)) else {
            return CheckReport::fail(&name, None, format!("no image for {v}"));
        };
        let diff = &cascade.reduce(closed) - &formula.eval(cascade.bindings());
        if !diff.is_zero() {
            return CheckReport::fail(&name, None, format!("{v}: {diff}"));
        }
    }
    CheckReport::pass(&name)
}

/// `second o first` against the identity of the source of `first`.
fn check_composition(name: &str, first: &AmbientMap, second: &AmbientMap) -> CheckReport {
    let cascade = match source_cascade(name, first) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let env: Bindings = match &first.formulas {
        Some(fs) => fs
            .iter()
            .map(|(v, f)| (v.clone(), f.eval(cascade.bindings())))
            .collect(),
        None => first
            .images
            .iter()
            .map(|(v, p)| (v.clone(), cascade.reduce(p)))
            .collect(),
    };
    for (v, img) in &second.images {
        let back = match second.formulas.as_ref().and_then(|fs| fs.get(v)) {
            Some(f) => f.eval(&env),
            None => substitute(img, &env),
        };
        let diff = &back - &cascade.reduce(&MultiPoly::var(v));
        if !diff.is_zero() {
            return CheckReport::fail(name, None, format!("{v}: {diff}"));
        }
    }
    CheckReport::pass(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{canonical_lnd, make_classical};

    #[test]
    fn star_star_rejects_identity_for_moving_sigmas() {
        let sigmas = vec![
            &MultiPoly::int(1) + &MultiPoly::var("x"),
            MultiPoly::int(-1),
        ];
        let r = check_star_star(&MultiPoly::var("t"), &sigmas, &[Q::one(), Q::from_int(-1)], 2);
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap().chart, Some(0));
    }

    #[test]
    fn nilpotency_indices() {
        let s = make_classical(2, &[Q::one(), Q::from_int(-1)]).unwrap();
        let d = canonical_lnd(&s);
        let rep = check_locally_nilpotent(&d, 0, &[MultiPoly::var("u1")], None).unwrap();
        assert_eq!(rep.indices["u1"], 2);
        let rep = check_locally_nilpotent(&d, 0, &[MultiPoly::var("u1").pow(3)], None).unwrap();
        assert_eq!(rep.indices["u1^3"], 4);
    }

    #[test]
    fn non_nilpotent_hits_cap() {
        let mut images = BTreeMap::new();
        images.insert("v".to_string(), MultiPoly::var("v"));
        let d = Derivation {
            images: vec![images],
        };
        assert!(matches!(
            check_locally_nilpotent(&d, 0, &[MultiPoly::var("v")], None),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn russell_pair_inverse_and_mutation() {
        use crate::cylinder::build_prop5_pair;
        let pair = build_prop5_pair(&[Q::one(), Q::from_int(-1)], &[Q::one(), Q::from_int(-1)], 2, 1)
            .unwrap();
        assert!(verify_inverse_pair(&pair.phi, &pair.psi).iter().all(|c| c.passed));
        let mut bad = pair.phi.clone();
        let w = bad.images["w"].perturb_term(0, &Q::one());
        bad.images.insert("w".into(), w);
        let reports = verify_inverse_pair(&bad, &pair.psi);
        assert!(reports.iter().any(|c| !c.passed && c.witness.is_some()));
        bad.formulas = None;
        let reports = verify_inverse_pair(&bad, &pair.psi);
        assert!(reports.iter().any(|c| !c.passed));
    }
}
