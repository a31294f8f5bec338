//! Unexpanded map formulas such as `(u - g(x, f + x*w))/x^2`.
//!
//! Formulas are evaluated over the Laurent ring in `x`, innermost first, so
//! compositions that collapse (e.g. `g(f(z) + x^n w) + x^m (...)` back to `z`)
//! never materialise the fully expanded nested polynomial.

use std::fmt::Write as _;

use crate::laurent::{substitute, Bindings, XLaurent};
use crate::poly::MultiPoly;
use crate::syntax::{latex_poly, latex_var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Poly(MultiPoly),
    /// A named sub-expression, printed by name only.
    Named(String, Box<Formula>),
    /// `name(params...)` where each parameter is either bound to a formula or
    /// read from the surrounding environment.
    Call {
        name: String,
        params: Vec<String>,
        body: MultiPoly,
        args: Vec<(String, Formula)>,
    },
    Sum(Vec<Formula>),
    Neg(Box<Formula>),
    Prod(Vec<Formula>),
    /// Division by `x^k`.
    DivX(Box<Formula>, u32),
}

impl Formula {
    pub fn poly(p: MultiPoly) -> Self {
        Formula::Poly(p)
    }

    pub fn var(v: &str) -> Self {
        Formula::Poly(MultiPoly::var(v))
    }

    pub fn named(name: &str, inner: Formula) -> Self {
        Formula::Named(name.to_string(), Box::new(inner))
    }

    pub fn call(name: &str, params: &[&str], body: &MultiPoly, args: Vec<(&str, Formula)>) -> Self {
        Formula::Call {
            name: name.to_string(),
            params: params.iter().map(|s| s.to_string()).collect(),
            body: body.clone(),
            args: args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn sum(parts: Vec<Formula>) -> Self {
        Formula::Sum(parts)
    }

    pub fn sub(a: Formula, b: Formula) -> Self {
        Formula::Sum(vec![a, Formula::Neg(Box::new(b))])
    }

    pub fn div_x(self, k: u32) -> Self {
        if k == 0 {
            self
        } else {
            Formula::DivX(Box::new(self), k)
        }
    }

    pub fn eval(&self, env: &Bindings) -> XLaurent {
        match self {
            Formula::Poly(p) => substitute(p, env),
            Formula::Named(_, inner) => inner.eval(env),
            Formula::Call { body, args, .. } => {
                let mut local = env.clone();
                for (k, a) in args {
                    local.insert(k.clone(), a.eval(env));
                }
                substitute(body, &local)
            }
            Formula::Sum(parts) => parts
                .iter()
                .fold(XLaurent::zero(), |acc, p| &acc + &p.eval(env)),
            Formula::Neg(inner) => -inner.eval(env),
            Formula::Prod(parts) => parts.iter().fold(
                XLaurent::constant(crate::GaussianRational::one()),
                |acc, p| &acc * &p.eval(env),
            ),
            Formula::DivX(inner, k) => inner.eval(env).div_x_power(*k),
        }
    }

    /// Evaluation with every variable standing for itself.
    pub fn eval_identity(&self) -> XLaurent {
        self.eval(&Bindings::new())
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Poly(p) if p.len() > 1 => 1,
            Formula::Poly(p) if p.terms().next().is_some_and(|(m, c)| {
                !m.is_empty() && !(c.is_one() || (-c).is_one())
            }) => 2,
            Formula::Sum(_) => 1,
            Formula::Neg(_) => 1,
            Formula::Prod(_) => 2,
            _ => 3,
        }
    }

    fn text_at(&self, min_prec: u8) -> String {
        let s = self.to_text();
        if self.prec() < min_prec {
            format!("({s})")
        } else {
            s
        }
    }

    /// Plain text in the expression grammar style, e.g. `(u - g(x, f + x*w))/x^2`.
    pub fn to_text(&self) -> String {
        match self {
            Formula::Poly(p) => p.to_string(),
            Formula::Named(name, _) => name.clone(),
            Formula::Call {
                name, params, args, ..
            } => {
                let items: Vec<String> = params
                    .iter()
                    .map(|p| {
                        args.iter()
                            .find(|(k, _)| k == p)
                            .map(|(_, a)| a.to_text())
                            .unwrap_or_else(|| p.clone())
                    })
                    .collect();
                format!("{name}({})", items.join(", "))
            }
            Formula::Sum(parts) => {
                let mut out = String::new();
                for (k, p) in parts.iter().enumerate() {
                    match p {
                        Formula::Neg(inner) => {
                            if k == 0 {
                                out.push('-');
                            } else {
                                out.push_str(" - ");
                            }
                            out.push_str(&inner.text_at(2));
                        }
                        _ => {
                            if k > 0 {
                                out.push_str(" + ");
                            }
                            out.push_str(&p.to_text());
                        }
                    }
                }
                out
            }
            Formula::Neg(inner) => format!("-{}", inner.text_at(2)),
            Formula::Prod(parts) => parts
                .iter()
                .map(|p| p.text_at(2))
                .collect::<Vec<_>>()
                .join("*"),
            Formula::DivX(inner, k) => {
                let den = if *k == 1 { "x".to_string() } else { format!("x^{k}") };
                format!("{}/{den}", inner.text_at(3))
            }
        }
    }

    fn latex_at(&self, min_prec: u8) -> String {
        let s = self.to_latex();
        if self.prec() < min_prec {
            format!("\\left({s}\\right)")
        } else {
            s
        }
    }

    /// LaTeX with `\frac{...}{x^{n}}` for divisions.
    pub fn to_latex(&self) -> String {
        match self {
            Formula::Poly(p) => latex_poly(p),
            Formula::Named(name, _) => latex_var(name),
            Formula::Call {
                name, params, args, ..
            } => {
                let items: Vec<String> = params
                    .iter()
                    .map(|p| {
                        args.iter()
                            .find(|(k, _)| k == p)
                            .map(|(_, a)| a.to_latex())
                            .unwrap_or_else(|| latex_var(p))
                    })
                    .collect();
                format!("{}({})", latex_var(name), items.join(","))
            }
            Formula::Sum(parts) => {
                let mut out = String::new();
                for (k, p) in parts.iter().enumerate() {
                    match p {
                        Formula::Neg(inner) => {
                            out.push('-');
                            out.push_str(&inner.latex_at(2));
                        }
                        _ => {
                            if k > 0 {
                                out.push('+');
                            }
                            out.push_str(&p.to_latex());
                        }
                    }
                }
                out
            }
            Formula::Neg(inner) => format!("-{}", inner.latex_at(2)),
            Formula::Prod(parts) => {
                let mut out = String::new();
                for p in parts {
                    let _ = write!(out, "{}", p.latex_at(2));
                }
                out
            }
            Formula::DivX(inner, k) => {
                let den = if *k == 1 { "x".to_string() } else { format!("x^{{{k}}}") };
                format!("\\frac{{{}}}{{{den}}}", inner.to_latex())
            }
        }
    }
}
