//! Text and LaTeX rendering of maps, reports and embeddings.

use std::fmt::Write as _;

use danielewski::cylinder::{AmbientMap, Embedding, IsoCertificate, TheoremMap, GENERATORS};
use danielewski::formula::Formula;
use danielewski::syntax::latex_poly;
use danielewski::verify::CheckReport;
use danielewski::MultiPoly;

fn roots_text(map: &TheoremMap) -> String {
    map.target_roots
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn theorem_text(map: &TheoremMap) -> String {
    let s = &map.surface;
    let mut out = String::new();
    let _ = writeln!(out, "source: {} (x) A^1", s.name);
    let _ = writeln!(out, "target: x*y = {} (x) A^1", map.p());
    let _ = writeln!(out, "target roots: {}", roots_text(map));
    match &s.f_ambient {
        Some(f) => {
            let _ = writeln!(out, "f = {f}");
        }
        None => {
            for (i, f) in map.f.reps.iter().enumerate() {
                let _ = writeln!(out, "f on chart {} = {f}", i + 1);
            }
        }
    }
    if let Some(u) = &s.u_ambient {
        let _ = writeln!(out, "u = {u}");
    }
    let _ = writeln!(out, "g(x, t) = {}", map.g);
    let formulas = map.formulas(0);
    for v in GENERATORS {
        let _ = writeln!(out, "Phi({v}) = {}", formulas[v].to_text());
    }
    if let Some(amb) = &map.ambient_images {
        let _ = writeln!(out, "ambient images:");
        for v in GENERATORS {
            let _ = writeln!(out, "  Phi({v}) = {}", amb[v]);
        }
    }
    for (i, images) in map.chart_images.iter().enumerate() {
        let _ = writeln!(
            out,
            "chart {} (x, {}, w) -> target chart {}:",
            i + 1,
            s.coord(i),
            map.chart_pairing[i] + 1
        );
        for v in GENERATORS {
            let _ = writeln!(out, "  Phi({v}) = {}", images[v]);
        }
    }
    out
}

pub fn theorem_latex(map: &TheoremMap) -> String {
    let s = &map.surface;
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{align*}}");
    let _ = writeln!(out, "P(z)&={}\\\\", latex_poly(&map.p()));
    if let Some(f) = &s.f_ambient {
        let _ = writeln!(out, "f&={}\\\\", latex_poly(f));
    }
    if let Some(u) = &s.u_ambient {
        let _ = writeln!(out, "u&={}\\\\", latex_poly(u));
    }
    let _ = write!(out, "g(x,t)&={}", latex_poly(&map.g));
    let formulas = map.formulas(0);
    for v in GENERATORS {
        let _ = write!(out, "\\\\\n\\Phi({v})&={}", formulas[v].to_latex());
        if let Some(amb) = &map.ambient_images {
            if !matches!(&formulas[v], Formula::Poly(_)) {
                let _ = write!(out, "\\\\\n&={}", latex_poly(&amb[v]));
            }
        }
    }
    let _ = writeln!(out, "\n\\end{{align*}}");
    if map.ambient_images.is_none() {
        for (i, images) in map.chart_images.iter().enumerate() {
            let _ = writeln!(out, "% chart {}", i + 1);
            let _ = writeln!(out, "\\begin{{align*}}");
            let lines: Vec<String> = GENERATORS
                .iter()
                .map(|v| format!("\\Phi({v})&={}", latex_poly(&images[*v])))
                .collect();
            let _ = writeln!(out, "{}", lines.join("\\\\\n"));
            let _ = writeln!(out, "\\end{{align*}}");
        }
    }
    out
}

pub fn pair_text(
    label: &str,
    map: &AmbientMap,
    named: &[(&str, &MultiPoly)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{label}: {{{}}} (x) A^1 -> {{{}}} (x) A^1", map.source, map.target);
    for (name, p) in named {
        let _ = writeln!(out, "  {name}(z) = {p}");
    }
    for v in GENERATORS {
        let closed = &map.images[v];
        match map.formulas.as_ref().and_then(|f| f.get(v)) {
            Some(f) if !matches!(f, Formula::Poly(_)) => {
                let _ = writeln!(out, "  {v} -> {}", f.to_text());
                let _ = writeln!(out, "     = {closed}");
            }
            _ => {
                let _ = writeln!(out, "  {v} -> {closed}");
            }
        }
    }
    out
}

pub fn pair_latex(
    symbol: &str,
    map: &AmbientMap,
    named: &[(&str, &MultiPoly)],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{align*}}");
    let mut lines: Vec<String> = named
        .iter()
        .map(|(name, p)| format!("{name}(z)&={}", latex_poly(p)))
        .collect();
    for v in GENERATORS {
        let closed = latex_poly(&map.images[v]);
        match map.formulas.as_ref().and_then(|f| f.get(v)) {
            Some(f) if !matches!(f, Formula::Poly(_)) => {
                lines.push(format!("{symbol}^*({v})&={}", f.to_latex()));
                lines.push(format!("&={closed}"));
            }
            _ => lines.push(format!("{symbol}^*({v})&={closed}")),
        }
    }
    let _ = writeln!(out, "{}", lines.join("\\\\\n"));
    let _ = writeln!(out, "\\end{{align*}}");
    out
}

fn check_line(c: &CheckReport) -> String {
    match (&c.witness, c.passed) {
        (_, true) => format!("PASS {}", c.name),
        (Some(w), false) => match w.chart {
            Some(i) => format!("FAIL {} [chart {}]: {}", c.name, i + 1, w.residue),
            None => format!("FAIL {}: {}", c.name, w.residue),
        },
        (None, false) => format!("FAIL {}", c.name),
    }
}

pub fn report_text(cert: &IsoCertificate) -> String {
    let mut out = String::new();
    for c in &cert.checks {
        let _ = writeln!(out, "{}", check_line(c));
    }
    for s in &cert.inconclusive {
        let _ = writeln!(out, "INCONCLUSIVE {s}");
    }
    let verdict = if !cert.passed() {
        "FAIL"
    } else if !cert.inconclusive.is_empty() {
        "INCONCLUSIVE"
    } else {
        "PASS"
    };
    let _ = writeln!(out, "result: {verdict} ({} checks)", cert.checks.len());
    out
}

pub fn report_latex(cert: &IsoCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{itemize}}");
    for c in &cert.checks {
        let mark = if c.passed { "pass" } else { "fail" };
        let _ = writeln!(out, "\\item \\texttt{{{}}}: {mark}", c.name);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "  % residue: {}", w.residue);
        }
    }
    for s in &cert.inconclusive {
        let _ = writeln!(out, "\\item inconclusive: {s}");
    }
    let _ = writeln!(out, "\\end{{itemize}}");
    out
}

pub fn summary_line(cert: &IsoCertificate) -> String {
    let failed = cert.checks.iter().filter(|c| !c.passed).count();
    format!(
        "checks: {} passed, {failed} failed, {} inconclusive",
        cert.checks.len() - failed,
        cert.inconclusive.len()
    )
}

pub fn embedding_text(e: &Embedding) -> String {
    let mut out = String::new();
    for eq in &e.equations {
        let _ = writeln!(out, "{eq} = 0");
    }
    out
}

pub fn embedding_latex(e: &Embedding) -> String {
    let lines: Vec<String> = e
        .equations
        .iter()
        .map(|eq| format!("{}&=0", latex_poly(eq)))
        .collect();
    format!("\\begin{{align*}}\n{}\n\\end{{align*}}\n", lines.join("\\\\\n"))
}
