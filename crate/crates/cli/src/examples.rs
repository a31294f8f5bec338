//! Worked examples, each compared against its known closed forms.

use clap::ValueEnum;
use danielewski::cylinder::{build_prop5_pair, build_theorem_phi, CylinderMap, IsoCertificate, Prop5Pair, TheoremMap};
use danielewski::interpolation::bezout_pair;
use danielewski::io::Document;
use danielewski::surface::{make_double_example, make_iterated_example};
use danielewski::syntax::parse_poly;
use danielewski::verify::{check_star, verify_inverse_pair, CheckReport};
use danielewski::{Error, GaussianRational as Q, MultiPoly};

use crate::{certificate_code, render, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Russell,
    Classical,
    Iterated,
    Double,
}

fn expect(name: &str, got: &MultiPoly, want: &str) -> CheckReport {
    let want = parse_poly(want).expect("golden formula parses");
    CheckReport::zero(name, None, &(got - &want))
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn russell_checks(pair: &Prop5Pair) -> Result<Vec<CheckReport>, Error> {
    let bezout = bezout_pair(&parse_poly("z^2 - 1")?)?;
    let g = "(z - (z^2 - 1)*z/2)";
    Ok(vec![
        expect("golden-bezout-g", &bezout.g, g),
        expect("golden-hermite-g", &pair.f, g),
        expect("golden-phi-y", &pair.phi.images["y"], "x*y + 2*z*w + x*w^2"),
        expect("golden-phi-z", &pair.phi.images["z"], "z + x*w"),
        expect(
            "golden-phi-w",
            &pair.phi.images["w"],
            "1/2*(y*z + 3*z*w^2 + 3*x*y*w + x*w^3)",
        ),
        expect(
            "golden-psi-y",
            &pair.psi.images["y"],
            &format!("x^2*w^2 + 2*w*{g} + y^2*(1/4*z^2 - 1)"),
        ),
        expect("golden-psi-z", &pair.psi.images["z"], &format!("x^2*w + {g}")),
        expect("golden-psi-w", &pair.psi.images["w"], "-x*w + 1/2*z*y"),
    ])
}

fn theorem_golden(map: &TheoremMap, f: &str, u: &str, g: &str) -> Vec<CheckReport> {
    let s = &map.surface;
    let mut out = vec![
        expect("golden-g", &map.g, g),
        expect("golden-f", s.f_ambient.as_ref().unwrap_or(&MultiPoly::zero()), f),
        expect("golden-u", s.u_ambient.as_ref().unwrap_or(&MultiPoly::zero()), u),
    ];
    let mut star = check_star(&map.f, s);
    star.name = "golden-f-on-lines".into();
    out.push(star);
    out.push(CheckReport::all("golden-chart-identities", s.example_identities()));
    let shape = map.formulas(0);
    let n = s.n();
    for (v, want) in [
        ("y", "P(f + x*w)/x".to_string()),
        ("z", "f + x*w".to_string()),
        ("w", format!("(u - g(x, f + x*w))/x^{n}")),
    ] {
        let got = shape[v].to_text();
        out.push(if got == want {
            CheckReport::pass(&format!("golden-shape-{v}"))
        } else {
            CheckReport::fail(&format!("golden-shape-{v}"), None, got)
        });
    }
    out
}

fn pair_output(format: Format, pair: &Prop5Pair, cert: &IsoCertificate) -> String {
    match format {
        Format::Text => {
            let mut out = render::pair_text("phi", &pair.phi, &[("f", &pair.f), ("g", &pair.g)]);
            out.push_str(&render::pair_text("psi", &pair.psi, &[("f", &pair.f), ("g", &pair.g)]));
            out.push_str(&render::summary_line(cert));
            out.push('\n');
            out
        }
        Format::Latex => {
            let mut out = render::pair_latex("\\varphi", &pair.phi, &[("f", &pair.f), ("g", &pair.g)]);
            out.push_str(&render::pair_latex("\\psi", &pair.psi, &[]));
            out
        }
        Format::Json => {
            let mut doc = Document::with_map(&CylinderMap::AmbientPair {
                phi: pair.phi.clone(),
                psi: pair.psi.clone(),
                construction: Some(pair.construction.clone()),
            });
            doc.report = Some(cert.into());
            doc.to_json()
        }
    }
}

fn theorem_output(format: Format, map: &TheoremMap, cert: &IsoCertificate) -> String {
    match format {
        Format::Text => {
            let mut out = render::theorem_text(map);
            out.push_str(&render::summary_line(cert));
            out.push('\n');
            out
        }
        Format::Latex => render::theorem_latex(map),
        Format::Json => {
            let mut doc = Document::with_map(&CylinderMap::Theorem(map.clone()));
            doc.report = Some(cert.into());
            doc.to_json()
        }
    }
}

pub fn run(format: Format, example: Example) -> Result<u8, Error> {
    let (out, cert) = match example {
        Example::Russell | Example::Classical => {
            let pair = match example {
                Example::Russell => build_prop5_pair(&[q(1), q(-1)], &[q(1), q(-1)], 2, 1)?,
                _ => build_prop5_pair(&[q(1), q(-1), q(0)], &[q(0), q(1), q(2)], 1, 2)?,
            };
            let mut checks = pair.checks.clone();
            checks.extend(verify_inverse_pair(&pair.phi, &pair.psi));
            if example == Example::Russell {
                checks.extend(russell_checks(&pair)?);
            }
            let cert = IsoCertificate {
                checks,
                inconclusive: Vec::new(),
            };
            (pair_output(format, &pair, &cert), cert)
        }
        Example::Iterated | Example::Double => {
            let s = match example {
                Example::Iterated => make_iterated_example()?,
                _ => make_double_example()?,
            };
            let (map, mut cert) = build_theorem_phi(&s, &s.spec.roots.clone())?;
            let golden = match example {
                Example::Iterated => theorem_golden(
                    &map,
                    "z",
                    "x*y + z^2",
                    "t^2 - 1/2*t^2*(t^4 - 1) + x*1/2*t^3",
                ),
                _ => theorem_golden(
                    &map,
                    "(z + y)/2 + i*(y - z)/2",
                    "z",
                    "(1 - i)/2*t^3 + (1 + i)/2*t - (t^4 - 1)*t/4*(3*(1 - i)/2*t^2 + (1 + i)/2) + x*1/2*t^2",
                ),
            };
            cert.checks.extend(golden);
            (theorem_output(format, &map, &cert), cert)
        }
    };
    print!("{out}");
    if let Some(bad) = cert.first_failure() {
        eprintln!("error: {}", bad.clone().into_error());
    }
    Ok(certificate_code(&cert))
}
