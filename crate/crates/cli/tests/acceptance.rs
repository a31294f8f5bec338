//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use danielewski::cylinder::{build_prop5_pair, build_theorem_phi};
use danielewski::interpolation::{bezout_pair, build_g, prop5_fg};
use danielewski::io::{map_polys_mut, Document, PolyJson};
use danielewski::surface::{make_abstract, make_double_example, make_iterated_example, SurfaceSpec};
use danielewski::syntax::parse_poly;
use danielewski::verify::{check_star, check_star_star, ideal_membership, verify_inverse_pair};
use danielewski::{GaussianRational as Q, MultiPoly};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn mp(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_danielewski"))
}

fn russell() -> Outcome {
    let t = Instant::now();
    let out = bin().args(["examples", "russell"]).output().map_err(|e| e.to_string())?;
    let cli_time = t.elapsed();
    ensure(out.status.code() == Some(0), "examples russell did not exit 0")?;
    let t = Instant::now();
    let pair = build_prop5_pair(&[q(1), q(-1)], &[q(1), q(-1)], 2, 1).map_err(|e| e.to_string())?;
    let lib_time = t.elapsed();
    ensure(
        pair.phi.images["w"] == mp("1/2*(y*z + 3*z*w^2 + 3*x*y*w + x*w^3)"),
        format!("phi w = {}", pair.phi.images["w"]),
    )?;
    ensure(
        pair.psi.images["y"] == mp("x^2*w^2 + 2*w*(z - (z^2 - 1)*z/2) + y^2*(1/4*z^2 - 1)"),
        format!("psi y = {}", pair.psi.images["y"]),
    )?;
    within(cli_time, Duration::from_secs(1))?;
    Ok(format!("cli {cli_time:?}, library {lib_time:?}"))
}

fn bezout() -> Outcome {
    let b = bezout_pair(&mp("z^2 - 1")).map_err(|e| e.to_string())?;
    ensure(b.g == mp("z - (z^2 - 1)*z/2"), format!("bezout g = {}", b.g))?;
    let (f, g) = prop5_fg(&[q(1), q(-1)], &[q(1), q(-1)], 1, 2).map_err(|e| e.to_string())?;
    ensure(f == mp("z"), format!("hermite f = {f}"))?;
    ensure(g == b.g, format!("hermite g = {g}"))?;
    Ok(format!("g = {g}"))
}

fn classical_suite() -> Outcome {
    let t = Instant::now();
    let sets = [
        vec![q(1), q(-1)],
        vec![q(1), q(-1), q(0)],
        vec![q(1), Q::i(), -Q::i(), q(-1)],
    ];
    let mut count = 0;
    for roots in &sets {
        for n in 1..=3 {
            for m in 1..=3 {
                let pair = build_prop5_pair(roots, roots, n, m)
                    .map_err(|e| format!("d={} n={n} m={m}: {e}", roots.len()))?;
                for c in verify_inverse_pair(&pair.phi, &pair.psi) {
                    ensure(c.passed, format!("d={} n={n} m={m}: {} failed", roots.len(), c.name))?;
                }
                count += 1;
            }
        }
    }
    let el = t.elapsed();
    within(el, Duration::from_secs(60))?;
    Ok(format!("{count} pairs in {el:?}"))
}

fn iterated() -> Outcome {
    let s = make_iterated_example().map_err(|e| e.to_string())?;
    for c in s.verify_construction().into_iter().chain(s.example_identities()) {
        ensure(c.passed, format!("{} failed", c.name))?;
    }
    ensure(!s.example_identities().is_empty(), "no chart identities checked")?;
    let (map, cert) = build_theorem_phi(&s, &s.spec.roots.clone()).map_err(|e| e.to_string())?;
    ensure(
        map.g == mp("t^2 - 1/2*t^2*(t^4 - 1) + x*1/2*t^3"),
        format!("g = {}", map.g),
    )?;
    ensure(cert.valid(), "certificate not valid")?;
    Ok(format!("{} checks", cert.checks.len()))
}

fn double() -> Outcome {
    let s = make_double_example().map_err(|e| e.to_string())?;
    for c in s.verify_construction().into_iter().chain(s.example_identities()) {
        ensure(c.passed, format!("{} failed", c.name))?;
    }
    let want = [q(1), Q::i(), -Q::i(), q(-1)];
    ensure(s.spec.roots == want, "line labels differ from (1, i, -i, -1)")?;
    let (map, cert) = build_theorem_phi(&s, &want).map_err(|e| e.to_string())?;
    ensure(check_star(&map.f, &s).passed, "f does not restrict to the labels")?;
    ensure(
        check_star_star(&map.g, &s.spec.sigmas, &s.spec.roots, s.n()).passed,
        "g misses a sigma",
    )?;
    let known_g = mp("(1 - i)/2*t^3 + (1 + i)/2*t - (t^4 - 1)*t/4*(3*(1 - i)/2*t^2 + (1 + i)/2) + x*1/2*t^2");
    ensure(map.g == known_g, format!("g = {}", map.g))?;
    ensure(cert.valid(), "certificate not valid")?;
    Ok(format!("{} checks", cert.checks.len()))
}

fn random_surfaces() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(20);
    let root_pool: Vec<Q> = vec![q(0), q(1), q(-1), q(2), q(-2), Q::i(), -Q::i(), Q::gaussian(1, 1)];
    let coeffs = [q(-2), q(-1), q(0), q(1), q(2), Q::ratio(1, 2), Q::i()];
    let wanted = ["star", "star-star", "slice", "kernel", "chart-inverse", "closed-forms"];
    for trial in 0..20 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=3);
        let roots: Vec<Q> = root_pool.choose_multiple(&mut rng, d).cloned().collect();
        let starts: Vec<Q> = root_pool.choose_multiple(&mut rng, d).cloned().collect();
        let sigmas: Vec<MultiPoly> = starts
            .iter()
            .map(|c0| {
                let mut s = MultiPoly::constant(c0.clone());
                for k in 1..n {
                    let c = coeffs.choose(&mut rng).unwrap().clone();
                    s = &s + &MultiPoly::monomial(c, &[("x", k)]);
                }
                s
            })
            .collect();
        let spec = SurfaceSpec::new(n, sigmas.clone(), roots.clone()).map_err(|e| e.to_string())?;
        let s = make_abstract(spec);
        let f = s.separating_function().map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(check_star(&f, &s).passed, format!("trial {trial}: star"))?;
        let g = build_g(&sigmas, &roots, n).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(check_star_star(&g, &sigmas, &roots, n).passed, format!("trial {trial}: star-star"))?;
        let (_, cert) =
            build_theorem_phi(&s, &roots).map_err(|e| format!("trial {trial} (d={d}, n={n}): {e}"))?;
        for name in wanted {
            let c = cert.checks.iter().find(|c| c.name == name);
            ensure(c.is_some_and(|c| c.passed), format!("trial {trial}: {name}"))?;
        }
        ensure(cert.valid(), format!("trial {trial}: certificate"))?;
    }
    let el = t.elapsed();
    within(el, Duration::from_secs(120))?;
    Ok(format!("20 surfaces in {el:?}"))
}

/// Normal form modulo `xy - z^2 + 1` by rewriting `xy -> z^2 - 1`.
fn rewrite_xy(p: &MultiPoly) -> MultiPoly {
    let rhs = mp("z^2 - 1");
    let mut cur = p.clone();
    loop {
        let hit = cur.terms().find(|(m, _)| {
            m.iter().any(|(v, _)| *v == "x") && m.iter().any(|(v, _)| *v == "y")
        });
        let Some((m, c)) = hit else { return cur };
        let lowered: Vec<(&str, u32)> = m
            .iter()
            .map(|(v, e)| (*v, if *v == "x" || *v == "y" { e - 1 } else { *e }))
            .collect();
        let term = MultiPoly::monomial(c.clone(), &m);
        let replacement = &MultiPoly::monomial(c.clone(), &lowered) * &rhs;
        cur = &(&cur - &term) + &replacement;
    }
}

fn random_poly(rng: &mut StdRng, terms: usize, deg: u32) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let c = q(rng.gen_range(-3..=3));
        let powers = [
            ("x", rng.gen_range(0..=deg)),
            ("y", rng.gen_range(0..=deg)),
            ("z", rng.gen_range(0..=deg)),
        ];
        p = &p + &MultiPoly::monomial(c, &powers);
    }
    p
}

fn membership() -> Outcome {
    let rel = mp("x*y - z^2 + 1");
    let mut rng = StdRng::seed_from_u64(7);
    let mut members = 0;
    for k in 0..100 {
        let p = if k % 2 == 0 {
            &random_poly(&mut rng, 4, 3) * &rel
        } else {
            random_poly(&mut rng, 5, 3)
        };
        let oracle = ideal_membership(&p, std::slice::from_ref(&rel)).map_err(|e| e.to_string())?;
        let division = rewrite_xy(&p).is_zero();
        ensure(oracle == division, format!("disagree on {p}: oracle {oracle}, division {division}"))?;
        members += usize::from(oracle);
    }
    Ok(format!("100 agreements, {members} members"))
}

fn mutation() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let deltas = [q(1), q(-1), Q::ratio(1, 2), Q::i(), q(3)];
    let mut handles = Vec::new();
    for name in ["russell", "classical", "iterated", "double"] {
        let src = std::fs::read_to_string(golden.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        let deltas = deltas.clone();
        handles.push(std::thread::spawn(move || -> Result<(), String> {
            let mut rng = StdRng::seed_from_u64(name.len() as u64);
            for trial in 0..10 {
                let mut doc = Document::from_json(&src).map_err(|e| e.to_string())?;
                let map = doc.map.as_mut().unwrap();
                let mut polys = map_polys_mut(map);
                let k = rng.gen_range(0..polys.len());
                let p = polys[k].to_poly().map_err(|e| e.to_string())?;
                let term = rng.gen_range(0..p.len().max(1));
                let delta = deltas.choose(&mut rng).unwrap();
                *polys[k] = PolyJson::from(&p.perturb_term(term, delta));
                let path = std::env::temp_dir()
                    .join(format!("danielewski-mut-{name}-{trial}-{}.json", std::process::id()));
                std::fs::write(&path, doc.to_json()).map_err(|e| e.to_string())?;
                let out = bin()
                    .args(["verify", "--map", path.to_str().unwrap()])
                    .output()
                    .map_err(|e| e.to_string())?;
                let _ = std::fs::remove_file(&path);
                let text = String::from_utf8_lossy(&out.stdout);
                ensure(out.status.code() == Some(1), format!("{name} trial {trial}: exit {:?}", out.status.code()))?;
                let witnessed = text.lines().any(|l| {
                    l.starts_with("FAIL ") && l.split_once(": ").is_some_and(|(_, r)| !r.trim().is_empty())
                });
                ensure(witnessed, format!("{name} trial {trial}: no residue witness"))?;
            }
            Ok(())
        }));
    }
    for h in handles {
        h.join().map_err(|_| "mutation worker panicked".to_string())??;
    }
    Ok("40 mutations rejected".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 Russell reproduction", russell),
        ("2 Bezout path equals Hermite path", bezout),
        ("3 classical-pair suite", classical_suite),
        ("4 iterated example", iterated),
        ("5 double example", double),
        ("6 random special surfaces", random_surfaces),
        ("7 membership oracle cross-check", membership),
        ("8 mutation sensitivity", mutation),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
