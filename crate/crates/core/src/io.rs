//! JSON documents for surfaces, maps and reports.
//!
//! A document has the keys `field`, `surface`, `map` and `report`.
//! Polynomials are stored as an expression string together with an explicit
//! list of terms; the expression is authoritative and the term list must
//! agree with it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cylinder::{
    build_prop5_pair, AmbientMap, CylinderMap, IsoCertificate, Prop5Construction, TheoremMap,
};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::poly::MultiPoly;
use crate::surface::{
    make_classical, make_double_example, make_hypersurface, make_iterated_example, make_raw,
    ChartedSurface, GlobalFunction, RawSurface, SurfaceOrigin, SurfaceSpec,
};
use crate::syntax::{parse_constant, parse_poly};
use crate::verify::CheckReport;

pub const FIELD: &str = "Q(i)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: BTreeMap<String, u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub expr: String,
    #[serde(default)]
    pub terms: Option<Vec<TermJson>>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        let terms = p
            .terms()
            .map(|(powers, c)| TermJson {
                monomial: powers.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
                coeff: c.to_string(),
            })
            .collect();
        PolyJson {
            expr: p.to_string(),
            terms: Some(terms),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self) -> Result<MultiPoly> {
        let p = parse_poly(&self.expr)?;
        if let Some(terms) = &self.terms {
            let mut acc = MultiPoly::zero();
            for t in terms {
                let powers: Vec<(&str, u32)> =
                    t.monomial.iter().map(|(v, e)| (v.as_str(), *e)).collect();
                acc = &acc + &MultiPoly::monomial(parse_constant(&t.coeff)?, &powers);
            }
            if acc != p {
                return Err(Error::Input(format!(
                    "term list disagrees with expression {:?}",
                    self.expr
                )));
            }
        }
        Ok(p)
    }
}

fn polys(v: &[PolyJson]) -> Result<Vec<MultiPoly>> {
    v.iter().map(PolyJson::to_poly).collect()
}

fn poly_map(m: &BTreeMap<String, PolyJson>) -> Result<BTreeMap<String, MultiPoly>> {
    m.iter().map(|(k, p)| Ok((k.clone(), p.to_poly()?))).collect()
}

fn poly_map_json(m: &BTreeMap<String, MultiPoly>) -> BTreeMap<String, PolyJson> {
    m.iter().map(|(k, p)| (k.clone(), p.into())).collect()
}

fn constants(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_constant(s)).collect()
}

fn constant_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(Q::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceJson {
    Classical {
        n: u32,
        roots: Vec<String>,
    },
    /// `x^n y = Q(x, z)`.
    Hypersurface {
        n: u32,
        #[serde(rename = "Q")]
        q: PolyJson,
        roots: Vec<String>,
    },
    Builtin {
        name: String,
    },
    Raw {
        name: String,
        n: u32,
        sigmas: Vec<PolyJson>,
        roots: Vec<String>,
        ambient_vars: Vec<String>,
        charts: Vec<BTreeMap<String, PolyJson>>,
        relations: Vec<PolyJson>,
        #[serde(default)]
        u: Option<PolyJson>,
        #[serde(default)]
        f: Option<PolyJson>,
        #[serde(default)]
        f_reps: Option<Vec<PolyJson>>,
    },
}

impl SurfaceJson {
    pub fn build(&self) -> Result<ChartedSurface> {
        match self {
            SurfaceJson::Classical { n, roots } => make_classical(*n, &constants(roots)?),
            SurfaceJson::Hypersurface { n, q, roots } => {
                make_hypersurface(*n, &q.to_poly()?, &constants(roots)?)
            }
            SurfaceJson::Builtin { name } => match name.as_str() {
                "iterated" => make_iterated_example(),
                "double" => make_double_example(),
                other => Err(Error::Input(format!("unknown built-in surface {other:?}"))),
            },
            SurfaceJson::Raw {
                name,
                n,
                sigmas,
                roots,
                ambient_vars,
                charts,
                relations,
                u,
                f,
                f_reps,
            } => make_raw(RawSurface {
                name: name.clone(),
                spec: SurfaceSpec::new(*n, polys(sigmas)?, constants(roots)?)?,
                ambient_vars: ambient_vars.clone(),
                charts: charts.iter().map(poly_map).collect::<Result<_>>()?,
                relations: polys(relations)?,
                u_ambient: u.as_ref().map(PolyJson::to_poly).transpose()?,
                f_ambient: f.as_ref().map(PolyJson::to_poly).transpose()?,
                f_reps: f_reps.as_deref().map(polys).transpose()?,
            }),
        }
    }

    pub fn describe(s: &ChartedSurface) -> SurfaceJson {
        match &s.origin {
            SurfaceOrigin::Classical { n, roots } => SurfaceJson::Classical {
                n: *n,
                roots: constant_strings(roots),
            },
            SurfaceOrigin::Hypersurface { n, q, roots } => SurfaceJson::Hypersurface {
                n: *n,
                q: q.into(),
                roots: constant_strings(roots),
            },
            SurfaceOrigin::Iterated => SurfaceJson::Builtin {
                name: "iterated".into(),
            },
            SurfaceOrigin::Double => SurfaceJson::Builtin {
                name: "double".into(),
            },
            SurfaceOrigin::Raw => SurfaceJson::Raw {
                name: s.name.clone(),
                n: s.n(),
                sigmas: s.spec.sigmas.iter().map(Into::into).collect(),
                roots: constant_strings(&s.spec.roots),
                ambient_vars: s.ambient_vars.clone(),
                charts: s.charts.iter().map(|c| poly_map_json(&c.param)).collect(),
                relations: s.relations.iter().map(Into::into).collect(),
                u: s.u_ambient.as_ref().map(Into::into),
                f: s.f_ambient.as_ref().map(Into::into),
                f_reps: if s.f_ambient.is_none() {
                    s.f.as_ref().map(|f| f.reps.iter().map(Into::into).collect())
                } else {
                    None
                },
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientMapJson {
    pub source: String,
    pub target: String,
    pub source_relations: Vec<PolyJson>,
    pub target_relations: Vec<PolyJson>,
    pub images: BTreeMap<String, PolyJson>,
}

impl AmbientMapJson {
    fn describe(m: &AmbientMap) -> Self {
        AmbientMapJson {
            source: m.source.clone(),
            target: m.target.clone(),
            source_relations: m.source_relations.iter().map(Into::into).collect(),
            target_relations: m.target_relations.iter().map(Into::into).collect(),
            images: poly_map_json(&m.images),
        }
    }

    fn build(&self) -> Result<AmbientMap> {
        Ok(AmbientMap {
            source: self.source.clone(),
            target: self.target.clone(),
            source_relations: polys(&self.source_relations)?,
            target_relations: polys(&self.target_relations)?,
            images: poly_map(&self.images)?,
            formulas: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub roots_p: Vec<String>,
    pub roots_q: Vec<String>,
    pub n: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapJson {
    Theorem {
        target_roots: Vec<String>,
        f: Vec<PolyJson>,
        g: PolyJson,
        chart_pairing: Vec<usize>,
        chart_images: Vec<BTreeMap<String, PolyJson>>,
        #[serde(default)]
        ambient_images: Option<BTreeMap<String, PolyJson>>,
    },
    Pair {
        #[serde(default)]
        construction: Option<ConstructionJson>,
        phi: AmbientMapJson,
        psi: AmbientMapJson,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    #[serde(default)]
    pub inconclusive: Vec<String>,
}

impl From<&IsoCertificate> for ReportJson {
    fn from(c: &IsoCertificate) -> Self {
        ReportJson {
            passed: c.valid(),
            checks: c.checks.clone(),
            inconclusive: c.inconclusive.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
}

impl Document {
    pub fn new() -> Self {
        Document {
            field: FIELD.into(),
            surface: None,
            map: None,
            report: None,
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let doc: Document =
            serde_json::from_str(src).map_err(|e| Error::Input(format!("invalid JSON: {e}")))?;
        if doc.field != FIELD {
            return Err(Error::Input(format!(
                "unsupported field {:?}, expected {FIELD:?}",
                doc.field
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn with_surface(s: &ChartedSurface) -> Self {
        Document {
            surface: Some(SurfaceJson::describe(s)),
            ..Document::new()
        }
    }

    pub fn with_map(map: &CylinderMap) -> Self {
        let mut doc = Document::new();
        match map {
            CylinderMap::Theorem(t) => {
                doc.surface = Some(SurfaceJson::describe(&t.surface));
                doc.map = Some(MapJson::Theorem {
                    target_roots: constant_strings(&t.target_roots),
                    f: t.f.reps.iter().map(Into::into).collect(),
                    g: (&t.g).into(),
                    chart_pairing: t.chart_pairing.clone(),
                    chart_images: t.chart_images.iter().map(poly_map_json).collect(),
                    ambient_images: t.ambient_images.as_ref().map(poly_map_json),
                });
            }
            CylinderMap::AmbientPair {
                phi,
                psi,
                construction,
            } => {
                if let Some(c) = construction {
                    doc.surface = Some(SurfaceJson::Classical {
                        n: c.n,
                        roots: constant_strings(&c.roots_p),
                    });
                }
                doc.map = Some(MapJson::Pair {
                    construction: construction.as_ref().map(|c| ConstructionJson {
                        roots_p: constant_strings(&c.roots_p),
                        roots_q: constant_strings(&c.roots_q),
                        n: c.n,
                        m: c.m,
                    }),
                    phi: AmbientMapJson::describe(phi),
                    psi: AmbientMapJson::describe(psi),
                });
            }
        }
        doc
    }

    pub fn surface(&self) -> Result<ChartedSurface> {
        self.surface
            .as_ref()
            .ok_or_else(|| Error::Input("document has no surface".into()))?
            .build()
    }

    /// The stored map. Pair formulas are rebuilt from the construction data,
    /// when present, so they can be checked against the stored closed forms.
    pub fn cylinder_map(&self) -> Result<CylinderMap> {
        match self
            .map
            .as_ref()
            .ok_or_else(|| Error::Input("document has no map".into()))?
        {
            MapJson::Theorem {
                target_roots,
                f,
                g,
                chart_pairing,
                chart_images,
                ambient_images,
            } => Ok(CylinderMap::Theorem(TheoremMap {
                surface: self.surface()?,
                target_roots: constants(target_roots)?,
                f: GlobalFunction { reps: polys(f)? },
                g: g.to_poly()?,
                chart_pairing: chart_pairing.clone(),
                chart_images: chart_images.iter().map(poly_map).collect::<Result<_>>()?,
                ambient_images: ambient_images.as_ref().map(poly_map).transpose()?,
            })),
            MapJson::Pair {
                construction,
                phi,
                psi,
            } => {
                let mut phi = phi.build()?;
                let mut psi = psi.build()?;
                let construction = match construction {
                    Some(c) => {
                        let c = Prop5Construction {
                            roots_p: constants(&c.roots_p)?,
                            roots_q: constants(&c.roots_q)?,
                            n: c.n,
                            m: c.m,
                        };
                        let pair = build_prop5_pair(&c.roots_p, &c.roots_q, c.n, c.m)?;
                        phi.formulas = pair.phi.formulas;
                        psi.formulas = pair.psi.formulas;
                        Some(c)
                    }
                    None => None,
                };
                Ok(CylinderMap::AmbientPair {
                    phi,
                    psi,
                    construction,
                })
            }
        }
    }
}

impl Default for Document {
    fn default() -> Self {
        Self::new()
    }
}

/// Every stored polynomial of a map document, for mutation testing.
pub fn map_polys_mut(map: &mut MapJson) -> Vec<&mut PolyJson> {
    match map {
        MapJson::Theorem {
            f,
            g,
            chart_images,
            ambient_images,
            ..
        } => {
            let mut out: Vec<&mut PolyJson> = f.iter_mut().collect();
            out.push(g);
            for m in chart_images.iter_mut() {
                out.extend(m.values_mut());
            }
            if let Some(a) = ambient_images {
                out.extend(a.values_mut());
            }
            out
        }
        MapJson::Pair { phi, psi, .. } => phi
            .images
            .values_mut()
            .chain(psi.images.values_mut())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::build_theorem_phi;

    #[test]
    fn poly_json_round_trip() {
        let p = parse_poly("(1-i)/2*z^3 + x*u1 - 7/3").unwrap();
        let j = PolyJson::from(&p);
        assert_eq!(j.to_poly().unwrap(), p);
        let mut bad = j.clone();
        bad.terms.as_mut().unwrap()[0].coeff = "5".into();
        assert!(matches!(bad.to_poly(), Err(Error::Input(_))));
    }

    #[test]
    fn theorem_document_round_trip() {
        let s = make_iterated_example().unwrap();
        let (map, _) = build_theorem_phi(&s, &s.spec.roots.clone()).unwrap();
        let doc = Document::with_map(&CylinderMap::Theorem(map.clone()));
        let text = doc.to_json();
        let back = Document::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.cylinder_map().unwrap(), CylinderMap::Theorem(map));
    }

    #[test]
    fn field_is_checked() {
        assert!(Document::from_json(r#"{"field":"R"}"#).is_err());
    }
}
