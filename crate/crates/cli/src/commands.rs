//! Implementations of the subcommands.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use cosmohedra::cosmofan::{braid2_witness, verify_fan, PairSampling};
use cosmohedra::exactgeom::fmt_rat;
use cosmohedra::matryoshka::{enumerate as enumerate_matryoshkas, Matryoshka};
use cosmohedra::polygon::{enumerate_subdivisions, enumerate_triangulations, ChordSet};
use cosmohedra::realization::{
    afv_check, afv_transform, cosmo_facets, cosmo_vertices, devadoss_vertex, loday_vertex, verify_cosmohedron_vertices,
    CosmoReport, CosmoVertex, RealizationParams, Sampling,
};
use cosmohedra::series::{
    correlatron_h_formula, correlatron_inverse_residual, cosmohedron_inverse_residual, d_algebraic_residual,
    f_polynomials_recurrence, max_matryoshka_counts, schroeder_series, table_correlatron, table_cosmohedron, to_csv,
};
use cosmohedra::trees::{dual_tree, enumerate_bracketings};
use cosmohedra::uloop::{
    enumerate_loop_triangulations, loop_assoc_vertices, u_fan_check, u_polytope_vertices, LoopVertex,
};
use cosmohedra::Rat;

use crate::config::Config;
use crate::{BuildWhat, CliError, Common, CountWhat, EnumerateWhat, ExportWhat, Format, Output, Table, VerifyWhat};

/// Largest `n` for which the cosmohedron is verified exhaustively.
const EXHAUSTIVE_LIMIT: usize = 4;
const SAMPLED_TRIPLES: usize = 100_000;
const SAMPLED_FAN_PAIRS: usize = 20_000;

fn joined<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Failed(format!("serialization: {e}")))
}

fn big_json(xs: &[BigInt]) -> Value {
    Value::Array(
        xs.iter()
            .map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
            .collect(),
    )
}

fn no_csv(what: &str) -> CliError {
    CliError::Usage(format!("csv output is not available for {what}"))
}

fn show_matryoshka(m: &Matryoshka) -> String {
    joined(m.polygons(), " ")
}

fn show_chords(s: &ChordSet) -> String {
    if s.is_empty() {
        "(none)".into()
    } else {
        joined(s.chords(), " ")
    }
}

fn csv_polygons(m: &Matryoshka) -> String {
    joined(m.polygons().iter().map(|p| joined(p.vertices(), " ")), ";")
}

fn csv_chords(s: &ChordSet) -> String {
    joined(s.chords().iter().map(|d| format!("{}-{}", d.i, d.j)), " ")
}

/// Vertex table with one row per vertex: label then coordinates.
fn csv_vertices(labels: &[String], coords: &[Vec<Rat>]) -> String {
    let dim = coords.first().map_or(0, |c| c.len());
    let mut out = format!("vertex,{}\n", joined((1..=dim).map(|i| format!("x{i}")), ","));
    for (l, c) in labels.iter().zip(coords) {
        out += &format!("{l},{}\n", rats(c).join(","));
    }
    out
}

fn checked_params(cfg: &Config) -> Result<RealizationParams, CliError> {
    let p = cfg.cosmo_params()?;
    let problems = p.problems();
    if problems.is_empty() {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("invalid parameters: {}", problems.join("; "))))
    }
}

fn perturbed_vertices(cfg: &Config, p: &RealizationParams) -> Result<Vec<CosmoVertex>, CliError> {
    let mut vs = cosmo_vertices(p).map_err(|e| CliError::Failed(e.to_string()))?;
    if let Some((v, k, delta)) = cfg.perturbation()? {
        let coord = vs
            .get_mut(v)
            .and_then(|x| x.coords.get_mut(k))
            .ok_or_else(|| CliError::Usage(format!("perturb: no coordinate {k} of vertex {v}")))?;
        *coord += delta;
    }
    Ok(vs)
}

pub fn enumerate(what: EnumerateWhat, cfg: &Config, o: &Common) -> Result<Output, CliError> {
    let n = cfg.n;
    let text = match what {
        EnumerateWhat::Matryoshkas => {
            let ms = enumerate_matryoshkas(n, o.maximal);
            match o.format {
                Format::Json => to_json(&json!({ "n": n, "count": ms.len(), "matryoshkas": ms }))?,
                Format::Csv => {
                    let mut out = String::from("index,codim,maximal,polygons\n");
                    for (i, m) in ms.iter().enumerate() {
                        out += &format!("{i},{},{},{}\n", m.codim(), m.is_maximal(), csv_polygons(m));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("{} Matryoshkas for n={n}\n", ms.len());
                    for m in &ms {
                        out += &format!("codim {}: {}\n", m.codim(), show_matryoshka(m));
                    }
                    out
                }
            }
        }
        EnumerateWhat::Subdivisions => {
            let ss = if o.maximal {
                enumerate_triangulations(n)
            } else {
                enumerate_subdivisions(n, true)
            };
            match o.format {
                Format::Json => to_json(&json!({ "n": n, "count": ss.len(), "subdivisions": ss }))?,
                Format::Csv => {
                    let mut out = String::from("index,chords\n");
                    for (i, s) in ss.iter().enumerate() {
                        out += &format!("{i},{}\n", csv_chords(s));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("{} subdivisions for n={n}\n", ss.len());
                    for s in &ss {
                        out += &format!("{}\n", show_chords(s));
                    }
                    out
                }
            }
        }
        EnumerateWhat::Bracketings => {
            let rows: Vec<(ChordSet, Vec<String>)> = enumerate_triangulations(n)
                .into_iter()
                .map(|t| {
                    let tree = dual_tree(&t);
                    let bs = enumerate_bracketings(&tree, o.maximal)
                        .iter()
                        .map(|b| b.to_string())
                        .collect();
                    (t, bs)
                })
                .collect();
            match o.format {
                Format::Json => to_json(
                    &rows
                        .iter()
                        .map(|(t, bs)| json!({ "triangulation": t, "bracketings": bs }))
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => return Err(no_csv("bracketings")),
                Format::Text => {
                    let total: usize = rows.iter().map(|r| r.1.len()).sum();
                    let mut out = format!("{total} bracketings over {} triangulations for n={n}\n", rows.len());
                    for (t, bs) in &rows {
                        out += &format!("triangulation {}: bracketings {}\n", show_chords(t), bs.len());
                        for b in bs {
                            out += &format!("  {b}\n");
                        }
                    }
                    out
                }
            }
        }
        EnumerateWhat::LoopTriangulations => {
            let ts = enumerate_loop_triangulations(n).map_err(|e| CliError::Failed(e.to_string()))?;
            match o.format {
                Format::Json => to_json(&json!({ "n": n, "count": ts.len(), "triangulations": ts }))?,
                Format::Csv => return Err(no_csv("loop triangulations")),
                Format::Text => {
                    let mut out = format!("{} triangulations of the once-punctured {}-gon\n", ts.len(), n);
                    for t in &ts {
                        out += &format!("{}\n", joined(&t.curves, " "));
                    }
                    out
                }
            }
        }
    };
    Ok(Output::ok(text))
}

fn loop_vertices_output(title: &str, n: usize, vs: &[LoopVertex], format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => to_json(&json!({ "n": n, "count": vs.len(), "vertices": vs }))?,
        Format::Csv => {
            let labels: Vec<String> = vs
                .iter()
                .map(|v| {
                    let s = v.spoke.map(|s| format!(" [{s}]")).unwrap_or_default();
                    format!("{}{s}", joined(&v.triangulation, " "))
                })
                .collect();
            let coords: Vec<Vec<Rat>> = vs.iter().map(|v| v.coords.clone()).collect();
            csv_vertices(&labels, &coords)
        }
        Format::Text => {
            let mut out = format!("{title} n={n}: {} vertices\n", vs.len());
            for v in vs {
                let s = v.spoke.map(|s| format!(" chiseled at {s}")).unwrap_or_default();
                out += &format!(
                    "{}{s}: ({})\n",
                    joined(&v.triangulation, " "),
                    rats(&v.coords).join(", ")
                );
            }
            out
        }
    })
}

pub fn build(what: BuildWhat, cfg: &Config, o: &Common) -> Result<Output, CliError> {
    let n = cfg.n;
    let text = match what {
        BuildWhat::Cosmohedron => {
            let p = checked_params(cfg)?;
            let vs = perturbed_vertices(cfg, &p)?;
            let fs = cosmo_facets(&p);
            match o.format {
                Format::Json => to_json(&json!({
                    "n": n,
                    "epsilon": fmt_rat(&p.epsilon),
                    "vertices": vs,
                    "facets": fs,
                }))?,
                Format::Csv => {
                    let labels: Vec<String> = (0..vs.len()).map(|i| i.to_string()).collect();
                    let coords: Vec<Vec<Rat>> = vs.iter().map(|v| v.coords.clone()).collect();
                    csv_vertices(&labels, &coords)
                }
                Format::Text => {
                    let mut out = format!(
                        "cosmohedron n={n} epsilon={}: {} vertices, {} facets\n",
                        fmt_rat(&p.epsilon),
                        vs.len(),
                        fs.len()
                    );
                    for v in &vs {
                        out += &format!(
                            "vertex ({}) at {}\n",
                            rats(&v.coords).join(", "),
                            show_matryoshka(&v.matryoshka)
                        );
                    }
                    for f in &fs {
                        out += &format!(
                            "facet {}: ({}) . x >= {}\n",
                            show_chords(&f.subdivision),
                            rats(&f.normal).join(", "),
                            fmt_rat(&f.rhs)
                        );
                    }
                    out
                }
            }
        }
        BuildWhat::Loday => {
            let p = checked_params(cfg)?;
            let ts = enumerate_triangulations(n);
            let coords: Vec<Vec<Rat>> = ts.iter().map(|t| loday_vertex(&p, t)).collect();
            match o.format {
                Format::Json => to_json(
                    &ts.iter()
                        .zip(&coords)
                        .map(|(t, c)| json!({ "triangulation": t, "coords": rats(c) }))
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => csv_vertices(&ts.iter().map(csv_chords).collect::<Vec<_>>(), &coords),
                Format::Text => {
                    let mut out = format!("associahedron n={n}: {} vertices\n", ts.len());
                    for (t, c) in ts.iter().zip(&coords) {
                        out += &format!("{}: ({})\n", show_chords(t), rats(c).join(", "));
                    }
                    out
                }
            }
        }
        BuildWhat::Devadoss => {
            let p = checked_params(cfg)?;
            let b = |q: &cosmohedra::polygon::SubPolygon| p.b(q);
            let mut rows = Vec::new();
            for t in enumerate_triangulations(n) {
                let tree = dual_tree(&t);
                for br in enumerate_bracketings(&tree, true) {
                    let c = devadoss_vertex(&tree, &br, &b);
                    rows.push((t.clone(), br.to_string(), c));
                }
            }
            match o.format {
                Format::Json => to_json(
                    &rows
                        .iter()
                        .map(|(t, br, c)| json!({ "triangulation": t, "bracketing": br, "coords": rats(c) }))
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => return Err(no_csv("bracket associahedra")),
                Format::Text => {
                    let mut out = format!("bracket associahedra n={n}: {} vertices\n", rows.len());
                    for (t, br, c) in &rows {
                        out += &format!("{} | {br}: ({})\n", show_chords(t), rats(c).join(", "));
                    }
                    out
                }
            }
        }
        BuildWhat::Afv => {
            let p = checked_params(cfg)?;
            let vs = perturbed_vertices(cfg, &p)?;
            let images: Vec<BTreeMap<String, String>> = vs
                .iter()
                .map(|v| {
                    afv_transform(&p, &v.coords)
                        .iter()
                        .map(|(d, x)| (d.to_string(), fmt_rat(x)))
                        .collect()
                })
                .collect();
            match o.format {
                Format::Json => to_json(
                    &vs.iter()
                        .zip(&images)
                        .map(|(v, x)| json!({ "matryoshka": v.matryoshka, "X": x }))
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => return Err(no_csv("kinematic images")),
                Format::Text => {
                    let mut out = format!("kinematic images n={n}: {} vertices\n", vs.len());
                    for (v, x) in vs.iter().zip(&images) {
                        let entries = joined(x.iter().map(|(d, r)| format!("X{d}={r}")), " ");
                        out += &format!("{}: {entries}\n", show_matryoshka(&v.matryoshka));
                    }
                    out
                }
            }
        }
        BuildWhat::LoopAssoc => {
            let lp = cfg.loop_params()?;
            let vs = loop_assoc_vertices(&lp).map_err(|e| CliError::Failed(e.to_string()))?;
            loop_vertices_output("loop associahedron", n, &vs, o.format)?
        }
        BuildWhat::UPolytope => {
            let lp = cfg.loop_params()?;
            let vs = u_polytope_vertices(&lp).map_err(|e| CliError::Failed(e.to_string()))?;
            loop_vertices_output("U-polytope", n, &vs, o.format)?
        }
    };
    Ok(Output::ok(text))
}

/// Summary line, prose lines and the JSON report of one verification.
fn verdict<T: Serialize>(
    ok: bool,
    summary: String,
    prose: Vec<String>,
    report: &T,
    format: Format,
) -> Result<Output, CliError> {
    let text = match format {
        Format::Json => to_json(&json!({ "ok": ok, "summary": summary, "report": report }))?,
        Format::Csv => return Err(no_csv("verification reports")),
        Format::Text => {
            let mut out = format!("{}: {summary}\n", if ok { "OK" } else { "FAIL" });
            for line in prose {
                out += &line;
                out.push('\n');
            }
            out
        }
    };
    Ok(Output { text, ok })
}

fn failure_prose(failures: &[String]) -> Vec<String> {
    failures.iter().map(|f| format!("failure: {f}")).collect()
}

fn cosmo_report(cfg: &Config, p: &RealizationParams) -> Result<(CosmoReport, Vec<CosmoVertex>), CliError> {
    let vs = match perturbed_vertices(cfg, p) {
        Ok(vs) => vs,
        Err(CliError::Failed(msg)) => {
            let r = CosmoReport {
                n: p.n,
                failures: vec![msg],
                ..CosmoReport::default()
            };
            return Ok((r, Vec::new()));
        }
        Err(e) => return Err(e),
    };
    let sampling = if cfg.n <= EXHAUSTIVE_LIMIT {
        Sampling::Exhaustive
    } else {
        Sampling::Random {
            seed: cfg.seed,
            triples: SAMPLED_TRIPLES,
        }
    };
    Ok((verify_cosmohedron_vertices(p, &vs, sampling), vs))
}

pub fn verify(what: VerifyWhat, cfg: &Config, o: &Common) -> Result<Output, CliError> {
    let n = cfg.n;
    match what {
        VerifyWhat::Fan => {
            let sampling = if n <= EXHAUSTIVE_LIMIT {
                PairSampling::All
            } else {
                PairSampling::Random {
                    seed: cfg.seed,
                    count: SAMPLED_FAN_PAIRS,
                }
            };
            let r = verify_fan(n, sampling);
            let summary = if r.ok() {
                format!("{} faces, complete, order-isomorphic", r.faces)
            } else {
                format!("{} faces, {} problems", r.faces, r.failures.len())
            };
            let mut prose = vec![
                format!("maximal cones: {}", r.maximal),
                format!("face pairs checked for proper intersection: {}", r.pairs_checked),
                format!("dimensions consistent: {}", r.dims_ok),
                format!("every ridge bounds exactly two maximal cones: {}", r.ridge_pairing),
                format!("dual graph connected: {}", r.connected),
                format!("face order matches Matryoshka containment: {}", r.order_isomorphic),
            ];
            prose.extend(failure_prose(&r.failures));
            verdict(r.ok(), summary, prose, &r, o.format)
        }
        VerifyWhat::Cosmohedron => {
            let p = cfg.cosmo_params()?;
            let (r, _) = cosmo_report(cfg, &p)?;
            let summary = if r.ok() {
                format!(
                    "{} vertices, {} facets, {} support checks",
                    r.vertices, r.facets, r.support_checks
                )
            } else {
                format!(
                    "{} vertices, {} facets, {} problems",
                    r.vertices,
                    r.facets,
                    r.failures.len().max(1)
                )
            };
            let mut prose = vec![
                format!("epsilon: {}", fmt_rat(&p.epsilon)),
                format!("parameters admissible: {}", r.params_ok),
                format!("vertices satisfy every facet: {}", r.feasibility_ok),
                format!("tight facets match refinement: {}", r.tightness_ok),
                format!("vertex degrees match quadrilateral counts: {}", r.incidence_ok),
                format!("cone rays maximized at their vertex: {}", r.support_ok),
                format!("interior directions maximized uniquely: {}", r.strict_ok),
            ];
            if let Some(t) = &r.trapezoid {
                prose.push(format!(
                    "trapezoid edges exact: {}, parallel: {}, unequal: {}",
                    t.edges_ok, t.parallel, t.unequal
                ));
            }
            prose.extend(failure_prose(&r.failures));
            verdict(r.ok(), summary, prose, &r, o.format)
        }
        VerifyWhat::Afv => {
            let p = cfg.cosmo_params()?;
            let problems = p.problems();
            let vs = match perturbed_vertices(cfg, &p) {
                Ok(vs) => vs,
                Err(CliError::Failed(msg)) => {
                    return verdict(false, msg.clone(), vec![], &json!({ "failures": [msg] }), o.format)
                }
                Err(e) => return Err(e),
            };
            let mut r = afv_check(&p, &vs);
            r.failures.extend(problems);
            let summary = format!(
                "{} vertices, rank {}, {} negative coordinates",
                r.vertices, r.rank, r.negative_entries
            );
            let mut prose = vec![
                format!("ABHY residuals zero: {}", r.residuals_zero),
                format!("subdivision inequalities hold: {}", r.subdivision_ok),
                format!("tightness agrees with x-space: {}", r.tightness_ok),
                format!("present chords equal -eps b_M: {}", r.present_chords_ok),
                format!("present chords exactly zero: {} of {}", r.present_zero, r.present_total),
                format!("injective on the vertices: {}", r.injective),
            ];
            prose.extend(failure_prose(&r.failures));
            verdict(r.ok(), summary, prose, &r, o.format)
        }
        VerifyWhat::UFan => {
            let lp = cfg.loop_params()?;
            match u_fan_check(&lp, cfg.seed) {
                Ok(r) => {
                    let summary = format!(
                        "{} rays, {} U-vertices, {} coverage samples",
                        r.rays, r.u_vertices, r.coverage_samples
                    );
                    let mut prose = vec![
                        format!("loop triangulations: {}", r.triangulations),
                        format!("g-vector models agree: {}", r.g_model_agrees),
                        format!("ray set: {}", r.ray_set_ok),
                        format!("cones: {}", r.cones_ok),
                        format!("subdivision of the loop fan: {}", r.subdivision_ok),
                        format!("cube faces: {}", r.cube_ok),
                        format!("ridge pairing: {}", r.ridge_pairing_ok),
                    ];
                    prose.extend(failure_prose(&r.failures));
                    verdict(r.ok(), summary, prose, &r, o.format)
                }
                Err(e) => verdict(
                    false,
                    e.to_string(),
                    vec![],
                    &json!({ "failures": [e.to_string()] }),
                    o.format,
                ),
            }
        }
        VerifyWhat::BraidWitness => {
            let w = braid2_witness();
            let ok = w.inside_ok && w.outside_ok;
            let summary = "nested braid cone meets the hexagon cone without lying inside it".to_string();
            let prose = vec![
                format!("shared point ({}): {}", rats(&w.inside).join(", "), w.inside_ok),
                format!("escaping point ({}): {}", rats(&w.outside).join(", "), w.outside_ok),
            ];
            let report = json!({
                "inside": rats(&w.inside),
                "outside": rats(&w.outside),
                "inside_ok": w.inside_ok,
                "outside_ok": w.outside_ok,
            });
            verdict(ok, summary, prose, &report, o.format)
        }
    }
}

fn sequence_output(xs: &[BigInt], format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => to_json(&big_json(xs))?,
        Format::Csv => format!("{}\n", joined(xs, ",")),
        Format::Text => format!("{}\n", joined(xs, " ")),
    })
}

pub fn count(what: CountWhat, cfg: &Config, o: &Common) -> Result<Output, CliError> {
    let n = cfg.n;
    match what {
        CountWhat::FVector => {
            let f = f_polynomials_recurrence(n);
            Ok(Output::ok(sequence_output(f[n - 1].coeffs(), o.format)?))
        }
        CountWhat::M => Ok(Output::ok(sequence_output(&max_matryoshka_counts(n), o.format)?)),
        CountWhat::Schroeder => Ok(Output::ok(sequence_output(&schroeder_series(n), o.format)?)),
        CountWhat::Correlatron => {
            let h = correlatron_h_formula(n);
            Ok(Output::ok(sequence_output(h[n - 1].coeffs(), o.format)?))
        }
        CountWhat::InverseCheck => {
            let f = f_polynomials_recurrence(n);
            let h = correlatron_h_formula(n.saturating_sub(1).max(1));
            let cosmo = cosmohedron_inverse_residual(&f, n).is_zero();
            let corr = correlatron_inverse_residual(&h, &f, n).is_zero();
            let summary = format!("compositional inverse residuals vanish through x^{n}");
            let prose = vec![
                format!("cosmohedron pair: {}", if cosmo { "zero" } else { "nonzero" }),
                format!("correlatron pair: {}", if corr { "zero" } else { "nonzero" }),
            ];
            let report = json!({ "order": n, "cosmohedron_zero": cosmo, "correlatron_zero": corr });
            verdict(cosmo && corr, summary, prose, &report, o.format)
        }
        CountWhat::DAlgebraic => {
            let zero = d_algebraic_residual(n).is_zero();
            let summary = format!("M - x^2 - M M' vanishes through x^{n}");
            let report = json!({ "order": n, "zero": zero });
            verdict(zero, summary, vec![], &report, o.format)
        }
    }
}

pub fn export(what: ExportWhat, cfg: &Config, o: &Common) -> Result<Output, CliError> {
    match what {
        ExportWhat::Tables => {
            let rows = match o.table {
                Table::Cosmohedron => table_cosmohedron(cfg.n),
                Table::Correlatron => table_correlatron(cfg.n),
            };
            let text = match o.format {
                Format::Json => to_json(&rows.iter().map(|r| big_json(r)).collect::<Vec<_>>())?,
                Format::Csv | Format::Text => to_csv(&rows),
            };
            Ok(Output::ok(text))
        }
        ExportWhat::Json => Ok(Output::ok(to_json(&cfg.effective_file()?)?)),
    }
}
