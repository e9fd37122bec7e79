//! Report rendering. Structured output is a single self-describing JSON tree
//! with stable key order; polynomials and rational functions appear only in
//! canonical text form.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use gmcalc_core::brieskorn::{BasisTag, BrieskornElement, ConnectionData, EtaCoords};
use gmcalc_core::hodge::{
    gs_basis, DBetaMap, DBetaMode, FermatProblem, HodgeCriterion, HodgeReport,
};
use gmcalc_core::pf::PFEquation;
use gmcalc_core::{Monomial, RatFunc, UniPoly};

use crate::job::{OutputFormat, TameContext};

pub const SCHEMA_VERSION: u64 = 1;

fn mono_string(ctx: &TameContext, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ctx.names[i].clone()
            } else {
                format!("{}^{}", ctx.names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn input_value(ctx: &TameContext, command: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": {
            "polynomial": ctx.data.f().display(&ctx.names, &ctx.data.weights().order()),
            "variables": ctx.names,
            "weights": ctx.data.weights().alphas(),
            "degree": ctx.data.weights().degree_d(),
        },
    })
}

fn milnor_value(ctx: &TameContext) -> Value {
    let data = &ctx.data;
    let mut v = json!({
        "tame": true,
        "mu": data.mu,
        "n": data.fiber_dim(),
        "basis": data.basis.iter().map(|m| mono_string(ctx, m)).collect::<Vec<_>>(),
        "degrees": data.degrees.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "s": data.s_poly.to_string(),
        "eta_f": data.eta_f.comps().iter()
            .map(|p| p.display(&ctx.names, &data.weights().order()))
            .collect::<Vec<_>>(),
    });
    if let Some(cv) = &ctx.critical_values {
        v.as_object_mut().unwrap().insert(
            "critical_values".into(),
            json!({
                "per_variable": cv.per_variable.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "sumset": cv.sumset.to_string(),
            }),
        );
    }
    v
}

fn merge(base: Value, key: &str, payload: Value) -> Value {
    let mut obj = base;
    obj.as_object_mut()
        .unwrap()
        .insert(key.to_string(), payload);
    obj
}

fn to_bytes(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ratfunc_strings(coords: &[RatFunc]) -> Vec<String> {
    coords.iter().map(|c| c.to_string()).collect()
}

/// Serialized form of a Brieskorn element: the coordinate list plus its
/// basis tag.
fn brieskorn_value(el: &BrieskornElement) -> Value {
    json!({
        "basis": el.basis.as_str(),
        "coords": ratfunc_strings(&el.coords),
    })
}

fn unipoly_strings(coords: &[UniPoly]) -> Vec<String> {
    coords.iter().map(|c| c.to_string()).collect()
}

pub fn render_tame_check(ctx: &TameContext, format: &OutputFormat) -> String {
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "tame-check");
            let base = merge(base, "milnor", milnor_value(ctx));
            let payload = json!({
                "tame": true,
                "mu": ctx.data.mu,
                "s": ctx.data.s_poly.to_string(),
            });
            to_bytes(&merge(base, "tame_check", payload))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "tame: true");
            let _ = writeln!(out, "mu: {}", ctx.data.mu);
            let _ = writeln!(out, "S(t): {}", ctx.data.s_poly);
            out
        }
    }
}

pub fn render_milnor(ctx: &TameContext, format: &OutputFormat) -> String {
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "milnor");
            to_bytes(&merge(base, "milnor", milnor_value(ctx)))
        }
        OutputFormat::Text => {
            let data = &ctx.data;
            let mut out = String::new();
            let _ = writeln!(out, "tame: true");
            let _ = writeln!(out, "mu: {}", data.mu);
            let _ = writeln!(out, "S(t): {}", data.s_poly);
            let _ = writeln!(out, "basis (beta, A_beta):");
            for (m, a) in data.basis.iter().zip(&data.degrees) {
                let _ = writeln!(out, "  {}  A = {}", mono_string(ctx, m), a);
            }
            let _ = writeln!(out, "eta_f components:");
            for (i, p) in data.eta_f.comps().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  p_{} = {}",
                    i + 1,
                    p.display(&ctx.names, &data.weights().order())
                );
            }
            if let Some(cv) = &ctx.critical_values {
                let _ = writeln!(out, "critical values: roots of {}", cv.sumset);
            }
            out
        }
    }
}

pub fn render_connection(
    ctx: &TameContext,
    conn: &ConnectionData,
    format: &OutputFormat,
) -> String {
    let mu = ctx.data.mu;
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "connection");
            let m_rows: Vec<Vec<String>> = (0..mu)
                .map(|i| (0..mu).map(|j| conn.m.at(i, j).to_string()).collect())
                .collect();
            let nabla_rows: Vec<Vec<String>> = (0..mu)
                .map(|i| {
                    (0..mu)
                        .map(|j| conn.nabla_eta.at(i, j).to_string())
                        .collect()
                })
                .collect();
            let base = merge(base, "milnor", milnor_value(ctx));
            let payload = json!({
                "basis_change_m": m_rows,
                "det_m": conn.det_m.to_string(),
                "nabla_eta": nabla_rows,
            });
            to_bytes(&merge(base, "connection", payload))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "mu: {}", mu);
            let _ = writeln!(out, "det M(t): {}", conn.det_m);
            let _ = writeln!(out, "columns of nabla(eta_beta) in the eta basis:");
            for j in 0..mu {
                let _ = writeln!(out, "  beta = {}:", mono_string(ctx, &ctx.data.basis[j]));
                for i in 0..mu {
                    let e = conn.nabla_eta.at(i, j);
                    if !e.is_zero() {
                        let _ = writeln!(
                            out,
                            "    {} * eta[{}]",
                            e,
                            mono_string(ctx, &ctx.data.basis[i])
                        );
                    }
                }
            }
            out
        }
    }
}

fn d_beta_value(ctx: &TameContext, dmap: &DBetaMap) -> Value {
    let mode = match &dmap.mode {
        DBetaMode::Specialized { b } => json!({"kind": "specialized", "b": b.to_string()}),
        DBetaMode::Symbolic => json!({"kind": "symbolic"}),
    };
    json!({
        "mode": mode,
        "values": ctx.data.basis.iter().zip(&dmap.d_beta)
            .map(|(m, &d)| json!({"beta": mono_string(ctx, m), "d_beta": d}))
            .collect::<Vec<_>>(),
        "sum": dmap.sum(),
        "dim_vtilde": dmap.dim_vtilde,
        "exceptional_poly": dmap.exceptional_poly.as_ref().map(|p| p.to_string()),
    })
}

pub fn render_hodge_basis(
    ctx: &TameContext,
    dmap: &DBetaMap,
    basis: &HodgeReport,
    format: &OutputFormat,
) -> String {
    let n = ctx.data.fiber_dim();
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "hodge-basis");
            let base = merge(base, "milnor", milnor_value(ctx));
            let base = merge(base, "d_beta", d_beta_value(ctx, dmap));
            let dims = json!({
                format!("weight_{}", n + 1): basis.dims.weight_np1.iter()
                    .map(|(k, c)| (k.to_string(), json!(c))).collect::<Map<_,_>>(),
                format!("weight_{}", n): basis.dims.weight_n.iter()
                    .map(|(k, c)| (k.to_string(), json!(c))).collect::<Map<_,_>>(),
            });
            let entries =
                |map: &std::collections::BTreeMap<u32, Vec<gmcalc_core::hodge::HodgeEntry>>| {
                    map.iter()
                        .map(|(k, es)| {
                            (
                                k.to_string(),
                                json!(es
                                    .iter()
                                    .map(|e| {
                                        let el = BrieskornElement {
                                            basis: BasisTag::Eta,
                                            coords: e.coords.0.clone(),
                                        };
                                        json!({
                                            "beta": mono_string(ctx, &ctx.data.basis[e.beta]),
                                            "k": e.k,
                                            "element": brieskorn_value(&el),
                                        })
                                    })
                                    .collect::<Vec<_>>()),
                            )
                        })
                        .collect::<Map<_, _>>()
                };
            let mut payload = json!({
                "dimensions": dims,
                format!("weight_{}", n + 1): entries(&basis.weight_np1),
                format!("weight_{}", n): entries(&basis.weight_n),
            });
            if let Ok(gs) = gs_basis(&ctx.data) {
                payload.as_object_mut().unwrap().insert(
                    "griffiths_steenbrink".into(),
                    json!(gs
                        .labels
                        .iter()
                        .map(|(k, monos)| {
                            (
                                k.to_string(),
                                json!(monos
                                    .iter()
                                    .map(|m| format!("{}*eta_alpha/g^{}", mono_string(ctx, m), k))
                                    .collect::<Vec<_>>()),
                            )
                        })
                        .collect::<Map<_, _>>()),
                );
            }
            to_bytes(&merge(base, "hodge_basis", payload))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "d_beta sum: {} = (d-1)*mu", dmap.sum());
            for (weight, map) in [(n + 1, &basis.weight_np1), (n, &basis.weight_n)] {
                let _ = writeln!(out, "weight {weight}:");
                for (k, es) in map {
                    let _ = writeln!(
                        out,
                        "  Gr_F^{} (k = {k}): dim {}",
                        n + 1 - *k as usize,
                        es.len()
                    );
                    for e in es {
                        let _ = writeln!(
                            out,
                            "    nabla^{} eta[{}]",
                            e.k,
                            mono_string(ctx, &ctx.data.basis[e.beta])
                        );
                    }
                }
            }
            out
        }
    }
}

pub fn render_hodge_criterion(
    ctx: &TameContext,
    dmap: &DBetaMap,
    crit: &HodgeCriterion,
    format: &OutputFormat,
) -> String {
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "hodge-criterion");
            let base = merge(base, "milnor", milnor_value(ctx));
            let base = merge(base, "d_beta", d_beta_value(ctx, dmap));
            let payload = json!({
                "i_h": crit.pairs.iter()
                    .map(|(idx, k)| json!({"beta": mono_string(ctx, &ctx.data.basis[*idx]), "k": k}))
                    .collect::<Vec<_>>(),
                "functionals": crit.functionals.iter()
                    .map(|f| json!(ratfunc_strings(&f.0)))
                    .collect::<Vec<_>>(),
                "cleared_functionals": (0..crit.pairs.len())
                    .map(|i| json!(unipoly_strings(&crit.cleared_functional(i))))
                    .collect::<Vec<_>>(),
            });
            to_bytes(&merge(base, "hodge_criterion", payload))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "I_h has {} pair(s)", crit.pairs.len());
            for (i, (idx, k)) in crit.pairs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "pair ({}, k={}):",
                    mono_string(ctx, &ctx.data.basis[*idx]),
                    k
                );
                let cleared = crit.cleared_functional(i);
                for (j, c) in cleared.iter().enumerate() {
                    if !c.is_zero() {
                        let _ = writeln!(
                            out,
                            "  ({}) * integral of eta[{}]",
                            c,
                            mono_string(ctx, &ctx.data.basis[j])
                        );
                    }
                }
            }
            out
        }
    }
}

pub fn render_picard_fuchs(
    ctx: &TameContext,
    form: &str,
    nabla: u32,
    element: &EtaCoords,
    eq: &PFEquation,
    format: &OutputFormat,
) -> String {
    match format {
        OutputFormat::Structured => {
            let base = input_value(ctx, "picard-fuchs");
            let base = merge(base, "milnor", milnor_value(ctx));
            let payload = json!({
                "form": form,
                "nabla": nabla,
                "element": brieskorn_value(&BrieskornElement {
                    basis: BasisTag::Eta,
                    coords: element.0.clone(),
                }),
                "order": eq.order(),
                "coefficients": unipoly_strings(&eq.coeffs),
            });
            to_bytes(&merge(base, "picard_fuchs", payload))
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "order: {}", eq.order());
            for (i, c) in eq.coeffs.iter().enumerate() {
                let _ = writeln!(out, "c_{i}: {c}");
            }
            let terms: Vec<String> = eq
                .coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let y = match i {
                        0 => "y".to_string(),
                        1 => "y'".to_string(),
                        2 => "y''".to_string(),
                        _ => format!("y^({i})"),
                    };
                    format!("({c})*{y}")
                })
                .collect();
            let _ = writeln!(out, "equation: {} = 0", terms.join(" + "));
            out
        }
    }
}

pub fn render_fermat(fp: &FermatProblem, format: &OutputFormat) -> String {
    let names: Vec<String> = (1..=fp.m.len()).map(|i| format!("x{i}")).collect();
    let mono = |m: &Monomial| -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    };
    match format {
        OutputFormat::Structured => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "fermat",
                "input": {"m": fp.m},
                "fermat": {
                    "root_order": fp.root_order,
                    "mu": fp.index_set.len(),
                    "i_h": fp.i_h.iter().map(|&i| mono(&fp.index_set[i])).collect::<Vec<_>>(),
                    "kernel_dimension": fp.kernel.len(),
                    "kernel": fp.kernel.iter()
                        .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                },
            });
            to_bytes(&v)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "mu: {}", fp.index_set.len());
            let _ = writeln!(out, "root order N: {}", fp.root_order);
            let _ = writeln!(
                out,
                "I_h: {{{}}}",
                fp.i_h
                    .iter()
                    .map(|&i| mono(&fp.index_set[i]))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let _ = writeln!(out, "kernel dimension: {}", fp.kernel.len());
            out
        }
    }
}
