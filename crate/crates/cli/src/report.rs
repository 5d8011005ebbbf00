//! Rendering: classification reports and the family table in markdown, CSV
//! and JSON. Everything here is deterministic for a fixed seed and input.

use lieclass_core::classify::{classify, Classification};
use lieclass_core::families::{build, conditions, never_cell_verified, sample, FamilyId, Mode};
use lieclass_core::lie::{derived_series, is_nilpotent, is_solvable, LieAlgebra4};
use lieclass_core::linalg::Vec4;
use lieclass_core::{Rational, Scalar};
use num_traits::Zero;
use serde_json::json;

pub const BASIS_LABELS: [&str; 4] = ["X", "Y", "Z", "W"];

/// `c1 X + c2 Y - c3 Z` style rendering of a frame vector, omitting zero
/// terms and unit coefficients.
pub fn render_vector<S: Scalar>(v: &Vec4<S>, tol: f64) -> String {
    let mut out = String::new();
    for (k, coeff) in v.0.iter().enumerate() {
        if coeff.is_negligible(tol) {
            continue;
        }
        let rendered = coeff.render();
        let (sign, magnitude) = match rendered.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("+", rendered),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if magnitude == "1" {
            out.push_str(BASIS_LABELS[k]);
        } else {
            out.push_str(&format!("{magnitude} {}", BASIS_LABELS[k]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The six bracket lines of the normal form, in display order,
/// zero brackets omitted.
pub fn bracket_lines<S: Scalar>(alg: &LieAlgebra4<S>, tol: f64) -> Vec<String> {
    let pairs = [(3usize, 2usize), (2, 0), (2, 1), (3, 0), (3, 1), (1, 0)];
    let mut lines = Vec::new();
    for (i, j) in pairs {
        let v = alg.bracket_basis(i, j);
        if v.is_zero(tol) {
            continue;
        }
        lines.push(format!(
            "[{},{}] = {}",
            BASIS_LABELS[i],
            BASIS_LABELS[j],
            render_vector(&v, tol)
        ));
    }
    lines
}

fn verdict(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Human-readable classification report.
pub fn classification_text<S: Scalar>(
    c: &Classification<S>,
    alg: &LieAlgebra4<S>,
    tol: f64,
) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };

    push(&mut out, format!("class: {}", c.class_label()));
    push(
        &mut out,
        format!(
            "verdict: ak={} i={} k={}",
            verdict(c.ak),
            verdict(c.i),
            verdict(c.k)
        ),
    );
    push(&mut out, "routes (all three must agree):".to_string());
    push(
        &mut out,
        format!(
            "  closed-form conditions : ak={} i={}",
            verdict(c.closed_form.ak),
            verdict(c.closed_form.i)
        ),
    );
    push(
        &mut out,
        format!(
            "  direct d_omega / N_J   : ak={} i={}",
            verdict(c.direct.ak),
            verdict(c.direct.i)
        ),
    );
    push(
        &mut out,
        format!(
            "  nabla_omega projection : ak={} i={}",
            verdict(c.projection.ak),
            verdict(c.projection.i)
        ),
    );
    push(
        &mut out,
        format!("routes agree: {}", verdict(c.routes_agree)),
    );

    push(
        &mut out,
        format!(
            "foliation: minimal={} conformal={} riemannian={} totally_geodesic={}",
            verdict(c.foliation.minimal),
            verdict(c.foliation.conformal),
            verdict(c.foliation.riemannian),
            verdict(c.foliation.totally_geodesic)
        ),
    );

    push(&mut out, "witnesses:".to_string());
    let triples = ["(X,Y,Z)", "(X,Y,W)", "(X,Z,W)", "(Y,Z,W)"];
    for (t, v) in triples.iter().zip(c.d_omega.iter()) {
        push(&mut out, format!("  d_omega{t} = {}", v.render()));
    }
    push(
        &mut out,
        format!("  N_J(Z,X) = {}", render_vector(&c.nijenhuis_zx, tol)),
    );
    push(
        &mut out,
        format!(
            "  |w1|^2 = {}  |w2|^2 = {}  |w3|^2 = {}  |w4|^2 = {}",
            c.gh_norms[0].render(),
            c.gh_norms[1].render(),
            c.gh_norms[2].render(),
            c.gh_norms[3].render()
        ),
    );

    push(
        &mut out,
        format!("curvature: K(Z,W) = {}", c.curvature_vertical.render()),
    );
    if let Some(kh) = &c.curvature_horizontal {
        push(&mut out, format!("           K(X,Y) = {}", kh.render()));
    }

    if c.family_matches.is_empty() {
        push(&mut out, "families: no template matches".to_string());
        for m in &c.identify_misses {
            push(&mut out, format!("  near miss: {m}"));
        }
    } else {
        for (id, p) in &c.family_matches {
            let rendered: Vec<String> = p
                .ordered(*id)
                .into_iter()
                .map(|(name, v)| format!("{name}={}", v.render()))
                .collect();
            push(
                &mut out,
                format!(
                    "family: {id}({}) [{}, case {:?}]",
                    rendered.join(", "),
                    id.structure_note(),
                    id.case()
                ),
            );
        }
    }

    let series = derived_series(alg, tol);
    push(
        &mut out,
        format!(
            "derived series: {series:?} (solvable={}, nilpotent={})",
            verdict(is_solvable(alg, tol)),
            verdict(is_nilpotent(alg, tol))
        ),
    );

    let coeffs: Vec<String> = c
        .adapted
        .components()
        .iter()
        .map(|(n, v)| format!("{n}={}", v.render()))
        .collect();
    push(
        &mut out,
        format!("adapted coefficients: {}", coeffs.join(" ")),
    );
    out
}

/// Flat `key,value` rendering of the classification for spreadsheet use.
pub fn classification_csv<S: Scalar>(
    c: &Classification<S>,
    alg: &LieAlgebra4<S>,
    tol: f64,
) -> String {
    let mut out = String::from("key,value\n");
    let mut row = |k: &str, v: String| out.push_str(&format!("{k},{v}\n"));
    row("class", c.class_label().to_string());
    row("ak", c.ak.to_string());
    row("i", c.i.to_string());
    row("k", c.k.to_string());
    row("routes_agree", c.routes_agree.to_string());
    row("minimal", c.foliation.minimal.to_string());
    row("conformal", c.foliation.conformal.to_string());
    row("riemannian", c.foliation.riemannian.to_string());
    row("totally_geodesic", c.foliation.totally_geodesic.to_string());
    for (name, v) in ["d_omega_XYZ", "d_omega_XYW", "d_omega_XZW", "d_omega_YZW"]
        .iter()
        .zip(c.d_omega.iter())
    {
        row(name, v.render());
    }
    for (name, v) in ["nijenhuis_ZX_X", "nijenhuis_ZX_Y", "nijenhuis_ZX_Z", "nijenhuis_ZX_W"]
        .iter()
        .zip(c.nijenhuis_zx.0.iter())
    {
        row(name, v.render());
    }
    for (name, v) in ["w1_norm_sq", "w2_norm_sq", "w3_norm_sq", "w4_norm_sq"]
        .iter()
        .zip(c.gh_norms.iter())
    {
        row(name, v.render());
    }
    row("curvature_vertical", c.curvature_vertical.render());
    if let Some(kh) = &c.curvature_horizontal {
        row("curvature_horizontal", kh.render());
    }
    let families: Vec<String> = c
        .family_matches
        .iter()
        .map(|(id, _)| id.to_string())
        .collect();
    row("families", families.join(" "));
    row("solvable", is_solvable(alg, tol).to_string());
    row("nilpotent", is_nilpotent(alg, tol).to_string());
    for (name, v) in c.adapted.components() {
        row(name, v.render());
    }
    out
}

/// Machine-readable classification report; scalar values are rendered as
/// literals so exact rationals survive.
pub fn classification_json<S: Scalar>(
    c: &Classification<S>,
    alg: &LieAlgebra4<S>,
    tol: f64,
) -> serde_json::Value {
    let families: Vec<serde_json::Value> = c
        .family_matches
        .iter()
        .map(|(id, p)| {
            let params: serde_json::Map<String, serde_json::Value> = p
                .ordered(*id)
                .into_iter()
                .map(|(n, v)| (n.to_string(), json!(v.render())))
                .collect();
            json!({
                "family": id.to_string(),
                "case": format!("{:?}", id.case()),
                "structure": id.structure_note(),
                "params": params,
            })
        })
        .collect();
    json!({
        "class": c.class_label(),
        "ak": c.ak,
        "i": c.i,
        "k": c.k,
        "routes": {
            "closed_form": { "ak": c.closed_form.ak, "i": c.closed_form.i },
            "direct": { "ak": c.direct.ak, "i": c.direct.i },
            "projection": { "ak": c.projection.ak, "i": c.projection.i },
            "agree": c.routes_agree,
        },
        "foliation": {
            "minimal": c.foliation.minimal,
            "conformal": c.foliation.conformal,
            "riemannian": c.foliation.riemannian,
            "totally_geodesic": c.foliation.totally_geodesic,
        },
        "witnesses": {
            "d_omega": {
                "XYZ": c.d_omega[0].render(),
                "XYW": c.d_omega[1].render(),
                "XZW": c.d_omega[2].render(),
                "YZW": c.d_omega[3].render(),
            },
            "nijenhuis_ZX": c.nijenhuis_zx.0.iter().map(|v| v.render()).collect::<Vec<_>>(),
            "gh_norms": c.gh_norms.iter().map(|v| v.render()).collect::<Vec<_>>(),
        },
        "curvature": {
            "vertical": c.curvature_vertical.render(),
            "horizontal": c.curvature_horizontal.as_ref().map(|v| v.render()),
        },
        "families": families,
        "identify_misses": c.identify_misses,
        "derived_series": derived_series(alg, tol),
        "solvable": is_solvable(alg, tol),
        "nilpotent": is_nilpotent(alg, tol),
        "adapted": c.adapted.components().iter()
            .map(|(n, v)| (n.to_string(), json!(v.render())))
            .collect::<serde_json::Map<String, serde_json::Value>>(),
    })
}

/// One (family, mode) cell of the sampled classification table.
pub struct TableCell {
    pub family: FamilyId,
    pub mode: Mode,
    pub samples: u64,
    pub jacobi_pass: u64,
    pub route_agreement: u64,
    pub table1_match: u64,
    /// For unachievable modes: the exact nonexistence check passed.
    pub verified_never: bool,
}

impl TableCell {
    pub fn achievable(&self) -> bool {
        self.family.mode_achievable(self.mode)
    }

    pub fn pass(&self) -> bool {
        if self.achievable() {
            self.jacobi_pass == self.samples
                && self.route_agreement == self.samples
                && self.table1_match == self.samples
        } else {
            self.verified_never
        }
    }
}

/// Sample every (family, mode) cell in exact arithmetic and record
/// agreement counts for the three classification routes.
pub fn run_table(samples: u64, seed: u64, tol: f64) -> Vec<TableCell> {
    let mut cells = Vec::new();
    for id in FamilyId::ALL {
        for mode in Mode::ALL {
            if !id.mode_achievable(mode) {
                cells.push(TableCell {
                    family: id,
                    mode,
                    samples: 0,
                    jacobi_pass: 0,
                    route_agreement: 0,
                    table1_match: 0,
                    verified_never: never_cell_verified(id, mode),
                });
                continue;
            }
            let mut jacobi_pass = 0;
            let mut route_agreement = 0;
            let mut table1_match = 0;
            for k in 0..samples {
                let p = sample::<Rational>(id, seed.wrapping_add(k), mode)
                    .expect("achievable mode samples");
                let alg = build(id, &p, tol).expect("sampled parameters are valid");
                if alg.jacobi_defect().is_zero() {
                    jacobi_pass += 1;
                }
                let c = classify(&alg, tol).expect("family instances are adapted");
                if c.routes_agree {
                    route_agreement += 1;
                }
                let row = conditions(id, &p, tol).expect("sampled parameters are valid");
                let mode_hit = match mode {
                    Mode::Generic => true,
                    Mode::Ak => c.ak,
                    Mode::I => c.i,
                    Mode::K => c.k,
                };
                if (c.ak, c.i, c.k) == (row.ak, row.i, row.k) && mode_hit {
                    table1_match += 1;
                }
            }
            cells.push(TableCell {
                family: id,
                mode,
                samples,
                jacobi_pass,
                route_agreement,
                table1_match,
                verified_never: false,
            });
        }
    }
    cells
}

fn cell_for(cells: &[TableCell], id: FamilyId, mode: Mode) -> &TableCell {
    cells
        .iter()
        .find(|c| c.family == id && c.mode == mode)
        .expect("every cell is present")
}

/// Markdown table mirroring the three condition columns, one row per
/// family, plus a generic-mode consistency summary.
pub fn table_markdown(cells: &[TableCell]) -> String {
    let mut out = String::new();
    out.push_str("| Family | Almost Kahler (d_omega = 0) | Integrable (N_J = 0) | Kahler |\n");
    out.push_str("|---|---|---|---|\n");
    for id in FamilyId::ALL {
        let mut row = format!("| {id} |");
        for mode in [Mode::Ak, Mode::I, Mode::K] {
            let cell = cell_for(cells, id, mode);
            let text = if cell.achievable() {
                let status = if cell.pass() { "PASS" } else { "FAIL" };
                format!(
                    " {} [{} {}/{}] |",
                    id.condition_text(mode),
                    status,
                    cell.table1_match
                        .min(cell.route_agreement)
                        .min(cell.jacobi_pass),
                    cell.samples
                )
            } else if cell.verified_never {
                " never true - verified |".to_string()
            } else {
                " never true - VERIFICATION FAILED |".to_string()
            };
            row.push_str(&text);
        }
        out.push_str(&row);
        out.push('\n');
    }
    let generic: Vec<&TableCell> = cells.iter().filter(|c| c.mode == Mode::Generic).collect();
    let ok = generic.iter().filter(|c| c.pass()).count();
    let n = generic.first().map(|c| c.samples).unwrap_or(0);
    out.push_str(&format!(
        "\nGeneric-mode consistency: {ok}/{} families with {n} samples each, three routes vs table row.\n",
        generic.len()
    ));
    out
}

pub fn table_csv(cells: &[TableCell]) -> String {
    let mut out = String::from("family,mode,samples,jacobi_pass,route_agreement,table1_match\n");
    for cell in cells {
        let (j, r, t) = if cell.achievable() {
            (
                (cell.jacobi_pass == cell.samples).to_string(),
                (cell.route_agreement == cell.samples).to_string(),
                (cell.table1_match == cell.samples).to_string(),
            )
        } else {
            let v = cell.verified_never.to_string();
            (v.clone(), v.clone(), v)
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell.family, cell.mode, cell.samples, j, r, t
        ));
    }
    out
}

pub fn table_json(cells: &[TableCell]) -> String {
    let rows: Vec<serde_json::Value> = cells
        .iter()
        .map(|c| {
            json!({
                "family": c.family.to_string(),
                "mode": c.mode.to_string(),
                "achievable": c.achievable(),
                "condition": c.family.condition_text(c.mode),
                "samples": c.samples,
                "jacobi_pass": c.jacobi_pass,
                "route_agreement": c.route_agreement,
                "table1_match": c.table1_match,
                "verified_never": c.verified_never,
                "pass": c.pass(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
}
