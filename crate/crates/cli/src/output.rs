//! Rendering of report types as JSON, CSV and aligned text tables.

use fsiglab::agl::AffineGroup;
use fsiglab::criteria::{ClassificationRow, CohomologyRow, CriterionReport, DegreeRow};
use fsiglab::kg::orbits::{DecompReport, OrbitClass};
use fsiglab::kg::FlReport;
use fsiglab::theta::rational_string;
use fsiglab::Rational;
use serde_json::json;

fn print_aligned(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let line = |cells: Vec<String>| {
        let mut out = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:<width$}", width = widths[i]));
        }
        println!("{}", out.trim_end());
    };
    line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        line(row.clone());
    }
}

fn opt(v: &Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn classification_cells(row: &ClassificationRow) -> Vec<String> {
    vec![
        row.p.to_string(),
        row.r.to_string(),
        row.group_order.to_string(),
        row.has_pseudo_reflection.to_string(),
        row.det_v.clone(),
        row.s_positive.to_string(),
        row.s_lower_bound.clone().unwrap_or_else(|| "-".into()),
        row.depth.to_string(),
        row.dim.to_string(),
        row.cohen_macaulay.to_string(),
        row.weakly_f_regular.to_string(),
        row.f_rational.to_string(),
        row.gorenstein.to_string(),
        row.quasi_gorenstein.to_string(),
        row.case.clone(),
        opt(&row.first_fail_cover),
        opt(&row.first_fail_h1),
    ]
}

const CLASSIFICATION_HEADER: &[&str] = &[
    "p",
    "r",
    "|G|",
    "pseudo_refl",
    "det_V",
    "s_positive",
    "s_lower",
    "depth",
    "dim",
    "CM",
    "weakly_F_reg",
    "F_rational",
    "Gorenstein",
    "quasi_Gor",
    "case",
    "fail_cover",
    "fail_h1",
];

pub fn classification_table(rows: &[ClassificationRow]) {
    let cells: Vec<Vec<String>> = rows.iter().map(classification_cells).collect();
    print_aligned(CLASSIFICATION_HEADER, &cells);
}

pub fn classification_csv(rows: &[ClassificationRow]) {
    println!("{}", CLASSIFICATION_HEADER.join(","));
    for row in rows {
        println!("{}", classification_cells(row).join(","));
    }
}

pub fn classify_table(row: &ClassificationRow, criteria: &CriterionReport) {
    classification_table(std::slice::from_ref(row));
    println!();
    println!("provenance:");
    println!("  depth:      {}", row.provenance.depth);
    println!("  s_positive: {}", row.provenance.s_positive);
    println!("  f_rational: {}", row.provenance.f_rational);
    println!();
    degree_rows_table(&criteria.rows);
}

pub fn classify_json(row: &ClassificationRow, criteria: &CriterionReport) {
    let value = json!({
        "classification": row,
        "degrees": criteria.rows,
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}

fn degree_cells(row: &DegreeRow) -> Vec<String> {
    let proj: Vec<String> = row.proj.iter().map(|(j, m)| format!("{j}:{m}")).collect();
    vec![
        row.p.to_string(),
        row.r.to_string(),
        row.d.to_string(),
        row.dim_bd.to_string(),
        row.trivial.to_string(),
        proj.join(" "),
        row.h1_rad_pnu.to_string(),
        row.cover_surjective.to_string(),
    ]
}

const DEGREE_HEADER: &[&str] = &[
    "p",
    "r",
    "d",
    "dimBd",
    "trivial",
    "proj(j:mult)",
    "h1_radPnu",
    "coverSurjective",
];

pub fn degree_rows_table(rows: &[DegreeRow]) {
    let cells: Vec<Vec<String>> = rows.iter().map(degree_cells).collect();
    print_aligned(DEGREE_HEADER, &cells);
}

pub fn degree_rows_csv(rows: &[DegreeRow]) {
    println!("p,r,d,dimBd,trivial,proj,h1_radPnu,coverSurjective");
    for row in rows {
        let proj: Vec<String> = row.proj.iter().map(|(j, m)| format!("{j}:{m}")).collect();
        println!(
            "{},{},{},{},{},{},{},{}",
            row.p,
            row.r,
            row.d,
            row.dim_bd,
            row.trivial,
            proj.join(" "),
            row.h1_rad_pnu,
            row.cover_surjective
        );
    }
}

pub fn decompose_json(report: &DecompReport, row: &DegreeRow, orbits: Option<&[OrbitClass]>) {
    let mut value = json!({
        "p": report.p,
        "r": report.r,
        "d": report.d,
        "dimBd": report.dim_bd,
        "trivial": report.trivial,
        "proj": report.proj,
        "h1_radPnu": row.h1_rad_pnu,
        "coverSurjective": row.cover_surjective,
    });
    if let Some(orbits) = orbits {
        value["orbits"] = serde_json::to_value(orbits).unwrap();
    }
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}

pub fn decompose_table(report: &DecompReport, row: &DegreeRow, orbits: Option<&[OrbitClass]>) {
    degree_rows_table(std::slice::from_ref(row));
    let check: u64 = report.trivial + report.p * report.proj.values().sum::<u64>();
    println!();
    println!("dimension check: {} + {}·{} = {} = dim B_d", report.trivial, report.p, report.proj.values().sum::<u64>(), check);
    if let Some(orbits) = orbits {
        println!();
        let cells: Vec<Vec<String>> = orbits
            .iter()
            .map(|o| {
                let kind = match &o.kind {
                    fsiglab::kg::orbits::OrbitKind::TrivialSummand => "trivial".to_string(),
                    fsiglab::kg::orbits::OrbitKind::ProjectiveSummand { multiplicities } => {
                        let m: Vec<String> =
                            multiplicities.iter().map(|(j, c)| format!("{j}:{c}")).collect();
                        format!("projective {}", m.join(" "))
                    }
                };
                vec![
                    format!("{:?}", o.representative),
                    o.orbit_size.to_string(),
                    o.stabilizer_order.to_string(),
                    o.q_free.to_string(),
                    kind,
                ]
            })
            .collect();
        print_aligned(&["representative", "orbit", "stab", "q_free", "kind"], &cells);
    }
}

pub fn cohomology_csv(rows: &[CohomologyRow]) {
    println!("p,r,d,dim,h1");
    for row in rows {
        println!(
            "{},{},{},{},{}",
            row.p,
            row.r,
            row.d.map_or_else(|| "-".into(), |d| d.to_string()),
            row.dim,
            row.h1
        );
    }
}

pub fn cohomology_table_text(rows: &[CohomologyRow]) {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            vec![
                row.p.to_string(),
                row.r.to_string(),
                row.d.map_or_else(|| "-".into(), |d| d.to_string()),
                row.dim.to_string(),
                row.h1.to_string(),
            ]
        })
        .collect();
    print_aligned(&["p", "r", "d", "dim", "h1"], &cells);
}

pub fn surj_pair_json(
    algebra: &str,
    source: &str,
    target: &str,
    r_max: u64,
    cfg: &fsiglab::surjlab::SearchConfig,
) -> Result<(), String> {
    use fsiglab::surjlab::{asn_estimate, surj_number, FdModule, LocalAlgebra, SurjCertificate};
    let alg = LocalAlgebra::preset(algebra).map_err(|e| e.to_string())?;
    let m = FdModule::parse(&alg, source).map_err(|e| e.to_string())?;
    let n = FdModule::parse(&alg, target).map_err(|e| e.to_string())?;
    let surj = surj_number(&m, &n, cfg).map_err(|e| e.to_string())?;
    let lab = asn_estimate(&m, &n, r_max, cfg).map_err(|e| e.to_string())?;
    let value = json!({
        "algebra": algebra,
        "source": { "name": source, "dim": m.dim(), "mu": m.mu() },
        "target": { "name": target, "dim": n.dim(), "mu": n.mu() },
        "surj": surj.value,
        "exact": surj.exact,
        "certificate": match surj.certificate {
            SurjCertificate::Found(_) => "surjection-found",
            SurjCertificate::Exhausted { .. } => "exhausted",
        },
        "nsurj": lab.values.iter().map(|v| rational_string(*v)).collect::<Vec<_>>(),
        "asn_lower": rational_string(lab.lower),
        "asn_upper": rational_string(lab.upper),
        "brackets_exact": lab.exact,
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(())
}

pub fn fl_json(p: u64, r: u64, group: &AffineGroup, fl: &FlReport) {
    let sum: Rational = fl.vector.coeffs().map(|(_, c)| c).sum();
    let value = json!({
        "p": p,
        "r": r,
        "group_order": group.order(),
        "registry": fl.registry.as_ref(),
        "coefficients": fl.vector.to_json(),
        "coefficient_sum": rational_string(sum),
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}
