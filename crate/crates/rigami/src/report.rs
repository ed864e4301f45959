//! The full analysis pipeline and its report: structure counts, rank and
//! kernel dimensions, and the rigidity ladder from first-order rigidity
//! through pre-stress stability and second-order rigidity, cross-checked
//! against the double-coning framework.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::barjoint::{correspondence_check, CorrespondenceReport};
use crate::consistency::{ConstraintSystem, DEFAULT_RES_TOL};
use crate::derivatives::{assemble_hessian, assemble_jacobian};
use crate::error::Result;
use crate::linalg;
use crate::model::CreasedPaper;
use crate::stability::{
    find_stabilizing_stress, is_prestress_stable, second_order_classify, SecondOrderVerdict,
    StabilityOptions, StiffnessModel,
};
use crate::statics::{
    classify_static, counting_report, first_order_flexes, self_stresses, CountingReport,
    StaticClass,
};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub res_tol: f64,
    pub rank_tol: f64,
    pub pd_tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            res_tol: DEFAULT_RES_TOL,
            rank_tol: linalg::DEFAULT_RANK_TOL,
            pd_tol: crate::stability::DEFAULT_PD_TOL,
            samples: 10_000,
            seed: 0,
        }
    }
}

impl AnalyzeOptions {
    pub fn stability(&self) -> StabilityOptions {
        StabilityOptions {
            pd_tol: self.pd_tol,
            rank_tol: self.rank_tol,
            samples: self.samples,
            seed: self.seed,
            restarts: 50,
        }
    }
}

/// Structure summary in the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub inner_vertices: usize,
    pub inner_creases: usize,
    pub holes: usize,
    pub panels: usize,
    pub boundary_vertices: usize,
}

/// Full analysis result. The classification ladder is monotone: first-order
/// rigidity implies pre-stress stability (the zero stress works), which
/// implies second-order rigidity, which implies rigidity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub structure: StructureSummary,
    pub consistent: bool,
    pub residual: f64,
    pub rank: usize,
    pub m: usize,
    pub s: usize,
    pub first_order_rigid: bool,
    pub statically_rigid: bool,
    pub prestress_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<f64>>,
    pub restricted_eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_t: Option<f64>,
    pub second_order_rigid: bool,
    /// True when the second-order verdict came from the sampling sweep rather
    /// than one of the exact paths.
    pub sampled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_order_witness: Option<Vec<f64>>,
    /// Second-order rigidity implies rigidity.
    pub rigid_implied: bool,
    pub counting: CountingReport,
    pub counting_identity: bool,
    pub correspondence: CorrespondenceReport,
    pub ladder_monotone: bool,
    pub warnings: Vec<String>,
}

/// Run the whole pipeline on a loaded paper.
pub fn analyze(paper: &CreasedPaper, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let counts = paper.counts();
    let system = ConstraintSystem::new(paper)?;
    let consistency = system.consistency(&paper.folding_angles(), options.res_tol)?;
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    let static_report = classify_static(&jacobian, &counts, options.rank_tol);
    let flexes = first_order_flexes(&jacobian, options.rank_tol);
    let stresses = self_stresses(&jacobian, options.rank_tol);
    let stability_options = options.stability();
    let b = StiffnessModel::identity_for(&system);

    let found = find_stabilizing_stress(&hessian, &flexes, &stresses, &stability_options)?;
    let (prestress_stable, omega, restricted_eigenvalues, certified_t) = match &found {
        Some((stress, _)) => {
            let verdict =
                is_prestress_stable(&jacobian, &hessian, &flexes, stress, &b, &stability_options)?;
            (
                verdict.stable,
                Some(stress.iter().copied().collect::<Vec<f64>>()),
                verdict.restricted_eigenvalues,
                verdict.certified_t,
            )
        }
        None => (false, None, Vec::new(), None),
    };

    let second =
        second_order_classify(&jacobian, &hessian, &flexes, &stresses, &stability_options)?;
    let (second_order_rigid, witness) = match &second.verdict {
        SecondOrderVerdict::Rigid => (true, None),
        SecondOrderVerdict::Foldable { flex, .. } => {
            (false, Some(flex.iter().copied().collect::<Vec<f64>>()))
        }
    };

    let counting = counting_report(&counts, static_report.flexes);
    let correspondence = correspondence_check(
        paper,
        static_report.flexes,
        static_report.self_stresses,
        options.rank_tol,
    )?;

    let first_order_rigid = static_report.class == StaticClass::StaticallyRigid;
    let ladder_monotone =
        (!first_order_rigid || prestress_stable) && (!prestress_stable || second_order_rigid);

    Ok(AnalysisReport {
        structure: StructureSummary {
            inner_vertices: counts.inner_vertices,
            inner_creases: counts.inner_creases,
            holes: counts.holes,
            panels: counts.panels,
            boundary_vertices: counts.boundary_vertices,
        },
        consistent: consistency.consistent,
        residual: consistency.selected_inf,
        rank: static_report.rank,
        m: static_report.flexes,
        s: static_report.self_stresses,
        first_order_rigid,
        statically_rigid: first_order_rigid,
        prestress_stable,
        omega,
        restricted_eigenvalues,
        certified_t,
        second_order_rigid,
        sampled: second.sampled,
        second_order_witness: witness,
        rigid_implied: second_order_rigid,
        counting,
        counting_identity: counting.identity_holds && static_report.counting_identity,
        correspondence,
        ladder_monotone,
        warnings: paper.warnings.clone(),
    })
}

/// Human-readable rendering: the rigidity ladder with implication arrows.
pub fn render_text(report: &AnalysisReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let s = &report.structure;
    let mut out = String::new();
    out.push_str(&format!(
        "structure: I={} inner vertices, J={} inner creases, H={} holes, K={} panels, Z={} boundary vertices\n",
        s.inner_vertices, s.inner_creases, s.holes, s.panels, s.boundary_vertices
    ));
    out.push_str(&format!(
        "configuration: {} (residual {:.3e})\n",
        if report.consistent {
            "consistent"
        } else {
            "INCONSISTENT"
        },
        report.residual
    ));
    out.push_str(&format!(
        "rank(JA) = {}   flexes m = {}   self-stresses s = {}\n",
        report.rank, report.m, report.s
    ));
    out.push_str("rigidity ladder:\n");
    out.push_str(&format!(
        "  first-order rigid (= statically rigid) : {}\n",
        yn(report.first_order_rigid)
    ));
    let omega_note = match (&report.omega, report.prestress_stable) {
        (Some(_), true) if report.m == 0 => " (zero stress suffices)".to_string(),
        (Some(_), true) => match report.certified_t {
            Some(t) => format!(" (stabilizing stress found, certified t = {t:.3e})"),
            None => " (stabilizing stress found)".to_string(),
        },
        _ => String::new(),
    };
    out.push_str(&format!(
        "    => pre-stress stable                : {}{}\n",
        yn(report.prestress_stable),
        omega_note
    ));
    out.push_str(&format!(
        "      => second-order rigid             : {} [{}]\n",
        yn(report.second_order_rigid),
        if report.sampled { "sampled" } else { "exact" }
    ));
    out.push_str(&format!(
        "        => rigid                        : {}\n",
        if report.rigid_implied {
            "implied"
        } else {
            "not implied"
        }
    ));
    out.push_str(&format!(
        "counting: s1 = {}, s2 = {}, s3 = {} ({})\n",
        report.counting.s1,
        report.counting.s2,
        report.counting.s3,
        if report.counting_identity {
            "identities hold"
        } else {
            "IDENTITY FAILURE"
        }
    ));
    let c = &report.correspondence;
    let offset_note = if c.closed_surface {
        " (closed surface: framework count omits the 6 rigid motions)"
    } else {
        ""
    };
    out.push_str(&format!(
        "double-coning: {} joints, {} bars; rigidity match: {}, flex dims {}/{} match: {}, stress dims {}/{} match: {}{}\n",
        c.joint_count,
        c.bar_count,
        yn(c.rigidity_match),
        c.origami_flex_dim,
        c.framework_flex_dim,
        yn(c.flex_dim_match),
        c.origami_stress_dim,
        c.framework_stress_dim,
        yn(c.stress_dim_match),
        offset_note
    ));
    if !report.ladder_monotone {
        out.push_str("WARNING: rigidity ladder is not monotone\n");
    }
    for w in &report.warnings {
        out.push_str(&format!("note: {w}\n"));
    }
    out
}

/// Report for the `count` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSummary {
    #[serde(rename = "I")]
    pub inner_vertices: usize,
    #[serde(rename = "J")]
    pub inner_creases: usize,
    #[serde(rename = "H")]
    pub holes: usize,
    #[serde(rename = "K")]
    pub panels: usize,
    #[serde(rename = "Z")]
    pub boundary_vertices: usize,
    pub jacobian_shape: [usize; 2],
}

pub fn count_summary(paper: &CreasedPaper) -> Result<CountSummary> {
    let counts = paper.counts();
    let system = ConstraintSystem::new(paper)?;
    Ok(CountSummary {
        inner_vertices: counts.inner_vertices,
        inner_creases: counts.inner_creases,
        holes: counts.holes,
        panels: counts.panels,
        boundary_vertices: counts.boundary_vertices,
        jacobian_shape: [system.rows, system.num_creases],
    })
}

/// Stability report for the `prestress` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub classification: String,
    pub m: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<f64>>,
    pub restricted_eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_t: Option<f64>,
    pub sampled: bool,
}

/// A first-order flex as a JSON file for the `second-order` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlexFile {
    pub flex: Vec<f64>,
}

pub fn flex_from_file(path: &std::path::Path, expected_len: usize) -> Result<DVector<f64>> {
    let text = std::fs::read_to_string(path)?;
    let file: FlexFile = serde_json::from_str(&text)?;
    if file.flex.len() != expected_len {
        return Err(crate::Error::DimensionMismatch {
            expected: expected_len,
            got: file.flex.len(),
        });
    }
    Ok(DVector::from_vec(file.flex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{load_creased_paper, LoadOptions};

    #[test]
    fn analysis_report_round_trips_through_json() {
        let paper =
            load_creased_paper(&fixtures::degree3_vertex(), &LoadOptions::default()).unwrap();
        let report = analyze(&paper, &AnalyzeOptions::default()).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert!(json.contains("\"prestressStable\""));
    }

    #[test]
    fn lone_panel_is_trivially_rigid_throughout() {
        let paper = load_creased_paper(&fixtures::lone_panel(), &LoadOptions::default()).unwrap();
        let report = analyze(&paper, &AnalyzeOptions::default()).unwrap();
        assert!(report.first_order_rigid);
        assert!(report.prestress_stable);
        assert!(report.second_order_rigid && !report.sampled);
        assert_eq!((report.rank, report.m, report.s), (0, 0, 0));
        assert!(report.ladder_monotone);
    }

    #[test]
    fn degree3_report_matches_the_worked_values() {
        let paper =
            load_creased_paper(&fixtures::degree3_vertex(), &LoadOptions::default()).unwrap();
        let report = analyze(&paper, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.rank, 2);
        assert_eq!(report.m, 1);
        assert_eq!(report.s, 1);
        assert!(!report.first_order_rigid);
        assert!(report.prestress_stable);
        assert!(report.second_order_rigid && !report.sampled);
        assert!(report.ladder_monotone);
        let text = render_text(&report);
        assert!(text.contains("=> pre-stress stable"));
    }
}
