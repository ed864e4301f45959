//! Pre-stress stability and second-order rigidity.
//!
//! The tangent stiffness at a configuration is K = JA^T B JA + G(w), where B
//! is a block positive-definite stiffness on the constraint rows and G(w) is
//! the geometric stiffness: the Hessian contracted with a self-stress w. The
//! first term is positive semi-definite with the flex space as its kernel, so
//! stability is decided by the sign of G(w) restricted to the flexes: a
//! stabilizing stress makes that restriction positive definite, and then some
//! scaling t > 0 makes the whole of JA^T B JA + t G(w) positive definite.
//!
//! Second-order rigidity is the pointwise version: a nonzero flex extends to
//! a second-order flex exactly when every self-stress annihilates its
//! quadratic form; a structure is second-order rigid when every nonzero flex
//! is blocked by some self-stress.

use nalgebra::{DMatrix, DVector};

use crate::derivatives::{Hessian, Jacobian};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling::{sphere_samples, SplitMix64};
use crate::statics::{FlexBasis, StressBasis};

/// Default absolute tolerance on restricted eigenvalues.
pub const DEFAULT_PD_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct StabilityOptions {
    /// Positive-definiteness threshold on restricted eigenvalues.
    pub pd_tol: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Sphere samples for the second-order classification sweep.
    pub samples: usize,
    /// Seed offsetting the deterministic samplers.
    pub seed: u64,
    /// Restarts for the stabilizing-stress eigenvalue ascent.
    pub restarts: usize,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            pd_tol: DEFAULT_PD_TOL,
            rank_tol: linalg::DEFAULT_RANK_TOL,
            samples: 10_000,
            seed: 0,
            restarts: 50,
        }
    }
}

/// Block-diagonal stiffness on the constraint rows: one symmetric
/// positive-definite block per unit (3x3 for vertex-like units, 6x6 for holes).
#[derive(Debug, Clone)]
pub struct StiffnessModel {
    pub blocks: Vec<DMatrix<f64>>,
}

impl StiffnessModel {
    /// Identity stiffness: each unit penalized isotropically.
    pub fn identity(row_sizes: &[usize]) -> Self {
        StiffnessModel {
            blocks: row_sizes.iter().map(|&n| DMatrix::identity(n, n)).collect(),
        }
    }

    pub fn identity_for(system: &crate::consistency::ConstraintSystem) -> Self {
        let sizes: Vec<usize> = system
            .constraints
            .iter()
            .map(|c| c.unit.constraint_rows())
            .collect();
        Self::identity(&sizes)
    }

    pub fn rows(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, block) in self.blocks.iter().enumerate() {
            let sym = (block - block.transpose()).amax();
            let (min_eig, _) = linalg::smallest_eigenvalue(block);
            if sym > 1e-12 || min_eig <= 0.0 {
                return Err(Error::IndefiniteStiffnessBlock {
                    unit: i,
                    eigenvalue: min_eig,
                });
            }
        }
        Ok(())
    }

    pub fn full_matrix(&self) -> DMatrix<f64> {
        let n = self.rows();
        let mut out = DMatrix::zeros(n, n);
        let mut offset = 0;
        for block in &self.blocks {
            out.view_mut((offset, offset), block.shape())
                .copy_from(block);
            offset += block.nrows();
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        StiffnessModel {
            blocks: self.blocks.iter().map(|b| b * factor).collect(),
        }
    }
}

/// Geometric stiffness G(w): the stress-Hessian contraction, symmetrized.
pub fn geometric_stiffness(hessian: &Hessian, stress: &DVector<f64>) -> Result<DMatrix<f64>> {
    hessian.contract_stress(stress)
}

/// Restriction F^T M F of a quadratic form to the flex space.
pub fn restricted_quadratic_form(m: &DMatrix<f64>, flexes: &FlexBasis) -> DMatrix<f64> {
    flexes.vectors.transpose() * m * &flexes.vectors
}

/// Check that `stress` lies in ker(JA^T) within tolerance.
pub fn require_self_stress(jacobian: &Jacobian, stress: &DVector<f64>, tol: f64) -> Result<()> {
    if stress.len() != jacobian.matrix.nrows() {
        return Err(Error::DimensionMismatch {
            expected: jacobian.matrix.nrows(),
            got: stress.len(),
        });
    }
    let residual = (jacobian.matrix.transpose() * stress).amax();
    let bound = tol * (1.0 + stress.amax());
    if residual > bound {
        return Err(Error::NotASelfStress {
            residual,
            tolerance: bound,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct PrestressVerdict {
    pub stable: bool,
    /// Smallest eigenvalue of the restricted geometric stiffness; +infinity
    /// for first-order rigid structures (the restriction is 0x0).
    pub smallest_restricted_eigenvalue: f64,
    /// All restricted eigenvalues, ascending.
    pub restricted_eigenvalues: Vec<f64>,
    /// A verified scaling: K = JA^T B JA + t G(w) is positive definite at
    /// this t. Present only for stable verdicts.
    pub certified_t: Option<f64>,
}

/// Decide whether `stress` stabilizes the configuration under stiffness `b`.
pub fn is_prestress_stable(
    jacobian: &Jacobian,
    hessian: &Hessian,
    flexes: &FlexBasis,
    stress: &DVector<f64>,
    b: &StiffnessModel,
    options: &StabilityOptions,
) -> Result<PrestressVerdict> {
    b.validate()?;
    require_self_stress(jacobian, stress, 1e-7)?;
    let g = geometric_stiffness(hessian, stress)?;
    let restricted = restricted_quadratic_form(&g, flexes);
    let (eigenvalues, _) = linalg::sym_eigen(&restricted);
    let smallest = eigenvalues.first().copied().unwrap_or(f64::INFINITY);
    let stable = smallest > options.pd_tol || flexes.is_empty();
    let certified_t = if stable {
        certify_scaling(jacobian, &g, flexes, b, options)
    } else {
        None
    };
    Ok(PrestressVerdict {
        stable,
        smallest_restricted_eigenvalue: if flexes.is_empty() {
            f64::INFINITY
        } else {
            smallest
        },
        restricted_eigenvalues: eigenvalues,
        certified_t,
    })
}

/// A concrete t > 0 making JA^T B JA + t G positive definite, obtained from
/// a Schur-complement bound on the flex/complement splitting and verified by
/// an eigenvalue check (halving on failure).
fn certify_scaling(
    jacobian: &Jacobian,
    g: &DMatrix<f64>,
    flexes: &FlexBasis,
    b: &StiffnessModel,
    options: &StabilityOptions,
) -> Option<f64> {
    let j = jacobian.matrix.ncols();
    if j == 0 {
        return Some(1.0);
    }
    let material = jacobian.matrix.transpose() * b.full_matrix() * &jacobian.matrix;
    let m = flexes.dimension();
    // Complement of the flex space: the row space of JA.
    let complement = linalg::row_space_basis(&jacobian.matrix, options.rank_tol);
    let mut t = if m == 0 {
        let (delta, _) = linalg::smallest_eigenvalue(&material);
        let g_norm = linalg::op_norm(g);
        if g_norm == 0.0 {
            1.0
        } else {
            0.5 * delta.max(0.0) / g_norm
        }
    } else if complement.ncols() == 0 {
        // Everything is a flex: K = t G restricted to the whole space.
        1.0
    } else {
        let w = &complement;
        let delta = linalg::smallest_eigenvalue(&(w.transpose() * &material * w)).0;
        let a_blk = restricted_quadratic_form(g, flexes);
        let b_blk = w.transpose() * g * &flexes.vectors;
        let c_blk = w.transpose() * g * w;
        let lambda = linalg::smallest_eigenvalue(&a_blk).0;
        if lambda <= 0.0 || delta <= 0.0 {
            return None;
        }
        let denom = linalg::op_norm(&c_blk) + linalg::op_norm(&b_blk).powi(2) / lambda;
        if denom == 0.0 {
            1.0
        } else {
            0.5 * delta / denom
        }
    };
    if !t.is_finite() || t <= 0.0 {
        return None;
    }
    for _ in 0..60 {
        let k = &material + g * t;
        let (min_eig, _) = linalg::smallest_eigenvalue(&k);
        if min_eig > 0.0 {
            return Some(t);
        }
        t *= 0.5;
    }
    None
}

/// Search for a self-stress whose restricted geometric stiffness is positive
/// definite. Exact closed form when the flex or stress space has dimension 1;
/// otherwise projected subgradient ascent on the smallest eigenvalue over the
/// coefficient sphere.
pub fn find_stabilizing_stress(
    hessian: &Hessian,
    flexes: &FlexBasis,
    stresses: &StressBasis,
    options: &StabilityOptions,
) -> Result<Option<(DVector<f64>, f64)>> {
    let m = flexes.dimension();
    if m == 0 {
        // First-order rigid: the zero stress stabilizes.
        return Ok(Some((DVector::zeros(hessian.rows), f64::INFINITY)));
    }
    let s = stresses.dimension();
    if s == 0 {
        return Ok(None);
    }
    let restricted: Vec<DMatrix<f64>> = (0..s)
        .map(|i| {
            let g = hessian.contract_stress(&stresses.column(i))?;
            Ok(restricted_quadratic_form(&g, flexes))
        })
        .collect::<Result<_>>()?;

    let evaluate = |x: &DVector<f64>| -> (f64, DVector<f64>) {
        let mut combo = DMatrix::zeros(m, m);
        for i in 0..s {
            combo += &restricted[i] * x[i];
        }
        let (eig, vec) = linalg::smallest_eigenvalue(&combo);
        (eig, vec)
    };

    let best = if m == 1 {
        // Scalar forms: the optimum over the sphere is the normalized vector
        // of form values.
        let g: DVector<f64> = DVector::from_iterator(s, restricted.iter().map(|r| r[(0, 0)]));
        let norm = g.norm();
        if norm == 0.0 {
            None
        } else {
            Some((g / norm, norm))
        }
    } else if s == 1 {
        let (plus, _) = evaluate(&DVector::from_element(1, 1.0));
        let (minus, _) = evaluate(&DVector::from_element(1, -1.0));
        let (sign, value) = if plus >= minus {
            (1.0, plus)
        } else {
            (-1.0, minus)
        };
        Some((DVector::from_element(1, sign), value))
    } else {
        let mut rng = SplitMix64::new(options.seed ^ 0x5eed_5eed);
        let mut best: Option<(DVector<f64>, f64)> = None;
        for restart in 0..options.restarts.max(1) {
            let mut x = if restart < 2 * s {
                let mut e = DVector::zeros(s);
                e[restart / 2] = if restart % 2 == 0 { 1.0 } else { -1.0 };
                e
            } else {
                rng.next_unit_vector(s)
            };
            let mut value = evaluate(&x).0;
            for iter in 0..200 {
                let (eig, vec) = evaluate(&x);
                value = eig;
                // Subgradient of the smallest eigenvalue at a simple eigenpair.
                let grad = DVector::from_iterator(
                    s,
                    restricted
                        .iter()
                        .map(|r| (vec.transpose() * r * &vec)[(0, 0)]),
                );
                let step = 0.5 / (1.0 + iter as f64 * 0.1);
                let candidate = (&x + grad * step).normalize();
                if evaluate(&candidate).0 > value {
                    x = candidate;
                } else {
                    break;
                }
            }
            if best.as_ref().is_none_or(|(_, v)| value > *v) {
                best = Some((x, value));
            }
        }
        best
    };

    match best {
        Some((coeffs, value)) if value > options.pd_tol => {
            Ok(Some((stresses.combine(&coeffs), value)))
        }
        _ => Ok(None),
    }
}

/// Outcome of trying to extend a first-order flex to second order.
#[derive(Debug, Clone)]
pub enum SecondOrderExtension {
    /// Minimum-norm acceleration solving JA rho'' = -rho'^T HA rho'.
    Extended { rho_second: DVector<f64> },
    /// A self-stress whose quadratic form is positive on the flex, blocking
    /// any extension.
    Blocked {
        witness: DVector<f64>,
        form_value: f64,
    },
}

pub fn extend_to_second_order(
    jacobian: &Jacobian,
    hessian: &Hessian,
    stresses: &StressBasis,
    flex: &DVector<f64>,
    options: &StabilityOptions,
) -> Result<SecondOrderExtension> {
    let residual = (&jacobian.matrix * flex).amax();
    let bound = 1e-7 * (1.0 + flex.amax());
    if residual > bound {
        return Err(Error::NotAFlex {
            residual,
            tolerance: bound,
        });
    }
    let q = hessian.quadratic_form(flex)?;
    let scale = options.pd_tol * (1.0 + flex.norm_squared());
    let mut coefficients = DVector::zeros(stresses.dimension());
    for i in 0..stresses.dimension() {
        coefficients[i] = stresses.column(i).dot(&q);
    }
    if coefficients.amax() <= scale {
        let rho_second = linalg::min_norm_solve(&jacobian.matrix, &(-&q), options.rank_tol);
        return Ok(SecondOrderExtension::Extended { rho_second });
    }
    // Sign-definite witness: weighting each basis stress by its form value
    // makes the combined quadratic form a sum of squares.
    let witness = stresses.combine(&coefficients);
    let form_value = witness.dot(&q);
    Ok(SecondOrderExtension::Blocked {
        witness,
        form_value,
    })
}

/// Solvability of the extension system by the rank test on the augmented
/// matrix; the independent second route for the extension decision.
pub fn extendable_by_rank_test(
    jacobian: &Jacobian,
    hessian: &Hessian,
    flex: &DVector<f64>,
    rank_tol: f64,
) -> Result<bool> {
    let q = hessian.quadratic_form(flex)?;
    let (rows, cols) = jacobian.matrix.shape();
    let mut augmented = DMatrix::zeros(rows, cols + 1);
    augmented
        .view_mut((0, 0), (rows, cols))
        .copy_from(&jacobian.matrix);
    augmented.set_column(cols, &(-q));
    // Rank comparison against a shared scale: the augmented column may carry a
    // different magnitude, so use an absolute cutoff from the joint spectrum.
    let sv_j = linalg::singular_values(&jacobian.matrix);
    let sv_a = linalg::singular_values(&augmented);
    let sigma_max = sv_a.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Ok(true);
    }
    let cutoff = rank_tol.sqrt() * sigma_max;
    let rank_j = sv_j.iter().filter(|&&s| s > cutoff).count();
    let rank_a = sv_a.iter().filter(|&&s| s > cutoff).count();
    Ok(rank_j == rank_a)
}

/// Max residual of the second-order flex equations for a pair (rho', rho'').
pub fn second_order_residual(
    jacobian: &Jacobian,
    hessian: &Hessian,
    flex: &DVector<f64>,
    rho_second: &DVector<f64>,
) -> Result<f64> {
    let first = (&jacobian.matrix * flex).amax();
    let second = (hessian.quadratic_form(flex)? + &jacobian.matrix * rho_second).amax();
    Ok(first.max(second))
}

#[derive(Debug, Clone)]
pub enum SecondOrderVerdict {
    Rigid,
    /// A verified nontrivial second-order flex.
    Foldable {
        flex: DVector<f64>,
        rho_second: DVector<f64>,
    },
}

#[derive(Debug, Clone)]
pub struct SecondOrderClassification {
    pub verdict: SecondOrderVerdict,
    /// False when the verdict was decided exactly (no flexes, a
    /// one-dimensional flex or stress space, or a verified witness); true when
    /// a rigid verdict merely survived the sampling sweep.
    pub sampled: bool,
}

/// Classify second-order rigidity: exact for m <= 1 or s <= 1, otherwise a
/// deterministic low-discrepancy sweep over flex coefficient directions.
pub fn second_order_classify(
    jacobian: &Jacobian,
    hessian: &Hessian,
    flexes: &FlexBasis,
    stresses: &StressBasis,
    options: &StabilityOptions,
) -> Result<SecondOrderClassification> {
    let m = flexes.dimension();
    if m == 0 {
        return Ok(SecondOrderClassification {
            verdict: SecondOrderVerdict::Rigid,
            sampled: false,
        });
    }
    let s = stresses.dimension();
    if s == 0 {
        // Independent and flexible: every flex extends.
        let flex = flexes.column(0);
        match extend_to_second_order(jacobian, hessian, stresses, &flex, options)? {
            SecondOrderExtension::Extended { rho_second } => {
                return Ok(SecondOrderClassification {
                    verdict: SecondOrderVerdict::Foldable { flex, rho_second },
                    sampled: false,
                });
            }
            SecondOrderExtension::Blocked { .. } => unreachable!("no stress can block"),
        }
    }
    if m == 1 {
        let flex = flexes.column(0);
        let classification =
            match extend_to_second_order(jacobian, hessian, stresses, &flex, options)? {
                SecondOrderExtension::Extended { rho_second } => SecondOrderClassification {
                    verdict: SecondOrderVerdict::Foldable { flex, rho_second },
                    sampled: false,
                },
                SecondOrderExtension::Blocked { .. } => SecondOrderClassification {
                    verdict: SecondOrderVerdict::Rigid,
                    sampled: false,
                },
            };
        return Ok(classification);
    }
    if s == 1 {
        // One stress: rigid iff its restricted form is definite; otherwise a
        // null direction of the form is an extendable flex.
        let g = hessian.contract_stress(&stresses.column(0))?;
        let restricted = restricted_quadratic_form(&g, flexes);
        let (eigs, vecs) = linalg::sym_eigen(&restricted);
        let (lo, hi) = (eigs[0], eigs[m - 1]);
        if lo > options.pd_tol || hi < -options.pd_tol {
            return Ok(SecondOrderClassification {
                verdict: SecondOrderVerdict::Rigid,
                sampled: false,
            });
        }
        let coeffs = null_direction_of_indefinite_form(&eigs, &vecs, options.pd_tol);
        let flex = flexes.combine(&coeffs);
        match extend_to_second_order(jacobian, hessian, stresses, &flex, options)? {
            SecondOrderExtension::Extended { rho_second } => {
                return Ok(SecondOrderClassification {
                    verdict: SecondOrderVerdict::Foldable { flex, rho_second },
                    sampled: false,
                });
            }
            SecondOrderExtension::Blocked { .. } => {
                // The form value was within tolerance of zero but the linear
                // system still failed: treat as rigid, exactly decided.
                return Ok(SecondOrderClassification {
                    verdict: SecondOrderVerdict::Rigid,
                    sampled: false,
                });
            }
        }
    }

    // General case: sweep flex coefficient directions.
    let restricted: Vec<DMatrix<f64>> = (0..s)
        .map(|i| {
            let g = hessian.contract_stress(&stresses.column(i))?;
            Ok(restricted_quadratic_form(&g, flexes))
        })
        .collect::<Result<_>>()?;
    for x in sphere_samples(m, options.samples, options.seed) {
        let all_zero = restricted
            .iter()
            .all(|r| (x.transpose() * r * &x)[(0, 0)].abs() <= options.pd_tol);
        if !all_zero {
            continue;
        }
        let flex = flexes.combine(&x);
        if let SecondOrderExtension::Extended { rho_second } =
            extend_to_second_order(jacobian, hessian, stresses, &flex, options)?
        {
            if second_order_residual(jacobian, hessian, &flex, &rho_second)? <= 1e-8 {
                return Ok(SecondOrderClassification {
                    verdict: SecondOrderVerdict::Foldable { flex, rho_second },
                    sampled: false,
                });
            }
        }
    }
    Ok(SecondOrderClassification {
        verdict: SecondOrderVerdict::Rigid,
        sampled: true,
    })
}

/// A unit vector x with x^T diag(eigs) x = 0 for an indefinite or singular
/// spectrum, mapped back through the eigenvectors.
fn null_direction_of_indefinite_form(eigs: &[f64], vecs: &DMatrix<f64>, tol: f64) -> DVector<f64> {
    let n = eigs.len();
    if let Some(k) = eigs.iter().position(|&e| e.abs() <= tol) {
        return vecs.column(k).into_owned();
    }
    // Mix the most negative and most positive directions so the form cancels.
    let (lo, hi) = (eigs[0], eigs[n - 1]);
    let theta = (lo.abs() / hi.abs()).sqrt().atan();
    let x = vecs.column(n - 1) * theta.sin() + vecs.column(0) * theta.cos();
    // theta solves sin^2 * hi + cos^2 * lo = 0.
    x.normalize()
}

/// Energy diagnostics at the configuration: the gradient JA^T w (zero exactly
/// when w is a self-stress) and the energy Hessian JA^T B JA + G(w).
pub fn energy_report(
    jacobian: &Jacobian,
    hessian: &Hessian,
    b: &StiffnessModel,
    stress: &DVector<f64>,
) -> Result<(DVector<f64>, DMatrix<f64>)> {
    b.validate()?;
    if stress.len() != jacobian.matrix.nrows() {
        return Err(Error::DimensionMismatch {
            expected: jacobian.matrix.nrows(),
            got: stress.len(),
        });
    }
    let gradient = jacobian.matrix.transpose() * stress;
    let k = jacobian.matrix.transpose() * b.full_matrix() * &jacobian.matrix
        + geometric_stiffness(hessian, stress)?;
    Ok((gradient, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::ConstraintSystem;
    use crate::derivatives::{assemble_hessian, assemble_jacobian};
    use crate::fixtures;
    use crate::model::{load_creased_paper, LoadOptions};
    use crate::statics::{first_order_flexes, self_stresses};

    struct Setup {
        jacobian: Jacobian,
        hessian: Hessian,
        flexes: FlexBasis,
        stresses: StressBasis,
        b: StiffnessModel,
    }

    fn setup(doc: &crate::model::Document) -> Setup {
        let paper = load_creased_paper(doc, &LoadOptions::default()).unwrap();
        let sys = ConstraintSystem::new(&paper).unwrap();
        let jacobian = assemble_jacobian(&sys);
        let hessian = assemble_hessian(&sys);
        let flexes = first_order_flexes(&jacobian, linalg::DEFAULT_RANK_TOL);
        let stresses = self_stresses(&jacobian, linalg::DEFAULT_RANK_TOL);
        let b = StiffnessModel::identity_for(&sys);
        Setup {
            jacobian,
            hessian,
            flexes,
            stresses,
            b,
        }
    }

    #[test]
    fn degree3_geometric_stiffness_matches_the_worked_matrix() {
        let s = setup(&fixtures::degree3_vertex());
        let sigma = 1.7;
        let mut w = DVector::zeros(3);
        w[2] = sigma;
        let g = geometric_stiffness(&s.hessian, &w).unwrap();
        let r = 3.0f64.sqrt();
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(3, 3, &[
            0.0,      r / 2.0, -r / 2.0,
            r / 2.0, -r / 4.0,  r / 4.0,
           -r / 2.0,  r / 4.0,  r / 4.0,
        ]) * sigma;
        assert!((g - expected).amax() < 1e-12);
    }

    #[test]
    fn degree3_unnormalized_form_value() {
        let s = setup(&fixtures::degree3_vertex());
        let mut w = DVector::zeros(3);
        w[2] = 1.0;
        let g = geometric_stiffness(&s.hessian, &w).unwrap();
        let flex = DVector::from_row_slice(&[1.0, 1.0, 1.0]);
        let value = (flex.transpose() * &g * &flex)[(0, 0)];
        assert!((value - 3.0f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn degree3_prestress_verdicts_follow_the_stress_sign() {
        let s = setup(&fixtures::degree3_vertex());
        let opts = StabilityOptions::default();
        let mut w = DVector::zeros(3);
        w[2] = 1.0;
        let verdict =
            is_prestress_stable(&s.jacobian, &s.hessian, &s.flexes, &w, &s.b, &opts).unwrap();
        assert!(verdict.stable);
        let t = verdict.certified_t.expect("certified scaling");
        assert!(t > 0.0);
        let negative =
            is_prestress_stable(&s.jacobian, &s.hessian, &s.flexes, &(-w), &s.b, &opts).unwrap();
        assert!(!negative.stable);
        assert!(negative.certified_t.is_none());
    }

    #[test]
    fn zero_stress_stabilizes_first_order_rigid_structures() {
        let s = setup(&fixtures::tetrahedron());
        let opts = StabilityOptions::default();
        let w = DVector::zeros(s.jacobian.matrix.nrows());
        let verdict =
            is_prestress_stable(&s.jacobian, &s.hessian, &s.flexes, &w, &s.b, &opts).unwrap();
        assert!(verdict.stable);
        assert_eq!(verdict.smallest_restricted_eigenvalue, f64::INFINITY);
    }

    #[test]
    fn non_self_stress_is_rejected() {
        let s = setup(&fixtures::degree3_vertex());
        let opts = StabilityOptions::default();
        let w = DVector::from_row_slice(&[1.0, 0.0, 0.0]);
        let err =
            is_prestress_stable(&s.jacobian, &s.hessian, &s.flexes, &w, &s.b, &opts).unwrap_err();
        assert!(matches!(err, Error::NotASelfStress { .. }));
    }

    #[test]
    fn stabilizing_search_exact_paths() {
        let opts = StabilityOptions::default();
        let d3 = setup(&fixtures::degree3_vertex());
        let (stress, eig) = find_stabilizing_stress(&d3.hessian, &d3.flexes, &d3.stresses, &opts)
            .unwrap()
            .expect("degree-3 vertex is stabilizable");
        assert!(eig > opts.pd_tol);
        assert!(stress[2].abs() > 0.9 * stress.norm());
        assert!(stress[2] > 0.0);

        let cone = setup(&fixtures::degree4_cone());
        assert!(
            find_stabilizing_stress(&cone.hessian, &cone.flexes, &cone.stresses, &opts)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn geometric_stiffness_is_linear_in_the_stress() {
        let s = setup(&fixtures::fig3_composite());
        let mut rng = SplitMix64::new(5);
        let rows = s.jacobian.matrix.nrows();
        let w1 = rng.next_unit_vector(rows);
        let w2 = rng.next_unit_vector(rows);
        let (a, b) = (0.7, -2.3);
        let combined = geometric_stiffness(&s.hessian, &(&w1 * a + &w2 * b)).unwrap();
        let separate = geometric_stiffness(&s.hessian, &w1).unwrap() * a
            + geometric_stiffness(&s.hessian, &w2).unwrap() * b;
        assert!((combined - separate).amax() < 1e-12);
    }

    #[test]
    fn cone_flex_extends_and_blocked_flexes_report_witnesses() {
        let opts = StabilityOptions::default();
        let cone = setup(&fixtures::degree4_cone());
        let flex = cone.flexes.column(0);
        match extend_to_second_order(&cone.jacobian, &cone.hessian, &cone.stresses, &flex, &opts)
            .unwrap()
        {
            SecondOrderExtension::Extended { rho_second } => {
                let res = second_order_residual(&cone.jacobian, &cone.hessian, &flex, &rho_second)
                    .unwrap();
                assert!(res <= 1e-8, "second-order residual {res:.3e}");
            }
            other => panic!("expected extension, got {other:?}"),
        }

        let d3 = setup(&fixtures::degree3_vertex());
        let flex = DVector::from_row_slice(&[1.0, 1.0, 1.0]);
        match extend_to_second_order(&d3.jacobian, &d3.hessian, &d3.stresses, &flex, &opts).unwrap()
        {
            SecondOrderExtension::Blocked {
                witness,
                form_value,
            } => {
                assert!(form_value > 0.0);
                assert!((d3.jacobian.matrix.transpose() * &witness).amax() < 1e-9);
                // The canonical witness is the unit stress on the vertex axis,
                // scaled by its form value sqrt(3)/2.
                let q = d3.hessian.quadratic_form(&flex).unwrap();
                assert!(((witness.transpose() * q)[(0, 0)] - form_value).abs() < 1e-12);
            }
            other => panic!("expected blocked, got {other:?}"),
        }
    }

    #[test]
    fn classification_is_exact_on_the_small_paths() {
        let opts = StabilityOptions::default();
        let tetra = setup(&fixtures::tetrahedron());
        let c = second_order_classify(
            &tetra.jacobian,
            &tetra.hessian,
            &tetra.flexes,
            &tetra.stresses,
            &opts,
        )
        .unwrap();
        assert!(matches!(c.verdict, SecondOrderVerdict::Rigid) && !c.sampled);

        let d3 = setup(&fixtures::degree3_vertex());
        let c = second_order_classify(&d3.jacobian, &d3.hessian, &d3.flexes, &d3.stresses, &opts)
            .unwrap();
        assert!(matches!(c.verdict, SecondOrderVerdict::Rigid) && !c.sampled);

        let cone = setup(&fixtures::degree4_cone());
        let c = second_order_classify(
            &cone.jacobian,
            &cone.hessian,
            &cone.flexes,
            &cone.stresses,
            &opts,
        )
        .unwrap();
        match c.verdict {
            SecondOrderVerdict::Foldable { flex, rho_second } => {
                assert!(!c.sampled);
                let res = second_order_residual(&cone.jacobian, &cone.hessian, &flex, &rho_second)
                    .unwrap();
                assert!(res <= 1e-8);
            }
            SecondOrderVerdict::Rigid => panic!("cone vertex must be second-order foldable"),
        }
    }

    #[test]
    fn energy_gradient_vanishes_for_self_stresses() {
        let s = setup(&fixtures::degree3_vertex());
        let opts = StabilityOptions::default();
        let mut w = DVector::zeros(3);
        w[2] = 1.0;
        let (gradient, k_unit) = energy_report(&s.jacobian, &s.hessian, &s.b, &w).unwrap();
        assert!(gradient.amax() < 1e-12);
        // At unit stress the geometric term overwhelms the material one, so
        // the full K is indefinite even though the stress stabilizes; the
        // certified scaling restores positive definiteness.
        assert!(linalg::smallest_eigenvalue(&k_unit).0 < 0.0);
        let verdict =
            is_prestress_stable(&s.jacobian, &s.hessian, &s.flexes, &w, &s.b, &opts).unwrap();
        let t = verdict.certified_t.unwrap();
        let (_, k_scaled) = energy_report(&s.jacobian, &s.hessian, &s.b, &(&w * t)).unwrap();
        assert!(linalg::smallest_eigenvalue(&k_scaled).0 > 0.0);

        // Scaling B up cannot rescue a destabilizing stress: the material term
        // vanishes exactly on the flex, so the negative curvature survives.
        let big_b = s.b.scaled(1e6);
        let (_, k_neg) = energy_report(&s.jacobian, &s.hessian, &big_b, &(-w)).unwrap();
        let flex = DVector::from_row_slice(&[1.0, 1.0, 1.0]).normalize();
        let value = (flex.transpose() * &k_neg * &flex)[(0, 0)];
        assert!(value < 0.0, "flex direction still sees negative curvature");
    }

    use crate::sampling::SplitMix64;
}
