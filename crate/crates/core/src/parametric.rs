//! The parametric length-5 sweep with anchors `0` and `-b(a+1)`.
//!
//! Instead of anchoring the y-progression at the values `0` and `-b`,
//! this variant anchors it at `0` (taking `P_0 = (0,0)`) and at
//! `-b(a+1)`, the second branch above `x = b` (taking
//! `P_1 = (b, -b(a+1))`). Each pinned `beta_k` is then an affine
//! polynomial `c_k (a+1)` rather than a constant, so every case yields a
//! 5x5 *augmented* matrix with entries affine in the parameter `a`. The
//! system can only be consistent where the augmented determinant
//! vanishes, so the determinant polynomial is computed exactly, its
//! rational roots are extracted, and each root is pushed through the
//! usual validation plus one extra gate: the solved values must satisfy
//! `a = (alpha_i + beta_i - 2)/(2i)` for every `i`, since the hyperplane
//! rows only encode differences of those relations.
//!
//! All sixty cases die somewhere along that pipeline; the sweep exists to
//! demonstrate it and to expose where each one fails.

use crate::curve::{CurvePoint, TateCurve};
use crate::linalg::{solve_linear, LinearOutcome, RationalMatrix};
use crate::poly::{det_poly, rational_roots, RationalPoly};
use crate::progression::certify_simultaneous;
use crate::rational::Rational;
use crate::search::{enumerate_cases, CaseAssignment, CaseResult, Verdict};

/// Why a candidate root of the determinant polynomial was rejected (or,
/// hypothetically, accepted). Ordered by how deep into the validation
/// pipeline the root survived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootOutcome {
    /// Some `beta_k` vanishes at the root (always the case at `a = -1`).
    ZeroBeta,
    /// The specialized system has no solution.
    Inconsistent,
    /// The specialized system is rank-deficient.
    UnderDetermined { free_variables: usize },
    /// Solvable, but `(alpha_i + beta_i - 2)/(2i)` differs from the root.
    ConsistencyMismatch { derived: Rational },
    /// Consistent but `b = 0`.
    ZeroB,
    /// Consistent but some `alpha_k = 0`.
    ZeroAlpha,
    /// The curve would be singular.
    Singular,
    /// Points fail membership or simultaneous certification.
    CertificationFailed,
    /// Full acceptance (never reached by any of the sixty cases).
    Accepted {
        curve: TateCurve,
        points: Vec<CurvePoint>,
    },
}

impl RootOutcome {
    fn depth(&self) -> u8 {
        match self {
            RootOutcome::ZeroBeta => 1,
            RootOutcome::Inconsistent => 2,
            RootOutcome::UnderDetermined { .. } => 3,
            RootOutcome::ConsistencyMismatch { .. } => 4,
            RootOutcome::ZeroB => 5,
            RootOutcome::ZeroAlpha => 6,
            RootOutcome::Singular => 7,
            RootOutcome::CertificationFailed => 8,
            RootOutcome::Accepted { .. } => 9,
        }
    }

    fn verdict(&self) -> Verdict {
        match self {
            RootOutcome::ZeroBeta | RootOutcome::ZeroAlpha => Verdict::ZeroAlphaBeta,
            RootOutcome::Inconsistent => Verdict::InconsistentSystem,
            RootOutcome::UnderDetermined { .. } => Verdict::Family,
            RootOutcome::ConsistencyMismatch { .. } | RootOutcome::CertificationFailed => {
                Verdict::ProgressionFailed
            }
            RootOutcome::ZeroB => Verdict::DegenerateB,
            RootOutcome::Singular => Verdict::SingularCurve,
            RootOutcome::Accepted { .. } => Verdict::Accepted,
        }
    }

    fn describe(&self) -> String {
        match self {
            RootOutcome::ZeroBeta => "a beta value vanishes".into(),
            RootOutcome::Inconsistent => "specialized system inconsistent".into(),
            RootOutcome::UnderDetermined { free_variables } => {
                format!("specialized system has {free_variables} free variable(s)")
            }
            RootOutcome::ConsistencyMismatch { derived } => {
                format!("consistency condition fails: (alpha_2+beta_2-2)/4 = {derived}")
            }
            RootOutcome::ZeroB => "solved to b = 0".into(),
            RootOutcome::ZeroAlpha => "an alpha value vanishes".into(),
            RootOutcome::Singular => "curve would be singular".into(),
            RootOutcome::CertificationFailed => "certification fails".into(),
            RootOutcome::Accepted { .. } => "accepted".into(),
        }
    }
}

/// Everything learned about one parametric case.
#[derive(Clone, Debug)]
pub struct ParametricAnalysis {
    pub assignment: CaseAssignment,
    /// Determinant of the 5x5 augmented matrix, as a polynomial in `a`.
    pub det: RationalPoly,
    /// Rational roots of `det` with multiplicities, ascending.
    pub roots: Vec<(Rational, usize)>,
    /// Outcome of the pipeline at each root, in root order.
    pub root_outcomes: Vec<(Rational, RootOutcome)>,
    pub verdict: Verdict,
    pub reason: String,
}

/// The sixty parametric cases: the same shape/assignment enumeration as
/// the plain length-5 search; `betas` hold the coefficients `c_k` with
/// `beta_k = c_k (a+1)`.
pub fn parametric_cases() -> Vec<CaseAssignment> {
    enumerate_cases(5)
}

/// The augmented matrix of a parametric case: rows are the three
/// quadrics then the two hyperplanes, columns `(alpha_2, alpha_3,
/// alpha_4, b, rhs)`, entries affine in `a`.
pub fn parametric_matrix(assignment: &CaseAssignment) -> Vec<Vec<RationalPoly>> {
    let n = assignment.n();
    assert_eq!(n, 5, "the parametric sweep is a length-5 construction");
    let zero = RationalPoly::zero();
    let beta_poly = |k: usize| {
        let c = assignment.beta(k);
        RationalPoly::affine(c.clone(), c.clone()) // c + c*a = c(a+1)
    };

    let mut rows = Vec::with_capacity(5);
    for k in 2..n {
        let mut row = vec![zero.clone(); 5];
        row[k - 2] = beta_poly(k);
        row[3] = RationalPoly::constant(Rational::from((4 * k * k * (k - 1)) as i64));
        rows.push(row);
    }
    for k in 3..n {
        let mut row = vec![zero.clone(); 5];
        row[0] = RationalPoly::constant(Rational::from(k as i64));
        row[k - 2] = RationalPoly::constant(Rational::from(-2));
        // rhs = 2(k-2) - k*beta_2 + 2*beta_k, all affine in a
        let constant = RationalPoly::constant(Rational::from(2 * (k as i64 - 2)));
        let minus_k_beta2 =
            &beta_poly(2) * &RationalPoly::constant(Rational::from(-(k as i64)));
        let two_beta_k = &beta_poly(k) * &RationalPoly::constant(Rational::from(2));
        row[4] = &(&constant + &minus_k_beta2) + &two_beta_k;
        rows.push(row);
    }
    rows
}

/// Runs the full pipeline on one parametric case.
pub fn analyze_parametric_case(assignment: &CaseAssignment) -> ParametricAnalysis {
    let matrix = parametric_matrix(assignment);
    let det = det_poly(&matrix);

    if det.is_zero() {
        return ParametricAnalysis {
            assignment: assignment.clone(),
            det,
            roots: Vec::new(),
            root_outcomes: Vec::new(),
            verdict: Verdict::Family,
            reason: "augmented determinant vanishes identically".into(),
        };
    }

    let roots = rational_roots(&det);
    let mut outcomes = Vec::new();
    for (root, _multiplicity) in &roots {
        outcomes.push((root.clone(), outcome_at_root(assignment, &matrix, root)));
    }

    let (verdict, reason) = match outcomes
        .iter()
        .max_by_key(|(_, o)| o.depth())
    {
        None => (
            Verdict::InconsistentSystem,
            "determinant has no rational root".to_string(),
        ),
        Some((root, outcome)) => (
            outcome.verdict(),
            format!("deepest root a = {root}: {}", outcome.describe()),
        ),
    };

    ParametricAnalysis {
        assignment: assignment.clone(),
        det,
        roots,
        root_outcomes: outcomes,
        verdict,
        reason,
    }
}

fn outcome_at_root(
    assignment: &CaseAssignment,
    matrix: &[Vec<RationalPoly>],
    root: &Rational,
) -> RootOutcome {
    let betas_at: Vec<Rational> = (2..5)
        .map(|k| {
            let c = assignment.beta(k);
            c * &(root + Rational::one())
        })
        .collect();
    if betas_at.iter().any(Rational::is_zero) {
        return RootOutcome::ZeroBeta;
    }

    let specialized = RationalMatrix::from_rows(
        matrix
            .iter()
            .map(|row| row[..4].iter().map(|p| p.eval(root)).collect())
            .collect(),
    );
    let rhs: Vec<Rational> = matrix.iter().map(|row| row[4].eval(root)).collect();
    let (alphas, b) = match solve_linear(&specialized, &rhs) {
        LinearOutcome::Inconsistent => return RootOutcome::Inconsistent,
        LinearOutcome::Family { free_variables, .. } => {
            return RootOutcome::UnderDetermined { free_variables }
        }
        LinearOutcome::Unique(mut sol) => {
            let b = sol.pop().expect("four unknowns");
            (sol, b)
        }
    };

    // a = (alpha_i + beta_i - 2)/(2i) must reproduce the root for every i;
    // the hyperplane rows make the i = 2 check imply the rest, but all
    // three are verified.
    for (idx, k) in (2..5).enumerate() {
        let derived =
            (&alphas[idx] + &betas_at[idx] - Rational::from(2)) / Rational::from(2 * k as i64);
        if derived != *root {
            return RootOutcome::ConsistencyMismatch { derived };
        }
    }

    if b.is_zero() {
        return RootOutcome::ZeroB;
    }
    if alphas.iter().any(Rational::is_zero) {
        return RootOutcome::ZeroAlpha;
    }

    let curve = TateCurve::new(root.clone(), b.clone());
    if curve.discriminant().is_zero() {
        return RootOutcome::Singular;
    }

    // P_0 = (0, 0), P_1 = (b, -b(a+1)), P_k = (kb, -b*beta_k/2).
    let mut points = vec![
        CurvePoint::affine(Rational::zero(), Rational::zero()),
        curve.second_branch_at_b(),
    ];
    for (idx, k) in (2..5).enumerate() {
        let x = Rational::from(k as i64) * &b;
        let y = -&b * &betas_at[idx] / Rational::from(2);
        points.push(CurvePoint::affine(x, y));
    }
    let w = curve.to_weierstrass();
    if !points.iter().all(|p| w.contains(p))
        || !matches!(certify_simultaneous(&points), Ok(Some(_)))
    {
        return RootOutcome::CertificationFailed;
    }
    RootOutcome::Accepted { curve, points }
}

/// Analyzes all sixty parametric cases and folds each analysis into a
/// [`CaseResult`], enumeration order preserved.
pub fn run_parametric_search() -> Vec<CaseResult> {
    parametric_cases()
        .iter()
        .map(|assignment| {
            let analysis = analyze_parametric_case(assignment);
            let (curve, points) = analysis
                .root_outcomes
                .iter()
                .find_map(|(_, o)| match o {
                    RootOutcome::Accepted { curve, points } => {
                        Some((curve.clone(), points.clone()))
                    }
                    _ => None,
                })
                .map_or((None, None), |(c, p)| (Some(c), Some(p)));
            CaseResult {
                assignment: assignment.clone(),
                verdict: analysis.verdict,
                curve,
                points,
                alphas: None,
                a_value: None,
                free_variables: None,
                reason: Some(analysis.reason),
            }
        })
        .collect()
}

/// JSONL for parametric results; beta values render as `c*(a+1)` to make
/// the parameter dependence explicit.
pub fn parametric_results_to_jsonl(results: &[CaseResult]) -> String {
    let mut out = String::new();
    for (case_index, r) in results.iter().enumerate() {
        out.push_str(&crate::search::case_line(case_index, r, Some("*(a+1)")));
        out.push('\n');
    }
    out.push_str(&crate::search::summary_line(results));
    out.push('\n');
    out
}
