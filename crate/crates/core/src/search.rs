//! Exhaustive search for simultaneous arithmetic progressions.
//!
//! A length-n x-progression `0, b, 2b, ..., (n-1)b` on `E(a,b)` exists
//! exactly when the diophantine system
//!
//! ```text
//! alpha_k * beta_k + 4k^2(k-1) b = 0          (k = 2..n-1)
//! k (alpha_2 + beta_2) - 2 (alpha_k + beta_k) = 2(k-2)   (k = 3..n-1)
//! ```
//!
//! has a solution with every `alpha_k`, `beta_k` and `b` nonzero; the two
//! y-values above `x = kb` are then `-b*alpha_k/2` and `-b*beta_k/2`. A
//! candidate y-progression through the anchor values `0` (at `x = b`) and
//! `-b` (at `x = 0`) pins each `beta_k` to a concrete rational, turning
//! the system linear in `(alpha_2, ..., alpha_{n-1}, b)`. Enumerating all
//! anchor placements and all assignments of the remaining terms gives
//! `n!/2` linear systems per length; solving them exactly and validating
//! the survivors is what [`run_search`] does.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, TateCurve};
use crate::linalg::{solve_linear, LinearOutcome, RationalMatrix};
use crate::progression::certify_simultaneous;
use crate::rational::Rational;

/// A candidate y-progression of length `n` containing both anchor terms.
///
/// The progression, read position by position, is `t_p = (i - p) * (b/g)`
/// for `p = 0..n-1`, so position `i` holds `0` and position `i + g` holds
/// `-b`. Ranging over `g` and `i` produces every length-n AP through the
/// two anchors: `n(n-1)/2` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionShape {
    pub n: usize,
    /// Position gap between the `0` term and the `-b` term.
    pub g: usize,
    /// Position of the `0` term.
    pub i: usize,
}

impl ProgressionShape {
    /// Coefficients `c_p` with `t_p = c_p * b`, one per position.
    pub fn term_coefficients(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|p| Rational::new(self.i as i64 - p as i64, self.g as i64))
            .collect()
    }

    /// Positions not taken by the anchors, ascending; these receive the
    /// y-values of `P_2, ..., P_{n-1}` under some bijection.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| p != self.i && p != self.i + self.g)
            .collect()
    }

    /// The beta value a point assigned to position `p` receives:
    /// `beta = -2 t_p / b = 2(p - i)/g`.
    pub fn beta_for_position(&self, p: usize) -> Rational {
        Rational::new(2 * (p as i64 - self.i as i64), self.g as i64)
    }
}

/// All shapes for length `n`, ordered by `g` ascending then `i`
/// ascending. Panics for `n < 3`.
pub fn enumerate_shapes(n: usize) -> Vec<ProgressionShape> {
    assert!(n >= 3, "progressions shorter than 3 are not searched");
    let mut shapes = Vec::with_capacity(n * (n - 1) / 2);
    for g in 1..n {
        for i in 0..n - g {
            shapes.push(ProgressionShape { n, g, i });
        }
    }
    shapes
}

/// One search case: a shape plus a bijection sending each curve index
/// `k = 2..n-1` to a free position of the shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseAssignment {
    pub shape: ProgressionShape,
    /// `positions[k - 2]` is the shape position for `P_k`'s y-value.
    pub positions: Vec<usize>,
    /// `betas[k - 2]` is the pinned `beta_k`.
    pub betas: Vec<Rational>,
}

impl CaseAssignment {
    pub fn new(shape: ProgressionShape, positions: Vec<usize>) -> Self {
        let betas = positions
            .iter()
            .map(|&p| shape.beta_for_position(p))
            .collect();
        CaseAssignment {
            shape,
            positions,
            betas,
        }
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn beta(&self, k: usize) -> &Rational {
        &self.betas[k - 2]
    }
}

/// All `n!/2` cases for length `n`: every shape times every permutation
/// of its free positions, in deterministic order.
pub fn enumerate_cases(n: usize) -> Vec<CaseAssignment> {
    let mut cases = Vec::new();
    for shape in enumerate_shapes(n) {
        let free = shape.free_positions();
        let len = free.len();
        for perm in free.into_iter().permutations(len) {
            cases.push(CaseAssignment::new(shape.clone(), perm));
        }
    }
    cases
}

/// Builds the linear system of a case: unknowns `(alpha_2, ...,
/// alpha_{n-1}, b)`, one quadric row per `k` and one hyperplane row per
/// `k >= 3` with the beta terms moved to the right-hand side. Panics if
/// any beta is zero (callers reject those cases first).
pub fn build_system(assignment: &CaseAssignment) -> (RationalMatrix, Vec<Rational>) {
    let n = assignment.n();
    assert!(
        assignment.betas.iter().all(|b| !b.is_zero()),
        "zero beta must be rejected before building the system"
    );
    let cols = n - 1; // n-2 alphas plus b
    let mut rows = Vec::new();
    let mut rhs = Vec::new();

    for k in 2..n {
        let mut row = vec![Rational::zero(); cols];
        row[k - 2] = assignment.beta(k).clone();
        row[cols - 1] = Rational::from((4 * k * k * (k - 1)) as i64);
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for k in 3..n {
        let mut row = vec![Rational::zero(); cols];
        row[0] = Rational::from(k as i64);
        row[k - 2] = Rational::from(-2);
        rows.push(row);
        // 2(k-2) - k*beta_2 + 2*beta_k
        rhs.push(
            Rational::from(2 * (k as i64 - 2)) - Rational::from(k as i64) * assignment.beta(2)
                + Rational::from(2) * assignment.beta(k),
        );
    }
    (RationalMatrix::from_rows(rows), rhs)
}

/// How a search case resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Accepted,
    Family,
    InconsistentSystem,
    DegenerateB,
    ZeroAlphaBeta,
    SingularCurve,
    ProgressionFailed,
    Duplicate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Accepted => "Accepted",
            Verdict::Family => "Family",
            Verdict::InconsistentSystem => "InconsistentSystem",
            Verdict::DegenerateB => "DegenerateB",
            Verdict::ZeroAlphaBeta => "ZeroAlphaBeta",
            Verdict::SingularCurve => "SingularCurve",
            Verdict::ProgressionFailed => "ProgressionFailed",
            Verdict::Duplicate => "Duplicate",
        };
        f.write_str(s)
    }
}

/// Outcome of one case: the verdict plus everything recovered on the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub assignment: CaseAssignment,
    pub verdict: Verdict,
    pub curve: Option<TateCurve>,
    pub points: Option<Vec<CurvePoint>>,
    /// `alphas[k - 2]` is the solved `alpha_k` (present past solving).
    pub alphas: Option<Vec<Rational>>,
    pub a_value: Option<Rational>,
    /// Free-variable count when the system had a solution family.
    pub free_variables: Option<usize>,
    pub reason: Option<String>,
}

impl CaseResult {
    fn rejected(assignment: &CaseAssignment, verdict: Verdict, reason: impl Into<String>) -> Self {
        CaseResult {
            assignment: assignment.clone(),
            verdict,
            curve: None,
            points: None,
            alphas: None,
            a_value: None,
            free_variables: None,
            reason: Some(reason.into()),
        }
    }
}

/// Runs one case end to end: solve the linear system, reject degenerate
/// solutions, build the curve, materialize the points and certify the
/// simultaneous progression. Every failure is a verdict, never an error.
pub fn solve_case(assignment: &CaseAssignment) -> CaseResult {
    if assignment.betas.iter().any(Rational::is_zero) {
        return CaseResult::rejected(assignment, Verdict::ZeroAlphaBeta, "a beta value is zero");
    }

    let (matrix, rhs) = build_system(assignment);
    let (alphas, b) = match solve_linear(&matrix, &rhs) {
        LinearOutcome::Inconsistent => {
            return CaseResult::rejected(assignment, Verdict::InconsistentSystem, "no solution");
        }
        LinearOutcome::Family { free_variables, .. } => {
            let mut res = CaseResult::rejected(
                assignment,
                Verdict::Family,
                format!("solution family with {free_variables} free variable(s)"),
            );
            res.free_variables = Some(free_variables);
            return res;
        }
        LinearOutcome::Unique(mut sol) => {
            let b = sol.pop().expect("system has at least one unknown");
            (sol, b)
        }
    };

    if b.is_zero() {
        return CaseResult::rejected(assignment, Verdict::DegenerateB, "solved to b = 0");
    }
    if alphas.iter().any(Rational::is_zero) {
        return CaseResult::rejected(assignment, Verdict::ZeroAlphaBeta, "an alpha value is zero");
    }

    let n = assignment.n();
    let a = (&alphas[0] + assignment.beta(2) - Rational::from(2)) / Rational::from(4);
    // The hyperplane rows force alpha_k + beta_k = 2ak + 2 for every k.
    for k in 2..n {
        let sum = &alphas[k - 2] + assignment.beta(k);
        let expected = Rational::from(2 * k as i64) * &a + Rational::from(2);
        assert_eq!(sum, expected, "sum relation must hold by construction");
    }

    let curve = TateCurve::new(a.clone(), b.clone());
    if curve.discriminant().is_zero() {
        let mut res =
            CaseResult::rejected(assignment, Verdict::SingularCurve, "discriminant vanishes");
        res.curve = Some(curve);
        res.a_value = Some(a);
        res.alphas = Some(alphas);
        return res;
    }

    // P_0 = (0, -b), P_1 = (b, 0), P_k = (kb, -b*beta_k/2).
    let mut points = vec![
        CurvePoint::affine(Rational::zero(), -&b),
        CurvePoint::affine(b.clone(), Rational::zero()),
    ];
    for k in 2..n {
        let x = Rational::from(k as i64) * &b;
        let y = -&b * assignment.beta(k) / Rational::from(2);
        points.push(CurvePoint::affine(x, y));
    }

    let weierstrass = curve.to_weierstrass();
    let all_on_curve = points.iter().all(|p| weierstrass.contains(p));
    let certified = all_on_curve
        && matches!(certify_simultaneous(&points), Ok(Some(_)));
    if !certified {
        let mut res = CaseResult::rejected(
            assignment,
            Verdict::ProgressionFailed,
            if all_on_curve {
                "points fail simultaneous certification"
            } else {
                "a constructed point is off the curve"
            },
        );
        res.curve = Some(curve);
        res.a_value = Some(a);
        res.alphas = Some(alphas);
        return res;
    }

    CaseResult {
        assignment: assignment.clone(),
        verdict: Verdict::Accepted,
        curve: Some(curve),
        points: Some(points),
        alphas: Some(alphas),
        a_value: Some(a),
        free_variables: None,
        reason: None,
    }
}

/// Solves every case of length `n` in enumeration order, then demotes
/// repeat curves (same exact `(a, b)`) to [`Verdict::Duplicate`]. Panics
/// outside `4..=8`, where `n!/2` stops being desk-scale.
pub fn run_search(n: usize) -> Vec<CaseResult> {
    assert!((4..=8).contains(&n), "search length must be in 4..=8");
    let mut results: Vec<CaseResult> = enumerate_cases(n).iter().map(solve_case).collect();
    let mut seen: HashSet<(Rational, Rational)> = HashSet::new();
    for result in &mut results {
        if result.verdict != Verdict::Accepted {
            continue;
        }
        let curve = result.curve.as_ref().expect("accepted case has a curve");
        if !seen.insert((curve.a.clone(), curve.b.clone())) {
            result.verdict = Verdict::Duplicate;
            result.reason = Some("same curve as an earlier accepted case".into());
        }
    }
    results
}

/// Verdict histogram, keyed in verdict order.
pub fn verdict_counts(results: &[CaseResult]) -> BTreeMap<Verdict, usize> {
    let mut counts = BTreeMap::new();
    for r in results {
        *counts.entry(r.verdict).or_insert(0) += 1;
    }
    counts
}

/// The accepted results of a run, in case order.
pub fn accepted(results: &[CaseResult]) -> Vec<&CaseResult> {
    results
        .iter()
        .filter(|r| r.verdict == Verdict::Accepted)
        .collect()
}

/// A solution of the quadric `Z^2 = (ak+1)^2 + 4k^2(k-1) b`, recovered
/// from a solved case as `z = (alpha_k - beta_k)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZWitness {
    pub k: usize,
    pub z: Rational,
}

/// Extracts the `Z_k` witnesses of an accepted case. Panics on any other
/// verdict.
pub fn z_witnesses(result: &CaseResult) -> Vec<ZWitness> {
    assert_eq!(
        result.verdict,
        Verdict::Accepted,
        "z-witnesses exist only for accepted cases"
    );
    let alphas = result.alphas.as_ref().expect("accepted case has alphas");
    (2..result.assignment.n())
        .map(|k| {
            let z = (&alphas[k - 2] - result.assignment.beta(k)) / Rational::from(2);
            ZWitness { k, z }
        })
        .collect()
}

/// Streams results as JSON lines followed by a `{"summary": ...}` object.
pub fn results_to_jsonl(results: &[CaseResult]) -> String {
    let mut out = String::new();
    for (case_index, r) in results.iter().enumerate() {
        out.push_str(&case_line(case_index, r, None));
        out.push('\n');
    }
    out.push_str(&summary_line(results));
    out.push('\n');
    out
}

pub(crate) fn case_line(case_index: usize, r: &CaseResult, beta_suffix: Option<&str>) -> String {
    let mut obj = String::from("{");
    obj.push_str(&format!("\"case_index\":{case_index}"));
    obj.push_str(&format!(",\"n\":{}", r.assignment.n()));
    obj.push_str(&format!(
        ",\"shape\":{{\"g\":{},\"i\":{}}}",
        r.assignment.shape.g, r.assignment.shape.i
    ));
    obj.push_str(",\"beta\":{");
    for (idx, beta) in r.assignment.betas.iter().enumerate() {
        if idx > 0 {
            obj.push(',');
        }
        let rendered = match beta_suffix {
            Some(suffix) => format!("{beta}{suffix}"),
            None => beta.to_string(),
        };
        obj.push_str(&format!("\"{}\":\"{}\"", idx + 2, rendered));
    }
    obj.push('}');
    obj.push_str(&format!(",\"verdict\":\"{}\"", r.verdict));
    if let Some(curve) = &r.curve {
        obj.push_str(&format!(
            ",\"curve\":{}",
            serde_json::to_string(curve).expect("curve serializes")
        ));
    }
    if let Some(points) = &r.points {
        obj.push_str(&format!(
            ",\"points\":{}",
            serde_json::to_string(points).expect("points serialize")
        ));
    }
    if let Some(reason) = &r.reason {
        obj.push_str(&format!(
            ",\"reason\":{}",
            serde_json::to_string(reason).expect("string serializes")
        ));
    }
    obj.push('}');
    obj
}

pub(crate) fn summary_line(results: &[CaseResult]) -> String {
    let counts = verdict_counts(results);
    let mut obj = String::from("{\"summary\":{");
    for (idx, (verdict, count)) in counts.iter().enumerate() {
        if idx > 0 {
            obj.push(',');
        }
        obj.push_str(&format!("\"{verdict}\":{count}"));
    }
    obj.push_str("}}");
    obj
}

/// CSV of the accepted rows, mirroring the published table layout:
/// the beta tuple, then `a`, then `b`.
pub fn accepted_to_csv(results: &[CaseResult]) -> String {
    let n = results.first().map_or(0, |r| r.assignment.n());
    let mut out = String::new();
    for k in 2..n {
        out.push_str(&format!("beta_{k},"));
    }
    out.push_str("a,b\n");
    for r in accepted(results) {
        for beta in &r.assignment.betas {
            out.push_str(&format!("{beta},"));
        }
        let curve = r.curve.as_ref().expect("accepted case has a curve");
        out.push_str(&format!("{},{}\n", curve.a, curve.b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::progression::bounds_report;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ri(n: i64) -> Rational {
        Rational::from(n)
    }

    fn case_with_betas(n: usize, betas: &[Rational]) -> CaseAssignment {
        enumerate_cases(n)
            .into_iter()
            .find(|c| c.betas == betas)
            .expect("beta tuple occurs in the enumeration")
    }

    #[test]
    fn shape_counts() {
        for n in 3..=8 {
            assert_eq!(enumerate_shapes(n).len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn four_term_shapes_match_the_known_sequences() {
        let shapes = enumerate_shapes(4);
        let coeff_lists: Vec<Vec<Rational>> =
            shapes.iter().map(|s| s.term_coefficients()).collect();
        let expected: Vec<Vec<Rational>> = vec![
            vec![ri(0), ri(-1), ri(-2), ri(-3)],
            vec![ri(1), ri(0), ri(-1), ri(-2)],
            vec![ri(2), ri(1), ri(0), ri(-1)],
            vec![ri(0), r(-1, 2), ri(-1), r(-3, 2)],
            vec![r(1, 2), ri(0), r(-1, 2), ri(-1)],
            vec![ri(0), r(-1, 3), r(-2, 3), ri(-1)],
        ];
        assert_eq!(coeff_lists, expected);
        // every shape holds 0 at position i and -1 (times b) at i + g
        for s in &shapes {
            let c = s.term_coefficients();
            assert!(c[s.i].is_zero());
            assert_eq!(c[s.i + s.g], ri(-1));
        }
    }

    #[test]
    fn case_counts_are_half_factorial() {
        let mut expected = 3usize; // 3!/2
        for n in 3..=8 {
            assert_eq!(enumerate_cases(n).len(), expected, "n = {n}");
            expected *= n + 1;
        }
        assert_eq!(enumerate_cases(4).len(), 12);
        assert_eq!(enumerate_cases(5).len(), 60);
        assert_eq!(enumerate_cases(6).len(), 360);
    }

    #[test]
    #[should_panic(expected = "shorter than 3")]
    fn tiny_lengths_rejected() {
        enumerate_shapes(2);
    }

    #[test]
    fn system_for_the_known_length4_case() {
        let case = case_with_betas(4, &[ri(1), ri(-1)]);
        let (m, rhs) = build_system(&case);
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.row(0), &[ri(1), ri(0), ri(16)]);
        assert_eq!(m.row(1), &[ri(0), ri(-1), ri(72)]);
        assert_eq!(m.row(2), &[ri(3), ri(-2), ri(0)]);
        // rhs third entry is 2 - 3 beta_2 + 2 beta_3
        assert_eq!(rhs, vec![ri(0), ri(0), ri(-3)]);
    }

    #[test]
    fn overdetermined_length5_system_shape() {
        let case = case_with_betas(5, &[ri(1), ri(-1), ri(-2)]);
        let (m, rhs) = build_system(&case);
        assert_eq!((m.rows(), m.cols()), (5, 4));
        assert_eq!(rhs.len(), 5);
        // and it is solvable
        assert!(matches!(
            solve_linear(&m, &rhs),
            LinearOutcome::Unique(_)
        ));
    }

    #[test]
    fn solve_case_accepts_the_small_curve() {
        let case = case_with_betas(4, &[ri(1), ri(-1)]);
        let result = solve_case(&case);
        assert_eq!(result.verdict, Verdict::Accepted);
        let curve = result.curve.unwrap();
        assert_eq!((curve.a, curve.b), (r(-5, 16), r(1, 64)));
    }

    #[test]
    fn solve_case_rejects_degenerate_b() {
        let case = case_with_betas(4, &[ri(-2), ri(-4)]);
        assert_eq!(solve_case(&case).verdict, Verdict::DegenerateB);
    }

    #[test]
    fn solve_case_marks_forbidden_pair_inconsistent() {
        // (1, 3): singular coefficient matrix, incompatible right-hand side
        let case = case_with_betas(4, &[ri(1), ri(3)]);
        assert_eq!(solve_case(&case).verdict, Verdict::InconsistentSystem);
    }

    #[test]
    fn solve_case_length5_known_solutions() {
        let result = solve_case(&case_with_betas(5, &[ri(-4), ri(-2), ri(-6)]));
        assert_eq!(result.verdict, Verdict::Accepted);
        let curve = result.curve.unwrap();
        assert_eq!((curve.a.clone(), curve.b.clone()), (r(-5, 3), r(-1, 6)));
        assert_eq!(
            result.points.unwrap(),
            vec![
                CurvePoint::affine(ri(0), r(1, 6)),
                CurvePoint::affine(r(-1, 6), ri(0)),
                CurvePoint::affine(r(-2, 6), r(-2, 6)),
                CurvePoint::affine(r(-3, 6), r(-1, 6)),
                CurvePoint::affine(r(-4, 6), r(-3, 6)),
            ]
        );

        let result = solve_case(&case_with_betas(5, &[ri(1), ri(-1), ri(-2)]));
        assert_eq!(result.verdict, Verdict::Accepted);
        let curve = result.curve.unwrap();
        assert_eq!((curve.a, curve.b), (r(-5, 16), r(1, 64)));
        assert_eq!(
            result.points.unwrap(),
            vec![
                CurvePoint::affine(ri(0), r(-2, 128)),
                CurvePoint::affine(r(1, 64), ri(0)),
                CurvePoint::affine(r(2, 64), r(-1, 128)),
                CurvePoint::affine(r(3, 64), r(1, 128)),
                CurvePoint::affine(r(4, 64), r(2, 128)),
            ]
        );
    }

    fn table_curves() -> Vec<(Rational, Rational)> {
        vec![
            (r(-5, 3), r(-1, 6)),
            (r(-7, 15), r(4, 15)),
            (r(-29, 48), r(7, 192)),
            (r(-7, 9), r(2, 27)),
            (r(-5, 16), r(1, 64)),
            (r(-7, 45), r(-1, 270)),
            (r(29, 96), r(-5, 128)),
            (r(1, 3), r(1, 6)),
            (r(25, 21), r(-2, 7)),
        ]
    }

    #[test]
    fn run_search_length4_reproduces_the_table() {
        let results = run_search(4);
        assert_eq!(results.len(), 12);
        let counts = verdict_counts(&results);
        assert_eq!(counts.get(&Verdict::Accepted), Some(&9));
        assert_eq!(counts.get(&Verdict::DegenerateB), Some(&1));
        assert_eq!(counts.get(&Verdict::Duplicate), Some(&1));
        assert_eq!(counts.get(&Verdict::InconsistentSystem), Some(&1));

        let mut found: Vec<(Rational, Rational)> = accepted(&results)
            .iter()
            .map(|r| {
                let c = r.curve.as_ref().unwrap();
                (c.a.clone(), c.b.clone())
            })
            .collect();
        let mut expected = table_curves();
        found.sort();
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn run_search_length5_finds_two() {
        let results = run_search(5);
        assert_eq!(results.len(), 60);
        let acc = accepted(&results);
        assert_eq!(acc.len(), 2);
    }

    #[test]
    fn run_search_length6_finds_none() {
        let results = run_search(6);
        assert_eq!(results.len(), 360);
        assert!(accepted(&results).is_empty());
    }

    #[test]
    fn accepted_cases_satisfy_all_defining_equations() {
        for n in [4usize, 5] {
            for result in accepted(&run_search(n)) {
                let alphas = result.alphas.as_ref().unwrap();
                let curve = result.curve.as_ref().unwrap();
                let a = result.a_value.as_ref().unwrap();
                let betas = &result.assignment.betas;
                for k in 2..n {
                    let alpha = &alphas[k - 2];
                    let beta = &betas[k - 2];
                    // quadric
                    let quadric = alpha * beta
                        + Rational::from((4 * k * k * (k - 1)) as i64) * &curve.b;
                    assert!(quadric.is_zero());
                    // sum relation
                    assert_eq!(
                        alpha + beta,
                        Rational::from(2 * k as i64) * a + ri(2)
                    );
                    // hyperplane
                    if k >= 3 {
                        let lhs = Rational::from(k as i64) * (&alphas[0] + &betas[0])
                            - ri(2) * (alpha + beta);
                        assert_eq!(lhs, Rational::from(2 * (k as i64 - 2)));
                    }
                }
            }
        }
    }

    #[test]
    fn swapping_alpha_beta_keeps_both_y_roots_on_the_curve() {
        for result in accepted(&run_search(4)) {
            let curve = result.curve.as_ref().unwrap().to_weierstrass();
            let tate = result.curve.as_ref().unwrap();
            let alphas = result.alphas.as_ref().unwrap();
            for k in 2..4 {
                let x = Rational::from(k as i64) * &tate.b;
                let y_beta = -&tate.b * result.assignment.beta(k) / ri(2);
                let y_alpha = -&tate.b * &alphas[k - 2] / ri(2);
                assert!(curve.contains(&CurvePoint::affine(x.clone(), y_beta)));
                assert!(curve.contains(&CurvePoint::affine(x, y_alpha)));
            }
        }
    }

    #[test]
    fn z_witness_identity_holds() {
        for n in [4usize, 5] {
            for result in accepted(&run_search(n)) {
                let curve = result.curve.as_ref().unwrap();
                let a = result.a_value.as_ref().unwrap();
                for w in z_witnesses(result) {
                    let k = Rational::from(w.k as i64);
                    let rhs = (&k * a + ri(1)).square()
                        + ri(4) * &k * &k * (&k - ri(1)) * &curve.b;
                    assert_eq!(w.z.square(), rhs);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "accepted")]
    fn z_witnesses_require_accepted() {
        let case = case_with_betas(4, &[ri(-2), ri(-4)]);
        z_witnesses(&solve_case(&case));
    }

    #[test]
    fn length5_truncations_remain_simultaneous() {
        for result in accepted(&run_search(5)) {
            let points = result.points.as_ref().unwrap();
            let first_four = &points[..4];
            assert!(certify_simultaneous(first_four).unwrap().is_some());
        }
    }

    #[test]
    fn accepted_point_sets_certify_and_bound() {
        for result in accepted(&run_search(5)) {
            let points = result.points.as_ref().unwrap();
            let report = bounds_report(points).unwrap();
            assert!(report.s_x_lower >= 5);
            assert!(report.s_y_lower >= 5);
        }
    }

    #[test]
    fn search_is_order_independent() {
        let forward: HashSet<(Rational, Rational)> = accepted(&run_search(5))
            .iter()
            .map(|r| {
                let c = r.curve.as_ref().unwrap();
                (c.a.clone(), c.b.clone())
            })
            .collect();
        let mut cases = enumerate_cases(5);
        cases.reverse();
        let reversed: HashSet<(Rational, Rational)> = cases
            .iter()
            .map(solve_case)
            .filter(|r| r.verdict == Verdict::Accepted)
            .map(|r| {
                let c = r.curve.unwrap();
                (c.a, c.b)
            })
            .collect();
        assert_eq!(forward, reversed);
    }

    #[test]
    fn jsonl_stream_shape() {
        let results = run_search(4);
        let stream = results_to_jsonl(&results);
        let lines: Vec<&str> = stream.lines().collect();
        assert_eq!(lines.len(), 13);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["case_index"], 0);
        assert_eq!(first["n"], 4);
        assert_eq!(first["shape"]["g"], 1);
        assert_eq!(first["verdict"], "Accepted");
        let last: serde_json::Value = serde_json::from_str(lines[12]).unwrap();
        assert_eq!(last["summary"]["Accepted"], 9);
        assert_eq!(last["summary"]["InconsistentSystem"], 1);
    }

    #[test]
    fn csv_of_accepted_rows() {
        let results = run_search(4);
        let csv = accepted_to_csv(&results);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("beta_2,beta_3,a,b"));
        assert_eq!(lines.clone().count(), 9);
        assert!(lines.any(|l| l == "1,-1,-5/16,1/64"));
    }
}
