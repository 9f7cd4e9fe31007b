//! Arithmetic-progression detection over exact rationals.
//!
//! A list of rationals is *certified* as an arithmetic progression when
//! consecutive differences agree exactly; progressions of length at least
//! two must have nonzero difference, so terms are pairwise distinct. For
//! point sets the interesting quantities are the longest AP hiding inside
//! the x-coordinates, the same for y, and whether the whole set forms a
//! *simultaneous* progression: x-coordinates an AP and y-coordinates an
//! AP, not necessarily in the same order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::curve::CurvePoint;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProgressionError {
    /// The operation needs at least one value or point.
    EmptyInput,
    /// A point-set operation received the point at infinity.
    NonAffinePoint,
}

impl fmt::Display for ProgressionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProgressionError::EmptyInput => write!(f, "empty input"),
            ProgressionError::NonAffinePoint => write!(f, "point at infinity has no coordinates"),
        }
    }
}

impl std::error::Error for ProgressionError {}

/// Witness that a list of rationals is an arithmetic progression.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct APCertificate {
    pub first: Rational,
    pub difference: Rational,
    pub length: usize,
    pub members: Vec<Rational>,
}

impl fmt::Debug for APCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AP(first={}, diff={}, len={})",
            self.first, self.difference, self.length
        )
    }
}

/// Lower bounds on the longest x- and y-progressions in a point set,
/// together with the witnessing APs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub s_x_lower: usize,
    pub s_y_lower: usize,
    pub x_witness: APCertificate,
    pub y_witness: APCertificate,
}

/// Witness that a point set forms a simultaneous arithmetic progression.
///
/// `points` are held sorted by ascending x; `x_cert` covers their
/// x-coordinates in that order, `y_cert` covers the y-coordinates sorted
/// ascending, and `y_order[j]` is the rank in `y_cert.members` of the
/// j-th point's y-coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimultaneousCertificate {
    pub points: Vec<CurvePoint>,
    pub x_cert: APCertificate,
    pub y_cert: APCertificate,
    pub y_order: Vec<usize>,
}

/// Certifies `values` (in the order given) as an AP.
///
/// The empty list is not a progression; a singleton is, with difference 0
/// by convention; longer lists must have equal, nonzero consecutive
/// differences.
pub fn certify_ap(values: &[Rational]) -> Option<APCertificate> {
    let first = values.first()?;
    if values.len() == 1 {
        return Some(APCertificate {
            first: first.clone(),
            difference: Rational::zero(),
            length: 1,
            members: values.to_vec(),
        });
    }
    let difference = &values[1] - first;
    if difference.is_zero() {
        return None;
    }
    for w in values.windows(2) {
        if &w[1] - &w[0] != difference {
            return None;
        }
    }
    Some(APCertificate {
        first: first.clone(),
        difference,
        length: values.len(),
        members: values.to_vec(),
    })
}

/// Finds a maximum-cardinality subset of `values` forming an AP.
///
/// Input is deduplicated and sorted; the search is the classical dynamic
/// program over pairs (O(n^2) states): an AP ending in `(v[j], v[i])`
/// extends the one ending in `(2*v[j] - v[i], v[j])` when that value is
/// present. Ties between equally long progressions are broken by smallest
/// difference magnitude, then smallest first term, so the witness is
/// deterministic.
///
/// The membership probe runs on residues modulo the Mersenne prime
/// 2^61 - 1 first; only residue hits are confirmed with exact
/// arithmetic. Generated curve points carry coordinates hundreds of
/// digits long, and reducing an exact difference per state is what would
/// otherwise dominate the whole exploration. Every reported progression
/// is still certified exactly.
pub fn longest_ap_subset(values: &[Rational]) -> Result<APCertificate, ProgressionError> {
    let dedup: BTreeSet<&Rational> = values.iter().collect();
    if dedup.is_empty() {
        return Err(ProgressionError::EmptyInput);
    }
    let v: Vec<Rational> = dedup.into_iter().cloned().collect();
    let n = v.len();
    if n == 1 {
        return Ok(certify_ap(&v).expect("singleton certifies"));
    }

    let (best_len, best_key) = match residues(&v) {
        Some(res) => llap_scan(&v, |j, i| probe_residue(&v, &res, j, i)),
        // Some denominator is divisible by the filter prime (never seen
        // in practice): fall back to exact probing throughout.
        None => {
            let index: HashMap<&Rational, usize> =
                v.iter().enumerate().map(|(i, x)| (x, i)).collect();
            llap_scan(&v, |j, i| {
                let target = Rational::from(2) * &v[j] - &v[i];
                index.get(&target).copied()
            })
        }
    };

    let (diff, first) = best_key;
    let members: Vec<Rational> = (0..best_len as i64)
        .map(|k| &first + &(Rational::from(k) * &diff))
        .collect();
    debug_assert!(members.iter().all(|m| v.binary_search(m).is_ok()));
    Ok(APCertificate {
        first,
        difference: diff,
        length: best_len as usize,
        members,
    })
}

/// The pair dynamic program. `probe(j, i)` returns the index `k < j`
/// with `v[k] = 2 v[j] - v[i]` when that value is present.
fn llap_scan(
    v: &[Rational],
    probe: impl Fn(usize, usize) -> Option<usize>,
) -> (u32, (Rational, Rational)) {
    let n = v.len();
    let mut dp = vec![2u32; n * n];
    let mut best_len = 2u32;
    // states achieving the current best length; re-ranked exactly at the end
    let mut best_states: Vec<(usize, usize)> = Vec::new();

    for i in 1..n {
        for j in 0..i {
            let len = match probe(j, i) {
                Some(k) if k < j => dp[k * n + j] + 1,
                _ => 2,
            };
            dp[j * n + i] = len;
            if len > best_len {
                best_len = len;
                best_states.clear();
            }
            if len == best_len && best_len > 2 {
                best_states.push((j, i));
            }
        }
    }

    let key_of = |j: usize, i: usize| {
        let diff = &v[i] - &v[j];
        let first = &v[i] - &(Rational::from((best_len - 1) as i64) * &diff);
        (diff, first)
    };

    if best_len == 2 {
        // No three-term AP: the smallest difference is between sorted
        // neighbours, and the earliest such neighbour has the smallest
        // first term.
        let mut key = key_of(0, 1);
        for cand in 1..n - 1 {
            let diff = &v[cand + 1] - &v[cand];
            if diff < key.0 {
                key = key_of(cand, cand + 1);
            }
        }
        return (2, key);
    }

    let best_key = best_states
        .into_iter()
        .map(|(j, i)| key_of(j, i))
        .min()
        .expect("at least one best state");
    (best_len, best_key)
}

/// Filter prime for the membership probe.
const FILTER_PRIME: u64 = (1 << 61) - 1;

struct ResidueTable {
    /// Residue of each value, aligned with the sorted value slice.
    of_value: Vec<u64>,
    /// Residue -> indices holding it (collisions kept together).
    index: HashMap<u64, Vec<usize>>,
}

/// Residues `numer * denom^{-1} mod 2^61 - 1`; `None` when some
/// denominator is divisible by the prime.
fn residues(v: &[Rational]) -> Option<ResidueTable> {
    let p = BigInt::from(FILTER_PRIME);
    let mut of_value = Vec::with_capacity(v.len());
    for x in v {
        let d = to_residue(&(x.denom() % &p));
        if d == 0 {
            return None;
        }
        let n = to_residue(&(x.numer() % &p));
        of_value.push(mul_mod(n, inv_mod(d)));
    }
    let mut index: HashMap<u64, Vec<usize>> = HashMap::with_capacity(v.len());
    for (i, &r) in of_value.iter().enumerate() {
        index.entry(r).or_default().push(i);
    }
    Some(ResidueTable { of_value, index })
}

fn to_residue(rem: &BigInt) -> u64 {
    let raw = rem.to_i64().expect("remainder mod a 61-bit prime fits i64");
    raw.rem_euclid(FILTER_PRIME as i64) as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FILTER_PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a;
    let mut exp = FILTER_PRIME - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Looks for `k < j` with `v[k] = 2 v[j] - v[i]`: residue match first,
/// exact confirmation second.
fn probe_residue(v: &[Rational], res: &ResidueTable, j: usize, i: usize) -> Option<usize> {
    let target = (2 * res.of_value[j] as u128 + (FILTER_PRIME - res.of_value[i]) as u128)
        % FILTER_PRIME as u128;
    let hits = res.index.get(&(target as u64))?;
    for &k in hits {
        if k >= j {
            break;
        }
        // exact: v[j] - v[k] == v[i] - v[j]
        if &v[j] - &v[k] == &v[i] - &v[j] {
            return Some(k);
        }
    }
    None
}

fn affine_coords(points: &[CurvePoint]) -> Result<Vec<(&Rational, &Rational)>, ProgressionError> {
    points
        .iter()
        .map(|p| match p {
            CurvePoint::Affine { x, y } => Ok((x, y)),
            CurvePoint::Infinity => Err(ProgressionError::NonAffinePoint),
        })
        .collect()
}

/// Certifies a point set as a simultaneous arithmetic progression: the
/// x-coordinates sorted ascending form an AP with distinct terms, and so
/// do the y-coordinates (in their own order). Returns `None` when either
/// progression fails, including any repeated coordinate value.
pub fn certify_simultaneous(
    points: &[CurvePoint],
) -> Result<Option<SimultaneousCertificate>, ProgressionError> {
    let coords = affine_coords(points)?;
    if coords.is_empty() {
        return Err(ProgressionError::EmptyInput);
    }

    let mut by_x: Vec<(&Rational, &Rational)> = coords.clone();
    by_x.sort_by(|a, b| a.0.cmp(b.0).then_with(|| a.1.cmp(b.1)));

    let xs: Vec<Rational> = by_x.iter().map(|(x, _)| (*x).clone()).collect();
    let x_cert = match certify_ap(&xs) {
        Some(c) => c,
        None => return Ok(None),
    };

    let mut ys: Vec<Rational> = by_x.iter().map(|(_, y)| (*y).clone()).collect();
    ys.sort();
    let y_cert = match certify_ap(&ys) {
        Some(c) => c,
        None => return Ok(None),
    };

    let y_order: Vec<usize> = by_x
        .iter()
        .map(|(_, y)| ys.binary_search(y).expect("y present in sorted list"))
        .collect();
    let points = by_x
        .iter()
        .map(|(x, y)| CurvePoint::affine((*x).clone(), (*y).clone()))
        .collect();
    Ok(Some(SimultaneousCertificate {
        points,
        x_cert,
        y_cert,
        y_order,
    }))
}

/// Longest-AP bounds for the deduplicated x- and y-coordinate sets of a
/// point collection.
pub fn bounds_report(points: &[CurvePoint]) -> Result<BoundsReport, ProgressionError> {
    let coords = affine_coords(points)?;
    if coords.is_empty() {
        return Err(ProgressionError::EmptyInput);
    }
    let xs: Vec<Rational> = coords.iter().map(|(x, _)| (*x).clone()).collect();
    let ys: Vec<Rational> = coords.iter().map(|(_, y)| (*y).clone()).collect();
    let x_witness = longest_ap_subset(&xs)?;
    let y_witness = longest_ap_subset(&ys)?;
    Ok(BoundsReport {
        s_x_lower: x_witness.length,
        s_y_lower: y_witness.length,
        x_witness,
        y_witness,
    })
}

/// Exhaustively decides whether some `len`-element subset of `points`
/// forms a simultaneous AP. Exponential in `points.len()`; intended for
/// the small candidate sets the explorer narrows down to.
pub fn exists_simultaneous_subset(
    points: &[CurvePoint],
    len: usize,
) -> Result<bool, ProgressionError> {
    let coords = affine_coords(points)?;
    if len == 0 || len > coords.len() {
        return Ok(false);
    }
    let mut chosen = vec![0usize; len];
    Ok(search_subsets(&coords, &mut chosen, 0, 0))
}

fn search_subsets(
    coords: &[(&Rational, &Rational)],
    chosen: &mut [usize],
    depth: usize,
    start: usize,
) -> bool {
    if depth == chosen.len() {
        let xs: Vec<&Rational> = chosen.iter().map(|&i| coords[i].0).collect();
        let ys: Vec<&Rational> = chosen.iter().map(|&i| coords[i].1).collect();
        return is_ap_as_multiset(&xs) && is_ap_as_multiset(&ys);
    }
    for i in start..=coords.len() - (chosen.len() - depth) {
        chosen[depth] = i;
        if search_subsets(coords, chosen, depth + 1, i + 1) {
            return true;
        }
    }
    false
}

fn is_ap_as_multiset(values: &[&Rational]) -> bool {
    let mut sorted: Vec<&Rational> = values.to_vec();
    sorted.sort();
    if sorted.len() == 1 {
        return true;
    }
    let diff = sorted[1] - sorted[0];
    if diff.is_zero() {
        return false;
    }
    sorted.windows(2).all(|w| w[1] - w[0] == diff)
}
