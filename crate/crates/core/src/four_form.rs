//! The recursion-generated sequence `F_m`, its coordinates over
//! `(F_0, F_1, F_2, F_3)`, and the antisymmetric four-form
//! `(F_{m0}, F_{m1}, F_{m2}, F_{m3})` normalized by `(F_0, F_1, F_2, F_3) = 1`.
//!
//! Every recursion coefficient is a rational multiple of `z^-2` or a
//! rational constant, so coordinates are polynomials in `t = z^-2`.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_algebra::{rat, render_rat, Degree, Matrix4, PolyQ, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourFormError {
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("beta is undefined when j+k+l+m = 0")]
    UndefinedBeta,
    #[error("certificate violation at {tuple:?}: {detail}")]
    CertificateViolation { tuple: [u32; 4], detail: String },
}

/// Strictly increasing indices `m0 < m1 < m2 < m3`, equivalently the gaps
/// `(j, k, l, m)` with `m0 = j`, `m1 = 1+j+k`, `m2 = 2+j+k+l`,
/// `m3 = 3+j+k+l+m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TupleParams {
    indices: [u32; 4],
}

impl TupleParams {
    pub fn new(indices: [u32; 4]) -> Result<Self, FourFormError> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Ok(TupleParams { indices })
        } else {
            Err(FourFormError::InvalidTuple(format!(
                "{indices:?} is not strictly increasing"
            )))
        }
    }

    pub fn from_jklm(j: u32, k: u32, l: u32, m: u32) -> Self {
        let m0 = j;
        let m1 = m0 + 1 + k;
        let m2 = m1 + 1 + l;
        let m3 = m2 + 1 + m;
        TupleParams {
            indices: [m0, m1, m2, m3],
        }
    }

    pub fn indices(&self) -> [u32; 4] {
        self.indices
    }

    pub fn jklm(&self) -> [u32; 4] {
        let [a, b, c, d] = self.indices;
        [a, b - a - 1, c - b - 1, d - c - 1]
    }

    /// All tuples with `m3 <= max`, in lexicographic order.
    pub fn all_up_to(max: u32) -> Vec<TupleParams> {
        let mut out = Vec::new();
        for a in 0..=max {
            for b in a + 1..=max {
                for c in b + 1..=max {
                    for d in c + 1..=max {
                        out.push(TupleParams {
                            indices: [a, b, c, d],
                        });
                    }
                }
            }
        }
        out
    }
}

/// Coordinates of `F_m` over `(F_0, F_1, F_2, F_3)`, polynomials in `t`.
pub type CoordVec = [PolyQ; 4];

/// `alpha`, `beta`, `gamma` for a gap tuple; `alpha` multiplies `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecCoeffs {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

pub fn rec_coeffs(j: u32, k: u32, l: u32, m: u32) -> Result<RecCoeffs, FourFormError> {
    let s = (j + k + l + m) as i64;
    if s == 0 {
        return Err(FourFormError::UndefinedBeta);
    }
    let beta = rat(2 + s, s);
    Ok(RecCoeffs {
        alpha: rat(4 * (1 + s) * (2 + s), 1),
        gamma: &beta + Rat::one(),
        beta,
    })
}

fn unit(i: usize) -> CoordVec {
    std::array::from_fn(|k| if k == i { PolyQ::one() } else { PolyQ::zero() })
}

fn step(f: &[CoordVec], n: usize) -> CoordVec {
    let ni = n as i64;
    let alpha_t = PolyQ::monomial(rat(4 * (ni + 2) * (ni + 3), 1), 1);
    let beta = rat(ni + 3, ni + 1);
    let gamma = &beta + Rat::one();
    std::array::from_fn(|c| {
        &alpha_t * &(&f[n + 1][c] - &f[n + 3][c]) - f[n][c].scale(&beta) - f[n + 2][c].scale(&gamma)
    })
}

fn table() -> &'static RwLock<Vec<CoordVec>> {
    static TABLE: OnceLock<RwLock<Vec<CoordVec>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new((0..4).map(unit).collect()))
}

/// Makes sure `coords_f(0..=max)` are memoized.
pub fn prepare(max: u32) {
    let need = max as usize + 1;
    if table().read().expect("coordinate table").len() >= need {
        return;
    }
    let mut t = table().write().expect("coordinate table");
    while t.len() < need {
        let n = t.len() - 4;
        let next = step(&t, n);
        t.push(next);
    }
}

/// Coordinates of `F_m`, memoized for the life of the process.
pub fn coords_f(m: u32) -> CoordVec {
    prepare(m);
    table().read().expect("coordinate table")[m as usize].clone()
}

/// Rows are the coordinates of `F_{m0}..F_{m3}`. Entries are already
/// polynomials in `t`, so no common denominator needs clearing.
pub fn transfer_matrix(tuple: &TupleParams) -> Matrix4<PolyQ> {
    prepare(tuple.indices[3]);
    let t = table().read().expect("coordinate table");
    Matrix4::from_rows(tuple.indices.map(|i| t[i as usize].clone()))
}

/// Sorts the indices, returning the permutation sign; `None` on a repeat.
fn sort_with_sign(mut idx: [u32; 4]) -> Option<([u32; 4], bool)> {
    let mut odd = false;
    for i in 0..4 {
        for j in 0..3 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    idx.windows(2).all(|w| w[0] < w[1]).then_some((idx, odd))
}

/// The antisymmetric four-form on `(F_{i0}, F_{i1}, F_{i2}, F_{i3})` in
/// any order; a repeated index gives zero.
pub fn four_form(indices: [u32; 4]) -> PolyQ {
    let Some((sorted, odd)) = sort_with_sign(indices) else {
        return PolyQ::zero();
    };
    let det = transfer_matrix(&TupleParams { indices: sorted })
        .det()
        .expect("exact division in Bareiss elimination");
    if odd {
        -det
    } else {
        det
    }
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render_rat(r))
}

/// Leading term `(-1)^m B t^d` of the four-form and the degree of the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingCertificate {
    pub tuple: TupleParams,
    pub jklm: [u32; 4],
    pub sign: i8,
    pub lead_degree: usize,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rat,
    /// Degree of the form minus its leading term; `None` if that is zero.
    pub subleading_degree: Option<usize>,
    /// Sub-leading degree below `lead_degree`.
    pub weak_bound: bool,
    /// Sub-leading degree below `lead_degree - 1`.
    pub strong_bound: bool,
}

pub fn expected_lead_degree(jklm: [u32; 4]) -> usize {
    let [_, k, l, m] = jklm;
    (k + 2 * (l / 2) + m) as usize
}

pub fn leading_certificate(tuple: &TupleParams) -> Result<LeadingCertificate, FourFormError> {
    let form = four_form(tuple.indices);
    let jklm = tuple.jklm();
    let violation = |detail: String| FourFormError::CertificateViolation {
        tuple: tuple.indices,
        detail,
    };
    let Degree::Finite(deg) = form.degree() else {
        return Err(violation("four-form vanishes".into()));
    };
    let want_deg = expected_lead_degree(jklm);
    if deg != want_deg {
        return Err(violation(format!("degree {deg}, expected {want_deg}")));
    }
    let lead = form.leading_coeff().expect("nonzero").clone();
    let want_sign: i8 = if jklm[3].is_multiple_of(2) { 1 } else { -1 };
    let sign: i8 = if lead.is_positive() { 1 } else { -1 };
    if sign != want_sign {
        return Err(violation(format!(
            "leading coefficient {} has the wrong sign",
            render_rat(&lead)
        )));
    }
    let rest = &form - &PolyQ::monomial(lead.clone(), deg);
    let subleading_degree = rest.degree().finite();
    let below = |bound: usize| subleading_degree.is_none_or(|d| d < bound);
    Ok(LeadingCertificate {
        tuple: *tuple,
        jklm,
        sign,
        lead_degree: deg,
        b: lead.abs(),
        subleading_degree,
        weak_bound: below(deg),
        strong_bound: subleading_degree.is_none() || (deg >= 1 && below(deg - 1)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimScanReport {
    pub max: u32,
    pub tuples: usize,
    pub certified: usize,
    pub max_coeff_bits: u64,
    pub weak_bound_holds: usize,
    pub strong_bound_holds: usize,
    pub strong_bound_exceptions: Vec<[u32; 4]>,
    /// `"lead:sub"` -> count; `sub` is `-` when the remainder is zero.
    pub degree_profile: BTreeMap<String, usize>,
    pub certificates: Vec<LeadingCertificate>,
}

/// Certifies every tuple with `m3 <= max`. The coordinate table is filled
/// first, then tuples are checked in parallel; output order is fixed.
pub fn claim_scan(max: u32) -> Result<ClaimScanReport, FourFormError> {
    if max < 3 {
        return Err(FourFormError::InvalidTuple(format!("max must be at least 3, got {max}")));
    }
    prepare(max);
    let tuples = TupleParams::all_up_to(max);
    let results: Vec<(LeadingCertificate, u64)> = tuples
        .par_iter()
        .map(|t| {
            let bits = four_form(t.indices).max_coeff_bits();
            leading_certificate(t).map(|c| (c, bits))
        })
        .collect::<Result<_, _>>()?;
    let mut profile = BTreeMap::new();
    for (c, _) in &results {
        let sub = c.subleading_degree.map_or("-".to_string(), |d| d.to_string());
        *profile.entry(format!("{}:{}", c.lead_degree, sub)).or_insert(0) += 1;
    }
    let certificates: Vec<LeadingCertificate> = results.iter().map(|(c, _)| c.clone()).collect();
    Ok(ClaimScanReport {
        max,
        tuples: tuples.len(),
        certified: certificates.len(),
        max_coeff_bits: results.iter().map(|(_, b)| *b).max().unwrap_or(0),
        weak_bound_holds: certificates.iter().filter(|c| c.weak_bound).count(),
        strong_bound_holds: certificates.iter().filter(|c| c.strong_bound).count(),
        strong_bound_exceptions: certificates
            .iter()
            .filter(|c| !c.strong_bound)
            .map(|c| c.tuple.indices)
            .collect(),
        degree_profile: profile,
        certificates,
    })
}
