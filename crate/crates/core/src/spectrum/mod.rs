//! Certified zeros of `W_m` (clamped plate) and `J_m` (membrane), the
//! eigenvalue table `lambda = w^4` with multiplicities, collision scans
//! across orders, and radial eigenfunction profiles.

mod profile;
mod scan;
mod table;

pub use profile::{radial_profile, ProfileSample, RadialProfile};
pub use scan::certify;
pub use table::{
    csv_header, Cluster, CollisionPair, CollisionReport, SpectrumTable, ZeroRow,
};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bessel_eval::{EvalConfig, EvalError};
use crate::decimal::{render_decimal, Rounding};
use crate::exact_algebra::{rat, Rat};
use scan::{Grid, Target};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("suspicious grid cell for order {m}: [{lo}, {hi}] could not be settled")]
    SuspiciousGrid { m: u32, lo: String, hi: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    /// Zero of `W_m`.
    Plate,
    /// Zero of `J_m`.
    Membrane,
}

/// A certified simple zero in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroRecord {
    pub kind: ZeroKind,
    pub m: u32,
    pub k: u32,
    pub lo: Rat,
    pub hi: Rat,
    pub prec_bits: u32,
}

impl ZeroRecord {
    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// `lambda = w^4` lies in `[lo^4, hi^4]`.
    pub fn lambda_bounds(&self) -> (Rat, Rat) {
        let p4 = |r: &Rat| num_traits::pow(r.clone(), 4);
        (p4(&self.lo), p4(&self.hi))
    }

    /// Eigenspace dimension contributed: one for `m = 0`, two otherwise.
    pub fn multiplicity(&self) -> u32 {
        if self.m == 0 {
            1
        } else {
            2
        }
    }

    pub fn mid_decimal(&self, digits: usize) -> String {
        render_decimal(&self.mid(), digits, Rounding::HalfEven)
    }

    pub fn overlaps(&self, other: &ZeroRecord) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Re-checks the sign-change and simple-zero certificates.
    pub fn recheck(&self, cfg: &EvalConfig) -> bool {
        certify(self.kind, self.m, &self.lo, &self.hi, cfg)
    }
}

/// Scan parameters shared by every table operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanParams {
    pub xmax: Rat,
    pub width: Rat,
    pub grid_step: Rat,
}

impl ScanParams {
    pub fn new(xmax: Rat, width: Rat, grid_step: Rat) -> Result<Self, SpectrumError> {
        let positive = |r: &Rat, what: &str| {
            if r > &Rat::zero() {
                Ok(())
            } else {
                Err(SpectrumError::InvalidArgument(format!("{what} must be positive")))
            }
        };
        positive(&xmax, "xmax")?;
        positive(&width, "width")?;
        positive(&grid_step, "grid step")?;
        Ok(ScanParams {
            xmax,
            width,
            grid_step,
        })
    }

    /// Default grid step `1/100` and width `2^-64`.
    pub fn with_defaults(xmax: Rat) -> Result<Self, SpectrumError> {
        Self::new(xmax, default_width(), rat(1, 100))
    }
}

pub fn default_width() -> Rat {
    Rat::new(One::one(), num_bigint::BigInt::one() << 64)
}

/// Zeros per order, and the number of extra cell halvings used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroScan {
    pub zeros: Vec<Vec<ZeroRecord>>,
    pub halvings: u32,
}

/// Certified zeros of `W_m` (or `J_m`) in `(0, xmax]` for every order in
/// `orders`, sharing one grid evaluation.
pub fn scan_orders(
    kind: ZeroKind,
    orders: &[u32],
    p: &ScanParams,
    cfg: &EvalConfig,
) -> Result<ZeroScan, SpectrumError> {
    let (Some(&lo), Some(&hi)) = (orders.iter().min(), orders.iter().max()) else {
        return Ok(ZeroScan {
            zeros: Vec::new(),
            halvings: 0,
        });
    };
    let grid = Grid::evaluate(&p.xmax, &p.grid_step, lo, hi + 2, cfg);
    let mut zeros = Vec::with_capacity(orders.len());
    let mut halvings = 0;
    for &m in orders {
        let t = Target { kind, m };
        let (brackets, h) = scan::brackets(t, &grid, cfg)?;
        halvings += h;
        zeros.push(scan::finish(t, &brackets, &p.width, cfg)?);
    }
    Ok(ZeroScan { zeros, halvings })
}

/// Certified zeros of `W_m` in `(0, xmax]`, increasing in `k`.
pub fn find_zeros(m: u32, p: &ScanParams, cfg: &EvalConfig) -> Result<Vec<ZeroRecord>, SpectrumError> {
    Ok(scan_orders(ZeroKind::Plate, &[m], p, cfg)?.zeros.remove(0))
}

/// Certified zeros of `J_m` in `(0, xmax]`.
pub fn find_zeros_vm(m: u32, p: &ScanParams, cfg: &EvalConfig) -> Result<Vec<ZeroRecord>, SpectrumError> {
    Ok(scan_orders(ZeroKind::Membrane, &[m], p, cfg)?.zeros.remove(0))
}

/// All plate eigenvalues with `m <= max_order` and `w <= xmax`.
pub fn eigenvalues_vp(
    max_order: u32,
    p: &ScanParams,
    cfg: &EvalConfig,
) -> Result<SpectrumTable, SpectrumError> {
    let orders: Vec<u32> = (0..=max_order).collect();
    let scan = scan_orders(ZeroKind::Plate, &orders, p, cfg)?;
    Ok(SpectrumTable::build(
        max_order,
        scan.zeros.into_iter().flatten().collect(),
        scan.halvings,
    ))
}

/// Rounds of width reduction by `2^-8` tried before an overlap is reported.
const OVERLAP_RETRIES: u32 = 4;

/// Checks that zeros of `W_m` and `W_{m+1}`, and of `W_m` and `W_{m+2}`, never
/// share an enclosure, and records the smallest gap across distinct orders.
pub fn collision_scan(
    max_order: u32,
    p: &ScanParams,
    threshold: &Rat,
    cfg: &EvalConfig,
) -> Result<(SpectrumTable, CollisionReport), SpectrumError> {
    let orders: Vec<u32> = (0..=max_order).collect();
    let mut zeros = scan_orders(ZeroKind::Plate, &orders, p, cfg)?;
    let shrink = Rat::new(One::one(), 256.into());
    let mut width = p.width.clone();
    let mut retries = 0;
    loop {
        let flat: Vec<&ZeroRecord> = zeros.zeros.iter().flatten().collect();
        let bad = table::overlapping_pairs(&flat, &[1, 2]);
        if bad.is_empty() || retries == OVERLAP_RETRIES {
            break;
        }
        width *= &shrink;
        retries += 1;
        let involved: std::collections::BTreeSet<(u32, u32)> = bad
            .iter()
            .flat_map(|(a, b)| [(a.m, a.k), (b.m, b.k)])
            .collect();
        for per_order in zeros.zeros.iter_mut() {
            for z in per_order.iter_mut() {
                if involved.contains(&(z.m, z.k)) {
                    *z = scan::shrink(z, &width, cfg)?;
                }
            }
        }
    }
    let all: Vec<ZeroRecord> = zeros.zeros.into_iter().flatten().collect();
    let report = CollisionReport::build(max_order, &p.xmax, &all, threshold, retries);
    Ok((SpectrumTable::build(max_order, all, zeros.halvings), report))
}

/// Membrane zeros `j_{m,k}` against plate zeros `w_{m',k'}` over the same
/// orders and range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembraneComparison {
    pub membrane_zeros: usize,
    /// `(m, k)` of a membrane zero and `(m', k')` of a plate zero whose
    /// enclosures intersect.
    pub overlaps: Vec<((u32, u32), (u32, u32))>,
    /// The smallest membrane zero lies strictly below the smallest plate zero.
    pub ground_below: bool,
}

pub fn compare_membrane(
    max_order: u32,
    plate: &[ZeroRecord],
    p: &ScanParams,
    cfg: &EvalConfig,
) -> Result<MembraneComparison, SpectrumError> {
    let orders: Vec<u32> = (0..=max_order).collect();
    let membrane: Vec<ZeroRecord> = scan_orders(ZeroKind::Membrane, &orders, p, cfg)?
        .zeros
        .into_iter()
        .flatten()
        .collect();
    let mut overlaps = Vec::new();
    for a in &membrane {
        for b in plate.iter().filter(|b| a.overlaps(b)) {
            overlaps.push(((a.m, a.k), (b.m, b.k)));
        }
    }
    let lowest = |zs: &[ZeroRecord]| zs.iter().min_by(|a, b| a.lo.cmp(&b.lo)).cloned();
    let ground_below = match (lowest(&membrane), lowest(plate)) {
        (Some(j), Some(w)) => j.hi < w.lo,
        _ => false,
    };
    Ok(MembraneComparison {
        membrane_zeros: membrane.len(),
        overlaps,
        ground_below,
    })
}
