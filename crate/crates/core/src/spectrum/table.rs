use std::cmp::Ordering;

use serde::Serialize;

use super::ZeroRecord;
use crate::decimal::{render_decimal, Rounding};
use crate::exact_algebra::Rat;

/// One output line: bounds are rounded outward, the midpoint half-even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroRow {
    pub m: u32,
    pub k: u32,
    pub lo: String,
    pub hi: String,
    pub mid_decimal: String,
    pub lambda_lo: String,
    pub lambda_hi: String,
    pub mult: u32,
}

pub fn csv_header() -> &'static str {
    "m,k,lo,hi,mid_decimal,lambda_lo,lambda_hi,mult"
}

impl ZeroRow {
    pub fn from_record(z: &ZeroRecord, digits: usize) -> Self {
        let (l_lo, l_hi) = z.lambda_bounds();
        ZeroRow {
            m: z.m,
            k: z.k,
            lo: render_decimal(&z.lo, digits, Rounding::Floor),
            hi: render_decimal(&z.hi, digits, Rounding::Ceil),
            mid_decimal: z.mid_decimal(digits),
            lambda_lo: render_decimal(&l_lo, digits, Rounding::Floor),
            lambda_hi: render_decimal(&l_hi, digits, Rounding::Ceil),
            mult: z.multiplicity(),
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m,
            self.k,
            self.lo,
            self.hi,
            self.mid_decimal,
            self.lambda_lo,
            self.lambda_hi,
            self.mult
        )
    }
}

/// Zeros whose enclosures overlap, merged transitively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    /// `(m, k)` of each member, by increasing midpoint.
    pub members: Vec<(u32, u32)>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub max_order: u32,
    /// Sorted by midpoint.
    pub entries: Vec<ZeroRecord>,
    pub clusters: Vec<Cluster>,
    /// Extra grid-cell halvings the scan needed.
    pub halvings: u32,
}

fn by_mid(a: &ZeroRecord, b: &ZeroRecord) -> Ordering {
    a.mid().cmp(&b.mid()).then(a.m.cmp(&b.m)).then(a.k.cmp(&b.k))
}

impl SpectrumTable {
    pub fn build(max_order: u32, mut entries: Vec<ZeroRecord>, halvings: u32) -> Self {
        entries.sort_by(by_mid);
        let mut order: Vec<&ZeroRecord> = entries.iter().collect();
        order.sort_by(|a, b| a.lo.cmp(&b.lo).then(by_mid(a, b)));
        let mut clusters: Vec<Cluster> = Vec::new();
        let mut reach: Option<Rat> = None;
        let mut current: Vec<&ZeroRecord> = Vec::new();
        let close = |cur: &mut Vec<&ZeroRecord>, out: &mut Vec<Cluster>| {
            if cur.is_empty() {
                return;
            }
            cur.sort_by(|a, b| by_mid(a, b));
            out.push(Cluster {
                members: cur.iter().map(|z| (z.m, z.k)).collect(),
                multiplicity: cur.iter().map(|z| z.multiplicity()).sum(),
            });
            cur.clear();
        };
        for z in order {
            if reach.as_ref().is_some_and(|r| &z.lo > r) {
                close(&mut current, &mut clusters);
                reach = None;
            }
            reach = Some(match reach {
                Some(r) if r > z.hi => r,
                _ => z.hi.clone(),
            });
            current.push(z);
        }
        close(&mut current, &mut clusters);
        SpectrumTable {
            max_order,
            entries,
            clusters,
            halvings,
        }
    }

    pub fn rows(&self, digits: usize) -> Vec<ZeroRow> {
        self.entries.iter().map(|z| ZeroRow::from_record(z, digits)).collect()
    }

    pub fn ground_state(&self) -> Option<&ZeroRecord> {
        self.entries.first()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.clusters.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }

    pub fn all_singletons(&self) -> bool {
        self.clusters.iter().all(|c| c.members.len() == 1)
    }

    /// Number of zeros found per order `0..=max_order`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_order)
            .map(|m| self.entries.iter().filter(|z| z.m == m).count())
            .collect()
    }
}

/// Lower bound on the distance between two enclosures; negative when they
/// overlap.
fn gap(a: &ZeroRecord, b: &ZeroRecord) -> Rat {
    (&b.lo - &a.hi).max(&a.lo - &b.hi)
}

pub(crate) fn overlapping_pairs<'a>(
    zeros: &[&'a ZeroRecord],
    order_diffs: &[u32],
) -> Vec<(&'a ZeroRecord, &'a ZeroRecord)> {
    let mut out = Vec::new();
    for (i, a) in zeros.iter().enumerate() {
        for b in &zeros[i + 1..] {
            if order_diffs.contains(&a.m.abs_diff(b.m)) && a.overlaps(b) {
                out.push((*a, *b));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionPair {
    pub a: (u32, u32),
    pub b: (u32, u32),
    /// Certified lower bound on the distance between the two zeros.
    pub gap: String,
    pub near: String,
}

impl CollisionPair {
    fn new(a: &ZeroRecord, b: &ZeroRecord) -> Self {
        let (a, b) = if by_mid(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
        CollisionPair {
            a: (a.m, a.k),
            b: (b.m, b.k),
            gap: render_decimal(&gap(a, b), 22, Rounding::Floor),
            near: render_decimal(&a.mid(), 10, Rounding::HalfEven),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub max_order: u32,
    pub xmax: String,
    pub zeros: usize,
    /// No zero of `W_m` shares an enclosure with one of `W_{m+1}`.
    pub adjacent_orders_pass: bool,
    /// Same for `W_m` and `W_{m+2}`.
    pub step_two_orders_pass: bool,
    pub overlaps: Vec<CollisionPair>,
    pub min_gap: Option<CollisionPair>,
    pub threshold: String,
    pub below_threshold: Vec<CollisionPair>,
    pub width_reductions: u32,
}

impl CollisionReport {
    pub fn build(
        max_order: u32,
        xmax: &Rat,
        zeros: &[ZeroRecord],
        threshold: &Rat,
        width_reductions: u32,
    ) -> Self {
        let refs: Vec<&ZeroRecord> = zeros.iter().collect();
        let one = overlapping_pairs(&refs, &[1]);
        let two = overlapping_pairs(&refs, &[2]);
        let mut min: Option<(Rat, CollisionPair)> = None;
        let mut below = Vec::new();
        for (i, a) in zeros.iter().enumerate() {
            for b in &zeros[i + 1..] {
                if a.m == b.m {
                    continue;
                }
                let g = gap(a, b);
                if &g < threshold {
                    below.push((a.mid().min(b.mid()), CollisionPair::new(a, b)));
                }
                if min.as_ref().is_none_or(|(m, _)| &g < m) {
                    min = Some((g, CollisionPair::new(a, b)));
                }
            }
        }
        below.sort_by(|x, y| x.0.cmp(&y.0));
        CollisionReport {
            max_order,
            xmax: crate::exact_algebra::render_rat(xmax),
            zeros: zeros.len(),
            adjacent_orders_pass: one.is_empty(),
            step_two_orders_pass: two.is_empty(),
            overlaps: one.iter().chain(&two).map(|(a, b)| CollisionPair::new(a, b)).collect(),
            min_gap: min.map(|(_, p)| p),
            threshold: crate::exact_algebra::render_rat(threshold),
            below_threshold: below.into_iter().map(|(_, p)| p).collect(),
            width_reductions,
        }
    }

    pub fn pass(&self) -> bool {
        self.adjacent_orders_pass && self.step_two_orders_pass
    }
}
