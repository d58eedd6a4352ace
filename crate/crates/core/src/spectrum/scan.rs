//! Certified zero finding on a grid.
//!
//! A zero of `f` (either `W_m` or `J_m`) is reported as `[lo, hi]` with
//! certified opposite signs at the endpoints and a derivative enclosure over
//! `[lo, hi]` that excludes zero, so the zero is unique and simple.
//!
//! Completeness: on `(0, 2)` every `J_n` is positive (alternating series
//! with decreasing terms), hence so is `W_m = I_{m+1} J_m + I_m J_{m+1}`.
//! From `x = 2` on, every grid cell gets enclosures of `f` and `f'` over the
//! whole cell; a cell is settled once `f'` excludes zero (at most one zero,
//! present iff the endpoint signs differ) or `f` excludes zero (none).
//! Unsettled cells are halved.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{SpectrumError, ZeroKind, ZeroRecord};
use crate::bessel_eval::{Arg, EvalConfig, EvalError, Evaluator};
use crate::errfloat::ErrFloat;
use crate::exact_algebra::{rat, Rat};

/// Below this abscissa no `W_m` or `J_m` vanishes.
pub(crate) fn positivity_edge() -> Rat {
    rat(2, 1)
}

const MAX_DOUBLINGS: u32 = 4;
const MAX_HALVINGS: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Target {
    pub kind: ZeroKind,
    pub m: u32,
}

impl Target {
    fn top_order(&self) -> u32 {
        self.m + 2
    }
}

/// `J_n`, `I_n` at one exact point for a contiguous range of orders.
#[derive(Debug, Clone)]
pub(crate) struct PointData {
    x: Rat,
    lo_order: u32,
    j: Vec<ErrFloat>,
    i: Vec<ErrFloat>,
    exp_neg: Option<ErrFloat>,
}

impl PointData {
    pub fn compute(x: &Rat, lo_order: u32, hi_order: u32, prec: u32, scaled: bool) -> Self {
        let mut ev = Evaluator::new(Arg::Point(x.clone()), prec, hi_order);
        let (j, i) = (lo_order..=hi_order).map(|n| ev.pair(n)).unzip();
        PointData {
            x: x.clone(),
            lo_order,
            j,
            i,
            exp_neg: scaled.then(|| ev.exp_neg()),
        }
    }

    fn j(&self, n: u32) -> &ErrFloat {
        &self.j[(n - self.lo_order) as usize]
    }

    fn i(&self, n: u32) -> &ErrFloat {
        &self.i[(n - self.lo_order) as usize]
    }

    fn value(&self, t: Target) -> ErrFloat {
        let m = t.m;
        let v = match t.kind {
            ZeroKind::Plate => self.i(m + 1).mul(self.j(m)).add(&self.i(m).mul(self.j(m + 1))),
            ZeroKind::Membrane => self.j(m).clone(),
        };
        match &self.exp_neg {
            Some(e) => v.mul(e),
            None => v,
        }
    }
}

/// Enclosures of `f` and `f'` over the cell between two grid points.
fn cell_enclosures(t: Target, a: &PointData, b: &PointData) -> (ErrFloat, ErrFloat) {
    let frac = a.j(t.m).frac_bits().max(b.j(t.m).frac_bits());
    let h = &b.x - &a.x;
    let mut jc = Vec::new();
    let mut ic = Vec::new();
    for n in [t.m, t.m + 1] {
        // I_n and I_n' increase on x > 0, and |J_n'| <= min(1, I_n')
        ic.push(ErrFloat::from_interval(&a.i(n).lower(), &b.i(n).upper(), frac));
        let di = b
            .i(n)
            .mul_rat(&(Rat::from_integer(n.into()) / &b.x))
            .add(b.i(n + 1))
            .upper();
        let slope = di.min(Rat::one());
        let ja = a.j(n).widen(&(&h * &slope));
        let jb = b.j(n).widen(&(&h * &slope));
        // both enclose J_n on the cell; keep the tighter one
        jc.push(if ja.err() <= jb.err() { ja } else { jb });
    }
    let inv_x = ErrFloat::from_interval(&b.x.recip(), &a.x.recip(), frac);
    let (value, deriv) = match t.kind {
        ZeroKind::Plate => {
            let w = ic[1].mul(&jc[0]).add(&ic[0].mul(&jc[1]));
            let dw = ic[0]
                .mul(&jc[0])
                .mul_int(&2.into())
                .sub(&w.mul(&inv_x));
            (w, dw)
        }
        ZeroKind::Membrane => {
            let dj = inv_x.mul_int(&t.m.into()).mul(&jc[0]).sub(&jc[1]);
            (jc[0].clone(), dj)
        }
    };
    (value, deriv)
}

/// Certified sign of `f` at `x`, raising precision when needed.
fn sign_at(t: Target, x: &Rat, cfg: &EvalConfig) -> Result<Ordering, SpectrumError> {
    let mut prec = cfg.prec_bits();
    for _ in 0..=MAX_DOUBLINGS {
        let pd = PointData::compute(x, t.m, t.m + 1, prec, cfg.scaled());
        if let Some(s) = nonzero_sign(&pd.value(t)) {
            return Ok(s);
        }
        prec *= 2;
    }
    Err(undecided(prec / 2, x))
}

fn nonzero_sign(v: &ErrFloat) -> Option<Ordering> {
    v.sign().filter(|s| *s != Ordering::Equal)
}

fn undecided(prec: u32, x: &Rat) -> SpectrumError {
    SpectrumError::Eval(EvalError::PrecisionExhausted {
        prec_bits: prec,
        achieved: "sign undecided".into(),
        target: format!("sign at x = {x}"),
    })
}

/// Sign at a grid point, reusing the grid evaluation when it is decisive.
fn grid_sign(t: Target, pd: &PointData, cfg: &EvalConfig) -> Result<Ordering, SpectrumError> {
    match nonzero_sign(&pd.value(t)) {
        Some(s) => Ok(s),
        None => sign_at(t, &pd.x, cfg),
    }
}

/// A bracket `(lo, hi)` with opposite certified endpoint signs.
#[derive(Debug, Clone)]
pub(crate) struct Bracket {
    pub lo: Rat,
    pub hi: Rat,
    pub sign_lo: Ordering,
}

struct CellWalk<'a> {
    t: Target,
    cfg: &'a EvalConfig,
    halvings: u32,
}

impl CellWalk<'_> {
    fn settle(
        &mut self,
        a: &PointData,
        b: &PointData,
        depth: u32,
        out: &mut Vec<Bracket>,
    ) -> Result<(), SpectrumError> {
        let sa = grid_sign(self.t, a, self.cfg)?;
        let sb = grid_sign(self.t, b, self.cfg)?;
        let (value, deriv) = cell_enclosures(self.t, a, b);
        if !deriv.contains_zero() {
            if sa != sb {
                out.push(Bracket {
                    lo: a.x.clone(),
                    hi: b.x.clone(),
                    sign_lo: sa,
                });
            }
            return Ok(());
        }
        if !value.contains_zero() {
            return Ok(());
        }
        if depth >= MAX_HALVINGS {
            return Err(SpectrumError::SuspiciousGrid {
                m: self.t.m,
                lo: a.x.to_string(),
                hi: b.x.to_string(),
            });
        }
        self.halvings += 1;
        let mid = (&a.x + &b.x) / rat(2, 1);
        let c = PointData::compute(
            &mid,
            self.t.m,
            self.t.top_order(),
            self.cfg.prec_bits(),
            self.cfg.scaled(),
        );
        self.settle(a, &c, depth + 1, out)?;
        self.settle(&c, b, depth + 1, out)
    }
}

/// Grid points `2, 2 + step, ...` up to `xmax` (with `xmax` appended).
pub(crate) fn grid(xmax: &Rat, step: &Rat) -> Vec<Rat> {
    let mut pts = Vec::new();
    let mut x = positivity_edge();
    while &x <= xmax {
        pts.push(x.clone());
        x += step;
    }
    if pts.last().is_some_and(|p| p != xmax) {
        pts.push(xmax.clone());
    }
    pts
}

pub(crate) struct Grid {
    pub points: Vec<PointData>,
}

impl Grid {
    pub fn evaluate(xmax: &Rat, step: &Rat, lo_order: u32, hi_order: u32, cfg: &EvalConfig) -> Self {
        let points = grid(xmax, step)
            .par_iter()
            .map(|x| PointData::compute(x, lo_order, hi_order, cfg.prec_bits(), cfg.scaled()))
            .collect();
        Grid { points }
    }
}

/// Sign-change brackets of `f` on the grid and the number of extra
/// halvings needed to settle every cell.
pub(crate) fn brackets(
    t: Target,
    grid: &Grid,
    cfg: &EvalConfig,
) -> Result<(Vec<Bracket>, u32), SpectrumError> {
    let cells: Vec<Result<(Vec<Bracket>, u32), SpectrumError>> = grid
        .points
        .par_windows(2)
        .map(|w| {
            let mut walk = CellWalk { t, cfg, halvings: 0 };
            let mut out = Vec::new();
            walk.settle(&w[0], &w[1], 0, &mut out)?;
            Ok((out, walk.halvings))
        })
        .collect();
    let mut all = Vec::new();
    let mut halvings = 0;
    for c in cells {
        let (b, h) = c?;
        all.extend(b);
        halvings += h;
    }
    Ok((all, halvings))
}

/// Bisects a bracket down to `width`.
pub(crate) fn refine(
    t: Target,
    b: &Bracket,
    width: &Rat,
    cfg: &EvalConfig,
) -> Result<Bracket, SpectrumError> {
    let mut lo = b.lo.clone();
    let mut hi = b.hi.clone();
    let two = rat(2, 1);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if sign_at(t, &mid, cfg)? == b.sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Bracket {
        lo,
        hi,
        sign_lo: b.sign_lo,
    })
}

/// Enclosure of `f'` over `[lo, hi]`.
pub(crate) fn derivative_over(t: Target, lo: &Rat, hi: &Rat, prec: u32) -> ErrFloat {
    let mut ev = Evaluator::new(Arg::interval(lo.clone(), hi.clone()), prec, t.m + 1);
    match t.kind {
        ZeroKind::Plate => ev.w_deriv(t.m),
        ZeroKind::Membrane => ev.derivs(t.m).0,
    }
}

/// Re-derives both certificates for a stored enclosure.
pub fn certify(kind: ZeroKind, m: u32, lo: &Rat, hi: &Rat, cfg: &EvalConfig) -> bool {
    let t = Target { kind, m };
    if lo >= hi || lo <= &Rat::zero() {
        return false;
    }
    let (Ok(sl), Ok(sh)) = (sign_at(t, lo, cfg), sign_at(t, hi, cfg)) else {
        return false;
    };
    sl != sh && simple_zero(t, lo, hi, cfg)
}

fn simple_zero(t: Target, lo: &Rat, hi: &Rat, cfg: &EvalConfig) -> bool {
    let mut prec = cfg.prec_bits();
    for _ in 0..=MAX_DOUBLINGS {
        if !derivative_over(t, lo, hi, prec).contains_zero() {
            return true;
        }
        prec *= 2;
    }
    false
}

/// Refines every bracket and attaches the simple-zero certificate.
pub(crate) fn finish(
    t: Target,
    brackets: &[Bracket],
    width: &Rat,
    cfg: &EvalConfig,
) -> Result<Vec<ZeroRecord>, SpectrumError> {
    let refined: Vec<Result<ZeroRecord, SpectrumError>> = brackets
        .par_iter()
        .enumerate()
        .map(|(idx, b)| {
            let r = refine(t, b, width, cfg)?;
            if !simple_zero(t, &r.lo, &r.hi, cfg) {
                return Err(SpectrumError::SuspiciousGrid {
                    m: t.m,
                    lo: r.lo.to_string(),
                    hi: r.hi.to_string(),
                });
            }
            Ok(ZeroRecord {
                kind: t.kind,
                m: t.m,
                k: idx as u32 + 1,
                lo: r.lo,
                hi: r.hi,
                prec_bits: cfg.prec_bits(),
            })
        })
        .collect();
    refined.into_iter().collect()
}

/// Shrinks an existing enclosure to `width` by continued bisection.
pub(crate) fn shrink(
    z: &ZeroRecord,
    width: &Rat,
    cfg: &EvalConfig,
) -> Result<ZeroRecord, SpectrumError> {
    let t = Target { kind: z.kind, m: z.m };
    let sign_lo = sign_at(t, &z.lo, cfg)?;
    let b = Bracket {
        lo: z.lo.clone(),
        hi: z.hi.clone(),
        sign_lo,
    };
    let r = refine(t, &b, width, cfg)?;
    Ok(ZeroRecord {
        lo: r.lo,
        hi: r.hi,
        ..z.clone()
    })
}
