//! Error-bounded evaluation of `J_m`, `I_m`, their derivatives, and the
//! cross product `W_m = I_m' J_m - I_m J_m'` at nonnegative rational points.
//!
//! All values come from the Taylor series at the origin, summed in
//! fixed-point ball arithmetic with a rigorous tail bound:
//!
//! * `J_m`: alternating series; once the term ratio `x^2 / (4 (k+1)(m+k+1))`
//!   is below one the tail is bounded by the first omitted term.
//! * `I_m`: positive series; the tail is bounded by the first omitted term
//!   times `1 / (1 - r)` with `r` the same ratio.
//!
//! Inputs are exact rationals (or rational intervals for certification).
//! Interval arguments use a centred form: evaluation at the midpoint plus
//! `h * sup|f'|`, with `|J_m'| <= 1` and `|I_m'| <= I_0 <= e^x` on `x >= 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::decimal::render_sci_up;
use crate::errfloat::ErrFloat;
use crate::exact_algebra::{rat, Rat};

pub const DEFAULT_PREC_BITS: u32 = 128;
const MAX_DOUBLINGS: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("precision exhausted: error {achieved} exceeds target {target} at {prec_bits} bits")]
    PrecisionExhausted {
        prec_bits: u32,
        achieved: String,
        target: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Evaluation settings. `scaled` requests `e^-x`-scaled modified functions
/// (and hence `e^-x W_m`), which have the same zeros and signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalConfig {
    prec_bits: u32,
    target_abs_err: Rat,
    scaled: bool,
}

impl EvalConfig {
    pub fn new(prec_bits: u32, target_abs_err: Rat, scaled: bool) -> Result<Self, EvalError> {
        if prec_bits < 53 {
            return Err(EvalError::InvalidArgument(format!(
                "prec_bits must be at least 53, got {prec_bits}"
            )));
        }
        if !target_abs_err.is_positive() {
            return Err(EvalError::InvalidArgument(
                "target_abs_err must be positive".into(),
            ));
        }
        Ok(EvalConfig {
            prec_bits,
            target_abs_err,
            scaled,
        })
    }

    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn target_abs_err(&self) -> &Rat {
        &self.target_abs_err
    }

    pub fn scaled(&self) -> bool {
        self.scaled
    }

    pub fn with_scaled(&self, scaled: bool) -> Self {
        EvalConfig {
            scaled,
            ..self.clone()
        }
    }

    pub fn with_target(&self, target_abs_err: Rat) -> Result<Self, EvalError> {
        Self::new(self.prec_bits, target_abs_err, self.scaled)
    }

    pub fn with_prec_bits(&self, prec_bits: u32) -> Result<Self, EvalError> {
        Self::new(prec_bits, self.target_abs_err.clone(), self.scaled)
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            prec_bits: DEFAULT_PREC_BITS,
            target_abs_err: Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30)),
            scaled: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    I,
}

/// Where to evaluate: an exact point, or every point of a closed interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Point(Rat),
    Interval { lo: Rat, hi: Rat },
}

impl Arg {
    pub fn interval(lo: Rat, hi: Rat) -> Self {
        if lo == hi {
            Arg::Point(lo)
        } else {
            Arg::Interval { lo, hi }
        }
    }

    fn center(&self) -> Rat {
        match self {
            Arg::Point(x) => x.clone(),
            Arg::Interval { lo, hi } => (lo + hi) / rat(2, 1),
        }
    }

    fn half_width(&self) -> Rat {
        match self {
            Arg::Point(_) => Rat::zero(),
            Arg::Interval { lo, hi } => (hi - lo) / rat(2, 1),
        }
    }

    pub fn lower(&self) -> &Rat {
        match self {
            Arg::Point(x) => x,
            Arg::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rat {
        match self {
            Arg::Point(x) => x,
            Arg::Interval { hi, .. } => hi,
        }
    }

    fn recip_ball(&self, frac: u32) -> ErrFloat {
        match self {
            Arg::Point(x) => ErrFloat::from_rat(&x.recip(), frac),
            Arg::Interval { lo, hi } => ErrFloat::from_interval(&hi.recip(), &lo.recip(), frac),
        }
    }

    fn validate_nonnegative(&self) -> Result<(), EvalError> {
        if self.lower().is_negative() || self.lower() > self.upper() {
            return Err(EvalError::InvalidArgument(
                "argument must be a nonnegative point or ordered interval".into(),
            ));
        }
        Ok(())
    }

    fn validate_positive(&self) -> Result<(), EvalError> {
        self.validate_nonnegative()?;
        if !self.lower().is_positive() {
            return Err(EvalError::InvalidArgument("argument must be positive".into()));
        }
        Ok(())
    }
}

fn log2_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

/// Number of fractional bits used internally for precision `prec` at `x`.
///
/// The guard covers the cancellation in the alternating `J` series (terms
/// peak near `e^x`) and the tiny size of products of two order-`m` series
/// near the origin.
fn working_frac(prec: u32, x_upper: &Rat, max_order: u32) -> u32 {
    let x = x_upper.to_f64().unwrap_or(f64::MAX).max(0.0);
    let cancel = (x * std::f64::consts::LOG2_E).ceil() as u32;
    let small = if x > 0.0 {
        let lt = max_order as f64 * (x / 2.0).log2() - log2_factorial(max_order);
        (-lt).max(0.0).ceil() as u32
    } else {
        0
    };
    prec + 24 + cancel + 2 * small
}

/// Upper bound for `e` (2.7182818285 > e).
fn e_upper() -> Rat {
    Rat::new(BigInt::from(27_182_818_285u64), BigInt::from(10_000_000_000u64))
}

fn exp_upper_bound(x: &Rat) -> Rat {
    let n = x.ceil().to_integer().to_u32().unwrap_or(u32::MAX);
    num_traits::pow(e_upper(), n as usize)
}

/// Normalized series `sum_k s^k y^k / (k! (m+k)!) * m!` at an exact point,
/// returned for the alternating (`s = -1`) and positive (`s = 1`) signs.
fn normalized_pair(m: u32, x: &Rat, frac: u32) -> (ErrFloat, ErrFloat) {
    // y = x^2 / 4 = p^2 / (4 q^2)
    let p2 = x.numer() * x.numer();
    let q2x4 = x.denom() * x.denom() * 4;
    let mut term = ErrFloat::from_integer(1, frac);
    let mut alt = ErrFloat::exact_zero(frac);
    let mut pos = ErrFloat::exact_zero(frac);
    let mut k: u64 = 0;
    loop {
        let d = BigInt::from(k + 1) * BigInt::from(m as u64 + k + 1);
        // ratio r_k = p2 / (q2x4 * d); tail test once r_k <= 1/2
        let denom = &q2x4 * &d;
        let small_ratio = &p2 * 2 <= denom;
        let up = term.abs_upper_units();
        if small_ratio && up <= BigInt::from(4) {
            // J tail: alternating with decreasing magnitudes
            alt = alt.widen_units(&up);
            // I tail: geometric with ratio r_k
            let slack = &denom - &p2;
            let tail = (&up * &denom + &slack - 1) / &slack;
            pos = pos.widen_units(&tail);
            return (alt, pos);
        }
        if k.is_multiple_of(2) {
            alt = alt.add(&term);
        } else {
            alt = alt.sub(&term);
        }
        pos = pos.add(&term);
        term = term.mul_int(&p2).div_int(&denom);
        k += 1;
    }
}

/// `(x/2)^m / m!` exactly.
fn leading_factor(m: u32, x: &Rat) -> Rat {
    let half = x / rat(2, 1);
    let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
    num_traits::pow(half, m as usize) / Rat::from_integer(fact)
}

/// `J_m` and `I_m` at a point, at the given fractional resolution.
fn pair_at_point(m: u32, x: &Rat, frac: u32) -> (ErrFloat, ErrFloat) {
    if x.is_zero() {
        let v = if m == 0 { 1 } else { 0 };
        return (ErrFloat::from_integer(v, frac), ErrFloat::from_integer(v, frac));
    }
    let (alt, pos) = normalized_pair(m, x, frac);
    let lead = leading_factor(m, x);
    (alt.mul_rat(&lead), pos.mul_rat(&lead))
}

fn exp_at_point(x: &Rat, frac: u32) -> ErrFloat {
    let (p, q) = (x.numer(), x.denom());
    let mut term = ErrFloat::from_integer(1, frac);
    let mut sum = ErrFloat::exact_zero(frac);
    let mut k: u64 = 0;
    loop {
        let denom = q * BigInt::from(k + 1);
        let up = term.abs_upper_units();
        if p * 2 <= denom && up <= BigInt::from(4) {
            let slack = &denom - p;
            let tail = (&up * &denom + &slack - 1) / &slack;
            return sum.widen_units(&tail);
        }
        sum = sum.add(&term);
        term = term.mul_int(p).div_int(&denom);
        k += 1;
    }
}

/// Fixed-precision evaluator over one argument; caches per-order values.
pub struct Evaluator {
    arg: Arg,
    prec: u32,
    frac: u32,
    pairs: Vec<Option<(ErrFloat, ErrFloat)>>,
    exp_neg: Option<ErrFloat>,
}

impl Evaluator {
    /// `max_order` is the largest Bessel order that will be requested.
    pub fn new(arg: Arg, prec: u32, max_order: u32) -> Self {
        let frac = working_frac(prec, arg.upper(), max_order);
        Evaluator {
            arg,
            prec,
            frac,
            pairs: Vec::new(),
            exp_neg: None,
        }
    }

    pub fn arg(&self) -> &Arg {
        &self.arg
    }

    fn finish(&self, v: ErrFloat) -> ErrFloat {
        v.with_prec_bits(self.prec)
    }

    /// `(J_n, I_n)` enclosures valid over the whole argument.
    pub fn pair(&mut self, n: u32) -> (ErrFloat, ErrFloat) {
        let idx = n as usize;
        if self.pairs.len() <= idx {
            self.pairs.resize(idx + 1, None);
        }
        if let Some(p) = &self.pairs[idx] {
            return p.clone();
        }
        let c = self.arg.center();
        let (mut j, mut i) = pair_at_point(n, &c, self.frac);
        let h = self.arg.half_width();
        if !h.is_zero() {
            j = j.widen(&h);
            i = i.widen(&(&h * exp_upper_bound(self.arg.upper())));
        }
        self.pairs[idx] = Some((j.clone(), i.clone()));
        (j, i)
    }

    pub fn j(&mut self, n: u32) -> ErrFloat {
        self.pair(n).0
    }

    pub fn i(&mut self, n: u32) -> ErrFloat {
        self.pair(n).1
    }

    /// `e^-x` over the argument.
    pub fn exp_neg(&mut self) -> ErrFloat {
        if let Some(e) = &self.exp_neg {
            return e.clone();
        }
        let c = self.arg.center();
        let e = exp_at_point(&c, self.frac)
            .recip()
            .expect("exp is positive");
        // |d/dx e^-x| <= 1 for x >= 0
        let e = e.widen(&self.arg.half_width());
        self.exp_neg = Some(e.clone());
        e
    }

    fn inv_x(&self) -> ErrFloat {
        self.arg.recip_ball(self.frac)
    }

    fn order_over_x(&self, n: u32) -> ErrFloat {
        self.inv_x().mul_int(&BigInt::from(n))
    }

    /// `(J_n', I_n')` via `J_n' = (n/x) J_n - J_{n+1}`, `I_n' = (n/x) I_n + I_{n+1}`.
    pub fn derivs(&mut self, n: u32) -> (ErrFloat, ErrFloat) {
        let (j, i) = self.pair(n);
        let (j1, i1) = self.pair(n + 1);
        let nx = self.order_over_x(n);
        (nx.mul(&j).sub(&j1), nx.mul(&i).add(&i1))
    }

    /// `W_n = I_{n+1} J_n + I_n J_{n+1}`.
    pub fn w(&mut self, n: u32) -> ErrFloat {
        let (j, i) = self.pair(n);
        let (j1, i1) = self.pair(n + 1);
        i1.mul(&j).add(&i.mul(&j1))
    }

    /// `W_n = I_n' J_n - I_n J_n'` straight from the definition.
    pub fn w_from_definition(&mut self, n: u32) -> ErrFloat {
        let (j, i) = self.pair(n);
        let (dj, di) = self.derivs(n);
        di.mul(&j).sub(&i.mul(&dj))
    }

    /// `W_n' = 2 I_n J_n - W_n / x`.
    pub fn w_deriv(&mut self, n: u32) -> ErrFloat {
        let (j, i) = self.pair(n);
        let w = self.w(n);
        i.mul(&j).mul_int(&BigInt::from(2)).sub(&w.mul(&self.inv_x()))
    }

    /// LHS - RHS of the length-four recursion at order `m`.
    pub fn recursion_residual(&mut self, m: u32) -> ErrFloat {
        let w: Vec<ErrFloat> = (m..=m + 4).map(|n| self.w(n)).collect();
        let inv = self.inv_x();
        let alpha = BigInt::from(4 * (m as u64 + 2) * (m as u64 + 3));
        let beta = Rat::new(BigInt::from(m + 3), BigInt::from(m + 1));
        let lhs = w[2].add(&w[4]);
        let b = inv.mul(&inv).mul_int(&alpha).mul(&w[1].sub(&w[3]));
        let c = w[0].add(&w[2]).mul_rat(&beta);
        lhs.sub(&b).add(&c)
    }

    /// `f'' + f'/x - (n^2/x^2 -+ 1) f` with `f''` obtained from the
    /// first-order rules.
    pub fn ode_residual(&mut self, kind: BesselKind, n: u32) -> ErrFloat {
        let inv = self.inv_x();
        let nx = inv.mul_int(&BigInt::from(n));
        let n1x = inv.mul_int(&BigInt::from(n + 1));
        let nx2 = inv.mul(&inv).mul_int(&BigInt::from(n * n));
        let (j, i) = self.pair(n);
        let (j1, i1) = self.pair(n + 1);
        match kind {
            BesselKind::J => {
                let d1 = nx.mul(&j).sub(&j1);
                // J_{n+1}' = J_n - ((n+1)/x) J_{n+1}
                let dj1 = j.sub(&n1x.mul(&j1));
                let d2 = nx.mul(&inv).mul(&j).neg().add(&nx.mul(&d1)).sub(&dj1);
                d2.add(&d1.mul(&inv)).sub(&nx2.mul(&j)).add(&j)
            }
            BesselKind::I => {
                let d1 = nx.mul(&i).add(&i1);
                // I_{n+1}' = I_n - ((n+1)/x) I_{n+1}
                let di1 = i.sub(&n1x.mul(&i1));
                let d2 = nx.mul(&inv).mul(&i).neg().add(&nx.mul(&d1)).add(&di1);
                d2.add(&d1.mul(&inv)).sub(&nx2.mul(&i)).sub(&i)
            }
        }
    }

    /// Multiplies by `e^-x` when `scaled` is set.
    pub fn scale_if(&mut self, v: ErrFloat, scaled: bool) -> ErrFloat {
        let out = if scaled { v.mul(&self.exp_neg()) } else { v };
        self.finish(out)
    }
}

/// Runs `f` at `cfg.prec_bits`, doubling up to four times until the
/// enclosure radius meets `cfg.target_abs_err`.
pub fn adaptive<F>(cfg: &EvalConfig, mut f: F) -> Result<ErrFloat, EvalError>
where
    F: FnMut(u32) -> ErrFloat,
{
    let mut prec = cfg.prec_bits;
    let mut last = None;
    for _ in 0..=MAX_DOUBLINGS {
        let v = f(prec);
        if v.err_at_most(&cfg.target_abs_err) {
            return Ok(v.with_prec_bits(prec));
        }
        last = Some(v);
        prec *= 2;
    }
    let last = last.expect("at least one attempt");
    Err(EvalError::PrecisionExhausted {
        prec_bits: prec / 2,
        achieved: render_sci_up(&last.err(), 3),
        target: render_sci_up(&cfg.target_abs_err, 3),
    })
}

fn point(x: &Rat) -> Result<Arg, EvalError> {
    let a = Arg::Point(x.clone());
    a.validate_nonnegative()?;
    Ok(a)
}

fn positive_point(x: &Rat) -> Result<Arg, EvalError> {
    let a = Arg::Point(x.clone());
    a.validate_positive()?;
    Ok(a)
}

pub fn bessel_j(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m);
        let v = ev.j(m);
        ev.finish(v)
    })
}

pub fn bessel_i(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m);
        let v = ev.i(m);
        ev.scale_if(v, cfg.scaled)
    })
}

/// `(J_m'(x), I_m'(x))`; the second component is `e^-x I_m'` when scaled.
pub fn bessel_derivs(
    m: u32,
    x: &Rat,
    cfg: &EvalConfig,
) -> Result<(ErrFloat, ErrFloat), EvalError> {
    let arg = positive_point(x)?;
    let dj = adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.derivs(m).0;
        ev.finish(v)
    })?;
    let di = adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.derivs(m).1;
        ev.scale_if(v, cfg.scaled)
    })?;
    Ok((dj, di))
}

/// `W_m(x)` via `I_{m+1} J_m + I_m J_{m+1}` (`e^-x W_m` when scaled).
pub fn cross_w(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = positive_point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.w(m);
        ev.scale_if(v, cfg.scaled)
    })
}

/// `W_m(x)` from the defining formula `I_m' J_m - I_m J_m'`.
pub fn cross_w_definition(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = positive_point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.w_from_definition(m);
        ev.scale_if(v, cfg.scaled)
    })
}

/// `W_m'(x) = 2 I_m J_m - W_m / x` (`e^-x W_m'` when scaled).
pub fn cross_w_deriv(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = positive_point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.w_deriv(m);
        ev.scale_if(v, cfg.scaled)
    })
}

/// Residual of
/// `W_{m+2} + W_{m+4} - 4(m+2)(m+3)/x^2 (W_{m+1} - W_{m+3}) + (m+3)/(m+1) (W_m + W_{m+2})`.
/// The true value is zero.
pub fn recursion_residual(m: u32, x: &Rat, cfg: &EvalConfig) -> Result<ErrFloat, EvalError> {
    let arg = positive_point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 5);
        let v = ev.recursion_residual(m);
        ev.scale_if(v, cfg.scaled)
    })
}

/// Residual of the Bessel (`J`) or modified Bessel (`I`) equation.
pub fn ode_residual(
    kind: BesselKind,
    m: u32,
    x: &Rat,
    cfg: &EvalConfig,
) -> Result<ErrFloat, EvalError> {
    let arg = positive_point(x)?;
    adaptive(cfg, |prec| {
        let mut ev = Evaluator::new(arg.clone(), prec, m + 1);
        let v = ev.ode_residual(kind, m);
        ev.scale_if(v, cfg.scaled && kind == BesselKind::I)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::parse_rat;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn x(s: &str) -> Rat {
        parse_rat(s).unwrap()
    }

    #[test]
    fn values_at_origin_are_exact() {
        let j0 = bessel_j(0, &Rat::zero(), &cfg()).unwrap();
        assert!(j0.is_exact());
        assert_eq!(j0.value(), rat(1, 1));
        let j1 = bessel_j(1, &Rat::zero(), &cfg()).unwrap();
        assert!(j1.is_exact());
        assert_eq!(j1.value(), Rat::zero());
        let i0 = bessel_i(0, &Rat::zero(), &cfg()).unwrap();
        assert_eq!(i0.value(), rat(1, 1));
        assert!(i0.is_exact());
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::new(52, rat(1, 10), false).is_err());
        assert!(EvalConfig::new(64, rat(0, 1), false).is_err());
        assert!(EvalConfig::new(64, rat(1, 10), true).is_ok());
    }

    #[test]
    fn derivative_needs_positive_argument() {
        assert!(matches!(
            bessel_derivs(0, &Rat::zero(), &cfg()),
            Err(EvalError::InvalidArgument(_))
        ));
        assert!(bessel_j(0, &rat(-1, 2), &cfg()).is_err());
    }

    #[test]
    fn precision_exhausted_reported() {
        // an absurd target at x = 60 cannot be met within four doublings of 53 bits
        let c = EvalConfig::new(53, Rat::new(BigInt::one(), BigInt::one() << 2000u32), false).unwrap();
        assert!(matches!(
            cross_w(3, &x("60"), &c),
            Err(EvalError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn derivative_rules_at_order_zero() {
        for s in ["0.3", "1", "7.25", "19.5", "41"] {
            let (dj, di) = bessel_derivs(0, &x(s), &cfg()).unwrap();
            let j1 = bessel_j(1, &x(s), &cfg()).unwrap();
            let i1 = bessel_i(1, &x(s), &cfg()).unwrap();
            assert!(dj.add(&j1).contains_zero(), "J0' = -J1 at {s}");
            assert!(di.sub(&i1).contains_zero(), "I0' = I1 at {s}");
        }
    }

    #[test]
    fn scaled_and_unscaled_signs_agree() {
        for s in ["2.5", "3.2", "9.1", "33.3"] {
            for m in [0, 3, 7] {
                let u = cross_w(m, &x(s), &cfg()).unwrap();
                let v = cross_w(m, &x(s), &cfg().with_scaled(true)).unwrap();
                assert_eq!(u.sign(), v.sign());
            }
        }
    }

    #[test]
    fn interval_evaluation_encloses_endpoints() {
        let lo = x("3.1962");
        let hi = x("3.1963");
        let mut ev = Evaluator::new(Arg::interval(lo.clone(), hi.clone()), 128, 1);
        let w_int = ev.w(0);
        for p in [lo, hi] {
            let mut e = Evaluator::new(Arg::Point(p), 128, 1);
            assert!(w_int.contains(&e.w(0)));
        }
        // zero of W_0 lies inside
        assert!(w_int.contains_zero());
    }
}
