//! Roots of functions that are monotone between consecutive poles.

use std::cell::RefCell;

use super::SolverError;
use crate::numerics::{find_root_with, RootBracket, RootOptions};

/// Smallest distance from a pole at which the function is evaluated.
pub(crate) const MIN_POLE_GAP: f64 = 2e-9;
/// Largest `x - lo` tried when the upper end is unbounded.
pub(crate) const MAX_SEARCH: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Limit {
    /// The function diverges here.
    Pole(f64),
    /// A window edge: evaluated directly.
    Bound(f64),
    Infinite,
}

impl Limit {
    fn at(&self) -> f64 {
        match *self {
            Limit::Pole(x) | Limit::Bound(x) => x,
            Limit::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub x: f64,
    pub bracket: RootBracket,
    /// The root is within `MIN_POLE_GAP` of a pole and was not refined.
    pub at_pole: bool,
}

/// Wrap a fallible function so Brent can call it; the first error is kept.
struct Captured<'a, G> {
    g: &'a G,
    err: RefCell<Option<SolverError>>,
}

impl<'a, G: Fn(f64) -> Result<f64, SolverError>> Captured<'a, G> {
    fn new(g: &'a G) -> Self {
        Self { g, err: RefCell::new(None) }
    }

    fn call(&self, x: f64) -> f64 {
        match (self.g)(x) {
            Ok(v) => v,
            Err(e) => {
                self.err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }

    fn take(&self) -> Option<SolverError> {
        self.err.borrow_mut().take()
    }
}

/// Intervals between `poles` (sorted in decreasing order) that meet
/// `[x_lo, x_hi]`, window-clipped, in decreasing `x`, with their index
/// counted from the unbounded top interval.
pub(crate) fn clip_intervals(poles: &[f64], x_lo: f64, x_hi: f64) -> Vec<(usize, Limit, Limit)> {
    let Some(&top) = poles.first() else {
        return Vec::new();
    };
    let all = std::iter::once((top, f64::INFINITY)).chain(poles.windows(2).map(|w| (w[1], w[0])));
    let mut out = Vec::new();
    for (i, (a, b)) in all.enumerate() {
        if b <= x_lo || a >= x_hi {
            continue;
        }
        if b - a < 4.0 * MIN_POLE_GAP {
            log::warn!("skipping pole interval ({a}, {b}): narrower than the pole gap");
            continue;
        }
        let lo = if a < x_lo { Limit::Bound(x_lo) } else { Limit::Pole(a) };
        let hi = if b > x_hi {
            Limit::Bound(x_hi)
        } else if b.is_infinite() {
            Limit::Infinite
        } else {
            Limit::Pole(b)
        };
        out.push((i, lo, hi));
    }
    out
}

fn same_sign(v: f64, s: f64) -> bool {
    v * s > 0.0
}

/// The single root of `g` on `(lo, hi)`, where `g` is monotone and tends to
/// `sign_lo * inf` next to a lower pole and `-sign_lo * inf` next to an upper one.
/// Returns `None` when the root lies beyond a window bound.
pub(crate) fn monotone_root<G>(
    g: &G,
    lo: Limit,
    hi: Limit,
    sign_lo: f64,
    opts: &RootOptions,
) -> Result<Option<Root>, SolverError>
where
    G: Fn(f64) -> Result<f64, SolverError>,
{
    let a = lo.at();
    if !a.is_finite() || !(a < hi.at()) {
        return Err(SolverError::InvalidInput(format!(
            "bad interval ({a}, {})",
            hi.at()
        )));
    }
    if let Limit::Bound(b) = lo {
        let v = g(b)?;
        if v == 0.0 {
            return exact(b);
        }
        if !same_sign(v, sign_lo) {
            return Ok(None);
        }
    }
    if let Limit::Bound(b) = hi {
        let v = g(b)?;
        if v == 0.0 {
            return exact(b);
        }
        if same_sign(v, sign_lo) {
            return Ok(None);
        }
    }

    // An interior probe point.
    let (mut m, mut gm) = match hi {
        Limit::Infinite => {
            let mut step = 1.0;
            loop {
                let m = a + step;
                let v = g(m)?;
                if !same_sign(v, sign_lo) || step > MAX_SEARCH {
                    break (m, v);
                }
                step *= 2.0;
            }
        }
        _ => {
            let m = 0.5 * (a + hi.at());
            (m, g(m)?)
        }
    };
    if gm == 0.0 {
        return exact(m);
    }
    if let Limit::Infinite = hi {
        if same_sign(gm, sign_lo) {
            return Ok(None);
        }
    }

    // The root is on the side of m where g still has the pole-side sign.
    let (mut left, mut right);
    if same_sign(gm, sign_lo) {
        left = (m, gm);
        right = match hi {
            Limit::Bound(b) => (b, g(b)?),
            Limit::Pole(p) => match approach(g, p, -1.0, m, sign_lo, &mut m, &mut gm)? {
                Some(r) => r,
                None => return pole_root(p, -1.0, (m, gm), sign_lo),
            },
            Limit::Infinite => unreachable!(),
        };
        if m > left.0 {
            left = (m, gm);
        }
    } else {
        right = (m, gm);
        left = match lo {
            Limit::Bound(b) => (b, g(b)?),
            Limit::Pole(p) => match approach(g, p, 1.0, m, sign_lo, &mut m, &mut gm)? {
                Some(r) => r,
                None => return pole_root(p, 1.0, (m, gm), sign_lo),
            },
            Limit::Infinite => unreachable!(),
        };
        if m < right.0 {
            right = (m, gm);
        }
    }

    let bracket = RootBracket::new(left.0, right.0, left.1, right.1)?;
    let cap = Captured::new(g);
    let found = find_root_with(|x| cap.call(x), &bracket, opts);
    if let Some(e) = cap.take() {
        return Err(e);
    }
    Ok(Some(Root {
        x: found?,
        bracket,
        at_pole: false,
    }))
}

/// Walk from `m` toward the pole at `p` (from below when `dir = -1`) until
/// the sign flips. Tightens `(m, gm)` along the way. `None` means the root
/// is closer than `MIN_POLE_GAP` to the pole.
fn approach<G>(
    g: &G,
    p: f64,
    dir: f64,
    start: f64,
    sign_lo: f64,
    m: &mut f64,
    gm: &mut f64,
) -> Result<Option<(f64, f64)>, SolverError>
where
    G: Fn(f64) -> Result<f64, SolverError>,
{
    // Sign of g right next to this pole.
    let pole_sign = if dir > 0.0 { sign_lo } else { -sign_lo };
    let mut delta = 1e-3 * (p - start).abs();
    loop {
        let d = delta.max(MIN_POLE_GAP);
        let x = p + dir * d;
        let v = g(x)?;
        if same_sign(v, pole_sign) || v == 0.0 {
            return Ok(Some((x, v)));
        }
        *m = x;
        *gm = v;
        if d <= MIN_POLE_GAP {
            return Ok(None);
        }
        delta *= 1e-3;
    }
}

fn pole_root(p: f64, dir: f64, last: (f64, f64), sign_lo: f64) -> Result<Option<Root>, SolverError> {
    let pole_sign = if dir > 0.0 { sign_lo } else { -sign_lo };
    let (lo, hi, f_lo, f_hi) = if dir > 0.0 {
        (p, last.0, pole_sign, last.1)
    } else {
        (last.0, p, last.1, pole_sign)
    };
    log::warn!("root within {MIN_POLE_GAP:e} of the pole at {p}; reporting the pole");
    Ok(Some(Root {
        x: p,
        bracket: RootBracket::new(lo, hi, f_lo, f_hi)?,
        at_pole: true,
    }))
}

fn exact(x: f64) -> Result<Option<Root>, SolverError> {
    Ok(Some(Root {
        x,
        bracket: RootBracket::new(x - f64::EPSILON * x.abs().max(1.0), x + f64::EPSILON * x.abs().max(1.0), 0.0, 0.0)?,
        at_pole: false,
    }))
}
