//! Grid bracketing and bisection for residuals with domain holes.

/// A sign change of `f` between `lo` and `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Scans `[start, end]` with the given step. Points where `f` returns `None`
/// break the scan, so no bracket ever straddles a domain hole. An exact zero
/// on a grid point yields a degenerate bracket `lo == hi`.
pub fn scan_brackets<F>(f: F, start: f64, end: f64, step: f64) -> Vec<Bracket>
where
    F: Fn(f64) -> Option<f64>,
{
    assert!(step > 0.0 && end > start, "invalid scan window");
    let count = ((end - start) / step).ceil() as usize;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=count {
        let x = if i == count { end } else { start + i as f64 * step };
        let fx = f(x).filter(|v| v.is_finite());
        match (prev, fx) {
            (Some((xp, fp)), Some(fv)) => {
                if fv == 0.0 {
                    out.push(Bracket { lo: x, hi: x, f_lo: 0.0, f_hi: 0.0 });
                } else if fp != 0.0 && (fp < 0.0) != (fv < 0.0) {
                    out.push(Bracket { lo: xp, hi: x, f_lo: fp, f_hi: fv });
                }
            }
            (None, Some(0.0)) => {
                out.push(Bracket { lo: x, hi: x, f_lo: 0.0, f_hi: 0.0 });
            }
            _ => {}
        }
        prev = fx.map(|v| (x, v));
    }
    out
}

/// Bisection inside a bracket until the interval is narrower than `tol`.
/// Returns `None` if `f` leaves its domain at a midpoint.
pub fn bisect<F>(f: F, bracket: Bracket, tol: f64) -> Option<f64>
where
    F: Fn(f64) -> Option<f64>,
{
    let Bracket { mut lo, mut hi, mut f_lo, .. } = bracket;
    if lo == hi {
        return Some(lo);
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Every root of `f` in `[start, end]`, in increasing order.
pub fn find_roots<F>(f: F, start: f64, end: f64, step: f64, tol: f64) -> Vec<f64>
where
    F: Fn(f64) -> Option<f64>,
{
    scan_brackets(&f, start, end, step)
        .into_iter()
        .filter_map(|b| bisect(&f, b, tol))
        .collect()
}
