use std::ops::RangeInclusive;
use std::str::FromStr;

use num_integer::Integer as _;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::radial::radial_expansion;
use super::GfSpec;
use crate::error::{Error, Result};
use crate::logpower::{evaluate_expansion, transfer_asymptotic, AsymTerm, AsymptoticExpansion, Exponent, LogPowerMonomial};
use crate::numerics::{Precision, RootOfUnity};
use crate::par::{map_range, map_slice, Exec};

/// Coefficient asymptotics of f through n^{−depth}, summing the transfers of
/// the radial expansions at every ζ of order ≤ `ell_max`.
pub fn assemble(spec: &GfSpec, ell_max: u64, depth: Exponent, p: Precision) -> Result<AsymptoticExpansion> {
    assemble_with(spec, ell_max, depth, p, Exec::Parallel)
}

/// [`assemble`] with an explicit execution mode; roots are processed
/// independently and merged in (β, ζ, j) order.
pub fn assemble_with(spec: &GfSpec, ell_max: u64, depth: Exponent, p: Precision, exec: Exec) -> Result<AsymptoticExpansion> {
    if ell_max == 0 {
        return Err(Error::InvalidArgument("ell_max must be ≥ 1".into()));
    }
    let roots = RootOfUnity::up_to_order(ell_max);
    let per_root = map_slice(exec, &roots, |&zeta| root_terms(spec, zeta, depth, p));
    let mut terms = Vec::new();
    let mut den = depth.denom();
    for r in per_root {
        let (t, d) = r?;
        terms.extend(t);
        den = den.lcm(&d);
    }
    Ok(AsymptoticExpansion::from_terms(terms).with_error_beta(Some(depth + Exponent::new(1, den))))
}

/// Transferred terms with β ≤ depth at one root, and the lcm of the
/// exponent denominators seen there.
fn root_terms(spec: &GfSpec, zeta: RootOfUnity, depth: Exponent, p: Precision) -> Result<(Vec<AsymTerm>, i64)> {
    let local = radial_expansion(spec, zeta, depth, p)?;
    let mut out = Vec::new();
    let mut den = 1i64;
    for (alpha, k, c) in local.terms() {
        den = den.lcm(&alpha.denom());
        if k == 0 && alpha.is_integer() && !alpha.is_negative() {
            continue;
        }
        let steps = (depth - alpha).floor();
        if steps < 1 {
            continue;
        }
        let m = LogPowerMonomial::new(zeta, alpha, k, c.clone());
        let e = transfer_asymptotic(&m, steps as usize, p)?;
        out.extend(e.truncated(depth).terms().iter().cloned());
    }
    Ok((out, den))
}

/// How residuals are scaled in an error profile:
/// (exact/approx − 1)·n^power/(log n)^log_power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scaling {
    pub power: i32,
    pub log_power: i32,
}

impl Scaling {
    pub const NONE: Scaling = Scaling { power: 0, log_power: 0 };

    pub fn apply(&self, rel: &Float, n: u64, p: Precision) -> Float {
        let b = p.bits();
        let nf = p.float(n);
        let mut v = Float::with_val(b, rel * Float::with_val(b, (&nf).pow(self.power)));
        if self.log_power != 0 {
            v /= Float::with_val(b, nf.ln_ref()).pow(self.log_power);
        }
        v
    }
}

impl FromStr for Scaling {
    type Err = Error;

    /// "none", "n3", "n4log3", …
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown scaling {s:?}"));
        if s == "none" {
            return Ok(Self::NONE);
        }
        let rest = s.strip_prefix('n').ok_or_else(bad)?;
        let (pw, lg) = match rest.split_once("log") {
            Some((a, b)) => (a, b),
            None => (rest, "0"),
        };
        Ok(Self {
            power: pw.parse().map_err(|_| bad())?,
            log_power: lg.parse().map_err(|_| bad())?,
        })
    }
}

/// One row of an error profile.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub n: u64,
    pub exact: Float,
    pub approx: Float,
    pub scaled: Float,
}

/// Compares exact coefficients with the real part of an expansion for each
/// n in `ns`; `exact[n]` is [zⁿ]f.
pub fn error_profile(
    exact: &[Rational],
    e: &AsymptoticExpansion,
    ns: RangeInclusive<u64>,
    scaling: Scaling,
    p: Precision,
    exec: Exec,
) -> Vec<ProfileRow> {
    let b = p.bits();
    let start = *ns.start();
    let end = (*ns.end()).min(exact.len() as u64 - 1);
    if end < start {
        return Vec::new();
    }
    map_range(exec, 0..(end - start + 1) as usize, |i| {
        let n = start + i as u64;
        let ex = Float::with_val(b, &exact[n as usize]);
        let approx = evaluate_expansion(e, n, p).re;
        let rel = Float::with_val(b, &ex / &approx) - 1u32;
        ProfileRow {
            n,
            scaled: scaling.apply(&rel, n, p),
            exact: ex,
            approx,
        }
    })
}
