//! Eventual quasiperiodicity of coefficient sequences modulo prime powers:
//! `s(n + ℓ) ≡ b·s(n) (mod p^A)` for all `n >= μ`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{reduce_mod, ArithError, QuadRat, ResidueQuad};
use crate::taylor::CoeffSeq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("coefficient {index} is not {p}-integral")]
    NotPIntegral { index: usize, p: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Default number of full periods that must be observed.
pub const MIN_REPEATS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub p: u64,
    pub exp: u32,
    pub preperiod: usize,
    pub period: usize,
    pub multiplier: ResidueQuad,
    pub cycle: Vec<ResidueQuad>,
    pub horizon: usize,
    /// `ℓ · ord(b)`, the period of the sequence itself.
    pub unrolled_period: Option<u64>,
    /// First index from which every residue vanishes, if the sequence does.
    pub vanishes_from: Option<usize>,
}

#[derive(Serialize)]
struct ReportJson {
    p: u64,
    #[serde(rename = "A")]
    a: u32,
    preperiod: usize,
    period: usize,
    multiplier: String,
    cycle: Vec<String>,
    horizon: usize,
    unrolled_period: Option<u64>,
    vanishes_from: Option<usize>,
}

impl Serialize for PeriodicityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            p: self.p,
            a: self.exp,
            preperiod: self.preperiod,
            period: self.period,
            multiplier: self.multiplier_string(),
            cycle: self.cycle.iter().map(|r| render_residue(r, None)).collect(),
            horizon: self.horizon,
            unrolled_period: self.unrolled_period,
            vanishes_from: self.vanishes_from,
        }
        .serialize(s)
    }
}

impl PeriodicityReport {
    /// Least nonnegative residue when rational.
    pub fn multiplier_string(&self) -> String {
        match self.multiplier.b {
            0 => self.multiplier.a.to_string(),
            _ => render_residue(&self.multiplier, None),
        }
    }

    /// `{s_0, ..., s_{μ-1}, \overline{a_1, ..., a_ℓ}^b} (mod p^A)`, residues
    /// written as balanced multiples of `unit` where possible.
    pub fn overline_notation(&self, prefix: &[ResidueQuad], unit: Option<&ResidueQuad>) -> String {
        let r = |x: &ResidueQuad| render_residue(x, unit);
        let mut parts: Vec<String> = prefix.iter().take(self.preperiod).map(r).collect();
        let cyc = self.cycle.iter().map(r).collect::<Vec<_>>().join(", ");
        let b = self.multiplier_string();
        parts.push(if b == "1" {
            format!("\\overline{{{cyc}}}")
        } else {
            format!("\\overline{{{cyc}}}^{b}")
        });
        let modulus = if self.exp == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.exp)
        };
        format!("{{{}}} (mod {modulus})", parts.join(", "))
    }
}

/// Balanced representative; `x·u` is written as `x<u>` when `r = x·u` with
/// `x` rational and `u` the given unit (rendered as `ε`).
pub fn render_residue(r: &ResidueQuad, unit: Option<&ResidueQuad>) -> String {
    let m = r.modulus;
    let bal = |v: u64| ResidueQuad::balanced(v, m);
    if r.b == 0 {
        return bal(r.a).to_string();
    }
    if let Some(u) = unit {
        if let Ok(inv) = u.inverse() {
            let x = *r * inv;
            if x.b == 0 {
                return match bal(x.a) {
                    1 => "ε".into(),
                    -1 => "-ε".into(),
                    v => format!("{v}ε"),
                };
            }
        }
    }
    let (a, b) = (bal(r.a), bal(r.b));
    let sq = format!("sqrt({})", r.d);
    let bterm = match b {
        1 => sq,
        -1 => format!("-{sq}"),
        _ => format!("{b}{sq}"),
    };
    if a == 0 {
        bterm
    } else if bterm.starts_with('-') {
        format!("{a}{bterm}")
    } else {
        format!("{a}+{bterm}")
    }
}

/// Componentwise reduction of exact values.
pub fn reduce_values(
    values: &[QuadRat],
    p: u64,
    exp: u32,
) -> Result<Vec<ResidueQuad>, CongruenceError> {
    values
        .iter()
        .enumerate()
        .map(|(index, v)| {
            reduce_mod(v, p, exp).map_err(|e| match e {
                ArithError::NotPIntegral { .. } => CongruenceError::NotPIntegral { index, p },
                e => e.into(),
            })
        })
        .collect()
}

pub fn reduce_sequence(
    seq: &CoeffSeq,
    p: u64,
    exp: u32,
) -> Result<Vec<ResidueQuad>, CongruenceError> {
    reduce_values(&seq.values, p, exp)
}

/// First index from which all residues vanish (`None` if the last one is
/// nonzero).
pub fn eventual_vanishing(residues: &[ResidueQuad]) -> Option<usize> {
    let nz = residues.iter().rposition(|r| !r.is_zero());
    match nz {
        Some(i) if i + 1 == residues.len() => None,
        Some(i) => Some(i + 1),
        None if residues.is_empty() => None,
        None => Some(0),
    }
}

/// Backward scan: smallest `μ` with `s(n+ℓ) = b s(n)` on `[μ, N-ℓ)`.
fn scan_back(s: &[ResidueQuad], l: usize, b: &ResidueQuad) -> usize {
    let n = s.len();
    let mut mu = n - l;
    while mu > 0 && s[mu - 1 + l] == *b * s[mu - 1] {
        mu -= 1;
    }
    mu
}

/// `(μ, b)` for a fixed `ℓ`.
fn best_for_period(s: &[ResidueQuad], l: usize) -> Option<(usize, ResidueQuad)> {
    let n = s.len();
    if l >= n {
        return None;
    }
    let one = ResidueQuad {
        a: 1 % s[0].modulus,
        b: 0,
        d: 1,
        ..s[0]
    };
    let last_unit = (0..n - l).rev().find(|&k| s[k].is_unit());
    if let Some(k) = last_unit {
        let inv = s[k].inverse().ok()?;
        let b = s[k + l] * inv;
        if b.is_unit() {
            let mu = scan_back(s, l, &b);
            if mu <= k {
                return Some((mu, b));
            }
        }
    }
    // only the unit-free tail remains; it must repeat with b = 1
    let mu = scan_back(s, l, &one);
    match last_unit {
        Some(k) if mu <= k => None,
        _ => Some((mu, one)),
    }
}

/// Lexicographically smallest `(μ, ℓ)` such that the quasiperiod holds on
/// `[μ, N)` and at least `min_repeats` full periods are observed.
pub fn detect_quasiperiod(
    residues: &[ResidueQuad],
    min_repeats: usize,
) -> Option<PeriodicityReport> {
    let n = residues.len();
    let min_repeats = min_repeats.max(1);
    if n == 0 {
        return None;
    }
    // valid preperiods for a fixed ℓ are upward closed, so μ(ℓ) decides
    let mut best: Option<(usize, usize, ResidueQuad)> = None;
    for l in 1..=n / min_repeats {
        let Some((mu, b)) = best_for_period(residues, l) else {
            continue;
        };
        if n - mu < min_repeats * l {
            continue;
        }
        if best.as_ref().is_none_or(|(m, _, _)| mu < *m) {
            best = Some((mu, l, b));
        }
        if mu == 0 {
            break;
        }
    }
    let (mu, l, b) = best?;
    let first = residues[0];
    Some(PeriodicityReport {
        p: first.p,
        exp: first.exp,
        preperiod: mu,
        period: l,
        multiplier: b,
        cycle: residues[mu..mu + l].to_vec(),
        horizon: n,
        unrolled_period: b.order().map(|o| o * l as u64),
        vanishes_from: eventual_vanishing(residues),
    })
}

/// First `n` in `[μ, N-ℓ)` violating the report, if any.
pub fn verify_report(residues: &[ResidueQuad], report: &PeriodicityReport) -> Result<(), usize> {
    let (mu, l) = (report.preperiod, report.period);
    if l == 0 || residues.len() < mu + l {
        return Err(mu);
    }
    for k in mu..residues.len() - l {
        if residues[k + l] != report.multiplier * residues[k] {
            return Err(k);
        }
    }
    if residues[mu..mu + l] != report.cycle[..] {
        return Err(mu);
    }
    Ok(())
}

/// `(p-1) p^{A-1} · extra_order`.
pub fn fermat_hint(p: u64, exp: u32, extra_order: u64) -> u64 {
    (p - 1) * p.pow(exp.saturating_sub(1)) * extra_order
}
