pub mod congruence;
pub mod identities;
pub mod oracle;
pub mod reproduce;
pub mod series;
pub mod taylor;

use num_bigint::BigInt;

use cmtaylor::arith::{rat_int, reduce_mod, QuadRat};
use cmtaylor::numeric::{
    generator_values, raising, rational_reconstruct, recognize_quad, required_order, z7_kappa,
    CmPoint,
};
use cmtaylor::qseries::QSeries;
use cmtaylor::quasimod::to_qseries;
use cmtaylor::taylor::{TaylorForm, TaylorPreset};
use cmtaylor::ResidueQuad;

use crate::config::ConfigFile;
use crate::CliError;

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Preset by label; `z7` gets its κ from the oracle unless one is given.
pub fn resolve_preset(
    label: &str,
    kappa: Option<&str>,
    prec: u32,
) -> Result<TaylorPreset, CliError> {
    let mut preset = TaylorPreset::by_label(label)?;
    if let Some(k) = kappa {
        let k: QuadRat = k
            .parse()
            .map_err(|e| usage(format!("--kappa {k:?}: {e}")))?;
        preset = preset.with_kappa(k);
    } else if preset.kappa.is_none() {
        let (_, k) = z7_kappa(prec.min(60))?;
        preset = preset.with_kappa(k);
    }
    Ok(preset)
}

pub struct Selection {
    pub preset: TaylorPreset,
    pub form: TaylorForm,
}

/// Reads `--preset`, `--form` and `--kappa` with config-file fallbacks.
pub fn select(
    file: &ConfigFile,
    preset: Option<String>,
    form: Option<String>,
    kappa: Option<String>,
    prec: u32,
) -> Result<Selection, CliError> {
    let label = file.pick(preset, "preset", "i".to_string())?;
    let kappa = file.pick_opt(kappa, "kappa")?;
    let preset = resolve_preset(&label, kappa.as_deref(), prec)?;
    let form = match file.pick_opt(form, "form")? {
        Some(f) => f.parse::<TaylorForm>()?,
        None => preset.default_form.clone(),
    };
    Ok(Selection { preset, form })
}

pub fn form_series(form: &TaylorForm, order: usize) -> QSeries {
    to_qseries(&form.poly(), order)
}

/// `ε = 1 + √2` modulo `p^exp` when the values live in `Q(√2)`.
pub fn display_unit(preset: &TaylorPreset, p: u64, exp: u32) -> Option<ResidueQuad> {
    (preset.t_eval.d() == 2)
        .then(|| {
            reduce_mod(
                &QuadRat::new(rat_int(1), rat_int(1), 2).expect("valid"),
                p,
                exp,
            )
            .ok()
        })
        .flatten()
}

/// The oracle's `p_n(t₀)`: `∂ⁿf(τ₀) / Θ(τ₀)^{k2+4n}` recognized in `Q(√d)`
/// (`d = 1` for rationals).
pub fn oracle_pn(
    form: &TaylorForm,
    n: usize,
    point: &CmPoint,
    d: u64,
    prec: u32,
) -> Result<QuadRat, CliError> {
    let (_, k2) = form.initial()?;
    let f = form_series(form, required_order(point, prec + 10, 16 + 2 * n as u32));
    let v = raising(&f, k2, n, point, prec)?;
    let [th, _, _] = generator_values(point, prec)?;
    let ratio = v.div(&th.pow_u(k2 as u64 + 4 * n as u64))?;
    let bound = BigInt::from(10).pow(prec / 4);
    if d == 1 {
        Ok(QuadRat::from_rat(rational_reconstruct(&ratio.re, &bound)?))
    } else {
        Ok(recognize_quad(&ratio.re, d, &bound, prec - 5)?)
    }
}
