use clap::Args;

use cmtaylor::congruence::{detect_quasiperiod, fermat_hint, render_residue, MIN_REPEATS};
use cmtaylor::taylor::normalized_sequence_mod;

use super::{display_unit, select, usage};
use crate::modspec::ModSpec;
use crate::report::Report;
use crate::{CliError, Globals};

#[derive(Debug, Args)]
pub struct CongruenceArgs {
    /// i, i-printed, romik or z7
    #[arg(long)]
    preset: Option<String>,
    /// theta, f2, h52 or poly:<expr in X, Y>
    #[arg(long)]
    form: Option<String>,
    /// modulus p^A with p an odd prime
    #[arg(long = "mod", value_name = "p^A")]
    modulus: Option<ModSpec>,
    /// number of coefficients examined
    #[arg(long)]
    horizon: Option<usize>,
    /// full periods that must be observed
    #[arg(long)]
    min_repeats: Option<usize>,
    /// normalizing constant (z7 resolves it numerically otherwise)
    #[arg(long)]
    kappa: Option<String>,
}

pub fn run(a: CongruenceArgs, g: &Globals) -> Result<Report, CliError> {
    let sel = select(&g.file, a.preset, a.form, a.kappa, g.prec)?;
    let m = g
        .file
        .pick_opt(a.modulus, "mod")?
        .ok_or_else(|| usage("congruence needs --mod p^A"))?;
    let horizon = g.file.pick(a.horizon, "horizon", 200usize)?;
    let min_repeats = g.file.pick(a.min_repeats, "min_repeats", MIN_REPEATS)?;
    if horizon < 8 || min_repeats == 0 {
        return Err(usage(
            "--horizon must be at least 8 and --min-repeats positive",
        ));
    }
    let s = normalized_sequence_mod(&sel.preset, &sel.form, horizon, m.p, m.exp)?;
    let unit = display_unit(&sel.preset, m.p, m.exp);

    let mut r = Report::new("congruence");
    r.csv_only_table = true;
    r.set("preset", &sel.preset.label);
    r.set("form", sel.form.label());
    r.line(format!(
        "# {} at preset {}, mod {m}, horizon {horizon}, fermat hint {}",
        sel.form.label(),
        sel.preset.label,
        fermat_hint(m.p, m.exp, 1)
    ));
    r.table(&[
        "p",
        "A",
        "preperiod",
        "period",
        "multiplier",
        "horizon",
        "unrolled_period",
        "vanishes_from",
        "cycle",
    ]);
    match detect_quasiperiod(&s, min_repeats) {
        Some(rep) => {
            r.line(rep.overline_notation(&s, unit.as_ref()));
            r.line(format!(
                "# preperiod {}, period {}, multiplier {}, unrolled period {}",
                rep.preperiod,
                rep.period,
                rep.multiplier,
                rep.unrolled_period
                    .map(|u| u.to_string())
                    .unwrap_or("-".into())
            ));
            if let Some(v) = rep.vanishes_from {
                r.line(format!("# vanishes from n = {v}"));
            }
            let json = serde_json::to_value(&rep).expect("serializable");
            for (k, v) in json.as_object().expect("object") {
                r.data.insert(k.clone(), v.clone());
            }
            r.set("found", true);
            let opt = |o: Option<u64>| o.map(|v| v.to_string()).unwrap_or_default();
            r.row(vec![
                rep.p.to_string(),
                rep.exp.to_string(),
                rep.preperiod.to_string(),
                rep.period.to_string(),
                rep.multiplier_string(),
                rep.horizon.to_string(),
                opt(rep.unrolled_period),
                opt(rep.vanishes_from.map(|v| v as u64)),
                rep.cycle
                    .iter()
                    .map(|c| render_residue(c, None))
                    .collect::<Vec<_>>()
                    .join(" "),
            ]);
        }
        None => {
            r.line(format!(
                "no quasiperiod with {min_repeats} repetitions within {horizon} terms"
            ));
            r.set("found", false);
            r.set("p", m.p);
            r.set("A", m.exp);
            r.set("horizon", horizon);
        }
    }
    Ok(r)
}
