use clap::Args;

use cmtaylor::taylor::{normalized_sequence, normalized_sequence_mod};

use super::select;
use crate::modspec::Mode;
use crate::report::Report;
use crate::{CliError, Globals};

#[derive(Debug, Args)]
pub struct TaylorArgs {
    /// i, i-printed, romik or z7
    #[arg(long)]
    preset: Option<String>,
    /// theta, f2, h52 or poly:<expr in X, Y> (default: the preset's form)
    #[arg(long)]
    form: Option<String>,
    /// number of coefficients
    #[arg(long)]
    count: Option<usize>,
    /// exact or mod:p^A
    #[arg(long)]
    mode: Option<Mode>,
    /// normalizing constant, e.g. "(8)+(3)sqrt(7)" (z7 resolves it numerically otherwise)
    #[arg(long)]
    kappa: Option<String>,
}

pub fn run(a: TaylorArgs, g: &Globals) -> Result<Report, CliError> {
    let sel = select(&g.file, a.preset, a.form, a.kappa, g.prec)?;
    let count = g.file.pick(a.count, "count", 12usize)?;
    let mode = g.file.pick(a.mode, "mode", Mode::Exact)?;
    let (preset, form) = (&sel.preset, &sel.form);
    let rec = preset.recursion()?;
    let kappa = preset.kappa.as_ref().expect("resolved");

    let mut r = Report::new("taylor");
    r.line(format!(
        "# preset {}: t0 = {}, kappa = {kappa}, stride {}",
        preset.label, preset.t_eval, preset.stride
    ));
    r.line(format!(
        "# form {} (weight {}/2)",
        form.label(),
        preset_k2(form)?
    ));
    r.line(format!("# A = {}; B = {}; C = {}", rec.a, rec.b, rec.c));
    r.line(format!("# {}", preset.prefactor_note));
    r.set("preset", &preset.label);
    r.set("form", form.label());
    r.set("t0", preset.t_eval.to_string());
    r.set("kappa", kappa.to_string());
    r.set("prefactor", preset.prefactor.to_string());
    r.set(
        "recursion",
        serde_json::json!({"A": rec.a.to_string(), "B": rec.b.to_string(), "C": rec.c.to_string()}),
    );
    r.table(&["n", "value"]);
    match mode {
        Mode::Exact => {
            r.set("mode", "exact");
            let seq = normalized_sequence(preset, form, count)?;
            for (n, v) in seq.values.iter().enumerate() {
                r.row(vec![n.to_string(), v.to_string()]);
            }
        }
        Mode::Mod(m) => {
            r.set("mode", format!("mod:{m}"));
            let seq = normalized_sequence_mod(preset, form, count, m.p, m.exp)?;
            for (n, v) in seq.iter().enumerate() {
                r.row(vec![n.to_string(), v.to_string()]);
            }
        }
    }
    Ok(r)
}

fn preset_k2(form: &cmtaylor::taylor::TaylorForm) -> Result<u32, CliError> {
    Ok(form.initial()?.1)
}
