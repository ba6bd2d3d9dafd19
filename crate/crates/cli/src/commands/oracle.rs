use std::str::FromStr;

use clap::Args;
use num_bigint::BigInt;

use cmtaylor::numeric::{
    eval_qseries, generator_values, raising, rational_reconstruct, recognize_quad, required_order,
    CmPoint,
};
use cmtaylor::taylor::TaylorForm;

use super::{form_series, usage};
use crate::report::Report;
use crate::{CliError, Globals};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recognize {
    None,
    Rational,
    Quad(u64),
}

impl FromStr for Recognize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Self::None),
            "q" => Ok(Self::Rational),
            _ => s
                .strip_prefix("quad:")
                .and_then(|d| d.parse().ok())
                .filter(|&d: &u64| d > 1)
                .map(Self::Quad)
                .ok_or_else(|| format!("--recognize must be q, quad:<d> or none, got {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// i, i/2, z7 or x+yi with x, y decimals or fractions
    #[arg(long)]
    point: Option<String>,
    /// theta, f2, h52 or poly:<expr in X, Y>
    #[arg(long)]
    form: Option<String>,
    /// largest derivative order
    #[arg(long = "n", value_name = "K")]
    n: Option<usize>,
    /// q: rational, quad:d: element of Q(sqrt d), none (default: by point)
    #[arg(long)]
    recognize: Option<Recognize>,
}

fn default_recognize(p: &CmPoint) -> Recognize {
    match p.label.as_str() {
        "i" => Recognize::Quad(2),
        "z7" => Recognize::Quad(7),
        "i/2" => Recognize::Rational,
        _ => Recognize::None,
    }
}

pub fn run(a: OracleArgs, g: &Globals) -> Result<Report, CliError> {
    let point: CmPoint = g
        .file
        .pick(a.point, "point", "i".to_string())?
        .parse()
        .map_err(usage)?;
    let form: TaylorForm = g.file.pick(a.form, "form", "theta".to_string())?.parse()?;
    let kmax = g.file.pick(a.n, "n", 4usize)?;
    let rec = g
        .file
        .pick_opt(a.recognize, "recognize")?
        .unwrap_or_else(|| default_recognize(&point));
    let prec = g.prec;
    let (_, k2) = form.initial()?;
    let order = required_order(&point, prec + 10, 16 + 2 * kmax as u32);
    let f = form_series(&form, order);
    let [th, _, _] = generator_values(&point, prec)?;
    let digits = prec as usize;

    let mut r = Report::new("oracle");
    r.set("point", &point.label);
    r.set("form", form.label());
    r.set("prec", prec);
    r.set("truncation", order);
    r.line(format!(
        "# point {}, form {} (weight {k2}/2), {prec} digits, q-order {order}",
        point.label,
        form.label()
    ));
    r.line(format!(
        "# f(tau0) = {}",
        eval_qseries(&f, &point, prec)?.to_string_digits(digits)
    ));
    r.line(format!("# Theta(tau0) = {}", th.to_string_digits(digits)));
    r.table(&["n", "raising", "ratio", "recognized"]);
    let bound = BigInt::from(10).pow(prec / 4);
    for n in 0..=kmax {
        let v = raising(&f, k2, n, &point, prec)?;
        let ratio = v.div(&th.pow_u(k2 as u64 + 4 * n as u64))?;
        let exact = match rec {
            Recognize::None => None,
            Recognize::Rational => rational_reconstruct(&ratio.re, &bound)
                .ok()
                .map(|x| x.to_string()),
            Recognize::Quad(d) => recognize_quad(&ratio.re, d, &bound, prec - 5)
                .ok()
                .map(|x| x.to_string()),
        };
        r.row(vec![
            n.to_string(),
            v.to_string_digits(digits),
            ratio.to_string_digits(digits),
            exact.unwrap_or_else(|| "-".into()),
        ]);
    }
    Ok(r)
}
