use clap::Args;

use cmtaylor::qseries::{delta, e2, eisenstein, eta, f2, h52, theta, QSeries};
use cmtaylor::quasimod::{to_qseries, WeightedPoly};

use super::usage;
use crate::report::Report;
use crate::{CliError, Globals};

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// theta, eta, f2, e2, e<k> (even k >= 4), delta, h52 or poly:<expr in X, Y, Z>
    name: String,
}

pub fn named_series(name: &str, order: usize) -> Result<QSeries, CliError> {
    Ok(match name {
        "theta" => theta(order),
        "eta" => eta(order),
        "f2" => f2(order),
        "e2" => e2(order),
        "delta" => delta(order),
        "h52" => h52(order),
        _ => {
            if let Some(expr) = name.strip_prefix("poly:") {
                let p: WeightedPoly = expr.parse().map_err(usage)?;
                to_qseries(&p, order)
            } else if let Some(k) = name.strip_prefix('e').and_then(|k| k.parse::<i64>().ok()) {
                eisenstein(k, order)?
            } else {
                return Err(usage(format!("unknown series {name:?}")));
            }
        }
    })
}

pub fn run(a: SeriesArgs, g: &Globals) -> Result<Report, CliError> {
    let s = named_series(&a.name, g.order)?;
    let mut r = Report::new("series");
    r.set("name", &a.name);
    r.set("order", g.order);
    r.table(&["exponent", "value"]);
    for (e, c) in s.terms() {
        r.row(vec![e.to_string(), c.to_string()]);
    }
    Ok(r)
}
