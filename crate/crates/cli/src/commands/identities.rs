use cmtaylor::identities::identity_suite;

use crate::report::{Check, Report, Status};
use crate::{CliError, Globals};

pub fn run(g: &Globals) -> Result<Report, CliError> {
    let mut r = Report::new("identities");
    r.set("order", g.order);
    for c in identity_suite(g.order) {
        let status = if c.passed { Status::Pass } else { Status::Fail };
        r.check(Check::new(
            c.name,
            status,
            format!("{} to q^{}", c.detail, c.order),
        ));
    }
    Ok(r)
}
