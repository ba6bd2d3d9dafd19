use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

use cmtaylor::arith::nt::trial_factor;
use cmtaylor::arith::{rat, rat_int, reduce_mod, QuadRat, Rat};
use cmtaylor::congruence::{detect_quasiperiod, eventual_vanishing, reduce_values, MIN_REPEATS};
use cmtaylor::numeric::{
    almost_holo_value, eval_qseries, generator_values, pi, rational_reconstruct, required_order,
    romik_phi, z7_kappa, BigFloat, CmPoint,
};
use cmtaylor::qseries::{delta, eisenstein};
use cmtaylor::quasimod::{serre_derivation, PhiSpec, WeightedPoly};
use cmtaylor::taylor::{
    derive_recursion, normalized_sequence, normalized_sequence_mod, run_recursion, taylor_value,
    RatPoly, TaylorForm, TaylorPreset,
};
use cmtaylor::ResidueQuad;

use super::{display_unit, oracle_pn};
use crate::report::{Check, Report, Status};
use crate::{CliError, Globals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Example {
    /// Taylor coefficients of Theta at i and their congruences
    #[value(name = "ex4.2")]
    Ex42,
    /// The Cohen-Eisenstein series at (1 + i sqrt 7)/2
    #[value(name = "ex4.4")]
    Ex44,
    /// E12 at (1 + i sqrt 7)/2 and the inert prime 13
    #[value(name = "remark3.3")]
    Remark33,
    /// Romik's d(n) at i/2
    #[value(name = "romik")]
    Romik,
    /// Eventual vanishing and periodicity of d(n) modulo small primes
    #[value(name = "scherer")]
    Scherer,
}

pub fn run(ex: Example, g: &Globals) -> Result<Report, CliError> {
    let mut r = Report::new("reproduce");
    let id = match ex {
        Example::Ex42 => "ex4.2",
        Example::Ex44 => "ex4.4",
        Example::Remark33 => "remark3.3",
        Example::Romik => "romik",
        Example::Scherer => "scherer",
    };
    r.set("example", id);
    match ex {
        Example::Ex42 => ex42(&mut r, g)?,
        Example::Ex44 => ex44(&mut r, g)?,
        Example::Remark33 => remark33(&mut r, g)?,
        Example::Romik => romik(&mut r, g)?,
        Example::Scherer => scherer(&mut r)?,
    }
    Ok(r)
}

fn q(a: (i64, i64), b: (i64, i64), d: u64) -> QuadRat {
    QuadRat::new(rat(a.0, a.1), rat(b.0, b.1), d).expect("squarefree radicand")
}

/// Compares an exact value with its printed counterpart. A mismatch that the
/// independent oracle confirms is a discrepancy in the printed data.
fn value_check(
    name: String,
    printed: &QuadRat,
    computed: &QuadRat,
    oracle: impl FnOnce() -> Result<QuadRat, CliError>,
) -> Check {
    if printed == computed {
        return Check::new(name, Status::Pass, computed.to_string()).paper(printed.to_string());
    }
    match oracle() {
        Ok(o) if o == *computed => Check::new(name, Status::Discrepancy, computed.to_string())
            .paper(printed.to_string())
            .note(format!("oracle: {o}")),
        Ok(o) => Check::new(name, Status::Fail, computed.to_string())
            .paper(printed.to_string())
            .note(format!("oracle: {o}")),
        Err(e) => Check::new(name, Status::Fail, computed.to_string())
            .paper(printed.to_string())
            .note(format!("oracle: {e}")),
    }
}

fn ex42(r: &mut Report, g: &Globals) -> Result<(), CliError> {
    let eps = q((1, 1), (1, 1), 2);
    let printed: [(i64, bool); 12] = [
        (1, false),
        (1, true),
        (1, false),
        (-3, true),
        (17, false),
        (9, true),
        (-111, true),
        (2373, true),
        (12513, false),
        (86481, true),
        (-146079, false),
        (-9806643, true),
    ];
    let preset = TaylorPreset::by_label("i-printed")?;
    let truth = TaylorPreset::by_label("i")?;
    let kappa = preset.kappa.clone().expect("fixed");
    let c = normalized_sequence(&preset, &TaylorForm::Theta, 12)?.values;
    r.line(format!(
        "# c(n) = p_n(t0) kappa^n at t0 = {}, kappa = {kappa}",
        preset.t_eval
    ));
    for (n, ((v, e), got)) in printed.iter().zip(&c).enumerate() {
        let want = if *e {
            eps.scale(&rat_int(*v))
        } else {
            QuadRat::from_int(*v)
        };
        r.check(value_check(format!("c({n})"), &want, got, || {
            // the oracle evaluates at the true singular modulus; the table's convention is its conjugate
            let pn = oracle_pn(&TaylorForm::Theta, n, &CmPoint::i(), 2, g.prec)?;
            debug_assert_eq!(truth.t_eval.conjugate(), preset.t_eval);
            Ok(pn
                .conjugate()
                .checked_mul(&kappa.pow(n as i64).expect("unit"))
                .expect("same field"))
        }));
    }

    let horizon = 200;
    let pattern =
        |p: u64,
         e: u32|
         -> Result<(Vec<ResidueQuad>, Option<cmtaylor::PeriodicityReport>), CliError> {
            let s = normalized_sequence_mod(&preset, &TaylorForm::Theta, horizon + 1, p, e)?;
            let rep = detect_quasiperiod(&s[..horizon], MIN_REPEATS);
            Ok((s, rep))
        };
    let printed_25 = "{1, \\overline{ε, 1, -3ε, -8, 9ε, -11, -2ε, -12, 6ε, -4}^7}";
    for (p, e, paper) in [
        (5, 1, "{1, \\overline{ε, 1}^2} (mod 5)".to_string()),
        (5, 2, format!("{printed_25} (mod 5^2)")),
        (13, 1, format!("{printed_25} (mod 13)")),
    ] {
        let (s, rep) = pattern(p, e)?;
        let unit = display_unit(&preset, p, e);
        let got = rep
            .map(|rep| rep.overline_notation(&s[..horizon], unit.as_ref()))
            .unwrap_or_else(|| "none".into());
        r.check(Check::compare(
            format!("c(n) mod {p}^{e}, first {horizon}"),
            paper,
            got,
            Status::Discrepancy,
        ));
    }
    let (s, rep) = pattern(5, 3)?;
    let b = ResidueQuad::from_int(5, 3, 57).expect("valid");
    let bad = (11..=horizon - 50).find(|&n| s[n] != b * s[n + 50]);
    let found = rep
        .map(|x| {
            format!(
                "detector: c(n+{}) = {} c(n) for n >= {}",
                x.period, x.multiplier, x.preperiod
            )
        })
        .unwrap_or_else(|| "detector: none".into());
    let c = match bad {
        None => Check::new(
            "c(n) = 57 c(n+50) mod 5^3, n >= 11",
            Status::Pass,
            "holds on the first 200",
        ),
        Some(n) => Check::new(
            "c(n) = 57 c(n+50) mod 5^3, n >= 11",
            Status::Discrepancy,
            format!("fails at n = {n}"),
        ),
    };
    r.check(c.paper("holds for n >= 11").note(found));
    Ok(())
}

fn printed_d() -> Vec<QuadRat> {
    [
        (72, -3),
        (-265, -60),
        (1160, 1105),
        (-30705, -6300),
        (366600, 130485),
        (-5323465, -2715900),
        (146660040, 38437065),
        (-2376737265, -1220829660),
        (78627988680, 24402981165),
    ]
    .iter()
    .map(|&(a, b)| q((a, 1), (b, 1), 7))
    .collect()
}

const PRINTED_NORMS: [(i64, &[u64]); 9] = [
    (1, &[3, 3, 569]),
    (1, &[5, 5, 1801]),
    (-1, &[3, 3, 3, 5, 5, 47, 227]),
    (1, &[3, 3, 5, 5, 193, 15313]),
    (1, &[3, 3, 3, 5, 5, 22535131]),
    (-1, &[5, 5, 7, 401, 331934593]),
    (1, &[3, 3, 3, 3, 5, 5, 5514721764001]),
    (-1, &[3, 3, 5, 5, 7, 2797, 1085992448669]),
    (1, &[3, 3, 3, 3, 5, 5, 139, 7154532998265547]),
];

fn factor_string(nm: &Rat) -> String {
    let Some(abs) = nm.numer().magnitude().to_u128().filter(|_| nm.is_integer()) else {
        return nm.to_string();
    };
    let (fs, rest) = trial_factor(abs, 100_000_000);
    let mut parts: Vec<String> = fs
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    if rest != 1 {
        parts.push(format!("{rest}?"));
    }
    let sign = if nm.numer().sign() == Sign::Minus {
        "-"
    } else {
        ""
    };
    format!("{sign}{}", parts.join("*"))
}

fn ex44(r: &mut Report, g: &Globals) -> Result<(), CliError> {
    let z = TaylorPreset::by_label("z7")?;
    let alpha = taylor_value(&z, &TaylorForm::H52, 0)?;
    r.check(value_check(
        "alpha = H(z7)/Theta(z7)^5".into(),
        &q((1065, 800), (-400, 800), 7),
        &alpha,
        || oracle_pn(&TaylorForm::H52, 0, &CmPoint::z7(), 7, g.prec),
    ));
    r.check(Check::compare(
        "Nm(alpha)",
        "2^-10*5^-2*569",
        format_small_rat(&alpha.norm()),
        Status::Discrepancy,
    ));

    let (kf, kappa) = z7_kappa(g.prec.min(60))?;
    r.check(
        Check::new(
            "kappa = 4 pi y0 Theta(z7)^4 / Phi",
            Status::Info,
            kappa.to_string(),
        )
        .note(format!("numerically {}", kf.to_string_digits(20))),
    );
    let z = z.with_kappa(kappa.clone());
    let d = normalized_sequence(&z, &TaylorForm::H52, 9)?.values;
    for (n, (want, got)) in printed_d().iter().zip(&d).enumerate() {
        let (kappa, pref) = (kappa.clone(), z.prefactor.clone());
        r.check(value_check(format!("d({n})"), want, got, || {
            let pn = oracle_pn(&TaylorForm::H52, n, &CmPoint::z7(), 7, g.prec)?;
            Ok(pn
                .checked_mul(&kappa.pow(n as i64).expect("unit"))
                .and_then(|x| x.checked_mul(&pref))
                .expect("same field"))
        }));
    }
    for (n, (dn, (sign, fs))) in printed_d().iter().zip(PRINTED_NORMS).enumerate() {
        let product = fs
            .iter()
            .fold(BigInt::from(sign), |acc, &f| acc * BigInt::from(f));
        let printed = format!("{}{}", if sign < 0 { "-" } else { "" }, group_factors(fs));
        let got = factor_string(&dn.norm());
        let status = if Rat::from_integer(product) == dn.norm() && got == printed {
            Status::Pass
        } else {
            Status::Fail
        };
        r.check(Check::new(format!("Nm(printed d({n}))"), status, got).paper(printed));
    }

    let s = normalized_sequence_mod(&z, &TaylorForm::H52, 1000, 11, 1)?;
    let norms: Vec<ResidueQuad> = s
        .iter()
        .map(|x| ResidueQuad::from_int(11, 1, x.norm() as i64).expect("valid"))
        .collect();
    let got = match detect_quasiperiod(&norms, MIN_REPEATS) {
        Some(rep) => format!(
            "Nm(d(n+{})) = {} Nm(d(n)) for n >= {}",
            rep.period, rep.multiplier, rep.preperiod
        ),
        None => "none within 1000".into(),
    };
    let paper = "Nm(d(n+110)) = 3 Nm(d(n)) for n >= 3";
    let b3 = ResidueQuad::from_int(11, 1, 3).expect("valid");
    let literal = (3..norms.len() - 110).all(|n| norms[n] == b3 * norms[n + 110]);
    r.check(
        Check::compare(
            "Nm(d(n)) mod 11, first 1000",
            paper,
            got,
            Status::Discrepancy,
        )
        .note(format!(
            "literal Nm(d(n)) = 3 Nm(d(n+110)) for n >= 3: {literal}"
        )),
    );
    Ok(())
}

fn group_factors(fs: &[u64]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < fs.len() {
        let j = fs[i..].iter().take_while(|&&x| x == fs[i]).count();
        out.push(if j == 1 {
            fs[i].to_string()
        } else {
            format!("{}^{j}", fs[i])
        });
        i += j;
    }
    out.join("*")
}

/// `2^a*5^b*...` with negative exponents for denominators.
fn format_small_rat(x: &Rat) -> String {
    let split = |n: &BigInt| trial_factor(n.magnitude().to_u128().expect("small"), 1_000_000).0;
    let mut parts: Vec<(u128, i64)> = split(x.denom())
        .into_iter()
        .map(|(p, e)| (p, -(e as i64)))
        .collect();
    parts.extend(split(x.numer()).into_iter().map(|(p, e)| (p, e as i64)));
    parts.sort();
    parts
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn remark33(r: &mut Report, g: &Globals) -> Result<(), CliError> {
    let digits = g.prec.min(60);
    let p = CmPoint::z7();
    let n = required_order(&p, digits + 10, 12);
    let e12 = eval_qseries(&eisenstein(12, n)?, &p, digits)?;
    let dl = eval_qseries(&delta(n), &p, digits)?;
    r.check(Check::compare(
        "E12((1+i sqrt 7)/2)",
        "0.98818418",
        e12.re.to_string_digits(8),
        Status::Fail,
    ));
    let ratio = e12.add(&dl.scale_rat(&rat_int(13))).div(&e12)?;
    let rec = rational_reconstruct(&ratio.re, &BigInt::from(10u64.pow(8)))?;
    r.check(
        Check::compare(
            "(E12 + 13 Delta)(tau0) / omega^12",
            "211934/212625",
            rec.to_string(),
            Status::Fail,
        )
        .note("omega^12 = E12(tau0)"),
    );
    let red = reduce_mod(&QuadRat::from_rat(rec), 13, 1)
        .map(|x| x.a.to_string())
        .unwrap_or_else(|e| e.to_string());
    r.check(Check::compare("reduction mod 13", "6", red, Status::Fail));
    Ok(())
}

fn romik(r: &mut Report, g: &Globals) -> Result<(), CliError> {
    let digits = g.prec.min(60);
    let point = CmPoint::i_half();
    let [th, fv, _] = generator_values(&point, digits)?;
    let th4 = th.pow_u(4);
    let bound = BigInt::from(1000);
    let t0 = rational_reconstruct(&fv.div(&th4)?.re, &bound)?;
    let e2r = rational_reconstruct(
        &almost_holo_value(&WeightedPoly::z(), &point, digits)?
            .div(&th4)?
            .re,
        &bound,
    )?;
    r.check(Check::compare(
        "t0 = F2/Theta^4 at i/2",
        "1/32",
        t0.to_string(),
        Status::Fail,
    ));
    r.check(Check::compare(
        "E2*/Theta^4 at i/2",
        "-3/2",
        e2r.to_string(),
        Status::Fail,
    ));
    let phi = PhiSpec {
        a4: -e2r / rat_int(12),
        a_y: Rat::from_integer(0.into()),
    };
    r.check(Check::new(
        "phi = E2/12 + a Theta^4",
        Status::Info,
        format!("a = {}", phi.a4),
    ));
    let rec = derive_recursion(&serre_derivation(&phi)?)?;
    r.line(format!("# A = {}; B = {}; C = {}", rec.a, rec.b, rec.c));

    let bits = th.bits();
    let bridge = th
        .re
        .pow_u(8)
        .mul(&pi(bits).pow_u(2).mul_int(4))
        .div(&romik_phi(digits)?)?;
    let ok = bridge.close_to(&BigFloat::from_int(32, bits), digits.saturating_sub(15));
    r.check(Check::new(
        "Theta(i/2)^8 4 pi^2 / Phi = 32",
        if ok { Status::Pass } else { Status::Fail },
        bridge.to_string_digits(20),
    ));

    let ps = run_recursion(&rec, &RatPoly::constant(rat_int(1)), 1, 200);
    let vals: Vec<Rat> = ps.iter().map(|p| p.eval_rat(&t0)).collect();
    let d: Vec<Rat> = (0..=100)
        .map(|n| vals[2 * n].clone() * rat_int(32).pow(n as i32))
        .collect();
    for (n, want) in [1, 1, -1, 51, 849, -26199].iter().enumerate() {
        r.check(Check::compare(
            format!("d({n})"),
            want.to_string(),
            d[n].to_string(),
            Status::Fail,
        ));
    }
    let odd = (1..200)
        .step_by(2)
        .find(|&n| !vals[n].is_integer() || vals[n] != Rat::from_integer(0.into()));
    r.check(Check::new(
        "p_n(1/32) = 0 for odd n < 200",
        if odd.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        odd.map(|n| format!("nonzero at n = {n}"))
            .unwrap_or_else(|| "all vanish".into()),
    ));
    let bad = (1..=100).find(|&n| {
        !d[n].is_integer() || {
            let m: BigInt = ((d[n].to_integer() % 5) + 5) % 5;
            m != BigInt::from(if n % 2 == 1 { 1 } else { 4 })
        }
    });
    r.check(
        Check::new(
            "d(n) integral, d(n) = (-1)^(n+1) mod 5 for 1 <= n <= 100",
            if bad.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            bad.map(|n| format!("fails at n = {n}"))
                .unwrap_or_else(|| "holds".into()),
        )
        .paper("d(n) = (-1)^(n+1) mod 5"),
    );
    let vals: Vec<QuadRat> = d.iter().map(|x| QuadRat::from_rat(x.clone())).collect();
    let s5 = reduce_values(&vals, 5, 1)?;
    let signs: Vec<String> = s5
        .iter()
        .take(12)
        .map(|x| ResidueQuad::balanced(x.a, 5).to_string())
        .collect();
    r.line(format!("# d(n) mod 5, n < 12: {}", signs.join(" ")));
    Ok(())
}

fn scherer(r: &mut Report) -> Result<(), CliError> {
    let preset = TaylorPreset::by_label("romik")?;
    let horizon = 300;
    r.line(format!("# d(n) = 32^n p_2n(1/32), n < {horizon}"));
    for p in [3u64, 7, 11, 19, 23] {
        let s = normalized_sequence_mod(&preset, &TaylorForm::Theta, horizon, p, 1)?;
        let c = match eventual_vanishing(&s) {
            Some(v) => Check::new(
                format!("d(n) = 0 mod {p} eventually"),
                Status::Pass,
                format!("from n = {v}"),
            ),
            None => Check::new(
                format!("d(n) = 0 mod {p} eventually"),
                Status::Info,
                format!("not within {horizon}"),
            ),
        };
        r.check(c.paper("yes (p = 3 mod 4)"));
    }
    for p in [5u64, 13, 17, 29] {
        let s = normalized_sequence_mod(&preset, &TaylorForm::Theta, horizon, p, 1)?;
        let c = match detect_quasiperiod(&s, MIN_REPEATS) {
            Some(rep) => Check::new(
                format!("d(n) mod {p} eventually periodic"),
                Status::Pass,
                format!(
                    "preperiod {}, quasiperiod {} with multiplier {}, period {}",
                    rep.preperiod,
                    rep.period,
                    rep.multiplier,
                    rep.unrolled_period
                        .map(|u| u.to_string())
                        .unwrap_or("-".into())
                ),
            ),
            None => Check::new(
                format!("d(n) mod {p} eventually periodic"),
                Status::Info,
                format!("not within {horizon}"),
            ),
        };
        r.check(c.paper("periodic (p = 1 mod 4)"));
    }
    Ok(())
}
