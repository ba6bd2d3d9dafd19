use std::fmt;
use std::str::FromStr;

use super::{dehomogenize, derive_recursion, RatPoly, Recursion, TaylorError};
use crate::arith::{rat, QuadRat};
use crate::quasimod::{serre_derivation_symbolic, PhiSpec, WeightedPoly};

/// Form whose Taylor coefficients are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaylorForm {
    Theta,
    F2,
    H52,
    Poly(WeightedPoly),
}

impl TaylorForm {
    pub fn poly(&self) -> WeightedPoly {
        match self {
            Self::Theta => WeightedPoly::x(),
            Self::F2 => WeightedPoly::y(),
            Self::H52 => WeightedPoly::h52(),
            Self::Poly(p) => p.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Theta => "theta".into(),
            Self::F2 => "f2".into(),
            Self::H52 => "h52".into(),
            Self::Poly(p) => format!("poly:{p}"),
        }
    }

    /// `(p_0, k2)`.
    pub fn initial(&self) -> Result<(RatPoly, u32), TaylorError> {
        let p = self.poly();
        let k2 = p
            .homogeneous_k2()
            .ok_or_else(|| TaylorError::NotModular(p.to_string()))?;
        Ok((dehomogenize(&p, k2)?, k2))
    }
}

impl FromStr for TaylorForm {
    type Err = TaylorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theta" => Ok(Self::Theta),
            "f2" => Ok(Self::F2),
            "h52" => Ok(Self::H52),
            _ => match s.strip_prefix("poly:") {
                Some(e) => Ok(Self::Poly(e.parse()?)),
                None => Err(TaylorError::UnknownForm(s.into())),
            },
        }
    }
}

impl fmt::Display for TaylorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Everything needed to turn `p_n` into normalized coefficients at one
/// CM point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorPreset {
    pub label: String,
    pub phi: PhiSpec,
    pub t_eval: QuadRat,
    /// Per-step scale; `None` when it has not been determined.
    pub kappa: Option<QuadRat>,
    pub stride: usize,
    pub prefactor: QuadRat,
    pub prefactor_note: String,
    pub default_form: TaylorForm,
}

fn quad(a: (i64, i64), b: (i64, i64), d: u64) -> QuadRat {
    QuadRat::new(rat(a.0, a.1), rat(b.0, b.1), d).expect("squarefree")
}

impl TaylorPreset {
    pub const LABELS: [&'static str; 4] = ["i", "i-printed", "romik", "z7"];

    pub fn by_label(label: &str) -> Result<Self, TaylorError> {
        let kappa_i = quad((6, 1), (-4, 1), 2);
        let one = QuadRat::from_int(1);
        let p = match label {
            "i" => Self {
                label: label.into(),
                phi: PhiSpec::serre(),
                t_eval: quad((17, 16), (-12, 16), 2),
                kappa: Some(kappa_i),
                stride: 1,
                prefactor: one,
                prefactor_note: "c(n) = p_n(t0) (2(3-2sqrt2))^n at tau0 = i".into(),
                default_form: TaylorForm::Theta,
            },
            "i-printed" => Self {
                label: label.into(),
                phi: PhiSpec::serre(),
                t_eval: quad((17, 16), (12, 16), 2),
                kappa: Some(kappa_i),
                stride: 1,
                prefactor: one,
                prefactor_note: "Galois-conjugate point; reproduces the printed c(n) table".into(),
                default_form: TaylorForm::Theta,
            },
            "romik" => Self {
                label: label.into(),
                phi: PhiSpec::romik(),
                t_eval: quad((1, 32), (0, 1), 1),
                kappa: Some(QuadRat::from_int(32)),
                stride: 2,
                prefactor: one,
                prefactor_note: "d(n) = 32^n p_{2n}(1/32) at tau0 = i/2".into(),
                default_form: TaylorForm::Theta,
            },
            "z7" => Self {
                label: label.into(),
                phi: PhiSpec::z7(),
                t_eval: quad((-127, 16), (48, 16), 7),
                kappa: None,
                stride: 1,
                prefactor: quad((480 * 8, 1), (480 * 3, 1), 7),
                prefactor_note:
                    "d(n) = 480(8+3sqrt7) kappa^n q_n(t0); kappa is resolved numerically".into(),
                default_form: TaylorForm::H52,
            },
            _ => return Err(TaylorError::UnknownPreset(label.into())),
        };
        Ok(p)
    }

    pub fn with_kappa(mut self, kappa: QuadRat) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn recursion(&self) -> Result<Recursion, TaylorError> {
        derive_recursion(&serre_derivation_symbolic(&self.phi)?)
    }

    /// Doubled weight of the default form.
    pub fn k2(&self) -> u32 {
        self.default_form.initial().map_or(0, |(_, k)| k)
    }
}

impl FromStr for TaylorPreset {
    type Err = TaylorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::by_label(s)
    }
}
