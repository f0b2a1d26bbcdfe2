//! Eigenvalue distributions for generated instances.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SeededRng;
use crate::dense::C64;
use crate::error::{Error, Result};

/// How eigenvalues are drawn.
///
/// Annulus and circle samples use a uniform angle; annulus radii are uniform
/// in area, `r = sqrt(r_min² + u (r_max² − r_min²))`. Pair kinds produce
/// `+μ, −μ` (or `+iμ, −iμ`) with `μ` uniform in the magnitude range; an odd
/// count adds one unpaired positive value at the end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumSpec {
    Annulus { r_min: f64, r_max: f64 },
    RealInterval { a: f64, b: f64 },
    PlusMinusPairs { lo: f64, hi: f64 },
    ImaginaryPairs { lo: f64, hi: f64 },
    Circle { center: C64, radius: f64 },
    Explicit { values: Vec<C64> },
}

impl SpectrumSpec {
    fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::ContractViolation(msg));
        match self {
            Self::Annulus { r_min, r_max } if !(*r_min > 0.0 && r_min <= r_max) => bad(format!(
                "annulus needs 0 < r_min <= r_max, got [{r_min}, {r_max}]"
            )),
            Self::RealInterval { a, b } if !(a <= b && a * b > 0.0) => bad(format!(
                "real interval [{a}, {b}] must be nonempty and exclude 0"
            )),
            Self::PlusMinusPairs { lo, hi } | Self::ImaginaryPairs { lo, hi }
                if !(*lo > 0.0 && lo <= hi) =>
            {
                bad(format!(
                    "pair magnitudes need 0 < lo <= hi, got [{lo}, {hi}]"
                ))
            }
            Self::Circle { center, radius }
                if !(*radius >= 0.0 && (center.norm() - radius).abs() > 1e-12) =>
            {
                bad(format!(
                    "circle |z - {center}| = {radius} passes through or too close to 0"
                ))
            }
            Self::Explicit { values } if values.len() != n => bad(format!(
                "explicit spectrum has {} values for n = {n}",
                values.len()
            )),
            Self::Explicit { values }
                if values
                    .iter()
                    .any(|z| *z == C64::new(0.0, 0.0) || !z.is_finite()) =>
            {
                bad("explicit spectrum contains 0 or a non-finite value".into())
            }
            _ => Ok(()),
        }
    }

    /// `±1, ±2, …, ±⌊n/2⌋`, plus `⌈n/2⌉` when `n` is odd; multiplied by `i`
    /// when `imaginary`. Evenly spaced pairs keep GMRES(n−1) away from
    /// near-exact convergence in a single cycle.
    pub fn integer_pairs(n: usize, imaginary: bool) -> Self {
        let unit = if imaginary {
            C64::new(0.0, 1.0)
        } else {
            C64::new(1.0, 0.0)
        };
        let mut values = Vec::with_capacity(n);
        for k in 1..=n / 2 {
            values.push(unit * k as f64);
            values.push(-unit * k as f64);
        }
        if n % 2 == 1 {
            values.push(unit * (n / 2 + 1) as f64);
        }
        Self::Explicit { values }
    }

    /// Draws `n` nonzero eigenvalues.
    pub fn sample(&self, n: usize, rng: &mut SeededRng) -> Result<Vec<C64>> {
        self.validate(n)?;
        let mut out = Vec::with_capacity(n);
        match self {
            Self::Annulus { r_min, r_max } => {
                for _ in 0..n {
                    let theta = 2.0 * PI * rng.uniform();
                    let r =
                        (r_min * r_min + rng.uniform() * (r_max * r_max - r_min * r_min)).sqrt();
                    out.push(C64::from_polar(r, theta));
                }
            }
            Self::RealInterval { a, b } => {
                for _ in 0..n {
                    out.push(C64::new(a + (b - a) * rng.uniform(), 0.0));
                }
            }
            Self::PlusMinusPairs { lo, hi } | Self::ImaginaryPairs { lo, hi } => {
                let unit = if matches!(self, Self::PlusMinusPairs { .. }) {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 1.0)
                };
                while out.len() + 1 < n {
                    let mu = lo + (hi - lo) * rng.uniform();
                    out.push(unit * mu);
                    out.push(-unit * mu);
                }
                if out.len() < n {
                    out.push(unit * (lo + (hi - lo) * rng.uniform()));
                }
            }
            Self::Circle { center, radius } => {
                for _ in 0..n {
                    let theta = 2.0 * PI * rng.uniform();
                    out.push(center + C64::from_polar(*radius, theta));
                }
            }
            Self::Explicit { values } => out.extend_from_slice(values),
        }
        if out.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::ContractViolation("sampled a zero eigenvalue".into()));
        }
        Ok(out)
    }

    /// Every eigenvalue this spec can produce is real.
    pub fn is_real(&self) -> bool {
        match self {
            Self::RealInterval { .. } | Self::PlusMinusPairs { .. } => true,
            Self::Explicit { values } => values.iter().all(|z| z.im == 0.0),
            Self::Circle { radius, center } => *radius == 0.0 && center.im == 0.0,
            _ => false,
        }
    }

    /// Every eigenvalue this spec can produce is purely imaginary.
    pub fn is_imaginary(&self) -> bool {
        match self {
            Self::ImaginaryPairs { .. } => true,
            Self::Explicit { values } => values.iter().all(|z| z.re == 0.0),
            Self::Circle { radius, center } => *radius == 0.0 && center.re == 0.0,
            _ => false,
        }
    }
}

fn fmt_complex(z: &C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| {
            (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
        });
        let (re, im) = match split {
            Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse::<f64>().ok()?,
        };
        Some(C64::new(re, im))
    } else {
        s.parse::<f64>().ok().map(|x| C64::new(x, 0.0))
    }
}

impl fmt::Display for SpectrumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Annulus { r_min, r_max } => write!(f, "annulus:{r_min},{r_max}"),
            Self::RealInterval { a, b } => write!(f, "interval:{a},{b}"),
            Self::PlusMinusPairs { lo, hi } => write!(f, "pm:{lo},{hi}"),
            Self::ImaginaryPairs { lo, hi } => write!(f, "imag:{lo},{hi}"),
            Self::Circle { center, radius } => {
                write!(f, "circle:{},{},{radius}", center.re, center.im)
            }
            Self::Explicit { values } => {
                let parts: Vec<String> = values.iter().map(fmt_complex).collect();
                write!(f, "list:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for SpectrumSpec {
    type Err = Error;

    /// `annulus:RMIN,RMAX`, `interval:A,B`, `pm:LO,HI`, `imag:LO,HI`,
    /// `circle:CRE,CIM,R` or `list:Z1,Z2,...` with complex entries like `1-2i`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ContractViolation(format!("cannot parse spectrum `{s}`"));
        let (kind, args) = s.split_once(':').ok_or_else(err)?;
        if kind == "list" {
            let values = args
                .split(',')
                .map(parse_complex)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(err)?;
            return Ok(Self::Explicit { values });
        }
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| err())?;
        Ok(match (kind, nums.as_slice()) {
            ("annulus", &[r_min, r_max]) => Self::Annulus { r_min, r_max },
            ("interval", &[a, b]) => Self::RealInterval { a, b },
            ("pm", &[lo, hi]) => Self::PlusMinusPairs { lo, hi },
            ("imag", &[lo, hi]) => Self::ImaginaryPairs { lo, hi },
            ("circle", &[re, im, radius]) => Self::Circle {
                center: C64::new(re, im),
                radius,
            },
            _ => return Err(err()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in [
            "annulus:1,2",
            "interval:1,100",
            "pm:1,2",
            "imag:0.5,3",
            "circle:0,0,1",
            "list:1,-2i,3+4i,-1-0.5i",
        ] {
            let spec: SpectrumSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("annulus:1".parse::<SpectrumSpec>().is_err());
        assert!("blob:1,2".parse::<SpectrumSpec>().is_err());
    }

    #[test]
    fn integer_pairs_layout() {
        let real = SpectrumSpec::integer_pairs(5, false);
        assert_eq!(real.to_string(), "list:1,-1,2,-2,3");
        assert!(real.is_real());
        let imag = SpectrumSpec::integer_pairs(4, true);
        assert_eq!(imag.to_string(), "list:1i,-1i,2i,-2i");
        assert!(imag.is_imaginary());
        assert_eq!(imag.to_string().parse::<SpectrumSpec>().unwrap(), imag);
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("i"), Some(C64::new(0.0, 1.0)));
        assert_eq!(parse_complex("-i"), Some(C64::new(0.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Some(C64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("2.5"), Some(C64::new(2.5, 0.0)));
        assert_eq!(parse_complex("x"), None);
    }

    #[test]
    fn samples_respect_their_region() {
        let mut rng = SeededRng::new(1);
        let ann = SpectrumSpec::Annulus {
            r_min: 1.0,
            r_max: 2.0,
        }
        .sample(200, &mut rng)
        .unwrap();
        assert!(ann.iter().all(|z| (1.0..=2.0).contains(&z.norm())));
        let pm = SpectrumSpec::PlusMinusPairs { lo: 1.0, hi: 2.0 }
            .sample(7, &mut rng)
            .unwrap();
        assert_eq!(pm.len(), 7);
        assert!(pm
            .iter()
            .all(|z| z.im == 0.0 && (1.0..=2.0).contains(&z.re.abs())));
        assert_eq!(pm[0], -pm[1]);
        let im = SpectrumSpec::ImaginaryPairs { lo: 1.0, hi: 2.0 }
            .sample(6, &mut rng)
            .unwrap();
        assert!(im.iter().all(|z| z.re == 0.0));
    }

    #[test]
    fn zero_is_rejected() {
        let mut rng = SeededRng::new(1);
        assert!(SpectrumSpec::RealInterval { a: -1.0, b: 1.0 }
            .sample(3, &mut rng)
            .is_err());
        assert!(SpectrumSpec::Explicit {
            values: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
        }
        .sample(2, &mut rng)
        .is_err());
        assert!(SpectrumSpec::Circle {
            center: C64::new(1.0, 0.0),
            radius: 1.0
        }
        .sample(3, &mut rng)
        .is_err());
        assert!(SpectrumSpec::Annulus {
            r_min: 0.0,
            r_max: 1.0
        }
        .sample(3, &mut rng)
        .is_err());
    }
}
