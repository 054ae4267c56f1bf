//! Evaluation of parsed expressions over a fixed prime, rendering, and the
//! optional cross-check against exact big-integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use padic::{add, distance, mul, negate, valuation_bound, DistanceBound, Prime, Zp};
use padic_oracle::{reduce_mod_power, valuation};
use serde_json::json;

use crate::parser::Expr;

/// Everything an evaluation needs besides the expression itself.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub prime: Prime<BigUint>,
    pub digits: usize,
    pub format: OutputFormat,
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Pretty,
    Json,
}

/// Rejected configuration; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    NotPrime(String),
    ZeroDigits,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::NotPrime(p) => write!(f, "--prime {p} is not a prime"),
            ConfigError::ZeroDigits => write!(f, "--digits must be at least 1"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl CliConfig {
    /// Validates the modulus and precision. `digits` must be at least 1 and
    /// `prime` must actually be prime.
    pub fn new(
        prime: BigUint,
        digits: usize,
        format: OutputFormat,
        verify: bool,
    ) -> Result<Self, ConfigError> {
        if digits == 0 {
            return Err(ConfigError::ZeroDigits);
        }
        let shown = prime.to_string();
        let prime = Prime::new(prime).map_err(|_| ConfigError::NotPrime(shown))?;
        Ok(CliConfig { prime, digits, format, verify })
    }
}

/// The semantic result of one expression, before rendering.
pub enum Evaluated {
    Stream(Zp),
    Valuation(DistanceBound),
    Distance(DistanceBound),
}

/// Builds the lazy stream for a stream-valued (sub)expression.
fn stream_of(expr: &Expr, cfg: &CliConfig) -> Zp {
    match expr {
        Expr::IntLit(z) => {
            Zp::embed_int(&cfg.prime, z).expect("BigUint scalar absorbs any literal")
        }
        Expr::Add(a, b) => add(&stream_of(a, cfg), &stream_of(b, cfg)),
        Expr::Mul(a, b) => mul(&stream_of(a, cfg), &stream_of(b, cfg)),
        Expr::Neg(a) => negate(&stream_of(a, cfg)),
        Expr::Val(_) | Expr::Dist(_, _) => {
            unreachable!("the grammar only admits queries at the top level")
        }
    }
}

/// Evaluates a parsed expression. Never fails: the parser already rejected
/// anything this function cannot handle.
pub fn eval(expr: &Expr, cfg: &CliConfig) -> Evaluated {
    match expr {
        Expr::Val(inner) => {
            Evaluated::Valuation(valuation_bound(&stream_of(inner, cfg), cfg.digits))
        }
        Expr::Dist(a, b) => Evaluated::Distance(distance(
            &stream_of(a, cfg),
            &stream_of(b, cfg),
            cfg.digits,
        )),
        _ => Evaluated::Stream(stream_of(expr, cfg)),
    }
}

/// Exact integer value of a stream-valued expression — the independent
/// verification path. Works in plain big-integer arithmetic and never
/// touches the streams.
fn exact_int(expr: &Expr) -> BigInt {
    match expr {
        Expr::IntLit(z) => z.clone(),
        Expr::Add(a, b) => exact_int(a) + exact_int(b),
        Expr::Mul(a, b) => exact_int(a) * exact_int(b),
        Expr::Neg(a) => -exact_int(a),
        Expr::Val(_) | Expr::Dist(_, _) => {
            unreachable!("queries are handled before exact evaluation")
        }
    }
}

/// What a valuation/distance query must answer for the exact integer `z`:
/// the valuation capped by the probe depth.
fn expected_bound(z: &BigInt, p: &BigUint, probe: usize) -> DistanceBound {
    match valuation(z, p) {
        Some(v) if v < probe => DistanceBound::Exact(v),
        _ => DistanceBound::AtMost(probe),
    }
}

/// A rendered answer plus the verification verdict (when requested).
pub struct Rendered {
    pub text: String,
    pub verified: Option<bool>,
}

/// Evaluates, renders in the configured format, and (optionally) verifies
/// against exact big-integer arithmetic.
pub fn run(expr: &Expr, cfg: &CliConfig) -> Rendered {
    let p = cfg.prime.to_biguint();
    match eval(expr, cfg) {
        Evaluated::Stream(s) => {
            let verified = cfg.verify.then(|| {
                s.truncate(cfg.digits) == reduce_mod_power(&exact_int(expr), &p, cfg.digits)
            });
            let text = match cfg.format {
                OutputFormat::Pretty => {
                    let modulus = p.pow(cfg.digits as u32);
                    format!(
                        "{} = {} mod {}{}",
                        s.format_truncated(cfg.digits),
                        s.truncate(cfg.digits),
                        modulus,
                        verdict_suffix(verified),
                    )
                }
                OutputFormat::Json => {
                    let form = s
                        .to_serialized(cfg.digits)
                        .expect("u64-sized prime was validated at configuration");
                    let mut value = serde_json::to_value(&form).expect("plain struct");
                    attach_verdict(&mut value, verified);
                    value.to_string()
                }
            };
            Rendered { text, verified }
        }
        Evaluated::Valuation(bound) => {
            let verified = cfg.verify.then(|| {
                let exact = exact_int(unwrap_val(expr));
                bound == expected_bound(&exact, &p, cfg.digits)
            });
            let text = match cfg.format {
                OutputFormat::Pretty => {
                    let shown = match bound {
                        DistanceBound::Exact(i) => format!("v = {i}"),
                        DistanceBound::AtMost(n) => format!("v >= {n}"),
                    };
                    format!("{shown}{}", verdict_suffix(verified))
                }
                OutputFormat::Json => {
                    let mut value = bound_json("valuation", bound);
                    attach_verdict(&mut value, verified);
                    value.to_string()
                }
            };
            Rendered { text, verified }
        }
        Evaluated::Distance(bound) => {
            let verified = cfg.verify.then(|| {
                let (lhs, rhs) = unwrap_dist(expr);
                let diff = exact_int(lhs) - exact_int(rhs);
                if diff.is_zero() {
                    bound == DistanceBound::AtMost(cfg.digits)
                } else {
                    bound == expected_bound(&diff, &p, cfg.digits)
                }
            });
            let text = match cfg.format {
                OutputFormat::Pretty => format!("{bound}{}", verdict_suffix(verified)),
                OutputFormat::Json => {
                    let mut value = bound_json("distance", bound);
                    attach_verdict(&mut value, verified);
                    value.to_string()
                }
            };
            Rendered { text, verified }
        }
    }
}

fn unwrap_val(expr: &Expr) -> &Expr {
    match expr {
        Expr::Val(inner) => inner,
        _ => unreachable!("caller matched on Evaluated::Valuation"),
    }
}

fn unwrap_dist(expr: &Expr) -> (&Expr, &Expr) {
    match expr {
        Expr::Dist(a, b) => (a, b),
        _ => unreachable!("caller matched on Evaluated::Distance"),
    }
}

fn verdict_suffix(verified: Option<bool>) -> &'static str {
    match verified {
        Some(true) => " [verify: OK]",
        Some(false) => " [verify: FAIL]",
        None => "",
    }
}

fn attach_verdict(value: &mut serde_json::Value, verified: Option<bool>) {
    if let Some(ok) = verified {
        value["verify"] = json!(if ok { "ok" } else { "fail" });
    }
}

fn bound_json(query: &str, bound: DistanceBound) -> serde_json::Value {
    match bound {
        DistanceBound::Exact(i) => json!({"query": query, "kind": "exact", "exponent": i}),
        DistanceBound::AtMost(n) => json!({"query": query, "kind": "at_most", "exponent": n}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn cfg(p: u64, digits: usize, format: OutputFormat, verify: bool) -> CliConfig {
        CliConfig::new(BigUint::from(p), digits, format, verify).unwrap()
    }

    #[test]
    fn pretty_stream_output() {
        let out = run(&parse("3+4").unwrap(), &cfg(5, 4, OutputFormat::Pretty, false));
        assert_eq!(out.text, "…0012 (base 5) = 7 mod 625");

        let out = run(&parse("-1").unwrap(), &cfg(2, 4, OutputFormat::Pretty, false));
        assert_eq!(out.text, "…1111 (base 2) = 15 mod 16");
    }

    #[test]
    fn pretty_distance_output() {
        let out = run(&parse("d(3, 28)").unwrap(), &cfg(5, 8, OutputFormat::Pretty, false));
        assert_eq!(out.text, "p^-2");

        let out = run(&parse("d(4, 4)").unwrap(), &cfg(5, 8, OutputFormat::Pretty, false));
        assert_eq!(out.text, "<= p^-8");
    }

    #[test]
    fn pretty_valuation_output() {
        let out = run(&parse("v(50)").unwrap(), &cfg(5, 8, OutputFormat::Pretty, false));
        assert_eq!(out.text, "v = 2");

        let out = run(&parse("v(0)").unwrap(), &cfg(5, 8, OutputFormat::Pretty, false));
        assert_eq!(out.text, "v >= 8");
    }

    #[test]
    fn json_stream_output_uses_serialized_form() {
        let out = run(&parse("3+4").unwrap(), &cfg(5, 4, OutputFormat::Json, false));
        let value: serde_json::Value = out.text.parse().unwrap();
        assert_eq!(
            value,
            json!({"p": 5, "digits_le": [2, 1, 0, 0], "truncated_at": 4})
        );
    }

    #[test]
    fn verification_passes_on_correct_arithmetic() {
        for src in ["3+4", "-(2+3)*41", "v(250)", "d(3, 28)", "0*-17", "d(7, 7)"] {
            let out = run(&parse(src).unwrap(), &cfg(5, 12, OutputFormat::Pretty, true));
            assert_eq!(out.verified, Some(true), "verify failed for {src}: {}", out.text);
            assert!(out.text.ends_with("[verify: OK]"));
        }
    }

    #[test]
    fn large_literals_and_big_primes() {
        let c = cfg(65537, 6, OutputFormat::Pretty, true);
        let out = run(&parse("123456789123456789 * 987654321987654321").unwrap(), &c);
        assert_eq!(out.verified, Some(true));
        assert!(out.text.contains("(base 65537)"));
    }

    #[test]
    fn config_rejects_zero_digits_and_composites() {
        assert_eq!(
            CliConfig::new(BigUint::from(5u32), 0, OutputFormat::Pretty, false).unwrap_err(),
            ConfigError::ZeroDigits
        );
        assert_eq!(
            CliConfig::new(BigUint::from(6u32), 4, OutputFormat::Pretty, false).unwrap_err(),
            ConfigError::NotPrime("6".to_string())
        );
    }
}
