//! Command-line front end.

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::counting::{self, GTypeJson};
use crate::error::{Error, Result};
use crate::factorize;
use crate::fields::{FieldTower, TowerExtension, TowerSpec};
use crate::parse::{parse_elem, parse_matrix, parse_skew, parse_vector, tower_from_text};
use crate::phimod::{self, PhiModule, DEFAULT_BUDGET};
use crate::skewpoly::SkewPoly;
use crate::splitting::{self, DEFAULT_ROOTS_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "orekit", version, about = "Skew polynomials and phi-modules over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    a: usize,
    /// Degree of F_{q^r} over F_q.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Modulus of F_q over F_p, in Y.
    #[arg(long)]
    f: Option<String>,
    /// Modulus of F_{q^r} over F_q, in Y (u for the generator of F_q).
    #[arg(long)]
    h: Option<String>,
    /// Whole tower as JSON {p, a, r, f, h}; overrides the other field flags.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on enumeration sizes (env OREKIT_BUDGET).
    #[arg(long, env = "OREKIT_BUDGET")]
    budget: Option<u64>,
    /// Report wall-clock time.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct OnePoly {
    #[command(flatten)]
    common: Common,
    poly: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Psi(P), the characteristic polynomial of phi^r.
    Psi(OnePoly),
    /// The central bound Psi(P)(X^r).
    Bound(OnePoly),
    /// The optimal central bound.
    OptimalBound(OnePoly),
    /// Whether two polynomials are similar.
    Similar {
        #[command(flatten)]
        common: Common,
        p: String,
        q: String,
    },
    /// Irreducibility test.
    Irreducible(OnePoly),
    /// Semi-characteristic polynomial of a vector.
    Semichar {
        #[command(flatten)]
        common: Common,
        /// Polynomial whose companion module is used.
        poly: Option<String>,
        /// Matrix of phi, rows separated by ';' and entries by ','.
        #[arg(long)]
        matrix: Option<String>,
        /// Vector, entries separated by ','; defaults to e_0.
        #[arg(long)]
        vector: Option<String>,
    },
    /// One factorization into monic irreducibles.
    Factor(OnePoly),
    /// Every factorization into monic irreducibles.
    Factorizations(OnePoly),
    /// Number of factorizations.
    CountFactorizations(OnePoly),
    /// Number of monic irreducible polynomials of a given degree.
    CountIrreducible {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: usize,
    },
    /// Size of a fiber of Psi over an irreducible class of a given degree.
    FiberSize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: usize,
    },
    /// Degree of the splitting field of L_P and the Galois action.
    SplittingField {
        #[command(flatten)]
        common: Common,
        poly: String,
        /// Also list a basis of roots.
        #[arg(long)]
        roots: bool,
    },
    /// Frobenius normal form of phi^r.
    GaloisMatrix(OnePoly),
    /// Basis of the roots of L_P and the action of z -> z^(q^r).
    Roots {
        #[command(flatten)]
        common: Common,
        poly: String,
        /// Cap on a*r*m.
        #[arg(long, default_value_t = DEFAULT_ROOTS_BUDGET)]
        roots_budget: u64,
    },
    /// Evaluate L_P at an element of F_{q^r}.
    EvalLinearized {
        #[command(flatten)]
        common: Common,
        poly: String,
        #[arg(long)]
        at: String,
    },
    /// Jordan type of phi^r per irreducible class.
    Type(OnePoly),
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::Psi(o)
            | Cmd::Bound(o)
            | Cmd::OptimalBound(o)
            | Cmd::Irreducible(o)
            | Cmd::Factor(o)
            | Cmd::Factorizations(o)
            | Cmd::CountFactorizations(o)
            | Cmd::GaloisMatrix(o)
            | Cmd::Type(o) => &o.common,
            Cmd::Similar { common, .. }
            | Cmd::Semichar { common, .. }
            | Cmd::CountIrreducible { common, .. }
            | Cmd::FiberSize { common, .. }
            | Cmd::SplittingField { common, .. }
            | Cmd::Roots { common, .. }
            | Cmd::EvalLinearized { common, .. } => common,
        }
    }

    fn verb(&self) -> &'static str {
        match self {
            Cmd::Psi(_) => "psi",
            Cmd::Bound(_) => "bound",
            Cmd::OptimalBound(_) => "optimal-bound",
            Cmd::Similar { .. } => "similar",
            Cmd::Irreducible(_) => "irreducible",
            Cmd::Semichar { .. } => "semichar",
            Cmd::Factor(_) => "factor",
            Cmd::Factorizations(_) => "factorizations",
            Cmd::CountFactorizations(_) => "count-factorizations",
            Cmd::CountIrreducible { .. } => "count-irreducible",
            Cmd::FiberSize { .. } => "fiber-size",
            Cmd::SplittingField { .. } => "splitting-field",
            Cmd::GaloisMatrix(_) => "galois-matrix",
            Cmd::Roots { .. } => "roots",
            Cmd::EvalLinearized { .. } => "eval-linearized",
            Cmd::Type(_) => "type",
        }
    }
}

fn build_tower(c: &Common) -> Result<FieldTower> {
    if let Some(spec) = &c.field {
        let spec: TowerSpec = serde_json::from_str(spec)
            .map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))?;
        return FieldTower::from_spec(&spec);
    }
    let p = c
        .p
        .ok_or_else(|| Error::InvalidParameter("--p or --field is required".into()))?;
    tower_from_text(p, c.a, c.r, c.f.as_deref(), c.h.as_deref())
}

/// Output of one verb: a JSON value and its plain-text rendering.
struct Outcome {
    json: Value,
    text: String,
}

impl Outcome {
    fn str(s: String) -> Self {
        Outcome {
            json: Value::String(s.clone()),
            text: s,
        }
    }

    fn bool(b: bool) -> Self {
        Outcome {
            json: Value::Bool(b),
            text: b.to_string(),
        }
    }

    fn big(n: BigUint) -> Self {
        Self::str(n.to_string())
    }
}

fn poly_list(f: &[SkewPoly]) -> Vec<String> {
    f.iter().map(|x| x.to_string()).collect()
}

fn render_factors(f: &[SkewPoly]) -> String {
    f.iter()
        .map(|x| format!("({x})"))
        .collect::<Vec<_>>()
        .join(" * ")
}

fn dispatch(cmd: &Cmd, tower: &FieldTower) -> Result<Outcome> {
    let c = cmd.common();
    let budget = c.budget.unwrap_or(DEFAULT_BUDGET);
    let poly = |s: &str| parse_skew(s, tower);
    Ok(match cmd {
        Cmd::Psi(o) => Outcome::str(phimod::psi(&poly(&o.poly)?)?.to_string()),
        Cmd::Bound(o) => Outcome::str(phimod::psi_bound(&poly(&o.poly)?)?.to_string()),
        Cmd::OptimalBound(o) => Outcome::str(phimod::optimal_bound(&poly(&o.poly)?)?.to_string()),
        Cmd::Similar { p, q, .. } => Outcome::bool(phimod::is_similar(&poly(p)?, &poly(q)?)?),
        Cmd::Irreducible(o) => Outcome::bool(factorize::is_irreducible_skew(&poly(&o.poly)?)?),
        Cmd::Semichar {
            poly: text,
            matrix,
            vector,
            ..
        } => {
            let module = match (text, matrix) {
                (_, Some(m)) => PhiModule::new(tower, parse_matrix(m, tower)?)?,
                (Some(t), None) => PhiModule::companion(&poly(t)?)?,
                (None, None) => {
                    return Err(Error::InvalidParameter("give a polynomial or --matrix".into()))
                }
            };
            let top = tower.top();
            let x = match vector {
                Some(v) => parse_vector(v, tower)?,
                None => {
                    let mut e = vec![top.zero(); module.dim()];
                    e[0] = top.one();
                    e
                }
            };
            Outcome::str(module.semi_char(&x)?.to_string())
        }
        Cmd::Factor(o) => {
            let p = poly(&o.poly)?;
            let f = match factorize::factor_squarefree_psi(&p) {
                Ok(f) => f,
                Err(Error::NotSquarefree) => factorize::all_factorizations(&p, budget)?
                    .factorizations
                    .swap_remove(0),
                Err(e) => return Err(e),
            };
            Outcome {
                json: json!(poly_list(&f)),
                text: render_factors(&f),
            }
        }
        Cmd::Factorizations(o) => {
            let set = factorize::all_factorizations(&poly(&o.poly)?, budget)?;
            let lists: Vec<Vec<String>> = set.factorizations.iter().map(|f| poly_list(f)).collect();
            let mut text = format!("{} factorizations", set.len());
            for f in &set.factorizations {
                text.push('\n');
                text.push_str(&render_factors(f));
            }
            Outcome {
                json: json!({ "count": set.len().to_string(), "factorizations": lists }),
                text,
            }
        }
        Cmd::CountFactorizations(o) => Outcome::big(counting::count_factorizations(&poly(&o.poly)?)?),
        Cmd::CountIrreducible { degree, .. } => {
            Outcome::big(counting::count_irreducible(tower.q(), tower.r(), *degree)?)
        }
        Cmd::FiberSize { degree, .. } => Outcome::big(counting::fiber_size(tower.q(), tower.r(), *degree)?),
        Cmd::SplittingField { poly: text, roots, .. } => {
            let p = poly(text)?;
            let report = splitting::splitting_report(&p, roots.then_some(DEFAULT_ROOTS_BUDGET))?;
            let mut out = format!(
                "m = {}\ngalois_matrix = {}",
                report.m,
                splitting::galois_matrix(&p)?
            );
            if let Some(r) = &report.roots {
                out.push_str(&format!("\nroots = [{}]", r.join(", ")));
            }
            Outcome {
                json: serde_json::to_value(&report).unwrap(),
                text: out,
            }
        }
        Cmd::GaloisMatrix(o) => {
            let g = splitting::galois_matrix(&poly(&o.poly)?)?;
            Outcome {
                json: json!(g.to_strings()),
                text: g.to_string(),
            }
        }
        Cmd::Roots {
            poly: text,
            roots_budget,
            ..
        } => {
            let rs = splitting::roots_basis_seeded(&poly(text)?, *roots_budget, c.seed)?;
            let l = rs.extension.field();
            let modulus = crate::commalg::CommPoly::new(
                tower.base(),
                l.modulus().unwrap().to_vec(),
            );
            let basis: Vec<String> = rs.basis.iter().map(|b| l.format(b)).collect();
            Outcome {
                json: json!({
                    "extension_modulus": modulus.format_var("Z"),
                    "basis": basis,
                    "action": rs.action.to_strings(),
                }),
                text: format!(
                    "extension: F_q[z]/({})\nbasis = [{}]\naction = {}",
                    modulus.format_var("z"),
                    basis.join(", "),
                    rs.action
                ),
            }
        }
        Cmd::EvalLinearized { poly: text, at, .. } => {
            let p = poly(text)?;
            let z = parse_elem(at, tower)?;
            let ext = TowerExtension::trivial(tower);
            let v = p.to_linearized().eval(&ext, &z)?;
            Outcome::str(tower.format(&v))
        }
        Cmd::Type(o) => {
            let t = counting::g_type(&poly(&o.poly)?)?;
            let rows: Vec<GTypeJson> = (&t).into();
            let text = rows
                .iter()
                .map(|r| format!("{}: delta = {}, lengths = {:?}", r.class, r.delta, r.lengths))
                .collect::<Vec<_>>()
                .join("\n");
            Outcome {
                json: serde_json::to_value(&rows).unwrap(),
                text,
            }
        }
    })
}

/// Runs one invocation; returns the exit code and the text for stdout and
/// stderr.
pub fn run<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let c = cli.cmd.common().clone();
    let start = Instant::now();
    let result = build_tower(&c).and_then(|t| dispatch(&cli.cmd, &t).map(|o| (t, o)));
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok((tower, out)) => {
            let timing = if c.timing { json!(elapsed) } else { Value::Null };
            if c.json {
                let doc = json!({
                    "verb": cli.cmd.verb(),
                    "field": tower.spec(),
                    "result": out.json,
                    "timing_ms": timing,
                });
                (0, format!("{}\n", serde_json::to_string(&doc).unwrap()), String::new())
            } else {
                let err = if c.timing {
                    format!("time: {elapsed:.3} ms\n")
                } else {
                    String::new()
                };
                (0, format!("{}\n", out.text), err)
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if c.json {
                let doc = json!({ "verb": cli.cmd.verb(), "error": e.to_string(), "exit_code": code });
                (code, format!("{}\n", serde_json::to_string(&doc).unwrap()), format!("error: {e}\n"))
            } else {
                (code, String::new(), format!("error: {e}\n"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F49: [&str; 8] = ["orekit", "", "--p", "7", "--r", "2", "--h", "Y^2-Y+3"];
    const P99: &str = "X^6 + w^3*X^5 + w^17*X^4 + w^3*X^3 + w^27*X^2 + w^35*X + w^36";

    fn call(verb: &str, base: &[&str], rest: &[&str]) -> (i32, String, String) {
        let mut args: Vec<String> = base.iter().map(|s| s.to_string()).collect();
        args[1] = verb.to_string();
        args.extend(rest.iter().map(|s| s.to_string()));
        run(args)
    }

    #[test]
    fn count_factorizations_prints_99() {
        let (code, out, _) = call("count-factorizations", &F49, &[P99]);
        assert_eq!((code, out.as_str()), (0, "99\n"));
    }

    #[test]
    fn splitting_field_reports_m() {
        let base = ["orekit", "", "--p", "7", "--r", "5", "--h", "Y^5+Y+4"];
        let (code, out, _) = call("splitting-field", &base, &["X^3 + w*X^2 - w^2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("m = 171\n"), "{out}");
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = call("irreducible", &F49, &["X"]);
        assert_eq!((code, out.as_str()), (0, "true\n"));
        let (code, _, err) = call("psi", &F49, &["X^2 +"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = call("optimal-bound", &F49, &["X^2 + X"]);
        assert_eq!(code, 3);
        let (code, _, _) = call("factorizations", &F49, &[P99, "--budget", "10"]);
        assert_eq!(code, 4);
        let (code, _, _) = run(["orekit", "bogus"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn json_is_deterministic() {
        let a = call("factorizations", &F49, &[P99, "--json", "--seed", "3"]);
        let b = call("factorizations", &F49, &[P99, "--json", "--seed", "3"]);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["verb"], "factorizations");
        assert_eq!(v["result"]["count"], "99");
        assert_eq!(v["field"]["p"], 7);
        assert!(v["timing_ms"].is_null());
    }

    #[test]
    fn printed_polynomials_reparse() {
        let (_, out, _) = call("factor", &F49, &[P99]);
        let tower = tower_from_text(7, 1, 2, None, Some("Y^2-Y+3")).unwrap();
        let factors: Vec<SkewPoly> = out
            .trim()
            .split(" * ")
            .map(|f| parse_skew(f, &tower).unwrap())
            .collect();
        let prod = factors.iter().fold(SkewPoly::one(&tower), |a, b| a.mul(b));
        assert_eq!(prod, parse_skew(P99, &tower).unwrap());
    }
}
