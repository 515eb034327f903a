mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thetalift::characters::{decomposed_spectrum, Case2Options};
use thetalift::dualpairs::{normalize_outside_range, Family};
use thetalift::momentmap::{numeric_verify, Stratum, VerifyOptions};
use thetalift::orbitlifts::{assoc_cycle_theta_l, assoc_cycle_theta_sigma, lift_od};
use thetalift::unipotent::check_special_unipotent;
use thetalift::{DualPairParams, Error, GenuineCompactType, Partition};

use render::{render, Format};

const EXIT_VALIDATION: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "thetalift", version, about = "Theta lifts of nilpotent orbits and their numerical verification")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Orbit lifts and associated cycles.
    Orbits {
        #[command(subcommand)]
        action: OrbitsAction,
    },
    /// Special unipotent certificate for the lift of a one-dimensional type.
    Unipotent {
        #[command(subcommand)]
        action: UnipotentAction,
    },
    /// Numerical checks on sampled null-cone points.
    Numeric {
        #[command(subcommand)]
        action: NumericAction,
    },
    /// Graded K-spectrum of the lift of the one-dimensional character.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Rewrite parameters outside the stable range as parameters inside it.
    Normalize {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand)]
enum OrbitsAction {
    /// The lifted orbit of the lowest-weight orbit.
    Lift {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Associated cycle of the lifted representation.
    Ac {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long, default_value_t = Case2Options::default().dmax)]
        dmax: usize,
        /// Trailing zero degrees required to call a truncated sum stable.
        #[arg(long, default_value_t = Case2Options::default().window)]
        window: usize,
    },
}

#[derive(Subcommand)]
enum UnipotentAction {
    Check {
        #[command(flatten)]
        params: ParamArgs,
        /// Dimension of the compact type being lifted.
        #[arg(long, default_value_t = 1)]
        dim_mu: usize,
    },
}

#[derive(Subcommand)]
enum NumericAction {
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, env = "THETALIFT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Relative singular-value threshold.
        #[arg(long, default_value_t = thetalift::momentmap::verify::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = StratumArg::Generic)]
        stratum: StratumArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StratumArg {
    Generic,
    Boundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Osp,
    Uu,
    Spostar,
}

/// Parameters given either as `--pair family:p,q,t,n` or by flags.
#[derive(Args)]
struct ParamArgs {
    /// `osp:p,q,t,n`, `osp:p,q,n`, `spostar:p,q,t,n` or `uu:p,q,t,n1,n2`.
    #[arg(long, conflicts_with_all = ["p", "q", "t", "n", "family"])]
    pair: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(short)]
    p: Option<usize>,
    #[arg(short)]
    q: Option<usize>,
    #[arg(short, default_value_t = 0)]
    t: usize,
    #[arg(short)]
    n: Option<usize>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<DualPairParams, Error> {
        let pp = match &self.pair {
            Some(text) => text.parse()?,
            None => {
                let need = |v: Option<usize>, name: &str| {
                    v.ok_or_else(|| Error::Parse(format!("missing -{name} (or give --pair)")))
                };
                let (p, q, n) = (need(self.p, "p")?, need(self.q, "q")?, need(self.n, "n")?);
                match self.family.unwrap_or(FamilyArg::Osp) {
                    FamilyArg::Osp => DualPairParams::osp(p, q, self.t, n),
                    FamilyArg::Spostar => DualPairParams::spostar(p, q, self.t, n),
                    FamilyArg::Uu => return Err(Error::Parse("the uu family needs --pair uu:p,q,t,n1,n2".into())),
                }
            }
        };
        pp.validate()?;
        Ok(pp)
    }

    fn resolve_osp(&self) -> Result<DualPairParams, Error> {
        let pp = self.resolve()?;
        if pp.family != Family::Osp {
            return Err(Error::OutOfRange(format!("{pp}: only the osp family is implemented here")));
        }
        Ok(pp)
    }
}

#[derive(Args)]
struct MuArgs {
    /// Young label of the compact type, e.g. `2,1`; trivial when absent.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    det_twist: u8,
}

impl MuArgs {
    fn resolve(&self, n: usize) -> Result<Option<GenuineCompactType>, Error> {
        let Some(text) = &self.mu else {
            return Ok((self.det_twist == 1).then(|| GenuineCompactType::new(Partition::empty(), 1, n % 2 == 1)));
        };
        let rows = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("--mu {text:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let partition = Partition::new(rows)?;
        Ok(Some(GenuineCompactType::new(partition, self.det_twist, n % 2 == 1)))
    }
}

/// A report and whether every internal check passed.
struct Outcome {
    report: Value,
    verified: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, verified: true }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn run(verb: &Verb) -> Result<Outcome, Error> {
    match verb {
        Verb::Orbits { action: OrbitsAction::Lift { params } } => {
            let pp = params.resolve_osp()?;
            let lift = lift_od(pp.p, pp.q, pp.t, pp.n)?;
            Ok(Outcome::ok(json!({
                "pair": pp.to_string(),
                "orbit": lift.orbit.to_string(),
                "superscript": lift.orbit.to_superscript(),
                "signature": lift.orbit.signature(),
                "partition": lift.orbit.unsigned(),
                "provenance": lift.provenance,
                "diagnostic": lift.diagnostic,
            })))
        }
        Verb::Orbits { action: OrbitsAction::Ac { params, mu, dmax, window } } => {
            let pp = params.resolve_osp()?;
            let mu = mu.resolve(pp.n)?;
            if pp.t == 0 && mu.is_none() {
                let cycle = assoc_cycle_theta_sigma(pp.p, pp.q, pp.n)?;
                return Ok(Outcome::ok(json!({ "pair": pp.to_string(), "cycle": cycle })));
            }
            let mu = mu.unwrap_or_else(|| GenuineCompactType::trivial(pp.n));
            let lifted = assoc_cycle_theta_l(&pp, &mu, Case2Options { dmax: *dmax, window: *window })?;
            Ok(Outcome::ok(json!({
                "pair": pp.to_string(),
                "mu": mu,
                "case": lifted.case,
                "cycle": lifted.cycle,
                "multiplicity": lifted.multiplicity,
                "nonzero": lifted.nonzero,
                "stabilized": lifted.stabilized,
                "provenance": lifted.orbit.provenance,
            })))
        }
        Verb::Unipotent { action: UnipotentAction::Check { params, dim_mu } } => {
            let pp = params.resolve_osp()?;
            let cert = check_special_unipotent(pp.p, pp.q, pp.t, pp.n, *dim_mu);
            if !cert.hypotheses_met {
                return Err(Error::Hypothesis(cert.hypothesis_violations.join("; ")));
            }
            Ok(Outcome { verified: cert.pass, report: to_value(&cert) })
        }
        Verb::Numeric { action: NumericAction::Verify { params, seed, count, tol, stratum } } => {
            let pp = params.resolve_osp()?;
            let stratum = match stratum {
                StratumArg::Generic => Stratum::Generic,
                StratumArg::Boundary => Stratum::Boundary,
            };
            let opts = VerifyOptions { seed: *seed, count: *count, tol: *tol, stratum };
            let report = numeric_verify(&pp, &opts)?;
            Ok(Outcome {
                verified: report.all_pass(),
                report: json!({ "pair": pp.to_string(), "options": opts, "all_pass": report.all_pass(), "checks": report.checks }),
            })
        }
        Verb::Spectrum { params, dmax } => {
            let pp = params.resolve_osp()?;
            // The compact factor joins the indefinite one: the pair is (p, q+t, n).
            let q = pp.q + pp.t;
            let degrees: Vec<Value> = decomposed_spectrum(pp.p, q, pp.n, *dmax)?
                .into_iter()
                .map(|d| {
                    let ktypes: Vec<Value> = d
                        .ktypes
                        .iter()
                        .map(|k| {
                            let label: Vec<String> = k.ktype.iter().map(ToString::to_string).collect();
                            json!({ "label": label.join(" ⊗ "), "ktype": k.ktype, "mult": k.mult })
                        })
                        .collect();
                    json!({ "degree": d.degree, "ktypes": ktypes })
                })
                .collect();
            Ok(Outcome::ok(json!({ "p": pp.p, "q": q, "n": pp.n, "dmax": dmax, "degrees": degrees })))
        }
        Verb::Normalize { params } => {
            let pp = params.resolve_osp()?;
            if pp.in_stable_range() {
                return Ok(Outcome::ok(json!({ "kind": "in_stable_range", "params": pp })));
            }
            Ok(Outcome::ok(to_value(&normalize_outside_range(pp.p, pp.q, pp.t, pp.n)?)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{}", render(&out.report, cli.output));
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: internal verification failed");
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { EXIT_VALIDATION } else { EXIT_VERIFICATION })
        }
    }
}
