//! Command-line front end.
//!
//! Every command prints a [`RunReport`] (or CSV for `prob sweep`) and maps its
//! outcome onto the exit codes
//!
//! | code | meaning |
//! |---|---|
//! | 0 | pass |
//! | 1 | mathematical failure |
//! | 2 | input error, including a failed precondition |
//! | 3 | indeterminate: a capacity solve did not converge |
//!
//! Variable indices on the command line are one-based.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::{
    verify_corollary_with, verify_theorem1_with, verify_theorem3, CheckOptions, ATOM_SLACK,
};
use crate::capacity::{capacity_with, CapacityResult, CapacityStatus, DirectionVector, SolverOptions};
use crate::lorentzian::{certify_terms, is_lorentzian, Certificate, FailureReason, SignatureMethod};
use crate::poly::{parse_sequence, parse_term_list, SparsePolynomial, UnivariateCoefficients};
use crate::prob::{
    divergence_inequality_check, renyi_divergence, sweep, verify_main_lemma, ConditioningEvent,
    DiscreteDistribution, RenyiOrder, LEMMA_SLACK, ORACLE_MAX_N,
};
use crate::report::{digest, format_float, Record, RunReport, Value, Verdict};

pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lorcap", version, about = "Lorentzian polynomials, capacity and coefficient bounds")]
pub struct Cli {
    /// Gradient tolerance of the capacity solver.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_grad: Option<f64>,
    /// Slack on the checked inequality (relative for capacity bounds, absolute for atom bounds).
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_check: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify that a term-list polynomial is Lorentzian.
    Certify { file: PathBuf },
    /// Compute inf_{x>0} P(x)/x^alpha.
    Capacity {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        alpha: Vec<f64>,
    },
    /// Check a coefficient inequality.
    Check {
        file: PathBuf,
        #[arg(long)]
        theorem: TheoremArg,
        /// Differentiated variable (one-based).
        #[arg(long)]
        var: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        /// Skip Lorentzian certification.
        #[arg(long)]
        assume_lorentzian: bool,
    },
    /// Conditioned-binomial computations.
    Prob {
        #[command(subcommand)]
        command: ProbCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    /// Capacity-derivative inequality.
    #[value(name = "1")]
    CapacityDerivative,
    /// Univariate bound for ULC sequences with integer mean.
    #[value(name = "3")]
    Univariate,
    /// Multivariate coefficient bound.
    #[value(name = "corollary")]
    Coefficient,
}

#[derive(Debug, Subcommand)]
pub enum ProbCommand {
    /// Oracle minimum against the atom bound on a grid, as CSV.
    Sweep {
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        pgrid: Vec<f64>,
    },
    /// Check the conditioned atom bound for one event.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        ns: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
    },
    /// Divergence D(P || Q) between two pmf files.
    Divergence {
        #[arg(long)]
        order: OrderArg,
        p: PathBuf,
        q: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    #[value(name = "1")]
    One,
    #[value(name = "inf")]
    Infinity,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(report: RunReport) -> Self {
        Outcome { code: report.exit_code(), stdout: report.to_string(), stderr: String::new() }
    }

    fn input_error(message: impl Display) -> Self {
        Outcome { code: EXIT_INPUT_ERROR, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

struct InputError(String);

fn input<E: Display>(e: E) -> InputError {
    InputError(e.to_string())
}

type CmdResult = Result<Outcome, InputError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT_ERROR, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(InputError(message)) => Outcome::input_error(message),
    }
}

fn execute(cli: &Cli) -> CmdResult {
    let mut solver = SolverOptions::default();
    if let Some(tol) = cli.tol_grad {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(input(format!("--tol-grad must be positive, got {tol}")));
        }
        solver.tol_grad = tol;
    }
    if let Some(tol) = cli.tol_check {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(input(format!("--tol-check must be nonnegative, got {tol}")));
        }
    }
    let ctx = Context { solver, tol_check: cli.tol_check };
    match &cli.command {
        Command::Certify { file } => ctx.certify(file),
        Command::Capacity { file, alpha } => ctx.capacity(file, alpha),
        Command::Check { file, theorem, var, alpha, r, assume_lorentzian } => match theorem {
            TheoremArg::CapacityDerivative => {
                if r.is_some() {
                    return Err(input("--r is not used by --theorem 1"));
                }
                let var = var.ok_or_else(|| input("--theorem 1 needs --var"))?;
                let alpha = alpha.as_ref().ok_or_else(|| input("--theorem 1 needs --alpha"))?;
                ctx.theorem1(file, var, alpha, *assume_lorentzian)
            }
            TheoremArg::Univariate => {
                if var.is_some() || alpha.is_some() || r.is_some() {
                    return Err(input("--theorem 3 takes no --var, --alpha or --r"));
                }
                ctx.theorem3(file)
            }
            TheoremArg::Coefficient => {
                if var.is_some() || alpha.is_some() {
                    return Err(input("--theorem corollary takes --r, not --var or --alpha"));
                }
                let r = r.as_ref().ok_or_else(|| input("--theorem corollary needs --r"))?;
                ctx.corollary(file, r, *assume_lorentzian)
            }
        },
        Command::Prob { command } => match command {
            ProbCommand::Sweep { nmax, pgrid } => ctx.sweep(*nmax, pgrid),
            ProbCommand::Lemma { n, p, ns, weights } => ctx.lemma(*n, *p, *ns, weights),
            ProbCommand::Divergence { order, p, q } => ctx.divergence(*order, p, q),
        },
    }
}

struct Context {
    solver: SolverOptions,
    tol_check: Option<f64>,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_polynomial(path: &Path) -> Result<(String, SparsePolynomial), InputError> {
    let text = read(path)?;
    let terms = parse_term_list(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let p = terms.into_polynomial().map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok((text, p))
}

fn read_numbers(path: &Path) -> Result<(String, Vec<BigRational>), InputError> {
    let text = read(path)?;
    let values = parse_sequence(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok((text, values))
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format_float(*x)).collect::<Vec<_>>().join(",")
}

fn inputs_digest(parts: &[&str]) -> String {
    digest(parts.iter().map(|s| s.as_bytes()))
}

fn count_word(n: usize) -> String {
    const WORDS: [&str; 10] =
        ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"];
    WORDS.get(n).map(|w| w.to_string()).unwrap_or_else(|| n.to_string())
}

/// One-based variable list.
fn one_based(vars: &[usize]) -> Value {
    Value::Ints(vars.iter().map(|&v| v as i64 + 1).collect())
}

fn exponent_str(e: &[u32]) -> String {
    format!("({})", e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

fn failure_record(reason: &FailureReason) -> Record {
    let mut r = Record::new();
    match reason {
        FailureReason::NonHomogeneous { expected, found } => {
            r.push("reason", format!("terms of degree {expected} and {found}: not homogeneous"));
        }
        FailureReason::NegativeCoefficient { exponent } => {
            r.push("reason", format!("negative coefficient at {}", exponent_str(exponent)));
        }
        FailureReason::SupportNotMConvex(w) => {
            r.push("reason", "support is not M-convex");
            r.push("alpha", exponent_str(&w.alpha));
            r.push("beta", exponent_str(&w.beta));
            r.push("coordinate", w.i + 1);
        }
        FailureReason::QuadraticSignature(s) => {
            match s.negative_entry {
                Some((i, j)) => {
                    r.push("reason", format!("negative entry of the quadratic form at ({},{})", i + 1, j + 1));
                }
                None => {
                    r.push("reason", format!("{} positive eigenvalues", count_word(s.positive)));
                }
            }
            r.push("eigenvalues", s.eigenvalues.clone());
            r.push(
                "method",
                match s.method {
                    SignatureMethod::Exact => "exact",
                    SignatureMethod::Floating => "floating",
                },
            );
        }
        FailureReason::BaseCaseDegenerate { detail } => {
            r.push("reason", detail.clone());
        }
        FailureReason::DerivativeFailed { variable } => {
            r.push("reason", format!("derivative in x{} failed", variable + 1));
        }
    }
    r
}

fn certificate_record(cert: &Certificate) -> Record {
    let mut r = Record::new().with("lorentzian", cert.verdict);
    match cert.degree {
        Some(d) => r.push("degree", d),
        None => r.push("degree", "none"),
    };
    r.push("certificate_nodes", cert.node_count());
    if let Some((path, reason)) = cert.failure_path() {
        let mut f = Record::new().with("derivative_path", one_based(&path));
        for (k, v) in failure_record(reason).entries() {
            f.push(k, v.clone());
        }
        r.push("failure", f);
    }
    r
}

fn capacity_record(c: &CapacityResult) -> Record {
    let mut r = Record::new().with("value", c.value).with("status", c.status.as_str());
    match &c.minimizer {
        Some(x) => r.push("minimizer", x.clone()),
        None => r.push("minimizer", "none"),
    };
    r.with("gradient_norm", c.gradient_norm).with("iterations", c.iterations)
}

fn verdict(pass: bool, indeterminate: bool) -> Verdict {
    if indeterminate {
        Verdict::Indeterminate
    } else {
        Verdict::from_pass(pass)
    }
}

impl Context {
    fn check_options(&self) -> CheckOptions {
        let mut opts = CheckOptions { solver: self.solver, ..CheckOptions::default() };
        if let Some(tol) = self.tol_check {
            opts.rel_slack = tol;
        }
        opts
    }

    fn solver_diagnostics(&self) -> Record {
        Record::new().with("tol_grad", self.solver.tol_grad).with("max_iter", self.solver.max_iter)
    }

    fn require_lorentzian(&self, p: &SparsePolynomial, assume: bool) -> Result<(), InputError> {
        if assume {
            return Ok(());
        }
        let cert = is_lorentzian(p);
        if cert.verdict {
            return Ok(());
        }
        let why = cert
            .failure_path()
            .and_then(|(_, reason)| failure_record(reason).get("reason").cloned())
            .map(|v| match v {
                Value::Str(s) => s,
                _ => String::new(),
            })
            .unwrap_or_default();
        Err(input(format!(
            "precondition failed: polynomial is not Lorentzian ({why}); pass --assume-lorentzian to override"
        )))
    }

    fn certify(&self, file: &Path) -> CmdResult {
        let text = read(file)?;
        let terms = parse_term_list(&text).map_err(|e| input(format!("{}: {e}", file.display())))?;
        let num_vars = terms.num_vars;
        let cert = certify_terms(terms);
        let details = certificate_record(&cert);
        Ok(Outcome::report(RunReport {
            command: "certify".into(),
            inputs_digest: inputs_digest(&["certify", &text]),
            verdict: Verdict::from_pass(cert.verdict),
            details,
            diagnostics: Record::new().with("num_vars", num_vars),
        }))
    }

    fn capacity(&self, file: &Path, alpha: &[f64]) -> CmdResult {
        let (text, p) = read_polynomial(file)?;
        let dir = DirectionVector::new(alpha.to_vec()).map_err(input)?;
        let res = capacity_with(&p, &dir, &self.solver).map_err(input)?;
        let indeterminate = res.status == CapacityStatus::FailedToConverge;
        let mut details = Record::new().with("alpha", alpha.to_vec());
        for (k, v) in capacity_record(&res).entries() {
            details.push(k, v.clone());
        }
        Ok(Outcome::report(RunReport {
            command: "capacity".into(),
            inputs_digest: inputs_digest(&["capacity", &text, &join(alpha)]),
            verdict: verdict(true, indeterminate),
            details,
            diagnostics: self.solver_diagnostics(),
        }))
    }

    fn theorem1(&self, file: &Path, var: usize, alpha: &[f64], assume: bool) -> CmdResult {
        let (text, p) = read_polynomial(file)?;
        if var == 0 || var > p.num_vars() {
            return Err(input(format!("--var {var} outside 1..={}", p.num_vars())));
        }
        let dir = DirectionVector::new(alpha.to_vec()).map_err(input)?;
        self.require_lorentzian(&p, assume)?;
        let opts = self.check_options();
        let r = verify_theorem1_with(&p, &dir, var - 1, &opts).map_err(input)?;
        let details = Record::new()
            .with("theorem", "1")
            .with("var", var)
            .with("alpha", alpha.to_vec())
            .with("n", r.n)
            .with("k", r.k)
            .with("factor", r.factor)
            .with("lhs", r.lhs)
            .with("rhs", r.rhs)
            .with("derivative", r.derivative.to_string().trim_end().replace('\n', "; "))
            .with("capacity", capacity_record(&r.cap_p))
            .with("derivative_capacity", capacity_record(&r.cap_derivative));
        let diagnostics = self
            .solver_diagnostics()
            .with("rel_slack", opts.rel_slack)
            .with("abs_slack", opts.abs_slack)
            .with("assumed_lorentzian", assume);
        Ok(Outcome::report(RunReport {
            command: "check".into(),
            inputs_digest: inputs_digest(&["check", "1", &text, &var.to_string(), &join(alpha)]),
            verdict: verdict(r.pass, r.indeterminate),
            details,
            diagnostics,
        }))
    }

    fn theorem3(&self, file: &Path) -> CmdResult {
        let (text, values) = read_numbers(file)?;
        let total: BigRational = values.iter().sum();
        if total.is_zero() || values.iter().any(|v| v < &BigRational::zero()) {
            return Err(input("sequence must be nonnegative with a positive sum"));
        }
        let normalized: Vec<f64> =
            values.iter().map(|v| (v / &total).to_f64().unwrap_or(f64::NAN)).collect();
        let a = UnivariateCoefficients::new(normalized).map_err(input)?;
        let r = verify_theorem3(&a).map_err(input)?;
        let slack = self.tol_check.unwrap_or(ATOM_SLACK);
        let pass = r.a_ns >= r.bound - slack;
        let w = &r.witness;
        let details = Record::new()
            .with("theorem", "3")
            .with("n", r.n)
            .with("ns", r.ns)
            .with("bound", r.bound)
            .with("a_ns", r.a_ns)
            .with(
                "dominating_binomial",
                Record::new()
                    .with("p", w.p)
                    .with("c", w.c)
                    .with("degenerate", w.degenerate)
                    .with("max_domination_ratio", w.max_domination_ratio),
            )
            .with(
                "coupling",
                Record::new()
                    .with("event_probability", r.coupling.event_probability)
                    .with("binomial_marginal", r.coupling.binomial_marginal)
                    .with("atom_matches", r.coupling.atom_matches)
                    .with("complement_misses_atom", r.coupling.complement_misses_atom)
                    .with("atom_certain", r.coupling.atom_certain)
                    .with("conditioned_error", r.coupling.conditioned_error),
            );
        Ok(Outcome::report(RunReport {
            command: "check".into(),
            inputs_digest: inputs_digest(&["check", "3", &text]),
            verdict: Verdict::from_pass(pass && r.coupling.holds()),
            details,
            diagnostics: Record::new().with("atom_slack", slack),
        }))
    }

    fn corollary(&self, file: &Path, r: &[u32], assume: bool) -> CmdResult {
        let (text, p) = read_polynomial(file)?;
        self.require_lorentzian(&p, assume)?;
        let opts = self.check_options();
        let rep = verify_corollary_with(&p, r, true, &opts).map_err(input)?;
        let mut details = Record::new()
            .with("theorem", "corollary")
            .with("r", Value::Ints(r.iter().map(|&v| i64::from(v)).collect()))
            .with("coefficient", rep.coefficient.clone())
            .with("factor", rep.factor)
            .with("bound", rep.bound)
            .with("capacity", capacity_record(&rep.capacity));
        let mut chain_ok = true;
        if let Some(chain) = &rep.chain {
            chain_ok = chain.agrees_with_direct && chain.steps_pass && chain.endpoint_matches;
            details.push(
                "chain",
                Record::new()
                    .with("steps", chain.steps.len())
                    .with("steps_pass", chain.steps_pass)
                    .with("fixed_degree_bound", chain.fixed_degree_bound)
                    .with("tight_bound", chain.tight_bound)
                    .with("endpoint", chain.endpoint)
                    .with("agrees_with_direct", chain.agrees_with_direct)
                    .with("endpoint_matches", chain.endpoint_matches),
            );
        }
        let r_text = r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        Ok(Outcome::report(RunReport {
            command: "check".into(),
            inputs_digest: inputs_digest(&["check", "corollary", &text, &r_text]),
            verdict: verdict(rep.pass && chain_ok, rep.indeterminate),
            details,
            diagnostics: self
                .solver_diagnostics()
                .with("rel_slack", opts.rel_slack)
                .with("abs_slack", opts.abs_slack)
                .with("assumed_lorentzian", assume),
        }))
    }

    fn sweep(&self, nmax: usize, pgrid: &[f64]) -> CmdResult {
        if nmax > ORACLE_MAX_N {
            return Err(input(format!("--nmax {nmax} exceeds the oracle limit {ORACLE_MAX_N}")));
        }
        if let Some(p) = pgrid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(input(format!("grid value {p} outside (0, 1)")));
        }
        let rows = sweep(nmax, pgrid).map_err(input)?;
        let slack = self.tol_check.unwrap_or(LEMMA_SLACK);
        let mut out = String::from("n,p,ns,oracle_min,bound,chernoff,pass\n");
        let mut all = true;
        for row in &rows {
            let pass = row.oracle_min >= row.bound - slack
                && row.oracle_event_probability <= row.chernoff + slack;
            all &= pass;
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.n,
                format_float(row.p),
                row.ns,
                format_float(row.oracle_min),
                format_float(row.bound),
                format_float(row.chernoff),
                pass
            ));
        }
        Ok(Outcome { code: Verdict::from_pass(all).exit_code(), stdout: out, stderr: String::new() })
    }

    fn lemma(&self, n: usize, p: f64, ns: usize, weights: &[f64]) -> CmdResult {
        if weights.len() != n + 1 {
            return Err(input(format!("--weights needs {} entries, got {}", n + 1, weights.len())));
        }
        let event = ConditioningEvent::new(weights.to_vec()).map_err(input)?;
        let r = verify_main_lemma(n, p, ns, &event).map_err(input)?;
        let slack = self.tol_check.unwrap_or(LEMMA_SLACK);
        let atom_pass = r.conditional_atom >= r.bound - slack;
        let chernoff_pass = r.event_probability <= r.chernoff.value + slack;
        let details = Record::new()
            .with("conditional_atom", r.conditional_atom)
            .with("bound", r.bound)
            .with("event_probability", r.event_probability)
            .with("chernoff", r.chernoff.value)
            .with("t_opt", r.chernoff.t_opt)
            .with("atom_pass", atom_pass)
            .with("chernoff_pass", chernoff_pass);
        let div = divergence_inequality_check(n, p, ns, &event).map_err(input)?;
        let details = details.with(
            "divergence",
            Record::new()
                .with("shifted_d1", div.shifted_d1)
                .with("conditioned_dinf", div.conditioned_dinf)
                .with("pass", div.pass)
                .with("literal_d1", div.literal_d1)
                .with("literal_dinf", div.literal_dinf),
        );
        Ok(Outcome::report(RunReport {
            command: "prob lemma".into(),
            inputs_digest: inputs_digest(&[
                "prob lemma",
                &n.to_string(),
                &format_float(p),
                &ns.to_string(),
                &join(weights),
            ]),
            verdict: Verdict::from_pass(atom_pass && chernoff_pass),
            details,
            diagnostics: Record::new().with("slack", slack),
        }))
    }

    fn divergence(&self, order: OrderArg, p_file: &Path, q_file: &Path) -> CmdResult {
        let load = |path: &Path| -> Result<(String, DiscreteDistribution), InputError> {
            let (text, values) = read_numbers(path)?;
            let pmf = values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
            let dist = DiscreteDistribution::new(pmf)
                .map_err(|e| input(format!("{}: {e}", path.display())))?;
            Ok((text, dist))
        };
        let (p_text, p) = load(p_file)?;
        let (q_text, q) = load(q_file)?;
        let (order, name) = match order {
            OrderArg::One => (RenyiOrder::One, "1"),
            OrderArg::Infinity => (RenyiOrder::Infinity, "inf"),
        };
        let d = renyi_divergence(&p, &q, order).map_err(input)?;
        Ok(Outcome::report(RunReport {
            command: "prob divergence".into(),
            inputs_digest: inputs_digest(&["prob divergence", name, &p_text, &q_text]),
            verdict: Verdict::Pass,
            details: Record::new().with("order", name).with("divergence", d),
            diagnostics: Record::new().with("outcomes", p.pmf().len()),
        }))
    }
}
