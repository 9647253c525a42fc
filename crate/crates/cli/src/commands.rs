//! Command dispatch: each command maps a problem onto one or more core
//! operations and collects the results in a [`Report`].

use clap::ValueEnum;
use rees_core::bhattacharya::Bhattacharya;
use rees_core::closure::{rr_closure_cached, rr_defect_cached};
use rees_core::powers::ProductCache;
use rees_core::reductions::complete_reduction_products;
use rees_core::{
    BinomialPolynomial2, CMOptions, ClosureConfig, Cond3Witnesses, FitOptions, Monomial,
    MonomialIdeal, PairAnalysis, Verdict, Window, complete_reduction_check,
    hilbert_fit_single_with, is_reduction, joint_reduction_zero, rr_closure_via_reduction,
    verify_decomposition,
};

use crate::report::{Grid, Report, Value};
use crate::spec::{ParseError, ProblemSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] rees_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "E_PARSE",
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "E_USAGE",
            CliError::Io(_) => "E_IO",
        }
    }

    /// 2 for problems with the invocation or input, 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// λ(A/I^r J^s) at one bidegree
    Length,
    /// B(r,s) over a window
    Table,
    /// Bhattacharya polynomial coefficients
    Fit,
    /// Mixed multiplicities e_j(I|J)
    Mixed,
    /// Hilbert polynomial of a single ideal
    Hilbert,
    /// Ratliff-Rush closure of I^r J^s
    Rr,
    /// Ratliff-Rush defects over a window
    Defect,
    /// Reduction certificates for I and J
    Reduction,
    /// Joint reduction number zero
    Jointred,
    /// Complete reduction check
    Complete,
    /// Decomposition identities
    Decomp,
    /// P(r,s) - B(r,s) over a window
    Diff,
    /// Local cohomology lengths over a window
    H2,
    /// Cohen-Macaulay criterion for the Rees algebra
    Cmcheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Length => "length",
            Command::Table => "table",
            Command::Fit => "fit",
            Command::Mixed => "mixed",
            Command::Hilbert => "hilbert",
            Command::Rr => "rr",
            Command::Defect => "defect",
            Command::Reduction => "reduction",
            Command::Jointred => "jointred",
            Command::Complete => "complete",
            Command::Decomp => "decomp",
            Command::Diff => "diff",
            Command::H2 => "h2",
            Command::Cmcheck => "cmcheck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    I,
    J,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub window: (u32, u32),
    pub base: (u32, u32),
    pub validate_width: u32,
    pub max_shifts: u32,
    pub r_max: u32,
    pub k_cap: u32,
    pub confirm: usize,
    pub r: u32,
    pub s: u32,
    pub via: bool,
    pub which: Which,
}

impl Default for Settings {
    fn default() -> Self {
        let fit = FitOptions::default();
        let closure = ClosureConfig::default();
        Settings {
            window: (4, 4),
            base: fit.base,
            validate_width: fit.validate_width,
            max_shifts: fit.max_shifts,
            r_max: CMOptions::default().r_max,
            k_cap: closure.k_cap,
            confirm: closure.confirm_steps,
            r: 1,
            s: 1,
            via: false,
            which: Which::I,
        }
    }
}

impl Settings {
    fn fit_options(&self) -> FitOptions {
        FitOptions {
            d: None,
            base: self.base,
            validate_width: self.validate_width,
            max_shifts: self.max_shifts,
        }
    }

    fn closure(&self) -> CliResult<ClosureConfig> {
        let c = ClosureConfig {
            confirm_steps: self.confirm,
            k_cap: self.k_cap,
        };
        c.validate()?;
        Ok(c)
    }

    fn window(&self) -> Window {
        Window::from_origin(self.window.0, self.window.1)
    }
}

/// A finished command. `not_cm` is set when `cmcheck` reaches a
/// not-Cohen-Macaulay verdict.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub not_cm: bool,
}

struct Ctx<'a> {
    spec: &'a ProblemSpec,
    settings: &'a Settings,
    i: MonomialIdeal,
    j: MonomialIdeal,
}

impl Ctx<'_> {
    fn names(&self) -> &[String] {
        &self.spec.vars
    }

    fn show(&self, ideal: &MonomialIdeal) -> String {
        ideal.display_with(self.names()).to_string()
    }

    fn mono(&self, m: &Monomial) -> String {
        m.display_with(self.names()).to_string()
    }

    fn monos(&self, ms: &[Monomial]) -> String {
        let parts: Vec<String> = ms.iter().map(|m| self.mono(m)).collect();
        format!("({})", parts.join(", "))
    }

    fn header(&self, report: &mut Report) {
        report.field("I", self.show(&self.i));
        if self.spec.has_j() {
            report.field("J", self.show(&self.j));
        }
    }

    fn require_j(&self, what: &str) -> CliResult<()> {
        if self.spec.has_j() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{what} needs a second ideal (J:)")))
        }
    }

    fn analysis(&self) -> CliResult<PairAnalysis> {
        Ok(PairAnalysis::new(
            &self.i,
            &self.j,
            self.settings.fit_options(),
            self.settings.closure()?,
        )?)
    }
}

pub fn run(command: Command, spec: &ProblemSpec, settings: &Settings) -> CliResult<Outcome> {
    let ctx = Ctx {
        spec,
        settings,
        i: spec.ideal_i(),
        j: spec.ideal_j(),
    };
    let mut report = Report::new(command.name());
    let mut not_cm = false;
    match command {
        Command::Length => length(&ctx, &mut report)?,
        Command::Table => table(&ctx, &mut report)?,
        Command::Fit => fit(&ctx, &mut report)?,
        Command::Mixed => mixed(&ctx, &mut report)?,
        Command::Hilbert => hilbert(&ctx, &mut report)?,
        Command::Rr => rr(&ctx, &mut report)?,
        Command::Defect => defect(&ctx, &mut report)?,
        Command::Reduction => reduction(&ctx, &mut report)?,
        Command::Jointred => jointred(&ctx, &mut report)?,
        Command::Complete => complete(&ctx, &mut report)?,
        Command::Decomp => decomp(&ctx, &mut report)?,
        Command::Diff => diff(&ctx, &mut report)?,
        Command::H2 => h2(&ctx, &mut report)?,
        Command::Cmcheck => not_cm = cmcheck(&ctx, &mut report)?,
    }
    Ok(Outcome { report, not_cm })
}

fn grid_over<F>(title: &str, window: Window, mut cell: F) -> CliResult<Grid>
where
    F: FnMut(u32, u32) -> CliResult<Value>,
{
    let rows: Vec<u32> = (window.r_lo..=window.r_hi).collect();
    let cols: Vec<u32> = (window.s_lo..=window.s_hi).collect();
    let values = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&s| cell(r, s))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Grid::new(title, rows, cols, values))
}

fn length(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let (r, s) = (ctx.settings.r, ctx.settings.s);
    let mut engine = Bhattacharya::new(&ctx.i, &ctx.j)?;
    ctx.header(report);
    report
        .field("r", r)
        .field("s", s)
        .field("length", engine.value(r, s)?);
    Ok(())
}

fn table(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let mut engine = Bhattacharya::new(&ctx.i, &ctx.j)?;
    let grid = grid_over("B(r,s) = λ(A/I^r J^s)", ctx.settings.window(), |r, s| {
        Ok(engine.value(r, s)?.into())
    })?;
    report.grid("B", grid);
    Ok(())
}

/// `e*C(r,i)*C(s,j)` summands, highest total degree first.
fn polynomial_text(p: &BinomialPolynomial2) -> String {
    let terms: Vec<(i64, String)> = p
        .terms()
        .iter()
        .map(|t| {
            let parts: Vec<String> = [binomial_text("r", t.i), binomial_text("s", t.j)]
                .into_iter()
                .filter(|f| !f.is_empty())
                .collect();
            (t.e, parts.join("*"))
        })
        .collect();
    signed_sum(&terms)
}

fn coefficient_fields(p: &BinomialPolynomial2, report: &mut Report) {
    for (i, j) in BinomialPolynomial2::index_set(p.d) {
        report.field(format!("e{i}{j}"), p.coeff(i, j));
    }
}

fn window_text(w: &Window) -> String {
    format!("[{}..{}]x[{}..{}]", w.r_lo, w.r_hi, w.s_lo, w.s_hi)
}

fn fit(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let mut engine = Bhattacharya::new(&ctx.i, &ctx.j)?;
    let f = engine.fit(ctx.settings.fit_options())?;
    ctx.header(report);
    report.field("P(r,s)", polynomial_text(&f.polynomial));
    coefficient_fields(&f.polynomial, report);
    report
        .field("base", vec![f.base.0, f.base.1])
        .field("validated on", window_text(&f.validated_on))
        .field("postulation", f.postulation.map(|(r, s)| vec![r, s]))
        .field("shifts", f.shifts);
    Ok(())
}

fn mixed(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let mut engine = Bhattacharya::new(&ctx.i, &ctx.j)?;
    let f = engine.fit(ctx.settings.fit_options())?;
    let mm = engine.mixed_multiplicities(&f)?;
    ctx.header(report);
    for (j, e) in mm.iter().enumerate() {
        report.field(format!("e{j}(I|J)"), *e);
    }
    report.field("difference check", "agrees");
    Ok(())
}

fn hilbert(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let (label, ideal) = match ctx.settings.which {
        Which::I => ("I", &ctx.i),
        Which::J => {
            ctx.require_j("hilbert --ideal j")?;
            ("J", &ctx.j)
        }
    };
    let h = hilbert_fit_single_with(ideal, ctx.settings.fit_options())?;
    let d = h.polynomial.d;
    report.field(label, ctx.show(ideal));
    let basis: Vec<(i64, String)> = h
        .polynomial
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, binomial_text("n", d - k as u32)))
        .collect();
    report.field("P(n)", signed_sum(&basis));
    for (k, e) in h.polynomial.coefficients.iter().enumerate() {
        report.field(format!("e{k}"), *e);
    }
    let standard: Vec<(i64, String)> = h
        .standard
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let k = k as u32;
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            let arg = match (d - k).checked_sub(1) {
                Some(0) | None => "n".to_string(),
                Some(shift) => format!("n+{shift}"),
            };
            (sign * e, binomial_text(&arg, d - k))
        })
        .collect();
    report.field("standard form", signed_sum(&standard));
    for (k, e) in h.standard.iter().enumerate() {
        report.field(format!("ebar{k}"), *e);
    }
    report
        .field("base", h.base)
        .field("validated up to", h.validated_up_to)
        .field("postulation", h.postulation);
    Ok(())
}

/// `C(arg,k)`, with `C(arg,1)` written `arg` and `C(arg,0)` empty.
fn binomial_text(arg: &str, k: u32) -> String {
    match k {
        0 => String::new(),
        1 => arg.to_string(),
        _ => format!("C({arg},{k})"),
    }
}

/// `c1*t1 + c2*t2 - ...`, skipping zero coefficients.
fn signed_sum(terms: &[(i64, String)]) -> String {
    let mut out = String::new();
    for (c, t) in terms {
        if *c == 0 {
            continue;
        }
        let m = c.unsigned_abs();
        let body = match (m, t.is_empty()) {
            (m, true) => m.to_string(),
            (1, false) => t.clone(),
            (m, false) => format!("{m}*{t}"),
        };
        if out.is_empty() {
            out = if *c < 0 { format!("-{body}") } else { body };
        } else {
            out.push_str(if *c < 0 { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() { "0".into() } else { out }
}

fn reduction_witness(
    list: Option<&Vec<Vec<u32>>>,
    ideal: &MonomialIdeal,
) -> (Vec<Monomial>, &'static str) {
    match list {
        Some(gens) => (
            gens.iter().map(|e| Monomial::new(e.clone())).collect(),
            "witness",
        ),
        None => (ideal.pure_power_generators(), "pure powers"),
    }
}

fn complete_pairs(ctx: &Ctx) -> (Vec<(Monomial, Monomial)>, &'static str) {
    match &ctx.spec.witnesses.complete {
        Some(pairs) => (
            pairs
                .iter()
                .map(|(a, b)| (Monomial::new(a.clone()), Monomial::new(b.clone())))
                .collect(),
            "witness",
        ),
        None => (
            ctx.i
                .pure_power_generators()
                .into_iter()
                .zip(ctx.j.pure_power_generators())
                .collect(),
            "pure powers",
        ),
    }
}

fn rr(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let (r, s) = (ctx.settings.r, ctx.settings.s);
    let cfg = ctx.settings.closure()?;
    ctx.header(report);
    report.field("r", r).field("s", s);
    let mut cache = ProductCache::new(ctx.i.clone(), ctx.j.clone())?;
    let product = cache.product(r, s);
    let result = if ctx.settings.via {
        let (pairs, source) = complete_pairs(ctx);
        let ys = complete_reduction_products(&pairs);
        report
            .field("route", format!("colon by powers of {}", ctx.monos(&ys)))
            .field("reduction source", source);
        rr_closure_via_reduction(&ctx.i, &ctx.j, r, s, &ys, cfg)?
    } else {
        report.field("route", "colon by I^k J^k");
        rr_closure_cached(&mut cache, r, s, cfg)?
    };
    let product_len = product.colength()?;
    let closure_len = result.closure.colength()?;
    report
        .field("product length", product_len)
        .field("closure", ctx.show(&result.closure))
        .field("closure length", closure_len)
        .field("defect", product_len as i128 - closure_len as i128)
        .field("stabilized at", result.stabilized_at)
        .field("confirmed steps", result.confirmed_steps)
        .field("capped", result.capped);
    Ok(())
}

/// Defect cells reached at the closure cap carry a `*`.
fn capped_cell(value: u64, capped: bool) -> Value {
    if capped {
        Value::Text(format!("{value}*"))
    } else {
        value.into()
    }
}

fn defect(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let cfg = ctx.settings.closure()?;
    let mut cache = ProductCache::new(ctx.i.clone(), ctx.j.clone())?;
    let grid = grid_over("λ((I^r J^s)~ / I^r J^s)", ctx.settings.window(), |r, s| {
        let d = rr_defect_cached(&mut cache, r, s, cfg)?;
        Ok(capped_cell(d.defect, d.capped))
    })?;
    report.grid("defect", grid);
    Ok(())
}

fn reduction(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let w = &ctx.spec.witnesses;
    let mut targets = vec![("I", &ctx.i, w.reduction.as_ref())];
    if ctx.spec.has_j() {
        targets.push(("J", &ctx.j, w.reduction_j.as_ref()));
    }
    for (label, ideal, list) in targets {
        let (gens, source) = reduction_witness(list, ideal);
        let k = MonomialIdeal::minimalize(ideal.nvars(), gens)?;
        let cert = is_reduction(&k, ideal, ctx.settings.r_max)?;
        report
            .field(label, ctx.show(ideal))
            .field(format!("{label} reduction"), ctx.show(&k))
            .field(format!("{label} source"), source)
            .field(format!("{label} holds"), cert.holds)
            .field(format!("{label} reduction number"), cert.witness_r)
            .field(format!("{label} checked up to"), cert.checked_up_to);
    }
    Ok(())
}

fn jointred(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    ctx.require_j("jointred")?;
    ctx.header(report);
    if let Some((x, y)) = &ctx.spec.witnesses.joint {
        let (x, y) = (Monomial::new(x.clone()), Monomial::new(y.clone()));
        let holds = joint_reduction_zero(&x, &y, &ctx.i, &ctx.j)?;
        report
            .field("source", "witness")
            .field("x", ctx.mono(&x))
            .field("y", ctx.mono(&y))
            .field("xJ + yI = IJ", holds);
        return Ok(());
    }
    // Without a witness, try every pair of minimal generators.
    report.field("source", "generator search");
    for x in ctx.i.generators() {
        for y in ctx.j.generators() {
            if joint_reduction_zero(x, y, &ctx.i, &ctx.j)? {
                report
                    .field("x", ctx.mono(x))
                    .field("y", ctx.mono(y))
                    .field("xJ + yI = IJ", true);
                return Ok(());
            }
        }
    }
    report
        .field("x", Value::Null)
        .field("y", Value::Null)
        .field("xJ + yI = IJ", false);
    Ok(())
}

fn complete(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    ctx.require_j("complete")?;
    let (pairs, source) = complete_pairs(ctx);
    let cert = complete_reduction_check(&pairs, &ctx.i, &ctx.j, ctx.settings.r_max)?;
    let shown: Vec<String> = pairs
        .iter()
        .map(|(a, b)| format!("({},{})", ctx.mono(a), ctx.mono(b)))
        .collect();
    ctx.header(report);
    report
        .field("source", source)
        .field("pairs", shown.join(" "))
        .field("products", ctx.monos(&complete_reduction_products(&pairs)))
        .field("holds", cert.holds)
        .field("reduction number", cert.witness_r)
        .field("checked up to", cert.checked_up_to);
    Ok(())
}

/// `I^a J^b` with unit exponents and empty factors dropped.
fn product_text((a, b): (u32, u32)) -> String {
    let factor = |name: &str, k: u32| match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    };
    match (factor("I", a), factor("J", b)) {
        (i, j) if i.is_empty() && j.is_empty() => "1".into(),
        (i, j) if i.is_empty() || j.is_empty() => i + &j,
        (i, j) => format!("{i}*{j}"),
    }
}

fn decomp(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let list = &ctx.spec.witnesses.decomp;
    if list.is_empty() {
        return Err(CliError::Usage(
            "no `witness decomp` lines in the problem".into(),
        ));
    }
    ctx.header(report);
    for (n, w) in list.iter().enumerate() {
        let terms = ProblemSpec::decomposition_terms(w);
        let summands: Vec<String> = terms
            .iter()
            .map(|t| {
                let power = product_text(t.degree);
                match (ctx.mono(&t.monomial), power.as_str()) {
                    (m, "1") => m,
                    (m, p) if m == "1" => p.to_string(),
                    (m, p) => format!("{m}*{p}"),
                }
            })
            .collect();
        let holds = verify_decomposition(&ctx.i, &ctx.j, w.target, &terms)?;
        report
            .field(
                format!("decomposition {}", n + 1),
                format!("{} = {}", product_text(w.target), summands.join(" + ")),
            )
            .field(format!("holds {}", n + 1), holds);
    }
    Ok(())
}

fn diff(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let mut pa = ctx.analysis()?;
    let grid = grid_over("P(r,s) - B(r,s)", ctx.settings.window(), |r, s| {
        Ok(pa.difference(r, s)?.into())
    })?;
    report.grid("difference", grid);
    Ok(())
}

fn h2(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let mut pa = ctx.analysis()?;
    let grid = grid_over("λ(H²(R)_(r,s))", ctx.settings.window(), |r, s| {
        let h = pa.h2_length(r, s)?;
        Ok(capped_cell(h.value, h.capped))
    })?;
    report.grid("h2", grid);
    Ok(())
}

fn cmcheck(ctx: &Ctx, report: &mut Report) -> CliResult<bool> {
    ctx.require_j("cmcheck")?;
    let w = &ctx.spec.witnesses;
    let witnesses = w.joint.as_ref().map(|(x, y)| Cond3Witnesses {
        joint: (Monomial::new(x.clone()), Monomial::new(y.clone())),
        reduction_i: reduction_witness(w.reduction.as_ref(), &ctx.i).0,
        reduction_j: reduction_witness(w.reduction_j.as_ref(), &ctx.j).0,
    });
    let opts = CMOptions {
        window: ctx.settings.window,
        witnesses,
        r_max: ctx.settings.r_max,
    };
    let mut pa = ctx.analysis()?;
    let rep = pa.report(&opts)?;
    ctx.header(report);
    report.field("P(r,s)", polynomial_text(&rep.e_coeffs));
    coefficient_fields(&rep.e_coeffs, report);
    report
        .field("λ(A/I)", rep.len_i)
        .field("λ(A/J)", rep.len_j)
        .field("e10 = λ(A/I) and e01 = λ(A/J)", rep.cond1)
        .field("e10 >= λ(A/I) and e01 >= λ(A/J)", rep.cond1prime)
        .field(
            format!("P = B on {}", window_text(&rep.cond2_window.window)),
            rep.cond2_window.holds,
        )
        .field(
            "first mismatch",
            rep.cond2_window.first_mismatch.map(|(r, s)| vec![r, s]),
        );
    if let Some(c3) = &rep.cond3 {
        report
            .field("joint reduction number zero", c3.joint_reduction_zero)
            .field("reduction number of I", c3.reduction_number_i)
            .field("reduction number of J", c3.reduction_number_j)
            .field("joint reduction conditions", c3.holds);
    }
    let not_cm = rep.verdict == Verdict::NotCohenMacaulay;
    report
        .field(
            "verdict",
            if not_cm {
                "not Cohen-Macaulay"
            } else {
                "Cohen-Macaulay"
            },
        )
        .field("evidence", rep.evidence.clone())
        .field("justification", rep.justification.clone());
    Ok(not_cm)
}
