//! `virasoro`: command-line front end for virasoro-core.

mod cache;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use virasoro_core::acceptance;
use virasoro_core::algebra::rational::{format_rational, int, BigRational};
use virasoro_core::algebra::{Factorization, LinearFactor, MultiPoly, RatFunc};
use virasoro_core::casimir::{
    casimir_zero_mode, dimension_symbol, solve_casimir, zero_mode_eigenvalue, zero_mode_ward,
    CasimirExport,
};
use virasoro_core::correlator::{
    admissible_charges, consistency_constraint, derive_dimension, derive_g_polynomial,
    derive_killing, derive_trace_form, determining_level, scan_levels, DerivedForm, DerivedValue,
};
use virasoro_core::numerology::{
    deligne_audit, deligne_table, enumerate_integral_d1, enumerate_integral_d2, group_order_audit,
    kacmoody_ratio_check, moonshine_dimension_check, prime_divisor_audit, render_factored,
    AuditReport, EnumerationResult,
};
use virasoro_core::verma::{gram, vacuum_basis, GramExport, CHARGE};
use virasoro_core::Error;

use cache::Cache;
use render::{factored, factored_poly, factored_ratio, rationals, word};

#[derive(Parser)]
#[command(
    name = "virasoro",
    version,
    about = "Exact computations in the Virasoro vacuum module"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached Gram and zero-mode tables.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Highest level any command may touch.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(2..))]
    max_level: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Kac determinant at one level, factored, with its singular charges.
    KacDet {
        #[arg(long)]
        level: u32,
    },
    /// Gram matrix of the vacuum basis at one level.
    Gram {
        #[arg(long)]
        level: u32,
    },
    /// Casimir vector of a given weight at one level.
    Casimir {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        weight: i64,
        #[arg(long)]
        level: u32,
    },
    /// Zero-mode eigenvalue of the Casimir vector, with the per-word table.
    ZeroMode {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        weight: i64,
        #[arg(long)]
        level: u32,
    },
    /// Closed forms fixed by the two-point function of the given weight.
    Derive {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        weight: i64,
    },
    /// Consistency condition on (C, d_h) at a level past the determining one.
    Constraint {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        weight: i64,
        #[arg(long)]
        level: u32,
    },
    /// Positive charges at which the dimension is a positive integer.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=2))]
        weight: i64,
    },
    /// Audits against tabulated data, or the full acceptance suite.
    Verify {
        #[arg(value_enum, required_unless_present = "table")]
        target: Option<Target>,
        /// Prime-divisor table to audit.
        #[arg(long, conflicts_with = "target", value_parser = clap::value_parser!(u32).range(1..=4))]
        table: Option<u32>,
    },
    /// Every derivation, enumeration, audit and level scan in one document.
    Report,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    All,
    Moonshine,
    Deligne,
    Groups,
}

/// What a command produced. `failure` names the first failing check.
struct Output {
    json: Value,
    text: String,
    failure: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            failure: None,
        }
    }
}

struct Ctx {
    cache: Cache,
    max_level: u32,
}

fn usage(msg: String) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

impl Ctx {
    fn level(&self, level: u32) -> u32 {
        if level > self.max_level {
            usage(format!(
                "--level {level} exceeds --max-level {}",
                self.max_level
            ));
        }
        level
    }

    fn gram(&self, level: u32) -> Result<GramExport, Error> {
        self.cache
            .get_or_compute("gram", None, level, || Ok(gram(level).export()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        cache: Cache::new(cli.cache_dir.clone()),
        max_level: cli.max_level,
    };
    let result = match cli.command {
        Command::KacDet { level } => kac_det(&ctx, ctx.level(level)),
        Command::Gram { level } => gram_cmd(&ctx, ctx.level(level)),
        Command::Casimir { weight, level } => casimir(&ctx, weight, ctx.level(level)),
        Command::ZeroMode { weight, level } => zero_mode(&ctx, weight, ctx.level(level)),
        Command::Derive { weight } => derive(weight),
        Command::Constraint { weight, level } => {
            let floor = determining_level(weight);
            if level <= floor {
                usage(format!(
                    "--level {level} must exceed the determining level {floor} for weight {weight}"
                ));
            }
            constraint(weight, ctx.level(level))
        }
        Command::Enumerate { weight } => enumerate(weight),
        Command::Verify { target, table } => verify(target, table),
        Command::Report => report(ctx.max_level),
    };
    match result {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("JSON values always serialize")
                ),
                Format::Text => out.text,
            };
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(cell) => {
                    eprintln!("error: check failed at {cell}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("exports always serialize")
}

fn factorization(g: &GramExport) -> Factorization {
    let factors = g
        .factors
        .iter()
        .map(|f| {
            let at = |x: i64| {
                f.poly
                    .eval(CHARGE, &int(x))
                    .constant_value()
                    .expect("univariate in C")
            };
            let slope = at(1) - at(0);
            LinearFactor {
                poly: f.poly.clone(),
                mult: f.mult,
                root: -at(0) / slope,
            }
        })
        .collect();
    Factorization {
        variable: CHARGE.into(),
        constant: g.constant.clone(),
        factors,
        remainder: g.remainder.clone(),
    }
}

fn basis_words(g: &GramExport) -> Vec<String> {
    g.basis.iter().map(|p| word(p)).collect()
}

fn matrix_rows(g: &GramExport) -> Vec<Vec<String>> {
    g.entries
        .iter()
        .map(|r| r.iter().map(MultiPoly::to_string).collect())
        .collect()
}

fn kac_det(ctx: &Ctx, level: u32) -> Result<Output, Error> {
    let g = ctx.gram(level)?;
    let f = factorization(&g);
    let complete = f.is_complete();
    let roots = rationals(&f.roots());
    let json = json!({
        "level": level,
        "dimension": g.basis.len(),
        "basis": basis_words(&g),
        "matrix": matrix_rows(&g),
        "determinant": g.det.to_string(),
        "factored": factored_poly(&g.det),
        "constant": format_rational(&f.constant),
        "factors": f.factors.iter().map(|lf| json!({
            "factor": lf.poly.to_string(),
            "multiplicity": lf.mult,
            "root": format_rational(&lf.root),
        })).collect::<Vec<_>>(),
        "remainder": f.remainder.to_string(),
        "singular_charges": if complete { json!(roots) } else { Value::Null },
    });
    let mut text = format!("level {level}, dimension {}\n", g.basis.len());
    text += &format!("basis: {}\n", basis_words(&g).join(", "));
    text += "matrix:\n";
    for row in matrix_rows(&g) {
        text += &format!("  [{}]\n", row.join(", "));
    }
    text += &format!("det = {}\n", factored_poly(&g.det));
    text += &format!("expanded: {}\n", g.det);
    if complete {
        text += &format!(
            "singular charges: {}\n",
            if roots.is_empty() {
                "none".into()
            } else {
                roots.join(", ")
            }
        );
    } else {
        text += &format!("no rational roots in remainder {}\n", f.remainder);
    }
    Ok(Output::ok(json, text))
}

fn gram_cmd(ctx: &Ctx, level: u32) -> Result<Output, Error> {
    let g = ctx.gram(level)?;
    let json = json!({
        "level": level,
        "basis": basis_words(&g),
        "partitions": g.basis,
        "matrix": matrix_rows(&g),
    });
    let mut text = format!("level {level}, dimension {}\n", g.basis.len());
    for (w, row) in basis_words(&g).iter().zip(matrix_rows(&g)) {
        text += &format!("  {w}: [{}]\n", row.join(", "));
    }
    Ok(Output::ok(json, text))
}

fn casimir(ctx: &Ctx, weight: i64, level: u32) -> Result<Output, Error> {
    let sol: CasimirExport = ctx
        .cache
        .get_or_compute("casimir", Some(weight), level, || {
            solve_casimir(&int(weight), level).map(|s| s.export())
        })?;
    let terms: Vec<Value> = sol
        .terms
        .iter()
        .map(|t| {
            json!({
                "word": word(&t.parts),
                "parts": t.parts,
                "coefficient": RatFunc::new(t.coeff_num.clone(), t.coeff_den.clone()).to_string(),
                "factored": factored_ratio(&t.coeff_num, &t.coeff_den),
            })
        })
        .collect();
    let json = json!({
        "weight": weight,
        "level": level,
        "symbol": sol.symbol,
        "terms": terms,
        "zero": sol.terms.is_empty(),
        "poles": rationals(&sol.poles),
        "assumptions": sol.assumptions,
    });
    let mut text = format!(
        "Casimir vector, weight {weight}, level {level}, in units of {}\n",
        sol.symbol
    );
    if sol.terms.is_empty() {
        text += "  0\n";
    }
    for t in &sol.terms {
        text += &format!(
            "  {}: {}\n",
            word(&t.parts),
            factored_ratio(&t.coeff_num, &t.coeff_den)
        );
    }
    if !sol.poles.is_empty() {
        text += &format!("poles at C = {}\n", rationals(&sol.poles).join(", "));
    }
    for a in &sol.assumptions {
        text += &format!("assumes {a}\n");
    }
    Ok(Output::ok(json, text))
}

#[derive(Serialize, Deserialize)]
struct WordEigenvalue {
    word: String,
    eigenvalue: String,
    ward: String,
    agrees: bool,
}

#[derive(Serialize, Deserialize)]
struct ZeroModeTable {
    weight: i64,
    level: u32,
    symbol: String,
    value: String,
    factored: String,
    words: Vec<WordEigenvalue>,
}

fn zero_mode(ctx: &Ctx, weight: i64, level: u32) -> Result<Output, Error> {
    let table: ZeroModeTable =
        ctx.cache
            .get_or_compute("zero-mode", Some(weight), level, || {
                let value = casimir_zero_mode(&int(weight), level)?;
                let h = MultiPoly::constant(int(weight));
                let words = vacuum_basis(level)
                    .iter()
                    .map(|w| {
                        let e = zero_mode_eigenvalue(w, &h).value;
                        let ward = zero_mode_ward(w, &h);
                        WordEigenvalue {
                            word: w.to_string(),
                            eigenvalue: e.to_string(),
                            ward: ward.to_string(),
                            agrees: e == ward,
                        }
                    })
                    .collect();
                Ok::<_, Error>(ZeroModeTable {
                    weight,
                    level,
                    symbol: dimension_symbol(weight),
                    value: value.to_string(),
                    factored: factored(&value),
                    words,
                })
            })?;
    let mut text = format!(
        "zero mode of the weight-{weight} Casimir vector at level {level}: {}\n",
        table.factored
    );
    for w in &table.words {
        let mark = if w.agrees {
            ""
        } else {
            "  [recursion and Ward identity disagree]"
        };
        text += &format!("  o({}) = {}{mark}\n", w.word, w.eigenvalue);
    }
    let failure = table.words.iter().find(|w| !w.agrees).map(|w| {
        format!(
            "zero mode of {}: recursion {} vs Ward {}",
            w.word, w.eigenvalue, w.ward
        )
    });
    Ok(Output {
        json: to_value(&table),
        text,
        failure,
    })
}

fn derived_forms(weight: i64) -> Result<Vec<DerivedForm>, Error> {
    Ok(match weight {
        1 => vec![derive_killing()?, derive_dimension(1)?],
        2 => vec![
            derive_dimension(2)?,
            derive_g_polynomial()?,
            derive_trace_form()?,
        ],
        _ => vec![derive_dimension(3)?],
    })
}

fn derived_json(f: &DerivedForm) -> Value {
    let mut v = json!({ "name": f.name, "display": f.to_string() });
    match &f.value {
        DerivedValue::Function(r) => {
            v["numerator"] = json!(factored_poly(r.num()));
            v["denominator"] = json!(factored_poly(r.den()));
            v["factored"] = json!(factored(r));
        }
        DerivedValue::Ansatz(g) => {
            v["coefficients"] = json!(g.coeffs.iter().map(factored).collect::<Vec<_>>());
        }
    }
    v
}

fn derived_text(f: &DerivedForm) -> String {
    match &f.value {
        DerivedValue::Function(r) => format!("{} = {}\n", f.name, factored(r)),
        DerivedValue::Ansatz(g) => {
            let mut s = format!("{}:\n", f.name);
            for (j, c) in g.coeffs.iter().enumerate() {
                s += &format!("  coefficient {j}: {}\n", factored(c));
            }
            s
        }
    }
}

fn derive(weight: i64) -> Result<Output, Error> {
    let forms = derived_forms(weight)?;
    let json = json!({
        "weight": weight,
        "forms": forms.iter().map(derived_json).collect::<Vec<_>>(),
    });
    let text = forms.iter().map(derived_text).collect();
    Ok(Output::ok(json, text))
}

fn constraint(weight: i64, level: u32) -> Result<Output, Error> {
    let c = consistency_constraint(weight, level)?;
    let admissible =
        admissible_charges(weight, &c)?.map(|s| rationals(&s.into_iter().collect::<Vec<_>>()));
    let json = json!({
        "weight": weight,
        "level": level,
        "constraint": c.to_string(),
        "admissible": admissible,
    });
    let mut text = format!("weight {weight}, level {level}: {} = 0\n", c);
    match &admissible {
        None => text += "the level imposes no condition\n",
        Some(a) if a.is_empty() => text += "no admissible charge\n",
        Some(a) => text += &format!("admissible charges: {}\n", a.join(", ")),
    }
    Ok(Output::ok(json, text))
}

fn enumeration(weight: i64) -> Result<EnumerationResult, Error> {
    if weight == 1 {
        enumerate_integral_d1()
    } else {
        enumerate_integral_d2()
    }
}

fn enumerate(weight: i64) -> Result<Output, Error> {
    let e = enumeration(weight)?;
    let symbol = dimension_symbol(weight);
    let mut text = format!(
        "{} charges with {symbol} a positive integer\n",
        e.solutions.len()
    );
    for s in &e.solutions {
        text += &format!(
            "  C = {:<10} {symbol} = {} = {}\n",
            format_rational(&s.charge),
            s.value,
            render_factored(&s.value)
        );
    }
    if !e.nonpositive.is_empty() {
        text += &format!(
            "{} further charges give an integer {symbol} <= 0\n",
            e.nonpositive.len()
        );
    }
    text += &format!("method: {}\n", e.method_audit.method);
    for (k, v) in &e.method_audit.parameters {
        text += &format!("  {k} = {v}\n");
    }
    Ok(Output::ok(to_value(&e), text))
}

fn audits(reports: Vec<AuditReport>) -> Output {
    let failure = reports.iter().find_map(|r| {
        r.first_failure()
            .map(|c| format!("{}: {}", r.table, c.claim))
    });
    Output {
        json: json!({ "audits": reports, "pass": failure.is_none() }),
        text: reports.iter().map(ToString::to_string).collect(),
        failure,
    }
}

fn verify(target: Option<Target>, table: Option<u32>) -> Result<Output, Error> {
    if let Some(n) = table {
        return Ok(audits(vec![prime_divisor_audit(n)?]));
    }
    Ok(match target.expect("clap requires a target or --table") {
        Target::Moonshine => audits(vec![moonshine_dimension_check()?]),
        Target::Deligne => {
            let t = deligne_table();
            audits(vec![deligne_audit(&t)?, kacmoody_ratio_check(&t)])
        }
        Target::Groups => audits(vec![group_order_audit()]),
        Target::All => {
            let outcomes = acceptance::run_all();
            let mut text = String::new();
            for o in &outcomes {
                let mark = if o.pass { "PASS" } else { "FAIL" };
                text += &format!("[{mark}] {}. {}: {}\n", o.id, o.title, o.detail);
            }
            let passed = outcomes.iter().filter(|o| o.pass).count();
            text += &format!("{passed} of {} criteria pass\n", outcomes.len());
            let failure = outcomes
                .iter()
                .find(|o| !o.pass)
                .map(|o| format!("criterion {} ({}): {}", o.id, o.title, o.detail));
            Output {
                json: json!({ "criteria": outcomes, "pass": failure.is_none() }),
                text,
                failure,
            }
        }
    })
}

fn report(max_level: u32) -> Result<Output, Error> {
    let mut derivations = Vec::new();
    let mut text = String::from("Derivations\n");
    for h in 1..=3 {
        for f in derived_forms(h)? {
            text += &format!("  {}", derived_text(&f));
            derivations.push(derived_json(&f));
        }
    }

    let mut enumerations = serde_json::Map::new();
    text += "Enumerations\n";
    for h in 1..=2 {
        let e = enumeration(h)?;
        text += &format!(
            "  {}: {} positive integral values at C = {}\n",
            dimension_symbol(h),
            e.solutions.len(),
            rationals(&e.charges()).join(", ")
        );
        enumerations.insert(dimension_symbol(h), to_value(&e));
    }

    let deligne = deligne_table();
    let mut reports = vec![
        moonshine_dimension_check()?,
        deligne_audit(&deligne)?,
        kacmoody_ratio_check(&deligne),
        group_order_audit(),
    ];
    for t in 1..=4 {
        reports.push(prime_divisor_audit(t)?);
    }
    text += "Audits\n";
    for r in &reports {
        text += &format!(
            "  {}: {} ({} cells)\n",
            r.table,
            if r.pass { "pass" } else { "FAIL" },
            r.cells.len()
        );
    }

    let charges: Vec<BigRational> = deligne.iter().map(|e| e.charge.clone()).collect();
    let scans = vec![
        scan_levels(1, max_level, Some(&charges))?,
        scan_levels(2, max_level, None)?,
    ];
    text += "Level scans\n";
    for s in &scans {
        text += &format!(
            "  weight {} through level {}: surviving C = {{{}}}\n",
            s.weight,
            s.max_level,
            rationals(&s.surviving).join(", ")
        );
    }

    let failure = reports.iter().find_map(|r| {
        r.first_failure()
            .map(|c| format!("{}: {}", r.table, c.claim))
    });
    let json = json!({
        "derivations": derivations,
        "enumerations": enumerations,
        "audits": reports,
        "scans": scans,
        "pass": failure.is_none(),
    });
    Ok(Output {
        json,
        text,
        failure,
    })
}
