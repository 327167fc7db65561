use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cotype_zeta::arith::{is_prime, PrimeValidity};
use cotype_zeta::cotype::{
    catalog, catalog_entries, corank_specialize, cotype_zeta_free, functional_equation_check, route, LocalFormula,
    Route, CATALOG_LABELS, MAX_FREE_RANK,
};
use cotype_zeta::euler::{density, DEFAULT_PRIME_BOUND};
use cotype_zeta::igusa::{verify_closed_form, verify_primitive, Family};
use cotype_zeta::liealg::{LieAlgebra, QuadraticForm};
use cotype_zeta::oracle::{census, compare, default_max_exponent};
use cotype_zeta::Error;

/// Cotype zeta functions of rank-3 Lie rings.
#[derive(Parser, Debug)]
#[command(name = "cotype-zeta", version)]
struct Cli {
    /// One tab-separated `key=value` record per line.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a local formula.
    Formula(FormulaArgs),
    /// Count subalgebras of p-power index by cotype.
    Census(CensusArgs),
    /// Compare the census with the formula's series coefficients.
    Verify(CensusArgs),
    /// Check the functional equation of a symbolic formula.
    Fe(FeArgs),
    /// Check an Igusa closed form against point counts.
    Igusa(IgusaArgs),
    /// Proportion of subalgebras of corank at most m.
    Density(DensityArgs),
    /// List built-in algebras and Igusa families.
    Catalog,
}

#[derive(Args, Debug)]
struct FormulaArgs {
    /// Catalog name or `file:path`.
    #[arg(long)]
    algebra: String,
    /// Formula symbolic in X, valid for almost all primes (the default).
    #[arg(long, conflicts_with_all = ["prime", "class"])]
    symbolic: bool,
    /// Formula at one prime.
    #[arg(long, conflicts_with = "class")]
    prime: Option<u64>,
    /// Catalog prime class: all, odd, 1mod4, 3mod4, p=2.
    #[arg(long)]
    class: Option<String>,
    /// Set every Y_i to T.
    #[arg(long, conflicts_with = "corank")]
    univariate: bool,
    /// Restrict to corank at most m.
    #[arg(long)]
    corank: Option<usize>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    prime: u64,
    /// Largest n with index p^n; defaults by prime.
    #[arg(long)]
    max_exponent: Option<u32>,
}

#[derive(Args, Debug)]
struct FeArgs {
    #[arg(long, conflicts_with = "free_rank")]
    algebra: Option<String>,
    /// Check the formula at this prime (rejected for prime-specific formulas).
    #[arg(long)]
    prime: Option<u64>,
    /// Free module Z_p^d.
    #[arg(long)]
    free_rank: Option<usize>,
}

#[derive(Args, Debug)]
struct IgusaArgs {
    /// Family name, e.g. H, sl2_odd, L2_3mod4, solvable(1,2), character(-4).
    #[arg(long)]
    family: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 4)]
    levels: u32,
    /// Nine integer entries of the form's matrix, row by row; defaults to the family's form.
    #[arg(long, num_args = 9, allow_negative_numbers = true)]
    matrix: Option<Vec<i64>>,
    /// Check the primitive-count identity instead.
    #[arg(long)]
    primitive: bool,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 1)]
    corank: usize,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        };
        let mut message = e.to_string();
        if let Error::NoFormula { p, .. } = e {
            let _ = write!(message, "\nfallback: run `cotype-zeta census --prime {p}` on this algebra");
        }
        Failure { code, message }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Output buffer; exit code 1 marks a failed check.
struct Out {
    text: String,
    code: u8,
}

fn load_algebra(src: &str) -> Result<LieAlgebra, Failure> {
    if let Some(path) = src.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {path}: {e}")))?;
        return Ok(LieAlgebra::parse_definition(&text)?);
    }
    Ok(LieAlgebra::catalog(src)?)
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(input(format!("{p} is not a prime")))
    }
}

fn record(fields: &[(&str, String)]) -> String {
    let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join("\t") + "\n"
}

fn cmd_formula(a: &FormulaArgs, machine: bool) -> Result<Out, Failure> {
    // rank-1 and rank-2 catalog entries have no 3-dimensional algebra behind them
    let label_only = !a.algebra.starts_with("file:") && LieAlgebra::catalog(&a.algebra).is_err();
    let mut f: LocalFormula = if label_only {
        if !CATALOG_LABELS.contains(&a.algebra.as_str()) {
            return Err(Error::UnknownAlgebra(a.algebra.clone()).into());
        }
        match (&a.class, a.prime) {
            (Some(c), _) => catalog(&a.algebra, &c.parse::<PrimeValidity>()?)?,
            (None, Some(p)) => cotype_zeta::cotype::catalog_for_prime(&a.algebra, p)?,
            (None, None) => catalog_entries(&a.algebra)?.remove(0),
        }
    } else {
        let l = load_algebra(&a.algebra)?;
        if let Some(c) = &a.class {
            let label = l
                .catalog_label()
                .ok_or_else(|| input("--class needs a catalog algebra; use --prime for others"))?;
            catalog(label, &c.parse::<PrimeValidity>()?)?
        } else {
            if let Some(p) = a.prime {
                check_prime(p)?;
            }
            match route(&l, a.prime) {
                Route::Formula(f) => f,
                Route::NoFormula { p, reason } => return Err(Error::NoFormula { p, reason }.into()),
            }
        }
    };
    let m = if a.univariate { Some(f.rank().max(1)) } else { a.corank };
    if let Some(m) = m {
        f.value = corank_specialize(&f.value, m)?;
    }
    let text = if machine {
        record(&[
            ("record", "formula".into()),
            ("algebra", f.algebra.clone()),
            ("prime_validity", f.validity.to_string()),
            ("scale", f.scale.to_string()),
            ("corank", m.map_or("all".into(), |m| m.to_string())),
            ("value", f.value.to_string()),
        ])
    } else {
        format!("{f}\n")
    };
    Ok(Out { text, code: 0 })
}

fn cmd_census(a: &CensusArgs, machine: bool) -> Result<Out, Failure> {
    let l = load_algebra(&a.algebra)?;
    check_prime(a.prime)?;
    let n = a.max_exponent.unwrap_or_else(|| default_max_exponent(a.prime));
    let c = census(&l, a.prime, n)?;
    let text = if machine {
        c.counts
            .iter()
            .map(|(t, k)| {
                record(&[
                    ("record", "census".into()),
                    ("p", a.prime.to_string()),
                    ("c1", t[0].to_string()),
                    ("c2", t[1].to_string()),
                    ("c3", t[2].to_string()),
                    ("count", k.to_string()),
                ])
            })
            .collect()
    } else {
        c.to_string()
    };
    Ok(Out { text, code: 0 })
}

fn cmd_verify(a: &CensusArgs, machine: bool) -> Result<Out, Failure> {
    let l = load_algebra(&a.algebra)?;
    check_prime(a.prime)?;
    let n = a.max_exponent.unwrap_or_else(|| default_max_exponent(a.prime));
    let r = compare(&l, a.prime, n, None)?;
    let code = if r.passed() { 0 } else { 1 };
    let text = if machine {
        let mut s = String::new();
        for m in &r.mismatches {
            s += &record(&[
                ("record", "mismatch".into()),
                ("cotype", format!("{},{},{}", m.cotype[0], m.cotype[1], m.cotype[2])),
                ("census", m.census.to_string()),
                ("formula", m.formula.to_string()),
            ]);
        }
        s + &record(&[
            ("record", "verify".into()),
            ("algebra", r.algebra.clone()),
            ("p", r.p.to_string()),
            ("max_exponent", r.max_n.to_string()),
            ("formula_validity", r.formula.validity.to_string()),
            ("checked", r.checked.to_string()),
            ("mismatches", r.mismatches.len().to_string()),
            ("result", if r.passed() { "pass" } else { "fail" }.into()),
        ])
    } else {
        format!("{r}\n")
    };
    Ok(Out { text, code })
}

fn cmd_fe(a: &FeArgs, machine: bool) -> Result<Out, Failure> {
    let formulas: Vec<LocalFormula> = match (&a.algebra, a.free_rank) {
        (None, Some(d)) => {
            if d == 0 || d > MAX_FREE_RANK {
                return Err(input(format!("free rank must be in 1..={MAX_FREE_RANK}")));
            }
            vec![cotype_zeta_free(d)?]
        }
        (Some(src), None) => {
            let label_only = !src.starts_with("file:") && LieAlgebra::catalog(src).is_err();
            if label_only && CATALOG_LABELS.contains(&src.as_str()) {
                match a.prime {
                    Some(p) => vec![cotype_zeta::cotype::catalog_for_prime(src, p)?],
                    None => catalog_entries(src)?,
                }
            } else {
                let l = load_algebra(src)?;
                match (a.prime, l.catalog_label()) {
                    (Some(p), _) => {
                        check_prime(p)?;
                        match route(&l, Some(p)) {
                            Route::Formula(f) => vec![f],
                            Route::NoFormula { p, reason } => return Err(Error::NoFormula { p, reason }.into()),
                        }
                    }
                    (None, Some(label)) => catalog_entries(label)?,
                    (None, None) => match route(&l, None) {
                        Route::Formula(f) => vec![f],
                        Route::NoFormula { p, reason } => return Err(Error::NoFormula { p, reason }.into()),
                    },
                }
            }
        }
        _ => return Err(input("give exactly one of --algebra and --free-rank")),
    };
    let explicit = a.prime.is_some() || a.free_rank.is_some();
    let mut text = String::new();
    let mut code = 0;
    for f in &formulas {
        // without --prime the prime-specific entries are listed but not checked
        if f.validity.fixed_prime().is_some() && !explicit {
            if machine {
                text += &record(&[
                    ("record", "fe".into()),
                    ("algebra", f.algebra.clone()),
                    ("prime_validity", f.validity.to_string()),
                    ("result", "skipped".into()),
                ]);
            } else {
                let _ = writeln!(text, "{} ({}): skipped, formula is specific to one prime", f.algebra, f.validity);
            }
            continue;
        }
        let d = f.rank().max(1);
        let c = functional_equation_check(f, d)?;
        if !c.holds {
            code = 1;
        }
        if machine {
            let mut fields = vec![
                ("record", "fe".to_string()),
                ("algebra", f.algebra.clone()),
                ("prime_validity", f.validity.to_string()),
                ("rank", d.to_string()),
                ("result", if c.holds { "pass" } else { "fail" }.to_string()),
            ];
            if !c.holds {
                fields.push(("witness", c.witness.to_string()));
            }
            text += &record(&fields);
        } else if c.holds {
            let _ = writeln!(text, "{} ({}): functional equation holds with d = {d}", f.algebra, f.validity);
        } else {
            let _ = writeln!(text, "{} ({}): functional equation FAILS; difference {}", f.algebra, f.validity, c.witness);
        }
    }
    Ok(Out { text, code })
}

fn cmd_igusa(a: &IgusaArgs, machine: bool) -> Result<Out, Failure> {
    let fam: Family = a.family.parse()?;
    check_prime(a.prime)?;
    if a.levels == 0 {
        return Err(input("levels must be positive"));
    }
    let form = match &a.matrix {
        Some(v) => QuadraticForm::new([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]]),
        None => fam.form(a.prime),
    };
    let r = if a.primitive {
        verify_primitive(&form, fam, a.prime, a.levels)?
    } else {
        verify_closed_form(&form, fam, a.prime, a.levels)?
    };
    let code = if r.all_match() { 0 } else { 1 };
    let text = if machine {
        let mut s: String = r
            .levels
            .iter()
            .map(|c| {
                record(&[
                    ("record", "level".into()),
                    ("level", c.level.to_string()),
                    ("predicted", c.predicted.to_string()),
                    ("counted", c.counted.to_string()),
                    ("match", c.matches().to_string()),
                ])
            })
            .collect();
        s += &record(&[
            ("record", "igusa".into()),
            ("family", fam.to_string()),
            ("p", a.prime.to_string()),
            ("result", if r.all_match() { "pass" } else { "fail" }.into()),
        ]);
        s
    } else {
        format!("{r}\n")
    };
    Ok(Out { text, code })
}

fn cmd_density(a: &DensityArgs, machine: bool) -> Result<Out, Failure> {
    let l = load_algebra(&a.algebra)?;
    let d = density(&l, a.corank, a.prime_bound)?;
    let pole = &d.restricted.pole;
    let text = if machine {
        record(&[
            ("record", "density".into()),
            ("algebra", d.algebra.clone()),
            ("corank", d.corank.to_string()),
            ("prime_bound", a.prime_bound.to_string()),
            ("value", format!("{:.9}", d.value)),
            ("error", format!("{:.3e}", d.error)),
            ("sigma0", pole.sigma0.to_string()),
            ("order", pole.order.to_string()),
            ("leading_constant", format!("{:.12}", pole.leading_constant)),
            ("leading_constant_error", format!("{:.3e}", pole.error)),
            ("factors", d.restricted.factorization.to_string()),
            ("asymptotic", d.restricted.asymptotic().to_string()),
        ])
    } else {
        let mut s = format!("{d}\n");
        let _ = writeln!(s, "leading constant {:.12} +- {:.1e}", pole.leading_constant, pole.error);
        s
    };
    Ok(Out { text, code: 0 })
}

fn cmd_catalog(machine: bool) -> Result<Out, Failure> {
    let mut text = String::new();
    for label in CATALOG_LABELS {
        let classes: Vec<String> = catalog_entries(label)?.iter().map(|f| f.validity.to_string()).collect();
        let brackets = LieAlgebra::catalog(label).ok().map(|l| {
            let (a, b, c) = l.brackets();
            format!("[1,2]={a:?} [1,3]={b:?} [2,3]={c:?}")
        });
        if machine {
            text += &record(&[
                ("record", "algebra".into()),
                ("name", label.into()),
                ("prime_classes", classes.join(",")),
                ("brackets", brackets.unwrap_or_else(|| "-".into())),
            ]);
        } else {
            let _ = write!(text, "{label:<18} formulas for {}", classes.join(", "));
            if let Some(b) = brackets {
                let _ = write!(text, "; {b}");
            }
            text.push('\n');
        }
    }
    let families: Vec<String> = Family::CATALOG.iter().map(|f| f.to_string()).collect();
    let extra = ["solvable(i,k) for i in 1..=2", "character(d)"];
    if machine {
        for f in &families {
            text += &record(&[("record", "family".into()), ("name", f.clone())]);
        }
        for f in extra {
            text += &record(&[("record", "family".into()), ("name", f.into())]);
        }
    } else {
        let _ = writeln!(text, "igusa families: {}, {}", families.join(", "), extra.join(", "));
    }
    Ok(Out { text, code: 0 })
}

fn run(cli: &Cli) -> Result<Out, Failure> {
    let m = cli.machine;
    match &cli.command {
        Command::Formula(a) => cmd_formula(a, m),
        Command::Census(a) => cmd_census(a, m),
        Command::Verify(a) => cmd_verify(a, m),
        Command::Fe(a) => cmd_fe(a, m),
        Command::Igusa(a) => cmd_igusa(a, m),
        Command::Density(a) => cmd_density(a, m),
        Command::Catalog => cmd_catalog(m),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = out.text.trim_end_matches('\n');
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
