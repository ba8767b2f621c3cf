//! `extclass`: inspect algebras, run the classification pipeline, and
//! verify the embedded classification end to end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use extclass_core::algebra::Algebra;
use extclass_core::aut::orbit_reps;
use extclass_core::catalog;
use extclass_core::classify::classify;
use extclass_core::cohomology::h2;
use extclass_core::error::Error;
use extclass_core::json as fmt;
use extclass_core::scalar::{Field, Scalar};
use extclass_core::verify::run_suite;

#[derive(Parser)]
#[command(name = "extclass", version, about = "central-extension classification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// ground field: Q, Qi, or Fp
    #[arg(long, default_value = "Q")]
    field: String,
    /// prime for --field Fp
    #[arg(long)]
    p: Option<u64>,
    /// parameter for the parametric families (scalar syntax of the field)
    #[arg(long)]
    alpha: Option<String>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field, Error> {
        match self.field.as_str() {
            "Q" => Ok(Field::Q),
            "Qi" => Ok(Field::Qi),
            "Fp" => {
                let p = self
                    .p
                    .ok_or_else(|| Error::Parameter("--field Fp requires --p".into()))?;
                Ok(Field::Fp(p))
            }
            other => Err(Error::Parameter(format!(
                "unknown field {:?}; expected Q, Qi or Fp",
                other
            ))),
        }
    }

    fn alpha(&self, field: Field) -> Result<Option<Scalar>, Error> {
        self.alpha
            .as_deref()
            .map(|s| Scalar::parse(s, field))
            .transpose()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Annihilator, fingerprint and cohomology of one algebra
    Info {
        /// `catalog:NAME` or a path to a JSON algebra file
        target: String,
        #[command(flatten)]
        field: FieldArgs,
        /// also enumerate orbit representatives on T_s (finite fields)
        #[arg(long)]
        s: Option<usize>,
        /// write the report as JSON to this path ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Rebuild the dimension-n classification over F_p from extensions
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        /// worker hint (the pipeline is deterministic regardless)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the full verification suite
    VerifyPaper {
        /// run only checks whose id contains this substring
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Catalog access
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Emit every catalog entry in the JSON algebra format
    Dump {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            let usage = matches!(
                e,
                Error::Parse(_) | Error::Parameter(_) | Error::UnknownEntry(_)
            );
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Info {
            target,
            field,
            s,
            json,
        } => cmd_info(&target, &field, s, json.as_deref()),
        Command::Classify { n, p, json, jobs } => {
            let _ = jobs;
            cmd_classify(n, p, json.as_deref())
        }
        Command::VerifyPaper { only, json, jobs } => {
            let _ = jobs;
            cmd_verify(only.as_deref(), json.as_deref())
        }
        Command::Catalog { sub } => match sub {
            CatalogCmd::Dump { field, json } => cmd_dump(&field, json.as_deref()),
        },
    }
}

fn load(target: &str, fa: &FieldArgs) -> Result<Algebra, Error> {
    if let Some(name) = target.strip_prefix("catalog:") {
        let field = fa.field()?;
        let alpha = fa.alpha(field)?;
        catalog::resolve(name, alpha.as_ref(), field)
    } else {
        let text = std::fs::read_to_string(target)
            .map_err(|e| Error::Parse(format!("{}: {}", target, e)))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {}", target, e)))?;
        fmt::algebra_from_json(&value)
    }
}

fn write_json(path: &std::path::Path, value: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    if path.as_os_str() == "-" {
        println!("{}", text);
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))
}

fn cmd_info(
    target: &str,
    fa: &FieldArgs,
    s: Option<usize>,
    json: Option<&std::path::Path>,
) -> Result<ExitCode, Error> {
    let a = load(target, fa)?;
    let ann = a.annihilator();
    let coh = h2(&a);
    let fp = a.fingerprint();

    println!(
        "{} : dim {} over {}",
        a.name().unwrap_or("algebra"),
        a.dim(),
        a.field()
    );
    println!("Ann dim {}  basis rows:", ann.dim());
    for r in 0..ann.dim() {
        let row: Vec<String> = (0..a.dim())
            .map(|c| ann.basis()[(r, c)].to_string())
            .collect();
        println!("  [{}]", row.join(", "));
    }
    println!(
        "dim Z2 = {}  dim B2 = {}  dim H2 = {}",
        coh.z2_dim(),
        coh.b2_dim(),
        coh.h2_dim()
    );
    for (k, rep) in coh.reps().iter().enumerate() {
        println!("H2 rep {}: {}", k + 1, cocycle_string(rep));
    }
    println!("fingerprint: {}", fp.summary());

    let mut orbit_json = serde_json::Value::Null;
    if let Some(s) = s {
        let part = orbit_reps(&a, &coh, s)?;
        println!(
            "T_{}: {} of {} subspaces, {} orbit(s), |Aut| = {}",
            s,
            part.ts_size,
            part.grassmannian_size,
            part.orbits.len(),
            part.aut_order
        );
        for (k, orbit) in part.orbits.iter().enumerate() {
            println!(
                "orbit {}: size {}, rep rows {}",
                k,
                orbit.members.len(),
                subspace_rows(&orbit.rep)
            );
        }
        orbit_json = json!({
            "s": s,
            "ts_size": part.ts_size,
            "grassmannian": part.grassmannian_size.to_string(),
            "aut_order": part.aut_order,
            "orbits": part.orbits.iter().map(|o| json!({
                "size": o.members.len(),
                "rep": subspace_rows(&o.rep),
            })).collect::<Vec<_>>(),
        });
    }

    if let Some(path) = json {
        let report = json!({
            "algebra": fmt::algebra_to_json(&a),
            "ann_dim": ann.dim(),
            "z2_dim": coh.z2_dim(),
            "b2_dim": coh.b2_dim(),
            "h2_dim": coh.h2_dim(),
            "h2_reps": coh.reps().iter().map(cocycle_string).collect::<Vec<_>>(),
            "fingerprint": fp.summary(),
            "orbits": orbit_json,
        });
        write_json(path, &report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cocycle_string(c: &extclass_core::cohomology::Cocycle) -> String {
    let n = c.n();
    let mut terms = Vec::new();
    for (pos, (i, j)) in extclass_core::algebra::pairs(n).enumerate() {
        let coeff = &c.coeffs()[pos];
        if !coeff.is_zero() {
            if coeff.is_one() {
                terms.push(format!("D{}{}", i + 1, j + 1));
            } else {
                terms.push(format!("({})D{}{}", coeff, i + 1, j + 1));
            }
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn subspace_rows(s: &extclass_core::subspace::Subspace) -> String {
    let rows: Vec<String> = (0..s.dim())
        .map(|r| {
            let row: Vec<String> = (0..s.ambient())
                .map(|c| s.basis()[(r, c)].to_string())
                .collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("{{{}}}", rows.join(" "))
}

fn cmd_classify(n: usize, p: u64, json: Option<&std::path::Path>) -> Result<ExitCode, Error> {
    let report = classify(n, p)?;
    println!("classify n={} over F_{}", n, p);
    for pr in &report.produced {
        println!(
            "{}[orbit {}] -> {}   ann_formula={} ann_dim={} component={}",
            pr.base_label,
            pr.orbit_index,
            if pr.matches.is_empty() {
                "UNMATCHED".to_string()
            } else {
                pr.matches.join(", ")
            },
            pr.ann_formula_ok,
            pr.ann_dim_ok,
            pr.has_ann_component
        );
    }
    println!("target coverage:");
    for (label, hits) in &report.target_hits {
        println!("  {} <- {} extension(s)", label, hits);
    }
    println!(
        "one_to_one={} split_rows_ok={}",
        report.one_to_one, report.split_rows_ok
    );

    if let Some(path) = json {
        let value = json!({
            "n": report.n,
            "p": report.p,
            "produced": report.produced.iter().map(|pr| json!({
                "base": pr.base_label,
                "orbit": pr.orbit_index,
                "algebra": fmt::algebra_to_json(&pr.algebra),
                "ann_formula_ok": pr.ann_formula_ok,
                "ann_dim_ok": pr.ann_dim_ok,
                "has_ann_component": pr.has_ann_component,
                "matches": pr.matches,
            })).collect::<Vec<_>>(),
            "target_hits": report.target_hits,
            "one_to_one": report.one_to_one,
            "split_rows_ok": report.split_rows_ok,
        });
        write_json(path, &value)?;
    }

    let ok = report.one_to_one
        && report.split_rows_ok
        && report
            .produced
            .iter()
            .all(|pr| pr.ann_formula_ok && pr.ann_dim_ok && !pr.has_ann_component);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_verify(only: Option<&str>, json: Option<&std::path::Path>) -> Result<ExitCode, Error> {
    let seed = std::env::var("EXTCLASS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let results = run_suite(only, seed)?;
    if results.is_empty() {
        return Err(Error::Parameter(format!(
            "--only {:?} matches no check",
            only.unwrap_or("")
        )));
    }
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{}] {} — {}", status, r.id, r.name);
        for d in &r.details {
            println!("    {}", d);
        }
        all_ok &= r.passed;
    }
    println!(
        "{}: {}/{} checks passed",
        if all_ok { "OK" } else { "FAILED" },
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );

    if let Some(path) = json {
        let value = json!({
            "seed": seed,
            "checks": results.iter().map(|r| json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
            })).collect::<Vec<_>>(),
            "passed": all_ok,
        });
        write_json(path, &value)?;
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_dump(fa: &FieldArgs, json: Option<&std::path::Path>) -> Result<ExitCode, Error> {
    let field = fa.field()?;
    let alpha = fa
        .alpha(field)?
        .unwrap_or_else(|| Scalar::from_int(2, field));
    let mut items = Vec::new();
    for entry in catalog::entries() {
        let a = catalog::resolve(
            &entry.name,
            entry.parametric.then_some(&alpha),
            field,
        )?;
        items.push(fmt::algebra_to_json(&a));
    }
    let value = serde_json::Value::Array(items);
    match json {
        Some(path) => write_json(path, &value)?,
        None => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
    Ok(ExitCode::SUCCESS)
}
