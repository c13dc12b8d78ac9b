use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hochschild_core::algebra::DEFAULT_BUDGET;
use hochschild_core::homology::{betti_report, radical_basis, ComplexSelector};
use hochschild_core::io::{cochain_from_json, cochain_header, cochain_to_json, parse_generator, scalar_to_json, write_group_csv};
use hochschild_core::products::{cup_conv, cup_one_simplicial, cup_simplicial, pre_lie_conv};
use hochschild_core::tqft::{hom_count_oracle, CobordismWord, FrobeniusData, State};
use hochschild_core::verify::{run_verification, Property, RunConfig};
use hochschild_core::{FieldSpec, FiniteGroup, GroupAlgebra};

#[derive(Parser)]
#[command(name = "hochschild", version, about = "Hochschild complexes of finite group rings")]
struct Cli {
    /// Group: C<n>, D<n>, S<n>, products like C2xC2, or a CSV table file.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Field: Q or F:<p>.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,
    /// Entry budget for cochain spaces.
    #[arg(long, global = true, env = "HF_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Conv,
    Simplicial,
    Cup1,
    Prelie,
}

#[derive(Subcommand)]
enum Command {
    /// Run the property suite; exits non-zero if any property fails.
    Verify {
        /// Run only these properties (repeatable).
        #[arg(long = "property")]
        properties: Vec<String>,
        /// List property names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Homology dimensions up to --max-degree.
    Betti {
        /// chain, bstar, delta, we or v.
        #[arg(long, default_value = "chain")]
        selector: String,
    },
    /// Closed-surface invariant of the degree-0 TQFT, or a cobordism word.
    Tqft {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Closed cobordism word, e.g. "unit comul 0 mul 0 counit".
        #[arg(long)]
        word: Option<String>,
    },
    /// Product of two cochains given as JSON files or `(g0,...)^*` generators.
    Product {
        #[arg(long, value_enum, default_value_t = Op::Conv)]
        op: Op,
        left: String,
        right: String,
    },
    /// Pairing radical against V_p for p up to --max-degree.
    Radical,
    /// Group summary (JSON) or multiplication table (CSV).
    GroupInfo,
}

fn load_group(spec: &str) -> Result<FiniteGroup> {
    let path = Path::new(spec);
    if path.is_file() {
        let f = File::open(path).with_context(|| format!("opening {spec}"))?;
        return Ok(FiniteGroup::from_csv(f)?);
    }
    Ok(FiniteGroup::parse(spec)?)
}

impl Cli {
    fn field(&self) -> Result<FieldSpec> {
        Ok(self.field.parse()?)
    }

    fn group_spec(&self) -> Result<&str> {
        self.group.as_deref().context("--group is required")
    }

    fn algebra(&self) -> Result<GroupAlgebra> {
        if self.budget == 0 {
            bail!("budget must be positive");
        }
        Ok(GroupAlgebra::new(load_group(self.group_spec()?)?, self.field()?).with_budget(self.budget))
    }

    fn emit(&self, body: &[u8]) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
            None => std::io::stdout().write_all(body)?,
        }
        Ok(())
    }

    fn emit_json(&self, v: &Value) -> Result<()> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.emit(s.as_bytes())
    }

    fn emit_csv(&self, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        self.emit(&w.into_inner()?)
    }
}

/// Returns whether every check in the command passed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Verify { properties, list } => {
            if *list {
                let names = Property::names().join("\n");
                cli.emit(format!("{names}\n").as_bytes())?;
                return Ok(true);
            }
            let config = RunConfig {
                group: cli.group_spec()?.to_string(),
                field: cli.field()?,
                max_degree: cli.max_degree,
                budget: cli.budget,
                seed: cli.seed,
                trials: cli.trials,
            };
            let report = run_verification(&config, properties)?;
            match cli.format {
                Format::Json => cli.emit_json(&serde_json::to_value(&report)?)?,
                Format::Csv => cli.emit_csv(
                    &["name", "trials", "passes", "pass"],
                    report
                        .properties
                        .iter()
                        .map(|p| vec![p.name.clone(), p.trials.to_string(), p.passes.to_string(), p.passed().to_string()])
                        .collect(),
                )?,
            }
            Ok(report.pass)
        }
        Command::Betti { selector } => {
            let alg = cli.algebra()?;
            let sel: ComplexSelector = selector.parse()?;
            let report = betti_report(&alg, sel, cli.max_degree)?;
            match cli.format {
                Format::Json => cli.emit_json(&serde_json::to_value(&report)?)?,
                Format::Csv => cli.emit_csv(
                    &["degree", "dim"],
                    report.betti.iter().map(|e| vec![e.degree.to_string(), e.dim.to_string()]).collect(),
                )?,
            }
            Ok(true)
        }
        Command::Tqft { genus, word } => {
            let alg = cli.algebra()?;
            let data = FrobeniusData::new(&alg)?;
            let (word, genus) = match word {
                Some(w) => (w.parse::<CobordismWord>()?, None),
                None => (CobordismWord::closed_surface(*genus), Some(*genus)),
            };
            let state = data.evaluate(&word, &State::scalar(alg.field().one()))?;
            let values: Vec<Value> = state.values().iter().map(scalar_to_json).collect();
            let mut report = json!({
                "group": alg.group().name(),
                "field": alg.field().to_string(),
                "genus": genus,
                "word": word.to_string(),
                "circles": state.circles(),
            });
            report["value"] = match state.as_scalar() {
                Some(s) => scalar_to_json(s),
                None => Value::Array(values.clone()),
            };
            // the homomorphism count is only comparable in characteristic 0
            if let (Some(g), FieldSpec::Rationals) = (genus, alg.field()) {
                report["hom_count"] = json!(hom_count_oracle(&alg, g)?);
            }
            match cli.format {
                Format::Json => cli.emit_json(&report)?,
                Format::Csv => cli.emit_csv(
                    &["group", "field", "word", "value"],
                    vec![vec![
                        alg.group().name().to_string(),
                        alg.field().to_string(),
                        word.to_string(),
                        state.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                    ]],
                )?,
            }
            Ok(true)
        }
        Command::Product { op, left, right } => {
            let alg = product_algebra(cli, left)?;
            let a = read_operand(&alg, left)?;
            let b = read_operand(&alg, right)?;
            let c = match op {
                Op::Conv => cup_conv(&alg, &a, &b)?,
                Op::Simplicial => cup_simplicial(&alg, &a, &b)?,
                Op::Cup1 => cup_one_simplicial(&alg, &a, &b)?,
                Op::Prelie => pre_lie_conv(&alg, &a, &b)?,
            };
            match cli.format {
                Format::Json => cli.emit_json(&cochain_to_json(&alg, &c))?,
                Format::Csv => {
                    let g = alg.group();
                    let rows = c
                        .values()
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| {
                            let t = alg.decode(i, c.degree() + 1);
                            let labels: Vec<&str> = t.iter().map(|&x| g.label(x)).collect();
                            vec![format!("({})", labels.join(",")), v.to_string()]
                        })
                        .collect();
                    cli.emit_csv(&["tuple", "value"], rows)?
                }
            }
            Ok(true)
        }
        Command::Radical => {
            let alg = cli.algebra()?;
            let rows = (0..=cli.max_degree)
                .map(|p| radical_basis(&alg, p))
                .collect::<hochschild_core::Result<Vec<_>>>()?;
            let pass = rows.iter().all(|r| r.equals_v);
            match cli.format {
                Format::Json => cli.emit_json(&json!({
                    "group": alg.group().name(),
                    "field": alg.field().to_string(),
                    "degrees": rows.iter().map(|r| json!({
                        "degree": r.degree,
                        "radical_dim": r.radical_dim,
                        "v_dim": r.v_dim,
                        "equals_v": r.equals_v,
                    })).collect::<Vec<_>>(),
                    "pass": pass,
                }))?,
                Format::Csv => cli.emit_csv(
                    &["degree", "radical_dim", "v_dim", "equals_v"],
                    rows.iter()
                        .map(|r| {
                            vec![r.degree.to_string(), r.radical_dim.to_string(), r.v_dim.to_string(), r.equals_v.to_string()]
                        })
                        .collect(),
                )?,
            }
            Ok(pass)
        }
        Command::GroupInfo => {
            let g = load_group(cli.group_spec()?)?;
            match cli.format {
                Format::Json => cli.emit_json(&json!({
                    "name": g.name(),
                    "order": g.order(),
                    "abelian": g.is_abelian(),
                    "labels": g.labels(),
                    "element_orders": g.element_orders(),
                    "classes": g.conjugacy_classes()
                        .iter()
                        .map(|c| c.iter().map(|&x| g.label(x)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }))?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_group_csv(&g, &mut buf)?;
                    cli.emit(&buf)?
                }
            }
            Ok(true)
        }
    }
}

/// The algebra for `product`: from `--group`, else from the left operand's file.
fn product_algebra(cli: &Cli, left: &str) -> Result<GroupAlgebra> {
    if cli.group.is_some() {
        return cli.algebra();
    }
    let v = read_json(left).context("--group is required when the left operand is a generator")?;
    let (group, field) = cochain_header(&v)?;
    Ok(GroupAlgebra::new(load_group(&group)?, field).with_budget(cli.budget))
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?)
}

fn read_operand(alg: &GroupAlgebra, s: &str) -> Result<hochschild_core::Cochain> {
    if s.trim_end().ends_with("^*") && !Path::new(s).exists() {
        return Ok(parse_generator(alg, s)?);
    }
    Ok(cochain_from_json(alg, &read_json(s)?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
