use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use f1g_core::burnside::BurnsideElementJson;
use f1g_core::f1::PointedMonoid;
use f1g_core::group::DEFAULT_ORDER_CAP;
use f1g_core::gtheory::{
    cartan_zero, count_simple_factors, g0_presentation, g1_via_splitting, DEFAULT_ENUMERATION_CAP,
};
use f1g_core::json::{
    DecompositionJson, DiamondJson, G0Json, GroupJson, LambdaRequest, LambdaResultJson,
    MackeyCheckJson, MarksJson, ModuleJson, MonoidJson, ProductJson, SimpleFactorsJson,
    SubgroupsJson, Wh0Json,
};
use f1g_core::lambda::{diamond, verify_lambda_ring, verify_pre_lambda, LambdaOps, LambdaReport};
use f1g_core::mackey::MackeySystem;
use f1g_core::suite::{run_suite, SuiteConfig, DEFAULT_SEED};
use f1g_core::{BurnsideElement, BurnsideRing, Error, FiniteGroup};

#[derive(Parser)]
#[command(
    name = "f1g",
    version,
    about = "Burnside rings, lambda-operations, Mackey structure and low G-theory of finite pointed monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; csv is available for `marks` only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Largest group order accepted from tables or generators.
    #[arg(long, global = true, env = "F1G_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,

    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone, Default)]
struct GroupSource {
    /// Library group, e.g. C6, D4, S3, A4, Q8, C2xC3.
    #[arg(long)]
    group: Option<String>,

    /// JSON file with {"name"?, "order", "cayley"} or {"generators", "degree"}.
    #[arg(long)]
    group_file: Option<PathBuf>,

    /// Permutation generator in cycle notation, e.g. "(1 2 3)"; repeatable.
    #[arg(long = "generator", visible_alias = "generators")]
    generators: Vec<String>,

    /// Number of points the generators act on.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of subgroups in canonical order.
    Subgroups(GroupSource),
    /// Table of marks.
    Marks(GroupSource),
    /// Product of two Burnside-ring elements.
    BurnsideMul {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Class in A(G) of a pointed G-set given as module JSON.
    Decompose {
        #[command(flatten)]
        source: GroupSource,
        /// Module JSON file; the monoid defaults to G_+.
        #[arg(long)]
        module_file: PathBuf,
    },
    /// lambda^k of an element.
    Lambda {
        #[command(flatten)]
        source: GroupSource,
        /// Coefficients "[a,b,...]" or {"basis", "coeffs"}.
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// JSON file with {"group", "element", "k"}.
        #[arg(long)]
        request_file: Option<PathBuf>,
    },
    /// Randomized check of the pre-lambda or lambda-ring axioms.
    LambdaVerify {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, value_enum, default_value_t = LambdaMode::Pre)]
        mode: LambdaMode,
        /// Largest k; defaults to 4 for pre and 3 for ring.
        #[arg(long)]
        k_cap: Option<usize>,
        #[arg(long, default_value_t = 3)]
        l_cap: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// The k-fold diamond power of the G-set of an effective element.
    Diamond {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        element: String,
        #[arg(long)]
        k: usize,
    },
    /// Double-coset formula, Frobenius reciprocity and Green-functor checks.
    MackeyCheck {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// G_0 from generators and relations up to a size bound.
    G0 {
        #[command(flatten)]
        source: GroupSource,
        /// Monoid JSON file, for a pointed monoid that is not a group monoid.
        #[arg(long)]
        monoid_file: Option<PathBuf>,
        /// Largest module size, basepoint included; defaults to |G| + 3, or 4 for a monoid file.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        enumeration_cap: usize,
    },
    /// G_1(G_+) from the splitting formula.
    G1(GroupSource),
    /// Cokernel of the Cartan map on pi_0.
    Wh0(GroupSource),
    /// Number of simple factors of F_q[G].
    SimpleFactors {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        q: u64,
    },
    /// Full invariant suite.
    Suite {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LambdaMode {
    Pre,
    Ring,
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Env {
    format: Format,
    order_cap: usize,
    seed: u64,
}

impl Env {
    fn group(&self, s: &GroupSource) -> Result<Arc<FiniteGroup>, Failure> {
        let given = s.group.is_some() as u8
            + s.group_file.is_some() as u8
            + (!s.generators.is_empty()) as u8;
        if given != 1 {
            return Err(Failure::Input(
                "give exactly one of --group, --group-file, --generator".into(),
            ));
        }
        let spec = if let Some(name) = &s.group {
            GroupJson::named(name)
        } else if let Some(path) = &s.group_file {
            parse_json(&read(path)?)?
        } else {
            GroupJson {
                generators: Some(s.generators.clone()),
                degree: s.degree,
                ..GroupJson::default()
            }
        };
        Ok(Arc::new(spec.build(self.order_cap)?))
    }

    fn ring(&self, s: &GroupSource) -> Result<BurnsideRing, Failure> {
        Ok(BurnsideRing::new(self.group(s)?)?)
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Outcome {
        match self.format {
            Format::Text => write_stdout(&format!("{}\n", text())),
            Format::Json => write_stdout(&format!(
                "{}\n",
                serde_json::to_string_pretty(value).expect("serializable")
            )),
            Format::Csv => {
                return Err(Failure::Input(
                    "csv output is only available for marks".into(),
                ))
            }
        }
        Ok(())
    }
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))
}

fn parse_element(ring: &BurnsideRing, text: &str) -> Result<BurnsideElement, Failure> {
    let value: serde_json::Value = parse_json(text)?;
    if value.is_array() {
        let coeffs: Vec<i64> = serde_json::from_value(value)
            .map_err(|e| Failure::Input(format!("bad element: {e}")))?;
        if coeffs.len() != ring.rank() {
            return Err(Failure::Input(format!(
                "element has {} coefficients, A(G) has rank {}",
                coeffs.len(),
                ring.rank()
            )));
        }
        Ok(BurnsideElement::new(coeffs))
    } else {
        let j: BurnsideElementJson = serde_json::from_value(value)
            .map_err(|e| Failure::Input(format!("bad element: {e}")))?;
        Ok(ring.element_from_json(&j)?)
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header)];
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n")
}

fn lambda_report_text(r: &LambdaReport) -> String {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.axiom.clone(),
                format!("{:?}", c.status).to_lowercase(),
                c.instances.to_string(),
            ]
        })
        .collect();
    let header = ["axiom", "status", "instances"].map(String::from);
    format!(
        "lambda checks for {} (seed {})\n{}",
        r.group,
        r.seed,
        table(&header, &rows)
    )
}

fn run(cli: Cli) -> Outcome {
    let env = Env {
        format: cli.format,
        order_cap: cli.order_cap,
        seed: cli.seed,
    };
    if env.format == Format::Csv && !matches!(cli.command, Command::Marks(_)) {
        return Err(Failure::Input(
            "csv output is only available for marks".into(),
        ));
    }
    match cli.command {
        Command::Subgroups(s) => {
            let ring = env.ring(&s)?;
            let out = SubgroupsJson::from_ring(&ring);
            env.emit(&out, || {
                let rows: Vec<Vec<String>> = out
                    .classes
                    .iter()
                    .map(|c| {
                        vec![
                            c.label.clone(),
                            c.order.to_string(),
                            c.class_size.to_string(),
                            c.weyl_order.to_string(),
                            format!("{:?}", c.representative),
                        ]
                    })
                    .collect();
                table(
                    &["class", "order", "conjugates", "|W|", "representative"].map(String::from),
                    &rows,
                )
            })
        }
        Command::Marks(s) => {
            let ring = env.ring(&s)?;
            let labels = ring.labels();
            match env.format {
                Format::Csv => {
                    write_stdout(&ring.marks().to_csv(&labels));
                    Ok(())
                }
                _ => {
                    let out = MarksJson::from_ring(&ring);
                    env.emit(&out, || {
                        let rows: Vec<Vec<String>> = out
                            .marks
                            .iter()
                            .zip(&labels)
                            .map(|(row, l)| {
                                std::iter::once(l.clone())
                                    .chain(row.iter().map(i64::to_string))
                                    .collect()
                            })
                            .collect();
                        let header: Vec<String> = std::iter::once(String::new())
                            .chain(labels.iter().cloned())
                            .collect();
                        table(&header, &rows)
                    })
                }
            }
        }
        Command::BurnsideMul { source, x, y } => {
            let ring = env.ring(&source)?;
            let (x, y) = (parse_element(&ring, &x)?, parse_element(&ring, &y)?);
            let p = ring.mul(&x, &y)?;
            let out = ProductJson {
                x: ring.element_json(&x),
                y: ring.element_json(&y),
                product: ring.element_json(&p),
            };
            env.emit(&out, || p.to_string())
        }
        Command::Decompose {
            source,
            module_file,
        } => {
            let ring = env.ring(&source)?;
            let spec: ModuleJson = parse_json(&read(&module_file)?)?;
            let s = spec.build(Some(ring.monoid()), env.order_cap)?;
            let x = ring.decompose(&s)?;
            let out = DecompositionJson {
                size: s.size(),
                element: ring.element_json(&x),
            };
            env.emit(&out, || x.to_string())
        }
        Command::Lambda {
            source,
            element,
            k,
            request_file,
        } => {
            let (ring, x, k) = match (request_file, element, k) {
                (Some(path), None, None) => {
                    let req: LambdaRequest = parse_json(&read(&path)?)?;
                    let ring = BurnsideRing::new(Arc::new(req.group.build(env.order_cap)?))?;
                    let x = ring.element_from_json(&req.element)?;
                    (ring, x, req.k)
                }
                (None, Some(e), Some(k)) => {
                    let ring = env.ring(&source)?;
                    let x = parse_element(&ring, &e)?;
                    (ring, x, k)
                }
                _ => {
                    return Err(Failure::Input(
                        "give either --request-file or both --element and --k".into(),
                    ))
                }
            };
            let value = LambdaOps::new(&ring).lambda_k(&x, k)?;
            let out = LambdaResultJson {
                k,
                element: ring.element_json(&x),
                result: ring.element_json(&value),
            };
            env.emit(&out, || value.to_string())
        }
        Command::LambdaVerify {
            source,
            mode,
            k_cap,
            l_cap,
            trials,
        } => {
            let ring = env.ring(&source)?;
            let report = match mode {
                LambdaMode::Pre => verify_pre_lambda(&ring, k_cap.unwrap_or(4), trials, env.seed)?,
                LambdaMode::Ring => {
                    verify_lambda_ring(&ring, k_cap.unwrap_or(3), l_cap, trials, env.seed)?
                }
            };
            env.emit(&report, || lambda_report_text(&report))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check("lambda axioms failed".into()))
            }
        }
        Command::Diamond { source, element, k } => {
            let ring = env.ring(&source)?;
            let x = parse_element(&ring, &element)?;
            let s = ring.realize(&x)?;
            let d = diamond(&s, k)?;
            let class = ring.decompose(&d)?;
            let out = DiamondJson {
                k,
                input_size: s.size(),
                size: d.size(),
                decomposition: ring.element_json(&class),
            };
            env.emit(&out, || {
                format!("size {} (basepoint included): {}", d.size(), class)
            })
        }
        Command::MackeyCheck { source, trials } => {
            let g = env.group(&source)?;
            let ms = MackeySystem::new(g.clone())?;
            let reports = vec![
                ms.double_coset_suite()?,
                ms.frobenius_suite(trials, env.seed)?,
                ms.green_morphism_check()?,
                ms.restriction_ring_hom_suite(trials, env.seed.wrapping_add(1))?,
                ms.transitivity_suite()?,
                ms.conjugation_suite()?,
            ];
            let passed = reports.iter().all(|r| r.passed());
            let out = MackeyCheckJson {
                group: g.name().unwrap_or("G").to_string(),
                seed: env.seed,
                reports,
            };
            env.emit(&out, || {
                let rows: Vec<Vec<String>> = out
                    .reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.check.clone(),
                            if r.passed() { "pass" } else { "fail" }.into(),
                            r.instances.to_string(),
                        ]
                    })
                    .collect();
                table(&["check", "status", "instances"].map(String::from), &rows)
            })?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Check("Mackey identities failed".into()))
            }
        }
        Command::G0 {
            source,
            monoid_file,
            bound,
            enumeration_cap,
        } => {
            let (monoid, default_bound) = match monoid_file {
                Some(path) => {
                    let spec: MonoidJson = parse_json(&read(&path)?)?;
                    (spec.build()?, 4)
                }
                None => {
                    let g = env.group(&source)?;
                    let n = g.order();
                    (PointedMonoid::group_monoid(&g), n + 3)
                }
            };
            let p = g0_presentation(&monoid, bound.unwrap_or(default_bound), enumeration_cap)?;
            let out = G0Json {
                size_bound: p.size_bound,
                generators: p.generator_labels.clone(),
                relations: p.relations.len(),
                report: p.report.clone(),
            };
            env.emit(&out, || {
                let stability = p
                    .report
                    .stability
                    .map(|s| format!(", {s}"))
                    .unwrap_or_default();
                format!("{} ({}{})", p.report, p.report.provenance, stability)
            })
        }
        Command::G1(s) => {
            let r = g1_via_splitting(&*env.group(&s)?)?;
            env.emit(&r, || format!("{} (via {})", r, r.provenance))
        }
        Command::Wh0(s) => {
            let ring = env.ring(&s)?;
            let c = cartan_zero(&ring)?;
            let out = Wh0Json {
                free_rank: c.wh0.free_rank,
                torsion: c.wh0.torsion.clone(),
                provenance: c.wh0.provenance.clone(),
                cartan_image: ring.element_json(&c.image),
            };
            env.emit(&out, || c.wh0.to_string())
        }
        Command::SimpleFactors { source, q } => {
            let g = env.group(&source)?;
            let count = count_simple_factors(&g, q)?;
            let out = SimpleFactorsJson {
                q,
                count,
                conjugacy_classes: g.conjugacy_classes().len(),
            };
            env.emit(&out, || count.to_string())
        }
        Command::Suite {
            source,
            trials,
            jobs,
        } => {
            let g = env.group(&source)?;
            let report = run_suite(
                g,
                SuiteConfig {
                    seed: env.seed,
                    trials,
                    jobs,
                },
            )?;
            env.emit(&report, || report.to_string())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check("suite failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
