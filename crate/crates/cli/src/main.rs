//! `finspace`: validate space documents, run predicates, compute cohomology,
//! cores, homotopy equivalences, fibered products and Stein factorizations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use finspace::classify::{
    is_affine_certified, is_affine_morphism, is_locally_acyclic, is_qc_isomorphism, is_quasicoherent_space, is_schematic,
    is_schematic_morphism, is_semiseparated, schematic_fibered_product, stein_factorization,
};
use finspace::cohomology::{cohomology_report, is_acyclic};
use finspace::format::{load, Loaded, SpaceDoc};
use finspace::homotopy::{core_with, homotopy_equivalent, RemovalOrder, ISO_BUDGET};
use finspace::sheafmod::{is_quasicoherent, SheafModule};
use finspace::space::RingedSpace;
use finspace::{Error, Value, Verdict, Window};

#[derive(Parser)]
#[command(name = "finspace", version, about = "Ringed finite spaces: validation, cohomology, cores and schematic predicates")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    QuasicoherentSpace,
    Schematic,
    Semiseparated,
    Affine,
    Acyclic,
    /// Quasi-coherence of the module given by --sheaf.
    Quasicoherent,
    SchematicMorphism,
    LocallyAcyclic,
    AffineMorphism,
    QcIsomorphism,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a document with its modules and morphisms.
    Validate { file: PathBuf },
    /// Run a predicate on the space, a module (--sheaf) or a morphism (--morphism).
    Check {
        file: PathBuf,
        #[arg(value_enum)]
        predicate: Predicate,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
        #[arg(long)]
        sheaf: Option<String>,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Cohomology of O (or of --sheaf) on the whole space or on an open set.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        sheaf: Option<String>,
        /// Comma-separated points of the set to take sections over.
        #[arg(long)]
        on: Option<String>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Remove beat points; prints the trace and the core document.
    Core {
        file: PathBuf,
        /// Randomized removal order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Homotopy equivalence of two spaces, by comparing cores.
    Hequiv { a: PathBuf, b: PathBuf },
    /// `X ×_S Y` for morphisms `--f` in X's document and `--g` in Y's, both into S.
    Fprod {
        x: PathBuf,
        y: PathBuf,
        s: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Stein factorization of a morphism in the document.
    Stein {
        file: PathBuf,
        morphism: String,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
}

const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {}", e);
            }
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn window_of(flag: &Option<Vec<i64>>, doc: &SpaceDoc) -> anyhow::Result<Option<Window>> {
    match flag {
        Some(v) => {
            anyhow::ensure!(v[0] <= v[1], "empty window [{}, {}]", v[0], v[1]);
            Ok(Some(Window::new(v[0], v[1])))
        }
        None => Ok(doc.window()),
    }
}

fn open(path: &Path) -> anyhow::Result<(Loaded, RingedSpace)> {
    let l = load(path)?;
    let x = l.doc.space()?;
    Ok((l, x))
}

fn exit_of(v: &Verdict) -> u8 {
    v.value.exit_code() as u8
}

fn report_verdict(cli: &Cli, what: &str, v: &Verdict) {
    if cli.json {
        println!("{}", json!({ "check": what, "verdict": v }));
    } else {
        println!("{}: {}", what, v);
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.cmd {
        Cmd::Validate { file } => validate(cli, file),
        Cmd::Check { file, predicate, window, sheaf, morphism } => {
            let (l, x) = open(file)?;
            let w = window_of(window, &l.doc)?;
            let wr = w.as_ref();
            let need_finite = || x.as_finite_space();
            let morph = || -> anyhow::Result<_> {
                let name = morphism.as_deref().ok_or_else(|| anyhow::anyhow!("this predicate needs --morphism"))?;
                Ok(l.doc.morphism(&x, name, &l.dir)?)
            };
            let (what, v) = match predicate {
                Predicate::QuasicoherentSpace => ("quasicoherent-space", is_quasicoherent_space(&need_finite()?, wr)?),
                Predicate::Schematic => ("schematic", is_schematic(&need_finite()?, wr)?),
                Predicate::Semiseparated => ("semiseparated", is_semiseparated(&need_finite()?, wr)?),
                Predicate::Affine => ("affine", is_affine_certified(&x, wr)?),
                Predicate::Acyclic => ("acyclic", is_acyclic(&x, &(0..x.len()).collect::<Vec<_>>(), wr)?),
                Predicate::Quasicoherent => {
                    let name = sheaf.as_deref().ok_or_else(|| anyhow::anyhow!("quasicoherent needs --sheaf"))?;
                    ("quasicoherent", is_quasicoherent(&l.doc.module(&x, name)?, wr)?)
                }
                Predicate::SchematicMorphism => ("schematic-morphism", is_schematic_morphism(&morph()?, wr)?),
                Predicate::LocallyAcyclic => ("locally-acyclic", is_locally_acyclic(&morph()?, wr)?),
                Predicate::AffineMorphism => ("affine-morphism", is_affine_morphism(&morph()?, wr)?),
                Predicate::QcIsomorphism => ("qc-isomorphism", is_qc_isomorphism(&morph()?, wr)?),
            };
            report_verdict(cli, what, &v);
            Ok(exit_of(&v))
        }
        Cmd::Cohomology { file, sheaf, on, window } => {
            let (l, x) = open(file)?;
            let w = window_of(window, &l.doc)?;
            let m = match sheaf {
                Some(name) => l.doc.module(&x, name)?,
                None => SheafModule::structure(&x),
            };
            let subset = match on {
                Some(s) => s.split(',').map(|p| x.index(p.trim())).collect::<Result<Vec<_>, _>>()?,
                None => (0..x.len()).collect(),
            };
            let r = cohomology_report(&m, &subset, w.as_ref())?;
            if cli.json {
                let table: Vec<_> = r.degrees.iter().enumerate().map(|(i, h)| json!({ "degree": i, "value": h.to_string() })).collect();
                println!("{}", json!({ "cohomology": table, "window": r.window }));
            } else {
                print!("{}", r);
            }
            Ok(0)
        }
        Cmd::Core { file, seed } => {
            let (l, x) = open(file)?;
            let order = seed.map_or(RemovalOrder::Lexicographic, RemovalOrder::Seeded);
            let c = core_with(&x, order)?;
            let doc = SpaceDoc::from_space(&c.core, l.doc.name.as_deref(), l.doc.window());
            if cli.json {
                println!("{}", json!({ "trace": c.trace, "core": serde_json::from_str::<serde_json::Value>(&doc.to_json())? }));
            } else {
                for s in &c.trace {
                    println!("# removed {} ({:?}, partner {})", s.point, s.kind, s.partner);
                }
                print!("{}", doc.to_toml());
            }
            Ok(0)
        }
        Cmd::Hequiv { a, b } => {
            let (_, x) = open(a)?;
            let (_, y) = open(b)?;
            let v = homotopy_equivalent(&x, &y, ISO_BUDGET)?;
            report_verdict(cli, "homotopy-equivalent", &v);
            Ok(exit_of(&v))
        }
        Cmd::Fprod { x, y, s, f, g, window } => {
            let (lx, sx) = open(x)?;
            let (ly, sy) = open(y)?;
            let (_, ss) = open(s)?;
            let w = window_of(window, &lx.doc)?;
            let fm = lx.doc.morphism_into(&sx, f, &ss)?;
            let gm = ly.doc.morphism_into(&sy, g, &ss)?;
            let r = schematic_fibered_product(&fm, &gm, w.as_ref())?;
            let doc = SpaceDoc::from_space(&r.product.space, None, w);
            let ok = r.holds();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "product": serde_json::from_str::<serde_json::Value>(&doc.to_json())?,
                        "certificates": r.certificates_json(),
                        "pushforward": r.pushforward.as_ref().map(|c| c.holds()),
                    })
                );
            } else {
                println!("# flat restrictions: {}", r.finite);
                println!("# schematic: {}", r.schematic);
                match &r.pushforward {
                    Some(c) => println!("# h_*O = f_*O ⊗ g_*O: {}", if c.holds() { "holds" } else { "fails" }),
                    None => println!("# h_*O = f_*O ⊗ g_*O: not checked (a leg is not certified affine)"),
                }
                print!("{}", doc.to_toml());
            }
            Ok(if ok { 0 } else if r.finite.is_no() || r.schematic.is_no() { 1 } else { 2 })
        }
        Cmd::Stein { file, morphism, window } => {
            let (l, x) = open(file)?;
            let w = window_of(window, &l.doc)?;
            let f = l.doc.morphism(&x, morphism, &l.dir)?;
            let st = stein_factorization(&f, w.as_ref())?;
            let doc = SpaceDoc::from_space(&st.space, None, w);
            let ok = st.pushforward.holds() && st.second_affine.holds();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "space": serde_json::from_str::<serde_json::Value>(&doc.to_json())?,
                        "first_map": st.first.map().iter().map(|&p| st.space.id(p)).collect::<Vec<_>>(),
                        "pushforward": st.pushforward.holds(),
                        "second_affine": st.second_affine,
                    })
                );
            } else {
                println!("# f'_*O_X = O_Y': {}", if st.pushforward.holds() { "holds" } else { "fails" });
                println!("# second leg affine: {}", st.second_affine);
                print!("{}", doc.to_toml());
            }
            Ok(if ok {
                0
            } else if st.second_affine.value == Value::Unknown && st.pushforward.holds() {
                2
            } else {
                1
            })
        }
    }
}

fn validate(cli: &Cli, file: &Path) -> anyhow::Result<u8> {
    let (l, x) = open(file)?;
    let finite = match x.as_finite_space() {
        Ok(_) => "yes".to_string(),
        Err(Error::NotFinite(s)) => format!("no: {}", s),
        Err(e) => return Err(e.into()),
    };
    let modules = l.doc.module_names().into_iter().map(|n| l.doc.module(&x, n).map(|_| n.to_string())).collect::<Result<Vec<_>, _>>()?;
    let morphisms = l
        .doc
        .morphisms
        .iter()
        .map(|m| l.doc.morphism(&x, &m.name, &l.dir).map(|_| m.name.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    if cli.json {
        println!(
            "{}",
            json!({
                "valid": true,
                "points": x.len(),
                "backend": format!("{:?}", x.backend()),
                "finite_space": finite == "yes",
                "modules": modules,
                "morphisms": morphisms,
            })
        );
    } else {
        println!("valid: {} points, backend {:?}", x.len(), x.backend());
        println!("flat restrictions: {}", finite);
        for m in &modules {
            println!("module `{}`: valid", m);
        }
        for m in &morphisms {
            println!("morphism `{}`: valid", m);
        }
    }
    Ok(0)
}
