use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hilbext::algebra::{validate, FiniteAlgebra, VarietyTag};
use hilbext::duality::phi;
use hilbext::enumeration::enumerate_algebras;
use hilbext::extensions::{extend, ExtensionKind, ExtensionResult};
use hilbext::io::{
    emit_algebra, emit_morphism, parse_algebra_document, read_morphism, read_text, signature_of,
    write_file,
};
use hilbext::morphisms::{lift, Counterexample, Morphism};
use hilbext::suites::{checks_of, Catalogs, Suite};

type CmdResult = Result<ExitCode, Box<dyn Error>>;

const VERIFICATION_FAILED: u8 = 1;
const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hilbext",
    version,
    about = "Finite Hilbert algebras and their free extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra document against the axioms of a variety
    Validate {
        file: PathBuf,
        /// Variety to check against; defaults to the declared one
        #[arg(long)]
        variety: Option<VarietyTag>,
    },
    /// Print the dual space X(H) and the map φ
    Dual { file: PathBuf },
    /// Build the is, ghey, hey or dagger extension
    Extend {
        file: PathBuf,
        #[arg(long)]
        target: ExtensionKind,
        /// Write the extension as an algebra document
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Lift a morphism to the extensions of its domain and codomain
    Lift {
        morphism: PathBuf,
        #[arg(long)]
        target: ExtensionKind,
        /// Write the lifted morphism as a morphism document
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Count algebras of a variety up to isomorphism
    Enumerate {
        #[arg(long)]
        variety: VarietyTag,
        #[arg(long)]
        size: usize,
        /// Write one document per algebra into this directory
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run a verification suite over every enumerated algebra
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Write counterexample documents here instead of printing them
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file, variety } => cmd_validate(&file, variety),
        Command::Dual { file } => cmd_dual(&file),
        Command::Extend { file, target, emit } => cmd_extend(&file, target, emit.as_deref()),
        Command::Lift {
            morphism,
            target,
            emit,
        } => cmd_lift(&morphism, target, emit.as_deref()),
        Command::Enumerate {
            variety,
            size,
            emit,
        } => cmd_enumerate(variety, size, emit.as_deref()),
        Command::Verify {
            suite,
            max_size,
            counterexamples,
        } => cmd_verify(suite, max_size, counterexamples.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

/// Reads a document without checking axioms; the declared variety comes back
/// alongside.
fn load(path: &Path) -> Result<(FiniteAlgebra, VarietyTag), Box<dyn Error>> {
    let location = path.display().to_string();
    let doc = parse_algebra_document(&read_text(path)?, &location)?;
    Ok(doc.build(&location)?)
}

/// Reads a document that must satisfy its declared variety, completed to
/// `tag` by deriving missing tables from the order.
fn load_as(path: &Path, tag: VarietyTag) -> Result<FiniteAlgebra, Box<dyn Error>> {
    let (alg, declared) = load(path)?;
    let report = validate(&alg, declared)?;
    if !report.passed() {
        return Err(format!(
            "{} is not a valid {declared} algebra: {report}",
            path.display()
        )
        .into());
    }
    complete(&alg, tag).map_err(Into::into)
}

fn complete(alg: &FiniteAlgebra, tag: VarietyTag) -> Result<FiniteAlgebra, String> {
    let completed = alg.completed(tag).ok_or_else(|| {
        format!(
            "{} has no {tag} structure: its order lacks a join, meet or bottom",
            alg.name()
        )
    })?;
    if !validate(&completed, tag)
        .map_err(|e| e.to_string())?
        .passed()
    {
        return Err(format!("{} is not a {tag} algebra", alg.name()));
    }
    Ok(completed)
}

fn cmd_validate(path: &Path, variety: Option<VarietyTag>) -> CmdResult {
    let (alg, declared) = load(path)?;
    let tag = variety.unwrap_or(declared);
    let n = alg.size();
    let candidate = match alg.completed(tag) {
        Some(c) => c,
        None => {
            println!("{}: {tag}, {n} elements", alg.name());
            println!("fail\n  the natural order lacks a join, meet or bottom that {tag} requires");
            return Ok(ExitCode::from(VERIFICATION_FAILED));
        }
    };
    let report = validate(&candidate, tag)?;
    println!("{}: {tag}, {n} elements", alg.name());
    println!("{}", report.to_string().trim_end());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFICATION_FAILED)
    })
}

fn cmd_dual(path: &Path) -> CmdResult {
    let alg = load_as(path, VarietyTag::Hil)?;
    let space = phi(&alg);
    let points = space.points();
    println!("X({}): {} points", alg.name(), points.len());
    for i in 0..points.len() {
        println!("  P{i} = {}", points.describe(i));
    }
    println!("covers:");
    let edges = points.order().hasse_edges();
    if edges.is_empty() {
        println!("  (none)");
    }
    for (lo, hi) in edges {
        println!("  P{lo} < P{hi}");
    }
    println!("phi:");
    for a in alg.elements() {
        let image: Vec<String> = space.image(a).iter().map(|p| format!("P{p}")).collect();
        println!("  {} -> {{{}}}", alg.label(a), image.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_extension(ext: &ExtensionResult) {
    let presented = ext.presented();
    println!(
        "{}: {} elements over {} points",
        presented.name(),
        ext.len(),
        ext.points().len()
    );
    println!("members:");
    for (i, u) in ext.members().iter().enumerate() {
        println!("  {i}: {u}");
    }
    println!("embedding:");
    for a in ext.source().elements() {
        println!("  {} -> {}", ext.source().label(a), ext.embedding()[a]);
    }
}

fn cmd_extend(path: &Path, kind: ExtensionKind, emit: Option<&Path>) -> CmdResult {
    let alg = load_as(path, kind.source_tag())?;
    let ext = extend(&alg, kind)?;
    print_extension(&ext);
    if let Some(out) = emit {
        write_file(out, &emit_algebra(ext.presented(), kind.target_tag()))?;
        println!("wrote {}", out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lift(path: &Path, kind: ExtensionKind, emit: Option<&Path>) -> CmdResult {
    let f = read_morphism(path)?;
    let tag = kind.source_tag();
    let dom = complete(f.dom(), tag)?;
    let cod = complete(f.cod(), tag)?;
    let f = Morphism::new(dom, cod, f.map().to_vec(), tag)?;
    f.check().map_err(|e| {
        format!(
            "{} -> {} is not a {tag} morphism: {e}",
            f.dom().name(),
            f.cod().name()
        )
    })?;
    let lifted = lift(&f, kind)?;
    let (source, target) = (lifted.source(), lifted.target());
    println!(
        "{} -> {} lifted along {kind}: {} -> {} elements",
        f.dom().name(),
        f.cod().name(),
        source.len(),
        target.len()
    );
    for (i, u) in source.members().iter().enumerate() {
        let j = lifted.map()[i];
        println!("  {i}: {u} -> {j}: {}", target.members()[j]);
    }
    println!("intertwining:");
    for a in f.dom().elements() {
        let b = f.apply(a);
        println!(
            "  {}: e({}) = {} -> {} = e({})",
            f.dom().label(a),
            f.dom().label(a),
            source.embedding()[a],
            lifted.map()[source.embedding()[a]],
            f.cod().label(b)
        );
    }
    println!(
        "certificate: intertwines = {}, {} morphism = {}",
        lifted.intertwines(),
        kind.target_tag(),
        lifted.morphism().check().is_ok()
    );
    if let Some(out) = emit {
        write_file(out, &emit_morphism(lifted.morphism()))?;
        println!("wrote {}", out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(tag: VarietyTag, size: usize, emit: Option<&Path>) -> CmdResult {
    let catalog = enumerate_algebras(tag, size)?;
    println!("{tag} algebras up to isomorphism");
    for (n, count) in catalog.counts().iter().enumerate().skip(1) {
        println!("  size {n}: {count}");
    }
    println!("  total: {}", catalog.len());
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for alg in &catalog.members {
            write_file(
                &dir.join(format!("{}.json", alg.name())),
                &emit_algebra(alg, tag),
            )?;
        }
        println!("wrote {} documents to {}", catalog.len(), dir.display());
    }
    Ok(ExitCode::SUCCESS)
}

/// Documents reproducing a counterexample, keyed by file name.
fn counterexample_documents(c: &Counterexample, stem: &str) -> Vec<(String, String)> {
    let algebras = c.algebras.iter().enumerate().map(|(i, a)| {
        (
            format!("{stem}-algebra{i}.json"),
            emit_algebra(a, signature_of(a)),
        )
    });
    let morphisms = c
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, f)| (format!("{stem}-morphism{i}.json"), emit_morphism(f)));
    algebras.chain(morphisms).collect()
}

fn cmd_verify(suite: Suite, max_size: usize, out: Option<&Path>) -> CmdResult {
    let catalogs = Catalogs::new();
    let checks = checks_of(suite);
    let mut failed = 0;
    println!("suite {suite}, max size {max_size}");
    for check in &checks {
        let result = check.run(&catalogs, max_size);
        println!("{result}");
        if result.passed() {
            continue;
        }
        failed += 1;
        for (k, c) in result.counterexamples.iter().enumerate() {
            let docs = counterexample_documents(c, &format!("{}-{k}", result.name));
            match out {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                    for (name, text) in docs {
                        let path = dir.join(name);
                        write_file(&path, &text)?;
                        println!("     wrote {}", path.display());
                    }
                }
                None => {
                    for (name, text) in docs {
                        println!("     --- {name}\n{text}");
                    }
                }
            }
        }
    }
    println!(
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFICATION_FAILED)
    })
}
