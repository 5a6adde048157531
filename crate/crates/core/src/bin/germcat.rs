use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use germcat::cli::{exit_code, gallery, gallery_doc, parse_workspace, render_records, render_text, run_all, Command, Flags, MAX_CELLS, MAX_WINDOW};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Records,
}

/// Check finite categories, filter quotients, model structures, shapes
/// tuples and truncated simplicial sets described in workspace documents.
#[derive(Parser, Debug)]
#[command(name = "germcat", version)]
struct Args {
    /// validate, quotient, product, model-check, shapes-check, sset-demo, report, or gallery to list examples
    command: String,
    /// Workspace documents to check
    files: Vec<PathBuf>,
    /// Add a built-in gallery document by name, or `all`
    #[arg(long = "gallery")]
    gallery: Vec<String>,
    /// Largest index for d_n [default: the document's, else 30]
    #[arg(long)]
    window: Option<u64>,
    /// Largest number of cells in a uniqueness candidate
    #[arg(long)]
    max_size: Option<usize>,
    /// Override filters, as `principal:NAME`
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized sections
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time per check
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.command == "gallery" {
        for entry in gallery() {
            println!("{:<24} {}", entry.name, entry.provenance);
        }
        return ExitCode::SUCCESS;
    }
    let command: Command = match args.command.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("germcat: {e}");
            return ExitCode::from(2);
        }
    };
    if args.window.is_some_and(|w| w > MAX_WINDOW) || args.max_size.is_some_and(|k| k > MAX_CELLS) {
        eprintln!("germcat: resource bound exceeded (window ≤ {MAX_WINDOW}, max-size ≤ {MAX_CELLS})");
        return ExitCode::from(3);
    }
    let mut sources: Vec<(String, String)> = Vec::new();
    for name in &args.gallery {
        if name == "all" {
            sources.extend(gallery().into_iter().map(|e| (format!("gallery:{}", e.name), e.text.to_string())));
            continue;
        }
        match gallery_doc(name) {
            Some(t) => sources.push((format!("gallery:{name}"), t.to_string())),
            None => {
                eprintln!("germcat: no gallery document `{name}`");
                return ExitCode::from(2);
            }
        }
    }
    for path in &args.files {
        // `gallery/NAME.doc` falls back to the embedded copy
        let embedded = || {
            let in_gallery = path.parent().and_then(|p| p.file_name()).is_some_and(|d| d == "gallery");
            let stem = path.file_stem()?.to_str()?;
            in_gallery.then(|| gallery_doc(stem)).flatten()
        };
        match std::fs::read_to_string(path) {
            Ok(t) => sources.push((path.display().to_string(), t)),
            Err(_) if embedded().is_some() => sources.push((path.display().to_string(), embedded().unwrap().to_string())),
            Err(e) => {
                eprintln!("germcat: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    if sources.is_empty() {
        eprintln!("germcat: no documents given");
        return ExitCode::from(2);
    }
    let mut docs = Vec::new();
    for (name, text) in sources {
        match parse_workspace(&text) {
            Ok((_, w)) => docs.push((name, w)),
            Err(e) => {
                eprintln!("{name}:{e}");
                return ExitCode::from(2);
            }
        }
    }
    let flags = Flags { window: args.window, max_size: args.max_size, filter: args.filter, seed: args.seed, timing: args.timing };
    let results = run_all(command, &docs, &flags);
    for ((name, _), result) in docs.iter().zip(&results) {
        match result {
            Ok(records) => match args.format {
                Format::Text => print!("== {name}\n{}", render_text(records)),
                Format::Records => print!("{}", render_records(records)),
            },
            Err(e) => eprintln!("{name}: {e}"),
        }
    }
    ExitCode::from(exit_code(&results) as u8)
}
