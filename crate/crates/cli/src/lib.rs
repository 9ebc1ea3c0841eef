//! Command line front end for the multiarrangement log-form engine.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use multilog_core::arrangement::Arrangement;
use multilog_core::ci::{build_generic_ci, verify_ci, CIData};
use multilog_core::logforms::{compute_psi, logform_series};
use multilog_core::poly::VariableNames;
use multilog_core::verify::analyze_lattice;
use multilog_core::Result;

pub mod file;

pub use file::ArrangementFile;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_COEFF_BOUND: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "multilog", version, about = "Logarithmic forms and characteristic polynomials of subspace arrangements")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for the generic complete intersection (overrides the file)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Initial coefficient bound for the generic complete intersection
    #[arg(long, global = true)]
    pub coeff_bound: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection lattice with Möbius values
    Lattice { file: PathBuf },
    /// Characteristic polynomial
    Charpoly { file: PathBuf },
    /// Build or check the complete intersection and print its certificate
    BuildCi { file: PathBuf },
    /// Hilbert series and Betti table of the q-th log-form module
    Logforms {
        #[arg(long)]
        q: usize,
        file: PathBuf,
    },
    /// Ψ-polynomials of the log forms, the Koszul part and the residues
    Psi { file: PathBuf },
    /// Check the characteristic polynomial formula over the whole lattice
    Verify { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Lattice { file }
            | Command::Charpoly { file }
            | Command::BuildCi { file }
            | Command::Logforms { file, .. }
            | Command::Psi { file }
            | Command::Verify { file } => file,
        }
    }
}

/// Text printed on stdout together with the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

struct Context {
    file: ArrangementFile,
    names: VariableNames,
    arrangement: Arrangement,
    format: Format,
    seed: Option<u64>,
    coeff_bound: Option<u64>,
}

impl Context {
    /// The file's complete intersection, checked, or a generic one built
    /// from the seed; the seed is returned when one was used.
    fn ci(&self) -> Result<(CIData, Option<u64>)> {
        if let Some(c) = self.file.user_ci()? {
            verify_ci(&self.arrangement, &c)?.into_result()?;
            return Ok((c, None));
        }
        let seed = self.seed.or(self.file.seed).unwrap_or(DEFAULT_SEED);
        let bound = self.coeff_bound.or(self.file.coeff_bound).unwrap_or(DEFAULT_COEFF_BOUND);
        Ok((build_generic_ci(&self.arrangement, seed, bound)?, Some(seed)))
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
            Format::Text => text(),
        }
    }
}

/// Runs one command; errors become exit codes 2 or 3 with the message on
/// stdout.
pub fn run(cli: &Cli) -> Outcome {
    match run_inner(cli) {
        Ok(o) => o,
        Err(e) => {
            let stdout = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": e.exit_code() }))
                        .expect("error serializes")
                        + "\n"
                }
                Format::Text => format!("error: {e}\n"),
            };
            Outcome { code: e.exit_code(), stdout }
        }
    }
}

fn run_inner(cli: &Cli) -> Result<Outcome> {
    let file = ArrangementFile::read(cli.command.file())?;
    let names = file.names()?;
    let arrangement = file.arrangement()?;
    let ctx = Context { file, names, arrangement, format: cli.format, seed: cli.seed, coeff_bound: cli.coeff_bound };
    let done = |stdout: String| Ok(Outcome { code: 0, stdout });
    match &cli.command {
        Command::Lattice { .. } => done(lattice(&ctx)),
        Command::Charpoly { .. } => done(charpoly(&ctx)),
        Command::BuildCi { .. } => build_ci(&ctx),
        Command::Logforms { q, .. } => done(logforms(&ctx, *q)?),
        Command::Psi { .. } => done(psi(&ctx)?),
        Command::Verify { .. } => verify(&ctx),
    }
}

fn lattice(ctx: &Context) -> String {
    let lattice = ctx.arrangement.intersection_lattice();
    let nodes: Vec<_> = lattice
        .nodes()
        .iter()
        .map(|n| {
            json!({
                "dim": n.dim(),
                "components": n.containing.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "subspace": n.subspace.display_with(&ctx.names).to_string(),
                "mobius": n.mobius,
            })
        })
        .collect();
    ctx.emit(&json!({ "nodes": nodes }), || {
        let mut out = String::new();
        for (i, n) in lattice.nodes().iter().enumerate() {
            let comps: Vec<String> = n.containing.iter().map(|c| (c + 1).to_string()).collect();
            writeln!(
                out,
                "{i:>3}  dim {}  mu {:>3}  components [{}]  {}",
                n.dim(),
                n.mobius,
                comps.join(","),
                n.subspace.display_with(&ctx.names)
            )
            .unwrap();
        }
        out
    })
}

fn charpoly(ctx: &Context) -> String {
    let chi = ctx.arrangement.characteristic_polynomial();
    ctx.emit(&json!({ "chi": chi, "text": chi.to_string() }), || format!("{chi}\n"))
}

fn build_ci(ctx: &Context) -> Result<Outcome> {
    let (c, seed) = if ctx.file.ci.is_some() {
        (ctx.file.user_ci()?.expect("file has a ci"), None)
    } else {
        ctx.ci()?
    };
    let report = verify_ci(&ctx.arrangement, &c)?;
    let code = if report.passed() { 0 } else { 2 };
    let gens: Vec<String> = c.generators().iter().map(|h| h.display_with(&ctx.names).to_string()).collect();
    let stdout = ctx.emit(
        &json!({ "generators": gens, "degrees": c.degrees(), "seed": seed, "certificate": report }),
        || {
            let mut out = format!("{}\n", c.display_with(&ctx.names));
            if let Some(s) = seed {
                writeln!(out, "seed {s}").unwrap();
            }
            writeln!(out, "{report}").unwrap();
            out
        },
    );
    Ok(Outcome { code, stdout })
}

fn logforms(ctx: &Context, q: usize) -> Result<String> {
    let (c, _) = ctx.ci()?;
    let s = logform_series(&ctx.arrangement, &c, q)?;
    let betti = s.betti_table(c.total_degree())?;
    Ok(ctx.emit(
        &json!({ "q": q, "series": s.series.to_string(), "betti": betti.to_string() }),
        || format!("Poin(Ω^{q}(log X/C), x) = {}\nresolution: Ω^{q} <- {betti}\n", s.series),
    ))
}

fn psi(ctx: &Context) -> Result<String> {
    let (c, _) = ctx.ci()?;
    let p = compute_psi(&ctx.arrangement, &c)?;
    let at_one = p.log_forms.at_x_one();
    Ok(ctx.emit(
        &json!({
            "log_forms": p.log_forms.to_string(),
            "koszul": p.koszul.to_string(),
            "residue": p.residue.to_string(),
            "tilde": p.tilde.to_string(),
            "log_forms_at_1": at_one,
            "residue_at_1": p.residue.at_x_one(),
            "condition_value": p.residue.at_one(),
        }),
        || {
            format!(
                "Ψ(Ω•(log X/C)) = {}\nΨ((1/h)I_CΩ•) = {}\nΨ(R•) = {}\nΨ~ = {}\nΨ(Ω•(log X/C), 1, t) = {}\nΨ(R•, 1, t) = {}\nΨ(R•, 1, 1) = {}\n",
                p.log_forms,
                p.koszul,
                p.residue,
                p.tilde,
                at_one,
                p.residue.at_x_one(),
                p.residue.at_one()
            )
        },
    ))
}

fn verify(ctx: &Context) -> Result<Outcome> {
    let (c, seed) = ctx.ci()?;
    let analysis = analyze_lattice(&ctx.arrangement, &c)?;
    let mut report = analysis.report()?;
    report.seed = seed;
    let code = report.exit_code();
    let stdout = ctx.emit(&report, || {
        let mut out = String::new();
        for (n, a) in report.nodes.iter().zip(&analysis.nodes) {
            writeln!(
                out,
                "{}  dim {}  chi = {}  t^{} - Ψ(R•,1,t) = {}  Ψ(R•,1,1) = {}  {}",
                a.subspace.display_with(&ctx.names),
                n.dim,
                n.chi,
                report.ambient_dim,
                a.predicted_chi(report.ambient_dim),
                n.condition_value,
                if n.formula_holds { "ok" } else { "FAILS" }
            )
            .unwrap();
        }
        writeln!(out, "hypothesis {}", if report.hypothesis_holds { "holds" } else { "fails" }).unwrap();
        writeln!(out, "formula {}", if report.formula_verified() { "verified" } else { "fails" }).unwrap();
        out
    });
    Ok(Outcome { code, stdout })
}
