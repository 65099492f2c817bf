//! Command-line front end: inspect spaces, compute invariant reports,
//! fractional Helly statistics, planar embeddings, weight-driven
//! splits, and full colorful runs, in human, structured, or delimited
//! output.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use convexity::io::{
    parse_colorful_instance, parse_labeled_functions, parse_space, write_axiom_report,
    write_bk_embedding, write_colorful_outcome, write_fh_report, write_invariant_report,
    write_separated_pair, write_space,
};
use convexity::{
    bk_embed, box_lower_bound_family, fh_report, io, large_separated_pairs, make_box_space,
    make_lattice_space, optimal_beta, run_selftest, verify_certificates, verify_colorful_outcome,
    verify_nerve_isomorphism, verify_separated_pair, weak_colorful_run, ColorfulOutcome,
    ConvexitySpace, Error, RadonValue, SetFamily,
};

#[derive(Parser)]
#[command(
    name = "convexity",
    version,
    about = "Exact analysis of finite convexity spaces"
)]
struct Cli {
    /// Output style for results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Prose lines for reading.
    Human,
    /// Versioned documents that parse back exactly.
    Structured,
    /// Tab-separated key/value rows.
    Delimited,
}

#[derive(Subcommand)]
enum Command {
    /// Audit a space against the convexity axioms and print its profile.
    Space {
        /// `box:D:S`, `lattice:D:S`, or a convexity-space file.
        spec: String,
        /// Override the enumeration cap on the ground size.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Helly and Radon numbers, halfspace statistics, and bound checks.
    Invariants {
        /// `box:D:S`, `lattice:D:S`, or a convexity-space file.
        spec: String,
        /// Override the enumeration cap on the ground size.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Fraction of intersecting k-subfamilies and the best-covered size.
    Fh {
        /// `lower-bound:D:N` or a set-family file.
        family: String,
        /// Subfamily size to scan.
        #[arg(long)]
        k: usize,
        /// Also report the optimal matching fraction at this dimension.
        #[arg(long)]
        dimension: Option<usize>,
        /// Decimal places used when rounding the optimal fraction.
        #[arg(long, default_value_t = 6)]
        decimals: usize,
    },
    /// Embed a family on the rational line with quadratic certificates.
    BkEmbed {
        /// Set-family file to embed.
        family: String,
    },
    /// Run the staged colorful refinement on an instance file.
    Colorful {
        /// colorful-instance file: space, families, and tuple size.
        instance: String,
    },
    /// Split labeled functions along a halfspace and verify the pieces.
    Lemma31 {
        /// labeled-functions file.
        functions: String,
        /// `box:D:S`, `lattice:D:S`, or a convexity-space file.
        #[arg(long)]
        space: String,
        /// Split parameter; must be at least the Radon number.
        #[arg(long)]
        r: usize,
    },
    /// Seeded property battery against independent oracles.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Io(_) => 2,
        Error::IndexOutOfRange { .. }
        | Error::UniverseMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::SizeMismatch(_) => 2,
        Error::CapExceeded { .. } => 3,
        Error::Precondition(_) | Error::Hypothesis(_) => 4,
        Error::Verification(_) => 5,
    }
}

/// `box:D:S` / `lattice:D:S` shorthand, or a convexity-space document.
fn load_space(spec: &str, cap: Option<usize>) -> Result<ConvexitySpace, Error> {
    let parse_dims = |rest: &str| -> Result<(usize, usize), Error> {
        let bad = || Error::parse(0, format!("space shorthand `{spec}` is not NAME:DIM:SIDE"));
        let (dim, side) = rest.split_once(':').ok_or_else(bad)?;
        Ok((
            dim.parse().map_err(|_| bad())?,
            side.parse().map_err(|_| bad())?,
        ))
    };
    let space = if let Some(rest) = spec.strip_prefix("box:") {
        let (dim, side) = parse_dims(rest)?;
        make_box_space(dim, side)?
    } else if let Some(rest) = spec.strip_prefix("lattice:") {
        let (dim, side) = parse_dims(rest)?;
        make_lattice_space(dim, side)?
    } else {
        parse_space(&fs::read_to_string(spec)?)?
    };
    Ok(match cap {
        Some(cap) => space.with_enum_cap(cap),
        None => space,
    })
}

/// `lower-bound:D:N` shorthand, or a set-family document.
fn load_family(spec: &str) -> Result<SetFamily, Error> {
    if let Some(rest) = spec.strip_prefix("lower-bound:") {
        let bad = || Error::parse(0, format!("family shorthand `{spec}` is not lower-bound:DIM:N"));
        let (dim, n) = rest.split_once(':').ok_or_else(bad)?;
        let dim = dim.parse().map_err(|_| bad())?;
        let n = n.parse().map_err(|_| bad())?;
        let (_, family) = box_lower_bound_family(dim, n)?;
        Ok(family)
    } else {
        io::parse_set_family(&fs::read_to_string(spec)?)
    }
}

fn kind_words(space: &ConvexitySpace) -> String {
    match space.kind() {
        convexity::SpaceKind::Box { dim, side } => format!("box {dim} {side}"),
        convexity::SpaceKind::Lattice { dim, side } => format!("lattice {dim} {side}"),
        convexity::SpaceKind::Explicit => "explicit".into(),
    }
}

fn run_space(spec: &str, cap: Option<usize>, format: Format) -> Result<(), Error> {
    let space = load_space(spec, cap)?;
    let axioms = space.check_axioms()?;
    let separability = space.is_separable()?;
    let convex_count = space.enumerate_convex_sets()?.len();
    let halfspace_count = space.enumerate_halfspaces()?.len();
    match format {
        Format::Human => {
            println!("space: {}", kind_words(&space));
            println!("ground points: {}", space.len());
            println!("convex sets: {convex_count}");
            println!("halfspaces: {halfspace_count}");
            println!(
                "separable: {}",
                if separability.separable { "yes" } else { "no" }
            );
            let verdict = |pass: bool| if pass { "pass" } else { "FAIL" };
            println!(
                "axioms: empty-and-ground {} | intersection-closed {} | hull laws {} {} {}",
                verdict(axioms.empty_and_ground_convex.pass),
                verdict(axioms.intersection_closed.pass),
                verdict(axioms.hull_extensive.pass),
                verdict(axioms.hull_monotone.pass),
                verdict(axioms.hull_idempotent.pass),
            );
            println!("nested unions: {}", axioms.nested_unions);
        }
        Format::Structured => {
            print!("{}", write_space(&space));
            println!();
            print!("{}", write_axiom_report(&axioms));
        }
        Format::Delimited => {
            println!("kind\t{}", kind_words(&space));
            println!("ground\t{}", space.len());
            println!("convex-sets\t{convex_count}");
            println!("halfspaces\t{halfspace_count}");
            println!(
                "separable\t{}",
                if separability.separable { "yes" } else { "no" }
            );
            println!("axioms\t{}", if axioms.all_pass() { "pass" } else { "fail" });
        }
    }
    if !axioms.all_pass() {
        return Err(Error::Verification(
            "the space fails at least one convexity axiom".into(),
        ));
    }
    Ok(())
}

fn run_invariants(spec: &str, cap: Option<usize>, format: Format) -> Result<(), Error> {
    let space = load_space(spec, cap)?;
    let report = convexity::compute_invariant_report(&space)?;
    match format {
        Format::Human => {
            println!("ground points: {}", report.ground_size);
            println!(
                "helly number: {} (witness {:?})",
                report.helly,
                report.helly_witness.to_vec()
            );
            match report.radon {
                RadonValue::Finite(r) => println!("radon number: {r}"),
                RadonValue::NoneAtThisScale => {
                    println!("radon number: none at this scale")
                }
            }
            println!(
                "separable: {}",
                if report.separable { "yes" } else { "no" }
            );
            println!("halfspaces: {}", report.halfspace_count);
            println!("halfspace vc dimension: {}", report.halfspace_vc);
            println!("halfspace dual vc dimension: {}", report.halfspace_dual_vc);
            for bound in &report.bounds {
                println!(
                    "bound {}: {} ({})",
                    bound.name,
                    if bound.holds { "ok" } else { "VIOLATED" },
                    bound.detail
                );
            }
        }
        Format::Structured => print!("{}", write_invariant_report(&report)),
        Format::Delimited => {
            println!("ground\t{}", report.ground_size);
            println!("helly\t{}", report.helly);
            match report.radon {
                RadonValue::Finite(r) => println!("radon\t{r}"),
                RadonValue::NoneAtThisScale => println!("radon\tnone"),
            }
            println!(
                "separable\t{}",
                if report.separable { "yes" } else { "no" }
            );
            println!("halfspaces\t{}", report.halfspace_count);
            println!("halfspace-vc\t{}", report.halfspace_vc);
            println!("halfspace-dual-vc\t{}", report.halfspace_dual_vc);
            for bound in &report.bounds {
                println!(
                    "bound:{}\t{}",
                    bound.name,
                    if bound.holds { "ok" } else { "fail" }
                );
            }
        }
    }
    if !report.all_bounds_hold() {
        return Err(Error::Verification(
            "an invariant bound is violated; see the report".into(),
        ));
    }
    Ok(())
}

fn run_fh(
    family_spec: &str,
    k: usize,
    dimension: Option<usize>,
    decimals: usize,
    format: Format,
) -> Result<(), Error> {
    let family = load_family(family_spec)?;
    let report = fh_report(&family, k)?;
    let best = dimension
        .map(|d| optimal_beta(&report.alpha, d, decimals))
        .transpose()?;
    match format {
        Format::Human => {
            println!("family size: {}", report.family_size);
            println!(
                "intersecting {}-subfamilies: {} of {} (alpha {})",
                report.k, report.intersecting, report.total, report.alpha
            );
            match report.best_point {
                Some(p) => println!(
                    "best point {} covers {} sets (beta {})",
                    p, report.max_intersecting, report.beta
                ),
                None => println!("no point covers any set"),
            }
            if let (Some(d), Some(b)) = (dimension, &best) {
                println!("optimal fraction at dimension {d}: {b}");
            }
        }
        Format::Structured => {
            print!("{}", write_fh_report(&report));
            if let (Some(d), Some(b)) = (dimension, &best) {
                println!("# optimal fraction at dimension {d}: {b}");
            }
        }
        Format::Delimited => {
            println!("family-size\t{}", report.family_size);
            println!("k\t{}", report.k);
            println!("intersecting\t{}", report.intersecting);
            println!("total\t{}", report.total);
            println!("alpha\t{}", report.alpha);
            println!("max-intersecting\t{}", report.max_intersecting);
            match report.best_point {
                Some(p) => println!("best-point\t{p}"),
                None => println!("best-point\tnone"),
            }
            println!("beta\t{}", report.beta);
            if let (Some(d), Some(b)) = (dimension, &best) {
                println!("optimal-beta:{d}\t{b}");
            }
        }
    }
    Ok(())
}

fn run_bk_embed(family_spec: &str, format: Format) -> Result<(), Error> {
    let family = load_family(family_spec)?;
    let embedding = bk_embed(&family)?;
    verify_certificates(&embedding)?;
    verify_nerve_isomorphism(&family, &embedding)?;
    match format {
        Format::Human => {
            println!("members: {}", embedding.source_size);
            println!("atoms: {}", embedding.atom_signatures.len());
            println!("certificates: {}", embedding.certificates.len());
            println!("certificates verified and intersection patterns preserved");
        }
        Format::Structured => print!("{}", write_bk_embedding(&embedding)),
        Format::Delimited => {
            println!("members\t{}", embedding.source_size);
            println!("atoms\t{}", embedding.atom_signatures.len());
            println!("certificates\t{}", embedding.certificates.len());
            println!("verified\tyes");
        }
    }
    Ok(())
}

fn run_colorful(instance: &str, format: Format) -> Result<(), Error> {
    let (space, families, m) = parse_colorful_instance(&fs::read_to_string(instance)?)?;
    let outcome = weak_colorful_run(&space, &families, m)?;
    verify_colorful_outcome(&space, &families, &outcome)?;
    match format {
        Format::Human => match &outcome {
            ColorfulOutcome::MTuple(w) => {
                println!(
                    "{} sets of family {} share point {}: sets {:?}",
                    w.members.len(),
                    w.family,
                    w.point,
                    w.members
                );
            }
            ColorfulOutcome::Venn(cert) => {
                println!(
                    "full separation: {} halfspaces realize all {} sign patterns",
                    cert.pairs.len(),
                    cert.cells.len()
                );
                for (c, pair) in cert.pairs.iter().enumerate() {
                    println!(
                        "family {c}: sets {} | {} split by {:?}",
                        pair.u,
                        pair.v,
                        pair.gamma.gamma().to_vec()
                    );
                }
            }
            ColorfulOutcome::Inconclusive { stage } => {
                println!("inconclusive: {stage}");
            }
        },
        Format::Structured => print!("{}", write_colorful_outcome(&outcome)),
        Format::Delimited => match &outcome {
            ColorfulOutcome::MTuple(w) => {
                println!("outcome\tm-tuple");
                println!("family\t{}", w.family);
                println!(
                    "members\t{}",
                    w.members
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                println!("point\t{}", w.point);
            }
            ColorfulOutcome::Venn(cert) => {
                println!("outcome\tvenn");
                println!("classes\t{}", cert.pairs.len());
                println!("cells\t{}", cert.cells.len());
            }
            ColorfulOutcome::Inconclusive { stage } => {
                println!("outcome\tinconclusive");
                println!("stage\t{stage}");
            }
        },
    }
    Ok(())
}

fn run_lemma31(functions: &str, space_spec: &str, r: usize, format: Format) -> Result<(), Error> {
    let space = load_space(space_spec, None)?;
    let (ground, functions) = parse_labeled_functions(&fs::read_to_string(functions)?)?;
    if ground != space.len() {
        return Err(Error::UniverseMismatch {
            left: ground,
            right: space.len(),
        });
    }
    let pair = large_separated_pairs(&space, &functions, r)?;
    verify_separated_pair(&space, &functions, r, &pair)?;
    match format {
        Format::Human => {
            println!(
                "function {} stays inside {:?}; function {} sends {} of {} edges outside",
                pair.i,
                pair.gamma.gamma().to_vec(),
                pair.j,
                pair.retained.len(),
                pair.retained.universe()
            );
            println!("pivot point: {}", pair.x0);
            println!("retained edges: {:?}", pair.retained.to_vec());
        }
        Format::Structured => print!("{}", write_separated_pair(&pair)),
        Format::Delimited => {
            println!("i\t{}", pair.i);
            println!("j\t{}", pair.j);
            println!("pivot\t{}", pair.x0);
            println!(
                "gamma\t{}",
                pair.gamma
                    .gamma()
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            println!(
                "retained\t{}",
                pair.retained
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
    }
    Ok(())
}

fn run_selftest_cmd(seed: u64, format: Format) -> Result<(), Error> {
    let results = run_selftest(seed)?;
    let mut failures = 0;
    for r in &results {
        match format {
            Format::Human => {
                if r.pass {
                    println!("ok   {} ({} cases)", r.name, r.cases);
                } else {
                    println!("FAIL {} ({} cases): {}", r.name, r.cases, r.detail);
                }
            }
            Format::Structured | Format::Delimited => {
                println!(
                    "{}\t{}\t{}",
                    r.name,
                    if r.pass { "ok" } else { "fail" },
                    r.cases
                );
            }
        }
        if !r.pass {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(Error::Verification(format!(
            "{failures} of {} properties failed",
            results.len()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Space { spec, cap } => run_space(&spec, cap, cli.format),
        Command::Invariants { spec, cap } => run_invariants(&spec, cap, cli.format),
        Command::Fh {
            family,
            k,
            dimension,
            decimals,
        } => run_fh(&family, k, dimension, decimals, cli.format),
        Command::BkEmbed { family } => run_bk_embed(&family, cli.format),
        Command::Colorful { instance } => run_colorful(&instance, cli.format),
        Command::Lemma31 {
            functions,
            space,
            r,
        } => run_lemma31(&functions, &space, r, cli.format),
        Command::Selftest { seed } => run_selftest_cmd(seed, cli.format),
    }
}

fn main() -> ExitCode {
    // A closed pipe (`convexity ... | head`) must end the process
    // quietly, not panic mid-println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
