use std::fs;
use std::path::{Path, PathBuf};

use hm3::constructions::{GeneratorKind, GeneratorSpec};
use hm3::cover::link_trichotomy_counts;
use hm3::exact::{has_perfect_matching, has_perfect_matching_with_budget, max_matching_size, PmVerdict};
use hm3::format::{parse_hypergraph, parse_witness, write_hypergraph, write_witness, WitnessKind};
use hm3::matching::verify_triples;
use hm3::pipeline::{perfect_matching, ExactStatus, PipelineConfig};
use hm3::threshold::{exhaustive_verify_n6_with_workers, sampled_verify_with_workers, threshold};
use hm3::{Hypergraph3, Matching};

use crate::{exit, Command, Fallback, Kind};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Data(_) => exit::DATA,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Data(s) => f.write_str(s),
        }
    }
}

type Res<T> = Result<T, CliError>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<Hypergraph3> {
    parse_hypergraph(&read(path)?).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn need_multiple_of_three(h: &Hypergraph3) -> Res<()> {
    if !h.n().is_multiple_of(3) {
        return Err(CliError::Data(format!("order {} is not a multiple of 3", h.n())));
    }
    Ok(())
}

pub fn run(cmd: Command) -> Res<u8> {
    match cmd {
        Command::Gen {
            kind,
            n,
            p,
            tau,
            flips,
            seed,
            output,
        } => gen(kind, n, p, tau, flips, seed, output),
        Command::Solve { file, witness, budget } => solve(&file, witness.as_deref(), budget),
        Command::Verify { file, witness } => verify(&file, &witness),
        Command::Threshold { n } => {
            let t = threshold(n).map_err(|e| CliError::Usage(e.to_string()))?;
            println!("{t}");
            Ok(exit::OK)
        }
        Command::EnumerateN6 { workers, csv } => enumerate_n6(workers, csv),
        Command::Sample {
            n,
            tau,
            count,
            seed,
            workers,
            out_dir,
        } => sample(n, tau, count, seed, workers, out_dir),
        Command::Pipeline {
            file,
            alpha,
            eta,
            seed,
            fallback,
            trace,
            stage_trace,
            witness,
        } => {
            let mut cfg = PipelineConfig::with_alpha(alpha.0);
            if let Some(eta) = eta {
                cfg.eta = eta.0;
            }
            cfg.seed = seed;
            cfg.fallback_exact = match fallback {
                Fallback::Auto => None,
                Fallback::On => Some(true),
                Fallback::Off => Some(false),
            };
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            pipeline(&file, &cfg, trace, stage_trace, witness)
        }
        Command::Linkfact => {
            let (classified, other) = link_trichotomy_counts();
            println!("{classified}/{} classified, {other} other", classified + other);
            Ok(if other == 0 { exit::OK } else { exit::UNDECIDED })
        }
    }
}

fn gen(kind: Kind, n: usize, p: f64, tau: usize, flips: usize, seed: u64, output: Option<PathBuf>) -> Res<u8> {
    let kind = match kind {
        Kind::Extremal => GeneratorKind::Extremal,
        Kind::ExtremalPlus => GeneratorKind::ExtremalPlus,
        Kind::Random => GeneratorKind::Random,
        Kind::MinDegree => GeneratorKind::MinDegreeRandom,
        Kind::Perturbed => GeneratorKind::PerturbedExtremal,
    };
    let spec = GeneratorSpec {
        p,
        tau,
        flips,
        seed,
        ..GeneratorSpec::new(kind, n)
    };
    let h = spec.generate().map_err(|e| CliError::Usage(e.to_string()))?;
    let text = write_hypergraph(&h);
    match output {
        Some(path) => write(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(exit::OK)
}

fn solve(file: &Path, witness: Option<&Path>, budget: u64) -> Res<u8> {
    let h = load(file)?;
    need_multiple_of_three(&h)?;
    let verdict = has_perfect_matching_with_budget(&h, budget).map_err(|e| CliError::Data(e.to_string()))?;
    match verdict {
        PmVerdict::Perfect(m) => {
            println!("perfect matching with {} edges", m.len());
            if let Some(w) = witness {
                write(w, &write_witness(WitnessKind::Perfect, &m))?;
            }
            Ok(exit::OK)
        }
        PmVerdict::NoPerfect { max_size } => {
            let best: Option<(usize, Matching)> = max_matching_size(&h, budget);
            match best.as_ref().map(|b| b.0).or(max_size) {
                Some(k) => println!("no perfect matching; maximum matching {k}"),
                None => println!("no perfect matching"),
            }
            if let (Some(w), Some((_, m))) = (witness, best) {
                write(w, &write_witness(WitnessKind::Maximum, &m))?;
            }
            Ok(exit::NO)
        }
        PmVerdict::Undecided { best } => {
            println!("undecided after {budget} nodes; best matching found {}", best.len());
            Ok(exit::UNDECIDED)
        }
    }
}

fn verify(file: &Path, witness: &Path) -> Res<u8> {
    let h = load(file)?;
    let w = parse_witness(&read(witness)?, Some(h.n()))
        .map_err(|e| CliError::Data(format!("{}: {e}", witness.display())))?;
    let perfect = w.kind == WitnessKind::Perfect;
    match verify_triples(&h, &w.edges, perfect) {
        Ok(()) => {
            println!("valid {} matching with {} edges", if perfect { "perfect" } else { "partial" }, w.edges.len());
            Ok(exit::OK)
        }
        Err(r) => {
            println!("rejected: {r}");
            Ok(exit::NO)
        }
    }
}

fn enumerate_n6(workers: Option<usize>, csv: Option<PathBuf>) -> Res<u8> {
    let report = exhaustive_verify_n6_with_workers(workers);
    match csv {
        Some(path) => write(&path, &report.to_csv())?,
        None => print!("{}", report.to_csv()),
    }
    let m1 = report
        .exact_threshold()
        .map_or_else(|| "none".to_string(), |t| t.to_string());
    println!("m1(3,6) = {m1}; formula threshold = {}", report.formula);
    if let Some(d) = report.verified_floor {
        println!("largest minimum degree without a perfect matching: {d}");
    }
    Ok(exit::OK)
}

fn sample(n: usize, tau: usize, count: u64, seed: u64, workers: Option<usize>, out_dir: Option<PathBuf>) -> Res<u8> {
    let report = sampled_verify_with_workers(n, tau, count, seed, workers).map_err(|e| CliError::Usage(e.to_string()))?;
    print!("{}", report.to_csv());
    println!("undecided: {}", report.undecided);
    for (i, h) in report.counterexamples.iter().enumerate() {
        // re-decide from the written text so the persisted file is what was checked
        let text = write_hypergraph(h);
        let back = parse_hypergraph(&text).map_err(|e| CliError::Data(e.to_string()))?;
        let again = has_perfect_matching(&back).map_err(|e| CliError::Data(e.to_string()))?;
        println!(
            "counterexample {i}: min degree {}, re-verified {}",
            back.degree_profile().min_degree,
            matches!(again, PmVerdict::NoPerfect { .. })
        );
        if let Some(dir) = &out_dir {
            fs::create_dir_all(dir).map_err(|e| CliError::Data(format!("{}: {e}", dir.display())))?;
            write(&dir.join(format!("counterexample_n{n}_tau{tau}_{i}.hm3")), &text)?;
        }
    }
    Ok(if !report.counterexamples.is_empty() {
        exit::NO
    } else if report.undecided > 0 {
        exit::UNDECIDED
    } else {
        exit::OK
    })
}

fn pipeline(
    file: &Path,
    cfg: &PipelineConfig,
    trace: Option<PathBuf>,
    stage_trace: Option<PathBuf>,
    witness: Option<PathBuf>,
) -> Res<u8> {
    let h = load(file)?;
    need_multiple_of_three(&h)?;
    let outcome = perfect_matching(&h, cfg).map_err(|e| CliError::Data(e.to_string()))?;
    let (cover_trace, extremal_trace) = match &outcome {
        Ok(run) => (&run.cover_trace, &run.extremal_trace),
        Err(f) => (&f.cover_trace, &f.extremal_trace),
    };
    if let Some(path) = trace {
        let mut csv = format!("{}\n", hm3::cover::TraceRow::CSV_HEADER);
        for r in cover_trace {
            csv.push_str(&r.to_csv());
            csv.push('\n');
        }
        write(&path, &csv)?;
    }
    if let Some(path) = stage_trace {
        write(&path, &hm3::extremal::trace_csv(extremal_trace))?;
    }
    match outcome {
        Ok(run) => {
            println!("perfect matching with {} edges via {} path", run.matching.len(), run.path.as_str());
            if let Some(reason) = &run.fallback_reason {
                println!("fallback after {reason}");
            }
            if let Some(w) = witness {
                write(&w, &write_witness(WitnessKind::Perfect, &run.matching))?;
            }
            Ok(exit::OK)
        }
        Err(f) => {
            println!("{f}");
            Ok(match f.exact {
                Some(ExactStatus::NoPerfect { .. }) => exit::NO,
                _ => exit::UNDECIDED,
            })
        }
    }
}
