use std::fs;
use std::io::Write;
use std::path::Path;

use iips_core::error::Error;
use iips_core::hunt::{hunt as run_hunt, SearchConfig, SearchMode, WeightKind};
use iips_core::identity::{evaluate_rank_identity, Operands, RankIdentity};
use iips_core::matrix::Matrix;
use iips_core::mp::{adjoint as mn_adjoint, mp_inverse};
use iips_core::rol::{rol_classify, RolStatus};
use iips_core::weight::{WeightTriple, WeightsFile};

use crate::{HuntArgs, EXIT_FALSE, EXIT_PRECONDITION, EXIT_VIOLATION};

type Outcome = Result<u8, String>;

fn load_matrix(path: &Path) -> Result<Matrix, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_weights(path: &Path) -> Result<WeightsFile, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn adjoint(matrix_path: &Path, weights_path: &Path) -> Outcome {
    let a = load_matrix(matrix_path)?;
    let w = load_weights(weights_path)?;
    let adj = mn_adjoint(&a, &w.m, &w.n).map_err(|e| e.to_string())?;
    println!("{}", serde_json::to_string(&adj).unwrap());
    Ok(0)
}

pub fn pinv(matrix_path: &Path, weights_path: &Path) -> Outcome {
    let a = load_matrix(matrix_path)?;
    let w = load_weights(weights_path)?;
    let res = mp_inverse(&a, &w.m, &w.n).map_err(|e| e.to_string())?;
    println!("{}", serde_json::to_string(&res).unwrap());
    Ok(if res.exists { 0 } else { EXIT_FALSE })
}

pub fn rol_check(
    a_path: &Path,
    b_path: &Path,
    weights_path: &Path,
    report_path: &Path,
) -> Outcome {
    let a = load_matrix(a_path)?;
    let b = load_matrix(b_path)?;
    let w = load_weights(weights_path)?;
    let l = w
        .l
        .ok_or_else(|| format!("{}: missing weight L", weights_path.display()))?;
    let triple = WeightTriple::new(w.m, w.n, l);
    let report = rol_classify(&a, &b, &triple).map_err(|e| e.to_string())?;
    let json = serde_json::to_string_pretty(&report).unwrap();
    fs::write(report_path, json)
        .map_err(|e| format!("cannot write {}: {e}", report_path.display()))?;
    Ok(if report.status == RolStatus::HoldsEqual {
        0
    } else {
        EXIT_FALSE
    })
}

pub fn identity(id: &str, operand_args: &[String], weights_path: Option<&Path>) -> Outcome {
    let id: RankIdentity = id.parse().map_err(|e: Error| e.to_string())?;
    let mut operands = Operands::new();
    for spec in operand_args {
        let (name, path) = spec
            .split_once('=')
            .ok_or_else(|| format!("operand {spec:?} is not NAME=PATH"))?;
        operands.insert(name.to_string(), load_matrix(Path::new(path))?);
    }
    let weights = match weights_path {
        Some(p) => {
            let w = load_weights(p)?;
            let l = w
                .l
                .ok_or_else(|| format!("{}: missing weight L", p.display()))?;
            Some(WeightTriple::new(w.m, w.n, l))
        }
        None => None,
    };
    match evaluate_rank_identity(id, &operands, weights.as_ref()) {
        Ok(inst) => {
            println!("{}", serde_json::to_string(&inst).unwrap());
            Ok(if inst.holds { 0 } else { EXIT_FALSE })
        }
        Err(Error::PreconditionUnmet(msg)) => {
            eprintln!("precondition unmet: {msg}");
            Ok(EXIT_PRECONDITION)
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn hunt(args: &HuntArgs) -> Outcome {
    let weight_kind = match args.weights.as_str() {
        "signature" => WeightKind::Signature,
        "random-hermitian" | "random_hermitian" => WeightKind::RandomHermitian,
        "identity" => WeightKind::Identity,
        other => return Err(format!("unknown weight kind {other:?}")),
    };
    let mode = match args.mode.as_str() {
        "random" => SearchMode::Random,
        "exhaustive" => SearchMode::Exhaustive,
        other => return Err(format!("unknown mode {other:?}")),
    };
    let config = SearchConfig {
        seed: args.seed,
        trials: args.trials,
        max_dim: args.max_dim,
        entry_bound: args.entry_bound,
        weight_kind,
        mode,
    };
    let summary = run_hunt(&config).map_err(|e| e.to_string())?;
    if let Some(out) = &args.out {
        let mut file = fs::File::create(out)
            .map_err(|e| format!("cannot create {}: {e}", out.display()))?;
        for rec in summary.candidates.iter().chain(&summary.violations) {
            writeln!(file, "{}", serde_json::to_string(rec).unwrap())
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
        }
    }
    println!("{}", serde_json::to_string(&summary).unwrap());
    if !summary.violations.is_empty() {
        eprintln!(
            "theorem violations detected in {} trial(s): implementation bug",
            summary.violations.len()
        );
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}
