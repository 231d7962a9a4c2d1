//! Deterministic randomized / exhaustive search over small matrices and
//! indefinite weights, classifying reverse-order-law behavior and hunting
//! for open-problem candidates: inputs where the reverse order law holds but
//! every Greville-type condition fails.
//!
//! Per-trial seeds are derived from the master seed and the trial index with
//! a splitmix64-based mixing function (see [`derive_seed`]); the function is
//! frozen by golden-file tests. Trials are independent and evaluated in
//! parallel when the `parallel` feature is enabled; the summary is assembled
//! in trial-index order, so parallel and sequential runs are byte-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identity::{evaluate_rank_identity, Operands, RankIdentity};
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::mp::{mp_exists, mp_inverse_matrix};
use crate::rol::{rol_classify, RolReport, RolStatus};
use crate::scalar::GaussianRational;
use crate::weight::{Weight, WeightTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Signature,
    RandomHermitian,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Random,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: u64,
    /// Each of m, n, l ranges over `1..=max_dim`.
    pub max_dim: usize,
    /// Integer entries in `[-entry_bound, entry_bound]` for both parts.
    pub entry_bound: i64,
    pub weight_kind: WeightKind,
    pub mode: SearchMode,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.max_dim < 1 {
            return Err(Error::Config("max_dim must be >= 1".into()));
        }
        if self.entry_bound < 1 {
            return Err(Error::Config("entry_bound must be >= 1".into()));
        }
        if self.mode == SearchMode::Exhaustive {
            if self.max_dim > 2 || self.entry_bound > 1 {
                return Err(Error::Config(
                    "exhaustive mode requires max_dim <= 2 and entry_bound <= 1".into(),
                ));
            }
            if self.weight_kind == WeightKind::RandomHermitian {
                return Err(Error::Config(
                    "exhaustive mode cannot enumerate random_hermitian weights".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub derived_seed: u64,
    pub dims: (usize, usize, usize),
    pub a: Matrix,
    pub b: Matrix,
    pub weights: WeightTriple,
    /// `None` when the trial was filtered out before classification (one of
    /// the factor inverses does not exist).
    pub report: Option<RolReport>,
    pub theorem_violations: Vec<String>,
    pub is_open_problem_candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntSummary {
    pub trials_run: u64,
    pub mp_pairs_found: u64,
    pub rol_holds_count: u64,
    pub candidates: Vec<TrialRecord>,
    pub violations: Vec<TrialRecord>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Frozen per-trial seed derivation: mix the trial index through splitmix64,
/// fold it into the master seed, and mix once more.
pub fn derive_seed(master_seed: u64, trial_index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(trial_index))
}

fn gen_matrix_rng(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| {
            let re = rng.gen_range(-bound..=bound);
            let im = rng.gen_range(-bound..=bound);
            GaussianRational::gauss(re, im)
        })
        .collect();
    Matrix::new(rows, cols, data).expect("positive dims")
}

/// Deterministic Gaussian-integer matrix from a derived seed.
pub fn gen_matrix(derived_seed: u64, rows: usize, cols: usize, bound: i64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed);
    gen_matrix_rng(&mut rng, rows, cols, bound)
}

fn gen_weight_rng(rng: &mut ChaCha8Rng, dim: usize, kind: WeightKind, bound: i64) -> Weight {
    match kind {
        WeightKind::Identity => Weight::identity(dim),
        WeightKind::Signature => {
            // at least one -1 entry: indefinite whenever dim >= 2
            let mask: u64 = if dim == 1 {
                1
            } else {
                rng.gen_range(1..(1u64 << dim))
            };
            let signs: Vec<i64> = (0..dim)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            Weight::signature(&signs).expect("signs are ±1")
        }
        WeightKind::RandomHermitian => {
            let g = gen_matrix_rng(rng, dim, dim, bound);
            let base = g.add(&g.conj_transpose()).expect("same shape");
            let mut delta = 0i64;
            loop {
                let shift = Matrix::identity(dim).scale(&GaussianRational::from_int(delta));
                let h = base.add(&shift).expect("same shape");
                if let Ok(w) = Weight::validate(h) {
                    return w;
                }
                delta += 1;
            }
        }
    }
}

/// Deterministic weight from a derived seed, per the generation policy.
pub fn gen_weight(derived_seed: u64, dim: usize, kind: WeightKind, bound: i64) -> Weight {
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed);
    gen_weight_rng(&mut rng, dim, kind, bound)
}

fn signature_from_mask(dim: usize, mask: u64) -> Weight {
    let signs: Vec<i64> = (0..dim)
        .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
        .collect();
    Weight::signature(&signs).expect("signs are ±1")
}

/// Cross-check every applicable proven theorem on a classified pair. Any
/// returned entry is an implementation bug, never accepted silently.
fn theorem_checks(
    a: &Matrix,
    b: &Matrix,
    w: &WeightTriple,
    report: &RolReport,
) -> Vec<String> {
    let mut violations = Vec::new();
    let greville = report.greville.expect("both inverses exist");
    let criterion = report.rank_criterion.expect("both inverses exist");
    let holds = report.status == RolStatus::HoldsEqual;
    let all_true = greville.iter().all(|&f| f);

    if greville.iter().any(|&f| f != greville[0]) {
        violations.push(format!("greville flags not pairwise equal: {greville:?}"));
    }
    if criterion != holds {
        violations.push(format!(
            "rank criterion {criterion} disagrees with status {:?}",
            report.status
        ));
    }
    if all_true && !(criterion && holds) {
        violations.push("greville all true but reverse order law fails".into());
    }
    if report.rank_hypothesis && holds != all_true {
        violations.push("rank hypothesis holds but law and conditions disagree".into());
    }

    let named: Operands = [("A", a), ("B", b)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    for id in [RankIdentity::GapCor13, RankIdentity::CommutatorThm15] {
        match evaluate_rank_identity(id, &named, Some(w)) {
            Ok(inst) if !inst.holds => {
                violations.push(format!("{id} violated: lhs {} rhs {}", inst.lhs, inst.rhs))
            }
            Ok(_) => {}
            Err(e) => violations.push(format!("{id} evaluation failed: {e}")),
        }
    }

    // rank [A B'] = rank of stacked adjoints, with B' = AB (both m-rowed)
    let swap_ops: Result<Operands> = (|| {
        let ab = a.mul(b)?;
        Ok([("A".to_string(), a.clone()), ("B".to_string(), ab)]
            .into_iter()
            .collect())
    })();
    match swap_ops.and_then(|ops| {
        evaluate_rank_identity(RankIdentity::AdjointSwap, &ops, Some(w))
    }) {
        Ok(inst) if !inst.holds => violations.push(format!(
            "AdjointSwap violated: lhs {} rhs {}",
            inst.lhs, inst.rhs
        )),
        Ok(_) => {}
        Err(e) => violations.push(format!("AdjointSwap evaluation failed: {e}")),
    }

    // projectors B B^[dag] and A^[dag] A are N-Hermitian idempotents
    let proj_check: Result<()> = (|| {
        let a_dag = mp_inverse_matrix(a, &w.m, &w.n)?;
        let b_dag = mp_inverse_matrix(b, &w.n, &w.l)?;
        let p = b.mul(&b_dag)?;
        let q = a_dag.mul(a)?;
        let ops: Operands = [("P".to_string(), p.clone()), ("Q".to_string(), q.clone())]
            .into_iter()
            .collect();
        let inst =
            evaluate_rank_identity(RankIdentity::HermitianIdempotentCommutator, &ops, Some(w))?;
        if !inst.holds {
            violations.push(format!(
                "HermitianIdempotentCommutator violated: lhs {} rhs {}",
                inst.lhs, inst.rhs
            ));
        }
        if rank(&a.mul(b)?) != rank(&p.mul(&q)?) {
            violations.push("rank(AB) != rank(B B^[dag] A^[dag] A)".into());
        }
        Ok(())
    })();
    if let Err(e) = proj_check {
        violations.push(format!("projector checks failed: {e}"));
    }

    violations
}

fn evaluate_pair(
    trial_index: u64,
    derived_seed: u64,
    dims: (usize, usize, usize),
    a: Matrix,
    b: Matrix,
    weights: WeightTriple,
) -> TrialRecord {
    let mut violations = Vec::new();
    // existence filter first: indefinite weights make existence the rare event
    let both = (|| -> Result<bool> {
        Ok(mp_exists(&a, &weights.m, &weights.n)?.exists
            && mp_exists(&b, &weights.n, &weights.l)?.exists)
    })()
    .unwrap_or_else(|e| {
        violations.push(format!("internal: existence check failed: {e}"));
        false
    });

    let mut report = None;
    let mut candidate = false;
    if both {
        match rol_classify(&a, &b, &weights) {
            Ok(rep) => {
                violations.extend(theorem_checks(&a, &b, &weights, &rep));
                if rep.status == RolStatus::HoldsEqual
                    && rep.greville.map(|g| g.iter().all(|&f| !f)).unwrap_or(false)
                {
                    candidate = true;
                }
                report = Some(rep);
            }
            Err(e) => violations.push(format!("internal: classification failed: {e}")),
        }
    }
    TrialRecord {
        trial_index,
        derived_seed,
        dims,
        a,
        b,
        weights,
        report,
        theorem_violations: violations,
        is_open_problem_candidate: candidate,
    }
}

/// One randomized trial: deterministic function of the config and the index.
pub fn run_trial(config: &SearchConfig, trial_index: u64) -> TrialRecord {
    let derived_seed = derive_seed(config.seed, trial_index);
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed);
    let m = rng.gen_range(1..=config.max_dim);
    let n = rng.gen_range(1..=config.max_dim);
    let l = rng.gen_range(1..=config.max_dim);
    let a = gen_matrix_rng(&mut rng, m, n, config.entry_bound);
    let b = gen_matrix_rng(&mut rng, n, l, config.entry_bound);
    let wm = gen_weight_rng(&mut rng, m, config.weight_kind, config.entry_bound);
    let wn = gen_weight_rng(&mut rng, n, config.weight_kind, config.entry_bound);
    let wl = gen_weight_rng(&mut rng, l, config.weight_kind, config.entry_bound);
    evaluate_pair(
        trial_index,
        derived_seed,
        (m, n, l),
        a,
        b,
        WeightTriple::new(wm, wn, wl),
    )
}

/// Exhaustive enumeration grid: dims x weight masks x all entry patterns.
struct Grid {
    combos: Vec<GridCombo>,
}

struct GridCombo {
    dims: (usize, usize, usize),
    entry_options: u64,
    a_count: u64,
    b_count: u64,
    wm_count: u64,
    wn_count: u64,
    wl_count: u64,
    bound: i64,
    kind: WeightKind,
}

impl GridCombo {
    fn total(&self) -> u64 {
        self.a_count * self.b_count * self.wm_count * self.wn_count * self.wl_count
    }
}

fn sig_count(dim: usize, kind: WeightKind) -> u64 {
    match kind {
        WeightKind::Identity => 1,
        WeightKind::Signature => {
            if dim == 1 {
                1
            } else {
                (1u64 << dim) - 1
            }
        }
        WeightKind::RandomHermitian => unreachable!("rejected by validate"),
    }
}

impl Grid {
    fn new(config: &SearchConfig) -> Self {
        let side = (2 * config.entry_bound + 1) as u64;
        let entry_options = side * side;
        let mut combos = Vec::new();
        for m in 1..=config.max_dim {
            for n in 1..=config.max_dim {
                for l in 1..=config.max_dim {
                    combos.push(GridCombo {
                        dims: (m, n, l),
                        entry_options,
                        a_count: entry_options.pow((m * n) as u32),
                        b_count: entry_options.pow((n * l) as u32),
                        wm_count: sig_count(m, config.weight_kind),
                        wn_count: sig_count(n, config.weight_kind),
                        wl_count: sig_count(l, config.weight_kind),
                        bound: config.entry_bound,
                        kind: config.weight_kind,
                    });
                }
            }
        }
        Self { combos }
    }

    fn total(&self) -> u64 {
        self.combos.iter().map(GridCombo::total).sum()
    }

    fn decode_matrix(&self, combo: &GridCombo, mut code: u64, rows: usize, cols: usize) -> Matrix {
        let side = 2 * combo.bound + 1;
        let data = (0..rows * cols)
            .map(|_| {
                let e = code % combo.entry_options;
                code /= combo.entry_options;
                let re = (e as i64 % side) - combo.bound;
                let im = (e as i64 / side) - combo.bound;
                GaussianRational::gauss(re, im)
            })
            .collect();
        Matrix::new(rows, cols, data).expect("positive dims")
    }

    fn decode_weight(&self, combo: &GridCombo, code: u64, dim: usize) -> Weight {
        match combo.kind {
            WeightKind::Identity => Weight::identity(dim),
            WeightKind::Signature => {
                if dim == 1 {
                    signature_from_mask(1, 1)
                } else {
                    signature_from_mask(dim, code + 1)
                }
            }
            WeightKind::RandomHermitian => unreachable!(),
        }
    }

    fn decode(&self, mut idx: u64) -> ((usize, usize, usize), Matrix, Matrix, WeightTriple) {
        for combo in &self.combos {
            let t = combo.total();
            if idx >= t {
                idx -= t;
                continue;
            }
            let (m, n, l) = combo.dims;
            let a_code = idx % combo.a_count;
            idx /= combo.a_count;
            let b_code = idx % combo.b_count;
            idx /= combo.b_count;
            let wm_code = idx % combo.wm_count;
            idx /= combo.wm_count;
            let wn_code = idx % combo.wn_count;
            idx /= combo.wn_count;
            let wl_code = idx % combo.wl_count;
            let a = self.decode_matrix(combo, a_code, m, n);
            let b = self.decode_matrix(combo, b_code, n, l);
            let w = WeightTriple::new(
                self.decode_weight(combo, wm_code, m),
                self.decode_weight(combo, wn_code, n),
                self.decode_weight(combo, wl_code, l),
            );
            return ((m, n, l), a, b, w);
        }
        unreachable!("index out of grid range");
    }
}

struct Outcome {
    pair_found: bool,
    holds: bool,
    keep: Option<TrialRecord>,
}

fn compress(rec: TrialRecord) -> Outcome {
    let pair_found = rec.report.is_some();
    let holds = matches!(
        rec.report.as_ref().map(|r| r.status),
        Some(RolStatus::HoldsEqual)
    );
    let keep = if rec.is_open_problem_candidate || !rec.theorem_violations.is_empty() {
        Some(rec)
    } else {
        None
    };
    Outcome {
        pair_found,
        holds,
        keep,
    }
}

fn run_one(config: &SearchConfig, grid: Option<&Grid>, idx: u64) -> Outcome {
    let rec = match grid {
        None => run_trial(config, idx),
        Some(grid) => {
            let (dims, a, b, w) = grid.decode(idx);
            evaluate_pair(idx, idx, dims, a, b, w)
        }
    };
    compress(rec)
}

fn aggregate(total: u64, outcomes: Vec<Outcome>) -> HuntSummary {
    let mut summary = HuntSummary {
        trials_run: total,
        mp_pairs_found: 0,
        rol_holds_count: 0,
        candidates: Vec::new(),
        violations: Vec::new(),
    };
    // outcomes arrive in trial-index order; the summary is order-stable
    for o in outcomes {
        summary.mp_pairs_found += o.pair_found as u64;
        summary.rol_holds_count += o.holds as u64;
        if let Some(rec) = o.keep {
            if !rec.theorem_violations.is_empty() {
                summary.violations.push(rec.clone());
            }
            if rec.is_open_problem_candidate {
                summary.candidates.push(rec);
            }
        }
    }
    summary
}

fn plan(config: &SearchConfig) -> Result<(u64, Option<Grid>)> {
    config.validate()?;
    Ok(match config.mode {
        SearchMode::Random => (config.trials, None),
        SearchMode::Exhaustive => {
            let grid = Grid::new(config);
            (grid.total(), Some(grid))
        }
    })
}

/// Run the search. Parallel across trials when the `parallel` feature is
/// enabled; the result is identical to [`hunt_sequential`].
pub fn hunt(config: &SearchConfig) -> Result<HuntSummary> {
    let (total, grid) = plan(config)?;
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Outcome> = (0..total)
        .into_par_iter()
        .map(|i| run_one(config, grid.as_ref(), i))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Outcome> = (0..total)
        .map(|i| run_one(config, grid.as_ref(), i))
        .collect();
    Ok(aggregate(total, outcomes))
}

/// Single-threaded search, always available; the determinism reference.
pub fn hunt_sequential(config: &SearchConfig) -> Result<HuntSummary> {
    let (total, grid) = plan(config)?;
    let outcomes: Vec<Outcome> = (0..total)
        .map(|i| run_one(config, grid.as_ref(), i))
        .collect();
    Ok(aggregate(total, outcomes))
}

/// Re-verify a serialized candidate record from its matrices alone.
pub fn verify_candidate(rec: &TrialRecord) -> Result<bool> {
    let rep = rol_classify(&rec.a, &rec.b, &rec.weights)?;
    Ok(rep.status == RolStatus::HoldsEqual
        && rep.greville.map(|g| g.iter().any(|&f| !f)).unwrap_or(false)
        && !rep.rank_hypothesis)
}
