//! One function per `run` subcommand, each returning a report.

use crate::error::{CliError, CliResult};
use crate::inputs::{read_json, read_matrix, read_text};
use crate::report::{Ranks, RunReport};
use crate::{Ctx, GameArgs};
use ctt::games::{one_seller_iterative_for, payoffs, random_game, GameFamily, GameSpec};
use ctt::oracles::{brute_count, brute_knapsack, brute_payoffs, brute_permanent, CountProblem, OracleBudget};
use ctt::problems::knapsack::{knapsack_solve, KnapsackProblem};
use ctt::problems::partition::{partition_solve, partition_tensor};
use ctt::problems::permanent::{permanent, ryser_reference};
use ctt::problems::qtt::qtt_step_build;
use ctt::problems::queens::{queens_placement, queens_tensor_with_cap};
use ctt::problems::sat::CnfFormula;
use ctt::problems::subsets::{subsets_divisible_count, subsets_divisible_tensor};
use ctt::search::find_nonzero;
use ctt::tt::serial::{from_json, to_json};
use ctt::tt::structure::{check_near_orthogonal, check_selection_structure};
use ctt::tt::{convolve_rank_one, count_exact, eval_entry, tt_round};
use ctt::{Core, TtTensor, WeightVectors};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Largest tensor expanded to measure a rounding error.
const DENSE_CHECK_CAP: usize = 1 << 20;

/// Integers that fit in `u64` as JSON numbers, larger ones as decimal strings.
pub fn big_json<T>(x: &T) -> Value
where
    T: std::fmt::Display,
    for<'a> u64: TryFrom<&'a T>,
{
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rel_error(a: f64, b: f64, scale: f64) -> f64 {
    let d = a.abs().max(b.abs()).max(scale);
    if d == 0.0 {
        0.0
    } else {
        (a - b).abs() / d
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn save(t: &TtTensor, path: &Path) -> CliResult<()> {
    std::fs::write(path, to_json(t)?)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn load(path: &Path) -> CliResult<TtTensor> {
    Ok(from_json(&read_text(path)?)?)
}

fn ones_sum(t: &TtTensor) -> CliResult<(f64, ctt::OpCount)> {
    Ok(convolve_rank_one(t, &WeightVectors::ones(&t.mode_sizes()))?)
}

pub fn queens(
    ctx: &Ctx,
    n: usize,
    eps: Option<f64>,
    find: bool,
    oracle: bool,
    cap: usize,
    out: Option<PathBuf>,
) -> CliResult<RunReport> {
    let start = Instant::now();
    let q = queens_tensor_with_cap(n, cap)?;
    let (_, ops) = ones_sum(&q.tensor)?;
    let mut result = json!({ "count": big_json(&q.count) });
    let mut ranks = Ranks::of(&q.ranks);
    let mut kept = q.tensor.clone();
    if let Some(eps) = eps {
        let r = tt_round(&q.tensor, eps)?;
        ranks = Ranks::rounded(&q.ranks, r.ranks());
        result["rounded_count"] = json!(ones_sum(&r)?.0);
        kept = r;
    }
    if find {
        result["placement"] = json!(queens_placement(&q.tensor)?);
    }
    if oracle {
        let c = brute_count(&CountProblem::Queens(n), &OracleBudget::default(), ctx.exec)?;
        result["oracle_count"] = big_json(&c);
        result["matches_oracle"] = json!(c.to_string() == q.count.to_string());
    }
    if let Some(path) = out {
        save(&kept, &path)?;
    }
    eprintln!("{n}-queens: {} placements, max rank {}", q.count, q.tensor.max_rank());
    Ok(RunReport::new("queens", json!({ "n": n, "eps": eps }), result).ranks(ranks).ops(ops).timed(ctx.timing, start))
}

pub fn permanent_cmd(
    ctx: &Ctx,
    matrix: Option<PathBuf>,
    random: Option<usize>,
    seed: Option<u64>,
    oracle: bool,
) -> CliResult<RunReport> {
    let (a, seed, source) = match (matrix, random) {
        (Some(path), _) => (read_matrix(&path)?, None, json!(path.display().to_string())),
        (None, Some(n)) => {
            let s = seed.unwrap_or(0);
            let mut rng = rng_for(s);
            let a = (0..n).map(|_| (0..n).map(|_| rng.random::<f64>()).collect()).collect();
            (a, Some(s), json!("random"))
        }
        (None, None) => return Err(CliError::input("give --matrix FILE or --random N")),
    };
    let start = Instant::now();
    let n = a.len();
    let r = permanent(&a)?;
    let mut result = json!({ "value": r.value });
    if oracle {
        let o = ryser_reference(&a)?;
        result["oracle_value"] = json!(o);
        result["relative_error"] = json!(rel_error(r.value, o, 0.0));
        if n <= 9 {
            result["brute_value"] = json!(brute_permanent(&a, &OracleBudget::default())?);
        }
    }
    eprintln!("permanent of a {n}x{n} matrix: {} ({} ops)", r.value, r.ops.total());
    Ok(RunReport::new("permanent", json!({ "n": n, "matrix": source }), result)
        .ranks(Ranks::of(&r.ranks))
        .ops(r.ops)
        .seed(seed)
        .timed(ctx.timing, start))
}

/// The game described by `args`: from `--config` or a seeded random instance.
pub fn game_spec(args: &GameArgs) -> CliResult<(GameSpec, Option<u64>)> {
    let family = args.game.family();
    let (mut g, seed) = match (&args.config, args.players) {
        (Some(path), _) => {
            let g: GameSpec = read_json(path)?;
            if g.family() != family {
                return Err(CliError::input(format!("config describes a {} game, not {}", g.family().name(), family.name())));
            }
            if args.players.is_some_and(|n| n != g.players()) {
                return Err(CliError::input(format!("config has {} players", g.players())));
            }
            (g, None)
        }
        (None, Some(n)) => {
            let s = args.seed.unwrap_or(0);
            let w = args.weights.map(Into::into).unwrap_or_default();
            (random_game(family, n, w, &mut rng_for(s))?, Some(s))
        }
        (None, None) => return Err(CliError::input("give --players N or --config FILE")),
    };
    if let Some(w) = args.weights {
        g.weights = w.into();
    }
    g.validate()?;
    Ok((g, seed))
}

pub fn game(ctx: &Ctx, args: GameArgs) -> CliResult<RunReport> {
    let (g, seed) = game_spec(&args)?;
    let start = Instant::now();
    let p = payoffs(&g, ctx.exec)?;
    let mut result = json!({ "payoffs": p.values, "max_rank": p.max_rank, "ops_total": p.ops });
    if args.oracle {
        let o = brute_payoffs(&g, &OracleBudget::default(), ctx.exec)?;
        let scale = o.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let err = p.values.iter().zip(&o).map(|(&a, &b)| rel_error(a, b, scale)).fold(0.0, f64::max);
        result["oracle_payoffs"] = json!(o);
        result["max_relative_error"] = json!(err);
    }
    if args.iterative {
        if g.family() != GameFamily::OneSeller {
            return Err(CliError { kind: "unsupported", message: "--iterative applies to the seller game only".into() });
        }
        let rows: Vec<Value> = (1..g.players())
            .filter_map(|k| one_seller_iterative_for(&g, k).ok().map(|r| json!({ "player": k, "value": r.value, "steps": r.steps })))
            .collect();
        result["iterative"] = json!(rows);
    }
    eprintln!("{} game, {} players: payoffs sum to {}", g.family().name(), g.players(), p.values.iter().sum::<f64>());
    Ok(RunReport::new("game", serde_json::to_value(&g)?, result).seed(seed).timed(ctx.timing, start))
}

pub fn knapsack(ctx: &Ctx, config: &Path, oracle: bool) -> CliResult<RunReport> {
    let p: KnapsackProblem = read_json(config)?;
    let start = Instant::now();
    let sol = knapsack_solve(&p)?;
    let mut result = match &sol {
        Some(s) => json!({ "feasible": true, "counts": s.counts, "value": s.value }),
        None => json!({ "feasible": false }),
    };
    if oracle {
        let (best, counts) = brute_knapsack(&p, &OracleBudget::default(), ctx.exec)?;
        result["oracle_value"] = json!(best);
        result["oracle_counts"] = json!(counts);
        if let Some(s) = &sol {
            result["gap"] = json!(best - s.value);
        }
    }
    match &sol {
        Some(s) => eprintln!("knapsack: value {} with {:?}", s.value, s.counts),
        None => eprintln!("knapsack: infeasible"),
    }
    let mut report = RunReport::new("knapsack", serde_json::to_value(&p)?, result);
    if let Some(s) = &sol {
        report = report.ranks(Ranks::of(&s.ranks));
    }
    Ok(report.timed(ctx.timing, start))
}

pub fn partition(ctx: &Ctx, set_path: &Path, parts: usize, count: bool, oracle: bool) -> CliResult<RunReport> {
    let set: Vec<u64> = read_json(set_path)?;
    let start = Instant::now();
    let sol = partition_solve(&set, parts)?;
    let mut result = json!({
        "feasible": sol.is_some(),
        "assignment": sol.as_ref().map(|s| s.assignment.clone()),
    });
    if count {
        let c = match partition_tensor(&set, parts)? {
            Some(t) => count_exact(&t)?,
            None if set.is_empty() && parts > 0 => 1.into(),
            None => 0.into(),
        };
        result["count"] = big_json(&c);
    }
    if oracle {
        let c = brute_count(&CountProblem::Partition { set: &set, parts }, &OracleBudget::default(), ctx.exec)?;
        result["oracle_count"] = big_json(&c);
    }
    eprintln!("partition into {parts}: {}", if sol.is_some() { "balanced split found" } else { "impossible" });
    let mut report = RunReport::new("partition", json!({ "set": set, "parts": parts }), result);
    if let Some(s) = &sol {
        report = report.ranks(Ranks::of(&s.ranks));
    }
    Ok(report.timed(ctx.timing, start))
}

pub fn sat(ctx: &Ctx, cnf: &Path, model: bool, oracle: bool) -> CliResult<RunReport> {
    let f = CnfFormula::parse_dimacs(&read_text(cnf)?)?;
    let start = Instant::now();
    let params = json!({ "variables": f.num_vars, "clauses": f.clauses.len() });
    let mut result = json!({});
    let mut ranks = None;
    if f.num_vars == 0 {
        let sat = f.clauses.is_empty();
        result["count"] = json!(sat as u8);
        if model {
            result["model"] = if sat { json!([]) } else { Value::Null };
        }
    } else {
        let t = ctt::problems::sat::sat_tensor(&f, None)?;
        ranks = Some(Ranks::of(t.ranks()));
        if model {
            let m = find_nonzero(&t)?.map(|r| r.indices.iter().map(|&i| i == 1).collect::<Vec<bool>>());
            if let Some(m) = &m {
                if !f.is_satisfied_by(m) {
                    return Err(CliError { kind: "internal", message: "extracted assignment violates a clause".into() });
                }
            }
            result["satisfiable"] = json!(m.is_some());
            result["model"] = json!(m);
        } else {
            result["count"] = big_json(&count_exact(&t)?);
        }
    }
    if oracle {
        result["oracle_count"] = big_json(&brute_count(&CountProblem::Sat(&f), &OracleBudget::default(), ctx.exec)?);
    }
    eprintln!("cnf with {} variables and {} clauses", f.num_vars, f.clauses.len());
    let mut report = RunReport::new("sat", params, result);
    if let Some(r) = ranks {
        report = report.ranks(r);
    }
    Ok(report.timed(ctx.timing, start))
}

pub fn subsets(ctx: &Ctx, n: usize, m: u64, oracle: bool) -> CliResult<RunReport> {
    let start = Instant::now();
    let t = subsets_divisible_tensor(n, m)?;
    let c = subsets_divisible_count(n, m)?;
    let mut result = json!({ "count": big_json(&c.count) });
    if let Some(a) = &c.analytic {
        result["closed_form"] = big_json(a);
    }
    if oracle {
        result["oracle_count"] = big_json(&brute_count(&CountProblem::Subsets { n, m }, &OracleBudget::default(), ctx.exec)?);
    }
    eprintln!("subsets of 1..{n} with sum divisible by {m}: {}", c.count);
    Ok(RunReport::new("subsets", json!({ "n": n, "mod": m }), result).ranks(Ranks::of(t.ranks())).timed(ctx.timing, start))
}

pub fn qtt_step(ctx: &Ctx, d: usize, t: u64, out: Option<PathBuf>) -> CliResult<RunReport> {
    let start = Instant::now();
    let tt = qtt_step_build(d, t)?;
    let ones = count_exact(&tt)?;
    if let Some(path) = out {
        save(&tt, &path)?;
    }
    eprintln!("step function on {d} bits at {t}: ranks {:?}", tt.ranks());
    Ok(RunReport::new("qtt-step", json!({ "d": d, "t": t }), json!({ "ones": big_json(&ones) }))
        .ranks(Ranks::of(tt.ranks()))
        .timed(ctx.timing, start))
}

fn frobenius(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn tt_round_cmd(ctx: &Ctx, input: &Path, eps: f64, out: Option<PathBuf>) -> CliResult<RunReport> {
    let t = load(input)?;
    let start = Instant::now();
    let r = tt_round(&t, eps)?;
    let mut result = json!({});
    if let (Ok(a), Ok(b)) = (t.full(DENSE_CHECK_CAP), r.full(DENSE_CHECK_CAP)) {
        let diff: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let norm = frobenius(&a);
        result["relative_error"] = json!(if norm == 0.0 { 0.0 } else { frobenius(&diff) / norm });
    }
    if let Some(path) = out {
        save(&r, &path)?;
    }
    eprintln!("rounded ranks {:?} -> {:?}", t.ranks(), r.ranks());
    Ok(RunReport::new("tt-round", json!({ "eps": eps }), result)
        .ranks(Ranks::rounded(t.ranks(), r.ranks()))
        .timed(ctx.timing, start))
}

pub fn tt_info(input: &Path) -> CliResult<RunReport> {
    let t = load(input)?;
    let kinds: Vec<&str> = t
        .cores()
        .iter()
        .map(|c| match c {
            Core::Sparse(_) => "sparse",
            Core::Dense(_) => "dense",
        })
        .collect();
    let result = json!({
        "dim": t.dim(),
        "mode_sizes": t.mode_sizes(),
        "middle": t.middle(),
        "max_rank": t.max_rank(),
        "cores": kinds,
        "has_factors": t.has_factors(),
        "near_orthogonal": check_near_orthogonal(&t).is_ok(),
        "selection_structure": check_selection_structure(&t).is_ok(),
    });
    eprintln!("tensor of dimension {} with ranks {:?}", t.dim(), t.ranks());
    Ok(RunReport::new("tt-info", json!({}), result).ranks(Ranks::of(t.ranks())))
}

pub fn tt_eval(input: &Path, idx: &[usize]) -> CliResult<RunReport> {
    let t = load(input)?;
    let v = eval_entry(&t, idx)?;
    eprintln!("T{idx:?} = {v}");
    Ok(RunReport::new("tt-eval", json!({ "idx": idx }), json!({ "value": v })))
}
