//! Size sweeps: one row per size, plus least-squares growth fits.

use crate::commands::{big_json, rel_error, rng_for};
use crate::error::{CliError, CliResult};
use crate::inputs::parse_range;
use crate::{Ctx, GameName};
use clap::{Args, Subcommand};
use ctt::games::{payoffs, random_game, WeightFn};
use ctt::oracles::{brute_count, brute_payoffs, CountProblem, OracleBudget};
use ctt::problems::permanent::{permanent_indicator, permanent_with, ryser_reference};
use ctt::problems::queens::{queens_tensor_with_cap, DEFAULT_QUEENS_CAP};
use ctt::tt::convolve_rank_one;
use ctt::WeightVectors;
use rand::Rng;
use serde_json::{json, Map, Value};
use std::ops::RangeInclusive;
use std::time::Instant;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Print the rows as CSV instead of a JSON report.
    #[arg(long, global = true)]
    csv: bool,
    /// Leave out wall-clock columns so the output is reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    family: BenchFamily,
}

#[derive(Subcommand, Debug)]
enum BenchFamily {
    /// Random N×N matrices with entries uniform on [0, 1).
    Permanent {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Compare with Ryser's formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Random games of one family.
    Game {
        #[arg(value_enum)]
        game: GameName,
        #[arg(long, value_parser = parse_range)]
        players: RangeInclusive<usize>,
        #[arg(long)]
        oracle: bool,
    },
    /// N-queens counts.
    Queens {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long)]
        oracle: bool,
    },
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|&x| x == name)?;
        self.rows.iter().map(|r| r[c].as_f64()).collect()
    }
}

/// Least-squares line `y = a x + b` with its coefficient of determination.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len() as f64;
    if x.len() < 2 {
        return None;
    }
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let a = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some((a, my - a * mx, r2))
}

/// Polynomial degree (log-log slope) and exponential base (log-linear
/// slope) of `y` against `x`.
fn growth(x: &[f64], y: &[f64]) -> Value {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).filter(|(a, b)| **a > 0.0 && **b > 0.0).map(|(&a, &b)| (a, b)).collect();
    let lx: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mut out = Map::new();
    if let Some((a, _, r2)) = linear_fit(&lx, &ly) {
        out.insert("power".into(), json!({ "exponent": a, "r2": r2 }));
    }
    if let Some((a, _, r2)) = linear_fit(&xs, &ly) {
        out.insert("exponential".into(), json!({ "base": a.exp(), "r2": r2 }));
    }
    Value::Object(out)
}

fn time_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn permanent_sweep(n: RangeInclusive<usize>, oracle: bool, seed: u64, timing: bool) -> CliResult<Table> {
    let mut cols = vec!["n", "rank", "additions", "multiplications", "bound", "within_bound"];
    if oracle {
        cols.push("relative_error");
    }
    if timing {
        cols.push("wall_ms");
    }
    let mut t = Table::new(cols);
    let mut rng = rng_for(seed);
    for n in n {
        let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.random::<f64>()).collect()).collect();
        let start = Instant::now();
        let r = permanent_with(&permanent_indicator(n)?, &a)?;
        let ms = time_ms(start);
        let bound = 2u128 * (1u128 << n) * n as u128;
        let within = (r.ops.additions as u128) <= bound && (r.ops.multiplications as u128) <= bound;
        let mut row = vec![
            json!(n),
            json!(r.ranks.iter().max()),
            json!(r.ops.additions),
            json!(r.ops.multiplications),
            json!(bound as u64),
            json!(within),
        ];
        if oracle {
            row.push(json!(rel_error(r.value, ryser_reference(&a)?, 0.0)));
        }
        if timing {
            row.push(json!(ms));
        }
        eprintln!("permanent n={n}: {} ops", r.ops.total());
        t.rows.push(row);
    }
    Ok(t)
}

fn game_sweep(ctx: &Ctx, game: GameName, players: RangeInclusive<usize>, oracle: bool, seed: u64, timing: bool) -> CliResult<Table> {
    let mut cols = vec!["players", "max_rank", "ops"];
    if oracle {
        cols.push("max_relative_error");
    }
    if timing {
        cols.push("wall_ms");
    }
    let mut t = Table::new(cols);
    for n in players {
        let g = random_game(game.family(), n, WeightFn::Shapley, &mut rng_for(seed.wrapping_add(n as u64)))?;
        let start = Instant::now();
        let p = payoffs(&g, ctx.exec)?;
        let ms = time_ms(start);
        let mut row = vec![json!(n), json!(p.max_rank), json!(p.ops)];
        if oracle {
            let o = brute_payoffs(&g, &OracleBudget::default(), ctx.exec)?;
            let scale = o.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            row.push(json!(p.values.iter().zip(&o).map(|(&a, &b)| rel_error(a, b, scale)).fold(0.0, f64::max)));
        }
        if timing {
            row.push(json!(ms));
        }
        eprintln!("{} n={n}: max rank {}", g.family().name(), p.max_rank);
        t.rows.push(row);
    }
    Ok(t)
}

fn queens_sweep(ctx: &Ctx, n: RangeInclusive<usize>, oracle: bool, timing: bool) -> CliResult<Table> {
    let mut cols = vec!["n", "count", "max_rank", "ops"];
    if oracle {
        cols.push("oracle_count");
    }
    if timing {
        cols.push("wall_ms");
    }
    let mut t = Table::new(cols);
    for n in n {
        let start = Instant::now();
        let q = queens_tensor_with_cap(n, DEFAULT_QUEENS_CAP)?;
        let (_, ops) = convolve_rank_one(&q.tensor, &WeightVectors::ones(&q.tensor.mode_sizes()))?;
        let ms = time_ms(start);
        let mut row = vec![json!(n), big_json(&q.count), json!(q.tensor.max_rank()), json!(ops.total())];
        if oracle {
            row.push(big_json(&brute_count(&CountProblem::Queens(n), &OracleBudget::default(), ctx.exec)?));
        }
        if timing {
            row.push(json!(ms));
        }
        eprintln!("queens n={n}: {}", q.count);
        t.rows.push(row);
    }
    Ok(t)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Runs the sweep. With `--csv` the rows go to stdout directly and `Null`
/// is returned.
pub fn run(ctx: &Ctx, args: BenchArgs) -> CliResult<Value> {
    let timing = !args.no_timing;
    let (name, size_col, params, table) = match args.family {
        BenchFamily::Permanent { n, oracle } => {
            let params = json!({ "n": [n.start(), n.end()], "oracle": oracle });
            ("permanent", "n", params, permanent_sweep(n, oracle, args.seed, timing)?)
        }
        BenchFamily::Game { game, players, oracle } => {
            let params = json!({ "game": game.family().name(), "players": [players.start(), players.end()], "oracle": oracle });
            ("game", "players", params, game_sweep(ctx, game, players, oracle, args.seed, timing)?)
        }
        BenchFamily::Queens { n, oracle } => {
            let params = json!({ "n": [n.start(), n.end()], "oracle": oracle });
            ("queens", "n", params, queens_sweep(ctx, n, oracle, timing)?)
        }
    };
    let sizes = table.column(size_col).ok_or_else(|| CliError { kind: "internal", message: "missing size column".into() })?;
    let mut fits = Map::new();
    for col in ["additions", "ops", "max_rank", "rank", "wall_ms"] {
        if let Some(y) = table.column(col) {
            fits.insert(col.into(), growth(&sizes, &y));
        }
    }
    for (col, fit) in &fits {
        eprintln!("growth of {col}: {fit}");
    }
    if args.csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        w.write_record(&table.columns)?;
        for r in &table.rows {
            w.write_record(r.iter().map(cell))?;
        }
        w.flush()?;
        return Ok(Value::Null);
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| Value::Object(table.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
        .collect();
    Ok(json!({
        "bench": name,
        "params": params,
        "seed": args.seed,
        "columns": table.columns,
        "rows": rows,
        "fits": fits,
    }))
}
