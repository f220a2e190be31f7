use serde::Serialize;
use serde_json::{Map, Value};

/// Machine-readable outcome of one run.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Ranks>,
    /// Problem-specific outcome fields, inlined into the report.
    #[serde(flatten)]
    pub result: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op_count: Option<ctt::OpCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct Ranks {
    pub pre: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub post: Option<Vec<usize>>,
}

impl Ranks {
    pub fn of(pre: &[usize]) -> Self {
        Ranks { pre: pre.to_vec(), post: None }
    }

    pub fn rounded(pre: &[usize], post: &[usize]) -> Self {
        Ranks { pre: pre.to_vec(), post: Some(post.to_vec()) }
    }
}

impl RunReport {
    /// `result` must be a JSON object.
    pub fn new(problem: &str, params: Value, result: Value) -> Self {
        let Value::Object(result) = result else { panic!("report result must be an object") };
        RunReport { problem: problem.into(), params, ranks: None, result, op_count: None, wall_ms: None, seed: None }
    }

    pub fn ranks(mut self, r: Ranks) -> Self {
        self.ranks = Some(r);
        self
    }

    pub fn ops(mut self, ops: ctt::OpCount) -> Self {
        self.op_count = Some(ops);
        self
    }

    pub fn seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    /// Records the elapsed time when `enabled`.
    pub fn timed(mut self, enabled: bool, start: std::time::Instant) -> Self {
        if enabled {
            self.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        self
    }
}
