//! Human and JSON renderings of a command's result. Both come from the same
//! value, in the same order, so output bytes are deterministic.

use num_bigint::BigUint;
use serde_json::{json, Value};

use hocolim::{HomologyGroup, Matrix};

#[derive(Clone, Debug)]
pub enum Extra {
    None,
    /// Smith normal form: diagonal plus the two transforms.
    Snf { diagonal: Vec<String>, u: Matrix, v: Matrix },
    /// Bar construction summary: per level, ranks per internal degree.
    Bar { levels: Vec<(usize, Vec<(i64, usize)>)> },
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Echo of the executed command.
    pub command: String,
    pub window: Option<(i64, i64)>,
    pub homology: Vec<(i64, HomologyGroup)>,
    pub extra: Extra,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        for (n, h) in &self.homology {
            out.push_str(&format!("H_{n} = {h}\n"));
        }
        match &self.extra {
            Extra::None => {}
            Extra::Snf { diagonal, u, v } => {
                out.push_str(&format!("D = diag({})\n", diagonal.join(", ")));
                out.push_str(&format!("U = {u}\n"));
                out.push_str(&format!("V = {v}\n"));
            }
            Extra::Bar { levels } => {
                for (level, ranks) in levels {
                    let parts: Vec<String> = ranks
                        .iter()
                        .map(|(deg, rank)| format!("degree {deg}: rank {rank}"))
                        .collect();
                    let body = if parts.is_empty() { "zero".to_string() } else { parts.join(", ") };
                    out.push_str(&format!("B_{level}: {body}\n"));
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> Value {
        let homology: Vec<Value> = self
            .homology
            .iter()
            .map(|(n, h)| {
                json!({
                    "degree": n,
                    "free_rank": h.free_rank(),
                    "torsion": h.torsion().iter().map(torsion_value).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), json!(self.command));
        if let Some((lo, hi)) = self.window {
            obj.insert("window".into(), json!([lo, hi]));
        }
        obj.insert("homology".into(), Value::Array(homology));
        match &self.extra {
            Extra::None => {}
            Extra::Snf { diagonal, u, v } => {
                obj.insert("diagonal".into(), json!(diagonal));
                obj.insert("u".into(), matrix_json(u));
                obj.insert("v".into(), matrix_json(v));
            }
            Extra::Bar { levels } => {
                let levels: Vec<Value> = levels
                    .iter()
                    .map(|(level, ranks)| {
                        json!({
                            "level": level,
                            "ranks": ranks
                                .iter()
                                .map(|(deg, rank)| json!({"degree": deg, "rank": rank}))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                obj.insert("levels".into(), Value::Array(levels));
            }
        }
        Value::Object(obj)
    }
}

/// Torsion coefficients are JSON numbers while they fit in 64 bits and
/// decimal strings beyond that.
fn torsion_value(d: &BigUint) -> Value {
    match u64::try_from(d) {
        Ok(small) => json!(small),
        Err(_) => json!(d.to_string()),
    }
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array((0..m.cols()).map(|j| json!(m.entry(i, j).to_string())).collect())
        })
        .collect();
    Value::Array(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_formats_groups() {
        let report = Report {
            command: "homology C 0 1".into(),
            window: Some((0, 1)),
            homology: vec![
                (0, HomologyGroup::new(0, vec![2])),
                (1, HomologyGroup::new(1, vec![])),
            ],
            extra: Extra::None,
        };
        let text = report.render_text();
        assert!(text.contains("H_0 = Z/2"));
        assert!(text.contains("H_1 = Z^1"));
        let json = report.render_json();
        assert_eq!(json["homology"][0]["torsion"][0], 2);
        assert_eq!(json["window"][1], 1);
    }
}
