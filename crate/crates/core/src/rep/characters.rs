//! Exact characters of `S_n` by the Murnaghan–Nakayama rule.

use std::collections::HashMap;

use super::Partition;
use crate::{Error, Result};

/// `χ_λ` at the class with cycle type `class`.
pub fn character_sn(lambda: &Partition, class: &Partition) -> Result<i64> {
    if lambda.n() != class.n() {
        return Err(Error::GroupMismatch(format!(
            "character of {lambda} (degree {}) at class {class} (degree {})",
            lambda.n(),
            class.n()
        )));
    }
    Ok(MnEvaluator::default().eval(lambda.parts(), class.parts()))
}

/// Memoizing evaluator, reused when filling a whole character table.
#[derive(Default)]
pub struct MnEvaluator {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MnEvaluator {
    pub fn eval(&mut self, lambda: &[usize], mu: &[usize]) -> i64 {
        if mu.is_empty() {
            return i64::from(lambda.is_empty());
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = mu[0];
        let rest = &mu[1..];
        let len = lambda.len();
        // beta-numbers, strictly decreasing
        let beta: Vec<usize> = lambda
            .iter()
            .enumerate()
            .map(|(i, &p)| p + (len - 1 - i))
            .collect();
        let mut total = 0i64;
        for i in 0..len {
            let Some(target) = beta[i].checked_sub(r) else {
                continue;
            };
            if beta.contains(&target) {
                continue;
            }
            // leg length: beads strictly between target and beta[i]
            let height = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let smaller: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(j, &b)| b - (len - 1 - j))
                .filter(|&p| p > 0)
                .collect();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(&smaller, rest);
        }
        self.memo.insert(key, total);
        total
    }
}
