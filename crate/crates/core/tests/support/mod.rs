//! Shared randomized generators and assertion helpers for the property and
//! acceptance suites. Everything is seeded and deterministic.

#![allow(dead_code)]

use dematel_todim::cfcs::{cfcs_cell, ExpertJudgmentCell};
use dematel_todim::dematel::{
    normalize_direct, run_dematel, total_relation, DematelError, DirectRelationMatrix,
};
use dematel_todim::matrix::Matrix;
use dematel_todim::tfn::TriangularFuzzyNumber;
use dematel_todim::todim::{global_values, run_todim, TodimInput};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tfn(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> TriangularFuzzyNumber {
    let mut points = [
        rng.random_range(lo..hi),
        rng.random_range(lo..hi),
        rng.random_range(lo..hi),
    ];
    points.sort_by(f64::total_cmp);
    TriangularFuzzyNumber::new(points[0], points[1], points[2]).expect("sorted triple is valid")
}

pub fn random_cell(rng: &mut ChaCha8Rng, max_experts: usize) -> ExpertJudgmentCell {
    let k = rng.random_range(1..=max_experts);
    ExpertJudgmentCell::new((0..k).map(|_| random_tfn(rng, 0.0, 1.0)).collect())
}

/// Random valid direct-relation matrix: off-diagonal uniform in `(0, 1)`.
pub fn random_direct_relation(rng: &mut ChaCha8Rng, n: usize) -> DirectRelationMatrix {
    let mut entries = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[(i, j)] = rng.random_range(0.01..1.0);
            }
        }
    }
    DirectRelationMatrix::new(entries).expect("generated matrix is valid")
}

/// Random non-negative square matrix rescaled so its maximum row sum equals
/// `target` (strictly below 1 keeps the total-relation series convergent).
pub fn random_contraction(rng: &mut ChaCha8Rng, n: usize, target: f64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rng.random_range(0.0..1.0);
        }
    }
    let max_row_sum = m.row_sums().into_iter().fold(f64::MIN, f64::max);
    m.scale(target / max_row_sum)
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Applies `P A Pᵀ`: criterion `i` of the result is criterion `perm[i]` of
/// the input.
pub fn permute_square(a: &Matrix, perm: &[usize]) -> Matrix {
    let n = a.n_rows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(perm[i], perm[j])];
        }
    }
    out
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / sum).collect()
}

pub fn random_todim_input(rng: &mut ChaCha8Rng, m: usize, n: usize) -> TodimInput {
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(0.0..1.0)).collect())
        .collect();
    TodimInput::new(
        Matrix::from_rows(&rows),
        random_weights(rng, n),
        rng.random_range(0.2..5.0),
        None,
        false,
    )
    .expect("generated input is valid")
}

/// Truncated or converged partial sum of `Σ_{k≥1} D^k`.
///
/// With `terms: Some(t)` exactly `t` terms are summed; with `None` the sum
/// runs until the next term's largest entry drops below `1e-14`.
pub fn neumann_series(d: &Matrix, terms: Option<usize>) -> Matrix {
    let mut sum = d.clone();
    let mut power = d.clone();
    let mut k = 1;
    loop {
        match terms {
            Some(t) if k >= t => break,
            None if power.max_abs() < 1e-14 => break,
            None if k > 100_000 => panic!("series failed to converge"),
            _ => {}
        }
        power = power.matmul(d);
        sum = sum.add(&power);
        k += 1;
    }
    sum
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: {actual} vs {expected} (tol {tol:e})"
    );
}

/// `T = D + D·T` elementwise within `1e-10`.
pub fn assert_fixed_point(a: &DirectRelationMatrix) {
    let d = normalize_direct(a).expect("valid matrix normalizes");
    let t = match total_relation(&d) {
        Ok(t) => t,
        // A random draw can in principle land on a singular system; that is
        // a legitimate error path, not a property violation.
        Err(DematelError::SingularSystem { .. }) => return,
        Err(other) => panic!("unexpected error: {other}"),
    };
    let reconstructed = d.add(&d.matmul(&t));
    for i in 0..t.n_rows() {
        for j in 0..t.n_cols() {
            assert_close(
                t[(i, j)],
                reconstructed[(i, j)],
                1e-10,
                &format!("fixed point at ({i}, {j})"),
            );
        }
    }
}

/// Total relation agrees with the series oracle within `tol`.
pub fn assert_neumann_agreement(d: &Matrix, terms: Option<usize>, tol: f64) {
    let t = total_relation(d).expect("contraction is nonsingular");
    let series = neumann_series(d, terms);
    for i in 0..t.n_rows() {
        for j in 0..t.n_cols() {
            assert_close(
                t[(i, j)],
                series[(i, j)],
                tol,
                &format!("series oracle at ({i}, {j})"),
            );
        }
    }
}

/// Every BNP and the aggregate stay inside `[min lower, max upper]`.
pub fn assert_cfcs_bounds(cell: &ExpertJudgmentCell) {
    let lo = cell
        .values()
        .iter()
        .map(TriangularFuzzyNumber::lower)
        .fold(f64::INFINITY, f64::min);
    let hi = cell
        .values()
        .iter()
        .map(TriangularFuzzyNumber::upper)
        .fold(f64::NEG_INFINITY, f64::max);
    let (aggregate, trace) = cfcs_cell(cell).expect("non-empty cell");
    for step in &trace.steps {
        assert!(
            step.crisp >= lo - 1e-12 && step.crisp <= hi + 1e-12,
            "BNP {} outside [{lo}, {hi}]",
            step.crisp
        );
    }
    assert!(
        aggregate >= lo - 1e-12 && aggregate <= hi + 1e-12,
        "aggregate {aggregate} outside [{lo}, {hi}]"
    );
}

/// Shifting every component by `t` shifts the crisp score by exactly `t`.
pub fn assert_cfcs_translation(cell: &ExpertJudgmentCell, t: f64) {
    let shifted = ExpertJudgmentCell::new(
        cell.values()
            .iter()
            .map(|v| {
                TriangularFuzzyNumber::new(v.lower() + t, v.mode() + t, v.upper() + t)
                    .expect("shift preserves ordering")
            })
            .collect(),
    );
    let (base, _) = cfcs_cell(cell).unwrap();
    let (moved, _) = cfcs_cell(&shifted).unwrap();
    assert_close(moved, base + t, 1e-12, "translation equivariance");
}

/// Scaling every component by `s > 0` scales the crisp score by exactly `s`.
pub fn assert_cfcs_scaling(cell: &ExpertJudgmentCell, s: f64) {
    let scaled = ExpertJudgmentCell::new(
        cell.values()
            .iter()
            .map(|v| {
                TriangularFuzzyNumber::new(v.lower() * s, v.mode() * s, v.upper() * s)
                    .expect("positive scale preserves ordering")
            })
            .collect(),
    );
    let (base, _) = cfcs_cell(cell).unwrap();
    let (stretched, _) = cfcs_cell(&scaled).unwrap();
    assert_close(stretched, s * base, 1e-12, "scale equivariance");
}

/// The aggregate is bitwise independent of expert ordering.
pub fn assert_cfcs_expert_permutation(cell: &ExpertJudgmentCell, rng: &mut ChaCha8Rng) {
    let mut values = cell.values().to_vec();
    values.shuffle(rng);
    let (base, _) = cfcs_cell(cell).unwrap();
    let (shuffled, _) = cfcs_cell(&ExpertJudgmentCell::new(values)).unwrap();
    assert!(
        base == shuffled,
        "expert permutation changed the aggregate: {base} vs {shuffled}"
    );
}

/// Weights and ranks are invariant under positive scaling of the matrix.
pub fn assert_dematel_scale_invariance(a: &DirectRelationMatrix, alpha: f64) {
    let base = match run_dematel(a) {
        Ok(r) => r,
        Err(DematelError::SingularSystem { .. }) => return,
        Err(other) => panic!("unexpected error: {other}"),
    };
    let scaled = run_dematel(&a.scaled(alpha).unwrap()).expect("scaling preserves solvability");
    assert_eq!(base.rank, scaled.rank, "rank changed under scaling");
    for (i, (x, y)) in base.weights.iter().zip(&scaled.weights).enumerate() {
        assert_close(*x, *y, 1e-12, &format!("weight {i} under scaling"));
    }
}

/// Permuting criteria permutes weights and ranks consistently.
pub fn assert_dematel_permutation_equivariance(a: &DirectRelationMatrix, perm: &[usize]) {
    let base = match run_dematel(a) {
        Ok(r) => r,
        Err(DematelError::SingularSystem { .. }) => return,
        Err(other) => panic!("unexpected error: {other}"),
    };
    let permuted_matrix =
        DirectRelationMatrix::new(permute_square(a.entries(), perm)).expect("still valid");
    let permuted = match run_dematel(&permuted_matrix) {
        Ok(r) => r,
        Err(DematelError::SingularSystem { .. }) => return,
        Err(other) => panic!("unexpected error: {other}"),
    };
    for i in 0..perm.len() {
        assert_close(
            permuted.weights[i],
            base.weights[perm[i]],
            1e-12,
            &format!("weight {i} under permutation"),
        );
        assert_eq!(
            permuted.rank[i],
            base.rank[perm[i]],
            "rank {i} under permutation"
        );
    }
}

/// `Σr = Σc = Σt` within `1e-9` relative.
pub fn assert_dematel_conservation(a: &DirectRelationMatrix) {
    let result = match run_dematel(a) {
        Ok(r) => r,
        Err(DematelError::SingularSystem { .. }) => return,
        Err(other) => panic!("unexpected error: {other}"),
    };
    let sum_r: f64 = result.r.iter().sum();
    let sum_c: f64 = result.c.iter().sum();
    let sum_t: f64 = result.total.iter().sum();
    let scale = sum_r.abs().max(sum_c.abs()).max(1.0);
    assert!(
        (sum_r - sum_c).abs() <= 1e-9 * scale,
        "conservation violated: {sum_r} vs {sum_c}"
    );
    assert!(
        (sum_r - sum_t).abs() <= 1e-9 * scale,
        "row sums vs total mass: {sum_r} vs {sum_t}"
    );
}

/// Dominance diagonal is exactly zero; ξ spans [0, 1]; loss shares and
/// final weights are normalized.
pub fn assert_todim_normalization(input: &TodimInput) {
    let result = run_todim(input).expect("generated input runs");
    let m = result.dominance.n_rows();
    for i in 0..m {
        assert_eq!(result.dominance[(i, i)], 0.0, "diagonal at {i}");
    }
    if !result.degenerate {
        let min = result.xi.iter().copied().fold(f64::INFINITY, f64::min);
        let max = result.xi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(result.xi.iter().all(|x| (0.0..=1.0).contains(x)), "xi in [0,1]");
        assert_eq!(min, 0.0, "xi attains 0");
        assert_eq!(max, 1.0, "xi attains 1");
    }
    let sum_loss: f64 = result.loss_share.iter().sum();
    let sum_final: f64 = result.final_weights.iter().sum();
    assert_close(sum_loss, 1.0, 1e-12, "loss shares sum");
    assert_close(sum_final, 1.0, 1e-12, "final weights sum");
}

/// Permuting decision rows permutes every per-alternative output.
pub fn assert_todim_row_permutation(input: &TodimInput, perm: &[usize]) {
    let base = run_todim(input).expect("generated input runs");
    let m = input.decision().n_rows();
    let permuted_rows: Vec<Vec<f64>> = perm
        .iter()
        .map(|&i| input.decision().row(i).to_vec())
        .collect();
    let permuted_input = TodimInput::new(
        Matrix::from_rows(&permuted_rows),
        input.weights().to_vec(),
        input.theta(),
        Some(input.reference()),
        input.normalize_columns(),
    )
    .unwrap();
    let permuted = run_todim(&permuted_input).expect("permuted input runs");
    for i in 0..m {
        assert_close(permuted.xi[i], base.xi[perm[i]], 1e-12, "xi permuted");
        assert_close(
            permuted.loss_share[i],
            base.loss_share[perm[i]],
            1e-12,
            "loss share permuted",
        );
        assert_close(
            permuted.final_weights[i],
            base.final_weights[perm[i]],
            1e-12,
            "final weight permuted",
        );
        assert_eq!(permuted.rank[i], base.rank[perm[i]], "rank permuted");
    }
}

/// Canonical ξ is invariant under `S -> shift + scale·S` with `scale > 0`.
pub fn assert_xi_affine_invariance(sums: &[f64], shift: f64, scale: f64) {
    let transformed: Vec<f64> = sums.iter().map(|s| shift + scale * s).collect();
    let base = global_values(sums).expect("at least two alternatives");
    let moved = global_values(&transformed).expect("at least two alternatives");
    assert_eq!(base.degenerate, moved.degenerate);
    for (i, (x, y)) in base.xi.iter().zip(&moved.xi).enumerate() {
        assert_close(*y, *x, 1e-12, &format!("xi {i} under affine map"));
    }
}
