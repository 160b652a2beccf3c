//! Lower bounds for transversal paths and cycles in regular class systems.
//!
//! All evaluation is in `f64` with every multiplication rounded down by one
//! ulp, so a computed bound never exceeds the real-number value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamMode {
    /// `α = 20√ε`, `λ = 300√α`, `d = 12√ε`.
    Strict,
    /// Free-standing values, e.g. measured on an instance.
    Explorer,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeParams {
    pub eps: f64,
    pub d: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub t: usize,
    pub m: usize,
    pub mode: ParamMode,
}

impl RegimeParams {
    pub fn strict(eps: f64, t: usize, m: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::pre(format!("eps must lie in (0,1), got {eps}")));
        }
        let alpha = 20.0 * eps.sqrt();
        Ok(RegimeParams {
            eps,
            d: 12.0 * eps.sqrt(),
            alpha,
            lambda: 300.0 * alpha.sqrt(),
            t,
            m,
            mode: ParamMode::Strict,
        })
    }

    /// `α` and `λ` still follow the strict-mode formulas; `ε` and `d` are free.
    pub fn explorer(eps: f64, d: f64, t: usize) -> Self {
        let alpha = 20.0 * eps.max(0.0).sqrt();
        RegimeParams { eps, d, alpha, lambda: 300.0 * alpha.sqrt(), t, m: 0, mode: ParamMode::Explorer }
    }

    /// Whether `α`, `λ` satisfy the strict-mode relations.
    pub fn is_consistent(&self) -> bool {
        let a = 20.0 * self.eps.max(0.0).sqrt();
        (self.alpha - a).abs() <= 1e-12 * a.max(1.0)
            && (self.lambda - 300.0 * a.sqrt()).abs() <= 1e-9 * self.lambda.max(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisKind {
    /// Asymptotic regime (tiny ε, huge n); unreachable at desk scale.
    Regime,
    /// Checkable on a concrete instance.
    Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub kind: HypothesisKind,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEvaluation {
    pub value: f64,
    pub hypotheses: Vec<HypothesisCheck>,
}

impl BoundEvaluation {
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    pub fn instance_hypotheses_met(&self) -> bool {
        self.hypotheses.iter().filter(|h| h.kind == HypothesisKind::Instance).all(|h| h.satisfied)
    }

    pub fn unmet(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.satisfied).map(|h| h.name.as_str()).collect()
    }
}

fn hyp(out: &mut Vec<HypothesisCheck>, name: &str, kind: HypothesisKind, satisfied: bool) {
    out.push(HypothesisCheck { name: name.to_string(), kind, satisfied });
}

fn down(x: f64) -> f64 {
    if x > 0.0 && x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn mul_down(a: f64, b: f64) -> f64 {
    down(a * b)
}

/// `base^k` by squaring; each product rounded down. Non-positive bases give 0.
fn pow_down(base: f64, mut k: u64) -> f64 {
    if base <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let (mut acc, mut b) = (1.0, base);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_down(acc, b);
        }
        k >>= 1;
        if k > 0 {
            b = mul_down(b, b);
        }
    }
    acc
}

/// `∏_{i=1}^{k} (n − ⌊i/t⌋)`, zero once a factor is non-positive.
fn falling(n: u64, t: usize, k: u64) -> f64 {
    let mut acc = 1.0;
    for i in 1..=k {
        let q = i / t as u64;
        if q >= n {
            return 0.0;
        }
        acc = mul_down(acc, (n - q) as f64);
        if acc == 0.0 || acc.is_infinite() {
            break;
        }
    }
    acc
}

/// Rounds a base like `d − ε − √ε` down past the error of its own evaluation.
fn base(x: f64) -> f64 {
    down(down(x))
}

fn product(parts: &[f64]) -> f64 {
    if parts.iter().any(|&p| p <= 0.0) {
        return 0.0;
    }
    parts.iter().fold(1.0, |acc, &p| mul_down(acc, p))
}

fn regime(out: &mut Vec<HypothesisCheck>, p: &RegimeParams, n: u64, tn: f64) {
    use HypothesisKind::Regime;
    hyp(out, "0 < eps < 1e-5", Regime, p.eps > 0.0 && p.eps < 1e-5);
    hyp(out, "n >= n0(eps)", Regime, p.eps > 0.0 && n as f64 >= tn / (p.eps * p.eps));
}

/// Transversal paths of length `ℓ` from a typical `w0`:
/// `(d−ε−√ε)^ℓ ∏_{i=1}^{ℓ} (n−⌊i/t⌋)`.
pub fn countpath2_part1_bound(p: &RegimeParams, n: u64, l: u64) -> BoundEvaluation {
    use HypothesisKind::Instance;
    let se = p.eps.max(0.0).sqrt();
    let mut h = Vec::new();
    regime(&mut h, p, n, 1.0);
    hyp(&mut h, "t >= 2", Instance, p.t >= 2);
    hyp(&mut h, "d >= 5 sqrt(eps)", Instance, p.d >= 5.0 * se);
    hyp(&mut h, "2 <= l <= t(1 - sqrt(eps))n", Instance, l >= 2 && l as f64 <= p.t as f64 * (1.0 - se) * n as f64);
    let value = product(&[pow_down(base(p.d - p.eps - se), l), falling(n, p.t.max(1), l)]);
    BoundEvaluation { value, hypotheses: h }
}

/// Transversal paths of length `ℓ` between two typical `w0, w0′ ∈ V_0`:
/// `(d−5√ε)^{ℓ−1} (1−2√ε)^{ℓ−2} (εn) ∏_{i=1}^{ℓ−2} (n−⌊i/t⌋)`.
pub fn countpath2_part2_bound(p: &RegimeParams, n: u64, l: u64) -> BoundEvaluation {
    use HypothesisKind::Instance;
    let se = p.eps.max(0.0).sqrt();
    let mut h = Vec::new();
    regime(&mut h, p, n, 1.0);
    hyp(&mut h, "t >= 2", Instance, p.t >= 2);
    hyp(&mut h, "d >= 5 sqrt(eps)", Instance, p.d >= 5.0 * se);
    hyp(
        &mut h,
        "4 <= l <= t(1 - 3 sqrt(eps))n",
        Instance,
        l >= 4 && l as f64 <= p.t as f64 * (1.0 - 3.0 * se) * n as f64,
    );
    hyp(&mut h, "t divides l", Instance, p.t > 0 && l.is_multiple_of(p.t as u64));
    let value = if l < 2 {
        0.0
    } else {
        product(&[
            pow_down(base(p.d - 5.0 * se), l - 1),
            pow_down(base(1.0 - 2.0 * se), l - 2),
            mul_down(p.eps, n as f64),
            falling(n, p.t.max(1), l - 2),
        ])
    };
    BoundEvaluation { value, hypotheses: h }
}

/// Cycles of odd length `p` through a ring of `t` regular pairs:
/// `(ε²/4) n⁴ (d−10√ε)^{p−2} (1−3√ε)^{2p} ∏_{i=1}^{p−4} (n−⌊i/t⌋)`.
pub fn countcycle1_bound(p: &RegimeParams, n: u64, cycle_len: u64) -> BoundEvaluation {
    use HypothesisKind::Instance;
    let se = p.eps.max(0.0).sqrt();
    let mut h = Vec::new();
    regime(&mut h, p, n, p.t as f64);
    hyp(&mut h, "t odd and t >= 3", Instance, p.t >= 3 && p.t % 2 == 1);
    hyp(&mut h, "d >= 10 sqrt(eps)", Instance, p.d >= 10.0 * se);
    hyp(&mut h, "p must be odd", Instance, cycle_len % 2 == 1);
    hyp(
        &mut h,
        "2t + 6 <= p <= t(1 - 5 sqrt(eps))n",
        Instance,
        cycle_len >= 2 * p.t as u64 + 6 && cycle_len as f64 <= p.t as f64 * (1.0 - 5.0 * se) * n as f64,
    );
    let value = if cycle_len < 4 {
        0.0
    } else {
        let nf = n as f64;
        product(&[
            mul_down(p.eps, p.eps) / 4.0,
            mul_down(mul_down(nf, nf), mul_down(nf, nf)),
            pow_down(base(p.d - 10.0 * se), cycle_len - 2),
            pow_down(base(1.0 - 3.0 * se), 2 * cycle_len),
            falling(n, p.t.max(1), cycle_len - 4),
        ])
    };
    BoundEvaluation { value, hypotheses: h }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part1_limit_matches_complete_count() {
        let p = RegimeParams::explorer(0.0, 1.0, 2);
        let b = countpath2_part1_bound(&p, 3, 3);
        assert!(b.value <= 12.0 && b.value > 11.999_999);
        assert!(countpath2_part1_bound(&p, 3, 1).unmet().contains(&"2 <= l <= t(1 - sqrt(eps))n"));
    }

    #[test]
    fn part1_large_n() {
        let p = RegimeParams::explorer(1e-6, 0.5, 3);
        let n = 1_000_000_000_000u64;
        let b = countpath2_part1_bound(&p, n, 5);
        let nf = n as f64;
        let direct = (0.5f64 - 1e-6 - 1e-3).powi(5) * nf * nf * (nf - 1.0).powi(3);
        assert!((b.value - direct).abs() <= direct * 1e-12);
        assert!(b.instance_hypotheses_met());
    }

    #[test]
    fn part2_cases() {
        let zero = countpath2_part2_bound(&RegimeParams::explorer(0.0, 1.0, 2), 10, 4);
        assert_eq!(zero.value, 0.0);
        let p = RegimeParams::explorer(1e-4, 0.9, 2);
        let b = countpath2_part2_bound(&p, 100_000_000, 4);
        let n = 1e8f64;
        let direct = (0.9f64 - 0.05).powi(3) * (0.98f64).powi(2) * (1e-4 * n) * n * (n - 1.0);
        assert!((b.value - direct).abs() <= direct * 1e-12);
        assert!(countpath2_part2_bound(&p, 100, 5).unmet().contains(&"t divides l"));
    }

    #[test]
    fn cycle_flags() {
        let p = RegimeParams::explorer(1e-6, 0.5, 3);
        assert!(countcycle1_bound(&p, 1000, 14).unmet().contains(&"p must be odd"));
        let b = countcycle1_bound(&p, 1000, 12);
        assert!(b.unmet().contains(&"p must be odd"));
        assert!(!b.unmet().contains(&"2t + 6 <= p <= t(1 - 5 sqrt(eps))n"));
        let n = 10_000_000_000_000u64;
        let f = countcycle1_bound(&p, n, 13);
        assert!(f.value.is_finite() && f.value > 0.0 && f.instance_hypotheses_met());
    }

    #[test]
    fn strict_mode_relations() {
        let p = RegimeParams::strict(1e-6, 3, 8).unwrap();
        assert!((p.alpha - 0.02).abs() < 1e-15 && (p.d - 0.012).abs() < 1e-15);
        assert!(p.is_consistent());
        let mut q = RegimeParams::explorer(1e-6, 0.5, 3);
        assert!(q.is_consistent());
        q.alpha = 0.5;
        assert!(!q.is_consistent());
    }
}
