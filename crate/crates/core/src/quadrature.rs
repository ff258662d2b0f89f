//! Collocation nodes on [0,1] and node-to-node spectral integration weights.
//!
//! Nodes are generated on [-1,1] with Newton's method on the defining
//! Legendre-polynomial expression and mapped affinely to [0,1]. Weights are
//! integrals of the Lagrange basis over each subinterval, evaluated with a
//! Gauss-Legendre rule exact for the polynomial integrands.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Node family of the collocation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeRule {
    GaussLobatto,
    GaussRadauRight,
    GaussLegendre,
}

impl NodeRule {
    pub fn min_nodes(self) -> usize {
        match self {
            NodeRule::GaussLobatto => 2,
            NodeRule::GaussRadauRight | NodeRule::GaussLegendre => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeRule::GaussLobatto => "gauss-lobatto",
            NodeRule::GaussRadauRight => "gauss-radau-right",
            NodeRule::GaussLegendre => "gauss-legendre",
        }
    }
}

impl fmt::Display for NodeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NodeRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gauss-lobatto" | "lobatto" => Ok(NodeRule::GaussLobatto),
            "gauss-radau-right" | "radau-right" | "radau" => Ok(NodeRule::GaussRadauRight),
            "gauss-legendre" | "legendre" => Ok(NodeRule::GaussLegendre),
            other => Err(Error::Config(format!("unknown node rule '{other}'"))),
        }
    }
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
pub(crate) fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    if n == 0 {
        return (T::one(), T::zero());
    }
    let (mut p_prev, mut p) = (T::one(), x);
    let (mut d_prev, mut d) = (T::zero(), T::one());
    for k in 1..n {
        let kf = T::from_usize_lossy(k);
        let two_k1 = T::from_usize_lossy(2 * k + 1);
        let p_next = (two_k1 * x * p - kf * p_prev) / (kf + T::one());
        // P'_{k+1} = P'_{k-1} + (2k+1) P_k
        let d_next = d_prev + two_k1 * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

fn newton_polish<T: Real, F>(mut x: T, f: F) -> T
where
    F: Fn(T) -> (T, T),
{
    let tiny = T::epsilon() * T::lit(4.0);
    for _ in 0..100 {
        let (v, dv) = f(x);
        if dv == T::zero() {
            break;
        }
        let step = v / dv;
        x = x - step;
        if step.abs() <= tiny * x.abs().max(T::one()) {
            // one extra step to settle the last bit
            let (v, dv) = f(x);
            if dv != T::zero() {
                x = x - v / dv;
            }
            break;
        }
    }
    x
}

/// Roots of `P_n` on [-1,1] in increasing order.
fn legendre_roots<T: Real>(n: usize) -> Vec<T> {
    let pi = T::PI();
    let mut roots: Vec<T> = (1..=n)
        .map(|k| {
            let guess = (pi * (T::from_usize_lossy(k) - T::lit(0.25))
                / (T::from_usize_lossy(n) + T::lit(0.5)))
            .cos();
            newton_polish(guess, |x| legendre_with_derivative(n, x))
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).expect("NaN node"));
    roots
}

/// Reference Gauss-Legendre rule on [-1,1] with `n` points.
pub(crate) fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let x = legendre_roots::<T>(n);
    let w = x
        .iter()
        .map(|&xi| {
            let (_, d) = legendre_with_derivative(n, xi);
            T::lit(2.0) / ((T::one() - xi * xi) * d * d)
        })
        .collect();
    (x, w)
}

/// Collocation nodes in [0,1], strictly increasing.
pub fn make_nodes<T: Real>(rule: NodeRule, num_nodes: usize) -> Result<Vec<T>> {
    if num_nodes < rule.min_nodes() {
        return Err(Error::UnsupportedNodeCount {
            rule: rule.as_str(),
            min: rule.min_nodes(),
            got: num_nodes,
        });
    }
    let m = num_nodes;
    let pi = T::PI();
    let mut x: Vec<T> = match rule {
        NodeRule::GaussLegendre => legendre_roots(m),
        NodeRule::GaussLobatto => {
            // interior nodes are the roots of P'_{m-1}
            let n = m - 1;
            let nf = T::from_usize_lossy(n);
            let mut v = vec![-T::one()];
            for k in (1..n).rev() {
                let guess = (pi * T::from_usize_lossy(k) / nf).cos();
                let root = newton_polish(guess, |x| {
                    let (p, d) = legendre_with_derivative(n, x);
                    let dd = (T::lit(2.0) * x * d - nf * (nf + T::one()) * p) / (T::one() - x * x);
                    (d, dd)
                });
                v.push(root);
            }
            v.push(T::one());
            v
        }
        NodeRule::GaussRadauRight => {
            // roots of P_m - P_{m-1}; x = 1 is one of them
            let denom = T::from_usize_lossy(2 * m - 1);
            let mut v: Vec<T> = (1..m)
                .rev()
                .map(|k| {
                    let guess = (T::lit(2.0) * pi * T::from_usize_lossy(k) / denom).cos();
                    newton_polish(guess, |x| {
                        let (p, dp) = legendre_with_derivative(m, x);
                        let (q, dq) = legendre_with_derivative(m - 1, x);
                        (p - q, dp - dq)
                    })
                })
                .collect();
            v.push(T::one());
            v
        }
    };
    x.sort_by(|a, b| a.partial_cmp(b).expect("NaN node"));
    let half = T::lit(0.5);
    let mut nodes: Vec<T> = x.into_iter().map(|xi| half * (xi + T::one())).collect();
    if rule == NodeRule::GaussLobatto {
        nodes[0] = T::zero();
        nodes[m - 1] = T::one();
        // exact midpoint for odd counts
        if m % 2 == 1 {
            nodes[m / 2] = half;
        }
    }
    if rule == NodeRule::GaussRadauRight {
        nodes[m - 1] = T::one();
    }
    validate_nodes(&nodes)?;
    Ok(nodes)
}

fn validate_nodes<T: Real>(nodes: &[T]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::InvalidNodes("empty node list".into()));
    }
    for (i, &t) in nodes.iter().enumerate() {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::InvalidNodes(format!("node {i} = {t} outside [0,1]")));
        }
        if i > 0 && t <= nodes[i - 1] {
            return Err(Error::InvalidNodes(format!(
                "node {i} = {t} does not exceed node {} = {}",
                i - 1,
                nodes[i - 1]
            )));
        }
    }
    Ok(())
}

fn lagrange_basis<T: Real>(nodes: &[T], j: usize, t: T) -> T {
    nodes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .fold(T::one(), |acc, (_, &ti)| acc * (t - ti) / (nodes[j] - ti))
}

/// `∫_a^b ℓ_j(t) dt` for every basis polynomial `j`.
fn integrate_basis<T: Real>(nodes: &[T], a: T, b: T, rule: &(Vec<T>, Vec<T>)) -> Vec<T> {
    let half = T::lit(0.5);
    let (mid, rad) = (half * (a + b), half * (b - a));
    (0..nodes.len())
        .map(|j| {
            rule.0
                .iter()
                .zip(&rule.1)
                .map(|(&x, &w)| w * lagrange_basis(nodes, j, mid + rad * x))
                .sum::<T>()
                * rad
        })
        .collect()
}

/// Weights for the collocation step.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationWeights<T> {
    /// Row `m` integrates from node `m` to node `m+1`; `(M-1) x M`.
    pub substep: Vec<Vec<T>>,
    /// Row `m` integrates from 0 to node `m`; `M x M`.
    pub full: Vec<Vec<T>>,
    /// Integrates from 0 to 1.
    pub terminal: Vec<T>,
}

/// Substep and cumulative weights by exact integration of the Lagrange basis.
pub fn make_weights<T: Real>(nodes: &[T]) -> Result<CollocationWeights<T>> {
    validate_nodes(nodes)?;
    let m = nodes.len();
    let reference = gauss_legendre::<T>(m + 1);
    let substep: Vec<Vec<T>> = nodes
        .windows(2)
        .map(|w| integrate_basis(nodes, w[0], w[1], &reference))
        .collect();
    let first = integrate_basis(nodes, T::zero(), nodes[0], &reference);
    let mut full = Vec::with_capacity(m);
    full.push(first);
    for row in &substep {
        let prev = full.last().expect("first row present");
        let next: Vec<T> = prev.iter().zip(row).map(|(&a, &b)| a + b).collect();
        full.push(next);
    }
    let terminal = if nodes[m - 1] == T::one() {
        full[m - 1].clone()
    } else {
        let tail = integrate_basis(nodes, nodes[m - 1], T::one(), &reference);
        full[m - 1].iter().zip(&tail).map(|(&a, &b)| a + b).collect()
    };
    Ok(CollocationWeights {
        substep,
        full,
        terminal,
    })
}

/// Nodes and integration weights of one collocation rule.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationTable<T> {
    pub rule: NodeRule,
    pub nodes: Vec<T>,
    pub substep_weights: Vec<Vec<T>>,
    pub full_weights: Vec<Vec<T>>,
    pub terminal_weights: Vec<T>,
}

impl<T: Real> CollocationTable<T> {
    pub fn new(rule: NodeRule, num_nodes: usize) -> Result<Self> {
        let nodes = make_nodes(rule, num_nodes)?;
        let w = make_weights(&nodes)?;
        Ok(Self {
            rule,
            nodes,
            substep_weights: w.substep,
            full_weights: w.full,
            terminal_weights: w.terminal,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// True when the first node is the left interval endpoint.
    pub fn starts_at_origin(&self) -> bool {
        self.nodes[0] == T::zero()
    }

    /// True when the last node is the right interval endpoint.
    pub fn ends_at_one(&self) -> bool {
        self.nodes[self.nodes.len() - 1] == T::one()
    }

    /// `τ_{m+1} - τ_m` for every substep.
    pub fn substep_lengths(&self) -> Vec<T> {
        self.nodes.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Number of implicit solves one sweep performs.
    pub fn solves_per_sweep(&self) -> usize {
        if self.starts_at_origin() {
            self.num_nodes() - 1
        } else {
            self.num_nodes()
        }
    }
}
