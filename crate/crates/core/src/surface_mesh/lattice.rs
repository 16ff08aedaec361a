//! Graded tensor grids and breadth-first propagation of ODE states over them.

use num_complex::Complex64;

use crate::{Error, Result};

type C = Complex64;

/// A smooth refinement bump: spacing drops to `h0 / ratio` near `center`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Bump {
    pub center: f64,
    pub width: f64,
    pub ratio: f64,
}

/// Nodes `0 = x_0 < ... < x_n = len` whose spacing follows `h0 / w(x)`.
///
/// The bump list must be symmetric about `len / 2`; the nodes are then made
/// exactly symmetric, `x_{n-j} = len - x_j`.
pub(crate) fn graded_axis(len: f64, base_cells: usize, bumps: &[Bump]) -> Vec<f64> {
    let weight = |x: f64| {
        1.0 + bumps
            .iter()
            .map(|b| (b.ratio - 1.0).max(0.0) * (-0.5 * ((x - b.center) / b.width).powi(2)).exp())
            .sum::<f64>()
    };
    let samples = 200_000usize;
    let dx = len / samples as f64;
    let mut cum = Vec::with_capacity(samples + 1);
    cum.push(0.0);
    let mut prev = weight(0.0);
    for i in 1..=samples {
        let w = weight(i as f64 * dx);
        cum.push(cum[i - 1] + 0.5 * (prev + w) * dx);
        prev = w;
    }
    let total = cum[samples];
    let h0 = len / base_cells.max(2) as f64;
    let mut n = (total / h0).ceil() as usize;
    n = n.max(4);
    n += n % 2;
    let mut xs = vec![0.0; n + 1];
    let mut k = 0usize;
    for (j, x) in xs.iter_mut().enumerate().take(n / 2 + 1).skip(1) {
        let target = total * j as f64 / n as f64;
        while k < samples && cum[k + 1] < target {
            k += 1;
        }
        let span = cum[k + 1] - cum[k];
        let frac = if span > 0.0 { (target - cum[k]) / span } else { 0.0 };
        *x = (k as f64 + frac) * dx;
    }
    xs[n / 2] = 0.5 * len;
    for j in 0..n / 2 {
        xs[n - j] = len - xs[j];
    }
    xs
}

/// Undirected grid graph; each edge carries the parameter displacement.
pub(crate) struct Graph {
    pub params: Vec<C>,
    pub kept: Vec<bool>,
    pub edges: Vec<Vec<(usize, C)>>,
}

pub(crate) struct Spread<S> {
    pub states: Vec<Option<S>>,
    pub parent: Vec<Option<usize>>,
}

fn run_parallel<T: Send, F: Fn(usize) -> T + Sync>(n: usize, threads: usize, f: F) -> Vec<T> {
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 || n < 64 {
        return (0..n).map(&f).collect();
    }
    let chunk = n.div_ceil(threads);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || (t * chunk..((t + 1) * chunk).min(n)).map(f).collect::<Vec<T>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Breadth-first propagation from `root`. Edges for which `blocked` returns
/// true are never followed. `step(u, du, state)` advances a state along an edge.
pub(crate) fn spread<S, B, F>(
    g: &Graph,
    root: usize,
    root_state: S,
    blocked: B,
    step: F,
    threads: usize,
) -> Result<Spread<S>>
where
    S: Clone + Send + Sync,
    B: Fn(usize, usize) -> bool + Sync,
    F: Fn(C, C, &S) -> Result<S> + Sync,
{
    let n = g.params.len();
    let mut states: Vec<Option<S>> = vec![None; n];
    let mut parent = vec![None; n];
    if !g.kept[root] {
        return Err(Error::Mesh("root vertex lies in an excised region".into()));
    }
    states[root] = Some(root_state);
    let mut frontier = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while !frontier.is_empty() {
        let mut jobs = Vec::new();
        for &i in &frontier {
            for &(j, du) in &g.edges[i] {
                if !seen[j] && g.kept[j] && !blocked(i, j) {
                    seen[j] = true;
                    jobs.push((i, j, du));
                }
            }
        }
        let results = run_parallel(jobs.len(), threads, |k| {
            let (i, _, du) = jobs[k];
            step(g.params[i], du, states[i].as_ref().expect("frontier state"))
        });
        let mut next = Vec::with_capacity(jobs.len());
        for ((i, j, _), r) in jobs.into_iter().zip(results) {
            states[j] = Some(r?);
            parent[j] = Some(i);
            next.push(j);
        }
        frontier = next;
    }
    Ok(Spread { states, parent })
}

/// Re-integrates every usable edge outside the spanning tree and returns the
/// largest disagreement measured by `dist`.
pub(crate) fn audit<S, B, F, D>(g: &Graph, sp: &Spread<S>, blocked: B, step: F, dist: D, threads: usize) -> Result<f64>
where
    S: Clone + Send + Sync,
    B: Fn(usize, usize) -> bool + Sync,
    F: Fn(C, C, &S) -> Result<S> + Sync,
    D: Fn(&S, &S) -> f64 + Sync,
{
    let mut jobs = Vec::new();
    for i in 0..g.params.len() {
        let Some(_) = sp.states[i] else { continue };
        for &(j, du) in &g.edges[i] {
            if j > i && sp.states[j].is_some() && !blocked(i, j) && sp.parent[j] != Some(i) && sp.parent[i] != Some(j) {
                jobs.push((i, j, du));
            }
        }
    }
    let res = run_parallel(jobs.len(), threads, |k| {
        let (i, j, du) = jobs[k];
        let s = step(g.params[i], du, sp.states[i].as_ref().unwrap())?;
        Ok::<f64, Error>(dist(&s, sp.states[j].as_ref().unwrap()))
    });
    let mut worst = 0.0f64;
    for r in res {
        worst = worst.max(r?);
    }
    Ok(worst)
}

/// True when the open segments `a0 a1` and `b0 b1` intersect, counting a
/// touch at `a0` or `a1` as an intersection.
pub(crate) fn segments_cross(a0: C, a1: C, b0: C, b1: C) -> bool {
    let cross = |o: C, p: C, q: C| (p - o).re * (q - o).im - (p - o).im * (q - o).re;
    let d1 = cross(b0, b1, a0);
    let d2 = cross(b0, b1, a1);
    let d3 = cross(a0, a1, b0);
    let d4 = cross(a0, a1, b1);
    let side_a = (d1 >= 0.0) != (d2 >= 0.0);
    let side_b = (d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0) || d3 == 0.0 || d4 == 0.0;
    side_a && side_b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_axis_is_symmetric_and_refined() {
        let xs = graded_axis(2.0, 20, &[Bump { center: 1.0, width: 0.1, ratio: 8.0 }]);
        let n = xs.len() - 1;
        for j in 0..=n {
            assert!((xs[j] + xs[n - j] - 2.0).abs() < 1e-15);
        }
        let mid = xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        assert!(mid < 0.1 / 4.0);
    }

    #[test]
    fn crossing_segments() {
        let c = |a: f64, b: f64| C::new(a, b);
        assert!(segments_cross(c(0.0, -1.0), c(0.0, 1.0), c(-1.0, 0.0), c(1.0, 0.0)));
        assert!(!segments_cross(c(2.0, -1.0), c(2.0, 1.0), c(-1.0, 0.0), c(1.0, 0.0)));
    }
}
