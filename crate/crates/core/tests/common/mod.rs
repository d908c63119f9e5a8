//! Brute-force oracles written independently of the library algorithms.
#![allow(dead_code)]

use tangles::metric::DistanceMatrix;

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Minimum cross distance between `x` and its complement; `inf` when trivial.
pub fn mind_radius(m: &DistanceMatrix, x: u64) -> f64 {
    let n = m.n();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if x >> i & 1 == 1 && x >> j & 1 == 0 && m.get(i, j) < best {
                best = m.get(i, j);
            }
        }
    }
    best
}

pub fn mind_table(m: &DistanceMatrix) -> Vec<f64> {
    (0..1u64 << m.n()).map(|x| mind_radius(m, x)).collect()
}

/// Largest radius of a set containing `u` and not `v`.
pub fn separation(table: &[f64], n: usize, u: usize, v: usize) -> f64 {
    (0..1u64 << n)
        .filter(|x| x >> u & 1 == 1 && x >> v & 1 == 0)
        .map(|x| table[x as usize])
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn tangle_number(table: &[f64], n: usize) -> f64 {
    let mut best = f64::INFINITY;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                best = best.min(separation(table, n, u, v));
            }
        }
    }
    best
}

/// Branch width on the distance axis by recursion over rooted splits:
/// `g(S)` is the best minimum over the edge above `S` and everything below.
pub fn branch_width(table: &[f64], n: usize) -> f64 {
    let mut g = vec![f64::NAN; 1 << n];
    fn solve(s: u64, table: &[f64], g: &mut Vec<f64>) -> f64 {
        if !g[s as usize].is_nan() {
            return g[s as usize];
        }
        let mut best = f64::NEG_INFINITY;
        if s.count_ones() == 1 {
            best = f64::INFINITY;
        } else {
            let low = s & s.wrapping_neg();
            // Sub-masks containing the lowest element, proper and non-empty.
            let mut a = (s - 1) & s;
            while a > 0 {
                if a & low != 0 {
                    let b = s & !a;
                    let v = solve(a, table, g).min(solve(b, table, g));
                    best = best.max(v);
                }
                a = (a - 1) & s;
            }
        }
        let v = best.min(table[s as usize]);
        g[s as usize] = v;
        v
    }
    let rest = full(n) & !1;
    solve(rest, table, &mut g).min(table[1])
}

/// Bottleneck distance by enumerating every simple path.
pub fn bottleneck_all_paths(m: &DistanceMatrix) -> Vec<Vec<f64>> {
    let n = m.n();
    let mut out = vec![vec![f64::INFINITY; n]; n];
    fn walk(m: &DistanceMatrix, at: usize, visited: u64, top: f64, row: &mut Vec<f64>) {
        if top < row[at] {
            row[at] = top;
        }
        for next in 0..m.n() {
            if visited >> next & 1 == 0 {
                walk(m, next, visited | 1 << next, top.max(m.get(at, next)), row);
            }
        }
    }
    for (s, row) in out.iter_mut().enumerate() {
        walk(m, s, 1 << s, 0.0, row);
    }
    out
}

/// Connected components of the graph `{u,v}` with `sep <= r`, as bitmasks
/// sorted by their value.
pub fn threshold_components(table: &[f64], n: usize, r: f64) -> Vec<u64> {
    let mut sep = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                sep[u][v] = separation(table, n, u, v);
            }
        }
    }
    let mut seen = 0u64;
    let mut comps = Vec::new();
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << s;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if comp >> v & 1 == 0 && sep[u][v] <= r && sep[v][u] <= r {
                    comp |= 1 << v;
                    stack.push(v);
                }
            }
        }
        seen |= comp;
        comps.push(comp);
    }
    comps.sort_unstable();
    comps
}

/// `(core, r_lo, r_hi)` for every non-singleton threshold component,
/// sorted by `(r_lo, core)`.
pub fn catalog(table: &[f64], n: usize) -> Vec<(u64, f64, f64)> {
    let mut radii: Vec<f64> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            radii.push(separation(table, n, u, v));
        }
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let mut out: Vec<(u64, f64, f64)> = Vec::new();
    let mut open: Vec<(u64, f64)> = Vec::new();
    for &r in &radii {
        let comps: Vec<u64> = threshold_components(table, n, r).into_iter().filter(|c| c.count_ones() > 1).collect();
        open.retain(|&(c, lo)| {
            if comps.contains(&c) {
                true
            } else {
                out.push((c, lo, r));
                false
            }
        });
        for c in comps {
            if !open.iter().any(|&(o, _)| o == c) {
                open.push((c, r));
            }
        }
    }
    out.extend(open.into_iter().map(|(c, lo)| (c, lo, f64::INFINITY)));
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

/// Checks the tangle axioms by direct triple enumeration.
pub fn is_tangle(table: &[f64], n: usize, r: f64, family: &[u64]) -> bool {
    let all = full(n);
    let member = |x: u64| family.contains(&x);
    if family.iter().any(|&x| table[x as usize] <= r) {
        return false;
    }
    for x in 0..=all {
        if table[x as usize] > r && !member(x) && !member(all & !x) {
            return false;
        }
    }
    for &a in family {
        for &b in family {
            for &c in family {
                if a & b & c == 0 {
                    return false;
                }
            }
        }
    }
    (0..n).all(|i| !member(1 << i))
}
