//! Small exact and numeric minimizers used by the metrics and chiralities.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns the best point found and its value; the bracket is shrunk until
/// it is narrower than `tol`.
pub fn golden_section(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iters = 0;
    while (b - a).abs() > tol && iters < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    [(lo, f(lo)), (hi, f(hi)), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap()
}

fn solve_square(m: &mut [Vec<f64>], rhs: &mut [f64]) -> Option<Vec<f64>> {
    let n = rhs.len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |s, v| s.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for (i, row) in rest.iter_mut().enumerate() {
            let k = row[col] / pivot[col];
            if k != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= k * p;
                }
                rhs[col + 1 + i] -= k * rhs[col];
            }
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * z[c]).sum();
        z[r] = (rhs[r] - s) / m[r][r];
    }
    Some(z)
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let n = idx.len();
    for i in (0..n).rev() {
        if idx[i] < m - n + i {
            idx[i] += 1;
            for j in i + 1..n {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimizes `c . z` subject to `a z <= b` by enumerating the vertices of the
/// feasible polyhedron. Meant for a handful of variables and a few dozen
/// constraints; the polyhedron must be pointed and the objective bounded below.
pub fn lp_minimize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<(f64, Vec<f64>)> {
    let n = c.len();
    let m = a.len();
    if m < n {
        return None;
    }
    let bscale = b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let tol = 1e-10 * bscale;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let mut mat: Vec<Vec<f64>> = idx.iter().map(|&i| a[i].clone()).collect();
        let mut rhs: Vec<f64> = idx.iter().map(|&i| b[i]).collect();
        if let Some(z) = solve_square(&mut mat, &mut rhs) {
            let feasible = a
                .iter()
                .zip(b)
                .all(|(row, &bi)| row.iter().zip(&z).map(|(p, q)| p * q).sum::<f64>() <= bi + tol);
            if feasible {
                let val: f64 = c.iter().zip(&z).map(|(p, q)| p * q).sum();
                if best.as_ref().is_none_or(|(bv, _)| val < *bv) {
                    best = Some((val, z));
                }
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    best
}
