//! Small fixed-size tensor helpers. All tensors are dense `[f64; 4]`-based
//! arrays; charts of dimension `n < 4` use the leading `n×n` block and pad the
//! rest with the identity.

use std::array::from_fn;

pub type V4 = [f64; 4];
pub type M4 = [[f64; 4]; 4];
pub type T3 = [[[f64; 4]; 4]; 4];
pub type T4 = [[[[f64; 4]; 4]; 4]; 4];

pub fn tensor1(f: impl FnMut(usize) -> f64) -> V4 {
    from_fn(f)
}

pub fn tensor2(mut f: impl FnMut(usize, usize) -> f64) -> M4 {
    from_fn(|i| from_fn(|j| f(i, j)))
}

pub fn tensor3(mut f: impl FnMut(usize, usize, usize) -> f64) -> T3 {
    from_fn(|i| from_fn(|j| from_fn(|k| f(i, j, k))))
}

pub fn tensor4(mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> T4 {
    from_fn(|i| from_fn(|j| from_fn(|k| from_fn(|l| f(i, j, k, l)))))
}

pub fn sum(dim: usize, f: impl FnMut(usize) -> f64) -> f64 {
    (0..dim).map(f).sum()
}

pub fn sum2(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            acc += f(i, j);
        }
    }
    acc
}

pub fn sum3(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                acc += f(i, j, k);
            }
        }
    }
    acc
}

pub fn sum4(dim: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    acc += f(i, j, k, l);
                }
            }
        }
    }
    acc
}

/// Determinant of the leading `dim×dim` block.
pub fn det(dim: usize, m: &M4) -> f64 {
    let mut a = *m;
    let mut d = 1.0;
    for col in 0..dim {
        let mut piv = col;
        for row in col + 1..dim {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= a[col][col];
        for row in col + 1..dim {
            let factor = a[row][col] / a[col][col];
            for k in col..dim {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    d
}

/// Inverse of the leading `dim×dim` block by Gauss–Jordan with partial
/// pivoting; the complement is padded with the identity. Returns the smallest
/// pivot encountered so callers can detect near-degeneracy.
pub fn invert(dim: usize, m: &M4) -> Option<(M4, f64)> {
    let mut a = *m;
    let mut inv = identity();
    let mut min_pivot = f64::INFINITY;
    for col in 0..dim {
        let mut piv = col;
        for row in col + 1..dim {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        let pval = a[piv][col].abs();
        if pval == 0.0 {
            return None;
        }
        min_pivot = min_pivot.min(pval);
        a.swap(piv, col);
        inv.swap(piv, col);
        let scale = 1.0 / a[col][col];
        for k in 0..dim {
            a[col][k] *= scale;
            inv[col][k] *= scale;
        }
        for row in 0..dim {
            if row != col {
                let factor = a[row][col];
                if factor != 0.0 {
                    for k in 0..dim {
                        a[row][k] -= factor * a[col][k];
                        inv[row][k] -= factor * inv[col][k];
                    }
                }
            }
        }
    }
    Some((inv, min_pivot))
}

pub fn identity() -> M4 {
    tensor2(|i, j| if i == j { 1.0 } else { 0.0 })
}

pub fn dot(dim: usize, a: &V4, b: &V4) -> f64 {
    sum(dim, |i| a[i] * b[i])
}

/// g-inner product of two vectors given the metric matrix.
pub fn inner(dim: usize, g: &M4, a: &V4, b: &V4) -> f64 {
    sum2(dim, |i, j| g[i][j] * a[i] * b[j])
}

pub fn scale(v: &V4, c: f64) -> V4 {
    tensor1(|i| v[i] * c)
}

pub fn axpy(a: f64, x: &V4, y: &V4) -> V4 {
    tensor1(|i| a * x[i] + y[i])
}
