//! Brute-force reference implementations used only by tests. Nothing here
//! calls into the library's linear algebra: matrices are nested `Vec`s,
//! products are triple loops, eigenvalues come from cyclic Jacobi sweeps
//! on the real embedding, and inverses from Gaussian elimination.
#![allow(dead_code, clippy::needless_range_loop)]

use csframe::{AlgebraElement, AlgebraShape, CMatrix, Complex64, FrameSystem, ModuleShape, ModuleVector};

pub type Mat = Vec<Vec<Complex64>>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![ZERO; cols]; rows]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut s = ZERO;
            for l in 0..k {
                s += a[i][l] * b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn adjoint(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut out = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn frobenius(a: &Mat) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn diff_frobenius(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm_sqr()))
        .sum::<f64>()
        .sqrt()
}

pub fn from_cmatrix(m: &CMatrix) -> Mat {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn to_cmatrix(m: &Mat) -> CMatrix {
    let cols = m.first().map_or(0, Vec::len);
    CMatrix::from_fn(m.len(), cols, |i, j| m[i][j])
}

/// Eigenvalues of a Hermitian matrix, ascending. The `n×n` complex matrix
/// `X + iY` is embedded as the real symmetric `[[X, −Y], [Y, X]]`, whose
/// spectrum is that of the original with every eigenvalue doubled.
pub fn hermitian_eigenvalues(a: &Mat) -> Vec<f64> {
    let n = a.len();
    let mut s = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = (a[i][j] + a[j][i].conj()) * 0.5;
            s[i][j] = z.re;
            s[i + n][j + n] = z.re;
            s[i][j + n] = -z.im;
            s[i + n][j] = z.im;
        }
    }
    let mut ev = jacobi_symmetric(s);
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

fn jacobi_symmetric(mut s: Vec<Vec<f64>>) -> Vec<f64> {
    let n = s.len();
    let total: f64 = s.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i][j] * s[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if s[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (skp, skq) = (s[k][p], s[k][q]);
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let (spk, sqk) = (s[p][k], s[q][k]);
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i][i]).collect()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Mat, b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        assert!(p.norm() > 1e-300, "singular system");
        for i in col + 1..n {
            let factor = m[i][col] / p;
            for j in col..=n {
                let v = m[col][j];
                m[i][j] -= factor * v;
            }
        }
    }
    let mut x = vec![ZERO; n];
    for i in (0..n).rev() {
        let mut s = m[i][n];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    x
}

pub fn inverse(a: &Mat) -> Mat {
    let n = a.len();
    let cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let e: Vec<Complex64> = (0..n)
                .map(|i| if i == j { Complex64::new(1.0, 0.0) } else { ZERO })
                .collect();
            solve(a, &e)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// Classical frame theory on `ℂⁿ` with `⟨x, y⟩ = Σ x_i ȳ_i`.
pub struct ClassicalFrame {
    pub vectors: Vec<Vec<Complex64>>,
}

pub fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

impl ClassicalFrame {
    /// Reads a frame over the one-dimensional algebra as plain vectors.
    pub fn from_frame(frame: &FrameSystem) -> Self {
        assert_eq!(frame.shape().algebra().block_dims(), &[1]);
        let vectors = frame.vectors().iter().map(plain_vector).collect();
        Self { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// `S = Σ ψ ψ^H` acting on column vectors.
    pub fn frame_operator(&self) -> Mat {
        let n = self.dim();
        let mut s = zeros(n, n);
        for psi in &self.vectors {
            for i in 0..n {
                for k in 0..n {
                    s[i][k] += psi[i] * psi[k].conj();
                }
            }
        }
        s
    }

    pub fn bounds(&self) -> (f64, f64) {
        let ev = hermitian_eigenvalues(&self.frame_operator());
        (ev[0], *ev.last().unwrap())
    }

    pub fn apply_frame_operator(&self, f: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; f.len()];
        for psi in &self.vectors {
            let c = dot(f, psi);
            for (o, p) in out.iter_mut().zip(psi) {
                *o += c * p;
            }
        }
        out
    }

    pub fn analysis(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.vectors.iter().map(|psi| dot(f, psi)).collect()
    }

    pub fn canonical_dual(&self) -> Vec<Vec<Complex64>> {
        let s = self.frame_operator();
        self.vectors.iter().map(|psi| solve(&s, psi)).collect()
    }

    /// `Σ ⟨f, dual_j⟩ ψ_j`.
    pub fn reconstruct(&self, dual: &[Vec<Complex64>], f: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; f.len()];
        for (psi, d) in self.vectors.iter().zip(dual) {
            let c = dot(f, d);
            for (o, p) in out.iter_mut().zip(psi) {
                *o += c * p;
            }
        }
        out
    }
}

pub fn plain_vector(v: &ModuleVector) -> Vec<Complex64> {
    v.entries().iter().map(|e| e.block(0)[(0, 0)]).collect()
}

pub fn vec_dist(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Module elements as nested plain matrices: `entries[i][b]`.
pub type PlainVector = Vec<Vec<Mat>>;
pub type PlainElement = Vec<Mat>;

pub fn plain_element(a: &AlgebraElement) -> PlainElement {
    a.blocks().iter().map(from_cmatrix).collect()
}

pub fn element_from_plain(shape: &AlgebraShape, a: &PlainElement) -> AlgebraElement {
    AlgebraElement::from_blocks(shape.clone(), a.iter().map(to_cmatrix).collect()).unwrap()
}

pub fn plain_module_vector(v: &ModuleVector) -> PlainVector {
    v.entries().iter().map(plain_element).collect()
}

pub fn module_vector_from_plain(shape: &ModuleShape, v: &PlainVector) -> ModuleVector {
    let entries: Vec<AlgebraElement> = v.iter().map(|e| element_from_plain(shape.algebra(), e)).collect();
    ModuleVector::from_entries(shape, &entries).unwrap()
}

pub fn element_mul(a: &PlainElement, b: &PlainElement) -> PlainElement {
    a.iter().zip(b).map(|(x, y)| matmul(x, y)).collect()
}

pub fn element_add(a: &PlainElement, b: &PlainElement) -> PlainElement {
    a.iter().zip(b).map(|(x, y)| add(x, y)).collect()
}

pub fn element_adjoint(a: &PlainElement) -> PlainElement {
    a.iter().map(adjoint).collect()
}

pub fn element_zero(shape: &AlgebraShape) -> PlainElement {
    shape.block_dims().iter().map(|&d| zeros(d, d)).collect()
}

/// `⟨f, g⟩ = Σ_i f_i g_i*` computed entrywise.
pub fn module_inner(f: &PlainVector, g: &PlainVector, shape: &AlgebraShape) -> PlainElement {
    let mut acc = element_zero(shape);
    for (fi, gi) in f.iter().zip(g) {
        acc = element_add(&acc, &element_mul(fi, &element_adjoint(gi)));
    }
    acc
}

/// `Σ_j ⟨f, φ_j⟩ γ_j`.
pub fn apply_sum(
    analysis: &[PlainVector],
    synthesis: &[PlainVector],
    f: &PlainVector,
    shape: &AlgebraShape,
) -> PlainVector {
    let rank = f.len();
    let mut out: PlainVector = (0..rank).map(|_| element_zero(shape)).collect();
    for (phi, gamma) in analysis.iter().zip(synthesis) {
        let c = module_inner(f, phi, shape);
        for i in 0..rank {
            out[i] = element_add(&out[i], &element_mul(&c, &gamma[i]));
        }
    }
    out
}

/// Coordinates of a module vector: all matrix entries, entry-major.
pub fn coordinates(v: &PlainVector) -> Vec<Complex64> {
    v.iter().flatten().flat_map(|m| m.iter().flatten().copied()).collect()
}

pub fn coordinate_basis(shape: &ModuleShape) -> Vec<PlainVector> {
    let a = shape.algebra();
    let mut out = Vec::new();
    for i in 0..shape.rank() {
        for (b, &d) in a.block_dims().iter().enumerate() {
            for k in 0..d {
                for l in 0..d {
                    let mut v: PlainVector = (0..shape.rank()).map(|_| element_zero(a)).collect();
                    v[i][b][k][l] = Complex64::new(1.0, 0.0);
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Spectral bounds of the frame operator computed from the matrix of
/// `f ↦ Σ⟨f,ψ_j⟩ψ_j` on the coordinate space of `H`, which is
/// self-adjoint for the trace inner product.
pub fn frame_bounds_bruteforce(frame: &FrameSystem) -> (f64, f64) {
    let shape = frame.shape();
    let psi: Vec<PlainVector> = frame.vectors().iter().map(plain_module_vector).collect();
    let basis = coordinate_basis(shape);
    let cols: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|e| coordinates(&apply_sum(&psi, &psi, e, shape.algebra())))
        .collect();
    let n = cols.len();
    let m: Mat = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let ev = hermitian_eigenvalues(&m);
    (ev[0], ev[n - 1])
}
