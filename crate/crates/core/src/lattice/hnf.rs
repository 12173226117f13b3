use std::fmt;

use crate::error::{Error, Result};

/// Upper-triangular Hermite normal form of a full-rank sublattice of Zⁿ.
///
/// The sublattice is the row span. Diagonal entries are positive and every
/// entry above a diagonal entry `d_j` lies in `[0, d_j)`, so each sublattice
/// has exactly one representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfMatrix {
    rows: Vec<Vec<i64>>,
}

impl HnfMatrix {
    pub fn identity(n: usize) -> Self {
        HnfMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Index of the sublattice, the product of the diagonal.
    pub fn index(&self) -> u64 {
        (0..self.rank()).map(|i| self.rows[i][i] as u64).product()
    }

    /// Lattice membership by back-substitution down the triangle.
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let d = row[i] as i128;
            if r[i] % d != 0 {
                return false;
            }
            let k = r[i] / d;
            for j in i..r.len() {
                r[j] -= k * row[j] as i128;
            }
        }
        true
    }

    /// Whether the lattice is mapped into itself by the linear map `f`.
    pub fn is_closed_under(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> bool {
        self.rows.iter().all(|row| self.contains(&f(row)))
    }

    /// Canonical HNF of the lattice spanned by `generators` (must have full
    /// rank `n`).
    pub fn from_generators(generators: &[Vec<i128>], n: usize) -> Result<Self> {
        let mut m: Vec<Vec<i128>> = generators.to_vec();
        let rank = echelonize(&mut m, None, n);
        if rank != n {
            return Err(Error::Internal(format!(
                "generators span rank {rank}, expected {n}"
            )));
        }
        m.truncate(n);
        for i in 0..n {
            let d = m[i][i];
            for k in 0..i {
                let q = m[k][i].div_euclid(d);
                if q != 0 {
                    for j in i..n {
                        m[k][j] -= q * m[i][j];
                    }
                }
            }
        }
        let rows = m
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::Internal("HNF entry overflow".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(HnfMatrix { rows })
    }
}

impl fmt::Debug for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HNF{:?}", self.rows)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Integer row echelon form by unimodular row operations, mirrored on `u`
/// when given. Pivots end up positive and on the leading rows. Returns the
/// rank.
fn echelonize(m: &mut [Vec<i128>], mut u: Option<&mut [Vec<i128>]>, ncols: usize) -> usize {
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        for i in r + 1..nrows {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let (g, s, t) = ext_gcd(a, b);
            let (a_g, b_g) = (a / g, b / g);
            combine(m, r, i, s, t, a_g, b_g);
            if let Some(u) = u.as_deref_mut() {
                combine(u, r, i, s, t, a_g, b_g);
            }
        }
        if m[r][c] != 0 {
            if m[r][c] < 0 {
                m[r].iter_mut().for_each(|x| *x = -*x);
                if let Some(u) = u.as_deref_mut() {
                    u[r].iter_mut().for_each(|x| *x = -*x);
                }
            }
            r += 1;
        }
    }
    r
}

/// `(row_r, row_i) ← (s·row_r + t·row_i, -b/g·row_r + a/g·row_i)`; the
/// transformation has determinant 1.
fn combine(m: &mut [Vec<i128>], r: usize, i: usize, s: i128, t: i128, a_g: i128, b_g: i128) {
    for j in 0..m[r].len() {
        let (x, y) = (m[r][j], m[i][j]);
        m[r][j] = s * x + t * y;
        m[i][j] = -b_g * x + a_g * y;
    }
}

/// Intersection of two full-rank integer lattices given by basis rows.
pub fn lattice_intersection(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<HnfMatrix> {
    let n = a.len();
    // Integer relations u·A + v·B = 0 are the kernel rows of the stacked
    // matrix; each gives a common vector u·A.
    let mut m: Vec<Vec<i128>> = a.iter().chain(b.iter()).cloned().collect();
    let mut u: Vec<Vec<i128>> = (0..2 * n)
        .map(|i| (0..2 * n).map(|j| i128::from(i == j)).collect())
        .collect();
    let rank = echelonize(&mut m, Some(&mut u), n);
    let gens: Vec<Vec<i128>> = u[rank..]
        .iter()
        .map(|rel| {
            (0..n)
                .map(|j| (0..n).map(|k| rel[k] * a[k][j]).sum())
                .collect()
        })
        .collect();
    HnfMatrix::from_generators(&gens, n)
}

/// All index-`m` sublattices of Zⁿ, each as its unique HNF.
pub fn enumerate_sublattices(n: usize, m: u64, budget: usize) -> Result<Vec<HnfMatrix>> {
    let expected = crate::dirichlet::ell(n as u32, m);
    if expected > num_bigint::BigInt::from(budget) {
        return Err(Error::Budget(format!(
            "{expected} sublattices of index {m} in Z^{n} exceeds budget {budget}"
        )));
    }
    let mut out = Vec::new();
    let mut diag = vec![0i64; n];
    diagonals(n, m, 0, &mut diag, &mut |d| fill_offdiagonal(d, &mut out));
    out.sort();
    Ok(out)
}

fn diagonals(n: usize, m: u64, i: usize, diag: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if i == n - 1 {
        diag[i] = m as i64;
        emit(diag);
        return;
    }
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        diag[i] = d as i64;
        diagonals(n, m / d, i + 1, diag, emit);
    }
}

fn fill_offdiagonal(diag: &[i64], out: &mut Vec<HnfMatrix>) {
    let n = diag.len();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect())
        .collect();
    fn rec(k: usize, slots: &[(usize, usize)], diag: &[i64], rows: &mut Vec<Vec<i64>>, out: &mut Vec<HnfMatrix>) {
        if k == slots.len() {
            out.push(HnfMatrix { rows: rows.clone() });
            return;
        }
        let (i, j) = slots[k];
        for v in 0..diag[j] {
            rows[i][j] = v;
            rec(k + 1, slots, diag, rows, out);
        }
        rows[i][j] = 0;
    }
    rec(0, &slots, diag, &mut rows, out);
}
