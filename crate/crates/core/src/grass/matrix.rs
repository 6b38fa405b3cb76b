use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, PrimeField, Val};
use crate::rootdata::{Coweight, Root};

/// A 3×3 matrix over `F_p((ε))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    field: PrimeField,
    e: [[LaurentSeries; 3]; 3],
}

impl LaurentMatrix {
    pub fn new(field: PrimeField, e: [[LaurentSeries; 3]; 3]) -> Self {
        LaurentMatrix { field, e }
    }

    pub fn from_fn(field: PrimeField, mut f: impl FnMut(usize, usize) -> LaurentSeries) -> Self {
        let e = std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)));
        LaurentMatrix { field, e }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::from_fn(field, |_, _| LaurentSeries::zero(field))
    }

    pub fn identity(field: PrimeField) -> Self {
        Self::from_fn(field, |i, j| {
            if i == j {
                LaurentSeries::one(field)
            } else {
                LaurentSeries::zero(field)
            }
        })
    }

    /// `diag(ε^ν1, ε^ν2, ε^ν3)`.
    pub fn eps(field: PrimeField, nu: Coweight) -> Self {
        Self::from_fn(field, |i, j| {
            if i == j {
                LaurentSeries::monomial(field, 1, nu[i])
            } else {
                LaurentSeries::zero(field)
            }
        })
    }

    /// Integer matrix with entries reduced mod p.
    pub fn from_ints(field: PrimeField, m: [[i64; 3]; 3]) -> Self {
        Self::from_fn(field, |i, j| {
            LaurentSeries::monomial(field, field.from_i64(m[i][j]), 0)
        })
    }

    /// The root subgroup element `x_α(s) = 1 + s·E_ij`.
    pub fn x_root(field: PrimeField, a: Root, s: LaurentSeries) -> Self {
        let mut m = Self::identity(field);
        m.e[a.i][a.j] = s;
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentSeries {
        &self.e[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentSeries) {
        self.e[i][j] = x;
    }

    pub fn entries(&self) -> &[[LaurentSeries; 3]; 3] {
        &self.e
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let f = self.field;
        Self::from_fn(f, |i, j| {
            let mut acc = LaurentSeries::zero(f);
            for k in 0..3 {
                if self.e[i][k].is_exact_zero() || other.e[k][j].is_exact_zero() {
                    continue;
                }
                acc = &acc + &(&self.e[i][k] * &other.e[k][j]);
            }
            acc
        })
    }

    pub fn transpose(&self) -> LaurentMatrix {
        Self::from_fn(self.field, |i, j| self.e[j][i].clone())
    }

    pub fn map(&self, mut f: impl FnMut(&LaurentSeries) -> LaurentSeries) -> LaurentMatrix {
        Self::from_fn(self.field, |i, j| f(&self.e[i][j]))
    }

    /// Determinant of the submatrix on `rows × cols` (sorted, equal sizes).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> LaurentSeries {
        assert_eq!(rows.len(), cols.len(), "minor needs a square submatrix");
        let f = self.field;
        match rows.len() {
            0 => LaurentSeries::one(f),
            1 => self.e[rows[0]][cols[0]].clone(),
            2 => {
                let a = &self.e[rows[0]][cols[0]];
                let b = &self.e[rows[0]][cols[1]];
                let c = &self.e[rows[1]][cols[0]];
                let d = &self.e[rows[1]][cols[1]];
                &mul0(a, d) - &mul0(b, c)
            }
            3 => {
                let mut acc = LaurentSeries::zero(f);
                for k in 0..3 {
                    let x = &self.e[rows[0]][cols[k]];
                    if x.is_exact_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = (0..3).filter(|&c| c != k).map(|c| cols[c]).collect();
                    let m = self.minor(&rows[1..], &rest);
                    let t = mul0(x, &m);
                    acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
            _ => unreachable!("3×3 matrices only"),
        }
    }

    pub fn det(&self) -> LaurentSeries {
        self.minor(&[0, 1, 2], &[0, 1, 2])
    }

    /// Leading principal minor of size `k`.
    pub fn leading_minor(&self, k: usize) -> LaurentSeries {
        let idx: Vec<usize> = (0..k).collect();
        self.minor(&idx, &idx)
    }

    pub fn inverse(&self) -> Result<LaurentMatrix> {
        self.inverse_prec(crate::laurent::DEFAULT_PREC)
    }

    /// Inverse through the adjugate; `n` is the precision used to invert
    /// the determinant.
    pub fn inverse_prec(&self, n: i64) -> Result<LaurentMatrix> {
        let det = self.det();
        if det.is_exact_zero() {
            return Err(Error::SingularMatrix);
        }
        let dinv = det.inv_prec(n)?;
        let f = self.field;
        Ok(Self::from_fn(f, |i, j| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let c = self.minor(&rows, &cols);
            let c = if (i + j) % 2 == 1 { -&c } else { c };
            mul0(&c, &dinv)
        }))
    }

    /// Minimum valuation over all entries; errors when an entry vanishes
    /// only to precision and nothing else bounds the minimum.
    pub fn min_val(&self) -> Result<Val> {
        let mut best = Val::Infinite;
        for row in &self.e {
            for x in row {
                if let Ok(v) = x.val() {
                    best = best.min(v);
                }
            }
        }
        for row in &self.e {
            for x in row {
                if x.val().is_err() && x.val_lower_bound() < best {
                    return Err(Error::PrecisionLoss("entry valuation undetermined".into()));
                }
            }
        }
        Ok(best)
    }

    /// True when every entry is known to lie in `O`.
    pub fn is_integral(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|x| x.val_lower_bound() >= Val::Finite(0))
    }

    pub fn is_exact(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_exact())
    }

    /// Upper triangular with ones on the diagonal, up to precision.
    pub fn is_upper_unipotent(&self) -> bool {
        let one = LaurentSeries::one(self.field);
        (0..3).all(|i| {
            (0..3).all(|j| {
                let x = &self.e[i][j];
                if i == j {
                    (x - &one).is_zero_known()
                } else if i > j {
                    x.is_zero_known()
                } else {
                    true
                }
            })
        })
    }

    /// Entrywise equality modulo `ε^n`.
    pub fn eq_mod(&self, other: &LaurentMatrix, n: i64) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.e[i][j].eq_mod(&other.e[i][j], n)))
    }

    /// The lift `s̄_i`, with block `[[0,1],[-1,0]]` in rows/cols `i, i+1`.
    pub fn s_bar(field: PrimeField, i: usize) -> Self {
        let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let a = i - 1;
        m[a][a] = 0;
        m[a + 1][a + 1] = 0;
        m[a][a + 1] = 1;
        m[a + 1][a] = -1;
        Self::from_ints(field, m)
    }

    /// `w̄0 = s̄1 s̄2 s̄1`.
    pub fn w0_bar(field: PrimeField) -> Self {
        let s1 = Self::s_bar(field, 1);
        s1.mul(&Self::s_bar(field, 2)).mul(&s1)
    }
}

fn mul0(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    if a.is_exact_zero() || b.is_exact_zero() {
        LaurentSeries::zero(a.field())
    } else {
        a * b
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.e {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// A random element of `GL3(O)`: a permutation, a constant unit diagonal
/// and elementary factors with polynomial entries of degree below `deg`.
pub fn random_k<R: Rng + ?Sized>(field: PrimeField, deg: usize, rng: &mut R) -> LaurentMatrix {
    let p = field.p();
    let mut perm = [0usize, 1, 2];
    for i in (1..3).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut k = LaurentMatrix::from_fn(field, |i, j| {
        if perm[i] == j {
            LaurentSeries::monomial(field, rng.gen_range(1..p), 0)
        } else {
            LaurentSeries::zero(field)
        }
    });
    let poly = |rng: &mut R| {
        let coeffs: Vec<u32> = (0..deg.max(1)).map(|_| rng.gen_range(0..p)).collect();
        LaurentSeries::exact(field, 0, coeffs)
    };
    for _ in 0..4 {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..2);
        if j >= i {
            j += 1;
        }
        let e = LaurentMatrix::x_root(field, Root::new(i, j), poly(rng));
        k = k.mul(&e);
    }
    k
}
