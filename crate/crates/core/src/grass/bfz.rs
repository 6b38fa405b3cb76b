//! Gaussian decomposition, the twist `η_{w0}` and the maps `x_i`, `y_i`
//! parametrizing the unipotent group by a reduced word of `w0`.

use rand::Rng;

use super::{canonicalize_point, GrassPoint, LaurentMatrix};
use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, PrimeField};
use crate::mvcomb::ReducedWord;

/// `g = v·t·u` with `v` lower unipotent, `t` diagonal, `u` upper unipotent.
#[derive(Clone, Debug)]
pub struct Gauss {
    pub v: LaurentMatrix,
    pub t: LaurentMatrix,
    pub u: LaurentMatrix,
}

/// LTU decomposition with all entries written as ratios of minors of `g`.
pub fn gauss(g: &LaurentMatrix) -> Result<Gauss> {
    let f = g.field();
    let mut lead = vec![LaurentSeries::one(f)];
    let mut lead_inv = vec![LaurentSeries::one(f)];
    for k in 1..=3 {
        let m = g.leading_minor(k);
        if m.is_zero_known() {
            return Err(Error::GaussFailure(k));
        }
        lead_inv.push(m.inv().map_err(|_| Error::GaussFailure(k))?);
        lead.push(m);
    }
    let mut u = LaurentMatrix::identity(f);
    let mut v = LaurentMatrix::identity(f);
    let mut t = LaurentMatrix::zero(f);
    for i in 0..3 {
        t.set(i, i, &lead[i + 1] * &lead_inv[i]);
        for j in i + 1..3 {
            let rows: Vec<usize> = (0..=i).collect();
            let mut cols: Vec<usize> = (0..i).collect();
            cols.push(j);
            u.set(i, j, &g.minor(&rows, &cols) * &lead_inv[i + 1]);
            let mut rows: Vec<usize> = (0..i).collect();
            rows.push(j);
            let cols: Vec<usize> = (0..=i).collect();
            v.set(j, i, &g.minor(&rows, &cols) * &lead_inv[i + 1]);
        }
    }
    Ok(Gauss { v, t, u })
}

/// `[g]_+`, the upper unipotent factor.
pub fn gauss_plus(g: &LaurentMatrix) -> Result<LaurentMatrix> {
    Ok(gauss(g)?.u)
}

/// `η(y) = [w̄0 yᵗ]_+`.
pub fn eta_w0(y: &LaurentMatrix) -> Result<LaurentMatrix> {
    let w0 = LaurentMatrix::w0_bar(y.field());
    gauss_plus(&w0.mul(&y.transpose()))
}

/// `η⁻¹(x) = w̄0⁻¹ ([x w̄0⁻¹]_+)ᵗ w̄0`.
pub fn eta_w0_inv(x: &LaurentMatrix) -> Result<LaurentMatrix> {
    let f = x.field();
    let w0 = LaurentMatrix::w0_bar(f);
    let w0i = w0.inverse()?;
    let inner = gauss_plus(&x.mul(&w0i))?;
    Ok(w0i.mul(&inner.transpose()).mul(&w0))
}

/// `x_i(t) = x_{i3}(t3) x_{i2}(t2) x_{i1}(t1)`.
pub fn x_map(word: ReducedWord, t: &[LaurentSeries; 3]) -> LaurentMatrix {
    let f = t[0].field();
    let l = word.letters();
    let mut m = LaurentMatrix::identity(f);
    for k in (0..3).rev() {
        let a = crate::rootdata::Root::new(l[k] - 1, l[k]);
        m = m.mul(&LaurentMatrix::x_root(f, a, t[k].clone()));
    }
    m
}

/// Recovers `t` from `x = x_i(t)`.
pub fn x_map_inverse(word: ReducedWord, x: &LaurentMatrix) -> Result<[LaurentSeries; 3]> {
    let (a, b, c) = (x.get(0, 1), x.get(0, 2), x.get(1, 2));
    match word {
        ReducedWord::W121 => {
            let t2 = c.clone();
            let t3 = b.div(&t2).map_err(|_| Error::GaussFailure(2))?;
            let t1 = a - &t3;
            Ok([t1, t2, t3])
        }
        ReducedWord::W212 => {
            let t2 = a.clone();
            let t1 = b.div(&t2).map_err(|_| Error::GaussFailure(2))?;
            let t3 = c - &t1;
            Ok([t1, t2, t3])
        }
    }
}

/// `y_i(t) = η⁻¹(x_i(t))`.
pub fn y_map(word: ReducedWord, t: &[LaurentSeries; 3]) -> Result<LaurentMatrix> {
    eta_w0_inv(&x_map(word, t))
}

/// The coset `[y_i(t)⁻¹]`.
pub fn y_inverse_point(word: ReducedWord, t: &[LaurentSeries; 3]) -> Result<GrassPoint> {
    canonicalize_point(&y_map(word, t)?.inverse()?)
}

/// The change of coordinates `t ↦ t'` with `x_121(t) = x_212(t')`.
pub fn transition_121_to_212(t: &[LaurentSeries; 3]) -> Result<[LaurentSeries; 3]> {
    let s = &t[0] + &t[2];
    let si = s.inv()?;
    Ok([&(&t[1] * &t[2]) * &si, s, &(&t[0] * &t[1]) * &si])
}

/// Upper triangular normal data: `gK = u ε^c K` with `u` upper unipotent.
pub fn upper_form(x: &GrassPoint) -> Result<([i64; 3], LaurentMatrix)> {
    let f = x.field();
    let j = LaurentMatrix::from_ints(f, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    let y = canonicalize_point(&j.mul(&x.h()))?;
    let full = j.mul(&y.h()).mul(&j);
    let dy = y.d();
    let c = [dy[2], dy[1], dy[0]];
    let u = LaurentMatrix::from_fn(f, |i, k| full.get(i, k).shift(-c[k]));
    Ok((c, u))
}

/// Writes `x ∈ U0(F)K/K` as `[y_i(t)⁻¹]`, right-multiplying by random
/// elements of `U0(O)` until the minors involved are nonvanishing.
pub fn decompose_u0<R: Rng + ?Sized>(
    x: &GrassPoint,
    word: ReducedWord,
    retries: usize,
    rng: &mut R,
) -> Result<[LaurentSeries; 3]> {
    let f = x.field();
    let (c, u) = upper_form(x)?;
    if c != [0, 0, 0] {
        return Err(Error::NotInU0Orbit);
    }
    for _ in 0..retries {
        let a = random_u0(f, 3, rng);
        let m = u.mul(&a).inverse()?;
        let Ok(xm) = eta_w0(&m) else { continue };
        let Ok(t) = x_map_inverse(word, &xm) else {
            continue;
        };
        if t.iter().any(|s| s.is_zero_known()) {
            continue;
        }
        match y_inverse_point(word, &t) {
            Ok(back) if back == *x => return Ok(t),
            _ => continue,
        }
    }
    Err(Error::RetryExhausted(retries))
}

/// A random element of `U0(O)` with polynomial entries of degree below `deg`.
pub fn random_u0<R: Rng + ?Sized>(field: PrimeField, deg: usize, rng: &mut R) -> LaurentMatrix {
    LaurentMatrix::from_fn(field, |i, j| {
        if i == j {
            LaurentSeries::one(field)
        } else if i < j {
            let coeffs = (0..deg.max(1))
                .map(|_| rng.gen_range(0..field.p()))
                .collect();
            LaurentSeries::exact(field, 0, coeffs)
        } else {
            LaurentSeries::zero(field)
        }
    })
}

/// Random `t` with `val t_k = n_k`, as exact polynomials.
pub fn random_t<R: Rng + ?Sized>(
    field: PrimeField,
    n: [u32; 3],
    len: usize,
    rng: &mut R,
) -> [LaurentSeries; 3] {
    n.map(|v| LaurentSeries::random_poly_with_val(field, v as i64, len, rng))
}
