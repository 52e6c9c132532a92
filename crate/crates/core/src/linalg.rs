//! Exact linear algebra over `ℚ(i)(params)` and numeric complex solves.
//!
//! Elimination is fraction-free: each row is cleared of denominators and the
//! polynomial matrix is reduced with Bareiss' exact-division recurrence.
//! Pivots are the lowest-index nonzero row in each column.

use num_traits::{One, Zero};

use crate::arith::bigfloat::{BigFloat, Complex};
use crate::arith::gauss::GaussRational;
use crate::arith::poly::{gcd, Poly};
use crate::arith::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<RatFunc>>;

/// Row echelon form of a polynomial matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Poly>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides"))
}

/// Multiplies a row by the lcm of its denominators.
fn clear_row(row: &[RatFunc]) -> Vec<Poly> {
    let mut l = Poly::one();
    for x in row {
        if !x.is_zero() && !x.denom().is_constant() {
            l = lcm(&l, x.denom());
        }
    }
    row.iter()
        .map(|x| {
            if x.is_zero() {
                Poly::zero()
            } else {
                x.numer().mul(&l.div_exact(x.denom()).expect("lcm divisible"))
            }
        })
        .collect()
}

/// Plain elimination over `ℚ(i)` for matrices without parameters.
fn echelon_constant(m: &[Vec<GaussRational>], ncols: usize) -> Echelon {
    let mut a = m.to_vec();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..nrows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..ncols {
                if !a[r][j].is_zero() {
                    a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let rows = a.into_iter().map(|row| row.into_iter().map(Poly::constant).collect()).collect();
    Echelon { rows, pivots, ncols }
}

/// Fraction-free row echelon form.
pub fn echelon(m: &[Vec<RatFunc>], ncols: usize) -> Echelon {
    let constant: Option<Vec<Vec<GaussRational>>> =
        m.iter().map(|r| r.iter().map(RatFunc::as_constant).collect()).collect();
    if let Some(c) = constant {
        return echelon_constant(&c, ncols);
    }
    let mut a: Vec<Vec<Poly>> = m.iter().map(|r| clear_row(r)).collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..nrows {
            let f = a[i][c].clone();
            for j in c..ncols {
                let v = piv.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                a[i][j] = if prev.as_constant().is_some_and(|k| k.is_one()) {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            for j in 0..c {
                a[i][j] = Poly::zero();
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r.max(pivots.len()));
    Echelon { rows: a, pivots, ncols }
}

pub fn rank(m: &[Vec<RatFunc>], ncols: usize) -> usize {
    echelon(m, ncols).rank()
}

/// Basis of `{x : m·x = 0}`, one vector per free column in increasing order,
/// with the free coordinate set to 1.
pub fn nullspace(m: &[Vec<RatFunc>], ncols: usize) -> Vec<Vec<RatFunc>> {
    let ech = echelon(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    let rows: Vec<Vec<RatFunc>> =
        ech.rows.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![RatFunc::zero(); ncols];
            x[f] = RatFunc::one();
            for (k, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &rows[k];
                let mut s = RatFunc::zero();
                for j in pc + 1..ncols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s = s.add(&row[j].mul(&x[j]));
                    }
                }
                x[pc] = s.neg().div(&row[pc]).expect("pivot nonzero");
            }
            x
        })
        .collect()
}

/// Indices of the first maximal linearly independent subset of `vectors`,
/// scanning in order.
pub fn independent_subset(vectors: &[Vec<RatFunc>], dim: usize) -> Vec<usize> {
    let cols: Vec<Vec<RatFunc>> =
        (0..dim).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
    echelon(&cols, vectors.len()).pivots
}

pub fn span_rank(vectors: &[Vec<RatFunc>], dim: usize) -> usize {
    rank(vectors, dim)
}

/// `true` when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<RatFunc>], v: &[RatFunc]) -> bool {
    let dim = v.len();
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    rank(&all, dim) == rank(basis, dim)
}

/// Equality of the spans of two vector lists.
pub fn same_span(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], dim: usize) -> bool {
    let ra = rank(a, dim);
    if ra != rank(b, dim) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    rank(&all, dim) == ra
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], dim: usize) -> Vec<Vec<RatFunc>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0.
    let n = a.len() + b.len();
    let m: Vec<Vec<RatFunc>> = (0..dim)
        .map(|k| a.iter().map(|v| v[k].clone()).chain(b.iter().map(|v| v[k].neg())).collect())
        .collect();
    let ns = nullspace(&m, n);
    let vecs: Vec<Vec<RatFunc>> = ns
        .iter()
        .map(|x| {
            (0..dim)
                .map(|k| a.iter().enumerate().fold(RatFunc::zero(), |s, (i, v)| s.add(&x[i].mul(&v[k]))))
                .collect()
        })
        .collect();
    let keep = independent_subset(&vecs, dim);
    keep.into_iter().map(|i| vecs[i].clone()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}

/// Gauss-Jordan inverse over the rational-function field.
pub fn inverse(m: &[Vec<RatFunc>]) -> Result<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut inv = identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(c, p);
        inv.swap(c, p);
        let pinv = a[c][c].inv()?;
        for j in 0..n {
            a[c][j] = a[c][j].mul(&pinv);
            inv[c][j] = inv[c][j].mul(&pinv);
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                if !a[c][j].is_zero() {
                    a[i][j] = a[i][j].sub(&f.mul(&a[c][j]));
                }
                if !inv[c][j].is_zero() {
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[c][j]));
                }
            }
        }
    }
    Ok(inv)
}

pub fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(RatFunc::zero(), |s, l| if a[i][l].is_zero() || b[l][j].is_zero() { s } else { s.add(&a[i][l].mul(&b[l][j])) }))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<RatFunc>]) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Numeric inverse with partial pivoting after row equilibration. Fails
/// when a pivot falls below `10^(-digits/2)` relative to its row scale.
pub fn inverse_complex(m: &[Vec<Complex>], prec: u64, digits: u32) -> Result<Vec<Vec<Complex>>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex>> = m.to_vec();
    // B = D·B' with D diagonal, so B⁻¹ = B'⁻¹·D⁻¹.
    let mut scales = Vec::with_capacity(n);
    for row in a.iter_mut() {
        let s = row.iter().map(|z| z.abs(prec)).max_by(|x, y| x.cmp_abs(y)).unwrap_or_else(BigFloat::zero);
        if s.is_zero() {
            return Err(Error::Singular);
        }
        for z in row.iter_mut() {
            *z = Complex { re: z.re.div(&s, prec), im: z.im.div(&s, prec) };
        }
        scales.push(s);
    }
    let one = Complex::real(BigFloat::from_int(1));
    let mut inv: Vec<Vec<Complex>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { one.clone() } else { Complex::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs(prec).cmp_abs(&a[j][c].abs(prec)).then(j.cmp(&i)))
            .expect("nonempty");
        if a[p][c].abs(prec).below_decimal(f64::from(digits) / 2.0) {
            return Err(Error::Singular);
        }
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = a[c][j].div(&piv, prec);
            inv[c][j] = inv[c][j].div(&piv, prec);
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                a[i][j] = a[i][j].sub(&f.mul(&a[c][j], prec), prec);
                inv[i][j] = inv[i][j].sub(&f.mul(&inv[c][j], prec), prec);
            }
        }
    }
    // Undo the row scaling: column j of the inverse is divided by scale j.
    for row in inv.iter_mut() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = Complex { re: z.re.div(&scales[j], prec), im: z.im.div(&scales[j], prec) };
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::expr::ScalarExpr;

    fn rf(s: &str) -> RatFunc {
        ScalarExpr::parse(s).unwrap().to_ratfunc().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect()
    }

    #[test]
    fn rank_of_parametric_matrix() {
        let m = mat(&[&["1", "lambda"], &["lambda", "1"]]);
        assert_eq!(rank(&m, 2), 2);
        let m = mat(&[&["1", "lambda"], &["2", "2*lambda"]]);
        assert_eq!(rank(&m, 2), 1);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = mat(&[&["1", "2", "lambda", "0"], &["0", "lambda", "1", "1/lambda"], &["1", "2 + lambda", "lambda + 1", "1/lambda"]]);
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let s = row.iter().zip(v).fold(RatFunc::zero(), |s, (a, b)| s.add(&a.mul(b)));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn bareiss_matches_plain_rank_on_rectangular_input() {
        let m = mat(&[&["0", "0", "1"], &["0", "0", "2"], &["0", "t", "1"], &["1/t", "0", "0"]]);
        assert_eq!(rank(&m, 3), 3);
        assert_eq!(echelon(&m, 3).pivots, vec![0, 1, 2]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&["t", "1", "0"], &["0", "t^2", "1/(t+1)"], &["1", "0", "t^3"]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3));
        assert!(matches!(inverse(&mat(&[&["1", "2"], &["2", "4"]])), Err(Error::Singular)));
    }

    #[test]
    fn span_operations() {
        let a = mat(&[&["1", "0", "0"], &["0", "1", "0"]]);
        let b = mat(&[&["0", "1", "1"], &["0", "0", "1"]]);
        let i = intersect(&a, &b, 3);
        assert_eq!(i.len(), 1);
        assert!(in_span(&i, &[rf("0"), rf("5"), rf("0")]));
        assert!(same_span(&a, &mat(&[&["1", "1", "0"], &["1", "-1", "0"]]), 3));
        assert_eq!(independent_subset(&mat(&[&["1", "0"], &["2", "0"], &["0", "1"]]), 2), vec![0, 2]);
    }

    #[test]
    fn complex_inverse_handles_badly_scaled_rows() {
        let p = 500;
        let tiny = BigFloat::from_rational(&crate::arith::gauss::rat(1, 1), p).mul_pow2(-80);
        let m = vec![
            vec![Complex::real(tiny.clone()), Complex::zero()],
            vec![Complex::real(BigFloat::from_int(1)), Complex::real(tiny.mul(&tiny, p))],
        ];
        let inv = inverse_complex(&m, p, 120).unwrap();
        let prod = Complex::real(tiny).mul(&inv[0][0], p);
        assert!(prod.sub(&Complex::real(BigFloat::from_int(1)), p).abs(p).below_decimal(100.0));
        let one = Complex::real(BigFloat::from_int(1));
        let sing = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
        assert!(matches!(inverse_complex(&sing, p, 120), Err(Error::Singular)));
    }
}
