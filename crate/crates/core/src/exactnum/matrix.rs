use super::{FieldElement, Rational, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Matrix over a single number field.
pub type ExactMatrix = Matrix<FieldElement>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Fraction-free (Bareiss) determinant with row pivoting. Every division
    /// is exact, so this works over any integral domain with `exact_div`.
    pub fn determinant(&self) -> Result<R> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut a: Vec<Vec<R>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = R::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(R::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num.exact_div(&prev);
                }
                a[i][k] = R::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }
}

pub fn det_exact(m: &ExactMatrix) -> Result<FieldElement> {
    m.determinant().map(FieldElement::simplify)
}

/// Basis of the right nullspace of a rational matrix given by rows, each of
/// length `ncols`. Basis vectors are scaled to primitive integer vectors
/// whose last nonzero entry is positive.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::from_int(0); ncols];
            v[fc] = Rational::from_int(1);
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[pi][fc];
            }
            primitive_vector(v)
        })
        .collect()
}

fn primitive_vector(v: Vec<Rational>) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let l = Rational::lcm_denoms(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
    if let Some(last) = ints.iter().rev().find(|x| x != &&BigInt::from(0)) {
        if last < &BigInt::from(0) {
            g = -g;
        }
    }
    ints.into_iter().map(|x| Rational::from_int(x / &g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, NumberField, UniPoly};
    use proptest::prelude::*;

    fn cofactor_det<R: Ring>(m: &Matrix<R>) -> R {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j).clone() * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| FieldElement::int(v)).collect()).collect())
    }

    #[test]
    fn identity_and_repeated_rows() {
        assert_eq!(det_exact(&ints(&[&[1, 0], &[0, 1]])).unwrap(), FieldElement::int(1));
        assert_eq!(det_exact(&ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).unwrap(), FieldElement::int(0));
    }

    #[test]
    fn generic_node_matrix_at_beta_zero() {
        // off-diagonal 6, diagonal (0,0,0,0,12,12,12,12): 6^8 times the unit-determinant pattern
        let m = Matrix::from_fn(8, 8, |i, j| {
            FieldElement::int(if i != j { 6 } else if i < 4 { 0 } else { 12 })
        });
        assert_eq!(det_exact(&m).unwrap(), FieldElement::int(1_679_616));
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m = ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(det_exact(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn non_square_is_an_error() {
        let m = ints(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(det_exact(&m).is_err());
    }

    #[test]
    fn polynomial_entries() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = UniPoly::x();
        let one = UniPoly::constant(q(1, 1));
        let m = Matrix::from_rows(vec![vec![x.clone(), one.clone()], vec![one, x]]);
        assert_eq!(m.determinant().unwrap(), UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn nullspace_of_constraint_rows() {
        // 4a + 4b + c + d = 0, a + b + c + d = 0
        let rows = vec![
            vec![q(4, 1), q(4, 1), q(1, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1), q(1, 1), q(1, 1)],
        ];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let dot = r.iter().zip(v).fold(q(0, 1), |acc, (a, b)| acc + a * b);
                assert_eq!(dot, q(0, 1));
            }
        }
    }

    fn field_elem(k: &NumberField, a: i64, b: i64) -> FieldElement {
        FieldElement::int(a) + FieldElement::int(b) * k.generator()
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            d in prop::sample::select(vec![-7i64, -3, -1, 2, 5]),
            n in 1usize..=4,
            entries in prop::collection::vec((-5i64..=5, -5i64..=5), 16),
        ) {
            let k = NumberField::new(&UniPoly::from_ints(&[-d, 0, 1]), "K").unwrap();
            let m = Matrix::from_fn(n, n, |i, j| {
                let (a, b) = entries[i * 4 + j];
                field_elem(&k, a, b)
            });
            prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn determinant_is_multiplicative(
            a in prop::collection::vec(-6i64..=6, 9),
            b in prop::collection::vec(-6i64..=6, 9),
        ) {
            let ma = Matrix::from_fn(3, 3, |i, j| FieldElement::int(a[i * 3 + j]));
            let mb = Matrix::from_fn(3, 3, |i, j| FieldElement::int(b[i * 3 + j]));
            let lhs = det_exact(&ma.mul(&mb)).unwrap();
            let rhs = det_exact(&ma).unwrap() * det_exact(&mb).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
