use super::monomial::{binomial, monomials};
use crate::error::{Error, Result};
use crate::linalg::matrix_det;
use crate::linalg::Matrix;

/// Induced map on degree-`r` forms of a linear map `f: A → V`.
///
/// `f` has one row per coordinate of `V` and one column per coordinate of
/// `A`. The result maps `Λʳ(V*) → Λʳ(A*)` in the colex bases: the entry at
/// (A-monomial J, V-monomial I) is the r×r minor of `f` on rows I, columns J.
pub fn pullback_matrix(f: &Matrix, r: i64) -> Result<Matrix> {
    if r < 0 {
        return Err(Error::DegreeOutOfRange {
            degree: r,
            min: 0,
            max: f.rows() as i64,
        });
    }
    let r = r as usize;
    let (v_dim, a_dim) = (f.rows(), f.cols());
    let p = f.p();
    let row_sets: Vec<Vec<usize>> = monomials(v_dim, r).map(|m| m.indices()).collect();
    let col_sets: Vec<Vec<usize>> = monomials(a_dim, r).map(|m| m.indices()).collect();
    let mut out = Matrix::zeros(p, binomial(a_dim, r), binomial(v_dim, r));
    let mut scratch = vec![0u32; r * r];
    for (ci, cols) in col_sets.iter().enumerate() {
        for (ri, rows) in row_sets.iter().enumerate() {
            for (a, &i) in rows.iter().enumerate() {
                for (b, &j) in cols.iter().enumerate() {
                    scratch[a * r + b] = f.get(i, j);
                }
            }
            out.set(ci, ri, matrix_det(p, &mut scratch, r));
        }
    }
    Ok(out)
}

/// Colex coordinates of `b_1 ∧ … ∧ b_k` for the rows `b_i` of `rows`: the
/// k×k minors on every column subset.
pub fn wedge_of_rows(rows: &Matrix) -> Vec<u32> {
    let k = rows.rows();
    let p = rows.p();
    let mut scratch = vec![0u32; k * k];
    monomials(rows.cols(), k)
        .map(|mono| {
            for (b, j) in mono.indices().into_iter().enumerate() {
                for a in 0..k {
                    scratch[a * k + b] = rows.get(a, j);
                }
            }
            matrix_det(p, &mut scratch, k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{monomial::Monomial, Multivector};
    use crate::linalg::Prime;
    use proptest::prelude::*;

    fn f(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn identity_pulls_back_to_identity() {
        for r in 0..=4 {
            let id = Matrix::identity(f(3), 4);
            assert_eq!(pullback_matrix(&id, r).unwrap(), Matrix::identity(f(3), binomial(4, r as usize)));
        }
    }

    #[test]
    fn rank_deficient_maps_kill_high_degrees() {
        let g = Matrix::from_rows(f(5), &[[1, 2, 0], [2, 4, 0], [3, 2, 0], [0, 0, 0]]).unwrap();
        assert_eq!(g.rank(), 2);
        assert!(pullback_matrix(&g, 3).unwrap().is_zero());
        assert!(!pullback_matrix(&g, 2).unwrap().is_zero());
    }

    #[test]
    fn inclusion_of_x_axes() {
        // A = span(e_x1, e_x2, e_x3) inside F_2^6
        let p = f(2);
        let incl = Matrix::from_fn(p, 6, 3, |i, j| (i == j) as i64);
        let pb = pullback_matrix(&incl, 2).unwrap();
        let x1x2 = Multivector::monomial(p, 6, Monomial::from_indices(&[0, 1]).unwrap(), 1);
        let x1y1 = Multivector::monomial(p, 6, Monomial::from_indices(&[0, 3]).unwrap(), 1);
        let on_a = pb.mul_vec(&x1x2.coords(2)).unwrap();
        assert_eq!(on_a, Multivector::monomial(p, 3, Monomial::from_indices(&[0, 1]).unwrap(), 1).coords(2));
        assert!(pb.mul_vec(&x1y1.coords(2)).unwrap().iter().all(|&c| c == 0));
    }

    #[test]
    fn negative_degree_is_rejected() {
        assert!(pullback_matrix(&Matrix::identity(f(2), 2), -1).is_err());
    }

    #[test]
    fn wedge_of_rows_matches_multivector_wedge() {
        let p = f(7);
        let rows = Matrix::from_rows(p, &[[1, 2, 0, 5], [0, 3, 1, 1], [4, 0, 6, 2]]).unwrap();
        let direct = (0..3)
            .map(|i| Multivector::from_vector(p, rows.row(i)))
            .reduce(|a, b| a.wedge(&b).unwrap())
            .unwrap();
        assert_eq!(wedge_of_rows(&rows), direct.coords(3));
    }

    fn mat(p: u64, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0i64..p as i64, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect();
            Matrix::from_rows_with_cols(Prime::new(p).unwrap(), c, &rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn contravariant_under_composition(fm in mat(3, 5, 4), gm in mat(3, 4, 3), r in 0i64..4) {
            let fg = fm.mul(&gm).unwrap();
            let lhs = pullback_matrix(&fg, r).unwrap();
            let rhs = pullback_matrix(&gm, r).unwrap().mul(&pullback_matrix(&fm, r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
