use num_traits::{One, Zero};

use super::{GeomError, Rat};

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rat::zero(), |acc, v| acc + v)
}

/// Reduced row echelon form. Returns the reduced nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a rational matrix with `ncols` columns.
pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (m, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solution set of an affine system: `point + span(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub point: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

impl AffineSolution {
    /// Dimension of the solution space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `form · x = rhs` for every `(form, rhs)` in `equalities`, in dimension `dim`.
///
/// The particular point sets every free variable to zero.
pub fn solve_affine(equalities: &[(Vec<Rat>, Rat)], dim: usize) -> Result<AffineSolution, GeomError> {
    let mut aug = Vec::with_capacity(equalities.len());
    for (form, rhs) in equalities {
        if form.len() != dim {
            return Err(GeomError::DimensionMismatch {
                expected: dim,
                found: form.len(),
            });
        }
        let mut row = form.clone();
        row.push(rhs.clone());
        aug.push(row);
    }
    let (m, pivots) = rref(&aug, dim + 1);
    if pivots.last() == Some(&dim) {
        return Err(GeomError::InconsistentSystem);
    }
    let mut point = vec![Rat::zero(); dim];
    for (row, &p) in m.iter().zip(&pivots) {
        point[p] = row[dim].clone();
    }
    let forms: Vec<Vec<Rat>> = equalities.iter().map(|(f, _)| f.clone()).collect();
    Ok(AffineSolution {
        point,
        basis: nullspace(&forms, dim),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::int;

    #[test]
    fn single_equation_in_the_plane() {
        let s = solve_affine(&[(vec![int(1), int(1)], int(1))], 2).unwrap();
        assert_eq!(s.point, vec![int(1), int(0)]);
        assert_eq!(s.basis, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn empty_system_gives_standard_basis() {
        let s = solve_affine(&[], 3).unwrap();
        assert_eq!(s.point, vec![int(0); 3]);
        assert_eq!(s.dim(), 3);
        for (i, b) in s.basis.iter().enumerate() {
            for (j, x) in b.iter().enumerate() {
                assert_eq!(*x, int((i == j) as i64));
            }
        }
    }

    #[test]
    fn inconsistent_system_is_reported() {
        let eqs = [(vec![int(1), int(1)], int(1)), (vec![int(2), int(2)], int(3))];
        assert_eq!(solve_affine(&eqs, 2), Err(GeomError::InconsistentSystem));
    }

    #[test]
    fn abhy_square_has_one_dimensional_solutions() {
        // X02, X13, X03 with X02 + X13 - X03 = 1 and the X03 boundary entry pinned to 0
        // together with the coordinate sum: a single free direction remains.
        let eqs = [
            (vec![int(1), int(1), int(-1)], int(1)),
            (vec![int(0), int(0), int(1)], int(0)),
        ];
        assert_eq!(solve_affine(&eqs, 3).unwrap().dim(), 1);
    }

    #[test]
    fn rank_and_nullspace_are_complementary() {
        let rows = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&rows, 3), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }
}
