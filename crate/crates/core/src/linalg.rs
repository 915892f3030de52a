//! Dense exact linear algebra over Q(z).

use crate::cyclo::CycRat;

pub type Vector = Vec<CycRat>;

/// Row echelon form kept in reduced shape, built one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ell: u32,
    ncols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ell: u32, ncols: usize) -> Echelon {
        Echelon { ell, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces v against the stored rows; the result has zeros at all pivots.
    pub fn reduce(&self, v: &[CycRat]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycRat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts v; returns false when v was already in the span.
    pub fn insert(&mut self, v: &[CycRat]) -> bool {
        let mut r = self.reduce(v);
        let p = match r.iter().position(|x| !x.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let inv = r[p].inverse().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // keep reduced form: clear column p in older rows
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of v in terms of the stored rows, when v lies in the span.
    pub fn coordinates(&self, v: &[CycRat]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn zero_vector(&self) -> Vector {
        vec![CycRat::zero(self.ell); self.ncols]
    }
}

pub fn zero_vector(ell: u32, n: usize) -> Vector {
    vec![CycRat::zero(ell); n]
}

pub fn unit_vector(ell: u32, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(ell, n);
    v[i] = CycRat::one(ell);
    v
}

pub fn rank(ell: u32, ncols: usize, rows: &[Vector]) -> usize {
    let mut e = Echelon::new(ell, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of { x : sum_j eqs[i][j] x_j = 0 for all i }.
pub fn null_space(ell: u32, ncols: usize, eqs: &[Vector]) -> Vec<Vector> {
    let mut e = Echelon::new(ell, ncols);
    for r in eqs {
        e.insert(r);
        if e.rank() == ncols {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = zero_vector(ell, ncols);
        x[f] = CycRat::one(ell);
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                x[p] = -&row[f];
            }
        }
        out.push(x);
    }
    out
}

/// Null space of the linear map whose columns are given, i.e. dependencies among `cols`.
pub fn dependencies(ell: u32, cols: &[Vector]) -> Vec<Vector> {
    if cols.is_empty() {
        return Vec::new();
    }
    let m = cols[0].len();
    let n = cols.len();
    let eqs: Vec<Vector> = (0..m).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    null_space(ell, n, &eqs)
}

/// Intersection of two subspaces given by spanning rows.
pub fn intersect(ell: u32, n: usize, u: &[Vector], v: &[Vector]) -> Vec<Vector> {
    let mut cols: Vec<Vector> = u.to_vec();
    cols.extend(v.iter().map(|x| x.iter().map(|c| -c).collect::<Vector>()));
    let deps = dependencies(ell, &cols);
    let mut e = Echelon::new(ell, n);
    for d in deps {
        let mut x = zero_vector(ell, n);
        for (coef, row) in d.iter().zip(u) {
            if !coef.is_zero() {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi = &*xi + &(coef * ri);
                }
            }
        }
        e.insert(&x);
    }
    e.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(ell: u32, v: &[i64]) -> Vector {
        v.iter().map(|&x| CycRat::from_int(ell, x)).collect()
    }

    #[test]
    fn rank_and_null_space() {
        let rows = vec![r(1, &[1, 2, 3]), r(1, &[2, 4, 6]), r(1, &[0, 1, 1])];
        assert_eq!(rank(1, 3, &rows), 2);
        let ns = null_space(1, 3, &rows);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = row.iter().zip(&ns[0]).fold(CycRat::zero(1), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn membership_over_cyclotomic_field() {
        let q = CycRat::q_power(5, 1);
        let one = CycRat::one(5);
        let mut e = Echelon::new(5, 2);
        e.insert(&[one.clone(), q.clone()]);
        assert!(e.contains(&[q.clone(), &q * &q]));
        assert!(!e.contains(&[one.clone(), one.clone()]));
        assert_eq!(e.coordinates(&[q.clone(), &q * &q]).unwrap(), vec![q]);
    }

    #[test]
    fn intersection_of_planes() {
        let u = vec![r(1, &[1, 0, 0]), r(1, &[0, 1, 0])];
        let v = vec![r(1, &[0, 1, 0]), r(1, &[0, 0, 1])];
        let i = intersect(1, 3, &u, &v);
        assert_eq!(i, vec![r(1, &[0, 1, 0])]);
    }
}
