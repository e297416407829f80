//! Sparse exact linear algebra over a [`Field`]: incremental row echelon
//! forms that remember how each row was built from the inserted vectors.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// `acc += c * v`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Scalar, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let t = c * x;
        match acc.get_mut(k) {
            Some(y) => {
                let s = &*y + &t;
                if s.is_zero() {
                    acc.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                acc.insert(k.clone(), t);
            }
        }
    }
}

struct Row<K> {
    vec: SparseVec<K>,
    // the row as a combination of inserted vectors, by insertion tag
    combo: SparseVec<usize>,
}

/// Echelon basis of the span of the inserted vectors. Each row is normalized
/// so its pivot (largest key) has coefficient one.
pub struct Echelon<K> {
    field: Field,
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows; returns the remainder and the combination
    /// of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used: SparseVec<usize> = BTreeMap::new();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(&r) = self.pivots.get(&key) {
                let c = v[&key].clone();
                let row = &self.rows[r];
                axpy(&mut v, &-&c, &row.vec);
                axpy(&mut used, &c, &row.combo);
            }
            bound = Some(key);
        }
        (v, used)
    }

    /// Inserts `v` with the given tag. Returns `None` when `v` was independent,
    /// otherwise the combination expressing `v` in terms of earlier tags.
    pub fn insert(&mut self, v: SparseVec<K>, tag: usize) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(v);
        if rem.is_empty() {
            return Some(used);
        }
        let (pivot, lead) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = lead.inverse().expect("nonzero pivot");
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(tag, self.field.one());
        axpy(&mut combo, &-self.field.one(), &used);
        let scale = |m: SparseVec<usize>| m.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        let vec = rem.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row {
            vec,
            combo: scale(combo),
        });
        None
    }

    /// Coefficients `c_tag` with `sum c_tag * v_tag = target`, if solvable.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(target.clone());
        rem.is_empty().then_some(used)
    }
}

/// A basis of the kernel of the linear map sending basis vector `i` to
/// `columns[i]`, each kernel vector given by its coordinates.
pub fn kernel<K: Ord + Clone>(field: Field, columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new(field);
    let mut out = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        if let Some(combo) = ech.insert(col.clone(), i) {
            let mut k: SparseVec<usize> = BTreeMap::new();
            k.insert(i, field.one());
            axpy(&mut k, &-field.one(), &combo);
            out.push(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, field.from_i64(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn solve_recovers_combination() {
        let f = Field::Rational;
        let cols = [v(f, &[(0, 1), (1, 1)]), v(f, &[(1, 1), (2, 1)]), v(f, &[(0, 1), (2, -1)])];
        let mut e = Echelon::new(f);
        for (i, c) in cols.iter().enumerate() {
            e.insert(c.clone(), i);
        }
        assert_eq!(e.rank(), 2);
        let target = v(f, &[(0, 2), (1, 3), (2, 1)]);
        let sol = e.solve(&target).unwrap();
        let mut acc = BTreeMap::new();
        for (i, c) in &sol {
            axpy(&mut acc, c, &cols[*i]);
        }
        assert_eq!(acc, target);
        assert!(e.solve(&v(f, &[(2, 1)])).is_none());
    }

    #[test]
    fn kernel_over_prime_field() {
        let f = Field::Prime(3);
        // columns 2*c0 = c1 over F_3
        let cols = [v(f, &[(0, 1), (1, 2)]), v(f, &[(0, 2), (1, 1)])];
        let k = kernel(f, &cols);
        assert_eq!(k.len(), 1);
        let mut acc = BTreeMap::new();
        for (i, c) in &k[0] {
            axpy(&mut acc, c, &cols[*i]);
        }
        assert!(acc.is_empty());
    }
}
