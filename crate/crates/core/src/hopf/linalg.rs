//! Exact sparse Gaussian elimination over Q(ζ_l).

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use super::Scalar;

type SparseVec = BTreeMap<u32, Scalar>;

struct Row {
    /// entries[pivot] = 1 and no entry left of the pivot
    entries: SparseVec,
    /// this row as a combination of inserted vectors, by tag
    comb: SparseVec,
}

/// Incrementally built row-echelon form.
pub struct Echelon {
    order: u32,
    rows: Vec<Row>,
    pivots: FxHashMap<u32, usize>,
}

fn axpy(dst: &mut SparseVec, c: &Scalar, src: &SparseVec) {
    for (k, v) in src {
        let t = c * v;
        match dst.get_mut(k) {
            Some(d) => {
                *d += &t;
                if d.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    dst.insert(*k, t);
                }
            }
        }
    }
}

impl Echelon {
    pub fn new(order: u32) -> Self {
        Echelon {
            order,
            rows: Vec::new(),
            pivots: FxHashMap::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.pivots.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Reduces v against the current rows; returns the residual and the
    /// combination of rows that was subtracted (row index → coefficient).
    fn reduce(&self, mut v: SparseVec, mut comb: SparseVec, track: bool) -> (SparseVec, SparseVec) {
        let mut from = 0u32;
        loop {
            let next = v
                .range(from..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            let neg = -&c;
            axpy(&mut v, &neg, &row.entries);
            if track {
                axpy(&mut comb, &neg, &row.comb);
            }
            from = col + 1;
        }
        (v, comb)
    }

    fn add_row(&mut self, v: SparseVec, comb: SparseVec) {
        let (&pivot, pc) = v.iter().next().expect("nonzero row");
        let inv = pc.inverse().expect("nonzero pivot");
        let entries = v.iter().map(|(k, c)| (*k, c * &inv)).collect();
        let comb = comb.iter().map(|(k, c)| (*k, c * &inv)).collect();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { entries, comb });
    }

    /// Inserts a vector; returns true if it raised the rank.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (u32, Scalar)>) -> bool {
        let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let (r, _) = self.reduce(v, SparseVec::new(), false);
        if r.is_empty() {
            false
        } else {
            self.add_row(r, SparseVec::new());
            true
        }
    }

    /// Inserts a vector labelled `tag`. If it is dependent on earlier tagged
    /// vectors, returns the relation Σ c_t v_t = 0 with c_tag = 1 (and does
    /// not insert it).
    pub fn insert_tracked(
        &mut self,
        v: impl IntoIterator<Item = (u32, Scalar)>,
        tag: usize,
    ) -> Option<Vec<(usize, Scalar)>> {
        let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut comb = SparseVec::new();
        comb.insert(tag as u32, Scalar::one(self.order));
        let (r, comb) = self.reduce(v, comb, true);
        if r.is_empty() {
            Some(comb.into_iter().map(|(k, c)| (k as usize, c)).collect())
        } else {
            self.add_row(r, comb);
            None
        }
    }

    /// Writes v as a combination of the tagged inserted vectors, if possible.
    pub fn express(
        &self,
        v: impl IntoIterator<Item = (u32, Scalar)>,
    ) -> Option<Vec<(usize, Scalar)>> {
        let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let (r, comb) = self.reduce(v, SparseVec::new(), true);
        if r.is_empty() {
            Some(comb.into_iter().map(|(k, c)| (k as usize, -c)).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (u32, Scalar)>) -> bool {
        let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.reduce(v, SparseVec::new(), false).0.is_empty()
    }

    /// Basis of {x : row·x = 0 for all rows}, x indexed 0..n.
    pub fn nullspace(&self, n: usize) -> Vec<Vec<Scalar>> {
        let zero = Scalar::zero(self.order);
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(*self.rows[r].entries.keys().next().unwrap()));
        let mut out = Vec::new();
        for free in 0..n as u32 {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut x = vec![zero.clone(); n];
            x[free as usize] = Scalar::one(self.order);
            for &r in &order {
                let row = &self.rows[r];
                let mut it = row.entries.iter();
                let (&p, _) = it.next().unwrap();
                let mut s = zero.clone();
                for (k, c) in it {
                    let xv = &x[*k as usize];
                    if !xv.is_zero() {
                        s += &(c * xv);
                    }
                }
                x[p as usize] = -s;
            }
            out.push(x);
        }
        out
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank<I, R>(order: u32, rows: I) -> usize
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (u32, Scalar)>,
{
    let mut e = Echelon::new(order);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Nullspace of the system given by sparse equation rows in n unknowns.
pub fn nullspace<I, R>(order: u32, n: usize, rows: I) -> Vec<Vec<Scalar>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = (u32, Scalar)>,
{
    let mut e = Echelon::new(order);
    for r in rows {
        e.insert(r);
    }
    e.nullspace(n)
}

/// Inverse of the square matrix with the given sparse columns, as columns.
pub fn invert_columns(
    order: u32,
    dim: usize,
    cols: &[Vec<(u32, Scalar)>],
) -> Option<Vec<Vec<(u32, Scalar)>>> {
    let mut e = Echelon::new(order);
    for (i, c) in cols.iter().enumerate() {
        if e.insert_tracked(c.iter().cloned(), i).is_some() {
            return None;
        }
    }
    let mut out = Vec::with_capacity(dim);
    for k in 0..dim {
        let comb = e.express([(k as u32, Scalar::one(order))])?;
        let mut col: Vec<(u32, Scalar)> = comb.into_iter().map(|(t, c)| (t as u32, c)).collect();
        col.sort_unstable_by_key(|t| t.0);
        out.push(col);
    }
    Some(out)
}
