use super::Ring;

/// Square matrix over a single ring, addressed with 1-based `(i, j)`.
///
/// The ring identity is stored alongside the entries so that empty minors
/// (size 0, determinant 1) stay well-defined for rings whose neutral elements
/// depend on runtime parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    n: usize,
    one: R,
    entries: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    /// Builds an `n x n` matrix from `f(i, j)`, `1 <= i, j <= n`.
    pub fn from_fn(n: usize, one: R, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        RingMatrix { n, one, entries }
    }

    /// Builds from rows; panics if the rows are ragged or empty.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "use from_fn for empty matrices");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let one = rows[0][0].one_like();
        RingMatrix { n, one, entries: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> &R {
        &self.one
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i},{j}) out of range");
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// Submatrix with the listed (1-based) rows and columns removed.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (1..=self.n).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (1..=self.n).filter(|j| !cols.contains(j)).collect();
        assert_eq!(keep_r.len(), keep_c.len(), "minor must stay square");
        RingMatrix::from_fn(keep_r.len(), self.one.clone(), |i, j| self.get(keep_r[i - 1], keep_c[j - 1]).clone())
    }

    pub fn map<S: Ring>(&self, one: S, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { n: self.n, one, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        RingMatrix::from_fn(self.n, self.one.clone(), |i, j| self.get(j, i).clone())
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<R>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(n);
        let mut it = self.entries.into_iter();
        for _ in 0..n {
            rows.push(it.by_ref().take(n).collect());
        }
        rows
    }
}
