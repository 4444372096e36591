//! Square boolean matrices over the `(or, and)` semiring, stored as row bitsets.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl PatternMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = n.div_ceil(WORD).max(1);
        Self {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_ones(n: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(n);
        for (i, j) in ones {
            m.set(i, j, true);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of range");
        (self.bits[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "index ({i},{j}) out of range");
        let word = &mut self.bits[i * self.stride + j / WORD];
        if value {
            *word |= 1 << (j % WORD);
        } else {
            *word &= !(1 << (j % WORD));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of rows holding at least one `1`.
    pub fn nonzero_rows(&self) -> usize {
        (0..self.n).filter(|&i| !self.row_is_zero(i)).count()
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + b)
            })
        })
    }

    /// All set positions in row-major order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.row_ones(i).map(move |j| (i, j)))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_ones(self.n, self.ones().into_iter().map(|(i, j)| (j, i)))
    }

    /// Boolean product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.n);
        self.mul_into(rhs, &mut out);
        out
    }

    /// Writes `self * rhs` into `out`, reusing its storage.
    pub fn mul_into(&self, rhs: &Self, out: &mut Self) {
        assert_eq!(self.n, rhs.n, "pattern matrix size mismatch");
        if out.n != self.n {
            *out = Self::zeros(self.n);
        }
        let s = self.stride;
        if s == 1 {
            for i in 0..self.n {
                let mut acc = 0u64;
                let mut row = self.bits[i];
                while row != 0 {
                    let k = row.trailing_zeros() as usize;
                    row &= row - 1;
                    acc |= rhs.bits[k];
                }
                out.bits[i] = acc;
            }
            return;
        }
        out.bits.fill(0);
        for i in 0..self.n {
            for k in self.row_ones(i) {
                for w in 0..s {
                    out.bits[i * s + w] |= rhs.bits[k * s + w];
                }
            }
        }
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.bits
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PatternMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
