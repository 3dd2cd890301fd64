//! Dense bit-packed matrices over `GF(2)` with rank computation.

/// A matrix over `GF(2)`, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Mat2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        Mat2 {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / 64;
        if value {
            self.bits[idx] |= 1 << (c % 64);
        } else {
            self.bits[idx] &= !(1 << (c % 64));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = (src * self.words_per_row, dst * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.bits[a + k];
            self.bits[b + k] ^= v;
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for k in 0..self.words_per_row {
            self.bits
                .swap(r1 * self.words_per_row + k, r2 * self.words_per_row + k);
        }
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col));
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            for r in (rank + 1)..m.rows {
                if m.get(r, col) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Matrix product over `GF(2)`; `self.cols` must equal `rhs.rows`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Mat2::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.words_per_row, rhs.row(k));
                    for (w, &s) in src.iter().enumerate() {
                        out.bits[dst + w] ^= s;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> Mat2 {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mat2::zeros(rows.len(), cols.max(1));
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        assert_eq!(from_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(from_rows(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(from_rows(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(
            from_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]]).rank(),
            2,
            "third row is the sum of the first two"
        );
    }

    #[test]
    fn rank_across_word_boundary() {
        // identity block at columns 60..70 spans two words per row
        let mut m = Mat2::zeros(10, 70);
        for i in 0..10 {
            m.set(i, 60 + i, true);
        }
        assert_eq!(m.rank(), 10);
    }

    #[test]
    fn product() {
        let a = from_rows(&[&[1, 1], &[0, 1]]);
        let b = from_rows(&[&[1, 0], &[1, 1]]);
        let ab = a.mul(&b);
        assert_eq!(ab, from_rows(&[&[0, 1], &[1, 1]]));
        assert!(!ab.is_zero());
        let zero = from_rows(&[&[0, 0], &[0, 0]]);
        assert!(a.mul(&zero).is_zero());
    }
}
