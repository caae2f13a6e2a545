//! Bit-packed elimination over F_2. Rows are stored as `u64` words and
//! reduced with XOR; the pivoting rule is the same as the generic path.

use super::matrix::{Matrix, Rref};

struct PackedRows {
    words: usize,
    bits: Vec<u64>,
}

impl PackedRows {
    fn from_matrix(m: &Matrix) -> Self {
        let words = m.cols().div_ceil(64);
        let mut bits = vec![0u64; m.rows() * words];
        for i in 0..m.rows() {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != 0 {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows { words, bits }
    }

    #[inline]
    fn bit(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.bits.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    fn xor_into(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let s = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] ^= s;
        }
    }
}

pub(super) fn rref(m: &Matrix) -> Rref {
    debug_assert_eq!(m.p().get(), 2);
    let (rows, cols) = (m.rows(), m.cols());
    let mut packed = PackedRows::from_matrix(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(src) = (row..rows).find(|&i| packed.bit(i, col)) else {
            continue;
        };
        packed.swap(row, src);
        for i in 0..rows {
            if i != row && packed.bit(i, col) {
                packed.xor_into(i, row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut out = Matrix::zeros(m.p(), rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if packed.bit(i, j) {
                out.set(i, j, 1);
            }
        }
    }
    Rref { matrix: out, pivots }
}
