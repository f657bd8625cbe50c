//! A batch of pure states over named registers, one column per input basis
//! vector, so a whole circuit is pushed through in a single pass and the
//! surviving columns are the Kraus operator of a branch.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::ComplexMatrix;
use crate::C64;

#[derive(Clone, Debug)]
pub(crate) struct Batch {
    dims: Vec<usize>,
    cols: usize,
    data: Vec<C64>,
}

impl Batch {
    pub(crate) fn zeros(dims: Vec<usize>, cols: usize) -> Self {
        let rows: usize = dims.iter().product();
        Self { dims, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for r in (0..self.dims.len().saturating_sub(1)).rev() {
            s[r] = s[r + 1] * self.dims[r + 1];
        }
        s
    }

    fn rows(&self) -> usize {
        self.dims.iter().product()
    }

    pub(crate) fn set(&mut self, digits: &[usize], col: usize, value: C64) {
        let row: usize = digits.iter().zip(self.strides()).map(|(d, s)| d * s).sum();
        self.data[row * self.cols + col] = value;
    }

    /// Applies `m` to the registers `regs` (first listed is the outermost
    /// index of `m`), leaving the others untouched.
    pub(crate) fn apply(&mut self, regs: &[usize], m: &ComplexMatrix) {
        let strides = self.strides();
        let sub: usize = regs.iter().map(|&r| self.dims[r]).product();
        debug_assert_eq!(m.rows(), sub);
        let offsets: Vec<usize> = (0..sub)
            .map(|s| {
                let mut rem = s;
                let mut off = 0;
                for &r in regs.iter().rev() {
                    off += (rem % self.dims[r]) * strides[r];
                    rem /= self.dims[r];
                }
                off
            })
            .collect();
        let mut buf = vec![C64::new(0.0, 0.0); sub];
        for base in 0..self.rows() {
            if regs.iter().any(|&r| (base / strides[r]) % self.dims[r] != 0) {
                continue;
            }
            for col in 0..self.cols {
                for (s, off) in offsets.iter().enumerate() {
                    buf[s] = self.data[(base + off) * self.cols + col];
                }
                if buf.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                    continue;
                }
                for (i, off) in offsets.iter().enumerate() {
                    let row = m.row(i);
                    let mut acc = C64::new(0.0, 0.0);
                    for (a, b) in row.iter().zip(&buf) {
                        acc += a * b;
                    }
                    self.data[(base + off) * self.cols + col] = acc;
                }
            }
        }
    }

    /// Keeps the component with register `reg` equal to `value` and removes
    /// that register (an unnormalized projective measurement outcome).
    pub(crate) fn project(&self, reg: usize, value: usize) -> Batch {
        let strides = self.strides();
        let mut dims = self.dims.clone();
        dims.remove(reg);
        let mut data = Vec::with_capacity(self.data.len() / self.dims[reg]);
        for row in 0..self.rows() {
            if (row / strides[reg]) % self.dims[reg] == value {
                data.extend_from_slice(&self.data[row * self.cols..(row + 1) * self.cols]);
            }
        }
        Batch { dims, cols: self.cols, data }
    }

    pub(crate) fn into_matrix(self) -> ComplexMatrix {
        let rows = self.rows();
        ComplexMatrix::from_vec(rows, self.cols, self.data).expect("batch shape is consistent")
    }
}
