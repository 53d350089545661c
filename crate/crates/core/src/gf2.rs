//! Dense bit matrices over GF(2), packed 64 columns per limb.
//!
//! Sized for sign-pattern tables (at most a few hundred rows and columns);
//! rank is plain Gaussian elimination.

/// Row-major bit matrix. `rows[r]` holds the bits of row `r`, column `c`
/// in limb `c / 64` at bit `c % 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let limbs = ncols.div_ceil(64);
        BitMatrix {
            nrows,
            ncols,
            rows: vec![vec![0; limbs]; nrows],
        }
    }

    /// Builds from 0/1 entries, one inner slice per row. All rows must have
    /// equal length.
    pub fn from_bits(bits: &[Vec<u8>]) -> Self {
        let nrows = bits.len();
        let ncols = bits.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(nrows, ncols);
        for (r, row) in bits.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b != 0);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.nrows && c < self.ncols);
        let limb = &mut self.rows[r][c / 64];
        if bit {
            *limb |= 1u64 << (c % 64);
        } else {
            *limb &= !(1u64 << (c % 64));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.nrows && c < self.ncols);
        (self.rows[r][c / 64] >> (c % 64)) & 1 == 1
    }

    /// Rank over GF(2) by forward elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.ncols {
            let limb = c / 64;
            let bit = 1u64 << (c % 64);
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][limb] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[limb] & bit != 0 {
                    for (dst, src) in row.iter_mut().zip(&pivot_row) {
                        *dst ^= src;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}
