/// Mixed-radix indexing with the rightmost digit varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRadix {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl MixedRadix {
    /// Returns `None` when the product of sizes overflows `usize`.
    pub fn new(sizes: &[usize]) -> Option<Self> {
        let mut strides = vec![0; sizes.len()];
        let mut total: usize = 1;
        for i in (0..sizes.len()).rev() {
            strides[i] = total;
            total = total.checked_mul(sizes[i])?;
        }
        Some(MixedRadix {
            sizes: sizes.to_vec(),
            strides,
            total,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn stride(&self, digit: usize) -> usize {
        self.strides[digit]
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn decode(&self, mut index: usize, digits: &mut [usize]) {
        for (i, d) in digits.iter_mut().enumerate() {
            *d = index / self.strides[i];
            index %= self.strides[i];
        }
    }

    /// Advance `digits` to the next tuple; returns false after the last one.
    pub fn increment(&self, digits: &mut [usize]) -> bool {
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < self.sizes[i] {
                return true;
            }
            digits[i] = 0;
        }
        false
    }
}
