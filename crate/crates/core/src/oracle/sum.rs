use std::ops::AddAssign;

use crate::linalg::C64;

/// Compensated (Kahan-Babuska) summation of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: C64,
    carry: C64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}

impl KahanSum {
    pub fn add(&mut self, x: C64) {
        let (re, e_re) = two_sum(self.sum.re, x.re);
        let (im, e_im) = two_sum(self.sum.im, x.im);
        self.sum = C64::new(re, im);
        self.carry += C64::new(e_re, e_im);
    }

    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.carry += other.carry;
    }

    pub fn value(&self) -> C64 {
        self.sum + self.carry
    }

    /// `exp` of the compensated value, applying the carry to first order so
    /// that a large phase does not lose its low bits.
    pub fn exp(&self) -> C64 {
        self.sum.exp() * (C64::new(1.0, 0.0) + self.carry)
    }
}

impl AddAssign<C64> for KahanSum {
    fn add_assign(&mut self, x: C64) {
        self.add(x);
    }
}
