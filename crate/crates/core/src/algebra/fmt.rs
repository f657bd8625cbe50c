//! Text rendering for reports: complex numbers as `a+bi` with 12 significant
//! digits.

use alloc::format;
use alloc::string::String;
use core::fmt;

use super::ComplexMatrix;
use crate::C64;

fn real(x: f64) -> String {
    if x == 0.0 {
        return String::from("0");
    }
    let s = format!("{:.*e}", 11, x);
    // normalize through a parse so trailing zeros drop out
    let v: f64 = s.parse().unwrap_or(x);
    format!("{v}")
}

/// `a+bi` / `a-bi`, each part rounded to 12 significant digits.
pub fn complex(z: C64) -> String {
    let re = real(z.re);
    let im = real(z.im.abs());
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// Display adapter printing one row per line, entries separated by spaces.
pub struct MatrixDisplay<'a>(pub &'a ComplexMatrix);

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&complex(m[(r, c)]))?;
            }
            if r + 1 < m.rows() {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_parts() {
        assert_eq!(complex(C64::new(1.0, 0.0)), "1+0i");
        assert_eq!(complex(C64::new(0.5, -2.0)), "0.5-2i");
        assert_eq!(complex(C64::new(1.0 / 3.0, 0.0)), "0.333333333333+0i");
        assert_eq!(complex(C64::new(-1e-20, 0.0)), "-0.00000000000000000001+0i");
    }

    #[test]
    fn matrix_rows() {
        let m = ComplexMatrix::identity(2);
        assert_eq!(format!("{}", MatrixDisplay(&m)), "1+0i 0+0i\n0+0i 1+0i");
    }
}
