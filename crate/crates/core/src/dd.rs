//! Double-double arithmetic (~31 significant digits).
//!
//! The Maclaurin evaluation of the Airy solutions cancels up to ~13 digits at
//! the switch radius, so the series is summed in double-double. The module
//! also derives Gamma(1/3) and Gamma(2/3) from a shifted Stirling series, so
//! the series constants Ai(0) and Ai'(0) are computed, not transcribed.
//!
//! The representation is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`
//! (Dekker/Kahan style; the algorithms follow the QD library of Hida, Li and
//! Bailey).

use num_complex::Complex64;

/// Unevaluated sum of two doubles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact quotient of two small integers, correctly rounded to dd.
    pub fn from_ratio(num: i64, den: i64) -> Dd {
        Dd::from_f64(num as f64).div(Dd::from_f64(den as f64))
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, other);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * other);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn div_f64(self, other: f64) -> Dd {
        self.div(Dd::from_f64(other))
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn sqrt(self) -> Dd {
        // One Newton correction on the f64 seed doubles the precision.
        let x = self.hi.sqrt();
        if x == 0.0 {
            return Dd::ZERO;
        }
        let dx = Dd::from_f64(x);
        let err = self.sub(dx.mul(dx));
        dx.add(Dd::from_f64(err.hi / (2.0 * x)))
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// exp(self) for |self| < ~700, by integer reduction and a Taylor tail.
    pub fn exp(self) -> Dd {
        let n = self.hi.round();
        let r = self.sub(Dd::from_f64(n));
        // e^r, |r| <= 0.5 + tiny: plain Taylor reaches 1e-34 in ~26 terms.
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        for k in 1..40 {
            term = term.mul(r).div_f64(k as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        e_const().powi(n as i32).mul(sum)
    }

    /// Natural log by Newton iteration on exp, seeded with the f64 log.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive dd");
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            // y <- y + x*exp(-y) - 1
            y = y.add(self.mul(y.neg().exp())).sub(Dd::ONE);
        }
        y
    }
}

/// e, summed once from the exponential series.
fn e_const() -> Dd {
    static CELL: std::sync::OnceLock<Dd> = std::sync::OnceLock::new();
    *CELL.get_or_init(|| {
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        for k in 1..40 {
            term = term.div_f64(k as f64);
            sum = sum.add(term);
        }
        sum
    })
}

/// pi from Machin's formula 16 atan(1/5) - 4 atan(1/239).
pub(crate) fn pi_dd() -> Dd {
    static CELL: std::sync::OnceLock<Dd> = std::sync::OnceLock::new();
    fn atan_recip(q: i64) -> Dd {
        let x = Dd::from_ratio(1, q);
        let x2 = x.mul(x);
        let mut term = x;
        let mut sum = x;
        let mut k = 1i64;
        loop {
            term = term.mul(x2).neg();
            let add = term.div_f64((2 * k + 1) as f64);
            sum = sum.add(add);
            if add.hi.abs() < 1e-38 {
                return sum;
            }
            k += 1;
        }
    }
    *CELL.get_or_init(|| atan_recip(5).mul_f64(16.0).sub(atan_recip(239).mul_f64(4.0)))
}

/// Bernoulli numbers B_2..B_26 as exact rationals, for the Stirling tail.
const BERNOULLI: [(i64, i64); 13] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
];

/// Gamma(x) for 0 < x < 1 via a 30-step shift and the Stirling series.
///
/// With w = x + 30 the first omitted Bernoulli term is below 1e-33, so the
/// result carries nearly full double-double accuracy.
pub(crate) fn gamma_dd(x: Dd) -> Dd {
    assert!(x.hi > 0.0 && x.hi < 1.0);
    const SHIFT: i32 = 30;
    let mut prod = x;
    for j in 1..SHIFT {
        prod = prod.mul(x.add(Dd::from_f64(j as f64)));
    }
    let w = x.add(Dd::from_f64(SHIFT as f64));
    let ln2pi = pi_dd().mul_f64(2.0).ln();
    let mut ln_gamma = w
        .sub(Dd::from_ratio(1, 2))
        .mul(w.ln())
        .sub(w)
        .add(ln2pi.div_f64(2.0));
    let winv2 = w.recip().mul(w.recip());
    let mut wpow = w.recip(); // w^{-(2n-1)}
    for (n, (num, den)) in BERNOULLI.iter().enumerate() {
        let n = (n + 1) as i64;
        let coeff = Dd::from_ratio(*num, den * (2 * n) * (2 * n - 1));
        ln_gamma = ln_gamma.add(coeff.mul(wpow));
        wpow = wpow.mul(winv2);
    }
    ln_gamma.exp().div(prod)
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    #[inline]
    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, s: Dd) -> Cdd {
        Cdd {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    #[inline]
    pub fn div_f64(self, s: f64) -> Cdd {
        Cdd {
            re: self.re.div_f64(s),
            im: self.im.div_f64(s),
        }
    }

    /// Crude magnitude for convergence tests (hi parts only).
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}
