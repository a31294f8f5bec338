//! Exact elements of the Gaussian rationals `Q(i)`.
//!
//! An element is stored as `(a + b i) / d` with `d > 0` and
//! `gcd(a, b, d) = 1`. Values whose parts fit in `i64` use machine integers
//! with `i128` intermediates; anything larger falls back to `BigInt`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { a: i64, b: i64, d: i64 },
    /// Only used when some part does not fit in `i64`.
    Big { a: BigInt, b: BigInt, d: BigInt },
}

/// A Gaussian rational number. The representation is canonical, so the
/// derived equality and hash are those of the field element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational(Repr);

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

// gcd(g, x) for g > 0, reducing x modulo g first.
fn gcd_rem(g: &BigInt, x: &BigInt) -> BigInt {
    if g.is_one() {
        return BigInt::one();
    }
    let r = x.mod_floor(g);
    if let (Some(gs), Some(rs)) = (g.to_u128(), r.to_u128()) {
        return BigInt::from(gcd_u128(gs, rs));
    }
    g.gcd(&r)
}

impl GaussianRational {
    fn from_i128(mut a: i128, mut b: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            a = -a;
            b = -b;
            d = -d;
        }
        if a == 0 && b == 0 {
            return Self::zero();
        }
        if d != 1 {
            let g = gcd_u128(gcd_u128(d as u128, a.unsigned_abs()), b.unsigned_abs()) as i128;
            if g > 1 {
                a /= g;
                b /= g;
                d /= g;
            }
        }
        match (i64::try_from(a), i64::try_from(b), i64::try_from(d)) {
            (Ok(a), Ok(b), Ok(d)) => GaussianRational(Repr::Small { a, b, d }),
            _ => GaussianRational(Repr::Big {
                a: a.into(),
                b: b.into(),
                d: d.into(),
            }),
        }
    }

    fn from_big(mut a: BigInt, mut b: BigInt, mut d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if d.is_negative() {
            a = -a;
            b = -b;
            d = -d;
        }
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        // d is usually far smaller than the numerators
        let g = gcd_rem(&gcd_rem(&d, &a), &b);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            d /= &g;
        }
        match (a.to_i64(), b.to_i64(), d.to_i64()) {
            (Some(a), Some(b), Some(d)) => GaussianRational(Repr::Small { a, b, d }),
            _ => GaussianRational(Repr::Big { a, b, d }),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt, BigInt) {
        match &self.0 {
            Repr::Small { a, b, d } => ((*a).into(), (*b).into(), (*d).into()),
            Repr::Big { a, b, d } => (a.clone(), b.clone(), d.clone()),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        let d = re.denom().lcm(im.denom());
        let a = re.numer() * (&d / re.denom());
        let b = im.numer() * (&d / im.denom());
        Self::from_big(a, b, d)
    }

    pub fn zero() -> Self {
        GaussianRational(Repr::Small { a: 0, b: 0, d: 1 })
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational(Repr::Small { a: 0, b: 1, d: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational(Repr::Small { a: n, b: 0, d: 1 })
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(n, BigInt::zero(), BigInt::one())
    }

    /// `num / den` as a real element. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, 0, den as i128)
    }

    /// `(a + b i)` from integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        GaussianRational(Repr::Small { a, b, d: 1 })
    }

    /// Real part.
    pub fn re(&self) -> BigRational {
        let (a, _, d) = self.big_parts();
        BigRational::new(a, d)
    }

    /// Imaginary part.
    pub fn im(&self) -> BigRational {
        let (_, b, d) = self.big_parts();
        BigRational::new(b, d)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { a: 0, b: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { a: 1, b: 0, d: 1 })
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small { b, .. } => *b == 0,
            Repr::Big { b, .. } => b.is_zero(),
        }
    }

    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small { a, b, d } => Self::from_i128(*a as i128, -(*b as i128), *d as i128),
            Repr::Big { a, b, d } => Self::from_big(a.clone(), -b, d.clone()),
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        let (a, b, d) = self.big_parts();
        BigRational::new(&a * &a + &b * &b, &d * &d)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // d / (a + b i) = d (a - b i) / (a^2 + b^2)
        let (a, b, d) = self.big_parts();
        let n = &a * &a + &b * &b;
        Some(Self::from_big(&d * &a, -(&d * &b), n))
    }

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self * &GaussianRational::from(r.clone())
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small { a: a1, b: b1, d: d1 }, Repr::Small { a: a2, b: b2, d: d2 }) => {
                let (a2, b2) = if negate {
                    (-(*a2 as i128), -(*b2 as i128))
                } else {
                    (*a2 as i128, *b2 as i128)
                };
                if d1 == d2 {
                    return Self::from_i128(*a1 as i128 + a2, *b1 as i128 + b2, *d1 as i128);
                }
                let (d1, d2) = (*d1 as i128, *d2 as i128);
                let a = (*a1 as i128).checked_mul(d2).zip(a2.checked_mul(d1));
                let b = (*b1 as i128).checked_mul(d2).zip(b2.checked_mul(d1));
                if let (Some((x, y)), Some((u, v))) = (a, b) {
                    if let (Some(a), Some(b)) = (x.checked_add(y), u.checked_add(v)) {
                        return Self::from_i128(a, b, d1 * d2);
                    }
                }
                self.add_big(o, negate)
            }
            _ => self.add_big(o, negate),
        }
    }

    fn add_big(&self, o: &Self, negate: bool) -> Self {
        let (a1, b1, d1) = self.big_parts();
        let (mut a2, mut b2, d2) = o.big_parts();
        if negate {
            a2 = -a2;
            b2 = -b2;
        }
        if d1 == d2 {
            return Self::from_big(a1 + a2, b1 + b2, d1);
        }
        Self::from_big(&a1 * &d2 + &a2 * &d1, &b1 * &d2 + &b2 * &d1, d1 * d2)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        let (n, d) = r.into();
        Self::from_big(n, BigInt::zero(), d)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        self.add_signed(o, false)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        self.add_signed(o, true)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        match (&self.0, &o.0) {
            (Repr::Small { a: a1, b: b1, d: d1 }, Repr::Small { a: a2, b: b2, d: d2 }) => {
                let (a1, b1, d1) = (*a1 as i128, *b1 as i128, *d1 as i128);
                let (a2, b2, d2) = (*a2 as i128, *b2 as i128, *d2 as i128);
                let re = (a1 * a2).checked_sub(b1 * b2);
                let im = (a1 * b2).checked_add(b1 * a2);
                match (re, im) {
                    (Some(re), Some(im)) => GaussianRational::from_i128(re, im, d1 * d2),
                    _ => GaussianRational::from_big(
                        BigInt::from(a1 * a2) - BigInt::from(b1 * b2),
                        BigInt::from(a1 * b2) + BigInt::from(b1 * a2),
                        BigInt::from(d1 * d2),
                    ),
                }
            }
            _ => {
                let (a1, b1, d1) = self.big_parts();
                let (a2, b2, d2) = o.big_parts();
                GaussianRational::from_big(
                    &a1 * &a2 - &b1 * &b2,
                    &a1 * &b2 + &b1 * &a2,
                    d1 * d2,
                )
            }
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        match &self.0 {
            Repr::Small { a, b, d } => {
                GaussianRational::from_i128(-(*a as i128), -(*b as i128), *d as i128)
            }
            Repr::Big { a, b, d } => GaussianRational::from_big(-a, -b, d.clone()),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        *self = self.add_signed(o, false);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        *self = self.add_signed(o, true);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussianRational {
    /// Prints in the polynomial expression grammar, e.g. `3/2`, `-i`,
    /// `1/2*i`, `(1/2 - 1/2*i)`. Always re-parses to the same value.
    pub fn to_expr_string(&self) -> String {
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => fmt_rational(&re),
            (true, false) => imag_part(&im),
            (false, false) => {
                let sign = if im.is_negative() { "-" } else { "+" };
                format!("({} {} {})", fmt_rational(&re), sign, imag_part(&im.abs()))
            }
        }
    }
}

fn imag_part(b: &BigRational) -> String {
    if b.is_one() {
        "i".to_string()
    } else if (-b).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rational(b))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(i.pow(4), GaussianRational::one());
        assert_eq!(i.pow(-1), -GaussianRational::i());
    }

    #[test]
    fn lowest_terms() {
        let a = GaussianRational::ratio(2, 4);
        let b = GaussianRational::ratio(-1, -2);
        assert_eq!(a, b);
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn division_roundtrip() {
        let a = GaussianRational::gaussian(3, -7);
        let b = GaussianRational::new(
            BigRational::new(1.into(), 3.into()),
            BigRational::new(5.into(), 2.into()),
        );
        assert_eq!(&(&a / &b) * &b, a);
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn overflow_falls_back_and_returns() {
        let big = GaussianRational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big { .. }));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let tiny = GaussianRational::ratio(1, i64::MAX);
        assert_eq!(&(&tiny * &tiny) * &sq, GaussianRational::one());
    }

    #[test]
    fn printing() {
        assert_eq!(GaussianRational::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let half = GaussianRational::ratio(1, 2);
        let c = &half - &(&half * &GaussianRational::i());
        assert_eq!(c.to_string(), "(1/2 - 1/2*i)");
    }
}
