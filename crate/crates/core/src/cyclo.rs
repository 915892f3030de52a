//! Exact arithmetic in the cyclotomic field Q(z_l) = Q[x]/Phi_l(x).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed orders: {0} and {1}")]
    MixedOrders(u32, u32),
}

/// Result of a bounded order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    NotFinite,
}

pub fn euler_totient(n: u32) -> usize {
    assert!(n >= 1, "totient of 0");
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Quotient and remainder of a by b (b nonzero, coefficients low to high).
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lead;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
        quot[k] = c;
        trim(&mut r);
    }
    (quot, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn compute_cyclotomic(ell: u32) -> Vec<BigRational> {
    // x^ell - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![BigRational::zero(); ell as usize + 1];
    p[0] = rat(-1);
    p[ell as usize] = rat(1);
    for d in 1..ell {
        if ell % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = poly_divmod(&p, &phi_d);
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

thread_local! {
    static CYCLO_CACHE: RefCell<HashMap<u32, Rc<Vec<BigRational>>>> = RefCell::new(HashMap::new());
}

fn cyclo_rc(ell: u32) -> Rc<Vec<BigRational>> {
    if let Some(p) = CYCLO_CACHE.with(|c| c.borrow().get(&ell).cloned()) {
        return p;
    }
    let p = Rc::new(compute_cyclotomic(ell));
    CYCLO_CACHE.with(|c| c.borrow_mut().insert(ell, p.clone()));
    p
}

/// Phi_ell, monic, coefficients from the constant term upwards.
pub fn cyclotomic_polynomial(ell: u32) -> Vec<BigRational> {
    assert!(ell >= 1, "cyclotomic polynomial of order 0");
    cyclo_rc(ell).as_ref().clone()
}

/// An element of Q(z_ell), stored as its reduced residue mod Phi_ell.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycRat {
    ell: u32,
    coeffs: Vec<BigRational>,
}

impl CycRat {
    fn from_poly(ell: u32, p: Vec<BigRational>) -> CycRat {
        let phi = cyclo_rc(ell);
        let deg = phi.len() - 1;
        let mut r = if p.len() > deg { poly_divmod(&p, &phi).1 } else { p };
        r.resize(deg, BigRational::zero());
        CycRat { ell, coeffs: r }
    }

    pub fn zero(ell: u32) -> CycRat {
        CycRat { ell, coeffs: vec![BigRational::zero(); euler_totient(ell)] }
    }

    pub fn one(ell: u32) -> CycRat {
        CycRat::from_int(ell, 1)
    }

    pub fn from_int(ell: u32, n: i64) -> CycRat {
        CycRat::from_rational(ell, rat(n))
    }

    pub fn from_rational(ell: u32, r: BigRational) -> CycRat {
        let mut c = CycRat::zero(ell);
        c.coeffs[0] = r;
        c
    }

    /// Builds an element from a coefficient list in powers of the generator, reducing mod Phi_ell.
    pub fn from_coeffs(ell: u32, coeffs: Vec<BigRational>) -> CycRat {
        let mut p = coeffs;
        trim(&mut p);
        CycRat::from_poly(ell, p)
    }

    /// The generator raised to k (negative k allowed).
    pub fn q_power(ell: u32, k: i64) -> CycRat {
        let e = k.rem_euclid(ell as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = rat(1);
        CycRat::from_poly(ell, p)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same(&self, other: &CycRat) -> Result<(), CycError> {
        if self.ell == other.ell {
            Ok(())
        } else {
            Err(CycError::MixedOrders(self.ell, other.ell))
        }
    }

    pub fn checked_add(&self, other: &CycRat) -> Result<CycRat, CycError> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycRat { ell: self.ell, coeffs })
    }

    pub fn checked_sub(&self, other: &CycRat) -> Result<CycRat, CycError> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycRat { ell: self.ell, coeffs })
    }

    pub fn checked_mul(&self, other: &CycRat) -> Result<CycRat, CycError> {
        self.same(other)?;
        if self.coeffs.len() == 1 {
            return Ok(CycRat { ell: self.ell, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] });
        }
        Ok(CycRat::from_poly(self.ell, poly_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, r: &BigRational) -> CycRat {
        CycRat { ell: self.ell, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm mod Phi_ell.
    pub fn inverse(&self) -> Result<CycRat, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(CycRat { ell: self.ell, coeffs: vec![self.coeffs[0].recip()] });
        }
        let phi = cyclo_rc(self.ell);
        // invariant: r_i = s_i * a (mod phi)
        let mut r0: Vec<BigRational> = phi.as_ref().clone();
        let mut s0: Vec<BigRational> = Vec::new();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s1 = vec![rat(1)];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Phi_ell is irreducible
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(CycRat::from_poly(self.ell, s))
    }

    pub fn checked_div(&self, other: &CycRat) -> Result<CycRat, CycError> {
        self.same(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<CycRat, CycError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycRat::one(self.ell);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Least k >= 1 with a^k = 1, searching k <= 2*ell.
    pub fn multiplicative_order(&self) -> Result<Order, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let bound = 2 * self.ell.max(1) as u64;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Ok(Order::Finite(k));
            }
            acc = &acc * self;
        }
        Ok(Order::NotFinite)
    }

    /// Image under Q(z_ell) -> Q(z_target), z_ell -> z_target^(target/ell). Needs ell | target.
    pub fn embed(&self, target: u32) -> Option<CycRat> {
        if target % self.ell != 0 {
            return None;
        }
        if target == self.ell {
            return Some(self.clone());
        }
        let step = (target / self.ell) as i64;
        let mut acc = CycRat::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &CycRat::q_power(target, step * i as i64).scale(c);
            }
        }
        Some(acc)
    }

    /// Writes the element as r * z^k with r rational and 0 <= k < ell, when possible.
    pub fn as_monomial(&self) -> Option<(BigRational, u32)> {
        if self.is_zero() {
            return None;
        }
        for k in 0..self.ell.max(1) {
            let z = CycRat::q_power(self.ell, -(k as i64));
            let v = self * &z;
            if let Some(r) = v.as_rational() {
                return Some((r, k));
            }
        }
        None
    }

    /// Renders the element using `sym` for the field generator.
    pub fn render(&self, sym: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if let Some((r, k)) = self.as_monomial() {
            return render_monomial(&r, k, sym);
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = render_monomial(&c.abs(), i as u32, sym);
            parts.push((c.is_negative(), body));
        }
        let mut s = String::from("(");
        for (idx, (neg, body)) in parts.iter().enumerate() {
            if idx == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(body);
        }
        s.push(')');
        s
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_monomial(r: &BigRational, k: u32, sym: &str) -> String {
    let pw = match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{}^{}", sym, k),
    };
    if pw.is_empty() {
        return render_rational(r);
    }
    if r.is_one() {
        pw
    } else if (-r).is_one() {
        format!("-{}", pw)
    } else {
        format!("{}·{}", render_rational(r), pw)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

// Operator impls panic on mixed orders; use the checked_* methods to get an error instead.

impl<'a> Add<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn add(self, o: &CycRat) -> CycRat {
        self.checked_add(o).expect("mixed cyclotomic orders")
    }
}

impl<'a> Sub<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn sub(self, o: &CycRat) -> CycRat {
        self.checked_sub(o).expect("mixed cyclotomic orders")
    }
}

impl<'a> Mul<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn mul(self, o: &CycRat) -> CycRat {
        self.checked_mul(o).expect("mixed cyclotomic orders")
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { ell: self.ell, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        -&self
    }
}

/// gcd helper exposed for group computations.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
