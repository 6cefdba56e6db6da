//! Dense polynomials with exact rational coefficients, interpolation, and the
//! data-derived node and Q polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::severi_degree;
use crate::error::{Error, Result};
use crate::qcalc::q_delta_templates;

/// Largest cogenus `node_polynomial` and `q_polynomial` accept by default.
pub const DEFAULT_MAX_DELTA: u32 = 4;

/// Coefficients constant term first, never with trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `x - root`
    pub fn linear_root(root: BigRational) -> Self {
        Self::new(vec![-root, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder by `x - root`.
    pub fn divide_linear(&self, root: &BigRational) -> (Self, BigRational) {
        if self.is_zero() {
            return (Self::zero(), BigRational::zero());
        }
        let mut quotient = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for i in (0..self.coeffs.len()).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Self::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Coefficients as decimal or `"p/q"` strings, constant term first.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Parses `"p/q"` or plain integer strings.
    pub fn from_coeff_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Pulls out integer roots in `-bound..=bound` and the rational content:
    /// `3 (d - 1)^2`, `3/2 (d - 1)(d - 2)(3d^2 - 3d - 11)`.
    pub fn factored(&self, var: &str) -> String {
        if self.degree() == 0 {
            return format_rational(&self.leading());
        }
        let bound = 64i64;
        let mut rest = self.clone();
        let mut roots: Vec<(i64, u32)> = Vec::new();
        for r in -bound..=bound {
            let root = BigRational::from_integer(r.into());
            let mut mult = 0;
            while rest.degree() > 0 {
                let (q, rem) = rest.divide_linear(&root);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        let content = rest.content();
        let primitive = rest.scale(&content.recip());
        let mut out = String::new();
        if !content.is_one() || (roots.is_empty() && primitive.degree() == 0) {
            out.push_str(&format_rational(&content));
        }
        for (r, mult) in roots {
            if !out.is_empty() {
                out.push(' ');
            }
            let sign = if r < 0 { '+' } else { '-' };
            if r == 0 {
                out.push_str(var);
            } else {
                out.push_str(&format!("({var} {sign} {})", r.abs()));
            }
            if mult > 1 {
                out.push_str(&format!("^{mult}"));
            }
        }
        if primitive.degree() > 0 {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("({})", primitive.display_in(var)));
        }
        out
    }

    /// Positive-leading rational `c` with `self / c` having coprime integer
    /// coefficients.
    fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let c = BigRational::new(gcd, lcm);
        if self.leading().is_negative() {
            -c
        } else {
            c
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !abs.is_one() {
                out.push_str(&format_rational(&abs));
                if i > 0 && !abs.is_integer() {
                    out.push(' ');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::NotInteger(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("d"))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RationalPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// Lagrange interpolation through `(x, y)` pairs with distinct `x`.
pub fn interpolate(points: &[(i64, BigRational)]) -> Result<RationalPolynomial> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(other, _)| other == x) {
            return Err(Error::DuplicateNode(*x));
        }
    }
    let mut result = RationalPolynomial::zero();
    for (j, (xj, yj)) in points.iter().enumerate() {
        let mut basis = RationalPolynomial::constant(yj.clone());
        for (m, (xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let factor = RationalPolynomial::linear_root(BigRational::from_integer((*xm).into()));
            basis = &basis * &factor;
            basis = basis.scale(&BigRational::from_integer((xj - xm).into()).recip());
        }
        result = &result + &basis;
    }
    Ok(result)
}

/// Successive forward differences of `values`.
pub fn differences(values: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut current = values.to_vec();
    for _ in 0..order {
        if current.is_empty() {
            break;
        }
        current = current.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    current
}

/// Smallest `m` whose `(m + 1)`-st forward differences all vanish.
pub fn finite_difference_degree(values: &[BigRational]) -> usize {
    (0..values.len())
        .find(|&m| differences(values, m + 1).iter().all(Zero::is_zero))
        .unwrap_or(values.len().saturating_sub(1))
}

fn check_max(delta: u32, max_delta: u32) -> Result<()> {
    if delta > max_delta {
        return Err(Error::Guard {
            what: "cogenus",
            value: delta as u64,
            limit: max_delta as u64,
        });
    }
    Ok(())
}

/// Fits `d |-> N^{d,delta}` through `d = delta + 2 ..= 3 delta + 2` and
/// checks the fit at the next two values of `d`.
pub fn node_polynomial(delta: u32) -> Result<RationalPolynomial> {
    node_polynomial_with_max(delta, DEFAULT_MAX_DELTA)
}

pub fn node_polynomial_with_max(delta: u32, max_delta: u32) -> Result<RationalPolynomial> {
    check_max(delta, max_delta)?;
    let base = delta + 2;
    let sample = |d: u32| BigRational::from_integer(BigInt::from(severi_degree(d, delta)));
    let points: Vec<(i64, BigRational)> = (base..=base + 2 * delta)
        .map(|d| (d as i64, sample(d)))
        .collect();
    let poly = interpolate(&points)?;
    let what = format!("node polynomial for cogenus {delta}");
    for d in base + 2 * delta + 1..=base + 2 * delta + 2 {
        if poly.eval_int(d as i64) != sample(d) {
            return Err(Error::Validation { what, d });
        }
    }
    if poly.degree() != 2 * delta as usize {
        return Err(Error::Validation { what, d: base });
    }
    Ok(poly)
}

/// Fits `d |-> Q^{d,delta}` through three values from `d = delta + 2` and
/// checks it on `delta + 5 ..= delta + 8`.
pub fn q_polynomial(delta: u32) -> Result<RationalPolynomial> {
    q_polynomial_with_max(delta, DEFAULT_MAX_DELTA)
}

pub fn q_polynomial_with_max(delta: u32, max_delta: u32) -> Result<RationalPolynomial> {
    check_max(delta, max_delta)?;
    let base = delta + 2;
    let points = (base..base + 3)
        .map(|d| Ok((d as i64, q_delta_templates(d, delta)?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = interpolate(&points)?;
    for d in base + 3..=base + 6 {
        if poly.eval_int(d as i64) != q_delta_templates(d, delta)? {
            return Err(Error::Validation {
                what: format!("Q polynomial for cogenus {delta}"),
                d,
            });
        }
    }
    Ok(poly)
}
