//! Polynomial vector fields on 4-space restricted to the threefold: action on
//! functions, Lie brackets, tangency, exponentials of locally nilpotent
//! derivations and conjugation by the resulting automorphisms.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Point, Polynomial, Rational, SurfaceParameters};

/// `c1 ∂/∂a1 + c2 ∂/∂a2 + c3 ∂/∂a3 + c4 ∂/∂a4`, coefficients kept in
/// quotient normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    coeffs: [Polynomial; 4],
    params: SurfaceParameters,
}

impl Derivation {
    pub fn new(params: SurfaceParameters, coeffs: [Polynomial; 4]) -> Self {
        Derivation {
            coeffs: coeffs.map(|c| c.reduced(&params)),
            params,
        }
    }

    pub fn zero(params: SurfaceParameters) -> Self {
        Derivation {
            coeffs: Default::default(),
            params,
        }
    }

    /// `∂/∂a_{var+1}`.
    pub fn partial(params: SurfaceParameters, var: usize) -> Self {
        let mut coeffs: [Polynomial; 4] = Default::default();
        coeffs[var] = Polynomial::one();
        Derivation { coeffs, params }
    }

    /// Parses `c1; c2; c3; c4`.
    pub fn parse(params: SurfaceParameters, s: &str) -> Result<Self> {
        Self::parse_with(params, s, crate::polyring::resolve_coordinate)
    }

    pub fn parse_with<F>(params: SurfaceParameters, s: &str, resolve: F) -> Result<Self>
    where
        F: Fn(&str) -> Option<Polynomial>,
    {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::parse(0, format!("expected 4 `;`-separated coefficients, got {}", parts.len())));
        }
        let mut coeffs: [Polynomial; 4] = Default::default();
        for (i, part) in parts.iter().enumerate() {
            coeffs[i] = Polynomial::parse_with(part, &resolve)?;
        }
        Ok(Derivation::new(params, coeffs))
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }

    pub fn coefficients(&self) -> &[Polynomial; 4] {
        &self.coeffs
    }

    pub fn coefficient(&self, var: usize) -> &Polynomial {
        &self.coeffs[var]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// `X(p) = Σ c_i ∂p/∂a_i`, computed in the ambient ring (no reduction).
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.derivative(i);
            if d.is_zero() {
                continue;
            }
            out += c * &d;
        }
        out
    }

    /// `X(p)` reduced to normal form.
    pub fn apply_reduced(&self, p: &Polynomial) -> Polynomial {
        self.apply(p).reduced(&self.params)
    }

    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.params.check_same(&other.params)?;
        let mut coeffs: [Polynomial; 4] = Default::default();
        for (i, slot) in coeffs.iter_mut().enumerate() {
            *slot = self.apply(&other.coeffs[i]) - other.apply(&self.coeffs[i]);
        }
        Ok(Derivation::new(self.params, coeffs))
    }

    /// Tangency to the threefold: `X(F)` vanishes modulo `F`.
    pub fn is_tangent(&self) -> bool {
        self.apply_reduced(&self.params.defining_polynomial()).is_zero()
    }

    /// The stronger ambient identity `X(F) = 0`.
    pub fn annihilates_defining_polynomial(&self) -> bool {
        self.apply(&self.params.defining_polynomial()).is_zero()
    }

    /// `f·X`.
    pub fn times(&self, f: &Polynomial) -> Derivation {
        Derivation::new(self.params, self.coeffs.clone().map(|c| &c * f))
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            coeffs: self.coeffs.clone().map(|p| p.scale(c)),
            params: self.params,
        }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        self.params.check_same(&other.params)?;
        let mut coeffs = self.coeffs.clone();
        for (slot, c) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *slot += c;
        }
        Ok(Derivation {
            coeffs,
            params: self.params,
        })
    }

    /// `Σ λ_j X_j`.
    pub fn linear_combination<'a, I>(params: SurfaceParameters, terms: I) -> Result<Derivation>
    where
        I: IntoIterator<Item = (&'a Rational, &'a Derivation)>,
    {
        let mut acc = Derivation::zero(params);
        for (c, x) in terms {
            acc = acc.checked_add(&x.scale(c))?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &Point) -> [Rational; 4] {
        [
            self.coeffs[0].evaluate(point),
            self.coeffs[1].evaluate(point),
            self.coeffs[2].evaluate(point),
            self.coeffs[3].evaluate(point),
        ]
    }

    /// Smallest `m_i ≤ bound` with `X^{m_i}(a_i) ≡ 0`, per coordinate.
    ///
    /// Iterates are reduced after every step, so this is nilpotency on the
    /// coordinate ring of the threefold and is meaningful for tangent fields.
    pub fn nilpotency_orders(&self, bound: u32) -> Option<[u32; 4]> {
        let mut orders = [0u32; 4];
        for (i, slot) in orders.iter_mut().enumerate() {
            let mut cur = Polynomial::var(i);
            let mut m = 0;
            while !cur.is_zero() {
                if m >= bound {
                    return None;
                }
                cur = self.apply_reduced(&cur);
                m += 1;
            }
            *slot = m;
        }
        Some(orders)
    }

    /// Default iteration bound: four times the largest coefficient degree,
    /// plus four.
    pub fn default_nilpotency_bound(&self) -> u32 {
        let deg = self.coeffs.iter().map(Polynomial::total_degree).max().unwrap_or(0);
        deg * 4 + 4
    }

    /// Number of nonzero terms over all four coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(Polynomial::len).sum()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; {}; {}; {}",
            self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3]
        )
    }
}

impl Add for &Derivation {
    type Output = Derivation;

    /// Panics on a parameter mismatch; use [`Derivation::checked_add`] for
    /// untrusted input.
    fn add(self, rhs: &Derivation) -> Derivation {
        self.checked_add(rhs).expect("adding fields on different surfaces")
    }
}

impl Sub for &Derivation {
    type Output = Derivation;

    fn sub(self, rhs: &Derivation) -> Derivation {
        self.checked_add(&-rhs).expect("subtracting fields on different surfaces")
    }
}

impl Neg for &Derivation {
    type Output = Derivation;

    fn neg(self) -> Derivation {
        Derivation {
            coeffs: self.coeffs.clone().map(|c| -c),
            params: self.params,
        }
    }
}

/// Polynomial automorphism of the coordinate ring, given by the images of the
/// coordinates. The inverse is stored alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAutomorphism {
    images: [Polynomial; 4],
    inverse_images: [Polynomial; 4],
    params: SurfaceParameters,
}

impl RingAutomorphism {
    pub fn identity(params: SurfaceParameters) -> Self {
        let id = [0, 1, 2, 3].map(Polynomial::var);
        RingAutomorphism {
            images: id.clone(),
            inverse_images: id,
            params,
        }
    }

    /// Builds the automorphism from explicit images and inverse images,
    /// checking that the two compose to the identity modulo the ideal.
    pub fn from_images(
        params: SurfaceParameters,
        images: [Polynomial; 4],
        inverse_images: [Polynomial; 4],
    ) -> Result<Self> {
        let alpha = RingAutomorphism {
            images,
            inverse_images,
            params,
        };
        if !alpha.is_inverse_pair() {
            return Err(Error::MalformedScript(
                "automorphism images and inverse images do not compose to the identity".into(),
            ));
        }
        Ok(alpha)
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }

    pub fn images(&self) -> &[Polynomial; 4] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Polynomial; 4] {
        &self.inverse_images
    }

    /// `α(p)`, reduced.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.images).reduced(&self.params)
    }

    /// `α⁻¹(p)`, reduced.
    pub fn apply_inverse(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.inverse_images).reduced(&self.params)
    }

    pub fn inverse(&self) -> RingAutomorphism {
        RingAutomorphism {
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            params: self.params,
        }
    }

    /// `self ∘ other` as ring maps: `a_i ↦ self(other(a_i))`.
    pub fn compose(&self, other: &RingAutomorphism) -> Result<RingAutomorphism> {
        self.params.check_same(&other.params)?;
        let images = other.images.clone().map(|p| self.apply(&p));
        let inverse_images = self.inverse_images.clone().map(|p| other.apply_inverse(&p));
        Ok(RingAutomorphism {
            images,
            inverse_images,
            params: self.params,
        })
    }

    /// True when every image equals its coordinate modulo the ideal.
    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| (p - &Polynomial::var(i)).reduced(&self.params).is_zero())
    }

    fn is_inverse_pair(&self) -> bool {
        (0..4).all(|i| {
            let there_and_back = self.apply(&self.apply_inverse(&Polynomial::var(i)));
            let back_and_there = self.apply_inverse(&self.apply(&Polynomial::var(i)));
            there_and_back == Polynomial::var(i) && back_and_there == Polynomial::var(i)
        })
    }

    /// `α(F) ≡ F` modulo the ideal.
    pub fn preserves_defining_polynomial(&self) -> bool {
        let f = self.params.defining_polynomial();
        (self.apply(&f) - f.reduced(&self.params)).is_zero()
    }

    /// `α(F) = F` as an identity in the ambient polynomial ring.
    pub fn fixes_defining_polynomial_exactly(&self) -> bool {
        let f = self.params.defining_polynomial();
        f.substitute(&self.images) == f
    }

    /// The geometric map dual to `α`: `p ↦ (α(a1)(p), ..., α(a4)(p))`.
    pub fn map_point(&self, point: &Point) -> Point {
        [
            self.images[0].evaluate(point),
            self.images[1].evaluate(point),
            self.images[2].evaluate(point),
            self.images[3].evaluate(point),
        ]
    }

    pub fn map_point_inverse(&self, point: &Point) -> Point {
        [
            self.inverse_images[0].evaluate(point),
            self.inverse_images[1].evaluate(point),
            self.inverse_images[2].evaluate(point),
            self.inverse_images[3].evaluate(point),
        ]
    }
}

fn exponential_images(x: &Derivation, orders: &[u32; 4]) -> [Polynomial; 4] {
    let mut images: [Polynomial; 4] = Default::default();
    for (i, slot) in images.iter_mut().enumerate() {
        let mut term = Polynomial::var(i);
        let mut factorial = BigInt::one();
        let mut sum = Polynomial::zero();
        for j in 0..orders[i] {
            if j > 0 {
                term = x.apply_reduced(&term);
                factorial *= BigInt::from(j);
            }
            sum += term.scale(&Rational::new(BigInt::one(), factorial.clone()));
        }
        *slot = sum;
    }
    images
}

/// `exp(X)`: `a_i ↦ Σ_j X^j(a_i)/j!` for a locally nilpotent `X`, with the
/// inverse built from `-X`.
///
/// `bound` caps the number of iterations per coordinate; `None` uses
/// [`Derivation::default_nilpotency_bound`].
pub fn exp_lnd(x: &Derivation, bound: Option<u32>) -> Result<RingAutomorphism> {
    let bound = bound.unwrap_or_else(|| x.default_nilpotency_bound());
    let orders = x.nilpotency_orders(bound).ok_or(Error::NotNilpotent { bound })?;
    let images = exponential_images(x, &orders);
    let inverse_images = exponential_images(&-x, &orders);
    Ok(RingAutomorphism {
        images,
        inverse_images,
        params: x.params,
    })
}

/// Conjugation `α ∘ X ∘ α⁻¹`: the coefficient of `∂/∂a_i` is
/// `α(X(α⁻¹(a_i)))`.
pub fn pushforward(alpha: &RingAutomorphism, x: &Derivation) -> Result<Derivation> {
    alpha.params.check_same(&x.params)?;
    let mut coeffs: [Polynomial; 4] = Default::default();
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let inner = x.apply_reduced(&alpha.inverse_images[i]);
        *slot = alpha.apply(&inner);
    }
    Ok(Derivation::new(x.params, coeffs))
}

pub fn evaluate_field(x: &Derivation, point: &Point) -> [Rational; 4] {
    x.evaluate(point)
}

/// True when `p` lies on `a1*a4 - a2^b*a3 = 1`.
pub fn on_surface(params: &SurfaceParameters, point: &Point) -> bool {
    (params.defining_polynomial().evaluate(point)).is_zero()
}
