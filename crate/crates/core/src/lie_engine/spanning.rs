//! Evaluation of fields on the generators at rational points of the surface
//! and the rank test for spanning the tangent space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use crate::derivation::{exp_lnd, on_surface, Derivation, RingAutomorphism};
use crate::error::{Error, Result};
use crate::genring::GeneratorWord;
use crate::polyring::{format_rational, Point, Polynomial, Rational, SurfaceParameters};
use crate::torus::GeneratorTable;

use super::fields::{DescendedField, StandardFields};
use super::planner::module_word;

/// A rational point on `a1 a4 - a2^b a3 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    params: SurfaceParameters,
    coords: Point,
}

impl SurfacePoint {
    pub fn new(params: SurfaceParameters, coords: Point) -> Result<Self> {
        let p = SurfacePoint { params, coords };
        if !on_surface(&params, &p.coords) {
            return Err(Error::NotOnSurface(p.to_string()));
        }
        Ok(p)
    }

    pub fn coords(&self) -> &Point {
        &self.coords
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, ...`: nonzero rationals
/// by height `max(|p|, q)`.
fn small_rationals(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut h: i64 = 1;
    while out.len() < count {
        let mut positives = Vec::new();
        for q in 1..=h {
            if h.gcd(&q) == 1 {
                positives.push((h, q));
            }
        }
        for p in 1..h {
            if p.gcd(&h) == 1 {
                positives.push((p, h));
            }
        }
        for (p, q) in positives {
            let v = Rational::new(BigInt::from(p), BigInt::from(q));
            out.push(v.clone());
            out.push(-v);
        }
        h += 1;
    }
    out.truncate(count);
    out
}

/// Points `(1, s, t, 1 + s^b t)` with every generator nonzero, enumerating
/// pairs of small rationals along anti-diagonals.
pub fn candidate_points(params: SurfaceParameters, limit: usize) -> Vec<SurfacePoint> {
    let vals = small_rationals(2 * limit.max(1).sqrt() + 8);
    let table = GeneratorTable::new(params);
    let lifts: Vec<Polynomial> = table
        .generators()
        .iter()
        .map(|g| GeneratorWord::generator(params, *g).lift())
        .collect();
    let mut out = Vec::with_capacity(limit);
    'outer: for d in 0..2 * vals.len() {
        for i in 0..=d {
            if out.len() == limit {
                break 'outer;
            }
            let (Some(s), Some(t)) = (vals.get(i), vals.get(d - i)) else {
                continue;
            };
            let a4 = Rational::one() + num_traits::pow(s.clone(), params.b as usize) * t;
            let coords = [Rational::one(), s.clone(), t.clone(), a4];
            if lifts.iter().any(|l| l.evaluate(&coords).is_zero()) {
                continue;
            }
            out.push(SurfacePoint::new(params, coords).expect("parametrised points lie on the surface"));
        }
    }
    out
}

/// `X(h)(q)` via the gradient of `h` at `q`.
fn directional(x: &Derivation, h: &Polynomial, q: &Point) -> Rational {
    let c = x.evaluate(q);
    (0..4)
        .filter(|&i| !c[i].is_zero())
        .map(|i| &c[i] * h.derivative(i).evaluate(q))
        .fold(Rational::zero(), |acc, v| acc + v)
}

/// Values of `X` on `y, z, x0, ..., x_b` at `p`.
pub fn field_row(x: &Derivation, p: &SurfacePoint) -> Vec<Rational> {
    GeneratorTable::new(p.params)
        .generators()
        .iter()
        .map(|g| directional(x, &GeneratorWord::generator(p.params, *g).lift(), &p.coords))
        .collect()
}

/// Values of `α ∘ X ∘ α⁻¹` on the generators at `p`, without forming the
/// conjugated field: `α(h)(p) = h(φ(p))`.
pub fn pushed_row(alpha: &RingAutomorphism, x: &Derivation, p: &SurfacePoint) -> Vec<Rational> {
    let q = alpha.map_point(&p.coords);
    GeneratorTable::new(p.params)
        .generators()
        .iter()
        .map(|g| {
            let h = alpha.apply_inverse(&GeneratorWord::generator(p.params, *g).lift());
            directional(x, &h, &q)
        })
        .collect()
}

impl DescendedField {
    pub fn row_at(&self, p: &SurfacePoint) -> Vec<Rational> {
        self.images().iter().map(|img| img.value().evaluate(&p.coords)).collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of the rows at a point, capped at the surface dimension 2.
pub fn spanning_check(rows: &[Vec<Rational>]) -> usize {
    rank(rows).min(2)
}

/// The first candidate point where `G ε` and `φ_*(G ε)` span the tangent
/// space, `G = x0···x_b y^b`, `φ = exp(x_b δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningWitness {
    pub point: SurfacePoint,
    /// 0-based position in [`candidate_points`].
    pub index: usize,
    pub rank: usize,
    pub rows: [Vec<Rational>; 2],
}

/// `x_b δ`, the field whose flow moves the module.
pub fn flow_field(fields: &StandardFields) -> Derivation {
    let p = fields.params;
    fields.delta.times(&GeneratorWord::x_index(p, p.b).lift())
}

pub fn module_generator(fields: &StandardFields) -> Derivation {
    fields.eps.times(&module_word(fields.params).lift())
}

pub fn find_spanning_point(params: SurfaceParameters, limit: usize) -> Result<Option<SpanningWitness>> {
    let fields = StandardFields::new(params);
    let phi = exp_lnd(&flow_field(&fields), None)?;
    let g = module_generator(&fields);
    for (index, point) in candidate_points(params, limit).into_iter().enumerate() {
        let rows = [field_row(&g, &point), pushed_row(&phi, &g, &point)];
        let rank = spanning_check(&rows);
        if rank == 2 {
            return Ok(Some(SpanningWitness {
                point,
                index,
                rank,
                rows,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::pushforward;
    use crate::lie_engine::fields::descend;
    use crate::polyring::{int, rational};

    fn params(b: u32) -> SurfaceParameters {
        SurfaceParameters::from_b(b).unwrap()
    }

    fn point(b: u32, c: [i64; 4]) -> SurfacePoint {
        SurfacePoint::new(params(b), c.map(int)).unwrap()
    }

    #[test]
    fn rows_at_reference_point() {
        let f = StandardFields::new(params(2));
        let p = point(2, [1, 1, 1, 2]);
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        let eps = field_row(&f.eps, &p);
        let delta = field_row(&f.delta, &p);
        assert_eq!(eps, ints(&[1, 0, 0, -2, -8]));
        assert_eq!(delta, ints(&[4, 4, 4, 4, 0]));
        assert_eq!(spanning_check(&[eps.clone(), delta.clone()]), 2);
        assert_eq!(spanning_check(&[eps.clone(), eps.clone()]), 1);
        assert_eq!(spanning_check(&[vec![int(0); 5], vec![int(0); 5]]), 0);
        // descended images give the same rows
        assert_eq!(descend(&f.eps).unwrap().row_at(&p), eps);
        assert_eq!(descend(&f.delta).unwrap().row_at(&p), delta);
    }

    #[test]
    fn off_surface_point_rejected() {
        assert!(SurfacePoint::new(params(2), [1, 1, 1, 1].map(int)).is_err());
    }

    #[test]
    fn rank_against_minor() {
        let rows = vec![
            vec![rational(1, 2), int(3), int(0)],
            vec![int(1), int(6), int(0)],
            vec![int(0), int(1), rational(-2, 3)],
        ];
        assert_eq!(rank(&rows), 2);
        let rows = vec![vec![int(2), int(0)], vec![int(0), int(3)], vec![int(1), int(1)]];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn candidate_sequence() {
        let pts = candidate_points(params(2), 100);
        assert_eq!(pts.len(), 100);
        assert_eq!(pts[0].to_string(), "(1, 1, 1, 2)");
        for p in &pts {
            assert!(on_surface(p.params(), p.coords()));
        }
        let mut seen = std::collections::HashSet::new();
        assert!(pts.iter().all(|p| seen.insert(p.to_string())));
    }

    #[test]
    fn pushed_rows_match_symbolic_pushforward() {
        for b in 1..=2 {
            let f = StandardFields::new(params(b));
            let phi = exp_lnd(&flow_field(&f), None).unwrap();
            let g = module_generator(&f);
            let pushed = pushforward(&phi, &g).unwrap();
            let d = descend(&pushed).unwrap();
            for p in candidate_points(params(b), 5) {
                assert_eq!(pushed_row(&phi, &g, &p), field_row(&pushed, &p));
                assert_eq!(d.row_at(&p), field_row(&pushed, &p));
            }
        }
    }

    #[test]
    fn spanning_point_found() {
        for b in 1..=3 {
            let w = find_spanning_point(params(b), 100).unwrap().expect("rank-2 point");
            assert_eq!(w.rank, 2);
        }
    }
}
