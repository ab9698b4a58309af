//! The unitization `G ⊕ ℚ` of a model with a truncation, as an executable
//! ordered structure.
//!
//! Elements are formal pairs `(g, q)` with `g` in the model and `q` rational;
//! the pair stands for `g + q·1`, where `1 = (0, 1)` is adjoined as a weak
//! unit. With truncation `t` and positive scale `c`, the positive cone is
//!
//!   G⁺ ∪ { (g, q) : q > 0 and (c/q)·g⁻ is in the range of t }
//!
//! and the positive part of `(g, q)` is, at scale 1,
//!
//!   q > 0:  ( g⁺ − q·t((1/q)·g⁻), q )
//!   q < 0:  ( g⁺ + q·t((−1/q)·g⁺), 0 )
//!   q = 0:  ( g⁺, 0 )            (G sits inside as a sublattice)
//!
//! General scales are handled by conjugating with the group isomorphism
//! `(g, q) ↦ (g, q/c)` onto the scale-1 construction, which is what makes
//! the scaled cone above a lattice order. When the model is a ring, the
//! multiplication `(x, p)·(y, q) = (x·y + q·x + p·y, p·q)` makes `(0, 1)` a
//! two-sided identity and the model a ring ideal.

use crate::lattice::{sample_rat, sample_strictly_positive_rat, LatticeGroup, LatticeRing, ModelError, SampleCfg, Sampler};
use crate::rat::Rat;
use crate::truncation::{Truncation, TruncationError};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A formal pair `g + q·1`. The decomposition is unique, so equality is
/// componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unitized<E> {
    pub g: E,
    pub q: Rat,
}

impl<E> Unitized<E> {
    pub fn new(g: E, q: Rat) -> Self {
        Unitized { g, q }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnitizationError {
    #[error(transparent)]
    Truncation(#[from] TruncationError),
    #[error("unitization scale must be positive, got {0}")]
    NonPositiveScale(Rat),
}

/// A model together with a truncation and a positive scale. The lattice
/// operations below are only meaningful when the truncation has been
/// verified by `check_axioms`; constructing the context checks shape
/// (cap positivity, kind supported on the model), not the axioms.
#[derive(Debug, Clone)]
pub struct Unitization<'m, M: LatticeGroup> {
    model: &'m M,
    trunc: Truncation<M>,
    scale: Rat,
    flip_positive_part: bool,
}

impl<'m, M: LatticeGroup> Unitization<'m, M> {
    pub fn new(model: &'m M, trunc: Truncation<M>, scale: Rat) -> Result<Self, UnitizationError> {
        if !scale.is_positive() {
            return Err(UnitizationError::NonPositiveScale(scale));
        }
        trunc.validate(model)?;
        // rule out unsupported kind/model combinations up front
        trunc.apply(model, &model.zero())?;
        Ok(Unitization {
            model,
            trunc,
            scale,
            flip_positive_part: false,
        })
    }

    /// Scale 1, the default construction.
    pub fn unit_scale(model: &'m M, trunc: Truncation<M>) -> Result<Self, UnitizationError> {
        Unitization::new(model, trunc, Rat::one())
    }

    /// Deliberately mis-signs one term of the positive-part formula, so a
    /// self-test run can demonstrate the suites notice. Not for normal use.
    #[doc(hidden)]
    pub fn with_injected_fault(mut self) -> Self {
        self.flip_positive_part = true;
        self
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn truncation(&self) -> &Truncation<M> {
        &self.trunc
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    fn tau(&self, x: &M::Elem) -> M::Elem {
        self.trunc
            .apply(self.model, x)
            .expect("truncation applied to a positive element of a validated context")
    }

    pub fn zero_u(&self) -> Unitized<M::Elem> {
        Unitized::new(self.model.zero(), Rat::zero())
    }

    /// The adjoined unit `(0, 1)`.
    pub fn one_u(&self) -> Unitized<M::Elem> {
        Unitized::new(self.model.zero(), Rat::one())
    }

    pub fn from_model(&self, g: M::Elem) -> Unitized<M::Elem> {
        Unitized::new(g, Rat::zero())
    }

    pub fn add_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        Unitized::new(self.model.add(&u.g, &v.g), &u.q + &v.q)
    }

    pub fn neg_u(&self, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        Unitized::new(self.model.neg(&u.g), -&u.q)
    }

    pub fn sub_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        self.add_u(u, &self.neg_u(v))
    }

    pub fn scalar_mul_u(&self, c: &Rat, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        Unitized::new(self.model.scalar_mul(c, &u.g), c * &u.q)
    }

    pub fn int_mul_u(&self, n: i64, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        self.scalar_mul_u(&Rat::from_int(n), u)
    }

    pub fn is_zero_u(&self, u: &Unitized<M::Elem>) -> bool {
        u.q.is_zero() && self.model.is_zero(&u.g)
    }

    /// Membership in the positive cone. A negative rational part can never
    /// be positive; rational part zero reduces to the model's own cone.
    pub fn is_positive_u(&self, u: &Unitized<M::Elem>) -> bool {
        if u.q.is_zero() {
            return self.model.is_positive(&u.g);
        }
        if u.q.is_negative() {
            return false;
        }
        let arg = self
            .model
            .scalar_mul(&(&self.scale / &u.q), &self.model.neg_part(&u.g));
        self.trunc
            .in_range(self.model, &arg)
            .expect("negative part is positive")
    }

    pub fn leq_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> bool {
        self.is_positive_u(&self.sub_u(v, u))
    }

    pub fn pos_part_u(&self, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        let m = self.model;
        if u.q.is_zero() {
            return Unitized::new(m.pos_part(&u.g), Rat::zero());
        }
        let c = &self.scale;
        if u.q.is_positive() {
            let t = self.tau(&m.scalar_mul(&(c / &u.q), &m.neg_part(&u.g)));
            let correction = m.scalar_mul(&(&u.q / c), &t);
            let gpart = if self.flip_positive_part {
                m.add(&m.pos_part(&u.g), &correction)
            } else {
                m.sub(&m.pos_part(&u.g), &correction)
            };
            Unitized::new(gpart, u.q.clone())
        } else {
            let t = self.tau(&m.scalar_mul(&(&(-c) / &u.q), &m.pos_part(&u.g)));
            let gpart = m.add(&m.pos_part(&u.g), &m.scalar_mul(&(&u.q / c), &t));
            Unitized::new(gpart, Rat::zero())
        }
    }

    pub fn neg_part_u(&self, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        self.pos_part_u(&self.neg_u(u))
    }

    /// `|g + q| = |g| − (2|q|/c)·t((c/|q|)·w) + |q|` with `w` the negative
    /// part of `g` for `q > 0` and the positive part for `q < 0`; this is
    /// the closed form of `u⁺ + (−u)⁺`.
    pub fn abs_u(&self, u: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        let m = self.model;
        if u.q.is_zero() {
            return Unitized::new(m.abs(&u.g), Rat::zero());
        }
        let c = &self.scale;
        let aq = u.q.abs();
        let w = if u.q.is_positive() {
            m.neg_part(&u.g)
        } else {
            m.pos_part(&u.g)
        };
        let t = self.tau(&m.scalar_mul(&(c / &aq), &w));
        let twice = &Rat::from_int(2) * &aq / c;
        let gpart = m.sub(&m.abs(&u.g), &m.scalar_mul(&twice, &t));
        Unitized::new(gpart, aq)
    }

    /// `u ∨ v = u + (v − u)⁺`.
    pub fn join_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        self.add_u(u, &self.pos_part_u(&self.sub_u(v, u)))
    }

    /// `u ∧ v = −((−u) ∨ (−v))`.
    pub fn meet_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        self.neg_u(&self.join_u(&self.neg_u(u), &self.neg_u(v)))
    }

    pub fn render_u(&self, u: &Unitized<M::Elem>) -> String {
        format!("({}; {})", self.model.render(&u.g), u.q)
    }

    pub fn parse_u(&self, s: &str) -> Result<Unitized<M::Elem>, ModelError> {
        let body = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ModelError::parse(s, "expected (element; rational)"))?;
        let split = body
            .rfind("; ")
            .ok_or_else(|| ModelError::parse(s, "expected `; ` separator"))?;
        let g = self.model.parse_elem(&body[..split])?;
        let q = Rat::parse(&body[split + 2..]).map_err(|e| ModelError::parse(s, e.to_string()))?;
        Ok(Unitized::new(g, q))
    }
}

impl<'m, M: LatticeGroup + Sampler> Unitization<'m, M> {
    pub fn sample_u(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Unitized<M::Elem> {
        Unitized::new(self.model.sample(rng, cfg), sample_rat(rng, cfg))
    }

    /// Samples from the positive cone directly. For the branch with positive
    /// rational part, the negative part of the model component is planted as
    /// `(q/c)·t(z)`; then `(c/q)·g⁻ ≤ t(z)` lies in the range because ranges
    /// are downward closed within the cone.
    pub fn sample_positive_u(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Unitized<M::Elem> {
        let m = self.model;
        match rng.random_range(0..4u32) {
            0 => Unitized::new(m.sample_positive(rng, cfg), Rat::zero()),
            1 => {
                // pure rational part
                Unitized::new(m.zero(), sample_strictly_positive_rat(rng, cfg))
            }
            _ => {
                let q = sample_strictly_positive_rat(rng, cfg);
                let planted = self.tau(&m.sample_positive(rng, cfg));
                let down = m.scalar_mul(&(&q / &self.scale), &planted);
                let g = m.sub(&m.sample_positive(rng, cfg), &down);
                Unitized::new(g, q)
            }
        }
    }
}

impl<'m, M: LatticeRing> Unitization<'m, M> {
    /// `(x, p)·(y, q) = (x·y + q·x + p·y, p·q)`, with `x·y` the model's own
    /// multiplication.
    pub fn multiply_u(&self, u: &Unitized<M::Elem>, v: &Unitized<M::Elem>) -> Unitized<M::Elem> {
        let m = self.model;
        let mut g = m.mul(&u.g, &v.g);
        g = m.add(&g, &m.scalar_mul(&v.q, &u.g));
        g = m.add(&g, &m.scalar_mul(&u.q, &v.g));
        Unitized::new(g, &u.q * &v.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{GridFn, GridRing, ScalarRing};

    fn grid_cap_one() -> (GridRing, Truncation<GridRing>) {
        let m = GridRing::with_points(&["a", "b"], Rat::one());
        let t = Truncation::MeetCap(m.constant(&Rat::one()));
        (m, t)
    }

    fn e(m: &GridRing, vals: &[(i64, i64)]) -> GridFn {
        m.elem(vals.iter().map(|&(n, d)| Rat::new(n, d)).collect()).unwrap()
    }

    #[test]
    fn positivity_examples() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();

        // negative part (1/2, 1), inside the cap
        let u = Unitized::new(e(&m, &[(-1, 2), (-1, 1)]), Rat::one());
        assert!(ctx.is_positive_u(&u));

        // negative part (2, 0), escaping the cap
        let v = Unitized::new(e(&m, &[(-2, 1), (0, 1)]), Rat::one());
        assert!(!ctx.is_positive_u(&v));

        // negative rational part is never positive
        assert!(!ctx.is_positive_u(&Unitized::new(m.zero(), Rat::from_int(-1))));

        // the model's own cone embeds
        assert!(ctx.is_positive_u(&ctx.from_model(e(&m, &[(1, 1), (0, 1)]))));
        assert!(!ctx.is_positive_u(&ctx.from_model(e(&m, &[(-1, 1), (0, 1)]))));
    }

    #[test]
    fn positive_part_examples() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();

        // (const 2, -1): pointwise max(2 - 1, 0) = 1 with nothing at infinity
        let u = Unitized::new(m.constant(&Rat::from_int(2)), Rat::from_int(-1));
        let p = ctx.pos_part_u(&u);
        assert_eq!(p, Unitized::new(m.constant(&Rat::one()), Rat::zero()));

        // rational part zero stays in the model
        let x = e(&m, &[(-1, 1), (2, 1)]);
        assert_eq!(
            ctx.pos_part_u(&ctx.from_model(x.clone())),
            ctx.from_model(m.pos_part(&x))
        );

        // an already positive element is its own positive part
        let v = Unitized::new(e(&m, &[(-1, 1), (3, 1)]), Rat::from_int(2));
        assert!(ctx.is_positive_u(&v));
        assert_eq!(ctx.pos_part_u(&v), v);
    }

    #[test]
    fn abs_examples() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();

        assert_eq!(
            ctx.abs_u(&Unitized::new(m.zero(), Rat::from_int(-3))),
            Unitized::new(m.zero(), Rat::from_int(3))
        );

        // (const 2, -1): pointwise |2 - 1| = 1 and |-1| = 1 at infinity,
        // so the model part is the constant 0
        let u = Unitized::new(m.constant(&Rat::from_int(2)), Rat::from_int(-1));
        assert_eq!(
            ctx.abs_u(&u),
            Unitized::new(m.constant(&Rat::zero()), Rat::one())
        );

        let x = e(&m, &[(-1, 1), (2, 1)]);
        assert_eq!(
            ctx.abs_u(&ctx.from_model(x.clone())),
            ctx.from_model(m.abs(&x))
        );
    }

    #[test]
    fn meet_with_one_recovers_truncation() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t.clone()).unwrap();
        let x = e(&m, &[(3, 1), (1, 2)]);
        let met = ctx.meet_u(&ctx.one_u(), &ctx.from_model(x.clone()));
        assert_eq!(met, ctx.from_model(t.apply(&m, &x).unwrap()));
        assert_eq!(met, ctx.from_model(e(&m, &[(1, 1), (1, 2)])));
    }

    #[test]
    fn join_meet_identities() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();
        let u = Unitized::new(e(&m, &[(-1, 2), (3, 1)]), Rat::one());
        let v = Unitized::new(e(&m, &[(1, 1), (-2, 1)]), Rat::from_int(-2));
        assert_eq!(ctx.join_u(&u, &u), u);
        let sum = ctx.add_u(&ctx.join_u(&u, &v), &ctx.meet_u(&u, &v));
        assert_eq!(sum, ctx.add_u(&u, &v));
    }

    #[test]
    fn one_point_scaled_product_escapes_cone() {
        // scale-2 multiplication on the rationals, cap 1: the product of the
        // positive elements (-1, 1) and (1, 1) has model part -2, whose
        // negative part 2 exceeds the cap.
        let m = ScalarRing::new(Rat::from_int(2)).unwrap();
        let t = Truncation::MeetCap(Rat::one());
        let ctx = Unitization::unit_scale(&m, t).unwrap();
        let u = Unitized::new(Rat::from_int(-1), Rat::one());
        let v = Unitized::new(Rat::one(), Rat::one());
        assert!(ctx.is_positive_u(&u));
        assert!(ctx.is_positive_u(&v));
        let prod = ctx.multiply_u(&u, &v);
        assert_eq!(prod, Unitized::new(Rat::from_int(-2), Rat::one()));
        assert!(!ctx.is_positive_u(&prod));
    }

    #[test]
    fn multiplicative_identity_and_ideal() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();
        let u = Unitized::new(e(&m, &[(-1, 2), (3, 1)]), Rat::from_int(2));
        assert_eq!(ctx.multiply_u(&ctx.one_u(), &u), u);
        assert_eq!(ctx.multiply_u(&u, &ctx.one_u()), u);

        let x = e(&m, &[(1, 2), (-1, 1)]);
        let y = e(&m, &[(2, 1), (3, 1)]);
        let prod = ctx.multiply_u(&ctx.from_model(x.clone()), &ctx.from_model(y.clone()));
        assert_eq!(prod, ctx.from_model(m.mul(&x, &y)));
    }

    #[test]
    fn render_parse_round_trip() {
        let (m, t) = grid_cap_one();
        let ctx = Unitization::unit_scale(&m, t).unwrap();
        let u = Unitized::new(e(&m, &[(-1, 2), (3, 1)]), Rat::new(-5, 3));
        let s = ctx.render_u(&u);
        assert_eq!(s, "([a=-1/2, b=3]; -5/3)");
        assert_eq!(ctx.parse_u(&s).unwrap(), u);
    }

    #[test]
    fn scaled_cone_is_consistent() {
        // at scale c the positive cone asks (c/q)·g⁻ to be in range
        let m = ScalarRing::new(Rat::one()).unwrap();
        let t = Truncation::MeetCap(Rat::one());
        let ctx = Unitization::new(&m, t, Rat::from_int(2)).unwrap();
        // g⁻ = 1, q = 2: (2/2)·1 = 1 is in range
        let u = Unitized::new(Rat::from_int(-1), Rat::from_int(2));
        assert!(ctx.is_positive_u(&u));
        // g⁻ = 1, q = 1: (2/1)·1 = 2 is not
        let v = Unitized::new(Rat::from_int(-1), Rat::one());
        assert!(!ctx.is_positive_u(&v));
        // positive part of a positive element is itself
        assert_eq!(ctx.pos_part_u(&u), u);
        // and |u| = u⁺ + (−u)⁺ still holds
        let lhs = ctx.abs_u(&v);
        let rhs = ctx.add_u(&ctx.pos_part_u(&v), &ctx.pos_part_u(&ctx.neg_u(&v)));
        assert_eq!(lhs, rhs);
    }
}
