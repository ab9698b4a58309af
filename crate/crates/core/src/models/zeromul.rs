//! The rational plane with coordinatewise order and identically zero
//! multiplication. Every element squares to zero, so this is the registered
//! witness for failing reducedness while trivially satisfying the f-ring
//! conditions.

use crate::lattice::{
    sample_rat, LatticeGroup, LatticeRing, ModelError, ModelFamily, Registered, RingFacts,
    SampleCfg, Sampler, StructuralFacts,
};
use crate::models::lex::parse_pair;
use crate::rat::{rat_max, rat_min, Rat};
use rand_chacha::ChaCha8Rng;

/// Coordinatewise (product) order, unlike the lexicographic [`super::lex::LexVec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coord2 {
    pub a: Rat,
    pub b: Rat,
}

impl Coord2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Coord2 { a, b }
    }

    pub fn of_ints(a: i64, b: i64) -> Self {
        Coord2::new(Rat::from_int(a), Rat::from_int(b))
    }
}

#[derive(Debug, Clone, Default)]
pub struct ZeroMulRing;

impl LatticeGroup for ZeroMulRing {
    type Elem = Coord2;

    fn zero(&self) -> Coord2 {
        Coord2::new(Rat::zero(), Rat::zero())
    }

    fn add(&self, x: &Coord2, y: &Coord2) -> Coord2 {
        Coord2::new(&x.a + &y.a, &x.b + &y.b)
    }

    fn neg(&self, x: &Coord2) -> Coord2 {
        Coord2::new(-&x.a, -&x.b)
    }

    fn scalar_mul(&self, c: &Rat, x: &Coord2) -> Coord2 {
        Coord2::new(c * &x.a, c * &x.b)
    }

    fn join(&self, x: &Coord2, y: &Coord2) -> Coord2 {
        Coord2::new(rat_max(&x.a, &y.a), rat_max(&x.b, &y.b))
    }

    fn meet(&self, x: &Coord2, y: &Coord2) -> Coord2 {
        Coord2::new(rat_min(&x.a, &y.a), rat_min(&x.b, &y.b))
    }

    fn leq(&self, x: &Coord2, y: &Coord2) -> bool {
        x.a <= y.a && x.b <= y.b
    }

    fn meet_const(&self, q: &Rat, x: &Coord2) -> Option<Coord2> {
        Some(Coord2::new(rat_min(&x.a, q), rat_min(&x.b, q)))
    }

    fn const_elem(&self, q: &Rat) -> Option<Coord2> {
        Some(Coord2::new(q.clone(), q.clone()))
    }

    fn render(&self, x: &Coord2) -> String {
        format!("({}, {})", x.a, x.b)
    }

    fn parse_elem(&self, s: &str) -> Result<Coord2, ModelError> {
        parse_pair(s).map(|(a, b)| Coord2::new(a, b))
    }
}

impl LatticeRing for ZeroMulRing {
    fn mul(&self, _x: &Coord2, _y: &Coord2) -> Coord2 {
        self.zero()
    }

    fn identity(&self) -> Option<Coord2> {
        None
    }
}

impl Registered for ZeroMulRing {
    fn family(&self) -> ModelFamily {
        ModelFamily::ZeroMul
    }
}

impl Sampler for ZeroMulRing {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Coord2 {
        Coord2::new(sample_rat(rng, cfg), sample_rat(rng, cfg))
    }
}

impl StructuralFacts for ZeroMulRing {
    fn disjoint_positive_witness(&self, e: &Coord2) -> Option<Coord2> {
        if e.a.is_negative() || e.b.is_negative() {
            return None;
        }
        if e.a.is_zero() {
            Some(Coord2::of_ints(1, 0))
        } else if e.b.is_zero() {
            Some(Coord2::of_ints(0, 1))
        } else {
            None
        }
    }

    fn dominated_multiples_witness(&self, _e: &Coord2) -> Option<Coord2> {
        None
    }

    fn archimedean_counterexample(&self) -> Option<(Coord2, Coord2)> {
        None
    }

    fn sup_value(&self, x: &Coord2) -> Option<Rat> {
        Some(rat_max(&x.a, &x.b))
    }

    fn unit_site(&self) -> Coord2 {
        Coord2::of_ints(1, 0)
    }
}

impl RingFacts for ZeroMulRing {
    fn pointwise_scale(&self) -> Option<Rat> {
        None
    }

    fn nilpotent_witness(&self) -> Option<Coord2> {
        Some(Coord2::of_ints(1, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_zero() {
        let m = ZeroMulRing;
        assert_eq!(
            m.mul(&Coord2::of_ints(1, 2), &Coord2::of_ints(3, 4)),
            m.zero()
        );
        assert!(m.identity().is_none());
    }

    #[test]
    fn order_is_coordinatewise() {
        let m = ZeroMulRing;
        // incomparable pair, unlike the lex plane
        assert!(!m.leq(&Coord2::of_ints(1, -1), &m.zero()));
        assert!(!m.leq(&m.zero(), &Coord2::of_ints(1, -1)));
        assert_eq!(m.pos_part(&Coord2::of_ints(1, -1)), Coord2::of_ints(1, 0));
    }
}
