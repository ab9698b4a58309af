//! The rational plane with lexicographic order: totally ordered, divisible,
//! and not Archimedean (`n·(0,1) ≤ (1,0)` for every `n`). Group only — no
//! ring multiplication is registered on this model.

use crate::lattice::{
    sample_rat, LatticeGroup, ModelError, ModelFamily, Registered, SampleCfg, Sampler,
    StructuralFacts,
};
use crate::rat::Rat;
use rand_chacha::ChaCha8Rng;

/// Field order matters: the derived `Ord` is exactly the lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LexVec {
    pub a: Rat,
    pub b: Rat,
}

impl LexVec {
    pub fn new(a: Rat, b: Rat) -> Self {
        LexVec { a, b }
    }

    pub fn of_ints(a: i64, b: i64) -> Self {
        LexVec::new(Rat::from_int(a), Rat::from_int(b))
    }
}

#[derive(Debug, Clone, Default)]
pub struct LexPlane;

impl LatticeGroup for LexPlane {
    type Elem = LexVec;

    fn zero(&self) -> LexVec {
        LexVec::new(Rat::zero(), Rat::zero())
    }

    fn add(&self, x: &LexVec, y: &LexVec) -> LexVec {
        LexVec::new(&x.a + &y.a, &x.b + &y.b)
    }

    fn neg(&self, x: &LexVec) -> LexVec {
        LexVec::new(-&x.a, -&x.b)
    }

    fn scalar_mul(&self, c: &Rat, x: &LexVec) -> LexVec {
        LexVec::new(c * &x.a, c * &x.b)
    }

    // Total order: join and meet are max and min.
    fn join(&self, x: &LexVec, y: &LexVec) -> LexVec {
        if x >= y {
            x.clone()
        } else {
            y.clone()
        }
    }

    fn meet(&self, x: &LexVec, y: &LexVec) -> LexVec {
        if x <= y {
            x.clone()
        } else {
            y.clone()
        }
    }

    fn leq(&self, x: &LexVec, y: &LexVec) -> bool {
        x <= y
    }

    fn render(&self, x: &LexVec) -> String {
        format!("({}, {})", x.a, x.b)
    }

    fn parse_elem(&self, s: &str) -> Result<LexVec, ModelError> {
        parse_pair(s).map(|(a, b)| LexVec::new(a, b))
    }
}

impl Registered for LexPlane {
    fn family(&self) -> ModelFamily {
        ModelFamily::Lex
    }
}

impl Sampler for LexPlane {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> LexVec {
        LexVec::new(sample_rat(rng, cfg), sample_rat(rng, cfg))
    }
}

impl StructuralFacts for LexPlane {
    // In a totally ordered group, min(e, x) = 0 with x > 0 forces e = 0.
    fn disjoint_positive_witness(&self, e: &LexVec) -> Option<LexVec> {
        if *e == self.zero() {
            Some(LexVec::of_ints(0, 1))
        } else {
            None
        }
    }

    // n·(0,1) = (0,n) stays below any (a,b) with a > 0. With a = 0 the
    // second coordinate is an ordinary rational bound, so nothing survives.
    fn dominated_multiples_witness(&self, e: &LexVec) -> Option<LexVec> {
        if e.a.is_positive() {
            Some(LexVec::of_ints(0, 1))
        } else {
            None
        }
    }

    fn archimedean_counterexample(&self) -> Option<(LexVec, LexVec)> {
        Some((LexVec::of_ints(0, 1), LexVec::of_ints(1, 0)))
    }

    fn unit_site(&self) -> LexVec {
        LexVec::of_ints(0, 1)
    }
}

/// Shared by the two pair-shaped models: parses `"(p/q, r/s)"`.
pub(crate) fn parse_pair(s: &str) -> Result<(Rat, Rat), ModelError> {
    let body = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ModelError::parse(s, "expected (value, value)"))?;
    let (a, b) = body
        .split_once(',')
        .ok_or_else(|| ModelError::parse(s, "expected two comma-separated values"))?;
    let a = Rat::parse(a.trim()).map_err(|e| ModelError::parse(s, e.to_string()))?;
    let b = Rat::parse(b.trim()).map_err(|e| ModelError::parse(s, e.to_string()))?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_examples() {
        let m = LexPlane;
        // lex-negative element: positive part is 0
        assert_eq!(m.pos_part(&LexVec::of_ints(-1, 5)), m.zero());
        // order on the second coordinate when the first ties
        assert_eq!(m.neg_part(&LexVec::of_ints(0, -3)), LexVec::of_ints(0, 3));
        assert_eq!(m.abs(&m.zero()), m.zero());
    }

    #[test]
    fn abs_matches_brute_force_max() {
        let m = LexPlane;
        // independent route: |x| = lex-max of x and -x, computed directly
        let x = LexVec::of_ints(-1, 5);
        let candidates = [x.clone(), m.neg(&x)];
        let brute = candidates.iter().max().unwrap().clone();
        assert_eq!(brute, LexVec::of_ints(1, -5));
        assert_eq!(m.abs(&x), brute);
    }

    #[test]
    fn not_pointwise() {
        let m = LexPlane;
        // (1, -100) is positive in lex order even though the second entry is negative
        assert!(m.is_positive(&LexVec::of_ints(1, -100)));
        assert!(!m.is_positive(&LexVec::of_ints(-1, 100)));
    }

    #[test]
    fn render_parse_round_trip() {
        let m = LexPlane;
        let x = LexVec::new(Rat::new(-1, 2), Rat::from_int(3));
        assert_eq!(m.render(&x), "(-1/2, 3)");
        assert_eq!(m.parse_elem("(-1/2, 3)").unwrap(), x);
    }
}
