//! The rationals themselves, with the scaled multiplication `x·y = c·xy`.
//! A one-point function model; identity is `1/c`.

use crate::lattice::{
    sample_rat, LatticeGroup, LatticeRing, ModelError, ModelFamily, Registered, RingFacts,
    SampleCfg, Sampler, StructuralFacts,
};
use crate::rat::{rat_max, rat_min, Rat};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct ScalarRing {
    scale: Rat,
}

impl ScalarRing {
    pub fn new(scale: Rat) -> Result<Self, ModelError> {
        if !scale.is_positive() {
            return Err(ModelError::NonPositiveScale(scale));
        }
        Ok(ScalarRing { scale })
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }
}

impl LatticeGroup for ScalarRing {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn add(&self, x: &Rat, y: &Rat) -> Rat {
        x + y
    }

    fn neg(&self, x: &Rat) -> Rat {
        -x
    }

    fn scalar_mul(&self, c: &Rat, x: &Rat) -> Rat {
        c * x
    }

    fn join(&self, x: &Rat, y: &Rat) -> Rat {
        rat_max(x, y)
    }

    fn meet(&self, x: &Rat, y: &Rat) -> Rat {
        rat_min(x, y)
    }

    fn leq(&self, x: &Rat, y: &Rat) -> bool {
        x <= y
    }

    fn meet_const(&self, q: &Rat, x: &Rat) -> Option<Rat> {
        Some(rat_min(q, x))
    }

    fn const_elem(&self, q: &Rat) -> Option<Rat> {
        Some(q.clone())
    }

    fn render(&self, x: &Rat) -> String {
        x.render()
    }

    fn parse_elem(&self, s: &str) -> Result<Rat, ModelError> {
        Rat::parse(s).map_err(|e| ModelError::parse(s, e.to_string()))
    }
}

impl LatticeRing for ScalarRing {
    fn mul(&self, x: &Rat, y: &Rat) -> Rat {
        &self.scale * x * y
    }

    fn identity(&self) -> Option<Rat> {
        Some(self.scale.recip().expect("positive scale"))
    }
}

impl Registered for ScalarRing {
    fn family(&self) -> ModelFamily {
        ModelFamily::Scalar
    }
}

impl Sampler for ScalarRing {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Rat {
        sample_rat(rng, cfg)
    }
}

impl StructuralFacts for ScalarRing {
    fn disjoint_positive_witness(&self, e: &Rat) -> Option<Rat> {
        if e.is_zero() {
            Some(Rat::one())
        } else {
            None
        }
    }

    fn dominated_multiples_witness(&self, _e: &Rat) -> Option<Rat> {
        None
    }

    fn archimedean_counterexample(&self) -> Option<(Rat, Rat)> {
        None
    }

    fn sup_value(&self, x: &Rat) -> Option<Rat> {
        Some(x.clone())
    }

    fn unit_site(&self) -> Rat {
        Rat::one()
    }
}

impl RingFacts for ScalarRing {
    fn pointwise_scale(&self) -> Option<Rat> {
        Some(self.scale.clone())
    }

    fn nilpotent_witness(&self) -> Option<Rat> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_multiplication() {
        let m = ScalarRing::new(Rat::one()).unwrap();
        assert_eq!(
            m.mul(&Rat::from_int(-2), &Rat::from_int(2)),
            Rat::from_int(-4)
        );
        assert_eq!(m.identity().unwrap(), Rat::one());
    }

    #[test]
    fn scaled_multiplication() {
        let m = ScalarRing::new(Rat::from_int(2)).unwrap();
        assert_eq!(m.mul(&Rat::one(), &Rat::one()), Rat::from_int(2));
        let e = m.identity().unwrap();
        assert_eq!(e, Rat::new(1, 2));
        assert_eq!(m.mul(&e, &Rat::from_int(7)), Rat::from_int(7));
    }
}
