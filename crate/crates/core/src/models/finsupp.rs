//! Finitely supported rational sequences indexed by naturals: everything is
//! pointwise, and the support stays finite under every operation. The ring
//! has no identity (the constant 1 is not finitely supported), which makes it
//! the canonical non-unital example.

use crate::lattice::{
    sample_nonzero_rat, LatticeGroup, LatticeRing, ModelError, ModelFamily, Registered, RingFacts,
    SampleCfg, Sampler, StructuralFacts,
};
use crate::rat::{rat_max, rat_min, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Canonical form: the stored map never contains zero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSuppFn(BTreeMap<u64, Rat>);

impl FinSuppFn {
    pub fn from_map(map: BTreeMap<u64, Rat>) -> Self {
        FinSuppFn(map.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_pairs(pairs: &[(u64, Rat)]) -> Self {
        Self::from_map(pairs.iter().cloned().collect())
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn value(&self, i: u64) -> Rat {
        self.0.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn map(&self) -> &BTreeMap<u64, Rat> {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct FinSuppRing {
    scale: Rat,
}

impl FinSuppRing {
    pub fn new(scale: Rat) -> Result<Self, ModelError> {
        if !scale.is_positive() {
            return Err(ModelError::NonPositiveScale(scale));
        }
        Ok(FinSuppRing { scale })
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn single(&self, i: u64, v: Rat) -> FinSuppFn {
        FinSuppFn::from_pairs(&[(i, v)])
    }

    fn zip(&self, x: &FinSuppFn, y: &FinSuppFn, f: impl Fn(&Rat, &Rat) -> Rat) -> FinSuppFn {
        let zero = Rat::zero();
        let mut out = BTreeMap::new();
        for &k in x.0.keys().chain(y.0.keys()) {
            let v = f(x.0.get(&k).unwrap_or(&zero), y.0.get(&k).unwrap_or(&zero));
            if !v.is_zero() {
                out.insert(k, v);
            }
        }
        FinSuppFn(out)
    }
}

impl LatticeGroup for FinSuppRing {
    type Elem = FinSuppFn;

    fn zero(&self) -> FinSuppFn {
        FinSuppFn(BTreeMap::new())
    }

    fn add(&self, x: &FinSuppFn, y: &FinSuppFn) -> FinSuppFn {
        self.zip(x, y, |a, b| a + b)
    }

    fn neg(&self, x: &FinSuppFn) -> FinSuppFn {
        FinSuppFn(x.0.iter().map(|(k, v)| (*k, -v)).collect())
    }

    fn scalar_mul(&self, c: &Rat, x: &FinSuppFn) -> FinSuppFn {
        if c.is_zero() {
            return self.zero();
        }
        FinSuppFn(x.0.iter().map(|(k, v)| (*k, c * v)).collect())
    }

    fn join(&self, x: &FinSuppFn, y: &FinSuppFn) -> FinSuppFn {
        self.zip(x, y, rat_max)
    }

    fn meet(&self, x: &FinSuppFn, y: &FinSuppFn) -> FinSuppFn {
        self.zip(x, y, rat_min)
    }

    fn leq(&self, x: &FinSuppFn, y: &FinSuppFn) -> bool {
        let zero = Rat::zero();
        x.0.keys()
            .chain(y.0.keys())
            .all(|k| x.0.get(k).unwrap_or(&zero) <= y.0.get(k).unwrap_or(&zero))
    }

    /// `min(x(t), q)` pointwise. Off the support this is `min(0, q)`, so the
    /// result is finitely supported only for `q >= 0`.
    fn meet_const(&self, q: &Rat, x: &FinSuppFn) -> Option<FinSuppFn> {
        if q.is_negative() {
            return None;
        }
        Some(FinSuppFn(
            x.0.iter()
                .map(|(k, v)| (*k, rat_min(v, q)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        ))
    }

    fn render(&self, x: &FinSuppFn) -> String {
        let parts: Vec<String> = x.0.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn parse_elem(&self, s: &str) -> Result<FinSuppFn, ModelError> {
        let body = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ModelError::parse(s, "expected {index:value, ...}"))?;
        let mut map = BTreeMap::new();
        if body.trim().is_empty() {
            return Ok(FinSuppFn(map));
        }
        for part in body.split(',') {
            let part = part.trim();
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| ModelError::parse(s, "entry must be index:value"))?;
            let idx: u64 = k
                .parse()
                .map_err(|_| ModelError::parse(s, format!("bad index `{k}`")))?;
            if map.contains_key(&idx) {
                return Err(ModelError::parse(s, format!("duplicate index {idx}")));
            }
            let val = Rat::parse(v).map_err(|e| ModelError::parse(s, e.to_string()))?;
            if !val.is_zero() {
                map.insert(idx, val);
            }
        }
        Ok(FinSuppFn(map))
    }
}

impl LatticeRing for FinSuppRing {
    fn mul(&self, x: &FinSuppFn, y: &FinSuppFn) -> FinSuppFn {
        let mut out = BTreeMap::new();
        for (k, a) in &x.0 {
            if let Some(b) = y.0.get(k) {
                let v = &self.scale * a * b;
                if !v.is_zero() {
                    out.insert(*k, v);
                }
            }
        }
        FinSuppFn(out)
    }

    /// An identity would have to be constant `1/c` on every index.
    fn identity(&self) -> Option<FinSuppFn> {
        None
    }
}

impl Registered for FinSuppRing {
    fn family(&self) -> ModelFamily {
        ModelFamily::FinSupp
    }
}

impl Sampler for FinSuppRing {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> FinSuppFn {
        let size = rng.random_range(0..=4u32);
        let mut map = BTreeMap::new();
        for _ in 0..size {
            let idx = rng.random_range(0..8u64);
            map.insert(idx, sample_nonzero_rat(rng, cfg));
        }
        FinSuppFn(map)
    }
}

impl StructuralFacts for FinSuppRing {
    // The support of e is finite, so an indicator just past it is disjoint
    // from e whenever e >= 0. No positive e here is a weak unit.
    fn disjoint_positive_witness(&self, e: &FinSuppFn) -> Option<FinSuppFn> {
        if e.0.values().any(|v| v.is_negative()) {
            return None;
        }
        let next = e.0.keys().next_back().map_or(0, |k| k + 1);
        Some(self.single(next, Rat::one()))
    }

    fn dominated_multiples_witness(&self, _e: &FinSuppFn) -> Option<FinSuppFn> {
        None
    }

    fn archimedean_counterexample(&self) -> Option<(FinSuppFn, FinSuppFn)> {
        None
    }

    fn sup_value(&self, x: &FinSuppFn) -> Option<Rat> {
        // the zero tail counts
        let mut sup = Rat::zero();
        for v in x.0.values() {
            sup = rat_max(&sup, v);
        }
        Some(sup)
    }

    fn unit_site(&self) -> FinSuppFn {
        self.single(0, Rat::one())
    }
}

impl RingFacts for FinSuppRing {
    fn pointwise_scale(&self) -> Option<Rat> {
        Some(self.scale.clone())
    }

    fn nilpotent_witness(&self) -> Option<FinSuppFn> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> FinSuppRing {
        FinSuppRing::new(Rat::one()).unwrap()
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let x = FinSuppFn::from_pairs(&[(0, Rat::one()), (3, Rat::zero())]);
        assert_eq!(x.support().collect::<Vec<_>>(), vec![0]);
        let m = m();
        let y = m.single(0, Rat::from_int(-1));
        assert_eq!(m.add(&x, &y), m.zero());
    }

    #[test]
    fn lattice_is_pointwise_against_zero_tail() {
        let m = m();
        let x = m.single(0, Rat::from_int(-2));
        assert_eq!(m.pos_part(&x), m.zero());
        assert_eq!(m.neg_part(&x), m.single(0, Rat::from_int(2)));
        assert!(m.leq(&x, &m.zero()));
        assert!(!m.leq(&m.single(1, Rat::one()), &m.zero()));
    }

    #[test]
    fn no_ring_identity() {
        assert!(m().identity().is_none());
    }

    #[test]
    fn render_parse_round_trip() {
        let m = m();
        let x = FinSuppFn::from_pairs(&[(0, Rat::new(1, 2)), (5, Rat::from_int(-2))]);
        let s = m.render(&x);
        assert_eq!(s, "{0:1/2, 5:-2}");
        assert_eq!(m.parse_elem(&s).unwrap(), x);
        assert_eq!(m.parse_elem("{}").unwrap(), m.zero());
    }
}
