//! Rational-valued functions on a finite labelled grid, with pointwise order
//! and the scaled multiplication `(x·y)(t) = c·x(t)·y(t)`.
//!
//! This is the desk-scale stand-in for rings of continuous functions: every
//! lattice and ring operation is pointwise over the carrier.

use crate::lattice::{
    sample_rat, LatticeGroup, LatticeRing, ModelError, ModelFamily, Registered, RingFacts,
    SampleCfg, Sampler, StructuralFacts,
};
use crate::rat::{rat_max, rat_min, Rat};
use rand_chacha::ChaCha8Rng;

/// An element: one rational per carrier point, in carrier order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFn(pub Vec<Rat>);

#[derive(Debug, Clone)]
pub struct GridRing {
    labels: Vec<String>,
    scale: Rat,
}

fn valid_label(l: &str) -> bool {
    !l.is_empty() && !l.contains(['=', ',', '[', ']']) && !l.chars().any(char::is_whitespace)
}

impl GridRing {
    pub fn new(labels: Vec<String>, scale: Rat) -> Result<Self, ModelError> {
        if labels.is_empty() {
            return Err(ModelError::EmptyCarrier);
        }
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(ModelError::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        if !scale.is_positive() {
            return Err(ModelError::NonPositiveScale(scale));
        }
        Ok(GridRing { labels, scale })
    }

    /// Convenience constructor for tests and canned examples.
    pub fn with_points(labels: &[&str], scale: Rat) -> Self {
        GridRing::new(labels.iter().map(|s| s.to_string()).collect(), scale)
            .expect("valid grid carrier")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn constant(&self, q: &Rat) -> GridFn {
        GridFn(vec![q.clone(); self.labels.len()])
    }

    /// The function that is 1 at carrier position `i` and 0 elsewhere.
    pub fn indicator(&self, i: usize) -> GridFn {
        let mut v = vec![Rat::zero(); self.labels.len()];
        v[i] = Rat::one();
        GridFn(v)
    }

    pub fn elem(&self, values: Vec<Rat>) -> Result<GridFn, ModelError> {
        if values.len() != self.labels.len() {
            return Err(ModelError::ElementMismatch(format!(
                "expected {} values, got {}",
                self.labels.len(),
                values.len()
            )));
        }
        Ok(GridFn(values))
    }

    fn zip(&self, x: &GridFn, y: &GridFn, f: impl Fn(&Rat, &Rat) -> Rat) -> GridFn {
        debug_assert_eq!(x.0.len(), y.0.len(), "elements from a different grid");
        GridFn(x.0.iter().zip(&y.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl LatticeGroup for GridRing {
    type Elem = GridFn;

    fn zero(&self) -> GridFn {
        self.constant(&Rat::zero())
    }

    fn add(&self, x: &GridFn, y: &GridFn) -> GridFn {
        self.zip(x, y, |a, b| a + b)
    }

    fn neg(&self, x: &GridFn) -> GridFn {
        GridFn(x.0.iter().map(|a| -a).collect())
    }

    fn scalar_mul(&self, c: &Rat, x: &GridFn) -> GridFn {
        GridFn(x.0.iter().map(|a| c * a).collect())
    }

    fn join(&self, x: &GridFn, y: &GridFn) -> GridFn {
        self.zip(x, y, rat_max)
    }

    fn meet(&self, x: &GridFn, y: &GridFn) -> GridFn {
        self.zip(x, y, rat_min)
    }

    fn leq(&self, x: &GridFn, y: &GridFn) -> bool {
        x.0.iter().zip(&y.0).all(|(a, b)| a <= b)
    }

    fn meet_const(&self, q: &Rat, x: &GridFn) -> Option<GridFn> {
        Some(GridFn(x.0.iter().map(|a| rat_min(a, q)).collect()))
    }

    fn const_elem(&self, q: &Rat) -> Option<GridFn> {
        Some(self.constant(q))
    }

    fn render(&self, x: &GridFn) -> String {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&x.0)
            .map(|(l, v)| format!("{l}={v}"))
            .collect();
        format!("[{}]", parts.join(", "))
    }

    fn parse_elem(&self, s: &str) -> Result<GridFn, ModelError> {
        let body = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ModelError::parse(s, "expected [label=value, ...]"))?;
        let parts: Vec<&str> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(str::trim).collect()
        };
        if parts.len() != self.labels.len() {
            return Err(ModelError::parse(
                s,
                format!("expected {} entries, got {}", self.labels.len(), parts.len()),
            ));
        }
        let mut values = Vec::with_capacity(parts.len());
        for (part, label) in parts.iter().zip(&self.labels) {
            let (l, v) = part
                .split_once('=')
                .ok_or_else(|| ModelError::parse(s, "entry must be label=value"))?;
            if l != label {
                return Err(ModelError::parse(
                    s,
                    format!("expected label `{label}`, got `{l}`"),
                ));
            }
            values.push(Rat::parse(v).map_err(|e| ModelError::parse(s, e.to_string()))?);
        }
        Ok(GridFn(values))
    }
}

impl LatticeRing for GridRing {
    fn mul(&self, x: &GridFn, y: &GridFn) -> GridFn {
        self.zip(x, y, |a, b| &self.scale * a * b)
    }

    /// Solving `c·e(t)·y(t) = y(t)` pointwise gives the constant `1/c`.
    fn identity(&self) -> Option<GridFn> {
        Some(self.constant(&self.scale.recip().expect("positive scale")))
    }
}

impl Registered for GridRing {
    fn family(&self) -> ModelFamily {
        ModelFamily::Grid
    }
}

impl Sampler for GridRing {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> GridFn {
        GridFn((0..self.labels.len()).map(|_| sample_rat(rng, cfg)).collect())
    }
}

impl StructuralFacts for GridRing {
    // min(e(t), x(t)) = 0 everywhere with x > 0 forces e >= 0 everywhere and
    // e = 0 at some point of the support of x; an indicator there works.
    fn disjoint_positive_witness(&self, e: &GridFn) -> Option<GridFn> {
        if e.0.iter().any(|v| v.is_negative()) {
            return None;
        }
        e.0.iter()
            .position(|v| v.is_zero())
            .map(|i| self.indicator(i))
    }

    // n·x(t) grows without bound at any point where x(t) > 0.
    fn dominated_multiples_witness(&self, _e: &GridFn) -> Option<GridFn> {
        None
    }

    fn archimedean_counterexample(&self) -> Option<(GridFn, GridFn)> {
        None
    }

    fn sup_value(&self, x: &GridFn) -> Option<Rat> {
        x.0.iter().max().cloned()
    }

    fn unit_site(&self) -> GridFn {
        self.indicator(0)
    }
}

impl RingFacts for GridRing {
    fn pointwise_scale(&self) -> Option<Rat> {
        Some(self.scale.clone())
    }

    // c·x(t)² = 0 with c > 0 forces x(t) = 0.
    fn nilpotent_witness(&self) -> Option<GridFn> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid2() -> GridRing {
        GridRing::with_points(&["a", "b"], Rat::one())
    }

    fn f(m: &GridRing, vals: &[i64]) -> GridFn {
        m.elem(vals.iter().map(|&n| Rat::from_int(n)).collect()).unwrap()
    }

    #[test]
    fn pos_neg_abs_are_pointwise() {
        let m = grid2();
        let x = f(&m, &[-1, 2]);
        assert_eq!(m.pos_part(&x), f(&m, &[0, 2]));
        assert_eq!(m.neg_part(&x), f(&m, &[1, 0]));
        assert_eq!(m.abs(&x), f(&m, &[1, 2]));
        let y = f(&m, &[0, 3]);
        assert_eq!(m.pos_part(&y), y, "identity on the positive cone");
        assert_eq!(m.neg_part(&y), m.zero());
    }

    #[test]
    fn scaled_multiplication_and_identity() {
        let m = GridRing::with_points(&["p"], Rat::from_int(2));
        let x = m.elem(vec![Rat::new(1, 2)]).unwrap();
        let y = m.elem(vec![Rat::from_int(3)]).unwrap();
        // 2 * (1/2) * 3
        assert_eq!(m.mul(&x, &y), m.elem(vec![Rat::from_int(3)]).unwrap());
        let e = m.identity().unwrap();
        assert_eq!(e, m.constant(&Rat::new(1, 2)));
        assert_eq!(m.mul(&e, &y), y);
        assert_eq!(m.mul(&y, &e), y);
    }

    #[test]
    fn render_parse_round_trip() {
        let m = GridRing::with_points(&["-1", "0", "1"], Rat::one());
        let x = m
            .elem(vec![Rat::new(-1, 2), Rat::zero(), Rat::from_int(2)])
            .unwrap();
        let s = m.render(&x);
        assert_eq!(s, "[-1=-1/2, 0=0, 1=2]");
        assert_eq!(m.parse_elem(&s).unwrap(), x);
    }

    #[test]
    fn constructor_rejects_bad_carriers() {
        assert!(GridRing::new(vec![], Rat::one()).is_err());
        assert!(GridRing::new(vec!["a".into(), "a".into()], Rat::one()).is_err());
        assert!(GridRing::new(vec!["a=b".into()], Rat::one()).is_err());
        assert!(GridRing::new(vec!["a".into()], Rat::zero()).is_err());
        assert!(GridRing::new(vec!["a".into()], Rat::from_int(-1)).is_err());
    }
}
