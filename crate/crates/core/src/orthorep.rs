//! Multiplier representation for the Archimedean function models.
//!
//! Every element `x` of a pointwise ring acts as the multiplication operator
//! `y ↦ x·y`; writing that operator pointwise (model scale absorbed) embeds
//! the ring into the algebra of eventually-constant multipliers, a unital
//! f-ring under pointwise lattice operations with composition as product.
//! This subalgebra is all the constructions here ever traverse: it contains
//! the identity, the image of the embedding, and their lattice combinations.
//!
//! On top of the embedding live the Stone checks: whether `id ∧ x` stays in
//! the ring for positive `x`, the induced truncation `x ↦ id ∧ x` (always a
//! constant cap `1/c` on these models), truncation-preserving homomorphisms,
//! and the unital extension of the embedding to the unitization.

use crate::classify::{range_equals_idempotent_set, ClassifyError, ClassifyParams};
use crate::lattice::{
    rng_for, sample_rat, LatticeGroup, LatticeRing, ModelError, Registered, RingFacts, SampleCfg,
    Sampler, StructuralFacts,
};
use crate::rat::{rat_max, rat_min, Rat};
use crate::truncation::{CheckParams, Truncation, TruncationError};
use crate::unitization::{Unitization, Unitized};
use crate::verdict::{Evidence, Verdict};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Pointwise access to a ring model's coordinates, enough to represent its
/// multiplication operators.
pub trait FunctionModel: LatticeRing + RingFacts + StructuralFacts + Registered {
    type Idx: Ord + Clone + fmt::Debug + fmt::Display;

    /// All carrier points for finite carriers; `None` when the index set is
    /// the naturals.
    fn finite_carrier(&self) -> Option<Vec<Self::Idx>>;
    fn value_at(&self, x: &Self::Elem, i: &Self::Idx) -> Rat;
    fn elem_support(&self, x: &Self::Elem) -> Vec<Self::Idx>;
    fn from_values(&self, values: BTreeMap<Self::Idx, Rat>) -> Self::Elem;
    fn ring_scale(&self) -> Rat;
    fn parse_idx(&self, s: &str) -> Result<Self::Idx, ModelError>;
}

impl FunctionModel for crate::models::GridRing {
    type Idx = String;

    fn finite_carrier(&self) -> Option<Vec<String>> {
        Some(self.labels().to_vec())
    }

    fn value_at(&self, x: &crate::models::GridFn, i: &String) -> Rat {
        let pos = self
            .labels()
            .iter()
            .position(|l| l == i)
            .expect("index from this model's carrier");
        x.0[pos].clone()
    }

    fn elem_support(&self, x: &crate::models::GridFn) -> Vec<String> {
        self.labels()
            .iter()
            .zip(&x.0)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, _)| l.clone())
            .collect()
    }

    fn from_values(&self, values: BTreeMap<String, Rat>) -> crate::models::GridFn {
        let vals = self
            .labels()
            .iter()
            .map(|l| values.get(l).cloned().unwrap_or_else(Rat::zero))
            .collect();
        self.elem(vals).expect("carrier-length vector")
    }

    fn ring_scale(&self) -> Rat {
        self.scale().clone()
    }

    fn parse_idx(&self, s: &str) -> Result<String, ModelError> {
        if self.labels().iter().any(|l| l == s) {
            Ok(s.to_owned())
        } else {
            Err(ModelError::parse(s, "not a carrier label"))
        }
    }
}

impl FunctionModel for crate::models::FinSuppRing {
    type Idx = u64;

    fn finite_carrier(&self) -> Option<Vec<u64>> {
        None
    }

    fn value_at(&self, x: &crate::models::FinSuppFn, i: &u64) -> Rat {
        x.value(*i)
    }

    fn elem_support(&self, x: &crate::models::FinSuppFn) -> Vec<u64> {
        x.support().collect()
    }

    fn from_values(&self, values: BTreeMap<u64, Rat>) -> crate::models::FinSuppFn {
        crate::models::FinSuppFn::from_map(values)
    }

    fn ring_scale(&self) -> Rat {
        self.scale().clone()
    }

    fn parse_idx(&self, s: &str) -> Result<u64, ModelError> {
        s.parse().map_err(|_| ModelError::parse(s, "not an index"))
    }
}

impl FunctionModel for crate::models::ScalarRing {
    type Idx = u8;

    fn finite_carrier(&self) -> Option<Vec<u8>> {
        Some(vec![0])
    }

    fn value_at(&self, x: &Rat, _i: &u8) -> Rat {
        x.clone()
    }

    fn elem_support(&self, x: &Rat) -> Vec<u8> {
        if x.is_zero() {
            Vec::new()
        } else {
            vec![0]
        }
    }

    fn from_values(&self, values: BTreeMap<u8, Rat>) -> Rat {
        values.get(&0).cloned().unwrap_or_else(Rat::zero)
    }

    fn ring_scale(&self) -> Rat {
        self.scale().clone()
    }

    fn parse_idx(&self, s: &str) -> Result<u8, ModelError> {
        if s == "0" {
            Ok(0)
        } else {
            Err(ModelError::parse(s, "scalar models have the single index 0"))
        }
    }
}

/// An eventually-constant multiplier: explicit values at finitely many
/// indices, a default everywhere else. Acts on model elements by plain
/// pointwise multiplication (no model scale factor). Canonical form (no
/// stored value equal to the default; only carrier keys) is maintained by
/// the space's operations, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplier<I: Ord + Clone> {
    pub values: BTreeMap<I, Rat>,
    pub default: Rat,
}

impl<I: Ord + Clone> Multiplier<I> {
    pub fn value_at(&self, i: &I) -> Rat {
        self.values.get(i).cloned().unwrap_or_else(|| self.default.clone())
    }
}

/// The multiplier algebra over a function model.
#[derive(Debug, Clone)]
pub struct MultiplierSpace<'m, M: FunctionModel> {
    model: &'m M,
}

impl<'m, M: FunctionModel> MultiplierSpace<'m, M> {
    pub fn new(model: &'m M) -> Self {
        MultiplierSpace { model }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn build(&self, values: BTreeMap<M::Idx, Rat>, default: Rat) -> Multiplier<M::Idx> {
        self.canonical(Multiplier { values, default })
    }

    fn canonical(&self, w: Multiplier<M::Idx>) -> Multiplier<M::Idx> {
        match self.model.finite_carrier() {
            Some(carrier) => {
                let values = carrier
                    .into_iter()
                    .map(|i| {
                        let v = w.value_at(&i);
                        (i, v)
                    })
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                Multiplier {
                    values,
                    default: Rat::zero(),
                }
            }
            None => Multiplier {
                values: w
                    .values
                    .into_iter()
                    .filter(|(_, v)| *v != w.default)
                    .collect(),
                default: w.default,
            },
        }
    }

    fn zip(
        &self,
        x: &Multiplier<M::Idx>,
        y: &Multiplier<M::Idx>,
        f: impl Fn(&Rat, &Rat) -> Rat,
    ) -> Multiplier<M::Idx> {
        let mut values = BTreeMap::new();
        for i in x.values.keys().chain(y.values.keys()) {
            values.insert(i.clone(), f(&x.value_at(i), &y.value_at(i)));
        }
        self.canonical(Multiplier {
            values,
            default: f(&x.default, &y.default),
        })
    }

    /// The identity map, `default 1` with no exceptions.
    pub fn one(&self) -> Multiplier<M::Idx> {
        self.build(BTreeMap::new(), Rat::one())
    }

    /// Applies a multiplier to a model element, pointwise over the element's
    /// support (off-support the element vanishes, so the product does too).
    pub fn apply_to(&self, w: &Multiplier<M::Idx>, x: &M::Elem) -> M::Elem {
        let values = self
            .model
            .elem_support(x)
            .into_iter()
            .map(|i| {
                let v = &w.value_at(&i) * &self.model.value_at(x, &i);
                (i, v)
            })
            .collect();
        self.model.from_values(values)
    }
}

impl<'m, M: FunctionModel> LatticeGroup for MultiplierSpace<'m, M> {
    type Elem = Multiplier<M::Idx>;

    fn zero(&self) -> Self::Elem {
        self.build(BTreeMap::new(), Rat::zero())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.zip(x, y, |a, b| a + b)
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.build(
            x.values.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            -&x.default,
        )
    }

    fn scalar_mul(&self, c: &Rat, x: &Self::Elem) -> Self::Elem {
        self.build(
            x.values.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
            c * &x.default,
        )
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.zip(x, y, rat_max)
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.zip(x, y, rat_min)
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x.default <= y.default
            && x.values
                .keys()
                .chain(y.values.keys())
                .all(|i| x.value_at(i) <= y.value_at(i))
    }

    fn render(&self, x: &Self::Elem) -> String {
        let mut parts = vec![format!("*={}", x.default)];
        parts.extend(x.values.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{{{}}}", parts.join(", "))
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ModelError> {
        let body = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ModelError::parse(s, "expected {*=default, index=value, ...}"))?;
        let mut default = None;
        let mut values = BTreeMap::new();
        for part in body.split(',') {
            let part = part.trim();
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| ModelError::parse(s, "entry must be key=value"))?;
            let val = Rat::parse(v).map_err(|e| ModelError::parse(s, e.to_string()))?;
            if k == "*" {
                default = Some(val);
            } else {
                values.insert(self.model.parse_idx(k)?, val);
            }
        }
        let default = default.ok_or_else(|| ModelError::parse(s, "missing *=default entry"))?;
        Ok(self.build(values, default))
    }
}

impl<'m, M: FunctionModel> LatticeRing for MultiplierSpace<'m, M> {
    /// Composition of multiplication operators is the pointwise product.
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.zip(x, y, |a, b| a * b)
    }

    fn identity(&self) -> Option<Self::Elem> {
        Some(self.one())
    }
}

impl<'m, M: FunctionModel> Sampler for MultiplierSpace<'m, M> {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Self::Elem {
        match self.model.finite_carrier() {
            Some(carrier) => {
                let values = carrier
                    .into_iter()
                    .map(|i| (i, sample_rat(rng, cfg)))
                    .collect();
                self.build(values, Rat::zero())
            }
            None => {
                let default = sample_rat(rng, cfg);
                let size = rng.random_range(0..=3u32);
                let mut values = BTreeMap::new();
                for _ in 0..size {
                    let i = rng.random_range(0..8u64);
                    values.insert(self.model.parse_idx(&i.to_string()).expect("numeric index"), sample_rat(rng, cfg));
                }
                self.build(values, default)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrthoError {
    #[error("not a Stone f-ring: {0}")]
    NotStone(String),
    #[error(transparent)]
    Truncation(#[from] TruncationError),
}

/// The embedding `x ↦ (y ↦ x·y)`: pointwise values `c·x(t)`, default 0.
pub fn embed_j<M: FunctionModel>(m: &M, x: &M::Elem) -> Multiplier<M::Idx> {
    let space = MultiplierSpace::new(m);
    let scale = m.ring_scale();
    let values = m
        .elem_support(x)
        .into_iter()
        .map(|i| {
            let v = &scale * &m.value_at(x, &i);
            (i, v)
        })
        .collect();
    space.build(values, Rat::zero())
}

/// Inverts the embedding exactly, when the multiplier lies in the image.
pub fn j_inverse<M: FunctionModel>(m: &M, w: &Multiplier<M::Idx>) -> Option<M::Elem> {
    if m.finite_carrier().is_none() && !w.default.is_zero() {
        return None;
    }
    let scale = m.ring_scale();
    let values: BTreeMap<M::Idx, Rat> = match m.finite_carrier() {
        Some(carrier) => carrier
            .into_iter()
            .map(|i| {
                let v = &w.value_at(&i) / &scale;
                (i, v)
            })
            .collect(),
        None => w
            .values
            .iter()
            .map(|(i, v)| (i.clone(), v / &scale))
            .collect(),
    };
    let candidate = m.from_values(values);
    if embed_j(m, &candidate) == *w {
        Some(candidate)
    } else {
        None
    }
}

/// Splits a multiplier into its positive and negative parts; both preserve
/// disjointness (they act by positive pointwise multiplication).
pub fn decompose_orthomorphism<M: FunctionModel>(
    space: &MultiplierSpace<'_, M>,
    w: &Multiplier<M::Idx>,
) -> (Multiplier<M::Idx>, Multiplier<M::Idx>) {
    (space.pos_part(w), space.neg_part(w))
}

/// Is `id ∧ J(x)` in the image of the ring for every positive `x`? For the
/// registered function models the answer is structurally yes: the grid and
/// scalar rings are unital, and on finitely supported sequences
/// `min(1, c·x)` keeps finite support. Confirmed on samples via the exact
/// inverse of the embedding.
pub fn stone_check<M>(m: &M, p: &ClassifyParams) -> Verdict
where
    M: FunctionModel + Sampler,
{
    let space = MultiplierSpace::new(m);
    let one = space.one();
    let mut rng = rng_for(p.seed, 0x0511);
    for _ in 0..p.samples {
        let x = m.sample_positive(&mut rng, &p.cfg);
        let capped = space.meet(&one, &embed_j(m, &x));
        match j_inverse(m, &capped) {
            Some(z) => debug_assert_eq!(embed_j(m, &z), capped),
            None => {
                return Verdict::violated(
                    Evidence::Sampled(p.samples),
                    "id ∧ J(x) left the image of the ring",
                )
                .with_witness("x", m.render(&x))
            }
        }
    }
    let reason = if m.identity().is_some() {
        "unital Archimedean f-ring, hence Stone"
    } else {
        "capping at 1 preserves finite support, hence Stone without a unit"
    };
    Verdict::structural_ok(format!(
        "{reason}; inverse-image membership confirmed on {} samples",
        p.samples
    ))
}

/// The truncation induced by the multiplier identity: `x ↦ J⁻¹(id ∧ J(x))`,
/// which on a pointwise model of scale `c` is `min(x, 1/c)` — a constant cap.
pub fn stone_function<M>(m: &M, p: &ClassifyParams) -> Result<Truncation<M>, OrthoError>
where
    M: FunctionModel + Sampler,
{
    let check = stone_check(m, p);
    if !check.is_verified() {
        return Err(OrthoError::NotStone(check.message));
    }
    let cap = m.ring_scale().recip().expect("positive ring scale");
    Ok(Truncation::ConstCap(cap))
}

/// Does `h` intertwine the truncations: `t2(h(x)) = h(t1(x))` on positive
/// samples? Deterministic probes run before the sampled stream so canonical
/// counterexamples surface independently of the seed.
#[allow(clippy::too_many_arguments)]
pub fn is_truncation_homomorphism<M1, M2, F>(
    m1: &M1,
    t1: &Truncation<M1>,
    m2: &M2,
    t2: &Truncation<M2>,
    h: F,
    probes: &[M1::Elem],
    p: &CheckParams,
) -> Result<Verdict, TruncationError>
where
    M1: LatticeGroup + Sampler,
    M2: LatticeGroup,
    F: Fn(&M1::Elem) -> M2::Elem,
{
    let mut rng = rng_for(p.seed, 0x0522);
    let mut stream: Vec<M1::Elem> = probes.to_vec();
    for _ in 0..p.samples {
        stream.push(m1.sample_positive(&mut rng, &p.cfg));
    }
    for x in &stream {
        let through = h(&t1.apply(m1, x)?);
        let after = t2.apply(m2, &h(x))?;
        if through != after {
            return Ok(Verdict::violated(
                Evidence::Sampled(p.samples),
                "truncation is not preserved: t2(h(x)) ≠ h(t1(x))",
            )
            .with_witness("x", m1.render(x))
            .with_witness("h(t1(x))", m2.render(&through))
            .with_witness("t2(h(x))", m2.render(&after)));
        }
    }
    Ok(Verdict::sampled_ok(
        p.samples,
        "truncation preserved on all probes and samples",
    ))
}

/// Convenience check for the embedding against the multiplier cap
/// `ζ = id ∧ ·`, with the range-equality mismatch (when the cap is not the
/// Stone one) fed in as a canonical probe.
pub fn j_truncation_hom_check<M>(
    m: &M,
    t: &Truncation<M>,
    p: &ClassifyParams,
) -> Result<Verdict, ClassifyError>
where
    M: FunctionModel + Sampler,
{
    let space = MultiplierSpace::new(m);
    let zeta = Truncation::MeetCap(space.one());
    let mut probes = Vec::new();
    if let Some(w) = range_equals_idempotent_set(m, t, &Rat::one(), p)?.mismatch {
        probes.push(w);
    }
    let verdict = is_truncation_homomorphism(
        m,
        t,
        &space,
        &zeta,
        |x| embed_j(m, x),
        &probes,
        &p.check_params(),
    )?;
    Ok(verdict)
}

/// The unital extension of the embedding to the unitization:
/// `(x, p) ↦ J(x) + p·id`.
pub fn extend_j_tau<M: FunctionModel>(m: &M, u: &Unitized<M::Elem>) -> Multiplier<M::Idx> {
    let space = MultiplierSpace::new(m);
    space.add(&embed_j(m, &u.g), &space.scalar_mul(&u.q, &space.one()))
}

/// Renders the extension target for reports.
pub fn render_multiplier<M: FunctionModel>(m: &M, w: &Multiplier<M::Idx>) -> String {
    MultiplierSpace::new(m).render(w)
}

/// Positivity of a unitized element must transfer through the extension.
pub fn extension_positivity_check<M>(
    ctx: &Unitization<'_, M>,
    p: &ClassifyParams,
) -> Verdict
where
    M: FunctionModel + Sampler,
{
    let m = ctx.model();
    let space = MultiplierSpace::new(m);
    let mut rng = rng_for(p.seed, 0x0533);
    for _ in 0..p.samples {
        let u = ctx.sample_positive_u(&mut rng, &p.cfg);
        let w = extend_j_tau(m, &u);
        if !space.is_positive(&w) {
            return Verdict::violated(
                Evidence::Sampled(p.samples),
                "a positive unitized element mapped to a non-positive multiplier",
            )
            .with_witness("u", ctx.render_u(&u))
            .with_witness("J(u)", space.render(&w));
        }
    }
    Verdict::sampled_ok(p.samples, "positive elements map to pointwise-positive multipliers")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{FinSuppFn, FinSuppRing, GridRing};

    fn grid_c2() -> GridRing {
        GridRing::with_points(&["a", "b"], Rat::from_int(2))
    }

    #[test]
    fn embedding_examples() {
        let m = grid_c2();
        let space = MultiplierSpace::new(&m);
        let x = m.elem(vec![Rat::new(1, 2), Rat::one()]).unwrap();
        let w = embed_j(&m, &x);
        // pointwise 2·x(t)
        assert_eq!(w.value_at(&"a".to_string()), Rat::one());
        assert_eq!(w.value_at(&"b".to_string()), Rat::from_int(2));

        assert_eq!(embed_j(&m, &m.zero()), space.zero());
        // the ring identity maps to the identity multiplier
        assert_eq!(embed_j(&m, &m.identity().unwrap()), space.one());
    }

    #[test]
    fn embedding_is_a_ring_and_lattice_homomorphism() {
        let m = grid_c2();
        let space = MultiplierSpace::new(&m);
        let x = m.elem(vec![Rat::new(-1, 2), Rat::from_int(3)]).unwrap();
        let y = m.elem(vec![Rat::from_int(2), Rat::new(1, 3)]).unwrap();
        assert_eq!(
            embed_j(&m, &m.mul(&x, &y)),
            space.mul(&embed_j(&m, &x), &embed_j(&m, &y))
        );
        assert_eq!(
            embed_j(&m, &m.join(&x, &y)),
            space.join(&embed_j(&m, &x), &embed_j(&m, &y))
        );
        assert_eq!(
            embed_j(&m, &m.add(&x, &y)),
            space.add(&embed_j(&m, &x), &embed_j(&m, &y))
        );
    }

    #[test]
    fn decomposition_is_pointwise() {
        let m = grid_c2();
        let space = MultiplierSpace::new(&m);
        let w = space.build(
            [("a".to_string(), Rat::from_int(-1)), ("b".to_string(), Rat::from_int(2))]
                .into_iter()
                .collect(),
            Rat::zero(),
        );
        let (pos, neg) = decompose_orthomorphism(&space, &w);
        assert_eq!(pos.value_at(&"a".to_string()), Rat::zero());
        assert_eq!(pos.value_at(&"b".to_string()), Rat::from_int(2));
        assert_eq!(neg.value_at(&"a".to_string()), Rat::one());
        assert_eq!(neg.value_at(&"b".to_string()), Rat::zero());
        assert_eq!(space.sub(&pos, &neg), w);

        let (p1, n1) = decompose_orthomorphism(&space, &space.one());
        assert_eq!(p1, space.one());
        assert_eq!(n1, space.zero());
    }

    #[test]
    fn stone_functions() {
        let p = ClassifyParams::default();
        let g = grid_c2();
        assert!(stone_check(&g, &p).is_verified());
        assert_eq!(stone_function(&g, &p).unwrap(), Truncation::ConstCap(Rat::new(1, 2)));

        let fs = FinSuppRing::new(Rat::one()).unwrap();
        assert!(stone_check(&fs, &p).is_verified());
        assert_eq!(stone_function(&fs, &p).unwrap(), Truncation::ConstCap(Rat::one()));
    }

    #[test]
    fn hom_check_flags_wrong_cap() {
        let m = grid_c2();
        let p = ClassifyParams::default();
        // the Stone cap intertwines
        let good = j_truncation_hom_check(&m, &Truncation::ConstCap(Rat::new(1, 2)), &p).unwrap();
        assert!(good.is_verified());
        // cap 1 does not: min(1, 2·(3/4)) = 1 while 2·min(1, 3/4) = 3/2
        let bad = j_truncation_hom_check(&m, &Truncation::ConstCap(Rat::one()), &p).unwrap();
        assert!(bad.is_violated());
        assert_eq!(
            m.parse_elem(&bad.witness[0].value).unwrap(),
            m.constant(&Rat::new(3, 4))
        );
    }

    #[test]
    fn identity_map_preserves_truncation() {
        let m = grid_c2();
        let t = Truncation::ConstCap(Rat::new(1, 2));
        let v = is_truncation_homomorphism(
            &m,
            &t,
            &m,
            &t,
            |x| x.clone(),
            &[],
            &CheckParams::default(),
        )
        .unwrap();
        assert!(v.is_verified());
    }

    #[test]
    fn extension_is_unital() {
        let m = grid_c2();
        let t = Truncation::ConstCap(Rat::new(1, 2));
        let ctx = Unitization::unit_scale(&m, t).unwrap();
        let space = MultiplierSpace::new(&m);
        assert_eq!(extend_j_tau(&m, &ctx.one_u()), space.one());
        let x = m.elem(vec![Rat::new(1, 3), Rat::from_int(-2)]).unwrap();
        assert_eq!(extend_j_tau(&m, &ctx.from_model(x.clone())), embed_j(&m, &x));
    }

    #[test]
    fn extension_on_sequences_shifts_the_default() {
        let fs = FinSuppRing::new(Rat::one()).unwrap();
        let t = Truncation::ConstCap(Rat::one());
        let ctx = Unitization::unit_scale(&fs, t).unwrap();
        let x = FinSuppFn::from_pairs(&[(0, Rat::new(-1, 2))]);
        let w = extend_j_tau(&fs, &Unitized::new(x, Rat::one()));
        assert_eq!(w.default, Rat::one());
        assert_eq!(w.value_at(&0), Rat::new(1, 2));
        assert_eq!(w.value_at(&7), Rat::one());
        let _ = ctx;
    }

    #[test]
    fn multiplier_render_parse() {
        let fs = FinSuppRing::new(Rat::one()).unwrap();
        let space = MultiplierSpace::new(&fs);
        let w = space.build(
            [(0u64, Rat::new(1, 2)), (3, Rat::from_int(-2))].into_iter().collect(),
            Rat::one(),
        );
        let s = space.render(&w);
        assert_eq!(s, "{*=1, 0=1/2, 3=-2}");
        assert_eq!(space.parse_elem(&s).unwrap(), w);
    }
}
