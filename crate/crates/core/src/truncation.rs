//! Truncations on the positive cone and their axiom checker.
//!
//! A truncation is a map `t: G⁺ → G⁺` with
//!
//!   (t1)  x ∧ t(y) ≤ t(x) ≤ x          for all x, y ≥ 0
//!   (t2)  t(x) = 0 implies x = 0
//!   (t3)  n·x = t(n·x) for all n ≥ 1 implies x = 0
//!
//! Meet-with-cap and constant-cap truncations are decided structurally and
//! exactly; custom table maps get a seeded sampled check, with (t3) bounded
//! and the bound recorded in the verdict. A truncation is only *claimed* to
//! be one once `check_axioms` says `Verified`.

use crate::lattice::{LatticeGroup, SampleCfg, Sampler, StructuralFacts};
use crate::lattice::rng_for;
use crate::rat::Rat;
use crate::verdict::{Evidence, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruncationError {
    #[error("truncation argument must be positive, got {0}")]
    NotPositive(String),
    #[error("invalid cap: {0}")]
    InvalidCap(String),
    #[error("truncation kind not supported on this model: {0}")]
    Unsupported(String),
}

/// Fallback map a custom truncation uses off its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseMap {
    /// `t(x) = 0` everywhere (fails (t2) on any positive model).
    Zero,
    /// `t(x) = x` everywhere (never escapes, so (t3) cannot be witnessed).
    Identity,
}

impl BaseMap {
    pub fn name(&self) -> &'static str {
        match self {
            BaseMap::Zero => "zero",
            BaseMap::Identity => "identity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "zero" => Some(BaseMap::Zero),
            "identity" => Some(BaseMap::Identity),
            _ => None,
        }
    }
}

/// A custom truncation: explicit pairs consulted first, then the base map.
/// Total on the positive cone by construction.
pub struct CustomTrunc<M: LatticeGroup> {
    pub base: BaseMap,
    pub table: Vec<(M::Elem, M::Elem)>,
}

// manual impls: deriving would demand `M: Clone` instead of `M::Elem: Clone`
impl<M: LatticeGroup> Clone for CustomTrunc<M> {
    fn clone(&self) -> Self {
        CustomTrunc {
            base: self.base,
            table: self.table.clone(),
        }
    }
}

impl<M: LatticeGroup> PartialEq for CustomTrunc<M> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.table == other.table
    }
}

impl<M: LatticeGroup> Eq for CustomTrunc<M> {}

impl<M: LatticeGroup> std::fmt::Debug for CustomTrunc<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomTrunc")
            .field("base", &self.base)
            .field("table", &self.table)
            .finish()
    }
}

pub enum Truncation<M: LatticeGroup> {
    /// `t(x) = e ∧ x` for a fixed cap `e ≥ 0`.
    MeetCap(M::Elem),
    /// Pointwise `min(x(t), q)` with a constant `q > 0`; meaningful on the
    /// function models even when the constant is not an element (finitely
    /// supported sequences).
    ConstCap(Rat),
    Custom(CustomTrunc<M>),
}

impl<M: LatticeGroup> Clone for Truncation<M> {
    fn clone(&self) -> Self {
        match self {
            Truncation::MeetCap(e) => Truncation::MeetCap(e.clone()),
            Truncation::ConstCap(q) => Truncation::ConstCap(q.clone()),
            Truncation::Custom(c) => Truncation::Custom(c.clone()),
        }
    }
}

impl<M: LatticeGroup> PartialEq for Truncation<M> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Truncation::MeetCap(a), Truncation::MeetCap(b)) => a == b,
            (Truncation::ConstCap(a), Truncation::ConstCap(b)) => a == b,
            (Truncation::Custom(a), Truncation::Custom(b)) => a == b,
            _ => false,
        }
    }
}

impl<M: LatticeGroup> Eq for Truncation<M> {}

impl<M: LatticeGroup> std::fmt::Debug for Truncation<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Truncation::MeetCap(e) => f.debug_tuple("MeetCap").field(e).finish(),
            Truncation::ConstCap(q) => f.debug_tuple("ConstCap").field(q).finish(),
            Truncation::Custom(c) => f.debug_tuple("Custom").field(c).finish(),
        }
    }
}

impl<M: LatticeGroup> Truncation<M> {
    pub fn custom(base: BaseMap) -> Self {
        Truncation::Custom(CustomTrunc {
            base,
            table: Vec::new(),
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Truncation::MeetCap(_) => "meet_cap",
            Truncation::ConstCap(_) => "const_cap",
            Truncation::Custom(_) => "custom",
        }
    }

    /// Structural well-formedness; cheap, run before anything else.
    pub fn validate(&self, m: &M) -> Result<(), TruncationError> {
        match self {
            Truncation::MeetCap(e) => {
                if !m.is_positive(e) {
                    return Err(TruncationError::InvalidCap(format!(
                        "cap must satisfy e >= 0, got {}",
                        m.render(e)
                    )));
                }
                Ok(())
            }
            Truncation::ConstCap(q) => {
                if !q.is_positive() {
                    return Err(TruncationError::InvalidCap(format!(
                        "constant cap must be > 0, got {q}"
                    )));
                }
                if m.meet_const(q, &m.zero()).is_none() {
                    return Err(TruncationError::Unsupported(
                        "model has no pointwise constant meet".to_owned(),
                    ));
                }
                Ok(())
            }
            Truncation::Custom(c) => {
                for (x, tx) in &c.table {
                    if !m.is_positive(x) {
                        return Err(TruncationError::InvalidCap(format!(
                            "custom table input must be positive, got {}",
                            m.render(x)
                        )));
                    }
                    if !m.is_positive(tx) {
                        return Err(TruncationError::InvalidCap(format!(
                            "custom table output must be positive, got {}",
                            m.render(tx)
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Applies the truncation to a positive element. `t(0) = 0` is enforced
    /// for every kind, including custom tables.
    pub fn apply(&self, m: &M, x: &M::Elem) -> Result<M::Elem, TruncationError> {
        if !m.is_positive(x) {
            return Err(TruncationError::NotPositive(m.render(x)));
        }
        if m.is_zero(x) {
            return Ok(m.zero());
        }
        match self {
            Truncation::MeetCap(e) => Ok(m.meet(e, x)),
            Truncation::ConstCap(q) => m.meet_const(q, x).ok_or_else(|| {
                TruncationError::Unsupported("model has no pointwise constant meet".to_owned())
            }),
            Truncation::Custom(c) => {
                for (input, output) in &c.table {
                    if input == x {
                        return Ok(output.clone());
                    }
                }
                Ok(match c.base {
                    BaseMap::Zero => m.zero(),
                    BaseMap::Identity => x.clone(),
                })
            }
        }
    }

    /// Range membership by the fixed-point characterisation: `x` is in the
    /// range of a truncation exactly when `t(x) = x`.
    pub fn in_range(&self, m: &M, x: &M::Elem) -> Result<bool, TruncationError> {
        Ok(self.apply(m, x)? == *x)
    }
}

/// Budget for seeded checks.
#[derive(Debug, Clone)]
pub struct CheckParams {
    pub seed: u64,
    pub samples: u32,
    pub bound: u32,
    pub cfg: SampleCfg,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            seed: 0,
            samples: 1000,
            bound: 64,
            cfg: SampleCfg::default(),
        }
    }
}

impl CheckParams {
    pub fn seeded(seed: u64) -> Self {
        CheckParams {
            seed,
            ..Default::default()
        }
    }
}

/// Decides the truncation axioms.
///
/// Meet caps are decided exactly: (t1) is a lattice identity for meets with
/// a fixed positive element, (t2) asks the cap to be a weak unit and (t3)
/// asks that nothing has all its multiples under the cap — both answered by
/// the model's structural decision procedures. Constant caps on the function
/// models are exact for the same reasons. Custom maps are sampled, and their
/// (t3) clause is only semi-decidable: a positive element that never escapes
/// within the bound yields `Inconclusive` with the bound recorded.
pub fn check_axioms<M>(m: &M, t: &Truncation<M>, p: &CheckParams) -> Result<Verdict, TruncationError>
where
    M: LatticeGroup + Sampler + StructuralFacts,
{
    t.validate(m)?;
    match t {
        Truncation::MeetCap(e) => {
            if let Some(x) = m.disjoint_positive_witness(e) {
                return Ok(Verdict::violated(
                    Evidence::Structural,
                    "(t2) fails: the cap is not a weak unit, t(x) = e ∧ x = 0 for x ≠ 0",
                )
                .with_witness("x", m.render(&x)));
            }
            if let Some(x) = m.dominated_multiples_witness(e) {
                return Ok(Verdict::violated(
                    Evidence::Structural,
                    "(t3) fails: n·x = t(n·x) for every n, yet x ≠ 0",
                )
                .with_witness("x", m.render(&x)));
            }
            Ok(Verdict::structural_ok(
                "meet-cap truncation: (t1) is a lattice identity, (t2) the cap is a weak unit, (t3) no positive element keeps all multiples under the cap",
            ))
        }
        Truncation::ConstCap(_) => Ok(Verdict::structural_ok(
            "constant cap on a pointwise function model: (t1)-(t3) hold exactly",
        )),
        Truncation::Custom(_) => check_custom(m, t, p),
    }
}

fn check_custom<M>(m: &M, t: &Truncation<M>, p: &CheckParams) -> Result<Verdict, TruncationError>
where
    M: LatticeGroup + Sampler + StructuralFacts,
{
    let mut rng = rng_for(p.seed, 0x7a31);
    let canonical = canonical_positive(m);

    // (t1) on canonical and sampled pairs
    let mut pairs: Vec<(M::Elem, M::Elem)> = vec![
        (canonical.clone(), canonical.clone()),
        (canonical.clone(), m.zero()),
        (m.zero(), canonical.clone()),
    ];
    for _ in 0..p.samples {
        pairs.push((m.sample_positive(&mut rng, &p.cfg), m.sample_positive(&mut rng, &p.cfg)));
    }
    for (x, y) in &pairs {
        let tx = t.apply(m, x)?;
        let ty = t.apply(m, y)?;
        if !m.leq(&m.meet(x, &ty), &tx) || !m.leq(&tx, x) {
            return Ok(Verdict::violated(
                Evidence::Sampled(p.samples),
                "(t1) fails: x ∧ t(y) ≤ t(x) ≤ x does not hold",
            )
            .with_witness("x", m.render(x))
            .with_witness("y", m.render(y)));
        }
    }

    // (t2) on canonical and sampled positives
    let mut positives: Vec<M::Elem> = vec![canonical.clone()];
    for _ in 0..p.samples {
        positives.push(m.sample_positive(&mut rng, &p.cfg));
    }
    for x in &positives {
        if m.is_zero(x) {
            continue;
        }
        let tx = t.apply(m, x)?;
        if m.is_zero(&tx) {
            return Ok(Verdict::violated(
                Evidence::Sampled(p.samples),
                "(t2) fails: t(x) = 0 for x ≠ 0",
            )
            .with_witness("x", m.render(x)));
        }
    }

    // (t3), bounded: every sampled positive must escape within the bound
    for x in &positives {
        if m.is_zero(x) {
            continue;
        }
        let mut escaped = false;
        for n in 1..=i64::from(p.bound) {
            let nx = m.int_mul(n, x);
            if t.apply(m, &nx)? != nx {
                escaped = true;
                break;
            }
        }
        if !escaped {
            return Ok(Verdict::inconclusive(
                Evidence::Sampled(p.samples),
                p.bound,
                "(t3) undecided: n·x = t(n·x) for every n up to the bound; no escape found and no proof available",
            )
            .with_witness("x", m.render(x)));
        }
    }

    Ok(Verdict::sampled_ok(
        p.samples,
        "custom truncation: no violation of (t1)-(t2) found; every sampled positive escapes (t3) within the bound",
    )
    .with_bound(p.bound))
}

/// A deterministic strictly positive probe: the constant 1 where the model
/// has constants, otherwise the canonical one-site element.
fn canonical_positive<M: LatticeGroup + StructuralFacts>(m: &M) -> M::Elem {
    m.const_elem(&Rat::one()).unwrap_or_else(|| m.unit_site())
}

/// Decides whether two truncations coincide.
///
/// Two meet caps coincide exactly when their caps do (the ranges are the
/// order intervals `[0, e]`, and those determine the caps); a differing pair
/// yields the midpoint witness, where the two truncations provably differ.
/// Mixed comparisons involving custom maps fall back to sampling both the
/// applied values and range membership in both directions.
pub fn truncations_equal<M>(
    m: &M,
    t1: &Truncation<M>,
    t2: &Truncation<M>,
    p: &CheckParams,
) -> Result<Verdict, TruncationError>
where
    M: LatticeGroup + Sampler + StructuralFacts,
{
    t1.validate(m)?;
    t2.validate(m)?;

    let cap_of = |t: &Truncation<M>| -> Option<M::Elem> {
        match t {
            Truncation::MeetCap(e) => Some(e.clone()),
            Truncation::ConstCap(q) => m.const_elem(q),
            Truncation::Custom(_) => None,
        }
    };

    if let (Some(e1), Some(e2)) = (cap_of(t1), cap_of(t2)) {
        if e1 == e2 {
            return Ok(Verdict::structural_ok("caps coincide, truncations are equal"));
        }
        let mid = m.scalar_mul(&Rat::new(1, 2), &m.add(&e1, &e2));
        let v1 = t1.apply(m, &mid)?;
        let v2 = t2.apply(m, &mid)?;
        debug_assert_ne!(v1, v2, "midpoint between distinct caps must separate them");
        return Ok(Verdict::violated(
            Evidence::Structural,
            "caps differ; the midpoint of the caps separates the truncations",
        )
        .with_witness("x", m.render(&mid))
        .with_witness("t1(x)", m.render(&v1))
        .with_witness("t2(x)", m.render(&v2)));
    }

    // Constant caps on models without embedded constants (finitely supported
    // sequences): exact comparison of the constants.
    if let (Truncation::ConstCap(q1), Truncation::ConstCap(q2)) = (t1, t2) {
        if q1 == q2 {
            return Ok(Verdict::structural_ok("equal constant caps"));
        }
        let mid = m.scalar_mul(&(&(q1 + q2) / &Rat::from_int(2)), &m.unit_site());
        let v1 = t1.apply(m, &mid)?;
        let v2 = t2.apply(m, &mid)?;
        debug_assert_ne!(v1, v2);
        return Ok(Verdict::violated(
            Evidence::Structural,
            "constant caps differ; a one-site element between them separates the truncations",
        )
        .with_witness("x", m.render(&mid))
        .with_witness("t1(x)", m.render(&v1))
        .with_witness("t2(x)", m.render(&v2)));
    }

    let mut rng = rng_for(p.seed, 0x7a32);
    let mut probes = vec![canonical_positive(m)];
    for _ in 0..p.samples {
        probes.push(m.sample_positive(&mut rng, &p.cfg));
    }
    for x in &probes {
        let v1 = t1.apply(m, x)?;
        let v2 = t2.apply(m, x)?;
        if v1 != v2 {
            return Ok(Verdict::violated(
                Evidence::Sampled(p.samples),
                "truncation values differ at a sampled element",
            )
            .with_witness("x", m.render(x))
            .with_witness("t1(x)", m.render(&v1))
            .with_witness("t2(x)", m.render(&v2)));
        }
        // ranges must also agree through each other's images
        for (va, tb, name) in [(&v1, t2, "t2"), (&v2, t1, "t1")] {
            if !tb.in_range(m, va)? {
                return Ok(Verdict::violated(
                    Evidence::Sampled(p.samples),
                    format!("range mismatch: an image of one truncation is not fixed by {name}"),
                )
                .with_witness("x", m.render(va)));
            }
        }
    }
    Ok(Verdict::sampled_ok(
        p.samples,
        "no sampled element separates the truncations",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{FinSuppRing, GridRing, LexPlane, LexVec, ScalarRing};

    fn grid() -> GridRing {
        GridRing::with_points(&["a", "b"], Rat::one())
    }

    #[test]
    fn apply_meet_cap_is_pointwise_min() {
        let m = grid();
        let t = Truncation::MeetCap(m.constant(&Rat::one()));
        let x = m.elem(vec![Rat::new(1, 2), Rat::from_int(3)]).unwrap();
        assert_eq!(
            t.apply(&m, &x).unwrap(),
            m.elem(vec![Rat::new(1, 2), Rat::one()]).unwrap()
        );
        assert_eq!(t.apply(&m, &m.zero()).unwrap(), m.zero());
        assert!(t.apply(&m, &m.elem(vec![Rat::from_int(-1), Rat::zero()]).unwrap()).is_err());
    }

    #[test]
    fn apply_lex_meet_cap() {
        let m = LexPlane;
        let t = Truncation::MeetCap(LexVec::of_ints(0, 1));
        let x = LexVec::of_ints(2, -5);
        assert_eq!(t.apply(&m, &x).unwrap(), LexVec::of_ints(0, 1));
    }

    #[test]
    fn in_range_by_fixed_point() {
        let m = grid();
        let t = Truncation::MeetCap(m.constant(&Rat::one()));
        let inside = m.elem(vec![Rat::new(1, 2), Rat::one()]).unwrap();
        let outside = m.elem(vec![Rat::from_int(2), Rat::zero()]).unwrap();
        assert!(t.in_range(&m, &inside).unwrap());
        assert!(!t.in_range(&m, &outside).unwrap());
        assert!(t.in_range(&m, &m.zero()).unwrap());
    }

    #[test]
    fn axioms_structural_verdicts() {
        let p = CheckParams::default();

        let g = grid();
        let cap = Truncation::MeetCap(g.constant(&Rat::one()));
        assert!(check_axioms(&g, &cap, &p).unwrap().is_verified());

        let s = ScalarRing::new(Rat::one()).unwrap();
        let two = Truncation::MeetCap(Rat::from_int(2));
        assert!(check_axioms(&s, &two, &p).unwrap().is_verified());

        let lex = LexPlane;
        let lt = Truncation::MeetCap(LexVec::of_ints(0, 1));
        assert!(check_axioms(&lex, &lt, &p).unwrap().is_verified());

        let fs = FinSuppRing::new(Rat::one()).unwrap();
        let cc = Truncation::ConstCap(Rat::one());
        assert!(check_axioms(&fs, &cc, &p).unwrap().is_verified());
    }

    #[test]
    fn axioms_structural_violations() {
        let p = CheckParams::default();

        // zero coordinate in the cap: the indicator there breaks (t2)
        let g = grid();
        let cap = Truncation::MeetCap(g.elem(vec![Rat::one(), Rat::zero()]).unwrap());
        let v = check_axioms(&g, &cap, &p).unwrap();
        assert!(v.is_violated());
        let wit = g.parse_elem(&v.witness[0].value).unwrap();
        assert_eq!(cap.apply(&g, &wit).unwrap(), g.zero());
        assert_ne!(wit, g.zero());

        // meet cap on finitely supported sequences never satisfies (t2)
        let fs = FinSuppRing::new(Rat::one()).unwrap();
        let fcap = Truncation::MeetCap(fs.single(3, Rat::one()));
        let v = check_axioms(&fs, &fcap, &p).unwrap();
        assert!(v.is_violated());
        let wit = fs.parse_elem(&v.witness[0].value).unwrap();
        assert_eq!(fcap.apply(&fs, &wit).unwrap(), fs.zero());

        // lex cap with positive first coordinate: (0,1) never escapes (t3)
        let lex = LexPlane;
        let lt = Truncation::MeetCap(LexVec::of_ints(1, 0));
        let v = check_axioms(&lex, &lt, &p).unwrap();
        assert!(v.is_violated());
        let wit = lex.parse_elem(&v.witness[0].value).unwrap();
        assert_eq!(wit, LexVec::of_ints(0, 1));
        for n in 1..=64 {
            let nx = lex.int_mul(n, &wit);
            assert_eq!(lt.apply(&lex, &nx).unwrap(), nx);
        }
    }

    #[test]
    fn custom_zero_map_fails_t2_with_replayable_witness() {
        let g = grid();
        let t: Truncation<GridRing> = Truncation::custom(BaseMap::Zero);
        let v = check_axioms(&g, &t, &CheckParams::default()).unwrap();
        assert!(v.is_violated());
        assert!(v.message.contains("(t2)"));
        let wit = g.parse_elem(&v.witness[0].value).unwrap();
        assert_eq!(wit, g.constant(&Rat::one()));
        assert_eq!(t.apply(&g, &wit).unwrap(), g.zero());
    }

    #[test]
    fn custom_identity_map_is_inconclusive_with_bound() {
        let g = grid();
        let t: Truncation<GridRing> = Truncation::custom(BaseMap::Identity);
        let v = check_axioms(&g, &t, &CheckParams::default()).unwrap();
        assert_eq!(v.status, crate::verdict::Status::Inconclusive);
        assert_eq!(v.bound, Some(64));
    }

    #[test]
    fn equality_of_caps() {
        let g = grid();
        let p = CheckParams::default();
        let meet1 = Truncation::MeetCap(g.constant(&Rat::one()));
        let const1 = Truncation::ConstCap(Rat::one());
        assert!(truncations_equal(&g, &meet1, &const1, &p).unwrap().is_verified());
        assert!(truncations_equal(&g, &meet1, &meet1, &p).unwrap().is_verified());

        let half = Truncation::MeetCap(g.constant(&Rat::new(1, 2)));
        let v = truncations_equal(&g, &meet1, &half, &p).unwrap();
        assert!(v.is_violated());
        // midpoint of the caps
        assert_eq!(
            g.parse_elem(&v.witness[0].value).unwrap(),
            g.constant(&Rat::new(3, 4))
        );
    }

    #[test]
    fn validation_errors() {
        let g = grid();
        let bad = Truncation::MeetCap(g.elem(vec![Rat::from_int(-1), Rat::one()]).unwrap());
        assert!(bad.validate(&g).is_err());
        assert!(Truncation::<GridRing>::ConstCap(Rat::zero()).validate(&g).is_err());
        // constant caps make no sense on the lex plane
        let lex = LexPlane;
        assert!(matches!(
            Truncation::<LexPlane>::ConstCap(Rat::one()).validate(&lex),
            Err(TruncationError::Unsupported(_))
        ));
    }
}
