//! The contract every concrete model satisfies: a divisible abelian
//! lattice-ordered group (a vector lattice over the rationals), optionally
//! with a ring multiplication whose positive cone is closed under products.
//!
//! Models implement `add`/`neg`/`scalar_mul`/`join`/`meet`/`leq` directly;
//! positive part, negative part and absolute value are derived here once:
//! `x⁺ = x ∨ 0`, `x⁻ = (−x) ∨ 0`, `|x| = x ∨ (−x)`.

use crate::rat::Rat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Errors raised while constructing models or parsing their elements.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown model kind `{0}`")]
    UnknownKind(String),
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(Rat),
    #[error("carrier must not be empty")]
    EmptyCarrier,
    #[error("duplicate carrier label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid carrier label `{0}`")]
    InvalidLabel(String),
    #[error("field `{field}` is not accepted by model kind `{kind}`")]
    UnexpectedField { kind: String, field: String },
    #[error("model kind `{kind}` requires field `{field}`")]
    MissingField { kind: String, field: String },
    #[error("element does not fit the model: {0}")]
    ElementMismatch(String),
    #[error("cannot parse element `{input}`: {reason}")]
    ElementParse { input: String, reason: String },
}

impl ModelError {
    pub fn parse(input: &str, reason: impl Into<String>) -> Self {
        ModelError::ElementParse {
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}

/// The registered model families. Structural (exact) decision procedures are
/// keyed on this tag; everything else falls back to seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFamily {
    Grid,
    FinSupp,
    Lex,
    Scalar,
    ZeroMul,
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModelFamily::Grid => "grid",
            ModelFamily::FinSupp => "finsupp",
            ModelFamily::Lex => "lex",
            ModelFamily::Scalar => "scalar",
            ModelFamily::ZeroMul => "zeromul",
        };
        f.write_str(name)
    }
}

/// A divisible abelian lattice-ordered group.
///
/// All operations are pure; elements are immutable plain data. Models are
/// cheap to clone and safe to share across threads.
pub trait LatticeGroup {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn scalar_mul(&self, c: &Rat, x: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    /// Pointwise meet with the constant `q`, for models where "constant q"
    /// makes sense even when it is not an element (finitely supported
    /// sequences). `None` means the model has no such operation.
    fn meet_const(&self, _q: &Rat, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// The constant function `q` as an element, when the model contains it.
    fn const_elem(&self, _q: &Rat) -> Option<Self::Elem> {
        None
    }

    fn render(&self, x: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ModelError>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn int_mul(&self, n: i64, x: &Self::Elem) -> Self::Elem {
        self.scalar_mul(&Rat::from_int(n), x)
    }

    /// `x ∨ 0`.
    fn pos_part(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.zero())
    }

    /// `(−x) ∨ 0`, so that `x = pos_part(x) − neg_part(x)` exactly.
    fn neg_part(&self, x: &Self::Elem) -> Self::Elem {
        self.pos_part(&self.neg(x))
    }

    /// `x ∨ (−x)`.
    fn abs(&self, x: &Self::Elem) -> Self::Elem {
        self.join(x, &self.neg(x))
    }

    fn is_positive(&self, x: &Self::Elem) -> bool {
        self.leq(&self.zero(), x)
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

/// A lattice-ordered ring over a [`LatticeGroup`].
pub trait LatticeRing: LatticeGroup {
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// The multiplicative identity, when the ring has one.
    fn identity(&self) -> Option<Self::Elem>;
}

/// Models that are part of the registered catalogue.
pub trait Registered {
    fn family(&self) -> ModelFamily;
}

/// Exact structural decisions the registered models can make about their own
/// order. Every method is a decision procedure, not a heuristic: `None`
/// means "provably none exists", and any returned witness re-fails the
/// property it refutes.
pub trait StructuralFacts: LatticeGroup {
    /// Some `x > 0` with `e ∧ x = 0`, if one exists (so `e` fails to be a
    /// weak unit).
    fn disjoint_positive_witness(&self, e: &Self::Elem) -> Option<Self::Elem>;

    /// Some `x > 0` with `n·x ≤ e` for every positive integer `n`, if one
    /// exists.
    fn dominated_multiples_witness(&self, e: &Self::Elem) -> Option<Self::Elem>;

    /// A pair `x, y > 0` with `n·x ≤ y` for every positive integer `n`, if
    /// one exists (the model is then not Archimedean).
    fn archimedean_counterexample(&self) -> Option<(Self::Elem, Self::Elem)>;

    /// Largest coordinate value of `x`, for models with pointwise structure.
    fn sup_value(&self, _x: &Self::Elem) -> Option<Rat> {
        None
    }

    /// A canonical strictly positive element concentrated at one site.
    fn unit_site(&self) -> Self::Elem;
}

/// Exact structural facts about a registered ring's multiplication.
pub trait RingFacts: LatticeRing {
    /// `Some(c)` when the multiplication is pointwise `(x·y)(t) = c·x(t)·y(t)`
    /// with `c > 0`.
    fn pointwise_scale(&self) -> Option<Rat>;

    /// A nonzero `x` with `x·x = 0`, if one exists (exact decision).
    fn nilpotent_witness(&self) -> Option<Self::Elem>;
}

/// Bounds for the seeded sample generators: numerators and denominators of
/// sampled rationals stay within `magnitude`.
#[derive(Debug, Clone)]
pub struct SampleCfg {
    pub magnitude: i64,
}

impl Default for SampleCfg {
    fn default() -> Self {
        SampleCfg { magnitude: 32 }
    }
}

/// Seeded, bounded element generation. Given the same rng state and config,
/// a model always produces the same element.
pub trait Sampler: LatticeGroup {
    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Self::Elem;

    fn sample_positive(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Self::Elem {
        let x = self.sample(rng, cfg);
        self.pos_part(&x)
    }
}

pub fn sample_rat(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Rat {
    let m = cfg.magnitude.max(1);
    let numer = rng.random_range(-m..=m);
    let denom = rng.random_range(1..=m);
    Rat::new(numer, denom)
}

pub fn sample_positive_rat(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Rat {
    let m = cfg.magnitude.max(1);
    let numer = rng.random_range(0..=m);
    let denom = rng.random_range(1..=m);
    Rat::new(numer, denom)
}

pub fn sample_nonzero_rat(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Rat {
    let m = cfg.magnitude.max(1);
    let numer = rng.random_range(1..=m);
    let denom = rng.random_range(1..=m);
    let sign = if rng.random_range(0..2) == 0 { 1 } else { -1 };
    Rat::new(sign * numer, denom)
}

/// Strictly positive rational, bounded by the configured magnitude.
pub fn sample_strictly_positive_rat(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> Rat {
    let m = cfg.magnitude.max(1);
    let numer = rng.random_range(1..=m);
    let denom = rng.random_range(1..=m);
    Rat::new(numer, denom)
}

/// Builds the deterministic rng for a (seed, stream) pair. Separate streams
/// keep independent checks independent while remaining reproducible.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(stream))
}
