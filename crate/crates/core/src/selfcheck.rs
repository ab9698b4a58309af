//! Aggregated invariant suites over the registered models, runnable as a
//! deterministic self-test. Every check is seeded; identical parameters give
//! identical verdict lists, independent of how the sections are scheduled.

use crate::classify::{
    archimedean_witness_group, archimedean_witness_unitized, classify_unitization,
    cone_closure_escape, find_infinitesimal, is_almost_f_ring, is_f_ring,
    is_idempotent_dominated_scaled, is_reduced, lemma_semi_check, positive_squares_check,
    reduced_commutation_check, ClassifyParams, Outcome, Witness,
};
use crate::lattice::{
    rng_for, sample_rat, LatticeGroup, LatticeRing, Registered, RingFacts, SampleCfg, Sampler,
    StructuralFacts,
};
use crate::models::{Coord2, FinSuppRing, GridRing, LexPlane, LexVec, ScalarRing, ZeroMulRing};
use crate::orthorep::{
    decompose_orthomorphism, embed_j, extend_j_tau, extension_positivity_check,
    is_truncation_homomorphism, j_truncation_hom_check, stone_check, stone_function,
    FunctionModel, MultiplierSpace,
};
use crate::rat::Rat;
use crate::truncation::{check_axioms, truncations_equal, CheckParams, Truncation};
use crate::unitization::{Unitization, Unitized};
use crate::verdict::{Evidence, NamedVerdict, Verdict};
use rand_chacha::ChaCha8Rng;

/// Parameters of a full self-test run.
#[derive(Debug, Clone)]
pub struct SelfTestParams {
    pub seed: u64,
    pub samples: u32,
    pub bound: u32,
    pub cfg: SampleCfg,
    /// Mis-sign one unitization formula so the run demonstrates sensitivity.
    pub inject_fault: bool,
}

impl Default for SelfTestParams {
    fn default() -> Self {
        SelfTestParams {
            seed: 0,
            samples: 1000,
            bound: 64,
            cfg: SampleCfg::default(),
            inject_fault: false,
        }
    }
}

impl SelfTestParams {
    pub fn seeded(seed: u64) -> Self {
        SelfTestParams {
            seed,
            ..Default::default()
        }
    }

    fn classify_params(&self) -> ClassifyParams {
        ClassifyParams {
            seed: self.seed,
            samples: self.samples,
            cone_samples: self.samples,
            bound: self.bound,
            cfg: self.cfg.clone(),
        }
    }

    fn check_params(&self) -> CheckParams {
        CheckParams {
            seed: self.seed,
            samples: self.samples,
            bound: self.bound,
            cfg: self.cfg.clone(),
        }
    }
}

/// Stable per-property rng stream derived from the property name.
fn stream_of(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

type WitnessList = Vec<(String, String)>;

fn sampled_property(
    name: &str,
    p: &SelfTestParams,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), WitnessList>,
) -> NamedVerdict {
    let mut rng = rng_for(p.seed, stream_of(name));
    for _ in 0..p.samples {
        if let Err(witness) = case(&mut rng) {
            let mut v = Verdict::violated(Evidence::Sampled(p.samples), "property failed");
            for (n, val) in witness {
                v = v.with_witness(n, val);
            }
            return NamedVerdict::new(name, v);
        }
    }
    NamedVerdict::new(name, Verdict::sampled_ok(p.samples, "holds on all samples"))
}

fn expect(name: &str, ok: bool, detail: impl Into<String>) -> NamedVerdict {
    let v = if ok {
        Verdict::structural_ok(detail)
    } else {
        Verdict::violated(Evidence::Structural, detail)
    };
    NamedVerdict::new(name, v)
}

// ---------------------------------------------------------------------------
// rationals

fn rat_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();
    out.push(sampled_property("rat/parse-render-round-trip", p, |rng| {
        let q = sample_rat(rng, &SampleCfg { magnitude: 1 << 20 });
        if Rat::parse(&q.render()) == Ok(q.clone()) {
            Ok(())
        } else {
            Err(vec![("q".into(), q.render())])
        }
    }));
    out.push(sampled_property("rat/field-identities", p, |rng| {
        let a = sample_rat(rng, &SampleCfg::default());
        let b = sample_rat(rng, &SampleCfg::default());
        let ok = &a + &b == &b + &a
            && (&a - &b) + &b == a
            && &a * &b == &b * &a
            && (b.is_zero() || &(&a / &b) * &b == a);
        if ok {
            Ok(())
        } else {
            Err(vec![("a".into(), a.render()), ("b".into(), b.render())])
        }
    }));
    out
}

// ---------------------------------------------------------------------------
// lattice-group contract

fn group_suite<M>(label: &str, m: &M, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: LatticeGroup + Sampler,
{
    let mut out = Vec::new();

    out.push(sampled_property(&format!("{label}/parts"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let pos = m.pos_part(&x);
        let neg = m.neg_part(&x);
        let ok = m.is_zero(&m.meet(&pos, &neg))
            && m.sub(&pos, &neg) == x
            && m.abs(&x) == m.add(&pos, &neg);
        if ok {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x))])
        }
    }));

    out.push(sampled_property(
        &format!("{label}/translation-invariance"),
        p,
        |rng| {
            let x = m.sample(rng, &p.cfg);
            let y = m.sample(rng, &p.cfg);
            let z = m.sample(rng, &p.cfg);
            let ok = m.add(&m.join(&x, &y), &z) == m.join(&m.add(&x, &z), &m.add(&y, &z))
                && m.add(&m.meet(&x, &y), &z) == m.meet(&m.add(&x, &z), &m.add(&y, &z));
            if ok {
                Ok(())
            } else {
                Err(vec![
                    ("x".into(), m.render(&x)),
                    ("y".into(), m.render(&y)),
                    ("z".into(), m.render(&z)),
                ])
            }
        },
    ));

    out.push(sampled_property(&format!("{label}/divisibility"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        for n in 1..=16i64 {
            let frac = m.scalar_mul(&Rat::new(1, n), &x);
            if m.int_mul(n, &frac) != x {
                return Err(vec![("x".into(), m.render(&x)), ("n".into(), n.to_string())]);
            }
        }
        Ok(())
    }));

    out
}

fn group_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();
    out.extend(group_suite("group/grid", &grid4(), p));
    out.extend(group_suite("group/finsupp", &FinSuppRing::new(Rat::one()).unwrap(), p));
    out.extend(group_suite("group/lex", &LexPlane, p));
    out.extend(group_suite("group/scalar", &ScalarRing::new(Rat::one()).unwrap(), p));
    out.extend(group_suite("group/zeromul", &ZeroMulRing, p));
    out
}

// ---------------------------------------------------------------------------
// ring models

fn ring_suite<M>(label: &str, m: &M, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: LatticeRing + RingFacts + Sampler,
{
    let mut out = Vec::new();

    out.push(sampled_property(&format!("{label}/cone-closure"), p, |rng| {
        let x = m.sample_positive(rng, &p.cfg);
        let y = m.sample_positive(rng, &p.cfg);
        if m.is_positive(&m.mul(&x, &y)) {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        }
    }));

    out.push(sampled_property(&format!("{label}/commutativity"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let y = m.sample(rng, &p.cfg);
        if m.mul(&x, &y) == m.mul(&y, &x) {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        }
    }));

    if let Some(e) = m.identity() {
        out.push(sampled_property(&format!("{label}/identity-laws"), p, |rng| {
            let x = m.sample(rng, &p.cfg);
            if m.mul(&e, &x) == x && m.mul(&x, &e) == x {
                Ok(())
            } else {
                Err(vec![("x".into(), m.render(&x))])
            }
        }));
    }

    match m.nilpotent_witness() {
        None => out.push(sampled_property(&format!("{label}/reduced"), p, |rng| {
            let x = m.sample(rng, &p.cfg);
            if m.is_zero(&m.mul(&x, &x)) && !m.is_zero(&x) {
                Err(vec![("x".into(), m.render(&x))])
            } else {
                Ok(())
            }
        })),
        Some(w) => out.push(expect(
            &format!("{label}/nilpotent-witness"),
            m.is_zero(&m.mul(&w, &w)) && !m.is_zero(&w),
            format!("x = {} squares to zero", m.render(&w)),
        )),
    }

    // Every sampled positive pair either has x = 0 or some bounded multiple
    // of x escaping above y; the bound follows from the sample magnitudes.
    let desk_bound = p.cfg.magnitude * p.cfg.magnitude + 1;
    out.push(sampled_property(
        &format!("{label}/archimedean-desk-scale"),
        p,
        |rng| {
            let x = m.sample_positive(rng, &p.cfg);
            let y = m.sample_positive(rng, &p.cfg);
            if m.is_zero(&x) {
                return Ok(());
            }
            for n in 1..=desk_bound {
                if !m.leq(&m.int_mul(n, &x), &y) {
                    return Ok(());
                }
            }
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        },
    ));

    out
}

fn ring_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();
    out.extend(ring_suite("ring/grid-c2", &grid_c2(), p));
    out.extend(ring_suite("ring/finsupp", &FinSuppRing::new(Rat::one()).unwrap(), p));
    out.extend(ring_suite("ring/scalar-c2", &ScalarRing::new(Rat::from_int(2)).unwrap(), p));
    out.extend(ring_suite("ring/zeromul", &ZeroMulRing, p));
    out
}

// ---------------------------------------------------------------------------
// truncations

fn truncation_suite<M>(label: &str, m: &M, t: &Truncation<M>, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: LatticeGroup + Sampler + StructuralFacts,
{
    let mut out = Vec::new();

    out.push(NamedVerdict::new(
        format!("{label}/axioms"),
        check_axioms(m, t, &p.check_params()).expect("supported configuration"),
    ));

    out.push(sampled_property(&format!("{label}/t1-t2-samples"), p, |rng| {
        let x = m.sample_positive(rng, &p.cfg);
        let y = m.sample_positive(rng, &p.cfg);
        let tx = t.apply(m, &x).expect("positive");
        let ty = t.apply(m, &y).expect("positive");
        let t1 = m.leq(&m.meet(&x, &ty), &tx) && m.leq(&tx, &x);
        let t2 = !m.is_zero(&tx) || m.is_zero(&x);
        if t1 && t2 {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        }
    }));

    out.push(sampled_property(&format!("{label}/idempotent"), p, |rng| {
        let x = m.sample_positive(rng, &p.cfg);
        let tx = t.apply(m, &x).expect("positive");
        if t.apply(m, &tx).expect("positive") == tx {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x))])
        }
    }));

    out.push(sampled_property(
        &format!("{label}/range-downward-closed"),
        p,
        |rng| {
            let z = m.sample_positive(rng, &p.cfg);
            let x = t.apply(m, &z).expect("positive");
            let y = m.meet(&x, &m.sample_positive(rng, &p.cfg));
            let ok = t.in_range(m, &x).expect("positive") && t.in_range(m, &y).expect("positive");
            if ok {
                Ok(())
            } else {
                Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
            }
        },
    ));

    out.push(expect(
        &format!("{label}/zero-fixed"),
        t.apply(m, &m.zero()).expect("zero is positive") == m.zero(),
        "t(0) = 0",
    ));

    out
}

fn truncation_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();

    let g = grid4();
    out.extend(truncation_suite(
        "truncation/grid-cap1",
        &g,
        &Truncation::MeetCap(g.constant(&Rat::one())),
        p,
    ));
    let uneven = Truncation::MeetCap(
        g.elem(vec![
            Rat::new(1, 2),
            Rat::one(),
            Rat::from_int(2),
            Rat::one(),
        ])
        .unwrap(),
    );
    out.extend(truncation_suite("truncation/grid-uneven-cap", &g, &uneven, p));

    let fs = FinSuppRing::new(Rat::one()).unwrap();
    out.extend(truncation_suite(
        "truncation/finsupp-constcap1",
        &fs,
        &Truncation::ConstCap(Rat::one()),
        p,
    ));

    let lex = LexPlane;
    out.extend(truncation_suite(
        "truncation/lex-cap01",
        &lex,
        &Truncation::MeetCap(LexVec::of_ints(0, 1)),
        p,
    ));

    let s = ScalarRing::new(Rat::one()).unwrap();
    out.extend(truncation_suite(
        "truncation/scalar-cap2",
        &s,
        &Truncation::MeetCap(Rat::from_int(2)),
        p,
    ));

    // cap equality agrees with the caps themselves
    let cp = p.check_params();
    out.push(NamedVerdict::new(
        "truncation/equality-meet-vs-const",
        truncations_equal(
            &g,
            &Truncation::MeetCap(g.constant(&Rat::one())),
            &Truncation::ConstCap(Rat::one()),
            &cp,
        )
        .expect("supported"),
    ));
    let distinct = truncations_equal(
        &g,
        &Truncation::MeetCap(g.constant(&Rat::one())),
        &Truncation::MeetCap(g.constant(&Rat::new(1, 2))),
        &cp,
    )
    .expect("supported");
    out.push(expect(
        "truncation/equality-distinguishes-caps",
        distinct.is_violated(),
        "distinct caps are reported unequal with a separating witness",
    ));

    out
}

// ---------------------------------------------------------------------------
// unitization order structure

fn order_suite<M>(label: &str, ctx: &Unitization<'_, M>, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: LatticeGroup + Sampler,
{
    let m = ctx.model();
    let mut out = Vec::new();

    out.push(sampled_property(
        &format!("{label}/positive-implies-nonneg-rational-part"),
        p,
        |rng| {
            let u = ctx.sample_positive_u(rng, &p.cfg);
            if !ctx.is_positive_u(&u) || u.q.is_negative() {
                return Err(vec![("u".into(), ctx.render_u(&u))]);
            }
            let w = Unitized::new(m.sample(rng, &p.cfg), -crate::lattice::sample_strictly_positive_rat(rng, &p.cfg));
            if ctx.is_positive_u(&w) {
                return Err(vec![("u".into(), ctx.render_u(&w))]);
            }
            Ok(())
        },
    ));

    out.push(sampled_property(&format!("{label}/weak-unit"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        if ctx.is_zero_u(&u) {
            return Ok(());
        }
        let met = ctx.meet_u(&ctx.abs_u(&u), &ctx.one_u());
        if ctx.is_zero_u(&met) {
            Err(vec![("u".into(), ctx.render_u(&u))])
        } else {
            Ok(())
        }
    }));

    if *ctx.scale() == Rat::one() {
        out.push(sampled_property(
            &format!("{label}/meet-with-one-recovers-truncation"),
            p,
            |rng| {
                let x = m.sample_positive(rng, &p.cfg);
                let met = ctx.meet_u(&ctx.one_u(), &ctx.from_model(x.clone()));
                let expected = ctx.from_model(ctx.truncation().apply(m, &x).expect("positive"));
                if met == expected {
                    Ok(())
                } else {
                    Err(vec![
                        ("x".into(), m.render(&x)),
                        ("1∧x".into(), ctx.render_u(&met)),
                    ])
                }
            },
        ));
    }

    out.push(sampled_property(&format!("{label}/ideal-convexity"), p, |rng| {
        let bound = ctx.from_model(m.sample_positive(rng, &p.cfg));
        let u = ctx.meet_u(&ctx.sample_positive_u(rng, &p.cfg), &bound);
        // 0 ≤ u ≤ (y, 0) must pin the rational part to zero
        if ctx.is_positive_u(&u) && ctx.leq_u(&u, &bound) && u.q.is_zero() {
            Ok(())
        } else {
            Err(vec![
                ("u".into(), ctx.render_u(&u)),
                ("bound".into(), ctx.render_u(&bound)),
            ])
        }
    }));

    out.push(sampled_property(&format!("{label}/parts-consistency"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let pos = ctx.pos_part_u(&u);
        let neg = ctx.neg_part_u(&u);
        let ok = ctx.sub_u(&pos, &neg) == u
            && ctx.abs_u(&u) == ctx.add_u(&pos, &neg)
            && ctx.is_zero_u(&ctx.meet_u(&pos, &neg))
            && ctx.is_positive_u(&pos)
            && ctx.leq_u(&u, &pos);
        if ok {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u))])
        }
    }));

    out.push(sampled_property(&format!("{label}/join-meet-lattice"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        let j = ctx.join_u(&u, &v);
        let w = ctx.meet_u(&u, &v);
        let ok = ctx.leq_u(&u, &j)
            && ctx.leq_u(&v, &j)
            && ctx.leq_u(&w, &u)
            && ctx.leq_u(&w, &v)
            && ctx.add_u(&j, &w) == ctx.add_u(&u, &v)
            && ctx.join_u(&u, &u) == u;
        if ok {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u)), ("v".into(), ctx.render_u(&v))])
        }
    }));

    out.push(sampled_property(&format!("{label}/least-upper-bound"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        let j = ctx.join_u(&u, &v);
        let w = ctx.sample_u(rng, &p.cfg);
        if ctx.leq_u(&u, &w) && ctx.leq_u(&v, &w) && !ctx.leq_u(&j, &w) {
            Err(vec![
                ("u".into(), ctx.render_u(&u)),
                ("v".into(), ctx.render_u(&v)),
                ("w".into(), ctx.render_u(&w)),
            ])
        } else {
            Ok(())
        }
    }));

    out
}

fn ring_unitization_suite<M>(
    label: &str,
    ctx: &Unitization<'_, M>,
    p: &SelfTestParams,
) -> Vec<NamedVerdict>
where
    M: LatticeRing + Sampler,
{
    let m = ctx.model();
    let mut out = Vec::new();

    out.push(sampled_property(&format!("{label}/unit-element"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let one = ctx.one_u();
        if ctx.multiply_u(&one, &u) == u && ctx.multiply_u(&u, &one) == u {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u))])
        }
    }));

    out.push(sampled_property(&format!("{label}/ring-ideal"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let u = ctx.sample_u(rng, &p.cfg);
        let prod = ctx.multiply_u(&ctx.from_model(x.clone()), &u);
        let flipped = ctx.multiply_u(&u, &ctx.from_model(x.clone()));
        if prod.q.is_zero() && flipped.q.is_zero() {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("u".into(), ctx.render_u(&u))])
        }
    }));

    out.push(sampled_property(&format!("{label}/embedded-product"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let y = m.sample(rng, &p.cfg);
        let prod = ctx.multiply_u(&ctx.from_model(x.clone()), &ctx.from_model(y.clone()));
        if prod == ctx.from_model(m.mul(&x, &y)) {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        }
    }));

    out
}

/// On a unital model with the identity as truncation cap, `1 − e` is
/// disjoint from everything in the model.
fn polar_suite<M>(label: &str, ctx: &Unitization<'_, M>, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: LatticeRing + Sampler,
{
    let m = ctx.model();
    let e = m.identity().expect("polar suite runs on unital models");
    let one_minus_e = ctx.abs_u(&Unitized::new(m.neg(&e), Rat::one()));
    vec![sampled_property(&format!("{label}/polar-of-ring-part"), p, |rng| {
        let y = m.sample(rng, &p.cfg);
        let met = ctx.meet_u(&one_minus_e, &ctx.from_model(m.abs(&y)));
        if ctx.is_zero_u(&met) {
            Ok(())
        } else {
            Err(vec![("y".into(), m.render(&y))])
        }
    })]
}

fn grid4() -> GridRing {
    GridRing::with_points(&["-1", "0", "1", "2"], Rat::one())
}

fn grid_c2() -> GridRing {
    GridRing::with_points(&["a", "b", "c"], Rat::from_int(2))
}

fn unitization_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();

    let g = grid4();
    let cap1 = Truncation::MeetCap(g.constant(&Rat::one()));
    let mut gctx = Unitization::unit_scale(&g, cap1).unwrap();
    if p.inject_fault {
        gctx = gctx.with_injected_fault();
    }
    out.extend(order_suite("unitization/grid-cap1", &gctx, p));
    out.extend(ring_unitization_suite("unitization/grid-cap1", &gctx, p));
    out.extend(polar_suite("unitization/grid-cap1", &gctx, p));

    let uneven = Truncation::MeetCap(
        g.elem(vec![Rat::new(1, 2), Rat::one(), Rat::from_int(2), Rat::one()]).unwrap(),
    );
    let gctx2 = Unitization::unit_scale(&g, uneven).unwrap();
    out.extend(order_suite("unitization/grid-uneven-cap", &gctx2, p));

    let fs = FinSuppRing::new(Rat::one()).unwrap();
    let fctx = Unitization::unit_scale(&fs, Truncation::ConstCap(Rat::one())).unwrap();
    out.extend(order_suite("unitization/finsupp", &fctx, p));
    out.extend(ring_unitization_suite("unitization/finsupp", &fctx, p));

    let lex = LexPlane;
    let lctx = Unitization::unit_scale(&lex, Truncation::MeetCap(LexVec::of_ints(0, 1))).unwrap();
    out.extend(order_suite("unitization/lex", &lctx, p));

    let s = ScalarRing::new(Rat::one()).unwrap();
    let sctx = Unitization::unit_scale(&s, Truncation::MeetCap(Rat::one())).unwrap();
    out.extend(order_suite("unitization/scalar-cap1", &sctx, p));
    out.extend(ring_unitization_suite("unitization/scalar-cap1", &sctx, p));
    out.extend(polar_suite("unitization/scalar-cap1", &sctx, p));

    let sctx2 = Unitization::unit_scale(&s, Truncation::MeetCap(Rat::from_int(2))).unwrap();
    out.extend(order_suite("unitization/scalar-cap2", &sctx2, p));

    // scaled variant: only the cone shape and the scaled criterion are
    // asserted, so run the order laws that survive any scale
    let scaled = Unitization::new(&g, Truncation::MeetCap(g.constant(&Rat::one())), Rat::from_int(2)).unwrap();
    out.push(sampled_property("unitization/grid-scaled/cone-consistency", p, |rng| {
        let u = scaled.sample_positive_u(rng, &p.cfg);
        let pos = scaled.pos_part_u(&u);
        if scaled.is_positive_u(&u) && pos == u {
            Ok(())
        } else {
            Err(vec![("u".into(), scaled.render_u(&u))])
        }
    }));
    out.push(sampled_property("unitization/grid-scaled/parts-consistency", p, |rng| {
        let u = scaled.sample_u(rng, &p.cfg);
        let pos = scaled.pos_part_u(&u);
        let neg = scaled.neg_part_u(&u);
        let ok = scaled.sub_u(&pos, &neg) == u
            && scaled.abs_u(&u) == scaled.add_u(&pos, &neg)
            && scaled.is_zero_u(&scaled.meet_u(&pos, &neg));
        if ok {
            Ok(())
        } else {
            Err(vec![("u".into(), scaled.render_u(&u))])
        }
    }));

    out
}

// ---------------------------------------------------------------------------
// the independent grid oracle

/// Pointwise semantics for unitized grid elements over a cap-1, scale-1
/// context: `(g, q)` is the function with value `g(t) + q` at each carrier
/// point and `q` at the extra point at infinity. Computed with nothing but
/// coordinate arithmetic, independent of the truncation formulas.
pub mod grid_oracle {
    use crate::models::{GridFn, GridRing};
    use crate::rat::{rat_max, rat_min, Rat};
    use crate::unitization::Unitized;

    pub fn values(u: &Unitized<GridFn>) -> Vec<Rat> {
        let mut vals: Vec<Rat> = u.g.0.iter().map(|v| v + &u.q).collect();
        vals.push(u.q.clone());
        vals
    }

    fn rebuild(vals: &[Rat]) -> Unitized<GridFn> {
        let q = vals.last().expect("infinity point").clone();
        let g = GridFn(vals[..vals.len() - 1].iter().map(|v| v - &q).collect());
        Unitized::new(g, q)
    }

    pub fn is_positive(u: &Unitized<GridFn>) -> bool {
        values(u).iter().all(|v| !v.is_negative())
    }

    pub fn pos_part(u: &Unitized<GridFn>) -> Unitized<GridFn> {
        let vals: Vec<Rat> = values(u)
            .into_iter()
            .map(|v| rat_max(&v, &Rat::zero()))
            .collect();
        rebuild(&vals)
    }

    pub fn abs(u: &Unitized<GridFn>) -> Unitized<GridFn> {
        let vals: Vec<Rat> = values(u).into_iter().map(|v| v.abs()).collect();
        rebuild(&vals)
    }

    pub fn join(u: &Unitized<GridFn>, v: &Unitized<GridFn>) -> Unitized<GridFn> {
        let vals: Vec<Rat> = values(u)
            .iter()
            .zip(values(v).iter())
            .map(|(a, b)| rat_max(a, b))
            .collect();
        rebuild(&vals)
    }

    pub fn meet(u: &Unitized<GridFn>, v: &Unitized<GridFn>) -> Unitized<GridFn> {
        let vals: Vec<Rat> = values(u)
            .iter()
            .zip(values(v).iter())
            .map(|(a, b)| rat_min(a, b))
            .collect();
        rebuild(&vals)
    }

    /// The only contexts whose order the oracle models.
    pub fn applicable(m: &GridRing, cap_is_one: bool, scale: &Rat) -> bool {
        let _ = m;
        cap_is_one && *scale == Rat::one()
    }
}

fn oracle_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let g = grid4();
    let cap = Truncation::MeetCap(g.constant(&Rat::one()));
    let mut ctx = Unitization::unit_scale(&g, cap).unwrap();
    if p.inject_fault {
        ctx = ctx.with_injected_fault();
    }
    assert!(grid_oracle::applicable(&g, true, ctx.scale()));

    let mut out = Vec::new();
    out.push(sampled_property("oracle/is-positive", p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        if ctx.is_positive_u(&u) == grid_oracle::is_positive(&u) {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u))])
        }
    }));
    out.push(sampled_property("oracle/pos-part", p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        if ctx.pos_part_u(&u) == grid_oracle::pos_part(&u) {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u))])
        }
    }));
    out.push(sampled_property("oracle/abs", p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        if ctx.abs_u(&u) == grid_oracle::abs(&u) {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u))])
        }
    }));
    out.push(sampled_property("oracle/join", p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        if ctx.join_u(&u, &v) == grid_oracle::join(&u, &v) {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u)), ("v".into(), ctx.render_u(&v))])
        }
    }));
    out.push(sampled_property("oracle/meet", p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        if ctx.meet_u(&u, &v) == grid_oracle::meet(&u, &v) {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u)), ("v".into(), ctx.render_u(&v))])
        }
    }));
    out
}

// ---------------------------------------------------------------------------
// classification coherence

fn coherence_checks<M>(
    label: &str,
    m: &M,
    t: &Truncation<M>,
    c: &Rat,
    p: &SelfTestParams,
) -> Vec<NamedVerdict>
where
    M: LatticeRing + RingFacts + StructuralFacts + Registered + Sampler,
{
    let cp = p.classify_params();
    let mut out = Vec::new();
    let cls = classify_unitization(m, t, c, &cp).expect("supported configuration");
    match cls.outcome {
        Outcome::IsLRing => {
            out.push(expect(
                &format!("{label}/accepted-means-criteria-verified"),
                cls.range.is_verified()
                    && cls.reduced.is_verified()
                    && cls.f_ring.is_verified()
                    && cls.cone.as_ref().is_some_and(|v| v.is_verified()),
                "all criteria verified and the cone sampler found no escape",
            ));
        }
        Outcome::NotLRing => {
            let replay = match &cls.witness {
                Some(Witness::RangeMismatch(w)) => {
                    let in_range = t.in_range(m, w).expect("witness is positive");
                    let dominated = is_idempotent_dominated_scaled(m, w, c);
                    in_range != dominated
                }
                Some(Witness::ConeEscape(u, v)) => {
                    let ctx = Unitization::new(m, t.clone(), c.clone()).expect("validated");
                    ctx.is_positive_u(u)
                        && ctx.is_positive_u(v)
                        && !ctx.is_positive_u(&ctx.multiply_u(u, v))
                }
                None => false,
            };
            out.push(expect(
                &format!("{label}/rejection-witness-replays"),
                replay,
                "the rejection witness re-fails its defining check",
            ));
        }
    }
    out
}

fn classify_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let cp = p.classify_params();
    let mut out = Vec::new();

    let g2 = grid_c2();
    let one = Rat::one();
    out.extend(coherence_checks("classify/grid-c2-stone-cap", &g2, &Truncation::ConstCap(Rat::new(1, 2)), &one, p));
    out.extend(coherence_checks("classify/grid-c2-cap1", &g2, &Truncation::ConstCap(Rat::one()), &one, p));
    let s1 = ScalarRing::new(Rat::one()).unwrap();
    out.extend(coherence_checks("classify/scalar-cap2", &s1, &Truncation::MeetCap(Rat::from_int(2)), &one, p));
    let s2 = ScalarRing::new(Rat::from_int(2)).unwrap();
    out.extend(coherence_checks("classify/scalar-c2-cap1", &s2, &Truncation::MeetCap(Rat::one()), &one, p));
    let z = ZeroMulRing;
    out.extend(coherence_checks("classify/zeromul", &z, &Truncation::MeetCap(Coord2::of_ints(1, 1)), &one, p));
    let fs = FinSuppRing::new(Rat::one()).unwrap();
    out.extend(coherence_checks("classify/finsupp-stone-cap", &fs, &Truncation::ConstCap(Rat::one()), &one, p));

    // identity as weak unit together with the sampled almost-f condition
    for (label, verdict) in [
        ("classify/grid-weak-unit-identity", weak_unit_identity(&g2, p)),
        ("classify/scalar-weak-unit-identity", weak_unit_identity(&s1, p)),
    ] {
        out.push(NamedVerdict::new(label, verdict));
    }
    out.push(NamedVerdict::new("classify/grid-almost-f", is_almost_f_ring(&g2, &cp)));
    out.push(NamedVerdict::new("classify/zeromul-almost-f", is_almost_f_ring(&z, &cp)));
    out.push(NamedVerdict::new("classify/finsupp-almost-f", is_almost_f_ring(&fs, &cp)));

    // reduced + almost f-ring models must verify the full f-ring condition
    out.push(NamedVerdict::new("classify/grid-f-ring", is_f_ring(&g2, &cp)));
    out.push(NamedVerdict::new("classify/finsupp-f-ring", is_f_ring(&fs, &cp)));
    out.push(NamedVerdict::new("classify/scalar-f-ring", is_f_ring(&s1, &cp)));
    out.push(NamedVerdict::new("classify/zeromul-f-ring", is_f_ring(&z, &cp)));

    // unital models without infinitesimals and with weak-unit identities
    // must be reduced f-rings
    out.push(NamedVerdict::new(
        "classify/grid-no-infinitesimals",
        find_infinitesimal(&g2, &cp).expect("unital"),
    ));
    out.push(NamedVerdict::new(
        "classify/scalar-no-infinitesimals",
        find_infinitesimal(&s1, &cp).expect("unital"),
    ));
    out.push(expect(
        "classify/zeromul-not-reduced",
        is_reduced(&z).verdict.is_violated(),
        "the zero-multiplication model has a nilpotent witness",
    ));

    out.push(NamedVerdict::new("classify/grid-semi-lemma", lemma_semi_check(&g2, &cp).expect("reduced f-ring")));
    out.push(NamedVerdict::new("classify/finsupp-semi-lemma", lemma_semi_check(&fs, &cp).expect("reduced f-ring")));
    out.push(NamedVerdict::new("classify/scalar-semi-lemma", lemma_semi_check(&s1, &cp).expect("reduced f-ring")));

    out.push(NamedVerdict::new("classify/grid-commutation", reduced_commutation_check(&g2, &cp)));
    out.push(NamedVerdict::new("classify/finsupp-commutation", reduced_commutation_check(&fs, &cp)));

    out.push(NamedVerdict::new("classify/grid-positive-squares", positive_squares_check(&g2, &cp)));
    out.push(NamedVerdict::new("classify/zeromul-positive-squares", positive_squares_check(&z, &cp)));

    // uniqueness: sweeping constant caps, exactly the reciprocal scale works
    out.push(uniqueness_sweep("classify/uniqueness-sweep-grid-c2", &g2, &one, &Rat::new(1, 2), p));

    // the scaled criterion accepts exactly the cap c at model scale 1
    let g1 = GridRing::with_points(&["a", "b", "c"], Rat::one());
    for c in [Rat::from_int(2), Rat::from_int(3)] {
        let label = format!("classify/scaled-criterion-sweep-c{c}");
        out.push(uniqueness_sweep(&label, &g1, &c, &c, p));
    }

    // Archimedean verdicts
    let (lexg, _) = archimedean_witness_group(&LexPlane, p.bound);
    out.push(expect(
        "classify/lex-not-archimedean",
        lexg.is_violated(),
        "the lex plane yields a certified witness pair",
    ));
    let (gridg, _) = archimedean_witness_group(&grid4(), p.bound);
    out.push(NamedVerdict::new("classify/grid-archimedean", gridg));
    let (fsg, _) = archimedean_witness_group(&fs, p.bound);
    out.push(NamedVerdict::new("classify/finsupp-archimedean", fsg));

    let lex = LexPlane;
    let lctx = Unitization::unit_scale(&lex, Truncation::MeetCap(LexVec::of_ints(0, 1))).unwrap();
    let (lexu, wit) = archimedean_witness_unitized(&lctx, p.bound);
    let transferred = wit.is_some_and(|(u, v)| {
        (1..=i64::from(p.bound)).all(|n| lctx.leq_u(&lctx.int_mul_u(n, &u), &v))
    });
    out.push(expect(
        "classify/lex-unitization-not-archimedean",
        lexu.is_violated() && transferred,
        "the witness pair embeds and still has all bounded multiples below",
    ));

    out
}

fn weak_unit_identity<M>(m: &M, p: &SelfTestParams) -> Verdict
where
    M: LatticeRing + Sampler,
{
    let e = m.identity().expect("unital model");
    let mut rng = rng_for(p.seed, stream_of("weak-unit-identity"));
    for _ in 0..p.samples {
        let x = m.sample(&mut rng, &p.cfg);
        if !m.is_zero(&x) && m.is_zero(&m.meet(&m.abs(&x), &e)) {
            return Verdict::violated(Evidence::Sampled(p.samples), "|x| ∧ e = 0 with x ≠ 0")
                .with_witness("x", m.render(&x));
        }
    }
    Verdict::sampled_ok(p.samples, "the ring identity is a weak unit on all samples")
}

fn uniqueness_sweep<M>(
    label: &str,
    m: &M,
    criterion: &Rat,
    expected_cap: &Rat,
    p: &SelfTestParams,
) -> NamedVerdict
where
    M: LatticeRing + RingFacts + StructuralFacts + Registered + Sampler,
{
    let cp = p.classify_params();
    let mut accepted = Vec::new();
    for k in 1..=32i64 {
        let q = Rat::new(k, 8);
        let cls = classify_unitization(m, &Truncation::ConstCap(q.clone()), criterion, &cp)
            .expect("supported configuration");
        if cls.outcome == Outcome::IsLRing {
            accepted.push(q);
        }
    }
    let ok = accepted.len() == 1 && accepted[0] == *expected_cap;
    expect(
        label,
        ok,
        format!(
            "sweep over caps k/8 accepts exactly {expected_cap}; accepted: [{}]",
            accepted.iter().map(Rat::render).collect::<Vec<_>>().join(", ")
        ),
    )
}

// ---------------------------------------------------------------------------
// orthomorphism representation

fn ortho_suite<M>(label: &str, m: &M, p: &SelfTestParams) -> Vec<NamedVerdict>
where
    M: FunctionModel + Sampler,
{
    let space = MultiplierSpace::new(m);
    let cp = p.classify_params();
    let mut out = Vec::new();

    out.push(sampled_property(&format!("{label}/j-homomorphism"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let y = m.sample(rng, &p.cfg);
        let jx = embed_j(m, &x);
        let jy = embed_j(m, &y);
        let ok = embed_j(m, &m.add(&x, &y)) == space.add(&jx, &jy)
            && embed_j(m, &m.join(&x, &y)) == space.join(&jx, &jy)
            && embed_j(m, &m.meet(&x, &y)) == space.meet(&jx, &jy)
            && embed_j(m, &m.mul(&x, &y)) == space.mul(&jx, &jy);
        if ok {
            Ok(())
        } else {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        }
    }));

    out.push(sampled_property(&format!("{label}/j-injective"), p, |rng| {
        let x = m.sample(rng, &p.cfg);
        let y = m.sample(rng, &p.cfg);
        if x != y && embed_j(m, &x) == embed_j(m, &y) {
            Err(vec![("x".into(), m.render(&x)), ("y".into(), m.render(&y))])
        } else {
            Ok(())
        }
    }));

    out.push(sampled_property(&format!("{label}/p-endomorphism-parts"), p, |rng| {
        let w = space.sample(rng, &p.cfg);
        let (pos, neg) = decompose_orthomorphism(&space, &w);
        if space.sub(&pos, &neg) != w
            || !space.is_positive(&pos)
            || !space.is_positive(&neg)
        {
            return Err(vec![("w".into(), space.render(&w))]);
        }
        // positive parts preserve disjointness when applied to the model
        let a = m.sample_positive(rng, &p.cfg);
        let b = m.sample_positive(rng, &p.cfg);
        let d = m.meet(&a, &b);
        let (da, db) = (m.sub(&a, &d), m.sub(&b, &d));
        let hit = space.apply_to(&pos, &da);
        if !m.is_zero(&m.meet(&hit, &db)) {
            return Err(vec![
                ("w".into(), space.render(&w)),
                ("x".into(), m.render(&da)),
                ("y".into(), m.render(&db)),
            ]);
        }
        Ok(())
    }));

    out.push(NamedVerdict::new(format!("{label}/stone-check"), stone_check(m, &cp)));

    let stone = stone_function(m, &cp).expect("stone models");
    out.push(NamedVerdict::new(
        format!("{label}/stone-function-axioms"),
        check_axioms(m, &stone, &p.check_params()).expect("supported"),
    ));
    let cls = classify_unitization(m, &stone, &Rat::one(), &cp).expect("supported");
    out.push(expect(
        &format!("{label}/stone-function-accepted"),
        cls.outcome == Outcome::IsLRing,
        "the induced truncation makes the unitization a lattice-ordered ring",
    ));

    out.push(NamedVerdict::new(
        format!("{label}/j-preserves-stone-truncation"),
        j_truncation_hom_check(m, &stone, &cp).expect("supported"),
    ));

    // unital extension to the unitization
    let ctx = Unitization::unit_scale(m, stone.clone()).unwrap();
    let space2 = MultiplierSpace::new(m);
    out.push(expect(
        &format!("{label}/extension-unital"),
        extend_j_tau(m, &ctx.one_u()) == space2.one(),
        "the unit maps to the identity multiplier",
    ));
    out.push(sampled_property(&format!("{label}/extension-lattice-hom"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        let ju = extend_j_tau(m, &u);
        let jv = extend_j_tau(m, &v);
        let ok = extend_j_tau(m, &ctx.join_u(&u, &v)) == space2.join(&ju, &jv)
            && extend_j_tau(m, &ctx.meet_u(&u, &v)) == space2.meet(&ju, &jv)
            && extend_j_tau(m, &ctx.add_u(&u, &v)) == space2.add(&ju, &jv);
        if ok {
            Ok(())
        } else {
            Err(vec![("u".into(), ctx.render_u(&u)), ("v".into(), ctx.render_u(&v))])
        }
    }));
    out.push(sampled_property(&format!("{label}/extension-injective"), p, |rng| {
        let u = ctx.sample_u(rng, &p.cfg);
        let v = ctx.sample_u(rng, &p.cfg);
        if u != v && extend_j_tau(m, &u) == extend_j_tau(m, &v) {
            Err(vec![("u".into(), ctx.render_u(&u)), ("v".into(), ctx.render_u(&v))])
        } else {
            Ok(())
        }
    }));
    out.push(NamedVerdict::new(
        format!("{label}/extension-positivity"),
        extension_positivity_check(&ctx, &cp),
    ));

    // the final coherence: a cap is accepted exactly when it is the Stone cap
    let stone_cap = match &stone {
        Truncation::ConstCap(q) => q.clone(),
        _ => unreachable!("stone functions are constant caps on these models"),
    };
    let mut coherent = true;
    let mut detail = String::new();
    for k in 1..=16i64 {
        let q = Rat::new(k, 8);
        let cls = classify_unitization(m, &Truncation::ConstCap(q.clone()), &Rat::one(), &cp)
            .expect("supported");
        let accepted = cls.outcome == Outcome::IsLRing;
        let is_stone = q == stone_cap;
        if accepted != is_stone {
            coherent = false;
            detail = format!("cap {q} accepted={accepted} but stone={is_stone}");
            break;
        }
    }
    out.push(expect(
        &format!("{label}/accepted-iff-stone"),
        coherent,
        if detail.is_empty() {
            format!("across the cap sweep, acceptance happens exactly at the Stone cap {stone_cap}")
        } else {
            detail
        },
    ));

    out
}

fn orthorep_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();
    let g2 = grid_c2();
    out.extend(ortho_suite("orthorep/grid-c2", &g2, p));
    let fs = FinSuppRing::new(Rat::one()).unwrap();
    out.extend(ortho_suite("orthorep/finsupp", &fs, p));
    let s = ScalarRing::new(Rat::from_int(2)).unwrap();
    out.extend(ortho_suite("orthorep/scalar-c2", &s, p));

    // the violated homomorphism case: a non-Stone cap on the scale-2 grid
    let cp = p.classify_params();
    let bad = j_truncation_hom_check(&g2, &Truncation::ConstCap(Rat::one()), &cp).expect("supported");
    let witness_ok = bad.is_violated()
        && g2
            .parse_elem(&bad.witness[0].value)
            .map(|w| w == g2.constant(&Rat::new(3, 4)))
            .unwrap_or(false);
    out.push(expect(
        "orthorep/grid-c2-cap1-hom-violated",
        witness_ok,
        "the embedding fails to preserve the non-Stone cap, witnessed at const 3/4",
    ));

    // identity map trivially preserves a fixed truncation
    let t = Truncation::ConstCap(Rat::new(1, 2));
    let v = is_truncation_homomorphism(&g2, &t, &g2, &t, |x| x.clone(), &[], &p.check_params())
        .expect("supported");
    out.push(NamedVerdict::new("orthorep/identity-hom", v));

    // grid at scale 1: the Stone cap is the unit truncation
    let g1 = GridRing::with_points(&["a", "b"], Rat::one());
    let stone1 = stone_function(&g1, &cp).expect("stone");
    let eq = truncations_equal(
        &g1,
        &stone1,
        &Truncation::MeetCap(g1.identity().unwrap()),
        &p.check_params(),
    )
    .expect("supported");
    out.push(expect(
        "orthorep/unital-stone-is-unit-truncation",
        eq.is_verified(),
        "at scale 1 the induced cap coincides with meet by the ring identity",
    ));

    out
}

// ---------------------------------------------------------------------------
// direct cone sampling coherence (theorem-level cross-check)

fn cone_section(p: &SelfTestParams) -> Vec<NamedVerdict> {
    let mut out = Vec::new();
    let g2 = grid_c2();
    let good = Unitization::unit_scale(&g2, Truncation::ConstCap(Rat::new(1, 2))).unwrap();
    out.push(expect(
        "cone/grid-c2-stone-cap-closed",
        cone_closure_escape(&good, p.seed, p.samples, &p.cfg).is_none(),
        "no positive product escapes under the accepted cap",
    ));

    let s2 = ScalarRing::new(Rat::from_int(2)).unwrap();
    let bad = Unitization::unit_scale(&s2, Truncation::MeetCap(Rat::one())).unwrap();
    let u = Unitized::new(Rat::from_int(-1), Rat::one());
    let v = Unitized::new(Rat::one(), Rat::one());
    let escapes = bad.is_positive_u(&u)
        && bad.is_positive_u(&v)
        && !bad.is_positive_u(&bad.multiply_u(&u, &v));
    out.push(expect(
        "cone/scalar-c2-cap1-escape",
        escapes,
        "(-1, 1)·(1, 1) leaves the cone: model part -2 has negative part 2 above the cap",
    ));
    out
}

// ---------------------------------------------------------------------------
// assembly

type Section = fn(&SelfTestParams) -> Vec<NamedVerdict>;

/// The deterministic section list; order is part of the report format.
pub fn sections() -> Vec<(&'static str, Section)> {
    vec![
        ("rat", rat_section),
        ("group", group_section),
        ("ring", ring_section),
        ("truncation", truncation_section),
        ("unitization", unitization_section),
        ("oracle", oracle_section),
        ("classify", classify_section),
        ("orthorep", orthorep_section),
        ("cone", cone_section),
    ]
}

/// Runs every suite sequentially.
pub fn run_all(p: &SelfTestParams) -> Vec<NamedVerdict> {
    sections().into_iter().flat_map(|(_, f)| f(p)).collect()
}

/// Runs the sections on a fixed number of worker threads. Results are
/// slotted by section index, so the output is identical to the sequential
/// run regardless of scheduling.
pub fn run_parallel(p: &SelfTestParams, threads: usize) -> Vec<NamedVerdict> {
    let secs = sections();
    if threads <= 1 {
        return run_all(p);
    }
    let mut slots: Vec<Option<Vec<NamedVerdict>>> = vec![None; secs.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slot_refs: Vec<std::sync::Mutex<&mut Option<Vec<NamedVerdict>>>> =
        slots.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(secs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= secs.len() {
                    break;
                }
                let result = (secs[i].1)(p);
                **slot_refs[i].lock().expect("slot lock") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every section ran"))
        .flatten()
        .collect()
}

pub fn all_passed(results: &[NamedVerdict]) -> bool {
    results.iter().all(|r| r.verdict.is_verified())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_params() -> SelfTestParams {
        SelfTestParams {
            samples: 60,
            ..Default::default()
        }
    }

    #[test]
    fn full_run_passes_and_is_deterministic() {
        let p = quick_params();
        let a = run_all(&p);
        let failed: Vec<_> = a.iter().filter(|r| !r.verdict.is_verified()).collect();
        assert!(failed.is_empty(), "failing checks: {failed:#?}");
        let b = run_all(&p);
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_run_matches_sequential() {
        let p = quick_params();
        assert_eq!(run_all(&p), run_parallel(&p, 8));
    }

    #[test]
    fn injected_fault_is_detected() {
        let p = SelfTestParams {
            inject_fault: true,
            ..quick_params()
        };
        let results = run_all(&p);
        assert!(!all_passed(&results), "the mis-signed formula must be caught");
    }
}
