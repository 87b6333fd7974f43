#![allow(dead_code)]

use rand::Rng;
use sobmul_core::{q, DomainSpec, Family, MultQuery, Rational, SpaceSpec};

/// Rational in `[lo, hi]` with denominator at most `max_den`.
pub fn rational_in<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(lo * d..=hi * d);
    q(n, d)
}

pub fn random_domain<R: Rng>(rng: &mut R) -> DomainSpec {
    let n = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        DomainSpec::whole(n)
    } else {
        DomainSpec::bounded(n)
    }
}

/// A valid spec: `p >= 1`, and `p > 1` whenever `s < 0` or the family is H.
pub fn random_spec<R: Rng>(rng: &mut R, family: Family, domain: DomainSpec) -> SpaceSpec {
    // integers show up often enough to reach the integer-smoothness rules
    let s = if rng.gen_bool(0.3) {
        Rational::from_integer(rng.gen_range(-2..=3))
    } else {
        rational_in(rng, -3, 3, 12)
    };
    let one = Rational::one();
    let p = loop {
        let p = if rng.gen_bool(0.3) {
            Rational::from_integer(rng.gen_range(1..=6))
        } else {
            rational_in(rng, 1, 6, 12)
        };
        let strict = s.is_negative() || family == Family::H;
        if p > one || (!strict && p == one) {
            break p;
        }
    };
    SpaceSpec::new(family, s, p, domain)
}

pub fn random_family<R: Rng>(rng: &mut R) -> Family {
    match rng.gen_range(0..10) {
        0..=5 => Family::W,
        6..=7 => Family::H,
        _ => Family::Bpp,
    }
}

pub fn random_mult_query<R: Rng>(rng: &mut R) -> MultQuery {
    let domain = random_domain(rng);
    let family = random_family(rng);
    MultQuery::new(
        random_spec(rng, family, domain),
        random_spec(rng, family, domain),
        random_spec(rng, family, domain),
    )
}
