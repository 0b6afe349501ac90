use qdescent::cyclotomic::{CyclotomicNumber, SplitType};
use qdescent::f5linalg::F5Subspace;
use qdescent::localization::ClassBasis;
use qdescent::rootnumber::root_number_m2;
use qdescent::selmer::*;

fn five_image(names: &[&[u8]]) -> F5Subspace {
    F5Subspace::span(&ClassBasis::Five.ambient(), names).unwrap()
}

fn dei() -> F5Subspace {
    five_image(&[&[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]])
}

fn gd_ei() -> F5Subspace {
    five_image(&[&[0, 0, 1, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]])
}

fn coords(ctx: &DescentContext, n: i64) -> Vec<u8> {
    ks5_coordinates(ctx, &CyclotomicNumber::from_integer(n)).unwrap()
}

#[test]
fn seven() {
    let ctx = build_context(7).unwrap();
    let r = selmer_compute(&ctx).unwrap();
    assert_eq!(r.dimension, 2);
    assert_eq!(r.rank_upper, 1);
    let want = F5Subspace::span(&ctx.ambient, [coords(&ctx, 2), coords(&ctx, 7)]).unwrap();
    assert_eq!(r.space, want);
    assert_eq!(r.rendered, ["2", "7"]);
}

#[test]
fn eighty_three() {
    let ctx = build_context(83).unwrap();
    assert_eq!(selmer_compute(&ctx).unwrap().dimension, 2);
}

#[test]
fn one_hundred_one() {
    let ctx = build_context(101).unwrap();
    assert_eq!(ctx.dim(), 8);
    let r = selmer_compute(&ctx).unwrap();
    assert_eq!(r.dimension, 1);
    let c = coords(&ctx, 202);
    assert_eq!(r.space, F5Subspace::span(&ctx.ambient, [c]).unwrap());
    assert_eq!(rank_report(&r, root_number_m2(101).unwrap(), false).text(), "J(Q) ≅ Z/5Z, rank 0");
}

#[test]
fn one_hundred_one_local_images() {
    // at the primes over 101 the image is alpha plus the class of 2
    let ctx = build_context(101).unwrap();
    for pr in ctx.bad_primes.iter().filter(|p| p.p == 101) {
        let img = local_image_away_5(&ctx, pr).unwrap();
        let two = qdescent::localization::class_at(&CyclotomicNumber::from_integer(2), pr).unwrap();
        let mut v = two.exponents.clone();
        v[0] = (v[0] + 1) % 5;
        assert!(img.contains(&v).unwrap());
        assert_eq!(img.dim(), 1);
    }
}

#[test]
fn eighty_seven_keeps_the_real_part() {
    // m = 3*29 = 12 mod 25: the image at 5 contains every class fixed by
    // complex conjugation, so all of u_F, 2, 3 and both 29-generators pass
    let ctx = build_context(87).unwrap();
    let r = selmer_compute(&ctx).unwrap();
    assert_eq!(r.dimension, 5);
    for pr in ctx.bad_primes.iter().filter(|p| p.p == 29) {
        assert_eq!(pr.split_type, SplitType::SplitTwo);
        let g = ks5_coordinates(&ctx, &pr.generator).unwrap();
        assert!(r.space.contains(&g).unwrap());
    }
    let uf = ks5_coordinates(&ctx, &CyclotomicNumber::u_f()).unwrap();
    assert!(r.space.contains(&uf).unwrap());
}

#[test]
fn trivial_m() {
    let ctx = build_context(1).unwrap();
    assert_eq!(ctx.ambient.labels(), ["z", "1+z", "2", "1-z"]);
    let r = selmer_compute(&ctx).unwrap();
    assert_eq!(r.dimension, 1);
    assert_eq!(r.rendered, ["2"]);
}

#[test]
fn generic_matches_specialized_images() {
    for m in (1..=200i64).step_by(2) {
        let Ok(ctx) = build_context(m) else { continue };
        let r = m % 25;
        let img = local_image_at_5(&ctx).unwrap();
        assert_eq!(img.dim(), 3);
        if [1, 24, 7, 18].contains(&r) {
            assert_eq!(img, dei(), "m = {m}");
        }
        if [12, 13].contains(&r) {
            assert_eq!(img, gd_ei(), "m = {m}");
        }
    }
}

#[test]
fn residue_two_image() {
    for m in [77, 23, 73, 127] {
        let ctx = build_context(m).unwrap();
        assert_eq!(local_image_at_5(&ctx).unwrap(), gd_ei(), "m = {m}");
    }
}

#[test]
fn torsion_and_local_dimensions() {
    for m in [1i64, 3, 7, 11, 13, 21, 31, 33, 39, 41, 43, 51, 57, 83, 87, 101, 119] {
        let ctx = build_context(m).unwrap();
        let r = selmer_compute(&ctx).unwrap();
        assert!(r.space.contains(&coords(&ctx, 2 * m)).unwrap(), "m = {m}");
        assert!(r.dimension >= 1);
        for l in &r.local {
            let want = if l.prime == "1-z" { 3 } else { 1 };
            assert_eq!(l.image_dim, want, "m = {m} at {}", l.prime);
        }
    }
}

#[test]
fn pullbacks_away_from_five_contain_rationals_and_generators() {
    // m built from primes not 1 mod 5
    for m in [3i64, 7, 19, 21, 57, 87, 133, 3 * 7 * 13] {
        let ctx = build_context(m).unwrap();
        for pr in ctx.bad_primes.iter().filter(|p| p.p != 5 && p.p != 2) {
            let (_, pull) = local_pullback(&ctx, pr).unwrap();
            assert!(pull.contains(&coords(&ctx, 2)).unwrap(), "m = {m}");
            for q in ctx.bad_primes.iter().filter(|q| q.p != 5 && q.p != 2) {
                let g = ks5_coordinates(&ctx, &q.generator).unwrap();
                assert!(pull.contains(&g).unwrap(), "m = {m} {} at {}", q.label(), pr.label());
            }
        }
    }
}

#[test]
fn primes_24_mod_25() {
    // 2 and p always survive, so the dimension never drops to 1; it is 3
    // whatever the residue of b
    let mut bs = Vec::new();
    for p in [199i64, 349, 449, 499, 599, 1049, 1249] {
        let ctx = build_context(p).unwrap();
        let r = selmer_compute(&ctx).unwrap();
        assert!(r.space.contains(&coords(&ctx, 2)).unwrap());
        assert!(r.space.contains(&coords(&ctx, p)).unwrap());
        assert_eq!(r.dimension, 3, "p = {p}");
        let b = ctx.bad_primes[2].real_form.as_ref().unwrap().b_mod5();
        bs.push(b);
    }
    // both residue classes of b occur in the sample
    assert!(bs.contains(&0) && bs.iter().any(|&b| b != 0), "{bs:?}");
}

#[test]
fn rank_statements() {
    let ctx = build_context(7).unwrap();
    let r = selmer_compute(&ctx).unwrap();
    let w = root_number_m2(7).unwrap();
    assert_eq!(w, -1);
    assert!(matches!(rank_report(&r, w, true), RankStatement::ParityRankOne { .. }));
    assert_eq!(rank_report(&r, w, false).text(), "Z/5Z ≤ J(Q) ≤ Z/5Z × Z^1");
}

#[test]
fn coordinates_of_units_and_products() {
    let ctx = build_context(101).unwrap();
    let z = CyclotomicNumber::zeta();
    let one_plus = CyclotomicNumber::from_ints([1, 1, 0, 0]);
    let x = &(&z.pow(2) * &one_plus.pow(3)) * &ctx.ks5_basis[5];
    let c = ks5_coordinates(&ctx, &x).unwrap();
    assert_eq!(c, [2, 3, 0, 0, 0, 1, 0, 0]);
    assert!(ks5_coordinates(&ctx, &CyclotomicNumber::from_integer(3)).is_err());
}
