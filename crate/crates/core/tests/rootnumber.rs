use qdescent::arith::is_squarefree;
use qdescent::rootnumber::{root_number_general, root_number_m2, RootNumberInput};

#[test]
fn specialization_matches_general_formula() {
    let mut checked = 0;
    for m in (1..=9999i64).step_by(2) {
        if m % 5 == 0 || !is_squarefree(m as u64) {
            continue;
        }
        assert_eq!(root_number_m2(m).unwrap(), root_number_general(m * m).unwrap(), "m = {m}");
        checked += 1;
    }
    assert!(checked > 3000);
}

#[test]
fn signs_are_plus_or_minus_one() {
    for a in -500i64..=500 {
        if let Ok(w) = root_number_general(a) {
            assert!(w == 1 || w == -1);
        }
    }
}

#[test]
fn input_decomposition_is_consistent() {
    for a in [1i64, 3, 4, 8, 12, 48, 256, -7, 9 * 9] {
        let inp = RootNumberInput::new(a).unwrap();
        assert_eq!(inp.b * (1i64 << inp.e), a);
        assert!(inp.b % 2 != 0);
    }
}

#[test]
fn residue_rows() {
    let plus = [1, 2, 4, 6, 12, 13, 19, 21, 23, 24];
    for r in 1..25i64 {
        if r % 5 == 0 {
            continue;
        }
        // smallest odd square-free representative of r mod 25
        let m = (0..)
            .map(|k| r + 25 * k)
            .find(|&m| m % 2 == 1 && is_squarefree(m as u64))
            .unwrap();
        let want = if plus.contains(&r) { 1 } else { -1 };
        assert_eq!(root_number_m2(m).unwrap(), want, "m = {m}");
    }
}
