use axcount::certificate::{parse, verify, Certificate, MONSTER_CERT};
use axcount::counting::{
    baby_monster_order, factorize, flow_conserved, monster_order, orbit_sizes, regularity_index, TransitionMatrix,
};
use axcount::golay::GolayCode;
use axcount::leech::Leech;
use axcount::spectrum::{eigenspace_dims, short_vector_profile};
use axcount::tables::{check_all, Tables};
use num_bigint::BigUint;

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

#[test]
fn weight_enumerator() {
    let mut w = [0u32; 25];
    for &c in GolayCode::standard().codewords() {
        w[c.count_ones() as usize] += 1;
    }
    assert_eq!([w[0], w[8], w[12], w[16], w[24]], [1, 759, 2576, 759, 1]);
    assert_eq!(w.iter().sum::<u32>(), 4096);
}

#[test]
fn short_vectors() {
    assert_eq!(Leech::standard().count_vectors(4), 196_560);
}

#[test]
fn axes_and_feasible_sizes_reproduce_the_tables() {
    let t = Tables::standard().unwrap();
    for (m, rows, anchor) in [
        (TransitionMatrix::table2().unwrap(), &t.table1, "2A"),
        (TransitionMatrix::table4().unwrap(), &t.table3, "2A1"),
    ] {
        let anchor_size = &rows.iter().find(|r| r.label == anchor).unwrap().size;
        let sizes = orbit_sizes(&m, anchor, anchor_size).unwrap();
        for r in rows {
            assert_eq!(sizes.get(&r.label), Some(&r.size), "{}", r.label);
        }
        assert!(flow_conserved(&m, &sizes));
        assert_eq!(regularity_index(&m).unwrap(), if anchor == "2A" { 3 } else { 4 });
    }
}

#[test]
fn orders_from_totals() {
    let (xp, xm, co2) = (big("97239461142009186000"), big("11707448673375"), big("42305421312000"));
    let m = monster_order(&xp, &xm, &co2);
    assert_eq!(m, big("808017424794512875886459904961710757005754368000000000"));
    assert_eq!(factorize(&m).unwrap().to_string(), "2^46 3^20 5^9 7^6 11^2 13^3 17 19 23 29 31 41 47 59 71");
    let b = baby_monster_order(&xm, &co2).unwrap();
    assert_eq!(b, big("4154781481226426191177580544000000"));
}

#[test]
fn spectrum_of_a_short_vector() {
    let leech = Leech::standard();
    let mut r = [0; 24];
    r[0] = 4;
    r[1] = 4;
    let p = short_vector_profile(leech, &r).unwrap();
    assert_eq!(eigenspace_dims(&p).unwrap().as_array(), [1, 96256, 4371, 96256]);
}

#[test]
fn tables_consistent() {
    let r = check_all(&Tables::standard().unwrap(), &big("4157776806543360000"));
    assert!(r.passed(), "{r}");
}

#[test]
fn certificate_round_trip() {
    let c = parse(MONSTER_CERT).unwrap();
    assert_eq!(parse(&c.render()).unwrap(), c);
    assert_eq!(c, Certificate::build_standard().unwrap());
    let r = verify(&c, None);
    assert!(r.passed(), "{r}");
    assert_eq!(r.monster_order, Some(c.orders.monster.clone()));
}
