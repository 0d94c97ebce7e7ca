use quandlekit::classify::*;

#[test]
fn pq_three_five() {
    let r = classify_pq(3, 5).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("reducible"), 3);
    assert_eq!(r.count("si"), 2);
}

#[test]
fn pq_three_seven() {
    let r = classify_pq(3, 7).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("reducible"), 5);
    assert_eq!(r.count("si"), 2);
}

#[test]
fn pq_two_three() {
    let r = classify_pq(2, 3).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("si"), 2);
}

#[test]
fn fourp_seven() {
    let r = classify_4p(7).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("reducible"), 5);
    assert_eq!(r.count("si_factor4"), 2);
    assert_eq!(r.count("si_factorp"), 4);
}

#[test]
fn extraspecial_eight() {
    let r = classify_extraspecial2_principal(8).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("classes"), 1);
}

#[test]
fn special_three() {
    let r = classify_special_p(3).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("classes"), 2);
}

#[test]
fn fourp_eleven_and_thirteen() {
    let r = classify_4p(11).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!((r.count("reducible"), r.count("si_factor4"), r.count("si_factorp")), (9, 0, 0));
    let r = classify_4p(13).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!((r.count("reducible"), r.count("si_factor4"), r.count("si_factorp")), (11, 2, 0));
}

#[test]
fn extraspecial_thirty_two() {
    let r = classify_extraspecial2_principal(32).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("classes"), 1);
}

#[test]
fn special_five() {
    let r = classify_special_p(5).unwrap();
    assert!(r.all_checks_pass(), "{:?}", r.cross_checks);
    assert_eq!(r.count("classes"), 8);
}
