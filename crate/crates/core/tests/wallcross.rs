use qwc::ifun::Epsilon;
use qwc::toric::Toric;
use qwc::wallcross::*;

fn show(r: &VerificationReport) {
    eprintln!("{} {} {:?} pass={} fail={} unsup={} {}ms", r.identity, r.preset, r.status(), r.count(Status::Pass), r.count(Status::Fail), r.count(Status::Unsupported), r.runtime_ms);
    for c in r.cells.iter().filter(|c| c.status != Status::Pass).take(3) {
        eprintln!("  {:?}", c);
    }
}

#[test]
fn v_s_low_degree() {
    for name in ["p1", "p2"] {
        let r = verify_v_s(&Toric::preset(name).unwrap(), 2).unwrap();
        show(&r);
        assert!(r.passed());
    }
}

#[test]
fn property_suites_on_p1() {
    let t = Toric::preset("p1").unwrap();
    for p in [Property::String, Property::Dilaton, Property::Divisor, Property::Trr] {
        let r = verify_property(&t, p, 2, 10, 7).unwrap();
        show(&r);
        assert!(r.passed());
    }
}

#[test]
fn truncation_on_local_p2() {
    let t = Toric::preset("local-p2").unwrap();
    for e in ["1", "1/2"] {
        let r = verify_truncation_consistency(&t, &e.parse::<Epsilon>().unwrap(), 2, 4).unwrap();
        show(&r);
        assert!(r.passed());
    }
}

#[test]
fn point_range() {
    let r = point_wallcross_range(6, 5).unwrap();
    show(&r);
    assert!(r.passed());
}

#[test]
#[ignore]
fn timing_probe() {
    for (name, d) in [("f2", 2), ("f2", 3), ("f2", 4), ("local-p2", 3), ("local-p2", 4), ("p2", 4)] {
        let t = Toric::preset(name).unwrap();
        eprintln!("{name} classes {:?}", t.effective_classes(d).unwrap());
        let r = verify_i_equals_j(&t, d, 4).unwrap();
        show(&r);
    }
}
