use hypercert::criteria::{aut_check, iso_invariants, AutVerdict, IsoVerdict};
use hypercert::expmap::{build_phi1, build_phi2, ExpMap};
use hypercert::quotient::{compose_endo, endo_from_images, AEndo};
use hypercert::{Field, Presentation};

fn specialize(phi: &ExpMap, c: i64) -> AEndo {
    let pres = phi.presentation();
    let u = pres.ngens();
    let field = pres.field();
    let images: Vec<_> =
        phi.images().iter().map(|p| p.eval_var(u, &field.from_i64(c)).to_context(pres.ctx()).unwrap()).collect();
    endo_from_images(pres, &images).unwrap()
}

#[test]
fn iso_verdicts_are_symmetric() {
    let q = Field::Rationals;
    let cases = [
        ((1, vec![2], "Z + X1*T"), (1, vec![3], "Z + X1*T")),
        ((2, vec![2, 3], "Z + X1*X2*T"), (2, vec![3, 2], "Z + X1*X2*T^2")),
        ((2, vec![2, 2], "Z^2 + T"), (2, vec![2, 2], "T^2 + Z")),
    ];
    for ((m1, r1, f1), (m2, r2, f2)) in cases {
        let a = Presentation::parse(m1, &r1, q, f1).unwrap();
        let b = Presentation::parse(m2, &r2, q, f2).unwrap();
        let ab = iso_invariants(&a, &b, None).unwrap();
        let ba = iso_invariants(&b, &a, None).unwrap();
        assert_eq!(ab.verdict, ba.verdict, "{f1} vs {f2}");
        assert_eq!(ab.r_multiset_equal, ba.r_multiset_equal);
    }
    let a = Presentation::parse(1, &[2], q, "Z + X1*T").unwrap();
    let b = Presentation::parse(1, &[3], q, "Z + X1*T").unwrap();
    assert_eq!(iso_invariants(&a, &b, None).unwrap().verdict, IsoVerdict::NotIsomorphic);
}

/// Specializing the exponential maps at `U = c` gives automorphisms, and so
/// do their composites.
#[test]
fn exponential_specializations_are_automorphisms() {
    for field in [Field::Rationals, Field::Prime(5)] {
        let pres = Presentation::parse(1, &[2], field, "Z + X1*(Z + T^2)").unwrap();
        let phi1 = build_phi1(&pres).unwrap();
        let phi2 = build_phi2(&pres).unwrap();
        let trials = [specialize(&phi1, 1), specialize(&phi2, 2), specialize(&phi1, -1)];
        for e in &trials {
            let rep = aut_check(&pres, e, None).unwrap();
            assert_eq!(rep.verdict, AutVerdict::Automorphism, "over {field}");
            assert!(rep.cond_a && rep.cond_c);
        }
        let composite = compose_endo(&trials[0], &trials[1]).unwrap();
        assert_eq!(aut_check(&pres, &composite, None).unwrap().verdict, AutVerdict::Automorphism);
    }
}
