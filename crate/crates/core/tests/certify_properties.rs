use prational::arith::is_prime;
use prational::certify::{
    certify_triquadratic, subfield_radicands, verify_certificate, Conclusion,
    TriquadraticCertificate,
};
use prational::quad::VerdictStatus;

/// Squarefree kernel with sign, by trial division.
fn kernel(n: i128) -> i128 {
    let sign = n.signum();
    let mut m = n.abs();
    let mut k = 1;
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            k *= d;
        }
        d += 1;
    }
    sign * k * m
}

#[test]
fn subfield_lattice_closed() {
    for p in (5u64..2000).filter(|&p| is_prime(p)) {
        let ks: Vec<i128> = subfield_radicands(p)
            .unwrap()
            .iter()
            .map(|&d| kernel(d as i128))
            .collect();
        for i in 0..7 {
            for j in 0..7 {
                if i == j {
                    assert_ne!(ks[i], 1);
                    continue;
                }
                assert_ne!(ks[i], ks[j], "p {p}: K{} and K{} coincide", i + 1, j + 1);
                let prod = kernel(ks[i] * ks[j]);
                assert!(
                    ks.contains(&prod),
                    "p {p}: K{}·K{} leaves the lattice",
                    i + 1,
                    j + 1
                );
            }
        }
    }
}

#[test]
fn certificate_kernels_match_trial_division() {
    for p in [5u64, 7, 11, 13, 47, 173, 277] {
        let cert = certify_triquadratic(p).unwrap();
        let want: Vec<i128> = subfield_radicands(p)
            .unwrap()
            .iter()
            .map(|&d| kernel(d as i128))
            .collect();
        let got: Vec<i128> = cert
            .subfields
            .iter()
            .map(|v| v.field.kernel as i128)
            .collect();
        assert_eq!(got, want, "p {p}");
    }
}

#[test]
fn deterministic_and_verifiable() {
    for p in [5u64, 7, 11, 13, 17, 19, 23, 277] {
        let a = certify_triquadratic(p).unwrap();
        let b = certify_triquadratic(p).unwrap();
        assert_eq!(a.to_text(), b.to_text(), "p {p}");
        assert!(verify_certificate(&a), "p {p}");
        let back = TriquadraticCertificate::from_text(&a.to_text()).unwrap();
        assert!(verify_certificate(&back));
    }
}

#[test]
fn conclusion_soundness() {
    for p in (5u64..120).filter(|&p| is_prime(p)) {
        let cert = certify_triquadratic(p).unwrap();
        let all_proved = cert
            .subfields
            .iter()
            .all(|v| v.status == VerdictStatus::Proved);
        let any_refuted = cert
            .subfields
            .iter()
            .any(|v| v.status == VerdictStatus::Refuted);
        match cert.conclusion {
            Conclusion::Certified => assert!(all_proved),
            Conclusion::Failed => assert!(any_refuted),
            Conclusion::Inconclusive => assert!(!all_proved && !any_refuted),
        }
        let text = cert.to_text();
        assert!(text.lines().last().unwrap().starts_with("reduction: "));
    }
}

#[test]
fn imaginary_kernel_minus_one_always_proved() {
    // Q(i) has h = 1
    for p in [5u64, 7, 11, 101] {
        let cert = certify_triquadratic(p).unwrap();
        assert_eq!(cert.subfields[3].field.kernel, -1);
        assert_eq!(cert.subfields[3].status, VerdictStatus::Proved);
    }
}
