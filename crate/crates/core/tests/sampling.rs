use classpec::groups::{normalize, Epsilon, Family, GroupSpec};
use classpec::verify::{verify, Mode, Verdict, VerifyOptions};

fn sample(f: Family, n: u32, q: u64, e: Epsilon, seed: u64) -> classpec::verify::VerifyReport {
    let ns = normalize(&GroupSpec::new(f, n, q, e).unwrap()).unwrap();
    let opts = VerifyOptions {
        mode: Mode::Sample,
        samples: 2000,
        seed,
        ..Default::default()
    };
    verify(&ns, &opts).unwrap()
}

#[test]
fn sampled_orders_divide_formula_values() {
    let cases = [
        (Family::OmegaEvenDim, 4, 3, Epsilon::Minus),
        (Family::OmegaEvenDim, 4, 3, Epsilon::Plus),
        (Family::SoEvenDim, 4, 5, Epsilon::Minus),
        (Family::POmegaEvenDim, 4, 3, Epsilon::Plus),
        (Family::OmegaEvenDim, 5, 2, Epsilon::Minus),
        (Family::SoOddDim, 3, 5, Epsilon::None),
        (Family::PSp, 3, 3, Epsilon::None),
    ];
    for (f, n, q, e) in cases {
        let r = sample(f, n, q, e, 7);
        assert_eq!(r.verdict, Verdict::Contained, "{}: {:?}", r.group, r.violation);
    }
}

#[test]
fn sampling_is_reproducible() {
    let a = sample(Family::OmegaEvenDim, 4, 2, Epsilon::Plus, 3);
    let b = sample(Family::OmegaEvenDim, 4, 2, Epsilon::Plus, 3);
    assert_eq!(a, b);
    let c = sample(Family::OmegaEvenDim, 4, 2, Epsilon::Plus, 4);
    assert_ne!(a.sampled_order_histogram, c.sampled_order_histogram);
}

#[test]
fn auto_mode_enumerates_small_groups() {
    let ns = normalize(&GroupSpec::new(Family::Sp, 2, 3, Epsilon::None).unwrap()).unwrap();
    let r = verify(&ns, &VerifyOptions::default()).unwrap();
    assert_eq!(r.mode, "exhaustive");
    assert_eq!(r.group_size, "51840");
    assert_eq!(r.verdict, Verdict::Equal);
}
