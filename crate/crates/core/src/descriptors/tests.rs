use super::*;
use crate::raster::Connectivity;
use proptest::prelude::*;

fn region(w: usize, h: usize, f: impl Fn(usize, usize) -> bool) -> Region {
    let px: Vec<_> = (0..h).flat_map(|r| (0..w).map(move |c| (r, c))).filter(|&(r, c)| f(r, c)).collect();
    Region::from_pixels(1, &px, Connectivity::Eight).unwrap()
}

fn disk(radius: f64) -> Region {
    let size = (2.0 * radius) as usize + 3;
    let mid = size as f64 / 2.0;
    region(size, size, |r, c| {
        (r as f64 + 0.5 - mid).powi(2) + (c as f64 + 0.5 - mid).powi(2) <= radius * radius
    })
}

fn features(r: &Region) -> FeatureVector {
    compute_features(r, None, &FeatureConfig::default())
}

#[test]
fn convexity_anchors() {
    assert_eq!(features(&region(7, 5, |_, _| true)).cnvxty_and_no_hole, 1.0);
    assert_eq!(features(&region(5, 1, |_, _| true)).cnvxty_and_no_hole, 1.0);
    let donut = features(&region(3, 3, |r, c| (r, c) != (1, 1)));
    assert_eq!(donut.cnvxty_and_no_hole, 8.0 / 9.0);
    assert_eq!(donut.combnd_smpl_cnctvty, 0.75);
    assert_eq!(donut.smpl_cnctvty_4adjncy, 12.0 / 16.0);
    assert_eq!(donut.filled_area_ratio, 8.0 / 9.0);
}

#[test]
fn roundness_anchors() {
    assert_eq!(roundness(1, 4), 1.0);
    assert_eq!(features(&region(2, 2, |_, _| true)).rndnss_and_no_hole, 1.0);
    assert_eq!(features(&region(4, 1, |_, _| true)).rndnss_and_no_hole, 0.8);
    for n in 1..=64 {
        let r = region(n, n, |_, _| true);
        assert_eq!(roundness(r.area(), r.pl_total()), 1.0, "n = {n}");
    }
}

#[test]
fn squares_are_rounder_than_disks() {
    for radius in [4.0, 8.0, 15.0] {
        let d = disk(radius);
        let side = (d.area() as f64).sqrt().round() as usize;
        let s = region(side, side, |_, _| true);
        assert!(roundness(s.area(), s.pl_total()) >= roundness(d.area(), d.pl_total()));
    }
}

#[test]
fn rectangle_and_disk_rectangularity() {
    let rect = features(&region(40, 20, |_, _| true));
    assert!(rect.fuzzy_rule_bsd_rctnglrty >= 0.95, "{rect:?}");
    let d = features(&disk(20.0));
    assert!(d.fuzzy_rule_bsd_rctnglrty <= 0.1, "{d:?}");
    assert!(rect.mlt_scl_strghtns_of_bndrs - d.mlt_scl_strghtns_of_bndrs >= 0.1);
}

#[test]
fn solid_square_composition() {
    let f = features(&region(5, 5, |_, _| true));
    assert_eq!(f.cnvxty_and_no_hole, 1.0);
    assert_eq!(f.rndnss_and_no_hole, 1.0);
    assert_eq!(f.combnd_smpl_cnctvty, 1.0);
    assert!((f.elngtdnss_and_no_hole - 1.0).abs() < 0.5, "{f:?}");
    assert!(f.flags.contains(FeatureFlags::MER_SQUARE_TIE | FeatureFlags::DMP_ABSENT));
    assert_eq!((f.mer_w, f.mer_l), (5.0, 5.0));
}

#[test]
fn bar_elongatedness() {
    let f = features(&region(30, 3, |_, _| true));
    assert!((f.elngtdnss_and_no_hole - 10.0).abs() <= 2.0, "{f:?}");
    assert_eq!(f.mer_angle_deg, 0.0);
    let f = features(&region(3, 30, |_, _| true));
    assert_eq!(f.mer_angle_deg, 90.0);
    let f = features(&region(9, 1, |_, _| true));
    assert_eq!(f.elngtdnss_nm, 9.0);
}

#[test]
fn ratio_anchors() {
    assert_eq!(elongatedness_ratio(12.0, 3.0), (4.0, false));
    assert_eq!(elongatedness_ratio(0.5, 1.0), (1.0, true));
    assert!((elongatedness_nm_ratio(8.0, 3.0) - 2.667).abs() < 1e-3);
    assert_eq!(elongatedness_nm_ratio(1.0, 10.0), 0.1);
    assert_eq!(combine_simple_connectivity(0.84, 0.71), 0.71);
    assert_eq!(combine_simple_connectivity(0.84, 0.56), 0.56);
    assert_eq!(combine_simple_connectivity(0.31, 0.55), 0.31);
}

#[test]
fn hole_monotonicity() {
    let pairs = [
        (region(9, 9, |_, _| true), region(9, 9, |r, c| (r, c) != (4, 4))),
        (
            region(20, 8, |_, _| true),
            region(20, 8, |r, c| !(3..5).contains(&r) || !(5..15).contains(&c)),
        ),
        (region(12, 12, |_, _| true), region(12, 12, |r, c| !(4..8).contains(&r) || !(4..8).contains(&c))),
    ];
    for (solid, holed) in &pairs {
        let (a, b) = (features(solid), features(holed));
        assert!(b.combnd_smpl_cnctvty < a.combnd_smpl_cnctvty);
        assert!(b.cnvxty_and_no_hole < a.cnvxty_and_no_hole);
        assert!(b.elngtdnss_and_no_hole >= a.elngtdnss_and_no_hole, "{a:?}\n{b:?}");
    }
}

#[test]
fn flags_display_round_trip() {
    let f = FeatureFlags::MER_SQUARE_TIE | FeatureFlags::DMP_ABSENT;
    assert_eq!(f.to_string(), "mer_square_tie|dmp_absent");
    assert_eq!(FeatureFlags::parse_names(&f.to_string()).unwrap(), f);
    assert_eq!(FeatureFlags::empty().to_string(), "");
    assert!(FeatureFlags::parse_names("bogus").is_err());
}

#[test]
fn byte_coding_error_bound() {
    for i in 0..=1000 {
        let v = i as f64 / 1000.0;
        assert!((byte_decode(byte_code(v)) - v).abs() <= 0.5 / 255.0 + 1e-12);
    }
}

#[test]
fn single_pixel_is_flagged_not_fatal() {
    let f = features(&region(1, 1, |_, _| true));
    assert_eq!(f.rndnss_and_no_hole, 1.0);
    assert!(f.flags.contains(FeatureFlags::MER_DEGENERATE | FeatureFlags::STRAIGHTNESS_SKIPPED));
    assert_eq!(f.fuzzy_rule_bsd_rctnglrty, 0.0);
}

#[test]
fn characteristic_map_feeds_dmp_field() {
    let mut labels = LabelImage::filled(20, 20, 0).unwrap();
    let gray = GrayImage::from_fn(20, 20, |r, c| if (5..10).contains(&r) && (5..10).contains(&c) { 200 } else { 0 }).unwrap();
    for r in 5..10 {
        for c in 5..10 {
            labels.set(r, c, 7);
        }
    }
    let out = extract_features(&labels, Some(&gray), &FeatureConfig::default()).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].label, 7);
    let v = out[0].dmp_mlt_scl_chrctrstc.unwrap();
    assert!((5.0..=9.0).contains(&v), "{v}");
    assert!(!out[0].flags.contains(FeatureFlags::DMP_ABSENT));
}

pub(crate) fn blob_pixels(seed: u64, size: usize) -> Vec<(usize, usize)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut m = BinaryMask::new(size, size);
    for r in 0..size {
        for c in 0..size {
            m.set(r, c, rng.random_bool(0.55));
        }
    }
    m.components(Connectivity::Eight).into_iter().max_by_key(|c| c.len()).unwrap_or_default()
}

fn same_except_angle(a: &FeatureVector, b: &FeatureVector) -> bool {
    let mut b = b.clone();
    b.mer_angle_deg = a.mer_angle_deg;
    *a == b
}

fn angle_matches(a: f64, b: f64, t: Dihedral, square: bool) -> bool {
    // Mirroring maps angle θ to 180 − θ; each quarter turn adds 90.
    let mut expect = if t.mirrored { (180.0 - a) % 180.0 } else { a };
    for _ in 0..t.quarter_turns {
        expect = if expect < 90.0 { expect + 90.0 } else { expect - 90.0 };
    }
    if square {
        (expect % 90.0 - b % 90.0).abs() < 1e-9
    } else {
        (expect - b).abs() < 1e-9
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descriptors_are_dihedral_invariant(seed in 0u64..1_000_000, size in 3usize..14) {
        let px = blob_pixels(seed, size);
        let base = Region::from_pixels(1, &px, Connectivity::Eight).unwrap();
        let f0 = features(&base);
        for t in Dihedral::all() {
            let m = base.mask().transformed(t);
            let moved = Region::from_mask(1, (0, 0), m, Connectivity::Eight).unwrap();
            let f = features(&moved);
            prop_assert!(same_except_angle(&f0, &f), "{:?}\n{:?}", f0, f);
            prop_assert!(f0.flags.contains(FeatureFlags::MER_DEGENERATE) || angle_matches(f0.mer_angle_deg, f.mer_angle_deg, t, f0.flags.contains(FeatureFlags::MER_SQUARE_TIE)),
                "{t:?}: {} -> {}", f0.mer_angle_deg, f.mer_angle_deg);
        }
    }

    #[test]
    fn unit_fields_stay_in_range(seed in 0u64..1_000_000, size in 1usize..16) {
        let px = blob_pixels(seed, size);
        prop_assume!(!px.is_empty());
        let f = features(&Region::from_pixels(1, &px, Connectivity::Eight).unwrap());
        for col in FeatureVector::UNIT_RANGE {
            let v = f.value(col).unwrap();
            prop_assert!((0.0..=1.0).contains(&v), "{col} = {v}");
        }
        prop_assert!(f.elngtdnss_and_no_hole >= 1.0);
        prop_assert!((0.0..180.0).contains(&f.mer_angle_deg));
        prop_assert!(f.mer_w <= f.mer_l);
        if base_hole_free(&px) {
            prop_assert_eq!(f.combnd_smpl_cnctvty, 1.0);
        }
    }
}

fn base_hole_free(px: &[(usize, usize)]) -> bool {
    Region::from_pixels(1, px, Connectivity::Eight).unwrap().hole_count() == 0
}
