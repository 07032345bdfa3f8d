//! Invariants checked over generated inputs.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use tierblur::analytics::{cohens_d, distribution_report, kruskal_wallis, spearman, suppression_report, Population};
use tierblur::eval::{SampleScore, StratifiedScorecard};
use tierblur::fixtures::{noise_texture, shift_wrap};
use tierblur::flow::{estimate_flow, mean_flow_magnitude, window_motion, FlowField, FlowParams};
use tierblur::imagekit::{
    delinearize, hamming, laplacian_energy, laplacian_response, linearize, psnr, ssim, PerceptualHash,
};
use tierblur::pipeline::{
    assign_tier, filter_pairs, split_videos, FilterConfig, Manifest, Provenance, SampleRecord, Split, SplitConfig,
};
use tierblur::synthesis::{synthesize_pair, EpsilonMode, TargetRange, Tier, TIERS};
use tierblur::{ImageBuffer, LinearImage, PsnrValue};

fn image(w: usize, h: usize, c: usize) -> impl Strategy<Value = ImageBuffer> {
    proptest::collection::vec(any::<u8>(), w * h * c).prop_map(move |d| ImageBuffer::new(w, h, c, d).unwrap())
}

fn sized_image() -> impl Strategy<Value = ImageBuffer> {
    (3usize..14, 3usize..14, prop_oneof![Just(1usize), Just(3usize)]).prop_flat_map(|(w, h, c)| image(w, h, c))
}

fn tier_strategy() -> impl Strategy<Value = Tier> {
    prop_oneof![Just(Tier::Easy), Just(Tier::Medium), Just(Tier::Hard)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psnr_is_symmetric((a, b) in (3usize..10, 3usize..10).prop_flat_map(|(w, h)| (image(w, h, 3), image(w, h, 3)))) {
        prop_assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
    }

    #[test]
    fn ssim_of_self_is_one(img in image(12, 12, 3)) {
        prop_assume!(img.data().iter().any(|&v| v != img.data()[0]));
        prop_assert!((ssim(&img, &img).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn laplacian_energy_zero_iff_flat_response(img in sized_image()) {
        let e = laplacian_energy(&img);
        prop_assert!(e >= 0.0);
        prop_assert_eq!(e == 0.0, laplacian_response(&img).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn linear_average_suppresses_energy(seed in 0u64..1000, sigma in 1.0f64..3.0, dx in 1isize..4, dy in 0isize..3) {
        let x = noise_texture(32, 32, 3, seed, sigma, 40.0);
        let copies = [x.clone(), shift_wrap(&x, dx, dy), shift_wrap(&x, -dx, -dy)];
        let lin: Vec<LinearImage> = copies.iter().map(linearize).collect();
        let mean: Vec<f64> = (0..x.data().len()).map(|i| lin.iter().map(|l| l.data()[i]).sum::<f64>() / 3.0).collect();
        let blur = delinearize(&LinearImage::new(32, 32, 3, mean).unwrap()).unwrap();
        prop_assert!(laplacian_energy(&blur) < laplacian_energy(&x));
    }

    #[test]
    fn hamming_is_a_metric(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (PerceptualHash(a), PerceptualHash(b), PerceptualHash(c));
        prop_assert_eq!(hamming(a, a), 0);
        prop_assert_eq!(hamming(a, b) == 0, a == b);
        prop_assert_eq!(hamming(a, b), hamming(b, a));
        prop_assert!(hamming(a, c) <= hamming(a, b) + hamming(b, c));
    }

    #[test]
    fn averaging_copies_reproduces_frame(img in image(5, 4, 3), w in (1usize..11).prop_map(|k| 2 * k + 1)) {
        let frames = vec![img.clone(); w + 2];
        let lin = linearize(&img);
        let avg: Vec<f64> = lin.data().iter().map(|&v| (0..w).map(|_| v).sum::<f64>() / w as f64).collect();
        let out = delinearize(&LinearImage::new(5, 4, 3, avg).unwrap()).unwrap();
        for (o, i) in out.data().iter().zip(img.data()) {
            prop_assert!((*o as i32 - *i as i32).abs() <= 1);
        }
        prop_assert!(matches!(
            synthesize_pair(&frames, w / 2 + 1, &TargetRange::default_for(Tier::Medium), EpsilonMode::NearestBound),
            Err(tierblur::Error::DegenerateScene)
        ));
    }

    #[test]
    fn tiers_follow_thresholds(p in 0.0f64..60.0) {
        let t = assign_tier(p).unwrap();
        let expected = if p >= 30.0 { Tier::Easy } else if p >= 24.0 { Tier::Medium } else { Tier::Hard };
        prop_assert_eq!(t, expected);
    }

    #[test]
    fn cohens_d_symmetries(
        a in proptest::collection::vec(-100.0f64..100.0, 2..20),
        b in proptest::collection::vec(-100.0f64..100.0, 2..20),
        shift in -50.0f64..50.0,
        scale in 0.1f64..10.0,
    ) {
        let Ok(d) = cohens_d(&a, &b) else { return Ok(()) };
        let tol = 1e-9 * d.abs().max(1.0);
        prop_assert!((cohens_d(&b, &a).unwrap() + d).abs() < tol);
        let shifted = |v: &[f64]| v.iter().map(|x| x + shift).collect::<Vec<_>>();
        prop_assert!((cohens_d(&shifted(&a), &shifted(&b)).unwrap() - d).abs() < 1e-6 * d.abs().max(1.0));
        let scaled = |v: &[f64]| v.iter().map(|x| x * scale).collect::<Vec<_>>();
        prop_assert!((cohens_d(&scaled(&a), &scaled(&b)).unwrap() - d).abs() < 1e-6 * d.abs().max(1.0));
    }

    #[test]
    fn spearman_ignores_monotone_transforms(
        pairs in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 3..40),
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let Ok(c) = spearman(&x, &y) else { return Ok(()) };
        let tx: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let ty: Vec<f64> = y.iter().map(|v| v * v * v + v).collect();
        let c2 = spearman(&tx, &ty).unwrap();
        prop_assert!((c.rho - c2.rho).abs() < 1e-12);
    }

    #[test]
    fn kruskal_ignores_monotone_transforms(
        groups in proptest::collection::vec(proptest::collection::vec(-5.0f64..5.0, 1..10), 2..5),
    ) {
        let slices: Vec<&[f64]> = groups.iter().map(Vec::as_slice).collect();
        let Ok(kw) = kruskal_wallis(&slices) else { return Ok(()) };
        let moved: Vec<Vec<f64>> = groups.iter().map(|g| g.iter().map(|v| 2.0 * v.exp() - 1.0).collect()).collect();
        let moved_slices: Vec<&[f64]> = moved.iter().map(Vec::as_slice).collect();
        prop_assert!((kruskal_wallis(&moved_slices).unwrap().h - kw.h).abs() < 1e-9);
    }
}

fn corpus_strategy() -> impl Strategy<Value = Vec<SampleRecord>> {
    proptest::collection::vec(
        (0usize..6, 0usize..200, 18.0f64..36.0, 0.5f64..1.0, 0.0f64..3.0, any::<u64>()),
        1..60,
    )
    .prop_map(|rows| {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (v, n, p, s, m, h) in rows {
            if !seen.insert((v, n)) {
                continue;
            }
            let mut r = record(&format!("vid{v}"), n, p);
            r.ssim = s;
            r.motion = m;
            r.phash = PerceptualHash(h & 0xFF);
            out.push(r);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn filters_only_remove_and_account(records in corpus_strategy()) {
        let n = records.len();
        let out = filter_pairs(records.clone(), &FilterConfig::default(), None).unwrap();
        prop_assert_eq!(out.rejections.len(), n - out.kept.len());
        let mut remaining = n;
        for st in &out.stages {
            prop_assert_eq!(st.input, remaining);
            remaining -= st.rejected;
        }
        prop_assert_eq!(remaining, out.kept.len());
        let inputs: BTreeSet<(String, usize)> = records.iter().map(|r| (r.video.clone(), r.img_num)).collect();
        prop_assert!(out.kept.iter().all(|r| inputs.contains(&(r.video.clone(), r.img_num))));
        prop_assert!(out.kept.iter().all(|r| r.ssim >= 0.65));
        prop_assert!(out.kept.iter().all(|r| assign_tier(r.psnr).unwrap() == r.difficulty));
    }

    #[test]
    fn split_never_leaks(records in corpus_strategy(), seed in any::<u64>()) {
        let videos: BTreeSet<&str> = records.iter().map(|r| r.video.as_str()).collect();
        prop_assume!(videos.len() >= 2);
        let out = split_videos(records.clone(), &SplitConfig { trials: 200, ..Default::default() }, seed).unwrap();
        let train: BTreeSet<&str> = out.records.iter().filter(|r| r.split == Split::Train).map(|r| r.video.as_str()).collect();
        let test: BTreeSet<&str> = out.records.iter().filter(|r| r.split == Split::Test).map(|r| r.video.as_str()).collect();
        prop_assert!(train.is_disjoint(&test));
        prop_assert!(!train.is_empty() && !test.is_empty());
        prop_assert_eq!(out, split_videos(records, &SplitConfig { trials: 200, ..Default::default() }, seed).unwrap());
    }

    #[test]
    fn manifest_text_round_trips(records in corpus_strategy()) {
        let mut m = Manifest { provenance: Provenance::new(1), records };
        m.renumber();
        let text = m.to_jsonl().unwrap();
        let back = Manifest::parse(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.to_jsonl().unwrap(), text);
    }

    #[test]
    fn report_aggregates_match_naive_recount(records in corpus_strategy()) {
        let m = Manifest { provenance: Provenance::new(1), records };
        let rep = distribution_report(&m).unwrap();
        prop_assert_eq!(rep.groups[1..].iter().map(|g| g.count).sum::<usize>(), m.records.len());
        for (g, tier) in rep.groups[1..].iter().zip(TIERS) {
            let vals: Vec<f64> = m.records.iter().filter(|r| r.difficulty == tier).map(|r| r.motion).collect();
            match g.metrics["motion"] {
                None => prop_assert!(vals.is_empty()),
                Some(mo) => {
                    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                    prop_assert!((mo.mean - mean).abs() <= 1e-9 * mean.abs().max(1.0));
                }
            }
        }
        let table = suppression_report(&m.records);
        for tier in TIERS {
            let sel: Vec<&SampleRecord> = m.records.iter().filter(|r| r.difficulty == tier).collect();
            let a: Vec<f64> = sel.iter().map(|r| r.isp_sharp).collect();
            let b: Vec<f64> = sel.iter().map(|r| r.isp_blur).collect();
            prop_assert_eq!(table.row(Population::Combined).tier(tier).d, cohens_d(&a, &b).ok());
        }
    }

    #[test]
    fn scorecard_order_and_locality(
        rows in proptest::collection::vec((tier_strategy(), 15.0f64..40.0, 0.0f64..1.0), 1..30),
        extra_tier in tier_strategy(),
        rotate in 0usize..30,
    ) {
        let samples: Vec<SampleScore> = rows.iter().enumerate().map(|(i, &(tier, p, s))| SampleScore {
            img_id: i as u64,
            video: "v".into(),
            img_num: i,
            tier,
            psnr: PsnrValue::Finite(p),
            ssim: s,
            lpips: None,
        }).collect();
        let card = StratifiedScorecard::from_samples(&samples);
        let mut shuffled = samples.clone();
        shuffled.rotate_left(rotate % samples.len());
        shuffled.reverse();
        prop_assert_eq!(&StratifiedScorecard::from_samples(&shuffled), &card);

        let means: Vec<f64> = TIERS.iter().filter_map(|&t| card.tier(t).psnr).collect();
        let overall = card.overall.psnr.unwrap();
        let lo = means.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(overall >= lo - 1e-9 && overall <= hi + 1e-9);

        let mut more = samples.clone();
        more.push(SampleScore { img_id: 1000, tier: extra_tier, ..samples[0].clone() });
        let card2 = StratifiedScorecard::from_samples(&more);
        for t in TIERS {
            if t != extra_tier {
                prop_assert_eq!(card2.tier(t), card.tier(t));
            }
        }
        prop_assert_eq!(card2.overall.count, card.overall.count + 1);
    }
}

#[test]
fn flow_is_roughly_antisymmetric() {
    let tex = noise_texture(64, 64, 3, 3, 2.0, 40.0);
    for (dx, dy) in [(1isize, 0isize), (2, 1), (0, 3)] {
        let b = shift_wrap(&tex, dx, dy);
        let fwd = estimate_flow(&tex, &b, &FlowParams::default()).unwrap();
        let bwd = estimate_flow(&b, &tex, &FlowParams::default()).unwrap();
        assert!((mean_flow_magnitude(&fwd) - mean_flow_magnitude(&bwd)).abs() < 0.5);
        let [fx, fy] = fwd.central_mean_vector();
        let [bx, by] = bwd.central_mean_vector();
        assert!((fx + bx).abs() < 0.5 && (fy + by).abs() < 0.5);
    }
}

#[test]
fn window_motion_ignores_direction_of_time() {
    let frames = translating(64, 7, 4, 2.0, (2, 1));
    let reversed: Vec<ImageBuffer> = frames.iter().rev().cloned().collect();
    let p = FlowParams::default();
    let fwd = window_motion(&frames, 0, 6, &p).unwrap();
    let bwd = window_motion(&reversed, 0, 6, &p).unwrap();
    assert!((fwd - bwd).abs() < 0.05 * fwd, "{fwd} vs {bwd}");
}

#[test]
fn uniform_field_magnitude() {
    assert_eq!(mean_flow_magnitude(&FlowField::zeros(4, 4)), 0.0);
    assert_eq!(mean_flow_magnitude(&FlowField::new(2, 2, vec![[3.0, 4.0]; 4]).unwrap()), 5.0);
    assert!(FlowField::new(2, 2, vec![[0.0, f32::NAN]; 4]).is_err());
}

#[test]
fn synthesis_is_deterministic() {
    let frames = translating(40, 30, 8, 2.0, (1, 0));
    let target = TargetRange::default_for(Tier::Medium);
    let a = synthesize_pair(&frames, 15, &target, EpsilonMode::NearestBound).unwrap();
    let b = synthesize_pair(&frames, 15, &target, EpsilonMode::NearestBound).unwrap();
    assert_eq!(a.window_size, b.window_size);
    assert_eq!(a.blur, b.blur);
}

#[test]
fn equal_epsilon_goes_to_the_smaller_window() {
    let frames = translating(40, 30, 8, 2.0, (1, 0));
    let psnrs = window_psnrs(&frames, 15);
    let (p3, p5) = (psnrs[0].1.unwrap(), psnrs[1].1.unwrap());
    assert!(p3 > p5);
    // both windows sit exactly on a bound
    let target = TargetRange::new(p5, p3, Tier::Medium).unwrap();
    let r = synthesize_pair(&frames, 15, &target, EpsilonMode::NearestBound).unwrap();
    assert_eq!(r.window_size, 3);
    assert_eq!(r.epsilon, 0.0);
}
