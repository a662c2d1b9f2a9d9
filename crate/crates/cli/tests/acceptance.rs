//! Acceptance suite. Every criterion runs at its pinned tolerance and
//! reports one PASS/FAIL line; the test fails if any criterion fails.
//!
//! cargo test -p tstego-cli --test acceptance -- --nocapture

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use tstego_cli::imageio::{encode_png, read_image};
use tstego_core::crypto::{complement_bits, keystream_xor, swap_even_odd};
use tstego_core::metrics::{hist_l1_delta, histogram, mse, ncc, psnr_from_mse, psnr_with, rmse};
use tstego_core::{
    capacity_bytes, embed, extract, BaselineParity, BitSeq, Keystream, PeakMode, RgbImage,
    StegoError, StegoKey,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize) -> RgbImage {
    let px = (0..h * w).map(|_| rng.random()).collect();
    RgbImage::new(h, w, px).unwrap()
}

fn random_bytes(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill(&mut v[..]);
    v
}

struct Case {
    cover: RgbImage,
    stego: RgbImage,
    key: StegoKey,
    msg: Vec<u8>,
}

/// 200 seeded (cover, key, message) triples: height 1..=128, width
/// 33..=128, key 1..=16 bytes, message 0..=capacity bytes. A few saturated
/// covers are appended for the displacement check.
fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut covers: Vec<RgbImage> = (0..200)
        .map(|_| {
            let (h, w) = (rng.random_range(1..=128), rng.random_range(33..=128));
            random_image(&mut rng, h, w)
        })
        .collect();
    covers.push(RgbImage::filled(16, 40, [0, 0, 0]).unwrap());
    covers.push(RgbImage::filled(40, 16, [255, 255, 255]).unwrap());
    let checker = (0..64 * 64)
        .map(|i| {
            if (i / 64 + i % 64) % 2 == 0 {
                [0, 255, 0]
            } else {
                [255, 0, 255]
            }
        })
        .collect();
    covers.push(RgbImage::new(64, 64, checker).unwrap());

    covers
        .into_iter()
        .map(|cover| {
            let key_len = rng.random_range(1..=16);
            let key = StegoKey::new(random_bytes(&mut rng, key_len)).unwrap();
            let msg_len = rng.random_range(0..=capacity_bytes(&cover));
            let msg = random_bytes(&mut rng, msg_len);
            let (stego, _) = embed(&cover, &key, &msg).unwrap();
            Case {
                cover,
                stego,
                key,
                msg,
            }
        })
        .collect()
}

fn c1_round_trip(cases: &[Case], embed_secs: f64) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (i, c) in cases.iter().enumerate() {
        let got = extract(&c.stego, &c.key).map_err(|e| format!("case {i}: {e}"))?;
        ensure!(
            got == c.msg,
            "case {i}: recovered {} bytes, expected {}",
            got.len(),
            c.msg.len()
        );
        checked += 1;
    }
    let secs = embed_secs + start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.2}s");
    Ok(format!("{checked} triples byte-exact in {secs:.2}s"))
}

fn c2_channel_purity(cases: &[Case]) -> Outcome {
    for (i, c) in cases.iter().enumerate() {
        let (cr, cg, _) = c.cover.split_channels();
        let (sr, sg, _) = c.stego.split_channels();
        ensure!(cr == sr && cg == sg, "case {i}: red/green changed");
        let dr = hist_l1_delta(&histogram(&cr), &histogram(&sr)).unwrap();
        let dg = hist_l1_delta(&histogram(&cg), &histogram(&sg)).unwrap();
        ensure!(dr == 0 && dg == 0, "case {i}: hist deltas r={dr} g={dg}");
    }
    Ok(format!(
        "{} stego images, red/green bit-identical, hist_delta_r = hist_delta_g = 0",
        cases.len()
    ))
}

fn c3_bounded_displacement(cases: &[Case]) -> Outcome {
    let mut max = 0;
    for (i, c) in cases.iter().enumerate() {
        for (cp, sp) in c.cover.pixels().iter().zip(c.stego.pixels()) {
            let d = (cp[2] as i16 - sp[2] as i16).abs();
            ensure!(d <= 2, "case {i}: blue moved by {d}");
            max = max.max(d);
        }
    }
    Ok(format!(
        "max |stego - cover| on blue = {max} (saturated covers included)"
    ))
}

fn c4_metric_consistency(cases: &[Case]) -> Outcome {
    let mut worst = 0.0f64;
    for c in cases {
        let m = mse(&c.cover, &c.stego).unwrap();
        let r = rmse(&c.cover, &c.stego).unwrap();
        if m > 0.0 {
            worst = worst.max((r * r - m).abs() / m);
        } else {
            ensure!(r == 0.0, "rmse nonzero for zero mse");
        }
    }
    ensure!(worst <= 1e-9, "rmse^2 vs mse relative error {worst:e}");
    let psnr = psnr_from_mse(0.4487, 255.0);
    ensure!(
        (psnr - 51.61).abs() <= 0.01,
        "psnr(0.4487, 255) = {psnr:.4}"
    );
    Ok(format!(
        "max rel |rmse^2 - mse| = {worst:.1e}; psnr(mse 0.4487, c_max 255) = {psnr:.4} dB"
    ))
}

struct Distortion {
    parity: BaselineParity,
    blue_mse: f64,
    psnr: f64,
    ncc: f64,
}

/// Full-capacity embeds on uniform random 256x256 covers, seeds 0.. until
/// both baseline parities have 20 samples. The baseline follows the first
/// keystream bit (the header MSB is 0), so each seed draws its own key.
fn distortion_runs() -> Vec<Distortion> {
    let mut runs = Vec::new();
    let (mut odd, mut even) = (0, 0);
    let mut seed = 0u64;
    while odd < 20 || even < 20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        seed += 1;
        let cover = random_image(&mut rng, 256, 256);
        let key = StegoKey::new(random_bytes(&mut rng, 8)).unwrap();
        let msg = random_bytes(&mut rng, capacity_bytes(&cover));
        let (stego, report) = embed(&cover, &key, &msg).unwrap();
        let slot = if report.baseline.is_odd() {
            &mut odd
        } else {
            &mut even
        };
        if *slot >= 20 {
            continue;
        }
        *slot += 1;
        let blue_sq: u64 = cover
            .pixels()
            .iter()
            .zip(stego.pixels())
            .map(|(c, s)| (c[2] as i64 - s[2] as i64).pow(2) as u64)
            .sum();
        runs.push(Distortion {
            parity: report.baseline,
            blue_mse: blue_sq as f64 / cover.pixel_count() as f64,
            psnr: psnr_with(&cover, &stego, PeakMode::Fixed255).unwrap(),
            ncc: ncc(&cover, &stego).unwrap(),
        });
    }
    runs
}

fn c5_distortion(runs: &[Distortion]) -> Outcome {
    let mut detail = Vec::new();
    for (parity, want_mse, mse_tol, want_psnr) in [
        (BaselineParity::Odd, 0.5, 0.05, 55.9),
        (BaselineParity::Even, 1.5, 0.10, 51.1),
    ] {
        let sel: Vec<_> = runs.iter().filter(|r| r.parity == parity).collect();
        ensure!(sel.len() == 20, "{parity}: {} samples", sel.len());
        let n = sel.len() as f64;
        let blue = sel.iter().map(|r| r.blue_mse).sum::<f64>() / n;
        let psnr = sel.iter().map(|r| r.psnr).sum::<f64>() / n;
        ensure!(
            (blue - want_mse).abs() <= mse_tol,
            "{parity}: blue mse {blue:.4}, want {want_mse} ± {mse_tol}"
        );
        ensure!(
            (psnr - want_psnr).abs() <= 0.5,
            "{parity}: psnr {psnr:.3}, want {want_psnr} ± 0.5"
        );
        detail.push(format!("{parity}: blue mse {blue:.4}, psnr {psnr:.3} dB"));
    }
    Ok(detail.join("; "))
}

fn c6_key_sensitivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let (mut corrupt, mut differing) = (0, 0);
    for trial in 0..100 {
        let cover = random_image(&mut rng, 48, 48);
        let key_len = rng.random_range(1..=16);
        let key_bytes = random_bytes(&mut rng, key_len);
        // message at least as long as the key, so the frame spans a full keystream period
        let msg_len = rng.random_range(key_len..=capacity_bytes(&cover));
        let msg = random_bytes(&mut rng, msg_len);
        let bit = rng.random_range(0..8 * key_len);
        let mut flipped = key_bytes.clone();
        flipped[bit / 8] ^= 0x80 >> (bit % 8);

        let (stego, _) = embed(&cover, &StegoKey::new(key_bytes).unwrap(), &msg).unwrap();
        match extract(&stego, &StegoKey::new(flipped).unwrap()) {
            Err(StegoError::CorruptHeader { .. }) => corrupt += 1,
            Ok(got) if got != msg => differing += 1,
            Ok(_) => return Err(format!("trial {trial}: flipped key recovered the message")),
            Err(e) => return Err(format!("trial {trial}: unexpected error {e}")),
        }
    }
    Ok(format!(
        "100 one-bit key flips: {corrupt} corrupt header, {differing} wrong bytes, 0 recoveries"
    ))
}

fn c7_ncc(cases: &[Case], runs: &[Distortion]) -> Outcome {
    for (i, c) in cases.iter().enumerate().take(200) {
        let v = ncc(&c.cover, &c.cover).unwrap();
        ensure!(v == 1.0, "case {i}: ncc(c, c) = {v:e}");
    }
    let min = runs.iter().map(|r| r.ncc).fold(f64::INFINITY, f64::min);
    ensure!(min >= 0.999, "min stego ncc {min:.6}");
    Ok(format!(
        "ncc(c, c) == 1.0 on 200 covers; min stego ncc {min:.6} over {} runs",
        runs.len()
    ))
}

fn c8_involutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..1000 {
        let len = 2 * rng.random_range(0..=256);
        let bits: BitSeq = (0..len).map(|_| rng.random::<bool>()).collect();
        ensure!(
            complement_bits(&complement_bits(&bits)) == bits,
            "complement, seq {i}"
        );
        let swapped = swap_even_odd(&bits).unwrap();
        ensure!(swap_even_odd(&swapped).unwrap() == bits, "swap, seq {i}");
        let ks_len = rng.random_range(1..=128);
        let ks = Keystream::from_bits((0..ks_len).map(|_| rng.random::<bool>()).collect()).unwrap();
        ensure!(
            keystream_xor(&keystream_xor(&bits, &ks), &ks) == bits,
            "xor, seq {i}"
        );
    }
    Ok("complement, swap_even_odd, keystream_xor involutive on 1000 sequences".into())
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tstego"))
        .args(args)
        .env_remove("STEGO_KEY")
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn c9_cli() -> Outcome {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cover = random_image(&mut rng, 64, 80);
    let cover_path = dir.path().join("cover.png");
    fs::write(&cover_path, encode_png(&cover).unwrap()).unwrap();
    let msg_path = dir.path().join("msg.bin");
    let msg = random_bytes(&mut rng, capacity_bytes(&cover));
    fs::write(&msg_path, &msg).unwrap();
    let stego_path = dir.path().join("stego.png");
    let out_path = dir.path().join("out.bin");

    let o = run_cli(&[
        "embed",
        "--cover",
        s(&cover_path),
        "--in",
        s(&msg_path),
        "--out",
        s(&stego_path),
        "--key",
        "acceptance",
    ]);
    ensure!(
        o.status.success(),
        "embed failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let reread = read_image(&stego_path).map_err(|e| e.to_string())?;
    ensure!(
        extract(&reread, &StegoKey::new(*b"acceptance").unwrap())
            .ok()
            .as_ref()
            == Some(&msg),
        "library extract of reread PNG"
    );
    let o = run_cli(&[
        "extract",
        "--stego",
        s(&stego_path),
        "--out",
        s(&out_path),
        "--key",
        "acceptance",
    ]);
    ensure!(
        o.status.success(),
        "extract failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    ensure!(
        fs::read(&out_path).unwrap() == msg,
        "CLI round trip differs"
    );

    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    for (name, h, w) in [
        ("one.png", 64, 64),
        ("two.png", 48, 96),
        ("three.png", 80, 40),
    ] {
        fs::write(
            corpus.join(name),
            encode_png(&random_image(&mut rng, h, w)).unwrap(),
        )
        .unwrap();
    }
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let out_dir = dir.path().join(run);
        let o = run_cli(&[
            "bench",
            "--corpus",
            s(&corpus),
            "--out",
            s(&out_dir),
            "--seed",
            "1234",
            "--payload-bytes",
            "100",
            "--payload-bytes",
            "300",
            "--payload-bytes",
            "500",
            "--dims",
            "32x32",
            "--dims",
            "64x48",
            "--dims",
            "128x128",
        ]);
        ensure!(
            o.status.success(),
            "bench failed: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let files: Vec<Vec<u8>> = ["images.csv", "payload_sweep.csv", "dimension_sweep.csv"]
            .iter()
            .map(|f| fs::read(out_dir.join(f)).unwrap())
            .collect();
        outputs.push(files);
    }
    ensure!(outputs[0] == outputs[1], "bench CSVs differ between runs");
    Ok(format!(
        "{}-byte payload round-tripped via PNG; 3 bench CSVs byte-identical across 2 runs",
        msg.len()
    ))
}

fn record(results: &mut Vec<(String, Outcome)>, name: &str, f: impl FnOnce() -> Outcome) {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    results.push((name.to_owned(), outcome));
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let cases = corpus();
    let embed_secs = start.elapsed().as_secs_f64();
    let runs = distortion_runs();
    let mut results = Vec::new();
    record(&mut results, "C1 round-trip", || {
        c1_round_trip(&cases, embed_secs)
    });
    record(&mut results, "C2 channel purity", || {
        c2_channel_purity(&cases)
    });
    record(&mut results, "C3 bounded displacement", || {
        c3_bounded_displacement(&cases)
    });
    record(&mut results, "C4 metric self-consistency", || {
        c4_metric_consistency(&cases)
    });
    record(&mut results, "C5 statistical distortion", || {
        c5_distortion(&runs)
    });
    record(&mut results, "C6 key sensitivity", c6_key_sensitivity);
    record(&mut results, "C7 ncc sanity", || c7_ncc(&cases, &runs));
    record(&mut results, "C8 crypto involutions", c8_involutions);
    record(&mut results, "C9 end-to-end cli", c9_cli);

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name:<28} {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<28} {why}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
