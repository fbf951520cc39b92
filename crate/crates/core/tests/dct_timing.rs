//! DCT cost should grow like n log n. Timings are the minimum over
//! interleaved repetitions so that a noisy neighbour does not skew one size.

use std::time::Instant;

use logcheb::DctPlan;

#[test]
fn dct_scales_near_linearly() {
    let sizes: Vec<usize> = (8..=16).map(|p| 1usize << p).collect();
    let plans: Vec<DctPlan> = sizes.iter().map(|&n| DctPlan::new(n).unwrap()).collect();
    let inputs: Vec<Vec<f64>> = sizes
        .iter()
        .map(|&n| {
            (0..n)
                .map(|i| ((i * 7919) % 1000) as f64 / 1000.0)
                .collect()
        })
        .collect();
    let mut best = vec![f64::INFINITY; sizes.len()];
    for _ in 0..30 {
        for (i, plan) in plans.iter().enumerate() {
            let start = Instant::now();
            let v = plan.dct3(&plan.dct2(&inputs[i]).unwrap()).unwrap();
            best[i] = best[i].min(start.elapsed().as_secs_f64());
            std::hint::black_box(v);
        }
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = best.iter().map(|t| t.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!(slope < 1.25, "slope {slope:.3}, times {best:?}");
}
