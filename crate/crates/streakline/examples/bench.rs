use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use streakline::schedule::*;

fn main() {
    let dist = SeriesDistribution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = Instant::now();
    let n = 4000;
    for _ in 0..n {
        let _ = realistic_schedule(30, 162, &dist, &mut rng).unwrap();
    }
    println!("realistic 30x162: {:.1} us/schedule", t.elapsed().as_micros() as f64 / n as f64);
}
