use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use streakline::core::{GameRecord, TeamId};
use streakline::ingest::write_simple_csv;
use streakline::models::{ScoreModel, SimpleWeibullModel};
use streakline::schedule::{realistic_schedule, SeriesDistribution};
use streakline::weibull::WeibullParams;

fn main() {
    let model = ScoreModel::Simple(SimpleWeibullModel {
        home: WeibullParams::new(4.2, -0.4, 1.8).unwrap(),
        away: WeibullParams::new(4.0, -0.5, 1.7).unwrap(),
        max_runs: 30,
    });
    let sampler = model.sampler().unwrap();
    let dist = SeriesDistribution::default();
    let teams: Vec<TeamId> = (0..8).map(|i| TeamId::new(&format!("T{i:02}")).unwrap()).collect();
    let mut records = Vec::new();
    for year in 1901..=1930 {
        let mut rng = ChaCha8Rng::seed_from_u64(year as u64);
        let schedule = realistic_schedule(8, 60, &dist, &mut rng).unwrap();
        let base = chrono::NaiveDate::from_ymd_opt(year, 4, 1).unwrap();
        for (slot, &(h, a)) in schedule.games.iter().enumerate() {
            let (hr, ar) = sampler.sample(&mut rng).unwrap();
            records.push(GameRecord::new(
                base + chrono::Duration::days((slot / 4) as i64),
                (slot % 4) as u8,
                teams[h as usize].clone(),
                teams[a as usize].clone(),
                u32::from(hr),
                u32::from(ar),
            ).unwrap());
        }
    }
    let mut buf = Vec::new();
    write_simple_csv(&records, &mut buf).unwrap();
    std::fs::write("/tmp/synthetic_history.csv", buf).unwrap();
    eprintln!("wrote {} games", records.len());
}
