//! Times one point count of a worked example: `bench_counts <p> <n> [orbits]`.

use std::time::Instant;

use k3_core::counting::{count_points, CountConfig, Strategy};
use k3_core::geometry::fixtures::{int_poly, C2_ALPHA, C2_BETA, C3_SEXTIC};
use k3_core::geometry::K3Surface;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: u32 = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let orbits = args.get(3).is_some_and(|a| a == "orbits");
    let s = if p == 2 {
        K3Surface::from_texts(2, C2_ALPHA, C2_BETA).unwrap()
    } else {
        K3Surface::double_cover(3, &int_poly(3, C3_SEXTIC)).unwrap()
    };
    let cfg = CountConfig {
        workers: 1,
        strategy: if orbits { Strategy::GaloisOrbits } else { Strategy::Direct },
        ..CountConfig::default()
    };
    let t = Instant::now();
    let c = count_points(&s, n, &cfg).unwrap();
    println!("p={p} n={n} N={c} {:.2}s", t.elapsed().as_secs_f64());
}
