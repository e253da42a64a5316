use entdecay::classify::{zero_set, classify, ClassifierConfig};
use entdecay::dynamics::{DephasingFunction, NegativityCurve, StateFamily};

fn main() {
    let t_max = 100.0;
    let cfg = ClassifierConfig { t_max, ..ClassifierConfig::default() };
    let gammas = [0.004, 0.008, 0.012, 0.016, 0.02];
    let omegas = [0.25, 0.275, 0.3, 0.325, 0.35, 0.375, 0.4, 0.425, 0.45, 0.475];
    for (i, &gamma) in gammas.iter().enumerate() {
        for (j, &omega) in omegas.iter().enumerate() {
            let zeta = DephasingFunction::damped_cosine(gamma, omega).unwrap();
            let n = 2 + (i + j) % 4;
            for family in [StateFamily::Ghz, StateFamily::W] {
                let curve = NegativityCurve::new(family, n, zeta.clone(), t_max).unwrap();
                let zs = match zero_set(&curve, &cfg) {
                    Ok(z) => z,
                    Err(e) => { println!("zero_set ERR {family:?} n={n} g={gamma} w={omega}: {e}"); continue; }
                };
                match classify(&zs) {
                    Ok(c) => { if format!("{c}") != "B" {
                        println!("NOT B: {family:?} n={n} g={gamma} w={omega}: {c} intervals={:?} pts={}", zs.intervals, zs.points.len()); } }
                    Err(e) => println!("classify ERR {family:?} n={n} g={gamma} w={omega}: {e}; intervals={:?} touching={} pts={}", zs.intervals, zs.tail_touching, zs.points.len()),
                }
            }
        }
    }
}
