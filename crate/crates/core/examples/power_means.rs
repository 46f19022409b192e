//! The power mean family over a few rank lists, from min to max.

use rank_adjust::{power_mean, PowerMeanOrder};

fn main() -> rank_adjust::Result<()> {
    let orders = [
        ("min", PowerMeanOrder::MIN),
        ("harmonic", PowerMeanOrder::HARMONIC),
        ("geometric", PowerMeanOrder::GEOMETRIC),
        ("arithmetic", PowerMeanOrder::ARITHMETIC),
        ("quadratic", PowerMeanOrder::QUADRATIC),
        ("max", PowerMeanOrder::MAX),
    ];
    for ranks in [vec![1.0, 2.0, 4.0], vec![1.0, 1.0, 1000.0], vec![3.0; 5]] {
        println!("ranks {ranks:?}");
        for (name, p) in orders {
            println!("  {name:>10}  {:.6}", power_mean(&ranks, p)?);
        }
    }
    // orders far from zero stay finite thanks to the log-space evaluation
    let p = PowerMeanOrder::new(500.0)?;
    println!("p=500 over [1e300, 1]: {:e}", power_mean(&[1e300, 1.0], p)?);
    Ok(())
}
