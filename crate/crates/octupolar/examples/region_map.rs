//! Critical-point counts over the (ρ, K) plane, printed as a character map.
//! The boundary between 10 and 14 is the separatrix K = g(ρ) at χ = −π/2.
//!
//! cargo run --release --example region_map -- -1.5707963

use octupolar::separatrix::region_scan;

fn main() -> octupolar::Result<()> {
    let chi = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(-std::f64::consts::FRAC_PI_2);
    let (n, m, k_max) = (60, 24, 1.2);
    let samples = region_scan(chi, n, k_max, m)?;
    for j in (0..m).rev() {
        let line: String = (0..n)
            .map(|i| match samples[i * m + j].count {
                Some(10) => '.',
                Some(12) => '=',
                Some(14) => '#',
                Some(8) => '8',
                _ => '?',
            })
            .collect();
        println!("{:5.2} {line}", samples[j].bigk);
    }
    println!("      ρ from 0 to 2;  . = 10   = = 12   # = 14");
    Ok(())
}
