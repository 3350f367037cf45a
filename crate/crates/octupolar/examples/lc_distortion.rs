//! Distortion characteristics of a director gradient, its Oseen–Frank
//! energy in both forms, and the maxima of the octupolar potential for
//! the pure modes.
//!
//! cargo run --release --example lc_distortion

use octupolar::lc_distortion::*;

fn main() -> octupolar::Result<()> {
    // a director field n = e3 with a mix of all four modes
    let g = [[0.9, -0.2, -0.3], [0.6, -0.1, 0.5], [0.0, 0.0, 0.0]];
    let dg = DirectorGradient::new(g, [0.0, 0.0, 1.0])?;
    let dc = decompose_gradient(&dg)?;
    println!("S={:.6} T={:.6} b=({:.6}, {:.6}) q={:.6}", dc.splay, dc.twist, dc.b1, dc.b2, dc.q);
    println!("frame n1={:?} n2={:?}", dc.frame.n1, dc.frame.n2);

    let k = FrankConstants { k11: 1.0, k22: 0.6, k33: 1.4, k24: 0.5 };
    let w = oseen_frank(&dc, &k)?;
    println!("W classic {:.15}  selinger {:.15}  Ericksen {}", w.w_classic, w.w_selinger, w.ericksen_ok);

    let pure = [
        ("octupolar splay q=1", DistortionCharacteristics::new(0.0, 0.0, 0.0, 0.0, 1.0)?),
        ("bend b=1", DistortionCharacteristics::new(0.0, 0.0, 1.0, 0.0, 0.0)?),
    ];
    for (name, dc) in pure {
        let values: Vec<String> =
            potential_maxima(&dc, 20_000)?.iter().map(|m| format!("{:.12}", m.lambda)).collect();
        println!("{name}: maxima {}", values.join(" "));
    }
    println!("expected 2/(3√3) = {:.12}, 16/(15√15) = {:.12}, 1/5", 2.0 / (3.0 * 3f64.sqrt()), 16.0 / (15.0 * 15f64.sqrt()));
    Ok(())
}
