//! Peterson-Woodward lifts of t^d for a few Grassmannians.
use quantum_pieri::qhp::{lambda_b_closed_form, pw_lift};
use quantum_pieri::GrassmannianDesc;

fn main() -> quantum_pieri::Result<()> {
    for space in ["IG:3:10", "OG:2:9", "OG:3:7", "OGeven:2:10", "Gr:2:5"] {
        let gd: GrassmannianDesc = space.parse()?;
        for d in 1..=3 {
            let lift = pw_lift(&gd, d)?;
            assert_eq!(lift.lambda_b, lambda_b_closed_form(&gd, d));
            println!(
                "{:<10} d={d}  λ_B={:?}  Δ_P'={:?}  ω_Pω_P'={}",
                gd.name(),
                lift.lambda_b.to_vec(),
                lift.delta_p_prime,
                lift.omega_word()
            );
        }
    }
    Ok(())
}
