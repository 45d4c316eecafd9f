//! The degree-two invariant of IG(3,10) and its classical reduction.
use quantum_pieri::{CurveDegree, Grassmannian, GrassmannianDesc, LieType, WeylElement};

fn main() -> quantum_pieri::Result<()> {
    let g = Grassmannian::new(GrassmannianDesc::ig(3, 10)?)?;
    let c = |s: &str| WeylElement::parse(LieType::C, 5, s);
    let u = c("s2 s1 s4 s3 s2 s5 s4 s3")?;
    let v = c("s1 s5 s4 s3 s2 s4 s5 s4 s3")?;
    let lift = g.lift(2)?;
    println!("λ_B = {:?}, ω_Pω_P' = {}", lift.lambda_b.to_vec(), lift.omega_word());
    for w in ["s3", "s2"] {
        let w = c(w)?;
        println!("w = {}: in W^P {}, N_(u,v)^(w,2) = {}", w.word_string(), g.parabolic().is_min_rep(&w), g.gw_invariant(&u, &v, &w, 2).unwrap_or_default());
    }
    let (v1, w1) = (c("s1 s3")?, c("s3 s2 s1 s5 s4 s3 s2 s5 s4 s3")?);
    println!("N_(u,v')^(w',0) = {}", g.engine().gw_invariant(&u, &v1, &w1, &CurveDegree::zero(5))?);
    println!("σ^u ⋆ σ^v = {}", g.quantum_multiply(&u, &v)?.render());
    Ok(())
}
