//! Quantum products in QH*(G/B) and one Gromov-Witten invariant.
use quantum_pieri::{CurveDegree, LieType, QuantumEngine};

fn main() -> quantum_pieri::Result<()> {
    let e = QuantumEngine::for_type(LieType::C, 2)?;
    let s1 = e.element(&[1])?;
    let s2 = e.element(&[2])?;
    println!("σ[s1] ⋆ σ[s1]:\n{}\n", e.quantum_multiply(&s1, &s1)?.render());
    println!("σ[s2] ⋆ σ[s2 s1 s2]:\n{}\n", e.quantum_multiply(&s2, &e.element(&[2, 1, 2])?)?.render());
    let lambda = CurveDegree::from_coords(&[0, 1])?;
    println!("N_(s2,s2)^(id, α2∨) = {}", e.gw_invariant(&s2, &s2, &e.identity(), &lambda)?);
    Ok(())
}
