//! Cartan matrix, positive roots and coroots of C_3.
use quantum_pieri::{LieType, RootSystem};

fn main() -> quantum_pieri::Result<()> {
    let rs = RootSystem::new(LieType::C, 3)?;
    let datum = rs.cartan_datum();
    println!("{}: Cartan matrix {:?}", rs.name(), datum.cartan);
    for r in &datum.positive_roots {
        println!("{:<14} eps {:?}  coroot {:?}", r.text, r.eps, r.coroot);
    }
    Ok(())
}
