//! Quantum Pieri rule on OG(2,7) and OG(3,7), degrees up to two.
use quantum_pieri::pieri::{pieri_bd, special_class, sweep_pieri};
use quantum_pieri::{Grassmannian, GrassmannianDesc};

fn main() -> quantum_pieri::Result<()> {
    for space in ["OG:2:7", "OG:3:7"] {
        let g = Grassmannian::new(space.parse::<GrassmannianDesc>()?)?;
        let reps = g.parabolic().min_coset_reps();
        let v = reps.last().expect("nonempty");
        let sc = special_class(g.desc(), 1)?;
        let r = pieri_bd(&g, 1, v)?;
        println!("{}: c_1(S*) = {}·σ[{}]", g.desc().name(), sc.scale, sc.element.word_string());
        println!("  σ^1 ⋆ σ[{}] = {}", v.word_string(), r.to_tclass().render());
        let all = sweep_pieri(&g)?;
        println!("  sweep: {}/{} match the oracle", all.iter().filter(|r| r.matched).count(), all.len());
    }
    Ok(())
}
