//! Quantum Pieri rule on IG(2,8), checked against the oracle.
use quantum_pieri::pieri::{check_pieri, pieri_c, special_class};
use quantum_pieri::{Grassmannian, GrassmannianDesc};

fn main() -> quantum_pieri::Result<()> {
    let g = Grassmannian::new(GrassmannianDesc::ig(2, 8)?)?;
    let v = g.element(&[1, 3, 4, 3, 2])?;
    for p in 1..=2 {
        let u = special_class(g.desc(), p)?.element;
        let r = pieri_c(&g, p, &v)?;
        println!("σ^{p} = σ[{}], v = {}: {}", u.word_string(), v.word_string(), r.theorem_case);
        println!("  {}", r.to_tclass().render());
        println!("  matches oracle: {}", check_pieri(&g, p, &v)?.matched);
    }
    Ok(())
}
