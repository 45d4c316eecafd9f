//! Shapes of IG(2,8), the maps between P_k and P_{k−1}, and Γ-sets on OG(2,7).
use quantum_pieri::shapes::{
    barred_permutation, gamma_sets, pieri_b_shapes, pieri_maps, select_gamma_reading, shape_to_element, star_word, Shape,
};
use quantum_pieri::{Grassmannian, GrassmannianDesc, LieType};

fn main() -> quantum_pieri::Result<()> {
    let (n, k) = (4, 2);
    println!("|P_2| for n = 4: {}", Shape::all(n, k).len());
    let a = Shape::parse("(4,2 // 3)", n, k)?;
    let w = shape_to_element(&a, LieType::C)?;
    println!("{a}: word {:?}, one-line {}, barred {:?}", star_word(&a), w.one_line_string(), barred_permutation(n, &star_word(&a)));
    let m = pieri_maps(&a, &Shape::parse("(3,2 // 1)", n, k)?, &a);
    println!("maps: {}", serde_json::to_string(&m).expect("serializable"));

    let g = Grassmannian::new(GrassmannianDesc::og(2, 7)?)?;
    let (reading, _) = select_gamma_reading(&g)?;
    let reading = reading.expect("a reading passes");
    println!("Γ2 reading that passes on OG(2,7): {reading:?}");
    let mu = Shape::parse("(3,2 // 1)", 3, 1)?;
    let sets = gamma_sets(&mu, reading);
    let show = |v: &[Shape]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!("μ = {mu}: Γ1 = {{{}}}, Γ2 = {{{}}}", show(&sets.gamma1), show(&sets.gamma2));

    let r = pieri_b_shapes(&g, 1, &Shape::parse("(3 // 2,1)", 3, 2)?, reading)?;
    for t in &r.terms {
        println!("  t^{} {} σ{}  [{}]", t.d, t.coeff, t.shape, t.case);
    }
    Ok(())
}
