//! Type A quantum Pieri rule on Gr(2,5) in partition labels.
use quantum_pieri::pieri::pieri_a;
use quantum_pieri::shapes::TypeAPartition;
use quantum_pieri::GrassmannianDesc;

fn main() -> quantum_pieri::Result<()> {
    let gd = GrassmannianDesc::gr(2, 5)?;
    for (p, a) in [(2, "[1,0]"), (3, "[3,1]"), (1, "[3,3]")] {
        let a: TypeAPartition = a.parse()?;
        let prod = pieri_a(&gd, p, &a)?;
        let show = |v: &[TypeAPartition]| match v.len() {
            0 => "0".to_string(),
            _ => v.iter().map(|x| format!("σ{x}")).collect::<Vec<_>>().join(" + "),
        };
        println!("σ_{p} ⋆ σ{a} = {} + t·({})", show(&prod.classical), show(&prod.quantum));
    }
    Ok(())
}
