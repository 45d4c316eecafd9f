//! Signed permutations: words, one-line forms, lengths and W^P.
use quantum_pieri::{LieType, ParabolicData, WeylElement};

fn main() -> quantum_pieri::Result<()> {
    let w = WeylElement::parse(LieType::B, 3, "s3 s2 s3 s1")?;
    println!("{} = {} of length {}", w.word_string(), w.one_line_string(), w.length());
    println!("inverse {}", w.inverse().word_string());

    let pd = ParabolicData::maximal(LieType::C, 3, 2)?;
    let reps = pd.min_coset_reps();
    println!("|W^P| for IG(2,6): {}", reps.len());
    for len in 0..=3 {
        let words: Vec<String> = pd.min_coset_reps_of_length(len).map(|w| w.word_string()).collect();
        println!("  length {len}: {}", words.join(", "));
    }
    Ok(())
}
