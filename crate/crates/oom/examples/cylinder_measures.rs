//! The Boolean algebra of cylinder sets and its conditional pre-measures.
//!
//! ```bash
//! cargo run -p oom --example cylinder_measures
//! ```

use oom::cylinder::{additivity_residual, majorization_slack, premeasure};
use oom::{BuiltinModel, CylinderSet, Word};

fn main() -> oom::Result<()> {
    let model = BuiltinModel::TwoStateSticky.build();
    let alphabet = model.alphabet().clone();

    // Set algebra: lift, complement, intersect, union.
    let e_a = CylinderSet::parse(&alphabet, "1:a")?;
    println!("E(a) lifted to level 3: {}", e_a.lift(3)?.to_text());
    println!("complement of E(a):     {}", e_a.complement()?.to_text());
    let e_ab = CylinderSet::parse(&alphabet, "2:ab")?;
    println!(
        "E(a) meet E(ab):        {}",
        e_a.intersect(&e_ab)?.to_text()
    );
    let full = CylinderSet::full_space(alphabet.clone());
    println!(
        "E(a) join E(b) fills the space: {}",
        e_a.union(&e_a.complement()?)?.equivalent(&full)?
    );

    // Measures: the whole space carries mass one under any possible past.
    let eps = Word::empty();
    let a = alphabet.parse_word("a")?;
    println!("\nmeasure of the whole space:        {}", premeasure(&model, &eps, &full)?);
    println!(
        "measure of E(aa) u E(ab):          {}",
        premeasure(&model, &eps, &CylinderSet::parse(&alphabet, "2:aa,ab")?)?
    );
    println!(
        "same set conditioned on a:         {}",
        premeasure(&model, &a, &CylinderSet::parse(&alphabet, "2:aa,ab")?)?
    );

    // Finite additivity across a mixed-level disjoint family.
    let parts = [
        CylinderSet::parse(&alphabet, "2:aa")?,
        CylinderSet::parse(&alphabet, "2:ab")?,
        CylinderSet::parse(&alphabet, "1:b")?,
    ];
    println!(
        "\nadditivity residual over a 3-part split of the space: {:.3e}",
        additivity_residual(&model, &a, &parts)?
    );

    // The conditioned measure never exceeds the unconditioned one divided
    // by the probability of the conditioning prefix.
    for text in ["1:a", "1:b", "2:aa,bb"] {
        let set = CylinderSet::parse(&alphabet, text)?;
        println!(
            "majorization slack on {:<8}: {:.6}",
            set.to_text(),
            majorization_slack(&model, &a, &set)?
        );
    }

    // Impossible pasts assign the zero measure to everything.
    let alternating = BuiltinModel::Alternating.build();
    let aa = alternating.alphabet().parse_word("aa")?;
    let any = CylinderSet::parse(alternating.alphabet(), "1:a,b")?;
    println!(
        "\nalternating, past aa (impossible): measure {}",
        premeasure(&alternating, &aa, &any)?
    );
    Ok(())
}
