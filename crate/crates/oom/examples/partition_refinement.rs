//! Aligning two nested-or-disjoint partitions block by block.
//!
//! ```bash
//! cargo run -p oom --example partition_refinement
//! ```

use oom::cylinder::{partition_refine, partition_refine_cylinders};
use oom::{Alphabet, CylinderSet, OomError};
use std::collections::BTreeSet;

fn blocks(raw: &[&[u64]]) -> Vec<BTreeSet<u64>> {
    raw.iter().map(|b| b.iter().copied().collect()).collect()
}

fn main() -> oom::Result<()> {
    // The first partition is coarser on {1,2}, the partitions agree on
    // {3,4}: both first blocks land on the "contains" side.
    let a = blocks(&[&[1, 2], &[3, 4]]);
    let b = blocks(&[&[1], &[2], &[3, 4]]);
    let r = partition_refine(&a, &b)?;
    println!("first partition  {{1,2}} {{3,4}}");
    println!("second partition {{1}} {{2}} {{3,4}}");
    println!("blocks that contain second-side blocks: {:?}", r.i0);
    for (i, js) in &r.j_of {
        println!("  block {i} is the union of second-side blocks {js:?}");
    }

    // Swapping the roles moves everything to the other side.
    let r = partition_refine(&b, &a)?;
    println!("\nswapped roles: strictly containing second-side blocks {:?}", r.j0);
    for (j, is) in &r.i_of {
        println!("  second-side block {j} is the union of first-side blocks {is:?}");
    }

    // A pair that overlaps without containment is rejected by name.
    let crossing = partition_refine(&blocks(&[&[1, 2], &[3]]), &blocks(&[&[2, 3], &[1]]));
    match crossing {
        Err(OomError::CrossingPair { i, j }) => {
            println!("\ncrossing pair rejected: first block {i} against second block {j}")
        }
        other => println!("\nunexpected: {other:?}"),
    }

    // The same machinery on cylinder partitions, lifted to a common level.
    let alphabet = Alphabet::new(["a", "b"])?;
    let coarse = [
        CylinderSet::parse(&alphabet, "1:a")?,
        CylinderSet::parse(&alphabet, "1:b")?,
    ];
    let fine = [
        CylinderSet::parse(&alphabet, "2:aa")?,
        CylinderSet::parse(&alphabet, "2:ab")?,
        CylinderSet::parse(&alphabet, "1:b")?,
    ];
    let r = partition_refine_cylinders(&coarse, &fine)?;
    println!("\ncylinder partitions: E(a) splits into {:?}", r.j_of[&0]);
    println!("                     E(b) matches      {:?}", r.j_of[&1]);
    Ok(())
}
