//! Geography files: build one by hand, round-trip it through JSON, and see
//! the diagnostics for a disconnected graph.

use partisan_symmetry::chain::{synth_geography, Geography, GeographyKind, Node};
use partisan_symmetry::rational::{ratio, Exact};

fn main() -> anyhow::Result<()> {
    let nodes = vec![Node { pop: 100, a: 60, b: 40 }, Node { pop: 100, a: 30, b: 70 }, Node { pop: 120, a: 55, b: 65 }];
    let g = Geography::new(nodes.clone(), vec![(0, 1), (1, 2)], None)?;
    let text = g.to_json();
    println!("{text}");
    let back = Geography::from_json(&text)?;
    println!("round trip equal: {}, A share {}", back.to_json() == text, Exact(&back.vote_share()));
    match Geography::new(nodes, vec![(0, 1)], None) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    let grid = synth_geography(GeographyKind::Gradient, 6, 8, &ratio(2, 5), 11)?;
    println!("6x8 gradient grid: {} nodes, {} edges, A share {}", grid.len(), grid.edges().len(), Exact(&grid.vote_share()));
    Ok(())
}
