//! Random graph models, edge orderings and the plain-text format.

use increasing_trails::generators::{gen_gnm, gen_gnp};
use increasing_trails::graph::{dary_tree, Graph};
use increasing_trails::ordering::{ordering_from_reals, random_ordering, EdgeOrdering, OrderedGraph, RealLabeling};
use increasing_trails::textio::{parse_ordered_graph, write_graph};
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    let seed = Seed::new(5);
    let g = gen_gnp(1000, 0.01, &seed.derive(1))?;
    g.audit()?;
    println!("G(1000, 0.01): {} edges (mean 4995), average degree {:.2}", g.edge_count(), g.average_degree());
    let h = gen_gnm(1000, 3000, &seed.derive(2))?;
    println!("G(1000, 3000): min degree {:?}", h.min_degree());

    let t = dary_tree(3, 4, 1 << 20)?;
    println!("3-ary tree of depth 4: {} vertices, {} edges", t.graph.vertex_count(), t.graph.edge_count());

    // real labels and their rank ordering
    let x = RealLabeling::uniform(6, &seed.derive(3));
    println!("reals {:.3?} -> ranks {:?}", x.values(), ordering_from_reals(&x).labels());

    let k4 = Graph::complete(4);
    let ord = random_ordering(&k4, &seed.derive(4));
    let text = write_graph(&k4, Some(&ord));
    print!("K_4 with a random ordering:\n{text}");
    let back = parse_ordered_graph(&text)?;
    assert_eq!(back.ordering, ord);

    // an ordering given as "edges listed by increasing label"
    let og = OrderedGraph::new(Graph::path(3), EdgeOrdering::from_sequence(&[2, 0, 1])?)?;
    println!("path edges labelled {:?}", og.labels());
    Ok(())
}
