//! Generate one graph per built-in family and classify each of them with
//! the brute-force membership oracle.

use distauto::graphs::{
    classify, make_harmonious_sfnlg, make_ncg, make_nlg, make_nqlg,
    serialize_graph, EdgePolicy,
};

fn main() {
    let graphs = vec![
        ("line", make_nlg(5).unwrap()),
        ("cycle", make_ncg(6).unwrap()),
        (
            "quasi-line",
            make_nqlg(&[1, 2, 2, 1], EdgePolicy::FullBipartite).unwrap(),
        ),
        (
            "random quasi-line",
            make_nqlg(&[1, 3, 2], EdgePolicy::Random { seed: 1 }).unwrap(),
        ),
        ("harmonious snowball line", make_harmonious_sfnlg(3).unwrap()),
    ];
    for (what, g) in graphs {
        let report = classify(&g);
        println!("=== {what} ===");
        print!("{}", serialize_graph(&g));
        println!(
            "families: {}",
            report
                .families
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        if let Some(length) = report.length {
            println!("length: {length}");
        }
        println!();
    }
}
