//! Wall-clock scaling of generation, greedy and the exact solvers on gen_gc(i).
//!
//! `cargo run --release -p gkcover --example gc_scaling -- 12`

use std::time::Instant;

use gkcover::adversarial::gen_gc;
use gkcover::greedy::{greedy_antichain_cover, greedy_chain_partition};
use gkcover::{solve_alpha, solve_beta};

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    println!("| i | n | edges | gen ms | greedy paths ms | greedy antichains ms | alpha_1 ms | cancels | beta_2 ms |");
    println!("|---|---|---|---|---|---|---|---|---|");
    for i in 1..=max {
        let t = Instant::now();
        let inst = gen_gc(i).expect("i >= 1");
        let gen = ms(t);
        let dag = &inst.dag;
        let t = Instant::now();
        let (paths, _) = greedy_chain_partition(dag);
        let greedy = ms(t);
        assert_eq!(paths.len(), i);
        let t = Instant::now();
        let cover = greedy_antichain_cover(dag, 1).expect("greedy antichains");
        let anti = ms(t);
        assert!(cover.stats.within_search_bound());
        let t = Instant::now();
        let a = solve_alpha(dag, 1).expect("alpha");
        let alpha = ms(t);
        assert_eq!(a.alpha, 2.min(i));
        let t = Instant::now();
        let b = solve_beta(dag, 2).expect("beta");
        let beta = ms(t);
        assert!(b.stats.within_cancel_bound());
        println!(
            "| {i} | {} | {} | {gen:.1} | {greedy:.1} | {anti:.1} | {alpha:.1} | {} | {beta:.1} |",
            dag.n(),
            dag.edge_count(),
            a.stats.cancellations
        );
    }
}
