use gkcover::adversarial::{gen_antichain_ratio, gen_chain_ratio, gen_ga, gen_gc};
use gkcover::dag::Member;
use gkcover::greedy::{greedy_antichain_cover, greedy_chain_partition, greedy_k_chains};
use gkcover::{solve_alpha, solve_beta};

#[test]
fn chain_ratio_values() {
    for k in [2, 3, 4, 5, 6, 7] {
        let inst = gen_chain_ratio(k).unwrap();
        let (g, _) = greedy_k_chains(&inst.dag, k).unwrap();
        let b = solve_beta(&inst.dag, k).unwrap();
        assert_eq!(b.beta, inst.expected.optimal_value, "k={k}");
        assert_eq!(g.coverage(), inst.expected.greedy_value, "k={k}");
        assert!(4 * g.coverage() <= 3 * b.beta);
        if k % 2 == 0 {
            assert_eq!(4 * g.coverage(), 3 * b.beta);
        }
    }
}

#[test]
fn antichain_ratio_values() {
    for k in [2, 3, 4, 5, 6, 7] {
        let inst = gen_antichain_ratio(k).unwrap();
        let a = solve_alpha(&inst.dag, k).unwrap();
        let g = gkcover::greedy::greedy_k_antichains(&inst.dag, k).unwrap();
        assert_eq!((a.alpha, g.family.coverage()), (inst.expected.optimal_value, inst.expected.greedy_value), "k={k}");
    }
}

#[test]
fn gc_traces() {
    for i in 1..=8 {
        let inst = gen_gc(i).unwrap();
        let (paths, trace) = greedy_chain_partition(&inst.dag);
        let gains: Vec<usize> = trace.gains();
        let want: Vec<usize> = (1..=i).map(|j| (1 << (i - j + 1)) - 1).collect();
        assert_eq!(gains, want, "i={i}");
        assert_eq!(paths.len(), i);
        assert_eq!(solve_alpha(&inst.dag, 1).unwrap().alpha, 2.min(i), "i={i}");
    }
}

#[test]
fn ga_order() {
    for i in 1..=8 {
        let inst = gen_ga(i).unwrap();
        let c = greedy_antichain_cover(&inst.dag, 1).unwrap();
        let mut want: Vec<Vec<usize>> = (1..=i)
            .rev()
            .map(|m| {
                let mut v = inst.group(&format!("T{m}")).unwrap().to_vec();
                v.sort();
                v
            })
            .collect();
        want.push(vec![inst.names.iter().position(|n| n == "x1").unwrap()]);
        want.push(vec![inst.names.iter().position(|n| n == "y1").unwrap()]);
        let got: Vec<Vec<usize>> = c.partition.members().iter().map(|m| m.vertices().to_vec()).collect();
        assert_eq!(got, want, "i={i}");
        assert_eq!(solve_beta(&inst.dag, 1).unwrap().beta, 2);
    }
}
