use hcgp_core::instance::{build_cost_matrix, grid, Balance};
use hcgp_core::model::{evaluate_balance, evaluate_compactness, Partition};
use hcgp_core::{solve_exact, Instance, SolverSettings};

fn main() {
    // Brute force: all 2-partitions of grid(3,4), tau = 0.1, q = 2.
    let g = grid(3, 4).unwrap();
    let inst = Instance::new(g.clone(), 2, 2, Balance::Tau(0.1), "g34").unwrap();
    let costs = build_cost_matrix(&inst);
    let (l, u) = inst.bounds();
    let n = 12;
    let mut best = f64::INFINITY;
    let mut best_parts = None;
    for mask in 1u32..(1 << (n - 1)) {
        // vertex 11 always in part B kills the 2^n symmetry
        let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if a.is_empty() || b.is_empty() { continue; }
        let wa: f64 = a.len() as f64;
        let wb: f64 = b.len() as f64;
        if wa < l - 1e-9 || wa > u + 1e-9 || wb < l - 1e-9 || wb > u + 1e-9 { continue; }
        let (sa, _) = g.induced(&a);
        let (sb, _) = g.induced(&b);
        if !sa.is_q_connected(2) || !sb.is_q_connected(2) { continue; }
        let p = Partition::from_parts(&[a.clone(), b.clone()], &costs);
        let c = evaluate_compactness(&p, &costs);
        assert_eq!(evaluate_balance(&p, &inst), 0.0);
        if c < best { best = c; best_parts = Some((a, b)); }
    }
    println!("brute optimum = {best} parts={best_parts:?}");
    let res = solve_exact(&inst, &SolverSettings::default());
    println!("solver = {:?} {:?}", res.status, res.objective);
    assert!((best - res.objective.unwrap()).abs() < 1e-9);
    println!("MATCH");
}
