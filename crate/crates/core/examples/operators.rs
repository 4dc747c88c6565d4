//! LGL nodes, weights and the SBP property of the derivative matrix.

use esdg_mhd::operators::Operator1D;

fn main() -> esdg_mhd::Result<()> {
    println!("{:>2}  {:>10}  {:>10}  nodes", "N", "|Q+Q^T-B|", "quad err");
    for n in 1..=8 {
        let op = Operator1D::new(n)?;
        // exactness for x^(2N-1) and x^(2N-2)
        let quad = |k: i32| -> f64 {
            let approx: f64 = op.nodes.iter().zip(&op.weights).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            (approx - exact).abs()
        };
        let err = quad(2 * n as i32 - 1).max(quad(2 * n as i32 - 2));
        let nodes: Vec<String> = op.nodes.iter().map(|x| format!("{x:+.4}")).collect();
        println!("{n:>2}  {:>10.2e}  {err:>10.2e}  {}", op.sbp_residual(), nodes.join(" "));
    }
    Ok(())
}
