//! Step through one diagonal Hessian update by hand: structured secant
//! pair, sign safeguards, clamping and the resulting direction.

use asdh::diagonal::{direction, safeguard_secant, update_diagonal};
use asdh::{SafeguardParams, SecantPair};

fn show(label: &str, v: &[f64]) {
    let cells: Vec<String> = v.iter().map(|x| format!("{x:>10.4e}")).collect();
    println!("{label:<8} [{}]", cells.join(", "));
}

fn main() {
    // components: ordinary, wrong-signed y_hat, wrong-signed y_bar with
    // s < 0, zero step, and a ratio that exceeds the upper bound
    let pair = SecantPair {
        s: vec![1.0, 2.0, -1.0, 0.0, 1e-12],
        y_hat: vec![3.0, -3.0, -0.5, 0.7, 1.0],
        y_bar: vec![0.5, 0.1, 0.2, -0.3, 0.0],
    };
    let g_new = vec![0.4, -1.0, 0.3, 2.0, -0.5];
    let params = SafeguardParams::default();
    let (lower, upper) = (1e-4, 1e4);

    show("s", &pair.s);
    show("y_hat", &pair.y_hat);
    show("y_bar", &pair.y_bar);

    let safe = safeguard_secant(pair, &g_new, params);
    println!(
        "after safeguards (gamma = {}, rho = {}):",
        params.gamma, params.rho
    );
    show("y_hat", &safe.y_hat);
    show("y_bar", &safe.y_bar);

    let h = update_diagonal(&safe, lower, upper);
    println!("diagonal clamped to [{lower:e}, {upper:e}]:");
    show("h", h.entries());

    let d = direction(&h, &g_new);
    show("g", &g_new);
    show("d", &d);
    let gtd: f64 = g_new.iter().zip(&d).map(|(a, b)| a * b).sum();
    println!("g'd = {gtd:.4e} (descent)");
}
