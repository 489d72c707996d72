use ternary_sos::normforms::*;
use ternary_sos::polycore::{complex_roots, UniPoly};

fn main() {
    let f: UniPoly<f64> = UniPoly::from_i64(&[1, 0, 2])
        .mul_poly(&UniPoly::from_i64(&[1, 0, 5]))
        .mul_poly(&UniPoly::from_i64(&[1, 0, 10]));
    let q: UniPoly<f64> = UniPoly::from_i64(&[1, 0, 1]);
    println!("roots: {:?}", complex_roots(&f));
    match represent_f64(&f, &q) {
        Ok(reps) => {
            println!("{} reps", reps.len());
            for r in &reps {
                let res = r.eta.mul_poly(&r.eta).add_poly(&q.mul_poly(&r.xi.mul_poly(&r.xi))).sub_poly(&f);
                println!("eta={:?} xi={:?} res={:.2e}", r.eta.trimmed(), r.xi.trimmed(), res.norm_inf());
            }
        }
        Err(e) => println!("err: {e}"),
    }
}
