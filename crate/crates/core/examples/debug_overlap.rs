use conequad::arrangement::{enumerate_cones, strict_sign_vector};
use conequad::triangulation::decompose_cone;

fn main() {
    let m = conequad::registry::builtin("C7x4").unwrap();
    let cones = enumerate_cones(&m).unwrap();
    let x = [0.708373327200364, -0.44969535921744846, 0.27556399037776647, -0.46909039684953935];
    println!("sign vector: {:?}", strict_sign_vector(&m, &x).map(|p| p.to_string()));
    for cone in &cones {
        let simplices = decompose_cone(cone).unwrap();
        for (k, s) in simplices.iter().enumerate() {
            let lambda = s.orthant_coordinates(&x).unwrap();
            let min = lambda.iter().cloned().fold(f64::INFINITY, f64::min);
            if min > -1e-9 {
                println!(
                    "cone {} (pattern {}) simplex {k} tuple {:?} min_lambda {:.3e} lambda {:?}",
                    cone.id, cone.pattern, s.ray_indices, min, lambda
                );
            }
        }
    }
    // dump the guilty cone's skeleton and triangulation
    let pattern = strict_sign_vector(&m, &x).unwrap();
    let cone = cones.iter().find(|c| c.pattern == pattern).unwrap();
    println!("guilty cone {} has {} rays:", cone.id, cone.skeleton.len());
    for (i, r) in cone.skeleton.iter().enumerate() {
        println!("  ray {i}: {:?}", r.direction());
    }
    for s in decompose_cone(cone).unwrap() {
        println!("  tuple {:?} det {:.6}", s.ray_indices, s.abs_det);
    }
}
