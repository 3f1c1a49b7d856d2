use conequad::arrangement::enumerate_cones;
use conequad::triangulation::{cone_axis, project_to_base};

fn main() {
    let m = conequad::registry::builtin("C7x4").unwrap();
    let cones = enumerate_cones(&m).unwrap();
    let cone = cones.iter().find(|c| c.pattern.to_string() == "+-+-+-+").unwrap();
    let axis = cone_axis(&cone.skeleton).unwrap();
    let base = project_to_base(&cone.skeleton, &axis);
    let pts = &base.points;
    let p = pts.len();
    println!("base points (3d), p = {p}:");
    for (i, q) in pts.iter().enumerate() {
        println!("  {i}: [{:+.12}, {:+.12}, {:+.12}]", q[0], q[1], q[2]);
    }
    let scale = pts.iter().flat_map(|q| q.iter().map(|x| x.abs())).fold(1.0f64, f64::max);
    let lifted: Vec<Vec<f64>> = pts
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let mut z = q.clone();
            let h: f64 = q.iter().map(|x| x * x).sum::<f64>() + 1e-9 * scale * scale * (i + 1) as f64 / p as f64;
            z.push(h);
            z
        })
        .collect();
    for subset in [[0usize, 4, 5, 6], [2, 4, 5, 6]] {
        // normal via svd of difference rows
        let d = 3;
        let mut diff = nalgebra::DMatrix::zeros(d + 1, d + 1);
        for k in 0..d {
            for j in 0..=d {
                diff[(k, j)] = lifted[subset[k + 1]][j] - lifted[subset[0]][j];
            }
        }
        let svd = diff.svd(false, true);
        let vt = svd.v_t.unwrap();
        let mut n: Vec<f64> = vt.row(d).iter().cloned().collect();
        if n[d] > 0.0 { for x in n.iter_mut() { *x = -*x; } }
        println!("facet {subset:?}: n_h = {:+.3e}, offsets:", n[d]);
        for (i, z) in lifted.iter().enumerate() {
            if subset.contains(&i) { continue; }
            let off: f64 = z.iter().zip(&lifted[subset[0]]).zip(&n).map(|((zi, bi), ni)| (zi - bi) * ni).sum();
            println!("   point {i}: offset {:+.6e} {}", off, if off > 1e-12 * scale * scale { "BELOW (reject!)" } else { "" });
        }
    }
}
