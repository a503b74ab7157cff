use fracmap::kernel::FractionalOrder;
use fracmap::maps::MapSpec;
use fracmap::region::build_region;
use fracmap::simulator::iterate_direct;

fn main() {
    let alpha = FractionalOrder::new(0.999).unwrap();
    let region = build_region(alpha, 512).unwrap();
    // where does the polygon put the boundary at a = -5?
    let mut bs: Vec<f64> = Vec::new();
    for (a, b) in region.polygon() {
        if (a + 5.0).abs() < 0.3 {
            bs.push(*b);
        }
    }
    bs.sort_by(f64::total_cmp);
    println!("polygon vertices near a=-5: b in {:?} .. {:?}", bs.first(), bs.last());
    println!("contains(-5, 0.05) = {}", region.contains(-5.0, 0.05));
    println!("contains(-5, -0.05) = {}", region.contains(-5.0, -0.05));
    // simulation truth
    for b in [0.05, -0.05, -0.15] {
        let map = MapSpec::linear_two_periodic(-5.0, b);
        let traj = iterate_direct(&map, 1.0, alpha, 4000).unwrap();
        println!(
            "sim (-5, {b}): divergence {:?}, |x(end)| = {:.3e}",
            traj.divergence,
            traj.states.last().unwrap().abs()
        );
    }
}
