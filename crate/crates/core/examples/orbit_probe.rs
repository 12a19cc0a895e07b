use bmx_core::matroid::BinaryMatroid;
use bmx_core::minor::build_orbit_table;
fn main() {
    let t0 = std::time::Instant::now();
    let p9s = BinaryMatroid::from_display("0111 1011 1101 1111 1100");
    let t = build_orbit_table(&p9s).unwrap();
    println!("P9* orbit: {} masks in {:?}", t.masks().len(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let e7 = BinaryMatroid::from_display("01111 10111 11010 11110 00011");
    let t2 = build_orbit_table(&e7).unwrap();
    println!("E7 orbit: {} masks in {:?}", t2.masks().len(), t0.elapsed());
    println!("Aut(P9*) order = {}", 9999360 / t.masks().len());
    println!("Aut(E7) order = {}", 9999360 / t2.masks().len());
}
