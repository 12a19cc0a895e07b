// Dev probe: timings for the Omega family construction, large canonical
// keys, and P_9/P_9* minor flags on the big members.

use bmx_core::families::{omega, z_spike};
use bmx_core::iso::canonical_key;
use bmx_core::minor::{has_minor_flag, MinorConfig};

fn main() {
    for r in 5..=8 {
        let t0 = std::time::Instant::now();
        match omega(r) {
            Ok((m, _)) => println!("omega({r}): size {} in {:?}", m.size(), t0.elapsed()),
            Err(e) => println!("omega({r}): ERROR {e}"),
        }
    }
    let (o7, _) = omega(7).unwrap();
    let t0 = std::time::Instant::now();
    let k = canonical_key(&o7).unwrap();
    println!("key(Omega_7) [{}B] in {:?}", k.as_bytes().len(), t0.elapsed());

    let p9 = bmx_core::families::named("p9").unwrap();
    let cfg = MinorConfig::default();
    let t0 = std::time::Instant::now();
    let has = has_minor_flag(&o7, &p9, &cfg).unwrap();
    println!("Omega_7 has P9-minor: {has} in {:?}", t0.elapsed());

    let (z6, _) = z_spike(6).unwrap();
    let p9s = bmx_core::families::named("p9star").unwrap();
    let t0 = std::time::Instant::now();
    println!(
        "Z_6 P9:{} P9*:{} in {:?}",
        has_minor_flag(&z6, &p9, &cfg).unwrap(),
        has_minor_flag(&z6, &p9s, &cfg).unwrap(),
        t0.elapsed()
    );
}
