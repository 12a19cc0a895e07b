// Dev probe: pin down the P_9 representation and check it against the
// appendix table structure before freezing it in the families module.

use bmx_core::gf2::Gf2Vector;
use bmx_core::iso::{are_isomorphic, canonical_key};
use bmx_core::matroid::BinaryMatroid;
use bmx_core::minor::{has_minor_flag, MinorConfig};

fn main() {
    let p9_star = BinaryMatroid::from_display("0111 1011 1101 1111 1100");
    let p9_dualbuilt = p9_star.dual();
    println!("dual(P9*): rank {} size {}", p9_dualbuilt.rank(), p9_dualbuilt.size());
    println!("{}", p9_dualbuilt.matrix());

    // candidate frozen display
    let p9 = BinaryMatroid::from_display("01111 10111 11010 11110");
    println!("frozen display ≅ dual(P9*): {}", are_isomorphic(&p9, &p9_dualbuilt).unwrap());

    // Table 1a: extension candidates of P_9
    let existing: std::collections::HashSet<u64> = p9.col_words().into_iter().collect();
    let mut groups: std::collections::BTreeMap<Vec<u8>, Vec<String>> = Default::default();
    for v in 1u64..16 {
        if existing.contains(&v) {
            continue;
        }
        let (ext, _) = p9.extend(Gf2Vector::from_bits(4, v)).unwrap();
        let key = canonical_key(&ext).unwrap();
        groups.entry(key.as_bytes().to_vec()).or_default().push(Gf2Vector::from_bits(4, v).to_string());
    }
    println!("P9 extension classes: {}", groups.len());
    for (_, vs) in &groups {
        println!("  class: {:?}", vs);
    }
    let d1 = BinaryMatroid::from_display("011111 101111 110101 111100");
    let d2 = BinaryMatroid::from_display("011111 101110 110100 111101");
    let d3 = BinaryMatroid::from_display("011110 101110 110101 111101");
    for (name, d) in [("D1", &d1), ("D2", &d2), ("D3", &d3)] {
        for (_, vs) in &groups {
            let (ext, _) = p9
                .extend(Gf2Vector::parse(&vs[0]).unwrap())
                .unwrap();
            if are_isomorphic(&ext, d).unwrap() {
                println!("  {name} ≅ class {:?}", vs);
            }
        }
    }

    // Table 1b: coextension candidates (rows over the D block, width 5)
    let alpha5 = BinaryMatroid::from_display("01111 10111 11010 11110 00011");
    let p9s_for_flag = BinaryMatroid::from_display("0111 1011 1101 1111 1100");
    let cfg = MinorConfig::default();
    let mut cogroups: std::collections::BTreeMap<Vec<u8>, (Vec<String>, bool)> = Default::default();
    let mut count = 0;
    for v in 1u64..32 {
        let w = Gf2Vector::from_bits(5, v);
        let (co, _) = p9.coextend_over_d(w).unwrap();
        if !co.is_cosimple() {
            continue;
        }
        count += 1;
        let key = canonical_key(&co).unwrap();
        let e = cogroups.entry(key.as_bytes().to_vec()).or_insert_with(|| {
            let flag = has_minor_flag(&co, &p9s_for_flag, &cfg).unwrap();
            (Vec::new(), flag)
        });
        e.0.push(w.to_string());
    }
    println!("P9 coextension candidates: {count}, classes: {}", cogroups.len());
    for (_, (vs, flag)) in &cogroups {
        println!("  rows {:?} p9*-minor={}", vs, flag);
    }
    for (_, (vs, _)) in &cogroups {
        let (co, _) = p9.coextend_over_d(Gf2Vector::parse(&vs[0]).unwrap()).unwrap();
        if are_isomorphic(&co, &alpha5).unwrap() {
            println!("  E7=alpha5 class rows: {:?}", vs);
        }
    }

    // Z_4 identities
    let z4 = {
        // [I_4 | a1 a2 a3 a4 c]
        BinaryMatroid::from_display("01111 10111 11011 11101 11110").dual().dual()
    };
    let _ = z4;
}
