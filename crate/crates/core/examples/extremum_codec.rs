//! Encode the position of the largest sample as a k-bit message and back.
//!
//! `cargo run --example extremum_codec -- [k]`

use rand_distr::{Distribution, StandardNormal};

use extremum_tde::codec::{self, ExtremumMessage};
use extremum_tde::rng;

fn main() -> extremum_tde::Result<()> {
    let k: u32 = std::env::args().nth(1).map_or(8, |a| a.parse().expect("k"));
    let n = 1usize << k;
    let mut rng = rng::stream(7, k as u64, 0);
    let x: Vec<f64> = StandardNormal.sample_iter(&mut rng).take(n).collect();

    let msg = codec::encode_max_index(&x, k)?;
    let j = codec::decode_index(&msg);
    println!("N = {n}, max x[{j}] = {:.4}, message {msg} ({} bits)", x[j as usize], msg.k());

    // Messages survive a trip through text.
    let parsed: ExtremumMessage = msg.to_string().parse()?;
    assert_eq!(codec::decode_index(&parsed), j);

    // Ties resolve to the earliest index.
    let flat = [1.0, 3.0, 3.0, 0.5];
    println!("argmax of {flat:?} -> {}", codec::argmax_index(&flat)?);

    // A block longer than 2^k cannot be indexed.
    match codec::encode_max_index(&x, k - 1) {
        Err(e) => println!("k = {}: {e}", k - 1),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
