//! Prints the seeded pseudorandom headers used by the vector corpus, one
//! hex line each: `seeded_headers <seed> <count>`.

use lyra2re_core::vectors::seeded_headers;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().expect("seed").parse().expect("seed u64");
    let count: usize = args.next().expect("count").parse().expect("count usize");
    for h in seeded_headers(seed, count) {
        println!("{}", hex::encode(h));
    }
}
