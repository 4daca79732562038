/// The splitmix64 generator. Its output stream is part of the on-disk
/// reproducibility contract, so it is implemented here rather than borrowed.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// First output of a splitmix64 stream seeded with `x`; used to derive
/// per-trial seeds.
pub fn splitmix64(x: u64) -> u64 {
    SplitMix64::new(x).next_u64()
}
