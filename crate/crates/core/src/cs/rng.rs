use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random streams of one experiment.
///
/// Every stream is a ChaCha8 generator keyed by the experiment seed and
/// selected by its stream id, so changing how one component is drawn
/// leaves the others untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Support = 1,
    Amplitude = 2,
    Matrix = 3,
    Noise = 4,
    DctRows = 5,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
