//! Layered Min-Max decoding over a simulated BPSK/AWGN channel.

pub mod channel;
pub mod layered;
pub mod message;
pub mod montecarlo;

pub use channel::{channel_reliability, noiseless_reliability, sigma_for_ebn0};
pub use layered::{
    build_layer_schedule, update_check, DecodeResult, DecoderConfig, DecoderState, LayerSchedule,
    LayeredDecoder, Partition,
};
pub use message::{
    check_node_brute_force, check_node_min_max, permute_message, quantize, Direction, MessageVec,
    Quantizer,
};
pub use montecarlo::{run_monte_carlo, SimRow};
