//! Exhaustive canonical generation of small maps, disk pieces and mobiles.

mod kernel;
mod maps;
mod mobiles;

pub use kernel::{kernel_decompose, Kernel, KernelType};
pub use maps::{
    count_maps, for_each_map, for_each_rooted_map, generate_disk_pieces, generate_maps, FaceRule, Filter, GenSpec, Rooting,
    DEFAULT_DART_CAP,
};
pub use mobiles::{generate_mobiles, unicellular_toroidal_skeletons};
