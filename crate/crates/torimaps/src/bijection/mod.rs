//! Opening and closure bijections between oriented face-rooted maps and
//! unicellular mobiles.

mod family;
mod mobile;
mod phi;
mod psi;

pub use family::{
    check_family, doubled, halved, is_balanced_doubled, is_balanced_mobile, mobile_cycles, mobile_gamma_score, FamilyTag,
    MobileFamilyCheck,
};
pub use mobile::{Color, Mobile};
pub use phi::{phi_plus, phi_plus_via_expansion};
pub use psi::psi_plus;
