//! Pointed modules over a torsion target, (J,T)-extensions, pushouts,
//! saturation, and the pullback/pushforward adjunction.

pub mod functors;
#[allow(clippy::module_inception)]
pub mod pointed;
pub mod pushout;
pub mod target;

pub use functors::{
    adjunction_check, are_isomorphic, corestrict, extension_maps, pullback, pushforward, AdjunctionReport, ExtensionMap,
    Pullback, Pushforward,
};
pub use pointed::{JTExtension, PointedMap, PointedModule};
pub use pushout::{
    is_saturated_at, pushout, saturate, torsion_inclusion, Pushout, SaturatedModule, SaturatedWindow, Saturation,
};
pub use target::{frac, Flavor, TorsionTarget};
