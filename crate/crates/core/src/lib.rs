pub mod cayley_klein;
pub mod da_core;
pub mod error;
pub mod exec;
pub mod focal_power;
pub mod inner_product;
pub mod parabolic_trig;
pub mod scalar;
pub mod suites;
