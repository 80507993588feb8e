pub mod combin;
pub mod extalg;
pub mod field;
pub mod formats;
pub mod fw;
pub mod linalg;
pub mod rainbow;
pub mod rng;
pub mod search;
pub mod setfam;
pub mod tensor;
