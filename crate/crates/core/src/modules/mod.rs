//! Graded modules: storage, induction, duality, characters, presentations and Hom spaces.

pub mod character;
pub mod decompose;
pub mod extension;
pub mod graded;
pub mod head;
pub mod induce;
pub mod json;
pub mod ops;
pub mod present;

pub use character::{parse_word_label, shuffles, word_label, Character};
pub use graded::{defining_relations, target_key, Act, CompKey, Gen, GradedModule, HVec, WordSum};
pub use ops::ModuleMap;
pub use induce::{induce, Induced};
pub use present::{HomSpace, Presentation};
pub use head::{bar_normalizing_shift, dual_maps, is_simple, simple_quotient, unique_head};
pub use decompose::{decompose_character, Decomposition};
pub use json::{ActionJson, ComponentJson, ModuleJson, MODULE_SCHEMA};
pub use extension::{extension_module, extension_space, ExtSpace};
