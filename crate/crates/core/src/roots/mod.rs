//! Root data: Cartan matrices, positive roots, convex orders and Kostant partitions.

pub mod cartan;
pub mod kostant;
pub mod order;
pub mod system;

pub use cartan::{CartanDatum, CartanDescriptor, CartanType, Family};
pub use kostant::{
    bilex_cmp, bilex_leq, bilex_less, kostant_partitions, lambda_equiv_witness, minimal_pairs, permute_word,
    word_compatible, KostantPartition, MinimalPair,
};
pub use order::{lex_min_longest_word, longest_words, ConvexOrder};
pub use system::{RootSystem, Weight};
