//! Free products of finite groups: exact word arithmetic, automorphism
//! generators and relations, graphs of groups with their Bass-Serre trees,
//! translation-length computations, tree geometry lemma checkers and a
//! Property (FA) decision rule for automorphism groups of free products.

pub mod aut;
pub mod group;
pub mod report;
pub mod word;
