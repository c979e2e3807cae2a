//! Irreducible representations and characters of `S_n` and `S_n ≀ Z₂`.

mod cache;
mod catalog;
mod characters;
mod irrep;
mod matrix_rep;
mod partition;
mod projector;
mod table;
mod wreath;
mod young;

pub use cache::{IrrepCache, CACHE_DIR_ENV, CACHE_VERSION};
pub use catalog::Catalog;
pub use characters::{character_sn, MnEvaluator};
pub use irrep::{Irrep, IrrepLabel, SwapSign, WreathIrrepLabel};
pub use matrix_rep::MatrixRep;
pub use partition::{partitions, standard_tableaux, Partition, MAX_PARTITION_N};
pub use projector::{
    class_function, isotypic_projector, multiplicity, plancherel, IsotypicProjector,
    DEFAULT_PROJECTOR_CAP,
};
pub use table::{character_at, irrep_labels, CharacterTable};
pub use wreath::{
    additive_diagonal_value, wreath_character, wreath_character_at, wreath_irrep,
    wreath_irrep_labels, MAX_WREATH_DEGREE,
};
pub use young::{generator_matrices, young_orthogonal_rep, MAX_YOUNG_DEGREE};
