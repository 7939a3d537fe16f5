//! Finitely presented groups for twist subgroups of non-orientable surface
//! mapping class groups: words, presentations, coset enumeration,
//! Reidemeister–Schreier, mod-2 homology checks, relator catalogs, and
//! derivation certificates.

pub mod abelian;
pub mod catalog;
pub mod cert;
pub mod enumeration;
pub mod homology;
pub mod presentation;
pub mod schema;
pub mod template;
pub mod word;

pub use abelian::AbelianInvariants;
pub use catalog::{instantiate, EntryId, InstantiateOptions};
pub use cert::{check_certificate, CertReport, Certificate};
pub use enumeration::{reidemeister_schreier, todd_coxeter, CosetTable, SubgroupSpec};
pub use homology::{Mod2Class, Mod2Matrix, SurfaceModel};
pub use presentation::Presentation;
pub use word::{parse_word, Alphabet, Word};
