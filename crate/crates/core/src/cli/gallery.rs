//! Example workspace documents shipped with the binary.

const SOURCES: &[(&str, &str)] = &[
    ("finset2", include_str!("../../gallery/finset2.doc")),
    ("sierpinski-arrow", include_str!("../../gallery/sierpinski-arrow.doc")),
    ("product-frechet-shadow", include_str!("../../gallery/product-frechet-shadow.doc")),
    ("principal-collapse", include_str!("../../gallery/principal-collapse.doc")),
    ("transfer", include_str!("../../gallery/transfer.doc")),
    ("interval-fragment", include_str!("../../gallery/interval-fragment.doc")),
    ("dn", include_str!("../../gallery/dn.doc")),
    ("unique-arrow", include_str!("../../gallery/unique-arrow.doc")),
    ("families", include_str!("../../gallery/families.doc")),
    ("random-filters", include_str!("../../gallery/random-filters.doc")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GalleryEntry {
    pub name: &'static str,
    /// The document's leading comment.
    pub provenance: &'static str,
    pub text: &'static str,
}

pub fn gallery() -> Vec<GalleryEntry> {
    SOURCES
        .iter()
        .map(|&(name, text)| {
            let provenance = text.lines().next().and_then(|l| l.strip_prefix("# ")).unwrap_or("");
            GalleryEntry { name, provenance, text }
        })
        .collect()
}

pub fn gallery_doc(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
