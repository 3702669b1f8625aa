//! Executes every example under `examples/` so they stay correct.

macro_rules! examples {
    ($($name:ident => $path:literal),* $(,)?) => {
        $(
            #[allow(dead_code)]
            #[path = $path]
            mod $name;

            #[test]
            fn $name() {
                $name::run_example().unwrap();
            }
        )*
    };
}

examples!(
    enumerate_words => "../examples/enumerate_words.rs",
    hasse_diagrams => "../examples/hasse_diagrams.rs",
    m_triangle_methods => "../examples/m_triangle_methods.rs",
    char_poly => "../examples/char_poly.rs",
    h_triangle => "../examples/h_triangle.rs",
    generating_series => "../examples/generating_series.rs",
    interval_decomposition => "../examples/interval_decomposition.rs",
    verify_identities => "../examples/verify_identities.rs",
    poset_toolkit => "../examples/poset_toolkit.rs",
);
