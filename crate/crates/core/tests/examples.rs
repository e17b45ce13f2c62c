//! Runs every example so that they stay in working order.

macro_rules! run_example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

run_example!(metric_basics);
run_example!(curves);
run_example!(helicoid_forms);
run_example!(gauge);
run_example!(classify_surface);
run_example!(catalog_families);
run_example!(causal_map);
run_example!(bernstein);
run_example!(existence_table);
run_example!(mesh_export);
