macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run().expect("example runs");
        }
    };
}

example!(count_tilings, "count_tilings.rs");
example!(charpoly_theorems, "charpoly_theorems.rs");
example!(breakability, "breakability.rs");
example!(identities, "identities.rs");
example!(oeis_bfiles, "oeis_bfiles.rs");
example!(baselines_2d, "baselines_2d.rs");
example!(defect_boards, "defect_boards.rs");
example!(enumerate_layer, "enumerate_layer.rs");
