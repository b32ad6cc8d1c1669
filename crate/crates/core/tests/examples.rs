macro_rules! example_test {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(share_and_recover, "share_and_recover.rs");
example_test!(binary_lossless, "binary_lossless.rs");
example_test!(color_sharing, "color_sharing.rs");
example_test!(quality_sweep, "quality_sweep.rs");
example_test!(partial_attack, "partial_attack.rs");
example_test!(share_files, "share_files.rs");
example_test!(benchmark, "benchmark.rs");
example_test!(make_samples, "make_samples.rs");
