fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = std::path::Path::new(&crate_dir).join("include/equibouquet.h");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.include_guard = Some("EQUIBOUQUET_H".into());
    config.cpp_compat = true;
    config.documentation = true;
    config.usize_is_size_t = true;
    // C has one flat namespace; `Ok` or `Json` alone would be rude.
    config.enumeration.prefix_with_name = true;

    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        // Syntax errors in lib.rs surface through rustc with better spans;
        // don't fail the build twice.
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {}
        Err(e) => panic!("header generation failed: {e}"),
    }

    println!("cargo:rerun-if-changed=src/lib.rs");
}
