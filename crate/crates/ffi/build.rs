use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("fonema.h");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("FONEMA_H".to_string());
    config.documentation = true;
    config.enumeration.prefix_with_name = true;
    config.header = Some(
        "/* C interface to the fonema Italian phoneme toolkit.\n\
         * Strings returned by fonema_* functions are owned by the library\n\
         * and must be released with fonema_string_free(). */"
            .to_string(),
    );

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen header generation failed")
        .write_to_file(header);

    println!("cargo:rerun-if-changed=src/lib.rs");
}
