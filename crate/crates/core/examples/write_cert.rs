//! Regenerates `data/monster.cert` from the embedded tables.

use axcount::certificate::Certificate;

fn main() {
    let cert = Certificate::build_standard().expect("embedded tables are consistent");
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/monster.cert");
    std::fs::write(path, cert.render()).expect("write certificate");
    eprintln!("wrote {path}");
}
