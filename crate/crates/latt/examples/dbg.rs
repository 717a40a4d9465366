use latt::verify::*;
fn main() {
    let rep = verify_quotient_size_lemmas(7).unwrap();
    for f in &rep.failures {
        println!("{}: {}", f.check, f.witness);
    }
}
