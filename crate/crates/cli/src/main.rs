fn main() {
    eprintln!("linepat: not yet wired up");
    std::process::exit(1);
}
