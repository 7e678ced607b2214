fn main() {
    std::process::exit(fiedler::run());
}
