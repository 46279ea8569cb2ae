fn main() {
    std::process::exit(rearrange_lab::cli::run());
}
