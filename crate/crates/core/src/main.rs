fn main() {
    std::process::exit(tree_amity::cli::main_entry());
}
