fn main() {
    isomin::cli::main()
}
