fn main() -> ! {
    maxent_partitions::cli::main_entry()
}
