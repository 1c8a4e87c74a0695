#include "run.hpp"

int main(int argc, char** argv) { return circq::cli::main_entry(argc, argv); }
