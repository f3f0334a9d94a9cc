#include "quditmet/cli.hpp"

int main(int argc, char** argv) { return quditmet::cli::run_main(argc, argv); }
