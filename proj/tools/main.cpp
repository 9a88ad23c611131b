#include "facloc/cli.hpp"

int main(int argc, char** argv) { return facloc::cli::run_cli(argc, argv); }
