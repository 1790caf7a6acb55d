#include "cli/commands.hpp"

int main(int argc, char** argv) { return fastdiff::cli::cli_main(argc, argv); }
