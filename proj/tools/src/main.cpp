#include "biphoton_tools/cli.hpp"

int main(int argc, char** argv) { return biphoton::cli::run(argc, argv); }
