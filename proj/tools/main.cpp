#include "unipd/cli.hpp"

int main(int argc, char** argv) { return unipd::cli::run(argc, argv); }
