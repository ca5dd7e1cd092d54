#include "hvd/cli.hpp"

int main(int argc, char** argv) { return hvd::cli::run(argc, argv); }
