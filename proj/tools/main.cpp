#include "cli.hpp"

int main(int argc, char** argv) { return orfkit::cli::run(argc, argv); }
