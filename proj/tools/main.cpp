#include "rankshift/cli.hpp"

int main(int argc, char** argv) { return rankshift::cli::run(argc, argv); }
