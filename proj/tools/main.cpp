#include "cli.hpp"
int main(int argc, char** argv) { return teur::cli::run(argc, argv); }
