#include "cli.hpp"

int main(int argc, char** argv) { return nck::cli::run(argc, argv, std::cout, std::cerr); }
