#include <iostream>

#include "qdilog/cli.hpp"

int main(int argc, char** argv) { return qdilog::run_cli(argc, argv, std::cout, std::cerr); }
